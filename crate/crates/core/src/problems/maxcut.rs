//! Max-Cut on cubic graphs and the two elimination strategies.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{Graph, ProblemError};
use crate::eliminate::{back_substitute, eliminate_spin, ReductionLimits, Trace};
use crate::poly::{Polynomial, Rational, SpinAssignment, SpinIndex};
use crate::solve::brute_force;

/// Largest number of pairing attempts before giving up.
const MAX_PAIRING_ATTEMPTS: usize = 100_000;

/// Uniform-ish random connected cubic graph from the pairing model: three
/// stubs per vertex are matched at random and matchings with loops,
/// repeated edges, or more than one component are rejected.
pub fn random_cubic_graph(n: usize, seed: u64) -> Result<Graph, ProblemError> {
    if n < 4 || n % 2 == 1 {
        return Err(ProblemError::InvalidSize(format!(
            "cubic graphs need an even vertex count of at least 4, got {n}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stubs: Vec<SpinIndex> = (1..=n as SpinIndex).flat_map(|v| [v, v, v]).collect();
    'attempt: for _ in 0..MAX_PAIRING_ATTEMPTS {
        stubs.shuffle(&mut rng);
        let mut g = Graph::new(n);
        for pair in stubs.chunks(2) {
            if g.add_unit_edge(pair[0], pair[1]).is_err() {
                continue 'attempt;
            }
        }
        if g.is_connected() {
            return Ok(g);
        }
    }
    Err(ProblemError::InvalidGraph(format!(
        "no simple connected cubic graph on {n} vertices found"
    )))
}

/// `H = Σ w_uv s_u s_v`; the cut weight of a state is `(W − H)/2`.
pub fn maxcut_hamiltonian(g: &Graph) -> Polynomial {
    let mut h = Polynomial::over(g.vertices());
    for (u, v, w) in g.edges() {
        h = &h + &Polynomial::term(w.clone(), &[u, v]);
    }
    h
}

/// Total weight of edges whose ends disagree.
pub fn cut_value(g: &Graph, s: &SpinAssignment) -> Option<Rational> {
    let mut total = Rational::default();
    for (u, v, w) in g.edges() {
        if s.get(u)? != s.get(v)? {
            total += w;
        }
    }
    Some(total)
}

/// Outcome of a reduction strategy.
#[derive(Clone, Debug, PartialEq)]
pub struct MaxcutStats {
    pub n: usize,
    pub seed: u64,
    pub removed: usize,
    pub removed_fraction: f64,
    /// Surviving spins by number of distinct neighbors.
    pub degree_histogram: BTreeMap<usize, usize>,
    pub final_locality: usize,
}

impl MaxcutStats {
    fn new(n: usize, seed: u64, h: &Polynomial) -> Self {
        let adjacency = h.adjacency();
        let mut degree_histogram = BTreeMap::new();
        for v in h.variables() {
            *degree_histogram
                .entry(adjacency.get(v).map_or(0, BTreeSet::len))
                .or_default() += 1;
        }
        let removed = n - h.num_variables();
        MaxcutStats {
            n,
            seed,
            removed,
            removed_fraction: removed as f64 / n as f64,
            degree_histogram,
            final_locality: h.locality(),
        }
    }

    pub fn survivors_with_degree(&self, d: usize) -> usize {
        self.degree_histogram.get(&d).copied().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.degree_histogram
            .keys()
            .next_back()
            .copied()
            .unwrap_or(0)
    }

    pub const CSV_HEADER: &'static str = "n,seed,removed_fraction,deg0,deg3,deg4,deg5,deg6";

    /// One CSV row. Eliminated vertices count as degree 0, so `deg0` is the
    /// number removed plus any isolated survivors.
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{:.6},{},{},{},{},{}",
            self.n,
            self.seed,
            self.removed_fraction,
            self.removed + self.survivors_with_degree(0),
            self.survivors_with_degree(3),
            self.survivors_with_degree(4),
            self.survivors_with_degree(5),
            self.survivors_with_degree(6),
        )
    }
}

/// One parsed line of the statistics CSV.
#[derive(Clone, Debug, PartialEq)]
pub struct StatsRow {
    pub n: usize,
    pub seed: u64,
    pub removed_fraction: f64,
    /// Counts for degrees 0, 3, 4, 5 and 6.
    pub degrees: [usize; 5],
}

/// Reads rows written with [`MaxcutStats::CSV_HEADER`] and [`MaxcutStats::csv_row`].
pub fn parse_stats_csv(text: &str) -> Result<Vec<StatsRow>, ProblemError> {
    let mut rows = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || (k == 0 && line == MaxcutStats::CSV_HEADER) {
            continue;
        }
        let err = |message: &str| ProblemError::Csv {
            line: k + 1,
            message: message.to_string(),
        };
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 8 {
            return Err(err("expected 8 fields"));
        }
        let count = |t: &str| t.parse::<usize>().map_err(|_| err("bad count"));
        rows.push(StatsRow {
            n: count(fields[0])?,
            seed: fields[1].parse().map_err(|_| err("bad seed"))?,
            removed_fraction: fields[2].parse().map_err(|_| err("bad fraction"))?,
            degrees: [
                count(fields[3])?,
                count(fields[4])?,
                count(fields[5])?,
                count(fields[6])?,
                count(fields[7])?,
            ],
        });
    }
    Ok(rows)
}

/// A reduced Max-Cut instance with its trace.
#[derive(Clone, Debug, PartialEq)]
pub struct MaxcutReduction {
    pub hamiltonian: Polynomial,
    pub trace: Trace,
    pub stats: MaxcutStats,
}

fn require_cubic(g: &Graph) -> Result<(), ProblemError> {
    if g.is_cubic() {
        Ok(())
    } else {
        Err(ProblemError::NotCubic)
    }
}

/// Pairwise strategy: repeatedly eliminate a spin with at most three
/// neighbors, lowest neighbor count first with seeded random tie-breaks,
/// as long as the result stays 2-local with every degree at most 6.
///
/// `limits.max_locality` and `limits.max_degree` default to 2 and 6 when unset.
pub fn maxcut_reduce_2local(
    g: &Graph,
    limits: &ReductionLimits,
    seed: u64,
) -> Result<MaxcutReduction, ProblemError> {
    require_cubic(g)?;
    let limits = ReductionLimits {
        max_neighborhood: limits.max_neighborhood,
        max_locality: Some(limits.max_locality.unwrap_or(2)),
        max_degree: Some(limits.max_degree.unwrap_or(6)),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rank: Vec<SpinIndex> = g.vertices().collect();
    rank.shuffle(&mut rng);
    let rank: BTreeMap<SpinIndex, usize> =
        rank.into_iter().enumerate().map(|(k, v)| (v, k)).collect();

    let mut h = maxcut_hamiltonian(g);
    let mut trace = Trace::new();
    // Spins refused since their surroundings last changed.
    let mut refused: BTreeSet<SpinIndex> = BTreeSet::new();
    loop {
        let adjacency = h.adjacency();
        let degree = |v: &SpinIndex| adjacency.get(v).map_or(0, BTreeSet::len);
        let mut candidates: Vec<(usize, usize, SpinIndex)> = h
            .variables()
            .iter()
            .filter(|v| degree(v) <= 3 && !refused.contains(v))
            .map(|&v| (degree(&v), rank[&v], v))
            .collect();
        candidates.sort_unstable();
        let mut progressed = false;
        for (_, _, a) in candidates {
            match eliminate_spin(&h, a, &limits) {
                Ok((next, rec)) => {
                    let touched = rec.local_block.support();
                    let next_adj = next.adjacency();
                    for v in &touched {
                        refused.remove(v);
                        if let Some(ns) = next_adj.get(v) {
                            for u in ns {
                                refused.remove(u);
                            }
                        }
                    }
                    h = next;
                    trace.push(rec)?;
                    progressed = true;
                    break;
                }
                Err(_) => {
                    refused.insert(a);
                }
            }
        }
        if !progressed {
            break;
        }
    }
    let stats = MaxcutStats::new(g.n(), seed, &h);
    Ok(MaxcutReduction {
        hamiltonian: h,
        trace,
        stats,
    })
}

/// Higher-order strategy: in round `r` eliminate, in ascending index order,
/// the centers of vertex-disjoint stars with at most `r + 2` leaves,
/// allowing `2r`-local terms and degree up to `2r + 2`.
///
/// Explicit `limits.max_locality`/`max_degree` cap the per-round values.
pub fn maxcut_reduce_klocal(
    g: &Graph,
    rounds: usize,
    limits: &ReductionLimits,
) -> Result<MaxcutReduction, ProblemError> {
    require_cubic(g)?;
    let mut h = maxcut_hamiltonian(g);
    let mut trace = Trace::new();
    for round in 1..=rounds {
        let round_limits = ReductionLimits {
            max_neighborhood: limits.max_neighborhood,
            max_locality: Some(limits.max_locality.map_or(2 * round, |k| k.min(2 * round))),
            max_degree: Some(
                limits
                    .max_degree
                    .map_or(2 * round + 2, |d| d.min(2 * round + 2)),
            ),
        };
        let mut used: BTreeSet<SpinIndex> = BTreeSet::new();
        for a in h.variable_list() {
            if used.contains(&a) {
                continue;
            }
            let star = h.neighbors(a);
            if star.len() > round + 2 || star.iter().any(|v| used.contains(v)) {
                continue;
            }
            if let Ok((next, rec)) = eliminate_spin(&h, a, &round_limits) {
                used.insert(a);
                used.extend(star);
                h = next;
                trace.push(rec)?;
            }
        }
    }
    let stats = MaxcutStats::new(g.n(), 0, &h);
    Ok(MaxcutReduction {
        hamiltonian: h,
        trace,
        stats,
    })
}

/// Which elimination strategy to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    TwoLocal,
    KLocal { rounds: usize },
}

impl Strategy {
    pub fn run(
        self,
        g: &Graph,
        limits: &ReductionLimits,
        seed: u64,
    ) -> Result<MaxcutReduction, ProblemError> {
        match self {
            Strategy::TwoLocal => maxcut_reduce_2local(g, limits, seed),
            Strategy::KLocal { rounds } => {
                let mut red = maxcut_reduce_klocal(g, rounds, limits)?;
                red.stats.seed = seed;
                Ok(red)
            }
        }
    }
}

/// Generates one cubic graph per seed and reduces it. Seeds run in
/// parallel; results come back in seed order.
pub fn maxcut_statistics(
    n: usize,
    seeds: &[u64],
    strategy: Strategy,
    limits: &ReductionLimits,
) -> Result<Vec<MaxcutStats>, ProblemError> {
    seeds
        .par_iter()
        .map(|&seed| {
            let g = random_cubic_graph(n, seed)?;
            Ok(strategy.run(&g, limits, seed)?.stats)
        })
        .collect()
}

/// Mean removed fraction over a batch.
pub fn mean_removed_fraction(stats: &[MaxcutStats]) -> f64 {
    stats.iter().map(|s| s.removed_fraction).sum::<f64>() / stats.len().max(1) as f64
}

/// Exact optimum of a reduced instance mapped back to the full graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaxcutSolution {
    pub min_energy: Rational,
    pub cut: Rational,
    pub states: BTreeSet<SpinAssignment>,
}

/// Solves the reduced Hamiltonian by enumeration and back-substitutes.
pub fn solve_reduced(g: &Graph, red: &MaxcutReduction) -> Result<MaxcutSolution, ProblemError> {
    let sol = brute_force(&red.hamiltonian)?;
    let mut states = BTreeSet::new();
    for s in &sol.ground_states {
        states.extend(back_substitute(&red.trace, s)?);
    }
    let cut = (g.total_weight() - &sol.min_energy) / Rational::from_integer(2.into());
    Ok(MaxcutSolution {
        min_energy: sol.min_energy,
        cut,
        states,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::int;

    #[test]
    fn k4_is_the_only_cubic_graph_on_four() {
        let g = random_cubic_graph(4, 1).unwrap();
        assert_eq!(g.num_edges(), 6);
        assert!(g.is_cubic());
        let sol = brute_force(&maxcut_hamiltonian(&g)).unwrap();
        let cut = (g.total_weight() - sol.min_energy) / int(2);
        assert_eq!(cut, int(4));
    }

    #[test]
    fn generator_is_deterministic_and_valid() {
        let a = random_cubic_graph(20, 42).unwrap();
        assert_eq!(a, random_cubic_graph(20, 42).unwrap());
        assert_eq!(a.num_edges(), 30);
        assert!(a.is_cubic() && a.is_connected());
        assert!(random_cubic_graph(7, 0).is_err());
        assert!(random_cubic_graph(2, 0).is_err());
    }

    #[test]
    fn small_cut_examples() {
        let mut g = Graph::new(2);
        g.add_unit_edge(1, 2).unwrap();
        let sol = brute_force(&maxcut_hamiltonian(&g)).unwrap();
        assert_eq!(sol.min_energy, int(-1));

        let mut t = Graph::new(3);
        t.add_unit_edge(1, 2).unwrap();
        t.add_unit_edge(2, 3).unwrap();
        t.add_unit_edge(1, 3).unwrap();
        let sol = brute_force(&maxcut_hamiltonian(&t)).unwrap();
        assert_eq!(sol.min_energy, int(-1));
        let s = sol.ground_states.iter().next().unwrap();
        assert_eq!(cut_value(&t, s), Some(int(2)));
    }

    #[test]
    fn k4_strategies() {
        let g = random_cubic_graph(4, 0).unwrap();
        let red = maxcut_reduce_2local(&g, &ReductionLimits::default(), 3).unwrap();
        assert!(red.stats.removed >= 1);
        assert!(red.hamiltonian.locality() <= 2);
        let k = maxcut_reduce_klocal(&g, 1, &ReductionLimits::default()).unwrap();
        assert_eq!(k.stats.removed, 1);
        assert!(k.stats.max_degree() <= 4);
        let sol = solve_reduced(&g, &k).unwrap();
        assert_eq!(sol.cut, int(4));
    }

    #[test]
    fn statistics_are_seed_ordered() {
        let stats = maxcut_statistics(
            16,
            &[3, 1, 2],
            Strategy::TwoLocal,
            &ReductionLimits::default(),
        )
        .unwrap();
        assert_eq!(
            stats.iter().map(|s| s.seed).collect::<Vec<_>>(),
            vec![3, 1, 2]
        );
        assert!(mean_removed_fraction(&stats) > 0.0);
    }

    #[test]
    fn rejects_non_cubic() {
        let mut g = Graph::new(4);
        g.add_unit_edge(1, 2).unwrap();
        assert_eq!(
            maxcut_reduce_2local(&g, &ReductionLimits::default(), 0),
            Err(ProblemError::NotCubic)
        );
    }

    #[test]
    fn stats_row_shape() {
        let g = random_cubic_graph(20, 5).unwrap();
        let red = maxcut_reduce_2local(&g, &ReductionLimits::default(), 5).unwrap();
        let row = red.stats.csv_row();
        let text = format!("{}\n{row}\n", MaxcutStats::CSV_HEADER);
        let parsed = parse_stats_csv(&text).unwrap();
        assert_eq!(parsed.len(), 1);
        assert_eq!(parsed[0].n, 20);
        assert_eq!(parsed[0].seed, 5);
        assert_eq!(
            parsed[0].degrees[0],
            red.stats.removed + red.stats.survivors_with_degree(0)
        );
        let survivors: usize = red.stats.degree_histogram.values().sum();
        assert_eq!(survivors + red.stats.removed, 20);
    }
}
