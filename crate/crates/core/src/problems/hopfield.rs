//! Hebbian Hopfield networks, their dense generalization, and the
//! block-elimination retrieval experiment.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::ProblemError;
use crate::eliminate::{back_substitute, reduce, EliminationOrder, Reduction, ReductionLimits};
use crate::poly::{ratio, Polynomial, Rational, Spin, SpinAssignment, SpinIndex};
use crate::solve::{run_trials, DescentParams, TrialHistogram};

/// Largest number of monomials `dense_hebbian` will build.
pub const DENSE_TERM_CAP: u64 = 1 << 22;

/// `p` stored patterns of length `N`, entries `±1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternSet {
    n: usize,
    patterns: Vec<Vec<i8>>,
}

impl PatternSet {
    /// Rows `μ·N/p` (`μ = 0..p`) of the Sylvester Hadamard matrix of order `N`,
    /// `H[r][i] = (−1)^popcount(r & i)`. `N` must be a power of two and `p`
    /// divide it. The rows are mutually orthogonal and, for these indices,
    /// constant on the `p` contiguous blocks of `N/p` spins.
    pub fn hadamard(n: usize, p: usize) -> Result<Self, ProblemError> {
        if n < 2 || !n.is_power_of_two() {
            return Err(ProblemError::InvalidSize(format!(
                "pattern length must be a power of two, got {n}"
            )));
        }
        if p == 0 {
            return Err(ProblemError::EmptyPatterns);
        }
        if p > n || !n.is_multiple_of(p) {
            return Err(ProblemError::InvalidSize(format!(
                "pattern count {p} must divide {n}"
            )));
        }
        let stride = n / p;
        let patterns = (0..p)
            .map(|mu| {
                let r = mu * stride;
                (0..n)
                    .map(|i| {
                        if (r & i).count_ones().is_multiple_of(2) {
                            1
                        } else {
                            -1
                        }
                    })
                    .collect()
            })
            .collect();
        Ok(PatternSet { n, patterns })
    }

    /// Arbitrary patterns; all must have the same nonzero length and `±1` entries.
    pub fn from_patterns(patterns: Vec<Vec<i8>>) -> Result<Self, ProblemError> {
        let Some(first) = patterns.first() else {
            return Err(ProblemError::EmptyPatterns);
        };
        let n = first.len();
        if n == 0 {
            return Err(ProblemError::InvalidPatterns("empty pattern".into()));
        }
        for (mu, xi) in patterns.iter().enumerate() {
            if xi.len() != n {
                return Err(ProblemError::InvalidPatterns(format!(
                    "pattern {mu} has length {}, expected {n}",
                    xi.len()
                )));
            }
            if xi.iter().any(|&v| v != 1 && v != -1) {
                return Err(ProblemError::InvalidPatterns(format!(
                    "pattern {mu} has an entry other than ±1"
                )));
            }
        }
        Ok(PatternSet { n, patterns })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> usize {
        self.patterns.len()
    }

    pub fn patterns(&self) -> &[Vec<i8>] {
        &self.patterns
    }

    pub fn is_orthogonal(&self) -> bool {
        self.patterns.iter().enumerate().all(|(a, x)| {
            self.patterns[a + 1..].iter().all(|y| {
                x.iter()
                    .zip(y)
                    .map(|(&u, &v)| i64::from(u * v))
                    .sum::<i64>()
                    == 0
            })
        })
    }

    /// Pattern `μ` as a state over spins `1..=N`.
    pub fn state(&self, mu: usize) -> SpinAssignment {
        self.patterns[mu]
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                (
                    i as SpinIndex + 1,
                    if v > 0 { Spin::Up } else { Spin::Down },
                )
            })
            .collect()
    }

    /// Whether `s` equals a stored pattern or its negation on spins `1..=N`.
    pub fn retrieves(&self, s: &SpinAssignment) -> bool {
        self.patterns.iter().any(|xi| {
            let overlap: i64 = xi
                .iter()
                .enumerate()
                .map(|(i, &v)| {
                    s.get(i as SpinIndex + 1)
                        .map_or(0, |x| x.value() * i64::from(v))
                })
                .sum();
            overlap.unsigned_abs() as usize == self.n
        })
    }
}

/// `−Σ_{i<j} J_ij s_i s_j` with `J_ij = (1/N) Σ_μ ξ_i^μ ξ_j^μ`, plus the
/// diagonal constant `−p/2` when `keep_diagonal` is set.
pub fn hebbian_couplings(ps: &PatternSet, keep_diagonal: bool) -> Polynomial {
    let n = ps.n;
    let mut h = Polynomial::over(1..=n as SpinIndex);
    for i in 0..n {
        for j in i + 1..n {
            let sum: i64 = ps.patterns.iter().map(|xi| i64::from(xi[i] * xi[j])).sum();
            if sum != 0 {
                h = &h
                    + &Polynomial::term(
                        ratio(-sum, n as i64),
                        &[i as SpinIndex + 1, j as SpinIndex + 1],
                    );
            }
        }
    }
    if keep_diagonal {
        h = &h + &Polynomial::constant(ratio(-(ps.p() as i64), 2));
    }
    h
}

fn binomial(n: u64, k: u64) -> u64 {
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// `−Σ_{i1<…<ik} J_{i1…ik} s_{i1}⋯s_{ik}` with
/// `J_{i1…ik} = N^{1−k} Σ_μ ξ_{i1}^μ⋯ξ_{ik}^μ`.
pub fn dense_hebbian(ps: &PatternSet, k: usize) -> Result<Polynomial, ProblemError> {
    let n = ps.n;
    if k < 2 || k > n {
        return Err(ProblemError::InvalidSize(format!(
            "tensor order must lie in 2..={n}, got {k}"
        )));
    }
    let count = binomial(n as u64, k as u64);
    if count > DENSE_TERM_CAP {
        return Err(ProblemError::InvalidSize(format!(
            "{count} index tuples exceed the cap of {DENSE_TERM_CAP}"
        )));
    }
    let scale = Rational::new((-1).into(), num_bigint::BigInt::from(n).pow(k as u32 - 1));
    let mut h = Polynomial::over(1..=n as SpinIndex);
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        let sum: i64 = ps
            .patterns
            .iter()
            .map(|xi| idx.iter().map(|&i| i64::from(xi[i])).product::<i64>())
            .sum();
        if sum != 0 {
            let vars: Vec<SpinIndex> = idx.iter().map(|&i| i as SpinIndex + 1).collect();
            h = &h + &Polynomial::term(&scale * Rational::from_integer(sum.into()), &vars);
        }
        let Some(pos) = (0..k).rev().find(|&t| idx[t] < n - k + t) else {
            break;
        };
        idx[pos] += 1;
        for t in pos + 1..k {
            idx[t] = idx[t - 1] + 1;
        }
    }
    Ok(h)
}

/// Spins chosen for elimination: `per_block` from each of `blocks`
/// contiguous blocks, picked by a seeded shuffle and returned ascending.
pub fn block_choice(
    n: usize,
    blocks: usize,
    per_block: usize,
    seed: u64,
) -> Result<Vec<SpinIndex>, ProblemError> {
    if blocks == 0 || !n.is_multiple_of(blocks) || per_block > n / blocks {
        return Err(ProblemError::InvalidSize(format!(
            "cannot take {per_block} spins from each of {blocks} blocks of {n}"
        )));
    }
    let width = n / blocks;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut chosen = Vec::with_capacity(blocks * per_block);
    for b in 0..blocks {
        let mut block: Vec<SpinIndex> = (b * width + 1..=(b + 1) * width)
            .map(|i| i as SpinIndex)
            .collect();
        block.shuffle(&mut rng);
        chosen.extend_from_slice(&block[..per_block]);
    }
    chosen.sort_unstable();
    Ok(chosen)
}

/// Eliminates the spins from [`block_choice`] with `limits`; any refusal is an error.
pub fn block_reduce(
    h: &Polynomial,
    blocks: usize,
    per_block: usize,
    seed: u64,
    limits: &ReductionLimits,
) -> Result<Reduction, ProblemError> {
    let chosen = block_choice(h.num_variables(), blocks, per_block, seed)?;
    let mut red = reduce(h, &EliminationOrder::Explicit(chosen), limits);
    if let Some((_, e)) = red.skipped.pop() {
        return Err(e.into());
    }
    Ok(red)
}

/// Histograms and retrieval counts before and after elimination.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RetrievalReport {
    pub original: Polynomial,
    pub reduction: Reduction,
    pub pre: TrialHistogram,
    pub post: TrialHistogram,
    /// Trials whose clamped state is a stored pattern or its negation.
    pub pre_retrieved: u64,
    /// Trials whose every back-substituted completion is a stored pattern or its negation.
    pub post_retrieved: u64,
}

impl RetrievalReport {
    pub fn pre_frequency(&self) -> f64 {
        self.pre_retrieved as f64 / self.pre.trials as f64
    }

    pub fn post_frequency(&self) -> f64 {
        self.post_retrieved as f64 / self.post.trials as f64
    }
}

/// Runs the dynamics on the Hebbian network (diagonal kept) and on its block
/// reduction with the same seeds, counting pattern retrievals.
pub fn retrieval_experiment(
    ps: &PatternSet,
    per_block: usize,
    trials: u64,
    params: &DescentParams,
    limits: &ReductionLimits,
) -> Result<RetrievalReport, ProblemError> {
    let original = hebbian_couplings(ps, true);
    let reduction = block_reduce(&original, ps.p(), per_block, params.seed, limits)?;
    let pre = run_trials(&original, trials, params)?;
    let post = run_trials(&reduction.hamiltonian, trials, params)?;
    let pre_retrieved = pre
        .counts
        .iter()
        .filter(|(s, _)| ps.retrieves(s))
        .map(|(_, &c)| c)
        .sum();
    let mut post_retrieved = 0;
    for (s, &c) in &post.counts {
        let completions = back_substitute(&reduction.trace, s)?;
        if completions.iter().all(|full| ps.retrieves(full)) {
            post_retrieved += c;
        }
    }
    Ok(RetrievalReport {
        original,
        reduction,
        pre,
        post,
        pre_retrieved,
        post_retrieved,
    })
}
