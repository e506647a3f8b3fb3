//! Spin elimination: replace `s_a·P` by the expansion of `−|P|`, record the
//! block, and later recover `s_a = −sgn(P)`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write as _};

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::expand::{
    as_signed_uniform, expand_neg_abs_capped, signed_symmetric_on, ExpandError,
    DEFAULT_NEIGHBORHOOD_CAP,
};
use crate::gadgets::{match_gadget, GadgetKind};
use crate::poly::{PolyError, Polynomial, Rational, Spin, SpinAssignment, SpinIndex};
use crate::solve::{self, SolveError};
use crate::text::{parse_lines, write_polynomial};

/// Default bound on the number of completions produced by back-substitution.
pub const DEFAULT_BRANCH_CAP: usize = 1 << 20;

/// Bounds an elimination must respect to be accepted.
///
/// `max_degree` counts distinct neighbors of a spin (variables sharing at
/// least one monomial with it), which for 2-local Hamiltonians is the graph degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReductionLimits {
    pub max_neighborhood: usize,
    pub max_locality: Option<usize>,
    pub max_degree: Option<usize>,
}

impl Default for ReductionLimits {
    fn default() -> Self {
        ReductionLimits {
            max_neighborhood: DEFAULT_NEIGHBORHOOD_CAP,
            max_locality: None,
            max_degree: None,
        }
    }
}

impl ReductionLimits {
    pub fn unlimited() -> Self {
        Self::default()
    }

    pub fn with_neighborhood(mut self, cap: usize) -> Self {
        self.max_neighborhood = cap;
        self
    }

    pub fn with_locality(mut self, k: usize) -> Self {
        self.max_locality = Some(k);
        self
    }

    pub fn with_degree(mut self, d: usize) -> Self {
        self.max_degree = Some(d);
        self
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EliminationError {
    #[error("spin s{0} is not a variable of the Hamiltonian")]
    NotPresent(SpinIndex),
    #[error("spin s{spin} has {size} neighbors, above the cap of {cap}")]
    NeighborhoodTooLarge {
        spin: SpinIndex,
        size: usize,
        cap: usize,
    },
    #[error("eliminating s{spin} creates a {locality}-local term, above the limit of {limit}")]
    LocalityExceeded {
        spin: SpinIndex,
        locality: usize,
        limit: usize,
    },
    #[error(
        "eliminating s{spin} gives s{neighbor} {degree} neighbors, above the limit of {limit}"
    )]
    DegreeExceeded {
        spin: SpinIndex,
        neighbor: SpinIndex,
        degree: usize,
        limit: usize,
    },
    #[error("spin s{0} is eliminated twice in one trace")]
    Repeated(SpinIndex),
    #[error("back-substitution needs a value for s{0}")]
    Unassigned(SpinIndex),
    #[error("back-substitution exceeds {0} completions")]
    BranchLimit(usize),
    #[error("stopped after {eliminated} eliminations with {remaining} spins left: {cause}")]
    Incomplete {
        eliminated: usize,
        remaining: usize,
        cause: Box<EliminationError>,
    },
    #[error(transparent)]
    Expand(#[from] ExpandError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error("trace line {line}: {message}")]
    TraceParse { line: usize, message: String },
}

impl From<PolyError> for EliminationError {
    fn from(e: PolyError) -> Self {
        match e {
            PolyError::Unassigned(v) => EliminationError::Unassigned(v),
            PolyError::Parse { line, message } => EliminationError::TraceParse { line, message },
            other => EliminationError::TraceParse {
                line: 0,
                message: other.to_string(),
            },
        }
    }
}

/// `h = s_a·block + rest`, with `present` false when `a` is not a variable of `h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalBlock {
    pub block: Polynomial,
    pub rest: Polynomial,
    pub present: bool,
}

/// Splits off every term containing `a`.
pub fn extract_local_block(h: &Polynomial, a: SpinIndex) -> LocalBlock {
    let present = h.variables().contains(&a);
    let mut block = Polynomial::zero();
    let mut rest = Polynomial::over(h.variables().iter().copied().filter(|&v| v != a));
    for (m, c) in h.terms() {
        if m.contains(a) {
            let reduced = m.without(a);
            block.declare_all(reduced.indices().iter().copied());
            block.add_term(reduced, c.clone());
        } else {
            rest.add_term(m.clone(), c.clone());
        }
    }
    LocalBlock {
        block,
        rest,
        present,
    }
}

/// How a block's `−|P|` was expanded.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Expansion {
    Gadget(GadgetKind),
    /// `P = λ Σ σ_i s_i` with `σ_i = ±1`, via the symmetric coefficients.
    Symmetric,
    /// Generic transform over the block's support.
    Walsh,
}

/// Expands `−|P|`, preferring a closed-form gadget, then the symmetric
/// formula, then the generic transform. All three give the same polynomial.
pub fn expand_block(p: &Polynomial, cap: usize) -> Result<(Polynomial, Expansion), ExpandError> {
    let d = p.support().len();
    if d > cap {
        return Err(ExpandError::CapExceeded { d, cap });
    }
    let mut out = if let Some(m) = match_gadget(p) {
        (m.apply(), Expansion::Gadget(m.kind))
    } else if let Some((lambda, weights)) = as_signed_uniform(p).filter(|(_, w)| w.len() >= 4) {
        (
            signed_symmetric_on(&weights)?.scale(&lambda),
            Expansion::Symmetric,
        )
    } else {
        (expand_neg_abs_capped(p, cap)?, Expansion::Walsh)
    };
    out.0.declare_all(p.variables().iter().copied());
    Ok(out)
}

/// One elimination: the block `P` over the neighbors and its replacement `F`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EliminationRecord {
    pub eliminated: SpinIndex,
    pub local_block: Polynomial,
    pub replacement: Polynomial,
}

impl EliminationRecord {
    /// All optimal values of the eliminated spin given its neighbors.
    pub fn recover(&self, a: &SpinAssignment) -> Result<Vec<Spin>, EliminationError> {
        let v = self.local_block.evaluate(a)?;
        Ok(if v.is_zero() {
            vec![Spin::Up, Spin::Down]
        } else if v.is_positive() {
            vec![Spin::Down]
        } else {
            vec![Spin::Up]
        })
    }
}

/// Eliminations in the order they were performed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Trace {
    records: Vec<EliminationRecord>,
}

impl Trace {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, rec: EliminationRecord) -> Result<(), EliminationError> {
        if self.records.iter().any(|r| r.eliminated == rec.eliminated) {
            return Err(EliminationError::Repeated(rec.eliminated));
        }
        self.records.push(rec);
        Ok(())
    }

    pub fn records(&self) -> &[EliminationRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn eliminated(&self) -> Vec<SpinIndex> {
        self.records.iter().map(|r| r.eliminated).collect()
    }

    /// Appends another trace performed after this one.
    pub fn extend(&mut self, other: Trace) -> Result<(), EliminationError> {
        for rec in other.records {
            self.push(rec)?;
        }
        Ok(())
    }

    /// `E <id>`, then `P:` and `F:` blocks in the polynomial text format, then `---`.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for r in &self.records {
            let _ = writeln!(s, "E {}", r.eliminated);
            s.push_str("P:\n");
            let _ = write_polynomial(&r.local_block, &mut s);
            s.push_str("F:\n");
            let _ = write_polynomial(&r.replacement, &mut s);
            s.push_str("---\n");
        }
        s
    }

    pub fn parse_text(text: &str) -> Result<Trace, EliminationError> {
        let err = |line: usize, message: &str| EliminationError::TraceParse {
            line,
            message: message.to_string(),
        };
        let lines: Vec<&str> = text.lines().collect();
        let mut trace = Trace::new();
        let mut k = 0;
        let skip_blank = |k: &mut usize| {
            while *k < lines.len() && {
                let l = lines[*k].trim();
                l.is_empty() || l.starts_with('#')
            } {
                *k += 1;
            }
        };
        loop {
            skip_blank(&mut k);
            if k >= lines.len() {
                break;
            }
            let header = lines[k].trim();
            let id: SpinIndex = header
                .strip_prefix("E ")
                .and_then(|t| t.trim().parse().ok())
                .filter(|&i| i > 0)
                .ok_or_else(|| err(k + 1, "expected `E <spin>`"))?;
            k += 1;
            skip_blank(&mut k);
            if lines.get(k).map(|l| l.trim()) != Some("P:") {
                return Err(err(k + 1, "expected `P:`"));
            }
            k += 1;
            let p_start = k;
            while k < lines.len() && lines[k].trim() != "F:" {
                k += 1;
            }
            if k >= lines.len() {
                return Err(err(k, "missing `F:`"));
            }
            let block = parse_lines(lines[p_start..k].iter().copied(), p_start + 1)?;
            k += 1;
            let f_start = k;
            while k < lines.len() && lines[k].trim() != "---" {
                k += 1;
            }
            if k >= lines.len() {
                return Err(err(k, "missing `---`"));
            }
            let replacement = parse_lines(lines[f_start..k].iter().copied(), f_start + 1)?;
            k += 1;
            if block.variables().contains(&id) || replacement.variables().contains(&id) {
                return Err(err(p_start, "record mentions its own eliminated spin"));
            }
            trace
                .push(EliminationRecord {
                    eliminated: id,
                    local_block: block,
                    replacement,
                })
                .map_err(|_| err(p_start - 1, "spin eliminated twice"))?;
        }
        Ok(trace)
    }
}

impl fmt::Display for Trace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Eliminates `a`, returning `h′ = rest + expansion(−|P|)` and the record.
///
/// On a limit violation `h` is left untouched and the error explains why.
pub fn eliminate_spin(
    h: &Polynomial,
    a: SpinIndex,
    limits: &ReductionLimits,
) -> Result<(Polynomial, EliminationRecord), EliminationError> {
    let LocalBlock {
        block,
        rest,
        present,
    } = extract_local_block(h, a);
    if !present {
        return Err(EliminationError::NotPresent(a));
    }
    let size = block.support().len();
    let cap = limits.max_neighborhood;
    if size > cap {
        return Err(EliminationError::NeighborhoodTooLarge { spin: a, size, cap });
    }
    let (replacement, _) = expand_block(&block, cap)?;
    if let Some(limit) = limits.max_locality {
        let locality = replacement.locality();
        if locality > limit {
            return Err(EliminationError::LocalityExceeded {
                spin: a,
                locality,
                limit,
            });
        }
    }
    let reduced = &rest + &replacement;
    if let Some(limit) = limits.max_degree {
        for v in block.support() {
            let degree = reduced.neighbors(v).len();
            if degree > limit {
                return Err(EliminationError::DegreeExceeded {
                    spin: a,
                    neighbor: v,
                    degree,
                    limit,
                });
            }
        }
    }
    Ok((
        reduced,
        EliminationRecord {
            eliminated: a,
            local_block: block,
            replacement,
        },
    ))
}

/// Completes a solution of the reduced Hamiltonian through the trace, newest
/// record first. A block that evaluates to zero yields both values.
pub fn back_substitute(
    trace: &Trace,
    reduced: &SpinAssignment,
) -> Result<BTreeSet<SpinAssignment>, EliminationError> {
    back_substitute_capped(trace, reduced, DEFAULT_BRANCH_CAP)
}

pub fn back_substitute_capped(
    trace: &Trace,
    reduced: &SpinAssignment,
    branch_cap: usize,
) -> Result<BTreeSet<SpinAssignment>, EliminationError> {
    let mut states = vec![reduced.clone()];
    for rec in trace.records().iter().rev() {
        let mut next = Vec::with_capacity(states.len());
        for s in states {
            let values = rec.recover(&s)?;
            for v in values {
                next.push(s.clone().with(rec.eliminated, v));
            }
            if next.len() > branch_cap {
                return Err(EliminationError::BranchLimit(branch_cap));
            }
        }
        states = next;
    }
    Ok(states.into_iter().collect())
}

/// Which spins `reduce` tries, and in what order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EliminationOrder {
    /// Exactly these spins, in this order; refusals are skipped.
    Explicit(Vec<SpinIndex>),
    /// Repeatedly the spin with the fewest distinct neighbors (ties to the
    /// lowest index) until `keep` spins remain or none can be eliminated.
    Greedy { keep: usize },
    /// Every spin once, lowest index first.
    Ascending,
}

impl EliminationOrder {
    /// Parses `greedy`, `ascending`, an empty string, or a comma/space list of ids.
    pub fn parse(s: &str, keep: usize) -> Result<Self, String> {
        match s.trim() {
            "greedy" => Ok(EliminationOrder::Greedy { keep }),
            "ascending" => Ok(EliminationOrder::Ascending),
            list => list
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.trim_start_matches('s')
                        .parse::<SpinIndex>()
                        .ok()
                        .filter(|&i| i > 0)
                        .ok_or_else(|| format!("bad spin id {t:?} in order"))
                })
                .collect::<Result<Vec<_>, _>>()
                .map(EliminationOrder::Explicit),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub hamiltonian: Polynomial,
    pub trace: Trace,
    /// Spins whose elimination was refused, with the last reason.
    pub skipped: Vec<(SpinIndex, EliminationError)>,
}

impl Reduction {
    pub fn attempted(&self) -> usize {
        self.trace.len() + self.skipped.len()
    }
}

/// Applies eliminations per `order`; refusals become skips, never failures.
pub fn reduce(h: &Polynomial, order: &EliminationOrder, limits: &ReductionLimits) -> Reduction {
    let mut current = h.clone();
    let mut trace = Trace::new();
    let mut skipped = Vec::new();
    let apply = |current: &mut Polynomial, trace: &mut Trace, a: SpinIndex| {
        eliminate_spin(current, a, limits).map(|(next, rec)| {
            *current = next;
            trace
                .push(rec)
                .expect("eliminated spins leave the variable set");
        })
    };
    match order {
        EliminationOrder::Explicit(list) => {
            for &a in list {
                if let Err(e) = apply(&mut current, &mut trace, a) {
                    skipped.push((a, e));
                }
            }
        }
        EliminationOrder::Ascending => {
            for a in h.variable_list() {
                if let Err(e) = apply(&mut current, &mut trace, a) {
                    skipped.push((a, e));
                }
            }
        }
        EliminationOrder::Greedy { keep } => {
            let mut refused: BTreeMap<SpinIndex, EliminationError> = BTreeMap::new();
            while current.num_variables() > *keep {
                let adjacency = current.adjacency();
                let mut candidates: Vec<(usize, SpinIndex)> = current
                    .variables()
                    .iter()
                    .map(|&v| (adjacency.get(&v).map_or(0, BTreeSet::len), v))
                    .collect();
                candidates.sort_unstable();
                let mut progressed = false;
                refused.clear();
                for (_, a) in candidates {
                    match apply(&mut current, &mut trace, a) {
                        Ok(()) => {
                            progressed = true;
                            break;
                        }
                        Err(e) => {
                            refused.insert(a, e);
                        }
                    }
                }
                if !progressed {
                    break;
                }
            }
            skipped.extend(refused);
        }
    }
    Reduction {
        hamiltonian: current,
        trace,
        skipped,
    }
}

/// Minimum energy and every configuration attaining it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub min_energy: Rational,
    pub ground_states: BTreeSet<SpinAssignment>,
}

/// Eliminates every spin, lowest index first, and back-substitutes.
pub fn full_solve(h: &Polynomial) -> Result<Solution, EliminationError> {
    full_solve_with_order(h, &[])
}

/// Eliminates `order` first, then any remaining spins lowest index first.
pub fn full_solve_with_order(
    h: &Polynomial,
    order: &[SpinIndex],
) -> Result<Solution, EliminationError> {
    let limits = ReductionLimits::default();
    let mut current = h.clone();
    let mut trace = Trace::new();
    let mut sequence: Vec<SpinIndex> = order.to_vec();
    sequence.extend(h.variables().iter().filter(|v| !order.contains(v)));
    for a in sequence {
        if !current.variables().contains(&a) {
            continue;
        }
        let (next, rec) =
            eliminate_spin(&current, a, &limits).map_err(|cause| EliminationError::Incomplete {
                eliminated: trace.len(),
                remaining: current.num_variables(),
                cause: Box::new(cause),
            })?;
        current = next;
        trace.push(rec)?;
    }
    debug_assert!(current.is_constant() && current.variables().is_empty());
    let ground_states = back_substitute(&trace, &SpinAssignment::new())?;
    Ok(Solution {
        min_energy: current.constant_term(),
        ground_states,
    })
}

/// Sorted `(energy, multiplicity)` over all `2^N` configurations (`N ≤ 24`).
pub fn spectrum(h: &Polynomial) -> Result<Vec<(Rational, u64)>, SolveError> {
    solve::spectrum(h)
}
