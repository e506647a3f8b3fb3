//! Exhaustive oracles and continuous retrieval dynamics.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::eliminate::Solution;
use crate::poly::{
    PackedPolynomial, PolyError, Polynomial, Rational, Spin, SpinAssignment, SpinIndex,
};
use crate::text::parse_rational;

/// Largest variable count accepted by [`brute_force`].
pub const BRUTE_FORCE_CAP: usize = 26;

/// Largest variable count accepted by [`spectrum`].
pub const SPECTRUM_CAP: usize = 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("{n} variables exceed the enumeration cap of {cap}")]
    TooManyVariables { n: usize, cap: usize },
    #[error("initial state has {got} entries for {expected} variables")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid descent parameters: {0}")]
    InvalidParams(String),
    #[error("at least one trial is required")]
    NoTrials,
    #[error("histogram line {line}: {message}")]
    Csv { line: usize, message: String },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Visits every configuration of `vars` in Gray-code order, passing the code
/// and the energy scaled by `packed.denominator()`.
fn gray_walk(packed: &PackedPolynomial, mut visit: impl FnMut(u64, i128)) {
    let n = packed.variables().len();
    let mut occurs: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut value: Vec<i128> = Vec::with_capacity(packed.terms().len());
    for (t, &(mask, c)) in packed.terms().iter().enumerate() {
        for (k, list) in occurs.iter_mut().enumerate() {
            if mask >> k & 1 == 1 {
                list.push(t);
            }
        }
        value.push(c);
    }
    let mut energy: i128 = value.iter().sum();
    let mut code = 0u64;
    visit(code, energy);
    for step in 1u64..1 << n {
        let k = step.trailing_zeros() as usize;
        code ^= 1 << k;
        for &t in &occurs[k] {
            energy -= 2 * value[t];
            value[t] = -value[t];
        }
        visit(code, energy);
    }
}

fn check_size(h: &Polynomial, cap: usize) -> Result<(), SolveError> {
    let n = h.num_variables();
    if n > cap {
        return Err(SolveError::TooManyVariables { n, cap });
    }
    Ok(())
}

/// Exact minimum and all minimizing configurations by enumeration (`N ≤ 26`).
pub fn brute_force(h: &Polynomial) -> Result<Solution, SolveError> {
    check_size(h, BRUTE_FORCE_CAP)?;
    let vars = h.variable_list();
    match PackedPolynomial::over(h, vars.clone()) {
        Some(packed) => {
            let mut best = i128::MAX;
            let mut codes = Vec::new();
            gray_walk(&packed, |code, e| {
                if e < best {
                    best = e;
                    codes.clear();
                }
                if e == best {
                    codes.push(code);
                }
            });
            Ok(Solution {
                min_energy: packed.to_rational(best),
                ground_states: codes
                    .into_iter()
                    .map(|c| SpinAssignment::from_code(&vars, c))
                    .collect(),
            })
        }
        None => {
            let mut best: Option<Rational> = None;
            let mut states = BTreeSet::new();
            for code in 0u64..1 << vars.len() {
                let a = SpinAssignment::from_code(&vars, code);
                let e = h.evaluate(&a)?;
                match &best {
                    Some(b) if e > *b => continue,
                    Some(b) if e == *b => {}
                    _ => {
                        best = Some(e);
                        states.clear();
                    }
                }
                states.insert(a);
            }
            Ok(Solution {
                min_energy: best.expect("at least one configuration"),
                ground_states: states,
            })
        }
    }
}

/// Sorted `(energy, multiplicity)` over all `2^N` configurations (`N ≤ 24`).
pub fn spectrum(h: &Polynomial) -> Result<Vec<(Rational, u64)>, SolveError> {
    check_size(h, SPECTRUM_CAP)?;
    let vars = h.variable_list();
    match PackedPolynomial::over(h, vars.clone()) {
        Some(packed) => {
            let mut levels: BTreeMap<i128, u64> = BTreeMap::new();
            gray_walk(&packed, |_, e| *levels.entry(e).or_default() += 1);
            Ok(levels
                .into_iter()
                .map(|(e, n)| (packed.to_rational(e), n))
                .collect())
        }
        None => {
            let mut levels: BTreeMap<Rational, u64> = BTreeMap::new();
            for code in 0u64..1 << vars.len() {
                let e = h.evaluate(&SpinAssignment::from_code(&vars, code))?;
                *levels.entry(e).or_default() += 1;
            }
            Ok(levels.into_iter().collect())
        }
    }
}

/// Spectrum as `energy,multiplicity` CSV lines under a header.
pub fn spectrum_csv(levels: &[(Rational, u64)]) -> String {
    let mut s = String::from("energy,multiplicity\n");
    for (e, n) in levels {
        let _ = writeln!(s, "{e},{n}");
    }
    s
}

/// Integration settings for the continuous dynamics.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DescentParams {
    pub tau: f64,
    pub dt: f64,
    pub max_steps: usize,
    pub convergence_eps: f64,
    pub seed: u64,
}

impl Default for DescentParams {
    fn default() -> Self {
        DescentParams {
            tau: 1.0,
            dt: 0.05,
            max_steps: 100_000,
            convergence_eps: 1e-6,
            seed: 0,
        }
    }
}

impl DescentParams {
    pub fn validate(&self) -> Result<(), SolveError> {
        let bad = |m: &str| Err(SolveError::InvalidParams(m.to_string()));
        if self.tau.is_nan() || self.tau <= 0.0 {
            return bad("tau must be positive");
        }
        if self.dt.is_nan() || self.dt <= 0.0 || self.dt >= self.tau {
            return bad("dt must lie in (0, tau)");
        }
        if self.convergence_eps.is_nan() || self.convergence_eps <= 0.0 {
            return bad("convergence_eps must be positive");
        }
        Ok(())
    }
}

/// A polynomial in `f64` over positions `0..N` of its ascending variable list.
#[derive(Clone, Debug)]
pub struct FloatPolynomial {
    vars: Vec<SpinIndex>,
    constant: f64,
    terms: Vec<(Vec<usize>, f64)>,
}

impl FloatPolynomial {
    pub fn new(h: &Polynomial) -> Self {
        let vars = h.variable_list();
        let pos: BTreeMap<SpinIndex, usize> =
            vars.iter().enumerate().map(|(k, &v)| (v, k)).collect();
        let mut constant = 0.0;
        let mut terms = Vec::new();
        for (m, c) in h.terms() {
            let c = c.to_f64().unwrap_or(f64::NAN);
            if m.is_empty() {
                constant = c;
            } else {
                terms.push((m.indices().iter().map(|i| pos[i]).collect(), c));
            }
        }
        FloatPolynomial {
            vars,
            constant,
            terms,
        }
    }

    pub fn variables(&self) -> &[SpinIndex] {
        &self.vars
    }

    pub fn value(&self, y: &[f64]) -> f64 {
        self.constant
            + self
                .terms
                .iter()
                .map(|(idx, c)| c * idx.iter().map(|&i| y[i]).product::<f64>())
                .sum::<f64>()
    }

    /// Writes `∂H/∂y` into `grad` using prefix/suffix products per term.
    pub fn gradient(&self, y: &[f64], grad: &mut [f64]) {
        grad.iter_mut().for_each(|g| *g = 0.0);
        let mut prefix = Vec::new();
        for (idx, c) in &self.terms {
            match idx.len() {
                1 => grad[idx[0]] += c,
                2 => {
                    grad[idx[0]] += c * y[idx[1]];
                    grad[idx[1]] += c * y[idx[0]];
                }
                k => {
                    prefix.clear();
                    let mut acc = 1.0;
                    for &i in idx {
                        prefix.push(acc);
                        acc *= y[i];
                    }
                    let mut suffix = 1.0;
                    for j in (0..k).rev() {
                        grad[idx[j]] += c * prefix[j] * suffix;
                        suffix *= y[idx[j]];
                    }
                }
            }
        }
    }
}

/// `L(x) = H(tanh x) + Σ_i [x_i tanh x_i − ln cosh x_i]`, non-increasing
/// along `τẋ = −x − ∇H(tanh x)`.
pub fn lyapunov(h: &FloatPolynomial, x: &[f64]) -> f64 {
    let y: Vec<f64> = x.iter().map(|v| v.tanh()).collect();
    h.value(&y)
        + x.iter()
            .zip(&y)
            .map(|(&xi, &yi)| xi * yi - log_cosh(xi))
            .sum::<f64>()
}

fn log_cosh(x: f64) -> f64 {
    let a = x.abs();
    a + (-2.0 * a).exp().ln_1p() - std::f64::consts::LN_2
}

/// Result of one integration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescentOutcome {
    /// `s_i = sgn(tanh x_i)`, with `x_i = 0` read as `+1`.
    pub state: SpinAssignment,
    /// Exact energy of the clamped state.
    pub energy: Rational,
    pub converged: bool,
    pub steps: usize,
}

fn clamp(vars: &[SpinIndex], x: &[f64]) -> SpinAssignment {
    vars.iter()
        .zip(x)
        .map(|(&v, &xi)| (v, if xi < 0.0 { Spin::Down } else { Spin::Up }))
        .collect()
}

/// Explicit Euler on `τẋ_i = −x_i − ∂H/∂y_i` at `y = tanh x`, stopping when
/// `max|ẋ_i| < convergence_eps` or after `max_steps`.
///
/// `x0[k]` belongs to the `k`-th variable in ascending order. For a pairwise
/// `H = −½ Σ J_ij s_i s_j` the force is `Σ_j J_ij tanh x_j`.
pub fn hopfield_descent(
    h: &Polynomial,
    x0: &[f64],
    params: &DescentParams,
) -> Result<DescentOutcome, SolveError> {
    let fp = FloatPolynomial::new(h);
    descend(h, &fp, x0, params, |_| {})
}

/// Like [`hopfield_descent`] with a precomputed float form and an observer
/// called with `x` before every step and once at the end.
pub fn descend(
    h: &Polynomial,
    fp: &FloatPolynomial,
    x0: &[f64],
    params: &DescentParams,
    mut observe: impl FnMut(&[f64]),
) -> Result<DescentOutcome, SolveError> {
    params.validate()?;
    let n = fp.vars.len();
    if x0.len() != n {
        return Err(SolveError::DimensionMismatch {
            expected: n,
            got: x0.len(),
        });
    }
    let mut x = x0.to_vec();
    let mut y = vec![0.0; n];
    let mut grad = vec![0.0; n];
    let rate = params.dt / params.tau;
    let mut converged = false;
    let mut steps = 0;
    while steps < params.max_steps {
        observe(&x);
        for (yi, xi) in y.iter_mut().zip(&x) {
            *yi = xi.tanh();
        }
        fp.gradient(&y, &mut grad);
        let mut worst = 0.0f64;
        for (xi, g) in x.iter_mut().zip(&grad) {
            let velocity = (-*xi - g) / params.tau;
            worst = worst.max(velocity.abs());
            *xi += rate * (-*xi - g);
        }
        steps += 1;
        if worst < params.convergence_eps {
            converged = true;
            break;
        }
    }
    observe(&x);
    let state = clamp(&fp.vars, &x);
    let energy = h.evaluate(&state)?;
    Ok(DescentOutcome {
        state,
        energy,
        converged,
        steps,
    })
}

/// Clamped-state counts over many random starts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrialHistogram {
    /// States are stored up to a global flip when the Hamiltonian is even.
    pub flip_canonical: bool,
    pub counts: BTreeMap<SpinAssignment, u64>,
    pub energies: BTreeMap<SpinAssignment, Rational>,
    pub trials: u64,
    pub unconverged: u64,
}

impl TrialHistogram {
    fn new(flip_canonical: bool) -> Self {
        TrialHistogram {
            flip_canonical,
            counts: BTreeMap::new(),
            energies: BTreeMap::new(),
            trials: 0,
            unconverged: 0,
        }
    }

    pub fn canonical(&self, s: &SpinAssignment) -> SpinAssignment {
        if self.flip_canonical {
            let f = s.flipped();
            if f < *s {
                return f;
            }
        }
        s.clone()
    }

    fn record(&mut self, outcome: DescentOutcome) {
        let key = self.canonical(&outcome.state);
        *self.counts.entry(key.clone()).or_default() += 1;
        self.energies.insert(key, outcome.energy);
        self.trials += 1;
        if !outcome.converged {
            self.unconverged += 1;
        }
    }

    /// Number of distinct clamped states.
    pub fn distinct(&self) -> usize {
        self.counts.len()
    }

    pub fn count(&self, s: &SpinAssignment) -> u64 {
        self.counts.get(&self.canonical(s)).copied().unwrap_or(0)
    }

    /// Rows sorted by energy, then by state string.
    pub fn rows(&self) -> Vec<(Rational, u64, String)> {
        let mut rows: Vec<_> = self
            .counts
            .iter()
            .map(|(s, &n)| (self.energies[s].clone(), n, s.sign_string()))
            .collect();
        rows.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.2.cmp(&b.2)));
        rows
    }

    /// `energy,count,state` CSV with a header line.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("energy,count,state\n");
        for (e, n, st) in self.rows() {
            let _ = writeln!(s, "{e},{n},{st}");
        }
        s
    }

    /// Reads rows written by [`TrialHistogram::to_csv`].
    pub fn parse_csv(text: &str) -> Result<Vec<(Rational, u64, String)>, SolveError> {
        let mut rows = Vec::new();
        for (k, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || (k == 0 && line == "energy,count,state") {
                continue;
            }
            let err = |m: &str| SolveError::Csv {
                line: k + 1,
                message: m.to_string(),
            };
            let mut parts = line.split(',');
            let (Some(e), Some(n), Some(st), None) =
                (parts.next(), parts.next(), parts.next(), parts.next())
            else {
                return Err(err("expected three fields"));
            };
            let e = parse_rational(e).ok_or_else(|| err("bad energy"))?;
            let n = n.parse().map_err(|_| err("bad count"))?;
            if st.is_empty() || !st.chars().all(|c| c == '+' || c == '-') {
                return Err(err("bad state"));
            }
            rows.push((e, n, st.to_string()));
        }
        Ok(rows)
    }
}

/// Uniform `x0 ∈ [−1, 1]^n` for trial `trial`, independent of any other trial.
pub fn trial_start(seed: u64, trial: u64, n: usize) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    (0..n).map(|_| rng.gen_range(-1.0..=1.0)).collect()
}

/// Runs `n_trials` descents from seeded random starts. Trials run in
/// parallel; the histogram does not depend on scheduling.
pub fn run_trials(
    h: &Polynomial,
    n_trials: u64,
    params: &DescentParams,
) -> Result<TrialHistogram, SolveError> {
    if n_trials == 0 {
        return Err(SolveError::NoTrials);
    }
    params.validate()?;
    let fp = FloatPolynomial::new(h);
    let n = fp.vars.len();
    let outcomes: Vec<DescentOutcome> = (0..n_trials)
        .into_par_iter()
        .map(|t| descend(h, &fp, &trial_start(params.seed, t, n), params, |_| {}))
        .collect::<Result<_, _>>()?;
    let mut hist = TrialHistogram::new(h.is_even());
    for o in outcomes {
        hist.record(o);
    }
    Ok(hist)
}
