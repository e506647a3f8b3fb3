//! Multilinear expansion of functions on `{±1}^d`.
//!
//! Configuration codes follow one fixed convention throughout the crate:
//! bit `j−1` of the code is 0 when `s_j = +1` and 1 when `s_j = −1`. In a
//! coefficient vector the same bit pattern names a subset, bit `j−1` set
//! meaning `j ∈ S`.

use std::ops::{Add, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::poly::{Monomial, PackedPolynomial, Polynomial, Rational, SpinIndex};

/// Largest neighborhood expanded through a `2^d` table unless overridden.
pub const DEFAULT_NEIGHBORHOOD_CAP: usize = 22;

/// Largest `d` accepted by the `O(4^d)` direct oracle.
pub const DEFAULT_ORACLE_CAP: usize = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExpandError {
    #[error("table length {0} is not a power of two")]
    NotPowerOfTwo(usize),
    #[error("{d} variables exceed the expansion cap of {cap}")]
    CapExceeded { d: usize, cap: usize },
    #[error("every sign weight is zero")]
    AllZero,
    #[error("sign weights must be +1, -1 or 0, got {0}")]
    BadSign(i8),
}

/// Function values on `{±1}^d`, indexed by configuration code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValueTable {
    d: usize,
    values: Vec<Rational>,
}

impl ValueTable {
    pub fn new(values: Vec<Rational>) -> Result<Self, ExpandError> {
        let len = values.len();
        if !len.is_power_of_two() {
            return Err(ExpandError::NotPowerOfTwo(len));
        }
        Ok(ValueTable {
            d: len.trailing_zeros() as usize,
            values,
        })
    }

    /// Tabulates `f` over all codes `0..2^d`.
    pub fn from_fn(d: usize, f: impl Fn(u64) -> Rational) -> Self {
        ValueTable {
            d,
            values: (0..1u64 << d).map(f).collect(),
        }
    }

    /// Tabulates a polynomial over variables `1..=d`.
    pub fn from_polynomial(p: &Polynomial, d: usize) -> Self {
        let vars: Vec<SpinIndex> = (1..=d as SpinIndex).collect();
        let packed = PackedPolynomial::over(p, vars).expect("polynomial fits the packed form");
        Self::from_fn(d, |x| packed.energy(x))
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }
}

/// In-place unnormalized Walsh–Hadamard butterfly: after the call
/// `data[i] = Σ_x data_in[x] · (−1)^popcount(x & i)`.
pub(crate) fn butterfly<T>(data: &mut [T])
where
    for<'a> &'a T: Add<&'a T, Output = T> + Sub<&'a T, Output = T>,
{
    let n = data.len();
    debug_assert!(n.is_power_of_two());
    let mut h = 1;
    while h < n {
        for block in data.chunks_mut(2 * h) {
            let (lo, hi) = block.split_at_mut(h);
            for (x, y) in lo.iter_mut().zip(hi.iter_mut()) {
                let sum = &*x + &*y;
                let diff = &*x - &*y;
                *x = sum;
                *y = diff;
            }
        }
        h *= 2;
    }
}

/// Normalized Walsh coefficients of a value vector of length `2^d`.
///
/// Output index `i` holds the coefficient of `∏_{j: bit j−1 of i set} s_j`.
/// Runs in `O(d·2^d)`.
pub fn fwht(values: &[Rational]) -> Result<Vec<Rational>, ExpandError> {
    let len = values.len();
    if !len.is_power_of_two() {
        return Err(ExpandError::NotPowerOfTwo(len));
    }
    let mut data = values.to_vec();
    butterfly(&mut data);
    let norm = Rational::from_integer(BigInt::from(len));
    Ok(data.into_iter().map(|v| v / &norm).collect())
}

fn monomial_of_mask(mask: u64, vars: &[SpinIndex]) -> Monomial {
    let idx = (0..vars.len())
        .filter(|&k| mask >> k & 1 == 1)
        .map(|k| vars[k])
        .collect();
    Monomial::from_sorted_unchecked(idx)
}

fn table_vars(d: usize) -> Vec<SpinIndex> {
    (1..=d as SpinIndex).collect()
}

/// Multilinear polynomial over `s_1..s_d` agreeing with the table, via the FWHT.
pub fn walsh_expand(table: &ValueTable) -> Polynomial {
    let vars = table_vars(table.d);
    let coeffs = fwht(&table.values).expect("table length is a power of two");
    let mut out = Polynomial::over(vars.iter().copied());
    for (i, c) in coeffs.into_iter().enumerate() {
        out.add_term(monomial_of_mask(i as u64, &vars), c);
    }
    out
}

/// Direct Walsh sums `c_S = 2^{−d} Σ_σ F(σ) ∏_{i∈S} σ_i`, one subset at a time.
///
/// This costs `O(4^d)` and exists as an oracle independent of [`fwht`].
pub fn direct_expand(table: &ValueTable, cap: usize) -> Result<Polynomial, ExpandError> {
    let d = table.d;
    if d > cap {
        return Err(ExpandError::CapExceeded { d, cap });
    }
    let vars = table_vars(d);
    let size = 1u64 << d;
    let norm = Rational::from_integer(BigInt::from(size));
    let mut out = Polynomial::over(vars.iter().copied());
    for subset in 0..size {
        let mut acc = Rational::zero();
        for (x, value) in table.values.iter().enumerate() {
            let parity = (x as u64 & subset).count_ones() % 2;
            if parity == 0 {
                acc += value;
            } else {
                acc -= value;
            }
        }
        out.add_term(monomial_of_mask(subset, &vars), acc / &norm);
    }
    Ok(out)
}

/// The unique multilinear `F` with `F(ŝ) = −|P(ŝ)|`, using the default cap.
pub fn expand_neg_abs(p: &Polynomial) -> Result<Polynomial, ExpandError> {
    expand_neg_abs_capped(p, DEFAULT_NEIGHBORHOOD_CAP)
}

/// [`expand_neg_abs`] with an explicit bound on the number of variables.
///
/// The value table is produced by an inverse transform of the coefficient
/// vector, folded through `−|·|`, and transformed back. All arithmetic is on
/// integers scaled by the common denominator, so the result is exact.
pub fn expand_neg_abs_capped(p: &Polynomial, cap: usize) -> Result<Polynomial, ExpandError> {
    let support: Vec<SpinIndex> = p.support().into_iter().collect();
    let d = support.len();
    if d > cap {
        return Err(ExpandError::CapExceeded { d, cap });
    }
    let mut out = Polynomial::over(p.variables().iter().copied());
    if p.is_zero() {
        return Ok(out);
    }
    match PackedPolynomial::over(p, support.clone()) {
        Some(packed) => {
            let mut table = vec![0i128; 1 << d];
            for &(mask, c) in packed.terms() {
                table[mask as usize] += c;
            }
            butterfly(&mut table);
            for v in table.iter_mut() {
                *v = -v.abs();
            }
            butterfly(&mut table);
            let denom: BigInt = packed.denominator() << d;
            for (i, v) in table.into_iter().enumerate() {
                if v != 0 {
                    out.add_term(
                        monomial_of_mask(i as u64, &support),
                        Rational::new(BigInt::from(v), denom.clone()),
                    );
                }
            }
        }
        None => {
            let denom_lcm = p.terms().fold(BigInt::one(), |acc, (_, c)| {
                num_integer::Integer::lcm(&acc, c.denom())
            });
            let mut table = vec![BigInt::zero(); 1 << d];
            for (m, c) in p.terms() {
                let mut mask = 0usize;
                for i in m.indices() {
                    mask |= 1 << support.binary_search(i).expect("index in support");
                }
                table[mask] += c.numer() * (&denom_lcm / c.denom());
            }
            butterfly(&mut table);
            for v in table.iter_mut() {
                *v = -v.abs();
            }
            butterfly(&mut table);
            let denom: BigInt = denom_lcm << d;
            for (i, v) in table.into_iter().enumerate() {
                if !v.is_zero() {
                    out.add_term(
                        monomial_of_mask(i as u64, &support),
                        Rational::new(v, denom.clone()),
                    );
                }
            }
        }
    }
    Ok(out)
}

fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Coefficients `c_0, c_2, …` of `−|s_1 + … + s_n|`, shared by all subsets
/// of the same (even) size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricCoeffs {
    n: usize,
    c: Vec<Rational>,
}

impl SymmetricCoeffs {
    pub fn arity(&self) -> usize {
        self.n
    }

    /// `c_0, c_2, …, c_{2⌊n/2⌋}`.
    pub fn even_coefficients(&self) -> &[Rational] {
        &self.c
    }

    /// Coefficient shared by every subset of the given size; zero for odd sizes.
    pub fn coefficient(&self, size: usize) -> Rational {
        if size % 2 == 1 || size > self.n {
            Rational::zero()
        } else {
            self.c[size / 2].clone()
        }
    }

    /// Assembles `Σ_k c_{2k} Σ_{|S|=2k} ∏_{i∈S} t_i` with `t_i = σ_i s_{targets[i]}`.
    fn assemble_signed(&self, targets: &[(SpinIndex, i8)]) -> Polynomial {
        assert_eq!(targets.len(), self.n, "one target per symmetric slot");
        let mut out = Polynomial::over(targets.iter().map(|t| t.0));
        for mask in 0u64..1 << self.n {
            let size = mask.count_ones() as usize;
            if size % 2 == 1 {
                continue;
            }
            let mut sign = 1i8;
            let mut idx = Vec::with_capacity(size);
            for (k, &(v, s)) in targets.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    sign *= s;
                    idx.push(v);
                }
            }
            let c = &self.c[size / 2];
            let c = if sign < 0 { -c.clone() } else { c.clone() };
            out.add_term(Monomial::canonicalize(idx), c);
        }
        out
    }

    /// The symmetric expansion placed on the given spins.
    pub fn assemble(&self, targets: &[SpinIndex]) -> Polynomial {
        let signed: Vec<_> = targets.iter().map(|&v| (v, 1)).collect();
        self.assemble_signed(&signed)
    }
}

/// Closed-form coefficients of `−|s_1 + … + s_n|` from exact binomial sums.
///
/// Configurations are grouped by the number `j` of spins at −1; within a
/// group, `r` of the `2k` chosen spins are negative in `C(j,r)·C(n−j,2k−r)`
/// ways.
pub fn symmetric_coeffs(n: usize) -> SymmetricCoeffs {
    assert!(n >= 1, "symmetric expansion needs at least one spin");
    let two_n = BigInt::one() << n;
    let c = (0..=n / 2)
        .map(|k| {
            let order = 2 * k;
            let mut total = BigInt::zero();
            for j in 0..=n {
                let value = -BigInt::from((n as i64 - 2 * j as i64).abs());
                let mut inner = BigInt::zero();
                for r in 0..=order {
                    let ways = binomial(j, r) * binomial(n - j, order - r);
                    if r % 2 == 0 {
                        inner += ways;
                    } else {
                        inner -= ways;
                    }
                }
                total += binomial(n, j) * value * inner;
            }
            Rational::new(total, &two_n * binomial(n, order))
        })
        .collect();
    SymmetricCoeffs { n, c }
}

/// Expansion of `−|Σ σ_i s_i|` over spins `1..=n` with `σ_i ∈ {+1, −1, 0}`.
pub fn signed_symmetric_expand(sigma: &[i8]) -> Result<Polynomial, ExpandError> {
    let weights: Vec<_> = sigma
        .iter()
        .enumerate()
        .map(|(k, &s)| (k as SpinIndex + 1, s))
        .collect();
    signed_symmetric_on(&weights)
}

/// Expansion of `−|Σ σ_v s_v|` over explicit spins; zero weights are dropped.
pub fn signed_symmetric_on(weights: &[(SpinIndex, i8)]) -> Result<Polynomial, ExpandError> {
    if let Some(&(_, bad)) = weights.iter().find(|(_, s)| !matches!(s, -1..=1)) {
        return Err(ExpandError::BadSign(bad));
    }
    let live: Vec<_> = weights.iter().copied().filter(|&(_, s)| s != 0).collect();
    if live.is_empty() {
        return Err(ExpandError::AllZero);
    }
    Ok(symmetric_coeffs(live.len()).assemble_signed(&live))
}

/// If `p` is `λ·Σ σ_i s_i` with `σ_i = ±1` and no constant, returns `(|λ|, σ)`.
pub(crate) fn as_signed_uniform(p: &Polynomial) -> Option<(Rational, Vec<(SpinIndex, i8)>)> {
    let mut magnitude: Option<Rational> = None;
    let mut weights = Vec::new();
    for (m, c) in p.terms() {
        if m.len() != 1 {
            return None;
        }
        let abs = c.abs();
        match &magnitude {
            None => magnitude = Some(abs),
            Some(mag) if *mag == abs => {}
            Some(_) => return None,
        }
        weights.push((m.indices()[0], if c.is_positive() { 1 } else { -1 }));
    }
    magnitude.map(|m| (m, weights))
}
