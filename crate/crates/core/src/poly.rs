//! Sparse multilinear polynomials over Ising spins.
//!
//! Every Hamiltonian in the crate is a [`Polynomial`]: a map from [`Monomial`]
//! (a set of distinct spin indices) to an exact [`Rational`] coefficient,
//! together with a declared variable set. Because `s_i² = 1`, products of
//! monomials are symmetric differences of their index sets and every
//! polynomial stays multilinear.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Exact coefficient type.
pub type Rational = BigRational;

/// 1-based spin label. Labels are stable across a reduction pipeline.
pub type SpinIndex = u32;

/// Shorthand for an integer-valued [`Rational`].
pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Shorthand for `num / den`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("spin s{0} is not assigned")]
    Unassigned(SpinIndex),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid spin assignment: {0}")]
    Assignment(String),
}

/// A single Ising spin value.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Spin {
    Up,
    Down,
}

impl Spin {
    pub fn value(self) -> i64 {
        match self {
            Spin::Up => 1,
            Spin::Down => -1,
        }
    }

    /// Sign of a nonzero number; `None` for zero.
    pub fn from_sign(v: i64) -> Option<Spin> {
        match v.signum() {
            1 => Some(Spin::Up),
            -1 => Some(Spin::Down),
            _ => None,
        }
    }

    /// Configuration-code convention: bit value 1 means spin −1.
    pub fn from_bit(bit: bool) -> Spin {
        if bit {
            Spin::Down
        } else {
            Spin::Up
        }
    }

    pub fn is_down(self) -> bool {
        self == Spin::Down
    }

    pub fn flip(self) -> Spin {
        match self {
            Spin::Up => Spin::Down,
            Spin::Down => Spin::Up,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Spin::Up => '+',
            Spin::Down => '-',
        }
    }
}

impl Neg for Spin {
    type Output = Spin;
    fn neg(self) -> Spin {
        self.flip()
    }
}

/// Canonical product of distinct spins, stored strictly increasing.
///
/// Ordering is by size first, then lexicographic, so the constant monomial
/// sorts first and printed polynomials read from low to high order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<SpinIndex>);

impl Monomial {
    /// The empty product (constant term).
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn single(i: SpinIndex) -> Self {
        Monomial(vec![i])
    }

    /// Sorts the indices and cancels repeated pairs (`s_i·s_i = 1`).
    pub fn canonicalize<I: IntoIterator<Item = SpinIndex>>(indices: I) -> Self {
        let mut v: Vec<SpinIndex> = indices.into_iter().collect();
        v.sort_unstable();
        let mut out: Vec<SpinIndex> = Vec::with_capacity(v.len());
        for i in v {
            if out.last() == Some(&i) {
                out.pop();
            } else {
                out.push(i);
            }
        }
        Monomial(out)
    }

    /// Builds a monomial from indices that are already strictly increasing.
    pub(crate) fn from_sorted_unchecked(v: Vec<SpinIndex>) -> Self {
        debug_assert!(v.windows(2).all(|w| w[0] < w[1]));
        Monomial(v)
    }

    pub fn indices(&self) -> &[SpinIndex] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, i: SpinIndex) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    /// The monomial with `i` removed (unchanged when `i` is absent).
    pub fn without(&self, i: SpinIndex) -> Monomial {
        Monomial(self.0.iter().copied().filter(|&j| j != i).collect())
    }

    /// Product of two monomials: the symmetric difference of index sets.
    pub fn product(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// Value of the product under a full assignment of its spins.
    pub fn sign(&self, a: &SpinAssignment) -> Result<i64, PolyError> {
        let mut s = 1;
        for &i in &self.0 {
            s *= a.get(i).ok_or(PolyError::Unassigned(i))?.value();
        }
        Ok(s)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "s{i}")?;
        }
        Ok(())
    }
}

/// Free-function form of [`Monomial::canonicalize`].
pub fn canonicalize_monomial(indices: &[SpinIndex]) -> Monomial {
    Monomial::canonicalize(indices.iter().copied())
}

/// A partial or total map from spin index to ±1.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpinAssignment(BTreeMap<SpinIndex, Spin>);

impl SpinAssignment {
    pub fn new() -> Self {
        Self::default()
    }

    /// Assigns `vars[k]` from bit `k` of `code` (bit 1 ↦ −1).
    pub fn from_code(vars: &[SpinIndex], code: u64) -> Self {
        SpinAssignment(
            vars.iter()
                .enumerate()
                .map(|(k, &v)| (v, Spin::from_bit(code >> k & 1 == 1)))
                .collect(),
        )
    }

    /// Assigns spins `1..=values.len()` from a ±1 slice.
    pub fn from_values(values: &[i64]) -> Result<Self, PolyError> {
        let mut out = SpinAssignment::new();
        for (k, &v) in values.iter().enumerate() {
            let s = match v {
                1 => Spin::Up,
                -1 => Spin::Down,
                _ => return Err(PolyError::Assignment(format!("value {v} is not ±1"))),
            };
            out.set(k as SpinIndex + 1, s);
        }
        Ok(out)
    }

    pub fn set(&mut self, i: SpinIndex, s: Spin) -> Option<Spin> {
        self.0.insert(i, s)
    }

    pub fn with(mut self, i: SpinIndex, s: Spin) -> Self {
        self.0.insert(i, s);
        self
    }

    pub fn get(&self, i: SpinIndex) -> Option<Spin> {
        self.0.get(&i).copied()
    }

    pub fn contains(&self, i: SpinIndex) -> bool {
        self.0.contains_key(&i)
    }

    pub fn remove(&mut self, i: SpinIndex) -> Option<Spin> {
        self.0.remove(&i)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (SpinIndex, Spin)> + '_ {
        self.0.iter().map(|(&i, &s)| (i, s))
    }

    pub fn indices(&self) -> impl Iterator<Item = SpinIndex> + '_ {
        self.0.keys().copied()
    }

    /// Keeps only the listed spins.
    pub fn restrict(&self, vars: &BTreeSet<SpinIndex>) -> SpinAssignment {
        SpinAssignment(
            self.0
                .iter()
                .filter(|(i, _)| vars.contains(i))
                .map(|(&i, &s)| (i, s))
                .collect(),
        )
    }

    pub fn flipped(&self) -> SpinAssignment {
        SpinAssignment(self.0.iter().map(|(&i, &s)| (i, s.flip())).collect())
    }

    /// `+`/`-` characters in ascending index order.
    pub fn sign_string(&self) -> String {
        self.0.values().map(|s| s.symbol()).collect()
    }

    /// Inverse of [`SpinAssignment::from_code`].
    pub fn code(&self, vars: &[SpinIndex]) -> Option<u64> {
        let mut code = 0u64;
        for (k, &v) in vars.iter().enumerate() {
            if self.get(v)?.is_down() {
                code |= 1 << k;
            }
        }
        Some(code)
    }
}

impl FromIterator<(SpinIndex, Spin)> for SpinAssignment {
    fn from_iter<T: IntoIterator<Item = (SpinIndex, Spin)>>(iter: T) -> Self {
        SpinAssignment(iter.into_iter().collect())
    }
}

impl fmt::Display for SpinAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (i, s)) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "s{i}={}1", s.symbol())?;
        }
        Ok(())
    }
}

/// Parses `s1=+1 s2=-1 ...` (commas are accepted as separators too).
impl FromStr for SpinAssignment {
    type Err = PolyError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut out = SpinAssignment::new();
        for tok in text.split(|c: char| c.is_whitespace() || c == ',') {
            if tok.is_empty() {
                continue;
            }
            let (lhs, rhs) = tok
                .split_once('=')
                .ok_or_else(|| PolyError::Assignment(format!("expected s<i>=±1, got {tok:?}")))?;
            let idx: SpinIndex = lhs
                .trim_start_matches('s')
                .parse()
                .map_err(|_| PolyError::Assignment(format!("bad spin label {lhs:?}")))?;
            if idx == 0 {
                return Err(PolyError::Assignment("spin labels are 1-based".into()));
            }
            let spin = match rhs {
                "+1" | "1" | "+" => Spin::Up,
                "-1" | "-" => Spin::Down,
                _ => return Err(PolyError::Assignment(format!("bad spin value {rhs:?}"))),
            };
            if out.set(idx, spin).is_some() {
                return Err(PolyError::Assignment(format!("s{idx} assigned twice")));
            }
        }
        Ok(out)
    }
}

/// Multilinear polynomial in Ising spins with exact coefficients.
///
/// Zero coefficients are never stored. The declared variable set always
/// contains every index that occurs in a term and may contain more; a
/// polynomial whose terms vanished still remembers its variables.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Rational>,
    vars: BTreeSet<SpinIndex>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(Monomial::one(), c);
        p
    }

    /// The zero polynomial over the given variables.
    pub fn over<I: IntoIterator<Item = SpinIndex>>(vars: I) -> Self {
        Polynomial {
            terms: BTreeMap::new(),
            vars: vars.into_iter().collect(),
        }
    }

    /// Single term `c · ∏ s_i`; repeated indices cancel.
    pub fn term(c: Rational, indices: &[SpinIndex]) -> Self {
        let mut p = Self::zero();
        p.add_term(canonicalize_monomial(indices), c);
        p
    }

    /// Sum of integer-coefficient terms, convenient for literals.
    pub fn from_int_terms(terms: &[(i64, &[SpinIndex])]) -> Self {
        let mut p = Self::zero();
        for (c, idx) in terms {
            p.add_term(canonicalize_monomial(idx), int(*c));
        }
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Accumulates `c · m`, dropping the monomial if it cancels to zero.
    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        self.vars.extend(m.indices().iter().copied());
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn declare(&mut self, v: SpinIndex) {
        self.vars.insert(v);
    }

    pub fn declare_all<I: IntoIterator<Item = SpinIndex>>(&mut self, vars: I) {
        self.vars.extend(vars);
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn variables(&self) -> &BTreeSet<SpinIndex> {
        &self.vars
    }

    pub fn variable_list(&self) -> Vec<SpinIndex> {
        self.vars.iter().copied().collect()
    }

    pub fn num_variables(&self) -> usize {
        self.vars.len()
    }

    /// Variables that occur in at least one term.
    pub fn support(&self) -> BTreeSet<SpinIndex> {
        self.terms
            .keys()
            .flat_map(|m| m.indices().iter().copied())
            .collect()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeff_of(&self, indices: &[SpinIndex]) -> Rational {
        self.coefficient(&canonicalize_monomial(indices))
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&Monomial::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True when no term mentions a spin.
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_empty)
    }

    /// Largest monomial size (0 for constants).
    pub fn locality(&self) -> usize {
        self.terms.keys().map(Monomial::len).max().unwrap_or(0)
    }

    /// Number of distinct monomials of size ≥ 2 containing `v`.
    pub fn degree(&self, v: SpinIndex) -> usize {
        self.terms
            .keys()
            .filter(|m| m.len() >= 2 && m.contains(v))
            .count()
    }

    /// Spins sharing at least one term with `v`.
    pub fn neighbors(&self, v: SpinIndex) -> BTreeSet<SpinIndex> {
        self.terms
            .keys()
            .filter(|m| m.contains(v))
            .flat_map(|m| m.indices().iter().copied())
            .filter(|&u| u != v)
            .collect()
    }

    /// Neighbor sets of every declared variable in one pass.
    pub fn adjacency(&self) -> BTreeMap<SpinIndex, BTreeSet<SpinIndex>> {
        let mut adj: BTreeMap<SpinIndex, BTreeSet<SpinIndex>> =
            self.vars.iter().map(|&v| (v, BTreeSet::new())).collect();
        for m in self.terms.keys() {
            for &u in m.indices() {
                let entry = adj.entry(u).or_default();
                entry.extend(m.indices().iter().copied().filter(|&w| w != u));
            }
        }
        adj
    }

    /// Largest neighbor count over all variables.
    pub fn max_neighbor_count(&self) -> usize {
        self.adjacency()
            .values()
            .map(BTreeSet::len)
            .max()
            .unwrap_or(0)
    }

    /// True when every monomial has even size (so `H(−s) = H(s)`).
    pub fn is_even(&self) -> bool {
        self.terms.keys().all(|m| m.len() % 2 == 0)
    }

    /// Exact value under an assignment covering every declared variable.
    pub fn evaluate(&self, a: &SpinAssignment) -> Result<Rational, PolyError> {
        if let Some(&missing) = self.vars.iter().find(|&&v| !a.contains(v)) {
            return Err(PolyError::Unassigned(missing));
        }
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            if m.sign(a)? > 0 {
                total += c;
            } else {
                total -= c;
            }
        }
        Ok(total)
    }

    pub fn scale(&self, k: &Rational) -> Polynomial {
        if k.is_zero() {
            return Polynomial::over(self.vars.iter().copied());
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
            vars: self.vars.clone(),
        }
    }

    /// Fixes `v` to a value, removing it from the variable set.
    pub fn substitute(&self, v: SpinIndex, s: Spin) -> Polynomial {
        let mut out = Polynomial::over(self.vars.iter().copied().filter(|&u| u != v));
        for (m, c) in &self.terms {
            if m.contains(v) && s == Spin::Down {
                out.add_term(m.without(v), -c.clone());
            } else {
                out.add_term(m.without(v), c.clone());
            }
        }
        out
    }

    /// Renames variables through `map`; unmapped indices keep their label.
    pub fn relabel(&self, map: &BTreeMap<SpinIndex, SpinIndex>) -> Polynomial {
        let rename = |i: SpinIndex| map.get(&i).copied().unwrap_or(i);
        let mut out = Polynomial::over(self.vars.iter().map(|&v| rename(v)));
        for (m, c) in &self.terms {
            out.add_term(
                Monomial::canonicalize(m.indices().iter().map(|&i| rename(i))),
                c.clone(),
            );
        }
        out
    }

    /// Upper bound on `|H(s)|`, the sum of absolute coefficients.
    pub fn abs_coefficient_sum(&self) -> Rational {
        self.terms.values().map(|c| c.abs()).sum()
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out.vars.extend(rhs.vars.iter().copied());
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
            vars: self.vars.clone(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::over(self.vars.union(&rhs.vars).copied());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.product(mb), ca * cb);
            }
        }
        out
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

/// Free-function form of `p + q`.
pub fn add(p: &Polynomial, q: &Polynomial) -> Polynomial {
    p + q
}

/// Free-function form of [`Polynomial::evaluate`].
pub fn evaluate(p: &Polynomial, a: &SpinAssignment) -> Result<Rational, PolyError> {
    p.evaluate(a)
}

/// Integer image of a polynomial for fast exhaustive evaluation.
///
/// Coefficients are multiplied by the least common denominator and stored as
/// `i128`; each monomial becomes a bit mask over the variable list. A
/// configuration code `x` (bit `k` set ⇔ `vars[k] = −1`) then evaluates to
/// `Σ c_m · (−1)^popcount(x & mask_m)`, divided by [`PackedPolynomial::denominator`].
#[derive(Clone, Debug)]
pub struct PackedPolynomial {
    vars: Vec<SpinIndex>,
    denominator: BigInt,
    terms: Vec<(u64, i128)>,
}

impl PackedPolynomial {
    /// Packs over the declared variables. `None` when there are more than 64
    /// variables or the scaled coefficients could overflow `i128`.
    pub fn new(p: &Polynomial) -> Option<Self> {
        Self::over(p, p.variable_list())
    }

    /// Packs over an explicit variable order (a superset of the support).
    pub fn over(p: &Polynomial, vars: Vec<SpinIndex>) -> Option<Self> {
        if vars.len() > 64 {
            return None;
        }
        let position: BTreeMap<SpinIndex, usize> =
            vars.iter().enumerate().map(|(k, &v)| (v, k)).collect();
        let denominator = p
            .terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut bound = BigInt::zero();
        let mut terms = Vec::with_capacity(p.terms.len());
        for (m, c) in &p.terms {
            let mut mask = 0u64;
            for i in m.indices() {
                mask |= 1 << position.get(i)?;
            }
            let scaled = c.numer() * (&denominator / c.denom());
            bound += scaled.abs();
            terms.push((mask, scaled.to_i128()?));
        }
        // Leave headroom for transforms that multiply by up to 2^d.
        if bound.bits() > 126 - vars.len() as u64 {
            return None;
        }
        Some(PackedPolynomial {
            vars,
            denominator,
            terms,
        })
    }

    pub fn variables(&self) -> &[SpinIndex] {
        &self.vars
    }

    pub fn denominator(&self) -> &BigInt {
        &self.denominator
    }

    pub fn terms(&self) -> &[(u64, i128)] {
        &self.terms
    }

    /// Energy times the denominator.
    #[inline]
    pub fn scaled_energy(&self, code: u64) -> i128 {
        self.terms
            .iter()
            .map(|&(mask, c)| {
                if (code & mask).count_ones() & 1 == 0 {
                    c
                } else {
                    -c
                }
            })
            .sum()
    }

    pub fn energy(&self, code: u64) -> Rational {
        Rational::new(
            BigInt::from(self.scaled_energy(code)),
            self.denominator.clone(),
        )
    }

    pub fn to_rational(&self, scaled: i128) -> Rational {
        Rational::new(BigInt::from(scaled), self.denominator.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h_i() -> Polynomial {
        Polynomial::from_int_terms(&[
            (1, &[1, 2]),
            (2, &[1, 3, 4]),
            (-1, &[1, 4, 5]),
            (3, &[2, 3, 4]),
            (-1, &[3, 4, 5]),
            (2, &[2, 4, 5]),
            (-1, &[3, 5]),
            (3, &[4, 5]),
            (1, &[2, 3]),
            (2, &[3, 4]),
            (1, &[1, 5]),
        ])
    }

    #[test]
    fn canonicalize_cancels_pairs() {
        assert_eq!(canonicalize_monomial(&[3, 1, 3]).indices(), &[1]);
        assert!(canonicalize_monomial(&[]).is_empty());
        assert!(canonicalize_monomial(&[2, 5, 2, 5]).is_empty());
        assert_eq!(canonicalize_monomial(&[4, 2, 9]).indices(), &[2, 4, 9]);
    }

    #[test]
    fn worked_example_energy() {
        let a = SpinAssignment::from_values(&[1, 1, -1, 1, -1]).unwrap();
        assert_eq!(h_i().evaluate(&a).unwrap(), int(-14));
    }

    #[test]
    fn constant_evaluates_everywhere() {
        let p = Polynomial::constant(int(7));
        assert_eq!(p.evaluate(&SpinAssignment::new()).unwrap(), int(7));
        let a = SpinAssignment::from_values(&[-1, 1]).unwrap();
        assert_eq!(p.evaluate(&a).unwrap(), int(7));
    }

    #[test]
    fn symmetric_three_spin_value() {
        let p = &Polynomial::constant(ratio(-3, 2))
            + &Polynomial::from_int_terms(&[(1, &[1, 2]), (1, &[1, 3]), (1, &[2, 3])])
                .scale(&ratio(-1, 2));
        let a = SpinAssignment::from_values(&[1, 1, 1]).unwrap();
        assert_eq!(p.evaluate(&a).unwrap(), int(-3));
    }

    #[test]
    fn unassigned_variable_is_named() {
        let p = Polynomial::from_int_terms(&[(1, &[1, 4])]);
        let a = SpinAssignment::new().with(1, Spin::Up);
        assert_eq!(p.evaluate(&a), Err(PolyError::Unassigned(4)));
    }

    #[test]
    fn addition_cancels_and_keeps_variables() {
        let p = Polynomial::from_int_terms(&[(1, &[1, 2])]);
        let sum = &p + &(-&p);
        assert!(sum.is_zero());
        assert_eq!(sum.variable_list(), vec![1, 2]);

        let q = Polynomial::from_int_terms(&[(1, &[]), (1, &[1])]);
        let r = Polynomial::from_int_terms(&[(1, &[2])]);
        assert_eq!(
            &q + &r,
            Polynomial::from_int_terms(&[(1, &[]), (1, &[1]), (1, &[2])])
        );
    }

    #[test]
    fn removing_local_block_leaves_no_s1() {
        let block =
            Polynomial::from_int_terms(&[(1, &[2]), (2, &[3, 4]), (1, &[5]), (-1, &[4, 5])]);
        let s1 = Polynomial::from_int_terms(&[(1, &[1])]);
        let rest = &h_i() + &(-(&s1 * &block));
        assert!(rest.terms().all(|(m, _)| !m.contains(1)));
        assert_eq!(rest.num_terms(), 7);
    }

    #[test]
    fn locality_and_degree() {
        let p = h_i();
        assert_eq!(p.locality(), 3);
        assert_eq!(p.degree(1), 4);
        assert_eq!(
            p.neighbors(1).into_iter().collect::<Vec<_>>(),
            vec![2, 3, 4, 5]
        );
    }

    #[test]
    fn substitution_fixes_a_spin() {
        let p = Polynomial::from_int_terms(&[(2, &[1, 2]), (3, &[2])]);
        let q = p.substitute(2, Spin::Down);
        assert_eq!(q, Polynomial::from_int_terms(&[(-2, &[1]), (-3, &[])]));
        assert_eq!(q.variable_list(), vec![1]);
    }

    #[test]
    fn packed_matches_exact_evaluation() {
        let p = &h_i() + &Polynomial::term(ratio(1, 3), &[2, 5]);
        let packed = PackedPolynomial::new(&p).unwrap();
        let vars = p.variable_list();
        for code in 0..32u64 {
            let a = SpinAssignment::from_code(&vars, code);
            assert_eq!(packed.energy(code), p.evaluate(&a).unwrap());
        }
    }

    #[test]
    fn assignment_text_round_trip() {
        let a = SpinAssignment::from_values(&[1, -1, 1]).unwrap();
        assert_eq!(a.to_string(), "s1=+1 s2=-1 s3=+1");
        assert_eq!(a.to_string().parse::<SpinAssignment>().unwrap(), a);
        assert!("s0=+1".parse::<SpinAssignment>().is_err());
        assert!("s1=+1 s1=-1".parse::<SpinAssignment>().is_err());
    }
}
