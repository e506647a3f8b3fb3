#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use rand::seq::SliceRandom;
use rand::Rng;
use spinel_core::{Polynomial, Rational, Spin, SpinAssignment, SpinIndex};

/// Integer-scaled copy of a polynomial over a fixed variable order.
pub struct Scaled {
    pub vars: Vec<SpinIndex>,
    pub denom: i128,
    pub terms: Vec<(u64, i128)>,
}

impl Scaled {
    pub fn new(p: &Polynomial) -> Self {
        Self::over(p, &p.variable_list())
    }

    pub fn over(p: &Polynomial, vars: &[SpinIndex]) -> Self {
        let mut denom = BigInt::one();
        for (_, c) in p.terms() {
            denom = denom.lcm(c.denom());
        }
        let terms = p
            .terms()
            .map(|(m, c)| {
                let mask = m.indices().iter().fold(0u64, |acc, v| {
                    let pos = vars.iter().position(|x| x == v).expect("variable listed");
                    acc | 1 << pos
                });
                let scaled = c.numer() * (&denom / c.denom());
                (mask, scaled.to_i128().expect("small coefficient"))
            })
            .collect();
        Scaled {
            vars: vars.to_vec(),
            denom: denom.to_i128().expect("small denominator"),
            terms,
        }
    }

    /// Scaled energy where bit `j` of `code` set means `vars[j] = −1`.
    pub fn at(&self, code: u64) -> i128 {
        self.terms
            .iter()
            .map(|&(mask, c)| {
                if (mask & code).count_ones().is_multiple_of(2) {
                    c
                } else {
                    -c
                }
            })
            .sum()
    }

    pub fn rational(&self, scaled: i128) -> Rational {
        Rational::new(BigInt::from(scaled), BigInt::from(self.denom))
    }

    pub fn state(&self, code: u64) -> SpinAssignment {
        self.vars
            .iter()
            .enumerate()
            .map(|(j, &v)| {
                (
                    v,
                    if code >> j & 1 == 1 {
                        Spin::Down
                    } else {
                        Spin::Up
                    },
                )
            })
            .collect()
    }
}

/// Exhaustive minimum and ground set.
pub fn oracle_min(p: &Polynomial) -> (Rational, BTreeSet<SpinAssignment>) {
    let s = Scaled::new(p);
    assert!(s.vars.len() <= 26, "oracle limited to 26 spins");
    let mut best = i128::MAX;
    let mut codes = Vec::new();
    for code in 0..1u64 << s.vars.len() {
        let e = s.at(code);
        if e < best {
            best = e;
            codes.clear();
        }
        if e == best {
            codes.push(code);
        }
    }
    (
        s.rational(best),
        codes.into_iter().map(|c| s.state(c)).collect(),
    )
}

/// Minimum of a Hamiltonian whose terms split into small disconnected
/// components, enumerating each component separately.
pub fn oracle_min_by_components(p: &Polynomial) -> Rational {
    let mut parent: BTreeMap<SpinIndex, SpinIndex> =
        p.variables().iter().map(|&v| (v, v)).collect();
    fn find(parent: &mut BTreeMap<SpinIndex, SpinIndex>, v: SpinIndex) -> SpinIndex {
        let up = parent[&v];
        if up == v {
            return v;
        }
        let root = find(parent, up);
        parent.insert(v, root);
        root
    }
    for (m, _) in p.terms() {
        let idx = m.indices();
        for w in idx.windows(2) {
            let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
            parent.insert(a, b);
        }
    }
    let mut parts: BTreeMap<SpinIndex, Polynomial> = BTreeMap::new();
    let mut constant = Rational::default();
    for (m, c) in p.terms() {
        match m.indices().first() {
            None => constant += c,
            Some(&v) => {
                let root = find(&mut parent, v);
                let part = parts.entry(root).or_insert_with(Polynomial::zero);
                *part = &*part + &Polynomial::term(c.clone(), m.indices());
            }
        }
    }
    parts
        .values()
        .fold(constant, |acc, part| acc + oracle_min(part).0)
}

/// Random Hamiltonian on `1..=n` with locality at most `max_k`, distinct
/// neighbor counts at most `max_nbrs`, and small rational coefficients.
pub fn random_hamiltonian<R: Rng>(
    rng: &mut R,
    n: usize,
    max_k: usize,
    max_nbrs: usize,
) -> Polynomial {
    let vars: Vec<SpinIndex> = (1..=n as SpinIndex).collect();
    let mut h = Polynomial::over(vars.iter().copied());
    let target_terms = rng.gen_range(1..=3 * n);
    for _ in 0..target_terms * 4 {
        if h.num_terms() >= target_terms {
            break;
        }
        let k = rng.gen_range(1..=max_k.min(n));
        let picked: Vec<SpinIndex> = vars.choose_multiple(rng, k).copied().collect();
        let num = loop {
            let v: i64 = rng.gen_range(-9..=9);
            if v != 0 {
                break v;
            }
        };
        let den: i64 = [1, 1, 2, 3, 4][rng.gen_range(0..5)];
        let candidate = &h + &Polynomial::term(Rational::new(num.into(), den.into()), &picked);
        if candidate.max_neighbor_count() <= max_nbrs {
            h = candidate;
        }
    }
    if rng.gen_bool(0.5) {
        h = &h + &Polynomial::constant(Rational::new(rng.gen_range(-5i64..=5).into(), 2.into()));
    }
    h
}

/// Nonzero terms as a sorted list, ignoring declared-but-absent variables.
pub fn term_list(p: &Polynomial) -> Vec<(Vec<SpinIndex>, Rational)> {
    p.terms()
        .map(|(m, c)| (m.indices().to_vec(), c.clone()))
        .collect()
}
