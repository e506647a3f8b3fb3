//! Closed-form expansions of `−|P|` for a few fixed block shapes.
//!
//! Slot formulas use binary subscripts: in `h_i`, bit `j` of `i` set means
//! `σ_j = +1` and clear means `σ_j = −1`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::poly::{Monomial, Polynomial, Rational, SpinIndex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GadgetKind {
    /// `P = b s_b + c s_c`; slots `[b, c]`, targets `[s_b, s_c]`.
    TwoSpin,
    /// `P = a + b s_b + c s_c`; slots `[a, b, c]`, targets `[s_b, s_c]`.
    TwoSpinField,
    /// `P = b s_b + c s_c + d s_d`; slots `[b, c, d]`, targets `[s_b, s_c, s_d]`.
    ThreeSpin,
    /// `P = a s_b s_c + b s_b + c s_c`; slots `[a, b, c]`, targets `[s_b, s_c]`.
    Triplet,
    /// `P = a s1 s2 + b s1 s3 + c s2 + d s3`; slots `[a, b, c, d]`, targets `[s1, s2, s3]`.
    TwoBody,
    /// `P = a s1 s2 s3 + b s1 s2 s4 + c s3 + d s4`; slots `[a, b, c, d]`, targets `[s1..s4]`.
    ThreeBody,
}

impl GadgetKind {
    pub const ALL: [GadgetKind; 6] = [
        GadgetKind::TwoSpin,
        GadgetKind::TwoSpinField,
        GadgetKind::ThreeSpin,
        GadgetKind::Triplet,
        GadgetKind::TwoBody,
        GadgetKind::ThreeBody,
    ];

    pub fn slots(self) -> usize {
        match self {
            GadgetKind::TwoSpin => 2,
            GadgetKind::TwoSpinField | GadgetKind::ThreeSpin | GadgetKind::Triplet => 3,
            GadgetKind::TwoBody | GadgetKind::ThreeBody => 4,
        }
    }

    /// Number of target spins.
    pub fn arity(self) -> usize {
        match self {
            GadgetKind::TwoSpin | GadgetKind::TwoSpinField | GadgetKind::Triplet => 2,
            GadgetKind::ThreeSpin | GadgetKind::TwoBody => 3,
            GadgetKind::ThreeBody => 4,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GadgetKind::TwoSpin => "two-spin",
            GadgetKind::TwoSpinField => "two-spin-field",
            GadgetKind::ThreeSpin => "three-spin",
            GadgetKind::Triplet => "triplet",
            GadgetKind::TwoBody => "two-body",
            GadgetKind::ThreeBody => "three-body",
        }
    }

    /// Monomials of `P` for this kind, one per slot, as positions into `targets`.
    fn slot_monomials(self) -> &'static [&'static [usize]] {
        match self {
            GadgetKind::TwoSpin => &[&[0], &[1]],
            GadgetKind::TwoSpinField => &[&[], &[0], &[1]],
            GadgetKind::ThreeSpin => &[&[0], &[1], &[2]],
            GadgetKind::Triplet => &[&[0, 1], &[0], &[1]],
            GadgetKind::TwoBody => &[&[0, 1], &[0, 2], &[1], &[2]],
            GadgetKind::ThreeBody => &[&[0, 1, 2], &[0, 1, 3], &[2], &[3]],
        }
    }

    /// The block `P` whose `−|P|` this gadget expands.
    pub fn local_block(
        self,
        coeffs: &[Rational],
        targets: &[SpinIndex],
    ) -> Result<Polynomial, GadgetError> {
        self.check(coeffs, targets)?;
        let mut p = Polynomial::over(targets.iter().copied());
        for (c, slot) in coeffs.iter().zip(self.slot_monomials()) {
            let m = Monomial::canonicalize(slot.iter().map(|&k| targets[k]));
            p.add_term(m, c.clone());
        }
        Ok(p)
    }

    fn check(self, coeffs: &[Rational], targets: &[SpinIndex]) -> Result<(), GadgetError> {
        if coeffs.len() != self.slots() {
            return Err(GadgetError::SlotMismatch {
                kind: self,
                expected: self.slots(),
                got: coeffs.len(),
            });
        }
        if targets.len() != self.arity() {
            return Err(GadgetError::ArityMismatch {
                kind: self,
                expected: self.arity(),
                got: targets.len(),
            });
        }
        for (k, t) in targets.iter().enumerate() {
            if targets[..k].contains(t) {
                return Err(GadgetError::DuplicateTarget(*t));
            }
        }
        Ok(())
    }
}

impl fmt::Display for GadgetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GadgetKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        GadgetKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| format!("unknown gadget {s:?}"))
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GadgetError {
    #[error("{kind} takes {expected} coefficients, got {got}")]
    SlotMismatch {
        kind: GadgetKind,
        expected: usize,
        got: usize,
    },
    #[error("{kind} takes {expected} target spins, got {got}")]
    ArityMismatch {
        kind: GadgetKind,
        expected: usize,
        got: usize,
    },
    #[error("target spin s{0} appears twice")]
    DuplicateTarget(SpinIndex),
}

/// Constant plus coefficients keyed by target monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GadgetResult {
    pub kind: GadgetKind,
    pub targets: Vec<SpinIndex>,
    pub constant: Rational,
    pub coefficients: BTreeMap<Monomial, Rational>,
}

impl GadgetResult {
    pub fn to_polynomial(&self) -> Polynomial {
        let mut p = Polynomial::over(self.targets.iter().copied());
        p.add_term(Monomial::one(), self.constant.clone());
        for (m, c) in &self.coefficients {
            p.add_term(m.clone(), c.clone());
        }
        p
    }
}

/// `h_i = ¼|c_0 + Σ_j σ_j c_{j+1}|` over the binary subscript `i`, where the
/// highest bit pairs with `c_1` and bit 0 with the last coefficient.
fn slot_table(lead: &Rational, rest: &[Rational]) -> Vec<Rational> {
    let n = rest.len();
    let quarter = Rational::new(1.into(), 4.into());
    (0..1usize << n)
        .map(|i| {
            let mut v = lead.clone();
            for (k, c) in rest.iter().enumerate() {
                let bit = n - 1 - k;
                if i >> bit & 1 == 1 {
                    v += c;
                } else {
                    v -= c;
                }
            }
            v.abs() * &quarter
        })
        .collect()
}

/// `Σ sign_k · h_k`, with signs given as `±1` per listed subscript.
fn combo(h: &[Rational], picks: &[(i8, usize)]) -> Rational {
    picks.iter().fold(Rational::zero(), |acc, &(s, i)| {
        if s > 0 {
            acc + &h[i]
        } else {
            acc - &h[i]
        }
    })
}

/// Computes the closed-form gadget. Coefficients are passed raw; when the
/// leading slot is negative all of them are negated, which leaves `|P|` unchanged.
pub fn gadget(
    kind: GadgetKind,
    coeffs: &[Rational],
    targets: &[SpinIndex],
) -> Result<GadgetResult, GadgetError> {
    kind.check(coeffs, targets)?;
    let flipped: Vec<Rational>;
    let coeffs = if coeffs[0].is_negative() {
        flipped = coeffs.iter().map(|c| -c.clone()).collect();
        &flipped[..]
    } else {
        coeffs
    };
    let t = targets;
    let mono = |idx: &[SpinIndex]| Monomial::canonicalize(idx.iter().copied());
    let (constant, coefficients): (Rational, Vec<(Monomial, Rational)>) = match kind {
        GadgetKind::TwoSpin => {
            let (b, c) = (&coeffs[0], &coeffs[1]);
            let plus = (b + c).abs();
            let minus = (b - c).abs();
            let half = Rational::new(1.into(), 2.into());
            (
                -(&plus + &minus) * &half,
                vec![(mono(&[t[0], t[1]]), -(plus - minus) * half)],
            )
        }
        GadgetKind::TwoSpinField => {
            let h = slot_table(&coeffs[0], &coeffs[1..]);
            (
                -combo(&h, &[(1, 0), (1, 1), (1, 2), (1, 3)]),
                vec![
                    (
                        mono(&[t[0], t[1]]),
                        combo(&h, &[(-1, 0), (1, 1), (1, 2), (-1, 3)]),
                    ),
                    (
                        mono(&[t[0]]),
                        combo(&h, &[(1, 0), (1, 1), (-1, 2), (-1, 3)]),
                    ),
                    (
                        mono(&[t[1]]),
                        combo(&h, &[(1, 0), (-1, 1), (1, 2), (-1, 3)]),
                    ),
                ],
            )
        }
        GadgetKind::ThreeSpin => {
            let g = slot_table(&coeffs[0], &coeffs[1..]);
            (
                -combo(&g, &[(1, 0), (1, 1), (1, 2), (1, 3)]),
                vec![
                    (
                        mono(&[t[0], t[1]]),
                        combo(&g, &[(1, 0), (1, 1), (-1, 2), (-1, 3)]),
                    ),
                    (
                        mono(&[t[1], t[2]]),
                        combo(&g, &[(-1, 0), (1, 1), (1, 2), (-1, 3)]),
                    ),
                    (
                        mono(&[t[0], t[2]]),
                        combo(&g, &[(1, 0), (-1, 1), (1, 2), (-1, 3)]),
                    ),
                ],
            )
        }
        GadgetKind::Triplet => {
            let h = slot_table(&coeffs[0], &coeffs[1..]);
            (
                -combo(&h, &[(1, 0), (1, 1), (1, 2), (1, 3)]),
                vec![
                    (
                        mono(&[t[0], t[1]]),
                        combo(&h, &[(-1, 0), (1, 1), (1, 2), (-1, 3)]),
                    ),
                    (
                        mono(&[t[0]]),
                        combo(&h, &[(1, 0), (-1, 1), (1, 2), (-1, 3)]),
                    ),
                    (
                        mono(&[t[1]]),
                        combo(&h, &[(1, 0), (1, 1), (-1, 2), (-1, 3)]),
                    ),
                ],
            )
        }
        GadgetKind::TwoBody | GadgetKind::ThreeBody => {
            let h = slot_table(&coeffs[0], &coeffs[1..]);
            let constant = -combo(&h, &[(1, 2), (1, 4), (1, 7), (1, 1)]);
            let alpha = combo(&h, &[(-1, 2), (1, 4), (-1, 7), (1, 1)]);
            let beta = combo(&h, &[(1, 2), (-1, 4), (-1, 7), (1, 1)]);
            let gamma = combo(&h, &[(1, 2), (1, 4), (-1, 7), (-1, 1)]);
            let terms = if kind == GadgetKind::TwoBody {
                vec![
                    (mono(&[t[0]]), alpha),
                    (mono(&[t[1], t[2]]), beta),
                    (mono(&[t[0], t[1], t[2]]), gamma),
                ]
            } else {
                vec![
                    (mono(&[t[0], t[1]]), alpha),
                    (mono(&[t[2], t[3]]), beta),
                    (mono(&[t[0], t[1], t[2], t[3]]), gamma),
                ]
            };
            (constant, terms)
        }
    };
    Ok(GadgetResult {
        kind,
        targets: targets.to_vec(),
        constant,
        coefficients: coefficients
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .collect(),
    })
}

/// The gadget's expansion of `−|P|` as a polynomial over `targets`.
pub fn apply_gadget(
    kind: GadgetKind,
    coeffs: &[Rational],
    targets: &[SpinIndex],
) -> Result<Polynomial, GadgetError> {
    Ok(gadget(kind, coeffs, targets)?.to_polynomial())
}

/// A block recognized as one of the catalog shapes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GadgetMatch {
    pub kind: GadgetKind,
    pub coeffs: Vec<Rational>,
    pub targets: Vec<SpinIndex>,
}

impl GadgetMatch {
    pub fn apply(&self) -> Polynomial {
        apply_gadget(self.kind, &self.coeffs, &self.targets).expect("matched shape is valid")
    }
}

fn try_layout(p: &Polynomial, kind: GadgetKind, targets: &[SpinIndex]) -> Option<GadgetMatch> {
    let slots: Vec<Monomial> = kind
        .slot_monomials()
        .iter()
        .map(|slot| Monomial::canonicalize(slot.iter().map(|&k| targets[k])))
        .collect();
    if p.terms().any(|(m, _)| !slots.contains(m)) {
        return None;
    }
    Some(GadgetMatch {
        kind,
        coeffs: slots.iter().map(|m| p.coefficient(m)).collect(),
        targets: targets.to_vec(),
    })
}

/// Recognizes a local block whose shape fits a catalog gadget.
///
/// Blocks that fit several shapes take the first in the order two-spin,
/// two-spin-field, triplet, three-spin, two-body, three-body.
pub fn match_gadget(p: &Polynomial) -> Option<GadgetMatch> {
    let support: Vec<SpinIndex> = p.support().into_iter().collect();
    match support.len() {
        2 => [
            GadgetKind::TwoSpin,
            GadgetKind::TwoSpinField,
            GadgetKind::Triplet,
        ]
        .into_iter()
        .find_map(|k| try_layout(p, k, &support)),
        3 => try_layout(p, GadgetKind::ThreeSpin, &support).or_else(|| {
            (0..3).find_map(|pivot| {
                let mut t = vec![support[pivot]];
                t.extend(support.iter().copied().filter(|&v| v != support[pivot]));
                try_layout(p, GadgetKind::TwoBody, &t)
            })
        }),
        4 => {
            for i in 0..4 {
                for j in i + 1..4 {
                    let mut t = vec![support[i], support[j]];
                    t.extend(
                        support
                            .iter()
                            .copied()
                            .filter(|&v| v != support[i] && v != support[j]),
                    );
                    if let Some(m) = try_layout(p, GadgetKind::ThreeBody, &t) {
                        return Some(m);
                    }
                }
            }
            None
        }
        _ => None,
    }
}
