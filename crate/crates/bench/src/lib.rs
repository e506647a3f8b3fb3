//! Deterministic instances shared by the benchmarks.

use spinel_core::{Monomial, Polynomial, Rational, SpinIndex};

/// Spin 1 coupled to spins `2..=d+1` through pair and triple terms, with
/// small fixed rational weights so every neighborhood sign pattern differs.
pub fn star_block(d: usize) -> Polynomial {
    let d = d as SpinIndex;
    let weight =
        |k: SpinIndex| Rational::new(i64::from(k % 7 + 1).into(), i64::from(k % 3 + 1).into());
    let pairs = (2..=d + 1).map(|j| (Monomial::canonicalize([1, j]), weight(j)));
    let triples = (2..=d).map(|j| (Monomial::canonicalize([1, j, j + 1]), -weight(j + 3)));
    Polynomial::from_terms(pairs.chain(triples))
}

/// The neighborhood polynomial `P` of [`star_block`], without spin 1.
pub fn neighborhood(d: usize) -> Polynomial {
    let block = star_block(d);
    Polynomial::from_terms(block.terms().map(|(m, c)| {
        (
            Monomial::canonicalize(m.indices().iter().copied().filter(|&i| i != 1)),
            c.clone(),
        )
    }))
}

/// Values `0, 1, ..., 2^d - 1` alternating in sign.
pub fn value_vector(d: usize) -> Vec<Rational> {
    (0..1i64 << d)
        .map(|k| Rational::from_integer(if k % 2 == 0 { k } else { -k }.into()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn block_has_expected_shape() {
        let b = star_block(6);
        assert_eq!(b.num_variables(), 7);
        assert_eq!(b.num_terms(), 11);
        assert_eq!(neighborhood(6).num_variables(), 6);
        assert_eq!(value_vector(4).len(), 16);
    }
}
