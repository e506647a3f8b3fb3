//! Two-bit ripple-carry adder as a higher-order Ising Hamiltonian.
//!
//! Spins read as bits through `b = (1 + s)/2`, so `s = −1` is logical 0. Inputs are `x = 2 b1 + b2` and
//! `y = 2 b3 + b4`; the low full adder produces sum `b6` and carry `b5`, the
//! high one sum `b7` and carry out `b8`. The carry-in `s9` is fixed to `−1`
//! (logical 0).

use std::collections::BTreeSet;

use crate::poly::{int, ratio, Polynomial, Spin, SpinAssignment, SpinIndex};

fn spin(v: SpinIndex) -> Polynomial {
    Polynomial::term(int(1), &[v])
}

/// `T(a, b, c) = ½[(a + b + c) − abc]`, the majority of three spins.
pub fn carry(a: SpinIndex, b: SpinIndex, c: SpinIndex) -> Polynomial {
    let linear = &(&spin(a) + &spin(b)) + &spin(c);
    (&linear - &Polynomial::term(int(1), &[a, b, c])).scale(&ratio(1, 2))
}

/// Majority of three ±1 values.
pub fn carry_value(a: i64, b: i64, c: i64) -> i64 {
    ((a + b + c) - a * b * c) / 2
}

fn square(p: &Polynomial) -> Polynomial {
    p * p
}

/// The four squared full-adder constraints, still containing `s9`.
pub fn adder_constraints() -> Polynomial {
    let sum_lo = &spin(6) - &Polynomial::term(int(1), &[2, 4, 9]);
    let carry_lo = &spin(5) - &carry(2, 4, 9);
    let sum_hi = &spin(7) - &Polynomial::term(int(1), &[1, 3, 5]);
    let carry_hi = &spin(8) - &carry(1, 3, 5);
    &(&square(&sum_lo) + &square(&carry_lo)) + &(&square(&sum_hi) + &square(&carry_hi))
}

/// The adder over `s1..s8`: constant offset dropped, then `s9 = −1`.
pub fn adder_hamiltonian() -> Polynomial {
    let full = adder_constraints();
    let offset = Polynomial::constant(full.constant_term());
    (&full - &offset).substitute(9, Spin::Down)
}

fn bit(s: Spin) -> u8 {
    u8::from(!s.is_down())
}

fn spin_of(b: u8) -> Spin {
    Spin::from_bit(b == 0)
}

/// `(x, y, sum)` read from a full assignment of `s1..s8`.
pub fn decode_addition(a: &SpinAssignment) -> Option<(u8, u8, u8)> {
    let b = |v| a.get(v).map(bit);
    let x = 2 * b(1)? + b(2)?;
    let y = 2 * b(3)? + b(4)?;
    let sum = 4 * b(8)? + 2 * b(7)? + b(6)?;
    Some((x, y, sum))
}

/// The spin state encoding `x + y` with every internal carry consistent.
pub fn encode_addition(x: u8, y: u8) -> SpinAssignment {
    assert!(x < 4 && y < 4, "two-bit operands");
    let (b1, b2, b3, b4) = (x >> 1, x & 1, y >> 1, y & 1);
    let b5 = b2 & b4;
    let b6 = b2 ^ b4;
    let b7 = b1 ^ b3 ^ b5;
    let b8 = (b1 & b3) | (b5 & (b1 ^ b3));
    [b1, b2, b3, b4, b5, b6, b7, b8]
        .into_iter()
        .enumerate()
        .map(|(k, b)| (k as SpinIndex + 1, spin_of(b)))
        .collect()
}

/// All sixteen valid two-bit additions.
pub fn valid_additions() -> BTreeSet<SpinAssignment> {
    (0..4)
        .flat_map(|x| (0..4).map(move |y| encode_addition(x, y)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solve::brute_force;

    #[test]
    fn carry_is_majority() {
        assert_eq!(carry_value(1, 1, -1), 1);
        assert_eq!(carry_value(-1, -1, 1), -1);
        assert_eq!(carry_value(1, 1, 1), 1);
        let t = carry(1, 2, 3);
        let a = SpinAssignment::from_values(&[1, 1, -1]).unwrap();
        assert_eq!(t.evaluate(&a).unwrap(), int(1));
    }

    #[test]
    fn constraints_have_offset_eight() {
        assert_eq!(adder_constraints().constant_term(), int(8));
        let h = adder_hamiltonian();
        assert_eq!(h.variable_list(), (1..=8).collect::<Vec<_>>());
        assert_eq!(h.locality(), 4);
    }

    #[test]
    fn one_plus_one_is_a_ground_state() {
        let h = adder_hamiltonian();
        let a = encode_addition(1, 1);
        assert_eq!(
            a,
            SpinAssignment::from_values(&[-1, 1, -1, 1, 1, -1, 1, -1]).unwrap()
        );
        assert_eq!(decode_addition(&a), Some((1, 1, 2)));
        let sol = brute_force(&h).unwrap();
        assert_eq!(h.evaluate(&a).unwrap(), sol.min_energy);
        assert_eq!(sol.min_energy, int(-8));
        assert_eq!(sol.ground_states, valid_additions());
    }

    #[test]
    fn decoded_sums_are_correct() {
        for a in valid_additions() {
            let (x, y, s) = decode_addition(&a).unwrap();
            assert_eq!(x + y, s);
        }
        assert_eq!(valid_additions().len(), 16);
    }
}
