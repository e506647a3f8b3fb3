//! Factorization Hamiltonians shipped as fixed presets.

use crate::poly::{int, ratio, Polynomial, Spin, SpinAssignment, SpinIndex};

use super::ProblemError;

/// The semiprime behind the two small presets.
pub const N291311: u64 = 291_311;

/// `q = (1 − s)/2` as a polynomial in `s_v`.
fn bit(v: SpinIndex) -> Polynomial {
    &Polynomial::constant(ratio(1, 2)) + &Polynomial::term(ratio(-1, 2), &[v])
}

/// `Σ (q_a + q_b − 2 q_a q_b − r)²` over the three constraints, in spins `s1, s2, s5`.
fn n291311_binary() -> Polynomial {
    let (q1, q2, q5) = (bit(1), bit(2), bit(5));
    let xor = |a: &Polynomial, b: &Polynomial, r: i64| {
        let two = Polynomial::constant(int(2));
        let t = &(&(a + b) - &(&two * &(a * b))) - &Polynomial::constant(int(r));
        &t * &t
    };
    &(&xor(&q1, &q2, 1) + &xor(&q2, &q5, 0)) + &xor(&q1, &q5, 1)
}

fn n291311_3() -> Polynomial {
    &Polynomial::constant(ratio(3, 2))
        + &Polynomial::from_int_terms(&[(1, &[1, 2]), (1, &[1, 3]), (-1, &[2, 3])])
            .scale(&ratio(1, 2))
}

const BIT48_PAIRS: [(i64, SpinIndex, SpinIndex); 45] = [
    (22, 1, 2),
    (16, 1, 3),
    (8, 1, 4),
    (-14, 1, 5),
    (8, 1, 6),
    (4, 1, 7),
    (-8, 1, 8),
    (-10, 1, 9),
    (-22, 1, 10),
    (-14, 2, 3),
    (20, 2, 4),
    (14, 2, 5),
    (-12, 2, 6),
    (2, 2, 7),
    (-24, 2, 8),
    (-28, 2, 9),
    (2, 2, 10),
    (-18, 3, 4),
    (10, 3, 5),
    (36, 3, 6),
    (12, 3, 7),
    (16, 3, 8),
    (6, 3, 9),
    (-30, 3, 10),
    (28, 4, 5),
    (-26, 4, 6),
    (10, 4, 7),
    (10, 4, 8),
    (16, 4, 9),
    (-4, 4, 10),
    (10, 5, 6),
    (24, 5, 7),
    (20, 5, 8),
    (12, 5, 9),
    (-8, 5, 10),
    (-8, 6, 7),
    (22, 6, 8),
    (-6, 6, 9),
    (-36, 6, 10),
    (-16, 7, 8),
    (16, 7, 9),
    (20, 7, 10),
    (34, 8, 9),
    (-42, 8, 10),
    (18, 9, 10),
];

const BIT48_FIELDS: [i64; 10] = [-46, -16, -78, -72, -116, -12, -84, -36, -74, -24];

fn bit48_10() -> Polynomial {
    let mut p = Polynomial::over(1..=10);
    for &(c, i, j) in &BIT48_PAIRS {
        p = &p + &Polynomial::term(int(c), &[i, j]);
    }
    for (k, &c) in BIT48_FIELDS.iter().enumerate() {
        p = &p + &Polynomial::term(int(c), &[k as SpinIndex + 1]);
    }
    p
}

/// `n291311_3`, `n291311_binary` or `bit48_10`.
pub fn factor_preset(name: &str) -> Result<Polynomial, ProblemError> {
    match name {
        "n291311_3" => Ok(n291311_3()),
        "n291311_binary" => Ok(n291311_binary()),
        "bit48_10" => Ok(bit48_10()),
        other => Err(ProblemError::UnknownPreset(other.to_string())),
    }
}

/// `q_i = (1 − s_i)/2`.
pub fn spin_bit(s: Spin) -> u8 {
    u8::from(s.is_down())
}

/// Bit string `q_1 q_2 …` of the listed spins, in the given order.
pub fn bit_string(a: &SpinAssignment, vars: &[SpinIndex]) -> Option<String> {
    vars.iter()
        .map(|&v| a.get(v).map(|s| if s.is_down() { '1' } else { '0' }))
        .collect()
}

/// The 10-bit factor `1 0 0 0 q5 0 1 q2 q1 1` (most significant first).
pub fn factor_from_bits(q1: u8, q2: u8, q5: u8) -> (String, u64) {
    let bits = format!("1000{q5}01{q2}{q1}1");
    let value = u64::from_str_radix(&bits, 2).expect("binary digits");
    (bits, value)
}

/// Decodes a state of `n291311_binary` (spins 1, 2, 5) or `n291311_3`
/// (spins 1, 2, 3 standing for `q1, q2, q5`) into the factor it encodes.
pub fn decode_291311(a: &SpinAssignment) -> Option<(String, u64)> {
    let q1 = spin_bit(a.get(1)?);
    let q2 = spin_bit(a.get(2)?);
    let q5 = spin_bit(a.get(5).or_else(|| a.get(3))?);
    Some(factor_from_bits(q1, q2, q5))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solve::brute_force;

    #[test]
    fn small_preset_matches_closed_form() {
        let p = factor_preset("n291311_3").unwrap();
        assert_eq!(p.to_text(), "c 3/2\nt 1/2 1 2\nt 1/2 1 3\nt -1/2 2 3\n");
    }

    #[test]
    fn binary_preset_is_relabelled_small_preset() {
        let p = factor_preset("n291311_binary").unwrap();
        let relabelled = p.relabel(&[(5, 3)].into_iter().collect());
        // s3 here stands for q5, so the q2–q5 coupling flips sign relative to `n291311_3`.
        assert_eq!(relabelled.constant_term(), ratio(3, 2));
        assert_eq!(relabelled.num_terms(), 4);
        let sol = brute_force(&p).unwrap();
        assert_eq!(sol.min_energy, int(0));
        let mut factors: Vec<u64> = sol
            .ground_states
            .iter()
            .map(|a| decode_291311(a).unwrap().1)
            .collect();
        factors.sort();
        assert_eq!(factors, vec![523, 557]);
        assert_eq!(523 * 557, N291311);
    }

    #[test]
    fn bit48_shape() {
        let p = factor_preset("bit48_10").unwrap();
        assert_eq!(p.num_terms(), 55);
        assert_eq!(p.terms().filter(|(m, _)| m.len() == 2).count(), 45);
        assert_eq!(p.terms().filter(|(m, _)| m.len() == 1).count(), 10);
        assert_eq!(p.coeff_of(&[1]), int(-46));
        assert_eq!(p.coeff_of(&[8, 10]), int(-42));
    }

    #[test]
    fn factor_bits() {
        assert_eq!(factor_from_bits(1, 0, 0), ("1000001011".to_string(), 523));
        assert_eq!(factor_from_bits(0, 1, 1), ("1000101101".to_string(), 557));
        assert!(factor_preset("x").is_err());
    }
}
