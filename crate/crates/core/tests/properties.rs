mod common;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{oracle_min, random_hamiltonian, term_list, Scaled};
use spinel_core::expand::{signed_symmetric_expand, walsh_expand, ValueTable, DEFAULT_ORACLE_CAP};
use spinel_core::{
    back_substitute, brute_force, direct_expand, expand_neg_abs, full_solve, full_solve_with_order,
    reduce, symmetric_coeffs, EliminationOrder, Polynomial, Rational, ReductionLimits,
    SpinAssignment, SpinIndex,
};

fn hamiltonian(seed: u64, n: usize, max_k: usize, max_nbrs: usize) -> Polynomial {
    random_hamiltonian(&mut ChaCha8Rng::seed_from_u64(seed), n, max_k, max_nbrs)
}

fn rational() -> impl Strategy<Value = Rational> {
    (-30i64..=30, 1i64..=8).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn expansion_equals_negative_abs(seed in any::<u64>(), d in 1usize..=12) {
        let p = hamiltonian(seed, d, 3, d);
        prop_assume!(!p.is_zero());
        let f = expand_neg_abs(&p).unwrap();
        let vars = p.variable_list();
        let sp = Scaled::over(&p, &vars);
        let sf = Scaled::over(&f, &vars);
        for code in 0..1u64 << vars.len() {
            prop_assert_eq!(sf.at(code) * sp.denom, -sp.at(code).abs() * sf.denom);
        }
    }

    #[test]
    fn fast_and_direct_transforms_agree(values in (1usize..=10).prop_flat_map(|d| prop::collection::vec(rational(), 1 << d))) {
        let table = ValueTable::new(values).unwrap();
        let fast = walsh_expand(&table);
        let direct = direct_expand(&table, DEFAULT_ORACLE_CAP).unwrap();
        prop_assert_eq!(term_list(&fast), term_list(&direct));
    }

    #[test]
    fn symmetric_formula_matches_expansion(sigma in prop::collection::vec(prop_oneof![Just(-1i8), Just(1i8)], 1..=8)) {
        let n = sigma.len();
        let sum = Polynomial::from_terms(sigma.iter().enumerate().map(|(k, &s)| {
            (spinel_core::Monomial::single(k as SpinIndex + 1), Rational::from_integer(i64::from(s).into()))
        }));
        let expanded = expand_neg_abs(&sum).unwrap();
        prop_assert_eq!(term_list(&signed_symmetric_expand(&sigma).unwrap()), term_list(&expanded));
        if sigma.iter().all(|&s| s == 1) {
            let targets: Vec<SpinIndex> = (1..=n as SpinIndex).collect();
            prop_assert_eq!(term_list(&symmetric_coeffs(n).assemble(&targets)), term_list(&expanded));
        }
    }

    #[test]
    fn odd_blocks_expand_to_even_terms(seed in any::<u64>(), d in 1usize..=8) {
        let p = hamiltonian(seed, d, 3, d);
        let odd: Polynomial = Polynomial::from_terms(
            p.terms().filter(|(m, _)| m.len() % 2 == 1).map(|(m, c)| (m.clone(), c.clone())),
        );
        prop_assume!(!odd.is_zero());
        let f = expand_neg_abs(&odd).unwrap();
        prop_assert!(f.terms().all(|(m, _)| m.len() % 2 == 0));
    }

    #[test]
    fn reduction_preserves_ground_states(seed in any::<u64>(), n in 2usize..=10, keep in 0usize..=4) {
        let h = hamiltonian(seed, n, 4, 8);
        let (min, ground) = oracle_min(&h);
        let red = reduce(&h, &EliminationOrder::Greedy { keep }, &ReductionLimits::default());
        let (reduced_min, reduced_ground) = oracle_min(&red.hamiltonian);
        prop_assert_eq!(&reduced_min, &min);
        let mut mapped = std::collections::BTreeSet::new();
        for s in &reduced_ground {
            mapped.extend(back_substitute(&red.trace, s).unwrap());
        }
        prop_assert_eq!(mapped, ground);
    }

    #[test]
    fn elimination_order_does_not_matter(seed in any::<u64>(), n in 2usize..=8, shuffle in any::<u64>()) {
        let h = hamiltonian(seed, n, 4, n);
        let mut order = h.variable_list();
        order.shuffle(&mut ChaCha8Rng::seed_from_u64(shuffle));
        prop_assert_eq!(full_solve_with_order(&h, &order).unwrap(), full_solve(&h).unwrap());
    }

    #[test]
    fn addition_is_pointwise(a in any::<u64>(), b in any::<u64>(), code in any::<u64>()) {
        let p = hamiltonian(a, 6, 3, 5);
        let q = hamiltonian(b, 6, 3, 5);
        let vars: Vec<SpinIndex> = (1..=6).collect();
        let s = SpinAssignment::from_code(&vars, code % 64);
        prop_assert_eq!((&p + &q).evaluate(&s).unwrap(), p.evaluate(&s).unwrap() + q.evaluate(&s).unwrap());
        let k = Rational::new(3.into(), 7.into());
        prop_assert_eq!(p.scale(&k).evaluate(&s).unwrap(), p.evaluate(&s).unwrap() * k);
    }

    #[test]
    fn text_round_trip(seed in any::<u64>(), n in 1usize..=12) {
        let h = hamiltonian(seed, n, 5, n);
        prop_assert_eq!(Polynomial::parse_text(&h.to_text()).unwrap(), h);
    }
}

#[test]
fn brute_force_agrees_with_full_solve() {
    let mut rng = ChaCha8Rng::seed_from_u64(200);
    for _ in 0..200 {
        let n = rand::Rng::gen_range(&mut rng, 1..=10);
        let h = random_hamiltonian(&mut rng, n, 4, n);
        let exact = full_solve(&h).unwrap();
        let enumerated = brute_force(&h).unwrap();
        assert_eq!(exact, enumerated, "{h}");
        let (min, ground) = oracle_min(&h);
        assert_eq!(enumerated.min_energy, min);
        assert_eq!(enumerated.ground_states, ground);
    }
}
