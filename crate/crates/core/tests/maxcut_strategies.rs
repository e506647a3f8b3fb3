mod common;

use std::collections::{BTreeMap, BTreeSet};

use common::oracle_min;
use spinel_core::problems::{
    maxcut_hamiltonian, maxcut_reduce_2local, maxcut_reduce_klocal, random_cubic_graph, Graph,
};
use spinel_core::{ReductionLimits, SpinIndex};

fn adjacency(g: &Graph) -> BTreeMap<SpinIndex, BTreeSet<SpinIndex>> {
    let mut adj: BTreeMap<SpinIndex, BTreeSet<SpinIndex>> = BTreeMap::new();
    for (u, v, _) in g.edges() {
        adj.entry(u).or_default().insert(v);
        adj.entry(v).or_default().insert(u);
    }
    adj
}

fn closed(adj: &BTreeMap<SpinIndex, BTreeSet<SpinIndex>>, c: SpinIndex) -> BTreeSet<SpinIndex> {
    let mut s = adj[&c].clone();
    s.insert(c);
    s
}

#[test]
fn first_round_is_a_maximal_star_packing() {
    for seed in 0..50 {
        let g = random_cubic_graph(32, seed).unwrap();
        let adj = adjacency(&g);
        let red = maxcut_reduce_klocal(&g, 1, &ReductionLimits::default()).unwrap();
        let centers = red.trace.eliminated();
        assert!(
            centers.len() >= 32 / 8,
            "seed {seed}: {} removed",
            centers.len()
        );

        let mut covered = BTreeSet::new();
        for &c in &centers {
            let star = closed(&adj, c);
            assert!(
                covered.is_disjoint(&star),
                "seed {seed}: stars overlap at {c}"
            );
            covered.extend(star);
        }
        for v in 1..=32 {
            assert!(
                !closed(&adj, v).is_disjoint(&covered),
                "seed {seed}: star at {v} could still be added"
            );
        }
        assert!(red.stats.max_degree() <= 4);
        assert!(red.hamiltonian.locality() <= 2);
    }
}

#[test]
fn rounds_respect_locality_and_degree() {
    for seed in 0..10 {
        let g = random_cubic_graph(32, seed).unwrap();
        for rounds in 1..=3 {
            let red = maxcut_reduce_klocal(&g, rounds, &ReductionLimits::default()).unwrap();
            assert!(red.hamiltonian.locality() <= 2 * rounds);
            assert!(red.stats.max_degree() <= 2 * rounds + 2);
        }
    }
}

#[test]
fn both_strategies_keep_the_minimum() {
    for seed in 0..12 {
        let n = 8 + 2 * (seed as usize % 7);
        let g = random_cubic_graph(n, seed).unwrap();
        let (min, _) = oracle_min(&maxcut_hamiltonian(&g));
        let two = maxcut_reduce_2local(&g, &ReductionLimits::default(), seed).unwrap();
        assert_eq!(oracle_min(&two.hamiltonian).0, min, "2-local seed {seed}");
        for rounds in 1..=2 {
            let k = maxcut_reduce_klocal(&g, rounds, &ReductionLimits::default()).unwrap();
            assert_eq!(oracle_min(&k.hamiltonian).0, min, "k-local seed {seed}");
        }
    }
}
