//! Randomized invariants across modules.

use mopdom::construct::{dichotomy_bound, lemma2_set, shermer_chord, theorem1_construct};
use mopdom::exact::{is_kcds, Constraints, Solver};
use mopdom::families::random_mop;
use mopdom::MopGraph;
use proptest::prelude::*;

fn naive_min(g: &MopGraph, k: usize, c: &Constraints) -> Option<usize> {
    let n = g.order();
    (0u32..1 << n)
        .filter_map(|mask| {
            let set: Vec<usize> = (0..n).filter(|v| mask >> v & 1 == 1).collect();
            (is_kcds(g, k, &set) && c.admits(&set)).then_some(set.len())
        })
        .min()
}

fn graph(max_n: usize) -> impl Strategy<Value = MopGraph> {
    (3..=max_n, any::<u64>()).prop_map(|(n, seed)| random_mop(n, seed))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn solver_matches_naive_search(g in graph(13), k in 0usize..5, a in 0usize..13, b in 0usize..13, pick in 0u8..4) {
        let n = g.order();
        let (a, b) = (a % n, b % n);
        let c = match pick {
            0 => Constraints::none(),
            1 => Constraints::none().containing(a),
            2 => Constraints::none().forbidding(a),
            _ => Constraints::none().intersecting(a, b),
        };
        let fast = Solver::default().min_kcds(&g, k, &c).unwrap();
        prop_assert_eq!(fast.as_ref().map(|d| d.len()), naive_min(&g, k, &c));
        if let Some(d) = fast {
            prop_assert!(is_kcds(&g, k, d.vertices()) && c.admits(d.vertices()));
        }
    }

    #[test]
    fn canonical_form_ignores_relabeling(g in graph(20), shift in 0usize..20, reflect in any::<bool>()) {
        let h = g.relabel_dihedral(shift % g.order(), reflect);
        prop_assert_eq!(g.canonical_form(), h.canonical_form());
    }

    #[test]
    fn outer_contraction_keeps_a_mop(g in graph(30), i in 0usize..30) {
        prop_assume!(g.order() >= 4);
        let n = g.order();
        let i = i % n;
        let c = g.contract_outer_edge(i, (i + 1) % n).unwrap();
        prop_assert_eq!(c.graph.order(), n - 1);
        prop_assert_eq!(c.map[i], c.map[(i + 1) % n]);
    }

    #[test]
    fn chord_split_sizes(g in graph(30), j in 0usize..30) {
        prop_assume!(g.order() >= 4);
        let (a, b) = g.chords()[j % g.chords().len()];
        let s = g.split_by_chord(a, b).unwrap();
        prop_assert_eq!(s.side_a.graph.order() + s.side_b.graph.order(), g.order() + 2);
    }

    #[test]
    fn chord_length_window(g in graph(40), s in 2usize..20) {
        prop_assume!(2 * s <= g.order());
        let c = shermer_chord(&g, s).unwrap();
        prop_assert!(c.m >= s && c.m <= 2 * s - 2);
    }

    #[test]
    fn odd_order_sets(half in 1usize..12, seed in any::<u64>()) {
        let g = random_mop(2 * half + 3, seed);
        let d = lemma2_set(&g).unwrap();
        prop_assert_eq!(d.len(), half);
        prop_assert!(d.is_valid_for(&g));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn construction_meets_the_bound(n in 3usize..=60, seed in any::<u64>(), k in 1usize..=3) {
        prop_assume!(n > 2 * k);
        let g = random_mop(n, seed);
        let d = theorem1_construct(&g, k).unwrap();
        let (bound, _) = dichotomy_bound(&g, k).unwrap();
        prop_assert!(d.is_valid_for(&g));
        prop_assert!(d.len() <= bound);
    }
}
