mod support;

use mtcap_core::constructor::{
    build_multitasker, find_bad_cycle, BadCycleSearch, ConstructionOptions, ConstructionParams,
};
use mtcap_core::gadgets::{boxminus, gen_half_cover, mis_gadget, perfect_cm_extend, perfect_cm_gadget};
use mtcap_core::solvers::{connected_matching_number, max_connected_matching};
use mtcap_core::{alpha_k, BipartiteGraph, CapacityConfig, Error, GeneralGraph, Rational};
use support::Oracle;

#[test]
fn builds_are_reproducible_and_match_oracles() {
    let params = ConstructionParams::new(60, 3, Rational::new(1, 3), 9).unwrap();
    let opts = ConstructionOptions::default();
    let (g1, c1) = build_multitasker(&params, &opts).unwrap();
    let (g2, c2) = build_multitasker(&params, &opts).unwrap();
    assert_eq!(g1, g2);
    assert_eq!(c1, c2);
    let o = Oracle::new(&g1);
    assert_eq!(o.girth(), c1.girth_after);
    assert!(c1.girth_after.is_none_or(|x| x > c1.g_chosen));
    assert_eq!(c1.avg_degree_final, Rational::new(g1.num_edges() as i64, 60));
    assert_eq!(c1.density_report.exhaustive_violations(), 0);
}

#[test]
fn exhausted_retries_carry_the_last_certificate() {
    // d = n samples K_{6,6}, whose 225 four-cycles exceed the cap of 2.
    let params = ConstructionParams::new(6, 6, Rational::new(1, 2), 1).unwrap();
    let opts = ConstructionOptions {
        retries: 2,
        enforce_cycle_cap: Some(true),
        ..ConstructionOptions::default()
    };
    match build_multitasker(&params, &opts) {
        Err(Error::ConstructionFailed(cert)) => {
            assert_eq!(cert.attempts, 2);
            assert!(cert.failure.is_some());
        }
        Err(e) => panic!("unexpected error {e}"),
        Ok(_) => panic!("build should fail the cycle cap"),
    }
}

#[test]
fn bad_cycles_certify_low_capacity() {
    for m in [3usize, 5] {
        let g = BipartiteGraph::cycle(m);
        let BadCycleSearch::Found(c) = find_bad_cycle(&g, 2 * m, u64::MAX).unwrap() else {
            panic!("C{} should contain a bad cycle", 2 * m);
        };
        let o = Oracle::new(&g);
        assert_eq!(o.max_induced_subset(c.matching.edges()), (m - 1) / 2);
        assert!(o.alpha_upto(m) < Rational::new(1, 2));
    }
}

#[test]
fn half_cover_draw_order() {
    // n = 2 has one pair, so the two orientations must both appear across seeds.
    let shapes: std::collections::BTreeSet<_> =
        (0..32).map(|s| gen_half_cover(2, s).unwrap().graph.edges().to_vec()).collect();
    assert_eq!(shapes.len(), 2);
    assert_eq!(gen_half_cover(9, 4).unwrap(), gen_half_cover(9, 4).unwrap());
}

#[test]
fn gadget_examples() {
    let k3 = GeneralGraph::complete(3);
    for seed in 0..5 {
        let h = gen_half_cover(3, seed).unwrap().graph;
        assert_eq!(connected_matching_number(&boxminus(&k3, &h).unwrap(), None).unwrap(), 3);
    }
    let two = BipartiteGraph::new(2, 2, [(0, 0), (1, 1)]).unwrap();
    let gadget = perfect_cm_gadget(&two, 1).unwrap();
    assert_eq!(gadget.n_a(), 3);
    assert_eq!(connected_matching_number(&gadget, None).unwrap(), 3);
    let m = max_connected_matching(&two, None).unwrap();
    let full = perfect_cm_extend(&two, 1, &m).unwrap();
    assert!(Oracle::new(&gadget).is_connected(full.edges()));

    let edge = GeneralGraph::new(2, [(0, 1)]).unwrap();
    let g = mis_gadget(&edge);
    assert_eq!(alpha_k(&g, 2, &CapacityConfig::default()).unwrap().alpha, Rational::new(1, 2));
    assert_eq!(
        alpha_k(&mis_gadget(&GeneralGraph::complete(3)), 3, &CapacityConfig::default()).unwrap().alpha,
        Rational::new(1, 3)
    );
}
