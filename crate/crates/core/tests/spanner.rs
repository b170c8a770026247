mod common;

use common::random_connected;
use lightspan::{
    build_spanner, build_spanner_with_internals, build_wmax_spanner, build_wmax_spanner_with_net,
    dijkstra, generate_graph, mst, representative_level, verify_lemma_suite, verify_lightness,
    verify_stretch, Error, Family, Graph, PhaseTag, Spanner, SpannerParams, StretchBound,
    VerifyMode, Weights,
};
use proptest::prelude::*;

fn geometric(n: usize, seed: u64) -> Graph {
    generate_graph(&Family::geometric(n), Weights::Euclidean, seed).unwrap()
}

#[test]
fn tree_host_gives_the_tree() {
    for family in [Family::Path { n: 40 }, Family::Star { n: 30 }] {
        let g = generate_graph(&family, Weights::Uniform { lo: 0.5, hi: 4.0 }, 3).unwrap();
        for k in 1..=3 {
            let sp = build_spanner(&g, &SpannerParams::new(0.05, k, 7)).unwrap();
            assert_eq!(sp.size(), g.m());
            let r = verify_stretch(&g, &sp, &StretchBound::for_spanner(&g, &sp), VerifyMode::AllPairs)
                .unwrap();
            assert_eq!(r.worst_mult_stretch, 1.0);
            assert_eq!(r.worst_additive_slack, 0.0);
        }
    }
}

#[test]
fn random_tree_host_gives_the_tree() {
    let g = random_connected(90, 0, 12, false);
    let sp = build_spanner(&g, &SpannerParams::new(0.02, 2, 1)).unwrap();
    assert_eq!(sp.edge_ids().collect::<Vec<_>>(), (0..g.m()).collect::<Vec<_>>());
}

#[test]
fn construction_is_deterministic() {
    let g = geometric(200, 4);
    let params = SpannerParams::new(0.05, 2, 11);
    let a = build_spanner(&g, &params).unwrap();
    let b = build_spanner(&g, &params).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.to_json().unwrap(), b.to_json().unwrap());
}

#[test]
fn json_roundtrip() {
    let g = geometric(80, 1);
    let sp = build_spanner(&g, &SpannerParams::new(0.05, 2, 3)).unwrap();
    let back = Spanner::from_json(&sp.to_json().unwrap()).unwrap();
    assert_eq!(back, sp);
    back.check_host(&g).unwrap();
}

#[test]
fn phases_partition_the_edges() {
    let g = geometric(250, 6);
    let sp = build_spanner(&g, &SpannerParams::new(0.05, 3, 2)).unwrap();
    let report = verify_lightness(&g, &sp).unwrap();
    let edges: usize = report.per_phase.values().map(|s| s.edges).sum();
    let weight: f64 = report.per_phase.values().map(|s| s.weight).sum();
    assert_eq!(edges, sp.size());
    assert!((weight - report.spanner_weight).abs() <= 1e-9 * report.spanner_weight);
    assert_eq!(report.per_phase, sp.summary);
    assert!(report.lightness >= 1.0);
    assert!(sp.to_graph(&g).unwrap().is_connected());
}

#[test]
fn geometric_300_passes_verification() {
    let g = geometric(300, 1);
    let sp = build_spanner(&g, &SpannerParams::new(0.05, 2, 1)).unwrap();
    let r = verify_stretch(&g, &sp, &StretchBound::near_additive(0.05, 2), VerifyMode::AllPairs)
        .unwrap();
    assert!(r.passed(), "{:?}", r.violations);
    assert_eq!(r.pairs_checked, 300 * 299);
    assert_eq!(r.lower_bound_violations, 0);
}

#[test]
fn representative_window_example() {
    assert_eq!(representative_level(0.08, 100.0), 0);
    for (eps, d) in [(0.05, 3.0), (0.02, 1000.0), (0.09, 44.0)] {
        let j = representative_level(eps, d);
        let s = 2f64.powi(j);
        assert!(eps * d / 8.0 <= s && s < eps * d / 4.0);
    }
}

#[test]
fn lemma_suite_over_twenty_seeds() {
    for seed in 0..20u64 {
        let n = 120 + 9 * seed as usize;
        let g = if seed % 2 == 0 {
            geometric(n, seed)
        } else {
            generate_graph(&Family::erdos_renyi(n), Weights::Uniform { lo: 1.0, hi: 10.0 }, seed)
                .unwrap()
        };
        let k = 1 + (seed as usize % 3);
        let eps = [0.02, 0.05, 0.09][seed as usize % 3];
        let (sp, internals) = build_spanner_with_internals(&g, &SpannerParams::new(eps, k, seed)).unwrap();
        let report = verify_lemma_suite(&g, &sp, &internals).unwrap();
        for check in report.checks() {
            assert!(check.passed(), "seed {seed}: {:?}", check);
        }
        assert!(report.distance_in_bunch.instances > 0);
        assert!(report.representative.instances > 0);
    }
}

#[test]
fn single_edge_graph() {
    let g = Graph::new(2, [(0, 1, 3.0)]).unwrap();
    for k in 1..=2 {
        let (sp, internals) = build_spanner_with_internals(&g, &SpannerParams::new(0.05, k, 0)).unwrap();
        assert_eq!(sp.size(), 1);
        assert!(verify_lemma_suite(&g, &sp, &internals).unwrap().passed());
    }
}

/// A two-row grid, long enough that some bunch distances exceed `4/eps` and
/// phase 2 links to proper representatives.
fn ladder(seed: u64) -> Graph {
    generate_graph(&Family::Grid { rows: 2, cols: 150 }, Weights::Uniform { lo: 1.0, hi: 2.0 }, seed)
        .unwrap()
}

#[test]
fn lemma_suite_with_representative_paths() {
    for seed in [3, 5, 6, 7, 8] {
        let g = ladder(seed);
        let (sp, internals) = build_spanner_with_internals(&g, &SpannerParams::new(0.09, 1, seed)).unwrap();
        let report = verify_lemma_suite(&g, &sp, &internals).unwrap();
        for check in report.checks() {
            assert!(check.passed(), "seed {seed}: {:?}", check);
        }
        assert!(report.representative_path_length.instances > 0);
        assert!(report.half_bunch_in_bunch.instances > 0);
    }
}

#[test]
fn dropping_a_representative_path_is_detected() {
    let g = ladder(3);
    let eps = 0.09;
    let (sp, internals) = build_spanner_with_internals(&g, &SpannerParams::new(eps, 1, 3)).unwrap();
    assert!(verify_lemma_suite(&g, &sp, &internals).unwrap().passed());
    let ng = &internals.normalized;
    let record = internals
        .records
        .iter()
        .filter(|r| r.tag == PhaseTag::P2Rep)
        .find(|r| {
            let ids: Vec<usize> = r.path.windows(2).map(|w| g.edge_id(w[0], w[1]).unwrap()).collect();
            let h = ng.subgraph(sp.without_edges(&g, &ids).edge_ids());
            dijkstra(&h, r.center).unwrap().dist[r.member] > (1.0 + eps) * r.d_center_member
        })
        .expect("instance has a representative path without a detour");
    let ids: Vec<usize> = record.path.windows(2).map(|w| g.edge_id(w[0], w[1]).unwrap()).collect();
    let broken = sp.without_edges(&g, &ids);
    let report = verify_lemma_suite(&g, &broken, &internals).unwrap();
    assert!(!report.distance_in_bunch.passed());
    let witness = report.distance_in_bunch.counterexample.unwrap();
    assert!(witness.contains("u=") && witness.contains("d_H="), "{witness}");
}

#[test]
fn wmax_star_with_heavy_edge() {
    let n = 30;
    let g = Graph::new(
        n,
        (1..n).map(|v| (0, v, if v == 1 { n as f64 } else { 1.0 })),
    )
    .unwrap();
    let (sp, net) = build_wmax_spanner_with_net(&g, 0.05).unwrap();
    assert!(!net.is_empty());
    assert_eq!(sp.size(), n - 1);
    let r = verify_stretch(&g, &sp, &StretchBound::for_spanner(&g, &sp), VerifyMode::AllPairs).unwrap();
    assert!(r.passed());
}

#[test]
fn wmax_precondition_is_named() {
    let g = geometric(100, 2);
    match build_wmax_spanner(&g, 0.05) {
        Err(Error::Precondition(msg)) => {
            assert!(msg.contains("W_max") && msg.contains("sqrt(n)"), "{msg}")
        }
        other => panic!("expected precondition error, got {other:?}"),
    }
}

#[test]
fn rejects_bad_parameters() {
    let g = geometric(50, 0);
    assert!(build_spanner(&g, &SpannerParams::new(0.1, 2, 0)).is_err());
    assert!(build_spanner(&g, &SpannerParams::new(0.0, 2, 0)).is_err());
    assert!(build_spanner(&g, &SpannerParams::new(0.05, 0, 0)).is_err());
    let mut unsafe_params = SpannerParams::new(0.3, 2, 0);
    unsafe_params.unsafe_eps = true;
    assert!(build_spanner(&g, &unsafe_params).is_ok());
    let disconnected = Graph::new(3, [(0, 1, 1.0)]).unwrap();
    assert!(matches!(
        build_spanner(&disconnected, &SpannerParams::new(0.05, 1, 0)),
        Err(Error::Disconnected)
    ));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn spanner_invariants(n in 2usize..=90, extra in 0usize..250, seed in any::<u64>(), k in 1usize..=3) {
        let g = random_connected(n, extra, seed, false);
        let sp = build_spanner(&g, &SpannerParams::new(0.05, k, seed)).unwrap();
        sp.check_host(&g).unwrap();
        prop_assert!(sp.to_graph(&g).unwrap().is_connected());
        prop_assert!(sp.weight() >= mst(&g).unwrap().total_weight * (1.0 - 1e-9));
        let r = verify_stretch(&g, &sp, &StretchBound::for_spanner(&g, &sp), VerifyMode::AllPairs).unwrap();
        prop_assert!(r.passed());
        prop_assert_eq!(r.lower_bound_violations, 0);
    }

    #[test]
    fn sampled_verification_is_deterministic(seed in any::<u64>()) {
        let g = random_connected(60, 120, seed, false);
        let sp = build_spanner(&g, &SpannerParams::new(0.05, 2, seed)).unwrap();
        let mode = VerifyMode::Sampled { sources: 10, seed };
        let bound = StretchBound::for_spanner(&g, &sp);
        prop_assert_eq!(verify_stretch(&g, &sp, &bound, mode).unwrap(), verify_stretch(&g, &sp, &bound, mode).unwrap());
    }
}
