mod common;

use common::{brute_bunch, random_connected};
use lightspan::{
    bunch_of, build_net_hierarchy, dijkstra, generate_graph, greedy_delta_net, mst, mst_weight,
    multi_source_dijkstra, normalize, sample_levels, slt, slt_forest, verify_net, verify_slt,
    Family, Graph, Weights,
};
use lightspan::spanner::draw_levels;
use proptest::prelude::*;

fn geometric(n: usize, seed: u64) -> Graph {
    generate_graph(&Family::geometric(n), Weights::Euclidean, seed).unwrap()
}

#[test]
fn slt_on_geometric_instance() {
    let g = geometric(100, 3);
    let mst_w = mst_weight(&g).unwrap();
    for eps in [0.02, 0.05, 0.3, 1.0] {
        for root in [0, 17, 99] {
            let t = slt(&g, root, eps).unwrap();
            let dg = dijkstra(&g, root).unwrap();
            let dt = dijkstra(&t.as_graph(&g), root).unwrap();
            for x in 0..g.n() {
                assert!(dt.dist[x] <= (1.0 + eps) * dg.dist[x], "root {root} x {x}");
            }
            assert!(t.total_weight <= (1.0 + 2.0 / eps) * mst_w);
            assert_eq!(t.edge_ids.len(), g.n() - 1);
            assert!(verify_slt(&g, &t, root, eps).unwrap().passed());
        }
    }
}

#[test]
fn slt_forest_on_path_reaches_a_root() {
    let g = generate_graph(&Family::Path { n: 5 }, Weights::Unit, 0).unwrap();
    let f = slt_forest(&g, &[0, 4], 0.1).unwrap();
    let forest = g.subgraph(f.edge_ids.iter().copied());
    let to_roots = multi_source_dijkstra(&g, &[0, 4]).unwrap();
    for u in 0..5 {
        let p = f.pivot[u];
        assert!(p == 0 || p == 4);
        let d = dijkstra(&forest, p).unwrap().dist[u];
        assert!(d <= 1.1 * to_roots.dist[u], "u {u}");
    }
}

#[test]
fn greedy_net_path_example() {
    let g = generate_graph(&Family::Path { n: 5 }, Weights::Unit, 0).unwrap();
    let net = greedy_delta_net(&g, 1.0, &[]).unwrap();
    assert_eq!(net.members, vec![0, 2, 4]);
    assert!(verify_net(&g, &net).unwrap().passed());
}

#[test]
fn verify_net_reports_packing_witness() {
    let g = generate_graph(&Family::Path { n: 5 }, Weights::Unit, 0).unwrap();
    let bad = lightspan::DeltaNet {
        delta: 1.0,
        members: vec![0, 1, 3],
    };
    let check = verify_net(&g, &bad).unwrap();
    assert!(!check.passed());
    assert_eq!(check.packing_witness.map(|(a, b, _)| (a, b)), Some((0, 1)));
}

#[test]
fn representatives_on_geometric_200() {
    let (g, _) = normalize(&geometric(200, 5)).unwrap();
    for eps in [0.02, 0.05, 0.09] {
        let h = build_net_hierarchy(&g, eps, false).unwrap();
        let h0 = h.h0_graph(&g);
        assert_eq!(h.levels[h.top].members.len(), 1);
        for i in 1..=h.top {
            assert!(h.levels[i].members.iter().all(|&v| h.levels[i - 1].contains(v)));
        }
        for v in 0..g.n() {
            let t = dijkstra(&h0, v).unwrap();
            for i in 0..=h.top {
                let x = h.rep[i][v];
                assert!(h.levels[i].contains(x));
                assert!(t.dist[x] <= (1.0 + 2.0 * eps) * 2f64.powi(i as i32));
                if h.levels[i].contains(v) {
                    assert_eq!(x, v);
                }
            }
        }
    }
}

#[test]
fn h0_lightness_on_geometric_500() {
    let (g, _) = normalize(&geometric(500, 2)).unwrap();
    let eps = 0.05;
    let h = build_net_hierarchy(&g, eps, false).unwrap();
    let mst_w = mst_weight(&g).unwrap();
    let log_n = (g.n() as f64).log2().ceil();
    assert!(h.h0_weight() / mst_w <= 8.0 * (log_n + 2.0) / eps);
    for (idx, w) in h.h0_level_path_weight.iter().enumerate() {
        assert!(*w <= 8.0 / eps * mst_w, "level {} carries {w}", idx as i32 - 1);
    }
    let summed: f64 = h.h0_edges.iter().map(|&id| g.edge(id).w).sum();
    assert_eq!(summed, h.h0_weight());
}

#[test]
fn normalize_examples() {
    let g = Graph::new(2, [(0, 1, 5.0)]).unwrap();
    let (ng, scale) = normalize(&g).unwrap();
    assert_eq!(scale, 2.0 / 5.0);
    assert_eq!(ng.edge(0).w, 2.0);
    let already = Graph::new(5, (1..5).map(|v| (v - 1, v, 1.25))).unwrap();
    assert_eq!(normalize(&already).unwrap().1, 1.0);
    for seed in 0..10 {
        let g = geometric(150, seed);
        let (ng, _) = normalize(&g).unwrap();
        let w = mst(&ng).unwrap().total_weight;
        assert!((w - 150.0).abs() <= 1e-9 * 150.0);
    }
}

#[test]
fn top_level_bunch_is_the_top_level() {
    let g = geometric(120, 4);
    let ls = sample_levels(&g, 2, 9).unwrap();
    for &u in &ls.levels[2] {
        for delta in [0.1, 0.5, 1.0] {
            assert_eq!(bunch_of(&ls, &g, u, delta).unwrap().members, ls.levels[2]);
        }
    }
}

#[test]
fn bunches_match_brute_force() {
    for seed in 0..6 {
        let g = random_connected(100, 250, seed, false);
        for k in 1..=3 {
            let ls = sample_levels(&g, k, seed).unwrap();
            for u in 0..g.n() {
                for delta in [0.25, 0.475, 1.0] {
                    let b = bunch_of(&ls, &g, u, delta).unwrap();
                    assert_eq!(b.members, brute_bunch(&ls, &g, u, delta), "u {u} k {k}");
                }
            }
        }
    }
}

#[test]
fn sampling_tables_are_consistent() {
    let g = geometric(300, 8);
    let ls = sample_levels(&g, 3, 21).unwrap();
    assert_eq!(ls.levels[0], (0..300).collect::<Vec<_>>());
    for i in 1..=3 {
        assert!(ls.levels[i].iter().all(|&v| ls.levels[i - 1].binary_search(&v).is_ok()));
        for v in 0..g.n() {
            let inside = ls.levels[i].binary_search(&v).is_ok();
            assert_eq!(ls.pivot_dist[i][v] == 0.0, inside);
            assert_eq!(ls.level_of[v] >= i, inside);
            let p = ls.pivot[i][v];
            assert!(ls.levels[i].binary_search(&p).is_ok());
            assert_eq!(dijkstra(&g, p).unwrap().dist[v], ls.pivot_dist[i][v]);
        }
    }
}

#[test]
fn first_level_mean_matches_binomial() {
    // Mean of |A_1| for n = 1024, k = 2 over 200 seeds against 32 +- 3 SE.
    let (n, k, runs) = (1024usize, 2usize, 200u64);
    let p = (n as f64).powf(-1.0 / k as f64);
    let g = generate_graph(&Family::Path { n }, Weights::Unit, 0).unwrap();
    let sizes: Vec<f64> = (0..runs)
        .map(|seed| sample_levels(&g, k, seed * 7919).unwrap().levels[1].len() as f64)
        .collect();
    let mean = sizes.iter().sum::<f64>() / runs as f64;
    let se = (n as f64 * p * (1.0 - p) / runs as f64).sqrt();
    assert!((mean - 32.0).abs() <= 3.0 * se, "mean {mean} se {se}");

    let raw: Vec<f64> = (0..runs)
        .map(|seed| draw_levels(n, k, seed * 7919)[1].len() as f64)
        .collect();
    let raw_mean = raw.iter().sum::<f64>() / runs as f64;
    assert!((raw_mean - 32.0).abs() <= 3.0 * se, "raw mean {raw_mean}");
}

#[test]
fn k_one_samples_with_probability_one_over_n() {
    let levels = draw_levels(1000, 1, 3);
    assert_eq!(levels.len(), 2);
    assert_eq!(levels[0].len(), 1000);
    assert!(levels[1].len() < 10);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn slt_contract_holds(n in 2usize..=120, extra in 0usize..300, seed in any::<u64>(), eps in 0.01f64..2.0) {
        let g = random_connected(n, extra, seed, false);
        let root = (seed as usize) % n;
        let t = slt(&g, root, eps).unwrap();
        let check = verify_slt(&g, &t, root, eps).unwrap();
        prop_assert!(check.passed(), "{:?}", check);
    }

    #[test]
    fn forest_pivot_contract(n in 2usize..=120, extra in 0usize..300, seed in any::<u64>(), eps in 0.01f64..1.0, picks in proptest::collection::vec(any::<usize>(), 1..8)) {
        let g = random_connected(n, extra, seed, false);
        let roots: Vec<usize> = picks.iter().map(|p| p % n).collect();
        let f = slt_forest(&g, &roots, eps).unwrap();
        let forest = g.subgraph(f.edge_ids.iter().copied());
        let to_roots = multi_source_dijkstra(&g, &roots).unwrap();
        for u in 0..n {
            let p = f.pivot[u];
            prop_assert!(roots.contains(&p));
            let d = dijkstra(&forest, p).unwrap().dist[u];
            prop_assert!(d <= (1.0 + eps) * to_roots.dist[u], "u {} d {} bound {}", u, d, to_roots.dist[u]);
        }
    }

    #[test]
    fn greedy_nets_are_valid(n in 2usize..=150, extra in 0usize..300, seed in any::<u64>(), delta in 0.05f64..30.0) {
        let g = random_connected(n, extra, seed, false);
        let net = greedy_delta_net(&g, delta, &[]).unwrap();
        let check = verify_net(&g, &net).unwrap();
        prop_assert!(check.passed(), "{:?}", check);
    }

    #[test]
    fn hierarchy_levels_are_valid_nested_nets(n in 2usize..=150, extra in 0usize..300, seed in any::<u64>()) {
        let (g, _) = normalize(&random_connected(n, extra, seed, false)).unwrap();
        let h = build_net_hierarchy(&g, 0.05, false).unwrap();
        prop_assert_eq!(h.levels[h.top].members.len(), 1);
        for i in 0..=h.top {
            prop_assert!(verify_net(&g, &h.levels[i]).unwrap().passed());
            if i > 0 {
                prop_assert!(h.levels[i].members.iter().all(|&v| h.levels[i - 1].contains(v)));
            }
        }
    }
}
