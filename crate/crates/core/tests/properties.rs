use proptest::prelude::*;

use doubling_core::graph::{distance_table, Graph};
use doubling_core::measure::{symmetrize, Measure};
use doubling_core::path::refine_minimizer;
use doubling_core::spectral::{chebyshev_u, power_iteration, DEFAULT_MAX_ITER, DEFAULT_TOL};
use doubling_core::window::z_window_report;
use doubling_core::{
    build_named, c0_spectral, doubling_constant, feasible_at, least_doubling, local_constant, Family,
};

/// A connected graph: a random spanning tree plus extra edges.
fn connected_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n).prop_flat_map(|n| {
        let parents = (1..n).map(|v| 0..v).collect::<Vec<_>>();
        let extra = prop::collection::vec((0..n, 0..n), 0..=n);
        (Just(n), parents, extra).prop_map(|(n, parents, extra)| {
            let mut edges: Vec<(usize, usize)> =
                parents.iter().enumerate().map(|(i, &p)| (p, i + 1)).collect();
            edges.extend(extra.into_iter().filter(|(a, b)| a != b));
            edges.sort_unstable_by_key(|&(a, b)| (a.min(b), a.max(b)));
            edges.dedup_by_key(|&mut (a, b)| (a.min(b), a.max(b)));
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}

fn graph_and_measure(max_n: usize) -> impl Strategy<Value = (Graph, Measure)> {
    connected_graph(max_n).prop_flat_map(|g| {
        let n = g.order();
        (Just(g), prop::collection::vec(-3.0f64..3.0, n))
            .prop_map(|(g, logs)| (g, Measure::new(logs.into_iter().map(f64::exp).collect()).unwrap()))
    })
}

fn floyd_warshall(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.order();
    let inf = usize::MAX / 4;
    let mut d = vec![vec![inf; n]; n];
    for (x, row) in d.iter_mut().enumerate() {
        row[x] = 0;
        for &y in g.neighbors(x) {
            row[y] = 1;
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][k] + d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    d
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn bfs_matches_floyd_warshall(g in connected_graph(18)) {
        let idx = distance_table(&g);
        let fw = floyd_warshall(&g);
        for x in 0..g.order() {
            for y in 0..g.order() {
                prop_assert_eq!(idx.dist(x, y), fw[x][y]);
            }
        }
        let diam = fw.iter().flatten().copied().max().unwrap();
        prop_assert_eq!(idx.diameter(), diam);
    }

    #[test]
    fn balls_grow_with_radius(g in connected_graph(18)) {
        let idx = distance_table(&g);
        for x in 0..g.order() {
            let mut prev = 0;
            for r in 0..=idx.eccentricity(x) {
                let size = idx.ball_size(x, r);
                prop_assert!(size >= prev);
                prev = size;
            }
            prop_assert_eq!(prev, g.order());
            prop_assert_eq!(idx.ball_size(x, 0), 1);
            prop_assert_eq!(idx.ball_size(x, 1), 1 + g.degree(x));
        }
    }

    #[test]
    fn constants_are_scale_invariant((g, mu) in graph_and_measure(14), t in 1e-3f64..1e3) {
        let idx = distance_table(&g);
        let a = doubling_constant(&idx, &mu).unwrap();
        let b = doubling_constant(&idx, &mu.scaled(t).unwrap()).unwrap();
        prop_assert!((a.c_mu - b.c_mu).abs() <= 1e-12 * a.c_mu);
        prop_assert!((a.c_mu0 - b.c_mu0).abs() <= 1e-12 * a.c_mu0);
    }

    #[test]
    fn local_constant_dominates_spectral_bound((g, mu) in graph_and_measure(14)) {
        let idx = distance_table(&g);
        let spectral = c0_spectral(&g).unwrap();
        let (c0, _) = local_constant(&idx, &mu).unwrap();
        let c = doubling_constant(&idx, &mu).unwrap().c_mu;
        prop_assert!(c0 >= spectral - 1e-9, "C0_mu = {c0} < C0_G = {spectral}");
        prop_assert!(c >= c0);
    }

    #[test]
    fn valley_in_z_window_forces_three(
        logs in prop::collection::vec(-2.0f64..2.0, 21),
        pos in 1usize..20,
        depth in 0.01f64..=1.0,
    ) {
        let mut w: Vec<f64> = logs.into_iter().map(f64::exp).collect();
        w[pos] = w[pos - 1].min(w[pos + 1]) * depth;
        let r = z_window_report(10, &Measure::new(w).unwrap()).unwrap();
        prop_assert!(r.c0 >= 3.0 * (1.0 - 1e-12));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn feasibility_is_monotone_in_level(g in connected_graph(8), a in 1.0f64..6.0, b in 1.0f64..6.0) {
        let idx = distance_table(&g);
        let (lo, hi) = (a.min(b), a.max(b));
        if let Some(mu) = feasible_at(&idx, lo).unwrap() {
            prop_assert!(feasible_at(&idx, hi).unwrap().is_some());
            let c = doubling_constant(&idx, &mu).unwrap().c_mu;
            prop_assert!(c <= lo * (1.0 + 1e-6));
        }
    }
}

#[test]
fn chebyshev_roots_give_path_spectrum() {
    for n in 1..60 {
        for j in 1..=n {
            let x = (j as f64 * std::f64::consts::PI / (n as f64 + 1.0)).cos();
            let scale = (n as f64 + 1.0).powi(2);
            assert!(chebyshev_u(n, x).abs() < 1e-11 * scale, "U_{n} at root {j}");
        }
    }
}

#[test]
fn perron_vector_is_the_sine_profile() {
    for n in [2, 3, 7, 20, 64, 150] {
        let g = build_named(Family::Path, n).unwrap();
        let r = power_iteration(&g, DEFAULT_TOL, DEFAULT_MAX_ITER).unwrap();
        let sine = Measure::sine(n).normalized_max();
        for (p, s) in r.perron.weights().iter().zip(sine.weights()) {
            assert!((p - s).abs() < 1e-8, "n = {n}: {p} vs {s}");
        }
    }
}

#[test]
fn refined_global_minimizer_has_tight_middle() {
    let idx = distance_table(&build_named(Family::Path, 10).unwrap());
    let res = least_doubling(&idx, 1e-10).unwrap();
    let sym = symmetrize(&res.minimizer);
    let c = doubling_constant(&idx, &sym).unwrap().c_mu;
    let refined = refine_minimizer(&sym, c).unwrap();
    assert!(refined.warning.is_none());
    let nu = refined.measure;
    // middle vertex 5 (1-based): B(5, 1) = {4, 5, 6}
    let middle = (nu[3] + nu[4] + nu[5]) / nu[4];
    assert!((middle - c).abs() < 1e-8, "middle quotient {middle} vs {c}");
    let after = doubling_constant(&idx, &nu).unwrap().c_mu;
    assert!(after <= c + 1e-8, "refinement raised C from {c} to {after}");
}
