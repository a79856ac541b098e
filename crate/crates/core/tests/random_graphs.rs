use graph_energy::bounds::{certify, graph_energy, DEFAULT_TOLERANCE};
use graph_energy::ensemble::{derive_seed, montecarlo, sample_gnp_half, SplitMix64};
use graph_energy::extremal::{exhaustive_max_energy, km_absolute_value, local_search_max_energy};
use graph_energy::graphs::{parse_edge_list, serialize_edge_list, Graph};

#[test]
fn edge_list_round_trip_on_seeded_graphs() {
    let mut rng = SplitMix64::new(2024);
    for k in 0..100 {
        let n = 1 + (rng.next_u64() % 15) as usize;
        let g = sample_gnp_half(n, derive_seed(77, k));
        // scramble orientation and order, sprinkle comments
        let mut lines: Vec<String> = g
            .edges()
            .map(|(u, v)| if rng.next_u64() % 2 == 0 { format!("{v} {u}") } else { format!("{u} {v}") })
            .collect();
        lines.reverse();
        let text = format!("# graph {k}\n{n}\n\n{}\n", lines.join("\n# --\n"));
        let parsed = parse_edge_list(&text).unwrap();
        assert_eq!(parsed, g);
        assert_eq!(serialize_edge_list(&parsed), serialize_edge_list(&g));
        assert_eq!(parse_edge_list(&serialize_edge_list(&g)).unwrap(), g);
    }
}

#[test]
fn every_trial_matrix_certifies() {
    let n = 60;
    let stats = montecarlo(n, 4, 9).unwrap();
    for (t, trial) in stats.per_trial.iter().enumerate() {
        let g = sample_gnp_half(n, derive_seed(9, t as u64));
        let report = certify(&g.adjacency(), DEFAULT_TOLERANCE).unwrap();
        assert!(report.is_certified(), "{:?}", report.violations);
        assert!((report.energy - trial.energy).abs() <= 1e-9 * trial.energy);
        assert!(trial.energy >= trial.sigma1 + trial.sigma2);
    }
    let recomputed: f64 = stats
        .per_trial
        .iter()
        .map(|t| t.energy / (n as f64).powf(1.5))
        .sum::<f64>()
        / 4.0;
    assert!((recomputed - stats.mean_energy_ratio).abs() <= 1e-12);
}

#[test]
fn local_search_never_beats_exhaustive() {
    for n in 2..=6 {
        let exact = exhaustive_max_energy(n).unwrap();
        assert!(exact.ratio <= 1.0 + 1e-7);
        for seed in [1, 2] {
            let local = local_search_max_energy(n, seed, 1000).unwrap();
            assert!(local.best_energy <= exact.best_energy + 1e-7, "n={n}");
            assert!(local.best_energy >= 2.0 * (n - 1) as f64 - 1e-9);
        }
    }
}

#[test]
fn local_search_order_20() {
    let r = local_search_max_energy(20, 7, 5000).unwrap();
    assert!(r.ratio > 0.0 && r.ratio <= 1.0, "ratio {}", r.ratio);
    assert!((r.ratio - r.best_energy / r.km_absolute).abs() <= 1e-12);
    assert!((r.km_absolute - km_absolute_value(20)).abs() <= 1e-12);
    assert!((graph_energy(&r.best_graph).unwrap() - r.best_energy).abs() <= 1e-9);
    // the climb from K_20 already improves on 2(n-1) = 38
    assert!(r.best_energy > 38.0);
    assert_eq!(r.evaluations, 5000);
}

#[test]
fn exhaustive_snapshots() {
    // values cross-checked by an independent enumeration with LAPACK eigvalsh
    let expected = [(2, 2.0), (3, 4.0), (4, 6.0), (5, 8.0), (6, 10.0)];
    for (n, energy) in expected {
        let r = exhaustive_max_energy(n).unwrap();
        assert!((r.best_energy - energy).abs() <= 1e-9, "n={n}: {}", r.best_energy);
        let complete: Graph = graph_energy::Family::Complete(n).build().unwrap();
        assert_eq!(r.best_graph, complete);
        assert_eq!(r.evaluations, 1u64 << (n * (n - 1) / 2));
    }
}
