mod common;

use common::*;
use rand::Rng;
use sra3::indicators::{eps_indicator, fitness_i1, fitness_i2, sde_distance, EpsParams};
use sra3::metrics::{exact_hypervolume, igd, monte_carlo_hypervolume};
use sra3::pareto::{dominates as lib_dominates, nondominated_indices};
use sra3::sra3::{update_ca, update_ca_normalized, update_da};

#[test]
fn epsilon_matches_bisection() {
    let mut r = rng(11);
    for _ in 0..1000 {
        let m = r.random_range(2..8);
        let x: Vec<f64> = (0..m).map(|_| r.random_range(-5.0..5.0)).collect();
        let y: Vec<f64> = (0..m).map(|_| r.random_range(-5.0..5.0)).collect();
        let got = eps_indicator(&x, &y).unwrap();
        assert!((got - eps_bisection(&x, &y)).abs() < 1e-9);
    }
}

#[test]
fn sde_shifts_only_worse_coordinates() {
    assert_eq!(sde_distance(&[0.0, 0.0], &[1.0, 1.0]).unwrap(), 2f64.sqrt());
    assert_eq!(sde_distance(&[1.0, 1.0], &[0.0, 0.0]).unwrap(), 0.0);
    assert_eq!(sde_distance(&[0.0, 2.0], &[3.0, 0.0]).unwrap(), 3.0);
}

#[test]
fn fitness_values_match_double_loops() {
    let mut r = rng(12);
    for _ in 0..30 {
        let size = r.random_range(2..25);
        let m = r.random_range(2..6);
        let pop = random_points(&mut r, size, m, 0.0, 1.0);
        let k = 0.025;
        let f1 = fitness_i1(&pop, &EpsParams::new(k).unwrap()).unwrap();
        for (a, b) in f1.iter().zip(i1_brute(&pop, k)) {
            assert!(rel_close(*a, b, 1e-9), "{a} vs {b}");
        }
        let cap = r.random_range(1..=size);
        let f2 = fitness_i2(&pop, cap).unwrap();
        for (a, b) in f2.iter().zip(i2_brute(&pop, cap)) {
            assert!(rel_close(*a, b, 1e-9), "{a} vs {b}");
        }
    }
}

#[test]
fn archive_updates_match_step_by_step_oracles() {
    let mut r = rng(13);
    let params = EpsParams::default();
    for _ in 0..20 {
        let size = r.random_range(6..=20);
        let m = r.random_range(2..5);
        let n = r.random_range(1..size);
        // mixed scales exercise the normalization
        let mut pop = random_points(&mut r, size, m, 0.0, 1.0);
        for p in &mut pop {
            p[0] *= 10.0;
        }
        assert_eq!(update_ca(&pop, n, &params).unwrap(), update_ca_oracle(&pop, n, params.k));
        let (got, stats) = update_ca_normalized(&pop, n, &params).unwrap();
        let (want, removals) = update_ca_normalized_oracle(&pop, n, params.k);
        assert_eq!(got, want);
        assert_eq!(stats.removals, removals);
        for norm in [false, true] {
            assert_eq!(update_da(&pop, n, norm).unwrap(), update_da_oracle(&pop, n, norm));
        }
    }
}

#[test]
fn dominance_and_filter_match_definition() {
    let mut r = rng(14);
    for _ in 0..200 {
        let m = r.random_range(2..5);
        // a coarse grid produces ties and duplicates
        let pop: Vec<Vec<f64>> = (0..15)
            .map(|_| (0..m).map(|_| r.random_range(0..4) as f64).collect())
            .collect();
        for a in &pop {
            for b in &pop {
                assert_eq!(lib_dominates(a, b).unwrap(), dominates(a, b));
            }
        }
        assert_eq!(nondominated_indices(&pop).unwrap(), nondominated(&pop));
    }
}

#[test]
fn exact_hypervolume_matches_inclusion_exclusion() {
    let mut r = rng(15);
    for m in 2..=4 {
        for _ in 0..25 {
            let size = r.random_range(1..9);
            let pts = random_points(&mut r, size, m, 0.0, 1.2);
            let reference = vec![1.0; m];
            let got = exact_hypervolume(&pts, &reference).unwrap();
            let want = hv_inclusion_exclusion(&pts, &reference);
            assert!((got - want).abs() < 1e-12, "m={m}: {got} vs {want}");
        }
    }
}

#[test]
fn monte_carlo_hypervolume_is_close_in_four_dimensions() {
    let mut r = rng(16);
    let pts = random_points(&mut r, 8, 4, 0.0, 1.0);
    let reference = vec![1.0; 4];
    let mc = monte_carlo_hypervolume(&pts, &reference, 200_000, 5).unwrap();
    let exact = hv_inclusion_exclusion(&pts, &reference);
    assert!((mc - exact).abs() < 0.01, "{mc} vs {exact}");
}

#[test]
fn igd_matches_brute_force() {
    let mut r = rng(17);
    for _ in 0..20 {
        let m = r.random_range(2..6);
        let (np, nr) = (r.random_range(1..30), r.random_range(1..60));
        let p = random_points(&mut r, np, m, 0.0, 2.0);
        let reference = random_points(&mut r, nr, m, 0.0, 1.0);
        assert_eq!(igd(&p, &reference).unwrap(), igd_brute(&p, &reference));
    }
}
