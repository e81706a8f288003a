mod common;

use proptest::prelude::*;
use sra3::indicators::{eps_indicator, normalize_objectives, sde_distance, EpsParams};
use sra3::metrics::exact_hypervolume;
use sra3::pareto::{dominates, nondominated_indices};
use sra3::problems::Bounds;
use sra3::sra3::{update_ca, update_ca_normalized, update_da};
use sra3::variation::{polynomial_mutation, sbx_crossover, VariationParams};
use sra3::RandomSource;

fn vector(m: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-10.0..10.0f64, m)
}

fn population(m: usize, lo: usize, hi: usize) -> impl Strategy<Value = Vec<Vec<f64>>> {
    prop::collection::vec(prop::collection::vec(0.0..1.0f64, m), lo..hi)
}

proptest! {
    #[test]
    fn dominance_is_a_strict_partial_order(a in vector(3), b in vector(3), c in vector(3)) {
        prop_assert!(!dominates(&a, &a).unwrap());
        prop_assert!(!(dominates(&a, &b).unwrap() && dominates(&b, &a).unwrap()));
        if dominates(&a, &b).unwrap() && dominates(&b, &c).unwrap() {
            prop_assert!(dominates(&a, &c).unwrap());
        }
    }

    #[test]
    fn epsilon_triangle_and_identity(x in vector(4), y in vector(4), z in vector(4)) {
        let e = |a: &[f64], b: &[f64]| eps_indicator(a, b).unwrap();
        prop_assert_eq!(e(&x, &x), 0.0);
        prop_assert!(e(&x, &z) <= e(&x, &y) + e(&y, &z) + 1e-12);
        let weakly = x.iter().zip(&y).all(|(a, b)| a <= b);
        prop_assert_eq!(weakly, e(&x, &y) <= 0.0);
    }

    #[test]
    fn sde_is_nonnegative_and_euclidean_when_all_shifts_apply(x in vector(3), d in prop::collection::vec(0.0..5.0f64, 3)) {
        let y: Vec<f64> = x.iter().zip(&d).map(|(a, b)| a + b).collect();
        let euclid = d.iter().map(|v| v * v).sum::<f64>().sqrt();
        prop_assert!((sde_distance(&x, &y).unwrap() - euclid).abs() < 1e-12);
        prop_assert_eq!(sde_distance(&y, &x).unwrap(), 0.0);
    }

    #[test]
    fn nondominated_filter_is_a_maximal_antichain(pop in population(3, 1, 40)) {
        let keep = nondominated_indices(&pop).unwrap();
        for &i in &keep {
            for &j in &keep {
                prop_assert!(!dominates(&pop[i], &pop[j]).unwrap());
            }
        }
        for i in (0..pop.len()).filter(|i| !keep.contains(i)) {
            prop_assert!(keep.iter().any(|&j| dominates(&pop[j], &pop[i]).unwrap()));
        }
    }

    #[test]
    fn normalized_objectives_lie_in_unit_box(pop in population(4, 1, 30)) {
        let s = normalize_objectives(&pop).unwrap();
        prop_assert!(s.values.iter().flatten().all(|v| (0.0..=1.0).contains(v)));
    }

    #[test]
    fn updates_keep_exactly_capacity_distinct_indices(pop in population(3, 4, 30), frac in 0.1..1.0f64) {
        let n = ((pop.len() as f64 * frac) as usize).max(1);
        let p = EpsParams::default();
        let (normalized, stats) = update_ca_normalized(&pop, n, &p).unwrap();
        prop_assert_eq!(stats.removals, pop.len() - n);
        for keep in [update_ca(&pop, n, &p).unwrap(), normalized, update_da(&pop, n, true).unwrap()] {
            prop_assert_eq!(keep.len(), n);
            prop_assert!(keep.windows(2).all(|w| w[0] < w[1]));
            prop_assert!(*keep.last().unwrap() < pop.len());
        }
    }

    #[test]
    fn hypervolume_grows_with_added_points(pop in population(3, 1, 12), extra in prop::collection::vec(0.0..1.0f64, 3)) {
        let r = [1.0; 3];
        let before = exact_hypervolume(&pop, &r).unwrap();
        let mut more = pop.clone();
        more.push(extra);
        prop_assert!(exact_hypervolume(&more, &r).unwrap() >= before - 1e-12);
        prop_assert!(before <= 1.0 + 1e-12);
    }
}

#[test]
fn variation_stays_within_bounds() {
    let bounds = Bounds::new(vec![-1.0, 0.0, 0.0, 5.0], vec![1.0, 2.0, 0.001, 6.0]).unwrap();
    let params = VariationParams {
        p_mutation: 1.0,
        ..VariationParams::for_variables(4)
    };
    let mut rng = RandomSource::new(21);
    for _ in 0..10_000 {
        let p1 = bounds.sample(&mut rng);
        let p2 = bounds.sample(&mut rng);
        let (c1, c2) = sbx_crossover(&p1, &p2, &params, &bounds, &mut rng).unwrap();
        let m = polynomial_mutation(&c1, &params, &bounds, &mut rng).unwrap();
        for x in [&c1, &c2, &m] {
            assert!(bounds.contains(x), "{x:?}");
        }
    }
}

#[test]
fn sbx_children_are_symmetric_about_the_parents() {
    // far from the bounds, so clipping never applies
    let bounds = Bounds::new(vec![-100.0], vec![100.0]).unwrap();
    let params = VariationParams::for_variables(1);
    let mut rng = RandomSource::new(22);
    let (p1, p2) = ([0.4], [0.6]);
    let draws = 100_000;
    let (mut recombined, mut sum, mut below, mut outside) = (0usize, 0.0, 0usize, 0usize);
    for _ in 0..draws {
        let (c1, c2) = sbx_crossover(&p1, &p2, &params, &bounds, &mut rng).unwrap();
        assert!((c1[0] + c2[0] - 1.0).abs() < 1e-12);
        if c1[0] == p1[0] {
            continue;
        }
        recombined += 1;
        sum += c1[0];
        below += (c1[0] < 0.5) as usize;
        outside += !(0.4..=0.6).contains(&c1[0]) as usize;
    }
    let frac = |k: usize| k as f64 / recombined as f64;
    assert!((recombined as f64 / draws as f64 - 0.5).abs() < 0.01);
    let mean = sum / recombined as f64;
    assert!((mean - 0.5).abs() < 2e-3, "mean {mean}");
    assert!((frac(below) - 0.5).abs() < 0.01, "{}", frac(below));
    // a spread factor above 1 (expansion) is drawn half the time
    assert!((frac(outside) - 0.5).abs() < 0.01, "{}", frac(outside));
}

#[test]
fn mutation_rate_matches_probability() {
    let n = 20;
    let bounds = Bounds::new(vec![0.0; n], vec![1.0; n]).unwrap();
    let params = VariationParams::for_variables(n);
    let mut rng = RandomSource::new(23);
    let x = vec![0.5; n];
    let trials = 20_000;
    let changed: usize = (0..trials)
        .map(|_| {
            polynomial_mutation(&x, &params, &bounds, &mut rng)
                .unwrap()
                .iter()
                .filter(|v| **v != 0.5)
                .count()
        })
        .sum();
    let rate = changed as f64 / (trials * n) as f64;
    assert!((rate - 1.0 / n as f64).abs() < 0.003, "{rate}");
}
