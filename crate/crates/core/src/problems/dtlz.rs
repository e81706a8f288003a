//! DTLZ1-DTLZ4.

use std::f64::consts::PI;

use super::ProblemName;

/// Exponent applied to the position variables of DTLZ4.
const DTLZ4_ALPHA: f64 = 100.0;

pub(super) fn evaluate(name: ProblemName, x: &[f64], m: usize) -> Vec<f64> {
    let (position, distance) = x.split_at(m - 1);
    match name {
        ProblemName::Dtlz1 => linear_front(position, 1.0 + rastrigin_g(distance)),
        ProblemName::Dtlz2 => spherical_front(position, 1.0 + sphere_g(distance)),
        ProblemName::Dtlz3 => spherical_front(position, 1.0 + rastrigin_g(distance)),
        ProblemName::Dtlz4 => {
            let biased: Vec<f64> = position.iter().map(|v| v.powf(DTLZ4_ALPHA)).collect();
            spherical_front(&biased, 1.0 + sphere_g(distance))
        }
        _ => unreachable!("not a DTLZ problem"),
    }
}

fn sphere_g(distance: &[f64]) -> f64 {
    distance.iter().map(|v| (v - 0.5).powi(2)).sum()
}

fn rastrigin_g(distance: &[f64]) -> f64 {
    let k = distance.len() as f64;
    100.0
        * (k + distance
            .iter()
            .map(|v| (v - 0.5).powi(2) - (20.0 * PI * (v - 0.5)).cos())
            .sum::<f64>())
}

fn linear_front(position: &[f64], scale: f64) -> Vec<f64> {
    let m = position.len() + 1;
    (0..m)
        .map(|i| {
            let mut f = 0.5 * scale;
            for v in &position[..m - 1 - i] {
                f *= v;
            }
            if i > 0 {
                f *= 1.0 - position[m - 1 - i];
            }
            f
        })
        .collect()
}

fn spherical_front(position: &[f64], scale: f64) -> Vec<f64> {
    let m = position.len() + 1;
    (0..m)
        .map(|i| {
            let mut f = scale;
            for v in &position[..m - 1 - i] {
                f *= (v * PI / 2.0).cos();
            }
            if i > 0 {
                f *= (position[m - 1 - i] * PI / 2.0).sin();
            }
            f
        })
        .collect()
}
