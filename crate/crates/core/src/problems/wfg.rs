//! WFG1-WFG9 built from the toolkit's transformation and shape functions.
//!
//! Decision variable `i` (0-based) lives in `[0, 2(i+1)]`; the first `k`
//! are position-related, the remaining `l` distance-related.

use super::ProblemName;

/// Value every distance-related parameter takes on the Pareto front, after
/// the bias transformations of the respective problem are undone.
pub(crate) const OPTIMAL_DISTANCE: f64 = 0.35;

const PARAM_A: f64 = 0.98 / 49.98;
const PARAM_B: f64 = 0.02;
const PARAM_C: f64 = 50.0;

pub(crate) mod transform {
    //! Scalar and reduction transformations. All inputs and outputs lie in
    //! `[0, 1]`; results are clamped to absorb rounding.

    use std::f64::consts::PI;

    fn unit(v: f64) -> f64 {
        v.clamp(0.0, 1.0)
    }

    pub fn b_poly(y: f64, alpha: f64) -> f64 {
        unit(y.powf(alpha))
    }

    pub fn b_flat(y: f64, a: f64, b: f64, c: f64) -> f64 {
        let t1 = (y - b).floor().min(0.0) * a * (b - y) / b;
        let t2 = (c - y).floor().min(0.0) * (1.0 - a) * (y - c) / (1.0 - c);
        unit(a + t1 - t2)
    }

    pub fn b_param(y: f64, u: f64, a: f64, b: f64, c: f64) -> f64 {
        unit(y.powf(param_exponent(u, a, b, c)))
    }

    pub fn param_exponent(u: f64, a: f64, b: f64, c: f64) -> f64 {
        b + (c - b) * (a - (1.0 - 2.0 * u) * ((0.5 - u).floor() + a).abs())
    }

    pub fn s_linear(y: f64, a: f64) -> f64 {
        unit((y - a).abs() / ((a - y).floor() + a).abs())
    }

    pub fn s_deceptive(y: f64, a: f64, b: f64, c: f64) -> f64 {
        let t1 = (y - a + b).floor() * (1.0 - c + (a - b) / b) / (a - b);
        let t2 = (a + b - y).floor() * (1.0 - c + (1.0 - a - b) / b) / (1.0 - a - b);
        unit(1.0 + ((y - a).abs() - b) * (t1 + t2 + 1.0 / b))
    }

    pub fn s_multi(y: f64, a: f64, b: f64, c: f64) -> f64 {
        let t = (y - c).abs() / (2.0 * ((c - y).floor() + c));
        unit((1.0 + ((4.0 * a + 2.0) * PI * (0.5 - t)).cos() + 4.0 * b * t * t) / (b + 2.0))
    }

    pub fn r_sum(y: &[f64], w: &[f64]) -> f64 {
        let num: f64 = y.iter().zip(w).map(|(a, b)| a * b).sum();
        let den: f64 = w.iter().sum();
        unit(num / den)
    }

    pub fn r_mean(y: &[f64]) -> f64 {
        unit(y.iter().sum::<f64>() / y.len() as f64)
    }

    pub fn r_nonsep(y: &[f64], a: usize) -> f64 {
        let n = y.len();
        let mut num = 0.0;
        for j in 0..n {
            num += y[j];
            for k in 0..a.saturating_sub(1) {
                num += (y[j] - y[(j + k + 1) % n]).abs();
            }
        }
        let half = (a as f64 / 2.0).ceil();
        let den = (n as f64 / a as f64) * half * (1.0 + 2.0 * a as f64 - 2.0 * half);
        unit(num / den)
    }
}

mod shape {
    //! Front shapes over `x` of length `M - 1`; `index` is 1-based.

    use std::f64::consts::PI;

    pub fn linear(x: &[f64], index: usize) -> f64 {
        let m = x.len() + 1;
        let mut r: f64 = x[..m - index].iter().product();
        if index > 1 {
            r *= 1.0 - x[m - index];
        }
        r
    }

    pub fn convex(x: &[f64], index: usize) -> f64 {
        let m = x.len() + 1;
        let mut r: f64 = x[..m - index]
            .iter()
            .map(|v| 1.0 - (v * PI / 2.0).cos())
            .product();
        if index > 1 {
            r *= 1.0 - (x[m - index] * PI / 2.0).sin();
        }
        r
    }

    pub fn concave(x: &[f64], index: usize) -> f64 {
        let m = x.len() + 1;
        let mut r: f64 = x[..m - index].iter().map(|v| (v * PI / 2.0).sin()).product();
        if index > 1 {
            r *= (x[m - index] * PI / 2.0).cos();
        }
        r
    }

    pub fn mixed(x1: f64, alpha: f64, a: f64) -> f64 {
        let t = 2.0 * a * PI;
        (1.0 - x1 - (t * x1 + PI / 2.0).cos() / t).powf(alpha)
    }

    pub fn disc(x1: f64, alpha: f64, beta: f64, a: f64) -> f64 {
        1.0 - x1.powf(alpha) * (a * x1.powf(beta) * PI).cos().powi(2)
    }
}

use transform::*;

fn scale(i: usize) -> f64 {
    2.0 * (i + 1) as f64
}

pub(super) fn evaluate(name: ProblemName, z: &[f64], m: usize, k: usize) -> Vec<f64> {
    let y: Vec<f64> = z.iter().enumerate().map(|(i, v)| v / scale(i)).collect();
    evaluate_normalized(name, y, m, k)
}

/// Evaluates with every decision variable already divided by its upper
/// bound.
fn evaluate_normalized(name: ProblemName, y: Vec<f64>, m: usize, k: usize) -> Vec<f64> {
    let t = reduce(name, y, m, k);
    let degenerate = name == ProblemName::Wfg3;
    let x = shape_parameters(&t, degenerate);
    let h = shape_values(name, &x, m);
    let distance = x[m - 1];
    h.iter()
        .enumerate()
        .map(|(i, hi)| distance + scale(i) * hi)
        .collect()
}

/// Applies the problem-specific transformation chain, producing `M` values.
fn reduce(name: ProblemName, mut y: Vec<f64>, m: usize, k: usize) -> Vec<f64> {
    let n = y.len();
    match name {
        ProblemName::Wfg1 => {
            for v in &mut y[k..] {
                *v = s_linear(*v, OPTIMAL_DISTANCE);
            }
            for v in &mut y[k..] {
                *v = b_flat(*v, 0.8, 0.75, 0.85);
            }
            for v in &mut y {
                *v = b_poly(*v, 0.02);
            }
            let weights: Vec<f64> = (1..=n).map(|i| 2.0 * i as f64).collect();
            weighted_sum_reduction(&y, &weights, m, k)
        }
        ProblemName::Wfg2 | ProblemName::Wfg3 => {
            for v in &mut y[k..] {
                *v = s_linear(*v, OPTIMAL_DISTANCE);
            }
            let l = n - k;
            let mut reduced = y[..k].to_vec();
            reduced.extend((0..l / 2).map(|j| r_nonsep(&y[k + 2 * j..k + 2 * j + 2], 2)));
            let weights = vec![1.0; reduced.len()];
            weighted_sum_reduction(&reduced, &weights, m, k)
        }
        ProblemName::Wfg4 => {
            for v in &mut y {
                *v = s_multi(*v, 30.0, 10.0, OPTIMAL_DISTANCE);
            }
            mean_reduction(&y, m, k)
        }
        ProblemName::Wfg5 => {
            for v in &mut y {
                *v = s_deceptive(*v, OPTIMAL_DISTANCE, 0.001, 0.05);
            }
            mean_reduction(&y, m, k)
        }
        ProblemName::Wfg6 => {
            for v in &mut y[k..] {
                *v = s_linear(*v, OPTIMAL_DISTANCE);
            }
            nonsep_reduction(&y, m, k)
        }
        ProblemName::Wfg7 => {
            let orig = y.clone();
            for i in 0..k {
                let u = r_mean(&orig[i + 1..]);
                y[i] = b_param(orig[i], u, PARAM_A, PARAM_B, PARAM_C);
            }
            for v in &mut y[k..] {
                *v = s_linear(*v, OPTIMAL_DISTANCE);
            }
            mean_reduction(&y, m, k)
        }
        ProblemName::Wfg8 => {
            let orig = y.clone();
            for i in k..n {
                let u = r_mean(&orig[..i]);
                y[i] = b_param(orig[i], u, PARAM_A, PARAM_B, PARAM_C);
            }
            for v in &mut y[k..] {
                *v = s_linear(*v, OPTIMAL_DISTANCE);
            }
            mean_reduction(&y, m, k)
        }
        ProblemName::Wfg9 => {
            let orig = y.clone();
            for i in 0..n - 1 {
                let u = r_mean(&orig[i + 1..]);
                y[i] = b_param(orig[i], u, PARAM_A, PARAM_B, PARAM_C);
            }
            for v in &mut y[..k] {
                *v = s_deceptive(*v, OPTIMAL_DISTANCE, 0.001, 0.05);
            }
            for v in &mut y[k..] {
                *v = s_multi(*v, 30.0, 95.0, OPTIMAL_DISTANCE);
            }
            nonsep_reduction(&y, m, k)
        }
        _ => unreachable!("not a WFG problem"),
    }
}

fn weighted_sum_reduction(y: &[f64], w: &[f64], m: usize, k: usize) -> Vec<f64> {
    let group = k / (m - 1);
    let mut t: Vec<f64> = (0..m - 1)
        .map(|i| r_sum(&y[i * group..(i + 1) * group], &w[i * group..(i + 1) * group]))
        .collect();
    t.push(r_sum(&y[k..], &w[k..]));
    t
}

fn mean_reduction(y: &[f64], m: usize, k: usize) -> Vec<f64> {
    let w = vec![1.0; y.len()];
    weighted_sum_reduction(y, &w, m, k)
}

fn nonsep_reduction(y: &[f64], m: usize, k: usize) -> Vec<f64> {
    let group = k / (m - 1);
    let mut t: Vec<f64> = (0..m - 1)
        .map(|i| r_nonsep(&y[i * group..(i + 1) * group], group))
        .collect();
    t.push(r_nonsep(&y[k..], y.len() - k));
    t
}

fn shape_parameters(t: &[f64], degenerate: bool) -> Vec<f64> {
    let m = t.len();
    let last = t[m - 1];
    let mut x: Vec<f64> = (0..m - 1)
        .map(|i| {
            let a = if degenerate && i > 0 { 0.0 } else { 1.0 };
            last.max(a) * (t[i] - 0.5) + 0.5
        })
        .collect();
    x.push(last);
    x
}

fn shape_values(name: ProblemName, x: &[f64], m: usize) -> Vec<f64> {
    let pos = &x[..m - 1];
    match name {
        ProblemName::Wfg1 => {
            let mut h: Vec<f64> = (1..m).map(|i| shape::convex(pos, i)).collect();
            h.push(shape::mixed(pos[0], 1.0, 5.0));
            h
        }
        ProblemName::Wfg2 => {
            let mut h: Vec<f64> = (1..m).map(|i| shape::convex(pos, i)).collect();
            h.push(shape::disc(pos[0], 1.0, 1.0, 5.0));
            h
        }
        ProblemName::Wfg3 => (1..=m).map(|i| shape::linear(pos, i)).collect(),
        _ => (1..=m).map(|i| shape::concave(pos, i)).collect(),
    }
}

/// Normalized distance parameters that put a point with normalized
/// position parameters `y[..k]` on the Pareto front; fills `y[k..]`.
fn optimal_distance(name: ProblemName, y: &mut [f64], k: usize) {
    let n = y.len();
    match name {
        ProblemName::Wfg8 => {
            for i in k..n {
                let u = r_mean(&y[..i]);
                let e = param_exponent(u, PARAM_A, PARAM_B, PARAM_C);
                y[i] = OPTIMAL_DISTANCE.powf(1.0 / e);
            }
        }
        ProblemName::Wfg9 => {
            y[n - 1] = OPTIMAL_DISTANCE;
            for i in (k..n - 1).rev() {
                let u = r_mean(&y[i + 1..]);
                let e = param_exponent(u, PARAM_A, PARAM_B, PARAM_C);
                y[i] = OPTIMAL_DISTANCE.powf(1.0 / e);
            }
        }
        _ => y[k..].fill(OPTIMAL_DISTANCE),
    }
}

/// Completes a decision vector whose first `k` entries (position
/// parameters) are set, choosing distance parameters that put the
/// resulting point on the Pareto front.
pub(super) fn place_on_front(name: ProblemName, z: &mut [f64], k: usize) {
    let mut y: Vec<f64> = z.iter().enumerate().map(|(i, v)| v / scale(i)).collect();
    optimal_distance(name, &mut y, k);
    for i in k..z.len() {
        z[i] = (y[i] * scale(i)).min(scale(i));
    }
}

/// Objective vector of the front point with position parameters `z[..k]`.
///
/// Works in normalized variables throughout, so the distance parameters
/// are exactly optimal. Scaling them back into decision space can miss the
/// optimum by an ulp, which problems with steep bias transforms amplify
/// into a visible offset.
pub(super) fn front_point(name: ProblemName, z: &[f64], m: usize, k: usize) -> Vec<f64> {
    let mut y: Vec<f64> = z.iter().enumerate().map(|(i, v)| v / scale(i)).collect();
    optimal_distance(name, &mut y, k);
    evaluate_normalized(name, y, m, k)
}

/// Residual of the front equation for concave (WFG4-9) shapes at distance
/// zero: `sum (f_i / 2i)^2 - 1`.
pub fn concave_front_residual(f: &[f64]) -> f64 {
    f.iter()
        .enumerate()
        .map(|(i, v)| (v / (2.0 * (i + 1) as f64)).powi(2))
        .sum::<f64>()
        - 1.0
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::transform::*;
    use super::*;

    const EPS: f64 = 1e-12;

    #[test]
    fn s_linear_hand_values() {
        assert!((s_linear(0.35, 0.35)).abs() < EPS);
        // |0.7 - 0.35| / |floor(-0.35) + 0.35| = 0.35 / 0.65
        assert!((s_linear(0.7, 0.35) - 0.35 / 0.65).abs() < EPS);
        // |0.1 - 0.35| / |floor(0.25) + 0.35| = 0.25 / 0.35
        assert!((s_linear(0.1, 0.35) - 0.25 / 0.35).abs() < EPS);
    }

    #[test]
    fn b_flat_hand_values() {
        // inside the flat region the output is A
        assert!((b_flat(0.8, 0.8, 0.75, 0.85) - 0.8).abs() < EPS);
        // y = 0: A + (-1) * A * B / B = 0
        assert!(b_flat(0.0, 0.8, 0.75, 0.85).abs() < EPS);
        // y = 1: A - (-1)(1 - A)(1 - C)/(1 - C) = 1
        assert!((b_flat(1.0, 0.8, 0.75, 0.85) - 1.0).abs() < EPS);
        // y = 0.5: 0.8 - 0.8 * 0.25 / 0.75
        assert!((b_flat(0.5, 0.8, 0.75, 0.85) - (0.8 - 0.8 * 0.25 / 0.75)).abs() < EPS);
    }

    #[test]
    fn b_poly_and_b_param_hand_values() {
        assert!((b_poly(0.5, 0.02) - 0.5f64.powf(0.02)).abs() < EPS);
        // u = 0.5: floor(0) = 0 -> exponent = B + (C - B) * A
        let e = PARAM_B + (PARAM_C - PARAM_B) * PARAM_A;
        assert!((param_exponent(0.5, PARAM_A, PARAM_B, PARAM_C) - e).abs() < EPS);
        assert!((b_param(0.3, 0.5, PARAM_A, PARAM_B, PARAM_C) - 0.3f64.powf(e)).abs() < EPS);
        // u = 0: (1 - 0) * |floor(0.5) + A| = A -> exponent = B
        assert!((param_exponent(0.0, PARAM_A, PARAM_B, PARAM_C) - PARAM_B).abs() < EPS);
    }

    #[test]
    fn s_deceptive_and_s_multi_vanish_at_optimum() {
        assert!(s_deceptive(0.35, 0.35, 0.001, 0.05).abs() < 1e-9);
        assert!(s_multi(0.35, 30.0, 10.0, 0.35).abs() < 1e-12);
        assert!(s_multi(0.35, 30.0, 95.0, 0.35).abs() < 1e-12);
        // s_multi at y = 0: t = 0.35 / 0.7 = 0.5 -> (1 + cos(0) + 4B/4) / (B + 2) = 1
        assert!((s_multi(0.0, 30.0, 10.0, 0.35) - 1.0).abs() < 1e-12);
        // s_deceptive at y = 0: deceptive optimum gives 1 - C... evaluate by hand:
        // t1 = floor(-0.349) * (...) = -1 * (0.95 + 0.349/0.001) / 0.349
        let (a, b, c) = (0.35, 0.001, 0.05);
        let t1 = -1.0 * (1.0 - c + (a - b) / b) / (a - b);
        let t2 = 0.0;
        let want = 1.0 + (a - b) * (t1 + t2 + 1.0 / b);
        assert!((s_deceptive(0.0, a, b, c) - want.clamp(0.0, 1.0)).abs() < 1e-12);
    }

    #[test]
    fn reductions_hand_values() {
        assert!((r_sum(&[0.2, 0.4], &[2.0, 4.0]) - (0.4 + 1.6) / 6.0).abs() < EPS);
        // A = 2 on two values: (y0 + |y0-y1| + y1 + |y1-y0|) / (1 * 1 * (1 + 4 - 2))
        let got = r_nonsep(&[0.2, 0.6], 2);
        assert!((got - (0.2 + 0.4 + 0.6 + 0.4) / 3.0).abs() < EPS);
        // A = 1 reduces to the mean
        assert!((r_nonsep(&[0.1, 0.2, 0.6], 1) - 0.3).abs() < EPS);
    }

    #[test]
    fn two_objective_wfg4_instance_by_hand() {
        // m = 2, k = 1, l = 10. Position z0 = 1 -> y0 = 0.5; distance at optimum.
        let (m, k) = (2, 1);
        let mut z = vec![0.0; 11];
        z[0] = 1.0;
        place_on_front(ProblemName::Wfg4, &mut z, k);
        let f = evaluate(ProblemName::Wfg4, &z, m, k);
        // t0 = s_multi(0.5) ; x0 = t0 ; f = (2 sin(x0 pi/2), 4 cos(x0 pi/2))
        let x0 = s_multi(0.5, 30.0, 10.0, 0.35);
        assert!((f[0] - 2.0 * (x0 * PI / 2.0).sin()).abs() < 1e-12);
        assert!((f[1] - 4.0 * (x0 * PI / 2.0).cos()).abs() < 1e-12);
    }

    #[test]
    fn two_objective_wfg1_instance_by_hand() {
        let (m, k) = (2, 1);
        let mut z = vec![0.0; 11];
        z[0] = 0.6; // y0 = 0.3
        let f = front_point(ProblemName::Wfg1, &z, m, k);
        let x0 = 0.3f64.powf(0.02); // r_sum over one value is the value itself
        let h1 = 1.0 - (x0 * PI / 2.0).cos();
        let h2 = shape::mixed(x0, 1.0, 5.0);
        assert!((f[0] - 2.0 * h1).abs() < 1e-12);
        assert!((f[1] - 4.0 * h2).abs() < 1e-12);
    }

    #[test]
    fn two_objective_wfg3_is_linear() {
        let (m, k) = (2, 1);
        let mut z = vec![0.0; 11];
        z[0] = 0.8; // y0 = 0.4
        place_on_front(ProblemName::Wfg3, &mut z, k);
        let f = evaluate(ProblemName::Wfg3, &z, m, k);
        assert!((f[0] - 2.0 * 0.4).abs() < 1e-12);
        assert!((f[1] - 4.0 * 0.6).abs() < 1e-12);
    }

    #[test]
    fn wfg8_and_wfg9_optimal_distance_reaches_front() {
        for name in [ProblemName::Wfg8, ProblemName::Wfg9] {
            let (m, k) = (3, 2);
            let mut z = vec![0.0; k + 10];
            z[0] = 0.7;
            z[1] = 2.9;
            place_on_front(name, &mut z, k);
            let f = evaluate(name, &z, m, k);
            assert!(concave_front_residual(&f).abs() < 1e-9, "{name:?}: {f:?}");
        }
    }
}
