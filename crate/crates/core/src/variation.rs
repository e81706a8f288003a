//! Simulated binary crossover and polynomial mutation.
//!
//! Both operators clip their results to the variable bounds.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::problems::Bounds;
use crate::rng::RandomSource;

/// Parents closer than this are copied unchanged by SBX.
const SBX_MIN_GAP: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VariationParams {
    pub p_crossover: f64,
    pub p_mutation: f64,
    pub eta_c: f64,
    pub eta_m: f64,
}

impl VariationParams {
    /// Crossover probability 1, mutation probability `1/n`, both
    /// distribution indices 20.
    pub fn for_variables(n: usize) -> Self {
        Self {
            p_crossover: 1.0,
            p_mutation: 1.0 / n.max(1) as f64,
            eta_c: 20.0,
            eta_m: 20.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let prob = |p: f64| (0.0..=1.0).contains(&p);
        if !prob(self.p_crossover) || !prob(self.p_mutation) {
            return Err(Error::config("variation probabilities must lie in [0, 1]"));
        }
        if !(self.eta_c > 0.0 && self.eta_m > 0.0) {
            return Err(Error::config("distribution indices must be positive"));
        }
        Ok(())
    }
}

/// SBX spread factor for the uniform draw `u`.
pub fn sbx_spread_factor(u: f64, eta_c: f64) -> f64 {
    let e = 1.0 / (eta_c + 1.0);
    if u <= 0.5 {
        (2.0 * u).powf(e)
    } else {
        (1.0 / (2.0 * (1.0 - u))).powf(e)
    }
}

/// Children of one variable for spread factor `beta`, before clipping.
pub fn sbx_blend(p1: f64, p2: f64, beta: f64) -> (f64, f64) {
    (
        0.5 * ((1.0 + beta) * p1 + (1.0 - beta) * p2),
        0.5 * ((1.0 - beta) * p1 + (1.0 + beta) * p2),
    )
}

/// Bounded polynomial-mutation step (as a fraction of the variable range)
/// for the uniform draw `u`.
pub fn polynomial_delta(x: f64, lower: f64, upper: f64, u: f64, eta_m: f64) -> f64 {
    let range = upper - lower;
    if range <= 0.0 {
        return 0.0;
    }
    let d1 = (x - lower) / range;
    let d2 = (upper - x) / range;
    let pow = 1.0 / (eta_m + 1.0);
    if u < 0.5 {
        let xy = 1.0 - d1;
        let val = 2.0 * u + (1.0 - 2.0 * u) * xy.powf(eta_m + 1.0);
        val.powf(pow) - 1.0
    } else {
        let xy = 1.0 - d2;
        let val = 2.0 * (1.0 - u) + 2.0 * (u - 0.5) * xy.powf(eta_m + 1.0);
        1.0 - val.powf(pow)
    }
}

fn check_parent(x: &[f64], bounds: &Bounds) -> Result<()> {
    if x.len() != bounds.len() {
        return Err(Error::usage(format!(
            "decision vector of length {} against {} bounds",
            x.len(),
            bounds.len()
        )));
    }
    Ok(())
}

/// Simulated binary crossover.
///
/// Per variable: one uniform draw `u` sets the spread factor, the variable
/// is recombined with probability 0.5, and the two children swap values
/// with probability 0.5. Results are clipped to `bounds`.
pub fn sbx_crossover(
    p1: &[f64],
    p2: &[f64],
    params: &VariationParams,
    bounds: &Bounds,
    rng: &mut RandomSource,
) -> Result<(Vec<f64>, Vec<f64>)> {
    if p1.len() != p2.len() {
        return Err(Error::usage("parents differ in length"));
    }
    check_parent(p1, bounds)?;
    let mut c1 = p1.to_vec();
    let mut c2 = p2.to_vec();
    if !rng.chance(params.p_crossover) {
        return Ok((c1, c2));
    }
    for i in 0..p1.len() {
        let u = rng.uniform();
        let recombine = rng.chance(0.5);
        let swap = rng.chance(0.5);
        if !recombine || (p1[i] - p2[i]).abs() <= SBX_MIN_GAP {
            continue;
        }
        let beta = sbx_spread_factor(u, params.eta_c);
        let (mut a, mut b) = sbx_blend(p1[i], p2[i], beta);
        if swap {
            std::mem::swap(&mut a, &mut b);
        }
        let (lo, hi) = (bounds.lower[i], bounds.upper[i]);
        c1[i] = a.clamp(lo, hi);
        c2[i] = b.clamp(lo, hi);
    }
    Ok((c1, c2))
}

/// Polynomial mutation: each variable mutates independently with
/// probability `p_mutation`.
pub fn polynomial_mutation(
    x: &[f64],
    params: &VariationParams,
    bounds: &Bounds,
    rng: &mut RandomSource,
) -> Result<Vec<f64>> {
    check_parent(x, bounds)?;
    let mut out = x.to_vec();
    for (i, v) in out.iter_mut().enumerate() {
        if !rng.chance(params.p_mutation) {
            continue;
        }
        let u = rng.uniform();
        let (lo, hi) = (bounds.lower[i], bounds.upper[i]);
        let delta = polynomial_delta(*v, lo, hi, u, params.eta_m);
        *v = (*v + delta * (hi - lo)).clamp(lo, hi);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_bounds(n: usize) -> Bounds {
        Bounds::new(vec![0.0; n], vec![1.0; n]).unwrap()
    }

    #[test]
    fn spread_factor_is_one_at_half() {
        assert_eq!(sbx_spread_factor(0.5, 20.0), 1.0);
        let (a, b) = sbx_blend(0.2, 0.8, 1.0);
        assert_eq!((a, b), (0.2, 0.8));
    }

    #[test]
    fn sbx_closed_form_hand_value() {
        // u = 0.9, eta = 20: beta = (1 / 0.2)^(1/21) = 5^(1/21)
        let beta = 5f64.powf(1.0 / 21.0);
        assert!((sbx_spread_factor(0.9, 20.0) - beta).abs() < 1e-15);
        let (a, b) = sbx_blend(0.2, 0.8, beta);
        assert!((a - (0.5 - 0.3 * beta)).abs() < 1e-15);
        assert!((b - (0.5 + 0.3 * beta)).abs() < 1e-15);
    }

    #[test]
    fn blend_preserves_mean() {
        for &u in &[0.01, 0.3, 0.5, 0.77, 0.999] {
            let beta = sbx_spread_factor(u, 20.0);
            let (a, b) = sbx_blend(-3.0, 11.0, beta);
            assert!((a + b - 8.0).abs() < 1e-12);
        }
    }

    #[test]
    fn mutation_delta_hand_value() {
        // x = 0.5 in [0, 1], u = 0.1, eta = 20:
        // val = 0.2 + 0.8 * 0.5^21 ; delta = val^(1/21) - 1
        let val = 0.2 + 0.8 * 0.5f64.powi(21);
        let want = val.powf(1.0 / 21.0) - 1.0;
        assert!((polynomial_delta(0.5, 0.0, 1.0, 0.1, 20.0) - want).abs() < 1e-15);
        assert_eq!(polynomial_delta(0.5, 0.0, 1.0, 0.5, 20.0), 0.0);
    }

    #[test]
    fn zero_probabilities_are_identity() {
        let params = VariationParams {
            p_crossover: 0.0,
            p_mutation: 0.0,
            eta_c: 20.0,
            eta_m: 20.0,
        };
        let b = unit_bounds(4);
        let mut rng = RandomSource::new(5);
        let p1 = vec![0.1, 0.2, 0.3, 0.4];
        let p2 = vec![0.9, 0.8, 0.7, 0.6];
        let (c1, c2) = sbx_crossover(&p1, &p2, &params, &b, &mut rng).unwrap();
        assert_eq!((c1.clone(), c2), (p1.clone(), p2));
        assert_eq!(polynomial_mutation(&c1, &params, &b, &mut rng).unwrap(), p1);
    }

    #[test]
    fn length_mismatch_is_usage_error() {
        let b = unit_bounds(3);
        let params = VariationParams::for_variables(3);
        let mut rng = RandomSource::new(1);
        assert!(sbx_crossover(&[0.1; 3], &[0.1; 2], &params, &b, &mut rng).is_err());
        assert!(polynomial_mutation(&[0.1; 2], &params, &b, &mut rng).is_err());
    }

    #[test]
    fn defaults() {
        let p = VariationParams::for_variables(14);
        assert_eq!(p.p_crossover, 1.0);
        assert!((p.p_mutation - 1.0 / 14.0).abs() < 1e-15);
        assert_eq!((p.eta_c, p.eta_m), (20.0, 20.0));
        assert!(p.validate().is_ok());
        assert!(VariationParams { eta_c: 0.0, ..p }.validate().is_err());
    }
}
