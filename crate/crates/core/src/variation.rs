//! Real-coded variation operators: simulated binary crossover and polynomial
//! mutation, both bounded by the problem's decision box.

use alloc::vec::Vec;

use num_traits::Float;
use rand::Rng;

use crate::rng::RandomSource;

/// Operator parameters. `pc`/`pm` are application probabilities, `eta_c` and
/// `eta_m` the distribution indices of SBX and PM.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VariationParams {
    pub pc: f64,
    pub pm: f64,
    pub eta_c: f64,
    pub eta_m: f64,
}

impl VariationParams {
    pub fn new(pc: f64, pm: f64, eta_c: f64, eta_m: f64) -> Self {
        debug_assert!((0.0..=1.0).contains(&pc) && (0.0..=1.0).contains(&pm));
        debug_assert!(eta_c > 0.0 && eta_m > 0.0);
        Self {
            pc,
            pm,
            eta_c,
            eta_m,
        }
    }

    /// Standard configuration: crossover always applied, one expected mutation
    /// per child, distribution indices 20/20.
    pub fn standard(num_variables: usize) -> Self {
        Self::new(1.0, 1.0 / num_variables as f64, 20.0, 20.0)
    }
}

fn clip(value: f64, lo: f64, hi: f64) -> f64 {
    value.max(lo).min(hi)
}

/// Simulated binary crossover (Deb & Agrawal). With probability `1 - pc` the
/// children are copies of the parents. Each variable is crossed with
/// probability 0.5, children are swapped per variable with probability 0.5,
/// and the result is clipped to the bounds. Before clipping the children's
/// mean equals the parents' mean per variable.
pub fn sbx(
    parent_a: &[f64],
    parent_b: &[f64],
    params: &VariationParams,
    bounds: &[(f64, f64)],
    rng: &mut RandomSource,
) -> (Vec<f64>, Vec<f64>) {
    assert_eq!(parent_a.len(), parent_b.len());
    let mut child_a = parent_a.to_vec();
    let mut child_b = parent_b.to_vec();
    if rng.gen::<f64>() >= params.pc {
        return (child_a, child_b);
    }
    for i in 0..parent_a.len() {
        if rng.gen::<f64>() >= 0.5 {
            continue;
        }
        let (p1, p2) = (parent_a[i], parent_b[i]);
        if (p1 - p2).abs() <= 1e-14 {
            continue;
        }
        let u: f64 = rng.gen();
        let beta = if u <= 0.5 {
            (2.0 * u).powf(1.0 / (params.eta_c + 1.0))
        } else {
            (1.0 / (2.0 * (1.0 - u))).powf(1.0 / (params.eta_c + 1.0))
        };
        let mean = 0.5 * (p1 + p2);
        let spread = 0.5 * beta * (p1 - p2);
        let (mut c1, mut c2) = (mean - spread, mean + spread);
        if rng.gen::<f64>() < 0.5 {
            core::mem::swap(&mut c1, &mut c2);
        }
        let (lo, hi) = bounds[i];
        child_a[i] = clip(c1, lo, hi);
        child_b[i] = clip(c2, lo, hi);
    }
    (child_a, child_b)
}

/// Bounded polynomial mutation (Deb). Each variable is perturbed with
/// probability `pm`; the perturbation distribution contracts near the bounds
/// so results always stay inside the box.
pub fn polynomial_mutation(
    x: &[f64],
    params: &VariationParams,
    bounds: &[(f64, f64)],
    rng: &mut RandomSource,
) -> Vec<f64> {
    let mut out = x.to_vec();
    for i in 0..out.len() {
        if rng.gen::<f64>() >= params.pm {
            continue;
        }
        let (lo, hi) = bounds[i];
        let span = hi - lo;
        if span <= 0.0 {
            continue;
        }
        let v = out[i];
        let delta1 = (v - lo) / span;
        let delta2 = (hi - v) / span;
        let u: f64 = rng.gen();
        let exponent = 1.0 / (params.eta_m + 1.0);
        let delta_q = if u <= 0.5 {
            let val = 2.0 * u + (1.0 - 2.0 * u) * (1.0 - delta1).powf(params.eta_m + 1.0);
            val.powf(exponent) - 1.0
        } else {
            let val = 2.0 * (1.0 - u) + 2.0 * (u - 0.5) * (1.0 - delta2).powf(params.eta_m + 1.0);
            1.0 - val.powf(exponent)
        };
        out[i] = clip(v + delta_q * span, lo, hi);
    }
    out
}
