//! Classic low-dimensional instances: the two Schaffer problems, the
//! Fonseca-Fleming problem and the second Viennet problem.

use alloc::vec::Vec;

use num_traits::Float;

use crate::pareto::{nondominated_filter_large, stride_subsample};

use super::linspace;

pub fn sch1(x: &[f64]) -> Vec<f64> {
    let v = x[0];
    alloc::vec![v * v, (v - 2.0) * (v - 2.0)]
}

pub fn sch2(x: &[f64]) -> Vec<f64> {
    let v = x[0];
    let f1 = if v <= 1.0 {
        -v
    } else if v <= 3.0 {
        v - 2.0
    } else if v <= 4.0 {
        4.0 - v
    } else {
        v - 4.0
    };
    alloc::vec![f1, (v - 5.0) * (v - 5.0)]
}

pub fn fon1(x: &[f64]) -> Vec<f64> {
    let shift = 1.0 / (x.len() as f64).sqrt();
    let s1: f64 = x.iter().map(|v| (v - shift) * (v - shift)).sum();
    let s2: f64 = x.iter().map(|v| (v + shift) * (v + shift)).sum();
    alloc::vec![1.0 - (-s1).exp(), 1.0 - (-s2).exp()]
}

pub fn vnt2(x: &[f64]) -> Vec<f64> {
    let (a, b) = (x[0], x[1]);
    alloc::vec![
        (a - 2.0) * (a - 2.0) / 2.0 + (b + 1.0) * (b + 1.0) / 13.0 + 3.0,
        (a + b - 3.0) * (a + b - 3.0) / 36.0 + (-a + b + 2.0) * (-a + b + 2.0) / 8.0 - 17.0,
        (a + 2.0 * b - 1.0) * (a + 2.0 * b - 1.0) / 175.0 + (2.0 * b - a) * (2.0 * b - a) / 17.0
            - 13.0,
    ]
}

pub fn sch1_front(n: usize) -> Vec<Vec<f64>> {
    linspace(0.0, 4.0, n)
        .into_iter()
        .map(|f1| {
            let r = f1.sqrt() - 2.0;
            alloc::vec![f1, r * r]
        })
        .collect()
}

/// Two disconnected pieces: x in [1, 2) maps to f1 in [-1, 0) and x in [4, 5]
/// to f1 in [0, 1]. The right end of the first piece is excluded because the
/// second piece weakly dominates it at f1 = 0.
pub fn sch2_front(n: usize) -> Vec<Vec<f64>> {
    let first = n / 2;
    let second = n - first;
    let mut out = Vec::with_capacity(n);
    for i in 0..first {
        let x = 1.0 + i as f64 / first as f64;
        out.push(alloc::vec![x - 2.0, (x - 5.0) * (x - 5.0)]);
    }
    for x in linspace(4.0, 5.0, second) {
        out.push(alloc::vec![x - 4.0, (x - 5.0) * (x - 5.0)]);
    }
    out
}

pub fn fon1_front(n: usize) -> Vec<Vec<f64>> {
    // Pareto set: all coordinates equal, between the two basin centres.
    linspace(-1.0, 1.0, n)
        .into_iter()
        .map(|u| {
            alloc::vec![
                1.0 - (-(u - 1.0) * (u - 1.0)).exp(),
                1.0 - (-(u + 1.0) * (u + 1.0)).exp(),
            ]
        })
        .collect()
}

/// VNT2 has no closed-form front; a deterministic two-stage decision-space
/// grid (coarse scan, then a fine grid over the surviving region) is filtered
/// to its non-dominated subset.
pub fn vnt2_front(n: usize) -> Vec<Vec<f64>> {
    let coarse_axis = linspace(-4.0, 4.0, 160);
    let mut decisions = Vec::new();
    let mut objectives = Vec::new();
    for a in &coarse_axis {
        for b in &coarse_axis {
            decisions.push((*a, *b));
            objectives.push(vnt2(&[*a, *b]));
        }
    }
    let keep = crate::pareto::nondominated_indices_large(&objectives);
    let (mut lo_a, mut hi_a) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut lo_b, mut hi_b) = (f64::INFINITY, f64::NEG_INFINITY);
    for &i in &keep {
        let (a, b) = decisions[i];
        lo_a = lo_a.min(a);
        hi_a = hi_a.max(a);
        lo_b = lo_b.min(b);
        hi_b = hi_b.max(b);
    }
    let margin_a = 0.1 * (hi_a - lo_a).max(0.1);
    let margin_b = 0.1 * (hi_b - lo_b).max(0.1);
    let (lo_a, hi_a) = ((lo_a - margin_a).max(-4.0), (hi_a + margin_a).min(4.0));
    let (lo_b, hi_b) = ((lo_b - margin_b).max(-4.0), (hi_b + margin_b).min(4.0));

    let mut side = ((16.0 * n as f64).sqrt() as usize + 1).max(64);
    loop {
        let axis_a = linspace(lo_a, hi_a, side);
        let axis_b = linspace(lo_b, hi_b, side);
        let mut candidates = Vec::with_capacity(side * side);
        for a in &axis_a {
            for b in &axis_b {
                candidates.push(vnt2(&[*a, *b]));
            }
        }
        let front = nondominated_filter_large(candidates);
        if front.len() >= n {
            return stride_subsample(front, n);
        }
        side *= 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sch1_front_identity() {
        for f in sch1_front(80) {
            let expected = (f[0].sqrt() - 2.0) * (f[0].sqrt() - 2.0);
            assert!((f[1] - expected).abs() < 1e-12);
        }
    }

    #[test]
    fn sch1_optimum_endpoints() {
        assert_eq!(sch1(&[0.0]), vec![0.0, 4.0]);
        assert_eq!(sch1(&[2.0]), vec![4.0, 0.0]);
    }

    #[test]
    fn sch2_piecewise() {
        assert_eq!(sch2(&[0.5])[0], -0.5);
        assert_eq!(sch2(&[1.5])[0], -0.5);
        assert_eq!(sch2(&[3.5])[0], 0.5);
        assert_eq!(sch2(&[4.5])[0], 0.5);
    }

    #[test]
    fn fon1_symmetric_point() {
        let f = fon1(&[0.0, 0.0, 0.0]);
        assert!((f[0] - f[1]).abs() < 1e-12);
        let expected = 1.0 - (-1.0f64).exp();
        assert!((f[0] - expected).abs() < 1e-12);
    }

    #[test]
    fn vnt2_front_covers_objective_minima() {
        // The front must approach each objective's unconstrained minimum.
        let front = vnt2_front(400);
        let min_f1 = front.iter().map(|f| f[0]).fold(f64::INFINITY, f64::min);
        let min_f2 = front.iter().map(|f| f[1]).fold(f64::INFINITY, f64::min);
        let min_f3 = front.iter().map(|f| f[2]).fold(f64::INFINITY, f64::min);
        assert!(min_f1 < 3.1, "min f1 = {min_f1}");
        assert!(min_f2 < -16.9, "min f2 = {min_f2}");
        assert!(min_f3 < -12.9, "min f3 = {min_f3}");
    }
}
