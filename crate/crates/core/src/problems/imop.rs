//! Six instances with deliberately irregular Pareto fronts, built from
//! biased position aggregates: extreme-curvature curves, a rippled
//! disconnected curve, wavy and banded patches of the unit sphere, and a
//! plane carrying disconnected line segments.

use alloc::vec::Vec;

use num_traits::Float;

use crate::pareto::stride_subsample;

use super::linspace;

const PI: f64 = core::f64::consts::PI;

/// Number of position variables; the rest form the distance block.
pub(crate) const K: usize = 5;

const A1: f64 = 0.05;
const A2: f64 = 0.05;
const A3: f64 = 10.0;

fn g(x: &[f64]) -> f64 {
    x[K..].iter().map(|v| (v - 0.5) * (v - 0.5)).sum()
}

fn y1(x: &[f64]) -> f64 {
    (x[..K].iter().sum::<f64>() / K as f64).powf(A1)
}

fn y2(x: &[f64]) -> f64 {
    let vals = [x[0], x[2], x[4]];
    (vals.iter().sum::<f64>() / vals.len() as f64).powf(A2)
}

fn y3(x: &[f64]) -> f64 {
    let vals = [x[1], x[3]];
    (vals.iter().sum::<f64>() / vals.len() as f64).powf(A3)
}

/// Maps [0, 1] onto four disjoint sub-bands, one per quarter.
fn band4(t: f64) -> f64 {
    let t = t.min(1.0 - 1e-12);
    let cell = (4.0 * t).floor();
    let frac = 4.0 * t - cell;
    (cell + 0.5 * frac) / 4.0
}

/// Snaps [0, 1] to four levels {0, 1/3, 2/3, 1}.
fn level4(t: f64) -> f64 {
    let t = t.min(1.0 - 1e-12);
    (4.0 * t).floor() / 3.0
}

pub fn imop1(x: &[f64]) -> Vec<f64> {
    let (g, t) = (g(x), y1(x));
    alloc::vec![
        g + (PI * t / 2.0).cos().powi(8),
        g + (PI * t / 2.0).sin().powi(8),
    ]
}

pub fn imop2(x: &[f64]) -> Vec<f64> {
    let (g, t) = (g(x), y1(x));
    alloc::vec![
        g + (PI * t / 2.0).cos().sqrt(),
        g + (PI * t / 2.0).sin().sqrt(),
    ]
}

pub fn imop3(x: &[f64]) -> Vec<f64> {
    let (g, t) = (g(x), y1(x));
    alloc::vec![g + 1.0 + (10.0 * PI * t).cos() / 5.0 - t, g + t]
}

pub fn imop4(x: &[f64]) -> Vec<f64> {
    let (g, t) = (g(x), y1(x));
    imop4_curve(t).into_iter().map(|v| (1.0 + g) * v).collect()
}

fn imop4_curve(t: f64) -> Vec<f64> {
    let theta = PI * t / 2.0;
    let phi = PI / 4.0 * (1.0 + (10.0 * PI * t).sin() / 5.0);
    alloc::vec![
        theta.cos() * phi.cos(),
        theta.cos() * phi.sin(),
        theta.sin(),
    ]
}

pub fn imop5(x: &[f64]) -> Vec<f64> {
    let g = g(x);
    imop5_point(y2(x), y3(x))
        .into_iter()
        .map(|v| (1.0 + g) * v)
        .collect()
}

fn imop5_point(u: f64, v: f64) -> Vec<f64> {
    let theta = PI / 2.0 * band4(u);
    let phi = PI / 2.0 * v;
    alloc::vec![
        theta.cos() * phi.cos(),
        theta.cos() * phi.sin(),
        theta.sin(),
    ]
}

pub fn imop6(x: &[f64]) -> Vec<f64> {
    let g = g(x);
    imop6_point(y2(x), y3(x))
        .into_iter()
        .map(|v| (1.0 + g) * v)
        .collect()
}

fn imop6_point(u: f64, v: f64) -> Vec<f64> {
    let a = 0.5 * u;
    let b = 0.5 * level4(v);
    alloc::vec![a, b, 1.5 * (1.0 - a - b)]
}

pub fn imop1_front(n: usize) -> Vec<Vec<f64>> {
    linspace(0.0, 1.0, n)
        .into_iter()
        .map(|t| alloc::vec![(PI * t / 2.0).cos().powi(8), (PI * t / 2.0).sin().powi(8),])
        .collect()
}

pub fn imop2_front(n: usize) -> Vec<Vec<f64>> {
    linspace(0.0, 1.0, n)
        .into_iter()
        .map(|t| alloc::vec![(PI * t / 2.0).cos().sqrt(), (PI * t / 2.0).sin().sqrt(),])
        .collect()
}

/// The rippled curve's non-dominated subset: f2 grows with the parameter, so
/// a point survives exactly when its f1 is a strict running minimum.
pub fn imop3_front(n: usize) -> Vec<Vec<f64>> {
    let dense = 40 * n.max(100);
    let mut survivors = Vec::new();
    let mut best_f1 = f64::INFINITY;
    for t in linspace(0.0, 1.0, dense) {
        let f1 = 1.0 + (10.0 * PI * t).cos() / 5.0 - t;
        if f1 < best_f1 {
            best_f1 = f1;
            survivors.push(alloc::vec![f1, t]);
        }
    }
    stride_subsample(survivors, n)
}

pub fn imop4_front(n: usize) -> Vec<Vec<f64>> {
    linspace(0.0, 1.0, n).into_iter().map(imop4_curve).collect()
}

pub fn imop5_front(n: usize) -> Vec<Vec<f64>> {
    let per_band = n / 4 + 1;
    let side = ((per_band as f64).sqrt() as usize + 1).max(2);
    let mut points = Vec::new();
    for band in 0..4 {
        for u in linspace(band as f64 / 4.0, band as f64 / 4.0 + 0.2499, side) {
            for v in linspace(0.0, 1.0, side) {
                points.push(imop5_point(u, v));
            }
        }
    }
    stride_subsample(points, n)
}

pub fn imop6_front(n: usize) -> Vec<Vec<f64>> {
    let counts = super::proportional_allocation(&[1.0; 4], n);
    let mut points = Vec::with_capacity(n);
    for (band, count) in counts.into_iter().enumerate() {
        let v = band as f64 / 4.0 + 0.01;
        for u in linspace(0.0, 1.0, count) {
            points.push(imop6_point(u, v));
        }
    }
    points
}

#[cfg(test)]
mod tests {
    use super::*;

    fn optimum_x(position: &[f64; K]) -> Vec<f64> {
        let mut x = position.to_vec();
        x.extend(core::iter::repeat(0.5).take(5));
        x
    }

    #[test]
    fn curve_identities() {
        // IMOP1: f^(1/4) components square-sum to one; IMOP2: fourth powers.
        for f in imop1_front(50) {
            let s = f[0].powf(0.25) + f[1].powf(0.25);
            assert!((s - 1.0).abs() < 1e-9);
        }
        for f in imop2_front(50) {
            let s = f[0].powi(4) + f[1].powi(4);
            assert!((s - 1.0).abs() < 1e-9);
        }
        for f in imop4_front(50) {
            let norm: f64 = f.iter().map(|v| v * v).sum();
            assert!((norm - 1.0).abs() < 1e-9);
        }
        for f in imop5_front(50) {
            let norm: f64 = f.iter().map(|v| v * v).sum();
            assert!((norm - 1.0).abs() < 1e-9);
        }
        for f in imop6_front(50) {
            assert!((f[0] + f[1] + f[2] / 1.5 - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn optima_reach_fronts() {
        let x = optimum_x(&[1.0, 0.3, 0.4, 0.9, 0.6]);
        let f = imop1(&x);
        assert!((f[0].powf(0.25) + f[1].powf(0.25) - 1.0).abs() < 1e-9);
        let f = imop4(&x);
        assert!((f.iter().map(|v| v * v).sum::<f64>() - 1.0).abs() < 1e-9);
        let f = imop6(&x);
        assert!((f[0] + f[1] + f[2] / 1.5 - 1.0).abs() < 1e-9);
    }

    #[test]
    fn band_map_is_disjoint() {
        for i in 0..4 {
            let lo = band4(i as f64 / 4.0 + 1e-9);
            let hi = band4((i + 1) as f64 / 4.0 - 1e-9);
            assert!(lo >= i as f64 / 4.0 - 1e-6);
            assert!(hi <= i as f64 / 4.0 + 0.125 + 1e-6);
        }
    }

    #[test]
    fn imop3_front_strictly_decreasing() {
        let front = imop3_front(300);
        for pair in front.windows(2) {
            assert!(pair[1][0] < pair[0][0]);
            assert!(pair[1][1] > pair[0][1]);
        }
    }
}
