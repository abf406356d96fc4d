//! The first seven MaF instances at tri-objective scale: modified inverted
//! DTLZ1, DTLZ2BZ, convex DTLZ3, the inverted and convex badly-scaled
//! variants, DTLZ5(I,M) and the DTLZ7 clone.

use alloc::vec::Vec;

use num_traits::Float;

use super::{dtlz, front_directions, linspace};
use crate::pareto::stride_subsample;

const PI: f64 = core::f64::consts::PI;

fn g_sphere(distance: &[f64]) -> f64 {
    distance.iter().map(|x| (x - 0.5) * (x - 0.5)).sum()
}

fn g_rastrigin(distance: &[f64]) -> f64 {
    let k = distance.len() as f64;
    100.0
        * (k + distance
            .iter()
            .map(|x| (x - 0.5) * (x - 0.5) - (20.0 * PI * (x - 0.5)).cos())
            .sum::<f64>())
}

fn sphere_shape(angles: &[f64]) -> Vec<f64> {
    let m = angles.len() + 1;
    (0..m)
        .map(|k| {
            let mut v = 1.0;
            for t in &angles[..m - 1 - k] {
                v *= t.cos();
            }
            if k > 0 {
                v *= angles[m - 1 - k].sin();
            }
            v
        })
        .collect()
}

fn linear_shape(position: &[f64]) -> Vec<f64> {
    let m = position.len() + 1;
    (0..m)
        .map(|k| {
            let mut v = 1.0;
            for p in &position[..m - 1 - k] {
                v *= *p;
            }
            if k > 0 {
                v *= 1.0 - position[m - 1 - k];
            }
            v
        })
        .collect()
}

/// Modified inverted DTLZ1: linear shape flipped around the simplex, with the
/// plain spherical distance function.
pub fn maf1(m: usize, x: &[f64]) -> Vec<f64> {
    let g = g_sphere(&x[m - 1..]);
    linear_shape(&x[..m - 1])
        .into_iter()
        .map(|v| (1.0 + g) * (1.0 - v))
        .collect()
}

/// DTLZ2BZ: each objective gets its own distance chunk, and both position and
/// distance variables are squeezed toward the middle of the box.
pub fn maf2(m: usize, x: &[f64]) -> Vec<f64> {
    let d = x.len();
    let k = d - m + 1;
    let chunk = k / m;
    let angles: Vec<f64> = x[..m - 1]
        .iter()
        .map(|v| PI / 2.0 * (v / 2.0 + 0.25))
        .collect();
    let shape = sphere_shape(&angles);
    (0..m)
        .map(|obj| {
            let start = (m - 1) + obj * chunk;
            let end = if obj + 1 < m { start + chunk } else { d };
            let g: f64 = x[start..end]
                .iter()
                .map(|v| {
                    let z = v / 2.0 + 0.25 - 0.5;
                    z * z
                })
                .sum();
            (1.0 + g) * shape[obj]
        })
        .collect()
}

/// Convex DTLZ3: multimodal distance function with the convexified sphere.
pub fn maf3(m: usize, x: &[f64]) -> Vec<f64> {
    let g = g_rastrigin(&x[m - 1..]);
    let angles: Vec<f64> = x[..m - 1].iter().map(|v| v * PI / 2.0).collect();
    let f: Vec<f64> = sphere_shape(&angles)
        .into_iter()
        .map(|v| (1.0 + g) * v)
        .collect();
    dtlz::convexify(f)
}

/// Inverted badly-scaled DTLZ3: objective k is scaled by 2^(k+1).
pub fn maf4(m: usize, x: &[f64]) -> Vec<f64> {
    let g = g_rastrigin(&x[m - 1..]);
    let angles: Vec<f64> = x[..m - 1].iter().map(|v| v * PI / 2.0).collect();
    sphere_shape(&angles)
        .into_iter()
        .enumerate()
        .map(|(k, v)| 2f64.powi(k as i32 + 1) * (1.0 + g) * (1.0 - v))
        .collect()
}

/// Convex badly-scaled DTLZ4: biased positions, convexified sphere, objective
/// k scaled by 2^(M-k).
pub fn maf5(m: usize, x: &[f64]) -> Vec<f64> {
    const ALPHA: f64 = 100.0;
    let g = g_sphere(&x[m - 1..]);
    let angles: Vec<f64> = x[..m - 1]
        .iter()
        .map(|v| v.powf(ALPHA) * PI / 2.0)
        .collect();
    let f: Vec<f64> = sphere_shape(&angles)
        .into_iter()
        .map(|v| (1.0 + g) * v)
        .collect();
    dtlz::convexify(f)
        .into_iter()
        .enumerate()
        .map(|(k, v)| 2f64.powi((m - k) as i32) * v)
        .collect()
}

/// DTLZ5(I, M) with I = 2: all angles past the first collapse toward pi/4 as
/// the distance function vanishes, with a strong convergence penalty.
pub fn maf6(m: usize, x: &[f64]) -> Vec<f64> {
    let g = g_sphere(&x[m - 1..]);
    let mut angles = Vec::with_capacity(m - 1);
    angles.push(x[0] * PI / 2.0);
    for v in &x[1..m - 1] {
        angles.push(PI / (4.0 * (1.0 + g)) * (1.0 + 2.0 * g * v));
    }
    sphere_shape(&angles)
        .into_iter()
        .map(|v| (1.0 + 100.0 * g) * v)
        .collect()
}

pub fn maf7(m: usize, x: &[f64]) -> Vec<f64> {
    dtlz::dtlz7(m, x)
}

pub fn maf1_front(m: usize, n: usize) -> Vec<Vec<f64>> {
    front_directions(m, n)
        .into_iter()
        .map(|w| w.into_iter().map(|v| 1.0 - v).collect())
        .collect()
}

/// The MaF2 front is the unit-sphere patch with every angle restricted to
/// [pi/8, 3 pi/8]; a grid over the angle square is mapped onto the sphere.
pub fn maf2_front(m: usize, n: usize) -> Vec<Vec<f64>> {
    assert_eq!(m, 3);
    let side = ((n as f64).sqrt() as usize + 1).max(2);
    let axis = linspace(PI / 8.0, 3.0 * PI / 8.0, side);
    let mut points = Vec::with_capacity(side * side);
    for a in &axis {
        for b in &axis {
            points.push(sphere_shape(&[*a, *b]));
        }
    }
    stride_subsample(points, n)
}

pub fn maf3_front(m: usize, n: usize) -> Vec<Vec<f64>> {
    dtlz::dtlz2_front(m, n)
        .into_iter()
        .map(dtlz::convexify)
        .collect()
}

pub fn maf4_front(m: usize, n: usize) -> Vec<Vec<f64>> {
    dtlz::dtlz2_front(m, n)
        .into_iter()
        .map(|u| {
            u.into_iter()
                .enumerate()
                .map(|(k, v)| 2f64.powi(k as i32 + 1) * (1.0 - v))
                .collect()
        })
        .collect()
}

pub fn maf5_front(m: usize, n: usize) -> Vec<Vec<f64>> {
    dtlz::dtlz2_front(m, n)
        .into_iter()
        .map(|u| {
            dtlz::convexify(u)
                .into_iter()
                .enumerate()
                .map(|(k, v)| 2f64.powi((m - k) as i32) * v)
                .collect()
        })
        .collect()
}

pub fn maf6_front(m: usize, n: usize) -> Vec<Vec<f64>> {
    dtlz::dtlz5_front(m, n)
}

pub fn maf7_front(m: usize, n: usize) -> Vec<Vec<f64>> {
    dtlz::dtlz7_front(m, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn optimum_x(m: usize, d: usize, position: &[f64]) -> Vec<f64> {
        let mut x = position.to_vec();
        x.extend(core::iter::repeat(0.5).take(d - (m - 1)));
        x
    }

    #[test]
    fn maf1_inverted_simplex() {
        let f = maf1(3, &optimum_x(3, 12, &[0.4, 0.7]));
        let sum: f64 = f.iter().map(|v| 1.0 - v).sum();
        assert!((sum - 1.0).abs() < 1e-9);
    }

    #[test]
    fn maf2_distance_optimum() {
        // MaF2's distance chunks vanish at x = 0.5, leaving a sphere point.
        let f = maf2(3, &optimum_x(3, 12, &[0.3, 0.6]));
        let norm: f64 = f.iter().map(|v| v * v).sum();
        assert!((norm - 1.0).abs() < 1e-9);
    }

    #[test]
    fn maf3_convex_identity() {
        let f = maf3(3, &optimum_x(3, 12, &[0.2, 0.9]));
        assert!((f[0].sqrt() + f[1].sqrt() + f[2] - 1.0).abs() < 1e-9);
    }

    #[test]
    fn maf4_scaled_inverted_identity() {
        let f = maf4(3, &optimum_x(3, 12, &[0.5, 0.1]));
        let sum: f64 = f
            .iter()
            .enumerate()
            .map(|(k, v)| {
                let u = 1.0 - v / 2f64.powi(k as i32 + 1);
                u * u
            })
            .sum();
        assert!((sum - 1.0).abs() < 1e-9);
    }

    #[test]
    fn maf5_scaled_convex_identity() {
        let f = maf5(3, &optimum_x(3, 12, &[0.35, 0.65]));
        let sum = (f[0] / 8.0).sqrt() + (f[1] / 4.0).sqrt() + f[2] / 2.0;
        assert!((sum - 1.0).abs() < 1e-9);
    }

    #[test]
    fn maf6_degenerate_curve() {
        let f = maf6(3, &optimum_x(3, 12, &[0.45, 0.8]));
        let norm: f64 = f.iter().map(|v| v * v).sum();
        assert!((norm - 1.0).abs() < 1e-9);
        assert!((f[0] - f[1]).abs() < 1e-9);
    }

    #[test]
    fn maf2_front_within_angle_patch() {
        for f in maf2_front(3, 150) {
            let norm: f64 = f.iter().map(|v| v * v).sum();
            assert!((norm - 1.0).abs() < 1e-9);
            // sin(pi/8) bounds every coordinate away from the axes.
            assert!(f.iter().all(|v| *v >= (PI / 8.0).sin().powi(2) - 1e-9));
        }
    }
}
