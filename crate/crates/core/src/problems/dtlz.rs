//! The DTLZ family and its inverted (IDTLZ), convex (CDTLZ) and scaled
//! (SDTLZ) variants. Position variables are the first M-1, the rest form the
//! distance block.

use alloc::vec::Vec;

use num_traits::Float;

use crate::pareto::{nondominated_filter_large, stride_subsample};

use super::{front_directions, linspace};

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

/// Multiplicative simplex map: objective k gets the product of the first
/// M-1-k position values times `1 - position[M-1-k]` (except the first
/// objective). The outputs are non-negative and sum to one.
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

/// Unit-sphere map from M-1 angles in [0, pi/2].
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

fn position_angles(position: &[f64]) -> Vec<f64> {
    position.iter().map(|x| x * PI / 2.0).collect()
}

pub fn dtlz1(m: usize, x: &[f64]) -> Vec<f64> {
    let g = g_rastrigin(&x[m - 1..]);
    linear_shape(&x[..m - 1])
        .into_iter()
        .map(|v| 0.5 * (1.0 + g) * v)
        .collect()
}

pub fn dtlz2(m: usize, x: &[f64]) -> Vec<f64> {
    let g = g_sphere(&x[m - 1..]);
    sphere_shape(&position_angles(&x[..m - 1]))
        .into_iter()
        .map(|v| (1.0 + g) * v)
        .collect()
}

pub fn dtlz4(m: usize, x: &[f64]) -> Vec<f64> {
    const ALPHA: f64 = 100.0;
    let g = g_sphere(&x[m - 1..]);
    let biased: Vec<f64> = x[..m - 1].iter().map(|v| v.powf(ALPHA)).collect();
    sphere_shape(&position_angles(&biased))
        .into_iter()
        .map(|v| (1.0 + g) * v)
        .collect()
}

pub fn dtlz5(m: usize, x: &[f64]) -> Vec<f64> {
    let g = g_sphere(&x[m - 1..]);
    let mut angles = Vec::with_capacity(m - 1);
    angles.push(x[0] * PI / 2.0);
    for v in &x[1..m - 1] {
        angles.push(PI / (4.0 * (1.0 + g)) * (1.0 + 2.0 * g * v));
    }
    sphere_shape(&angles)
        .into_iter()
        .map(|v| (1.0 + g) * v)
        .collect()
}

pub fn dtlz7(m: usize, x: &[f64]) -> Vec<f64> {
    let distance = &x[m - 1..];
    let g = 1.0 + 9.0 * distance.iter().sum::<f64>() / distance.len() as f64;
    let mut f: Vec<f64> = x[..m - 1].to_vec();
    let h = m as f64
        - f.iter()
            .map(|fi| fi / (1.0 + g) * (1.0 + (3.0 * PI * fi).sin()))
            .sum::<f64>();
    f.push((1.0 + g) * h);
    f
}

pub fn idtlz1(m: usize, x: &[f64]) -> Vec<f64> {
    let g = g_rastrigin(&x[m - 1..]);
    linear_shape(&x[..m - 1])
        .into_iter()
        .map(|v| 0.5 * (1.0 + g) * (1.0 - v))
        .collect()
}

pub fn idtlz2(m: usize, x: &[f64]) -> Vec<f64> {
    let g = g_sphere(&x[m - 1..]);
    sphere_shape(&position_angles(&x[..m - 1]))
        .into_iter()
        .map(|v| (1.0 + g) * (1.0 - v))
        .collect()
}

pub fn cdtlz2(m: usize, x: &[f64]) -> Vec<f64> {
    convexify(dtlz2(m, x))
}

pub(crate) fn convexify(mut f: Vec<f64>) -> Vec<f64> {
    let m = f.len();
    for value in f.iter_mut().take(m - 1) {
        *value = value.powi(4);
    }
    f[m - 1] = f[m - 1] * f[m - 1];
    f
}

/// Per-objective scale factors of the SDTLZ variants: powers of a base that
/// shrinks as the objective count grows (10 up to three objectives, 3 up to
/// five, 2 beyond).
pub fn sdtlz_scale(m: usize) -> Vec<f64> {
    let base: f64 = if m <= 3 {
        10.0
    } else if m <= 5 {
        3.0
    } else {
        2.0
    };
    (0..m).map(|k| base.powi(k as i32)).collect()
}

pub fn sdtlz1(m: usize, x: &[f64]) -> Vec<f64> {
    dtlz1(m, x)
        .into_iter()
        .zip(sdtlz_scale(m))
        .map(|(f, s)| f * s)
        .collect()
}

pub fn sdtlz2(m: usize, x: &[f64]) -> Vec<f64> {
    dtlz2(m, x)
        .into_iter()
        .zip(sdtlz_scale(m))
        .map(|(f, s)| f * s)
        .collect()
}

pub fn dtlz1_front(m: usize, n: usize) -> Vec<Vec<f64>> {
    front_directions(m, n)
        .into_iter()
        .map(|w| w.into_iter().map(|v| 0.5 * v).collect())
        .collect()
}

/// Lattice directions projected onto the unit sphere.
pub fn dtlz2_front(m: usize, n: usize) -> Vec<Vec<f64>> {
    front_directions(m, n)
        .into_iter()
        .map(|w| {
            let norm = w.iter().map(|v| v * v).sum::<f64>().sqrt();
            w.into_iter().map(|v| v / norm).collect()
        })
        .collect()
}

pub fn dtlz5_front(m: usize, n: usize) -> Vec<Vec<f64>> {
    // Degenerate curve: all collapsed angles sit at pi/4.
    (0..n)
        .map(|i| {
            let t = PI / 2.0 * i as f64 / (n - 1) as f64;
            let mut angles = alloc::vec![PI / 4.0; m - 1];
            angles[0] = t;
            sphere_shape(&angles)
        })
        .collect()
}

pub fn dtlz7_front(m: usize, n: usize) -> Vec<Vec<f64>> {
    if m == 2 {
        let candidates: Vec<Vec<f64>> = linspace(0.0, 1.0, 8 * n.max(256))
            .into_iter()
            .map(|f1| dtlz7_point(m, &[f1]))
            .collect();
        return stride_subsample(nondominated_filter_large(candidates), n);
    }
    // Grid over the free objectives, then keep the non-dominated graph points.
    let mut side = (2.8 * (n as f64).sqrt()) as usize + 1;
    loop {
        let axis = linspace(0.0, 1.0, side);
        let mut candidates = Vec::with_capacity(side * side);
        for a in &axis {
            for b in &axis {
                candidates.push(dtlz7_point(m, &[*a, *b]));
            }
        }
        let front = nondominated_filter_large(candidates);
        if front.len() >= n {
            return stride_subsample(front, n);
        }
        side *= 2;
    }
}

fn dtlz7_point(m: usize, position: &[f64]) -> Vec<f64> {
    let g = 1.0;
    let mut f = position.to_vec();
    let h = m as f64
        - f.iter()
            .map(|fi| fi / (1.0 + g) * (1.0 + (3.0 * PI * fi).sin()))
            .sum::<f64>();
    f.push((1.0 + g) * h);
    f
}

pub fn idtlz1_front(m: usize, n: usize) -> Vec<Vec<f64>> {
    front_directions(m, n)
        .into_iter()
        .map(|w| w.into_iter().map(|v| 0.5 * (1.0 - v)).collect())
        .collect()
}

pub fn idtlz2_front(m: usize, n: usize) -> Vec<Vec<f64>> {
    dtlz2_front(m, n)
        .into_iter()
        .map(|u| u.into_iter().map(|v| 1.0 - v).collect())
        .collect()
}

pub fn cdtlz2_front(m: usize, n: usize) -> Vec<Vec<f64>> {
    dtlz2_front(m, n).into_iter().map(convexify).collect()
}

pub fn sdtlz1_front(m: usize, n: usize) -> Vec<Vec<f64>> {
    let scale = sdtlz_scale(m);
    dtlz1_front(m, n)
        .into_iter()
        .map(|f| {
            f.into_iter()
                .zip(scale.iter())
                .map(|(v, s)| v * s)
                .collect()
        })
        .collect()
}

pub fn sdtlz2_front(m: usize, n: usize) -> Vec<Vec<f64>> {
    let scale = sdtlz_scale(m);
    dtlz2_front(m, n)
        .into_iter()
        .map(|f| {
            f.into_iter()
                .zip(scale.iter())
                .map(|(v, s)| v * s)
                .collect()
        })
        .collect()
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
    fn dtlz2_midpoint() {
        // All distance variables at 0.5 put the point on the unit sphere.
        let x = vec![0.5; 12];
        let f = dtlz2(3, &x);
        assert!((f[0] - 0.5).abs() < 1e-12);
        assert!((f[1] - 0.5).abs() < 1e-12);
        assert!((f[2] - core::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
        let norm: f64 = f.iter().map(|v| v * v).sum::<f64>();
        assert!((norm - 1.0).abs() < 1e-12);
    }

    #[test]
    fn dtlz1_front_identity() {
        for f in dtlz1_front(3, 100) {
            let sum: f64 = f.iter().sum();
            assert!((sum - 0.5).abs() < 1e-9);
        }
        let corners = dtlz1_front(3, 3);
        assert!(corners.contains(&vec![0.5, 0.0, 0.0]));
        assert!(corners.contains(&vec![0.0, 0.5, 0.0]));
        assert!(corners.contains(&vec![0.0, 0.0, 0.5]));
    }

    #[test]
    fn dtlz2_front_identity() {
        for f in dtlz2_front(2, 50) {
            let norm: f64 = f.iter().map(|v| v * v).sum();
            assert!((norm - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn optima_satisfy_front_identities() {
        // Distance block at its optimum (0.5) must land on each front.
        let position = [0.3, 0.8];
        let tol = 1e-9;

        let f = dtlz1(3, &optimum_x(3, 7, &position));
        assert!((f.iter().sum::<f64>() - 0.5).abs() < tol);

        let f = dtlz2(3, &optimum_x(3, 12, &position));
        assert!((f.iter().map(|v| v * v).sum::<f64>() - 1.0).abs() < tol);

        let f = dtlz4(3, &optimum_x(3, 12, &position));
        assert!((f.iter().map(|v| v * v).sum::<f64>() - 1.0).abs() < tol);

        let f = dtlz5(3, &optimum_x(3, 12, &position));
        assert!((f.iter().map(|v| v * v).sum::<f64>() - 1.0).abs() < tol);
        assert!((f[0] - f[1]).abs() < tol);

        let f = idtlz1(3, &optimum_x(3, 7, &position));
        assert!((f.iter().sum::<f64>() - 1.0).abs() < tol);

        let f = idtlz2(3, &optimum_x(3, 12, &position));
        assert!((f.iter().map(|v| (1.0 - v) * (1.0 - v)).sum::<f64>() - 1.0).abs() < tol);

        let f = cdtlz2(3, &optimum_x(3, 12, &position));
        assert!((f[0].sqrt() + f[1].sqrt() + f[2] - 1.0).abs() < tol);

        let f = sdtlz1(3, &optimum_x(3, 7, &position));
        let scale = sdtlz_scale(3);
        assert!((f.iter().zip(&scale).map(|(v, s)| v / s).sum::<f64>() - 0.5).abs() < tol);

        let f = sdtlz2(3, &optimum_x(3, 12, &position));
        assert!(
            (f.iter()
                .zip(&scale)
                .map(|(v, s)| (v / s) * (v / s))
                .sum::<f64>()
                - 1.0)
                .abs()
                < tol
        );
    }

    #[test]
    fn dtlz7_optimum_identity() {
        let mut x = vec![0.2, 0.7];
        x.extend(vec![0.0; 20]);
        let f = dtlz7(3, &x);
        let expected = dtlz7_point(3, &[0.2, 0.7]);
        for (a, b) in f.iter().zip(expected.iter()) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn idtlz1_front_sum() {
        for f in idtlz1_front(3, 120) {
            assert!((f.iter().sum::<f64>() - 1.0).abs() < 1e-9);
        }
        for f in idtlz1_front(10, 150) {
            assert!((f.iter().sum::<f64>() - 4.5).abs() < 1e-9);
        }
    }
}
