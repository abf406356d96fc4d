//! The ZDT biobjective suite (instances 2, 3 and 6).

use alloc::vec::Vec;

use num_traits::Float;

use super::{linspace, proportional_allocation};

const PI: f64 = core::f64::consts::PI;

/// Non-dominated f1 regions of the ZDT3 front (the published interval
/// boundaries of the lower envelope).
const ZDT3_SEGMENTS: [(f64, f64); 5] = [
    (0.0, 0.0830015349),
    (0.1822287280, 0.2577623634),
    (0.4093136748, 0.4538821041),
    (0.6183967944, 0.6525117038),
    (0.8233317983, 0.8518328654),
];

fn zdt_g(x: &[f64]) -> f64 {
    1.0 + 9.0 * x[1..].iter().sum::<f64>() / (x.len() - 1) as f64
}

pub fn zdt2(x: &[f64]) -> Vec<f64> {
    let f1 = x[0];
    let g = zdt_g(x);
    alloc::vec![f1, g * (1.0 - (f1 / g) * (f1 / g))]
}

pub fn zdt3(x: &[f64]) -> Vec<f64> {
    let f1 = x[0];
    let g = zdt_g(x);
    alloc::vec![
        f1,
        g * (1.0 - (f1 / g).sqrt() - f1 / g * (10.0 * PI * f1).sin()),
    ]
}

pub fn zdt6(x: &[f64]) -> Vec<f64> {
    let f1 = 1.0 - (-4.0 * x[0]).exp() * (6.0 * PI * x[0]).sin().powi(6);
    let g = 1.0 + 9.0 * (x[1..].iter().sum::<f64>() / (x.len() - 1) as f64).powf(0.25);
    alloc::vec![f1, g * (1.0 - (f1 / g) * (f1 / g))]
}

pub fn zdt2_front(n: usize) -> Vec<Vec<f64>> {
    linspace(0.0, 1.0, n)
        .into_iter()
        .map(|f1| alloc::vec![f1, 1.0 - f1 * f1])
        .collect()
}

pub fn zdt3_front(n: usize) -> Vec<Vec<f64>> {
    let measures: Vec<f64> = ZDT3_SEGMENTS.iter().map(|(lo, hi)| hi - lo).collect();
    let counts = proportional_allocation(&measures, n);
    let mut out = Vec::with_capacity(n);
    for (seg, ((lo, hi), count)) in ZDT3_SEGMENTS.iter().zip(counts).enumerate() {
        // Left boundaries of later segments tie in f2 with the previous
        // segment's right end and are weakly dominated, so exclude them.
        let samples = if seg == 0 {
            linspace(*lo, *hi, count)
        } else {
            (1..=count)
                .map(|i| lo + (hi - lo) * i as f64 / count as f64)
                .collect()
        };
        for f1 in samples {
            out.push(alloc::vec![
                f1,
                1.0 - f1.sqrt() - f1 * (10.0 * PI * f1).sin(),
            ]);
        }
    }
    out
}

/// Smallest front f1 value of ZDT6: one minus the maximum of
/// `exp(-4x) * sin^6(6 pi x)`, located by ternary search on the first hump.
pub(crate) fn zdt6_f1_min() -> f64 {
    let h = |x: f64| (-4.0 * x).exp() * (6.0 * PI * x).sin().powi(6);
    let (mut lo, mut hi) = (0.0f64, 1.0 / 6.0);
    for _ in 0..200 {
        let a = lo + (hi - lo) / 3.0;
        let b = hi - (hi - lo) / 3.0;
        if h(a) < h(b) {
            lo = a;
        } else {
            hi = b;
        }
    }
    1.0 - h(0.5 * (lo + hi))
}

pub fn zdt6_front(n: usize) -> Vec<Vec<f64>> {
    linspace(zdt6_f1_min(), 1.0, n)
        .into_iter()
        .map(|f1| alloc::vec![f1, 1.0 - f1 * f1])
        .collect()
}
