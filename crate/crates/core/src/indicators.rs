//! Quality indicators: inverted generational distance and hypervolume (exact
//! dimension-sweep up to four objectives, fixed-seed Monte Carlo beyond),
//! plus front-based normalisation for scaled problems.

use alloc::vec::Vec;

use num_traits::Float;
use rand::Rng;

use crate::error::{Error, Result};
use crate::pareto::euclidean;
use crate::problems::{ProblemId, ProblemSpec};
use crate::rng::RandomSource;

/// Highest objective count handled by the exact hypervolume sweep.
pub const HV_EXACT_MAX_OBJECTIVES: usize = 4;
/// Sample count of the Monte Carlo hypervolume estimator.
pub const HV_MONTE_CARLO_SAMPLES: u64 = 1_000_000;
/// Fixed sampling seed so many-objective hypervolumes reproduce run to run.
pub const HV_MONTE_CARLO_SEED: u64 = 0x4856_5345;

/// Mean Euclidean distance from each reference point to its nearest solution.
pub fn igd(solutions: &[Vec<f64>], reference: &[Vec<f64>]) -> Result<f64> {
    if solutions.is_empty() {
        return Err(Error::Usage(alloc::string::String::from(
            "IGD needs a non-empty solution set",
        )));
    }
    let total: f64 = reference
        .iter()
        .map(|r| {
            solutions
                .iter()
                .map(|s| euclidean(r, s))
                .fold(f64::INFINITY, f64::min)
        })
        .sum();
    Ok(total / reference.len() as f64)
}

/// Affine map onto the analytic front extremes, coordinate by coordinate,
/// with degenerate axes falling back to a unit denominator.
pub fn front_normalize(points: &[Vec<f64>], lower: &[f64], upper: &[f64]) -> Vec<Vec<f64>> {
    let bounds = crate::pareto::ObjectiveBounds::new(lower.to_vec(), upper.to_vec());
    points.iter().map(|p| bounds.apply(p)).collect()
}

/// IGD with the scaled-problem rule applied: solutions and reference set are
/// both normalised by the analytic front extremes when the instance needs it.
pub fn igd_for_problem(
    solutions: &[Vec<f64>],
    reference: &[Vec<f64>],
    problem: &ProblemSpec,
) -> Result<f64> {
    if let Some((lower, upper)) = problem
        .requires_front_normalization()
        .then(|| problem.front_bounds())
        .flatten()
    {
        igd(
            &front_normalize(solutions, &lower, &upper),
            &front_normalize(reference, &lower, &upper),
        )
    } else {
        igd(solutions, reference)
    }
}

fn dominated_points(points: &[Vec<f64>], reference: &[f64]) -> Vec<Vec<f64>> {
    points
        .iter()
        .filter(|p| p.iter().zip(reference).all(|(v, r)| v < r))
        .cloned()
        .collect()
}

/// Exact hypervolume for up to four objectives (minimisation): the Lebesgue
/// measure of the union of boxes spanned by each point and the reference.
/// Points not strictly inside the reference box are discarded.
pub fn hv(points: &[Vec<f64>], reference: &[f64]) -> f64 {
    let inside = dominated_points(points, reference);
    if inside.is_empty() {
        return 0.0;
    }
    assert!(
        reference.len() <= HV_EXACT_MAX_OBJECTIVES,
        "exact hypervolume is limited to {HV_EXACT_MAX_OBJECTIVES} objectives; use hv_monte_carlo"
    );
    hv_sweep(inside, reference)
}

/// Dimension sweep: slice along the first objective and accumulate slab width
/// times the hypervolume of the non-dominated projections seen so far.
fn hv_sweep(mut points: Vec<Vec<f64>>, reference: &[f64]) -> f64 {
    let m = reference.len();
    if m == 1 {
        let min = points.iter().map(|p| p[0]).fold(f64::INFINITY, f64::min);
        return reference[0] - min;
    }
    points.sort_by(|a, b| {
        a[0].partial_cmp(&b[0])
            .unwrap_or(core::cmp::Ordering::Equal)
    });
    let mut kept: Vec<Vec<f64>> = Vec::new();
    let mut total = 0.0;
    for i in 0..points.len() {
        let projection: Vec<f64> = points[i][1..].to_vec();
        let redundant = kept
            .iter()
            .any(|q| q.iter().zip(&projection).all(|(a, b)| a <= b));
        if !redundant {
            kept.retain(|q| !projection.iter().zip(q.iter()).all(|(a, b)| a <= b));
            kept.push(projection);
        }
        let x = points[i][0];
        let next_x = if i + 1 < points.len() {
            points[i + 1][0]
        } else {
            reference[0]
        };
        if next_x > x {
            total += (next_x - x) * hv_sweep(kept.clone(), &reference[1..]);
        }
    }
    total
}

/// Monte Carlo hypervolume estimate with a fixed sampling stream.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonteCarloHv {
    pub value: f64,
    pub samples: u64,
    pub standard_error: f64,
}

pub fn hv_monte_carlo(
    points: &[Vec<f64>],
    reference: &[f64],
    samples: u64,
    seed: u64,
) -> MonteCarloHv {
    let inside = dominated_points(points, reference);
    if inside.is_empty() {
        return MonteCarloHv {
            value: 0.0,
            samples,
            standard_error: 0.0,
        };
    }
    let m = reference.len();
    let mut lower = inside[0].clone();
    for p in &inside[1..] {
        for (lo, v) in lower.iter_mut().zip(p) {
            if v < lo {
                *lo = *v;
            }
        }
    }
    let volume: f64 = lower.iter().zip(reference).map(|(lo, r)| r - lo).product();
    let mut rng = RandomSource::new(seed);
    let mut hits = 0u64;
    let mut sample = alloc::vec![0.0; m];
    for _ in 0..samples {
        for (s, (lo, r)) in sample.iter_mut().zip(lower.iter().zip(reference)) {
            *s = lo + rng.gen::<f64>() * (r - lo);
        }
        if inside
            .iter()
            .any(|p| p.iter().zip(&sample).all(|(v, s)| v <= s))
        {
            hits += 1;
        }
    }
    let fraction = hits as f64 / samples as f64;
    MonteCarloHv {
        value: volume * fraction,
        samples,
        standard_error: volume * (fraction * (1.0 - fraction) / samples as f64).sqrt(),
    }
}

/// Hypervolume with the method picked by objective count: exact sweep up to
/// four objectives, fixed-seed Monte Carlo beyond.
pub fn hv_for_objective_count(points: &[Vec<f64>], reference: &[f64]) -> (f64, Option<u64>) {
    if reference.len() <= HV_EXACT_MAX_OBJECTIVES {
        (hv(points, reference), None)
    } else {
        let mc = hv_monte_carlo(
            points,
            reference,
            HV_MONTE_CARLO_SAMPLES,
            HV_MONTE_CARLO_SEED,
        );
        (mc.value, Some(mc.samples))
    }
}

/// Per-instance hypervolume reference points. Scaled problems bake the front
/// range into the reference, so no normalisation is applied before HV.
pub fn hv_reference(problem: &ProblemSpec) -> Vec<f64> {
    let m = problem.objectives();
    match problem.id() {
        ProblemId::Dtlz1 | ProblemId::IDtlz1 => alloc::vec![1.0; m],
        ProblemId::Dtlz2 | ProblemId::Dtlz4 | ProblemId::IDtlz2 | ProblemId::CDtlz2 => {
            alloc::vec![2.0; m]
        }
        ProblemId::Dtlz5 => alloc::vec![2.0; m],
        ProblemId::Dtlz7 | ProblemId::MaF7 => alloc::vec![2.0, 2.0, 7.0],
        ProblemId::SDtlz1 => alloc::vec![0.55, 5.5, 55.0],
        ProblemId::SDtlz2 => alloc::vec![1.1, 11.0, 110.0],
        ProblemId::Sch1 => alloc::vec![5.0, 5.0],
        ProblemId::Sch2 => alloc::vec![2.0, 17.0],
        ProblemId::Fon1 => alloc::vec![2.0, 2.0],
        ProblemId::Zdt2 | ProblemId::Zdt3 | ProblemId::Zdt6 => alloc::vec![2.0, 2.0],
        ProblemId::Vnt2 => alloc::vec![5.0, 16.0, 12.0],
        ProblemId::MaF1 | ProblemId::MaF2 | ProblemId::MaF3 => alloc::vec![1.0, 1.0, 1.0],
        ProblemId::MaF4 => alloc::vec![2.0, 4.0, 8.0],
        ProblemId::MaF5 => alloc::vec![8.0, 4.0, 2.0],
        ProblemId::MaF6 => alloc::vec![0.8, 0.8, 1.0],
        ProblemId::Imop1 | ProblemId::Imop2 => alloc::vec![1.0, 1.0],
        ProblemId::Imop3 => alloc::vec![1.5, 1.0],
        ProblemId::Imop4 | ProblemId::Imop5 => alloc::vec![1.0, 1.0, 1.0],
        ProblemId::Imop6 => alloc::vec![0.5, 0.5, 1.5],
    }
}
