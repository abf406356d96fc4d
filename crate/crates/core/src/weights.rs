//! Weight-vector generation (simplex lattice and two-layer designs), the
//! Tchebycheff scalarising function, neighbourhood structure, and the
//! weight-to-solution correspondence table used by stagnation detection.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::atm::energy_subset_select;
use crate::error::{Error, Result};
use crate::pareto::squared_distance;
use crate::solution::objective_bits;

/// Floor applied to weight components inside the scalariser so corner
/// subproblems stay sensitive to every objective.
pub const WEIGHT_FLOOR: f64 = 1e-6;

/// A set of simplex weights together with the `T`-nearest neighbourhood of
/// each weight (Euclidean, self included, sorted by distance ascending).
#[derive(Debug, Clone, PartialEq)]
pub struct WeightSet {
    vectors: Vec<Vec<f64>>,
    neighborhoods: Vec<Vec<usize>>,
    neighborhood_size: usize,
}

impl WeightSet {
    pub fn new(vectors: Vec<Vec<f64>>, neighborhood_size: usize) -> Self {
        let neighborhoods = build_neighborhoods(&vectors, neighborhood_size);
        Self {
            vectors,
            neighborhoods,
            neighborhood_size,
        }
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[Vec<f64>] {
        &self.vectors
    }

    pub fn weight(&self, i: usize) -> &[f64] {
        &self.vectors[i]
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.neighborhoods[i]
    }

    pub fn neighborhood_size(&self) -> usize {
        self.neighborhood_size
    }
}

fn build_neighborhoods(vectors: &[Vec<f64>], t: usize) -> Vec<Vec<usize>> {
    let n = vectors.len();
    let t = t.min(n);
    (0..n)
        .map(|i| {
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_by(|&a, &b| {
                let da = squared_distance(&vectors[i], &vectors[a]);
                let db = squared_distance(&vectors[i], &vectors[b]);
                da.partial_cmp(&db)
                    .unwrap_or(core::cmp::Ordering::Equal)
                    .then_with(|| (a != i).cmp(&(b != i)))
                    .then_with(|| a.cmp(&b))
            });
            order.truncate(t);
            order
        })
        .collect()
}

/// All weight vectors with components in {0, 1/H, ..., H/H} summing to one,
/// in lexicographic order. Count is C(H+M-1, M-1).
pub fn simplex_lattice(m: usize, divisions: usize) -> Vec<Vec<f64>> {
    assert!(m >= 2 && divisions >= 1);
    let mut out = Vec::new();
    let mut current = vec![0.0; m];
    fill_lattice(&mut out, &mut current, m, divisions, divisions, 0);
    out
}

fn fill_lattice(
    out: &mut Vec<Vec<f64>>,
    current: &mut Vec<f64>,
    m: usize,
    divisions: usize,
    remaining: usize,
    depth: usize,
) {
    if depth == m - 1 {
        current[depth] = remaining as f64 / divisions as f64;
        out.push(current.clone());
        return;
    }
    for step in 0..=remaining {
        current[depth] = step as f64 / divisions as f64;
        fill_lattice(out, current, m, divisions, remaining - step, depth + 1);
    }
}

/// Outer simplex lattice with `h1` divisions plus an inner lattice with `h2`
/// divisions shrunk toward the centroid (`w <- w/2 + 1/(2M)`); duplicates are
/// removed. `h2 = 0` means no inner layer.
pub fn two_layer_lattice(m: usize, h1: usize, h2: usize) -> Vec<Vec<f64>> {
    let mut vectors = simplex_lattice(m, h1);
    if h2 > 0 {
        let shift = 1.0 / (2.0 * m as f64);
        for w in simplex_lattice(m, h2) {
            vectors.push(w.iter().map(|v| v / 2.0 + shift).collect());
        }
    }
    dedup_exact(vectors)
}

fn dedup_exact(vectors: Vec<Vec<f64>>) -> Vec<Vec<f64>> {
    let mut seen = BTreeMap::new();
    let mut out = Vec::with_capacity(vectors.len());
    for w in vectors {
        if seen.insert(objective_bits(&w), ()).is_none() {
            out.push(w);
        }
    }
    out
}

fn binomial(n: usize, k: usize) -> usize {
    let k = k.min(n - k);
    let mut result: usize = 1;
    for i in 0..k {
        result = result * (n - i) / (i + 1);
    }
    result
}

fn lattice_count(m: usize, h: usize) -> usize {
    binomial(h + m - 1, m - 1)
}

/// Builds exactly `n` weights for an `m`-objective problem, including all `m`
/// unit vectors: a single lattice when one fits (`m = 2` fits exactly with
/// `H = n - 1`), otherwise the smallest two-layer design reaching `n`, trimmed
/// back to `n` by energy-based subset selection with the unit vectors
/// protected. Neighbourhoods use the `t` nearest weights.
pub fn weights_for_population(m: usize, n: usize, t: usize) -> Result<WeightSet> {
    if n < m {
        return Err(Error::Config(alloc::format!(
            "population size {n} is below the objective count {m}"
        )));
    }
    let vectors = if m == 2 {
        simplex_lattice(2, n - 1)
    } else if m == 3 {
        let mut h = 1;
        while lattice_count(3, h) < n {
            h += 1;
        }
        simplex_lattice(3, h)
    } else {
        let mut h_single = 1;
        while lattice_count(m, h_single) < n {
            h_single += 1;
        }
        // Smallest combined count reaching n; ties prefer the denser outer
        // layer, then the smaller inner one.
        let mut best: Option<(usize, usize, usize)> = None;
        for h1 in 1..=h_single {
            for h2 in 0..=h_single {
                let count = two_layer_lattice(m, h1, h2).len();
                if count < n {
                    continue;
                }
                let better = match best {
                    None => true,
                    Some((bc, bh1, bh2)) => {
                        count < bc || (count == bc && (h1 > bh1 || (h1 == bh1 && h2 < bh2)))
                    }
                };
                if better {
                    best = Some((count, h1, h2));
                }
            }
        }
        let (_, h1, h2) = best.ok_or_else(|| {
            Error::Config(alloc::format!(
                "no weight lattice reaches {n} points for M={m}"
            ))
        })?;
        two_layer_lattice(m, h1, h2)
    };

    let vectors = if vectors.len() > n {
        trim_by_energy(vectors, n, m)
    } else if vectors.len() == n {
        vectors
    } else {
        return Err(Error::Config(alloc::format!(
            "no weight lattice reaches {n} points for M={m}"
        )));
    };
    Ok(WeightSet::new(vectors, t))
}

fn trim_by_energy(vectors: Vec<Vec<f64>>, n: usize, m: usize) -> Vec<Vec<f64>> {
    let mut protected = Vec::with_capacity(m);
    for axis in 0..m {
        let mut unit = vec![0.0; m];
        unit[axis] = 1.0;
        if let Some(idx) = vectors
            .iter()
            .position(|w| objective_bits(w) == objective_bits(&unit))
        {
            protected.push(idx);
        }
    }
    let all: Vec<usize> = (0..vectors.len()).collect();
    let kept = energy_subset_select(&vectors, all, &[], n, &protected, 2.0 * m as f64);
    kept.into_iter().map(|i| vectors[i].clone()).collect()
}

/// Tchebycheff scalarisation with a floored weight: the maximum over
/// objectives of `max(w_i, 1e-6) * |f_i - z_i|`.
pub fn tchebycheff(objectives: &[f64], weight: &[f64], ideal: &[f64]) -> f64 {
    objectives
        .iter()
        .zip(weight.iter().zip(ideal.iter()))
        .map(|(f, (w, z))| w.max(WEIGHT_FLOOR) * (f - z).abs())
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Penalty-based boundary intersection: distance along the weight direction
/// plus `theta` times the perpendicular distance to it.
pub fn pbi(objectives: &[f64], weight: &[f64], ideal: &[f64], theta: f64) -> f64 {
    let norm = num_traits::Float::sqrt(weight.iter().map(|w| w * w).sum::<f64>());
    let d1: f64 = objectives
        .iter()
        .zip(weight.iter().zip(ideal.iter()))
        .map(|(f, (w, z))| (f - z) * w / norm)
        .sum();
    let d2: f64 = objectives
        .iter()
        .zip(weight.iter().zip(ideal.iter()))
        .map(|(f, (w, z))| {
            let residual = (f - z) - d1 * w / norm;
            residual * residual
        })
        .sum::<f64>();
    d1 + theta * num_traits::Float::sqrt(d2)
}

/// The scalarising function of a run. Each variant also defines the inverse
/// construction used by weight adaptation: the weight whose subproblem a
/// given (normalised) solution optimally serves.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Scalarizer {
    /// Weighted max distance to the ideal; its optimal weight for a solution
    /// is proportional to the inverse objective values.
    Tchebycheff,
    /// Boundary intersection with perpendicular penalty; its optimal weight
    /// for a solution is the ray through the solution.
    Pbi { theta: f64 },
}

impl Scalarizer {
    pub fn evaluate(&self, objectives: &[f64], weight: &[f64], ideal: &[f64]) -> f64 {
        match self {
            Scalarizer::Tchebycheff => tchebycheff(objectives, weight, ideal),
            Scalarizer::Pbi { theta } => pbi(objectives, weight, ideal, *theta),
        }
    }

    /// Simplex weight making a solution (given by archive-normalised
    /// objectives, floored at 1e-6) optimal for its own subproblem.
    pub fn weight_for_solution(&self, normalized_objectives: &[f64]) -> Vec<f64> {
        let components: Vec<f64> = match self {
            Scalarizer::Tchebycheff => normalized_objectives
                .iter()
                .map(|v| 1.0 / v.max(1e-6))
                .collect(),
            Scalarizer::Pbi { .. } => normalized_objectives.iter().map(|v| v.max(1e-6)).collect(),
        };
        let total: f64 = components.iter().sum();
        components.into_iter().map(|v| v / total).collect()
    }
}

/// The weight-to-solution correspondence at one generation: for each weight
/// slot, the incumbent's objective bits, plus the id and multiplicity of the
/// distinct solution it holds. Two tables compare equal exactly when every
/// slot holds an objective-identical incumbent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncumbentTable {
    rows: Vec<Vec<u64>>,
    ids: Vec<usize>,
    counts: Vec<usize>,
}

impl IncumbentTable {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Distinct-solution id per weight slot, in first-occurrence order.
    pub fn ids(&self) -> &[usize] {
        &self.ids
    }

    /// Number of weights holding the same solution as each slot's incumbent.
    pub fn counts(&self) -> &[usize] {
        &self.counts
    }
}

/// The corresponding weight of each solution: the weight whose direction
/// from the ideal point is angularly closest to the solution. Refinements of
/// a solution within its weight cone leave the assignment unchanged, which is
/// what makes the assignment usable as a stagnation signal.
pub fn corresponding_weight_indices<'a, I>(
    incumbent_objectives: I,
    weights: &WeightSet,
    ideal: &[f64],
) -> Vec<usize>
where
    I: IntoIterator<Item = &'a [f64]>,
{
    incumbent_objectives
        .into_iter()
        .map(|objectives| {
            let shifted: Vec<f64> = objectives.iter().zip(ideal).map(|(f, z)| f - z).collect();
            let norm = num_traits::Float::sqrt(shifted.iter().map(|v| v * v).sum::<f64>());
            let mut best = 0;
            let mut best_cosine = f64::NEG_INFINITY;
            for (j, w) in weights.vectors().iter().enumerate() {
                let w_norm = num_traits::Float::sqrt(w.iter().map(|v| v * v).sum::<f64>());
                let dot: f64 = shifted.iter().zip(w).map(|(a, b)| a * b).sum();
                let cosine = if norm > 0.0 {
                    dot / (norm * w_norm)
                } else {
                    0.0
                };
                if cosine > best_cosine {
                    best_cosine = cosine;
                    best = j;
                }
            }
            best
        })
        .collect()
}

/// Groups the per-slot incumbents by exact objective equality and counts how
/// many weights each distinct solution corresponds to.
pub fn corresponding_weight_counts<'a, I>(incumbent_objectives: I) -> IncumbentTable
where
    I: IntoIterator<Item = &'a [f64]>,
{
    let rows: Vec<Vec<u64>> = incumbent_objectives
        .into_iter()
        .map(objective_bits)
        .collect();
    let mut groups: BTreeMap<&[u64], usize> = BTreeMap::new();
    let mut ids = Vec::with_capacity(rows.len());
    let mut next_id = 0;
    for row in &rows {
        let id = *groups.entry(row.as_slice()).or_insert_with(|| {
            let id = next_id;
            next_id += 1;
            id
        });
        ids.push(id);
    }
    let mut group_sizes = vec![0usize; next_id];
    for &id in &ids {
        group_sizes[id] += 1;
    }
    let counts = ids.iter().map(|&id| group_sizes[id]).collect();
    IncumbentTable { rows, ids, counts }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn lattice_counts() {
        assert_eq!(simplex_lattice(2, 99).len(), 100);
        assert_eq!(simplex_lattice(3, 13).len(), 105);
        assert_eq!(simplex_lattice(2, 1), vec![vec![0.0, 1.0], vec![1.0, 0.0]]);
        assert_eq!(two_layer_lattice(10, 3, 0).len(), 220);
    }

    #[test]
    fn two_layer_inner_points() {
        let vectors = two_layer_lattice(3, 2, 1);
        assert_eq!(vectors.len(), 9);
        let inner: Vec<_> = vectors.iter().skip(6).collect();
        assert_eq!(inner.len(), 3);
        for w in inner {
            let min = w.iter().cloned().fold(f64::INFINITY, f64::min);
            assert!(min >= 1.0 / 6.0 - 1e-15);
        }
    }

    #[test]
    fn weights_for_population_exact_sizes() {
        let w2 = weights_for_population(2, 100, 10).unwrap();
        assert_eq!(w2.vectors(), simplex_lattice(2, 99).as_slice());

        let w3 = weights_for_population(3, 105, 11).unwrap();
        assert_eq!(w3.vectors(), simplex_lattice(3, 13).as_slice());

        let w10 = weights_for_population(10, 220, 22).unwrap();
        assert_eq!(w10.vectors(), two_layer_lattice(10, 3, 0).as_slice());

        let w5 = weights_for_population(5, 220, 22).unwrap();
        assert_eq!(w5.len(), 220);
    }

    fn contains_unit_vectors(set: &WeightSet, m: usize) {
        for axis in 0..m {
            let mut unit = vec![0.0; m];
            unit[axis] = 1.0;
            assert!(
                set.vectors().iter().any(|w| w == &unit),
                "missing unit vector for axis {axis}"
            );
        }
    }

    #[test]
    fn unit_vectors_survive_trim() {
        for (m, n) in [(2, 100), (3, 105), (3, 100), (5, 220), (10, 220)] {
            let set = weights_for_population(m, n, 10).unwrap();
            assert_eq!(set.len(), n);
            contains_unit_vectors(&set, m);
        }
    }

    #[test]
    fn tchebycheff_examples() {
        assert_eq!(tchebycheff(&[2.0, 4.0], &[0.5, 0.5], &[0.0, 0.0]), 2.0);
        assert_eq!(tchebycheff(&[1.5, 2.5], &[0.3, 0.7], &[1.5, 2.5]), 0.0);
        // The floor keeps the zero-weight term at 100 * 1e-6 = 1e-4.
        assert_eq!(tchebycheff(&[3.0, 100.0], &[1.0, 0.0], &[0.0, 0.0]), 3.0);
    }

    #[test]
    fn pbi_geometry() {
        // Point on the weight ray: pure d1. Off-ray: d1 + theta * d2.
        let w = [0.5, 0.5];
        let z = [0.0, 0.0];
        let on_ray = pbi(&[1.0, 1.0], &w, &z, 5.0);
        assert!((on_ray - 2f64.sqrt()).abs() < 1e-12);
        let off_ray = pbi(&[1.0, 0.0], &w, &z, 5.0);
        // d1 = 1/sqrt(2), d2 = 1/sqrt(2).
        assert!((off_ray - (1.0 + 5.0) / 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn weight_for_solution_transforms() {
        // Inverse transform for Tchebycheff...
        let w = Scalarizer::Tchebycheff.weight_for_solution(&[0.25, 0.75]);
        assert!((w[0] - 0.75).abs() < 1e-12);
        assert!((w[1] - 0.25).abs() < 1e-12);
        // ...and the ray through the solution for PBI.
        let w = Scalarizer::Pbi { theta: 5.0 }.weight_for_solution(&[0.25, 0.75]);
        assert!((w[0] - 0.25).abs() < 1e-12);
        assert!((w[1] - 0.75).abs() < 1e-12);
        for scalarizer in [Scalarizer::Tchebycheff, Scalarizer::Pbi { theta: 5.0 }] {
            let sum: f64 = scalarizer
                .weight_for_solution(&[0.0, 0.4, 0.9])
                .iter()
                .sum();
            assert!((sum - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn neighborhoods_self_first() {
        let set = weights_for_population(3, 105, 11).unwrap();
        for i in 0..set.len() {
            let nb = set.neighbors(i);
            assert_eq!(nb.len(), 11);
            assert_eq!(nb[0], i);
            let mut prev = 0.0;
            for &j in nb {
                let d = squared_distance(set.weight(i), set.weight(j));
                assert!(d >= prev);
                prev = d;
            }
        }
    }

    #[test]
    fn incumbent_table_counts() {
        let a = [1.0, 2.0];
        let b = [3.0, 0.5];
        let table = corresponding_weight_counts([&a[..], &b[..], &a[..]]);
        assert_eq!(table.counts(), &[2, 1, 2]);
        assert_eq!(table.ids(), &[0, 1, 0]);

        let distinct = corresponding_weight_counts([&a[..], &b[..]]);
        assert_eq!(distinct.counts(), &[1, 1]);

        let again = corresponding_weight_counts([&a[..], &b[..], &a[..]]);
        assert_eq!(table, again);
    }

    proptest! {
        #[test]
        fn lattice_vectors_on_simplex(m in 2usize..5, h in 1usize..8) {
            for w in simplex_lattice(m, h) {
                let sum: f64 = w.iter().sum();
                prop_assert!((sum - 1.0).abs() < 1e-12);
                prop_assert!(w.iter().all(|v| *v >= 0.0));
            }
        }

        #[test]
        fn two_layer_vectors_on_simplex(m in 2usize..5, h1 in 1usize..6, h2 in 0usize..6) {
            for w in two_layer_lattice(m, h1, h2) {
                let sum: f64 = w.iter().sum();
                prop_assert!((sum - 1.0).abs() < 1e-12);
                prop_assert!(w.iter().all(|v| *v >= 0.0));
            }
        }

        #[test]
        fn tchebycheff_monotone(
            f in proptest::collection::vec(0.1..5.0f64, 3),
            w in proptest::collection::vec(0.0..1.0f64, 3),
            bump in 0.01..2.0f64,
            axis in 0usize..3,
        ) {
            let z = vec![0.0; 3];
            let base = tchebycheff(&f, &w, &z);
            let mut worse = f.clone();
            worse[axis] += bump;
            prop_assert!(tchebycheff(&worse, &w, &z) >= base);
        }
    }
}
