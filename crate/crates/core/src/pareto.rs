//! Pareto dominance, non-dominated filtering and archive-referenced
//! normalisation (all objectives are minimised).

use alloc::vec::Vec;

use crate::solution::Solution;

/// Axis ranges below this are treated as degenerate; the denominator is
/// replaced by 1 so normalisation stays total.
pub const DEGENERATE_AXIS_TOL: f64 = 1e-12;

/// True iff `a` Pareto-dominates `b`: no worse in every objective and
/// strictly better in at least one.
///
/// Panics on length mismatch (usage error).
pub fn dominates(a: &[f64], b: &[f64]) -> bool {
    assert_eq!(a.len(), b.len(), "objective vectors must have equal length");
    let mut strictly_better = false;
    for (x, y) in a.iter().zip(b.iter()) {
        if x > y {
            return false;
        }
        if x < y {
            strictly_better = true;
        }
    }
    strictly_better
}

/// Returns the members of `set` dominated by no other member, in input order.
/// Objective-space duplicates are all retained.
pub fn nondominated_filter(set: &[Solution]) -> Vec<Solution> {
    nondominated_indices(set.len(), |i| set[i].objectives())
        .into_iter()
        .map(|i| set[i].clone())
        .collect()
}

/// Index form of the non-dominated filter, generic over how objective vectors
/// are looked up. Survivor order follows input order.
pub fn nondominated_indices<'a, F>(len: usize, objectives: F) -> Vec<usize>
where
    F: Fn(usize) -> &'a [f64],
{
    let mut keep = Vec::new();
    'outer: for i in 0..len {
        for j in 0..len {
            if j != i && dominates(objectives(j), objectives(i)) {
                continue 'outer;
            }
        }
        keep.push(i);
    }
    keep
}

/// Per-objective lower/upper bounds taken from a reference set, with the
/// degenerate-axis rule applied to the ranges.
#[derive(Debug, Clone, PartialEq)]
pub struct ObjectiveBounds {
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
    ranges: Vec<f64>,
}

impl ObjectiveBounds {
    /// Bounds from the componentwise min/max of `points`. `points` must be
    /// non-empty.
    pub fn from_points<'a, I>(points: I) -> Self
    where
        I: IntoIterator<Item = &'a [f64]>,
    {
        let mut iter = points.into_iter();
        let first = iter.next().expect("bounds require a non-empty set");
        let mut lower = first.to_vec();
        let mut upper = first.to_vec();
        for p in iter {
            for (i, v) in p.iter().enumerate() {
                if *v < lower[i] {
                    lower[i] = *v;
                }
                if *v > upper[i] {
                    upper[i] = *v;
                }
            }
        }
        Self::new(lower, upper)
    }

    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Self {
        let ranges = lower
            .iter()
            .zip(upper.iter())
            .map(|(lo, hi)| {
                let range = hi - lo;
                if range < DEGENERATE_AXIS_TOL {
                    1.0
                } else {
                    range
                }
            })
            .collect();
        Self {
            lower,
            upper,
            ranges,
        }
    }

    pub fn apply(&self, point: &[f64]) -> Vec<f64> {
        point
            .iter()
            .zip(self.lower.iter().zip(self.ranges.iter()))
            .map(|(v, (lo, range))| (v - lo) / range)
            .collect()
    }
}

/// Points together with the bounds used to map them into roughly unit scale.
#[derive(Debug, Clone)]
pub struct NormalizedSet {
    pub points: Vec<Vec<f64>>,
    pub bounds: ObjectiveBounds,
}

/// Normalises `population` and `archive` with respect to the minimum and
/// maximum objective values found in the archive. Archive points land in
/// [0, 1] per non-degenerate axis; population points may fall outside and are
/// not clipped, so distances stay meaningful.
pub fn normalize(population: &[Solution], archive: &[Solution]) -> (NormalizedSet, NormalizedSet) {
    assert!(
        !archive.is_empty(),
        "normalisation requires a non-empty archive"
    );
    let bounds = ObjectiveBounds::from_points(archive.iter().map(|s| s.objectives()));
    let map = |set: &[Solution]| -> Vec<Vec<f64>> {
        set.iter().map(|s| bounds.apply(s.objectives())).collect()
    };
    (
        NormalizedSet {
            points: map(population),
            bounds: bounds.clone(),
        },
        NormalizedSet {
            points: map(archive),
            bounds,
        },
    )
}

pub fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    num_traits::Float::sqrt(squared_distance(a, b))
}

pub fn squared_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Non-dominated filter for large point sets, used when building reference
/// fronts from dense samples. Points are processed in ascending coordinate-sum
/// order; a dominator always has a strictly smaller sum, so accepted points
/// can never be invalidated later. Output is sorted lexicographically.
pub fn nondominated_filter_large(points: Vec<Vec<f64>>) -> Vec<Vec<f64>> {
    let keep = nondominated_indices_large(&points);
    let mut accepted: Vec<Vec<f64>> = keep.into_iter().map(|i| points[i].clone()).collect();
    accepted.sort_by(|a, b| a.partial_cmp(b).unwrap_or(core::cmp::Ordering::Equal));
    accepted
}

/// Index form of [`nondominated_filter_large`], unsorted.
pub fn nondominated_indices_large(points: &[Vec<f64>]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..points.len()).collect();
    let sums: Vec<f64> = points.iter().map(|p| p.iter().sum()).collect();
    order.sort_by(|&a, &b| {
        sums[a]
            .partial_cmp(&sums[b])
            .unwrap_or(core::cmp::Ordering::Equal)
    });
    let mut accepted: Vec<usize> = Vec::new();
    for idx in order {
        let candidate = &points[idx];
        if !accepted.iter().any(|&a| dominates(&points[a], candidate)) {
            accepted.push(idx);
        }
    }
    accepted
}

/// Evenly strided subset of `points`, returning exactly `n` rows (or all of
/// them when fewer are available).
pub fn stride_subsample(points: Vec<Vec<f64>>, n: usize) -> Vec<Vec<f64>> {
    if points.len() <= n || n == 0 {
        return points;
    }
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let idx = i * points.len() / n;
        out.push(points[idx].clone());
    }
    out
}

#[cfg(test)]
pub(crate) fn solutions_from_objectives(objs: &[Vec<f64>]) -> Vec<Solution> {
    objs.iter()
        .map(|o| Solution::new(vec![], o.clone(), 0))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sols(objs: &[&[f64]]) -> Vec<Solution> {
        objs.iter()
            .map(|o| Solution::new(vec![], o.to_vec(), 0))
            .collect()
    }

    #[test]
    fn dominates_examples() {
        assert!(dominates(&[1.0, 2.0], &[2.0, 3.0]));
        assert!(!dominates(&[1.0, 2.0], &[2.0, 1.0]));
        assert!(!dominates(&[1.0, 2.0], &[1.0, 2.0]));
    }

    #[test]
    fn filter_examples() {
        let set = sols(&[&[1.0, 2.0], &[2.0, 1.0], &[2.0, 2.0]]);
        let kept = nondominated_filter(&set);
        assert_eq!(kept.len(), 2);
        assert_eq!(kept[0].objectives(), &[1.0, 2.0]);
        assert_eq!(kept[1].objectives(), &[2.0, 1.0]);

        let single = sols(&[&[1.0, 1.0]]);
        assert_eq!(nondominated_filter(&single).len(), 1);

        let chain = sols(&[&[0.0, 3.0], &[1.0, 2.0], &[2.0, 1.0], &[3.0, 0.0]]);
        assert_eq!(nondominated_filter(&chain).len(), 4);
    }

    #[test]
    fn filter_keeps_duplicates() {
        let set = sols(&[&[1.0, 2.0], &[1.0, 2.0], &[0.5, 3.0]]);
        assert_eq!(nondominated_filter(&set).len(), 3);
    }

    #[test]
    fn normalize_endpoints() {
        let archive = sols(&[&[0.0, 10.0], &[2.0, 20.0]]);
        let pop = sols(&[&[1.0, 15.0]]);
        let (p, a) = normalize(&pop, &archive);
        assert_eq!(a.points[0], vec![0.0, 0.0]);
        assert_eq!(a.points[1], vec![1.0, 1.0]);
        assert_eq!(p.points[0], vec![0.5, 0.5]);
    }

    #[test]
    fn normalize_degenerate_axis() {
        let archive = sols(&[&[3.0, 5.0], &[3.0, 9.0]]);
        let (_, a) = normalize(&[], &archive);
        assert_eq!(a.points[0], vec![0.0, 0.0]);
        assert_eq!(a.points[1], vec![0.0, 1.0]);
    }

    fn obj_vec(m: usize) -> impl Strategy<Value = Vec<f64>> {
        proptest::collection::vec(0.0..10.0f64, m)
    }

    proptest! {
        #[test]
        fn dominance_antisymmetric(a in obj_vec(3), b in obj_vec(3)) {
            if dominates(&a, &b) {
                prop_assert!(!dominates(&b, &a));
            }
        }

        #[test]
        fn dominance_transitive(a in obj_vec(3), b in obj_vec(3), c in obj_vec(3)) {
            if dominates(&a, &b) && dominates(&b, &c) {
                prop_assert!(dominates(&a, &c));
            }
        }

        #[test]
        fn filter_idempotent_and_pairwise_nondominated(
            objs in proptest::collection::vec(obj_vec(2), 1..50),
        ) {
            let set: Vec<Solution> = objs.iter()
                .map(|o| Solution::new(vec![], o.clone(), 0))
                .collect();
            let once = nondominated_filter(&set);
            for (i, a) in once.iter().enumerate() {
                for (j, b) in once.iter().enumerate() {
                    if i != j {
                        prop_assert!(!dominates(a.objectives(), b.objectives()));
                    }
                }
            }
            let twice = nondominated_filter(&once);
            prop_assert_eq!(once, twice);
        }

        #[test]
        fn normalize_maps_extremes(objs in proptest::collection::vec(obj_vec(3), 2..20)) {
            let archive: Vec<Solution> = objs.iter()
                .map(|o| Solution::new(vec![], o.clone(), 0))
                .collect();
            let (_, a) = normalize(&[], &archive);
            for axis in 0..3 {
                let range = a.bounds.upper[axis] - a.bounds.lower[axis];
                if range >= DEGENERATE_AXIS_TOL {
                    let vals: Vec<f64> = a.points.iter().map(|p| p[axis]).collect();
                    let min = vals.iter().cloned().fold(f64::INFINITY, f64::min);
                    let max = vals.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
                    prop_assert!((min - 0.0).abs() < 1e-12);
                    prop_assert!((max - 1.0).abs() < 1e-12);
                }
            }
        }
    }
}
