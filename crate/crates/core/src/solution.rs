use alloc::vec::Vec;

/// An evaluated individual: a decision vector, its objective vector and the
/// value of the function-evaluation counter at the time it was evaluated.
///
/// Solutions are immutable once built; the engine replaces whole solutions
/// rather than mutating them in place.
#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    decision: Vec<f64>,
    objectives: Vec<f64>,
    eval_stamp: u64,
}

impl Solution {
    pub fn new(decision: Vec<f64>, objectives: Vec<f64>, eval_stamp: u64) -> Self {
        debug_assert!(objectives.iter().all(|v| v.is_finite()));
        Self {
            decision,
            objectives,
            eval_stamp,
        }
    }

    pub fn decision(&self) -> &[f64] {
        &self.decision
    }

    pub fn objectives(&self) -> &[f64] {
        &self.objectives
    }

    pub fn eval_stamp(&self) -> u64 {
        self.eval_stamp
    }

    /// Exact (bitwise) equality of objective vectors. The engine either copies
    /// a solution into a slot or it does not, so identity is exact.
    pub fn same_objectives(&self, other: &Solution) -> bool {
        objective_bits_equal(&self.objectives, &other.objectives)
    }
}

pub(crate) fn objective_bits_equal(a: &[f64], b: &[f64]) -> bool {
    a.len() == b.len()
        && a.iter()
            .zip(b.iter())
            .all(|(x, y)| x.to_bits() == y.to_bits())
}

pub(crate) fn objective_bits(values: &[f64]) -> Vec<u64> {
    values.iter().map(|v| v.to_bits()).collect()
}
