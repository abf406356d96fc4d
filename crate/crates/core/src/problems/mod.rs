//! Benchmark problem definitions and analytic Pareto-front samplers.
//!
//! Formulas follow the original test-suite publications (DTLZ and its
//! inverted/convex/scaled variants, ZDT, the Schaffer/Fonseca/Viennet
//! classics, MaF, IMOP); variable counts and bounds use each suite's
//! conventions.

mod classic;
mod dtlz;
mod imop;
mod maf;
mod zdt;

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::Float;

use crate::error::{Error, Result};
use crate::pareto::stride_subsample;
use crate::weights::simplex_lattice;

/// Broad Pareto-front geometry, used to pick sampling strategies and to
/// decide which problems need front-based normalisation of IGD inputs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrontKind {
    Regular,
    Inverted,
    Nonlinear,
    Disconnected,
    Degenerate,
    Scaled,
    Mixed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProblemId {
    Dtlz1,
    Dtlz2,
    Dtlz4,
    Dtlz5,
    Dtlz7,
    IDtlz1,
    IDtlz2,
    CDtlz2,
    SDtlz1,
    SDtlz2,
    Zdt2,
    Zdt3,
    Zdt6,
    Sch1,
    Sch2,
    Fon1,
    Vnt2,
    MaF1,
    MaF2,
    MaF3,
    MaF4,
    MaF5,
    MaF6,
    MaF7,
    Imop1,
    Imop2,
    Imop3,
    Imop4,
    Imop5,
    Imop6,
}

/// A fully specified problem instance: identity, objective and variable
/// counts, and the decision box.
#[derive(Debug, Clone, PartialEq)]
pub struct ProblemSpec {
    id: ProblemId,
    m: usize,
    d: usize,
    bounds: Vec<(f64, f64)>,
}

/// Points sampled from a problem's analytic Pareto front.
#[derive(Debug, Clone)]
pub struct ReferenceFront {
    pub points: Vec<Vec<f64>>,
    pub normalized: bool,
}

impl ProblemSpec {
    /// Looks an instance up by suite name (case-insensitive) and objective
    /// count, using the original suites' variable-count conventions.
    pub fn by_name(name: &str, m: usize) -> Result<Self> {
        let id = parse_name(name)
            .ok_or_else(|| Error::Config(format!("unknown problem instance name '{name}'")))?;
        Self::new(id, m)
    }

    pub fn new(id: ProblemId, m: usize) -> Result<Self> {
        let allowed = allowed_objectives(id);
        if !allowed.contains(&m) {
            return Err(Error::Config(format!(
                "objective count {m} is not supported for {} (allowed: {allowed:?})",
                canonical_name(id)
            )));
        }
        let d = default_variables(id, m);
        Ok(Self {
            id,
            m,
            d,
            bounds: variable_bounds(id, d),
        })
    }

    /// Overrides the variable count where the suite permits it.
    pub fn with_variables(mut self, d: usize) -> Result<Self> {
        let min = match self.id {
            ProblemId::Sch1 | ProblemId::Sch2 => 1,
            ProblemId::Vnt2 => 2,
            ProblemId::Fon1 => 2,
            ProblemId::Zdt2 | ProblemId::Zdt3 | ProblemId::Zdt6 => 2,
            ProblemId::Imop1
            | ProblemId::Imop2
            | ProblemId::Imop3
            | ProblemId::Imop4
            | ProblemId::Imop5
            | ProblemId::Imop6 => imop::K + 1,
            // DTLZ-family distance block needs at least one variable.
            _ => self.m,
        };
        if matches!(self.id, ProblemId::Sch1 | ProblemId::Sch2) && d != 1 {
            return Err(Error::Config(String::from(
                "variables: SCH instances are one-dimensional",
            )));
        }
        if matches!(self.id, ProblemId::Vnt2) && d != 2 {
            return Err(Error::Config(String::from(
                "variables: VNT2 is two-dimensional",
            )));
        }
        if d < min {
            return Err(Error::Config(format!(
                "variables: {} needs at least {min} variables, got {d}",
                canonical_name(self.id)
            )));
        }
        self.d = d;
        self.bounds = variable_bounds(self.id, d);
        Ok(self)
    }

    pub fn id(&self) -> ProblemId {
        self.id
    }

    pub fn name(&self) -> &'static str {
        canonical_name(self.id)
    }

    pub fn objectives(&self) -> usize {
        self.m
    }

    pub fn variables(&self) -> usize {
        self.d
    }

    pub fn bounds(&self) -> &[(f64, f64)] {
        &self.bounds
    }

    pub fn front_kind(&self) -> FrontKind {
        front_kind(self.id)
    }

    /// True for instances whose Pareto front is scaled per objective, where
    /// IGD inputs must first be normalised by the analytic front extremes.
    pub fn requires_front_normalization(&self) -> bool {
        matches!(
            self.id,
            ProblemId::SDtlz1
                | ProblemId::SDtlz2
                | ProblemId::MaF4
                | ProblemId::MaF5
                | ProblemId::Sch2
                | ProblemId::Vnt2
        )
    }

    /// Deterministic objective evaluation per the instance's definition.
    pub fn evaluate(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.d {
            return Err(Error::Usage(format!(
                "decision vector length {} does not match variable count {}",
                x.len(),
                self.d
            )));
        }
        for (i, (v, (lo, hi))) in x.iter().zip(self.bounds.iter()).enumerate() {
            if !(v >= lo && v <= hi) {
                return Err(Error::Usage(format!(
                    "variable {i} = {v} outside bounds [{lo}, {hi}]"
                )));
            }
        }
        Ok(self.evaluate_unchecked(x))
    }

    pub(crate) fn evaluate_unchecked(&self, x: &[f64]) -> Vec<f64> {
        let m = self.m;
        match self.id {
            ProblemId::Dtlz1 => dtlz::dtlz1(m, x),
            ProblemId::Dtlz2 => dtlz::dtlz2(m, x),
            ProblemId::Dtlz4 => dtlz::dtlz4(m, x),
            ProblemId::Dtlz5 => dtlz::dtlz5(m, x),
            ProblemId::Dtlz7 => dtlz::dtlz7(m, x),
            ProblemId::IDtlz1 => dtlz::idtlz1(m, x),
            ProblemId::IDtlz2 => dtlz::idtlz2(m, x),
            ProblemId::CDtlz2 => dtlz::cdtlz2(m, x),
            ProblemId::SDtlz1 => dtlz::sdtlz1(m, x),
            ProblemId::SDtlz2 => dtlz::sdtlz2(m, x),
            ProblemId::Zdt2 => zdt::zdt2(x),
            ProblemId::Zdt3 => zdt::zdt3(x),
            ProblemId::Zdt6 => zdt::zdt6(x),
            ProblemId::Sch1 => classic::sch1(x),
            ProblemId::Sch2 => classic::sch2(x),
            ProblemId::Fon1 => classic::fon1(x),
            ProblemId::Vnt2 => classic::vnt2(x),
            ProblemId::MaF1 => maf::maf1(m, x),
            ProblemId::MaF2 => maf::maf2(m, x),
            ProblemId::MaF3 => maf::maf3(m, x),
            ProblemId::MaF4 => maf::maf4(m, x),
            ProblemId::MaF5 => maf::maf5(m, x),
            ProblemId::MaF6 => maf::maf6(m, x),
            ProblemId::MaF7 => maf::maf7(m, x),
            ProblemId::Imop1 => imop::imop1(x),
            ProblemId::Imop2 => imop::imop2(x),
            ProblemId::Imop3 => imop::imop3(x),
            ProblemId::Imop4 => imop::imop4(x),
            ProblemId::Imop5 => imop::imop5(x),
            ProblemId::Imop6 => imop::imop6(x),
        }
    }

    /// Samples `n` approximately uniform points from the analytic Pareto
    /// front: simplex lattices projected onto the front surface for the
    /// DTLZ-family, parameter sweeps for biobjective curves, and per-segment
    /// sampling for disconnected fronts.
    pub fn pareto_front_sample(&self, n: usize) -> Result<ReferenceFront> {
        if n < self.m {
            return Err(Error::Usage(format!(
                "front sample size {n} is below the objective count {}",
                self.m
            )));
        }
        let m = self.m;
        let points = match self.id {
            ProblemId::Dtlz1 => dtlz::dtlz1_front(m, n),
            ProblemId::Dtlz2 | ProblemId::Dtlz4 => dtlz::dtlz2_front(m, n),
            ProblemId::Dtlz5 => dtlz::dtlz5_front(m, n),
            ProblemId::Dtlz7 => dtlz::dtlz7_front(m, n),
            ProblemId::IDtlz1 => dtlz::idtlz1_front(m, n),
            ProblemId::IDtlz2 => dtlz::idtlz2_front(m, n),
            ProblemId::CDtlz2 => dtlz::cdtlz2_front(m, n),
            ProblemId::SDtlz1 => dtlz::sdtlz1_front(m, n),
            ProblemId::SDtlz2 => dtlz::sdtlz2_front(m, n),
            ProblemId::Zdt2 => zdt::zdt2_front(n),
            ProblemId::Zdt3 => zdt::zdt3_front(n),
            ProblemId::Zdt6 => zdt::zdt6_front(n),
            ProblemId::Sch1 => classic::sch1_front(n),
            ProblemId::Sch2 => classic::sch2_front(n),
            ProblemId::Fon1 => classic::fon1_front(n),
            ProblemId::Vnt2 => classic::vnt2_front(n),
            ProblemId::MaF1 => maf::maf1_front(m, n),
            ProblemId::MaF2 => maf::maf2_front(m, n),
            ProblemId::MaF3 => maf::maf3_front(m, n),
            ProblemId::MaF4 => maf::maf4_front(m, n),
            ProblemId::MaF5 => maf::maf5_front(m, n),
            ProblemId::MaF6 => maf::maf6_front(m, n),
            ProblemId::MaF7 => maf::maf7_front(m, n),
            ProblemId::Imop1 => imop::imop1_front(n),
            ProblemId::Imop2 => imop::imop2_front(n),
            ProblemId::Imop3 => imop::imop3_front(n),
            ProblemId::Imop4 => imop::imop4_front(n),
            ProblemId::Imop5 => imop::imop5_front(n),
            ProblemId::Imop6 => imop::imop6_front(n),
        };
        Ok(ReferenceFront {
            points,
            normalized: false,
        })
    }

    /// Front sample mapped onto unit scale by the analytic front extremes;
    /// the identity map for instances that are not scaled.
    pub fn pareto_front_sample_normalized(&self, n: usize) -> Result<ReferenceFront> {
        let raw = self.pareto_front_sample(n)?;
        let Some((lower, upper)) = self.front_bounds() else {
            return Ok(ReferenceFront {
                points: raw.points,
                normalized: true,
            });
        };
        let bounds = crate::pareto::ObjectiveBounds::new(lower, upper);
        Ok(ReferenceFront {
            points: raw.points.iter().map(|p| bounds.apply(p)).collect(),
            normalized: true,
        })
    }

    /// Analytic per-objective extremes of the Pareto front, for the instances
    /// requiring front-based normalisation. VNT2 has no closed form; its
    /// extremes come from a dense deterministic front sample.
    pub fn front_bounds(&self) -> Option<(Vec<f64>, Vec<f64>)> {
        let m = self.m;
        match self.id {
            ProblemId::SDtlz1 => {
                let scale = dtlz::sdtlz_scale(m);
                Some((alloc::vec![0.0; m], scale.iter().map(|s| 0.5 * s).collect()))
            }
            ProblemId::SDtlz2 => Some((alloc::vec![0.0; m], dtlz::sdtlz_scale(m))),
            ProblemId::MaF4 => Some((
                alloc::vec![0.0; m],
                (0..m).map(|k| 2f64.powi(k as i32 + 1)).collect(),
            )),
            ProblemId::MaF5 => Some((
                alloc::vec![0.0; m],
                (0..m).map(|k| 2f64.powi((m - k) as i32)).collect(),
            )),
            ProblemId::Sch2 => Some((alloc::vec![-1.0, 0.0], alloc::vec![1.0, 16.0])),
            ProblemId::Vnt2 => {
                let front = classic::vnt2_front(2000);
                let mut lower = front[0].clone();
                let mut upper = front[0].clone();
                for p in &front {
                    for (i, v) in p.iter().enumerate() {
                        lower[i] = lower[i].min(*v);
                        upper[i] = upper[i].max(*v);
                    }
                }
                Some((lower, upper))
            }
            _ => None,
        }
    }
}

fn parse_name(name: &str) -> Option<ProblemId> {
    let upper: String = name
        .trim()
        .chars()
        .map(|c| c.to_ascii_uppercase())
        .collect();
    Some(match upper.as_str() {
        "DTLZ1" => ProblemId::Dtlz1,
        "DTLZ2" => ProblemId::Dtlz2,
        "DTLZ4" => ProblemId::Dtlz4,
        "DTLZ5" => ProblemId::Dtlz5,
        "DTLZ7" => ProblemId::Dtlz7,
        "IDTLZ1" => ProblemId::IDtlz1,
        "IDTLZ2" => ProblemId::IDtlz2,
        "CDTLZ2" => ProblemId::CDtlz2,
        "SDTLZ1" => ProblemId::SDtlz1,
        "SDTLZ2" => ProblemId::SDtlz2,
        "ZDT2" => ProblemId::Zdt2,
        "ZDT3" => ProblemId::Zdt3,
        "ZDT6" => ProblemId::Zdt6,
        "SCH1" => ProblemId::Sch1,
        "SCH2" => ProblemId::Sch2,
        "FON1" => ProblemId::Fon1,
        "VNT2" => ProblemId::Vnt2,
        "MAF1" => ProblemId::MaF1,
        "MAF2" => ProblemId::MaF2,
        "MAF3" => ProblemId::MaF3,
        "MAF4" => ProblemId::MaF4,
        "MAF5" => ProblemId::MaF5,
        "MAF6" => ProblemId::MaF6,
        "MAF7" => ProblemId::MaF7,
        "IMOP1" => ProblemId::Imop1,
        "IMOP2" => ProblemId::Imop2,
        "IMOP3" => ProblemId::Imop3,
        "IMOP4" => ProblemId::Imop4,
        "IMOP5" => ProblemId::Imop5,
        "IMOP6" => ProblemId::Imop6,
        _ => return None,
    })
}

pub(crate) fn canonical_name(id: ProblemId) -> &'static str {
    match id {
        ProblemId::Dtlz1 => "DTLZ1",
        ProblemId::Dtlz2 => "DTLZ2",
        ProblemId::Dtlz4 => "DTLZ4",
        ProblemId::Dtlz5 => "DTLZ5",
        ProblemId::Dtlz7 => "DTLZ7",
        ProblemId::IDtlz1 => "IDTLZ1",
        ProblemId::IDtlz2 => "IDTLZ2",
        ProblemId::CDtlz2 => "CDTLZ2",
        ProblemId::SDtlz1 => "SDTLZ1",
        ProblemId::SDtlz2 => "SDTLZ2",
        ProblemId::Zdt2 => "ZDT2",
        ProblemId::Zdt3 => "ZDT3",
        ProblemId::Zdt6 => "ZDT6",
        ProblemId::Sch1 => "SCH1",
        ProblemId::Sch2 => "SCH2",
        ProblemId::Fon1 => "FON1",
        ProblemId::Vnt2 => "VNT2",
        ProblemId::MaF1 => "MaF1",
        ProblemId::MaF2 => "MaF2",
        ProblemId::MaF3 => "MaF3",
        ProblemId::MaF4 => "MaF4",
        ProblemId::MaF5 => "MaF5",
        ProblemId::MaF6 => "MaF6",
        ProblemId::MaF7 => "MaF7",
        ProblemId::Imop1 => "IMOP1",
        ProblemId::Imop2 => "IMOP2",
        ProblemId::Imop3 => "IMOP3",
        ProblemId::Imop4 => "IMOP4",
        ProblemId::Imop5 => "IMOP5",
        ProblemId::Imop6 => "IMOP6",
    }
}

fn allowed_objectives(id: ProblemId) -> &'static [usize] {
    match id {
        ProblemId::Dtlz1
        | ProblemId::Dtlz2
        | ProblemId::Dtlz4
        | ProblemId::IDtlz1
        | ProblemId::IDtlz2
        | ProblemId::CDtlz2
        | ProblemId::SDtlz1
        | ProblemId::SDtlz2 => &[2, 3, 4, 5, 6, 7, 8, 9, 10],
        ProblemId::Dtlz5 | ProblemId::Dtlz7 => &[2, 3],
        ProblemId::Zdt2
        | ProblemId::Zdt3
        | ProblemId::Zdt6
        | ProblemId::Sch1
        | ProblemId::Sch2
        | ProblemId::Fon1
        | ProblemId::Imop1
        | ProblemId::Imop2
        | ProblemId::Imop3 => &[2],
        ProblemId::Vnt2
        | ProblemId::MaF1
        | ProblemId::MaF2
        | ProblemId::MaF3
        | ProblemId::MaF4
        | ProblemId::MaF5
        | ProblemId::MaF6
        | ProblemId::MaF7
        | ProblemId::Imop4
        | ProblemId::Imop5
        | ProblemId::Imop6 => &[3],
    }
}

fn default_variables(id: ProblemId, m: usize) -> usize {
    match id {
        ProblemId::Dtlz1 | ProblemId::IDtlz1 | ProblemId::SDtlz1 => m + 4,
        ProblemId::Dtlz2
        | ProblemId::Dtlz4
        | ProblemId::Dtlz5
        | ProblemId::IDtlz2
        | ProblemId::CDtlz2
        | ProblemId::SDtlz2 => m + 9,
        ProblemId::Dtlz7 => m + 19,
        ProblemId::Zdt2 | ProblemId::Zdt3 => 30,
        ProblemId::Zdt6 => 10,
        ProblemId::Sch1 | ProblemId::Sch2 => 1,
        ProblemId::Fon1 => 3,
        ProblemId::Vnt2 => 2,
        ProblemId::MaF1
        | ProblemId::MaF2
        | ProblemId::MaF3
        | ProblemId::MaF4
        | ProblemId::MaF5
        | ProblemId::MaF6 => m + 9,
        ProblemId::MaF7 => m + 19,
        ProblemId::Imop1
        | ProblemId::Imop2
        | ProblemId::Imop3
        | ProblemId::Imop4
        | ProblemId::Imop5
        | ProblemId::Imop6 => 10,
    }
}

fn variable_bounds(id: ProblemId, d: usize) -> Vec<(f64, f64)> {
    let single = match id {
        ProblemId::Sch1 => (-10.0, 10.0),
        ProblemId::Sch2 => (-5.0, 10.0),
        ProblemId::Fon1 => (-4.0, 4.0),
        ProblemId::Vnt2 => (-4.0, 4.0),
        _ => (0.0, 1.0),
    };
    alloc::vec![single; d]
}

fn front_kind(id: ProblemId) -> FrontKind {
    match id {
        ProblemId::Dtlz1
        | ProblemId::Dtlz2
        | ProblemId::Dtlz4
        | ProblemId::Zdt2
        | ProblemId::Zdt6 => FrontKind::Regular,
        ProblemId::IDtlz1 | ProblemId::IDtlz2 | ProblemId::MaF1 => FrontKind::Inverted,
        ProblemId::CDtlz2
        | ProblemId::Sch1
        | ProblemId::Fon1
        | ProblemId::MaF2
        | ProblemId::MaF3
        | ProblemId::Imop1
        | ProblemId::Imop2 => FrontKind::Nonlinear,
        ProblemId::Zdt3
        | ProblemId::Dtlz7
        | ProblemId::MaF7
        | ProblemId::Imop3
        | ProblemId::Imop5 => FrontKind::Disconnected,
        ProblemId::Dtlz5 | ProblemId::MaF6 | ProblemId::Imop4 => FrontKind::Degenerate,
        ProblemId::SDtlz1 | ProblemId::SDtlz2 | ProblemId::MaF5 => FrontKind::Scaled,
        ProblemId::Sch2 | ProblemId::Vnt2 | ProblemId::MaF4 | ProblemId::Imop6 => FrontKind::Mixed,
    }
}

/// Simplex lattice directions for front construction: the smallest lattice
/// with at least `n` points, strided down to exactly `n`.
pub(crate) fn front_directions(m: usize, n: usize) -> Vec<Vec<f64>> {
    let mut h = 1;
    while simplex_lattice_count(m, h) < n {
        h += 1;
    }
    stride_subsample(simplex_lattice(m, h), n)
}

fn simplex_lattice_count(m: usize, h: usize) -> usize {
    let mut result: usize = 1;
    let k = m - 1;
    for i in 0..k {
        result = result * (h + k - i) / (i + 1);
    }
    result
}

/// Evenly spaced values over [lo, hi], inclusive of both ends.
pub(crate) fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return alloc::vec![0.5 * (lo + hi)];
    }
    (0..n)
        .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
        .collect()
}

/// Splits `n` samples over segments proportionally to their measures
/// (largest-remainder rounding, every segment gets at least one).
pub(crate) fn proportional_allocation(measures: &[f64], n: usize) -> Vec<usize> {
    let total: f64 = measures.iter().sum();
    let mut counts: Vec<usize> = Vec::with_capacity(measures.len());
    let mut remainders: Vec<(usize, f64)> = Vec::with_capacity(measures.len());
    let mut assigned = 0usize;
    for (i, measure) in measures.iter().enumerate() {
        let exact = n as f64 * measure / total;
        let floor = num_traits::Float::floor(exact) as usize;
        let floor = floor.max(1);
        counts.push(floor);
        assigned += floor;
        remainders.push((i, exact - floor as f64));
    }
    remainders.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap_or(core::cmp::Ordering::Equal));
    let mut idx = 0;
    while assigned < n {
        counts[remainders[idx % remainders.len()].0] += 1;
        assigned += 1;
        idx += 1;
    }
    while assigned > n {
        // Over-assignment can only come from the at-least-one floor.
        if let Some(pos) = counts.iter().position(|c| *c > 1) {
            counts[pos] -= 1;
            assigned -= 1;
        } else {
            break;
        }
    }
    counts
}
