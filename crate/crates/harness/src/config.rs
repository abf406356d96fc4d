//! Run and batch configuration: TOML files with explicit keys mirroring the
//! run parameters; command-line flags override file values.

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};
use std::path::Path;

use atm_moead_core::engine::{Algorithm, RunConfig, RunParams};
use atm_moead_core::problems::ProblemSpec;

fn default_fre_fraction() -> f64 {
    0.05
}

fn default_archive_multiplier() -> f64 {
    2.0
}

fn default_t_fraction() -> f64 {
    0.10
}

/// One run cell: everything needed to resolve a concrete configuration.
/// Optional fields fall back to the per-objective-count defaults.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct RunSpec {
    pub problem: String,
    pub objectives: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variables: Option<usize>,
    pub algorithm: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub population: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<u64>,
    #[serde(default = "default_fre_fraction")]
    pub fre_fraction: f64,
    #[serde(default = "default_archive_multiplier")]
    pub archive_multiplier: f64,
    #[serde(default = "default_t_fraction")]
    pub t_fraction: f64,
    #[serde(default)]
    pub seed: u64,
}

impl RunSpec {
    pub fn new(problem: &str, objectives: usize, algorithm: &str) -> Self {
        Self {
            problem: problem.to_string(),
            objectives,
            variables: None,
            algorithm: algorithm.to_string(),
            population: None,
            budget: None,
            fre_fraction: default_fre_fraction(),
            archive_multiplier: default_archive_multiplier(),
            t_fraction: default_t_fraction(),
            seed: 0,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn parse_algorithm(&self) -> Result<Algorithm> {
        match self.algorithm.as_str() {
            "atm-moead" => Ok(Algorithm::AtmMoead),
            "moead-fixed" => Ok(Algorithm::MoeadFixed),
            other => bail!("algorithm: '{other}' is not one of atm-moead, moead-fixed"),
        }
    }

    /// Resolves into a concrete run configuration, naming the offending field
    /// on error.
    pub fn to_config(&self) -> Result<RunConfig> {
        let mut problem = ProblemSpec::by_name(&self.problem, self.objectives)
            .with_context(|| format!("problem/objectives: {}-{}", self.problem, self.objectives))?;
        if let Some(d) = self.variables {
            problem = problem.with_variables(d).context("variables")?;
        }
        let algorithm = self.parse_algorithm()?;
        let params = RunParams {
            fre_fraction: self.fre_fraction,
            archive_multiplier: self.archive_multiplier,
            t_fraction: self.t_fraction,
        };
        RunConfig::build(
            problem,
            algorithm,
            self.seed,
            &params,
            self.population,
            self.budget,
        )
        .map_err(anyhow::Error::new)
    }

    /// Short cell label used in file names and summaries, e.g. `DTLZ2-3_atm-moead`.
    pub fn cell_label(&self) -> String {
        format!("{}-{}_{}", self.problem, self.objectives, self.algorithm)
    }
}

/// A batch: a list of run cells sharing a base seed. Replicate `r` of every
/// cell runs with seed `base_seed + r`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BatchSpec {
    #[serde(default)]
    pub base_seed: u64,
    #[serde(rename = "run")]
    pub runs: Vec<RunSpec>,
}

pub fn load_batch_file(path: &Path) -> Result<BatchSpec> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading batch config {}", path.display()))?;
    let spec: BatchSpec =
        toml::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    if spec.runs.is_empty() {
        bail!("batch config {} contains no [[run]] tables", path.display());
    }
    Ok(spec)
}

pub fn load_run_file(path: &Path) -> Result<RunSpec> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading run config {}", path.display()))?;
    toml::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

/// Desk-scale preset: every 2- and 3-objective instance of the benchmark set
/// under both algorithms, full per-problem budgets.
pub fn desk_preset() -> BatchSpec {
    let instances: &[(&str, usize)] = &[
        ("DTLZ1", 2),
        ("DTLZ2", 2),
        ("DTLZ4", 2),
        ("DTLZ1", 3),
        ("DTLZ2", 3),
        ("DTLZ4", 3),
        ("ZDT2", 2),
        ("ZDT6", 2),
        ("DTLZ5", 3),
        ("DTLZ7", 3),
        ("CDTLZ2", 3),
        ("IDTLZ1", 3),
        ("IDTLZ2", 3),
        ("ZDT3", 2),
        ("FON1", 2),
        ("SCH1", 2),
        ("SCH2", 2),
        ("SDTLZ1", 3),
        ("SDTLZ2", 3),
        ("VNT2", 3),
        ("MaF1", 3),
        ("MaF2", 3),
        ("MaF3", 3),
        ("MaF4", 3),
        ("MaF5", 3),
        ("MaF6", 3),
        ("MaF7", 3),
        ("IMOP1", 2),
        ("IMOP2", 2),
        ("IMOP3", 2),
        ("IMOP4", 3),
        ("IMOP5", 3),
        ("IMOP6", 3),
    ];
    let mut runs = Vec::new();
    for (problem, m) in instances {
        for algorithm in ["atm-moead", "moead-fixed"] {
            runs.push(RunSpec::new(problem, *m, algorithm));
        }
    }
    BatchSpec { base_seed: 0, runs }
}

/// Replication count of the desk preset.
pub const DESK_REPLICATIONS: usize = 11;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn resolves_defaults() {
        let spec = RunSpec::new("DTLZ2", 3, "atm-moead");
        let config = spec.to_config().unwrap();
        assert_eq!(config.population, 105);
        assert_eq!(config.budget, 100_000);
        assert_eq!(config.fre, 48);
    }

    #[test]
    fn errors_name_the_field() {
        let bad_problem = RunSpec::new("NOPE", 3, "atm-moead").to_config();
        assert!(format!("{:?}", bad_problem.unwrap_err()).contains("problem"));

        let bad_alg = RunSpec::new("DTLZ2", 3, "nsga2").to_config();
        assert!(format!("{:?}", bad_alg.unwrap_err()).contains("algorithm"));

        let bad_m = RunSpec::new("ZDT2", 3, "atm-moead").to_config();
        assert!(format!("{:?}", bad_m.unwrap_err()).contains("objectives"));

        let mut bad_pop = RunSpec::new("DTLZ2", 4, "atm-moead");
        assert!(format!("{:?}", bad_pop.to_config().unwrap_err()).contains("population"));
        bad_pop.population = Some(120);
        bad_pop.budget = Some(10_000);
        assert!(bad_pop.to_config().is_ok());
    }

    #[test]
    fn toml_round_trip() {
        let text = r#"
            base_seed = 7
            [[run]]
            problem = "DTLZ2"
            objectives = 3
            algorithm = "atm-moead"
            [[run]]
            problem = "SCH1"
            objectives = 2
            algorithm = "moead-fixed"
            budget = 10000
        "#;
        let spec: BatchSpec = toml::from_str(text).unwrap();
        assert_eq!(spec.base_seed, 7);
        assert_eq!(spec.runs.len(), 2);
        assert_eq!(spec.runs[1].budget, Some(10_000));
        assert_eq!(spec.runs[0].fre_fraction, 0.05);
    }

    #[test]
    fn desk_preset_is_m_le_3() {
        let preset = desk_preset();
        assert_eq!(preset.runs.len(), 66);
        assert!(preset.runs.iter().all(|r| r.objectives <= 3));
        for r in &preset.runs {
            r.to_config().unwrap();
        }
    }
}
