//! Executes one configured run and scores the final population with IGD and
//! hypervolume against the instance's reference front and reference point.

use std::time::Instant;

use anyhow::{Context, Result};
use serde::Serialize;

use atm_moead_core::atm::TriggerReport;
use atm_moead_core::engine::RunConfig;
use atm_moead_core::indicators::{hv_for_objective_count, hv_reference, igd_for_problem};
use atm_moead_core::problems::ProblemSpec;
use atm_moead_core::runner::execute;
use atm_moead_core::Solution;

use crate::config::RunSpec;

/// Reference-front size by objective count: dense enough for stable IGD,
/// cheap enough for desk-scale work.
pub fn reference_front_size(objectives: usize) -> usize {
    match objectives {
        m if m <= 3 => 10_000,
        m if m <= 5 => 5_000,
        _ => 1_000,
    }
}

/// The full effective configuration echoed into every result.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct ConfigEcho {
    pub problem: String,
    pub objectives: usize,
    pub variables: usize,
    pub algorithm: String,
    pub population: usize,
    pub budget: u64,
    pub neighborhood: usize,
    pub fre: usize,
    pub archive_capacity: usize,
    pub energy_exponent: f64,
    pub pc: f64,
    pub pm: f64,
    pub eta_c: f64,
    pub eta_m: f64,
    pub seed: u64,
}

impl ConfigEcho {
    pub fn from_config(config: &RunConfig) -> Self {
        Self {
            problem: config.problem.name().to_string(),
            objectives: config.problem.objectives(),
            variables: config.problem.variables(),
            algorithm: config.algorithm.name().to_string(),
            population: config.population,
            budget: config.budget,
            neighborhood: config.neighborhood,
            fre: config.fre,
            archive_capacity: config.archive_capacity,
            energy_exponent: config.energy_exponent,
            pc: config.variation.pc,
            pm: config.variation.pm,
            eta_c: config.variation.eta_c,
            eta_m: config.variation.eta_m,
            seed: config.seed,
        }
    }
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct TriggerEventRecord {
    pub generation: u64,
    pub stagnant: bool,
    pub stagnation_count: usize,
    pub consistency_checked: bool,
    pub consistent: bool,
    pub adapted: bool,
    pub niche_radius: Option<f64>,
    pub archive_size: usize,
}

impl From<&TriggerReport> for TriggerEventRecord {
    fn from(report: &TriggerReport) -> Self {
        Self {
            generation: report.generation,
            stagnant: report.stagnant,
            stagnation_count: report.stagnation_count,
            consistency_checked: report.consistency_checked,
            consistent: report.consistent,
            adapted: report.adapted,
            niche_radius: report.niche_radius,
            archive_size: report.archive_size,
        }
    }
}

/// One run's scored outcome. Everything except `wall_time_ms` is a pure
/// function of the configuration.
#[derive(Debug, Clone, Serialize)]
pub struct RunResult {
    pub config: ConfigEcho,
    pub igd: f64,
    pub hv: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hv_monte_carlo_samples: Option<u64>,
    pub eval_count: u64,
    pub generations: u64,
    pub adaptations: usize,
    pub trigger_events: Vec<TriggerEventRecord>,
    pub final_population: Vec<Vec<f64>>,
    pub final_archive: Vec<Vec<f64>>,
    pub final_weights: Vec<Vec<f64>>,
    pub wall_time_ms: u64,
}

fn objective_rows(solutions: &[Solution]) -> Vec<Vec<f64>> {
    solutions.iter().map(|s| s.objectives().to_vec()).collect()
}

/// Runs one cell. A pre-built reference front may be supplied (e.g. loaded
/// from CSV); otherwise one is sampled at the standard size.
pub fn run(spec: &RunSpec, reference: Option<&[Vec<f64>]>) -> Result<RunResult> {
    let config = spec.to_config()?;
    run_config(&config, reference)
}

pub fn run_config(config: &RunConfig, reference: Option<&[Vec<f64>]>) -> Result<RunResult> {
    let started = Instant::now();
    let output = execute(config).context("executing run")?;
    let wall_time_ms = started.elapsed().as_millis() as u64;

    let problem = &config.problem;
    let owned_reference;
    let reference = match reference {
        Some(points) => points,
        None => {
            owned_reference = sample_reference(problem)?;
            &owned_reference
        }
    };

    let population = objective_rows(&output.final_population);
    let igd = igd_for_problem(&population, reference, problem).map_err(anyhow::Error::new)?;
    let (hv, hv_samples) = hv_for_objective_count(&population, &hv_reference(problem));

    Ok(RunResult {
        config: ConfigEcho::from_config(config),
        igd,
        hv,
        hv_monte_carlo_samples: hv_samples,
        eval_count: output.eval_count,
        generations: output.generations,
        adaptations: output.trigger_reports.iter().filter(|r| r.adapted).count(),
        trigger_events: output.trigger_reports.iter().map(Into::into).collect(),
        final_population: population,
        final_archive: objective_rows(&output.final_archive),
        final_weights: output.final_weights,
        wall_time_ms,
    })
}

pub fn sample_reference(problem: &ProblemSpec) -> Result<Vec<Vec<f64>>> {
    let n = reference_front_size(problem.objectives());
    Ok(problem
        .pareto_front_sample(n)
        .map_err(anyhow::Error::new)?
        .points)
}
