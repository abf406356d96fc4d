//! End-to-end run driver: the generation loop with the trigger mechanism
//! wired in after environmental selection.

use alloc::vec::Vec;

use crate::atm::{atm_step, Archive, StagnationTracker, TriggerReport};
use crate::engine::{Algorithm, EngineState, RunConfig};
use crate::error::Result;
use crate::solution::Solution;

/// Everything a finished run exposes for scoring and analysis.
#[derive(Debug, Clone)]
pub struct RunOutput {
    pub final_population: Vec<Solution>,
    /// Empty for the fixed-weight baseline, which maintains no archive.
    pub final_archive: Vec<Solution>,
    pub trigger_reports: Vec<TriggerReport>,
    pub eval_count: u64,
    pub generations: u64,
    pub initial_weights: Vec<Vec<f64>>,
    pub final_weights: Vec<Vec<f64>>,
}

pub fn execute(config: &RunConfig) -> Result<RunOutput> {
    execute_with(config, |_, _, _| {})
}

/// Runs to budget exhaustion, invoking `observer` after every completed
/// generation (with the trigger report when the trigger mechanism ran). The
/// final pass may be cut short by the budget; it still applies environmental
/// selection but skips the trigger step.
pub fn execute_with<F>(config: &RunConfig, mut observer: F) -> Result<RunOutput>
where
    F: FnMut(&EngineState, &Archive, Option<&TriggerReport>),
{
    let mut state = EngineState::initialize(config)?;
    let initial_weights = state.weights().vectors().to_vec();
    let mut archive = Archive::new(config.archive_capacity);
    let mut tracker = StagnationTracker::new(config.fre);
    let mut reports = Vec::new();

    while state.eval_count() < config.budget {
        let outcome = state.run_generation()?;
        if !outcome.completed {
            break;
        }
        let report = match config.algorithm {
            Algorithm::AtmMoead => {
                let report = atm_step(&mut state, &mut archive, &mut tracker, &outcome.offspring);
                reports.push(report.clone());
                Some(report)
            }
            Algorithm::MoeadFixed => None,
        };
        observer(&state, &archive, report.as_ref());
    }

    Ok(RunOutput {
        final_population: state.incumbents().to_vec(),
        final_archive: archive.members().to_vec(),
        trigger_reports: reports,
        eval_count: state.eval_count(),
        generations: state.generation(),
        initial_weights,
        final_weights: state.weights().vectors().to_vec(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::RunParams;
    use crate::problems::ProblemSpec;

    fn small_config(algorithm: Algorithm, seed: u64) -> RunConfig {
        let problem = ProblemSpec::by_name("SCH1", 2).unwrap();
        RunConfig::build(
            problem,
            algorithm,
            seed,
            &RunParams::default(),
            Some(20),
            Some(2_000),
        )
        .unwrap()
    }

    #[test]
    fn budget_accounting_is_exact() {
        let out = execute(&small_config(Algorithm::AtmMoead, 1)).unwrap();
        assert_eq!(out.eval_count, 2_000);
        assert_eq!(out.final_population.len(), 20);
    }

    #[test]
    fn budget_not_multiple_of_population() {
        let problem = ProblemSpec::by_name("SCH1", 2).unwrap();
        let config = RunConfig::build(
            problem,
            Algorithm::AtmMoead,
            3,
            &RunParams::default(),
            Some(20),
            Some(2_013),
        )
        .unwrap();
        let out = execute(&config).unwrap();
        assert_eq!(out.eval_count, 2_013);
    }

    #[test]
    fn baseline_never_touches_weights_or_archive() {
        let out = execute(&small_config(Algorithm::MoeadFixed, 5)).unwrap();
        assert_eq!(out.initial_weights, out.final_weights);
        assert!(out.trigger_reports.is_empty());
        assert!(out.final_archive.is_empty());
    }

    #[test]
    fn identical_seeds_identical_outputs() {
        let a = execute(&small_config(Algorithm::AtmMoead, 9)).unwrap();
        let b = execute(&small_config(Algorithm::AtmMoead, 9)).unwrap();
        assert_eq!(a.final_population, b.final_population);
        assert_eq!(a.final_archive, b.final_archive);
        assert_eq!(a.trigger_reports, b.trigger_reports);
        assert_eq!(a.final_weights, b.final_weights);
    }

    #[test]
    fn ideal_point_bounds_everything_it_saw() {
        let config = small_config(Algorithm::AtmMoead, 13);
        let mut final_ideal = vec![];
        let out = execute_with(&config, |state, _, _| {
            final_ideal = state.ideal().to_vec();
        })
        .unwrap();
        for sol in out.final_population.iter().chain(out.final_archive.iter()) {
            for (z, f) in final_ideal.iter().zip(sol.objectives()) {
                assert!(z <= f);
            }
        }
    }

    #[test]
    fn adapted_implies_stagnant_and_inconsistent() {
        let out = execute(&small_config(Algorithm::AtmMoead, 11)).unwrap();
        for report in &out.trigger_reports {
            if report.adapted {
                assert!(report.stagnant);
                assert!(report.consistency_checked);
                assert!(!report.consistent);
            }
            if !report.stagnant {
                assert!(!report.consistency_checked);
            }
        }
    }
}
