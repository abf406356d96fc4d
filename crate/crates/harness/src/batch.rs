//! Batch execution: every (cell, seed) pair runs independently on a worker
//! pool, per-run artifacts land on disk, and the summary mirrors the paper's
//! mean(SD) layout with pairwise rank-sum tests against the fixed-weight
//! baseline.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use rayon::prelude::*;
use serde::Serialize;

use crate::artifacts::{write_events_csv, write_front_csv, write_run_json};
use crate::config::{BatchSpec, RunSpec};
use crate::runner::{run, sample_reference, RunResult};
use crate::stats::{format_mean_sd, mean_sd, rank_sum_test};

#[derive(Debug, Clone, Serialize)]
pub struct CellSummary {
    pub problem: String,
    pub objectives: usize,
    pub algorithm: String,
    pub replications: usize,
    pub igd_mean: f64,
    pub igd_sd: f64,
    pub hv_mean: f64,
    pub hv_sd: f64,
    /// Two-sided rank-sum p-value of this cell's IGD sample against the
    /// fixed-weight baseline on the same problem (absent for the baseline
    /// itself or when no baseline ran).
    pub igd_p_vs_baseline: Option<f64>,
    pub significant_at_0_05: Option<bool>,
}

#[derive(Debug, Serialize)]
pub struct BatchSummary {
    pub cells: Vec<CellSummary>,
    pub failures: Vec<String>,
}

/// Per-cell indicator samples, keyed and ordered deterministically.
pub struct BatchData {
    pub results: BTreeMap<String, Vec<RunResult>>,
    pub failures: Vec<String>,
}

pub fn run_batch(spec: &BatchSpec, replications: usize, out_dir: &Path) -> Result<BatchSummary> {
    let data = execute_batch(spec, replications, Some(out_dir))?;
    let summary = summarize(&data);
    write_summary_csv(&out_dir.join("summary.csv"), &summary.cells, true)?;
    let json = serde_json::to_string_pretty(&summary).context("serialising summary")?;
    fs::write(out_dir.join("summary.json"), json)?;
    Ok(summary)
}

/// Runs every (cell, replicate) pair; seeds are base_seed + replicate index.
/// Individual run failures are recorded and the batch continues.
pub fn execute_batch(
    spec: &BatchSpec,
    replications: usize,
    out_dir: Option<&Path>,
) -> Result<BatchData> {
    if let Some(dir) = out_dir {
        fs::create_dir_all(dir.join("runs"))?;
        fs::create_dir_all(dir.join("cells"))?;
    }

    // Cells that fail to resolve are recorded and skipped; the batch goes on.
    let mut failures = Vec::new();
    let mut valid_cells: Vec<RunSpec> = Vec::new();
    let mut references: BTreeMap<String, Vec<Vec<f64>>> = BTreeMap::new();
    for cell in &spec.runs {
        let key = format!("{}-{}", cell.problem, cell.objectives);
        if !references.contains_key(&key) {
            let resolved = cell
                .to_config()
                .and_then(|config| sample_reference(&config.problem));
            match resolved {
                Ok(front) => {
                    references.insert(key, front);
                }
                Err(err) => {
                    failures.push(format!("{}: {err:#}", cell.cell_label()));
                    continue;
                }
            }
        }
        valid_cells.push(cell.clone());
    }

    let jobs: Vec<(RunSpec, String)> = valid_cells
        .iter()
        .flat_map(|cell| {
            (0..replications).map(move |r| {
                let seeded = cell.clone().with_seed(spec.base_seed + r as u64);
                let key = format!("{}-{}", cell.problem, cell.objectives);
                (seeded, key)
            })
        })
        .collect();

    let outcomes: Vec<(RunSpec, Result<RunResult>)> = jobs
        .into_par_iter()
        .map(|(seeded, key)| {
            let reference = references.get(&key).map(|v| v.as_slice());
            let outcome = run(&seeded, reference);
            (seeded, outcome)
        })
        .collect();

    let mut results: BTreeMap<String, Vec<RunResult>> = BTreeMap::new();
    for (seeded, outcome) in outcomes {
        match outcome {
            Ok(result) => {
                if let Some(dir) = out_dir {
                    write_run_artifacts(dir, &seeded, &result)?;
                }
                results.entry(seeded.cell_label()).or_default().push(result);
            }
            Err(err) => {
                failures.push(format!(
                    "{} seed {}: {err:#}",
                    seeded.cell_label(),
                    seeded.seed
                ));
            }
        }
    }
    for runs in results.values_mut() {
        runs.sort_by_key(|r| r.config.seed);
    }

    if let Some(dir) = out_dir {
        for (label, runs) in &results {
            write_cell_csv(&dir.join("cells").join(format!("{label}.csv")), runs, true)?;
        }
    }
    Ok(BatchData { results, failures })
}

fn run_file_stem(spec: &RunSpec) -> String {
    format!("{}_seed{}", spec.cell_label(), spec.seed)
}

fn write_run_artifacts(dir: &Path, spec: &RunSpec, result: &RunResult) -> Result<()> {
    let stem = run_file_stem(spec);
    let runs = dir.join("runs");
    write_run_json(&runs.join(format!("{stem}.json")), result)?;
    write_front_csv(
        &runs.join(format!("{stem}_front.csv")),
        &result.final_population,
    )?;
    write_front_csv(
        &runs.join(format!("{stem}_weights.csv")),
        &result.final_weights,
    )?;
    if !result.trigger_events.is_empty() {
        write_events_csv(
            &runs.join(format!("{stem}_events.csv")),
            &result.trigger_events,
            true,
        )?;
    }
    Ok(())
}

pub fn write_cell_csv(path: &Path, runs: &[RunResult], headers: bool) -> Result<()> {
    let mut out = String::new();
    if headers {
        out.push_str("seed,igd,hv,adaptations,wall_time_ms\n");
    }
    for r in runs {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            r.config.seed, r.igd, r.hv, r.adaptations, r.wall_time_ms
        ));
    }
    fs::write(path, out).with_context(|| format!("writing {}", path.display()))
}

pub fn summarize(data: &BatchData) -> BatchSummary {
    // IGD samples of the fixed-weight baseline per problem, for the pairwise test.
    let mut baseline_igd: BTreeMap<String, Vec<f64>> = BTreeMap::new();
    for runs in data.results.values() {
        if let Some(first) = runs.first() {
            if first.config.algorithm == "moead-fixed" {
                let key = format!("{}-{}", first.config.problem, first.config.objectives);
                baseline_igd.insert(key, runs.iter().map(|r| r.igd).collect());
            }
        }
    }

    let mut cells = Vec::new();
    for runs in data.results.values() {
        let first = match runs.first() {
            Some(first) => first,
            None => continue,
        };
        let igd: Vec<f64> = runs.iter().map(|r| r.igd).collect();
        let hv: Vec<f64> = runs.iter().map(|r| r.hv).collect();
        let (igd_mean, igd_sd) = mean_sd(&igd);
        let (hv_mean, hv_sd) = mean_sd(&hv);
        let key = format!("{}-{}", first.config.problem, first.config.objectives);
        let p = if first.config.algorithm == "moead-fixed" {
            None
        } else {
            baseline_igd
                .get(&key)
                .filter(|b| b.len() >= 5 && igd.len() >= 5)
                .map(|b| rank_sum_test(&igd, b))
        };
        cells.push(CellSummary {
            problem: first.config.problem.clone(),
            objectives: first.config.objectives,
            algorithm: first.config.algorithm.clone(),
            replications: runs.len(),
            igd_mean,
            igd_sd,
            hv_mean,
            hv_sd,
            igd_p_vs_baseline: p,
            significant_at_0_05: p.map(|p| p < 0.05),
        });
    }
    BatchSummary {
        cells,
        failures: data.failures.clone(),
    }
}

pub fn write_summary_csv(path: &Path, cells: &[CellSummary], headers: bool) -> Result<()> {
    let mut out = String::new();
    if headers {
        out.push_str(
            "problem,objectives,algorithm,replications,igd,igd_mean,igd_sd,hv,hv_mean,hv_sd,igd_p_vs_baseline,significant_at_0.05\n",
        );
    }
    for c in cells {
        let p = c
            .igd_p_vs_baseline
            .map(|p| format!("{p}"))
            .unwrap_or_default();
        let sig = c
            .significant_at_0_05
            .map(|s| s.to_string())
            .unwrap_or_default();
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{},{}\n",
            c.problem,
            c.objectives,
            c.algorithm,
            c.replications,
            format_mean_sd(c.igd_mean, c.igd_sd),
            c.igd_mean,
            c.igd_sd,
            format_mean_sd(c.hv_mean, c.hv_sd),
            c.hv_mean,
            c.hv_sd,
            p,
            sig
        ));
    }
    fs::write(path, out).with_context(|| format!("writing {}", path.display()))
}

/// Paths a batch writes, for callers that need to re-read artifacts.
pub fn summary_path(out_dir: &Path) -> PathBuf {
    out_dir.join("summary.csv")
}
