//! File artifacts: front CSVs (one point per row, plain columns, LF line
//! endings, '.' decimals), trigger event logs, and per-run JSON records.

use std::fs;
use std::path::Path;

use anyhow::{Context, Result};

use crate::runner::{RunResult, TriggerEventRecord};

fn format_row(point: &[f64]) -> String {
    let cells: Vec<String> = point.iter().map(|v| format!("{v}")).collect();
    cells.join(",")
}

/// Writes a point set as headerless CSV, one point per row.
pub fn write_front_csv(path: &Path, points: &[Vec<f64>]) -> Result<()> {
    let mut out = String::new();
    for point in points {
        out.push_str(&format_row(point));
        out.push('\n');
    }
    fs::write(path, out).with_context(|| format!("writing {}", path.display()))
}

/// Loads a headerless front CSV; every row must have the same column count.
pub fn load_front_csv(path: &Path) -> Result<Vec<Vec<f64>>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let mut points = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let row: Vec<f64> = line
            .split(',')
            .map(|cell| {
                cell.trim().parse::<f64>().with_context(|| {
                    format!("{}:{}: bad number '{cell}'", path.display(), lineno + 1)
                })
            })
            .collect::<Result<_>>()?;
        if let Some(first) = points.first() {
            let first: &Vec<f64> = first;
            anyhow::ensure!(
                row.len() == first.len(),
                "{}:{}: expected {} columns, found {}",
                path.display(),
                lineno + 1,
                first.len(),
                row.len()
            );
        }
        points.push(row);
    }
    anyhow::ensure!(!points.is_empty(), "{}: no data rows", path.display());
    Ok(points)
}

/// Appends the trigger event log as CSV.
pub fn write_events_csv(path: &Path, events: &[TriggerEventRecord], headers: bool) -> Result<()> {
    let mut out = String::new();
    if headers {
        out.push_str("generation,stagnant,consistent,adapted,r,archive_size,stagnation_count\n");
    }
    for e in events {
        let r = e.niche_radius.map(|v| format!("{v}")).unwrap_or_default();
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            e.generation,
            e.stagnant,
            e.consistent,
            e.adapted,
            r,
            e.archive_size,
            e.stagnation_count
        ));
    }
    fs::write(path, out).with_context(|| format!("writing {}", path.display()))
}

pub fn write_run_json(path: &Path, result: &RunResult) -> Result<()> {
    let json = serde_json::to_string_pretty(result).context("serialising run result")?;
    fs::write(path, json).with_context(|| format!("writing {}", path.display()))
}
