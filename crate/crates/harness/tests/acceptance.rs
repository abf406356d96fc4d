//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//!
//! The replicated optimisation runs are shared across criteria through a
//! lazily-initialised protocol so the whole suite stays fast.

use std::sync::OnceLock;
use std::time::Instant;

use atm_moead::config::RunSpec;
use atm_moead::runner::{run, RunResult};
use atm_moead::stats::{median, rank_sum_test};

use atm_moead_core::atm::{
    archive_update, consistency_detect, energy_delete_index, set_energy, Archive, StagnationTracker,
};
use atm_moead_core::engine::{Algorithm, RunConfig};
use atm_moead_core::indicators::{hv, hv_monte_carlo};
use atm_moead_core::pareto::nondominated_indices;
use atm_moead_core::problems::ProblemSpec;
use atm_moead_core::runner::execute_with;
use atm_moead_core::weights::simplex_lattice;
use atm_moead_core::RandomSource;

use rand::Rng;

const SEEDS: u64 = 11;

struct Protocol {
    dtlz2_2_fixed: Vec<RunResult>,
    dtlz2_3_atm: Vec<RunResult>,
    idtlz1_3_atm: Vec<RunResult>,
    idtlz1_3_fixed: Vec<RunResult>,
    dtlz5_3_atm: Vec<RunResult>,
}

fn replicate(problem: &str, m: usize, algorithm: &str) -> Vec<RunResult> {
    (0..SEEDS)
        .map(|seed| {
            run(&RunSpec::new(problem, m, algorithm).with_seed(seed), None)
                .expect("acceptance run failed")
        })
        .collect()
}

fn protocol() -> &'static Protocol {
    static PROTOCOL: OnceLock<Protocol> = OnceLock::new();
    PROTOCOL.get_or_init(|| Protocol {
        dtlz2_2_fixed: replicate("DTLZ2", 2, "moead-fixed"),
        dtlz2_3_atm: replicate("DTLZ2", 3, "atm-moead"),
        idtlz1_3_atm: replicate("IDTLZ1", 3, "atm-moead"),
        idtlz1_3_fixed: replicate("IDTLZ1", 3, "moead-fixed"),
        dtlz5_3_atm: replicate("DTLZ5", 3, "atm-moead"),
    })
}

fn igd_sample(results: &[RunResult]) -> Vec<f64> {
    results.iter().map(|r| r.igd).collect()
}

/// Criterion 1: on random normalised sets the incremental energy deletion
/// picks the same member as exhaustive enumeration of every removal.
#[test]
fn criterion_1_energy_delete_matches_exhaustive_enumeration() {
    let started = Instant::now();
    let mut rng = RandomSource::new(0xACC1);
    let mut checked = 0;
    for case in 0..500 {
        let m = if case % 2 == 0 { 2 } else { 3 };
        let n = 2 + rng.gen_range(0..7); // sizes 2..=8
        let s = 2.0 * m as f64;
        let points: Vec<Vec<f64>> = (0..n)
            .map(|_| (0..m).map(|_| rng.gen::<f64>()).collect())
            .collect();
        let picked = energy_delete_index(&points, s);
        let mut best = 0;
        let mut best_energy = f64::INFINITY;
        for skip in 0..n {
            let remaining: Vec<Vec<f64>> = points
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != skip)
                .map(|(_, p)| p.clone())
                .collect();
            let energy = set_energy(&remaining, s);
            // Shared tie rule: exact ties remove the later member.
            if energy <= best_energy {
                best_energy = energy;
                best = skip;
            }
        }
        assert_eq!(
            picked, best,
            "case {case}: incremental picked {picked}, enumeration picked {best}"
        );
        checked += 1;
    }
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs() < 10, "took {elapsed:?}");
    println!("[PASS] criterion 1: energy deletion = exhaustive argmin on {checked}/500 sets ({elapsed:?})");
}

/// Independent biobjective hypervolume oracle: sorted staircase sweep.
fn hv2_oracle(points: &[Vec<f64>], reference: &[f64]) -> f64 {
    let mut inside: Vec<&Vec<f64>> = points
        .iter()
        .filter(|p| p[0] < reference[0] && p[1] < reference[1])
        .collect();
    if inside.is_empty() {
        return 0.0;
    }
    inside.sort_by(|a, b| a[0].partial_cmp(&b[0]).unwrap());
    let mut total = 0.0;
    let mut best_f2 = f64::INFINITY;
    for i in 0..inside.len() {
        best_f2 = best_f2.min(inside[i][1]);
        let next = if i + 1 < inside.len() {
            inside[i + 1][0]
        } else {
            reference[0]
        };
        if next > inside[i][0] {
            total += (next - inside[i][0]) * (reference[1] - best_f2);
        }
    }
    total
}

/// Criterion 2: exact hypervolume agrees with the closed-form biobjective
/// sweep to 1e-12 relative, and with Monte Carlo sampling in three
/// objectives to within three standard errors.
#[test]
fn criterion_2_hypervolume_oracles() {
    let started = Instant::now();
    let mut rng = RandomSource::new(0xACC2);
    for case in 0..200 {
        let n = 1 + rng.gen_range(0..40);
        let points: Vec<Vec<f64>> = (0..n)
            .map(|_| vec![rng.gen::<f64>() * 1.4, rng.gen::<f64>() * 1.4])
            .collect();
        let reference = [1.2, 1.3];
        let exact = hv(&points, &reference);
        let oracle = hv2_oracle(&points, &reference);
        assert!(
            (exact - oracle).abs() <= 1e-12 * oracle.abs().max(1.0),
            "case {case}: exact {exact} vs sweep {oracle}"
        );
    }
    for case in 0..10 {
        let points: Vec<Vec<f64>> = (0..20)
            .map(|_| (0..3).map(|_| rng.gen::<f64>()).collect())
            .collect();
        let reference = [1.1, 1.1, 1.1];
        let exact = hv(&points, &reference);
        let mc = hv_monte_carlo(&points, &reference, 200_000, 7 + case);
        assert!(
            (exact - mc.value).abs() <= 3.0 * mc.standard_error.max(1e-12),
            "case {case}: exact {exact}, mc {} (se {})",
            mc.value,
            mc.standard_error
        );
    }
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs() < 60, "took {elapsed:?}");
    println!("[PASS] criterion 2: hypervolume matches sweep (200 sets) and Monte Carlo (10 sets) ({elapsed:?})");
}

/// Criterion 3: the fixed-weight baseline reaches the paper-level IGD on
/// DTLZ2-2 and never touches its weights.
#[test]
fn criterion_3_baseline_fidelity() {
    let results = &protocol().dtlz2_2_fixed;
    let med = median(&igd_sample(results));
    assert!(med <= 5.0e-3, "median IGD {med} above 5.0e-3");

    let lattice = simplex_lattice(2, 99);
    for seed in 0..SEEDS {
        let problem = ProblemSpec::by_name("DTLZ2", 2).unwrap();
        let config = RunConfig::for_problem(problem, Algorithm::MoeadFixed, seed).unwrap();
        let output = atm_moead_core::runner::execute(&config).unwrap();
        assert_eq!(
            output.initial_weights, lattice,
            "seed {seed}: initial lattice"
        );
        assert_eq!(output.final_weights, lattice, "seed {seed}: weights moved");
    }
    println!("[PASS] criterion 3: baseline DTLZ2-2 median IGD {med:.4e} <= 5.0e-3, weights bit-identical over {SEEDS} seeds");
}

/// Criterion 4: with the trigger mechanism enabled, the regular-front result
/// is not degraded (same bars the paper's means imply).
#[test]
fn criterion_4_regular_front_non_degradation() {
    let results = &protocol().dtlz2_3_atm;
    let med_igd = median(&igd_sample(results));
    let med_hv = median(&results.iter().map(|r| r.hv).collect::<Vec<_>>());
    let zero_adaptation_fraction =
        results.iter().filter(|r| r.adaptations == 0).count() as f64 / results.len() as f64;
    assert!(med_igd <= 6.0e-2, "median IGD {med_igd} above 6.0e-2");
    assert!(med_hv >= 7.40, "median HV {med_hv} below 7.40");
    println!(
        "[PASS] criterion 4: DTLZ2-3 atm-moead median IGD {med_igd:.4e} <= 6.0e-2, median HV {med_hv:.4} >= 7.40, zero-adaptation fraction {zero_adaptation_fraction:.2}"
    );
}

/// Criterion 5: on irregular fronts the trigger mechanism beats the
/// fixed-weight baseline significantly.
#[test]
fn criterion_5_irregular_front_improvement() {
    let atm = igd_sample(&protocol().idtlz1_3_atm);
    let fixed = igd_sample(&protocol().idtlz1_3_fixed);
    let med_atm = median(&atm);
    let med_fixed = median(&fixed);
    let p = rank_sum_test(&atm, &fixed);
    assert!(
        med_atm <= 2.4e-2,
        "IDTLZ1-3 median IGD {med_atm} above 2.4e-2"
    );
    assert!(
        med_atm < med_fixed,
        "IDTLZ1-3: atm median {med_atm} not below fixed median {med_fixed}"
    );
    assert!(p < 0.05, "IDTLZ1-3 rank-sum p {p} not significant");

    let dtlz5 = median(&igd_sample(&protocol().dtlz5_3_atm));
    assert!(dtlz5 <= 5.0e-3, "DTLZ5-3 median IGD {dtlz5} above 5.0e-3");
    println!(
        "[PASS] criterion 5: IDTLZ1-3 atm {med_atm:.4e} < fixed {med_fixed:.4e} (p {p:.2e}), DTLZ5-3 atm median {dtlz5:.4e} <= 5.0e-3"
    );
}

/// Criterion 6: trigger-logic properties on synthetic state plus the full
/// event logs of every acceptance run.
#[test]
fn criterion_6_trigger_logic_properties() {
    let started = Instant::now();

    // A frozen correspondence fires exactly at generation fre.
    let fre = 7;
    let frozen: Vec<usize> = (0..10).collect();
    let mut tracker = StagnationTracker::new(fre);
    assert!(!tracker.observe(frozen.clone()), "no basis at generation 0");
    for generation in 1..=20 {
        let fired = tracker.observe(frozen.clone());
        assert_eq!(
            fired,
            generation >= fre,
            "generation {generation}: fired = {fired}"
        );
    }

    // On a state where every slot occupies its own niche, any single
    // incumbent change alters the correspondence and resets the count.
    for moved_slot in 0..10 {
        let mut tracker = StagnationTracker::new(fre);
        tracker.observe(frozen.clone());
        for _ in 1..=fre {
            tracker.observe(frozen.clone());
        }
        assert_eq!(tracker.consecutive_unchanged(), fre);
        let mut changed = frozen.clone();
        changed[moved_slot] = 10; // the incumbent left its weight's niche
        assert!(!tracker.observe(changed));
        assert_eq!(tracker.consecutive_unchanged(), 0, "slot {moved_slot}");
    }

    // Consistency verdict is invariant under common positive scaling.
    let mut rng = RandomSource::new(0xACC6);
    for _ in 0..100 {
        let archive: Vec<Vec<f64>> = (0..12)
            .map(|_| (0..3).map(|_| rng.gen::<f64>()).collect())
            .collect();
        let population: Vec<Vec<f64>> = (0..8)
            .map(|_| (0..3).map(|_| rng.gen::<f64>()).collect())
            .collect();
        let scale = 10f64.powf(rng.gen::<f64>() * 6.0 - 3.0);
        let solutions = |rows: &[Vec<f64>], k: f64| -> Vec<atm_moead_core::Solution> {
            rows.iter()
                .map(|r| {
                    atm_moead_core::Solution::new(vec![], r.iter().map(|v| v * k).collect(), 0)
                })
                .collect()
        };
        let base = consistency_detect(&solutions(&population, 1.0), &solutions(&archive, 1.0));
        let scaled =
            consistency_detect(&solutions(&population, scale), &solutions(&archive, scale));
        assert_eq!(base.consistent, scaled.consistent, "scale {scale}");
    }

    // adapted => stagnant and inconsistent, over every acceptance run's log.
    let all_runs = [
        &protocol().dtlz2_2_fixed,
        &protocol().dtlz2_3_atm,
        &protocol().idtlz1_3_atm,
        &protocol().idtlz1_3_fixed,
        &protocol().dtlz5_3_atm,
    ];
    let mut events = 0;
    for results in all_runs {
        for result in results.iter() {
            let mut prev_generation = 0;
            for event in &result.trigger_events {
                assert!(
                    event.generation > prev_generation,
                    "event log not increasing"
                );
                prev_generation = event.generation;
                if event.adapted {
                    assert!(event.stagnant && event.consistency_checked && !event.consistent);
                    // Adaptation is frozen in the final tenth of the budget.
                    let evals_done = (event.generation + 1) * result.config.population as u64;
                    assert!(
                        (evals_done as f64) < 0.9 * result.config.budget as f64,
                        "adaptation inside the freeze window at generation {}",
                        event.generation
                    );
                }
                if !event.stagnant {
                    assert!(!event.consistency_checked, "short-circuit violated");
                }
                events += 1;
            }
        }
    }
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs() < 5, "took {elapsed:?}");
    println!("[PASS] criterion 6: trigger logic properties hold ({events} logged events checked, {elapsed:?})");
}

/// Criterion 7: structural invariants checked every generation on one seed of
/// each acceptance problem, with exact budget accounting at termination.
#[test]
fn criterion_7_invariant_suite() {
    let cells: [(&str, usize, Algorithm); 4] = [
        ("DTLZ2", 2, Algorithm::MoeadFixed),
        ("DTLZ2", 3, Algorithm::AtmMoead),
        ("IDTLZ1", 3, Algorithm::AtmMoead),
        ("DTLZ5", 3, Algorithm::AtmMoead),
    ];
    let mut generations_checked = 0u64;
    for (name, m, algorithm) in cells {
        let problem = ProblemSpec::by_name(name, m).unwrap();
        let config = RunConfig::for_problem(problem, algorithm, 0).unwrap();
        let capacity = config.archive_capacity;
        let output = execute_with(&config, |state, archive: &Archive, _report| {
            assert!(archive.len() <= capacity, "archive over capacity");
            let members = archive.members();
            let kept = nondominated_indices(members.len(), |i| members[i].objectives());
            assert_eq!(kept.len(), members.len(), "archive holds dominated members");
            for w in state.weights().vectors() {
                let sum: f64 = w.iter().sum();
                assert!((sum - 1.0).abs() < 1e-12, "weight off the simplex");
                assert!(w.iter().all(|v| *v >= 0.0), "negative weight component");
            }
            generations_checked += 1;
        })
        .unwrap();
        assert_eq!(
            output.eval_count, config.budget,
            "{name}-{m}: evaluation budget not exactly consumed"
        );
    }
    println!("[PASS] criterion 7: per-generation invariants held over {generations_checked} generations, budgets exact");
}

/// Criterion 1 companion required by the kernel contract: mid-run archive
/// maintenance respects capacity and non-dominance under random feeds.
#[test]
fn archive_maintenance_random_feed_invariants() {
    let mut rng = RandomSource::new(0xACC8);
    let mut archive = Archive::new(12);
    for _ in 0..200 {
        let batch: Vec<atm_moead_core::Solution> = (0..8)
            .map(|_| {
                let objectives: Vec<f64> = (0..3).map(|_| rng.gen::<f64>()).collect();
                atm_moead_core::Solution::new(vec![], objectives, 0)
            })
            .collect();
        archive_update(&mut archive, &batch, 6.0, &mut rng);
        assert!(archive.len() <= 12);
        let members = archive.members();
        let kept = nondominated_indices(members.len(), |i| members[i].objectives());
        assert_eq!(kept.len(), members.len());
    }
    println!("[PASS] archive maintenance invariants under random feeds");
}
