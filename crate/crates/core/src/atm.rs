//! The weight adaptation trigger mechanism: energy-based archive maintenance,
//! stagnation detection, consistency detection between population and archive,
//! and the triggered add-delete weight adaptation.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::Float;
use rand::Rng;

use crate::engine::EngineState;
use crate::pareto::{
    euclidean, nondominated_indices, normalize, squared_distance, ObjectiveBounds,
};
use crate::rng::RandomSource;
use crate::solution::Solution;
use crate::weights::{
    corresponding_weight_counts, corresponding_weight_indices, IncumbentTable, WeightSet,
};

/// Distance floor for coincident points in energy computations: a duplicate
/// pair gets energy `1/eps^s`, so one duplicate is always deleted first.
pub const COINCIDENT_EPS: f64 = 1e-12;

/// Potential energy between two distinct points, `1 / ||p - q||^s`.
/// Coincident points yield infinite energy; set-level routines apply the
/// duplicate rule instead of calling this on them.
pub fn pair_energy(p: &[f64], q: &[f64], s: f64) -> f64 {
    1.0 / euclidean(p, q).powf(s)
}

fn pair_energy_clamped(p: &[f64], q: &[f64], s: f64) -> f64 {
    let d2 = squared_distance(p, q).max(COINCIDENT_EPS * COINCIDENT_EPS);
    let half = 0.5 * s;
    if half.fract() == 0.0 && half.abs() <= 64.0 {
        1.0 / d2.powi(half as i32)
    } else {
        1.0 / d2.powf(half)
    }
}

/// Potential energy of a point set: the double sum over ordered pairs of
/// `pair_energy`, so each unordered pair counts twice. Coincident pairs use
/// the duplicate rule.
pub fn set_energy(points: &[Vec<f64>], s: f64) -> f64 {
    let mut total = 0.0;
    for i in 0..points.len() {
        for j in 0..points.len() {
            if i != j {
                total += pair_energy_clamped(&points[i], &points[j], s);
            }
        }
    }
    total
}

/// Index of the member whose removal minimises the remaining set's energy,
/// computed incrementally: `E(A \ a) = E(A) - 2 * sum_j U(a, a_j)`, so the
/// argmin over removals is the argmax over per-member energy sums. On ties
/// the later member is removed, keeping the earlier one.
pub fn energy_delete_index(points: &[Vec<f64>], s: f64) -> usize {
    assert!(
        points.len() >= 2,
        "energy deletion needs at least two members"
    );
    let n = points.len();
    let mut sums = vec![0.0; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let u = pair_energy_clamped(&points[i], &points[j], s);
            sums[i] += u;
            sums[j] += u;
        }
    }
    let mut best = 0;
    for k in 1..n {
        if sums[k] >= sums[best] {
            best = k;
        }
    }
    best
}

/// Removes the member whose removal minimises the remaining set's energy on
/// the set's own normalised objectives. Returns the kept members (input order
/// preserved) and the removed one.
pub fn energy_delete(members: &[Solution], s: f64) -> (Vec<Solution>, Solution) {
    let bounds = ObjectiveBounds::from_points(members.iter().map(|m| m.objectives()));
    let normalized: Vec<Vec<f64>> = members
        .iter()
        .map(|m| bounds.apply(m.objectives()))
        .collect();
    let idx = energy_delete_index(&normalized, s);
    let mut kept = members.to_vec();
    let removed = kept.remove(idx);
    (kept, removed)
}

/// Steady energy-based subset selection. `main` is first trimmed to
/// `capacity` by iterated deletion, then each `backup` member is inserted and
/// one member is deleted again, so the result has exactly `capacity` members
/// (assuming `main` reached it). `protected` point indices are never deleted.
/// Returns kept indices into `points`.
pub fn energy_subset_select(
    points: &[Vec<f64>],
    main: Vec<usize>,
    backup: &[usize],
    capacity: usize,
    protected: &[usize],
    s: f64,
) -> Vec<usize> {
    let mut members = main;
    let mut sums: Vec<f64> = vec![0.0; members.len()];
    for i in 0..members.len() {
        for j in (i + 1)..members.len() {
            let u = pair_energy_clamped(&points[members[i]], &points[members[j]], s);
            sums[i] += u;
            sums[j] += u;
        }
    }

    let delete_one = |members: &mut Vec<usize>, sums: &mut Vec<f64>| {
        let mut best: Option<usize> = None;
        for k in 0..members.len() {
            if protected.contains(&members[k]) {
                continue;
            }
            if best.is_none_or(|b| sums[k] >= sums[b]) {
                best = Some(k);
            }
        }
        let k = best.expect("no removable member in energy selection");
        let removed = members[k];
        for j in 0..members.len() {
            if j != k {
                sums[j] -= pair_energy_clamped(&points[removed], &points[members[j]], s);
            }
        }
        members.remove(k);
        sums.remove(k);
    };

    while members.len() > capacity {
        delete_one(&mut members, &mut sums);
    }
    for &b in backup {
        let mut own = 0.0;
        for (k, &m) in members.iter().enumerate() {
            let u = pair_energy_clamped(&points[b], &points[m], s);
            sums[k] += u;
            own += u;
        }
        members.push(b);
        sums.push(own);
        if members.len() > capacity {
            delete_one(&mut members, &mut sums);
        }
    }
    members
}

/// Capacity-bounded store of mutually non-dominated solutions, maintained by
/// steady energy-based subset selection.
#[derive(Debug, Clone)]
pub struct Archive {
    members: Vec<Solution>,
    capacity: usize,
}

impl Archive {
    pub fn new(capacity: usize) -> Self {
        Self {
            members: Vec::new(),
            capacity,
        }
    }

    pub fn members(&self) -> &[Solution] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }
}

/// One generation of archive maintenance: the union of the archive and the
/// offspring is filtered to its non-dominated members; if that exceeds the
/// capacity, previous-archive survivors (topped up with uniformly random
/// offspring survivors) form the main set and the remaining offspring are
/// inserted one at a time with an energy deletion after each insertion.
/// Energies are computed on objectives normalised by the filtered union's own
/// bounds.
pub fn archive_update(
    archive: &mut Archive,
    offspring: &[Solution],
    s: f64,
    rng: &mut RandomSource,
) {
    let prev_len = archive.members.len();
    let mut union: Vec<&Solution> = archive.members.iter().collect();
    union.extend(offspring.iter());
    let survivors = nondominated_indices(union.len(), |i| union[i].objectives());

    if survivors.len() <= archive.capacity {
        archive.members = survivors.into_iter().map(|i| union[i].clone()).collect();
        return;
    }

    let mut main: Vec<usize> = Vec::new();
    let mut offspring_survivors: Vec<usize> = Vec::new();
    for &idx in &survivors {
        if idx < prev_len {
            main.push(idx);
        } else {
            offspring_survivors.push(idx);
        }
    }

    let mut backup: Vec<usize> = Vec::new();
    if main.len() < archive.capacity {
        let need = (archive.capacity - main.len()).min(offspring_survivors.len());
        let mut pool = offspring_survivors.clone();
        for k in 0..need {
            let pick = k + rng.gen_range(0..pool.len() - k);
            pool.swap(k, pick);
        }
        let chosen = &pool[..need];
        main.extend_from_slice(chosen);
        backup.extend(
            offspring_survivors
                .iter()
                .copied()
                .filter(|i| !chosen.contains(i)),
        );
    } else {
        backup = offspring_survivors;
    }

    let bounds = ObjectiveBounds::from_points(survivors.iter().map(|&i| union[i].objectives()));
    let normalized: Vec<Vec<f64>> = union
        .iter()
        .map(|sol| bounds.apply(sol.objectives()))
        .collect();

    let kept = energy_subset_select(&normalized, main, &backup, archive.capacity, &[], s);
    archive.members = kept.into_iter().map(|i| union[i].clone()).collect();
}

/// Counts how many consecutive generations the solution-to-weight
/// correspondence (the index of each incumbent's angularly closest weight)
/// has stayed identical; the evolution is considered stagnant once the count
/// reaches the `fre` threshold.
#[derive(Debug, Clone)]
pub struct StagnationTracker {
    threshold: usize,
    prev: Option<Vec<usize>>,
    consecutive_unchanged: usize,
}

impl StagnationTracker {
    pub fn new(threshold: usize) -> Self {
        assert!(threshold >= 1, "stagnation threshold must be at least 1");
        Self {
            threshold,
            prev: None,
            consecutive_unchanged: 0,
        }
    }

    /// Feeds one generation's correspondence; returns true iff the assignment
    /// has now been unchanged for `fre` consecutive observations. The very
    /// first observation has nothing to compare against and never fires.
    pub fn observe(&mut self, assignment: Vec<usize>) -> bool {
        let unchanged = self.prev.as_deref() == Some(assignment.as_slice());
        if unchanged {
            self.consecutive_unchanged = (self.consecutive_unchanged + 1).min(self.threshold);
        } else {
            self.consecutive_unchanged = 0;
        }
        self.prev = Some(assignment);
        self.consecutive_unchanged >= self.threshold
    }

    pub fn reset(&mut self) {
        self.prev = None;
        self.consecutive_unchanged = 0;
    }

    pub fn consecutive_unchanged(&self) -> usize {
        self.consecutive_unchanged
    }

    pub fn threshold(&self) -> usize {
        self.threshold
    }
}

/// Outcome of consistency detection, carrying the per-member quantities the
/// weight adaptation reuses.
#[derive(Debug, Clone)]
pub struct ConsistencyReport {
    pub consistent: bool,
    /// Niche radius: sqrt(M) times the median nearest-archive-neighbour
    /// distance, in archive-normalised space.
    pub niche_radius: f64,
    /// Distance from each archive member to its nearest population member.
    pub population_distances: Vec<f64>,
    pub normalized_archive: Vec<Vec<f64>>,
    pub bounds: ObjectiveBounds,
}

/// Compares the distribution of the population with that of the archive:
/// consistent iff every archive member has a population member strictly
/// within the niche radius. Everything is normalised by the archive's own
/// objective bounds, so the verdict is invariant under common positive
/// scaling. Archives with fewer than two members give no basis for
/// inconsistency and report consistent.
pub fn consistency_detect(population: &[Solution], archive: &[Solution]) -> ConsistencyReport {
    let (norm_pop, norm_arch) = normalize(population, archive);
    if archive.len() < 2 {
        return ConsistencyReport {
            consistent: true,
            niche_radius: 0.0,
            population_distances: Vec::new(),
            normalized_archive: norm_arch.points,
            bounds: norm_arch.bounds,
        };
    }
    let m = archive[0].objectives().len();
    let nearest = |point: &[f64], others: &[Vec<f64>], skip: Option<usize>| -> f64 {
        let mut best = f64::INFINITY;
        for (j, q) in others.iter().enumerate() {
            if Some(j) == skip {
                continue;
            }
            let d = squared_distance(point, q);
            if d < best {
                best = d;
            }
        }
        best.sqrt()
    };
    let mut archive_nn: Vec<f64> = Vec::with_capacity(norm_arch.points.len());
    let mut pop_distances: Vec<f64> = Vec::with_capacity(norm_arch.points.len());
    for (i, a) in norm_arch.points.iter().enumerate() {
        archive_nn.push(nearest(a, &norm_arch.points, Some(i)));
        pop_distances.push(nearest(a, &norm_pop.points, None));
    }
    let niche_radius = (m as f64).sqrt() * median(&archive_nn);
    let consistent = pop_distances.iter().all(|d| *d < niche_radius);
    ConsistencyReport {
        consistent,
        niche_radius,
        population_distances: pop_distances,
        normalized_archive: norm_arch.points,
        bounds: norm_arch.bounds,
    }
}

fn median(values: &[f64]) -> f64 {
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap_or(core::cmp::Ordering::Equal));
    let n = sorted.len();
    if n % 2 == 1 {
        sorted[n / 2]
    } else {
        0.5 * (sorted[n / 2 - 1] + sorted[n / 2])
    }
}

/// Adapts the weights through an add-delete approach. ADD: every archive
/// member whose niche holds no population member (distance >= niche radius)
/// spawns a new subproblem, the weight being the scalariser's own optimal
/// weight for that member and the member itself the incumbent. DELETE:
/// exactly as many weights as were added are removed — first weights holding
/// solutions dominated by another incumbent (unproductive directions), then
/// surplus weights of solutions held by several weights (keeping the weight
/// that scalarises the solution best), and finally, when every remaining
/// solution holds one weight, energy-based subset selection over the
/// incumbents. Neighbourhoods are rebuilt from scratch afterwards.
pub fn weight_adapt(state: &mut EngineState, archive: &Archive, report: &ConsistencyReport) {
    let n = state.population_size();
    let mut weights: Vec<Vec<f64>> = state.weights().vectors().to_vec();
    let mut incumbents: Vec<Solution> = state.incumbents().to_vec();

    let scalarizer = state.config().scalarizer;
    for (idx, member) in archive.members().iter().enumerate() {
        if report.population_distances[idx] >= report.niche_radius {
            // The new weight is built in the engine's own objective space so
            // the spawning solution is optimal for its subproblem.
            let shifted: Vec<f64> = member
                .objectives()
                .iter()
                .zip(state.ideal())
                .map(|(f, z)| f - z)
                .collect();
            weights.push(scalarizer.weight_for_solution(&shifted));
            incumbents.push(member.clone());
        }
    }

    let mut excess = weights.len().saturating_sub(n);

    // Dominated pass: a weight whose solution is dominated by another
    // incumbent points at an unproductive search direction; drop the worst
    // scalariser among them, one at a time.
    while excess > 0 {
        let dominated: Vec<usize> = (0..incumbents.len())
            .filter(|&i| {
                incumbents.iter().any(|other| {
                    crate::pareto::dominates(other.objectives(), incumbents[i].objectives())
                })
            })
            .collect();
        let Some(&worst) = dominated.iter().max_by(|&&a, &&b| {
            let ga = scalarizer.evaluate(incumbents[a].objectives(), &weights[a], state.ideal());
            let gb = scalarizer.evaluate(incumbents[b].objectives(), &weights[b], state.ideal());
            ga.partial_cmp(&gb)
                .unwrap_or(core::cmp::Ordering::Equal)
                .then(a.cmp(&b))
        }) else {
            break;
        };
        weights.remove(worst);
        incumbents.remove(worst);
        excess -= 1;
    }

    // Duplicate pass: one weight at a time from the most-shared solution,
    // always dropping the slot with the worst scalarised value.
    while excess > 0 {
        let table = corresponding_weight_counts(incumbents.iter().map(|s| s.objectives()));
        let Some(slot) = most_shared_slot(&table) else {
            break;
        };
        let id = table.ids()[slot];
        let worst = (0..incumbents.len())
            .filter(|&i| table.ids()[i] == id)
            .max_by(|&a, &b| {
                let ga =
                    scalarizer.evaluate(incumbents[a].objectives(), &weights[a], state.ideal());
                let gb =
                    scalarizer.evaluate(incumbents[b].objectives(), &weights[b], state.ideal());
                ga.partial_cmp(&gb)
                    .unwrap_or(core::cmp::Ordering::Equal)
                    .then(a.cmp(&b))
            })
            .expect("shared group is non-empty");
        weights.remove(worst);
        incumbents.remove(worst);
        excess -= 1;
    }

    // Energy pass: each remaining solution holds exactly one weight, so trim
    // the incumbent set itself, deleting each removed incumbent's weight too.
    if excess > 0 {
        let points: Vec<Vec<f64>> = incumbents
            .iter()
            .map(|sol| report.bounds.apply(sol.objectives()))
            .collect();
        let main: Vec<usize> = (0..n).collect();
        let backup: Vec<usize> = (n..incumbents.len()).collect();
        let s = state.energy_exponent();
        let kept = energy_subset_select(&points, main, &backup, n, &[], s);
        weights = kept.iter().map(|&i| weights[i].clone()).collect();
        incumbents = kept.iter().map(|&i| incumbents[i].clone()).collect();
    }

    debug_assert_eq!(weights.len(), n);
    let t = state.weights().neighborhood_size();
    state.replace_subproblems(WeightSet::new(weights, t), incumbents);
}

fn most_shared_slot(table: &IncumbentTable) -> Option<usize> {
    let mut best: Option<usize> = None;
    for i in 0..table.len() {
        if table.counts()[i] < 2 {
            continue;
        }
        match best {
            None => best = Some(i),
            Some(b) => {
                if table.counts()[i] > table.counts()[b] {
                    best = Some(i);
                }
            }
        }
    }
    best
}

/// The sorted set of weights that currently have at least one corresponding
/// solution. Solutions refining or trading places inside already-occupied
/// cones leave it unchanged; reaching or abandoning a weight's cone changes
/// it.
pub fn occupied_weights(assignment: &[usize], weight_count: usize) -> Vec<usize> {
    let mut occupied = vec![false; weight_count];
    for &j in assignment {
        occupied[j] = true;
    }
    occupied
        .into_iter()
        .enumerate()
        .filter_map(|(j, occ)| occ.then_some(j))
        .collect()
}

/// Per-generation record of the trigger mechanism's decisions.
#[derive(Debug, Clone, PartialEq)]
pub struct TriggerReport {
    pub generation: u64,
    pub stagnant: bool,
    /// Consecutive unchanged-table observations at this generation.
    pub stagnation_count: usize,
    /// Whether consistency detection ran this generation (it is skipped
    /// entirely when the evolution is not stagnant).
    pub consistency_checked: bool,
    pub consistent: bool,
    pub adapted: bool,
    pub niche_radius: Option<f64>,
    pub archive_size: usize,
}

/// Fraction of the evaluation budget after which adaptation is frozen.
pub const ADAPTATION_FREEZE_FRACTION: f64 = 0.9;

/// One trigger-mechanism step, run once per generation after environmental
/// selection: maintain the archive with this generation's offspring, detect
/// stagnation, and on stagnation compare population and archive
/// distributions, adapting the weights only when they are inconsistent and
/// the run is not in its final budget window.
pub fn atm_step(
    state: &mut EngineState,
    archive: &mut Archive,
    tracker: &mut StagnationTracker,
    offspring: &[Solution],
) -> TriggerReport {
    let s = state.energy_exponent();
    archive_update(archive, offspring, s, state.rng_mut());
    debug_assert!(archive.len() <= archive.capacity());
    debug_assert!({
        let members = archive.members();
        nondominated_indices(members.len(), |i| members[i].objectives()).len() == members.len()
    });

    let assignment = corresponding_weight_indices(
        state.incumbents().iter().map(|s| s.objectives()),
        state.weights(),
        state.ideal(),
    );
    let stagnant = tracker.observe(occupied_weights(&assignment, state.weights().len()));

    let mut report = TriggerReport {
        generation: state.generation(),
        stagnant,
        stagnation_count: tracker.consecutive_unchanged(),
        consistency_checked: false,
        consistent: false,
        adapted: false,
        niche_radius: None,
        archive_size: archive.len(),
    };
    if !stagnant {
        return report;
    }

    let consistency = consistency_detect(state.incumbents(), archive.members());
    report.consistency_checked = true;
    report.consistent = consistency.consistent;
    report.niche_radius = Some(consistency.niche_radius);

    let frozen = state.eval_count() as f64 >= ADAPTATION_FREEZE_FRACTION * state.budget() as f64;
    if !consistency.consistent && !frozen {
        weight_adapt(state, archive, &consistency);
        tracker.reset();
        report.adapted = true;
    }
    report
}
