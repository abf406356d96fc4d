//! The MOEA/D evolutionary engine: initialisation, neighbourhood mating,
//! ideal-point maintenance and environmental selection.

use alloc::format;
use alloc::vec::Vec;

use num_traits::Float;
use rand::Rng;

use crate::error::{Error, Result};
use crate::problems::ProblemSpec;
use crate::rng::RandomSource;
use crate::solution::Solution;
use crate::variation::{polynomial_mutation, sbx, VariationParams};
use crate::weights::{weights_for_population, Scalarizer, WeightSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    /// MOEA/D with the weight adaptation trigger mechanism.
    AtmMoead,
    /// Plain fixed-weight MOEA/D (the baseline).
    MoeadFixed,
}

impl Algorithm {
    pub fn name(&self) -> &'static str {
        match self {
            Algorithm::AtmMoead => "atm-moead",
            Algorithm::MoeadFixed => "moead-fixed",
        }
    }
}

/// Fraction-based knobs that resolve into the concrete run parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunParams {
    /// Stagnation threshold as a fraction of the total generations.
    pub fre_fraction: f64,
    /// Archive capacity as a multiple of the population size.
    pub archive_multiplier: f64,
    /// Neighbourhood size as a fraction of the population size.
    pub t_fraction: f64,
}

impl Default for RunParams {
    fn default() -> Self {
        Self {
            fre_fraction: 0.05,
            archive_multiplier: 2.0,
            t_fraction: 0.10,
        }
    }
}

/// A fully resolved run configuration; together with the seed it determines
/// a run bit for bit.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub problem: ProblemSpec,
    pub algorithm: Algorithm,
    pub population: usize,
    pub budget: u64,
    pub neighborhood: usize,
    pub fre: usize,
    pub archive_capacity: usize,
    pub energy_exponent: f64,
    pub scalarizer: Scalarizer,
    pub variation: VariationParams,
    pub seed: u64,
}

fn default_population(m: usize) -> Option<usize> {
    match m {
        2 => Some(100),
        3 => Some(105),
        5 => Some(220),
        10 => Some(220),
        _ => None,
    }
}

fn default_budget(m: usize) -> Option<u64> {
    match m {
        2 => Some(50_000),
        3 => Some(100_000),
        5 | 10 => Some(150_000),
        _ => None,
    }
}

impl RunConfig {
    /// Standard configuration for a problem: population and budget from the
    /// per-objective-count defaults, neighbourhood 10% of the population,
    /// stagnation threshold 5% of the total generations, archive capacity
    /// twice the population, energy exponent 2M.
    pub fn for_problem(problem: ProblemSpec, algorithm: Algorithm, seed: u64) -> Result<Self> {
        Self::build(problem, algorithm, seed, &RunParams::default(), None, None)
    }

    pub fn build(
        problem: ProblemSpec,
        algorithm: Algorithm,
        seed: u64,
        params: &RunParams,
        population: Option<usize>,
        budget: Option<u64>,
    ) -> Result<Self> {
        let m = problem.objectives();
        let population = population
            .or_else(|| default_population(m))
            .ok_or_else(|| {
                Error::Config(format!(
                    "population: no default for {m} objectives; set it explicitly"
                ))
            })?;
        let budget = budget.or_else(|| default_budget(m)).ok_or_else(|| {
            Error::Config(format!(
                "budget: no default for {m} objectives; set it explicitly"
            ))
        })?;
        let total_generations = budget.div_ceil(population as u64);
        let fre = ((params.fre_fraction * total_generations as f64).round() as usize).max(1);
        let neighborhood = ((params.t_fraction * population as f64).round() as usize).max(2);
        let archive_capacity =
            ((params.archive_multiplier * population as f64).round() as usize).max(2);
        let variation = VariationParams::standard(problem.variables());
        let config = Self {
            problem,
            algorithm,
            population,
            budget,
            neighborhood,
            fre,
            archive_capacity,
            energy_exponent: 2.0 * m as f64,
            scalarizer: Scalarizer::Pbi { theta: 5.0 },
            variation,
            seed,
        };
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        let m = self.problem.objectives();
        if self.population < m {
            return Err(Error::Config(format!(
                "population: {} is below the objective count {m}",
                self.population
            )));
        }
        if self.budget < self.population as u64 {
            return Err(Error::Config(format!(
                "budget: {} cannot cover the initial population of {}",
                self.budget, self.population
            )));
        }
        if self.neighborhood < 2 || self.neighborhood > self.population {
            return Err(Error::Config(format!(
                "neighborhood: {} must lie in [2, population]",
                self.neighborhood
            )));
        }
        if self.fre == 0 {
            return Err(Error::Config(String::from("fre: must be at least 1")));
        }
        if self.archive_capacity < 2 {
            return Err(Error::Config(String::from(
                "archive_capacity: must be at least 2",
            )));
        }
        if self.energy_exponent <= 0.0 {
            return Err(Error::Config(String::from(
                "energy_exponent: must be positive",
            )));
        }
        Ok(())
    }

    /// Total generation count implied by the budget, counting initialisation
    /// as the first generation's worth of evaluations.
    pub fn total_generations(&self) -> u64 {
        self.budget.div_ceil(self.population as u64)
    }
}

use alloc::string::String;

/// Result of one generation pass.
#[derive(Debug)]
pub struct GenerationOutcome {
    pub offspring: Vec<Solution>,
    /// False when the evaluation budget ran out mid-pass.
    pub completed: bool,
}

/// The evolving state: one subproblem per weight, the running ideal point and
/// the evaluation accounting.
#[derive(Debug, Clone)]
pub struct EngineState {
    config: RunConfig,
    weights: WeightSet,
    incumbents: Vec<Solution>,
    ideal: Vec<f64>,
    eval_count: u64,
    generation: u64,
    rng: RandomSource,
}

impl EngineState {
    /// Builds the weight set, samples the initial population uniformly in the
    /// decision box and evaluates it.
    pub fn initialize(config: &RunConfig) -> Result<Self> {
        config.validate()?;
        let m = config.problem.objectives();
        let weights = weights_for_population(m, config.population, config.neighborhood)?;
        let mut rng = RandomSource::new(config.seed);
        let mut eval_count = 0u64;
        let mut incumbents = Vec::with_capacity(config.population);
        for _ in 0..config.population {
            let decision: Vec<f64> = config
                .problem
                .bounds()
                .iter()
                .map(|(lo, hi)| lo + rng.gen::<f64>() * (hi - lo))
                .collect();
            let objectives = config.problem.evaluate(&decision)?;
            eval_count += 1;
            incumbents.push(Solution::new(decision, objectives, eval_count));
        }
        let mut ideal = incumbents[0].objectives().to_vec();
        for sol in &incumbents[1..] {
            for (z, f) in ideal.iter_mut().zip(sol.objectives()) {
                if f < z {
                    *z = *f;
                }
            }
        }
        Ok(Self {
            config: config.clone(),
            weights,
            incumbents,
            ideal,
            eval_count,
            generation: 0,
            rng,
        })
    }

    /// Mates two distinct parents from subproblem `i`'s neighbourhood and
    /// returns the evaluated child (only the first crossover child is used).
    /// Returns `None` once the evaluation budget is exhausted.
    pub fn generate_offspring(&mut self, i: usize) -> Result<Option<Solution>> {
        if self.eval_count >= self.config.budget {
            return Ok(None);
        }
        let neighbors = self.weights.neighbors(i);
        let a = neighbors[self.rng.gen_range(0..neighbors.len())];
        let b = loop {
            let candidate = neighbors[self.rng.gen_range(0..neighbors.len())];
            if candidate != a {
                break candidate;
            }
        };
        let (child, _) = sbx(
            self.incumbents[a].decision(),
            self.incumbents[b].decision(),
            &self.config.variation,
            self.config.problem.bounds(),
            &mut self.rng,
        );
        let decision = polynomial_mutation(
            &child,
            &self.config.variation,
            self.config.problem.bounds(),
            &mut self.rng,
        );
        let objectives = self.config.problem.evaluate(&decision)?;
        self.eval_count += 1;
        Ok(Some(Solution::new(decision, objectives, self.eval_count)))
    }

    /// Updates the ideal point with the child, then replaces every
    /// neighbourhood incumbent the child strictly improves under that
    /// subproblem's scalarisation.
    pub fn environmental_selection(&mut self, i: usize, child: &Solution) {
        for (z, f) in self.ideal.iter_mut().zip(child.objectives()) {
            if f < z {
                *z = *f;
            }
        }
        let scalarizer = self.config.scalarizer;
        for &j in self.weights.neighbors(i) {
            let weight = self.weights.weight(j);
            let challenger = scalarizer.evaluate(child.objectives(), weight, &self.ideal);
            let incumbent =
                scalarizer.evaluate(self.incumbents[j].objectives(), weight, &self.ideal);
            if challenger < incumbent {
                self.incumbents[j] = child.clone();
            }
        }
    }

    /// One pass over all subproblems. The offspring are collected for archive
    /// maintenance. A pass cut short by the budget reports `completed: false`
    /// and leaves the generation counter untouched.
    pub fn run_generation(&mut self) -> Result<GenerationOutcome> {
        let n = self.incumbents.len();
        let mut offspring = Vec::with_capacity(n);
        for i in 0..n {
            match self.generate_offspring(i)? {
                Some(child) => {
                    self.environmental_selection(i, &child);
                    offspring.push(child);
                }
                None => {
                    return Ok(GenerationOutcome {
                        offspring,
                        completed: false,
                    })
                }
            }
        }
        self.generation += 1;
        Ok(GenerationOutcome {
            offspring,
            completed: true,
        })
    }

    pub fn config(&self) -> &RunConfig {
        &self.config
    }

    pub fn weights(&self) -> &WeightSet {
        &self.weights
    }

    pub fn incumbents(&self) -> &[Solution] {
        &self.incumbents
    }

    pub fn ideal(&self) -> &[f64] {
        &self.ideal
    }

    pub fn eval_count(&self) -> u64 {
        self.eval_count
    }

    pub fn budget(&self) -> u64 {
        self.config.budget
    }

    pub fn generation(&self) -> u64 {
        self.generation
    }

    pub fn population_size(&self) -> usize {
        self.incumbents.len()
    }

    pub fn energy_exponent(&self) -> f64 {
        self.config.energy_exponent
    }

    pub(crate) fn rng_mut(&mut self) -> &mut RandomSource {
        &mut self.rng
    }

    /// Swaps in an adapted subproblem set. Weight count and incumbent count
    /// must match; neighbourhoods are already rebuilt by the caller.
    pub(crate) fn replace_subproblems(&mut self, weights: WeightSet, incumbents: Vec<Solution>) {
        debug_assert_eq!(weights.len(), incumbents.len());
        self.weights = weights;
        self.incumbents = incumbents;
    }
}
