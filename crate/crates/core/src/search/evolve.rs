use std::cmp::Ordering;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::config::SearchConfig;
use super::fitness::fit_threshold;
use super::ops::{crossover, mutate, random_individual};
use crate::classifier::{Classifier, Dataset, Label};
use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::program::Program;

#[derive(Debug, Clone, PartialEq)]
pub struct SearchResult {
    pub best: Classifier,
    pub best_fitness: f64,
    /// Best fitness of the initial population, then of each generation.
    pub fitness_trace: Vec<f64>,
    /// Number of fitness evaluations performed.
    pub evaluations: usize,
}

#[derive(Debug, Clone)]
struct Scored {
    expr: Expr,
    fitness: f64,
    threshold: Option<f64>,
}

/// Individual `a` ranks above `b`: higher fitness, then smaller tree.
fn better(a: &Scored, b: &Scored) -> bool {
    match a.fitness.total_cmp(&b.fitness) {
        Ordering::Greater => true,
        Ordering::Less => false,
        Ordering::Equal => a.expr.size() < b.expr.size(),
    }
}

fn best_index(pop: &[Scored]) -> usize {
    (1..pop.len()).fold(
        0,
        |best, i| if better(&pop[i], &pop[best]) { i } else { best },
    )
}

/// Independent RNG stream per (generation, individual), so breeding can run
/// in parallel and still reproduce bit-for-bit.
fn stream(seed: u64, generation: usize, individual: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((generation as u64) << 32) | individual as u64);
    rng
}

struct Trainer<'a> {
    config: &'a SearchConfig,
    frames: Vec<&'a [f64]>,
    labels: Vec<Label>,
    width: usize,
}

impl Trainer<'_> {
    fn score(&self, population: Vec<Expr>) -> Vec<Scored> {
        population
            .into_par_iter()
            .map(|expr| {
                let values = Program::compile(&expr)
                    .evaluate_all(self.frames.iter().copied())
                    .unwrap_or_default();
                let (threshold, fitness) = if values.len() == self.labels.len() {
                    fit_threshold(self.config.fitness, self.config.kind, &values, &self.labels)
                } else {
                    (None, 0.0)
                };
                Scored {
                    expr,
                    fitness,
                    threshold,
                }
            })
            .collect()
    }

    fn tournament(&self, pop: &[Scored], rng: &mut ChaCha8Rng) -> usize {
        let mut best = rng.random_range(0..pop.len());
        for _ in 1..self.config.tournament {
            let i = rng.random_range(0..pop.len());
            if better(&pop[i], &pop[best]) {
                best = i;
            }
        }
        best
    }

    fn breed(&self, pop: &[Scored], generation: usize) -> Vec<Expr> {
        let elite = pop[best_index(pop)].expr.clone();
        let offspring: Vec<Expr> = (1..pop.len())
            .into_par_iter()
            .map(|i| {
                let mut rng = stream(self.config.seed, generation, i);
                let first = &pop[self.tournament(pop, &mut rng)].expr;
                let mut child = if rng.random_bool(self.config.crossover_prob) {
                    let second = &pop[self.tournament(pop, &mut rng)].expr;
                    crossover(first, second, self.config, &mut rng)
                } else {
                    first.clone()
                };
                if rng.random_bool(self.config.mutation_prob) {
                    child = mutate(&child, self.width, self.config, &mut rng);
                }
                child
            })
            .collect();
        std::iter::once(elite).chain(offspring).collect()
    }
}

/// Tournament-selection genetic programming with single elitism.
///
/// Thresholds for `B`, `A` and `A+` are fitted per candidate by a sweep
/// over its values on the training set. Runs are deterministic for a given
/// dataset and configuration, regardless of thread count.
pub fn evolve(dataset: &Dataset, config: &SearchConfig) -> Result<SearchResult> {
    evolve_observed(dataset, config, |_, _| {})
}

/// [`evolve`], calling `observer(generation, population)` after each
/// population is scored (generation 0 is the initial population).
pub fn evolve_observed(
    dataset: &Dataset,
    config: &SearchConfig,
    mut observer: impl FnMut(usize, &[Expr]),
) -> Result<SearchResult> {
    config.validate()?;
    if dataset.is_empty() {
        return Err(Error::EmptyDataset);
    }
    if dataset.width() == 0 {
        return Err(Error::Dataset("dataset has no channels".into()));
    }
    let labels = dataset
        .frames()
        .iter()
        .enumerate()
        .map(|(row, f)| {
            f.label
                .ok_or_else(|| Error::Dataset(format!("frame {row} is unlabelled")))
        })
        .collect::<Result<Vec<_>>>()?;
    let trainer = Trainer {
        config,
        frames: dataset.frames().iter().map(|f| &f.values[..]).collect(),
        labels,
        width: dataset.width(),
    };

    let initial: Vec<Expr> = (0..config.population)
        .into_par_iter()
        .map(|i| random_individual(trainer.width, config, &mut stream(config.seed, 0, i)))
        .collect();
    let mut population = trainer.score(initial);
    let mut evaluations = population.len();
    let mut trace = vec![population[best_index(&population)].fitness];
    observer(0, &exprs(&population));

    for generation in 1..=config.generations {
        let next = trainer.breed(&population, generation);
        population = trainer.score(next);
        evaluations += population.len();
        trace.push(population[best_index(&population)].fitness);
        observer(generation, &exprs(&population));
    }

    let best = &population[best_index(&population)];
    Ok(SearchResult {
        best: Classifier::new(config.kind, best.expr.clone(), best.threshold)?,
        best_fitness: best.fitness,
        fitness_trace: trace,
        evaluations,
    })
}

fn exprs(pop: &[Scored]) -> Vec<Expr> {
    pop.iter().map(|s| s.expr.clone()).collect()
}
