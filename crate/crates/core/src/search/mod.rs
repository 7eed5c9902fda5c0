//! Evolutionary search for discriminating expressions.
//!
//! Candidates are expression trees over a finite alpha palette; each is
//! scored as a classifier on a labelled dataset and improved by
//! tournament-selection genetic programming.

mod config;
mod evolve;
mod fitness;
mod ops;
mod synthetic;

pub use config::{default_palette, Fitness, SearchConfig};
pub use evolve::{evolve, evolve_observed, SearchResult};
pub use fitness::{fit_threshold, score};
pub use ops::{crossover, mutate, random_expr, random_expr_of_degree, Budget};
pub use synthetic::{generate_synthetic, SyntheticDraw, SyntheticSpec};
