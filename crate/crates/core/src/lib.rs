//! An expression algebra over log-scale spectral frames built from four
//! operations: `min`, `max`, difference, and additively homogeneous means.
//!
//! The crate provides
//!
//! - [`expr`] / [`parse`]: the expression tree, its text format, and static
//!   analyses (support, size, depth, homogeneity degree);
//! - [`means`]: numerically stable power means and additive means;
//! - [`network`] / [`quantile`]: sorting networks and min/max circuits for
//!   order statistics;
//! - [`rewrite`]: negation elimination for `[0, 1]` min/max/avg circuits;
//! - [`classifier`]: threshold classifiers with abstention, datasets, metrics;
//! - [`search`]: evolutionary search for discriminators and synthetic data;
//! - [`checks`] / [`cli`]: runnable property suites and the command surface.

pub mod checks;
pub mod classifier;
pub mod cli;
pub mod error;
pub mod expr;
pub mod means;
pub mod network;
pub mod parse;
pub mod program;
pub mod quantile;
pub mod rewrite;
pub mod search;
mod sexpr;

pub use classifier::{
    evaluate_on_dataset, volume_invariance_test, Classifier, ClassifierKind, Dataset, Label,
    Metrics, SpectralFrame, Verdict,
};
pub use error::{Error, ParseError, ParseErrorKind, Result};
pub use expr::{Alpha, Expr, HomogeneityDegree};
pub use network::{batcher_bitonic, optimal_network_8, verify_sorts, ComparatorNetwork};
pub use parse::parse_expr;
pub use program::Program;
pub use quantile::{quantile_circuit, second_largest_depth2, SecondLargest};
pub use rewrite::{eliminate_negation, evaluate_nexpr, NExpr};
