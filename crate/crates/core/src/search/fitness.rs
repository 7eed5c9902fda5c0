//! Fitness scoring and threshold fitting for candidate expressions.

use super::config::Fitness;
use crate::classifier::{decide, ClassifierKind, Label, Verdict};

/// Most thresholds tried for [`Fitness::Margin`], whose score costs a full
/// pass over the data per candidate.
const MARGIN_CANDIDATES: usize = 65;

/// Fitness of fixed verdicts. `values` are `f(s)` per frame.
pub fn score(
    fitness: Fitness,
    kind: ClassifierKind,
    c: f64,
    values: &[f64],
    labels: &[Label],
) -> f64 {
    if values.iter().any(|v| !v.is_finite()) || values.is_empty() {
        return 0.0;
    }
    match fitness {
        Fitness::Margin => {
            values
                .iter()
                .zip(labels)
                .map(|(&v, &l)| {
                    let y = if l == Label::Class1 { 1.0 } else { -1.0 };
                    0.5 * (1.0 + (y * (c - v)).tanh())
                })
                .sum::<f64>()
                / values.len() as f64
        }
        _ => {
            let (mut decided, mut correct) = (0usize, 0usize);
            for (&v, &l) in values.iter().zip(labels) {
                let verdict = decide(kind, c, v);
                if verdict != Verdict::Abstain {
                    decided += 1;
                    correct += usize::from(verdict.label() == Some(l));
                }
            }
            counts_to_fitness(fitness, correct, decided, values.len())
        }
    }
}

fn counts_to_fitness(fitness: Fitness, correct: usize, decided: usize, total: usize) -> f64 {
    match fitness {
        Fitness::Accuracy if decided == 0 => 0.0,
        Fitness::Accuracy => correct as f64 / decided as f64,
        _ => correct as f64 / total as f64,
    }
}

/// Candidate thresholds: midpoints between consecutive distinct sorted
/// values plus one point beyond each end. `A+` keeps only `c ≤ 0` and
/// always includes `0`.
fn candidates(kind: ClassifierKind, sorted: &[f64]) -> Vec<f64> {
    let (lo, hi) = (sorted[0], sorted[sorted.len() - 1]);
    let mut out = vec![lo - 1.0];
    out.extend(
        sorted
            .windows(2)
            .filter(|w| w[0] < w[1])
            .map(|w| w[0] / 2.0 + w[1] / 2.0),
    );
    out.push(hi + 1.0);
    if kind == ClassifierKind::APlus {
        out.retain(|&c| c <= 0.0);
        let at = out.partition_point(|&c| c < 0.0);
        if out.get(at) != Some(&0.0) {
            out.insert(at, 0.0);
        }
    }
    out
}

/// Best threshold for `kind` by sweeping [`candidates`]; ties go to the
/// smallest threshold. `Z` is scored at its fixed threshold and returns
/// `None`.
pub fn fit_threshold(
    fitness: Fitness,
    kind: ClassifierKind,
    values: &[f64],
    labels: &[Label],
) -> (Option<f64>, f64) {
    if kind == ClassifierKind::Z || values.is_empty() || values.iter().any(|v| !v.is_finite()) {
        let c = if kind == ClassifierKind::Z {
            None
        } else {
            Some(0.0)
        };
        return (c, score(fitness, kind, 0.0, values, labels));
    }
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let sorted: Vec<f64> = order.iter().map(|&i| values[i]).collect();
    let mut cands = candidates(kind, &sorted);

    if fitness == Fitness::Margin {
        if cands.len() > MARGIN_CANDIDATES {
            let last = cands.len() - 1;
            cands = (0..MARGIN_CANDIDATES)
                .map(|i| cands[i * last / (MARGIN_CANDIDATES - 1)])
                .collect();
        }
        return best_of(
            cands
                .into_iter()
                .map(|c| (c, score(fitness, kind, c, values, labels))),
        );
    }

    // class1_before[k]: class-1 frames among the k smallest values
    let mut class1_before = vec![0usize; sorted.len() + 1];
    for (k, &i) in order.iter().enumerate() {
        class1_before[k + 1] = class1_before[k] + usize::from(labels[i] == Label::Class1);
    }
    let n = sorted.len();
    let two_sided = !kind.is_one_sided();
    best_of(cands.into_iter().map(|c| {
        let below = sorted.partition_point(|&v| v < c);
        let not_above = sorted.partition_point(|&v| v <= c);
        let mut correct = class1_before[below];
        let mut decided = below;
        if two_sided {
            let above = n - not_above;
            correct += above - (class1_before[n] - class1_before[not_above]);
            decided += above;
        }
        (c, counts_to_fitness(fitness, correct, decided, n))
    }))
}

fn best_of(scored: impl Iterator<Item = (f64, f64)>) -> (Option<f64>, f64) {
    let mut best = (None, f64::NEG_INFINITY);
    for (c, f) in scored {
        if f > best.1 {
            best = (Some(c), f);
        }
    }
    best
}
