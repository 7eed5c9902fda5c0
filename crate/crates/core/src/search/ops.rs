//! Random tree generation and the genetic operators.

use rand::Rng;

use super::config::SearchConfig;
use crate::expr::{Alpha, Expr, HomogeneityDegree};

/// Depth and size limits for generated trees.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_depth: usize,
    pub max_size: usize,
}

impl Budget {
    pub fn admits(&self, e: &Expr) -> bool {
        e.depth() <= self.max_depth && e.size() <= self.max_size
    }
}

impl From<&SearchConfig> for Budget {
    fn from(c: &SearchConfig) -> Self {
        Budget {
            max_depth: c.max_depth,
            max_size: c.max_size,
        }
    }
}

const LEAF_PROB: f64 = 0.3;
const ZERO_LEAF_PROB: f64 = 0.1;
const THIRD_CHILD_PROB: f64 = 0.25;
const ALPHA_MUTATION_PROB: f64 = 0.25;
const OPERATOR_RETRIES: usize = 10;

#[derive(Clone, Copy)]
enum Op {
    Min,
    Max,
    Diff,
    Mean,
}

struct Grower<'a, R> {
    width: usize,
    palette: &'a [Alpha],
    rng: &'a mut R,
}

impl<R: Rng> Grower<'_, R> {
    fn leaf(&mut self) -> Expr {
        if self.rng.random_bool(ZERO_LEAF_PROB) {
            Expr::Zero
        } else {
            Expr::Input(self.rng.random_range(0..self.width))
        }
    }

    fn arity(&mut self, op: Op, size: usize) -> usize {
        match op {
            Op::Diff => 2,
            _ if size >= 4 && self.rng.random_bool(THIRD_CHILD_PROB) => 3,
            _ => 2,
        }
    }

    fn node(&mut self, op: Op, children: Vec<Expr>) -> Expr {
        match op {
            Op::Min => Expr::Min(children),
            Op::Max => Expr::Max(children),
            Op::Mean => {
                let alpha = self.palette[self.rng.random_range(0..self.palette.len())];
                Expr::Mean(alpha, children)
            }
            Op::Diff => {
                let mut it = children.into_iter();
                Expr::diff(it.next().unwrap(), it.next().unwrap())
            }
        }
    }

    /// Grows children left to right, reserving one node for each sibling
    /// still to come.
    fn children(
        &mut self,
        arity: usize,
        depth: usize,
        size: usize,
        mut child: impl FnMut(&mut Self, usize, usize, usize) -> Expr,
    ) -> Vec<Expr> {
        let mut remaining = size - 1;
        (0..arity)
            .map(|i| {
                let budget = remaining - (arity - i - 1);
                let c = child(self, i, depth - 1, budget);
                remaining -= c.size();
                c
            })
            .collect()
    }

    fn grow(&mut self, depth: usize, size: usize, root: bool) -> Expr {
        if depth == 0 || size < 3 || (!root && self.rng.random_bool(LEAF_PROB)) {
            return self.leaf();
        }
        let op = [Op::Min, Op::Max, Op::Diff, Op::Mean][self.rng.random_range(0..4)];
        let arity = self.arity(op, size);
        let children = self.children(arity, depth, size, |g, _, d, s| g.grow(d, s, false));
        self.node(op, children)
    }

    /// A degree-one tree: inputs under `min`, `max` and means only.
    fn grow_one(&mut self, depth: usize, size: usize, root: bool) -> Expr {
        if depth == 0 || size < 3 || (!root && self.rng.random_bool(LEAF_PROB)) {
            return Expr::Input(self.rng.random_range(0..self.width));
        }
        let op = [Op::Min, Op::Max, Op::Mean][self.rng.random_range(0..3)];
        let arity = self.arity(op, size);
        let children = self.children(arity, depth, size, |g, _, d, s| g.grow_one(d, s, false));
        self.node(op, children)
    }

    /// A degree-zero tree, mostly differences of degree-one trees.
    fn grow_zero(&mut self, depth: usize, size: usize) -> Expr {
        if depth == 0 || size < 3 {
            return Expr::Zero;
        }
        let roll: f64 = self.rng.random();
        if roll < 0.7 || size < 7 || depth < 2 {
            let children = self.children(2, depth, size, |g, _, d, s| g.grow_one(d, s, false));
            self.node(Op::Diff, children)
        } else if roll < 0.85 {
            let children = self.children(2, depth, size, |g, _, d, s| g.grow_zero(d, s));
            self.node(Op::Diff, children)
        } else {
            let op = [Op::Min, Op::Max, Op::Mean][self.rng.random_range(0..3)];
            let arity = self.arity(op, size);
            let children = self.children(arity, depth, size, |g, _, d, s| g.grow_zero(d, s));
            self.node(op, children)
        }
    }
}

/// Random expression over `s0..s(width-1)` within `budget`.
///
/// Internal nodes are `min`, `max`, `diff`, or a mean with an alpha drawn
/// from `palette`; leaves are inputs nine times out of ten and zero
/// otherwise. The root is internal whenever the budget allows.
///
/// # Panics
///
/// If `width` is zero or `palette` is empty.
pub fn random_expr<R: Rng>(width: usize, budget: Budget, palette: &[Alpha], rng: &mut R) -> Expr {
    assert!(width > 0 && !palette.is_empty());
    Grower {
        width,
        palette,
        rng,
    }
    .grow(budget.max_depth, budget.max_size, true)
}

/// Random expression whose static homogeneity degree is `degree`
/// (`One` or `Zero`). `Unknown` falls back to [`random_expr`].
pub fn random_expr_of_degree<R: Rng>(
    width: usize,
    budget: Budget,
    palette: &[Alpha],
    degree: HomogeneityDegree,
    rng: &mut R,
) -> Expr {
    assert!(width > 0 && !palette.is_empty());
    let mut g = Grower {
        width,
        palette,
        rng,
    };
    match degree {
        HomogeneityDegree::One => g.grow_one(budget.max_depth, budget.max_size, true),
        HomogeneityDegree::Zero => g.grow_zero(budget.max_depth, budget.max_size),
        HomogeneityDegree::Unknown => g.grow(budget.max_depth, budget.max_size, true),
    }
}

/// A fresh individual for the initial population.
pub(crate) fn random_individual<R: Rng>(width: usize, config: &SearchConfig, rng: &mut R) -> Expr {
    let depth = rng.random_range(1..=config.max_depth.clamp(1, 6));
    let budget = Budget {
        max_depth: depth.min(config.max_depth),
        max_size: config.max_size,
    };
    if config.volume_invariant {
        random_expr_of_degree(width, budget, &config.palette, HomogeneityDegree::Zero, rng)
    } else {
        random_expr(width, budget, &config.palette, rng)
    }
}

fn acceptable(e: &Expr, config: &SearchConfig) -> bool {
    Budget::from(config).admits(e)
        && (!config.volume_invariant || e.homogeneity_degree() == HomogeneityDegree::Zero)
}

/// Moves `alpha` to a neighbouring palette entry (or the nearest entry if it
/// is not in the palette).
fn adjacent_alpha<R: Rng>(alpha: Alpha, palette: &[Alpha], rng: &mut R) -> Alpha {
    let at = palette
        .iter()
        .position(|p| p.total_cmp(&alpha).is_eq())
        .unwrap_or_else(|| palette.partition_point(|p| p.total_cmp(&alpha).is_lt()));
    if palette.len() == 1 {
        return palette[0];
    }
    let at = at.min(palette.len() - 1);
    let up = if at == 0 {
        true
    } else if at == palette.len() - 1 {
        false
    } else {
        rng.random_bool(0.5)
    };
    palette[if up { at + 1 } else { at - 1 }]
}

/// Replaces a uniformly chosen subtree with a fresh random one, or nudges
/// one mean's alpha to an adjacent palette entry. Falls back to the parent
/// after repeated budget or constraint violations.
pub fn mutate<R: Rng>(e: &Expr, width: usize, config: &SearchConfig, rng: &mut R) -> Expr {
    let mean_nodes: Vec<usize> = e
        .preorder()
        .iter()
        .enumerate()
        .filter(|(_, n)| matches!(n, Expr::Mean(..)))
        .map(|(i, _)| i)
        .collect();
    for _ in 0..OPERATOR_RETRIES {
        let mut child = e.clone();
        if !mean_nodes.is_empty() && rng.random_bool(ALPHA_MUTATION_PROB) {
            let index = mean_nodes[rng.random_range(0..mean_nodes.len())];
            if let Some((Expr::Mean(alpha, _), _)) = child.subtree_mut(index) {
                *alpha = adjacent_alpha(*alpha, &config.palette, rng);
            }
        } else {
            let total = e.size();
            let index = rng.random_range(0..total);
            let (slot, depth) = child.subtree_mut(index).expect("index within tree");
            let budget = Budget {
                max_depth: config.max_depth.saturating_sub(depth),
                max_size: config.max_size.saturating_sub(total - slot.size()).max(1),
            };
            *slot = if config.volume_invariant {
                let degree = slot.homogeneity_degree();
                random_expr_of_degree(width, budget, &config.palette, degree, rng)
            } else {
                random_expr(width, budget, &config.palette, rng)
            };
        }
        if acceptable(&child, config) {
            return child;
        }
    }
    e.clone()
}

/// Replaces a uniformly chosen subtree of `a` with a uniformly chosen
/// subtree of `b`. Retries up to ten times when the offspring breaks the
/// budget (or the degree-zero constraint), then returns `a`.
pub fn crossover<R: Rng>(a: &Expr, b: &Expr, config: &SearchConfig, rng: &mut R) -> Expr {
    let (size_a, size_b) = (a.size(), b.size());
    for _ in 0..OPERATOR_RETRIES {
        let donor = b
            .subtree(rng.random_range(0..size_b))
            .expect("index within tree")
            .clone();
        let mut child = a.clone();
        let (slot, _) = child
            .subtree_mut(rng.random_range(0..size_a))
            .expect("index within tree");
        *slot = donor;
        if acceptable(&child, config) {
            return child;
        }
    }
    a.clone()
}
