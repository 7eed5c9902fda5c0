//! Postfix compilation of expressions for evaluating one tree on many frames.

use crate::error::{Error, Result};
use crate::expr::{Alpha, Expr};
use crate::means;

#[derive(Debug, Clone, Copy, PartialEq)]
enum Op {
    Zero,
    Input(usize),
    Min(usize),
    Max(usize),
    Diff,
    Mean(Alpha, usize),
}

/// An expression flattened to postfix order, evaluated with a value stack.
#[derive(Debug, Clone)]
pub struct Program {
    ops: Vec<Op>,
    width: usize,
    stack_size: usize,
}

impl Program {
    pub fn compile(expr: &Expr) -> Self {
        let mut ops = Vec::with_capacity(expr.size());
        emit(expr, &mut ops);
        let mut height = 0usize;
        let mut stack_size = 0;
        for op in &ops {
            height = match *op {
                Op::Zero | Op::Input(_) => height + 1,
                Op::Diff => height - 1,
                Op::Min(n) | Op::Max(n) | Op::Mean(_, n) => height + 1 - n,
            };
            stack_size = stack_size.max(height);
        }
        Self {
            ops,
            width: expr.min_width(),
            stack_size,
        }
    }

    /// Smallest frame width this program reads from.
    pub fn min_width(&self) -> usize {
        self.width
    }

    /// Evaluates on one frame, reusing `stack` as scratch space.
    pub fn evaluate_with(&self, frame: &[f64], stack: &mut Vec<f64>) -> Result<f64> {
        if frame.len() < self.width {
            return Err(Error::WidthMismatch {
                channel: self.width - 1,
                width: frame.len(),
            });
        }
        stack.clear();
        stack.reserve(self.stack_size);
        for op in &self.ops {
            match *op {
                Op::Zero => stack.push(0.0),
                Op::Input(i) => stack.push(frame[i]),
                Op::Min(n) => {
                    let at = stack.len() - n;
                    let v = stack[at..].iter().copied().fold(f64::INFINITY, f64::min);
                    stack.truncate(at);
                    stack.push(v);
                }
                Op::Max(n) => {
                    let at = stack.len() - n;
                    let v = stack[at..]
                        .iter()
                        .copied()
                        .fold(f64::NEG_INFINITY, f64::max);
                    stack.truncate(at);
                    stack.push(v);
                }
                Op::Diff => {
                    let right = stack.pop().expect("postfix underflow");
                    let left = stack.last_mut().expect("postfix underflow");
                    *left -= right;
                }
                Op::Mean(alpha, n) => {
                    let at = stack.len() - n;
                    let v = means::additive_mean(alpha, &stack[at..])?;
                    stack.truncate(at);
                    stack.push(v);
                }
            }
        }
        Ok(stack[0])
    }

    pub fn evaluate(&self, frame: &[f64]) -> Result<f64> {
        self.evaluate_with(frame, &mut Vec::new())
    }

    /// Evaluates on every frame in order.
    pub fn evaluate_all<'a, I>(&self, frames: I) -> Result<Vec<f64>>
    where
        I: IntoIterator<Item = &'a [f64]>,
    {
        let mut stack = Vec::with_capacity(self.stack_size);
        frames
            .into_iter()
            .map(|f| self.evaluate_with(f, &mut stack))
            .collect()
    }
}

fn emit(expr: &Expr, ops: &mut Vec<Op>) {
    for child in expr.children() {
        emit(child, ops);
    }
    ops.push(match expr {
        Expr::Zero => Op::Zero,
        Expr::Input(i) => Op::Input(*i),
        Expr::Min(c) => Op::Min(c.len()),
        Expr::Max(c) => Op::Max(c.len()),
        Expr::Diff(_) => Op::Diff,
        Expr::Mean(a, c) => Op::Mean(*a, c.len()),
    });
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_expr;

    #[test]
    fn agrees_with_tree_evaluation() {
        let frames: [&[f64]; 3] = [&[1.0, 2.0, 3.0, 4.0], &[-3.0, 0.5, 7.0, 2.0], &[0.0; 4]];
        for text in [
            "(diff (mean 2 s0 s1 (max s2 s3)) (min s3 s1))",
            "(mean -inf (diff s0 0) s1 (mean 0.5 s2 s3))",
            "(max (min s0 s1 s2) (diff (diff s3 s0) s1))",
            "0",
        ] {
            let e = parse_expr(text).unwrap();
            let p = Program::compile(&e);
            let batch = p.evaluate_all(frames).unwrap();
            for (frame, v) in frames.iter().zip(batch) {
                assert_eq!(v.to_bits(), e.evaluate(frame).unwrap().to_bits(), "{text}");
            }
        }
    }

    #[test]
    fn width_is_checked() {
        let p = Program::compile(&parse_expr("(diff s0 s4)").unwrap());
        assert_eq!(p.min_width(), 5);
        assert!(matches!(
            p.evaluate(&[1.0, 2.0]),
            Err(Error::WidthMismatch { .. })
        ));
    }
}
