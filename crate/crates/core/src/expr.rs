//! The expression tree: spectral inputs and zero combined with `min`, `max`,
//! difference, and additively homogeneous means.
//!
//! Expressions are plain immutable values. Every analysis here is a pure
//! function of the tree, so expressions can be shared freely between threads.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::means;

/// Extended-real exponent selecting a mean.
///
/// The infinite tags are exact `min` / `max`; `Finite(0.0)` is the
/// arithmetic mean (for [`means::additive_mean`]) or the geometric mean
/// (for [`means::power_mean`]).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Alpha {
    NegInf,
    Finite(f64),
    PosInf,
}

impl Alpha {
    /// Builds a finite alpha, rejecting NaN and infinities (use the tags).
    pub fn finite(value: f64) -> Result<Self> {
        if value.is_finite() {
            Ok(Alpha::Finite(value))
        } else {
            Err(Error::InvalidAlpha(value))
        }
    }

    /// The alpha as an extended real.
    pub fn as_f64(self) -> f64 {
        match self {
            Alpha::NegInf => f64::NEG_INFINITY,
            Alpha::Finite(v) => v,
            Alpha::PosInf => f64::INFINITY,
        }
    }

    pub fn is_valid(self) -> bool {
        match self {
            Alpha::Finite(v) => v.is_finite(),
            _ => true,
        }
    }

    pub fn total_cmp(&self, other: &Self) -> Ordering {
        self.as_f64().total_cmp(&other.as_f64())
    }
}

impl From<f64> for Alpha {
    /// Maps `±inf` onto the tags. NaN becomes `Finite(NaN)`, which
    /// [`Alpha::is_valid`] rejects.
    fn from(value: f64) -> Self {
        if value == f64::INFINITY {
            Alpha::PosInf
        } else if value == f64::NEG_INFINITY {
            Alpha::NegInf
        } else {
            Alpha::Finite(value)
        }
    }
}

impl fmt::Display for Alpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Alpha::NegInf => f.write_str("-inf"),
            Alpha::PosInf => f.write_str("inf"),
            Alpha::Finite(v) => write!(f, "{v}"),
        }
    }
}

/// Node of an expression tree.
///
/// `Min`, `Max` and `Mean` take two or more operands and `Diff` exactly two.
/// The variants are public for pattern matching; build trees through the
/// checked constructors ([`Expr::min`], [`Expr::diff`], ...) or the parser
/// so the arity invariant holds.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Zero,
    Input(usize),
    Min(Vec<Expr>),
    Max(Vec<Expr>),
    /// `left - right`.
    Diff(Box<[Expr; 2]>),
    Mean(Alpha, Vec<Expr>),
}

/// Conservative additive-homogeneity degree of an expression.
///
/// `One` means `f(s + c) = f(s) + c`, `Zero` means `f(s + c) = f(s)`
/// (volume invariance). `Unknown` makes no claim.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HomogeneityDegree {
    Zero,
    One,
    Unknown,
}

fn check_arity(op: &'static str, children: &[Expr]) -> Result<()> {
    if children.len() < 2 {
        return Err(Error::Arity {
            op,
            expected: "at least 2",
            found: children.len(),
        });
    }
    Ok(())
}

impl Expr {
    pub fn input(channel: usize) -> Self {
        Expr::Input(channel)
    }

    pub fn min(children: Vec<Expr>) -> Result<Self> {
        check_arity("min", &children)?;
        Ok(Expr::Min(children))
    }

    pub fn max(children: Vec<Expr>) -> Result<Self> {
        check_arity("max", &children)?;
        Ok(Expr::Max(children))
    }

    pub fn mean(alpha: Alpha, children: Vec<Expr>) -> Result<Self> {
        if !alpha.is_valid() {
            return Err(Error::InvalidAlpha(alpha.as_f64()));
        }
        check_arity("mean", &children)?;
        Ok(Expr::Mean(alpha, children))
    }

    pub fn diff(left: Expr, right: Expr) -> Self {
        Expr::Diff(Box::new([left, right]))
    }

    /// Binary `min`, infallible.
    pub fn min2(a: Expr, b: Expr) -> Self {
        Expr::Min(vec![a, b])
    }

    /// Binary `max`, infallible.
    pub fn max2(a: Expr, b: Expr) -> Self {
        Expr::Max(vec![a, b])
    }

    pub fn children(&self) -> &[Expr] {
        match self {
            Expr::Zero | Expr::Input(_) => &[],
            Expr::Min(c) | Expr::Max(c) | Expr::Mean(_, c) => c,
            Expr::Diff(pair) => &pair[..],
        }
    }

    pub fn children_mut(&mut self) -> &mut [Expr] {
        match self {
            Expr::Zero | Expr::Input(_) => &mut [],
            Expr::Min(c) | Expr::Max(c) | Expr::Mean(_, c) => c,
            Expr::Diff(pair) => &mut pair[..],
        }
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, Expr::Zero | Expr::Input(_))
    }

    /// Checks the arity and alpha invariants over the whole tree.
    pub fn validate(&self) -> Result<()> {
        match self {
            Expr::Zero | Expr::Input(_) => Ok(()),
            Expr::Min(c) => check_arity("min", c),
            Expr::Max(c) => check_arity("max", c),
            Expr::Mean(alpha, c) => {
                if !alpha.is_valid() {
                    return Err(Error::InvalidAlpha(alpha.as_f64()));
                }
                check_arity("mean", c)
            }
            Expr::Diff(_) => Ok(()),
        }?;
        self.children().iter().try_for_each(Expr::validate)
    }

    /// Channels read by the expression.
    pub fn support(&self) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        self.collect_support(&mut out);
        out
    }

    fn collect_support(&self, out: &mut BTreeSet<usize>) {
        match self {
            Expr::Zero => {}
            Expr::Input(i) => {
                out.insert(*i);
            }
            _ => self.children().iter().for_each(|c| c.collect_support(out)),
        }
    }

    /// Smallest frame width the expression can be evaluated on.
    pub fn min_width(&self) -> usize {
        self.support().last().map_or(0, |&i| i + 1)
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        1 + self.children().iter().map(Expr::size).sum::<usize>()
    }

    /// Longest root-to-leaf path, counted in edges.
    pub fn depth(&self) -> usize {
        self.children()
            .iter()
            .map(|c| c.depth() + 1)
            .max()
            .unwrap_or(0)
    }

    pub fn homogeneity_degree(&self) -> HomogeneityDegree {
        use HomogeneityDegree::*;
        match self {
            Expr::Zero => Zero,
            Expr::Input(_) => One,
            Expr::Min(c) | Expr::Max(c) | Expr::Mean(_, c) => {
                let mut degrees = c.iter().map(Expr::homogeneity_degree);
                let first = degrees.next().unwrap_or(Unknown);
                if first != Unknown && degrees.all(|d| d == first) {
                    first
                } else {
                    Unknown
                }
            }
            Expr::Diff(pair) => {
                let l = pair[0].homogeneity_degree();
                let r = pair[1].homogeneity_degree();
                if l == r && l != Unknown {
                    Zero
                } else {
                    Unknown
                }
            }
        }
    }

    /// Evaluates the expression on one frame.
    pub fn evaluate(&self, frame: &[f64]) -> Result<f64> {
        Ok(match self {
            Expr::Zero => 0.0,
            Expr::Input(i) => *frame.get(*i).ok_or(Error::WidthMismatch {
                channel: *i,
                width: frame.len(),
            })?,
            Expr::Min(c) => {
                let mut acc = f64::INFINITY;
                for child in c {
                    acc = acc.min(child.evaluate(frame)?);
                }
                acc
            }
            Expr::Max(c) => {
                let mut acc = f64::NEG_INFINITY;
                for child in c {
                    acc = acc.max(child.evaluate(frame)?);
                }
                acc
            }
            Expr::Diff(pair) => pair[0].evaluate(frame)? - pair[1].evaluate(frame)?,
            Expr::Mean(alpha, c) => {
                let values = c
                    .iter()
                    .map(|child| child.evaluate(frame))
                    .collect::<Result<Vec<_>>>()?;
                means::additive_mean(*alpha, &values)?
            }
        })
    }

    /// Subtree at `index` in preorder (the root is 0).
    pub fn subtree(&self, index: usize) -> Option<&Expr> {
        let mut remaining = index;
        self.find_preorder(&mut remaining)
    }

    fn find_preorder(&self, remaining: &mut usize) -> Option<&Expr> {
        if *remaining == 0 {
            return Some(self);
        }
        *remaining -= 1;
        for child in self.children() {
            let size = child.size();
            if *remaining < size {
                return child.find_preorder(remaining);
            }
            *remaining -= size;
        }
        None
    }

    /// Mutable subtree at preorder `index`, together with its depth.
    pub fn subtree_mut(&mut self, index: usize) -> Option<(&mut Expr, usize)> {
        let mut node = self;
        let mut remaining = index;
        let mut depth = 0;
        loop {
            if remaining == 0 {
                return Some((node, depth));
            }
            remaining -= 1;
            let mut next = None;
            for child in node.children_mut() {
                let size = child.size();
                if remaining < size {
                    next = Some(child);
                    break;
                }
                remaining -= size;
            }
            node = next?;
            depth += 1;
        }
    }

    /// Depth of the node at preorder `index`.
    pub fn depth_of(&self, index: usize) -> Option<usize> {
        let mut node = self;
        let mut remaining = index;
        let mut depth = 0;
        'outer: loop {
            if remaining == 0 {
                return Some(depth);
            }
            remaining -= 1;
            for child in node.children() {
                let size = child.size();
                if remaining < size {
                    node = child;
                    depth += 1;
                    continue 'outer;
                }
                remaining -= size;
            }
            return None;
        }
    }

    /// Preorder traversal.
    pub fn preorder(&self) -> Vec<&Expr> {
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(node) = stack.pop() {
            out.push(node);
            stack.extend(node.children().iter().rev());
        }
        out
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Zero => f.write_str("0"),
            Expr::Input(i) => write!(f, "s{i}"),
            _ => {
                match self {
                    Expr::Min(_) => f.write_str("(min")?,
                    Expr::Max(_) => f.write_str("(max")?,
                    Expr::Diff(_) => f.write_str("(diff")?,
                    Expr::Mean(alpha, _) => write!(f, "(mean {alpha}")?,
                    Expr::Zero | Expr::Input(_) => unreachable!(),
                }
                for child in self.children() {
                    write!(f, " {child}")?;
                }
                f.write_str(")")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(i: usize) -> Expr {
        Expr::Input(i)
    }

    #[test]
    fn support_follows_the_union_recursion() {
        assert!(Expr::Zero.support().is_empty());
        assert_eq!(s(3).support(), BTreeSet::from([3]));
        let e = Expr::diff(Expr::min2(s(0), s(1)), s(1));
        assert_eq!(e.support(), BTreeSet::from([0, 1]));
        assert_eq!(e.min_width(), 2);
        assert_eq!(Expr::Zero.min_width(), 0);
    }

    #[test]
    fn size_and_depth() {
        assert_eq!((s(0).size(), s(0).depth()), (1, 0));
        let m = Expr::min2(s(0), s(1));
        assert_eq!((m.size(), m.depth()), (3, 1));
        let e = Expr::max2(Expr::min2(s(0), s(1)), Expr::min2(s(2), s(3)));
        assert_eq!((e.size(), e.depth()), (7, 2));
    }

    #[test]
    fn homogeneity_rules() {
        use HomogeneityDegree::*;
        assert_eq!(s(0).homogeneity_degree(), One);
        assert_eq!(Expr::Zero.homogeneity_degree(), Zero);
        let mean = Expr::mean(Alpha::Finite(2.0), vec![s(0), s(1)]).unwrap();
        let e = Expr::diff(mean, Expr::max2(s(2), s(3)));
        assert_eq!(e.homogeneity_degree(), Zero);
        assert_eq!(Expr::diff(s(0), Expr::Zero).homogeneity_degree(), Unknown);
        assert_eq!(Expr::min2(s(0), Expr::Zero).homogeneity_degree(), Unknown);
        let zz = Expr::diff(Expr::diff(s(0), s(1)), Expr::Zero);
        assert_eq!(zz.homogeneity_degree(), Zero);
        assert_eq!(
            Expr::max2(Expr::diff(s(0), s(1)), Expr::Zero).homogeneity_degree(),
            Zero
        );
    }

    #[test]
    fn constructors_enforce_arity() {
        assert!(matches!(
            Expr::min(vec![s(0)]),
            Err(Error::Arity { op: "min", .. })
        ));
        assert!(Expr::max(vec![]).is_err());
        assert!(Expr::mean(Alpha::Finite(f64::NAN), vec![s(0), s(1)]).is_err());
        assert!(Expr::Min(vec![s(0)]).validate().is_err());
        assert!(Expr::diff(s(0), Expr::Max(vec![s(1)])).validate().is_err());
    }

    #[test]
    fn evaluate_basic_nodes() {
        let frame = [5.0, 3.0, 9.0];
        assert_eq!(Expr::diff(s(0), s(1)).evaluate(&frame).unwrap(), 2.0);
        let m = Expr::mean(Alpha::Finite(0.0), vec![s(0), s(1)]).unwrap();
        assert_eq!(m.evaluate(&frame).unwrap(), 4.0);
        let lo = Expr::mean(Alpha::NegInf, vec![s(0), s(1), s(2)]).unwrap();
        assert_eq!(lo.evaluate(&frame).unwrap(), 3.0);
        assert!(matches!(
            s(7).evaluate(&frame),
            Err(Error::WidthMismatch {
                channel: 7,
                width: 3
            })
        ));
    }

    #[test]
    fn preorder_addressing() {
        // (diff (min s0 s1) s2): preorder = diff, min, s0, s1, s2
        let mut e = Expr::diff(Expr::min2(s(0), s(1)), s(2));
        assert_eq!(e.subtree(1), Some(&Expr::min2(s(0), s(1))));
        assert_eq!(e.subtree(3), Some(&s(1)));
        assert_eq!(e.subtree(4), Some(&s(2)));
        assert_eq!(e.subtree(5), None);
        assert_eq!(e.depth_of(3), Some(2));
        assert_eq!(e.depth_of(4), Some(1));
        let (node, depth) = e.subtree_mut(3).unwrap();
        assert_eq!(depth, 2);
        *node = Expr::Zero;
        assert_eq!(e.to_string(), "(diff (min s0 0) s2)");
        assert_eq!(e.preorder().len(), 5);
    }
}
