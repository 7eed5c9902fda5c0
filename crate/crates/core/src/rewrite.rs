//! Negation elimination for min/max/average circuits over `[0, 1]` inputs.
//!
//! Negation `¬x = 1 - x` is pushed down to the leaves with the De Morgan
//! identities
//!
//! ```text
//! ¬min(x, y) = max(¬x, ¬y)      ¬max(x, y) = min(¬x, ¬y)
//! ¬avg(x₁..xₙ) = avg(¬x₁..¬xₙ)  ¬¬x = x
//! ```
//!
//! so the result reads only pre-complemented inputs (`ns<i>`) and contains
//! no negation gates. This is a separate tree type on purpose: negation is
//! not an operation of [`Expr`](crate::Expr).

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, ParseError, ParseErrorKind, Result};
use crate::sexpr::{self, SExp};

#[derive(Debug, Clone, PartialEq)]
pub enum NExpr {
    Input(usize),
    /// The complemented input `1 - s_i`.
    NegInput(usize),
    Neg(Box<NExpr>),
    Min(Vec<NExpr>),
    Max(Vec<NExpr>),
    /// Arithmetic mean.
    Avg(Vec<NExpr>),
}

impl NExpr {
    #[allow(clippy::should_implement_trait)]
    pub fn neg(child: NExpr) -> Self {
        NExpr::Neg(Box::new(child))
    }

    pub fn children(&self) -> &[NExpr] {
        match self {
            NExpr::Input(_) | NExpr::NegInput(_) => &[],
            NExpr::Neg(c) => std::slice::from_ref(&**c),
            NExpr::Min(c) | NExpr::Max(c) | NExpr::Avg(c) => c,
        }
    }

    pub fn size(&self) -> usize {
        1 + self.children().iter().map(NExpr::size).sum::<usize>()
    }

    /// Number of `Neg` nodes.
    pub fn neg_count(&self) -> usize {
        usize::from(matches!(self, NExpr::Neg(_)))
            + self.children().iter().map(NExpr::neg_count).sum::<usize>()
    }

    /// Rewrites into an equivalent tree without `Neg` nodes. Never grows the
    /// tree and leaves negation-free trees unchanged.
    pub fn eliminate_negation(&self) -> NExpr {
        self.push_down(false)
    }

    fn push_down(&self, negate: bool) -> NExpr {
        let map = |c: &[NExpr]| c.iter().map(|e| e.push_down(negate)).collect();
        match (self, negate) {
            (NExpr::Input(i), false) | (NExpr::NegInput(i), true) => NExpr::Input(*i),
            (NExpr::Input(i), true) | (NExpr::NegInput(i), false) => NExpr::NegInput(*i),
            (NExpr::Neg(c), _) => c.push_down(!negate),
            (NExpr::Min(c), false) | (NExpr::Max(c), true) => NExpr::Min(map(c)),
            (NExpr::Max(c), false) | (NExpr::Min(c), true) => NExpr::Max(map(c)),
            (NExpr::Avg(c), _) => NExpr::Avg(map(c)),
        }
    }

    /// Evaluates on a frame whose entries all lie in `[0, 1]`.
    pub fn evaluate(&self, frame: &[f64]) -> Result<f64> {
        if let Some((channel, &value)) = frame
            .iter()
            .enumerate()
            .find(|(_, v)| !(0.0..=1.0).contains(*v))
        {
            return Err(Error::OutOfRange { channel, value });
        }
        self.eval(frame)
    }

    fn eval(&self, frame: &[f64]) -> Result<f64> {
        let read = |i: usize| {
            frame.get(i).copied().ok_or(Error::WidthMismatch {
                channel: i,
                width: frame.len(),
            })
        };
        Ok(match self {
            NExpr::Input(i) => read(*i)?,
            NExpr::NegInput(i) => 1.0 - read(*i)?,
            NExpr::Neg(c) => 1.0 - c.eval(frame)?,
            NExpr::Min(c) => c.iter().try_fold(f64::INFINITY, |acc, e| {
                Ok::<_, Error>(acc.min(e.eval(frame)?))
            })?,
            NExpr::Max(c) => c.iter().try_fold(f64::NEG_INFINITY, |acc, e| {
                Ok::<_, Error>(acc.max(e.eval(frame)?))
            })?,
            NExpr::Avg(c) => {
                c.iter()
                    .try_fold(0.0, |acc, e| Ok::<_, Error>(acc + e.eval(frame)?))?
                    / c.len() as f64
            }
        })
    }
}

/// Free-function form of [`NExpr::eliminate_negation`].
pub fn eliminate_negation(e: &NExpr) -> NExpr {
    e.eliminate_negation()
}

/// Free-function form of [`NExpr::evaluate`].
pub fn evaluate_nexpr(e: &NExpr, frame: &[f64]) -> Result<f64> {
    e.evaluate(frame)
}

impl fmt::Display for NExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let head = match self {
            NExpr::Input(i) => return write!(f, "s{i}"),
            NExpr::NegInput(i) => return write!(f, "ns{i}"),
            NExpr::Neg(_) => "neg",
            NExpr::Min(_) => "min",
            NExpr::Max(_) => "max",
            NExpr::Avg(_) => "avg",
        };
        write!(f, "({head}")?;
        for c in self.children() {
            write!(f, " {c}")?;
        }
        f.write_str(")")
    }
}

impl FromStr for NExpr {
    type Err = ParseError;

    /// Parses `s<i>`, `ns<i>`, `(neg e)`, and `min` / `max` / `avg` with two
    /// or more operands.
    fn from_str(text: &str) -> Result<Self, ParseError> {
        convert(&sexpr::read_one(text)?)
    }
}

fn convert(sexp: &SExp<'_>) -> Result<NExpr, ParseError> {
    match sexp {
        SExp::Atom(atom, pos) => sexpr::indexed_atom(atom, "s")
            .map(NExpr::Input)
            .or_else(|| sexpr::indexed_atom(atom, "ns").map(NExpr::NegInput))
            .ok_or_else(|| sexpr::syntax(*pos, format!("unknown atom `{atom}`"))),
        SExp::List(items, pos) => {
            let Some((SExp::Atom(head, hpos), rest)) = items.split_first() else {
                return Err(sexpr::syntax(*pos, "expected an operator after `(`"));
            };
            let mut children = rest.iter().map(convert).collect::<Result<Vec<_>, _>>()?;
            let arity_error = |expected: &str| {
                ParseError::new(
                    ParseErrorKind::Arity,
                    *pos,
                    format!("`{head}` needs {expected} operands, got {}", children.len()),
                )
            };
            match *head {
                "neg" if children.len() == 1 => Ok(NExpr::neg(children.pop().unwrap())),
                "neg" => Err(arity_error("exactly 1")),
                "min" | "max" | "avg" if children.len() < 2 => Err(arity_error("at least 2")),
                "min" => Ok(NExpr::Min(children)),
                "max" => Ok(NExpr::Max(children)),
                "avg" => Ok(NExpr::Avg(children)),
                other => Err(sexpr::syntax(*hpos, format!("unknown operator `{other}`"))),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str) -> NExpr {
        text.parse().unwrap()
    }

    #[test]
    fn de_morgan_cases() {
        assert_eq!(
            p("(neg (min s0 s1))").eliminate_negation(),
            p("(max ns0 ns1)")
        );
        assert_eq!(p("(neg (neg s2))").eliminate_negation(), p("s2"));
        assert_eq!(
            p("(neg (avg s0 (max s1 s2)))").eliminate_negation(),
            p("(avg ns0 (min ns1 ns2))")
        );
        assert_eq!(p("(neg ns4)").eliminate_negation(), p("s4"));
        assert_eq!(
            p("(min (neg (max s0 ns1)) s2)").eliminate_negation(),
            p("(min (min ns0 s1) s2)")
        );
    }

    #[test]
    fn evaluation() {
        assert_eq!(p("(min s0 s1)").evaluate(&[0.3, 0.8]).unwrap(), 0.3);
        assert_eq!(p("(neg s0)").evaluate(&[0.25, 0.5]).unwrap(), 0.75);
        assert_eq!(p("ns0").evaluate(&[0.25]).unwrap(), 0.75);
        assert!((p("(avg s0 s1)").evaluate(&[0.2, 0.6]).unwrap() - 0.4).abs() < 1e-15);
        assert!(matches!(
            p("s0").evaluate(&[1.5]),
            Err(Error::OutOfRange { channel: 0, .. })
        ));
        assert!(p("s0").evaluate(&[-0.1]).is_err());
        assert!(matches!(
            p("s3").evaluate(&[0.5]),
            Err(Error::WidthMismatch { .. })
        ));
    }

    #[test]
    fn parse_print() {
        for text in ["(neg (avg s0 ns1 s2))", "(max (min s0 s1) (neg ns3))"] {
            assert_eq!(p(text).to_string(), text);
        }
        assert_eq!(
            "(neg s0 s1)".parse::<NExpr>().unwrap_err().kind,
            ParseErrorKind::Arity
        );
        assert!("(avg s0)".parse::<NExpr>().is_err());
        assert!("(diff s0 s1)".parse::<NExpr>().is_err());
        assert!("0".parse::<NExpr>().is_err());
    }

    #[test]
    fn sizes_and_counts() {
        let e = p("(neg (min (neg s0) s1))");
        assert_eq!(e.neg_count(), 2);
        let out = e.eliminate_negation();
        assert_eq!(out.neg_count(), 0);
        assert_eq!(out.size(), 3);
        let clean = p("(avg s0 (max ns1 s2))");
        assert_eq!(clean.eliminate_negation(), clean);
    }
}
