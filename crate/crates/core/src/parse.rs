//! Text format for expressions.
//!
//! ```text
//! expr  := "0" | "s"<uint> | "(min" expr expr+ ")" | "(max" expr expr+ ")"
//!        | "(diff" expr expr ")" | "(mean" alpha expr expr+ ")"
//! alpha := "-inf" | "inf" | decimal literal
//! ```
//!
//! Printing goes through [`std::fmt::Display`] on [`Expr`]; the printed form
//! is canonical (single spaces, shortest round-tripping alpha literals).

use std::str::FromStr;

use crate::error::{ParseError, ParseErrorKind};
use crate::expr::{Alpha, Expr};
use crate::sexpr::{self, SExp};

pub fn parse_expr(text: &str) -> Result<Expr, ParseError> {
    convert(&sexpr::read_one(text)?)
}

impl FromStr for Expr {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_expr(s)
    }
}

/// Parses an alpha literal: `-inf`, `inf`, or a plain decimal such as `-2`
/// or `0.5`.
pub fn parse_alpha(text: &str) -> Option<Alpha> {
    match text {
        "-inf" => return Some(Alpha::NegInf),
        "inf" => return Some(Alpha::PosInf),
        _ => {}
    }
    let body = text.strip_prefix('-').unwrap_or(text);
    let (int, frac) = match body.split_once('.') {
        Some((i, f)) => (i, Some(f)),
        None => (body, None),
    };
    let digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    if !digits(int) || frac.is_some_and(|f| !digits(f)) {
        return None;
    }
    let value: f64 = text.parse().ok()?;
    value.is_finite().then_some(Alpha::Finite(value))
}

fn arity(pos: sexpr::Pos, message: String) -> ParseError {
    ParseError::new(ParseErrorKind::Arity, pos, message)
}

fn convert(sexp: &SExp<'_>) -> Result<Expr, ParseError> {
    match sexp {
        SExp::Atom("0", _) => Ok(Expr::Zero),
        SExp::Atom(atom, pos) => sexpr::indexed_atom(atom, "s")
            .map(Expr::Input)
            .ok_or_else(|| sexpr::syntax(*pos, format!("unknown atom `{atom}`"))),
        SExp::List(items, pos) => {
            let Some((SExp::Atom(head, _), rest)) = items.split_first() else {
                return Err(sexpr::syntax(*pos, "expected an operator after `(`"));
            };
            match *head {
                "min" | "max" => {
                    let children = convert_all(rest)?;
                    if children.len() < 2 {
                        return Err(arity(
                            *pos,
                            format!("`{head}` needs at least 2 operands, got {}", children.len()),
                        ));
                    }
                    Ok(if *head == "min" {
                        Expr::Min(children)
                    } else {
                        Expr::Max(children)
                    })
                }
                "diff" => {
                    let mut children = convert_all(rest)?;
                    if children.len() != 2 {
                        return Err(arity(
                            *pos,
                            format!("`diff` needs exactly 2 operands, got {}", children.len()),
                        ));
                    }
                    let right = children.pop().unwrap();
                    let left = children.pop().unwrap();
                    Ok(Expr::diff(left, right))
                }
                "mean" => {
                    let Some((alpha, operands)) = rest.split_first() else {
                        return Err(arity(*pos, "`mean` needs an alpha and operands".into()));
                    };
                    let alpha = match alpha {
                        SExp::Atom(text, apos) => parse_alpha(text).ok_or_else(|| {
                            ParseError::new(
                                ParseErrorKind::Alpha,
                                *apos,
                                format!("malformed alpha literal `{text}`"),
                            )
                        })?,
                        SExp::List(_, apos) => {
                            return Err(ParseError::new(
                                ParseErrorKind::Alpha,
                                *apos,
                                "expected an alpha literal",
                            ))
                        }
                    };
                    let children = convert_all(operands)?;
                    if children.len() < 2 {
                        return Err(arity(
                            *pos,
                            format!("`mean` needs at least 2 operands, got {}", children.len()),
                        ));
                    }
                    Ok(Expr::Mean(alpha, children))
                }
                other => Err(sexpr::syntax(
                    items[0].pos(),
                    format!("unknown operator `{other}`"),
                )),
            }
        }
    }
}

fn convert_all(items: &[SExp<'_>]) -> Result<Vec<Expr>, ParseError> {
    items.iter().map(convert).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grammar_cases() {
        assert_eq!(
            parse_expr("(min s0 s1)").unwrap(),
            Expr::min2(Expr::Input(0), Expr::Input(1))
        );
        let e = parse_expr("(diff (mean inf s0 s1) (mean -inf s0 s1))").unwrap();
        let pair = vec![Expr::Input(0), Expr::Input(1)];
        assert_eq!(
            e,
            Expr::diff(
                Expr::Mean(Alpha::PosInf, pair.clone()),
                Expr::Mean(Alpha::NegInf, pair)
            )
        );
        assert_eq!(parse_expr("0").unwrap(), Expr::Zero);
        assert_eq!(
            parse_expr(" (max\n s3\t0 s1 ) ").unwrap().to_string(),
            "(max s3 0 s1)"
        );
    }

    #[test]
    fn canonical_text_round_trips() {
        for text in [
            "(mean 0.5 s0 (diff s1 0) s2)",
            "(mean -2 s0 s1)",
            "(mean 0 s0 s1)",
            "(min (max s0 s1) (mean -inf s2 s3 s4))",
            "s17",
        ] {
            assert_eq!(parse_expr(text).unwrap().to_string(), text);
        }
    }

    #[test]
    fn alpha_literals() {
        assert_eq!(parse_alpha("0"), Some(Alpha::Finite(0.0)));
        assert_eq!(parse_alpha("-2"), Some(Alpha::Finite(-2.0)));
        assert_eq!(parse_alpha("0.5"), Some(Alpha::Finite(0.5)));
        assert_eq!(parse_alpha("0.0000001"), Some(Alpha::Finite(1e-7)));
        for bad in [
            "", "-", "1.", ".5", "1e3", "+1", "nan", "infinity", "+inf", "--1",
        ] {
            assert_eq!(parse_alpha(bad), None, "{bad}");
        }
    }

    #[test]
    fn error_kinds_and_locations() {
        let e = parse_expr("(min s0)").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::Arity);
        let e = parse_expr("(diff s0 s1 s2)").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::Arity);
        let e = parse_expr("(mean 1e3 s0 s1)").unwrap_err();
        assert_eq!((e.kind, e.line, e.column), (ParseErrorKind::Alpha, 1, 7));
        let e = parse_expr("(min s0\n  x1)").unwrap_err();
        assert_eq!((e.kind, e.line, e.column), (ParseErrorKind::Syntax, 2, 3));
        let e = parse_expr("(avg s0 s1)").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::Syntax);
        assert!(parse_expr("(min s0 s1) s2").is_err());
        assert!(parse_expr("((min) s0)").is_err());
    }
}
