//! Minimal s-expression reader shared by the expression grammars.

use crate::error::{ParseError, ParseErrorKind};

pub(crate) type Pos = (usize, usize);

#[derive(Debug)]
pub(crate) enum SExp<'a> {
    Atom(&'a str, Pos),
    List(Vec<SExp<'a>>, Pos),
}

impl SExp<'_> {
    pub(crate) fn pos(&self) -> Pos {
        match self {
            SExp::Atom(_, p) | SExp::List(_, p) => *p,
        }
    }
}

pub(crate) fn syntax(pos: Pos, message: impl Into<String>) -> ParseError {
    ParseError::new(ParseErrorKind::Syntax, pos, message)
}

struct Reader<'a> {
    text: &'a str,
    offset: usize,
    line: usize,
    column: usize,
}

impl<'a> Reader<'a> {
    fn pos(&self) -> Pos {
        (self.line, self.column)
    }

    fn peek(&self) -> Option<char> {
        self.text[self.offset..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.offset += c.len_utf8();
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.bump();
        }
    }

    fn read(&mut self) -> Result<SExp<'a>, ParseError> {
        self.skip_ws();
        let start = self.pos();
        match self.peek() {
            None => Err(syntax(start, "unexpected end of input")),
            Some(')') => Err(syntax(start, "unexpected `)`")),
            Some('(') => {
                self.bump();
                let mut items = Vec::new();
                loop {
                    self.skip_ws();
                    match self.peek() {
                        None => return Err(syntax(start, "unclosed `(`")),
                        Some(')') => {
                            self.bump();
                            return Ok(SExp::List(items, start));
                        }
                        Some(_) => items.push(self.read()?),
                    }
                }
            }
            Some(_) => {
                let begin = self.offset;
                while self
                    .peek()
                    .is_some_and(|c| !c.is_whitespace() && c != '(' && c != ')')
                {
                    self.bump();
                }
                Ok(SExp::Atom(&self.text[begin..self.offset], start))
            }
        }
    }
}

/// Reads exactly one s-expression; anything but whitespace after it is an error.
pub(crate) fn read_one(text: &str) -> Result<SExp<'_>, ParseError> {
    let mut reader = Reader {
        text,
        offset: 0,
        line: 1,
        column: 1,
    };
    let sexp = reader.read()?;
    reader.skip_ws();
    if reader.peek().is_some() {
        return Err(syntax(reader.pos(), "trailing input after expression"));
    }
    Ok(sexp)
}

/// Parses `<prefix><uint>`, e.g. `s12`.
pub(crate) fn indexed_atom(atom: &str, prefix: &str) -> Option<usize> {
    let digits = atom.strip_prefix(prefix)?;
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    digits.parse().ok()
}
