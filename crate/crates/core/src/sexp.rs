//! A small s-expression reader shared by the term, lexicon, tree, formula and
//! model file formats.
//!
//! Atoms are either bare symbols or double-quoted strings. `;` starts a comment
//! that runs to the end of the line. Every datum remembers where it started so
//! that callers can report line/column positions.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Datum {
    Sym(String, Pos),
    Str(String, Pos),
    List(Vec<Datum>, Pos),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SexpError {
    #[error("{pos}: unbalanced parenthesis, list opened here is never closed")]
    Unclosed { pos: Pos },
    #[error("{pos}: unexpected ')'")]
    UnexpectedClose { pos: Pos },
    #[error("{pos}: unterminated string literal")]
    UnterminatedString { pos: Pos },
    #[error("{pos}: expected a single datum, found trailing input")]
    Trailing { pos: Pos },
    #[error("empty input")]
    Empty,
}

impl Datum {
    pub fn pos(&self) -> Pos {
        match self {
            Datum::Sym(_, p) | Datum::Str(_, p) | Datum::List(_, p) => *p,
        }
    }

    pub fn as_sym(&self) -> Option<&str> {
        match self {
            Datum::Sym(s, _) => Some(s),
            _ => None,
        }
    }

    /// Symbol or string contents.
    pub fn as_atom(&self) -> Option<&str> {
        match self {
            Datum::Sym(s, _) | Datum::Str(s, _) => Some(s),
            Datum::List(..) => None,
        }
    }

    pub fn as_list(&self) -> Option<&[Datum]> {
        match self {
            Datum::List(items, _) => Some(items),
            _ => None,
        }
    }

    /// The head symbol of a list, if any.
    pub fn head(&self) -> Option<&str> {
        self.as_list().and_then(|l| l.first()).and_then(Datum::as_sym)
    }
}

impl fmt::Display for Datum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Datum::Sym(s, _) => f.write_str(s),
            Datum::Str(s, _) => write!(f, "{s:?}"),
            Datum::List(items, _) => {
                f.write_str("(")?;
                for (i, d) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    write!(f, "{d}")?;
                }
                f.write_str(")")
            }
        }
    }
}

struct Reader<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    pos: Pos,
}

impl<'a> Reader<'a> {
    fn new(text: &'a str) -> Self {
        Reader {
            chars: text.chars().peekable(),
            pos: Pos { line: 1, col: 1 },
        }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.pos.line += 1;
            self.pos.col = 1;
        } else {
            self.pos.col += 1;
        }
        Some(c)
    }

    fn skip_ws(&mut self) {
        while let Some(&c) = self.chars.peek() {
            if c == ';' {
                while let Some(c) = self.bump() {
                    if c == '\n' {
                        break;
                    }
                }
            } else if c.is_whitespace() {
                self.bump();
            } else {
                break;
            }
        }
    }

    fn datum(&mut self) -> Result<Option<Datum>, SexpError> {
        self.skip_ws();
        let start = self.pos;
        match self.chars.peek().copied() {
            None => Ok(None),
            Some('(') => {
                self.bump();
                let mut items = Vec::new();
                loop {
                    self.skip_ws();
                    match self.chars.peek() {
                        None => return Err(SexpError::Unclosed { pos: start }),
                        Some(')') => {
                            self.bump();
                            return Ok(Some(Datum::List(items, start)));
                        }
                        Some(_) => {
                            if let Some(d) = self.datum()? {
                                items.push(d);
                            }
                        }
                    }
                }
            }
            Some(')') => Err(SexpError::UnexpectedClose { pos: start }),
            Some('"') => {
                self.bump();
                let mut s = String::new();
                loop {
                    match self.bump() {
                        None => return Err(SexpError::UnterminatedString { pos: start }),
                        Some('"') => return Ok(Some(Datum::Str(s, start))),
                        Some('\\') => match self.bump() {
                            Some('n') => s.push('\n'),
                            Some(c) => s.push(c),
                            None => return Err(SexpError::UnterminatedString { pos: start }),
                        },
                        Some(c) => s.push(c),
                    }
                }
            }
            Some(_) => {
                let mut s = String::new();
                while let Some(&c) = self.chars.peek() {
                    if c.is_whitespace() || c == '(' || c == ')' || c == ';' || c == '"' {
                        break;
                    }
                    s.push(c);
                    self.bump();
                }
                Ok(Some(Datum::Sym(s, start)))
            }
        }
    }
}

/// Reads every top-level datum in `text`.
pub fn parse_all(text: &str) -> Result<Vec<Datum>, SexpError> {
    let mut r = Reader::new(text);
    let mut out = Vec::new();
    while let Some(d) = r.datum()? {
        out.push(d);
    }
    Ok(out)
}

/// Reads exactly one datum.
pub fn parse_one(text: &str) -> Result<Datum, SexpError> {
    let mut r = Reader::new(text);
    let d = r.datum()?.ok_or(SexpError::Empty)?;
    r.skip_ws();
    if r.chars.peek().is_some() {
        return Err(SexpError::Trailing { pos: r.pos });
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_nested_lists_and_comments() {
        let d = parse_one("(lam x ani ; binder\n (chat x))").unwrap();
        assert_eq!(d.to_string(), "(lam x ani (chat x))");
        assert_eq!(d.head(), Some("lam"));
    }

    #[test]
    fn strings_are_atoms() {
        let all = parse_all(r#"(entry "un" x) "a b""#).unwrap();
        assert_eq!(all.len(), 2);
        assert_eq!(all[1].as_atom(), Some("a b"));
    }

    #[test]
    fn unbalanced_reports_opening_position() {
        let err = parse_one("\n  (lam x").unwrap_err();
        assert_eq!(err, SexpError::Unclosed { pos: Pos { line: 2, col: 3 } });
        assert!(matches!(parse_one("x)"), Err(SexpError::Trailing { .. })));
        assert!(matches!(parse_one(")"), Err(SexpError::UnexpectedClose { .. })));
    }
}
