//! Readers for the ascii and s-expression renderings of formulas.

use std::collections::HashMap;

use super::{EpsMode, Formula, LTerm, LogicError};
use crate::kernel::{Type, TypingContext, E, T};
use crate::sexp::{self, Datum};

/// Sorts of the individual constants and function symbols a formula may
/// mention. Names it does not list are constants of sort `e`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Signature {
    consts: HashMap<String, String>,
    functions: HashMap<String, String>,
}

impl Signature {
    pub fn new() -> Self {
        Self::default()
    }

    /// Entity constants and function symbols declared in `ctx`.
    pub fn from_context(ctx: &TypingContext) -> Self {
        let mut sig = Signature::new();
        for (name, ty) in ctx.constants() {
            match ty {
                Type::Sort(s) if s != T => {
                    sig.consts.insert(name.to_string(), s.clone());
                }
                Type::Arrow(..) => {
                    let mut cur = ty;
                    while let Type::Arrow(_, cod) = cur {
                        cur = cod;
                    }
                    if let Some(s) = cur.as_sort().filter(|s| *s != T) {
                        sig.functions.insert(name.to_string(), s.to_string());
                    }
                }
                _ => {}
            }
        }
        sig
    }

    /// The constants and function symbols occurring in `f`.
    pub fn of(f: &Formula) -> Self {
        let mut sig = Signature::new();
        sig.absorb(f);
        sig
    }

    pub fn absorb(&mut self, f: &Formula) {
        f.visit_terms(&mut |t| match t {
            LTerm::Const { name, sort } => {
                self.consts.insert(name.clone(), sort.clone());
            }
            LTerm::App { name, sort, .. } => {
                self.functions.insert(name.clone(), sort.clone());
            }
            _ => {}
        });
    }

    pub fn with_const(mut self, name: impl Into<String>, sort: impl Into<String>) -> Self {
        self.consts.insert(name.into(), sort.into());
        self
    }

    pub fn with_function(mut self, name: impl Into<String>, sort: impl Into<String>) -> Self {
        self.functions.insert(name.into(), sort.into());
        self
    }

    pub fn const_sort(&self, name: &str) -> &str {
        self.consts.get(name).map(String::as_str).unwrap_or(E)
    }

    pub fn function_sort(&self, name: &str) -> &str {
        self.functions.get(name).map(String::as_str).unwrap_or(E)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    LParen,
    RParen,
    LBrack,
    RBrack,
    Comma,
    Dot,
    Colon,
    Not,
    And,
    Or,
    Arrow,
    Equals,
}

const RESERVED: [&str; 7] = ["exists", "forall", "true", "false", "eps", "tau", "the"];

fn line_col(text: &str, offset: usize) -> String {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.rsplit('\n').next().map(|l| l.chars().count()).unwrap_or(0) + 1;
    format!("{line}:{col}")
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, LogicError> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(i, c)) = chars.peek() {
        let single = match c {
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '[' => Some(Tok::LBrack),
            ']' => Some(Tok::RBrack),
            ',' => Some(Tok::Comma),
            '.' => Some(Tok::Dot),
            ':' => Some(Tok::Colon),
            '~' | '¬' => Some(Tok::Not),
            '&' | '∧' => Some(Tok::And),
            '|' | '∨' => Some(Tok::Or),
            '→' => Some(Tok::Arrow),
            '=' => Some(Tok::Equals),
            '∃' => Some(Tok::Ident("exists".into())),
            '∀' => Some(Tok::Ident("forall".into())),
            'ε' => Some(Tok::Ident("eps".into())),
            'τ' => Some(Tok::Ident("tau".into())),
            'ι' => Some(Tok::Ident("the".into())),
            _ => None,
        };
        if let Some(tok) = single {
            out.push((tok, i));
            chars.next();
        } else if c.is_whitespace() {
            chars.next();
        } else if c == '-' {
            chars.next();
            match chars.next() {
                Some((_, '>')) => out.push((Tok::Arrow, i)),
                _ => return Err(LogicError::Parse { at: line_col(text, i), message: "expected `->`".into() }),
            }
        } else if c.is_alphanumeric() || c == '_' || c == '\'' {
            let mut name = String::new();
            while let Some(&(_, c)) = chars.peek() {
                if (c.is_alphanumeric() || c == '_' || c == '\'') && !"ετι".contains(c) {
                    name.push(c);
                    chars.next();
                } else {
                    break;
                }
            }
            out.push((Tok::Ident(name), i));
        } else {
            return Err(LogicError::Parse { at: line_col(text, i), message: format!("unexpected character `{c}`") });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    text: &'a str,
    toks: Vec<(Tok, usize)>,
    pos: usize,
    sig: &'a Signature,
    scope: Vec<(String, String)>,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.pos + k).map(|(t, _)| t)
    }

    fn error(&self, message: impl Into<String>) -> LogicError {
        let offset = self.toks.get(self.pos).map(|(_, i)| *i).unwrap_or(self.text.len());
        LogicError::Parse { at: line_col(self.text, offset), message: message.into() }
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), LogicError> {
        if self.eat(&tok) {
            Ok(())
        } else {
            Err(self.error(format!("expected {what}")))
        }
    }

    fn ident(&mut self) -> Result<String, LogicError> {
        match self.peek() {
            Some(Tok::Ident(n)) if !RESERVED.contains(&n.as_str()) => {
                let n = n.clone();
                self.pos += 1;
                Ok(n)
            }
            _ => Err(self.error("expected a name")),
        }
    }

    fn implication(&mut self) -> Result<Formula, LogicError> {
        let left = self.disjunction()?;
        if self.eat(&Tok::Arrow) {
            Ok(Formula::implies(left, self.implication()?))
        } else {
            Ok(left)
        }
    }

    fn disjunction(&mut self) -> Result<Formula, LogicError> {
        let left = self.conjunction()?;
        if self.eat(&Tok::Or) {
            Ok(Formula::or(left, self.disjunction()?))
        } else {
            Ok(left)
        }
    }

    fn conjunction(&mut self) -> Result<Formula, LogicError> {
        let left = self.unary()?;
        if self.eat(&Tok::And) {
            Ok(Formula::and(left, self.conjunction()?))
        } else {
            Ok(left)
        }
    }

    fn binder(&mut self) -> Result<(String, String), LogicError> {
        let var = self.ident()?;
        self.expect(Tok::Colon, "`:`")?;
        let sort = self.ident()?;
        Ok((var, sort))
    }

    fn unary(&mut self) -> Result<Formula, LogicError> {
        if self.eat(&Tok::Not) {
            return Ok(Formula::not(self.unary()?));
        }
        let quant = match self.peek() {
            Some(Tok::Ident(k)) if k == "exists" || k == "forall" => Some(k == "exists"),
            _ => None,
        };
        if let Some(is_exists) = quant {
            self.pos += 1;
            let (var, sort) = self.binder()?;
            self.expect(Tok::Dot, "`.`")?;
            self.scope.push((var.clone(), sort.clone()));
            let body = self.unary();
            self.scope.pop();
            let body = body?;
            return Ok(if is_exists { Formula::exists(var, sort, body) } else { Formula::forall(var, sort, body) });
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Formula, LogicError> {
        match self.peek() {
            Some(Tok::LParen) => {
                self.pos += 1;
                let f = self.implication()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(f)
            }
            Some(Tok::Ident(k)) if k == "true" || k == "false" => {
                let v = k == "true";
                self.pos += 1;
                Ok(Formula::truth(v))
            }
            Some(Tok::Ident(k)) if matches!(k.as_str(), "eps" | "tau" | "the") => {
                let left = self.term()?;
                self.expect(Tok::Equals, "`=`")?;
                Ok(Formula::eq(left, self.term()?))
            }
            Some(Tok::Ident(_)) => {
                let name = self.ident()?;
                let args = if self.peek() == Some(&Tok::LParen) { Some(self.args()?) } else { None };
                if self.eat(&Tok::Equals) {
                    let left = self.resolve(name, args);
                    Ok(Formula::eq(left, self.term()?))
                } else {
                    Ok(Formula::pred(name, args.unwrap_or_default()))
                }
            }
            _ => Err(self.error("expected a formula")),
        }
    }

    fn args(&mut self) -> Result<Vec<LTerm>, LogicError> {
        self.expect(Tok::LParen, "`(`")?;
        let mut args = vec![self.term()?];
        while self.eat(&Tok::Comma) {
            args.push(self.term()?);
        }
        self.expect(Tok::RParen, "`)` or `,`")?;
        Ok(args)
    }

    fn resolve(&self, name: String, args: Option<Vec<LTerm>>) -> LTerm {
        match args {
            Some(args) => {
                let sort = self.sig.function_sort(&name).to_string();
                LTerm::app(name, args, sort)
            }
            None => match self.scope.iter().rev().find(|(v, _)| *v == name) {
                Some((_, sort)) => LTerm::var(name, sort.clone()),
                None => {
                    let sort = self.sig.const_sort(&name).to_string();
                    LTerm::constant(name, sort)
                }
            },
        }
    }

    fn term(&mut self) -> Result<LTerm, LogicError> {
        let mode = match self.peek() {
            Some(Tok::Ident(k)) if k == "eps" => Some(EpsMode::Indefinite),
            Some(Tok::Ident(k)) if k == "tau" => Some(EpsMode::Universal),
            Some(Tok::Ident(k)) if k == "the" => Some(EpsMode::Definite),
            _ => None,
        };
        if let Some(mode) = mode {
            self.pos += 1;
            self.expect(Tok::LBrack, "`[`")?;
            let sort = self.ident()?;
            self.expect(Tok::RBrack, "`]`")?;
            self.expect(Tok::LParen, "`(`")?;
            let var = self.ident()?;
            self.expect(Tok::Dot, "`.`")?;
            self.scope.push((var.clone(), sort.clone()));
            let body = self.implication();
            self.scope.pop();
            let body = body?;
            self.expect(Tok::RParen, "`)`")?;
            return Ok(LTerm::eps(mode, var, sort, body));
        }
        let name = self.ident()?;
        let args = if self.peek() == Some(&Tok::LParen) { Some(self.args()?) } else { None };
        Ok(self.resolve(name, args))
    }
}

/// Parses the ascii rendering (the unicode glyphs are accepted too).
pub fn parse_formula(text: &str, sig: &Signature) -> Result<Formula, LogicError> {
    let toks = tokenize(text)?;
    let mut p = Parser { text, toks, pos: 0, sig, scope: Vec::new() };
    let f = p.implication()?;
    if p.peek_at(0).is_some() {
        return Err(p.error("unexpected input after the formula"));
    }
    Ok(f)
}

fn sexpr_error(d: &Datum, message: impl Into<String>) -> LogicError {
    LogicError::Parse { at: d.pos().to_string(), message: message.into() }
}

/// Parses the s-expression rendering.
pub fn parse_formula_sexpr(text: &str, sig: &Signature) -> Result<Formula, LogicError> {
    let d = sexp::parse_one(text).map_err(|e| LogicError::Parse { at: "input".into(), message: e.to_string() })?;
    SexprReader { sig, scope: Vec::new() }.formula(&d)
}

struct SexprReader<'a> {
    sig: &'a Signature,
    scope: Vec<(String, String)>,
}

impl SexprReader<'_> {
    fn binder<'d>(&self, items: &'d [Datum], whole: &Datum) -> Result<(String, String, &'d Datum), LogicError> {
        match items {
            [_, Datum::List(b, _), body] => match b.as_slice() {
                [Datum::Sym(v, _), Datum::Sym(s, _)] => Ok((v.clone(), s.clone(), body)),
                _ => Err(sexpr_error(whole, "expected (VAR SORT)")),
            },
            _ => Err(sexpr_error(whole, "expected a binder and a body")),
        }
    }

    fn formula(&mut self, d: &Datum) -> Result<Formula, LogicError> {
        let items = match d {
            Datum::Sym(s, _) if s == "true" => return Ok(Formula::truth(true)),
            Datum::Sym(s, _) if s == "false" => return Ok(Formula::truth(false)),
            Datum::Sym(s, _) => return Ok(Formula::pred(s.clone(), vec![])),
            Datum::Str(..) => return Err(sexpr_error(d, "expected a formula")),
            Datum::List(items, _) => items,
        };
        let head = d.head().ok_or_else(|| sexpr_error(d, "expected an operator"))?;
        let two = |r: &mut Self| -> Result<(Formula, Formula), LogicError> {
            match items.as_slice() {
                [_, a, b] => Ok((r.formula(a)?, r.formula(b)?)),
                _ => Err(sexpr_error(d, format!("`{head}` takes two formulas"))),
            }
        };
        match head {
            "and" => two(self).map(|(a, b)| Formula::and(a, b)),
            "or" => two(self).map(|(a, b)| Formula::or(a, b)),
            "implies" => two(self).map(|(a, b)| Formula::implies(a, b)),
            "not" => match items.as_slice() {
                [_, a] => Ok(Formula::not(self.formula(a)?)),
                _ => Err(sexpr_error(d, "`not` takes one formula")),
            },
            "exists" | "forall" => {
                let (var, sort, body) = self.binder(items, d)?;
                self.scope.push((var.clone(), sort.clone()));
                let body = self.formula(body);
                self.scope.pop();
                let body = body?;
                Ok(if head == "exists" { Formula::exists(var, sort, body) } else { Formula::forall(var, sort, body) })
            }
            "=" => match items.as_slice() {
                [_, a, b] => Ok(Formula::eq(self.term(a)?, self.term(b)?)),
                _ => Err(sexpr_error(d, "`=` takes two terms")),
            },
            name => {
                let args = items[1..].iter().map(|a| self.term(a)).collect::<Result<_, _>>()?;
                Ok(Formula::pred(name.to_string(), args))
            }
        }
    }

    fn term(&mut self, d: &Datum) -> Result<LTerm, LogicError> {
        match d {
            Datum::Sym(name, _) => Ok(match self.scope.iter().rev().find(|(v, _)| v == name) {
                Some((_, sort)) => LTerm::var(name.clone(), sort.clone()),
                None => LTerm::constant(name.clone(), self.sig.const_sort(name)),
            }),
            Datum::Str(..) => Err(sexpr_error(d, "expected a term")),
            Datum::List(items, _) => {
                let head = d.head().ok_or_else(|| sexpr_error(d, "expected a function symbol"))?;
                let mode = match head {
                    "eps" => Some(EpsMode::Indefinite),
                    "tau" => Some(EpsMode::Universal),
                    "the" => Some(EpsMode::Definite),
                    _ => None,
                };
                if let Some(mode) = mode {
                    let (var, sort, body) = self.binder(items, d)?;
                    self.scope.push((var.clone(), sort.clone()));
                    let body = self.formula(body);
                    self.scope.pop();
                    return Ok(LTerm::eps(mode, var, sort, body?));
                }
                let args = items[1..].iter().map(|a| self.term(a)).collect::<Result<_, _>>()?;
                Ok(LTerm::app(head.to_string(), args, self.sig.function_sort(head)))
            }
        }
    }
}
