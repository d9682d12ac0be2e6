//! Concrete syntax for types and terms.
//!
//! ```text
//! TERM ::= symbol | (lam sym TYPE TERM) | (tylam sym TERM) | (tyapp TERM TYPE) | (TERM TERM+)
//! TYPE ::= symbol | (-> TYPE TYPE) | (pi sym TYPE)
//! ```

use crate::sexp::{self, Datum, Pos};

use super::context::{NameKind, TypingContext};
use super::term::Term;
use super::types::Type;
use super::KernelError;

const KEYWORDS: &[&str] = &["lam", "tylam", "tyapp", "pi", "->"];

fn syntax(pos: Pos, message: impl Into<String>) -> KernelError {
    KernelError::Syntax { pos, message: message.into() }
}

fn binder_name(d: &Datum) -> Result<String, KernelError> {
    match d.as_sym() {
        Some(s) if !KEYWORDS.contains(&s) => Ok(s.to_string()),
        _ => Err(syntax(d.pos(), format!("expected a binder name, found `{d}`"))),
    }
}

pub fn parse_type(text: &str, ctx: &TypingContext) -> Result<Type, KernelError> {
    type_from_datum(&sexp::parse_one(text)?, ctx, &mut Vec::new())
}

pub fn type_from_datum(d: &Datum, ctx: &TypingContext, tyvars: &mut Vec<String>) -> Result<Type, KernelError> {
    match d {
        Datum::Sym(s, pos) => {
            if KEYWORDS.contains(&s.as_str()) {
                Err(syntax(*pos, format!("unexpected keyword `{s}` in type")))
            } else if tyvars.contains(s) {
                Ok(Type::Var(s.clone()))
            } else if ctx.has_sort(s) {
                Ok(Type::Sort(s.clone()))
            } else {
                Err(KernelError::UnknownSort { sort: s.clone(), pos: Some(*pos) })
            }
        }
        Datum::Str(_, pos) => Err(syntax(*pos, "string literal is not a type")),
        Datum::List(items, pos) => match d.head() {
            Some("->") if items.len() >= 3 => {
                let mut parts = items[1..]
                    .iter()
                    .map(|i| type_from_datum(i, ctx, tyvars))
                    .collect::<Result<Vec<_>, _>>()?;
                let mut ty = parts.pop().expect("at least two parts");
                while let Some(dom) = parts.pop() {
                    ty = Type::arrow(dom, ty);
                }
                Ok(ty)
            }
            Some("pi") if items.len() == 3 => {
                let v = binder_name(&items[1])?;
                tyvars.push(v.clone());
                let body = type_from_datum(&items[2], ctx, tyvars);
                tyvars.pop();
                Ok(Type::pi(v, body?))
            }
            _ => Err(syntax(*pos, format!("malformed type `{d}`"))),
        },
    }
}

pub fn parse_term(text: &str, ctx: &TypingContext) -> Result<Term, KernelError> {
    term_from_datum(&sexp::parse_one(text)?, ctx)
}

pub fn term_from_datum(d: &Datum, ctx: &TypingContext) -> Result<Term, KernelError> {
    Parser { ctx, env: Vec::new(), tyvars: Vec::new() }.term(d)
}

struct Parser<'a> {
    ctx: &'a TypingContext,
    env: Vec<(String, Type)>,
    tyvars: Vec<String>,
}

impl Parser<'_> {
    fn ty(&mut self, d: &Datum) -> Result<Type, KernelError> {
        type_from_datum(d, self.ctx, &mut self.tyvars)
    }

    fn term(&mut self, d: &Datum) -> Result<Term, KernelError> {
        match d {
            Datum::Sym(s, pos) => {
                if KEYWORDS.contains(&s.as_str()) {
                    return Err(syntax(*pos, format!("unexpected keyword `{s}`")));
                }
                if let Some((_, ty)) = self.env.iter().rev().find(|(n, _)| n == s) {
                    return Ok(Term::Var(s.clone(), ty.clone()));
                }
                match self.ctx.lookup(s) {
                    Some(decl) if decl.kind == NameKind::Variable => Ok(Term::Var(s.clone(), decl.ty.clone())),
                    Some(decl) => Ok(Term::Const(s.clone(), decl.ty.clone())),
                    None => Err(KernelError::UnboundName { name: s.clone(), pos: Some(*pos) }),
                }
            }
            Datum::Str(_, pos) => Err(syntax(*pos, "string literal is not a term")),
            Datum::List(items, pos) => match d.head() {
                Some("lam") => {
                    if items.len() != 4 {
                        return Err(syntax(*pos, "expected (lam NAME TYPE BODY)"));
                    }
                    let x = binder_name(&items[1])?;
                    let ty = self.ty(&items[2])?;
                    self.env.push((x.clone(), ty.clone()));
                    let body = self.term(&items[3]);
                    self.env.pop();
                    Ok(Term::lam(x, ty, body?))
                }
                Some("tylam") => {
                    if items.len() != 3 {
                        return Err(syntax(*pos, "expected (tylam NAME BODY)"));
                    }
                    let a = binder_name(&items[1])?;
                    self.tyvars.push(a.clone());
                    let body = self.term(&items[2]);
                    self.tyvars.pop();
                    Ok(Term::tylam(a, body?))
                }
                Some("tyapp") => {
                    if items.len() != 3 {
                        return Err(syntax(*pos, "expected (tyapp TERM TYPE)"));
                    }
                    let f = self.term(&items[1])?;
                    let ty = self.ty(&items[2])?;
                    Ok(Term::tyapp(f, ty))
                }
                Some(k @ ("pi" | "->")) => Err(syntax(*pos, format!("unexpected keyword `{k}` in term"))),
                _ => {
                    if items.len() < 2 {
                        return Err(syntax(*pos, "application needs a function and at least one argument"));
                    }
                    let head = self.term(&items[0])?;
                    let args = items[1..].iter().map(|a| self.term(a)).collect::<Result<Vec<_>, _>>()?;
                    Ok(Term::apps(head, args))
                }
            },
        }
    }
}
