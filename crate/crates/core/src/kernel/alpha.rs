//! α-equivalence by conversion to a canonical nameless form.
//!
//! Bound term and type variables become de Bruijn indices; free names and
//! constants stay as they are. Two terms are α-equivalent iff their canonical
//! forms are identical.

use super::term::Term;
use super::types::Type;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum NamelessType {
    Sort(String),
    Bound(usize),
    Free(String),
    Arrow(Box<NamelessType>, Box<NamelessType>),
    Pi(Box<NamelessType>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum NamelessTerm {
    Bound(usize, NamelessType),
    Free(String, NamelessType),
    Const(String, NamelessType),
    App(Box<NamelessTerm>, Box<NamelessTerm>),
    Lam(NamelessType, Box<NamelessTerm>),
    TyApp(Box<NamelessTerm>, NamelessType),
    TyLam(Box<NamelessTerm>),
}

fn index_of(env: &[String], name: &str) -> Option<usize> {
    env.iter().rev().position(|n| n == name)
}

fn canon_type(ty: &Type, tenv: &mut Vec<String>) -> NamelessType {
    match ty {
        Type::Sort(s) => NamelessType::Sort(s.clone()),
        Type::Var(v) => match index_of(tenv, v) {
            Some(i) => NamelessType::Bound(i),
            None => NamelessType::Free(v.clone()),
        },
        Type::Arrow(a, b) => NamelessType::Arrow(Box::new(canon_type(a, tenv)), Box::new(canon_type(b, tenv))),
        Type::Pi(v, body) => {
            tenv.push(v.clone());
            let b = canon_type(body, tenv);
            tenv.pop();
            NamelessType::Pi(Box::new(b))
        }
    }
}

fn canon_term(t: &Term, env: &mut Vec<String>, tenv: &mut Vec<String>) -> NamelessTerm {
    match t {
        Term::Var(x, ty) => {
            let nty = canon_type(ty, tenv);
            match index_of(env, x) {
                Some(i) => NamelessTerm::Bound(i, nty),
                None => NamelessTerm::Free(x.clone(), nty),
            }
        }
        Term::Const(c, ty) => NamelessTerm::Const(c.clone(), canon_type(ty, tenv)),
        Term::App(f, a) => NamelessTerm::App(Box::new(canon_term(f, env, tenv)), Box::new(canon_term(a, env, tenv))),
        Term::Lam(x, ty, body) => {
            let nty = canon_type(ty, tenv);
            env.push(x.clone());
            let b = canon_term(body, env, tenv);
            env.pop();
            NamelessTerm::Lam(nty, Box::new(b))
        }
        Term::TyApp(f, ty) => NamelessTerm::TyApp(Box::new(canon_term(f, env, tenv)), canon_type(ty, tenv)),
        Term::TyLam(v, body) => {
            tenv.push(v.clone());
            let b = canon_term(body, env, tenv);
            tenv.pop();
            NamelessTerm::TyLam(Box::new(b))
        }
    }
}

pub fn canonical(t: &Term) -> NamelessTerm {
    canon_term(t, &mut Vec::new(), &mut Vec::new())
}

pub fn canonical_type(ty: &Type) -> NamelessType {
    canon_type(ty, &mut Vec::new())
}

/// Identity up to consistent renaming of bound term and type variables.
pub fn alpha_eq(a: &Term, b: &Term) -> bool {
    canonical(a) == canonical(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e() -> Type {
        Type::sort("e")
    }

    #[test]
    fn renaming_of_lambda() {
        let a = Term::lam("x", e(), Term::var("x", e()));
        let b = Term::lam("y", e(), Term::var("y", e()));
        assert!(alpha_eq(&a, &b));
    }

    #[test]
    fn annotation_matters() {
        let a = Term::lam("x", e(), Term::var("x", e()));
        let b = Term::lam("x", Type::truth(), Term::var("x", Type::truth()));
        assert!(!alpha_eq(&a, &b));
    }

    #[test]
    fn free_names_are_not_renamed() {
        let a = Term::lam("x", e(), Term::var("y", e()));
        let b = Term::lam("x", e(), Term::var("z", e()));
        assert!(!alpha_eq(&a, &b));
        // λx.y vs λy.y: the second is bound, the first free.
        let c = Term::lam("y", e(), Term::var("y", e()));
        assert!(!alpha_eq(&a, &c));
    }
}
