use std::collections::BTreeSet;
use std::fmt;

use super::types::Type;

/// Terms of the calculus. Variables and constants carry their type so that a
/// term can be typed, printed and compared without an external table.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Var(String, Type),
    Const(String, Type),
    App(Box<Term>, Box<Term>),
    Lam(String, Type, Box<Term>),
    TyApp(Box<Term>, Type),
    TyLam(String, Box<Term>),
}

/// One argument in an application spine.
#[derive(Debug, Clone, PartialEq)]
pub enum SpineArg<'a> {
    Term(&'a Term),
    Type(&'a Type),
}

impl Term {
    pub fn var(name: impl Into<String>, ty: Type) -> Term {
        Term::Var(name.into(), ty)
    }

    pub fn constant(name: impl Into<String>, ty: Type) -> Term {
        Term::Const(name.into(), ty)
    }

    pub fn app(f: Term, a: Term) -> Term {
        Term::App(Box::new(f), Box::new(a))
    }

    /// Left-associated application `f a1 ... an`.
    pub fn apps(f: Term, args: impl IntoIterator<Item = Term>) -> Term {
        args.into_iter().fold(f, Term::app)
    }

    pub fn lam(var: impl Into<String>, ty: Type, body: Term) -> Term {
        Term::Lam(var.into(), ty, Box::new(body))
    }

    pub fn tyapp(f: Term, ty: Type) -> Term {
        Term::TyApp(Box::new(f), ty)
    }

    pub fn tylam(var: impl Into<String>, body: Term) -> Term {
        Term::TyLam(var.into(), Box::new(body))
    }

    pub fn const_name(&self) -> Option<&str> {
        match self {
            Term::Const(c, _) => Some(c),
            _ => None,
        }
    }

    /// Splits `h a1 {T} a2 ...` into its head and arguments, outermost last.
    pub fn spine(&self) -> (&Term, Vec<SpineArg<'_>>) {
        let mut args = Vec::new();
        let mut cur = self;
        loop {
            match cur {
                Term::App(f, a) => {
                    args.push(SpineArg::Term(a));
                    cur = f;
                }
                Term::TyApp(f, ty) => {
                    args.push(SpineArg::Type(ty));
                    cur = f;
                }
                _ => break,
            }
        }
        args.reverse();
        (cur, args)
    }

    /// Free term variables.
    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(x, _) => {
                if !bound.contains(x) {
                    out.insert(x.clone());
                }
            }
            Term::Const(..) => {}
            Term::App(f, a) => {
                f.collect_free(bound, out);
                a.collect_free(bound, out);
            }
            Term::Lam(x, _, body) => {
                bound.push(x.clone());
                body.collect_free(bound, out);
                bound.pop();
            }
            Term::TyApp(f, _) => f.collect_free(bound, out),
            Term::TyLam(_, body) => body.collect_free(bound, out),
        }
    }

    pub fn has_free_var(&self, x: &str) -> bool {
        match self {
            Term::Var(y, _) => x == y,
            Term::Const(..) => false,
            Term::App(f, a) => f.has_free_var(x) || a.has_free_var(x),
            Term::Lam(y, _, body) => y != x && body.has_free_var(x),
            Term::TyApp(f, _) => f.has_free_var(x),
            Term::TyLam(_, body) => body.has_free_var(x),
        }
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// Free type variables, including those in the annotations of free term
    /// variables.
    pub fn free_type_vars(&self) -> BTreeSet<String> {
        fn go(t: &Term, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
            let add = |ty: &Type, bound: &Vec<String>, out: &mut BTreeSet<String>| {
                for v in ty.free_vars() {
                    if !bound.contains(&v) {
                        out.insert(v);
                    }
                }
            };
            match t {
                Term::Var(_, ty) | Term::Const(_, ty) => add(ty, bound, out),
                Term::App(f, a) => {
                    go(f, bound, out);
                    go(a, bound, out);
                }
                Term::Lam(_, ty, body) => {
                    add(ty, bound, out);
                    go(body, bound, out);
                }
                Term::TyApp(f, ty) => {
                    go(f, bound, out);
                    add(ty, bound, out);
                }
                Term::TyLam(v, body) => {
                    bound.push(v.clone());
                    go(body, bound, out);
                    bound.pop();
                }
            }
        }
        let mut out = BTreeSet::new();
        go(self, &mut Vec::new(), &mut out);
        out
    }

    /// Every term-variable name, bound or free.
    pub fn all_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(x, _) => {
                out.insert(x.clone());
            }
            Term::Const(..) => {}
            Term::App(f, a) => {
                f.all_vars(out);
                a.all_vars(out);
            }
            Term::Lam(x, _, body) => {
                out.insert(x.clone());
                body.all_vars(out);
            }
            Term::TyApp(f, _) => f.all_vars(out),
            Term::TyLam(_, body) => body.all_vars(out),
        }
    }

    /// Every type-variable name appearing anywhere, bound or free.
    pub fn all_type_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(_, ty) | Term::Const(_, ty) => ty.all_vars(out),
            Term::App(f, a) => {
                f.all_type_vars(out);
                a.all_type_vars(out);
            }
            Term::Lam(_, ty, body) => {
                ty.all_vars(out);
                body.all_type_vars(out);
            }
            Term::TyApp(f, ty) => {
                f.all_type_vars(out);
                ty.all_vars(out);
            }
            Term::TyLam(v, body) => {
                out.insert(v.clone());
                body.all_type_vars(out);
            }
        }
    }

    pub fn constants(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(..) => {}
            Term::Const(c, _) => {
                out.insert(c.clone());
            }
            Term::App(f, a) => {
                f.constants(out);
                a.constants(out);
            }
            Term::Lam(_, _, body) | Term::TyLam(_, body) => body.constants(out),
            Term::TyApp(f, _) => f.constants(out),
        }
    }

    /// No β-redex and no type-β-redex anywhere.
    pub fn is_normal(&self) -> bool {
        match self {
            Term::Var(..) | Term::Const(..) => true,
            Term::App(f, a) => !matches!(**f, Term::Lam(..)) && f.is_normal() && a.is_normal(),
            Term::TyApp(f, _) => !matches!(**f, Term::TyLam(..)) && f.is_normal(),
            Term::Lam(_, _, body) | Term::TyLam(_, body) => body.is_normal(),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Term::Var(..) | Term::Const(..) => 1,
            Term::App(f, a) => 1 + f.size() + a.size(),
            Term::Lam(_, _, b) | Term::TyLam(_, b) => 1 + b.size(),
            Term::TyApp(f, _) => 1 + f.size(),
        }
    }

    /// Replaces every subterm α-equal to `target` whose free variables are not
    /// captured at that position.
    pub fn replace(&self, target: &Term, with: &Term) -> Term {
        fn go(t: &Term, target: &Term, with: &Term, fv: &BTreeSet<String>, bound: &mut Vec<String>) -> Term {
            if !fv.iter().any(|v| bound.contains(v)) && super::alpha::alpha_eq(t, target) {
                return with.clone();
            }
            match t {
                Term::Var(..) | Term::Const(..) => t.clone(),
                Term::App(f, a) => Term::app(go(f, target, with, fv, bound), go(a, target, with, fv, bound)),
                Term::Lam(x, ty, body) => {
                    bound.push(x.clone());
                    let b = go(body, target, with, fv, bound);
                    bound.pop();
                    Term::lam(x.clone(), ty.clone(), b)
                }
                Term::TyApp(f, ty) => Term::tyapp(go(f, target, with, fv, bound), ty.clone()),
                Term::TyLam(v, body) => Term::tylam(v.clone(), go(body, target, with, fv, bound)),
            }
        }
        go(self, target, with, &target.free_vars(), &mut Vec::new())
    }

    /// Visits every subterm in pre-order, left to right.
    pub fn visit<'a>(&'a self, f: &mut impl FnMut(&'a Term)) {
        f(self);
        match self {
            Term::Var(..) | Term::Const(..) => {}
            Term::App(g, a) => {
                g.visit(f);
                a.visit(f);
            }
            Term::Lam(_, _, b) | Term::TyLam(_, b) => b.visit(f),
            Term::TyApp(g, _) => g.visit(f),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(x, _) | Term::Const(x, _) => f.write_str(x),
            Term::Lam(x, ty, body) => write!(f, "(lam {x} {} {body})", ty.to_sexpr()),
            Term::TyLam(v, body) => write!(f, "(tylam {v} {body})"),
            Term::TyApp(g, ty) => write!(f, "(tyapp {g} {})", ty.to_sexpr()),
            Term::App(..) => {
                // Flatten the term-application part of the spine; a type
                // application inside it is printed as its own head.
                let mut args = Vec::new();
                let mut cur = self;
                while let Term::App(g, a) = cur {
                    args.push(a);
                    cur = g;
                }
                write!(f, "({cur}")?;
                for a in args.iter().rev() {
                    write!(f, " {a}")?;
                }
                f.write_str(")")
            }
        }
    }
}
