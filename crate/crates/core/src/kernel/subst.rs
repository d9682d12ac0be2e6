//! Capture-avoiding substitution of terms for term variables and of types for
//! type variables.

use std::collections::BTreeSet;

use super::term::Term;
use super::types::{fresh_name, Type};

/// `t[u/x]`.
pub fn subst_term(t: &Term, x: &str, u: &Term) -> Term {
    let fv = u.free_vars();
    let ftv = u.free_type_vars();
    go_term(t, x, u, &fv, &ftv)
}

fn go_term(t: &Term, x: &str, u: &Term, fv: &BTreeSet<String>, ftv: &BTreeSet<String>) -> Term {
    match t {
        Term::Var(y, _) => {
            if y == x {
                u.clone()
            } else {
                t.clone()
            }
        }
        Term::Const(..) => t.clone(),
        Term::App(f, a) => Term::app(go_term(f, x, u, fv, ftv), go_term(a, x, u, fv, ftv)),
        Term::Lam(y, ty, body) => {
            if y == x || !body.has_free_var(x) {
                return t.clone();
            }
            if fv.contains(y) {
                let mut avoid = fv.clone();
                body.all_vars(&mut avoid);
                avoid.insert(x.to_string());
                let fresh = fresh_name(y, |n| avoid.contains(n));
                let renamed = subst_term(body, y, &Term::Var(fresh.clone(), ty.clone()));
                Term::lam(fresh, ty.clone(), go_term(&renamed, x, u, fv, ftv))
            } else {
                Term::lam(y.clone(), ty.clone(), go_term(body, x, u, fv, ftv))
            }
        }
        Term::TyApp(f, ty) => Term::tyapp(go_term(f, x, u, fv, ftv), ty.clone()),
        Term::TyLam(a, body) => {
            if !body.has_free_var(x) {
                return t.clone();
            }
            if ftv.contains(a) {
                let mut avoid = ftv.clone();
                body.all_type_vars(&mut avoid);
                let fresh = fresh_name(a, |n| avoid.contains(n));
                let renamed = subst_type(body, a, &Type::Var(fresh.clone()));
                Term::tylam(fresh, go_term(&renamed, x, u, fv, ftv))
            } else {
                Term::tylam(a.clone(), go_term(body, x, u, fv, ftv))
            }
        }
    }
}

/// `t[ty/a]`: substitutes a type for a type variable throughout the term's
/// annotations.
pub fn subst_type(t: &Term, a: &str, ty: &Type) -> Term {
    let ftv = ty.free_vars();
    go_type(t, a, ty, &ftv)
}

fn go_type(t: &Term, a: &str, ty: &Type, ftv: &BTreeSet<String>) -> Term {
    match t {
        Term::Var(x, xt) => Term::Var(x.clone(), xt.subst(a, ty)),
        Term::Const(c, ct) => Term::Const(c.clone(), ct.subst(a, ty)),
        Term::App(f, arg) => Term::app(go_type(f, a, ty, ftv), go_type(arg, a, ty, ftv)),
        Term::Lam(x, xt, body) => Term::lam(x.clone(), xt.subst(a, ty), go_type(body, a, ty, ftv)),
        Term::TyApp(f, u) => Term::tyapp(go_type(f, a, ty, ftv), u.subst(a, ty)),
        Term::TyLam(b, body) => {
            if b == a || !body.free_type_vars().contains(a) {
                return t.clone();
            }
            if ftv.contains(b) {
                let mut avoid = ftv.clone();
                body.all_type_vars(&mut avoid);
                avoid.insert(a.to_string());
                let fresh = fresh_name(b, |n| avoid.contains(n));
                let renamed = go_type(body, b, &Type::Var(fresh.clone()), &BTreeSet::from([fresh.clone()]));
                Term::tylam(fresh, go_type(&renamed, a, ty, ftv))
            } else {
                Term::tylam(b.clone(), go_type(body, a, ty, ftv))
            }
        }
    }
}
