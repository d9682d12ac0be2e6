//! Multisorted first-order formulas with ε/τ terms, read off normal terms.

mod extract;
mod parse;
mod print;
mod rewrite;

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::kernel::Type;

pub use extract::{extract_formula, presupposition_terms, presuppositions};
pub use parse::{parse_formula, parse_formula_sexpr, Signature};
pub use print::{print_formula, print_lterm, Style};
pub use rewrite::{conjoin, rewrite_hilbert};

/// Which choice operator an ε-term was built from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EpsMode {
    /// `eps`, an indefinite.
    Indefinite,
    /// `ieps`, a definite.
    Definite,
    /// `tau`, a universal.
    Universal,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "node", rename_all = "snake_case")]
pub enum LTerm {
    Var { name: String, sort: String },
    Const { name: String, sort: String },
    App { name: String, args: Vec<LTerm>, sort: String },
    /// `ε x:sort. body`; `var` is the hole of `body`.
    Eps { mode: EpsMode, var: String, sort: String, body: Box<Formula> },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "node", rename_all = "snake_case")]
pub enum Formula {
    Pred { name: String, args: Vec<LTerm> },
    And { left: Box<Formula>, right: Box<Formula> },
    Or { left: Box<Formula>, right: Box<Formula> },
    Implies { left: Box<Formula>, right: Box<Formula> },
    Not { body: Box<Formula> },
    Exists { var: String, sort: String, body: Box<Formula> },
    Forall { var: String, sort: String, body: Box<Formula> },
    Eq { left: LTerm, right: LTerm },
    Truth { value: bool },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LogicError {
    #[error("term is not in normal form")]
    NotNormal,
    #[error("term has type {0}, not t")]
    NotTruthType(Type),
    #[error("λ-abstraction `{0}` left where a formula or an entity is required")]
    ResidualLambda(String),
    #[error("higher-order residue `{0}` cannot be read as a first-order formula")]
    HigherOrderResidue(String),
    #[error("{0}")]
    Kernel(#[from] crate::kernel::KernelError),
    #[error("{at}: {message}")]
    Parse { at: String, message: String },
}

impl LTerm {
    pub fn var(name: impl Into<String>, sort: impl Into<String>) -> LTerm {
        LTerm::Var { name: name.into(), sort: sort.into() }
    }

    pub fn constant(name: impl Into<String>, sort: impl Into<String>) -> LTerm {
        LTerm::Const { name: name.into(), sort: sort.into() }
    }

    pub fn app(name: impl Into<String>, args: Vec<LTerm>, sort: impl Into<String>) -> LTerm {
        LTerm::App { name: name.into(), args, sort: sort.into() }
    }

    pub fn eps(mode: EpsMode, var: impl Into<String>, sort: impl Into<String>, body: Formula) -> LTerm {
        LTerm::Eps { mode, var: var.into(), sort: sort.into(), body: Box::new(body) }
    }

    pub fn sort(&self) -> &str {
        match self {
            LTerm::Var { sort, .. } | LTerm::Const { sort, .. } | LTerm::App { sort, .. } | LTerm::Eps { sort, .. } => sort,
        }
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        match self {
            LTerm::Var { name, .. } => {
                if !bound.contains(name) {
                    out.insert(name.clone());
                }
            }
            LTerm::Const { .. } => {}
            LTerm::App { args, .. } => args.iter().for_each(|a| a.collect_free(bound, out)),
            LTerm::Eps { var, body, .. } => {
                bound.push(var.clone());
                body.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_names(&self, out: &mut BTreeSet<String>) {
        match self {
            LTerm::Var { name, .. } => {
                out.insert(name.clone());
            }
            LTerm::Const { .. } => {}
            LTerm::App { args, .. } => args.iter().for_each(|a| a.collect_names(out)),
            LTerm::Eps { var, body, .. } => {
                out.insert(var.clone());
                body.collect_names(out);
            }
        }
    }

    pub fn alpha_eq(&self, other: &LTerm) -> bool {
        lterm_eq(self, other, &mut Vec::new())
    }
}

impl Formula {
    pub fn pred(name: impl Into<String>, args: Vec<LTerm>) -> Formula {
        Formula::Pred { name: name.into(), args }
    }

    pub fn and(l: Formula, r: Formula) -> Formula {
        Formula::And { left: Box::new(l), right: Box::new(r) }
    }

    pub fn or(l: Formula, r: Formula) -> Formula {
        Formula::Or { left: Box::new(l), right: Box::new(r) }
    }

    pub fn implies(l: Formula, r: Formula) -> Formula {
        Formula::Implies { left: Box::new(l), right: Box::new(r) }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not { body: Box::new(f) }
    }

    pub fn exists(var: impl Into<String>, sort: impl Into<String>, body: Formula) -> Formula {
        Formula::Exists { var: var.into(), sort: sort.into(), body: Box::new(body) }
    }

    pub fn forall(var: impl Into<String>, sort: impl Into<String>, body: Formula) -> Formula {
        Formula::Forall { var: var.into(), sort: sort.into(), body: Box::new(body) }
    }

    pub fn eq(l: LTerm, r: LTerm) -> Formula {
        Formula::Eq { left: l, right: r }
    }

    pub fn truth(value: bool) -> Formula {
        Formula::Truth { value }
    }

    /// Right-nested conjunction of `parts`; `true` when empty.
    pub fn conjunction(parts: impl IntoIterator<Item = Formula>) -> Formula {
        let mut parts: Vec<Formula> = parts.into_iter().collect();
        let Some(mut acc) = parts.pop() else { return Formula::truth(true) };
        while let Some(f) = parts.pop() {
            acc = Formula::and(f, acc);
        }
        acc
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        match self {
            Formula::Pred { args, .. } => args.iter().for_each(|a| a.collect_free(bound, out)),
            Formula::And { left, right } | Formula::Or { left, right } | Formula::Implies { left, right } => {
                left.collect_free(bound, out);
                right.collect_free(bound, out);
            }
            Formula::Not { body } => body.collect_free(bound, out),
            Formula::Exists { var, body, .. } | Formula::Forall { var, body, .. } => {
                bound.push(var.clone());
                body.collect_free(bound, out);
                bound.pop();
            }
            Formula::Eq { left, right } => {
                left.collect_free(bound, out);
                right.collect_free(bound, out);
            }
            Formula::Truth { .. } => {}
        }
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_names(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Pred { args, .. } => args.iter().for_each(|a| a.collect_names(out)),
            Formula::And { left, right } | Formula::Or { left, right } | Formula::Implies { left, right } => {
                left.collect_names(out);
                right.collect_names(out);
            }
            Formula::Not { body } => body.collect_names(out),
            Formula::Exists { var, body, .. } | Formula::Forall { var, body, .. } => {
                out.insert(var.clone());
                body.collect_names(out);
            }
            Formula::Eq { left, right } => {
                left.collect_names(out);
                right.collect_names(out);
            }
            Formula::Truth { .. } => {}
        }
    }

    /// Every variable name, bound or free.
    pub fn var_names(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_names(&mut out);
        out
    }

    pub fn alpha_eq(&self, other: &Formula) -> bool {
        formula_eq(self, other, &mut Vec::new())
    }

    /// Every ε-term occurrence, outermost first.
    pub fn eps_terms(&self) -> Vec<&LTerm> {
        let mut out = Vec::new();
        self.visit_terms(&mut |t| {
            if matches!(t, LTerm::Eps { .. }) {
                out.push(t)
            }
        });
        out
    }

    /// Visits every term occurrence in pre-order, including those inside
    /// ε-bodies.
    pub fn visit_terms<'a>(&'a self, f: &mut impl FnMut(&'a LTerm)) {
        fn term<'a>(t: &'a LTerm, f: &mut impl FnMut(&'a LTerm)) {
            f(t);
            match t {
                LTerm::App { args, .. } => args.iter().for_each(|a| term(a, f)),
                LTerm::Eps { body, .. } => body.visit_terms(f),
                _ => {}
            }
        }
        match self {
            Formula::Pred { args, .. } => args.iter().for_each(|a| term(a, f)),
            Formula::And { left, right } | Formula::Or { left, right } | Formula::Implies { left, right } => {
                left.visit_terms(f);
                right.visit_terms(f);
            }
            Formula::Not { body } | Formula::Exists { body, .. } | Formula::Forall { body, .. } => body.visit_terms(f),
            Formula::Eq { left, right } => {
                term(left, f);
                term(right, f);
            }
            Formula::Truth { .. } => {}
        }
    }

    /// Replaces the occurrences of `target` (up to α) whose free variables
    /// are not captured at that position. `with` must not be captured either:
    /// callers pass fresh variables or closed terms.
    pub fn replace_term(&self, target: &LTerm, with: &LTerm) -> Formula {
        let fv = target.free_vars();
        replace_f(self, target, with, &fv, &mut Vec::new())
    }
}

fn replace_t(t: &LTerm, target: &LTerm, with: &LTerm, fv: &BTreeSet<String>, bound: &mut Vec<String>) -> LTerm {
    if !fv.iter().any(|v| bound.contains(v)) && t.alpha_eq(target) {
        return with.clone();
    }
    match t {
        LTerm::Var { .. } | LTerm::Const { .. } => t.clone(),
        LTerm::App { name, args, sort } => LTerm::App {
            name: name.clone(),
            args: args.iter().map(|a| replace_t(a, target, with, fv, bound)).collect(),
            sort: sort.clone(),
        },
        LTerm::Eps { mode, var, sort, body } => {
            bound.push(var.clone());
            let body = replace_f(body, target, with, fv, bound);
            bound.pop();
            LTerm::eps(*mode, var.clone(), sort.clone(), body)
        }
    }
}

fn replace_f(f: &Formula, target: &LTerm, with: &LTerm, fv: &BTreeSet<String>, bound: &mut Vec<String>) -> Formula {
    let bin = |l: &Formula, r: &Formula, bound: &mut Vec<String>| {
        (Box::new(replace_f(l, target, with, fv, bound)), Box::new(replace_f(r, target, with, fv, bound)))
    };
    match f {
        Formula::Pred { name, args } => Formula::Pred {
            name: name.clone(),
            args: args.iter().map(|a| replace_t(a, target, with, fv, bound)).collect(),
        },
        Formula::And { left, right } => {
            let (left, right) = bin(left, right, bound);
            Formula::And { left, right }
        }
        Formula::Or { left, right } => {
            let (left, right) = bin(left, right, bound);
            Formula::Or { left, right }
        }
        Formula::Implies { left, right } => {
            let (left, right) = bin(left, right, bound);
            Formula::Implies { left, right }
        }
        Formula::Not { body } => Formula::not(replace_f(body, target, with, fv, bound)),
        Formula::Exists { var, sort, body } | Formula::Forall { var, sort, body } => {
            bound.push(var.clone());
            let b = replace_f(body, target, with, fv, bound);
            bound.pop();
            if matches!(f, Formula::Exists { .. }) {
                Formula::exists(var.clone(), sort.clone(), b)
            } else {
                Formula::forall(var.clone(), sort.clone(), b)
            }
        }
        Formula::Eq { left, right } => Formula::eq(
            replace_t(left, target, with, fv, bound),
            replace_t(right, target, with, fv, bound),
        ),
        Formula::Truth { .. } => f.clone(),
    }
}

/// Bound-variable correspondence for α-equivalence, innermost last.
type Pairs = Vec<(String, String)>;

fn var_eq(a: &str, b: &str, env: &Pairs) -> bool {
    for (x, y) in env.iter().rev() {
        if x == a || y == b {
            return x == a && y == b;
        }
    }
    a == b
}

fn lterm_eq(a: &LTerm, b: &LTerm, env: &mut Pairs) -> bool {
    match (a, b) {
        (LTerm::Var { name: x, sort: s }, LTerm::Var { name: y, sort: t }) => s == t && var_eq(x, y, env),
        (LTerm::Const { name: x, sort: s }, LTerm::Const { name: y, sort: t }) => x == y && s == t,
        (LTerm::App { name: f, args: xs, sort: s }, LTerm::App { name: g, args: ys, sort: t }) => {
            f == g && s == t && xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| lterm_eq(x, y, env))
        }
        (
            LTerm::Eps { mode: m, var: x, sort: s, body: p },
            LTerm::Eps { mode: n, var: y, sort: t, body: q },
        ) => {
            if m != n || s != t {
                return false;
            }
            env.push((x.clone(), y.clone()));
            let r = formula_eq(p, q, env);
            env.pop();
            r
        }
        _ => false,
    }
}

fn formula_eq(a: &Formula, b: &Formula, env: &mut Pairs) -> bool {
    match (a, b) {
        (Formula::Pred { name: p, args: xs }, Formula::Pred { name: q, args: ys }) => {
            p == q && xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| lterm_eq(x, y, env))
        }
        (Formula::And { left: a1, right: a2 }, Formula::And { left: b1, right: b2 })
        | (Formula::Or { left: a1, right: a2 }, Formula::Or { left: b1, right: b2 })
        | (Formula::Implies { left: a1, right: a2 }, Formula::Implies { left: b1, right: b2 }) => {
            formula_eq(a1, b1, env) && formula_eq(a2, b2, env)
        }
        (Formula::Not { body: p }, Formula::Not { body: q }) => formula_eq(p, q, env),
        (Formula::Exists { var: x, sort: s, body: p }, Formula::Exists { var: y, sort: t, body: q })
        | (Formula::Forall { var: x, sort: s, body: p }, Formula::Forall { var: y, sort: t, body: q }) => {
            if s != t {
                return false;
            }
            env.push((x.clone(), y.clone()));
            let r = formula_eq(p, q, env);
            env.pop();
            r
        }
        (Formula::Eq { left: a1, right: a2 }, Formula::Eq { left: b1, right: b2 }) => {
            lterm_eq(a1, b1, env) && lterm_eq(a2, b2, env)
        }
        (Formula::Truth { value: p }, Formula::Truth { value: q }) => p == q,
        _ => false,
    }
}

/// A name based on `base` that does not occur in `taken`.
pub(crate) fn fresh(base: &str, taken: &BTreeSet<String>) -> String {
    crate::kernel::fresh_name(base, |n| taken.contains(n))
}
