use super::subst::{subst_term, subst_type};
use super::term::Term;
use super::KernelError;

pub const DEFAULT_STEP_BUDGET: usize = 100_000;

/// Which redex fires first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Normal order.
    #[default]
    LeftmostOutermost,
    RightmostInnermost,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Normalization {
    pub term: Term,
    pub steps: usize,
}

/// Contracts a redex at the root, if there is one.
fn contract(t: &Term) -> Option<Term> {
    match t {
        Term::App(f, u) => match &**f {
            Term::Lam(x, _, body) => Some(subst_term(body, x, u)),
            _ => None,
        },
        Term::TyApp(f, ty) => match &**f {
            Term::TyLam(a, body) => Some(subst_type(body, a, ty)),
            _ => None,
        },
        _ => None,
    }
}

/// Performs one β or type-β step, or returns `None` on a normal term.
pub fn step(t: &Term, strategy: Strategy) -> Option<Term> {
    match strategy {
        Strategy::LeftmostOutermost => step_lo(t),
        Strategy::RightmostInnermost => step_ri(t),
    }
}

fn step_lo(t: &Term) -> Option<Term> {
    if let Some(r) = contract(t) {
        return Some(r);
    }
    match t {
        Term::Var(..) | Term::Const(..) => None,
        Term::App(f, a) => {
            if let Some(f2) = step_lo(f) {
                return Some(Term::App(Box::new(f2), a.clone()));
            }
            step_lo(a).map(|a2| Term::App(f.clone(), Box::new(a2)))
        }
        Term::Lam(x, ty, body) => step_lo(body).map(|b| Term::Lam(x.clone(), ty.clone(), Box::new(b))),
        Term::TyApp(f, ty) => step_lo(f).map(|f2| Term::TyApp(Box::new(f2), ty.clone())),
        Term::TyLam(a, body) => step_lo(body).map(|b| Term::TyLam(a.clone(), Box::new(b))),
    }
}

fn step_ri(t: &Term) -> Option<Term> {
    let inner = match t {
        Term::Var(..) | Term::Const(..) => None,
        Term::App(f, a) => match step_ri(a) {
            Some(a2) => Some(Term::App(f.clone(), Box::new(a2))),
            None => step_ri(f).map(|f2| Term::App(Box::new(f2), a.clone())),
        },
        Term::Lam(x, ty, body) => step_ri(body).map(|b| Term::Lam(x.clone(), ty.clone(), Box::new(b))),
        Term::TyApp(f, ty) => step_ri(f).map(|f2| Term::TyApp(Box::new(f2), ty.clone())),
        Term::TyLam(a, body) => step_ri(body).map(|b| Term::TyLam(a.clone(), Box::new(b))),
    };
    inner.or_else(|| contract(t))
}

/// Normal form under leftmost-outermost reduction with the default budget.
pub fn normalize(t: &Term) -> Result<Term, KernelError> {
    normalize_with(t, Strategy::default(), DEFAULT_STEP_BUDGET, &mut |_| {}).map(|n| n.term)
}

/// Reduces to normal form, calling `on_step` with the term after each step.
pub fn normalize_with(
    t: &Term,
    strategy: Strategy,
    budget: usize,
    on_step: &mut dyn FnMut(&Term),
) -> Result<Normalization, KernelError> {
    let mut cur = t.clone();
    let mut steps = 0;
    while let Some(next) = step(&cur, strategy) {
        if steps == budget {
            return Err(KernelError::StepBudgetExceeded(budget));
        }
        steps += 1;
        on_step(&next);
        cur = next;
    }
    Ok(Normalization { term: cur, steps })
}
