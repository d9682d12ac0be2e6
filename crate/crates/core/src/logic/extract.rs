use std::collections::BTreeSet;

use super::{fresh, EpsMode, Formula, LTerm, LogicError};
use crate::kernel::{
    alpha_eq, normalize, type_of_annotated, SpineArg, Term, Type, AND, EPS, EQ, EXISTS, FALSE, FORALL, IEPS, IMPLIES,
    NOT, OR, T, TAU, TRUE,
};

/// Reads a normal term of type `t` as a formula.
pub fn extract_formula(term: &Term) -> Result<Formula, LogicError> {
    if !term.is_normal() {
        return Err(LogicError::NotNormal);
    }
    let ty = type_of_annotated(term)?;
    if !ty.is_truth() {
        return Err(LogicError::NotTruthType(ty));
    }
    formula(term)
}

fn residue(t: &Term) -> LogicError {
    LogicError::HigherOrderResidue(t.to_string())
}

fn entity_sort(ty: &Type) -> Option<&str> {
    ty.as_sort().filter(|s| *s != T)
}

/// The variable and body of a predicate argument `λx:σ. φ`, η-expanding
/// anything else.
fn open_predicate(pred: &Term, sort: &Type) -> (String, Term) {
    match pred {
        Term::Lam(x, _, body) => (x.clone(), (**body).clone()),
        _ => {
            let mut taken = BTreeSet::new();
            pred.all_vars(&mut taken);
            let x = fresh("x", &taken);
            let body = Term::app(pred.clone(), Term::var(x.clone(), sort.clone()));
            (x, body)
        }
    }
}

fn formula(t: &Term) -> Result<Formula, LogicError> {
    if let Term::Lam(..) | Term::TyLam(..) = t {
        return Err(LogicError::ResidualLambda(t.to_string()));
    }
    let (head, args) = t.spine();
    let Term::Const(name, _) = head else {
        return Err(residue(t));
    };
    let terms: Option<Vec<&Term>> = args
        .iter()
        .map(|a| match a {
            SpineArg::Term(x) => Some(*x),
            SpineArg::Type(_) => None,
        })
        .collect();
    match (name.as_str(), args.as_slice()) {
        (TRUE, []) => Ok(Formula::truth(true)),
        (FALSE, []) => Ok(Formula::truth(false)),
        (AND, [SpineArg::Term(a), SpineArg::Term(b)]) => Ok(Formula::and(formula(a)?, formula(b)?)),
        (OR, [SpineArg::Term(a), SpineArg::Term(b)]) => Ok(Formula::or(formula(a)?, formula(b)?)),
        (IMPLIES, [SpineArg::Term(a), SpineArg::Term(b)]) => Ok(Formula::implies(formula(a)?, formula(b)?)),
        (NOT, [SpineArg::Term(a)]) => Ok(Formula::not(formula(a)?)),
        (EXISTS | FORALL, [SpineArg::Type(sort), SpineArg::Term(p)]) => {
            let s = entity_sort(sort).ok_or_else(|| residue(t))?;
            let (x, body) = open_predicate(p, sort);
            let body = formula(&body)?;
            Ok(if name == EXISTS { Formula::exists(x, s, body) } else { Formula::forall(x, s, body) })
        }
        (EQ, [SpineArg::Type(sort), SpineArg::Term(a), SpineArg::Term(b)]) => {
            entity_sort(sort).ok_or_else(|| residue(t))?;
            Ok(Formula::eq(lterm(a)?, lterm(b)?))
        }
        (AND | OR | IMPLIES | NOT | EXISTS | FORALL | EQ | TRUE | FALSE | EPS | IEPS | TAU, _) => Err(residue(t)),
        _ => {
            let args = terms.ok_or_else(|| residue(t))?;
            Ok(Formula::pred(name.clone(), args.into_iter().map(lterm).collect::<Result<_, _>>()?))
        }
    }
}

fn lterm(t: &Term) -> Result<LTerm, LogicError> {
    match t {
        Term::Lam(..) | Term::TyLam(..) => return Err(LogicError::ResidualLambda(t.to_string())),
        Term::Var(x, ty) => return entity_sort(ty).map(|s| LTerm::var(x.clone(), s)).ok_or_else(|| residue(t)),
        Term::Const(c, ty) => return entity_sort(ty).map(|s| LTerm::constant(c.clone(), s)).ok_or_else(|| residue(t)),
        _ => {}
    }
    let (head, args) = t.spine();
    let Term::Const(name, _) = head else {
        return Err(residue(t));
    };
    let mode = match name.as_str() {
        EPS => Some(EpsMode::Indefinite),
        IEPS => Some(EpsMode::Definite),
        TAU => Some(EpsMode::Universal),
        _ => None,
    };
    match (mode, args.as_slice()) {
        (Some(mode), [SpineArg::Type(sort), SpineArg::Term(p)]) => {
            let s = entity_sort(sort).ok_or_else(|| residue(t))?;
            let (x, body) = open_predicate(p, sort);
            Ok(LTerm::eps(mode, x, s, formula(&body)?))
        }
        (Some(_), _) => Err(residue(t)),
        (None, _) => {
            let ty = type_of_annotated(t)?;
            let sort = entity_sort(&ty).ok_or_else(|| residue(t))?.to_string();
            let args = args
                .iter()
                .map(|a| match a {
                    SpineArg::Term(x) => lterm(x),
                    SpineArg::Type(_) => Err(residue(t)),
                })
                .collect::<Result<_, _>>()?;
            Ok(LTerm::app(name.clone(), args, sort))
        }
    }
}

/// The terms `P(E)` for every closed `E = (tyapp eps σ) P` or unresolved
/// definite `(tyapp ieps σ) P` in the normal form of `term`, normalized and
/// without α-duplicates, outermost first.
pub fn presupposition_terms(term: &Term) -> Result<Vec<Term>, LogicError> {
    let normal = normalize(term)?;
    let mut found: Vec<Term> = Vec::new();
    let mut out: Vec<Term> = Vec::new();
    let mut candidates = Vec::new();
    normal.visit(&mut |t| {
        if let Term::App(op, p) = t {
            if let Term::TyApp(c, _) = &**op {
                if matches!(c.const_name(), Some(EPS) | Some(IEPS)) && t.is_closed() {
                    candidates.push((t.clone(), (**p).clone()));
                }
            }
        }
    });
    for (eps, p) in candidates {
        if found.iter().any(|f| alpha_eq(f, &eps)) {
            continue;
        }
        let presup = normalize(&Term::app(p, eps.clone()))?;
        found.push(eps);
        if !out.iter().any(|o| alpha_eq(o, &presup)) {
            out.push(presup);
        }
    }
    Ok(out)
}

/// The presuppositions of `term` as formulas.
pub fn presuppositions(term: &Term) -> Result<Vec<Formula>, LogicError> {
    let mut out: Vec<Formula> = Vec::new();
    for p in presupposition_terms(term)? {
        let f = extract_formula(&p)?;
        if !out.iter().any(|o| o.alpha_eq(&f)) {
            out.push(f);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{parse_term, TypingContext};
    use crate::logic::{print_formula, Style};

    fn ctx() -> TypingContext {
        let mut ctx = TypingContext::new();
        ctx.declare_sort("ani");
        let e = Type::sort("e");
        let ani = Type::sort("ani");
        let pred = |s: &Type| Type::arrow(s.clone(), Type::truth());
        ctx.declare_const("club", pred(&e)).unwrap();
        ctx.declare_const("a_battu", Type::arrow(e.clone(), pred(&e))).unwrap();
        ctx.declare_const("Leeds", e.clone()).unwrap();
        ctx.declare_const("chat", pred(&ani)).unwrap();
        ctx.declare_const("chien", pred(&ani)).unwrap();
        ctx.declare_const("dort", pred(&ani)).unwrap();
        ctx.declare_const("p", Type::truth()).unwrap();
        ctx.declare_const("q", Type::truth()).unwrap();
        ctx.declare_const("voit", Type::arrow(ani.clone(), pred(&ani))).unwrap();
        ctx
    }

    fn ascii(f: &Formula) -> String {
        print_formula(f, Style::Ascii)
    }

    #[test]
    fn classical_sentence() {
        let ctx = ctx();
        let t = parse_term("((tyapp exists e) (lam x e (and (club x) (a_battu x Leeds))))", &ctx).unwrap();
        assert_eq!(ascii(&extract_formula(&t).unwrap()), "exists x:e. (club(x) & a_battu(x,Leeds))");
    }

    #[test]
    fn eps_terms_are_opened_on_a_hole() {
        let ctx = ctx();
        let t = parse_term("(dort ((tyapp eps ani) chat))", &ctx).unwrap();
        let f = extract_formula(&t).unwrap();
        let eps = LTerm::eps(EpsMode::Indefinite, "x", "ani", Formula::pred("chat", vec![LTerm::var("x", "ani")]));
        assert_eq!(f, Formula::pred("dort", vec![eps]));
        assert_eq!(ascii(&f), "dort(eps[ani](x. chat(x)))");
    }

    #[test]
    fn connectives() {
        let ctx = ctx();
        let t = parse_term("(and p q)", &ctx).unwrap();
        assert_eq!(
            extract_formula(&t).unwrap(),
            Formula::and(Formula::pred("p", vec![]), Formula::pred("q", vec![]))
        );
    }

    #[test]
    fn rejections() {
        let ctx = ctx();
        let redex = parse_term("((lam x ani (dort x)) ((tyapp eps ani) chat))", &ctx).unwrap();
        assert_eq!(extract_formula(&redex), Err(LogicError::NotNormal));
        let entity = parse_term("Leeds", &ctx).unwrap();
        assert!(matches!(extract_formula(&entity), Err(LogicError::NotTruthType(_))));
        let mut ctx2 = ctx.clone();
        ctx2.declare_var("P", Type::arrow(Type::sort("ani"), Type::truth())).unwrap();
        let ho = parse_term("(P ((tyapp eps ani) chat))", &ctx2).unwrap();
        assert!(matches!(extract_formula(&ho), Err(LogicError::HigherOrderResidue(_))));
    }

    #[test]
    fn presupposition_of_an_indefinite() {
        let ctx = ctx();
        let t = parse_term("((lam x ani (dort x)) ((tyapp eps ani) chat))", &ctx).unwrap();
        let ps = presuppositions(&t).unwrap();
        assert_eq!(ps.iter().map(ascii).collect::<Vec<_>>(), vec!["chat(eps[ani](x. chat(x)))"]);
        assert!(presuppositions(&parse_term("(and p q)", &ctx).unwrap()).unwrap().is_empty());
    }

    #[test]
    fn two_indefinites_two_presuppositions() {
        let ctx = ctx();
        let t = parse_term("(voit ((tyapp eps ani) chat) ((tyapp eps ani) chien))", &ctx).unwrap();
        assert_eq!(presuppositions(&t).unwrap().len(), 2);
        let same = parse_term("(voit ((tyapp eps ani) chat) ((tyapp eps ani) chat))", &ctx).unwrap();
        assert_eq!(presuppositions(&same).unwrap().len(), 1);
    }
}
