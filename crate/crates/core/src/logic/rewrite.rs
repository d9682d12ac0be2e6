use super::{fresh, EpsMode, Formula, LTerm};

/// The variable to abstract `target` into within `f`: the choice term's own
/// variable when that name is free for use, a fresh one otherwise.
fn hole_name(f: &Formula, target: &LTerm) -> String {
    let LTerm::Eps { var, sort, .. } = target else { unreachable!() };
    let placeholder = LTerm::constant("\u{0}", sort.clone());
    let taken = f.replace_term(target, &placeholder).var_names();
    if taken.contains(var) {
        fresh(var, &taken)
    } else {
        var.clone()
    }
}

/// If `f` is `B[E]` for one of its choice terms `E = ε x:σ. B[x]`, returns
/// `E` together with the abstracted body `B[z]` and the name `z`.
fn hilbert_pattern(f: &Formula) -> Option<(&LTerm, String, Formula)> {
    let mut seen: Vec<&LTerm> = Vec::new();
    for e in f.eps_terms() {
        if seen.iter().any(|s| s.alpha_eq(e)) {
            continue;
        }
        seen.push(e);
        let LTerm::Eps { var, sort, body, .. } = e else { continue };
        let z = hole_name(f, e);
        let abstracted = f.replace_term(e, &LTerm::var(z.clone(), sort.clone()));
        if &abstracted == f {
            continue;
        }
        let candidate = Formula::exists(z.clone(), sort.clone(), abstracted.clone());
        let original = Formula::exists(var.clone(), sort.clone(), (**body).clone());
        if candidate.alpha_eq(&original) {
            return Some((e, z, abstracted));
        }
    }
    None
}

fn rewrite_root(f: &Formula) -> Option<Formula> {
    let (e, z, body) = hilbert_pattern(f)?;
    let LTerm::Eps { mode, sort, .. } = e else { unreachable!() };
    Some(match mode {
        EpsMode::Indefinite | EpsMode::Definite => Formula::exists(z, sort.clone(), body),
        EpsMode::Universal => Formula::forall(z, sort.clone(), body),
    })
}

fn pass_term(t: &LTerm) -> LTerm {
    match t {
        LTerm::Var { .. } | LTerm::Const { .. } => t.clone(),
        LTerm::App { name, args, sort } => LTerm::app(name.clone(), args.iter().map(pass_term).collect(), sort.clone()),
        LTerm::Eps { mode, var, sort, body } => LTerm::eps(*mode, var.clone(), sort.clone(), pass(body)),
    }
}

fn pass(f: &Formula) -> Formula {
    let f = rewrite_root(f).unwrap_or_else(|| f.clone());
    match &f {
        Formula::Pred { name, args } => Formula::pred(name.clone(), args.iter().map(pass_term).collect()),
        Formula::And { left, right } => Formula::and(pass(left), pass(right)),
        Formula::Or { left, right } => Formula::or(pass(left), pass(right)),
        Formula::Implies { left, right } => Formula::implies(pass(left), pass(right)),
        Formula::Not { body } => Formula::not(pass(body)),
        Formula::Exists { var, sort, body } => Formula::exists(var.clone(), sort.clone(), pass(body)),
        Formula::Forall { var, sort, body } => Formula::forall(var.clone(), sort.clone(), pass(body)),
        Formula::Eq { left, right } => Formula::eq(pass_term(left), pass_term(right)),
        Formula::Truth { .. } => f,
    }
}

/// Replaces every subformula of the shape `B[ε x:σ. B[x]]` by `∃x:σ. B[x]`
/// (`∀` for τ), outside-in, until nothing changes. Other choice terms stay.
pub fn rewrite_hilbert(f: &Formula) -> Formula {
    let mut cur = f.clone();
    loop {
        let next = pass(&cur);
        if next == cur {
            return cur;
        }
        cur = next;
    }
}

/// Conjoins presuppositions with the assertion. Each choice term that a
/// presupposition is about is re-chosen against the whole conjunction, so
/// that the result is again of the shape `C[ε z. C[z]]`.
pub fn conjoin(presuppositions: &[Formula], assertion: &Formula) -> Formula {
    let mut c = Formula::conjunction(presuppositions.iter().cloned().chain([assertion.clone()]));
    let mut targets: Vec<LTerm> = Vec::new();
    for p in presuppositions {
        if let Some((e, _, _)) = hilbert_pattern(p) {
            let choice = matches!(e, LTerm::Eps { mode: EpsMode::Indefinite | EpsMode::Definite, .. });
            if choice && e.free_vars().is_empty() && !targets.iter().any(|t| t.alpha_eq(e)) {
                targets.push(e.clone());
            }
        }
    }
    for e in targets {
        let LTerm::Eps { mode, sort, .. } = &e else { unreachable!() };
        let z = hole_name(&c, &e);
        let body = c.replace_term(&e, &LTerm::var(z.clone(), sort.clone()));
        let refined = LTerm::eps(*mode, z, sort.clone(), body);
        c = c.replace_term(&e, &refined);
    }
    c
}
