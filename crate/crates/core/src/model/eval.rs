use super::{Element, Model, ModelError};
use crate::lexicon::hat_name;
use crate::logic::{EpsMode, Formula, LTerm};

type Env = Vec<(String, Element)>;

fn lookup<'a>(env: &'a Env, x: &str) -> Option<&'a Element> {
    env.iter().rev().find(|(v, _)| v == x).map(|(_, e)| e)
}

/// Truth of a closed formula in `m`.
pub fn eval_formula(m: &Model, f: &Formula) -> Result<bool, ModelError> {
    formula(m, f, &mut Vec::new())
}

/// Denotation of a closed term in `m`.
pub fn eval_term(m: &Model, t: &LTerm) -> Result<Element, ModelError> {
    term(m, t, &mut Vec::new())
}

/// `hat_σ` names membership in the carrier of σ.
fn hat_sort<'a>(m: &Model, name: &'a str) -> Option<&'a str> {
    let sort = name.strip_prefix("hat_")?;
    (hat_name(sort) == name && m.sorts().any(|s| s == sort)).then_some(sort)
}

fn formula(m: &Model, f: &Formula, env: &mut Env) -> Result<bool, ModelError> {
    Ok(match f {
        Formula::Truth { value } => *value,
        Formula::Pred { name, args } => {
            let vals = args.iter().map(|a| term(m, a, env)).collect::<Result<Vec<_>, _>>()?;
            if let Some(sort) = hat_sort(m, name) {
                return match vals.as_slice() {
                    [x] => Ok(m.carrier(sort)?.contains(x)),
                    _ => Err(ModelError::BadInterpretation { name: name.clone(), expected: "a unary predicate".into() }),
                };
            }
            let tuples = m.interp(name).ok_or_else(|| ModelError::UninterpretedConstant(name.clone()))?;
            tuples.contains(&vals)
        }
        Formula::And { left, right } => formula(m, left, env)? && formula(m, right, env)?,
        Formula::Or { left, right } => formula(m, left, env)? || formula(m, right, env)?,
        Formula::Implies { left, right } => !formula(m, left, env)? || formula(m, right, env)?,
        Formula::Not { body } => !formula(m, body, env)?,
        Formula::Exists { var, sort, body } | Formula::Forall { var, sort, body } => {
            let universal = matches!(f, Formula::Forall { .. });
            for x in m.carrier(sort)?.iter() {
                env.push((var.clone(), x.clone()));
                let v = formula(m, body, env);
                env.pop();
                if v? != universal {
                    return Ok(!universal);
                }
            }
            universal
        }
        Formula::Eq { left, right } => term(m, left, env)? == term(m, right, env)?,
    })
}

fn term(m: &Model, t: &LTerm, env: &mut Env) -> Result<Element, ModelError> {
    match t {
        LTerm::Var { name, .. } => lookup(env, name).cloned().ok_or_else(|| ModelError::UnboundVariable(name.clone())),
        LTerm::Const { name, .. } => {
            let tuples = m.interp(name).ok_or_else(|| ModelError::UninterpretedConstant(name.clone()))?;
            match tuples.iter().collect::<Vec<_>>().as_slice() {
                [t] if t.len() == 1 => Ok(t[0].clone()),
                _ => Err(ModelError::BadInterpretation { name: name.clone(), expected: "an element".into() }),
            }
        }
        LTerm::App { name, args, .. } => {
            let vals = args.iter().map(|a| term(m, a, env)).collect::<Result<Vec<_>, _>>()?;
            let tuples = m.interp(name).ok_or_else(|| ModelError::UninterpretedConstant(name.clone()))?;
            tuples
                .iter()
                .find(|t| t.len() == vals.len() + 1 && t[..vals.len()] == vals[..])
                .map(|t| t[vals.len()].clone())
                .ok_or_else(|| ModelError::PartialFunction { name: name.clone(), args: vals })
        }
        LTerm::Eps { mode, var, sort, body } => {
            if let Some(v) = t.free_vars().into_iter().find(|v| lookup(env, v).is_some()) {
                return Err(ModelError::DependentChoice { term: t.to_string(), var: v });
            }
            if let Some(v) = t.free_vars().into_iter().next() {
                return Err(ModelError::UnboundVariable(v));
            }
            let carrier = m.carrier(sort)?;
            // ε picks a witness of the body, τ a counterexample.
            let wanted = *mode != EpsMode::Universal;
            let mut scope = Vec::new();
            for x in carrier.iter() {
                scope.push((var.clone(), x.clone()));
                let v = formula(m, body, &mut scope)?;
                scope.pop();
                if v == wanted {
                    return Ok(x.clone());
                }
            }
            Ok(carrier[0].clone())
        }
    }
}
