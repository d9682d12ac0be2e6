use std::collections::BTreeSet;

use indexmap::{IndexMap, IndexSet};

use super::{eval_formula, Model, ModelError, Tuple};
use crate::kernel::E;
use crate::logic::{Formula, LTerm};

/// Upper bound on the interpretations tried for one assignment of carrier sizes.
pub const ENUMERATION_LIMIT: u128 = 1 << 22;

/// The symbols a brute-force check interprets.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Vocabulary {
    pub sorts: IndexSet<String>,
    /// Predicate name and argument sorts.
    pub predicates: IndexMap<String, Vec<String>>,
    /// Constant name and sort.
    pub constants: IndexMap<String, String>,
    /// Function symbols; present only to be refused.
    pub functions: IndexSet<String>,
}

impl Vocabulary {
    /// Everything the formulas mention, except the carrier predicates `hat_σ`.
    pub fn of(formulas: &[&Formula]) -> Vocabulary {
        let mut v = Vocabulary::default();
        for f in formulas {
            v.absorb(f);
        }
        v
    }

    fn absorb(&mut self, f: &Formula) {
        match f {
            Formula::Pred { name, args } => {
                if !name.starts_with("hat_") {
                    self.predicates.entry(name.clone()).or_insert_with(|| args.iter().map(|a| a.sort().to_string()).collect());
                }
                for a in args {
                    self.absorb_term(a);
                }
            }
            Formula::And { left, right } | Formula::Or { left, right } | Formula::Implies { left, right } => {
                self.absorb(left);
                self.absorb(right);
            }
            Formula::Not { body } => self.absorb(body),
            Formula::Exists { sort, body, .. } | Formula::Forall { sort, body, .. } => {
                self.sorts.insert(sort.clone());
                self.absorb(body);
            }
            Formula::Eq { left, right } => {
                self.absorb_term(left);
                self.absorb_term(right);
            }
            Formula::Truth { .. } => {}
        }
    }

    fn absorb_term(&mut self, t: &LTerm) {
        self.sorts.insert(t.sort().to_string());
        match t {
            LTerm::Var { .. } => {}
            LTerm::Const { name, sort } => {
                self.constants.entry(name.clone()).or_insert_with(|| sort.clone());
            }
            LTerm::App { name, args, .. } => {
                self.functions.insert(name.clone());
                args.iter().for_each(|a| self.absorb_term(a));
            }
            LTerm::Eps { body, .. } => self.absorb(body),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Equivalent { models_checked: usize },
    CounterModel { model: Model, left: bool, right: bool, models_checked: usize },
}

impl Verdict {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, Verdict::Equivalent { .. })
    }
}

/// Compares `f1` and `f2` on every model whose carriers have 1 to
/// `max_carrier` elements, under every interpretation of `vocab`.
/// Models are tried by increasing carrier size, so a counter-model is minimal.
pub fn check_equivalence(f1: &Formula, f2: &Formula, vocab: &Vocabulary, max_carrier: usize) -> Result<Verdict, ModelError> {
    if max_carrier == 0 {
        return Err(ModelError::Unsupported("max_carrier must be at least 1".into()));
    }
    if let Some(fun) = vocab.functions.first() {
        return Err(ModelError::Unsupported(format!("function symbol `{fun}` cannot be enumerated")));
    }
    // `e` is the union of the other sorts unless it is the only one.
    let mut sorts: Vec<&String> = vocab.sorts.iter().filter(|s| *s != E).collect();
    let e = E.to_string();
    if sorts.is_empty() {
        sorts.push(&e);
    }

    let mut checked = 0;
    let mut sizes = vec![1usize; sorts.len()];
    loop {
        let mut base = Model::new();
        for (sort, n) in sorts.iter().zip(&sizes) {
            base.set_carrier(sort.as_str(), (1..=*n).map(|i| format!("{sort}{i}")).collect());
        }
        let domains = vocab
            .predicates
            .values()
            .map(|arg_sorts| tuples(&base, arg_sorts))
            .collect::<Result<Vec<_>, _>>()?;
        let constant_choices = vocab
            .constants
            .values()
            .map(|s| base.carrier(s).map(|c| c.into_owned()))
            .collect::<Result<Vec<_>, _>>()?;

        let mut radices: Vec<u128> = Vec::new();
        for d in &domains {
            radices.push(1u128.checked_shl(d.len() as u32).filter(|r| *r != 0).ok_or_else(too_large)?);
        }
        radices.extend(constant_choices.iter().map(|c| c.len() as u128));
        let total = radices.iter().try_fold(1u128, |acc, r| acc.checked_mul(*r)).filter(|t| *t <= ENUMERATION_LIMIT);
        let total = total.ok_or_else(too_large)?;

        for mut k in 0..total {
            let mut m = base.clone();
            let mut digits = radices.iter().map(|r| {
                let d = k % r;
                k /= r;
                d
            });
            for ((name, _), domain) in vocab.predicates.iter().zip(&domains) {
                let mask = digits.next().unwrap_or(0);
                let ext: BTreeSet<Tuple> =
                    domain.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, t)| t.clone()).collect();
                m.set_interp(name.clone(), ext);
            }
            for ((name, _), choices) in vocab.constants.iter().zip(&constant_choices) {
                let d = digits.next().unwrap_or(0) as usize;
                m.set_interp(name.clone(), [vec![choices[d].clone()]].into_iter().collect());
            }
            checked += 1;
            let left = eval_formula(&m, f1)?;
            let right = eval_formula(&m, f2)?;
            if left != right {
                return Ok(Verdict::CounterModel { model: m, left, right, models_checked: checked });
            }
        }

        if !advance(&mut sizes, max_carrier) {
            return Ok(Verdict::Equivalent { models_checked: checked });
        }
    }
}

fn too_large() -> ModelError {
    ModelError::Unsupported(format!("more than {ENUMERATION_LIMIT} interpretations per carrier size"))
}

fn advance(sizes: &mut [usize], max: usize) -> bool {
    for s in sizes.iter_mut() {
        if *s < max {
            *s += 1;
            return true;
        }
        *s = 1;
    }
    false
}

fn tuples(m: &Model, sorts: &[String]) -> Result<Vec<Tuple>, ModelError> {
    let mut out: Vec<Tuple> = vec![Vec::new()];
    for s in sorts {
        let c = m.carrier(s)?;
        out = out.into_iter().flat_map(|t| c.iter().map(move |x| [t.clone(), vec![x.clone()]].concat())).collect();
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::{parse_formula, Signature};

    fn p(text: &str) -> Formula {
        parse_formula(text, &Signature::new()).unwrap()
    }

    fn check(a: &str, b: &str) -> Verdict {
        let (a, b) = (p(a), p(b));
        check_equivalence(&a, &b, &Vocabulary::of(&[&a, &b]), 4).unwrap()
    }

    #[test]
    fn vocabulary() {
        let f = p("forall x:ani. (hat_ani(x) -> r(x, c) & q)");
        let v = Vocabulary::of(&[&f]);
        assert_eq!(v.predicates.keys().collect::<Vec<_>>(), ["r", "q"]);
        assert_eq!(v.predicates["r"], ["ani", "e"]);
        assert_eq!(v.constants["c"], "e");
    }

    #[test]
    fn witness_equivalences_hold() {
        assert_eq!(check("f(eps[s](x. f(x)))", "exists x:s. f(x)"), Verdict::Equivalent { models_checked: 30 });
        assert_eq!(check("f(tau[s](x. f(x)))", "forall x:s. f(x)"), Verdict::Equivalent { models_checked: 30 });
    }

    #[test]
    fn counter_model_is_small() {
        let Verdict::CounterModel { model, left, right, .. } = check("g(eps[s](x. f(x)))", "exists x:s. g(x)") else {
            panic!("expected a counter-model");
        };
        assert!(!left && right);
        assert_eq!(model.carrier("s").unwrap().len(), 2);
    }

    #[test]
    fn refuses_functions() {
        let f = p("f(h(c))");
        assert!(matches!(check_equivalence(&f, &f, &Vocabulary::of(&[&f]), 2), Err(ModelError::Unsupported(_))));
    }
}
