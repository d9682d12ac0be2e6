//! Finite multisorted models with choice-function semantics for ε and τ.
//!
//! ```text
//! (model
//!   (carrier ani (c1 c2 c3))
//!   (carrier siamois (c1))
//!   (interp chat ((c1) (c2)))
//!   (interp Leeds leeds))
//! ```
//!
//! Carrier order is the choice order. A constant is interpreted by one
//! element, a predicate by a set of tuples, a function by tuples whose last
//! component is the value.

mod equivalence;
mod eval;

use std::borrow::Cow;
use std::collections::BTreeSet;
use std::fmt;

use indexmap::IndexMap;
use thiserror::Error;

use crate::kernel::E;
use crate::sexp::{self, Datum, SexpError};

pub use equivalence::{check_equivalence, Verdict, Vocabulary, ENUMERATION_LIMIT};
pub use eval::{eval_formula, eval_term};

pub type Element = String;
pub type Tuple = Vec<Element>;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Model {
    carriers: IndexMap<String, Vec<Element>>,
    interps: IndexMap<String, BTreeSet<Tuple>>,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error(transparent)]
    Sexp(#[from] SexpError),
    #[error("{pos}: {message}")]
    Syntax { pos: sexp::Pos, message: String },
    #[error("uninterpreted constant `{0}`")]
    UninterpretedConstant(String),
    #[error("empty carrier for sort `{0}`")]
    EmptyCarrier(String),
    #[error("no carrier for sort `{0}`")]
    UnknownSort(String),
    #[error("element `{0}` belongs to no carrier")]
    UnknownElement(String),
    #[error("`{name}` is not interpreted as {expected}")]
    BadInterpretation { name: String, expected: String },
    #[error("`{name}` has no value at ({})", .args.join(", "))]
    PartialFunction { name: String, args: Vec<Element> },
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("choice term `{term}` depends on the quantified variable `{var}`")]
    DependentChoice { term: String, var: String },
    #[error("carrier of `{from}` is not contained in carrier of `{to}`")]
    CarrierContainment { from: String, to: String },
    #[error("{0}")]
    Unsupported(String),
}

fn syntax(d: &Datum, message: impl Into<String>) -> ModelError {
    ModelError::Syntax { pos: d.pos(), message: message.into() }
}

impl Model {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_carrier(mut self, sort: impl Into<String>, elements: impl IntoIterator<Item = impl Into<String>>) -> Self {
        self.set_carrier(sort, elements.into_iter().map(Into::into).collect());
        self
    }

    pub fn with_interp(mut self, name: impl Into<String>, tuples: impl IntoIterator<Item = Tuple>) -> Self {
        self.set_interp(name, tuples.into_iter().collect());
        self
    }

    pub fn set_carrier(&mut self, sort: impl Into<String>, elements: Vec<Element>) {
        self.carriers.insert(sort.into(), elements);
    }

    pub fn set_interp(&mut self, name: impl Into<String>, tuples: BTreeSet<Tuple>) {
        self.interps.insert(name.into(), tuples);
    }

    /// Sorts with an explicit carrier.
    pub fn sorts(&self) -> impl Iterator<Item = &str> {
        self.carriers.keys().map(String::as_str)
    }

    /// The carrier of `sort`; for `e` without an explicit carrier, the
    /// ordered union of all carriers.
    pub fn carrier(&self, sort: &str) -> Result<Cow<'_, [Element]>, ModelError> {
        let elems: Cow<'_, [Element]> = match self.carriers.get(sort) {
            Some(c) => Cow::Borrowed(c.as_slice()),
            None if sort == E => {
                let mut out: Vec<Element> = Vec::new();
                for c in self.carriers.values() {
                    for x in c {
                        if !out.contains(x) {
                            out.push(x.clone());
                        }
                    }
                }
                Cow::Owned(out)
            }
            None => return Err(ModelError::UnknownSort(sort.to_string())),
        };
        if elems.is_empty() {
            return Err(ModelError::EmptyCarrier(sort.to_string()));
        }
        Ok(elems)
    }

    pub fn interp(&self, name: &str) -> Option<&BTreeSet<Tuple>> {
        self.interps.get(name)
    }

    pub fn parse(text: &str) -> Result<Model, ModelError> {
        let d = sexp::parse_one(text)?;
        if d.head() != Some("model") {
            return Err(syntax(&d, "expected (model ...)"));
        }
        let mut m = Model::new();
        let items = d.as_list().unwrap_or_default();
        for part in &items[1..] {
            let fields = part.as_list().unwrap_or_default();
            match (part.head(), fields) {
                (Some("carrier"), [_, Datum::Sym(sort, _), Datum::List(ids, _)]) => {
                    let ids = ids
                        .iter()
                        .map(|i| i.as_atom().map(str::to_string).ok_or_else(|| syntax(i, "expected an element id")))
                        .collect::<Result<Vec<_>, _>>()?;
                    if ids.is_empty() {
                        return Err(ModelError::EmptyCarrier(sort.clone()));
                    }
                    m.set_carrier(sort.clone(), ids);
                }
                (Some("interp"), [_, Datum::Sym(name, _), Datum::Sym(id, _)]) => {
                    m.set_interp(name.clone(), [vec![id.clone()]].into_iter().collect());
                }
                (Some("interp"), [_, Datum::Sym(name, _), Datum::List(tuples, _)]) => {
                    let mut set = BTreeSet::new();
                    for t in tuples {
                        let ids = t.as_list().ok_or_else(|| syntax(t, "expected a tuple (ID*)"))?;
                        let tuple = ids
                            .iter()
                            .map(|i| i.as_atom().map(str::to_string).ok_or_else(|| syntax(i, "expected an element id")))
                            .collect::<Result<Vec<_>, _>>()?;
                        set.insert(tuple);
                    }
                    m.set_interp(name.clone(), set);
                }
                _ => return Err(syntax(part, format!("unexpected model field `{part}`"))),
            }
        }
        let known: BTreeSet<&String> = m.carriers.values().flatten().collect();
        for tuples in m.interps.values() {
            for x in tuples.iter().flatten() {
                if !known.contains(x) {
                    return Err(ModelError::UnknownElement(x.clone()));
                }
            }
        }
        Ok(m)
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(model")?;
        for (sort, elems) in &self.carriers {
            write!(f, "\n  (carrier {sort} ({}))", elems.join(" "))?;
        }
        for (name, tuples) in &self.interps {
            write!(f, "\n  (interp {name} (")?;
            for (i, t) in tuples.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "({})", t.join(" "))?;
            }
            f.write_str("))")?;
        }
        f.write_str(")")
    }
}

/// A unary predicate read as a subset of one carrier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InterpPredicate {
    pub name: String,
    pub domain: String,
    pub extension: BTreeSet<Element>,
}

impl InterpPredicate {
    /// The unary interpretation of `name` in `m`, over `domain`.
    pub fn from_model(m: &Model, name: &str, domain: &str) -> Result<InterpPredicate, ModelError> {
        let tuples = m.interp(name).ok_or_else(|| ModelError::UninterpretedConstant(name.to_string()))?;
        let carrier = m.carrier(domain)?;
        let mut extension = BTreeSet::new();
        for t in tuples {
            match t.as_slice() {
                [x] if carrier.contains(x) => {
                    extension.insert(x.clone());
                }
                [x] => return Err(ModelError::UnknownElement(x.clone())),
                _ => return Err(ModelError::BadInterpretation { name: name.into(), expected: "a unary predicate".into() }),
            }
        }
        Ok(InterpPredicate { name: name.to_string(), domain: domain.to_string(), extension })
    }
}

fn contained(m: &Model, small: &str, big: &str) -> Result<(), ModelError> {
    let big_c = m.carrier(big)?;
    if m.carrier(small)?.iter().all(|x| big_c.contains(x)) {
        Ok(())
    } else {
        Err(ModelError::CarrierContainment { from: small.to_string(), to: big.to_string() })
    }
}

/// The predicate over the larger sort `to_sort`, false outside its old domain.
pub fn extend_interp(m: &Model, p: &InterpPredicate, to_sort: &str) -> Result<InterpPredicate, ModelError> {
    contained(m, &p.domain, to_sort)?;
    Ok(InterpPredicate { name: p.name.clone(), domain: to_sort.to_string(), extension: p.extension.clone() })
}

/// The predicate over the smaller sort `to_sort`.
pub fn restrict_interp(m: &Model, p: &InterpPredicate, to_sort: &str) -> Result<InterpPredicate, ModelError> {
    contained(m, to_sort, &p.domain)?;
    let carrier = m.carrier(to_sort)?;
    let extension = p.extension.iter().filter(|x| carrier.contains(x)).cloned().collect();
    Ok(InterpPredicate { name: p.name.clone(), domain: to_sort.to_string(), extension })
}

#[cfg(test)]
mod tests {
    use super::*;

    const TEXT: &str = "(model (carrier ani (c1 c2 c3)) (carrier siamois (c1)) (carrier chose (k1)) (interp chat ((c1) (c2))) (interp Leeds c3))";

    #[test]
    fn parse_and_print() {
        let m = Model::parse(TEXT).unwrap();
        assert_eq!(m.carrier("e").unwrap().as_ref(), ["c1", "c2", "c3", "k1"]);
        assert_eq!(Model::parse(&m.to_string()).unwrap(), m);
        assert!(matches!(Model::parse("(model (carrier a ()))"), Err(ModelError::EmptyCarrier(_))));
        assert!(matches!(Model::parse("(model (carrier a (x)) (interp p ((y))))"), Err(ModelError::UnknownElement(_))));
        assert!(matches!(m.carrier("zz"), Err(ModelError::UnknownSort(_))));
    }

    #[test]
    fn extension_and_restriction() {
        let m = Model::parse(TEXT).unwrap();
        let chat = InterpPredicate::from_model(&m, "chat", "ani").unwrap();
        let round = restrict_interp(&m, &extend_interp(&m, &chat, "e").unwrap(), "ani").unwrap();
        assert_eq!(round, chat);

        let narrowed = restrict_interp(&m, &chat, "siamois").unwrap();
        let back = restrict_interp(&m, &extend_interp(&m, &narrowed, "e").unwrap(), "ani").unwrap();
        assert_ne!(back.extension, chat.extension);

        assert!(matches!(extend_interp(&m, &chat, "siamois"), Err(ModelError::CarrierContainment { .. })));
        assert!(matches!(restrict_interp(&m, &chat, "chose"), Err(ModelError::CarrierContainment { .. })));
    }
}
