//! Discourse referents introduced by indefinites, and the resolution of
//! definite descriptions and pronouns against them.
//!
//! Salience is recency: the most recently registered referent is the most
//! salient. Definites are matched in three tiers (same sort and restriction,
//! same sort, reachable through one lexical coercion); pronouns copy the
//! antecedent's term.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::kernel::{alpha_eq, Term, Type};
use crate::lexicon::{Coercion, Lexicon};

/// A word token in a syntactic tree: its left-to-right leaf index and spelling.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Occurrence {
    pub index: usize,
    pub word: String,
}

impl fmt::Display for Occurrence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}#{}", self.word, self.index)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Referent {
    pub index: usize,
    /// The choice term, e.g. `((tyapp eps ani) chat)`.
    pub term: Term,
    pub sort: String,
    /// The restriction, e.g. `chat`.
    pub predicate: Term,
    pub introduced_by: Occurrence,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct DiscourseState {
    referents: Vec<Referent>,
    next_index: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Resolution {
    pub referent: Referent,
    /// Set when the referent was reached through a lexical coercion.
    pub via: Option<Coercion>,
}

impl Resolution {
    /// The term the definite description stands for.
    pub fn term(&self) -> Term {
        match &self.via {
            Some(c) => Term::app(c.term.clone(), self.referent.term.clone()),
            None => self.referent.term.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiscourseError {
    #[error("no antecedent{} in the discourse", .0.as_ref().map(|s| format!(" of sort {s}")).unwrap_or_default())]
    NoAntecedent(Option<String>),
}

impl DiscourseState {
    pub fn new() -> Self {
        Self::default()
    }

    /// Oldest first.
    pub fn referents(&self) -> &[Referent] {
        &self.referents
    }

    pub fn len(&self) -> usize {
        self.referents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.referents.is_empty()
    }

    /// Appends a referent; it becomes the most salient one. Registering an
    /// α-equal term twice yields two referents.
    pub fn register_referent(&self, term: Term, sort: &str, predicate: Term, source: Occurrence) -> DiscourseState {
        let mut next = self.clone();
        next.push(term, sort, predicate, source);
        next
    }

    pub(crate) fn push(&mut self, term: Term, sort: &str, predicate: Term, source: Occurrence) {
        self.referents.push(Referent {
            index: self.next_index,
            term,
            sort: sort.to_string(),
            predicate,
            introduced_by: source,
        });
        self.next_index += 1;
    }

    fn newest_first(&self) -> impl Iterator<Item = &Referent> {
        self.referents.iter().rev()
    }

    /// The most salient referent a definite description `le P` of sort `sort`
    /// can denote, or `None` when the discourse has no antecedent for it.
    pub fn resolve_definite(&self, lex: &Lexicon, sort: &str, predicate: &Term) -> Option<Resolution> {
        let found = |r: &Referent| Resolution { referent: r.clone(), via: None };
        if let Some(r) = self.newest_first().find(|r| r.sort == sort && alpha_eq(&r.predicate, predicate)) {
            return Some(found(r));
        }
        if let Some(r) = self.newest_first().find(|r| r.sort == sort) {
            return Some(found(r));
        }
        let wanted = Type::sort(sort);
        self.newest_first().find_map(|r| {
            let entry = lex.lookup_entry(&r.introduced_by.word).ok()?;
            let from = Type::sort(r.sort.clone());
            let mut options = entry.options_between(&from, &wanted);
            let coercion = options.next()?;
            if options.next().is_some() {
                return None;
            }
            Some(Resolution { referent: r.clone(), via: Some(coercion.clone()) })
        })
    }

    /// E-type reading of a pronoun: a copy of the most salient antecedent's
    /// term, restricted to `sort` when a hint is given.
    pub fn resolve_pronoun(&self, sort: Option<&str>) -> Result<Term, DiscourseError> {
        self.newest_first()
            .find(|r| sort.is_none_or(|s| s == r.sort))
            .map(|r| r.term.clone())
            .ok_or_else(|| DiscourseError::NoAntecedent(sort.map(str::to_string)))
    }
}
