//! From syntactic trees to terms.
//!
//! A tree is read as nested application spines: `((et est_vaste a_vote)
//! Liverpool)` is the head `et` applied to three arguments. Each spine is
//! assembled left to right. Polymorphic heads are instantiated by matching
//! their domains against the argument types, sort clashes are repaired with
//! the argument word's own coercions, and functional slots `S1 → S2` left at
//! the end of a spine are filled with the coercion that turns the most recent
//! `S1` argument into an `S2`.

use std::collections::BTreeSet;
use std::fmt;

use indexmap::IndexMap;
use serde::Serialize;
use thiserror::Error;

use crate::discourse::{DiscourseError, DiscourseState, Occurrence};
use crate::kernel::{
    fresh_name, normalize, type_of, KernelError, Term, Type, TypingContext, EPS, EVENT, IEPS, T, TAU,
};
use crate::lexicon::{Coercion, DeterminerMode, LexEntry, Lexicon, Rigidity};
use crate::sexp::{self, Datum, SexpError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SynTree {
    Leaf(String),
    Node(Box<SynTree>, Box<SynTree>),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TreeError {
    #[error(transparent)]
    Sexp(#[from] SexpError),
    #[error("{pos}: a tree node needs a function and at least one argument")]
    ShortNode { pos: sexp::Pos },
}

impl SynTree {
    pub fn leaf(word: impl Into<String>) -> SynTree {
        SynTree::Leaf(word.into())
    }

    pub fn node(f: SynTree, a: SynTree) -> SynTree {
        SynTree::Node(Box::new(f), Box::new(a))
    }

    /// `TREE ::= WORD | (TREE TREE+)`, the longer form being left-associated.
    pub fn parse(text: &str) -> Result<SynTree, TreeError> {
        SynTree::from_datum(&sexp::parse_one(text)?)
    }

    pub fn from_datum(d: &Datum) -> Result<SynTree, TreeError> {
        match d {
            Datum::Sym(w, _) | Datum::Str(w, _) => Ok(SynTree::leaf(w.clone())),
            Datum::List(items, pos) => {
                if items.len() < 2 {
                    return Err(TreeError::ShortNode { pos: *pos });
                }
                let mut tree = SynTree::from_datum(&items[0])?;
                for item in &items[1..] {
                    tree = SynTree::node(tree, SynTree::from_datum(item)?);
                }
                Ok(tree)
            }
        }
    }

    pub fn leaves(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            SynTree::Leaf(w) => out.push(w),
            SynTree::Node(f, a) => {
                f.collect_leaves(out);
                a.collect_leaves(out);
            }
        }
    }

    /// The head leaf and the arguments of the spine, in order.
    pub fn spine(&self) -> (&str, Vec<&SynTree>) {
        let mut args = Vec::new();
        let mut cur = self;
        while let SynTree::Node(f, a) = cur {
            args.push(&**a);
            cur = f;
        }
        args.reverse();
        match cur {
            SynTree::Leaf(w) => (w, args),
            SynTree::Node(..) => unreachable!(),
        }
    }
}

impl fmt::Display for SynTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SynTree::Leaf(w) => f.write_str(w),
            SynTree::Node(..) => {
                let (head, args) = self.spine();
                write!(f, "({head}")?;
                for a in args {
                    write!(f, " {a}")?;
                }
                f.write_str(")")
            }
        }
    }
}

/// Trees of a session file, in order.
pub fn parse_trees(text: &str) -> Result<Vec<SynTree>, TreeError> {
    sexp::parse_all(text)?.iter().map(SynTree::from_datum).collect()
}

/// Bindings of type variables, in the order they were solved.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TypeSubstitution(IndexMap<String, Type>);

impl TypeSubstitution {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, var: &str) -> Option<&Type> {
        self.0.get(var)
    }

    pub fn insert(&mut self, var: impl Into<String>, ty: Type) {
        self.0.insert(var.into(), ty);
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Type)> {
        self.0.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn apply(&self, ty: &Type) -> Type {
        self.0.iter().fold(ty.clone(), |acc, (v, t)| acc.subst(v, t))
    }
}

impl fmt::Display for TypeSubstitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (v, t)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}:={t}")?;
        }
        f.write_str("}")
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum InstantiationError {
    #[error("cannot match {pattern} against {found}")]
    NoMatch { pattern: Type, found: Type },
    #[error("a term of type {found} cannot take an argument")]
    NotAFunction { found: Type },
}

/// One-way matching of `pattern` against the closed type `target`, binding
/// only the variables in `bindable`.
fn match_type(
    pattern: &Type,
    target: &Type,
    bindable: &BTreeSet<String>,
    subst: &mut TypeSubstitution,
) -> Result<(), (Type, Type)> {
    let clash = || Err((pattern.clone(), target.clone()));
    match (pattern, target) {
        (Type::Var(v), _) if bindable.contains(v) => match subst.get(v) {
            Some(bound) if bound.alpha_eq(target) => Ok(()),
            Some(bound) => Err((bound.clone(), target.clone())),
            None => {
                if target.free_vars().is_empty() {
                    subst.insert(v.clone(), target.clone());
                    Ok(())
                } else {
                    clash()
                }
            }
        },
        (Type::Arrow(a, b), Type::Arrow(c, d)) => {
            match_type(a, c, bindable, subst)?;
            match_type(b, d, bindable, subst)
        }
        (Type::Pi(v, body), Type::Pi(w, tbody)) => {
            let mut inner = bindable.clone();
            inner.remove(v);
            let tbody = tbody.subst(w, &Type::var(v.clone()));
            match_type(body, &tbody, &inner, subst)
        }
        _ if pattern.alpha_eq(target) => Ok(()),
        _ => clash(),
    }
}

/// The type arguments a polymorphic function needs to accept an argument of
/// type `arg_type`. A type that is not Π-quantified needs none.
pub fn infer_type_instantiation(fun_type: &Type, arg_type: &Type) -> Result<TypeSubstitution, InstantiationError> {
    let mut inst = Instantiator::new(fun_type.clone());
    inst.peel();
    inst.accept(arg_type)?;
    Ok(inst.subst)
}

/// Tracks the type of a spine as arguments arrive. Π-bound variables are
/// peeled off when the next argument needs them and solved by matching.
#[derive(Debug, Clone)]
pub struct Instantiator {
    ty: Type,
    pending: Vec<String>,
    subst: TypeSubstitution,
}

impl Instantiator {
    pub fn new(ty: Type) -> Self {
        Instantiator { ty, pending: Vec::new(), subst: TypeSubstitution::new() }
    }

    /// Strips the leading Π binders, returning the variables that now stand
    /// for type arguments.
    pub fn peel(&mut self) -> Vec<String> {
        let mut out = Vec::new();
        while let Type::Pi(v, body) = &self.ty {
            let mut taken = BTreeSet::new();
            body.all_vars(&mut taken);
            taken.extend(self.pending.iter().cloned());
            let name = if self.pending.contains(v) {
                fresh_name(v, |n| taken.contains(n))
            } else {
                v.clone()
            };
            self.ty = body.subst(v, &Type::var(name.clone()));
            self.pending.push(name.clone());
            out.push(name);
        }
        out
    }

    /// Consumes one arrow of the current type for an argument of type
    /// `arg_type`. Leaves the state untouched on failure.
    pub fn accept(&mut self, arg_type: &Type) -> Result<(), InstantiationError> {
        match &self.ty {
            Type::Arrow(dom, cod) => {
                let bindable: BTreeSet<String> = self.pending.iter().cloned().collect();
                let mut next = self.subst.clone();
                match match_type(dom, arg_type, &bindable, &mut next) {
                    Ok(()) => {
                        self.subst = next;
                        self.ty = (**cod).clone();
                        Ok(())
                    }
                    Err(_) => Err(InstantiationError::NoMatch { pattern: self.subst.apply(dom), found: arg_type.clone() }),
                }
            }
            _ => Err(InstantiationError::NotAFunction { found: self.current() }),
        }
    }

    /// The expected type of the next argument, if the current type is an arrow.
    pub fn domain(&self) -> Option<Type> {
        match &self.ty {
            Type::Arrow(dom, _) => Some(self.subst.apply(dom)),
            _ => None,
        }
    }

    pub fn current(&self) -> Type {
        self.subst.apply(&self.ty)
    }

    pub fn substitution(&self) -> &TypeSubstitution {
        &self.subst
    }

    pub fn unsolved(&self) -> impl Iterator<Item = &str> {
        self.pending.iter().filter(|v| self.subst.get(v).is_none()).map(String::as_str)
    }
}

/// Where a coercion was inserted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CoercionSite {
    /// Applied to the argument: `(t x)`.
    Argument,
    /// Passed itself as a functional argument `ξ → α`.
    FunctionalSlot,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoercionUse {
    pub label: String,
    pub rigidity: Rigidity,
    pub source: String,
    pub target: String,
    pub site: CoercionSite,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OccurrenceCoercions {
    pub occurrence: Occurrence,
    pub coercions: Vec<CoercionUse>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RigidityViolation {
    pub occurrence: Occurrence,
    pub labels: Vec<String>,
    pub rigid: Vec<String>,
}

/// Coercions used in one sentence, grouped by word occurrence.
#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct CoercionReport {
    entries: Vec<OccurrenceCoercions>,
}

impl CoercionReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn entries(&self) -> &[OccurrenceCoercions] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Distinct labels used for `occ`, in order of first use.
    pub fn labels(&self, occ: &Occurrence) -> Vec<&str> {
        let mut out: Vec<&str> = Vec::new();
        if let Some(e) = self.entries.iter().find(|e| &e.occurrence == occ) {
            for c in &e.coercions {
                if !out.contains(&c.label.as_str()) {
                    out.push(&c.label);
                }
            }
        }
        out
    }

    fn violation_for(e: &OccurrenceCoercions) -> Option<RigidityViolation> {
        let mut labels: Vec<String> = Vec::new();
        let mut rigid: Vec<String> = Vec::new();
        for c in &e.coercions {
            if !labels.contains(&c.label) {
                labels.push(c.label.clone());
                if c.rigidity == Rigidity::Rigid {
                    rigid.push(c.label.clone());
                }
            }
        }
        (!rigid.is_empty() && labels.len() > 1).then(|| RigidityViolation { occurrence: e.occurrence.clone(), labels, rigid })
    }

    /// Occurrences where a rigid coercion shares its word with another one.
    pub fn violations(&self) -> Vec<RigidityViolation> {
        self.entries.iter().filter_map(Self::violation_for).collect()
    }

    /// Records a use, refusing it if it would break rigidity.
    pub fn record(&mut self, occ: &Occurrence, used: CoercionUse) -> Result<(), ComposeError> {
        let mut next = self.entries.clone();
        let idx = match next.iter().position(|e| &e.occurrence == occ) {
            Some(i) => i,
            None => {
                next.push(OccurrenceCoercions { occurrence: occ.clone(), coercions: Vec::new() });
                next.sort_by(|a, b| a.occurrence.cmp(&b.occurrence));
                next.iter().position(|e| &e.occurrence == occ).expect("just inserted")
            }
        };
        next[idx].coercions.push(used);
        if let Some(v) = Self::violation_for(&next[idx]) {
            return Err(ComposeError::RigidityViolation { word: v.occurrence, labels: v.labels, rigid: v.rigid });
        }
        self.entries = next;
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ComposeError {
    #[error("no lexicon entry for \"{0}\"")]
    NotFound(String),
    #[error("type clash: \"{}\" expects {expected} but \"{}\" is of type {found}", .predicate.word, .argument.word)]
    TypeClash { predicate: Occurrence, argument: Occurrence, expected: Type, found: Type },
    #[error("\"{}\" (of type {found}) cannot take \"{}\" as an argument", .function.word, .argument.word)]
    NotAFunction { function: Occurrence, argument: Occurrence, found: Type },
    #[error("no coercion from {found} to {wanted} in the entry for \"{}\"", .word.word)]
    NoCoercionPath { found: Type, wanted: Type, word: Occurrence },
    #[error("ambiguous coercion from {found} to {wanted} in the entry for \"{}\": {}", .word.word, .labels.join(", "))]
    AmbiguousCoercion { found: Type, wanted: Type, word: Occurrence, labels: Vec<String> },
    #[error("rigidity violation on \"{}\": rigid coercion {} cannot be combined with {}", .word.word, .rigid.join(", "), others(.labels, .rigid))]
    RigidityViolation { word: Occurrence, labels: Vec<String>, rigid: Vec<String> },
    #[error("type variable {tyvar} of \"{}\" is left uninstantiated", .word.word)]
    UnsolvedTypeVar { word: Occurrence, tyvar: String },
    #[error("\"{}\": {error}", .word.word)]
    Discourse { word: Occurrence, error: DiscourseError },
    #[error(transparent)]
    Kernel(#[from] KernelError),
}

fn others(labels: &[String], rigid: &[String]) -> String {
    let rest: Vec<&str> = labels.iter().filter(|l| !rigid.contains(l)).map(String::as_str).collect();
    if rest.is_empty() {
        rigid[1..].join(", ")
    } else {
        rest.join(", ")
    }
}

/// Inserts the coercion of `entry` turning `found` into `wanted`. At an
/// argument site the result is `(o arg)`; in a functional slot it is `o`.
#[allow(clippy::too_many_arguments)]
pub fn insert_coercions(
    arg: &Term,
    found: &Type,
    wanted: &Type,
    entry: &LexEntry,
    occurrence: &Occurrence,
    site: CoercionSite,
    report: &mut CoercionReport,
) -> Result<Term, ComposeError> {
    if found.alpha_eq(wanted) && site == CoercionSite::Argument {
        return Ok(arg.clone());
    }
    let options: Vec<&Coercion> = entry.options_between(found, wanted).collect();
    let o = match options.as_slice() {
        [] => return Err(ComposeError::NoCoercionPath { found: found.clone(), wanted: wanted.clone(), word: occurrence.clone() }),
        [o] => *o,
        many => {
            return Err(ComposeError::AmbiguousCoercion {
                found: found.clone(),
                wanted: wanted.clone(),
                word: occurrence.clone(),
                labels: many.iter().map(|o| o.label.clone()).collect(),
            })
        }
    };
    report.record(
        occurrence,
        CoercionUse {
            label: o.label.clone(),
            rigidity: o.rigidity,
            source: found.to_string(),
            target: wanted.to_string(),
            site,
        },
    )?;
    Ok(match site {
        CoercionSite::Argument => Term::app(o.term.clone(), arg.clone()),
        CoercionSite::FunctionalSlot => o.term.clone(),
    })
}

/// Type arguments supplied to one head word.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Instantiation {
    pub occurrence: Occurrence,
    pub types: Vec<String>,
}

/// A definite or pronoun replaced by a discourse referent's term.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Binding {
    pub occurrence: Occurrence,
    #[serde(serialize_with = "crate::serialize_display")]
    pub term: Term,
    /// Coercion used to reach the referent, if any.
    pub via: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Composition {
    /// The un-normalized term.
    pub term: Term,
    pub ty: Type,
    pub report: CoercionReport,
    pub instantiations: Vec<Instantiation>,
    pub bindings: Vec<Binding>,
    pub discourse: DiscourseState,
}

/// The determiner reading of an entry: its declared mode, or the one implied
/// by a bare choice-operator principal.
pub fn determiner_mode(entry: &LexEntry) -> DeterminerMode {
    match (entry.mode, entry.principal.const_name()) {
        (DeterminerMode::None, Some(EPS)) => DeterminerMode::Indefinite,
        (DeterminerMode::None, Some(IEPS)) => DeterminerMode::Definite,
        (DeterminerMode::None, Some(TAU)) => DeterminerMode::Universal,
        (m, _) => m,
    }
}

struct Composed {
    term: Term,
    ty: Type,
    /// The word whose entry supplies coercions for this constituent.
    head: Occurrence,
}

struct Composer<'a> {
    lex: &'a Lexicon,
    ctx: &'a TypingContext,
    next_leaf: usize,
    report: CoercionReport,
    instantiations: Vec<Instantiation>,
    bindings: Vec<Binding>,
    discourse: DiscourseState,
}

enum Op {
    Ty(String),
    Arg(Term),
}

/// Assembles the term of `tree`. The discourse state is read for definites
/// and pronouns and the extended state is returned; the input is untouched.
pub fn compose(tree: &SynTree, lex: &Lexicon, discourse: &DiscourseState) -> Result<Composition, ComposeError> {
    let mut c = Composer {
        lex,
        ctx: lex.context(),
        next_leaf: 0,
        report: CoercionReport::new(),
        instantiations: Vec::new(),
        bindings: Vec::new(),
        discourse: discourse.clone(),
    };
    let out = c.tree(tree)?;
    let ty = type_of(c.ctx, &out.term)?;
    Ok(Composition {
        term: out.term,
        ty,
        report: c.report,
        instantiations: c.instantiations,
        bindings: c.bindings,
        discourse: c.discourse,
    })
}

impl<'a> Composer<'a> {
    fn entry(&self, word: &str) -> Result<&'a LexEntry, ComposeError> {
        self.lex.lookup_entry(word).map_err(|_| ComposeError::NotFound(word.to_string()))
    }

    fn leaf(&mut self, word: &str) -> Result<Composed, ComposeError> {
        let entry = self.entry(word)?;
        let occ = Occurrence { index: self.next_leaf, word: word.to_string() };
        self.next_leaf += 1;
        if entry.mode == DeterminerMode::Pronoun {
            let term = self
                .discourse
                .resolve_pronoun(entry.ty.as_sort())
                .map_err(|error| ComposeError::Discourse { word: occ.clone(), error })?;
            self.bindings.push(Binding { occurrence: occ.clone(), term: term.clone(), via: None });
            return Ok(Composed { term, ty: entry.ty.clone(), head: occ });
        }
        Ok(Composed { term: entry.principal.clone(), ty: entry.ty.clone(), head: occ })
    }

    fn tree(&mut self, tree: &SynTree) -> Result<Composed, ComposeError> {
        let (head_word, args) = tree.spine();
        let head = self.leaf(head_word)?;
        let mode = determiner_mode(self.entry(head_word)?);
        let mut args = args.into_iter();
        if mode.is_determiner() {
            if let Some(first) = args.next() {
                let restriction = self.tree(first)?;
                let noun = restriction.head.clone();
                let dp = Composed { head: noun, ..self.apply(head, vec![restriction])? };
                let dp = self.notify(dp, mode)?;
                let rest = args.map(|a| self.tree(a)).collect::<Result<Vec<_>, _>>()?;
                return if rest.is_empty() { Ok(dp) } else { self.apply(dp, rest) };
            }
            return Ok(head);
        }
        let args = args.map(|a| self.tree(a)).collect::<Result<Vec<_>, _>>()?;
        if args.is_empty() {
            Ok(head)
        } else {
            self.apply(head, args)
        }
    }

    /// Registers or resolves the referent of a determiner phrase.
    fn notify(&mut self, dp: Composed, mode: DeterminerMode) -> Result<Composed, ComposeError> {
        let (Some(sort), Term::App(op, pred)) = (dp.ty.as_sort().map(str::to_string), &dp.term) else {
            return Ok(dp);
        };
        if !matches!(**op, Term::TyApp(..)) {
            return Ok(dp);
        }
        let pred = normalize(pred)?;
        let normal = normalize(&dp.term)?;
        match mode {
            DeterminerMode::Indefinite => {
                self.discourse.push(normal, &sort, pred, dp.head.clone());
                Ok(dp)
            }
            DeterminerMode::Definite => match self.discourse.resolve_definite(self.lex, &sort, &pred) {
                Some(res) => {
                    let term = res.term();
                    self.bindings.push(Binding {
                        occurrence: dp.head.clone(),
                        term: term.clone(),
                        via: res.via.as_ref().map(|c| c.label.clone()),
                    });
                    Ok(Composed { term, ..dp })
                }
                None => {
                    self.discourse.push(normal, &sort, pred, dp.head.clone());
                    Ok(dp)
                }
            },
            _ => Ok(dp),
        }
    }

    fn apply(&mut self, head: Composed, args: Vec<Composed>) -> Result<Composed, ComposeError> {
        let mut inst = Instantiator::new(head.ty.clone());
        let mut ops = Vec::new();
        for arg in &args {
            ops.extend(inst.peel().into_iter().map(Op::Ty));
            let arg_term = match inst.accept(&arg.ty) {
                Ok(()) => arg.term.clone(),
                Err(InstantiationError::NotAFunction { found }) => {
                    return Err(ComposeError::NotAFunction { function: head.head.clone(), argument: arg.head.clone(), found })
                }
                Err(InstantiationError::NoMatch { pattern, found }) => {
                    let wanted = match (&pattern, &found) {
                        (Type::Sort(w), Type::Sort(f)) if w != T && f != T && w != EVENT && f != EVENT => pattern.clone(),
                        _ => {
                            return Err(ComposeError::TypeClash {
                                predicate: head.head.clone(),
                                argument: arg.head.clone(),
                                expected: pattern,
                                found,
                            })
                        }
                    };
                    let entry = self.entry(&arg.head.word)?;
                    let coerced = insert_coercions(&arg.term, &found, &wanted, entry, &arg.head, CoercionSite::Argument, &mut self.report)
                        .map_err(|e| match e {
                            ComposeError::NoCoercionPath { found, wanted, .. } => ComposeError::TypeClash {
                                predicate: head.head.clone(),
                                argument: arg.head.clone(),
                                expected: wanted,
                                found,
                            },
                            other => other,
                        })?;
                    inst.accept(&wanted).expect("coerced argument has the expected type");
                    coerced
                }
            };
            ops.push(Op::Arg(arg_term));
        }
        self.fill_slots(&mut inst, &mut ops, &args)?;
        if let Some(v) = inst.unsolved().next() {
            return Err(ComposeError::UnsolvedTypeVar { word: head.head.clone(), tyvar: v.to_string() });
        }

        let subst = inst.substitution().clone();
        let mut types = Vec::new();
        let mut term = head.term;
        for op in ops {
            term = match op {
                Op::Ty(v) => {
                    let ty = subst.apply(&Type::var(v));
                    types.push(ty.to_string());
                    Term::tyapp(term, ty)
                }
                Op::Arg(a) => Term::app(term, a),
            };
        }
        if !types.is_empty() {
            self.instantiations.push(Instantiation { occurrence: head.head.clone(), types });
        }
        let ty = inst.current();
        Ok(Composed { term, ty, head: head.head })
    }

    /// Fills trailing `S1 → S2` parameters with coercions taken from the most
    /// recent argument of sort `S1`.
    fn fill_slots(&mut self, inst: &mut Instantiator, ops: &mut Vec<Op>, args: &[Composed]) -> Result<(), ComposeError> {
        while let Some(Type::Arrow(src, dst)) = inst.domain() {
            let (Some(s1), Some(s2)) = (src.as_sort(), dst.as_sort()) else { break };
            if [s1, s2].iter().any(|s| *s == T || *s == EVENT) {
                break;
            }
            let Some(donor) = args.iter().rev().find(|a| a.ty.as_sort() == Some(s1)) else { break };
            let entry = self.entry(&donor.head.word)?;
            let term = insert_coercions(&donor.term, &src, &dst, entry, &donor.head, CoercionSite::FunctionalSlot, &mut self.report)?;
            inst.accept(&Type::arrow((*src).clone(), (*dst).clone()))
                .expect("slot filler has the slot type");
            ops.push(Op::Arg(term));
        }
        Ok(())
    }
}
