//! The second-order typed calculus: types, terms, type checking,
//! capture-avoiding substitution, α-equivalence and β/type-β normalization.

mod alpha;
mod context;
mod parse;
mod reduce;
mod subst;
mod term;
mod typing;
mod types;

use thiserror::Error;

use crate::sexp::{Pos, SexpError};

pub use alpha::{alpha_eq, canonical, canonical_type, NamelessTerm, NamelessType};
pub use context::{
    builtin_constants, choice_type, is_builtin, quantifier_type, Declaration, NameKind, TypingContext, AND, EPS,
    EQ, EXISTS, FALSE, FORALL, IEPS, IMPLIES, NOT, OR, TAU, TRUE,
};
pub use parse::{parse_term, parse_type, term_from_datum, type_from_datum};
pub use reduce::{normalize, normalize_with, step, Normalization, Strategy, DEFAULT_STEP_BUDGET};
pub use subst::{subst_term, subst_type};
pub use term::{SpineArg, Term};
pub use typing::{type_of, type_of_annotated};
pub use types::{fresh_name, Type, E, EVENT, T};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum KernelError {
    #[error(transparent)]
    Sexp(#[from] SexpError),
    #[error("{pos}: {message}")]
    Syntax { pos: Pos, message: String },
    #[error("unknown sort `{sort}`{}", fmt_pos(.pos))]
    UnknownSort { sort: String, pos: Option<Pos> },
    #[error("unbound type variable `{0}`")]
    UnboundTypeVar(String),
    #[error("unbound name `{name}`{}", fmt_pos(.pos))]
    UnboundName { name: String, pos: Option<Pos> },
    #[error("`{0}` is already declared")]
    Duplicate(String),
    #[error("type clash in `{at}`: expected {expected}, found {found}")]
    TypeClash { expected: Type, found: Type, at: String },
    #[error("`{at}` applies a non-function of type {found}")]
    NotAFunction { found: Type, at: String },
    #[error("`{at}` instantiates a non-polymorphic term of type {found}")]
    NotPolymorphic { found: Type, at: String },
    #[error("cannot abstract over `{tyvar}`: free variable `{var}` has type {var_type}")]
    TyLamEscape { tyvar: String, var: String, var_type: Type },
    #[error("normalization exceeded its budget of {0} steps")]
    StepBudgetExceeded(usize),
}

fn fmt_pos(pos: &Option<Pos>) -> String {
    pos.map(|p| format!(" at {p}")).unwrap_or_default()
}
