use std::collections::BTreeSet;

use indexmap::IndexMap;

use super::types::{Type, E, EVENT, T};
use super::KernelError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NameKind {
    Variable,
    Constant,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Declaration {
    pub ty: Type,
    pub kind: NameKind,
}

/// Declared sorts plus an ordered table of variable and constant types.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypingContext {
    sorts: BTreeSet<String>,
    names: IndexMap<String, Declaration>,
}

pub const EPS: &str = "eps";
pub const IEPS: &str = "ieps";
pub const TAU: &str = "tau";
pub const AND: &str = "and";
pub const OR: &str = "or";
pub const IMPLIES: &str = "implies";
pub const NOT: &str = "not";
pub const EXISTS: &str = "exists";
pub const FORALL: &str = "forall";
pub const EQ: &str = "eq";
pub const TRUE: &str = "true";
pub const FALSE: &str = "false";

/// `Πα. (α → t) → α`, shared by the three choice operators.
pub fn choice_type() -> Type {
    Type::pi("α", Type::arrow(Type::arrow(Type::var("α"), Type::truth()), Type::var("α")))
}

pub fn quantifier_type() -> Type {
    Type::pi("α", Type::arrow(Type::arrow(Type::var("α"), Type::truth()), Type::truth()))
}

pub fn builtin_constants() -> Vec<(&'static str, Type)> {
    let t = Type::truth;
    let binary = Type::arrow(t(), Type::arrow(t(), t()));
    vec![
        (EPS, choice_type()),
        (IEPS, choice_type()),
        (TAU, choice_type()),
        (AND, binary.clone()),
        (OR, binary.clone()),
        (IMPLIES, binary),
        (NOT, Type::arrow(t(), t())),
        (EXISTS, quantifier_type()),
        (FORALL, quantifier_type()),
        (EQ, Type::pi("α", Type::arrow(Type::var("α"), Type::arrow(Type::var("α"), t())))),
        (TRUE, t()),
        (FALSE, t()),
    ]
}

pub fn is_builtin(name: &str) -> bool {
    builtin_constants().iter().any(|(n, _)| *n == name)
}

impl Default for TypingContext {
    fn default() -> Self {
        Self::new()
    }
}

impl TypingContext {
    /// A context with the always-present sorts `t`, `e`, `event` and the
    /// logical constants.
    pub fn new() -> Self {
        let mut ctx = TypingContext::empty();
        for (name, ty) in builtin_constants() {
            ctx.names.insert(name.to_string(), Declaration { ty, kind: NameKind::Constant });
        }
        ctx
    }

    /// Built-in sorts only, no constants.
    pub fn empty() -> Self {
        TypingContext {
            sorts: [T, E, EVENT].iter().map(|s| s.to_string()).collect(),
            names: IndexMap::new(),
        }
    }

    pub fn declare_sort(&mut self, sort: impl Into<String>) {
        self.sorts.insert(sort.into());
    }

    pub fn has_sort(&self, sort: &str) -> bool {
        self.sorts.contains(sort)
    }

    pub fn sorts(&self) -> impl Iterator<Item = &str> {
        self.sorts.iter().map(String::as_str)
    }

    /// Entity sorts: everything declared except `t` and `event`.
    pub fn entity_sorts(&self) -> impl Iterator<Item = &str> {
        self.sorts().filter(|s| *s != T && *s != EVENT)
    }

    pub fn declare_const(&mut self, name: impl Into<String>, ty: Type) -> Result<(), KernelError> {
        self.declare(name.into(), ty, NameKind::Constant)
    }

    pub fn declare_var(&mut self, name: impl Into<String>, ty: Type) -> Result<(), KernelError> {
        self.declare(name.into(), ty, NameKind::Variable)
    }

    fn declare(&mut self, name: String, ty: Type, kind: NameKind) -> Result<(), KernelError> {
        self.check_type_wf(&ty, &[])?;
        if self.names.contains_key(&name) {
            return Err(KernelError::Duplicate(name));
        }
        self.names.insert(name, Declaration { ty, kind });
        Ok(())
    }

    pub fn lookup(&self, name: &str) -> Option<&Declaration> {
        self.names.get(name)
    }

    pub fn constants(&self) -> impl Iterator<Item = (&str, &Type)> {
        self.names
            .iter()
            .filter(|(_, d)| d.kind == NameKind::Constant)
            .map(|(n, d)| (n.as_str(), &d.ty))
    }

    pub fn variables(&self) -> impl Iterator<Item = (&str, &Type)> {
        self.names
            .iter()
            .filter(|(_, d)| d.kind == NameKind::Variable)
            .map(|(n, d)| (n.as_str(), &d.ty))
    }

    /// Sorts must be declared; type variables must be bound by an enclosing Π
    /// or by one of `tyvars`.
    pub fn check_type_wf(&self, ty: &Type, tyvars: &[String]) -> Result<(), KernelError> {
        fn go(ctx: &TypingContext, ty: &Type, bound: &mut Vec<String>) -> Result<(), KernelError> {
            match ty {
                Type::Sort(s) => {
                    if ctx.has_sort(s) {
                        Ok(())
                    } else {
                        Err(KernelError::UnknownSort { sort: s.clone(), pos: None })
                    }
                }
                Type::Var(v) => {
                    if bound.contains(v) {
                        Ok(())
                    } else {
                        Err(KernelError::UnboundTypeVar(v.clone()))
                    }
                }
                Type::Arrow(a, b) => {
                    go(ctx, a, bound)?;
                    go(ctx, b, bound)
                }
                Type::Pi(v, body) => {
                    bound.push(v.clone());
                    let r = go(ctx, body, bound);
                    bound.pop();
                    r
                }
            }
        }
        go(self, ty, &mut tyvars.to_vec())
    }
}
