use super::context::TypingContext;
use super::term::Term;
use super::types::Type;
use super::KernelError;

/// Computes the type of `term` in `ctx`.
///
/// Constants and free variables must be declared in `ctx` with a type equal
/// (up to α) to their annotation.
pub fn type_of(ctx: &TypingContext, term: &Term) -> Result<Type, KernelError> {
    Checker { ctx: Some(ctx), env: Vec::new(), tyvars: Vec::new() }.infer(term)
}

/// Like [`type_of`] but trusts the annotations of constants and free
/// variables; useful for terms that have already been checked once.
pub fn type_of_annotated(term: &Term) -> Result<Type, KernelError> {
    Checker { ctx: None, env: Vec::new(), tyvars: Vec::new() }.infer(term)
}

struct Checker<'a> {
    ctx: Option<&'a TypingContext>,
    env: Vec<(String, Type)>,
    tyvars: Vec<String>,
}

impl Checker<'_> {
    fn wf(&self, ty: &Type) -> Result<(), KernelError> {
        match self.ctx {
            Some(ctx) => ctx.check_type_wf(ty, &self.tyvars),
            None => {
                let free = ty.free_vars();
                match free.into_iter().find(|v| !self.tyvars.contains(v)) {
                    Some(v) => Err(KernelError::UnboundTypeVar(v)),
                    None => Ok(()),
                }
            }
        }
    }

    fn lookup_var(&self, x: &str) -> Option<Type> {
        if let Some((_, ty)) = self.env.iter().rev().find(|(n, _)| n == x) {
            return Some(ty.clone());
        }
        self.ctx.and_then(|c| c.lookup(x)).map(|d| d.ty.clone())
    }

    fn infer(&mut self, term: &Term) -> Result<Type, KernelError> {
        match term {
            Term::Var(x, ann) => {
                let declared = match self.lookup_var(x) {
                    Some(ty) => ty,
                    None if self.ctx.is_none() => {
                        self.wf(ann)?;
                        ann.clone()
                    }
                    None => return Err(KernelError::UnboundName { name: x.clone(), pos: None }),
                };
                if !declared.alpha_eq(ann) {
                    return Err(KernelError::TypeClash { expected: declared, found: ann.clone(), at: x.clone() });
                }
                Ok(declared)
            }
            Term::Const(c, ann) => match self.ctx {
                Some(ctx) => match ctx.lookup(c) {
                    Some(decl) if decl.ty.alpha_eq(ann) => Ok(decl.ty.clone()),
                    Some(decl) => Err(KernelError::TypeClash { expected: decl.ty.clone(), found: ann.clone(), at: c.clone() }),
                    None => Err(KernelError::UnboundName { name: c.clone(), pos: None }),
                },
                None => {
                    if !ann.is_closed() {
                        return Err(KernelError::UnboundTypeVar(ann.free_vars().into_iter().next().unwrap_or_default()));
                    }
                    Ok(ann.clone())
                }
            },
            Term::App(f, a) => {
                let fty = self.infer(f)?;
                let aty = self.infer(a)?;
                match fty {
                    Type::Arrow(dom, cod) => {
                        if dom.alpha_eq(&aty) {
                            Ok(*cod)
                        } else {
                            Err(KernelError::TypeClash { expected: *dom, found: aty, at: term.to_string() })
                        }
                    }
                    other => Err(KernelError::NotAFunction { found: other, at: term.to_string() }),
                }
            }
            Term::Lam(x, ty, body) => {
                self.wf(ty)?;
                self.env.push((x.clone(), ty.clone()));
                let bty = self.infer(body);
                self.env.pop();
                Ok(Type::arrow(ty.clone(), bty?))
            }
            Term::TyApp(f, ty) => {
                self.wf(ty)?;
                match self.infer(f)? {
                    Type::Pi(v, body) => Ok(body.subst(&v, ty)),
                    other => Err(KernelError::NotPolymorphic { found: other, at: term.to_string() }),
                }
            }
            Term::TyLam(a, body) => {
                for x in body.free_vars() {
                    let xty = match self.lookup_var(&x) {
                        Some(ty) => ty,
                        None => continue,
                    };
                    if xty.has_free_var(a) {
                        return Err(KernelError::TyLamEscape { tyvar: a.clone(), var: x, var_type: xty });
                    }
                }
                self.tyvars.push(a.clone());
                let bty = self.infer(body);
                self.tyvars.pop();
                Ok(Type::pi(a.clone(), bty?))
            }
        }
    }
}
