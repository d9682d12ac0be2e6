//! Seeded generators and oracles shared by the property and acceptance suites.
#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use lexsem::kernel::{builtin_constants, Term, Type, TypingContext};
use lexsem::logic::{EpsMode, Formula, LTerm};
use lexsem::model::Model;

pub const MAX_DEPTH: usize = 7;

fn s(name: &str) -> Type {
    Type::sort(name)
}

fn arr(a: Type, b: Type) -> Type {
    Type::arrow(a, b)
}

fn builtin(name: &str) -> Term {
    let ty = builtin_constants().into_iter().find(|(n, _)| *n == name).map(|(_, t)| t).unwrap();
    Term::constant(name, ty)
}

/// The non-logical constants the generator draws from: one per type it asks for.
pub fn signature() -> Vec<(&'static str, Type)> {
    vec![
        ("a", s("e")),
        ("b", s("ani")),
        ("p", arr(s("e"), Type::truth())),
        ("q", arr(s("ani"), Type::truth())),
        ("f", arr(s("e"), s("e"))),
        ("r", arr(s("e"), arr(s("ani"), Type::truth()))),
    ]
}

pub fn context() -> TypingContext {
    let mut ctx = TypingContext::new();
    ctx.declare_sort("ani");
    for (n, ty) in signature() {
        ctx.declare_const(n, ty).unwrap();
    }
    ctx
}

/// Height of the syntax tree; a leaf has height 0.
pub fn depth(t: &Term) -> usize {
    match t {
        Term::Var(..) | Term::Const(..) => 0,
        Term::App(f, a) => 1 + depth(f).max(depth(a)),
        Term::Lam(_, _, b) | Term::TyLam(_, b) => 1 + depth(b),
        Term::TyApp(f, _) => 1 + depth(f),
    }
}

/// Random well-typed terms of bounded height over [`signature`], full of
/// β and type-β redexes and reusing the names x, y, z to provoke capture.
pub struct TermGen {
    rng: ChaCha8Rng,
}

const NAMES: [&str; 3] = ["x", "y", "z"];

impl TermGen {
    pub fn new(seed: u64) -> Self {
        TermGen { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    fn sort(&mut self) -> Type {
        if self.rng.gen_bool(0.5) { s("e") } else { s("ani") }
    }

    fn basic(&mut self) -> Type {
        let all = [s("e"), s("ani"), Type::truth(), arr(s("e"), Type::truth()), arr(s("ani"), Type::truth())];
        all.choose(&mut self.rng).unwrap().clone()
    }

    pub fn top_type(&mut self) -> Type {
        let all = [
            Type::truth(),
            Type::truth(),
            s("e"),
            s("ani"),
            arr(s("e"), Type::truth()),
            arr(s("ani"), Type::truth()),
            arr(s("e"), s("e")),
            arr(Type::truth(), Type::truth()),
        ];
        all.choose(&mut self.rng).unwrap().clone()
    }

    fn leaf(&mut self, ty: &Type, env: &[(String, Type)]) -> Term {
        // Only the innermost binding of each name is visible.
        let mut options: Vec<Term> = NAMES
            .iter()
            .filter_map(|n| env.iter().rev().find(|(m, _)| m == n))
            .filter(|(_, t)| t == ty)
            .map(|(n, t)| Term::var(n.clone(), t.clone()))
            .collect();
        options.extend(signature().into_iter().filter(|(_, t)| t == ty).map(|(n, t)| Term::constant(n, t)));
        if ty.is_truth() {
            options.push(builtin("true"));
            options.push(builtin("false"));
        }
        if *ty == arr(Type::truth(), Type::truth()) {
            options.push(builtin("not"));
        }
        options.choose(&mut self.rng).cloned().unwrap_or_else(|| panic!("no leaf of type {ty}"))
    }

    pub fn term(&mut self, ty: &Type, depth: usize) -> Term {
        self.gen(ty, &mut Vec::new(), depth)
    }

    fn gen(&mut self, ty: &Type, env: &mut Vec<(String, Type)>, d: usize) -> Term {
        if d == 0 || self.rng.gen_ratio(1, 6) {
            return self.leaf(ty, env);
        }
        for _ in 0..32 {
            match self.rng.gen_range(0..9) {
                0 if d >= 2 => {
                    let a = self.basic();
                    let x = NAMES.choose(&mut self.rng).unwrap().to_string();
                    env.push((x.clone(), a.clone()));
                    let body = self.gen(ty, env, d - 2);
                    env.pop();
                    let arg = self.gen(&a, env, d - 1);
                    return Term::app(Term::lam(x, a, body), arg);
                }
                1 if d >= 4 => {
                    let id = Term::tylam("α", Term::lam("x", Type::var("α"), Term::var("x", Type::var("α"))));
                    let arg = self.gen(ty, env, d - 1);
                    return Term::app(Term::tyapp(id, ty.clone()), arg);
                }
                2 if d >= 2 => {
                    let body = self.gen(ty, env, d - 2);
                    let sigma = self.sort();
                    return Term::tyapp(Term::tylam("β", body), sigma);
                }
                3 => {
                    if let Type::Arrow(a, b) = ty {
                        let x = NAMES.choose(&mut self.rng).unwrap().to_string();
                        env.push((x.clone(), (**a).clone()));
                        let body = self.gen(b, env, d - 1);
                        env.pop();
                        return Term::lam(x, (**a).clone(), body);
                    }
                }
                4 => {
                    let arrows = [
                        (s("e"), Type::truth()),
                        (s("ani"), Type::truth()),
                        (s("e"), s("e")),
                        (Type::truth(), Type::truth()),
                        (s("e"), arr(s("ani"), Type::truth())),
                    ];
                    let fitting: Vec<_> = arrows.iter().filter(|(_, c)| c == ty).collect();
                    if let Some((a, _)) = fitting.choose(&mut self.rng) {
                        let f = self.gen(&arr(a.clone(), ty.clone()), env, d - 1);
                        let x = self.gen(a, env, d - 1);
                        return Term::app(f, x);
                    }
                }
                5 if ty.is_truth() && d >= 2 => {
                    let op = ["and", "or", "implies"].choose(&mut self.rng).unwrap();
                    let l = self.gen(ty, env, d - 2);
                    let r = self.gen(ty, env, d - 1);
                    return Term::app(Term::app(builtin(op), l), r);
                }
                6 if ty.is_truth() && d >= 2 => {
                    let q = if self.rng.gen_bool(0.5) { "exists" } else { "forall" };
                    let sigma = self.sort();
                    let body = self.gen(&arr(sigma.clone(), Type::truth()), env, d - 1);
                    return Term::app(Term::tyapp(builtin(q), sigma), body);
                }
                7 if ty.is_truth() && d >= 3 => {
                    let sigma = self.sort();
                    let l = self.gen(&sigma, env, d - 2);
                    let r = self.gen(&sigma, env, d - 1);
                    return Term::app(Term::app(Term::tyapp(builtin("eq"), sigma), l), r);
                }
                8 if ty.as_sort().is_some_and(|x| x != "t") && d >= 2 => {
                    let op = ["eps", "ieps", "tau"].choose(&mut self.rng).unwrap();
                    let body = self.gen(&arr(ty.clone(), Type::truth()), env, d - 1);
                    return Term::app(Term::tyapp(builtin(op), ty.clone()), body);
                }
                _ => {}
            }
        }
        self.leaf(ty, env)
    }
}

/// Independent α-equivalence oracle: bound names become their binder
/// level, then terms are compared syntactically.
pub fn alpha_oracle(a: &Term, b: &Term) -> bool {
    level_rename(a, &mut Vec::new(), &mut Vec::new()) == level_rename(b, &mut Vec::new(), &mut Vec::new())
}

fn level_type(ty: &Type, tenv: &mut Vec<(String, String)>) -> Type {
    match ty {
        Type::Sort(_) => ty.clone(),
        Type::Var(v) => match tenv.iter().rev().find(|(o, _)| o == v) {
            Some((_, n)) => Type::var(n.clone()),
            None => ty.clone(),
        },
        Type::Arrow(a, b) => Type::arrow(level_type(a, tenv), level_type(b, tenv)),
        Type::Pi(v, body) => {
            let n = format!("'{}", tenv.len());
            tenv.push((v.clone(), n.clone()));
            let out = Type::pi(n, level_type(body, tenv));
            tenv.pop();
            out
        }
    }
}

fn level_rename(t: &Term, env: &mut Vec<(String, String)>, tenv: &mut Vec<(String, String)>) -> Term {
    match t {
        Term::Var(x, ty) => {
            let name = env.iter().rev().find(|(o, _)| o == x).map(|(_, n)| n.clone()).unwrap_or_else(|| x.clone());
            Term::var(name, level_type(ty, tenv))
        }
        Term::Const(c, ty) => Term::constant(c.clone(), level_type(ty, tenv)),
        Term::App(f, a) => Term::app(level_rename(f, env, tenv), level_rename(a, env, tenv)),
        Term::Lam(x, ty, body) => {
            let ty = level_type(ty, tenv);
            let n = format!("_{}", env.len());
            env.push((x.clone(), n.clone()));
            let out = Term::lam(n, ty, level_rename(body, env, tenv));
            env.pop();
            out
        }
        Term::TyApp(f, ty) => Term::tyapp(level_rename(f, env, tenv), level_type(ty, tenv)),
        Term::TyLam(v, body) => {
            let n = format!("'{}", tenv.len());
            tenv.push((v.clone(), n.clone()));
            let out = Term::tylam(n, level_rename(body, env, tenv));
            tenv.pop();
            out
        }
    }
}

/// Renames every bound variable to a never-used name.
pub fn scramble(t: &Term, counter: &mut usize) -> Term {
    fn go(t: &Term, env: &mut Vec<(String, String)>, counter: &mut usize) -> Term {
        match t {
            Term::Var(x, ty) => {
                let name = env.iter().rev().find(|(o, _)| o == x).map(|(_, n)| n.clone()).unwrap_or_else(|| x.clone());
                Term::var(name, ty.clone())
            }
            Term::Const(..) => t.clone(),
            Term::App(f, a) => Term::app(go(f, env, counter), go(a, env, counter)),
            Term::Lam(x, ty, body) => {
                *counter += 1;
                let n = format!("w{counter}");
                env.push((x.clone(), n.clone()));
                let out = Term::lam(n, ty.clone(), go(body, env, counter));
                env.pop();
                out
            }
            Term::TyApp(f, ty) => Term::tyapp(go(f, env, counter), ty.clone()),
            Term::TyLam(v, body) => Term::tylam(v.clone(), go(body, env, counter)),
        }
    }
    go(t, &mut Vec::new(), counter)
}

/// Random closed formulas over fixed symbol sorts, so that a signature read
/// off the formula determines every parse.
pub struct FormulaGen {
    rng: ChaCha8Rng,
}

const SORTS: [&str; 2] = ["e", "ani"];
const CONSTS: [(&str, &str); 3] = [("a", "e"), ("b", "ani"), ("c", "ani")];
const FUNCS: [(&str, &str); 2] = [("f", "e"), ("g", "ani")];
const PREDS: [&str; 3] = ["p", "q", "r"];

impl FormulaGen {
    pub fn new(seed: u64) -> Self {
        FormulaGen { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn formula(&mut self, depth: usize) -> Formula {
        self.f(&mut Vec::new(), depth)
    }

    fn f(&mut self, env: &mut Vec<(String, String)>, d: usize) -> Formula {
        let choice = if d == 0 { self.rng.gen_range(0..3) } else { self.rng.gen_range(0..10) };
        match choice {
            0 => Formula::truth(self.rng.gen_bool(0.5)),
            1 | 2 => {
                let name = PREDS.choose(&mut self.rng).unwrap();
                let n = self.rng.gen_range(0..3);
                let args = (0..n).map(|_| self.t(env, d.saturating_sub(1))).collect();
                Formula::pred(*name, args)
            }
            3 => Formula::and(self.f(env, d - 1), self.f(env, d - 1)),
            4 => Formula::or(self.f(env, d - 1), self.f(env, d - 1)),
            5 => Formula::implies(self.f(env, d - 1), self.f(env, d - 1)),
            6 => Formula::not(self.f(env, d - 1)),
            7 | 8 => {
                let x = NAMES.choose(&mut self.rng).unwrap().to_string();
                let sort = SORTS.choose(&mut self.rng).unwrap().to_string();
                env.push((x.clone(), sort.clone()));
                let body = self.f(env, d - 1);
                env.pop();
                if choice == 7 { Formula::exists(x, sort, body) } else { Formula::forall(x, sort, body) }
            }
            _ => Formula::eq(self.t(env, d - 1), self.t(env, d - 1)),
        }
    }

    fn t(&mut self, env: &mut Vec<(String, String)>, d: usize) -> LTerm {
        let choice = if d == 0 { self.rng.gen_range(0..2) } else { self.rng.gen_range(0..4) };
        match choice {
            0 if !env.is_empty() => {
                let (x, _) = env.choose(&mut self.rng).unwrap().clone();
                let sort = env.iter().rev().find(|(y, _)| *y == x).unwrap().1.clone();
                LTerm::var(x, sort)
            }
            0 | 1 => {
                let (c, sort) = CONSTS.choose(&mut self.rng).unwrap();
                LTerm::constant(*c, *sort)
            }
            2 => {
                let (name, sort) = FUNCS.choose(&mut self.rng).unwrap();
                let n = self.rng.gen_range(1..3);
                LTerm::app(*name, (0..n).map(|_| self.t(env, d - 1)).collect(), *sort)
            }
            _ => {
                let mode = *[EpsMode::Indefinite, EpsMode::Definite, EpsMode::Universal].choose(&mut self.rng).unwrap();
                let x = NAMES.choose(&mut self.rng).unwrap().to_string();
                let sort = SORTS.choose(&mut self.rng).unwrap().to_string();
                env.push((x.clone(), sort.clone()));
                let body = self.f(env, d - 1);
                env.pop();
                LTerm::eps(mode, x, sort, body)
            }
        }
    }
}

/// Every model with one carrier `sort` of `n` elements and one unary
/// predicate `name`, as (model, extension) pairs.
pub fn unary_models(sort: &str, name: &str, n: usize) -> Vec<(Model, BTreeSet<String>)> {
    let elems: Vec<String> = (1..=n).map(|i| format!("{sort}{i}")).collect();
    (0..1u32 << n)
        .map(|mask| {
            let ext: BTreeSet<String> = elems.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, x)| x.clone()).collect();
            let m = Model::new()
                .with_carrier(sort, elems.clone())
                .with_interp(name, ext.iter().map(|x| vec![x.clone()]));
            (m, ext)
        })
        .collect()
}
