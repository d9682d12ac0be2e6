use std::collections::BTreeSet;
use std::fmt;

/// Truth values.
pub const T: &str = "t";
/// The sort of all entities.
pub const E: &str = "e";
pub const EVENT: &str = "event";

/// Types of the second-order calculus: base sorts, type variables, arrows and
/// Π-quantified types.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Type {
    Sort(String),
    Var(String),
    Arrow(Box<Type>, Box<Type>),
    Pi(String, Box<Type>),
}

impl Type {
    pub fn sort(name: impl Into<String>) -> Type {
        Type::Sort(name.into())
    }

    pub fn var(name: impl Into<String>) -> Type {
        Type::Var(name.into())
    }

    pub fn arrow(dom: Type, cod: Type) -> Type {
        Type::Arrow(Box::new(dom), Box::new(cod))
    }

    pub fn pi(var: impl Into<String>, body: Type) -> Type {
        Type::Pi(var.into(), Box::new(body))
    }

    pub fn truth() -> Type {
        Type::sort(T)
    }

    pub fn is_truth(&self) -> bool {
        matches!(self, Type::Sort(s) if s == T)
    }

    pub fn as_sort(&self) -> Option<&str> {
        match self {
            Type::Sort(s) => Some(s),
            _ => None,
        }
    }

    /// `σ → t` for an entity sort σ; returns σ.
    pub fn predicate_domain(&self) -> Option<&str> {
        match self {
            Type::Arrow(d, c) if c.is_truth() => d.as_sort(),
            _ => None,
        }
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        match self {
            Type::Sort(_) => {}
            Type::Var(v) => {
                if !bound.contains(v) {
                    out.insert(v.clone());
                }
            }
            Type::Arrow(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Type::Pi(v, body) => {
                bound.push(v.clone());
                body.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    pub fn has_free_var(&self, v: &str) -> bool {
        match self {
            Type::Sort(_) => false,
            Type::Var(w) => w == v,
            Type::Arrow(a, b) => a.has_free_var(v) || b.has_free_var(v),
            Type::Pi(w, body) => w != v && body.has_free_var(v),
        }
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// Every name bound or free in the type; used when picking fresh names.
    pub fn all_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Type::Sort(_) => {}
            Type::Var(v) => {
                out.insert(v.clone());
            }
            Type::Arrow(a, b) => {
                a.all_vars(out);
                b.all_vars(out);
            }
            Type::Pi(v, body) => {
                out.insert(v.clone());
                body.all_vars(out);
            }
        }
    }

    pub fn sorts(&self, out: &mut BTreeSet<String>) {
        match self {
            Type::Sort(s) => {
                out.insert(s.clone());
            }
            Type::Var(_) => {}
            Type::Arrow(a, b) => {
                a.sorts(out);
                b.sorts(out);
            }
            Type::Pi(_, body) => body.sorts(out),
        }
    }

    /// Capture-avoiding `self[with/var]`.
    pub fn subst(&self, var: &str, with: &Type) -> Type {
        match self {
            Type::Sort(_) => self.clone(),
            Type::Var(v) => {
                if v == var {
                    with.clone()
                } else {
                    self.clone()
                }
            }
            Type::Arrow(a, b) => Type::arrow(a.subst(var, with), b.subst(var, with)),
            Type::Pi(v, body) => {
                if v == var || !body.has_free_var(var) {
                    return self.clone();
                }
                if with.has_free_var(v) {
                    let mut avoid = with.free_vars();
                    body.all_vars(&mut avoid);
                    avoid.insert(var.to_string());
                    let fresh = fresh_name(v, |n| avoid.contains(n));
                    let renamed = body.subst(v, &Type::Var(fresh.clone()));
                    Type::Pi(fresh, Box::new(renamed.subst(var, with)))
                } else {
                    Type::Pi(v.clone(), Box::new(body.subst(var, with)))
                }
            }
        }
    }

    /// Equality up to renaming of Π-bound variables.
    pub fn alpha_eq(&self, other: &Type) -> bool {
        fn go(a: &Type, b: &Type, env: &mut Vec<(String, String)>) -> bool {
            match (a, b) {
                (Type::Sort(x), Type::Sort(y)) => x == y,
                (Type::Var(x), Type::Var(y)) => {
                    for (l, r) in env.iter().rev() {
                        if l == x || r == y {
                            return l == x && r == y;
                        }
                    }
                    x == y
                }
                (Type::Arrow(a1, b1), Type::Arrow(a2, b2)) => go(a1, a2, env) && go(b1, b2, env),
                (Type::Pi(x, b1), Type::Pi(y, b2)) => {
                    env.push((x.clone(), y.clone()));
                    let r = go(b1, b2, env);
                    env.pop();
                    r
                }
                _ => false,
            }
        }
        go(self, other, &mut Vec::new())
    }

    /// S-expression form, the inverse of the type parser.
    pub fn to_sexpr(&self) -> String {
        match self {
            Type::Sort(s) | Type::Var(s) => s.clone(),
            Type::Arrow(a, b) => format!("(-> {} {})", a.to_sexpr(), b.to_sexpr()),
            Type::Pi(v, body) => format!("(pi {} {})", v, body.to_sexpr()),
        }
    }
}

impl fmt::Display for Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Type::Sort(s) | Type::Var(s) => f.write_str(s),
            Type::Arrow(a, b) => {
                match **a {
                    Type::Arrow(..) | Type::Pi(..) => write!(f, "({a})")?,
                    _ => write!(f, "{a}")?,
                }
                write!(f, " -> {b}")
            }
            Type::Pi(v, body) => write!(f, "Π{v}. {body}"),
        }
    }
}

/// `base`, or else the first of `base1`, `base2`, ... not rejected by `taken`.
pub fn fresh_name(base: &str, taken: impl Fn(&str) -> bool) -> String {
    let stem = base.trim_end_matches(|c: char| c.is_ascii_digit());
    let stem = if stem.is_empty() { base } else { stem };
    if !taken(base) {
        return base.to_string();
    }
    (1..)
        .map(|i| format!("{stem}{i}"))
        .find(|n| !taken(n))
        .expect("unbounded supply of names")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eps_type() -> Type {
        Type::pi("a", Type::arrow(Type::arrow(Type::var("a"), Type::truth()), Type::var("a")))
    }

    #[test]
    fn display_and_sexpr() {
        assert_eq!(eps_type().to_string(), "Πa. (a -> t) -> a");
        assert_eq!(eps_type().to_sexpr(), "(pi a (-> (-> a t) a))");
    }

    #[test]
    fn subst_avoids_capture() {
        // (Πb. a → b)[b/a] must not capture the free b.
        let ty = Type::pi("b", Type::arrow(Type::var("a"), Type::var("b")));
        let out = ty.subst("a", &Type::var("b"));
        match &out {
            Type::Pi(v, body) => {
                assert_ne!(v, "b");
                assert_eq!(**body, Type::arrow(Type::var("b"), Type::var(v.clone())));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn alpha_equivalence_of_pi() {
        let other = Type::pi("z", Type::arrow(Type::arrow(Type::var("z"), Type::truth()), Type::var("z")));
        assert!(eps_type().alpha_eq(&other));
        assert!(!eps_type().alpha_eq(&Type::pi("z", Type::var("a"))));
        // Free variable must not be confused with a bound one.
        let f1 = Type::pi("a", Type::var("b"));
        let f2 = Type::pi("b", Type::var("b"));
        assert!(!f1.alpha_eq(&f2));
    }

    #[test]
    fn fresh_names_skip_taken() {
        assert_eq!(fresh_name("y", |n| n == "y" || n == "y1"), "y2");
        assert_eq!(fresh_name("x", |_| false), "x");
    }
}
