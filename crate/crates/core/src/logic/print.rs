use super::{EpsMode, Formula, LTerm};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Style {
    #[default]
    Ascii,
    Unicode,
    Sexpr,
}

struct Glyphs {
    exists: &'static str,
    forall: &'static str,
    and: &'static str,
    or: &'static str,
    implies: &'static str,
    not: &'static str,
    eps: &'static str,
    tau: &'static str,
    the: &'static str,
}

const ASCII: Glyphs = Glyphs {
    exists: "exists ",
    forall: "forall ",
    and: " & ",
    or: " | ",
    implies: " -> ",
    not: "~",
    eps: "eps",
    tau: "tau",
    the: "the",
};

const UNICODE: Glyphs = Glyphs {
    exists: "∃",
    forall: "∀",
    and: " ∧ ",
    or: " ∨ ",
    implies: " → ",
    not: "¬",
    eps: "ε",
    tau: "τ",
    the: "ι",
};

pub fn print_formula(f: &Formula, style: Style) -> String {
    let mut out = String::new();
    match style {
        Style::Ascii => infix(f, 1, &ASCII, &mut out),
        Style::Unicode => infix(f, 1, &UNICODE, &mut out),
        Style::Sexpr => sexpr(f, &mut out),
    }
    out
}

pub fn print_lterm(t: &LTerm, style: Style) -> String {
    let mut out = String::new();
    match style {
        Style::Ascii => term_infix(t, &ASCII, &mut out),
        Style::Unicode => term_infix(t, &UNICODE, &mut out),
        Style::Sexpr => term_sexpr(t, &mut out),
    }
    out
}

impl std::fmt::Display for Formula {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&print_formula(self, Style::Ascii))
    }
}

impl std::fmt::Display for LTerm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&print_lterm(self, Style::Ascii))
    }
}

fn level(f: &Formula) -> u8 {
    match f {
        Formula::Implies { .. } => 1,
        Formula::Or { .. } => 2,
        Formula::And { .. } => 3,
        _ => 4,
    }
}

fn infix(f: &Formula, min: u8, g: &Glyphs, out: &mut String) {
    let wrap = level(f) < min;
    if wrap {
        out.push('(');
    }
    match f {
        Formula::Pred { name, args } => {
            out.push_str(name);
            if !args.is_empty() {
                out.push('(');
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    term_infix(a, g, out);
                }
                out.push(')');
            }
        }
        Formula::Implies { left, right } => {
            infix(left, 2, g, out);
            out.push_str(g.implies);
            infix(right, 1, g, out);
        }
        Formula::Or { left, right } => {
            infix(left, 3, g, out);
            out.push_str(g.or);
            infix(right, 2, g, out);
        }
        Formula::And { left, right } => {
            infix(left, 4, g, out);
            out.push_str(g.and);
            infix(right, 3, g, out);
        }
        Formula::Not { body } => {
            out.push_str(g.not);
            infix(body, 4, g, out);
        }
        Formula::Exists { var, sort, body } | Formula::Forall { var, sort, body } => {
            out.push_str(if matches!(f, Formula::Exists { .. }) { g.exists } else { g.forall });
            out.push_str(&format!("{var}:{sort}. "));
            infix(body, 4, g, out);
        }
        Formula::Eq { left, right } => {
            term_infix(left, g, out);
            out.push_str(" = ");
            term_infix(right, g, out);
        }
        Formula::Truth { value } => out.push_str(if *value { "true" } else { "false" }),
    }
    if wrap {
        out.push(')');
    }
}

fn op_name(mode: EpsMode, g: &Glyphs) -> &'static str {
    match mode {
        EpsMode::Indefinite => g.eps,
        EpsMode::Definite => g.the,
        EpsMode::Universal => g.tau,
    }
}

fn term_infix(t: &LTerm, g: &Glyphs, out: &mut String) {
    match t {
        LTerm::Var { name, .. } | LTerm::Const { name, .. } => out.push_str(name),
        LTerm::App { name, args, .. } => {
            out.push_str(name);
            out.push('(');
            for (i, a) in args.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                term_infix(a, g, out);
            }
            out.push(')');
        }
        LTerm::Eps { mode, var, sort, body } => {
            out.push_str(&format!("{}[{sort}]({var}. ", op_name(*mode, g)));
            infix(body, 1, g, out);
            out.push(')');
        }
    }
}

fn sexpr(f: &Formula, out: &mut String) {
    let list = |head: &str, parts: &[&Formula], out: &mut String| {
        out.push('(');
        out.push_str(head);
        for p in parts {
            out.push(' ');
            sexpr(p, out);
        }
        out.push(')');
    };
    match f {
        Formula::Pred { name, args } if args.is_empty() => out.push_str(name),
        Formula::Pred { name, args } => {
            out.push('(');
            out.push_str(name);
            for a in args {
                out.push(' ');
                term_sexpr(a, out);
            }
            out.push(')');
        }
        Formula::And { left, right } => list("and", &[left, right], out),
        Formula::Or { left, right } => list("or", &[left, right], out),
        Formula::Implies { left, right } => list("implies", &[left, right], out),
        Formula::Not { body } => list("not", &[body], out),
        Formula::Exists { var, sort, body } | Formula::Forall { var, sort, body } => {
            let q = if matches!(f, Formula::Exists { .. }) { "exists" } else { "forall" };
            out.push_str(&format!("({q} ({var} {sort}) "));
            sexpr(body, out);
            out.push(')');
        }
        Formula::Eq { left, right } => {
            out.push_str("(= ");
            term_sexpr(left, out);
            out.push(' ');
            term_sexpr(right, out);
            out.push(')');
        }
        Formula::Truth { value } => out.push_str(if *value { "true" } else { "false" }),
    }
}

fn term_sexpr(t: &LTerm, out: &mut String) {
    match t {
        LTerm::Var { name, .. } | LTerm::Const { name, .. } => out.push_str(name),
        LTerm::App { name, args, .. } => {
            out.push('(');
            out.push_str(name);
            for a in args {
                out.push(' ');
                term_sexpr(a, out);
            }
            out.push(')');
        }
        LTerm::Eps { mode, var, sort, body } => {
            out.push_str(&format!("({} ({var} {sort}) ", op_name(*mode, &ASCII)));
            sexpr(body, out);
            out.push(')');
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> LTerm {
        LTerm::var("x", "ani")
    }

    fn p(n: &str) -> Formula {
        Formula::pred(n, vec![x()])
    }

    #[test]
    fn precedence_and_quantifier_bodies() {
        let f = Formula::exists("x", "ani", Formula::and(p("chat"), p("dort")));
        assert_eq!(print_formula(&f, Style::Ascii), "exists x:ani. (chat(x) & dort(x))");
        assert_eq!(print_formula(&f, Style::Unicode), "∃x:ani. (chat(x) ∧ dort(x))");
        assert_eq!(print_formula(&f, Style::Sexpr), "(exists (x ani) (and (chat x) (dort x)))");

        let a = Formula::pred("a", vec![]);
        let b = Formula::pred("b", vec![]);
        let c = Formula::pred("c", vec![]);
        let right = Formula::and(a.clone(), Formula::and(b.clone(), c.clone()));
        let left = Formula::and(Formula::and(a.clone(), b.clone()), c.clone());
        assert_eq!(print_formula(&right, Style::Ascii), "a & b & c");
        assert_eq!(print_formula(&left, Style::Ascii), "(a & b) & c");
        let mixed = Formula::implies(Formula::or(a.clone(), Formula::and(b.clone(), c.clone())), Formula::not(a.clone()));
        assert_eq!(print_formula(&mixed, Style::Ascii), "a | b & c -> ~a");
        let neg = Formula::not(Formula::or(a, b));
        assert_eq!(print_formula(&neg, Style::Ascii), "~(a | b)");
    }

    #[test]
    fn choice_terms() {
        let e = LTerm::eps(EpsMode::Indefinite, "x", "ani", p("chat"));
        assert_eq!(print_lterm(&e, Style::Ascii), "eps[ani](x. chat(x))");
        let t = LTerm::eps(EpsMode::Universal, "x", "ani", p("dort"));
        assert_eq!(print_lterm(&t, Style::Ascii), "tau[ani](x. dort(x))");
        let d = LTerm::eps(EpsMode::Definite, "x", "ani", p("chat"));
        assert_eq!(print_lterm(&d, Style::Ascii), "the[ani](x. chat(x))");
        assert_eq!(print_lterm(&d, Style::Sexpr), "(the (x ani) (chat x))");
        let app = LTerm::app("t3", vec![LTerm::constant("Liverpool", "T")], "Pl");
        assert_eq!(print_formula(&Formula::pred("est_vaste", vec![app]), Style::Sexpr), "(est_vaste (t3 Liverpool))");
    }
}
