use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    format!("{}/../core/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn lexsem(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lexsem")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn last_line(o: &Output) -> String {
    stdout(o).lines().last().unwrap_or_default().to_string()
}

#[test]
fn classical_pipeline_with_rewrite() {
    let o = lexsem(&["analyze", "--lexicon", &fixture("fig1.lex"), "--tree", "((un club) (a_battu Leeds))", "--rewrite"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(last_line(&o), "exists x:e. (club(x) & a_battu(x,Leeds))");
}

#[test]
fn copredication_normal_form() {
    let o = lexsem(&["analyze", "--lexicon", &fixture("fig2.lex"), "--tree", "((et est_vaste a_vote) Liverpool)"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("normal: (and (est_vaste (t3 Liverpool)) (a_vote (t2 Liverpool)))"));
}

#[test]
fn rigid_coercion_exits_two() {
    let o = lexsem(&["analyze", "--lexicon", &fixture("fig2.lex"), "--tree", "((et a_gagne a_vote) Liverpool)"]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("rigidity violation") && err.contains("t1") && err.contains("Liverpool"), "{err}");
}

#[test]
fn selectional_restriction_names_words_and_sorts() {
    let o = lexsem(&["analyze", "--lexicon", &fixture("chat.lex"), "--tree", "(aboie (une chaise))"]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    for needle in ["aboie", "chaise", "ani", "furniture"] {
        assert!(err.contains(needle), "{err}");
    }
}

#[test]
fn input_errors_exit_one() {
    let o = lexsem(&["analyze", "--lexicon", &fixture("missing.lex"), "--tree", "(dort (un chat))"]);
    assert_eq!(o.status.code(), Some(1));
    let o = lexsem(&["analyze", "--lexicon", &fixture("chat.lex"), "--tree", "(dort (un chat)"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn trace_ends_with_untraced_output() {
    let base = ["analyze", "--lexicon", &fixture("fig2.lex"), "--tree", "((et est_vaste a_vote) Liverpool)"];
    let plain = stdout(&lexsem(&base));
    let traced = stdout(&lexsem(&[&base[..], &["--trace"]].concat()));
    assert!(traced.ends_with(&plain));
    let steps = traced.lines().filter(|l| l.starts_with("step ")).count();
    assert!(plain.contains(&format!("steps: {steps}\n")));
    assert_eq!(traced.lines().last(), plain.lines().last());
}

#[test]
fn output_is_deterministic() {
    let args = ["analyze", "--lexicon", &fixture("chat.lex"), "--tree", "(dort (un chat))", "--format", "json"];
    let a = lexsem(&args);
    assert_eq!(a.stdout, lexsem(&args).stdout);
    assert_eq!(a.status.code(), Some(0));
}

#[test]
fn conjoined_presupposition() {
    let o = lexsem(&[
        "analyze", "--lexicon", &fixture("chat.lex"), "--tree", "(dort (un chat))",
        "--presuppositions", "conjoin", "--rewrite",
    ]);
    assert_eq!(last_line(&o), "exists x:ani. (chat(x) & dort(x))");
}

#[test]
fn sexpr_format() {
    let o = lexsem(&["analyze", "--lexicon", &fixture("chat.lex"), "--tree", "(dort (un chat))", "--format", "sexpr"]);
    assert!(stdout(&o).contains("(presuppositions ((chat (eps (x ani) (chat x)))))"));
}

#[test]
fn session_binds_the_pronoun() {
    let o = lexsem(&[
        "analyze", "--lexicon", &fixture("chat.lex"), "--session", &fixture("entre.session"),
        "--presuppositions", "conjoin", "--rewrite",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("binding il#1: ((tyapp eps humain) homme)"));
    assert_eq!(last_line(&o), "exists x:humain. (homme(x) & est_entre(x) & a_hurle(x))");
}

#[test]
fn eval_in_a_model() {
    let o = lexsem(&["eval", "--model", &fixture("chat.model"), "dort(eps[ani](x. chat(x)))"]);
    assert_eq!((o.status.code(), stdout(&o)), (Some(0), "true\n".to_string()));
    let o = lexsem(&["eval", "--model", &fixture("chat.model"), "--syntax", "sexpr", "(forall (x ani) (dort x))"]);
    assert_eq!(stdout(&o), "false\n");
}

#[test]
fn eval_missing_interpretation() {
    let o = lexsem(&["eval", "--model", &fixture("chat.model"), "aboie(eps[ani](x. chat(x)))"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("aboie"));
}

#[test]
fn eval_equivalence() {
    let o = lexsem(&["eval", "f(eps[s](x. f(x)))", "--equiv", "exists x:s. f(x)", "--max-carrier", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "equivalent (30 models)\n");
    let o = lexsem(&["eval", "g(eps[s](x. f(x)))", "--equiv", "exists x:s. g(x)"]);
    assert!(stdout(&o).starts_with("counter-model"));
    assert!(stdout(&o).contains("(model"));
}

#[test]
fn check_lexicon() {
    for f in ["fig1.lex", "fig2.lex", "chat.lex"] {
        assert_eq!(lexsem(&["check-lexicon", &fixture(f)]).status.code(), Some(0), "{f}");
    }
    assert_eq!(lexsem(&["check-lexicon", &fixture("chat.model")]).status.code(), Some(1));
}
