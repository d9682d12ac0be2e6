//! The end-to-end pipeline: compose, normalize, extract, and render.

use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::composer::{compose, Binding, CoercionReport, ComposeError, Instantiation, SynTree};
use crate::discourse::DiscourseState;
use crate::kernel::{normalize_with, KernelError, Strategy, Term, Type, DEFAULT_STEP_BUDGET};
use crate::lexicon::Lexicon;
use crate::logic::{
    conjoin, extract_formula, presuppositions, print_formula, rewrite_hilbert, Formula, LogicError, Style,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PresuppositionMode {
    /// Listed next to the assertion.
    #[default]
    Separate,
    /// Conjoined with the assertion.
    Conjoin,
    Off,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct AnalysisOptions {
    pub presuppositions: PresuppositionMode,
    pub rewrite: bool,
    pub trace: bool,
    pub strategy: Strategy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Sexpr,
    Json,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalysisError {
    #[error(transparent)]
    Compose(#[from] ComposeError),
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error(transparent)]
    Logic(#[from] LogicError),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalysisResult {
    #[serde(serialize_with = "crate::serialize_display")]
    pub tree: SynTree,
    #[serde(serialize_with = "crate::serialize_display")]
    pub term: Term,
    #[serde(serialize_with = "crate::serialize_display")]
    pub ty: Type,
    pub instantiations: Vec<Instantiation>,
    pub report: CoercionReport,
    pub bindings: Vec<Binding>,
    #[serde(serialize_with = "crate::serialize_display")]
    pub normal: Term,
    pub steps: usize,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub trace: Vec<String>,
    pub formula: Formula,
    pub presuppositions: Vec<Formula>,
    /// The assertion after the presupposition mode and rewriting are applied.
    #[serde(rename = "final")]
    pub final_formula: Formula,
    pub diagnostics: Vec<String>,
}

/// Analyzes one sentence against `state`, returning the result and the
/// discourse state after it.
pub fn analyze(
    tree: &SynTree,
    lex: &Lexicon,
    state: &DiscourseState,
    opts: &AnalysisOptions,
) -> Result<(AnalysisResult, DiscourseState), AnalysisError> {
    let c = compose(tree, lex, state)?;
    let mut trace = Vec::new();
    let n = normalize_with(&c.term, opts.strategy, DEFAULT_STEP_BUDGET, &mut |t| {
        if opts.trace {
            trace.push(t.to_string());
        }
    })?;
    let formula = extract_formula(&n.term)?;
    let presups = match opts.presuppositions {
        PresuppositionMode::Off => Vec::new(),
        _ => presuppositions(&n.term)?,
    };
    let mut final_formula = match opts.presuppositions {
        PresuppositionMode::Conjoin => conjoin(&presups, &formula),
        _ => formula.clone(),
    };
    if opts.rewrite {
        final_formula = rewrite_hilbert(&final_formula);
    }
    let diagnostics = diagnostics(&final_formula, opts);
    let result = AnalysisResult {
        tree: tree.clone(),
        term: c.term,
        ty: c.ty,
        instantiations: c.instantiations,
        report: c.report,
        bindings: c.bindings,
        normal: n.term,
        steps: n.steps,
        trace,
        formula,
        presuppositions: presups,
        final_formula,
        diagnostics,
    };
    Ok((result, c.discourse))
}

fn diagnostics(f: &Formula, opts: &AnalysisOptions) -> Vec<String> {
    if !opts.rewrite {
        return Vec::new();
    }
    let mut seen: Vec<String> = Vec::new();
    for e in f.eps_terms() {
        let msg = format!("choice term kept: {e}");
        if !seen.contains(&msg) {
            seen.push(msg);
        }
    }
    seen
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SessionResult {
    pub sentences: Vec<AnalysisResult>,
    /// Presuppositions of all sentences, without repetitions.
    pub presuppositions: Vec<Formula>,
    /// The conjoined assertions, under the same mode and rewriting as the sentences.
    pub discourse: Formula,
    #[serde(skip)]
    pub state: DiscourseState,
}

/// Analyzes the sentences in order against one discourse state.
pub fn analyze_session(trees: &[SynTree], lex: &Lexicon, opts: &AnalysisOptions) -> Result<SessionResult, AnalysisError> {
    let mut state = DiscourseState::new();
    let mut sentences = Vec::new();
    for tree in trees {
        let (r, next) = analyze(tree, lex, &state, opts)?;
        sentences.push(r);
        state = next;
    }
    let mut presups: Vec<Formula> = Vec::new();
    for p in sentences.iter().flat_map(|s| &s.presuppositions) {
        if !presups.iter().any(|q| q.alpha_eq(p)) {
            presups.push(p.clone());
        }
    }
    let assertion = Formula::conjunction(sentences.iter().map(|s| s.formula.clone()));
    let mut discourse = match opts.presuppositions {
        PresuppositionMode::Conjoin => conjoin(&presups, &assertion),
        _ => assertion,
    };
    if opts.rewrite {
        discourse = rewrite_hilbert(&discourse);
    }
    Ok(SessionResult { sentences, presuppositions: presups, discourse, state })
}

fn write_trace(r: &AnalysisResult, out: &mut String) {
    for (i, t) in r.trace.iter().enumerate() {
        let _ = writeln!(out, "step {}: {t}", i + 1);
    }
}

fn text_body(r: &AnalysisResult, out: &mut String) {
    let _ = writeln!(out, "tree: {}", r.tree);
    let _ = writeln!(out, "term: {}", r.term);
    let _ = writeln!(out, "type: {}", r.ty);
    for i in &r.instantiations {
        let _ = writeln!(out, "instantiation {}: {{{}}}", i.occurrence, i.types.join(", "));
    }
    for e in r.report.entries() {
        for c in &e.coercions {
            let _ = writeln!(out, "coercion {}: {} {}->{} ({})", e.occurrence, c.label, c.source, c.target, c.rigidity);
        }
    }
    for b in &r.bindings {
        let _ = writeln!(out, "binding {}: {}", b.occurrence, b.term);
    }
    let _ = writeln!(out, "normal: {}", r.normal);
    let _ = writeln!(out, "steps: {}", r.steps);
    let _ = writeln!(out, "formula: {}", r.formula);
    for p in &r.presuppositions {
        let _ = writeln!(out, "presupposition: {p}");
    }
    for d in &r.diagnostics {
        let _ = writeln!(out, "note: {d}");
    }
}

fn sexpr_body(r: &AnalysisResult, out: &mut String) {
    let f = |x: &Formula| print_formula(x, Style::Sexpr);
    let _ = writeln!(out, "(analysis");
    let _ = writeln!(out, "  (tree {})", r.tree);
    let _ = writeln!(out, "  (term {})", r.term);
    let _ = writeln!(out, "  (type {})", r.ty.to_sexpr());
    for i in &r.instantiations {
        let _ = writeln!(out, "  (instantiation {} ({}))", i.occurrence, i.types.join(" "));
    }
    for e in r.report.entries() {
        for c in &e.coercions {
            let _ = writeln!(out, "  (coercion {} {} {} {} {})", e.occurrence, c.label, c.source, c.target, c.rigidity);
        }
    }
    for b in &r.bindings {
        let _ = writeln!(out, "  (binding {} {})", b.occurrence, b.term);
    }
    let _ = writeln!(out, "  (normal {})", r.normal);
    let _ = writeln!(out, "  (steps {})", r.steps);
    let _ = writeln!(out, "  (formula {})", f(&r.formula));
    let ps: Vec<String> = r.presuppositions.iter().map(f).collect();
    let _ = writeln!(out, "  (presuppositions ({}))", ps.join(" "));
    let _ = writeln!(out, "  (final {}))", f(&r.final_formula));
}

/// Renders one analysis. In text form the last line is the final formula;
/// trace lines, when present, come first.
pub fn render(r: &AnalysisResult, format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::Text => {
            write_trace(r, &mut out);
            text_body(r, &mut out);
            let _ = writeln!(out, "{}", r.final_formula);
        }
        Format::Sexpr => {
            write_trace(r, &mut out);
            sexpr_body(r, &mut out);
        }
        Format::Json => {
            out = serde_json::to_string_pretty(r).expect("analysis results serialize");
            out.push('\n');
        }
    }
    out
}

/// Renders a session: each sentence, then the discourse formula.
pub fn render_session(s: &SessionResult, format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::Text => {
            for (i, r) in s.sentences.iter().enumerate() {
                let _ = writeln!(out, "sentence {}:", i + 1);
                write_trace(r, &mut out);
                text_body(r, &mut out);
                let _ = writeln!(out, "final: {}", r.final_formula);
                out.push('\n');
            }
            let _ = writeln!(out, "discourse:");
            for p in &s.presuppositions {
                let _ = writeln!(out, "presupposition: {p}");
            }
            let _ = writeln!(out, "{}", s.discourse);
        }
        Format::Sexpr => {
            for r in &s.sentences {
                write_trace(r, &mut out);
                sexpr_body(r, &mut out);
            }
            let _ = writeln!(out, "(discourse {})", print_formula(&s.discourse, Style::Sexpr));
        }
        Format::Json => {
            out = serde_json::to_string_pretty(s).expect("session results serialize");
            out.push('\n');
        }
    }
    out
}
