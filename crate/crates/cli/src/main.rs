use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use lexsem::analysis::{analyze, analyze_session, render, render_session, AnalysisOptions, Format, PresuppositionMode};
use lexsem::composer::{parse_trees, SynTree};
use lexsem::discourse::DiscourseState;
use lexsem::lexicon::Lexicon;
use lexsem::logic::{parse_formula, parse_formula_sexpr, Formula, Signature};
use lexsem::model::{check_equivalence, eval_formula, Model, Verdict, Vocabulary};

#[derive(Parser)]
#[command(name = "lexsem", version, about = "Typed Hilbert-operator semantics: compose, reduce, extract, evaluate")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compose a tree (or a session of trees) into a formula.
    Analyze(AnalyzeArgs),
    /// Evaluate a formula in a finite model, or compare two formulas.
    Eval(EvalArgs),
    /// Load and validate a lexicon.
    CheckLexicon { file: PathBuf },
}

#[derive(Args)]
struct AnalyzeArgs {
    #[arg(long)]
    lexicon: PathBuf,
    #[arg(long, conflicts_with = "session", required_unless_present = "session")]
    tree: Option<String>,
    /// File of trees, analyzed in order against one discourse.
    #[arg(long)]
    session: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
    #[arg(long, value_enum, default_value_t = PresupArg::Separate)]
    presuppositions: PresupArg,
    /// Turn choice-term patterns into quantifiers.
    #[arg(long)]
    rewrite: bool,
    /// Print every reduction step.
    #[arg(long)]
    trace: bool,
}

#[derive(Args)]
struct EvalArgs {
    formula: String,
    #[arg(long, required_unless_present = "equiv")]
    model: Option<PathBuf>,
    /// Lexicon whose constants give the formula's sorts.
    #[arg(long)]
    lexicon: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = SyntaxArg::Ascii)]
    syntax: SyntaxArg,
    /// Compare against this formula over all small models.
    #[arg(long)]
    equiv: Option<String>,
    #[arg(long, default_value_t = 4)]
    max_carrier: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Sexpr,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum PresupArg {
    Separate,
    Conjoin,
    Off,
}

#[derive(Clone, Copy, ValueEnum)]
enum SyntaxArg {
    Ascii,
    Sexpr,
}

/// An error and the exit code it maps to.
struct Failure(u8, String);

fn input(msg: impl ToString) -> Failure {
    Failure(1, msg.to_string())
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn load_lexicon(path: &Path) -> Result<Lexicon, Failure> {
    Lexicon::parse(&read(path)?).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn run_analyze(a: &AnalyzeArgs) -> Result<String, Failure> {
    let lex = load_lexicon(&a.lexicon)?;
    let opts = AnalysisOptions {
        presuppositions: match a.presuppositions {
            PresupArg::Separate => PresuppositionMode::Separate,
            PresupArg::Conjoin => PresuppositionMode::Conjoin,
            PresupArg::Off => PresuppositionMode::Off,
        },
        rewrite: a.rewrite,
        trace: a.trace,
        ..Default::default()
    };
    let format = match a.format {
        FormatArg::Text => Format::Text,
        FormatArg::Sexpr => Format::Sexpr,
        FormatArg::Json => Format::Json,
    };
    let composition = |e: lexsem::analysis::AnalysisError| Failure(2, e.to_string());
    match (&a.tree, &a.session) {
        (Some(text), _) => {
            let tree = SynTree::parse(text).map_err(input)?;
            let (r, _) = analyze(&tree, &lex, &DiscourseState::new(), &opts).map_err(composition)?;
            Ok(render(&r, format))
        }
        (None, Some(path)) => {
            let trees = parse_trees(&read(path)?).map_err(|e| input(format!("{}: {e}", path.display())))?;
            let s = analyze_session(&trees, &lex, &opts).map_err(composition)?;
            Ok(render_session(&s, format))
        }
        (None, None) => Err(input("either --tree or --session is required")),
    }
}

fn run_eval(a: &EvalArgs) -> Result<String, Failure> {
    let sig = match &a.lexicon {
        Some(path) => Signature::from_context(load_lexicon(path)?.context()),
        None => Signature::new(),
    };
    let parse = |text: &str| -> Result<Formula, Failure> {
        match a.syntax {
            SyntaxArg::Ascii => parse_formula(text, &sig),
            SyntaxArg::Sexpr => parse_formula_sexpr(text, &sig),
        }
        .map_err(input)
    };
    let f = parse(&a.formula)?;
    if let Some(other) = &a.equiv {
        let g = parse(other)?;
        let vocab = Vocabulary::of(&[&f, &g]);
        return match check_equivalence(&f, &g, &vocab, a.max_carrier).map_err(input)? {
            Verdict::Equivalent { models_checked } => Ok(format!("equivalent ({models_checked} models)\n")),
            Verdict::CounterModel { model, left, right, models_checked } => Ok(format!(
                "counter-model after {models_checked} models (first: {left}, second: {right})\n{model}\n"
            )),
        };
    }
    let path = a.model.as_deref().ok_or_else(|| input("--model is required"))?;
    let model = Model::parse(&read(path)?).map_err(|e| input(format!("{}: {e}", path.display())))?;
    Ok(format!("{}\n", eval_formula(&model, &f).map_err(input)?))
}

fn run(cli: &Cli) -> Result<String, Failure> {
    match &cli.command {
        Command::Analyze(a) => run_analyze(a),
        Command::Eval(a) => run_eval(a),
        Command::CheckLexicon { file } => {
            let lex = load_lexicon(file)?;
            Ok(format!("ok: {} entries\n", lex.len()))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
