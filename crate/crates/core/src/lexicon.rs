//! Lexicon files: sorts, constants, and per-word entries made of a principal
//! term plus optional coercions, each flagged rigid or flexible.
//!
//! ```text
//! DECL      ::= (sort SYM) | (const SYM TYPE) | (entry STRING (principal TERM) OPTION* (mode MODE)?)
//! OPTION    ::= (option SYM TYPE RIGIDITY TERM?)
//! RIGIDITY  ::= rigid | flexible
//! MODE      ::= indefinite | definite | universal | pronoun
//! ```
//!
//! An option without a defining term is backed by a constant named after its
//! label, declared implicitly if the file does not declare it.

use std::fmt;

use indexmap::IndexMap;
use thiserror::Error;

use crate::kernel::{
    self, is_builtin, term_from_datum, type_from_datum, type_of, KernelError, Term, Type, TypingContext, EPS, EVENT,
    IEPS, T, TAU,
};
use crate::sexp::{self, Datum, Pos, SexpError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Rigidity {
    Rigid,
    Flexible,
}

impl fmt::Display for Rigidity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rigidity::Rigid => "rigid",
            Rigidity::Flexible => "flexible",
        })
    }
}

/// An optional λ-term turning a word's referent from one sort into another.
#[derive(Debug, Clone, PartialEq)]
pub struct Coercion {
    pub label: String,
    pub source: Type,
    pub target: Type,
    pub term: Term,
    pub rigidity: Rigidity,
    /// Whether the lexicon supplied the defining term (otherwise `term` is the
    /// constant named `label`).
    pub defined: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DeterminerMode {
    #[default]
    None,
    Indefinite,
    Definite,
    Universal,
    /// An E-type pronoun, resolved against the discourse.
    Pronoun,
}

impl DeterminerMode {
    pub fn is_determiner(self) -> bool {
        matches!(self, DeterminerMode::Indefinite | DeterminerMode::Definite | DeterminerMode::Universal)
    }

    fn keyword(self) -> Option<&'static str> {
        match self {
            DeterminerMode::None => None,
            DeterminerMode::Indefinite => Some("indefinite"),
            DeterminerMode::Definite => Some("definite"),
            DeterminerMode::Universal => Some("universal"),
            DeterminerMode::Pronoun => Some("pronoun"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LexEntry {
    pub word: String,
    pub principal: Term,
    /// Type of the principal term.
    pub ty: Type,
    pub options: Vec<Coercion>,
    pub mode: DeterminerMode,
}

impl LexEntry {
    /// The sort of the entity the word talks about: `σ` for a principal of
    /// type `σ` or `σ → t`.
    pub fn referent_sort(&self) -> Option<&str> {
        referent_sort(&self.ty)
    }

    /// Options converting `source` into `target`.
    pub fn options_between<'a>(&'a self, source: &'a Type, target: &'a Type) -> impl Iterator<Item = &'a Coercion> {
        self.options
            .iter()
            .filter(move |o| o.source.alpha_eq(source) && o.target.alpha_eq(target))
    }
}

fn referent_sort(ty: &Type) -> Option<&str> {
    match ty {
        Type::Sort(s) if s != T => Some(s),
        _ => ty.predicate_domain(),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Lexicon {
    ctx: TypingContext,
    entries: IndexMap<String, LexEntry>,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LexiconError {
    #[error(transparent)]
    Sexp(#[from] SexpError),
    #[error("{pos}: {message}")]
    Syntax { pos: Pos, message: String },
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error("entry \"{word}\": {error}")]
    IllTyped { word: String, error: KernelError },
    #[error("entry \"{word}\": option `{label}` should have type {expected}, found {found}")]
    OptionType { word: String, label: String, expected: Type, found: Type },
    #[error("entry \"{word}\": option `{label}` must start from the referent sort {expected}, found {found}")]
    OptionSource { word: String, label: String, expected: String, found: Type },
    #[error("entry \"{word}\": options need a principal of entity or predicate type, found {found}")]
    NoReferent { word: String, found: Type },
    #[error("entry \"{word}\": mode {mode} requires principal {required}, found {found}")]
    ModeMismatch { word: String, mode: String, required: String, found: String },
    #[error("duplicate entry \"{0}\"")]
    DuplicateWord(String),
    #[error("no lexicon entry for \"{0}\"")]
    NotFound(String),
    #[error("`{0}` is not an entity sort")]
    NotEntitySort(String),
}

fn syntax(pos: Pos, message: impl Into<String>) -> LexiconError {
    LexiconError::Syntax { pos, message: message.into() }
}

/// A constant declaration, as returned by [`Lexicon::type_to_predicate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstDecl {
    pub name: String,
    pub ty: Type,
}

impl Default for Lexicon {
    fn default() -> Self {
        Lexicon { ctx: TypingContext::new(), entries: IndexMap::new() }
    }
}

pub fn load_lexicon(text: &str) -> Result<Lexicon, LexiconError> {
    Lexicon::parse(text)
}

impl Lexicon {
    pub fn parse(text: &str) -> Result<Lexicon, LexiconError> {
        let decls = sexp::parse_all(text)?;
        let mut lex = Lexicon::default();
        // Sorts and constants first so that entries may refer to anything
        // declared in the file.
        for d in &decls {
            match d.head() {
                Some("sort") => {
                    let items = d.as_list().unwrap_or_default();
                    match items {
                        [_, Datum::Sym(s, _)] => lex.ctx.declare_sort(s.clone()),
                        _ => return Err(syntax(d.pos(), "expected (sort NAME)")),
                    }
                }
                Some("const") | Some("entry") => {}
                _ => return Err(syntax(d.pos(), format!("unknown declaration `{d}`"))),
            }
        }
        for d in &decls {
            if d.head() == Some("const") {
                match d.as_list().unwrap_or_default() {
                    [_, Datum::Sym(name, _), ty] => {
                        let ty = type_from_datum(ty, &lex.ctx, &mut Vec::new())?;
                        lex.ctx.declare_const(name.clone(), ty)?;
                    }
                    _ => return Err(syntax(d.pos(), "expected (const NAME TYPE)")),
                }
            }
        }
        for d in &decls {
            if d.head() == Some("entry") {
                let entry = lex.parse_entry(d)?;
                if lex.entries.contains_key(&entry.word) {
                    return Err(LexiconError::DuplicateWord(entry.word));
                }
                lex.entries.insert(entry.word.clone(), entry);
            }
        }
        Ok(lex)
    }

    fn parse_entry(&mut self, d: &Datum) -> Result<LexEntry, LexiconError> {
        let items = d.as_list().unwrap_or_default();
        let word = items
            .get(1)
            .and_then(Datum::as_atom)
            .ok_or_else(|| syntax(d.pos(), "expected (entry WORD (principal TERM) ...)"))?
            .to_string();
        let mut principal = None;
        let mut option_data = Vec::new();
        let mut mode = DeterminerMode::None;
        for part in &items[2..] {
            let fields = part.as_list().unwrap_or_default();
            match (part.head(), fields) {
                (Some("principal"), [_, t]) => principal = Some(t),
                (Some("option"), _) => option_data.push(part),
                (Some("mode"), [_, Datum::Sym(m, pos)]) => {
                    mode = match m.as_str() {
                        "indefinite" => DeterminerMode::Indefinite,
                        "definite" => DeterminerMode::Definite,
                        "universal" => DeterminerMode::Universal,
                        "pronoun" => DeterminerMode::Pronoun,
                        other => return Err(syntax(*pos, format!("unknown mode `{other}`"))),
                    }
                }
                _ => return Err(syntax(part.pos(), format!("unexpected entry field `{part}`"))),
            }
        }
        let principal = principal.ok_or_else(|| syntax(d.pos(), format!("entry \"{word}\" has no principal term")))?;
        let principal = term_from_datum(principal, &self.ctx).map_err(|error| LexiconError::IllTyped { word: word.clone(), error })?;
        let ty = type_of(&self.ctx, &principal).map_err(|error| LexiconError::IllTyped { word: word.clone(), error })?;
        check_mode(&word, mode, &principal, &ty)?;

        let mut options = Vec::new();
        for o in option_data {
            options.push(self.parse_option(&word, &ty, o)?);
        }
        Ok(LexEntry { word, principal, ty, options, mode })
    }

    fn parse_option(&mut self, word: &str, principal_ty: &Type, d: &Datum) -> Result<Coercion, LexiconError> {
        let items = d.as_list().unwrap_or_default();
        let (label, ty, rigidity, def) = match items {
            [_, Datum::Sym(l, _), ty, Datum::Sym(r, rpos), rest @ ..] if rest.len() <= 1 => {
                let rigidity = match r.as_str() {
                    "rigid" => Rigidity::Rigid,
                    "flexible" => Rigidity::Flexible,
                    other => return Err(syntax(*rpos, format!("expected rigid or flexible, found `{other}`"))),
                };
                (l.clone(), ty, rigidity, rest.first())
            }
            _ => return Err(syntax(d.pos(), "expected (option LABEL TYPE rigid|flexible TERM?)")),
        };
        let ty = type_from_datum(ty, &self.ctx, &mut Vec::new())?;
        let (source, target) = match &ty {
            Type::Arrow(a, b) => ((**a).clone(), (**b).clone()),
            other => {
                return Err(LexiconError::OptionType {
                    word: word.into(),
                    label,
                    expected: Type::arrow(Type::var("σ"), Type::var("τ")),
                    found: other.clone(),
                })
            }
        };
        let expected_source = referent_sort(principal_ty)
            .ok_or_else(|| LexiconError::NoReferent { word: word.into(), found: principal_ty.clone() })?;
        if source.as_sort() != Some(expected_source) {
            return Err(LexiconError::OptionSource {
                word: word.into(),
                label,
                expected: expected_source.into(),
                found: source,
            });
        }
        let (term, defined) = match def {
            Some(t) => {
                let term = term_from_datum(t, &self.ctx).map_err(|error| LexiconError::IllTyped { word: word.into(), error })?;
                (term, true)
            }
            None => {
                match self.ctx.lookup(&label) {
                    Some(_) => {}
                    None => self.ctx.declare_const(label.clone(), ty.clone())?,
                }
                (Term::constant(label.clone(), self.ctx.lookup(&label).map(|d| d.ty.clone()).unwrap_or(ty.clone())), false)
            }
        };
        let found = type_of(&self.ctx, &term).map_err(|error| LexiconError::IllTyped { word: word.into(), error })?;
        if !found.alpha_eq(&ty) {
            return Err(LexiconError::OptionType { word: word.into(), label, expected: ty, found });
        }
        Ok(Coercion { label, source, target, term, rigidity, defined })
    }

    pub fn context(&self) -> &TypingContext {
        &self.ctx
    }

    pub fn entries(&self) -> impl Iterator<Item = &LexEntry> {
        self.entries.values()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn lookup_entry(&self, word: &str) -> Result<&LexEntry, LexiconError> {
        self.entries.get(word).ok_or_else(|| LexiconError::NotFound(word.to_string()))
    }

    /// The predicate `hat_σ : e → t` standing for membership in sort σ.
    /// Returns the lexicon extended with it (unchanged if already present).
    pub fn type_to_predicate(&self, sort: &str) -> Result<(Lexicon, ConstDecl), LexiconError> {
        if sort == T || sort == EVENT {
            return Err(LexiconError::NotEntitySort(sort.to_string()));
        }
        if !self.ctx.has_sort(sort) {
            return Err(KernelError::UnknownSort { sort: sort.to_string(), pos: None }.into());
        }
        let decl = ConstDecl { name: hat_name(sort), ty: Type::arrow(Type::sort(kernel::E), Type::truth()) };
        let mut out = self.clone();
        match self.ctx.lookup(&decl.name) {
            Some(existing) if existing.ty.alpha_eq(&decl.ty) => {}
            Some(_) => return Err(KernelError::Duplicate(decl.name).into()),
            None => out.ctx.declare_const(decl.name.clone(), decl.ty.clone())?,
        }
        Ok((out, decl))
    }

    /// Prints the lexicon in the file format accepted by [`Lexicon::parse`].
    pub fn print(&self) -> String {
        let mut out = String::new();
        for s in self.ctx.sorts() {
            if s != T && s != kernel::E && s != EVENT {
                out.push_str(&format!("(sort {s})\n"));
            }
        }
        for (name, ty) in self.ctx.constants() {
            if !is_builtin(name) {
                out.push_str(&format!("(const {name} {})\n", ty.to_sexpr()));
            }
        }
        for e in self.entries.values() {
            out.push_str(&format!("(entry {:?}\n  (principal {})", e.word, e.principal));
            for o in &e.options {
                out.push_str(&format!("\n  (option {} {} {}", o.label, Type::arrow(o.source.clone(), o.target.clone()).to_sexpr(), o.rigidity));
                if o.defined {
                    out.push_str(&format!(" {}", o.term));
                }
                out.push(')');
            }
            if let Some(m) = e.mode.keyword() {
                out.push_str(&format!("\n  (mode {m})"));
            }
            out.push_str(")\n");
        }
        out
    }
}

pub fn hat_name(sort: &str) -> String {
    format!("hat_{sort}")
}

fn check_mode(word: &str, mode: DeterminerMode, principal: &Term, ty: &Type) -> Result<(), LexiconError> {
    let required = match mode {
        DeterminerMode::None => return Ok(()),
        DeterminerMode::Indefinite => EPS,
        DeterminerMode::Definite => IEPS,
        DeterminerMode::Universal => TAU,
        DeterminerMode::Pronoun => {
            return match (principal, referent_sort(ty)) {
                (Term::Const(..), Some(_)) if ty.as_sort().is_some() => Ok(()),
                _ => Err(LexiconError::ModeMismatch {
                    word: word.into(),
                    mode: "pronoun".into(),
                    required: "a constant of an entity sort".into(),
                    found: format!("{principal} : {ty}"),
                }),
            }
        }
    };
    if principal.const_name() == Some(required) {
        Ok(())
    } else {
        Err(LexiconError::ModeMismatch {
            word: word.into(),
            mode: mode.keyword().unwrap_or_default().into(),
            required: required.into(),
            found: format!("{principal} : {ty}"),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const LIVERPOOL: &str = r#"
        (sort T) (sort Pl) (sort P) (sort F)
        (const Liverpool T)
        (const est_vaste (-> Pl t))
        (const a_vote (-> P t))
        (const a_gagne (-> F t))
        (entry "Liverpool" (principal Liverpool)
          (option Id_T (-> T T) flexible)
          (option t1 (-> T F) rigid)
          (option t2 (-> T P) flexible)
          (option t3 (-> T Pl) flexible))
        (entry "vaste" (principal est_vaste))
        (entry "a_vote" (principal a_vote))
        (entry "a_gagne" (principal a_gagne))
    "#;

    #[test]
    fn copredication_lexicon() {
        let lex = load_lexicon(LIVERPOOL).unwrap();
        assert_eq!(lex.len(), 4);
        let liv = lex.lookup_entry("Liverpool").unwrap();
        assert_eq!(liv.options.len(), 4);
        let rigid: Vec<_> = liv.options.iter().filter(|o| o.rigidity == Rigidity::Rigid).map(|o| o.label.as_str()).collect();
        assert_eq!(rigid, vec!["t1"]);
        assert_eq!(lex.context().lookup("t3").unwrap().ty.to_sexpr(), "(-> T Pl)");
    }

    #[test]
    fn empty_file_has_builtins_only() {
        let lex = load_lexicon("; nothing here\n").unwrap();
        assert!(lex.is_empty());
        assert!(lex.context().lookup("eps").is_some());
    }

    #[test]
    fn mode_requires_a_determiner_principal() {
        let err = load_lexicon(r#"(const f (-> e e)) (entry "un" (principal f) (mode indefinite))"#).unwrap_err();
        assert!(matches!(err, LexiconError::ModeMismatch { ref word, .. } if word == "un"), "{err}");
    }

    #[test]
    fn lookup() {
        let lex = load_lexicon(r#"(entry "un" (principal eps) (mode indefinite)) (entry "le" (principal ieps) (mode definite))"#).unwrap();
        let un = lex.lookup_entry("un").unwrap();
        assert_eq!((un.principal.const_name(), un.mode), (Some("eps"), DeterminerMode::Indefinite));
        let le = lex.lookup_entry("le").unwrap();
        assert_eq!((le.principal.const_name(), le.mode), (Some("ieps"), DeterminerMode::Definite));
        assert_eq!(lex.lookup_entry("zzz").unwrap_err(), LexiconError::NotFound("zzz".into()));
    }

    #[test]
    fn errors_name_the_word() {
        let err = load_lexicon(r#"(sort ani) (const dort (-> ani t)) (const c e) (entry "x" (principal (dort c)))"#).unwrap_err();
        assert!(matches!(err, LexiconError::IllTyped { ref word, error: KernelError::TypeClash { .. } } if word == "x"), "{err}");
        let err = load_lexicon(r#"(entry "x" (principal true)) (entry "x" (principal false))"#).unwrap_err();
        assert_eq!(err, LexiconError::DuplicateWord("x".into()));
        let err = load_lexicon("(const c ani)").unwrap_err();
        assert!(matches!(err, LexiconError::Kernel(KernelError::UnknownSort { .. })));
        let err = load_lexicon(r#"(sort a) (sort b) (const c a) (entry "c" (principal c) (option f (-> b a) flexible))"#).unwrap_err();
        assert!(matches!(err, LexiconError::OptionSource { .. }), "{err}");
    }

    #[test]
    fn defined_option_terms_are_checked() {
        let lex = load_lexicon(
            r#"(sort a) (sort b) (const c a) (const g (-> a b))
               (entry "c" (principal c) (option via_g (-> a b) flexible (lam x a (g x))))"#,
        )
        .unwrap();
        let o = &lex.lookup_entry("c").unwrap().options[0];
        assert!(o.defined);
        assert!(lex.context().lookup("via_g").is_none());
        let err = load_lexicon(
            r#"(sort a) (sort b) (const c a) (entry "c" (principal c) (option bad (-> a b) flexible (lam x a x)))"#,
        )
        .unwrap_err();
        assert!(matches!(err, LexiconError::OptionType { .. }), "{err}");
    }

    #[test]
    fn hat_predicates() {
        let lex = load_lexicon("(sort ani)").unwrap();
        let (lex2, decl) = lex.type_to_predicate("ani").unwrap();
        assert_eq!(decl.name, "hat_ani");
        assert_eq!(decl.ty.to_sexpr(), "(-> e t)");
        let (lex3, again) = lex2.type_to_predicate("ani").unwrap();
        assert_eq!(again, decl);
        assert_eq!(lex3.context().constants().filter(|(n, _)| *n == "hat_ani").count(), 1);
        assert_eq!(lex.type_to_predicate("t").unwrap_err(), LexiconError::NotEntitySort("t".into()));
        assert!(lex.type_to_predicate("zzz").is_err());
    }

    #[test]
    fn print_round_trips() {
        let lex = load_lexicon(LIVERPOOL).unwrap();
        let again = load_lexicon(&lex.print()).unwrap();
        assert_eq!(lex, again);
    }
}
