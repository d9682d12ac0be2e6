mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;

use lexsem::analysis::{analyze, AnalysisOptions};
use lexsem::composer::SynTree;
use lexsem::discourse::DiscourseState;
use lexsem::kernel::{alpha_eq, normalize_with, type_of, Strategy, DEFAULT_STEP_BUDGET};
use lexsem::lexicon::Lexicon;
use lexsem::logic::{
    conjoin, extract_formula, parse_formula, parse_formula_sexpr, print_formula, rewrite_hilbert, Signature, Style,
};
use lexsem::model::{
    check_equivalence, eval_formula, extend_interp, restrict_interp, InterpPredicate, Model, Vocabulary,
};

use common::{alpha_oracle, context, depth, scramble, FormulaGen, TermGen, MAX_DEPTH};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn reduction_is_sound_confluent_and_terminating(seed in any::<u64>()) {
        let ctx = context();
        let mut g = TermGen::new(seed);
        let ty = g.top_type();
        let t = g.term(&ty, MAX_DEPTH);
        prop_assert!(depth(&t) <= MAX_DEPTH);
        prop_assert!(type_of(&ctx, &t).unwrap().alpha_eq(&ty));

        let mut bad_step = None;
        let lo = normalize_with(&t, Strategy::LeftmostOutermost, DEFAULT_STEP_BUDGET, &mut |s| {
            if !type_of(&ctx, s).is_ok_and(|u| u.alpha_eq(&ty)) {
                bad_step = Some(s.to_string());
            }
        }).unwrap();
        prop_assert!(bad_step.is_none(), "ill-typed step {:?}", bad_step);
        let ri = normalize_with(&t, Strategy::RightmostInnermost, DEFAULT_STEP_BUDGET, &mut |_| {}).unwrap();
        prop_assert!(lo.term.is_normal());
        prop_assert!(alpha_eq(&lo.term, &ri.term), "{} vs {}", lo.term, ri.term);
        prop_assert!(alpha_oracle(&lo.term, &ri.term));

        if ty.is_truth() {
            prop_assert!(extract_formula(&lo.term).is_ok(), "not formula-ready: {}", lo.term);
        }
    }

    #[test]
    fn alpha_equivalence_agrees_with_the_oracle(s1 in any::<u64>(), s2 in any::<u64>()) {
        let mut g = TermGen::new(s1);
        let ty = g.top_type();
        let a = g.term(&ty, 5);
        let b = TermGen::new(s2).term(&ty, 5);
        let mut n = 0;
        let a2 = scramble(&a, &mut n);
        prop_assert!(alpha_eq(&a, &a2));
        prop_assert!(alpha_oracle(&a, &a2));
        prop_assert_eq!(alpha_eq(&a, &b), alpha_oracle(&a, &b));
    }

    #[test]
    fn formulas_round_trip(seed in any::<u64>()) {
        let f = FormulaGen::new(seed).formula(4);
        let sig = Signature::of(&f);
        for style in [Style::Ascii, Style::Unicode] {
            let text = print_formula(&f, style);
            prop_assert_eq!(&parse_formula(&text, &sig).unwrap(), &f, "{}", text);
        }
        let text = print_formula(&f, Style::Sexpr);
        prop_assert_eq!(&parse_formula_sexpr(&text, &sig).unwrap(), &f, "{}", text);
    }

    #[test]
    fn extension_never_changes_the_original_carrier(mask in 0u32..64, sub in 0u32..8) {
        let elems: Vec<String> = (1..=6).map(|i| format!("k{i}")).collect();
        let small: Vec<String> = elems[..3].to_vec();
        let m = Model::new()
            .with_carrier("sub", small.iter().filter(|_| true).cloned().collect::<Vec<_>>())
            .with_carrier("ani", elems.clone());
        let ext: BTreeSet<String> = elems.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, x)| x.clone()).collect();
        let p = InterpPredicate { name: "chat".into(), domain: "ani".into(), extension: ext.clone() };
        let up = extend_interp(&m, &p, "e").unwrap();
        prop_assert_eq!(&restrict_interp(&m, &up, "ani").unwrap(), &p);
        let down = restrict_interp(&m, &p, "sub").unwrap();
        prop_assert!(down.extension.is_subset(&ext));
        let partial: BTreeSet<String> = small.iter().enumerate().filter(|(i, _)| sub >> i & 1 == 1).map(|(_, x)| x.clone()).collect();
        let q = InterpPredicate { name: "q".into(), domain: "sub".into(), extension: partial.clone() };
        prop_assert_eq!(extend_interp(&m, &q, "ani").unwrap().extension, partial);
    }
}

#[test]
fn choice_terms_pick_witnesses_and_counterexamples() {
    let f = parse_formula("exists x:s. b(x)", &Signature::new()).unwrap();
    let witness = parse_formula("b(eps[s](x. b(x)))", &Signature::new()).unwrap();
    let all = parse_formula("forall x:s. b(x)", &Signature::new()).unwrap();
    let counter = parse_formula("b(tau[s](x. b(x)))", &Signature::new()).unwrap();
    for n in 1..=5 {
        for (m, ext) in common::unary_models("s", "b", n) {
            assert_eq!(eval_formula(&m, &f).unwrap(), !ext.is_empty());
            if !ext.is_empty() {
                assert!(eval_formula(&m, &witness).unwrap(), "{m}");
            }
            if eval_formula(&m, &counter).unwrap() {
                assert!(eval_formula(&m, &all).unwrap(), "{m}");
            }
        }
    }
}

#[test]
fn conjoined_presupposition_reads_classically() {
    let sig = Signature::new();
    let presup = parse_formula("chat(eps[ani](x. chat(x)))", &sig).unwrap();
    let assertion = parse_formula("dort(eps[ani](x. chat(x)))", &sig).unwrap();
    let conjoined = conjoin(&[presup], &assertion);
    let classical = parse_formula("exists x:ani. (chat(x) & dort(x))", &sig).unwrap();
    let vocab = Vocabulary::of(&[&conjoined, &classical]);
    assert!(check_equivalence(&conjoined, &classical, &vocab, 3).unwrap().is_equivalent());
    let rewritten = rewrite_hilbert(&conjoined);
    assert!(check_equivalence(&rewritten, &classical, &vocab, 3).unwrap().is_equivalent());
}

#[test]
fn evaluation_is_total_on_extracted_formulas() {
    let lex = Lexicon::parse(include_str!("../fixtures/chat.lex")).unwrap();
    let sentences = ["(dort (un chat))", "(dort (le chat))", "(dort (tout chat))", "(aboie (un chien))", "(dort (une panthere))"];
    let sorts = ["ani", "felin", "humain", "furniture"];
    let preds = [("chat", "ani"), ("chien", "ani"), ("dort", "ani"), ("aboie", "ani"), ("panthere", "felin")];
    for seed in 0..20u32 {
        let mut m = Model::new();
        for s in sorts {
            m.set_carrier(s, (1..=2).map(|i| format!("{s}{i}")).collect());
        }
        for (k, (p, s)) in preds.iter().enumerate() {
            let ext = (1..=2).filter(|i| (seed >> (k + i)) & 1 == 1).map(|i| vec![format!("{s}{i}")]).collect();
            m.set_interp(*p, ext);
        }
        m.set_interp("felin_ani", [vec!["felin1".to_string(), "ani1".to_string()], vec!["felin2".to_string(), "ani2".to_string()]].into());
        for text in sentences {
            let tree = SynTree::parse(text).unwrap();
            let opts = AnalysisOptions { rewrite: true, ..Default::default() };
            let (r, _) = analyze(&tree, &lex, &DiscourseState::new(), &opts).unwrap();
            for f in std::iter::once(&r.final_formula).chain(&r.presuppositions) {
                assert!(eval_formula(&m, f).is_ok(), "{text}: {f}");
            }
        }
    }
}
