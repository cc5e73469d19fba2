mod common;

use std::path::Path;

use proptest::prelude::*;
use taskrel::dsl::{self, parse, print, task_named, DslError};

use common::{workspace, TermGen, PREAMBLE};

fn corpus() -> Vec<(String, String)> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus");
    let mut files: Vec<_> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "ct"))
        .collect();
    files.sort();
    files
        .into_iter()
        .map(|p| {
            (
                p.display().to_string(),
                std::fs::read_to_string(&p).unwrap(),
            )
        })
        .collect()
}

#[test]
fn corpus_round_trips() {
    let files = corpus();
    assert!(files.len() >= 20);
    for (name, src) in files {
        let ast = parse(&name, &src).unwrap_or_else(|e| panic!("{name}: {e}"));
        let printed = print::module(&ast);
        let again = parse(&name, &printed).unwrap();
        assert_eq!(ast, again, "{name}");
        assert_eq!(
            print::module(&again),
            printed,
            "{name}: printer not idempotent"
        );
        dsl::load(&name, &src).unwrap_or_else(|e| panic!("{name}: {e:?}"));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn random_terms_round_trip_and_evaluate(seed in any::<u64>(), depth in 0u32..4) {
        let ws = workspace();
        let mut g = TermGen::new(seed, &ws);
        let s = g.sample(depth);
        let src = format!("{PREAMBLE}task Out = {}\n", s.text);
        let ast = parse("gen.ct", &src).unwrap();
        prop_assert_eq!(&parse("gen.ct", &print::module(&ast)).unwrap(), &ast);
        let ws = dsl::load("gen.ct", &src).unwrap();
        let got = task_named(&ws, "Out").unwrap();
        prop_assert_eq!(got.unwrap(), s.expected);
    }

    #[test]
    fn mismatched_sequence_is_rejected_statically(seed in any::<u64>()) {
        let ws = workspace();
        let mut g = TermGen::new(seed, &ws);
        let s = g.sample(2);
        let x = s.expected.cod();
        let z = x.tensor(ws.set("Z").map(taskrel_core::relcore::FinObject::atom).as_ref().unwrap());
        prop_assume!(z != *x);
        let src = format!("{PREAMBLE}task Out = {} ; id({})\n", s.text, z);
        let errors = dsl::load("gen.ct", &src).unwrap_err();
        let is_mismatch = matches!(errors[0], DslError::BoundaryMismatch { .. });
        prop_assert!(is_mismatch, "{:?}", errors);
    }
}
