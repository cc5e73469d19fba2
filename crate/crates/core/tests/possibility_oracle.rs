//! Possibility verdicts against a direct reading of the two conditions, on
//! random reversible processes over bits.

use std::collections::BTreeSet;
use std::sync::Arc;

use proptest::prelude::*;
use taskrel_core::relcore::{self, Atom, Attribute, Task};
use taskrel_core::substrate::{
    condition2_pointwise, condition2_relational, is_possible_with, performed_task, witness_par,
    witness_seq, ConstructorCandidate, Process, Substrate, SubstrateAtom,
};

fn bit() -> Arc<SubstrateAtom> {
    SubstrateAtom::new("bit", Atom::new("Bit", ["0", "1"]).unwrap()).unwrap()
}

fn word(n: usize) -> Substrate {
    Substrate::from_factors(vec![bit(); n])
}

/// A candidate on `H * C` with `|H| = h` bits and `|C| = c` bits.
fn candidate(h: usize, c: usize) -> impl Strategy<Value = ConstructorCandidate> {
    let n = 1usize << (h + c);
    let states = 1usize << c;
    (
        Just((0..n).collect::<Vec<_>>()).prop_shuffle(),
        prop::collection::vec(any::<bool>(), states),
    )
        .prop_map(move |(map, p)| {
            let (hs, cs) = (word(h), word(c));
            let whole = hs.tensor(&cs);
            let f = Process::new("F", whole.clone(), whole, map).unwrap();
            let members = p.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i);
            let attr = Attribute::new(cs.states(), members).unwrap();
            ConstructorCandidate::new(cs, attr, f).unwrap()
        })
}

fn any_candidate() -> impl Strategy<Value = ConstructorCandidate> {
    prop_oneof![
        candidate(1, 0),
        candidate(1, 1),
        candidate(2, 1),
        candidate(1, 2)
    ]
}

fn oracle_performed(cand: &ConstructorCandidate) -> BTreeSet<(usize, usize)> {
    let cs = cand.constructor().state_count();
    let mut out = BTreeSet::new();
    for h in 0..cand.input().state_count() {
        for g in cand.states().members() {
            let image = cand.process().apply(h * cs + g);
            out.insert((h, image / cs));
        }
    }
    out
}

fn oracle_condition2(cand: &ConstructorCandidate) -> bool {
    let cs = cand.constructor().state_count();
    (0..cand.input().state_count()).all(|h| {
        cand.states().members().all(|g| {
            cand.states()
                .contains(cand.process().apply(h * cs + g) % cs)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn verdict_matches_definition(cand in any_candidate(), drop in any::<prop::sample::Index>()) {
        let performed = oracle_performed(&cand);
        let states = cand.input().states();
        let exact = Task::from_pairs(states.clone(), states.clone(), performed.iter().copied()).unwrap();
        let mut tasks = vec![exact.clone()];
        if !performed.is_empty() {
            let (x, y) = *performed.iter().nth(drop.index(performed.len())).unwrap();
            tasks.push(exact.without(x, y));
        }
        let cond2 = oracle_condition2(&cand);
        prop_assert_eq!(condition2_pointwise(&cand).is_none(), cond2);
        prop_assert_eq!(condition2_relational(&cand).unwrap(), cond2);
        for a in tasks {
            let v = is_possible_with(&a, &cand).unwrap();
            let c1 = a.pairs().collect::<BTreeSet<_>>() == performed;
            prop_assert!(v.task_inducing);
            prop_assert_eq!(v.condition1, c1);
            prop_assert_eq!(v.condition2, cond2);
            prop_assert_eq!(v.overall, c1 && cond2);
            prop_assert_eq!(v.counterexample.is_some(), !v.overall);
        }
    }

    #[test]
    fn witnesses_compose(a in any_candidate(), b in any_candidate()) {
        prop_assume!(oracle_condition2(&a) && oracle_condition2(&b));
        let (ta, tb) = (performed_task(&a).unwrap(), performed_task(&b).unwrap());
        let par = witness_par(&a, &b).unwrap();
        prop_assert!(is_possible_with(&relcore::par_compose(&ta, &tb), &par).unwrap().overall);
        if a.output() == b.input() {
            let seq = witness_seq(&a, &b).unwrap();
            let composite = relcore::seq_compose(&ta, &tb).unwrap();
            prop_assert!(is_possible_with(&composite, &seq).unwrap().overall);
        }
    }
}
