use std::collections::BTreeSet;
use std::sync::Arc;

use proptest::prelude::*;
use taskrel_core::relcore::{self, Atom, Attribute, FinObject, Task};

type Pairs = BTreeSet<(usize, usize)>;

fn atom(size: usize) -> Arc<Atom> {
    Atom::numbered(format!("A{size}"), size)
}

fn object() -> impl Strategy<Value = FinObject> {
    prop::collection::vec(1usize..=3, 0..=2)
        .prop_map(|sizes| FinObject::from_factors(sizes.into_iter().map(atom).collect()))
}

fn task(x: FinObject, y: FinObject) -> impl Strategy<Value = Task> {
    let n = x.size() * y.size();
    prop::collection::vec(any::<bool>(), n).prop_map(move |bits| {
        let ny = y.size();
        let pairs = bits
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(k, _)| (k / ny, k % ny));
        Task::from_pairs(x.clone(), y.clone(), pairs).unwrap()
    })
}

fn attribute(x: FinObject) -> impl Strategy<Value = Attribute> {
    prop::collection::vec(any::<bool>(), x.size()).prop_map(move |bits| {
        Attribute::new(
            x.clone(),
            bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i),
        )
        .unwrap()
    })
}

fn chain3() -> impl Strategy<Value = (Task, Task, Task)> {
    (object(), object(), object(), object())
        .prop_flat_map(|(w, x, y, z)| (task(w, x.clone()), task(x, y.clone()), task(y, z)))
}

fn pairs(t: &Task) -> Pairs {
    t.pairs().collect()
}

fn oracle_seq(a: &Task, b: &Task) -> Pairs {
    let mut out = Pairs::new();
    for (x, y) in a.pairs() {
        for (y2, z) in b.pairs() {
            if y == y2 {
                out.insert((x, z));
            }
        }
    }
    out
}

fn oracle_par(a: &Task, b: &Task) -> Pairs {
    let (bx, by) = (b.dom().size(), b.cod().size());
    let mut out = Pairs::new();
    for (x1, y1) in a.pairs() {
        for (x2, y2) in b.pairs() {
            out.insert((x1 * bx + x2, y1 * by + y2));
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn seq_matches_oracle((a, b, _) in chain3()) {
        prop_assert_eq!(pairs(&relcore::seq_compose(&a, &b).unwrap()), oracle_seq(&a, &b));
    }

    #[test]
    fn par_matches_oracle((a, b, _) in chain3()) {
        let p = relcore::par_compose(&a, &b);
        prop_assert_eq!(p.dom(), &a.dom().tensor(b.dom()));
        prop_assert_eq!(pairs(&p), oracle_par(&a, &b));
    }

    #[test]
    fn transpose_flips_pairs((a, _, _) in chain3()) {
        let t = relcore::transpose(&a);
        prop_assert_eq!(pairs(&t), a.pairs().map(|(x, y)| (y, x)).collect::<Pairs>());
        prop_assert_eq!(relcore::transpose(&t), a);
    }

    #[test]
    fn seq_associative_and_unital((a, b, c) in chain3()) {
        let s = |p: &Task, q: &Task| relcore::seq_compose(p, q).unwrap();
        prop_assert_eq!(s(&s(&a, &b), &c), s(&a, &s(&b, &c)));
        prop_assert_eq!(s(&relcore::identity(a.dom()), &a), a.clone());
        prop_assert_eq!(s(&a, &relcore::identity(a.cod())), a);
    }

    #[test]
    fn par_associative((a, b, c) in chain3()) {
        let p = relcore::par_compose;
        prop_assert_eq!(p(&p(&a, &b), &c), p(&a, &p(&b, &c)));
        let unit = relcore::identity(&FinObject::unit());
        prop_assert_eq!(p(&a, &unit), a.clone());
        prop_assert_eq!(p(&unit, &a), a);
    }

    #[test]
    fn interchange((a, b, _) in chain3(), (c, d, _) in chain3()) {
        let s = |p: &Task, q: &Task| relcore::seq_compose(p, q).unwrap();
        let lhs = s(&relcore::par_compose(&a, &c), &relcore::par_compose(&b, &d));
        let rhs = relcore::par_compose(&s(&a, &b), &s(&c, &d));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn dagger_reverses_seq((a, b, _) in chain3()) {
        let t = relcore::transpose;
        let lhs = t(&relcore::seq_compose(&a, &b).unwrap());
        let rhs = relcore::seq_compose(&t(&b), &t(&a)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn swap_natural((a, _, _) in chain3(), (b, _, _) in chain3()) {
        let s = |p: &Task, q: &Task| relcore::seq_compose(p, q).unwrap();
        let lhs = s(&relcore::par_compose(&a, &b), &relcore::swap(a.cod(), b.cod()));
        let rhs = s(&relcore::swap(a.dom(), b.dom()), &relcore::par_compose(&b, &a));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn function_test_matches_oracle((a, _, _) in chain3()) {
        let single = (0..a.dom().size()).all(|x| a.image_of(x).count() == 1);
        prop_assert_eq!(relcore::is_function(&a), single);
    }

    #[test]
    fn preconditioning_is_a_composite(
        (a, z, s) in (object(), object(), object()).prop_flat_map(|(x, z, y)| {
            (task(x.tensor(&z), y), Just(z.clone()), attribute(z))
        })
    ) {
        let x = a.dom().strip_suffix(&z).unwrap();
        let composite = relcore::seq_compose(&relcore::par_compose(&relcore::identity(&x), &s.as_state()), &a).unwrap();
        prop_assert_eq!(relcore::precondition(&a, &z, &s).unwrap(), composite);
    }

    #[test]
    fn postconditioning_is_a_composite(
        (a, z, s) in (object(), object(), object()).prop_flat_map(|(x, y, z)| {
            (task(x, y.tensor(&z)), Just(z.clone()), attribute(z))
        })
    ) {
        let y = a.cod().strip_suffix(&z).unwrap();
        let composite = relcore::seq_compose(&a, &relcore::par_compose(&relcore::identity(&y), &s.as_test())).unwrap();
        prop_assert_eq!(relcore::postcondition(&a, &z, &s).unwrap(), composite);
    }
}
