//! Random well-typed `.ct` terms paired with the relation they must denote,
//! built directly from relcore operations.

#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use taskrel::dsl::{self, task_named, Workspace};
use taskrel_core::relcore::{self, Attribute, FinObject, Task};

pub const PREAMBLE: &str = "\
set X = {a, b}
set Y = {u, v, w}
set Z = {z}
attr S on X = {a}
attr T on X * Y = {(a,u), (b,w)}
attr E on Z = {}
rel F : X -> Y = { a |-> u, a |-> w, b |-> v }
rel G : Y -> X * Z = { u |-> (a,z), w |-> (b,z) }
rel H : X * X -> Y = { (a,a) |-> u, (a,b) |-> v, (b,b) |-> v, (b,b) |-> w }
rel K : I -> X = { * |-> b }
rel L : Y -> I = { v |-> *, w |-> * }
";

const SETS: [&str; 3] = ["X", "Y", "Z"];
const MAX_FACTORS: usize = 4;
const MAX_SIZE: usize = 64;

type Word = Vec<usize>;

pub struct Sample {
    pub text: String,
    pub expected: Task,
    cod: Word,
}

pub struct TermGen {
    rng: ChaCha8Rng,
    sets: Vec<FinObject>,
    rels: Vec<(&'static str, Word, Word, Task)>,
    attrs: Vec<(&'static str, Word, Attribute)>,
}

fn text(w: &[usize]) -> String {
    if w.is_empty() {
        "I".into()
    } else {
        w.iter().map(|&i| SETS[i]).collect::<Vec<_>>().join(" * ")
    }
}

pub fn workspace() -> Workspace {
    dsl::load("preamble.ct", PREAMBLE).expect("preamble typechecks")
}

impl TermGen {
    pub fn new(seed: u64, ws: &Workspace) -> Self {
        let sets = SETS
            .iter()
            .map(|s| FinObject::atom(ws.set(s).unwrap()))
            .collect();
        let rel =
            |n: &'static str, d: Word, c: Word| (n, d, c, task_named(ws, n).unwrap().unwrap());
        let attr = |n: &'static str, w: Word| (n, w, ws.attribute(n).unwrap().clone());
        TermGen {
            rng: ChaCha8Rng::seed_from_u64(seed),
            sets,
            rels: vec![
                rel("F", vec![0], vec![1]),
                rel("G", vec![1], vec![0, 2]),
                rel("H", vec![0, 0], vec![1]),
                rel("K", vec![], vec![0]),
                rel("L", vec![1], vec![]),
            ],
            attrs: vec![
                attr("S", vec![0]),
                attr("T", vec![0, 1]),
                attr("E", vec![2]),
            ],
        }
    }

    fn obj(&self, w: &[usize]) -> FinObject {
        FinObject::from_factors(
            w.iter()
                .map(|&i| self.sets[i].factors()[0].clone())
                .collect(),
        )
    }

    fn word(&mut self, max: usize) -> Word {
        let n = self.rng.random_range(0..=max);
        (0..n)
            .map(|_| self.rng.random_range(0..SETS.len()))
            .collect()
    }

    fn fits(&self, w: &[usize]) -> bool {
        w.len() <= MAX_FACTORS && self.obj(w).size() <= MAX_SIZE
    }

    /// A random term of at most `depth` nested compositions.
    pub fn sample(&mut self, depth: u32) -> Sample {
        let mut dom = self.word(2);
        if dom.is_empty() && self.rng.random_bool(0.8) {
            dom.push(self.rng.random_range(0..SETS.len()));
        }
        self.grow(&dom, depth)
    }

    fn leaf(&self, text: String, expected: Task, cod: Word) -> Sample {
        Sample {
            text,
            expected,
            cod,
        }
    }

    fn grow(&mut self, dom: &Word, depth: u32) -> Sample {
        for _ in 0..8 {
            if let Some(s) = self.try_from_dom(dom, depth) {
                if self.fits(&s.cod) {
                    return s;
                }
            }
        }
        self.leaf(
            format!("id({})", text(dom)),
            relcore::identity(&self.obj(dom)),
            dom.clone(),
        )
    }

    fn try_from_dom(&mut self, dom: &Word, depth: u32) -> Option<Sample> {
        let x = self.obj(dom);
        let deep = depth > 0;
        let choice = if deep && self.rng.random_bool(0.5) {
            self.rng.random_range(4..8)
        } else {
            self.rng.random_range(0..12)
        };
        Some(match choice {
            0 => self.leaf(
                format!("id({})", text(dom)),
                relcore::identity(&x),
                dom.clone(),
            ),
            1 => self.leaf(
                format!("discard({})", text(dom)),
                relcore::discard(&x),
                vec![],
            ),
            2 if dom.len() <= 1 => {
                let cod = [dom.clone(), dom.clone()].concat();
                self.leaf(format!("copy({})", text(dom)), relcore::copy(&x), cod)
            }
            3 => {
                let k = self.rng.random_range(0..=dom.len());
                let (l, r) = dom.split_at(k);
                let t = relcore::swap(&self.obj(l), &self.obj(r));
                self.leaf(
                    format!("swap({}, {})", text(l), text(r)),
                    t,
                    [r, l].concat(),
                )
            }
            4 if deep => {
                let k = self.rng.random_range(0..=dom.len());
                let (l, r) = (dom[..k].to_vec(), dom[k..].to_vec());
                let a = self.grow(&l, depth - 1);
                let b = self.grow(&r, depth - 1);
                let cod = [a.cod.clone(), b.cod.clone()].concat();
                if !self.fits(&cod) {
                    return None;
                }
                let t = relcore::par_compose(&a.expected, &b.expected);
                self.leaf(format!("({} * {})", a.text, b.text), t, cod)
            }
            5 | 6 if deep => {
                let a = self.grow(dom, depth - 1);
                let b = self.grow(&a.cod, depth - 1);
                let t = relcore::seq_compose(&a.expected, &b.expected).unwrap();
                self.leaf(format!("({} ; {})", a.text, b.text), t, b.cod)
            }
            7 if deep => {
                let a = self.grow(dom, depth - 1);
                let t =
                    relcore::seq_compose(&a.expected, &relcore::transpose(&a.expected)).unwrap();
                self.leaf(format!("({} ; ({})^T)", a.text, a.text), t, dom.clone())
            }
            8 => {
                let fits: Vec<_> = self.rels.iter().filter(|r| &r.1 == dom).cloned().collect();
                let (n, _, c, t) = fits
                    .get(self.rng.random_range(0..fits.len().max(1)))?
                    .clone();
                self.leaf(n.into(), t, c)
            }
            9 => {
                let fits: Vec<_> = self.rels.iter().filter(|r| &r.2 == dom).cloned().collect();
                let (n, d, _, t) = fits
                    .get(self.rng.random_range(0..fits.len().max(1)))?
                    .clone();
                self.leaf(format!("{n}^T"), relcore::transpose(&t), d)
            }
            10 => {
                let fits: Vec<_> = self.attrs.iter().filter(|a| &a.1 == dom).cloned().collect();
                let (n, _, s) = fits
                    .get(self.rng.random_range(0..fits.len().max(1)))?
                    .clone();
                self.leaf(format!("test({n})"), s.as_test(), vec![])
            }
            11 if dom.is_empty() => {
                if self.rng.random_bool(0.5) {
                    let (n, w, s) = self.attrs[self.rng.random_range(0..self.attrs.len())].clone();
                    self.leaf(format!("state({n})"), s.as_state(), w)
                } else {
                    let w = self.word(1);
                    let t = relcore::transpose(&relcore::discard(&self.obj(&w)));
                    self.leaf(format!("unit({})", text(&w)), t, w)
                }
            }
            11 if dom.len().is_multiple_of(2) && dom[..dom.len() / 2] == dom[dom.len() / 2..] => {
                let half = &dom[..dom.len() / 2];
                self.leaf(
                    format!("match({})", text(half)),
                    relcore::match_map(&self.obj(half)),
                    half.to_vec(),
                )
            }
            _ => return None,
        })
    }
}
