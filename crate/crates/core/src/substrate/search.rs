use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::relcore::{Attribute, Task};
use crate::substrate::possibility::{is_possible_with, ConstructorCandidate};
use crate::substrate::theory::{
    compose_maps, tensor_maps, Process, ProcessTerm, Substrate, SubstrateTheory,
};

/// Limits for [`search_constructor`]. Depth counts nested compositions;
/// generators, identities and swaps have depth 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBounds {
    pub max_factors: usize,
    pub max_depth: usize,
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds {
            max_factors: 2,
            max_depth: 3,
        }
    }
}

/// Largest constructor state set whose attributes are enumerated.
pub const MAX_CONSTRUCTOR_STATES: usize = 16;
/// Ceiling on map compositions performed while closing generators.
pub const MAX_SEARCH_WORK: u64 = 200_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchReport {
    /// The first passing candidate in canonical order, if any.
    pub found: Option<ConstructorCandidate>,
    pub bounds: SearchBounds,
    pub constructors_tried: usize,
    pub candidates_checked: u64,
}

#[derive(Clone)]
struct Entry {
    depth: usize,
    nodes: usize,
    term: ProcessTerm,
}

impl Entry {
    fn key(&self) -> (usize, usize) {
        (self.depth, self.nodes)
    }
}

type Maps = BTreeMap<Arc<[usize]>, Entry>;

fn offer(
    maps: &mut Maps,
    map: Vec<usize>,
    depth: usize,
    nodes: usize,
    term: impl FnOnce() -> ProcessTerm,
) {
    let map: Arc<[usize]> = map.into();
    match maps.get_mut(&map) {
        Some(e) if e.key() < (depth, nodes) => {}
        Some(e) => {
            let t = term();
            if e.key() > (depth, nodes) || t < e.term {
                *e = Entry {
                    depth,
                    nodes,
                    term: t,
                };
            }
        }
        None => {
            maps.insert(
                map,
                Entry {
                    depth,
                    nodes,
                    term: term(),
                },
            );
        }
    }
}

/// Every state map `X -> Y` expressible by a term of bounded depth, each with
/// its least term. Intermediate substrates are words of at most `max_len`
/// atoms.
struct Closure<'a> {
    theory: &'a SubstrateTheory,
    words: Vec<Substrate>,
    memo: BTreeMap<(Substrate, Substrate, usize), Arc<Maps>>,
    work: u64,
}

impl<'a> Closure<'a> {
    fn new(theory: &'a SubstrateTheory, max_len: usize) -> Self {
        let words = (0..=max_len).flat_map(|n| theory.words(n)).collect();
        Closure {
            theory,
            words,
            memo: BTreeMap::new(),
            work: 0,
        }
    }

    fn charge(&mut self, n: u64) -> Result<()> {
        self.work += n;
        if self.work > MAX_SEARCH_WORK {
            return Err(Error::BudgetExceeded {
                what: "constructor search compositions".into(),
                required: self.work as u128,
                limit: MAX_SEARCH_WORK as u128,
            });
        }
        Ok(())
    }

    fn atomic(&self, x: &Substrate, y: &Substrate) -> Maps {
        let mut maps = Maps::new();
        for g in self.theory.generators() {
            if g.dom() == x && g.cod() == y {
                offer(&mut maps, g.map().to_vec(), 0, 1, || g.term().clone());
            }
        }
        if x == y {
            let id = Process::identity(x);
            offer(&mut maps, id.map().to_vec(), 0, 1, || id.term().clone());
        }
        for k in 1..x.len() {
            let (a, b) = x.split_at(k);
            if &b.tensor(&a) == y {
                let sw = Process::swap(&a, &b);
                offer(&mut maps, sw.map().to_vec(), 0, 1, || sw.term().clone());
            }
        }
        maps
    }

    fn reach(&mut self, x: &Substrate, y: &Substrate, depth: usize) -> Result<Arc<Maps>> {
        let key = (x.clone(), y.clone(), depth);
        if let Some(m) = self.memo.get(&key) {
            return Ok(m.clone());
        }
        let maps = if depth == 0 {
            self.atomic(x, y)
        } else {
            let mut maps = (*self.reach(x, y, depth - 1)?).clone();
            for z in self.words.clone() {
                let left = self.reach(x, &z, depth - 1)?;
                if left.is_empty() {
                    continue;
                }
                let right = self.reach(&z, y, depth - 1)?;
                self.charge((left.len() * right.len()) as u64)?;
                for (ma, ea) in left.iter() {
                    for (mb, eb) in right.iter() {
                        let d = 1 + ea.depth.max(eb.depth);
                        offer(
                            &mut maps,
                            compose_maps(ma, mb),
                            d,
                            1 + ea.nodes + eb.nodes,
                            || {
                                ProcessTerm::Seq(
                                    Box::new(ea.term.clone()),
                                    Box::new(eb.term.clone()),
                                )
                            },
                        );
                    }
                }
            }
            for i in 0..=x.len() {
                for j in 0..=y.len() {
                    // a side running I -> I would only restate the other side
                    if (i == 0 && j == 0) || (i == x.len() && j == y.len()) {
                        continue;
                    }
                    let (x1, x2) = x.split_at(i);
                    let (y1, y2) = y.split_at(j);
                    let left = self.reach(&x1, &y1, depth - 1)?;
                    if left.is_empty() {
                        continue;
                    }
                    let right = self.reach(&x2, &y2, depth - 1)?;
                    self.charge((left.len() * right.len()) as u64)?;
                    let cod2 = y2.state_count();
                    for (ma, ea) in left.iter() {
                        for (mb, eb) in right.iter() {
                            let d = 1 + ea.depth.max(eb.depth);
                            offer(
                                &mut maps,
                                tensor_maps(ma, mb, cod2),
                                d,
                                1 + ea.nodes + eb.nodes,
                                || {
                                    ProcessTerm::Par(
                                        Box::new(ea.term.clone()),
                                        Box::new(eb.term.clone()),
                                    )
                                },
                            );
                        }
                    }
                }
            }
            maps
        };
        let maps = Arc::new(maps);
        self.memo.insert(key, maps.clone());
        Ok(maps)
    }
}

/// Attributes on `n` states, largest first, then by ascending member list.
fn attributes_largest_first(n: usize) -> Vec<Vec<usize>> {
    let mut all: Vec<Vec<usize>> = (0..1u32 << n)
        .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect())
        .collect();
    all.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    all
}

/// Fast pointwise screen of both conditions for state map `f` on
/// `H * C -> K * C` and constructor attribute `p`.
fn passes(
    a: &Task,
    f: &[usize],
    nh: usize,
    nk: usize,
    nc: usize,
    p: &[usize],
    in_p: &[bool],
) -> bool {
    let mut performed = alloc::vec![false; nh * nk];
    for &gamma in p {
        for rho in 0..nh {
            let out = f[rho * nc + gamma];
            if !in_p[out % nc] {
                return false;
            }
            let rho2 = out / nc;
            if !a.contains(rho, rho2) {
                return false;
            }
            performed[rho * nk + rho2] = true;
        }
    }
    a.pairs().all(|(x, y)| performed[x * nk + y])
}

/// Looks for a constructor for `a` among theory processes.
///
/// Candidates are tried by constructor factor count, then attributes `P`
/// from largest to smallest, then process terms by depth, size and term
/// order. `found: None` only means nothing exists within `bounds`.
pub fn search_constructor(
    a: &Task,
    theory: &SubstrateTheory,
    bounds: SearchBounds,
) -> Result<SearchReport> {
    let h = theory.substrate_for(a.dom())?;
    let k = theory.substrate_for(a.cod())?;
    let (nh, nk) = (h.state_count(), k.state_count());
    let mut closures: BTreeMap<usize, Closure<'_>> = BTreeMap::new();
    let mut constructors_tried = 0;
    let mut candidates_checked = 0u64;
    for n in 0..=bounds.max_factors {
        for c in theory.words(n) {
            let nc = c.state_count();
            if nc > MAX_CONSTRUCTOR_STATES {
                return Err(Error::BudgetExceeded {
                    what: alloc::format!("attributes on constructor {c}"),
                    required: 1u128 << nc.min(127),
                    limit: 1u128 << MAX_CONSTRUCTOR_STATES,
                });
            }
            constructors_tried += 1;
            let x = h.tensor(&c);
            let y = k.tensor(&c);
            let len = x.len().max(y.len());
            let closure = closures
                .entry(len)
                .or_insert_with(|| Closure::new(theory, len));
            let maps = closure.reach(&x, &y, bounds.max_depth)?;
            let mut ordered: Vec<(&Arc<[usize]>, &Entry)> = maps.iter().collect();
            ordered.sort_by(|(ma, ea), (mb, eb)| {
                ea.key()
                    .cmp(&eb.key())
                    .then_with(|| ea.term.cmp(&eb.term))
                    .then_with(|| ma.cmp(mb))
            });
            for p in attributes_largest_first(nc) {
                let mut in_p = alloc::vec![false; nc];
                for &g in &p {
                    in_p[g] = true;
                }
                for (map, entry) in &ordered {
                    candidates_checked += 1;
                    if !passes(a, map, nh, nk, nc, &p, &in_p) {
                        continue;
                    }
                    let process = Process::from_parts(
                        entry.term.clone(),
                        x.clone(),
                        y.clone(),
                        (*map).clone(),
                    );
                    let states = Attribute::new(c.states(), p.iter().copied())?;
                    let cand = ConstructorCandidate::new(c.clone(), states, process)?;
                    if !is_possible_with(a, &cand)?.overall {
                        return Err(Error::Inconsistent(alloc::format!(
                            "search screen accepted failing candidate {}",
                            cand.process().name()
                        )));
                    }
                    return Ok(SearchReport {
                        found: Some(cand),
                        bounds,
                        constructors_tried,
                        candidates_checked,
                    });
                }
            }
        }
    }
    Ok(SearchReport {
        found: None,
        bounds,
        constructors_tried,
        candidates_checked,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relcore::{self, Atom};
    use crate::substrate::SubstrateAtom;
    use alloc::vec;

    fn bit_theory(with_not: bool) -> (SubstrateTheory, Substrate) {
        let mut th = SubstrateTheory::new();
        let bit = SubstrateAtom::new("bit", Atom::new("Bit", ["0", "1"]).unwrap()).unwrap();
        th.add_atom(bit.clone()).unwrap();
        let b = Substrate::atom(&bit);
        let bb = b.tensor(&b);
        if with_not {
            th.add_generator(Process::new("NOT", b.clone(), b.clone(), vec![1, 0]).unwrap())
                .unwrap();
        }
        th.add_generator(Process::new("CNOT", bb.clone(), bb, vec![0, 1, 3, 2]).unwrap())
            .unwrap();
        (th, b)
    }

    #[test]
    fn identity_found_with_trivial_constructor() {
        let (th, b) = bit_theory(true);
        let r = search_constructor(
            &relcore::identity(&b.states()),
            &th,
            SearchBounds::default(),
        )
        .unwrap();
        let cand = r.found.unwrap();
        assert!(cand.constructor().is_unit());
        assert_eq!(cand.process().name(), "id(bit)");
        assert_eq!(r.candidates_checked, 2);
    }

    #[test]
    fn flip_uses_not_directly() {
        let (th, b) = bit_theory(true);
        let flip = Task::from_pairs(b.states(), b.states(), [(0, 1), (1, 0)]).unwrap();
        let cand = search_constructor(&flip, &th, SearchBounds::default())
            .unwrap()
            .found
            .unwrap();
        assert!(cand.constructor().is_unit());
        assert_eq!(cand.process().name(), "NOT");
    }

    #[test]
    fn flip_without_not_needs_a_catalyst() {
        let (th, b) = bit_theory(false);
        let flip = Task::from_pairs(b.states(), b.states(), [(0, 1), (1, 0)]).unwrap();
        let r = search_constructor(&flip, &th, SearchBounds::default()).unwrap();
        let cand = r.found.unwrap();
        assert_eq!(cand.constructor().len(), 1);
        assert_eq!(cand.states().render(), "{1}");
        assert!(is_possible_with(&flip, &cand).unwrap().overall);
    }

    #[test]
    fn cloning_is_absent_for_permutations() {
        let (th, b) = bit_theory(true);
        let clone = relcore::copy(&b.states());
        let r = search_constructor(&clone, &th, SearchBounds::default()).unwrap();
        assert!(r.found.is_none());
        assert_eq!(r.constructors_tried, 3);
        assert_eq!(r.candidates_checked, 0);
    }

    #[test]
    fn attribute_order() {
        let order = attributes_largest_first(2);
        assert_eq!(order, vec![vec![0, 1], vec![0], vec![1], vec![]]);
    }
}
