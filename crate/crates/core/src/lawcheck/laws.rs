use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::lawcheck::enumerate::{
    for_each_tuple, relation_from_mask, EnumerationBudget, MAX_LAW_INSTANCES,
};
use crate::relcore::{self, FinObject, Task};

/// The operations a law suite exercises. Law checks only reach relations
/// through this trait so that a deliberately broken implementation can be
/// substituted in mutation tests.
pub trait Semantics: Sync {
    fn seq(&self, a: &Task, b: &Task) -> Result<Task> {
        relcore::seq_compose(a, b)
    }
    fn par(&self, a: &Task, b: &Task) -> Task {
        relcore::par_compose(a, b)
    }
    fn transpose(&self, a: &Task) -> Task {
        relcore::transpose(a)
    }
    fn identity(&self, x: &FinObject) -> Task {
        relcore::identity(x)
    }
    fn swap(&self, x: &FinObject, y: &FinObject) -> Task {
        relcore::swap(x, y)
    }
    fn copy(&self, x: &FinObject) -> Task {
        relcore::copy(x)
    }
    fn discard(&self, x: &FinObject) -> Task {
        relcore::discard(x)
    }
    fn match_map(&self, x: &FinObject) -> Task {
        relcore::match_map(x)
    }
}

/// The operations of [`relcore`].
#[derive(Debug, Clone, Copy, Default)]
pub struct Standard;

impl Semantics for Standard {}

/// Inputs and both sides of the first failing instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub objects: Vec<FinObject>,
    pub inputs: Vec<Task>,
    pub lhs: Task,
    pub rhs: Task,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawReport {
    pub law: String,
    pub instances: u64,
    pub counterexample: Option<Counterexample>,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Result of checking one instance of a law.
#[allow(clippy::large_enum_variant)]
pub enum Verdict {
    Pass,
    Fail { lhs: Task, rhs: Task },
}

impl Verdict {
    pub fn equal(lhs: Task, rhs: Task) -> Verdict {
        if lhs == rhs {
            Verdict::Pass
        } else {
            Verdict::Fail { lhs, rhs }
        }
    }
}

pub type CheckFn = fn(&dyn Semantics, &[FinObject], &[&Task]) -> Result<Verdict>;

/// A law quantified over a tuple of objects and relations between them.
///
/// `slots[i] = (d, c)` says input relation `i` ranges over all relations
/// `objects[d] -> objects[c]`.
#[derive(Clone)]
pub struct Law {
    pub name: &'static str,
    pub arity: usize,
    pub slots: &'static [(usize, usize)],
    pub check: CheckFn,
}

impl core::fmt::Debug for Law {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("Law")
            .field("name", &self.name)
            .field("arity", &self.arity)
            .field("slots", &self.slots)
            .finish()
    }
}

fn slot_bits(law: &Law, objects: &[FinObject]) -> u64 {
    law.slots
        .iter()
        .map(|&(d, c)| (objects[d].size() * objects[c].size()) as u64)
        .sum()
}

/// Runs `law` over every choice of objects from the budget's universe whose
/// relation tuples number at most `max_relations`, and over every such tuple.
///
/// The total instance count is computed first; a law that would examine more
/// than [`MAX_LAW_INSTANCES`] instances fails with `BudgetExceeded` before
/// doing any work.
pub fn run_law(law: &Law, sem: &dyn Semantics, budget: &EnumerationBudget) -> Result<LawReport> {
    let universe = budget.objects()?;
    let max_bits = budget.max_bits() as u64;
    let radices = alloc::vec![universe.len(); law.arity];

    let mut total: u128 = 0;
    for_each_tuple(&radices, |idx| {
        let objs: Vec<FinObject> = idx.iter().map(|&i| universe[i].clone()).collect();
        let bits = slot_bits(law, &objs);
        if bits <= max_bits {
            total += 1u128 << bits;
        }
        true
    });
    if total > MAX_LAW_INSTANCES {
        return Err(Error::BudgetExceeded {
            what: alloc::format!("law {}", law.name),
            required: total,
            limit: MAX_LAW_INSTANCES,
        });
    }

    let mut cache: BTreeMap<(FinObject, FinObject), Arc<Vec<Task>>> = BTreeMap::new();
    let mut instances = 0u64;
    let mut counterexample = None;
    let mut error = None;
    for_each_tuple(&radices, |idx| {
        let objs: Vec<FinObject> = idx.iter().map(|&i| universe[i].clone()).collect();
        if slot_bits(law, &objs) > max_bits {
            return true;
        }
        let homs: Vec<Arc<Vec<Task>>> = law
            .slots
            .iter()
            .map(|&(d, c)| {
                cache
                    .entry((objs[d].clone(), objs[c].clone()))
                    .or_insert_with(|| {
                        let bits = objs[d].size() * objs[c].size();
                        Arc::new(
                            (0..1u64 << bits)
                                .map(|m| relation_from_mask(&objs[d], &objs[c], m))
                                .collect(),
                        )
                    })
                    .clone()
            })
            .collect();
        let radices: Vec<usize> = homs.iter().map(|h| h.len()).collect();
        let mut keep_going = true;
        let mut inputs: Vec<&Task> = Vec::with_capacity(homs.len());
        for_each_tuple(&radices, |ridx| {
            inputs.clear();
            inputs.extend(ridx.iter().zip(&homs).map(|(&i, h)| &h[i]));
            instances += 1;
            match (law.check)(sem, &objs, &inputs) {
                Ok(Verdict::Pass) => true,
                Ok(Verdict::Fail { lhs, rhs }) => {
                    counterexample = Some(Counterexample {
                        objects: objs.clone(),
                        inputs: inputs.iter().map(|t| (*t).clone()).collect(),
                        lhs,
                        rhs,
                    });
                    keep_going = false;
                    false
                }
                Err(e) => {
                    error = Some(e);
                    keep_going = false;
                    false
                }
            }
        });
        keep_going
    });
    if let Some(e) = error {
        return Err(e);
    }
    Ok(LawReport {
        law: law.name.into(),
        instances,
        counterexample,
    })
}

pub fn run_laws(
    laws: &[Law],
    sem: &dyn Semantics,
    budget: &EnumerationBudget,
) -> Result<Vec<LawReport>> {
    laws.iter().map(|l| run_law(l, sem, budget)).collect()
}

// Sides of a "relation is a function" check: single-valued iff it commutes
// with copying, total iff it commutes with discarding.
fn function_verdict(sem: &dyn Semantics, c: &Task) -> Result<Verdict> {
    let lhs = sem.seq(c, &sem.copy(c.cod()))?;
    let rhs = sem.seq(&sem.copy(c.dom()), &sem.par(c, c))?;
    if lhs != rhs {
        return Ok(Verdict::Fail { lhs, rhs });
    }
    Ok(Verdict::equal(
        sem.seq(c, &sem.discard(c.cod()))?,
        sem.discard(c.dom()),
    ))
}

fn is_function_via(sem: &dyn Semantics, c: &Task) -> Result<bool> {
    Ok(matches!(function_verdict(sem, c)?, Verdict::Pass))
}

fn seq_assoc(s: &dyn Semantics, _: &[FinObject], r: &[&Task]) -> Result<Verdict> {
    let lhs = s.seq(&s.seq(r[0], r[1])?, r[2])?;
    let rhs = s.seq(r[0], &s.seq(r[1], r[2])?)?;
    Ok(Verdict::equal(lhs, rhs))
}

fn seq_left_unit(s: &dyn Semantics, o: &[FinObject], r: &[&Task]) -> Result<Verdict> {
    Ok(Verdict::equal(
        s.seq(&s.identity(&o[0]), r[0])?,
        (*r[0]).clone(),
    ))
}

fn seq_right_unit(s: &dyn Semantics, o: &[FinObject], r: &[&Task]) -> Result<Verdict> {
    Ok(Verdict::equal(
        s.seq(r[0], &s.identity(&o[1]))?,
        (*r[0]).clone(),
    ))
}

fn par_assoc(s: &dyn Semantics, _: &[FinObject], r: &[&Task]) -> Result<Verdict> {
    let lhs = s.par(&s.par(r[0], r[1]), r[2]);
    let rhs = s.par(r[0], &s.par(r[1], r[2]));
    Ok(Verdict::equal(lhs, rhs))
}

fn par_unit(s: &dyn Semantics, _: &[FinObject], r: &[&Task]) -> Result<Verdict> {
    let unit = s.identity(&FinObject::unit());
    let right = s.par(r[0], &unit);
    if right != *r[0] {
        return Ok(Verdict::Fail {
            lhs: right,
            rhs: (*r[0]).clone(),
        });
    }
    Ok(Verdict::equal(s.par(&unit, r[0]), (*r[0]).clone()))
}

fn interchange(s: &dyn Semantics, _: &[FinObject], r: &[&Task]) -> Result<Verdict> {
    let lhs = s.par(&s.seq(r[0], r[1])?, &s.seq(r[2], r[3])?);
    let rhs = s.seq(&s.par(r[0], r[2]), &s.par(r[1], r[3]))?;
    Ok(Verdict::equal(lhs, rhs))
}

fn swap_naturality(s: &dyn Semantics, o: &[FinObject], r: &[&Task]) -> Result<Verdict> {
    // a : X -> Y, b : Z -> W
    let lhs = s.seq(&s.swap(&o[0], &o[2]), &s.par(r[1], r[0]))?;
    let rhs = s.seq(&s.par(r[0], r[1]), &s.swap(&o[1], &o[3]))?;
    Ok(Verdict::equal(lhs, rhs))
}

fn swap_involution(s: &dyn Semantics, o: &[FinObject], _: &[&Task]) -> Result<Verdict> {
    let lhs = s.seq(&s.swap(&o[0], &o[1]), &s.swap(&o[1], &o[0]))?;
    Ok(Verdict::equal(lhs, s.identity(&o[0].tensor(&o[1]))))
}

fn swap_hexagon(s: &dyn Semantics, o: &[FinObject], _: &[&Task]) -> Result<Verdict> {
    let (x, y, z) = (&o[0], &o[1], &o[2]);
    let lhs = s.swap(x, &y.tensor(z));
    let rhs = s.seq(
        &s.par(&s.swap(x, y), &s.identity(z)),
        &s.par(&s.identity(y), &s.swap(x, z)),
    )?;
    Ok(Verdict::equal(lhs, rhs))
}

fn swap_unit(s: &dyn Semantics, o: &[FinObject], _: &[&Task]) -> Result<Verdict> {
    Ok(Verdict::equal(
        s.swap(&o[0], &FinObject::unit()),
        s.identity(&o[0]),
    ))
}

fn dagger_involution(s: &dyn Semantics, _: &[FinObject], r: &[&Task]) -> Result<Verdict> {
    Ok(Verdict::equal(
        s.transpose(&s.transpose(r[0])),
        (*r[0]).clone(),
    ))
}

fn dagger_contravariant(s: &dyn Semantics, _: &[FinObject], r: &[&Task]) -> Result<Verdict> {
    let lhs = s.transpose(&s.seq(r[0], r[1])?);
    let rhs = s.seq(&s.transpose(r[1]), &s.transpose(r[0]))?;
    Ok(Verdict::equal(lhs, rhs))
}

fn dagger_monoidal(s: &dyn Semantics, _: &[FinObject], r: &[&Task]) -> Result<Verdict> {
    let lhs = s.transpose(&s.par(r[0], r[1]));
    let rhs = s.par(&s.transpose(r[0]), &s.transpose(r[1]));
    Ok(Verdict::equal(lhs, rhs))
}

fn dagger_structural(s: &dyn Semantics, o: &[FinObject], _: &[&Task]) -> Result<Verdict> {
    let id = s.identity(&o[0]);
    let id_t = s.transpose(&id);
    if id_t != id {
        return Ok(Verdict::Fail { lhs: id_t, rhs: id });
    }
    Ok(Verdict::equal(
        s.transpose(&s.swap(&o[0], &o[1])),
        s.swap(&o[1], &o[0]),
    ))
}

fn copy_cocommutative(s: &dyn Semantics, o: &[FinObject], _: &[&Task]) -> Result<Verdict> {
    let c = s.copy(&o[0]);
    Ok(Verdict::equal(s.seq(&c, &s.swap(&o[0], &o[0]))?, c))
}

fn copy_coassociative(s: &dyn Semantics, o: &[FinObject], _: &[&Task]) -> Result<Verdict> {
    let x = &o[0];
    let c = s.copy(x);
    let lhs = s.seq(&c, &s.par(&c, &s.identity(x)))?;
    let rhs = s.seq(&c, &s.par(&s.identity(x), &c))?;
    Ok(Verdict::equal(lhs, rhs))
}

fn copy_counit(s: &dyn Semantics, o: &[FinObject], _: &[&Task]) -> Result<Verdict> {
    let x = &o[0];
    let c = s.copy(x);
    let id = s.identity(x);
    let right = s.seq(&c, &s.par(&id, &s.discard(x)))?;
    if right != id {
        return Ok(Verdict::Fail {
            lhs: right,
            rhs: id,
        });
    }
    Ok(Verdict::equal(s.seq(&c, &s.par(&s.discard(x), &id))?, id))
}

fn match_is_copy_transpose(s: &dyn Semantics, o: &[FinObject], _: &[&Task]) -> Result<Verdict> {
    Ok(Verdict::equal(
        s.transpose(&s.copy(&o[0])),
        s.match_map(&o[0]),
    ))
}

fn functions_closed_seq(s: &dyn Semantics, _: &[FinObject], r: &[&Task]) -> Result<Verdict> {
    if !is_function_via(s, r[0])? || !is_function_via(s, r[1])? {
        return Ok(Verdict::Pass);
    }
    function_verdict(s, &s.seq(r[0], r[1])?)
}

fn functions_closed_par(s: &dyn Semantics, _: &[FinObject], r: &[&Task]) -> Result<Verdict> {
    if !is_function_via(s, r[0])? || !is_function_via(s, r[1])? {
        return Ok(Verdict::Pass);
    }
    function_verdict(s, &s.par(r[0], r[1]))
}

fn copy_transpose_not_function(s: &dyn Semantics, o: &[FinObject], _: &[&Task]) -> Result<Verdict> {
    if o[0].size() < 2 {
        return Ok(Verdict::Pass);
    }
    let m = s.transpose(&s.copy(&o[0]));
    match function_verdict(s, &m)? {
        Verdict::Pass => Ok(Verdict::Fail {
            lhs: s.seq(&m, &s.discard(m.cod()))?,
            rhs: s.discard(m.dom()),
        }),
        Verdict::Fail { .. } => Ok(Verdict::Pass),
    }
}

/// Associativity and units of both compositions, interchange, and the
/// symmetry equations.
pub fn smc_laws() -> Vec<Law> {
    alloc::vec![
        Law {
            name: "seq_associativity",
            arity: 4,
            slots: &[(0, 1), (1, 2), (2, 3)],
            check: seq_assoc
        },
        Law {
            name: "seq_left_unit",
            arity: 2,
            slots: &[(0, 1)],
            check: seq_left_unit
        },
        Law {
            name: "seq_right_unit",
            arity: 2,
            slots: &[(0, 1)],
            check: seq_right_unit
        },
        Law {
            name: "par_associativity",
            arity: 6,
            slots: &[(0, 1), (2, 3), (4, 5)],
            check: par_assoc
        },
        Law {
            name: "par_unit",
            arity: 2,
            slots: &[(0, 1)],
            check: par_unit
        },
        Law {
            name: "interchange",
            arity: 6,
            slots: &[(0, 1), (1, 2), (3, 4), (4, 5)],
            check: interchange
        },
        Law {
            name: "swap_naturality",
            arity: 4,
            slots: &[(0, 1), (2, 3)],
            check: swap_naturality
        },
        Law {
            name: "swap_involution",
            arity: 2,
            slots: &[],
            check: swap_involution
        },
        Law {
            name: "swap_hexagon",
            arity: 3,
            slots: &[],
            check: swap_hexagon
        },
        Law {
            name: "swap_unit",
            arity: 1,
            slots: &[],
            check: swap_unit
        },
    ]
}

pub fn dagger_laws() -> Vec<Law> {
    alloc::vec![
        Law {
            name: "dagger_involution",
            arity: 2,
            slots: &[(0, 1)],
            check: dagger_involution
        },
        Law {
            name: "dagger_contravariant",
            arity: 3,
            slots: &[(0, 1), (1, 2)],
            check: dagger_contravariant
        },
        Law {
            name: "dagger_monoidal",
            arity: 4,
            slots: &[(0, 1), (2, 3)],
            check: dagger_monoidal
        },
        Law {
            name: "dagger_structural",
            arity: 2,
            slots: &[],
            check: dagger_structural
        },
    ]
}

/// Copy/discard comonoid equations, the match map, and closure of functions.
pub fn copy_laws() -> Vec<Law> {
    alloc::vec![
        Law {
            name: "copy_cocommutative",
            arity: 1,
            slots: &[],
            check: copy_cocommutative
        },
        Law {
            name: "copy_coassociative",
            arity: 1,
            slots: &[],
            check: copy_coassociative
        },
        Law {
            name: "copy_counit",
            arity: 1,
            slots: &[],
            check: copy_counit
        },
        Law {
            name: "match_is_copy_transpose",
            arity: 1,
            slots: &[],
            check: match_is_copy_transpose
        },
        Law {
            name: "functions_closed_under_seq",
            arity: 3,
            slots: &[(0, 1), (1, 2)],
            check: functions_closed_seq
        },
        Law {
            name: "functions_closed_under_par",
            arity: 4,
            slots: &[(0, 1), (2, 3)],
            check: functions_closed_par
        },
        Law {
            name: "copy_transpose_not_function",
            arity: 1,
            slots: &[],
            check: copy_transpose_not_function
        },
    ]
}

pub fn verify_smc_laws(sem: &dyn Semantics, budget: &EnumerationBudget) -> Result<Vec<LawReport>> {
    run_laws(&smc_laws(), sem, budget)
}

pub fn verify_dagger_laws(
    sem: &dyn Semantics,
    budget: &EnumerationBudget,
) -> Result<Vec<LawReport>> {
    run_laws(&dagger_laws(), sem, budget)
}

pub fn verify_copy_laws(sem: &dyn Semantics, budget: &EnumerationBudget) -> Result<Vec<LawReport>> {
    run_laws(&copy_laws(), sem, budget)
}

/// All relational law suites, in report order.
pub fn all_relational_laws() -> Vec<Law> {
    let mut v = smc_laws();
    v.extend(dagger_laws());
    v.extend(copy_laws());
    v
}
