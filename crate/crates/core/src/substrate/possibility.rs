use alloc::string::ToString;

use crate::error::{Error, Result};
use crate::relcore::{self, Attribute, FinObject, Task};
use crate::substrate::theory::{Process, Substrate};

/// A constructor substrate `C`, an attribute `P` of its states, and a
/// process `f: H * C -> K * C`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructorCandidate {
    constructor: Substrate,
    states: Attribute,
    process: Process,
    h: Substrate,
    k: Substrate,
}

impl ConstructorCandidate {
    pub fn new(constructor: Substrate, states: Attribute, process: Process) -> Result<Self> {
        let gamma = constructor.states();
        if states.carrier() != &gamma {
            return Err(Error::CarrierMismatch {
                expected: gamma.to_string(),
                found: states.carrier().to_string(),
            });
        }
        let split = |side: &Substrate| {
            side.strip_suffix(&constructor)
                .ok_or_else(|| Error::SplitMismatch {
                    boundary: side.to_string(),
                    split: constructor.to_string(),
                })
        };
        let h = split(process.dom())?;
        let k = split(process.cod())?;
        Ok(ConstructorCandidate {
            constructor,
            states,
            process,
            h,
            k,
        })
    }

    /// Unit constructor with `P = {*}`.
    pub fn trivial(process: Process) -> Self {
        ConstructorCandidate::new(
            Substrate::unit(),
            Attribute::trivial(FinObject::unit()),
            process,
        )
        .expect("unit constructor always splits")
    }

    pub fn constructor(&self) -> &Substrate {
        &self.constructor
    }

    pub fn states(&self) -> &Attribute {
        &self.states
    }

    pub fn process(&self) -> &Process {
        &self.process
    }

    /// The substrate `H` the task starts from.
    pub fn input(&self) -> &Substrate {
        &self.h
    }

    /// The substrate `K` the task ends in.
    pub fn output(&self) -> &Substrate {
        &self.k
    }
}

/// Why a verdict failed, in state indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PossibilityCounterexample {
    /// A maplet of the task that the constructor cannot produce.
    Unproduced { input: usize, output: usize },
    /// A maplet the constructor produces that the task lacks.
    Unwanted { input: usize, output: usize },
    /// A constructor state in `P` leaves `P` when the process runs on `input`.
    Degraded {
        input: usize,
        before: usize,
        after: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PossibilityVerdict {
    pub task_inducing: bool,
    pub condition1: bool,
    pub condition2: bool,
    pub overall: bool,
    pub counterexample: Option<PossibilityCounterexample>,
}

fn check_task_boundary(a: &Task, cand: &ConstructorCandidate) -> Result<()> {
    for (found, expected) in [(a.dom(), cand.h.states()), (a.cod(), cand.k.states())] {
        if *found != expected {
            return Err(Error::BoundaryMismatch {
                left: found.to_string(),
                right: expected.to_string(),
            });
        }
    }
    Ok(())
}

/// `(id_K x discard_C) . [f] . (id_H x P)`: the task the candidate performs.
pub fn performed_task(cand: &ConstructorCandidate) -> Result<Task> {
    let gh = cand.h.states();
    let gk = cand.k.states();
    let gc = cand.constructor.states();
    let prepare = relcore::par_compose(&relcore::identity(&gh), &cand.states.as_state());
    let finish = relcore::par_compose(&relcore::identity(&gk), &relcore::discard(&gc));
    relcore::seq_compose(
        &relcore::seq_compose(&prepare, &cand.process.induced_task())?,
        &finish,
    )
}

fn condition1_witness(
    a: &Task,
    cand: &ConstructorCandidate,
) -> Result<Option<PossibilityCounterexample>> {
    check_task_boundary(a, cand)?;
    let performed = performed_task(cand)?;
    if let Some((input, output)) = a.pairs().find(|&(x, y)| !performed.contains(x, y)) {
        return Ok(Some(PossibilityCounterexample::Unproduced {
            input,
            output,
        }));
    }
    let unwanted = performed.pairs().find(|&(x, y)| !a.contains(x, y));
    Ok(unwanted.map(|(input, output)| PossibilityCounterexample::Unwanted { input, output }))
}

/// `A` is what the candidate performs once its constructor input is
/// restricted to `P` and its constructor output is discarded.
pub fn check_condition1(a: &Task, cand: &ConstructorCandidate) -> Result<bool> {
    Ok(condition1_witness(a, cand)?.is_none())
}

/// Pointwise form: every `gamma` in `P` stays in `P` whatever the input.
pub fn condition2_pointwise(cand: &ConstructorCandidate) -> Option<PossibilityCounterexample> {
    let nh = cand.h.state_count();
    let nc = cand.constructor.state_count();
    for gamma in cand.states.members() {
        for rho in 0..nh {
            let after = cand.process.apply(rho * nc + gamma) % nc;
            if !cand.states.contains(after) {
                return Some(PossibilityCounterexample::Degraded {
                    input: rho,
                    before: gamma,
                    after,
                });
            }
        }
    }
    None
}

/// Relational form: `(discard_K x id_C) . [f] . (eta_H x P)` is contained in `P`.
pub fn condition2_relational(cand: &ConstructorCandidate) -> Result<bool> {
    let gh = cand.h.states();
    let gk = cand.k.states();
    let gc = cand.constructor.states();
    let prepare = relcore::par_compose(&Attribute::trivial(gh).as_state(), &cand.states.as_state());
    let finish = relcore::par_compose(&relcore::discard(&gk), &relcore::identity(&gc));
    let image = relcore::seq_compose(
        &relcore::seq_compose(&prepare, &cand.process.induced_task())?,
        &finish,
    )?;
    Ok(image.is_subset(&cand.states.as_state()))
}

fn condition2_witness(cand: &ConstructorCandidate) -> Result<Option<PossibilityCounterexample>> {
    let pointwise = condition2_pointwise(cand);
    if pointwise.is_none() != condition2_relational(cand)? {
        return Err(Error::Inconsistent(alloc::format!(
            "condition 2 forms disagree for process {}",
            cand.process.name()
        )));
    }
    Ok(pointwise)
}

/// `P` is preserved by the process. Both forms are computed and must agree.
pub fn check_condition2(cand: &ConstructorCandidate) -> Result<bool> {
    Ok(condition2_witness(cand)?.is_none())
}

pub fn is_possible_with(a: &Task, cand: &ConstructorCandidate) -> Result<PossibilityVerdict> {
    let inducing = crate::substrate::is_task_inducing(
        &cand.process,
        &cand.h.tensor(&cand.constructor),
        &cand.k.tensor(&cand.constructor),
    )?;
    let c1 = condition1_witness(a, cand)?;
    let c2 = condition2_witness(cand)?;
    let condition1 = c1.is_none();
    let condition2 = c2.is_none();
    Ok(PossibilityVerdict {
        task_inducing: inducing,
        condition1,
        condition2,
        overall: inducing && condition1 && condition2,
        counterexample: c1.or(c2),
    })
}

/// Appends `id(s)` on the right unless `s` is the unit.
fn with_idle(p: &Process, s: &Substrate) -> Process {
    if s.is_unit() {
        p.clone()
    } else {
        p.par(&Process::identity(s))
    }
}

fn then(p: Process, q: Option<Process>) -> Result<Process> {
    match q {
        Some(q) => p.seq(&q),
        None => Ok(p),
    }
}

/// `id(pre) * swap(a, b) * id(post)`, or nothing when it is an identity.
fn shuffle(pre: &Substrate, a: &Substrate, b: &Substrate, post: &Substrate) -> Option<Process> {
    if a.is_unit() || b.is_unit() {
        return None;
    }
    let mut p = Process::swap(a, b);
    if !pre.is_unit() {
        p = Process::identity(pre).par(&p);
    }
    Some(with_idle(&p, post))
}

/// Witness for `wa ; wb` with constructor `C * D` and attribute `P x Q`:
/// `f x id_D`, move `D` next to `K`, `g x id_C`, restore the order.
pub fn witness_seq(
    wa: &ConstructorCandidate,
    wb: &ConstructorCandidate,
) -> Result<ConstructorCandidate> {
    if wa.k != wb.h {
        return Err(Error::BoundaryMismatch {
            left: wa.k.to_string(),
            right: wb.h.to_string(),
        });
    }
    let (c, d) = (&wa.constructor, &wb.constructor);
    let (k, l) = (&wa.k, &wb.k);
    let mut p = with_idle(&wa.process, d);
    p = then(p, shuffle(k, c, d, &Substrate::unit()))?;
    p = p.seq(&with_idle(&wb.process, c))?;
    p = then(p, shuffle(l, d, c, &Substrate::unit()))?;
    ConstructorCandidate::new(c.tensor(d), wa.states.product(&wb.states), p)
}

/// Witness for `wa * wb` with constructor `C * D` and attribute `P x Q`:
/// move `C` next to `H`, run `f x g`, move `C` past `K'`.
pub fn witness_par(
    wa: &ConstructorCandidate,
    wb: &ConstructorCandidate,
) -> Result<ConstructorCandidate> {
    let (c, d) = (&wa.constructor, &wb.constructor);
    let (h, k) = (&wa.h, &wa.k);
    let (h2, k2) = (&wb.h, &wb.k);
    let mut p = match shuffle(h, h2, c, d) {
        Some(s) => s.seq(&wa.process.par(&wb.process))?,
        None => wa.process.par(&wb.process),
    };
    p = then(p, shuffle(k, c, k2, d))?;
    ConstructorCandidate::new(c.tensor(d), wa.states.product(&wb.states), p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relcore::Atom;
    use crate::substrate::SubstrateAtom;
    use alloc::vec;

    fn bit() -> Substrate {
        Substrate::atom(&SubstrateAtom::new("bit", Atom::new("Bit", ["0", "1"]).unwrap()).unwrap())
    }

    fn not(b: &Substrate) -> Process {
        Process::new("NOT", b.clone(), b.clone(), vec![1, 0]).unwrap()
    }

    fn cnot(b: &Substrate) -> Process {
        let bb = b.tensor(b);
        Process::new("CNOT", bb.clone(), bb, vec![0, 1, 3, 2]).unwrap()
    }

    /// Flips the data bit using a constructor bit held at 1: swap it to the
    /// control position, CNOT, swap back.
    fn catalysed_flip(b: &Substrate) -> ConstructorCandidate {
        let sw = Process::swap(b, b);
        let f = sw.seq(&cnot(b)).unwrap().seq(&sw).unwrap();
        ConstructorCandidate::new(b.clone(), Attribute::singleton(b.states(), 1), f).unwrap()
    }

    #[test]
    fn trivial_constructor_for_identity_and_swap() {
        let b = bit();
        let bb = b.tensor(&b);
        let id = Process::identity(&bb);
        let v = is_possible_with(&id.induced_task(), &ConstructorCandidate::trivial(id)).unwrap();
        assert!(v.overall && v.counterexample.is_none());
        let sw = Process::swap(&b, &bb);
        let v = is_possible_with(&sw.induced_task(), &ConstructorCandidate::trivial(sw)).unwrap();
        assert!(v.overall);
    }

    #[test]
    fn catalysed_flip_is_possible() {
        let b = bit();
        let w = catalysed_flip(&b);
        let v = is_possible_with(&not(&b).induced_task(), &w).unwrap();
        assert!(v.overall, "{v:?}");
        let same = is_possible_with(&Process::identity(&b).induced_task(), &w).unwrap();
        assert!(!same.condition1 && same.condition2);
    }

    #[test]
    fn missing_maplet_is_reported() {
        let b = bit();
        let w = catalysed_flip(&b);
        let a = not(&b).induced_task().without(0, 1);
        let v = is_possible_with(&a, &w).unwrap();
        assert!(!v.condition1 && !v.overall);
        assert_eq!(
            v.counterexample,
            Some(PossibilityCounterexample::Unwanted {
                input: 0,
                output: 1
            })
        );
        let extra = not(&b).induced_task().with(0, 0);
        let v = is_possible_with(&extra, &w).unwrap();
        assert_eq!(
            v.counterexample,
            Some(PossibilityCounterexample::Unproduced {
                input: 0,
                output: 0
            })
        );
    }

    #[test]
    fn degraded_constructor_fails_condition2() {
        let b = bit();
        // the constructor bit is flipped every run
        let f = Process::identity(&b).par(&not(&b));
        let cand =
            ConstructorCandidate::new(b.clone(), Attribute::singleton(b.states(), 0), f.clone())
                .unwrap();
        assert!(!check_condition2(&cand).unwrap());
        assert!(!condition2_relational(&cand).unwrap());
        let all = ConstructorCandidate::new(b.clone(), Attribute::trivial(b.states()), f).unwrap();
        assert!(check_condition2(&all).unwrap());
    }

    #[test]
    fn empty_attribute_only_performs_the_empty_task() {
        let b = bit();
        let f = Process::identity(&b.tensor(&b));
        let cand = ConstructorCandidate::new(b.clone(), Attribute::empty(b.states()), f).unwrap();
        assert!(
            is_possible_with(&Task::empty(b.states(), b.states()), &cand)
                .unwrap()
                .overall
        );
        assert!(!check_condition1(&relcore::identity(&b.states()), &cand).unwrap());
    }

    #[test]
    fn candidate_validation() {
        let b = bit();
        let bb = b.tensor(&b);
        let wrong_carrier = Attribute::trivial(bb.states());
        assert!(matches!(
            ConstructorCandidate::new(b.clone(), wrong_carrier, Process::identity(&bb)),
            Err(Error::CarrierMismatch { .. })
        ));
        assert!(matches!(
            ConstructorCandidate::new(bb.clone(), Attribute::trivial(bb.states()), not(&b)),
            Err(Error::SplitMismatch { .. })
        ));
        let w = catalysed_flip(&b);
        assert!(matches!(
            is_possible_with(&relcore::identity(&bb.states()), &w),
            Err(Error::BoundaryMismatch { .. })
        ));
    }

    #[test]
    fn witness_seq_of_flips_gives_identity() {
        let b = bit();
        let w = catalysed_flip(&b);
        let both = witness_seq(&w, &w).unwrap();
        assert_eq!(both.constructor().len(), 2);
        let v = is_possible_with(&Process::identity(&b).induced_task(), &both).unwrap();
        assert!(v.overall, "{v:?}");
    }

    #[test]
    fn witnesses_of_trivial_candidates_stay_trivial() {
        let b = bit();
        let wa = ConstructorCandidate::trivial(not(&b));
        let wb = ConstructorCandidate::trivial(Process::identity(&b));
        let s = witness_seq(&wa, &wb).unwrap();
        assert!(s.constructor().is_unit());
        assert_eq!(s.process().name(), "NOT ; id(bit)");
        let p = witness_par(&wa, &wb).unwrap();
        assert_eq!(p.process().name(), "NOT * id(bit)");
        let task = relcore::par_compose(&not(&b).induced_task(), &relcore::identity(&b.states()));
        assert!(is_possible_with(&task, &p).unwrap().overall);
    }

    #[test]
    fn witness_par_with_constructors() {
        let b = bit();
        let w = catalysed_flip(&b);
        let t = ConstructorCandidate::trivial(cnot(&b));
        for (x, y) in [(&w, &t), (&t, &w), (&w, &w)] {
            let p = witness_par(x, y).unwrap();
            let task =
                relcore::par_compose(&performed_task(x).unwrap(), &performed_task(y).unwrap());
            let v = is_possible_with(&task, &p).unwrap();
            assert!(v.overall, "{} {v:?}", p.process().name());
        }
    }
}
