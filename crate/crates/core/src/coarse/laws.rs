//! Exhaustive checks of the coarse-grained theory on small sets.
//!
//! The sets are `A0 .. Ak` with `An` of size `n` (so `A0` is empty) for
//! `k = max_atom_size`. As in the relational suites, a choice of sets is
//! checked only when all its relation slots together need at most
//! `log2(max_relations)` bits.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::coarse::antichain::{
    boxtimes_objects, enumerate_antichains, singleton_embed_object, Antichain,
};
use crate::coarse::task::{
    coarse_grain, coarse_matrix, coarse_par, coarse_seq, coarse_swap,
    identity_antichain_biconditional, restrict_to_support, singleton_embed_task, CoarseTask,
};
use crate::error::{Error, Result};
use crate::lawcheck::{relation_from_mask, Counterexample, EnumerationBudget, LawReport};
use crate::relcore::{self, Atom, Attribute, FinObject, Task};

/// Largest set size the coarse suites accept.
pub const MAX_COARSE_SET: usize = 3;

struct Desk {
    sets: Vec<FinObject>,
    antichains: Vec<Vec<Antichain>>,
    max_bits: usize,
    relations: BTreeMap<(usize, usize), Vec<Task>>,
}

impl Desk {
    fn new(budget: &EnumerationBudget) -> Result<Desk> {
        budget.validate()?;
        if budget.max_atom_size > MAX_COARSE_SET {
            return Err(Error::BudgetExceeded {
                what: "coarse suites set size".into(),
                required: budget.max_atom_size as u128,
                limit: MAX_COARSE_SET as u128,
            });
        }
        let sets: Vec<FinObject> = (0..=budget.max_atom_size)
            .map(|n| FinObject::atom(&Atom::numbered(alloc::format!("A{n}"), n)))
            .collect();
        let antichains = sets
            .iter()
            .map(enumerate_antichains)
            .collect::<Result<_>>()?;
        Ok(Desk {
            sets,
            antichains,
            max_bits: budget.max_bits() as usize,
            relations: BTreeMap::new(),
        })
    }

    fn fits(&self, slots: &[(usize, usize)]) -> bool {
        slots
            .iter()
            .map(|&(i, j)| self.sets[i].size() * self.sets[j].size())
            .sum::<usize>()
            <= self.max_bits
    }

    fn relations(&mut self, i: usize, j: usize) -> Vec<Task> {
        let (x, y) = (self.sets[i].clone(), self.sets[j].clone());
        self.relations
            .entry((i, j))
            .or_insert_with(|| {
                (0..1u64 << (x.size() * y.size()))
                    .map(|m| relation_from_mask(&x, &y, m))
                    .collect()
            })
            .clone()
    }

    fn indices(&self) -> core::ops::Range<usize> {
        0..self.sets.len()
    }

    fn attributes(&self, i: usize) -> Vec<Attribute> {
        let x = &self.sets[i];
        (0..1u32 << x.size())
            .map(|m| {
                Attribute::new(x.clone(), (0..x.size()).filter(|b| m >> b & 1 == 1))
                    .expect("in range")
            })
            .collect()
    }
}

struct Tally {
    law: &'static str,
    instances: u64,
    counterexample: Option<Counterexample>,
}

impl Tally {
    fn new(law: &'static str) -> Self {
        Tally {
            law,
            instances: 0,
            counterexample: None,
        }
    }

    /// Records one instance; returns whether to keep going.
    fn equal(&mut self, objects: &[&FinObject], inputs: &[&Task], lhs: Task, rhs: Task) -> bool {
        self.holds(lhs == rhs, objects, inputs, || (lhs, rhs))
    }

    fn holds(
        &mut self,
        ok: bool,
        objects: &[&FinObject],
        inputs: &[&Task],
        sides: impl FnOnce() -> (Task, Task),
    ) -> bool {
        self.instances += 1;
        if !ok && self.counterexample.is_none() {
            let (lhs, rhs) = sides();
            self.counterexample = Some(Counterexample {
                objects: objects.iter().map(|o| (*o).clone()).collect(),
                inputs: inputs.iter().map(|t| (*t).clone()).collect(),
                lhs,
                rhs,
            });
        }
        ok
    }

    fn report(self) -> LawReport {
        LawReport {
            law: self.law.into(),
            instances: self.instances,
            counterexample: self.counterexample,
        }
    }
}

fn key(c: &CoarseTask) -> Vec<(String, String)> {
    c.rendered_pairs()
}

/// Coarse tasks reachable from all relations `X -> Y` equal those reachable
/// from relations between the supports `X' -> Y'`.
pub fn well_definedness(budget: &EnumerationBudget) -> Result<LawReport> {
    let mut desk = Desk::new(budget)?;
    let mut t = Tally::new("coarse_well_definedness");
    for i in desk.indices() {
        for j in desk.indices() {
            if !desk.fits(&[(i, j)]) {
                continue;
            }
            let rels = desk.relations(i, j);
            for xbar in desk.antichains[i].clone() {
                for ybar in desk.antichains[j].clone() {
                    let (xs, ys) = (xbar.on_support(), ybar.on_support());
                    let mut over_base = BTreeMap::new();
                    for a in &rels {
                        let c = coarse_grain(a, &xbar, &ybar)?;
                        over_base.entry(key(&c)).or_insert(c);
                    }
                    let mut over_support = BTreeMap::new();
                    for mask in 0..1u64 << (xs.base().size() * ys.base().size()) {
                        let a = relation_from_mask(xs.base(), ys.base(), mask);
                        let c = coarse_grain(&a, &xs, &ys)?;
                        over_support.entry(key(&c)).or_insert(c);
                    }
                    let left: BTreeSet<_> = over_base.keys().collect();
                    let right: BTreeSet<_> = over_support.keys().collect();
                    let odd = left.symmetric_difference(&right).next().map(|k| {
                        let c = over_base.get(*k).or_else(|| over_support.get(*k)).unwrap();
                        (
                            c.to_task(),
                            Task::empty(c.dom().as_object(), c.cod().as_object()),
                        )
                    });
                    let objs = [&desk.sets[i], &desk.sets[j]];
                    if !t.holds(odd.is_none(), &objs, &[], || odd.unwrap()) {
                        return Ok(t.report());
                    }
                }
            }
        }
    }
    Ok(t.report())
}

/// Restricting a task to the supports of the antichains leaves its
/// coarse-graining unchanged.
pub fn restriction_preserves_coarse(budget: &EnumerationBudget) -> Result<LawReport> {
    let mut desk = Desk::new(budget)?;
    let mut t = Tally::new("coarse_restriction_invariance");
    for i in desk.indices() {
        for j in desk.indices() {
            if !desk.fits(&[(i, j)]) {
                continue;
            }
            for a in desk.relations(i, j) {
                for xbar in &desk.antichains[i] {
                    for ybar in &desk.antichains[j] {
                        let r = restrict_to_support(&a, xbar, ybar)?;
                        let whole = coarse_grain(&a, xbar, ybar)?;
                        let part = coarse_grain(&r, &xbar.on_support(), &ybar.on_support())?;
                        let objs = [&desk.sets[i], &desk.sets[j]];
                        if !t.holds(key(&whole) == key(&part), &objs, &[&a], || {
                            (whole.to_task(), part.to_task())
                        }) {
                            return Ok(t.report());
                        }
                    }
                }
            }
        }
    }
    Ok(t.report())
}

/// Over every family of attributes, the identity coarse-grains to the
/// identity exactly when the family is an antichain.
pub fn identity_antichain(budget: &EnumerationBudget) -> Result<LawReport> {
    let desk = Desk::new(budget)?;
    let mut t = Tally::new("coarse_identity_iff_antichain");
    for i in desk.indices() {
        let x = &desk.sets[i];
        let attrs = desk.attributes(i);
        let n = attrs.len();
        if n > 16 {
            continue;
        }
        for fam in 0..1u64 << n {
            let family: Vec<Attribute> = (0..n)
                .filter(|b| fam >> b & 1 == 1)
                .map(|b| attrs[b].clone())
                .collect();
            let verdict = identity_antichain_biconditional(x, &family);
            let ok = match verdict {
                Ok(_) => true,
                Err(Error::Inconsistent(_)) => false,
                Err(e) => return Err(e),
            };
            let bar = Antichain::new_unchecked(x.clone(), family.clone());
            if !t.holds(ok, &[x], &[], || {
                let id = coarse_matrix(&relcore::identity(x), bar.attributes(), bar.attributes())
                    .expect("carrier checked");
                let obj = bar.as_object();
                let lhs = Task::from_pairs(obj.clone(), obj.clone(), id.iter()).expect("in range");
                (lhs, relcore::identity(&obj))
            }) {
                break;
            }
        }
    }
    Ok(t.report())
}

/// Coarse-graining the symmetry over `Xbar ⊠ Ybar` gives the coarse swap.
pub fn swap_coherence(budget: &EnumerationBudget) -> Result<LawReport> {
    let desk = Desk::new(budget)?;
    let mut t = Tally::new("coarse_swap_coherence");
    for i in desk.indices() {
        for j in desk.indices() {
            let (x, y) = (&desk.sets[i], &desk.sets[j]);
            let sw = relcore::swap(x, y);
            for xbar in &desk.antichains[i] {
                for ybar in &desk.antichains[j] {
                    let lhs = coarse_grain(
                        &sw,
                        &boxtimes_objects(xbar, ybar),
                        &boxtimes_objects(ybar, xbar),
                    )?;
                    let rhs = coarse_swap(xbar, ybar);
                    if !t.equal(&[x, y], &[&sw], lhs.to_task(), rhs.to_task()) {
                        return Ok(t.report());
                    }
                }
            }
        }
    }
    Ok(t.report())
}

/// `coarse(A) ; coarse(B)` is contained in `coarse(A ; B)`.
pub fn seq_containment(budget: &EnumerationBudget) -> Result<LawReport> {
    let mut desk = Desk::new(budget)?;
    let mut t = Tally::new("coarse_seq_containment");
    for i in desk.indices() {
        for j in desk.indices() {
            for k in desk.indices() {
                if !desk.fits(&[(i, j), (j, k)]) {
                    continue;
                }
                let (ab, bc) = (desk.relations(i, j), desk.relations(j, k));
                for a in &ab {
                    for b in &bc {
                        let ab_task = relcore::seq_compose(a, b)?;
                        for xbar in &desk.antichains[i] {
                            for ybar in &desk.antichains[j] {
                                let ca = coarse_grain(a, xbar, ybar)?;
                                for zbar in &desk.antichains[k] {
                                    let composed = coarse_seq(&ca, &coarse_grain(b, ybar, zbar)?)?;
                                    let direct = coarse_grain(&ab_task, xbar, zbar)?;
                                    let objs = [&desk.sets[i], &desk.sets[j], &desk.sets[k]];
                                    if !t.holds(composed.is_subset(&direct), &objs, &[a, b], || {
                                        (composed.to_task(), direct.to_task())
                                    }) {
                                        return Ok(t.report());
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(t.report())
}

fn has_empty(bar: &Antichain) -> bool {
    bar.attributes().iter().any(Attribute::is_empty)
}

/// For antichains of nonempty attributes, `coarse(A) ⊠ coarse(B)` is
/// `coarse(A x B)` over the products.
pub fn par_agreement(budget: &EnumerationBudget) -> Result<LawReport> {
    let mut desk = Desk::new(budget)?;
    let mut t = Tally::new("coarse_par_agreement");
    let n = desk.sets.len();
    let mut tuple = [0usize; 4];
    for code in 0..n.pow(4) {
        let mut c = code;
        for slot in tuple.iter_mut().rev() {
            *slot = c % n;
            c /= n;
        }
        let [x, y, z, w] = tuple;
        if !desk.fits(&[(x, y), (z, w)]) {
            continue;
        }
        let bars = |i: usize| -> Vec<Antichain> {
            desk.antichains[i]
                .iter()
                .filter(|b| !has_empty(b))
                .cloned()
                .collect()
        };
        let (xb, yb, zb, wb) = (bars(x), bars(y), bars(z), bars(w));
        let (ra, rb) = (desk.relations(x, y), desk.relations(z, w));
        for a in &ra {
            for b in &rb {
                let ab = relcore::par_compose(a, b);
                for xbar in &xb {
                    for ybar in &yb {
                        let ca = coarse_grain(a, xbar, ybar)?;
                        for zbar in &zb {
                            for wbar in &wb {
                                let p = coarse_par(&ca, &coarse_grain(b, zbar, wbar)?)?;
                                let direct = coarse_grain(&ab, p.dom(), p.cod())?;
                                let objs =
                                    [&desk.sets[x], &desk.sets[y], &desk.sets[z], &desk.sets[w]];
                                if !t.equal(&objs, &[a, b], p.to_task(), direct.to_task()) {
                                    return Ok(t.report());
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(t.report())
}

/// The singleton embedding preserves sequential composition.
pub fn singleton_seq(budget: &EnumerationBudget) -> Result<LawReport> {
    let mut desk = Desk::new(budget)?;
    let mut t = Tally::new("singleton_preserves_seq");
    for i in desk.indices() {
        for j in desk.indices() {
            for k in desk.indices() {
                if !desk.fits(&[(i, j), (j, k)]) {
                    continue;
                }
                let (ab, bc) = (desk.relations(i, j), desk.relations(j, k));
                for a in &ab {
                    for b in &bc {
                        let lhs = singleton_embed_task(&relcore::seq_compose(a, b)?);
                        let rhs = coarse_seq(&singleton_embed_task(a), &singleton_embed_task(b))?;
                        let objs = [&desk.sets[i], &desk.sets[j], &desk.sets[k]];
                        if !t.equal(&objs, &[a, b], lhs.to_task(), rhs.to_task()) {
                            return Ok(t.report());
                        }
                    }
                }
            }
        }
    }
    Ok(t.report())
}

/// The singleton embedding preserves parallel composition.
pub fn singleton_par(budget: &EnumerationBudget) -> Result<LawReport> {
    let mut desk = Desk::new(budget)?;
    let mut t = Tally::new("singleton_preserves_par");
    let n = desk.sets.len();
    for code in 0..n.pow(4) {
        let (x, y, z, w) = (
            code / (n * n * n),
            code / (n * n) % n,
            code / n % n,
            code % n,
        );
        if !desk.fits(&[(x, y), (z, w)]) {
            continue;
        }
        let (ra, rb) = (desk.relations(x, y), desk.relations(z, w));
        for a in &ra {
            for b in &rb {
                let lhs = singleton_embed_task(&relcore::par_compose(a, b));
                let rhs = coarse_par(&singleton_embed_task(a), &singleton_embed_task(b))?;
                let objs = [&desk.sets[x], &desk.sets[y], &desk.sets[z], &desk.sets[w]];
                if !t.equal(&objs, &[a, b], lhs.to_task(), rhs.to_task()) {
                    return Ok(t.report());
                }
            }
        }
    }
    Ok(t.report())
}

/// The singleton embedding sends identities and swaps to identities and
/// coarse swaps, and `⊠` of singleton families to singletons of the product.
pub fn singleton_structure(budget: &EnumerationBudget) -> Result<LawReport> {
    let desk = Desk::new(budget)?;
    let mut t = Tally::new("singleton_preserves_structure");
    for x in &desk.sets {
        let fx = singleton_embed_object(x);
        let id = relcore::identity(x);
        if !t.equal(
            &[x],
            &[],
            singleton_embed_task(&id).to_task(),
            CoarseTask::identity(&fx).to_task(),
        ) {
            return Ok(t.report());
        }
        for y in &desk.sets {
            let fy = singleton_embed_object(y);
            let sw = relcore::swap(x, y);
            if !t.equal(
                &[x, y],
                &[],
                singleton_embed_task(&sw).to_task(),
                coarse_swap(&fx, &fy).to_task(),
            ) {
                return Ok(t.report());
            }
            let product = boxtimes_objects(&fx, &fy);
            let direct = singleton_embed_object(&x.tensor(y));
            if !t.holds(product == direct, &[x, y], &[], || {
                (
                    CoarseTask::identity(&product).to_task(),
                    CoarseTask::identity(&direct).to_task(),
                )
            }) {
                return Ok(t.report());
            }
        }
    }
    Ok(t.report())
}

/// Distinct tasks have distinct singleton embeddings.
pub fn singleton_faithful(budget: &EnumerationBudget) -> Result<LawReport> {
    let mut desk = Desk::new(budget)?;
    let mut t = Tally::new("singleton_faithful");
    for i in desk.indices() {
        for j in desk.indices() {
            if !desk.fits(&[(i, j)]) {
                continue;
            }
            let mut seen: BTreeMap<Vec<(String, String)>, Task> = BTreeMap::new();
            for a in desk.relations(i, j) {
                let f = singleton_embed_task(&a);
                let objs = [&desk.sets[i], &desk.sets[j]];
                let clash = seen.get(&key(&f)).cloned();
                if !t.holds(clash.is_none(), &objs, &[&a], || {
                    (a.clone(), clash.unwrap())
                }) {
                    return Ok(t.report());
                }
                seen.insert(key(&f), a);
            }
        }
    }
    Ok(t.report())
}

/// Converting a coarse task to a task between antichains and back is
/// lossless.
pub fn task_round_trip(budget: &EnumerationBudget) -> Result<LawReport> {
    let mut desk = Desk::new(budget)?;
    let mut t = Tally::new("coarse_task_round_trip");
    for i in desk.indices() {
        for j in desk.indices() {
            if !desk.fits(&[(i, j)]) {
                continue;
            }
            for a in desk.relations(i, j) {
                for xbar in &desk.antichains[i] {
                    for ybar in &desk.antichains[j] {
                        let c = coarse_grain(&a, xbar, ybar)?;
                        let back = CoarseTask::from_task(&c.to_task(), xbar, ybar)?;
                        let objs = [&desk.sets[i], &desk.sets[j]];
                        if !t.holds(back == c, &objs, &[&a], || (c.to_task(), back.to_task())) {
                            return Ok(t.report());
                        }
                    }
                }
            }
        }
    }
    Ok(t.report())
}

fn state(s: &Attribute) -> Task {
    s.as_state()
}

/// Checks of the lax monoidal structure of the embedding back into
/// relations: the structure morphisms are tasks, and
/// `S x T ⊆ (A x B)^T ; (U x V)` iff `S ⊆ A^T ; U` and `T ⊆ B^T ; V`.
/// The converse direction needs `S` and `T` nonempty.
pub fn lax_structure_check(budget: &EnumerationBudget) -> Result<Vec<LawReport>> {
    let mut desk = Desk::new(budget)?;

    let mut structure = Tally::new("lax_structure_is_function");
    for i in desk.indices() {
        for j in desk.indices() {
            for xbar in &desk.antichains[i] {
                for ybar in &desk.antichains[j] {
                    let product = boxtimes_objects(xbar, ybar);
                    let pairs: Vec<(usize, usize)> = xbar
                        .attributes()
                        .iter()
                        .enumerate()
                        .flat_map(|(a, s)| {
                            let product = &product;
                            ybar.attributes().iter().enumerate().map(move |(b, t)| {
                                (
                                    a * ybar.len() + b,
                                    product.position(&s.product(t)).expect("in the boxtimes"),
                                )
                            })
                        })
                        .collect();
                    let m = Task::from_pairs(
                        xbar.as_object().tensor(&ybar.as_object()),
                        product.as_object(),
                        pairs,
                    )?;
                    let objs = [&desk.sets[i], &desk.sets[j]];
                    if !structure.holds(relcore::is_function(&m), &objs, &[], || {
                        (m.clone(), Task::empty(m.dom().clone(), m.cod().clone()))
                    }) {
                        break;
                    }
                }
            }
        }
    }

    let mut unit = Tally::new("lax_unit_is_function");
    let one = singleton_embed_object(&FinObject::unit());
    let u = Task::from_pairs(one.as_object(), FinObject::unit(), [(0, 0)])?;
    unit.holds(
        relcore::is_function(&u) && relcore::is_function(&relcore::transpose(&u)),
        &[&FinObject::unit()],
        &[],
        || (u.clone(), relcore::identity(&FinObject::unit())),
    );

    let mut forward = Tally::new("lax_forward");
    let mut reverse = Tally::new("lax_reverse");
    let n = desk.sets.len();
    'tuples: for code in 0..n.pow(4) {
        let (x, y, z, w) = (
            code / (n * n * n),
            code / (n * n) % n,
            code / n % n,
            code % n,
        );
        if !desk.fits(&[(x, y), (z, w)]) {
            continue;
        }
        let (ra, rb) = (desk.relations(x, y), desk.relations(z, w));
        let objs = [&desk.sets[x], &desk.sets[y], &desk.sets[z], &desk.sets[w]];
        let (ss, us, ts, vs) = (
            desk.attributes(x),
            desk.attributes(y),
            desk.attributes(z),
            desk.attributes(w),
        );
        for a in &ra {
            let pre_a: Vec<Attribute> = us.iter().map(|u| u.preimage(a)).collect::<Result<_>>()?;
            for b in &rb {
                let ab = relcore::par_compose(a, b);
                let pre_b: Vec<Attribute> =
                    vs.iter().map(|v| v.preimage(b)).collect::<Result<_>>()?;
                for (ui, u) in us.iter().enumerate() {
                    for (vi, v) in vs.iter().enumerate() {
                        let joint = u.product(v).preimage(&ab)?;
                        for s in &ss {
                            for t in &ts {
                                let separate = s.is_subset(&pre_a[ui]) && t.is_subset(&pre_b[vi]);
                                let together = s.product(t).is_subset(&joint);
                                let sides = || (state(&s.product(t)), state(&joint));
                                if !forward.holds(!separate || together, &objs, &[a, b], sides) {
                                    break 'tuples;
                                }
                                if s.is_empty() || t.is_empty() {
                                    continue;
                                }
                                let sides = || (state(&s.product(t)), state(&joint));
                                if !reverse.holds(!together || separate, &objs, &[a, b], sides) {
                                    break 'tuples;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(alloc::vec![
        structure.report(),
        unit.report(),
        forward.report(),
        reverse.report()
    ])
}

/// Every coarse suite, in a fixed order.
pub fn check_coarse_laws(budget: &EnumerationBudget) -> Result<Vec<LawReport>> {
    let mut out = alloc::vec![
        well_definedness(budget)?,
        restriction_preserves_coarse(budget)?,
        identity_antichain(budget)?,
        swap_coherence(budget)?,
        seq_containment(budget)?,
        par_agreement(budget)?,
        singleton_seq(budget)?,
        singleton_par(budget)?,
        singleton_structure(budget)?,
        singleton_faithful(budget)?,
        task_round_trip(budget)?,
    ];
    out.extend(lax_structure_check(budget)?);
    Ok(out)
}

/// Names of [`check_coarse_laws`] reports, in order.
pub fn coarse_law_names() -> Vec<String> {
    [
        "coarse_well_definedness",
        "coarse_restriction_invariance",
        "coarse_identity_iff_antichain",
        "coarse_swap_coherence",
        "coarse_seq_containment",
        "coarse_par_agreement",
        "singleton_preserves_seq",
        "singleton_preserves_par",
        "singleton_preserves_structure",
        "singleton_faithful",
        "coarse_task_round_trip",
        "lax_structure_is_function",
        "lax_unit_is_function",
        "lax_forward",
        "lax_reverse",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect()
}
