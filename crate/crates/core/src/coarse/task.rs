use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::bits::BitMatrix;
use crate::coarse::antichain::{boxtimes_objects, singleton_embed_object, Antichain};
use crate::error::{Error, Result};
use crate::relcore::{self, Attribute, FinObject, Task};

/// A relation between two antichains, optionally remembering the base task
/// it was coarse-grained from.
#[derive(Clone)]
pub struct CoarseTask {
    dom: Antichain,
    cod: Antichain,
    rel: BitMatrix,
    provenance: Option<Task>,
}

/// Equality ignores provenance.
impl PartialEq for CoarseTask {
    fn eq(&self, other: &Self) -> bool {
        self.dom == other.dom && self.cod == other.cod && self.rel == other.rel
    }
}

impl Eq for CoarseTask {}

fn check_carrier(expected: &FinObject, found: &FinObject) -> Result<()> {
    if expected != found {
        return Err(Error::CarrierMismatch {
            expected: expected.to_string(),
            found: found.to_string(),
        });
    }
    Ok(())
}

/// `S |-> T` iff `S` is inside `A^T ; T` over arbitrary families.
pub(crate) fn coarse_matrix(a: &Task, xs: &[Attribute], ys: &[Attribute]) -> Result<BitMatrix> {
    let mut rel = BitMatrix::zeros(xs.len(), ys.len());
    for (j, t) in ys.iter().enumerate() {
        let pre = t.preimage(a)?;
        for (i, s) in xs.iter().enumerate() {
            if s.is_subset(&pre) {
                rel.set(i, j);
            }
        }
    }
    Ok(rel)
}

/// The coarse-grained task: `S |-> T` whenever every state with attribute
/// `S` can reach some state with attribute `T`.
pub fn coarse_grain(a: &Task, xbar: &Antichain, ybar: &Antichain) -> Result<CoarseTask> {
    check_carrier(a.dom(), xbar.base())?;
    check_carrier(a.cod(), ybar.base())?;
    Ok(CoarseTask {
        rel: coarse_matrix(a, xbar.attributes(), ybar.attributes())?,
        dom: xbar.clone(),
        cod: ybar.clone(),
        provenance: Some(a.clone()),
    })
}

impl CoarseTask {
    pub fn from_pairs(
        dom: Antichain,
        cod: Antichain,
        pairs: impl IntoIterator<Item = (Attribute, Attribute)>,
    ) -> Result<CoarseTask> {
        let mut rel = BitMatrix::zeros(dom.len(), cod.len());
        for (s, t) in pairs {
            let missing = |bar: &Antichain, a: &Attribute| Error::UnknownElement {
                object: bar.to_string(),
                element: a.render(),
            };
            let i = dom.position(&s).ok_or_else(|| missing(&dom, &s))?;
            let j = cod.position(&t).ok_or_else(|| missing(&cod, &t))?;
            rel.set(i, j);
        }
        Ok(CoarseTask {
            dom,
            cod,
            rel,
            provenance: None,
        })
    }

    pub fn identity(xbar: &Antichain) -> CoarseTask {
        let mut rel = BitMatrix::zeros(xbar.len(), xbar.len());
        for i in 0..xbar.len() {
            rel.set(i, i);
        }
        CoarseTask {
            dom: xbar.clone(),
            cod: xbar.clone(),
            rel,
            provenance: Some(relcore::identity(xbar.base())),
        }
    }

    pub fn dom(&self) -> &Antichain {
        &self.dom
    }

    pub fn cod(&self) -> &Antichain {
        &self.cod
    }

    pub fn provenance(&self) -> Option<&Task> {
        self.provenance.as_ref()
    }

    /// Maplets as index pairs into the two antichains, row-major.
    pub fn index_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rel.iter()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&Attribute, &Attribute)> + '_ {
        self.rel
            .iter()
            .map(|(i, j)| (&self.dom.attributes()[i], &self.cod.attributes()[j]))
    }

    pub fn contains(&self, s: &Attribute, t: &Attribute) -> bool {
        match (self.dom.position(s), self.cod.position(t)) {
            (Some(i), Some(j)) => self.rel.get(i, j),
            _ => false,
        }
    }

    pub fn len(&self) -> usize {
        self.rel.count()
    }

    pub fn is_empty(&self) -> bool {
        self.rel.is_empty()
    }

    /// Same maplets, compared by rendered attributes rather than by base.
    pub fn rendered_pairs(&self) -> Vec<(String, String)> {
        self.pairs()
            .map(|(s, t)| (s.render(), t.render()))
            .collect()
    }

    /// Whether every maplet of `self` is in `other` (same antichains).
    pub fn is_subset(&self, other: &CoarseTask) -> bool {
        self.dom == other.dom && self.cod == other.cod && self.rel.is_subset(&other.rel)
    }

    /// The same relation as a task between the antichains viewed as sets.
    pub fn to_task(&self) -> Task {
        Task::from_pairs(self.dom.as_object(), self.cod.as_object(), self.rel.iter())
            .expect("indices are within the antichains")
    }

    /// Inverse of [`CoarseTask::to_task`].
    pub fn from_task(task: &Task, dom: &Antichain, cod: &Antichain) -> Result<CoarseTask> {
        for (found, bar) in [(task.dom(), dom), (task.cod(), cod)] {
            let expected = bar.as_object();
            if found != &expected {
                return Err(Error::BoundaryMismatch {
                    left: found.to_string(),
                    right: expected.to_string(),
                });
            }
        }
        let pairs: Vec<_> = task.pairs().collect();
        let mut rel = BitMatrix::zeros(dom.len(), cod.len());
        for (i, j) in pairs {
            rel.set(i, j);
        }
        Ok(CoarseTask {
            dom: dom.clone(),
            cod: cod.clone(),
            rel,
            provenance: None,
        })
    }
}

impl fmt::Display for CoarseTask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .pairs()
            .map(|(s, t)| alloc::format!("{} |-> {}", s.render(), t.render()))
            .collect();
        if parts.is_empty() {
            f.write_str("{}")
        } else {
            write!(f, "{{ {} }}", parts.join(", "))
        }
    }
}

impl fmt::Debug for CoarseTask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CoarseTask({} -> {}: {self})", self.dom, self.cod)
    }
}

/// `f` then `g`, composing maplets relationally. The result carries no
/// provenance: coarse-graining the composite base task can add maplets.
pub fn coarse_seq(f: &CoarseTask, g: &CoarseTask) -> Result<CoarseTask> {
    if f.cod != g.dom {
        return Err(Error::BoundaryMismatch {
            left: f.cod.to_string(),
            right: g.dom.to_string(),
        });
    }
    Ok(CoarseTask {
        dom: f.dom.clone(),
        cod: g.cod.clone(),
        rel: f.rel.compose(&g.rel),
        provenance: None,
    })
}

/// `{ S x T |-> U x V | S |-> U in f, T |-> V in g }` between the `⊠`
/// products. Provenance is `A x B` when both are known and the maplets
/// agree with coarse-graining it, which can fail only for the empty
/// attribute.
pub fn coarse_par(f: &CoarseTask, g: &CoarseTask) -> Result<CoarseTask> {
    let dom = boxtimes_objects(&f.dom, &g.dom);
    let cod = boxtimes_objects(&f.cod, &g.cod);
    let mut rel = BitMatrix::zeros(dom.len(), cod.len());
    for (s, u) in f.pairs() {
        for (t, v) in g.pairs() {
            let i = dom
                .position(&s.product(t))
                .expect("product is in the boxtimes");
            let j = cod
                .position(&u.product(v))
                .expect("product is in the boxtimes");
            rel.set(i, j);
        }
    }
    let provenance = match (&f.provenance, &g.provenance) {
        (Some(a), Some(b)) => {
            let ab = relcore::par_compose(a, b);
            let agrees = coarse_matrix(&ab, dom.attributes(), cod.attributes())? == rel;
            agrees.then_some(ab)
        }
        _ => None,
    };
    Ok(CoarseTask {
        dom,
        cod,
        rel,
        provenance,
    })
}

/// `S x T |-> T x S` from `Xbar ⊠ Ybar` to `Ybar ⊠ Xbar`.
pub fn coarse_swap(xbar: &Antichain, ybar: &Antichain) -> CoarseTask {
    let dom = boxtimes_objects(xbar, ybar);
    let cod = boxtimes_objects(ybar, xbar);
    let mut rel = BitMatrix::zeros(dom.len(), cod.len());
    for s in xbar.attributes() {
        for t in ybar.attributes() {
            let i = dom.position(&s.product(t)).expect("in the boxtimes");
            let j = cod.position(&t.product(s)).expect("in the boxtimes");
            rel.set(i, j);
        }
    }
    CoarseTask {
        dom,
        cod,
        rel,
        provenance: Some(relcore::swap(xbar.base(), ybar.base())),
    }
}

/// `pi_Y' ; A ; pi_X'` read as a task `X' -> Y'` between the supports of
/// the two antichains.
pub fn restrict_to_support(a: &Task, xbar: &Antichain, ybar: &Antichain) -> Result<Task> {
    check_carrier(a.dom(), xbar.base())?;
    check_carrier(a.cod(), ybar.base())?;
    let (xs, xe) = xbar.support_object();
    let (ys, ye) = ybar.support_object();
    let mut pairs = Vec::new();
    for (i, &x) in xe.iter().enumerate() {
        for (j, &y) in ye.iter().enumerate() {
            if a.contains(x, y) {
                pairs.push((i, j));
            }
        }
    }
    Task::from_pairs(xs, ys, pairs)
}

/// `{x} |-> {y}` for each maplet `x |-> y`.
pub fn singleton_embed_task(a: &Task) -> CoarseTask {
    let dom = singleton_embed_object(a.dom());
    let cod = singleton_embed_object(a.cod());
    // singletons are ordered by their element
    let mut rel = BitMatrix::zeros(dom.len(), cod.len());
    for (x, y) in a.pairs() {
        rel.set(x, y);
    }
    CoarseTask {
        dom,
        cod,
        rel,
        provenance: Some(a.clone()),
    }
}

/// Checks that coarse-graining the identity over `family` gives the identity
/// exactly when `family` is an antichain, and returns that shared answer.
/// Families are taken as sets; duplicates are ignored.
pub fn identity_antichain_biconditional(base: &FinObject, family: &[Attribute]) -> Result<bool> {
    for s in family {
        check_carrier(base, s.carrier())?;
    }
    let family = crate::coarse::antichain::canonical_family(family.to_vec());
    let rel = coarse_matrix(&relcore::identity(base), &family, &family)?;
    let n = family.len();
    let is_identity = (0..n).all(|i| (0..n).all(|j| rel.get(i, j) == (i == j)));
    let antichain = crate::coarse::is_antichain(&family)?;
    if is_identity != antichain {
        return Err(Error::Inconsistent(alloc::format!(
            "identity coarse-grains to {} the identity on a family that is {} an antichain",
            if is_identity { "exactly" } else { "not" },
            if antichain { "" } else { "not" }
        )));
    }
    Ok(antichain)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relcore::Atom;

    fn obj(name: &str, labels: &[&str]) -> FinObject {
        FinObject::atom(&Atom::new(name, labels.iter().copied()).unwrap())
    }

    fn attr(x: &FinObject, m: &[usize]) -> Attribute {
        Attribute::new(x.clone(), m.iter().copied()).unwrap()
    }

    #[test]
    fn merging_inputs() {
        let x = obj("X", &["a", "a2"]);
        let y = obj("Y", &["b", "c"]);
        let a =
            Task::from_labels(x.clone(), y.clone(), &[(["a"], ["b"]), (["a2"], ["b"])]).unwrap();
        let xbar = Antichain::new(x.clone(), [attr(&x, &[0, 1])]).unwrap();
        let ybar = Antichain::new(y.clone(), [attr(&y, &[0])]).unwrap();
        let c = coarse_grain(&a, &xbar, &ybar).unwrap();
        assert_eq!(c.to_string(), "{ {a, a2} |-> {b} }");
    }

    #[test]
    fn empty_attribute_maps_everywhere() {
        let x = obj("X", &["a", "b"]);
        let xbar = Antichain::new(x.clone(), [attr(&x, &[])]).unwrap();
        let ybar = singleton_embed_object(&x);
        let c = coarse_grain(&Task::empty(x.clone(), x.clone()), &xbar, &ybar).unwrap();
        assert_eq!(c.len(), 2);
    }

    #[test]
    fn identity_coarse_grains_to_identity() {
        let x = obj("X", &["a", "b", "c"]);
        let xbar = Antichain::new(x.clone(), [attr(&x, &[0, 1]), attr(&x, &[1, 2])]).unwrap();
        let c = coarse_grain(&relcore::identity(&x), &xbar, &xbar).unwrap();
        assert_eq!(c, CoarseTask::identity(&xbar));
        assert!(identity_antichain_biconditional(&x, xbar.attributes()).unwrap());
        assert!(
            !identity_antichain_biconditional(&x, &[attr(&x, &[0]), attr(&x, &[0, 1])]).unwrap()
        );
    }

    #[test]
    fn singleton_embedding() {
        let x = obj("X", &["a", "b"]);
        assert_eq!(singleton_embed_object(&x).render(), "{{a}, {b}}");
        let a = Task::from_labels(x.clone(), x.clone(), &[(["a"], ["b"])]).unwrap();
        let f = singleton_embed_task(&a);
        let bar = singleton_embed_object(&x);
        assert_eq!(f, coarse_grain(&a, &bar, &bar).unwrap());
        assert_eq!(
            singleton_embed_task(&relcore::identity(&x)),
            CoarseTask::identity(&bar)
        );
    }

    #[test]
    fn restriction_drops_outside_maplets() {
        let x = obj("X", &["a", "b", "c"]);
        let a = Task::from_pairs(x.clone(), x.clone(), [(0, 0), (1, 2), (2, 1)]).unwrap();
        let xbar = Antichain::new(x.clone(), [attr(&x, &[0]), attr(&x, &[1])]).unwrap();
        let r = restrict_to_support(&a, &xbar, &xbar).unwrap();
        assert_eq!(r.len(), 1);
        let (xs, ys) = (xbar.on_support(), xbar.on_support());
        assert_eq!(
            coarse_grain(&r, &xs, &ys).unwrap().rendered_pairs(),
            coarse_grain(&a, &xbar, &xbar).unwrap().rendered_pairs()
        );
        let full = singleton_embed_object(&x);
        assert_eq!(restrict_to_support(&a, &full, &full).unwrap(), a);
        let none = Antichain::new(x.clone(), []).unwrap();
        assert!(restrict_to_support(&a, &none, &none).unwrap().is_empty());
    }

    #[test]
    fn round_trip_through_task() {
        let x = obj("X", &["a", "b", "c"]);
        let xbar = Antichain::new(x.clone(), [attr(&x, &[0, 1]), attr(&x, &[1, 2])]).unwrap();
        let ybar = singleton_embed_object(&x);
        let a = Task::from_pairs(x.clone(), x.clone(), [(0, 0), (1, 2), (2, 1)]).unwrap();
        let c = coarse_grain(&a, &xbar, &ybar).unwrap();
        let t = c.to_task();
        assert_eq!(CoarseTask::from_task(&t, &xbar, &ybar).unwrap(), c);
        assert!(CoarseTask::from_task(&t, &ybar, &xbar).is_err());
    }

    #[test]
    fn seq_is_contained_in_coarse_of_composite() {
        let x = obj("X", &["a", "b"]);
        let bar = Antichain::new(x.clone(), [attr(&x, &[0, 1])]).unwrap();
        let mid = singleton_embed_object(&x);
        // no single singleton is reachable from all of {a, b}, yet the
        // composite reaches {a, b}
        let a = relcore::identity(&x);
        let b = relcore::identity(&x);
        let composed = coarse_seq(
            &coarse_grain(&a, &bar, &mid).unwrap(),
            &coarse_grain(&b, &mid, &bar).unwrap(),
        )
        .unwrap();
        let direct = coarse_grain(&relcore::seq_compose(&a, &b).unwrap(), &bar, &bar).unwrap();
        assert!(composed.is_subset(&direct));
        assert!(composed.is_empty() && !direct.is_empty());
    }

    #[test]
    fn par_and_swap() {
        let x = obj("X", &["a", "b"]);
        let y = obj("Y", &["c", "d", "e"]);
        let xbar = singleton_embed_object(&x);
        let ybar = Antichain::new(y.clone(), [attr(&y, &[0, 1]), attr(&y, &[2])]).unwrap();
        let sw = coarse_grain(
            &relcore::swap(&x, &y),
            &boxtimes_objects(&xbar, &ybar),
            &boxtimes_objects(&ybar, &xbar),
        )
        .unwrap();
        assert_eq!(sw, coarse_swap(&xbar, &ybar));
        let a = Task::from_pairs(x.clone(), x.clone(), [(0, 1), (1, 1)]).unwrap();
        let b = relcore::identity(&y);
        let p = coarse_par(
            &coarse_grain(&a, &xbar, &xbar).unwrap(),
            &coarse_grain(&b, &ybar, &ybar).unwrap(),
        )
        .unwrap();
        assert!(p.provenance().is_some());
        let direct = coarse_grain(&relcore::par_compose(&a, &b), p.dom(), p.cod()).unwrap();
        assert_eq!(p, direct);
    }
}
