use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::bits::{BitMatrix, BitSet};
use crate::error::{Error, Result};
use crate::relcore::object::FinObject;
use crate::relcore::task::Task;

/// A subset of an object's elements. Interchangeable with a state `I -> X`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Attribute {
    carrier: FinObject,
    members: BitSet,
}

impl Attribute {
    pub fn new<I: IntoIterator<Item = usize>>(carrier: FinObject, members: I) -> Result<Attribute> {
        let mut set = BitSet::empty(carrier.size());
        for m in members {
            if m >= carrier.size() {
                return Err(Error::UnknownElement {
                    object: carrier.to_string(),
                    element: alloc::format!("#{m}"),
                });
            }
            set.insert(m);
        }
        Ok(Attribute {
            carrier,
            members: set,
        })
    }

    pub fn from_labels<S: AsRef<str>>(carrier: FinObject, members: &[&[S]]) -> Result<Attribute> {
        let idx = members
            .iter()
            .map(|l| carrier.index_of_labels(l))
            .collect::<Result<Vec<_>>>()?;
        Attribute::new(carrier, idx)
    }

    pub(crate) fn from_bits(carrier: FinObject, members: BitSet) -> Attribute {
        debug_assert_eq!(carrier.size(), members.len());
        Attribute { carrier, members }
    }

    pub fn empty(carrier: FinObject) -> Attribute {
        let members = BitSet::empty(carrier.size());
        Attribute { carrier, members }
    }

    /// The whole carrier: `eta_X`, the transpose of discarding.
    pub fn trivial(carrier: FinObject) -> Attribute {
        let members = BitSet::full(carrier.size());
        Attribute { carrier, members }
    }

    pub fn singleton(carrier: FinObject, x: usize) -> Attribute {
        Attribute::new(carrier, [x]).expect("singleton index in range")
    }

    pub fn carrier(&self) -> &FinObject {
        &self.carrier
    }

    pub fn bits(&self) -> &BitSet {
        &self.members
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.contains(x)
    }

    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter()
    }

    pub fn len(&self) -> usize {
        self.members.count()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.len() == self.carrier.size()
    }

    /// Inclusion; attributes on different carriers are never included.
    pub fn is_subset(&self, other: &Attribute) -> bool {
        self.carrier == other.carrier && self.members.is_subset(&other.members)
    }

    /// `S x T` on `X * Y`.
    pub fn product(&self, other: &Attribute) -> Attribute {
        let carrier = self.carrier.tensor(&other.carrier);
        let mut members = BitSet::empty(carrier.size());
        for s in self.members() {
            for t in other.members() {
                members.insert(self.carrier.pair_index(s, &other.carrier, t));
            }
        }
        Attribute { carrier, members }
    }

    /// `{ * |-> x | x in S }` as a task `I -> X`.
    pub fn as_state(&self) -> Task {
        let mut rel = BitMatrix::zeros(1, self.carrier.size());
        rel.or_row(0, &self.members);
        Task::from_matrix(FinObject::unit(), self.carrier.clone(), rel)
    }

    /// `{ x |-> * | x in S }` as a task `X -> I`.
    pub fn as_test(&self) -> Task {
        let mut rel = BitMatrix::zeros(self.carrier.size(), 1);
        for x in self.members() {
            rel.set(x, 0);
        }
        Task::from_matrix(self.carrier.clone(), FinObject::unit(), rel)
    }

    /// Inverse of [`Attribute::as_state`].
    pub fn from_state(state: &Task) -> Result<Attribute> {
        if !state.dom().is_unit() {
            return Err(Error::BoundaryMismatch {
                left: state.dom().to_string(),
                right: "I".into(),
            });
        }
        Ok(Attribute {
            carrier: state.cod().clone(),
            members: state.matrix().row_set(0),
        })
    }

    /// Preimage `A^T ; S` of this attribute under `a`: inputs with some output in `S`.
    pub fn preimage(&self, a: &Task) -> Result<Attribute> {
        if a.cod() != &self.carrier {
            return Err(Error::CarrierMismatch {
                expected: a.cod().to_string(),
                found: self.carrier.to_string(),
            });
        }
        let mut members = BitSet::empty(a.dom().size());
        for x in 0..a.dom().size() {
            if a.matrix().row_meets(x, &self.members) {
                members.insert(x);
            }
        }
        Ok(Attribute {
            carrier: a.dom().clone(),
            members,
        })
    }

    /// Member labels in set syntax, `{a, (b,c)}`.
    pub fn render(&self) -> String {
        let parts: Vec<String> = self
            .members()
            .map(|m| self.carrier.render_elem(m))
            .collect();
        alloc::format!("{{{}}}", parts.join(", "))
    }
}

impl fmt::Display for Attribute {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for Attribute {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Attribute({} on {})", self.render(), self.carrier)
    }
}

/// Trivial attribute `eta_X`.
pub fn trivial_attribute(x: &FinObject) -> Attribute {
    Attribute::trivial(x.clone())
}

pub fn attribute_as_state(s: &Attribute) -> Task {
    s.as_state()
}

pub fn test_of(s: &Attribute) -> Task {
    s.as_test()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relcore::object::Atom;
    use crate::relcore::task::{discard, transpose};

    fn x() -> FinObject {
        FinObject::atom(&Atom::new("X", ["a", "b"]).unwrap())
    }

    #[test]
    fn state_and_test() {
        let s = Attribute::from_labels(x(), &[&["a"]]).unwrap();
        assert_eq!(s.as_state().to_string(), "{ * |-> a }");
        assert_eq!(s.as_test(), transpose(&s.as_state()));
        assert_eq!(Attribute::from_state(&s.as_state()).unwrap(), s);
        let full = trivial_attribute(&x());
        assert_eq!(full.as_state(), transpose(&discard(&x())));
        assert_eq!(test_of(&full).len(), 2);
        assert_eq!(test_of(&s).len(), 1);
    }

    #[test]
    fn product_and_preimage() {
        let s = Attribute::from_labels(x(), &[&["a"]]).unwrap();
        let t = trivial_attribute(&x());
        let st = s.product(&t);
        assert_eq!(st.render(), "{(a,a), (a,b)}");
        let d = discard(&x());
        let pre = trivial_attribute(&FinObject::unit()).preimage(&d).unwrap();
        assert!(pre.is_trivial());
        assert!(Attribute::empty(FinObject::unit())
            .preimage(&d)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn unit_carrier_has_two_attributes() {
        let u = FinObject::unit();
        assert_eq!(Attribute::trivial(u.clone()).render(), "{*}");
        assert_ne!(Attribute::trivial(u.clone()), Attribute::empty(u));
    }
}
