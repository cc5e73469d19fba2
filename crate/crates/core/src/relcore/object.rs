use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};

/// A named generating set with distinct element labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom {
    name: String,
    elements: Vec<String>,
}

impl Atom {
    pub fn new<N, I, L>(name: N, elements: I) -> Result<Arc<Atom>>
    where
        N: Into<String>,
        I: IntoIterator<Item = L>,
        L: Into<String>,
    {
        let name = name.into();
        if name.is_empty() {
            return Err(Error::InvalidAtom("empty atom name".into()));
        }
        let elements: Vec<String> = elements.into_iter().map(Into::into).collect();
        for (i, e) in elements.iter().enumerate() {
            if e.is_empty() {
                return Err(Error::InvalidAtom(format!("{name}: empty element label")));
            }
            if elements[..i].contains(e) {
                return Err(Error::InvalidAtom(format!("{name}: duplicate label {e}")));
            }
        }
        Ok(Arc::new(Atom { name, elements }))
    }

    /// An atom with labels `0..size`.
    pub fn numbered(name: impl Into<String>, size: usize) -> Arc<Atom> {
        Atom::new(name, (0..size).map(|i| i.to_string())).expect("numbered labels are distinct")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == label)
    }
}

/// A word of atoms. Concatenation is the tensor and the empty word is the
/// unit, so `X * I == X` holds structurally.
///
/// Elements are indexed in mixed radix with the first factor most
/// significant, so the index order is the lexicographic order of label
/// index tuples.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FinObject {
    factors: SmallVec<[Arc<Atom>; 6]>,
    size: usize,
}

impl FinObject {
    pub fn unit() -> Self {
        FinObject::from_factors(Vec::new())
    }

    pub fn atom(atom: &Arc<Atom>) -> Self {
        FinObject::from_factors(alloc::vec![atom.clone()])
    }

    pub fn from_factors(factors: Vec<Arc<Atom>>) -> Self {
        let size = factors.iter().map(|a| a.size()).product();
        FinObject {
            factors: SmallVec::from_vec(factors),
            size,
        }
    }

    pub fn tensor(&self, other: &FinObject) -> FinObject {
        if other.is_unit() {
            return self.clone();
        }
        if self.is_unit() {
            return other.clone();
        }
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        FinObject {
            factors,
            size: self.size * other.size,
        }
    }

    pub fn factors(&self) -> &[Arc<Atom>] {
        &self.factors
    }

    pub fn factor_count(&self) -> usize {
        self.factors.len()
    }

    pub fn is_unit(&self) -> bool {
        self.factors.is_empty()
    }

    /// Number of elements; 1 for the unit.
    pub fn size(&self) -> usize {
        self.size
    }

    /// If `self == prefix * suffix`, returns `prefix`.
    pub fn strip_suffix(&self, suffix: &FinObject) -> Option<FinObject> {
        let n = self.factors.len();
        let k = suffix.factors.len();
        if k > n || self.factors[n - k..] != suffix.factors[..] {
            return None;
        }
        Some(FinObject::from_factors(self.factors[..n - k].to_vec()))
    }

    /// Splits after the first `k` factors.
    pub fn split_at(&self, k: usize) -> Option<(FinObject, FinObject)> {
        (k <= self.factors.len()).then(|| {
            (
                FinObject::from_factors(self.factors[..k].to_vec()),
                FinObject::from_factors(self.factors[k..].to_vec()),
            )
        })
    }

    /// Per-factor label indices of element `index`.
    pub fn elem(&self, index: usize) -> Elem {
        debug_assert!(index < self.size);
        let mut rest = index;
        let mut idx = alloc::vec![0; self.factors.len()];
        for (slot, atom) in idx.iter_mut().zip(self.factors.iter()).rev() {
            *slot = rest % atom.size();
            rest /= atom.size();
        }
        Elem(idx)
    }

    pub fn index(&self, elem: &Elem) -> Option<usize> {
        if elem.0.len() != self.factors.len() {
            return None;
        }
        let mut acc = 0;
        for (&i, atom) in elem.0.iter().zip(self.factors.iter()) {
            if i >= atom.size() {
                return None;
            }
            acc = acc * atom.size() + i;
        }
        Some(acc)
    }

    /// Resolves a flat tuple of labels, one per factor.
    pub fn index_of_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<usize> {
        let bad = || Error::UnknownElement {
            object: self.to_string(),
            element: render_labels(labels.iter().map(|s| s.as_ref())),
        };
        if labels.len() != self.factors.len() {
            return Err(bad());
        }
        let mut idx = Vec::with_capacity(labels.len());
        for (l, atom) in labels.iter().zip(self.factors.iter()) {
            idx.push(atom.index_of(l.as_ref()).ok_or_else(bad)?);
        }
        Ok(self.index(&Elem(idx)).expect("indices checked"))
    }

    pub fn labels(&self, index: usize) -> Vec<&str> {
        self.elem(index)
            .0
            .iter()
            .zip(self.factors.iter())
            .map(|(&i, a)| a.elements()[i].as_str())
            .collect()
    }

    /// Element in maplet syntax: `a`, `(a,b)`, or `*` for the unit.
    pub fn render_elem(&self, index: usize) -> String {
        render_labels(self.labels(index).into_iter())
    }

    /// Index of the element `(x, z)` of `self * other`.
    pub fn pair_index(&self, x: usize, other: &FinObject, z: usize) -> usize {
        x * other.size + z
    }
}

pub(crate) fn render_labels<'a>(labels: impl ExactSizeIterator<Item = &'a str>) -> String {
    match labels.len() {
        0 => "*".into(),
        1 => labels.into_iter().next().unwrap().into(),
        _ => {
            let parts: Vec<&str> = labels.collect();
            format!("({})", parts.join(","))
        }
    }
}

impl fmt::Display for FinObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("I");
        }
        for (i, a) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str(" * ")?;
            }
            f.write_str(a.name())?;
        }
        Ok(())
    }
}

impl fmt::Debug for FinObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinObject({self})")
    }
}

/// An element of a [`FinObject`]: one label index per factor. Tuples are
/// always flat.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem(pub Vec<usize>);

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Arc<Atom> {
        Atom::new("X", ["a", "b"]).unwrap()
    }

    #[test]
    fn unit_is_strict() {
        let x = FinObject::atom(&ab());
        assert_eq!(x.tensor(&FinObject::unit()), x);
        assert_eq!(FinObject::unit().tensor(&x), x);
        assert_eq!(FinObject::unit().size(), 1);
        assert_eq!(FinObject::unit().render_elem(0), "*");
    }

    #[test]
    fn tensor_is_not_commutative() {
        let x = FinObject::atom(&ab());
        let y = FinObject::atom(&Atom::new("Y", ["c"]).unwrap());
        assert_ne!(x.tensor(&y), y.tensor(&x));
        assert_eq!(x.tensor(&y).size(), y.tensor(&x).size());
    }

    #[test]
    fn element_indexing_is_lexicographic() {
        let x = FinObject::atom(&ab());
        let y = FinObject::atom(&Atom::new("Y", ["p", "q", "r"]).unwrap());
        let xy = x.tensor(&y).tensor(&x);
        let rendered: Vec<_> = (0..xy.size()).map(|i| xy.render_elem(i)).collect();
        assert_eq!(rendered[0], "(a,p,a)");
        assert_eq!(rendered[1], "(a,p,b)");
        assert_eq!(rendered[2], "(a,q,a)");
        assert_eq!(rendered[11], "(b,r,b)");
        for i in 0..xy.size() {
            assert_eq!(xy.index(&xy.elem(i)), Some(i));
            assert_eq!(xy.index_of_labels(&xy.labels(i)).unwrap(), i);
        }
    }

    #[test]
    fn rejects_duplicate_labels() {
        assert!(Atom::new("X", ["a", "a"]).is_err());
        assert!(Atom::new("", ["a"]).is_err());
    }

    #[test]
    fn strip_suffix() {
        let x = FinObject::atom(&ab());
        let z = FinObject::atom(&Atom::new("Z", ["p"]).unwrap());
        assert_eq!(x.tensor(&z).strip_suffix(&z), Some(x.clone()));
        assert_eq!(x.tensor(&z).strip_suffix(&x), None);
        assert_eq!(x.strip_suffix(&FinObject::unit()), Some(x));
    }
}
