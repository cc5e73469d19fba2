use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::bits::BitMatrix;
use crate::error::{Error, Result};
use crate::relcore::object::FinObject;

/// A relation between the elements of two objects.
///
/// Maplets are kept in a dense matrix indexed by element index, so iteration
/// order is the canonical lexicographic order and equality is structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Task {
    dom: FinObject,
    cod: FinObject,
    rel: BitMatrix,
}

impl Task {
    pub fn empty(dom: FinObject, cod: FinObject) -> Task {
        let rel = BitMatrix::zeros(dom.size(), cod.size());
        Task { dom, cod, rel }
    }

    pub fn from_pairs<I>(dom: FinObject, cod: FinObject, pairs: I) -> Result<Task>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut t = Task::empty(dom, cod);
        for (x, y) in pairs {
            if x >= t.dom.size() {
                return Err(Error::UnknownElement {
                    object: t.dom.to_string(),
                    element: format_index(x),
                });
            }
            if y >= t.cod.size() {
                return Err(Error::UnknownElement {
                    object: t.cod.to_string(),
                    element: format_index(y),
                });
            }
            t.rel.set(x, y);
        }
        Ok(t)
    }

    /// Builds a task from label tuples, e.g. `(["a"], ["b", "c"])`.
    pub fn from_labels<'a, A, B>(dom: FinObject, cod: FinObject, maplets: &[(A, B)]) -> Result<Task>
    where
        A: AsRef<[&'a str]>,
        B: AsRef<[&'a str]>,
    {
        let mut pairs = Vec::with_capacity(maplets.len());
        for (x, y) in maplets {
            pairs.push((
                dom.index_of_labels(x.as_ref())?,
                cod.index_of_labels(y.as_ref())?,
            ));
        }
        Task::from_pairs(dom, cod, pairs)
    }

    pub(crate) fn from_matrix(dom: FinObject, cod: FinObject, rel: BitMatrix) -> Task {
        debug_assert_eq!(rel.rows(), dom.size());
        debug_assert_eq!(rel.cols(), cod.size());
        Task { dom, cod, rel }
    }

    pub fn dom(&self) -> &FinObject {
        &self.dom
    }

    pub fn cod(&self) -> &FinObject {
        &self.cod
    }

    pub fn matrix(&self) -> &BitMatrix {
        &self.rel
    }

    pub fn contains(&self, x: usize, y: usize) -> bool {
        self.rel.get(x, y)
    }

    /// Maplets as `(dom index, cod index)`, in canonical order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rel.iter()
    }

    pub fn len(&self) -> usize {
        self.rel.count()
    }

    pub fn is_empty(&self) -> bool {
        self.rel.is_empty()
    }

    /// Outputs reachable from input `x`.
    pub fn image_of(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        self.rel.row(x)
    }

    pub fn same_boundary(&self, other: &Task) -> bool {
        self.dom == other.dom && self.cod == other.cod
    }

    pub fn is_subset(&self, other: &Task) -> bool {
        self.same_boundary(other) && self.rel.is_subset(&other.rel)
    }

    /// Copy of `self` with one maplet removed.
    pub fn without(&self, x: usize, y: usize) -> Task {
        let mut t = self.clone();
        t.rel.clear(x, y);
        t
    }

    pub fn with(&self, x: usize, y: usize) -> Task {
        let mut t = self.clone();
        t.rel.set(x, y);
        t
    }

    /// `x |-> y` with elements rendered as labels.
    pub fn render_maplet(&self, x: usize, y: usize) -> String {
        alloc::format!(
            "{} |-> {}",
            self.dom.render_elem(x),
            self.cod.render_elem(y)
        )
    }

    /// Canonical declaration text: `rel NAME : X -> Y = { x |-> y, ... }`.
    pub fn to_text(&self, name: &str) -> String {
        alloc::format!("rel {name} : {} -> {} = {self}", self.dom, self.cod)
    }
}

fn format_index(i: usize) -> String {
    alloc::format!("#{i}")
}

impl fmt::Display for Task {
    /// The maplet set, `{ a |-> b, (a,c) |-> * }`, or `{}` when empty.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("{}");
        }
        f.write_str("{ ")?;
        for (i, (x, y)) in self.pairs().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str(&self.render_maplet(x, y))?;
        }
        f.write_str(" }")
    }
}

impl fmt::Debug for Task {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Task({} -> {} = {self})", self.dom, self.cod)
    }
}

fn mismatch(left: &FinObject, right: &FinObject) -> Error {
    Error::BoundaryMismatch {
        left: left.to_string(),
        right: right.to_string(),
    }
}

/// `b` after `a`: `{ x |-> z | exists y. x |-> y in a and y |-> z in b }`.
pub fn seq_compose(a: &Task, b: &Task) -> Result<Task> {
    if a.cod != b.dom {
        return Err(mismatch(&a.cod, &b.dom));
    }
    Ok(Task::from_matrix(
        a.dom.clone(),
        b.cod.clone(),
        a.rel.compose(&b.rel),
    ))
}

/// `a` and `b` side by side on `X * Z -> Y * W`.
pub fn par_compose(a: &Task, b: &Task) -> Task {
    Task::from_matrix(
        a.dom.tensor(&b.dom),
        a.cod.tensor(&b.cod),
        a.rel.kron(&b.rel),
    )
}

pub fn transpose(a: &Task) -> Task {
    Task::from_matrix(a.cod.clone(), a.dom.clone(), a.rel.transpose())
}

pub fn identity(x: &FinObject) -> Task {
    let mut rel = BitMatrix::zeros(x.size(), x.size());
    for i in 0..x.size() {
        rel.set(i, i);
    }
    Task::from_matrix(x.clone(), x.clone(), rel)
}

/// The symmetry `(x, y) |-> (y, x)` on `X * Y -> Y * X`.
pub fn swap(x: &FinObject, y: &FinObject) -> Task {
    let dom = x.tensor(y);
    let cod = y.tensor(x);
    let mut rel = BitMatrix::zeros(dom.size(), cod.size());
    for i in 0..x.size() {
        for j in 0..y.size() {
            rel.set(x.pair_index(i, y, j), y.pair_index(j, x, i));
        }
    }
    Task::from_matrix(dom, cod, rel)
}

/// `x |-> (x, x)`.
pub fn copy(x: &FinObject) -> Task {
    let cod = x.tensor(x);
    let mut rel = BitMatrix::zeros(x.size(), cod.size());
    for i in 0..x.size() {
        rel.set(i, x.pair_index(i, x, i));
    }
    Task::from_matrix(x.clone(), cod, rel)
}

/// `x |-> *`.
pub fn discard(x: &FinObject) -> Task {
    let mut rel = BitMatrix::zeros(x.size(), 1);
    for i in 0..x.size() {
        rel.set(i, 0);
    }
    Task::from_matrix(x.clone(), FinObject::unit(), rel)
}

/// `(x, x) |-> x`, undefined on unequal pairs.
pub fn match_map(x: &FinObject) -> Task {
    transpose(&copy(x))
}

/// Total and single-valued: every input has exactly one output.
pub fn is_function(a: &Task) -> bool {
    (0..a.dom.size()).all(|x| a.rel.row_count(x) == 1)
}
