use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::relcore::{Atom, FinObject, Task};

/// A named substrate whose states are the elements of an atom.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubstrateAtom {
    name: String,
    states: Arc<Atom>,
}

impl SubstrateAtom {
    pub fn new(name: impl Into<String>, states: Arc<Atom>) -> Result<Arc<SubstrateAtom>> {
        let name = name.into();
        if name.is_empty() {
            return Err(Error::InvalidAtom("empty substrate name".into()));
        }
        if states.size() == 0 {
            return Err(Error::InvalidAtom(format!(
                "substrate {name} has no states"
            )));
        }
        Ok(Arc::new(SubstrateAtom { name, states }))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn state_set(&self) -> &Arc<Atom> {
        &self.states
    }
}

/// A word of substrate atoms; the empty word is the unit substrate.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Substrate {
    factors: Vec<Arc<SubstrateAtom>>,
}

impl Substrate {
    pub fn unit() -> Self {
        Substrate::default()
    }

    pub fn atom(a: &Arc<SubstrateAtom>) -> Self {
        Substrate {
            factors: alloc::vec![a.clone()],
        }
    }

    pub fn from_factors(factors: Vec<Arc<SubstrateAtom>>) -> Self {
        Substrate { factors }
    }

    pub fn factors(&self) -> &[Arc<SubstrateAtom>] {
        &self.factors
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_unit(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn tensor(&self, other: &Substrate) -> Substrate {
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        Substrate { factors }
    }

    /// The state set: the product of the factors' state sets.
    pub fn states(&self) -> FinObject {
        FinObject::from_factors(self.factors.iter().map(|a| a.states.clone()).collect())
    }

    pub fn state_count(&self) -> usize {
        self.factors.iter().map(|a| a.states.size()).product()
    }

    pub fn strip_suffix(&self, suffix: &Substrate) -> Option<Substrate> {
        let n = self.factors.len();
        let k = suffix.factors.len();
        (k <= n && self.factors[n - k..] == suffix.factors[..]).then(|| Substrate {
            factors: self.factors[..n - k].to_vec(),
        })
    }

    pub fn split_at(&self, k: usize) -> (Substrate, Substrate) {
        (
            Substrate::from_factors(self.factors[..k].to_vec()),
            Substrate::from_factors(self.factors[k..].to_vec()),
        )
    }
}

impl fmt::Display for Substrate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("I");
        }
        for (i, a) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str(" * ")?;
            }
            f.write_str(&a.name)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Substrate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Substrate({self})")
    }
}

/// How a process was assembled.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ProcessTerm {
    Generator(String),
    Id(Substrate),
    Swap(Substrate, Substrate),
    Seq(Box<ProcessTerm>, Box<ProcessTerm>),
    Par(Box<ProcessTerm>, Box<ProcessTerm>),
}

impl ProcessTerm {
    /// Atomic terms have depth 0; each composition adds one.
    pub fn depth(&self) -> usize {
        match self {
            ProcessTerm::Seq(a, b) | ProcessTerm::Par(a, b) => 1 + a.depth().max(b.depth()),
            _ => 0,
        }
    }

    pub fn node_count(&self) -> usize {
        match self {
            ProcessTerm::Seq(a, b) | ProcessTerm::Par(a, b) => 1 + a.node_count() + b.node_count(),
            _ => 1,
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, prec: u8) -> fmt::Result {
        match self {
            ProcessTerm::Generator(name) => f.write_str(name),
            ProcessTerm::Id(s) => write!(f, "id({s})"),
            ProcessTerm::Swap(a, b) => write!(f, "swap({a}, {b})"),
            ProcessTerm::Seq(a, b) => {
                if prec > 0 {
                    f.write_str("(")?;
                }
                a.fmt_prec(f, 0)?;
                f.write_str(" ; ")?;
                b.fmt_prec(f, 1)?;
                if prec > 0 {
                    f.write_str(")")?;
                }
                Ok(())
            }
            ProcessTerm::Par(a, b) => {
                if prec > 1 {
                    f.write_str("(")?;
                }
                a.fmt_prec(f, 1)?;
                f.write_str(" * ")?;
                b.fmt_prec(f, 2)?;
                if prec > 1 {
                    f.write_str(")")?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for ProcessTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

/// A deterministic total map between the state sets of two substrates.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Process {
    term: ProcessTerm,
    dom: Substrate,
    cod: Substrate,
    map: Arc<[usize]>,
}

impl Process {
    /// A named generator from its full state table, indexed by input state.
    pub fn new(
        name: impl Into<String>,
        dom: Substrate,
        cod: Substrate,
        map: Vec<usize>,
    ) -> Result<Process> {
        let name = name.into();
        let (n, m) = (dom.state_count(), cod.state_count());
        if map.len() != n {
            return Err(Error::NotAFunction {
                process: name,
                detail: format!("table has {} entries for {n} input states", map.len()),
            });
        }
        if let Some(&bad) = map.iter().find(|&&y| y >= m) {
            return Err(Error::NotAFunction {
                process: name,
                detail: format!("output index {bad} outside {cod}"),
            });
        }
        Ok(Process {
            term: ProcessTerm::Generator(name),
            dom,
            cod,
            map: map.into(),
        })
    }

    /// A generator from maplets, which must define every input exactly once.
    pub fn from_maplets(
        name: impl Into<String>,
        dom: Substrate,
        cod: Substrate,
        maplets: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Process> {
        let name = name.into();
        let (gd, gc) = (dom.states(), cod.states());
        let mut table: Vec<Option<usize>> = alloc::vec![None; gd.size()];
        for (x, y) in maplets {
            if x >= gd.size() || y >= gc.size() {
                return Err(Error::NotAFunction {
                    process: name,
                    detail: format!("maplet ({x}, {y}) outside {dom} -> {cod}"),
                });
            }
            match table[x] {
                Some(prev) if prev != y => {
                    return Err(Error::NotAFunction {
                        process: name,
                        detail: format!(
                            "{} has two images {} and {}",
                            gd.render_elem(x),
                            gc.render_elem(prev),
                            gc.render_elem(y)
                        ),
                    })
                }
                _ => table[x] = Some(y),
            }
        }
        let mut map = Vec::with_capacity(table.len());
        for (x, y) in table.into_iter().enumerate() {
            match y {
                Some(y) => map.push(y),
                None => {
                    return Err(Error::NotAFunction {
                        process: name,
                        detail: format!("no image for {}", gd.render_elem(x)),
                    })
                }
            }
        }
        Process::new(name, dom, cod, map)
    }

    pub fn identity(s: &Substrate) -> Process {
        Process {
            term: ProcessTerm::Id(s.clone()),
            dom: s.clone(),
            cod: s.clone(),
            map: (0..s.state_count()).collect(),
        }
    }

    pub fn swap(a: &Substrate, b: &Substrate) -> Process {
        let (n, m) = (a.state_count(), b.state_count());
        let mut map = alloc::vec![0; n * m];
        for x in 0..n {
            for y in 0..m {
                map[x * m + y] = y * n + x;
            }
        }
        Process {
            term: ProcessTerm::Swap(a.clone(), b.clone()),
            dom: a.tensor(b),
            cod: b.tensor(a),
            map: map.into(),
        }
    }

    /// `self` then `next`.
    pub fn seq(&self, next: &Process) -> Result<Process> {
        if self.cod != next.dom {
            return Err(Error::BoundaryMismatch {
                left: self.cod.to_string(),
                right: next.dom.to_string(),
            });
        }
        Ok(Process {
            term: ProcessTerm::Seq(Box::new(self.term.clone()), Box::new(next.term.clone())),
            dom: self.dom.clone(),
            cod: next.cod.clone(),
            map: compose_maps(&self.map, &next.map).into(),
        })
    }

    pub fn par(&self, other: &Process) -> Process {
        Process {
            term: ProcessTerm::Par(Box::new(self.term.clone()), Box::new(other.term.clone())),
            dom: self.dom.tensor(&other.dom),
            cod: self.cod.tensor(&other.cod),
            map: tensor_maps(&self.map, &other.map, other.cod.state_count()).into(),
        }
    }

    pub(crate) fn from_parts(
        term: ProcessTerm,
        dom: Substrate,
        cod: Substrate,
        map: Arc<[usize]>,
    ) -> Process {
        Process {
            term,
            dom,
            cod,
            map,
        }
    }

    pub fn term(&self) -> &ProcessTerm {
        &self.term
    }

    /// The generator name, or the rendered term for composites.
    pub fn name(&self) -> String {
        self.term.to_string()
    }

    pub fn dom(&self) -> &Substrate {
        &self.dom
    }

    pub fn cod(&self) -> &Substrate {
        &self.cod
    }

    /// Output state index for each input state index.
    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, state: usize) -> usize {
        self.map[state]
    }

    /// `{ rho |-> f(rho) }` on the state sets.
    pub fn induced_task(&self) -> Task {
        Task::from_pairs(
            self.dom.states(),
            self.cod.states(),
            self.map.iter().copied().enumerate(),
        )
        .expect("process tables are in range")
    }
}

impl fmt::Debug for Process {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Process({} : {} -> {}, {:?})",
            self.term,
            self.dom,
            self.cod,
            &self.map[..]
        )
    }
}

pub(crate) fn compose_maps(first: &[usize], second: &[usize]) -> Vec<usize> {
    first.iter().map(|&y| second[y]).collect()
}

pub(crate) fn tensor_maps(a: &[usize], b: &[usize], b_cod: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for &ya in a {
        for &yb in b {
            out.push(ya * b_cod + yb);
        }
    }
    out
}

/// `f: H -> K` maps every state of `H` into `K`. Processes here are total
/// maps on state sets, so this reduces to a boundary check.
pub fn is_task_inducing(f: &Process, h: &Substrate, k: &Substrate) -> Result<bool> {
    for (found, expected) in [(f.dom(), h), (f.cod(), k)] {
        if found != expected {
            return Err(Error::BoundaryMismatch {
                left: found.to_string(),
                right: expected.to_string(),
            });
        }
    }
    let n = k.state_count();
    Ok(f.map().iter().all(|&y| y < n))
}

/// Substrate atoms and generating processes. Identities and swaps on every
/// substrate are implicitly available.
#[derive(Debug, Clone, Default)]
pub struct SubstrateTheory {
    atoms: BTreeMap<String, Arc<SubstrateAtom>>,
    generators: Vec<Process>,
}

impl SubstrateTheory {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_atom(&mut self, atom: Arc<SubstrateAtom>) -> Result<()> {
        if let Some(prev) = self.atoms.get(atom.name()) {
            if prev != &atom {
                return Err(Error::InvalidAtom(format!(
                    "substrate {} declared twice",
                    atom.name()
                )));
            }
        }
        self.atoms.insert(atom.name().to_string(), atom);
        Ok(())
    }

    /// Adds a generator; its boundary factors must be atoms of the theory.
    pub fn add_generator(&mut self, p: Process) -> Result<()> {
        for a in p.dom().factors().iter().chain(p.cod().factors()) {
            if self.atoms.get(a.name()) != Some(a) {
                return Err(Error::UnknownSubstrate(a.name().to_string()));
            }
        }
        if self.generators.iter().any(|g| g.name() == p.name()) {
            return Err(Error::NotAFunction {
                process: p.name(),
                detail: "declared twice".into(),
            });
        }
        self.generators.push(p);
        Ok(())
    }

    /// Atoms in name order.
    pub fn atoms(&self) -> impl Iterator<Item = &Arc<SubstrateAtom>> {
        self.atoms.values()
    }

    pub fn atom(&self, name: &str) -> Option<&Arc<SubstrateAtom>> {
        self.atoms.get(name)
    }

    pub fn generators(&self) -> &[Process] {
        &self.generators
    }

    pub fn generator(&self, name: &str) -> Option<&Process> {
        self.generators.iter().find(|g| g.name() == name)
    }

    /// Every substrate word of exactly `len` atoms, in lexicographic order
    /// of atom names.
    pub fn words(&self, len: usize) -> Vec<Substrate> {
        let atoms: Vec<_> = self.atoms.values().cloned().collect();
        let mut out = alloc::vec![Substrate::unit()];
        for _ in 0..len {
            out = out
                .iter()
                .flat_map(|w| atoms.iter().map(move |a| w.tensor(&Substrate::atom(a))))
                .collect();
        }
        out
    }

    /// The substrate whose state set is `obj`, if each factor's state atom
    /// belongs to exactly one substrate atom.
    pub fn substrate_for(&self, obj: &FinObject) -> Result<Substrate> {
        let mut factors = Vec::with_capacity(obj.factor_count());
        for states in obj.factors() {
            let mut owners = self.atoms.values().filter(|a| &a.states == states);
            match (owners.next(), owners.next()) {
                (Some(a), None) => factors.push(a.clone()),
                (None, _) => {
                    return Err(Error::UnknownSubstrate(format!(
                        "state set {}",
                        states.name()
                    )))
                }
                (Some(a), Some(b)) => {
                    return Err(Error::UnknownSubstrate(format!(
                        "state set {} (shared by {} and {})",
                        states.name(),
                        a.name(),
                        b.name()
                    )))
                }
            }
        }
        Ok(Substrate::from_factors(factors))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bit() -> Arc<SubstrateAtom> {
        SubstrateAtom::new("bit", Atom::new("Bit", ["0", "1"]).unwrap()).unwrap()
    }

    #[test]
    fn not_gate_induces_flip() {
        let b = Substrate::atom(&bit());
        let not = Process::from_maplets("NOT", b.clone(), b.clone(), [(0, 1), (1, 0)]).unwrap();
        assert!(is_task_inducing(&not, &b, &b).unwrap());
        assert_eq!(not.induced_task().to_string(), "{ 0 |-> 1, 1 |-> 0 }");
        assert!(crate::relcore::is_function(&not.induced_task()));
        let bb = b.tensor(&b);
        assert!(matches!(
            is_task_inducing(&not, &b, &bb),
            Err(Error::BoundaryMismatch { .. })
        ));
    }

    #[test]
    fn cnot_table() {
        let b = Substrate::atom(&bit());
        let bb = b.tensor(&b);
        let cnot = Process::new("CNOT", bb.clone(), bb.clone(), alloc::vec![0, 1, 3, 2]).unwrap();
        assert_eq!(
            cnot.induced_task().to_string(),
            "{ (0,0) |-> (0,0), (0,1) |-> (0,1), (1,0) |-> (1,1), (1,1) |-> (1,0) }"
        );
    }

    #[test]
    fn rejects_partial_and_multivalued_tables() {
        let b = Substrate::atom(&bit());
        assert!(Process::from_maplets("P", b.clone(), b.clone(), [(0, 1)]).is_err());
        assert!(
            Process::from_maplets("M", b.clone(), b.clone(), [(0, 1), (0, 0), (1, 1)]).is_err()
        );
        assert!(Process::new("T", b.clone(), b.clone(), alloc::vec![0, 2]).is_err());
    }

    #[test]
    fn composites_match_relcore() {
        let b = Substrate::atom(&bit());
        let not = Process::from_maplets("NOT", b.clone(), b.clone(), [(0, 1), (1, 0)]).unwrap();
        let id = Process::identity(&b);
        let p = not.par(&id).seq(&Process::swap(&b, &b)).unwrap();
        let expected = crate::relcore::seq_compose(
            &crate::relcore::par_compose(&not.induced_task(), &id.induced_task()),
            &crate::relcore::swap(&b.states(), &b.states()),
        )
        .unwrap();
        assert_eq!(p.induced_task(), expected);
        assert_eq!(p.name(), "NOT * id(bit) ; swap(bit, bit)");
        let q = id.seq(&not).unwrap().par(&not.par(&id));
        assert_eq!(q.name(), "(id(bit) ; NOT) * (NOT * id(bit))");
        assert_eq!(q.term().depth(), 2);
    }

    #[test]
    fn resolves_substrates_by_state_set() {
        let mut th = SubstrateTheory::new();
        let b = bit();
        th.add_atom(b.clone()).unwrap();
        let bb = Substrate::atom(&b).tensor(&Substrate::atom(&b));
        assert_eq!(th.substrate_for(&bb.states()).unwrap(), bb);
        assert_eq!(th.words(2).len(), 1);
        th.add_atom(SubstrateAtom::new("qbit", b.state_set().clone()).unwrap())
            .unwrap();
        assert!(th.substrate_for(&bb.states()).is_err());
    }
}
