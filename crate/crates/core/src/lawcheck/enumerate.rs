use alloc::string::ToString;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::bits::{BitMatrix, BitSet};
use crate::error::{Error, Result};
use crate::relcore::{Atom, Attribute, FinObject, Task};

/// Size limits for exhaustive enumeration.
///
/// `max_relations` caps how many relations a single enumeration may yield
/// and, for the law suites, how many relation tuples a single choice of
/// objects may contribute.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EnumerationBudget {
    pub max_atom_size: usize,
    pub max_factors: usize,
    pub max_relations: u64,
}

impl Default for EnumerationBudget {
    fn default() -> Self {
        EnumerationBudget {
            max_atom_size: 2,
            max_factors: 2,
            max_relations: 1 << 9,
        }
    }
}

/// Hard ceiling on the number of objects a budget may generate.
pub const MAX_UNIVERSE: usize = 64;
/// Hard ceiling on instances a single law may examine.
pub const MAX_LAW_INSTANCES: u128 = 200_000_000;
/// Hard ceiling on relation tuples per choice of objects.
pub const MAX_RELATIONS_CAP: u64 = 1 << 24;

impl EnumerationBudget {
    pub fn validate(&self) -> Result<()> {
        if self.max_atom_size == 0 || self.max_factors == 0 || self.max_relations == 0 {
            return Err(Error::InvalidBudget("all limits must be positive".into()));
        }
        if self.max_relations > MAX_RELATIONS_CAP {
            return Err(Error::BudgetExceeded {
                what: "relation count cap".into(),
                required: self.max_relations as u128,
                limit: MAX_RELATIONS_CAP as u128,
            });
        }
        let objects = self.universe_size();
        if objects > MAX_UNIVERSE as u128 {
            return Err(Error::BudgetExceeded {
                what: "object universe".into(),
                required: objects,
                limit: MAX_UNIVERSE as u128,
            });
        }
        Ok(())
    }

    fn universe_size(&self) -> u128 {
        let a = self.max_atom_size as u128;
        let mut total: u128 = 0;
        let mut pow: u128 = 1;
        for _ in 0..=self.max_factors {
            total = total.saturating_add(pow);
            pow = pow.saturating_mul(a);
        }
        total
    }

    /// Largest `b` with `2^b <= max_relations`.
    pub fn max_bits(&self) -> u32 {
        63 - self.max_relations.leading_zeros()
    }

    /// The atoms `A1 .. Ak`, atom `An` having labels `a, b, ...` of size `n`.
    pub fn atoms(&self) -> Vec<Arc<Atom>> {
        (1..=self.max_atom_size)
            .map(|n| {
                let labels = (0..n).map(|i| {
                    if i < 26 {
                        char::from(b'a' + i as u8).to_string()
                    } else {
                        alloc::format!("e{i}")
                    }
                });
                Atom::new(alloc::format!("A{n}"), labels).expect("generated labels are distinct")
            })
            .collect()
    }

    /// Every word of at most `max_factors` atoms, shortest first, then in
    /// lexicographic order of atom size.
    pub fn objects(&self) -> Result<Vec<FinObject>> {
        self.validate()?;
        let atoms = self.atoms();
        let mut out = alloc::vec![FinObject::unit()];
        let mut layer: Vec<Vec<Arc<Atom>>> = alloc::vec![Vec::new()];
        for _ in 0..self.max_factors {
            let mut next = Vec::new();
            for word in &layer {
                for a in &atoms {
                    let mut w = word.clone();
                    w.push(a.clone());
                    next.push(w);
                }
            }
            out.extend(next.iter().cloned().map(FinObject::from_factors));
            layer = next;
        }
        Ok(out)
    }
}

fn hom_bits(x: &FinObject, y: &FinObject) -> u128 {
    x.size() as u128 * y.size() as u128
}

/// All `2^(|X||Y|)` relations `X -> Y`, each exactly once. Relation `k`
/// contains maplet `(i, j)` iff bit `i * |Y| + j` of `k` is set.
pub fn enumerate_relations(
    x: &FinObject,
    y: &FinObject,
    budget: &EnumerationBudget,
) -> Result<impl Iterator<Item = Task> + use<>> {
    let bits = hom_bits(x, y);
    if bits > budget.max_bits() as u128 {
        return Err(Error::BudgetExceeded {
            what: alloc::format!("relations {x} -> {y}"),
            required: if bits < 127 { 1u128 << bits } else { u128::MAX },
            limit: budget.max_relations as u128,
        });
    }
    let (x, y) = (x.clone(), y.clone());
    let count = 1u64 << bits;
    Ok((0..count).map(move |mask| relation_from_mask(&x, &y, mask)))
}

pub(crate) fn relation_from_mask(x: &FinObject, y: &FinObject, mask: u64) -> Task {
    Task::from_matrix(
        x.clone(),
        y.clone(),
        BitMatrix::from_mask(x.size(), y.size(), mask),
    )
}

/// All `2^|X|` attributes on `X`, each exactly once, ordered by bitmask.
pub fn enumerate_attributes(
    x: &FinObject,
    budget: &EnumerationBudget,
) -> Result<impl Iterator<Item = Attribute> + use<>> {
    let n = x.size() as u128;
    if n > budget.max_bits() as u128 {
        return Err(Error::BudgetExceeded {
            what: alloc::format!("attributes on {x}"),
            required: if n < 127 { 1u128 << n } else { u128::MAX },
            limit: budget.max_relations as u128,
        });
    }
    let x = x.clone();
    Ok((0..1u64 << n)
        .map(move |mask| Attribute::from_bits(x.clone(), BitSet::from_mask(x.size(), mask))))
}

/// Odometer over `radices`, first position slowest.
pub(crate) fn for_each_tuple(radices: &[usize], mut f: impl FnMut(&[usize]) -> bool) {
    if radices.contains(&0) {
        return;
    }
    let mut idx = alloc::vec![0; radices.len()];
    loop {
        if !f(&idx) {
            return;
        }
        let mut pos = radices.len();
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < radices[pos] {
                break;
            }
            idx[pos] = 0;
        }
    }
}
