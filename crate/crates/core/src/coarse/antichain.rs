use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::relcore::{Atom, Attribute, FinObject};

/// Largest base set whose antichains [`enumerate_antichains`] will list.
pub const MAX_ANTICHAIN_BASE: usize = 5;

fn members(s: &Attribute) -> Vec<usize> {
    s.members().collect()
}

fn check_carriers<'a>(
    base: &FinObject,
    family: impl IntoIterator<Item = &'a Attribute>,
) -> Result<()> {
    for s in family {
        if s.carrier() != base {
            return Err(Error::CarrierMismatch {
                expected: base.to_string(),
                found: s.carrier().to_string(),
            });
        }
    }
    Ok(())
}

fn first_nesting(family: &[Attribute]) -> Option<(&Attribute, &Attribute)> {
    for (i, s) in family.iter().enumerate() {
        for (j, t) in family.iter().enumerate() {
            if i != j && s != t && s.is_subset(t) {
                return Some((s, t));
            }
        }
    }
    None
}

/// No member of `family` is a proper subset of another. The empty attribute
/// is a proper subset of every other attribute, so it only appears in an
/// antichain on its own.
pub fn is_antichain(family: &[Attribute]) -> Result<bool> {
    if let Some(first) = family.first() {
        check_carriers(first.carrier(), family)?;
    }
    Ok(first_nesting(family).is_none())
}

/// A set of pairwise non-nested attributes on a base object.
///
/// Members are kept in ascending order of their sorted member lists, an
/// order that survives relabelling the base along an order-preserving map.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Antichain {
    base: FinObject,
    attributes: Vec<Attribute>,
}

pub(crate) fn canonical_family(mut family: Vec<Attribute>) -> Vec<Attribute> {
    family.sort_by_key(members);
    family.dedup();
    family
}

impl Antichain {
    pub fn new(base: FinObject, family: impl IntoIterator<Item = Attribute>) -> Result<Antichain> {
        let attributes = canonical_family(family.into_iter().collect());
        check_carriers(&base, &attributes)?;
        if let Some((s, t)) = first_nesting(&attributes) {
            return Err(Error::NotAntichain {
                nested: s.render(),
                within: t.render(),
            });
        }
        Ok(Antichain { base, attributes })
    }

    pub(crate) fn new_unchecked(base: FinObject, attributes: Vec<Attribute>) -> Antichain {
        Antichain {
            base,
            attributes: canonical_family(attributes),
        }
    }

    pub fn base(&self) -> &FinObject {
        &self.base
    }

    pub fn attributes(&self) -> &[Attribute] {
        &self.attributes
    }

    pub fn len(&self) -> usize {
        self.attributes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.attributes.is_empty()
    }

    pub fn position(&self, s: &Attribute) -> Option<usize> {
        self.attributes.iter().position(|t| t == s)
    }

    /// The union of all members, as an attribute on the base.
    pub fn support(&self) -> Attribute {
        let all = self.attributes.iter().flat_map(|s| s.members());
        Attribute::new(self.base.clone(), all).expect("members lie in the base")
    }

    /// The support as an object of its own, with the base's element
    /// renderings as labels, plus the embedding into the base. A family
    /// covering the whole base keeps the base itself.
    pub fn support_object(&self) -> (FinObject, Vec<usize>) {
        let support: Vec<usize> = self.support().members().collect();
        if support.len() == self.base.size() {
            return (self.base.clone(), support);
        }
        let labels: Vec<String> = support.iter().map(|&x| self.base.render_elem(x)).collect();
        let name = format!("U({})", self.render());
        let atom = Atom::new(name, labels).expect("renderings of distinct elements are distinct");
        (FinObject::atom(&atom), support)
    }

    /// The same family with the support object as base.
    pub fn on_support(&self) -> Antichain {
        let (obj, embed) = self.support_object();
        let attributes = self
            .attributes
            .iter()
            .map(|s| {
                let idx = s
                    .members()
                    .map(|x| embed.binary_search(&x).expect("member of support"));
                Attribute::new(obj.clone(), idx).expect("indices within support")
            })
            .collect();
        Antichain::new_unchecked(obj, attributes)
    }

    /// The antichain viewed as a set: an atom whose elements are the
    /// rendered attributes.
    pub fn as_object(&self) -> FinObject {
        let labels: Vec<String> = self.attributes.iter().map(Attribute::render).collect();
        let atom = Atom::new(format!("Bar({})", self.base), labels)
            .expect("distinct attributes render distinctly");
        FinObject::atom(&atom)
    }

    /// `{a, b}`-style rendering of the family: `{{a}, {b, c}}`.
    pub fn render(&self) -> String {
        let parts: Vec<String> = self.attributes.iter().map(Attribute::render).collect();
        format!("{{{}}}", parts.join(", "))
    }
}

impl fmt::Display for Antichain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} on {}", self.render(), self.base)
    }
}

impl fmt::Debug for Antichain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Antichain({self})")
    }
}

/// `{ S x T | S in Xbar, T in Ybar }` on `X * Y`.
pub fn boxtimes_objects(xbar: &Antichain, ybar: &Antichain) -> Antichain {
    let products = xbar
        .attributes
        .iter()
        .flat_map(|s| ybar.attributes.iter().map(move |t| s.product(t)))
        .collect();
    Antichain::new_unchecked(xbar.base.tensor(&ybar.base), products)
}

/// `{ {x} | x in X }`.
pub fn singleton_embed_object(x: &FinObject) -> Antichain {
    let singletons = (0..x.size())
        .map(|i| Attribute::singleton(x.clone(), i))
        .collect();
    Antichain::new_unchecked(x.clone(), singletons)
}

/// Every antichain on `x`, including the empty family and `{{}}`, each once.
pub fn enumerate_antichains(x: &FinObject) -> Result<Vec<Antichain>> {
    let n = x.size();
    if n > MAX_ANTICHAIN_BASE {
        return Err(Error::BudgetExceeded {
            what: format!("antichains on {x}"),
            required: n as u128,
            limit: MAX_ANTICHAIN_BASE as u128,
        });
    }
    let masks: Vec<u32> = (0..1u32 << n).collect();
    let mut out = Vec::new();
    let mut chosen: Vec<u32> = Vec::new();
    fn grow(masks: &[u32], start: usize, chosen: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        out.push(chosen.clone());
        for i in start..masks.len() {
            let m = masks[i];
            if chosen.iter().all(|&c| c & m != c && c & m != m) {
                chosen.push(m);
                grow(masks, i + 1, chosen, out);
                chosen.pop();
            }
        }
    }
    let mut families = Vec::new();
    grow(&masks, 0, &mut chosen, &mut families);
    for fam in families {
        let attrs = fam
            .iter()
            .map(|&m| Attribute::new(x.clone(), (0..n).filter(|i| m >> i & 1 == 1)))
            .collect::<Result<Vec<_>>>()?;
        out.push(Antichain::new_unchecked(x.clone(), attrs));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn abc() -> FinObject {
        FinObject::atom(&Atom::new("X", ["a", "b", "c"]).unwrap())
    }

    fn attr(x: &FinObject, m: &[usize]) -> Attribute {
        Attribute::new(x.clone(), m.iter().copied()).unwrap()
    }

    #[test]
    fn nesting() {
        let x = abc();
        assert!(is_antichain(&[attr(&x, &[0]), attr(&x, &[1])]).unwrap());
        assert!(!is_antichain(&[attr(&x, &[0]), attr(&x, &[0, 1])]).unwrap());
        assert!(is_antichain(&[attr(&x, &[0, 1]), attr(&x, &[1, 2])]).unwrap());
        assert!(is_antichain(&[attr(&x, &[])]).unwrap());
        assert!(!is_antichain(&[attr(&x, &[]), attr(&x, &[2])]).unwrap());
        let y = FinObject::atom(&Atom::new("Y", ["a"]).unwrap());
        assert!(matches!(
            is_antichain(&[attr(&x, &[0]), attr(&y, &[0])]),
            Err(Error::CarrierMismatch { .. })
        ));
        assert!(matches!(
            Antichain::new(x.clone(), [attr(&x, &[0]), attr(&x, &[0, 2])]),
            Err(Error::NotAntichain { .. })
        ));
    }

    #[test]
    fn antichain_counts() {
        // Dedekind numbers 2, 3, 6, 20, 168
        for (n, count) in [(0, 2), (1, 3), (2, 6), (3, 20), (4, 168)] {
            let x = FinObject::atom(&Atom::numbered("N", n));
            let all = enumerate_antichains(&x).unwrap();
            assert_eq!(all.len(), count, "n = {n}");
            let mut renders: Vec<String> = all.iter().map(|a| a.render()).collect();
            renders.sort();
            renders.dedup();
            assert_eq!(renders.len(), count);
        }
    }

    #[test]
    fn boxtimes_counts() {
        let x = FinObject::atom(&Atom::new("X", ["a", "b"]).unwrap());
        let y = abc();
        let xbar = Antichain::new(x.clone(), [attr(&x, &[0]), attr(&x, &[1])]).unwrap();
        let ybar = Antichain::new(
            y.clone(),
            [attr(&y, &[0, 1]), attr(&y, &[1, 2]), attr(&y, &[0, 2])],
        )
        .unwrap();
        let p = boxtimes_objects(&xbar, &ybar);
        assert_eq!(p.len(), 6);
        assert!(is_antichain(p.attributes()).unwrap());
        let eta = Antichain::new(y.clone(), [Attribute::trivial(y.clone())]).unwrap();
        let q = boxtimes_objects(&xbar, &eta);
        assert_eq!(q.render(), "{{(a,a), (a,b), (a,c)}, {(b,a), (b,b), (b,c)}}");
    }

    #[test]
    fn support_object_relabels() {
        let x = abc();
        let bar = Antichain::new(x.clone(), [attr(&x, &[0]), attr(&x, &[2])]).unwrap();
        let (obj, embed) = bar.support_object();
        assert_eq!(embed, [0, 2]);
        assert_eq!(obj.size(), 2);
        assert_eq!(bar.on_support().render(), bar.render());
        let full = Antichain::new(x.clone(), [attr(&x, &[0, 1]), attr(&x, &[2])]).unwrap();
        assert_eq!(full.support_object().0, x);
    }
}
