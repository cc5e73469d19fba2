//! Conditioning tasks on attributes of an auxiliary input or output.
//!
//! The auxiliary boundary `Z` is always passed explicitly; it must be the
//! trailing factor word of the task's domain (or codomain).

use alloc::string::ToString;

use crate::bits::BitMatrix;
use crate::error::{Error, Result};
use crate::relcore::attribute::Attribute;
use crate::relcore::object::FinObject;
use crate::relcore::task::Task;

fn split(boundary: &FinObject, z: &FinObject) -> Result<FinObject> {
    boundary
        .strip_suffix(z)
        .ok_or_else(|| Error::SplitMismatch {
            boundary: boundary.to_string(),
            split: z.to_string(),
        })
}

fn check_carrier(s: &Attribute, z: &FinObject) -> Result<()> {
    if s.carrier() != z {
        return Err(Error::CarrierMismatch {
            expected: z.to_string(),
            found: s.carrier().to_string(),
        });
    }
    Ok(())
}

/// `A : X * Z -> Y` conditioned on its `Z` input lying in `s`:
/// `{ x |-> y | exists z in s. (x, z) |-> y in A }`.
pub fn precondition(a: &Task, z: &FinObject, s: &Attribute) -> Result<Task> {
    let x = split(a.dom(), z)?;
    check_carrier(s, z)?;
    let mut rel = BitMatrix::zeros(x.size(), a.cod().size());
    for xi in 0..x.size() {
        for zi in s.members() {
            rel.or_row(xi, &a.matrix().row_set(x.pair_index(xi, z, zi)));
        }
    }
    Ok(Task::from_matrix(x, a.cod().clone(), rel))
}

/// `A : X -> Y * Z` conditioned on its `Z` output lying in `s`:
/// `{ x |-> y | exists z in s. x |-> (y, z) in A }`.
pub fn postcondition(a: &Task, z: &FinObject, s: &Attribute) -> Result<Task> {
    let y = split(a.cod(), z)?;
    check_carrier(s, z)?;
    let mut rel = BitMatrix::zeros(a.dom().size(), y.size());
    for (xi, out) in a.pairs() {
        let (yi, zi) = (out / z.size(), out % z.size());
        if s.contains(zi) {
            rel.set(xi, yi);
        }
    }
    Ok(Task::from_matrix(a.dom().clone(), y, rel))
}

/// Both at once on `A : X * Z -> Y * W`:
/// `{ x |-> y | exists p in pre, q in post. (x, p) |-> (y, q) in A }`.
pub fn pre_post(
    a: &Task,
    z: &FinObject,
    pre: &Attribute,
    w: &FinObject,
    post: &Attribute,
) -> Result<Task> {
    let x = split(a.dom(), z)?;
    let y = split(a.cod(), w)?;
    check_carrier(pre, z)?;
    check_carrier(post, w)?;
    let mut rel = BitMatrix::zeros(x.size(), y.size());
    for xi in 0..x.size() {
        for p in pre.members() {
            for out in a.image_of(x.pair_index(xi, z, p)) {
                let (yi, q) = (out / w.size(), out % w.size());
                if post.contains(q) {
                    rel.set(xi, yi);
                }
            }
        }
    }
    Ok(Task::from_matrix(x, y, rel))
}
