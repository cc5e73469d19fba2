//! The strict dagger symmetric monoidal category of finite sets and relations.

mod attribute;
mod condition;
mod object;
mod task;

pub use attribute::{attribute_as_state, test_of, trivial_attribute, Attribute};
pub use condition::{postcondition, pre_post, precondition};
pub use object::{Atom, Elem, FinObject};
pub use task::{
    copy, discard, identity, is_function, match_map, par_compose, seq_compose, swap, transpose,
    Task,
};
