//! Finite models of tasks as relations.
//!
//! * [`relcore`]: finite sets and relations as a strict symmetric monoidal
//!   category with transpose, copy/discard and conditioning on attributes.
//! * [`substrate`]: possibility of a task relative to a choice of substrates
//!   and deterministic processes, with constructor witnesses and search.
//! * [`coarse`]: tasks coarse-grained over antichains of attributes.
//! * [`lawcheck`]: exhaustive enumeration and law suites.
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]

extern crate alloc;

pub mod bits;
pub mod coarse;
pub mod error;
pub mod lawcheck;
pub mod relcore;
pub mod substrate;

pub use error::{Error, Result};
