//! Exhaustive enumeration of small relations and the law suites checked
//! against it.

mod enumerate;
mod laws;

pub use enumerate::{
    enumerate_attributes, enumerate_relations, EnumerationBudget, MAX_LAW_INSTANCES,
    MAX_RELATIONS_CAP, MAX_UNIVERSE,
};
pub use laws::{
    all_relational_laws, copy_laws, dagger_laws, run_law, run_laws, smc_laws, verify_copy_laws,
    verify_dagger_laws, verify_smc_laws, CheckFn, Counterexample, Law, LawReport, Semantics,
    Standard, Verdict,
};

pub(crate) use enumerate::relation_from_mask;
