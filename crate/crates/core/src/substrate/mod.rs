//! Possibility of tasks relative to a theory of deterministic processes on
//! finite state sets: induced tasks, constructor candidates and their two
//! conditions, the closure witnesses, and bounded constructor search.

mod possibility;
mod search;
mod theory;

pub use possibility::{
    check_condition1, check_condition2, condition2_pointwise, condition2_relational,
    is_possible_with, performed_task, witness_par, witness_seq, ConstructorCandidate,
    PossibilityCounterexample, PossibilityVerdict,
};
pub use search::{
    search_constructor, SearchBounds, SearchReport, MAX_CONSTRUCTOR_STATES, MAX_SEARCH_WORK,
};
pub use theory::{
    is_task_inducing, Process, ProcessTerm, Substrate, SubstrateAtom, SubstrateTheory,
};
