//! Coarse-graining tasks over antichains of attributes.

mod antichain;
mod laws;
mod task;

pub use antichain::{
    boxtimes_objects, enumerate_antichains, is_antichain, singleton_embed_object, Antichain,
    MAX_ANTICHAIN_BASE,
};
pub use laws::{
    check_coarse_laws, coarse_law_names, identity_antichain, lax_structure_check, par_agreement,
    restriction_preserves_coarse, seq_containment, singleton_faithful, singleton_par,
    singleton_seq, singleton_structure, swap_coherence, task_round_trip, well_definedness,
    MAX_COARSE_SET,
};
pub use task::{
    coarse_grain, coarse_par, coarse_seq, coarse_swap, identity_antichain_biconditional,
    restrict_to_support, singleton_embed_task, CoarseTask,
};
