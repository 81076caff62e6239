//! Entropies, incompatibility entropy, identity verifiers and pointer reading.

mod entropy;
mod incompatibility;
mod pointer;
mod verdict;

pub use entropy::{
    entanglement_of_pure_state, mutual_information, shannon_entropy, von_neumann_entropy, BipartiteInput, EntropyReport,
};
pub use incompatibility::{commutator_norm, incompatibility_entropy};
pub use pointer::{post_reading_state, read_pointer_tripartite, verify_pointer_reading, PointerReadingReport};
pub use verdict::{
    verify_entanglement_is_final_incompatibility, verify_entanglement_is_initial_incompatibility, TheoremVerdict,
    VerdictStatus,
};
