//! Ray systems, their context hypergraphs, and Kochen-Specker style
//! non-colorability proofs and witnesses.

mod hypergraph;
mod search;
mod system;
mod witness;

pub use hypergraph::{parity_certificate, Assignment, CertificateResult, ContextHypergraph};
pub use search::{
    find_noncontextual_assignment, maximize_parity_sum, SearchConfig, DEFAULT_SEARCH_CAP,
};
pub use system::{Context, RaySystem, RaySystemDocument, StructureSummary, CEG18_JSON};
pub use witness::{ClassicalBound, SignConvention, Witness, WitnessReport};
