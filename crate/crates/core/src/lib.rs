//! Verification and simulation tools for quantum contextuality.
//!
//! * [`linalg`]: rays, projectors, Born probabilities, context validation.
//! * [`ks`]: ray systems, parity certificates, exhaustive colorability
//!   search, contextuality witnesses.
//! * [`parable`]: the three-box parable under competing outcome models.
//! * [`detection`]: exclusivity, interference and CHSH experiments, plus
//!   spacetime separation.
//! * [`cosmic`]: world and history counting over very large magnitudes.

pub mod cosmic;
pub mod detection;
pub mod error;
pub mod ks;
pub mod linalg;
pub mod parable;

pub use error::{Error, Result};
pub use ks::{
    Assignment, CertificateResult, ContextHypergraph, RaySystem, SearchConfig, SignConvention,
    Witness, WitnessReport,
};
pub use linalg::{ComplexScalar, Projector, QuantumState, Ray};
