//! Statevector emulation of the quantum solver layer: block encoding of
//! arbitrary matrices, non-unitary time evolution through post-selection,
//! iterative phase estimation for complex eigenvalues, the null-space
//! projection circuit, and end-to-end pipelines over both solver routes.
//!
//! Exact-probability mode (amplitudes read directly off the statevector) is
//! the default and is deterministic; a seeded sampling mode models
//! measurement when configured.

mod fable;
mod ipea;
mod pipeline;
mod project;
mod statevector;

pub use fable::{
    fable_encode, fable_encode_real, pow2_at_least, BlockEncoding, EncodingMode,
    FULL_UNITARY_QUBIT_LIMIT,
};
pub use ipea::{ipea_complex, phase_distance, BitOutcome, IpeaOptions, IpeaResult};
pub use pipeline::{
    qpe_pipeline, PipelineConfig, PipelineError, PipelineOutput, PipelineRecord, Route,
    StatePrep, VariableMeta,
};
pub use project::{exact_null_projector, nullspace_projection, BranchProbabilities};
pub use statevector::{QsimError, Statevector};
