//! Lefschetz data, the inductive decomposition and its certificate.

mod certificate;
mod data;
mod induction;

pub use certificate::{
    certificate_maps, verify_certificate, CertificateFailure, CertificateSummand, DecompositionCertificate,
};
pub use data::{
    amplitude_bound, hard_lefschetz_check, iterate_lefschetz, validate_lefschetz, HardLefschetzReport, LefschetzData,
    LefschetzFamily, LefschetzMap,
};
pub use induction::{
    build_alpha, deligne_decompose, deligne_decompose_traced, induction_step, AlphaData, DecompositionRun,
    FinishedSummand, InductionState, StepTrace,
};
