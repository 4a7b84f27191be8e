//! Saturation of cones and balls under the vector operations, with certificates.
//!
//! A figure closed under operations 1–3 (cones) or 1–4 (balls) certifies monotonicity or
//! non-expansivity. Runs that cannot close end in a negative certificate or `Inconclusive`.

mod json;
mod ops;
mod saturate;
mod snap;

pub use json::{
    certificate_json, kind_slug, verify_certificate, CertificateJson, Term, TraceStep, Witness,
};
pub use ops::{apply_operation, OpOutput, OpTag};
pub use saturate::{
    closure_check, detect_absorbed, detect_unbounded, mirror_order, saturate, Absorbed,
    Certificate, DerivationNode, Figure, Mode, Saturation, SaturationConfig, SaturationState,
    Unbounded, Violation,
};
pub use snap::rational_snap;
