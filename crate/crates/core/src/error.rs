use thiserror::Error;

use crate::verifier::VerificationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parameter `{name}` must be at least {min}, got {value}")]
    ParameterTooSmall {
        name: &'static str,
        min: u32,
        value: u32,
    },
    #[error("order {0} is not congruent to 1 mod 8")]
    InvalidOrder(u32),
    #[error("malformed block {0:?}: labels must be pairwise distinct")]
    MalformedBlock([u32; 4]),
    #[error("malformed parts: {0}")]
    MalformedParts(String),
    #[error("{case} construction not applicable: {reason}")]
    CaseNotApplicable { case: &'static str, reason: String },
    #[error("c = {c} is outside the constructible spectrum [{min}, {max}] for s = {s}")]
    OutOfSpectrum { s: u32, c: u32, min: u32, max: u32 },
    #[error("construction infeasible: {0}")]
    ConstructionInfeasible(String),
    #[error("no decomposition of K_{n} - I into {triangles} triangles and {quads} quadrilaterals found", n = 2 * .s)]
    DecompositionInfeasible { s: u32, triangles: u32, quads: u32 },
    #[error("exhaustive oracle limited to s <= {max}, got s = {s}")]
    OracleScaleExceeded { s: u32, max: u32 },
    #[error("sub-system failed verification:\n{0}")]
    InvalidSubsystem(VerificationReport),
    #[error("document parse error: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("document validation error at {location}: {reason}")]
    Validation { location: String, reason: String },
}
