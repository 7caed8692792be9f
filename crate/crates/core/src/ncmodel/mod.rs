//! Normal-crossings divisor models.
//!
//! An [`NCModel`] records a divisor `D = Σ m_ℓ D_ℓ` with normal crossings in a
//! nonsingular ambient `W`, together with the E-polynomials of its open strata
//! `D_I°` over a finite set of marked points (and optionally globally).
//! Everything else here is computed from that data:
//!
//! * the specialization function and its α-weighted variants ([`psi`]),
//! * their motivic versions ([`motivic_psi`], [`naive_lift`]),
//! * the Milnor/Behrend formula in terms of discrepancies ([`behrend_mu`]),
//! * the rewrite of the data under a blow-up along an admissible center
//!   ([`blow_up`]), used to test that none of the above depend on the model.

mod alpha;
mod blowup;
pub mod fuzz;
mod model;
mod psi;

pub use alpha::Alpha;
pub use blowup::{arrangement_stratum_class, blow_up, CenterPiece, CenterSpec, PieceSite};
pub use model::{validate, Component, NCModel, Stratum, Violation};
pub use psi::{
    behrend_mu, motivic_psi, naive_lift, psi, psi_strata, pushforward, unit_reconstruction,
    BucketFunction, Scope, StratumFunction,
};

use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum NcError {
    #[error("model parse error: {0}")]
    Parse(String),
    #[error("invalid model: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    InvalidModel(Vec<Violation>),
    #[error("alpha is undefined at multiplicity {0}")]
    AlphaUndefined(BigInt),
    #[error("invalid alpha specification: {0}")]
    BadAlpha(String),
    #[error("unknown point: {0}")]
    UnknownPoint(String),
    #[error("model has no strata_total")]
    MissingTotals,
    #[error("component {0} has no discrepancy")]
    MissingDiscrepancy(String),
    #[error("malformed center: {0}")]
    MalformedCenter(String),
    #[error("arrangement parameters out of range: r={r}, e={e}, k={k}")]
    ArrangementRange { r: i64, e: i64, k: i64 },
}

impl From<serde_json::Error> for NcError {
    fn from(e: serde_json::Error) -> Self {
        NcError::Parse(e.to_string())
    }
}
