//! Plane curves over the rationals: parsing, singular points, embedded
//! resolution by point blow-ups, and the resulting local invariants.

mod global;
mod groebner;
mod milnor;
mod parse;
mod poly;
mod resolve;
mod singular;
mod upoly;

pub use global::{
    curve_topology, resolve_projective, CurveTopology, GlobalResolution, PointTopology,
    ResolvedDivisor, SingularPoint,
};
pub use groebner::groebner_basis;
pub use milnor::{milnor_oracle, truncated_milnor_dimension};
pub use parse::parse_poly;
pub use poly::Poly;
pub use resolve::{
    local_divisor_classes, milnor_from_psi, psi_at, resolve_local, to_ncmodel, LocalResolution,
    ResolutionNode, DEFAULT_MAX_BLOWUPS,
};
pub use singular::{find_singular_points, local_equation, ProjPoint};
pub use upoly::UPoly;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("the zero polynomial does not define a curve")]
    ZeroPolynomial,
    #[error("projective input must be a homogeneous polynomial in x, y, z")]
    NotHomogeneous,
    #[error("curve is not reduced (non-isolated singular locus)")]
    NotSquarefree,
    #[error("a singular point is not defined over the rationals")]
    IrrationalSingularPoint,
    #[error("an infinitely near point is not defined over the rationals")]
    IrrationalInfinitelyNearPoint,
    #[error("resolution did not finish within {0} blow-ups")]
    MaxIterations(usize),
    #[error("singularity at the origin is not isolated")]
    NonIsolated,
    #[error("non-integral delta invariant at {0}")]
    NonIntegralDelta(String),
    #[error("the curve does not pass through the origin")]
    NotOnCurve,
}

/// Parses an affine curve in `x, y`.
pub fn parse_affine(s: &str) -> Result<Poly, CurveError> {
    parse_poly(s, &["x", "y"])
}

/// Parses a projective curve in `x, y, z`.
pub fn parse_projective(s: &str) -> Result<Poly, CurveError> {
    let f = parse_poly(s, &["x", "y", "z"])?;
    if f.is_zero() {
        return Err(CurveError::ZeroPolynomial);
    }
    if !f.is_homogeneous() {
        return Err(CurveError::NotHomogeneous);
    }
    Ok(f)
}
