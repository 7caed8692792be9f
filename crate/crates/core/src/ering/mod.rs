//! Exact arithmetic substrate.
//!
//! Classes in the Grothendieck ring of varieties are handled only through their
//! E-polynomial (Hodge–Deligne) image [`EPoly`], a polynomial in `u` and `v`
//! with integer coefficients. Setting `v = u⁻¹` kills the torus class
//! `T = uv − 1` and lands in [`MTClass`], a Laurent polynomial in `u`.
//!
//! Two varieties with the same E-polynomial are indistinguishable here.

mod epoly;
mod mtclass;
pub mod serde_int;

pub(crate) use epoly::proj_or_empty;
pub use epoly::{std_class, EPoly, StdClass};
pub use mtclass::MTClass;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

/// Exact rational number, always in lowest terms with positive denominator.
pub type Rat = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassError {
    #[error("negative parameter {0} for standard class")]
    NegativeParameter(i64),
}

/// Which operation [`epoly_arith`] applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

pub fn epoly_arith(a: &EPoly, b: &EPoly, op: ArithOp) -> EPoly {
    match op {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
    }
}

/// Topological Euler characteristic: evaluation at `u = v = 1`.
pub fn euler(a: &EPoly) -> BigInt {
    a.euler()
}

pub fn mod_torus(a: &EPoly) -> MTClass {
    a.mod_torus()
}

pub fn rat_from_int(n: impl Into<BigInt>) -> Rat {
    Rat::from_integer(n.into())
}

/// `p/q`, or just `p` when the denominator is one.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rat::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(Rat::from_integer),
    }
}
