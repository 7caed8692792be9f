//! Chow groups of iterated point blow-ups of the projective plane.
//!
//! Classes are written in the basis `H, e_1, …, e_k` where `H` is the pull-back
//! of a line and `e_i` the total transform of the `i`-th exceptional curve, so
//! the intersection form is `diag(1, −1, …, −1)`, `c₁ = 3H − Σ e_i` and
//! `c₂ = 3 + k`.

mod theorem;

pub use theorem::{
    psi_class, theorem_one_check, wma_standin, PointRow, TheoremOneReport, WmaReport,
};

use std::fmt;
use std::ops::{Add, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::curveres::CurveError;
use crate::ering::{format_rat, Rat};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChowError {
    #[error("divisor class has {got} coefficients, the surface needs {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("{divisors} divisors but {weights} weights")]
    MisalignedWeights { divisors: usize, weights: usize },
    #[error("weighted divisor part is not integral")]
    NonIntegral,
    #[error(transparent)]
    Curve(#[from] CurveError),
}

/// `P²` blown up at `k` (possibly infinitely near) points.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SurfaceModel {
    pub blowups: usize,
}

impl SurfaceModel {
    pub fn plane() -> Self {
        Self { blowups: 0 }
    }

    pub fn new(blowups: usize) -> Self {
        Self { blowups }
    }

    pub fn rank(&self) -> usize {
        self.blowups + 1
    }

    pub fn euler(&self) -> BigInt {
        BigInt::from(3 + self.blowups)
    }

    pub fn c1(&self) -> DivisorClass {
        let mut v = vec![BigInt::from(-1); self.rank()];
        v[0] = BigInt::from(3);
        DivisorClass(v)
    }

    pub fn canonical(&self) -> DivisorClass {
        DivisorClass::zero(self.rank()) - self.c1()
    }

    pub fn hyperplane(&self) -> DivisorClass {
        DivisorClass::basis(self.rank(), 0)
    }

    fn check(&self, d: &DivisorClass) -> Result<(), ChowError> {
        if d.0.len() == self.rank() {
            Ok(())
        } else {
            Err(ChowError::LengthMismatch {
                expected: self.rank(),
                got: d.0.len(),
            })
        }
    }
}

/// Integer coefficients of `H, e_1, …, e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorClass(pub Vec<BigInt>);

impl DivisorClass {
    pub fn zero(len: usize) -> Self {
        Self(vec![BigInt::zero(); len])
    }

    pub fn basis(len: usize, i: usize) -> Self {
        let mut d = Self::zero(len);
        d.0[i] = BigInt::one();
        d
    }

    pub fn from_ints(v: &[i64]) -> Self {
        Self(v.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self(self.0.iter().map(|x| x * c).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }
}

impl Add for DivisorClass {
    type Output = DivisorClass;
    fn add(self, rhs: DivisorClass) -> DivisorClass {
        assert_eq!(self.0.len(), rhs.0.len());
        DivisorClass(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for DivisorClass {
    type Output = DivisorClass;
    fn sub(self, rhs: DivisorClass) -> DivisorClass {
        assert_eq!(self.0.len(), rhs.0.len());
        DivisorClass(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let label = if i == 0 {
                "H".to_string()
            } else {
                format!("e{i}")
            };
            let sign = if c.is_negative() { "-" } else { "+" };
            match (first, c.is_negative()) {
                (true, false) => {}
                (true, true) => f.write_str("-")?,
                (false, _) => write!(f, " {sign} ")?,
            }
            if c.abs().is_one() {
                f.write_str(&label)?;
            } else {
                write!(f, "{}{label}", c.abs())?;
            }
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// `top·[W] + div + pts·[pt]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChowClass {
    pub top: BigInt,
    pub div: DivisorClass,
    pub pts: Rat,
}

impl ChowClass {
    pub fn zero(s: &SurfaceModel) -> Self {
        Self {
            top: BigInt::zero(),
            div: DivisorClass::zero(s.rank()),
            pts: Rat::zero(),
        }
    }

    /// Degree of the zero-dimensional part.
    pub fn degree(&self) -> &Rat {
        &self.pts
    }

    pub fn is_zero(&self) -> bool {
        self.top.is_zero() && self.div.is_zero() && self.pts.is_zero()
    }
}

impl Add for ChowClass {
    type Output = ChowClass;
    fn add(self, rhs: ChowClass) -> ChowClass {
        ChowClass {
            top: self.top + rhs.top,
            div: self.div + rhs.div,
            pts: self.pts + rhs.pts,
        }
    }
}

impl Sub for ChowClass {
    type Output = ChowClass;
    fn sub(self, rhs: ChowClass) -> ChowClass {
        ChowClass {
            top: self.top - rhs.top,
            div: self.div - rhs.div,
            pts: self.pts - rhs.pts,
        }
    }
}

impl fmt::Display for ChowClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}[W] + ({}) + {}[pt]",
            self.top,
            self.div,
            format_rat(&self.pts)
        )
    }
}

impl Serialize for ChowClass {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("ChowClass", 3)?;
        st.serialize_field("top", &self.top.to_string())?;
        let div: Vec<String> = self.div.0.iter().map(|c| c.to_string()).collect();
        st.serialize_field("div", &div)?;
        st.serialize_field("pts", &format_rat(&self.pts))?;
        st.end()
    }
}

pub fn intersection_number(
    s: &SurfaceModel,
    a: &DivisorClass,
    b: &DivisorClass,
) -> Result<BigInt, ChowError> {
    s.check(a)?;
    s.check(b)?;
    Ok(a.0
        .iter()
        .zip(&b.0)
        .enumerate()
        .map(|(i, (x, y))| if i == 0 { x * y } else { -(x * y) })
        .sum())
}

fn sum_classes(s: &SurfaceModel, ds: &[DivisorClass]) -> Result<DivisorClass, ChowError> {
    let mut total = DivisorClass::zero(s.rank());
    for d in ds {
        s.check(d)?;
        total = total + d.clone();
    }
    Ok(total)
}

/// `c(TW) / ∏ (1 + D_k) ∩ [W]`, the class of the complement of the divisors.
pub fn csm_complement(s: &SurfaceModel, ds: &[DivisorClass]) -> Result<ChowClass, ChowError> {
    let total = sum_classes(s, ds)?;
    let c1 = s.c1();
    let mut pts = s.euler() - intersection_number(s, &c1, &total)?;
    for (i, a) in ds.iter().enumerate() {
        for b in &ds[i..] {
            pts += intersection_number(s, a, b)?;
        }
    }
    Ok(ChowClass {
        top: BigInt::one(),
        div: c1 - total,
        pts: Rat::from_integer(pts),
    })
}

/// `Σ_ℓ w_ℓ · c(TW) / ∏ (1 + D_k) ∩ [D_ℓ]`.
pub fn csm_strata_class(
    s: &SurfaceModel,
    ds: &[DivisorClass],
    weights: &[Rat],
) -> Result<ChowClass, ChowError> {
    if ds.len() != weights.len() {
        return Err(ChowError::MisalignedWeights {
            divisors: ds.len(),
            weights: weights.len(),
        });
    }
    let log_c1 = s.c1() - sum_classes(s, ds)?;
    let mut div = vec![Rat::zero(); s.rank()];
    let mut pts = Rat::zero();
    for (d, w) in ds.iter().zip(weights) {
        for (acc, c) in div.iter_mut().zip(&d.0) {
            *acc += w * Rat::from_integer(c.clone());
        }
        pts += w * Rat::from_integer(intersection_number(s, &log_c1, d)?);
    }
    if !div.iter().all(|c| c.is_integer()) {
        return Err(ChowError::NonIntegral);
    }
    Ok(ChowClass {
        top: BigInt::zero(),
        div: DivisorClass(div.into_iter().map(|c| c.to_integer()).collect()),
        pts,
    })
}

/// Intersection with the divisor `x`: the fundamental part becomes `[x]`,
/// the divisor part becomes points, and points are dropped.
pub fn gysin_restrict(
    s: &SurfaceModel,
    c: &ChowClass,
    x: &DivisorClass,
) -> Result<ChowClass, ChowError> {
    Ok(ChowClass {
        top: BigInt::zero(),
        div: x.scale(&c.top),
        pts: Rat::from_integer(intersection_number(s, &c.div, x)?),
    })
}

/// Push-forward along the blow-down: exceptional classes go to zero.
pub fn pushforward_to_plane(s: &SurfaceModel, c: &ChowClass) -> Result<ChowClass, ChowError> {
    s.check(&c.div)?;
    Ok(ChowClass {
        top: c.top.clone(),
        div: DivisorClass(vec![c.div.0[0].clone()]),
        pts: c.pts.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(n: i64) -> Rat {
        Rat::from_integer(n.into())
    }

    fn class(top: i64, div: &[i64], pts: i64) -> ChowClass {
        ChowClass {
            top: top.into(),
            div: DivisorClass::from_ints(div),
            pts: int(pts),
        }
    }

    #[test]
    fn intersection_form() {
        let s = SurfaceModel::new(1);
        let h = DivisorClass::from_ints(&[1, 0]);
        let e = DivisorClass::from_ints(&[0, 1]);
        assert_eq!(intersection_number(&s, &h, &h).unwrap(), 1.into());
        assert_eq!(intersection_number(&s, &e, &e).unwrap(), (-1).into());
        let c = DivisorClass::from_ints(&[3, -2]);
        assert_eq!(intersection_number(&s, &c, &e).unwrap(), 2.into());
        assert!(intersection_number(&s, &h, &DivisorClass::from_ints(&[1])).is_err());
    }

    #[test]
    fn complements_in_the_plane() {
        let p2 = SurfaceModel::plane();
        let h = DivisorClass::from_ints(&[1]);
        assert_eq!(
            csm_complement(&p2, std::slice::from_ref(&h)).unwrap(),
            class(1, &[2], 1)
        );
        assert_eq!(csm_complement(&p2, &[]).unwrap(), class(1, &[3], 3));
        // (1 + 3H + 3pt)(1 − 3H + 9pt): χ of the complement of a smooth cubic is 3
        let cubic = DivisorClass::from_ints(&[3]);
        assert_eq!(csm_complement(&p2, &[cubic]).unwrap(), class(1, &[0], 3));
    }

    #[test]
    fn conic_and_zero_weights() {
        let p2 = SurfaceModel::plane();
        let conic = DivisorClass::from_ints(&[2]);
        let c = csm_strata_class(&p2, std::slice::from_ref(&conic), &[int(1)]).unwrap();
        assert_eq!(c, class(0, &[2], 2));
        assert!(
            csm_strata_class(&p2, std::slice::from_ref(&conic), &[int(0)])
                .unwrap()
                .is_zero()
        );
        assert!(matches!(
            csm_strata_class(&p2, &[conic], &[]),
            Err(ChowError::MisalignedWeights { .. })
        ));
    }

    #[test]
    fn embedded_point_surface() {
        let s = SurfaceModel::new(1);
        let line = DivisorClass::from_ints(&[1, -1]);
        let exc = DivisorClass::from_ints(&[0, 1]);
        let c = csm_strata_class(&s, &[line, exc], &[int(1), int(2)]).unwrap();
        assert_eq!(pushforward_to_plane(&s, &c).unwrap(), class(0, &[1], 3));
    }

    #[test]
    fn gysin_examples() {
        let p2 = SurfaceModel::plane();
        let h = DivisorClass::from_ints(&[1]);
        let r = gysin_restrict(&p2, &class(1, &[2], 1), &h).unwrap();
        assert_eq!(r, class(0, &[1], 2));
        let cubic = DivisorClass::from_ints(&[3]);
        assert_eq!(
            gysin_restrict(&p2, &class(1, &[0], 0), &cubic).unwrap(),
            class(0, &[3], 0)
        );
        assert!(gysin_restrict(&p2, &ChowClass::zero(&p2), &h)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn pushforward_forgets_exceptionals() {
        let s = SurfaceModel::new(1);
        let c = class(0, &[3, -2], 0);
        assert_eq!(pushforward_to_plane(&s, &c).unwrap(), class(0, &[3], 0));
        let pts = class(0, &[0, 0], 5);
        assert_eq!(pushforward_to_plane(&s, &pts).unwrap(), class(0, &[0], 5));
    }

    #[test]
    fn display() {
        let c = class(1, &[3, -1, 2], 4);
        assert_eq!(c.to_string(), "1[W] + (3H - e1 + 2e2) + 4[pt]");
        assert_eq!(
            SurfaceModel::new(2).canonical().to_string(),
            "-3H + e1 + e2"
        );
    }
}
