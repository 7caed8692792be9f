use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::serde_int::Int;
use super::{ClassError, MTClass};

/// Two-variable E-polynomial `Σ c_ij u^i v^j` with nonzero integer coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EPoly {
    terms: BTreeMap<(u32, u32), BigInt>,
}

impl EPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(0, 0, c)
    }

    pub fn monomial(i: u32, j: u32, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero();
        p.add_term(i, j, c.into());
        p
    }

    /// `L = uv`, the class of the affine line.
    pub fn lefschetz() -> Self {
        Self::monomial(1, 1, 1)
    }

    /// `T = uv − 1`, the class of the one-dimensional torus.
    pub fn torus() -> Self {
        Self::lefschetz() - Self::one()
    }

    /// Builds a polynomial from `(i, j, c)` triples; repeated exponents are summed.
    pub fn from_triples<I>(triples: I) -> Self
    where
        I: IntoIterator<Item = (u32, u32, BigInt)>,
    {
        let mut p = Self::zero();
        for (i, j, c) in triples {
            p.add_term(i, j, c);
        }
        p
    }

    /// Triples sorted lexicographically by `(i, j)`.
    pub fn to_triples(&self) -> Vec<(u32, u32, BigInt)> {
        self.terms
            .iter()
            .map(|(&(i, j), c)| (i, j, c.clone()))
            .collect()
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &BigInt)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn coeff(&self, i: u32, j: u32) -> BigInt {
        self.terms.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, i: u32, j: u32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((i, j)).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, c)| (*e, c * k)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Evaluation at `u = v = 1`.
    pub fn euler(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Image under `v ↦ u⁻¹`.
    pub fn mod_torus(&self) -> MTClass {
        MTClass::from_terms(
            self.terms
                .iter()
                .map(|(&(i, j), c)| (i as i64 - j as i64, c.clone())),
        )
    }

    /// `c_ij = c_ji` for every term.
    pub fn is_symmetric(&self) -> bool {
        self.terms
            .iter()
            .all(|(&(i, j), c)| self.terms.get(&(j, i)) == Some(c))
    }
}

impl From<i64> for EPoly {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

impl Add for &EPoly {
    type Output = EPoly;
    fn add(self, rhs: &EPoly) -> EPoly {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, c.clone());
        }
        out
    }
}

impl Sub for &EPoly {
    type Output = EPoly;
    fn sub(self, rhs: &EPoly) -> EPoly {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, -c);
        }
        out
    }
}

impl Mul for &EPoly {
    type Output = EPoly;
    fn mul(self, rhs: &EPoly) -> EPoly {
        let mut out = EPoly::zero();
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &rhs.terms {
                out.add_term(i1 + i2, j1 + j2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &EPoly {
    type Output = EPoly;
    fn neg(self) -> EPoly {
        EPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for EPoly {
            type Output = EPoly;
            fn $m(self, rhs: EPoly) -> EPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&EPoly> for EPoly {
            type Output = EPoly;
            fn $m(self, rhs: &EPoly) -> EPoly {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for EPoly {
    type Output = EPoly;
    fn neg(self) -> EPoly {
        -&self
    }
}

impl fmt::Display for EPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        // highest total degree first
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| (b.0 .0 + b.0 .1, b.0).cmp(&(a.0 .0 + a.0 .1, a.0)));
        for (n, (&(i, j), c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (n, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mono = monomial_str('u', i) + &monomial_str('v', j);
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                f.write_str(&mono)?;
            } else {
                write!(f, "{abs}{mono}")?;
            }
        }
        Ok(())
    }
}

fn monomial_str(var: char, e: u32) -> String {
    match e {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{var}^{e}"),
    }
}

impl Serialize for EPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (&(i, j), c) in &self.terms {
            seq.serialize_element(&(i, j, Int(c.clone())))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for EPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let triples: Vec<(u32, u32, Int)> = Vec::deserialize(d)?;
        Ok(EPoly::from_triples(
            triples.into_iter().map(|(i, j, c)| (i, j, c.0)),
        ))
    }
}

/// Standard classes with known E-polynomials.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StdClass {
    /// `Aⁿ ↦ (uv)ⁿ`
    Affine(i64),
    /// `Tᵏ ↦ (uv − 1)ᵏ`
    Torus(i64),
    /// `Pⁿ ↦ Σ_{i≤n} (uv)ⁱ`
    Proj(i64),
    /// smooth projective curve of genus `g ↦ 1 − gu − gv + uv`
    Curve(i64),
    Point,
}

pub fn std_class(kind: StdClass) -> Result<EPoly, ClassError> {
    let check = |n: i64| u32::try_from(n).map_err(|_| ClassError::NegativeParameter(n));
    Ok(match kind {
        StdClass::Affine(n) => EPoly::lefschetz().pow(check(n)?),
        StdClass::Torus(k) => EPoly::torus().pow(check(k)?),
        StdClass::Proj(n) => {
            let n = check(n)?;
            (0..=n).fold(EPoly::zero(), |acc, i| acc + EPoly::monomial(i, i, 1))
        }
        StdClass::Curve(g) => {
            check(g)?;
            EPoly::from_triples([
                (0, 0, BigInt::one()),
                (1, 0, BigInt::from(-g)),
                (0, 1, BigInt::from(-g)),
                (1, 1, BigInt::one()),
            ])
        }
        StdClass::Point => EPoly::one(),
    })
}

/// `Pⁿ` for `n ≥ 0`, and `0` for `n = −1` (the empty projective space).
pub(crate) fn proj_or_empty(n: i64) -> EPoly {
    if n < 0 {
        EPoly::zero()
    } else {
        std_class(StdClass::Proj(n)).expect("nonnegative")
    }
}
