use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::serde_int::Int;

/// Laurent polynomial in `u`: the image of an E-polynomial modulo the torus class.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct MTClass {
    terms: BTreeMap<i64, BigInt>,
}

impl MTClass {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::from_terms([(0, c.into())])
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, BigInt)>>(terms: I) -> Self {
        let mut out = Self::zero();
        for (k, c) in terms {
            out.add_term(k, c);
        }
        out
    }

    fn add_term(&mut self, k: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(k).or_default();
        *e += c;
        if e.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn to_pairs(&self) -> Vec<(i64, BigInt)> {
        self.terms.iter().map(|(k, c)| (*k, c.clone())).collect()
    }

    pub fn coeff(&self, k: i64) -> BigInt {
        self.terms.get(&k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True when only the `u⁰` coefficient is present (or the class is zero).
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&k| k == 0)
    }

    /// Evaluation at `u = 1`; agrees with the Euler characteristic.
    pub fn euler(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Symmetry under `k ↦ −k`.
    pub fn is_symmetric(&self) -> bool {
        self.terms
            .iter()
            .all(|(k, c)| self.terms.get(&-k) == Some(c))
    }

    pub fn scale(&self, s: &BigInt) -> Self {
        Self::from_terms(self.terms.iter().map(|(k, c)| (*k, c * s)))
    }
}

impl Add for &MTClass {
    type Output = MTClass;
    fn add(self, rhs: &MTClass) -> MTClass {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, c.clone());
        }
        out
    }
}

impl Sub for &MTClass {
    type Output = MTClass;
    fn sub(self, rhs: &MTClass) -> MTClass {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, -c);
        }
        out
    }
}

impl Mul for &MTClass {
    type Output = MTClass;
    fn mul(self, rhs: &MTClass) -> MTClass {
        let mut out = MTClass::zero();
        for (k1, c1) in &self.terms {
            for (k2, c2) in &rhs.terms {
                out.add_term(k1 + k2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &MTClass {
    type Output = MTClass;
    fn neg(self) -> MTClass {
        MTClass::from_terms(self.terms.iter().map(|(k, c)| (*k, -c)))
    }
}

impl Add for MTClass {
    type Output = MTClass;
    fn add(self, rhs: MTClass) -> MTClass {
        &self + &rhs
    }
}

impl Sub for MTClass {
    type Output = MTClass;
    fn sub(self, rhs: MTClass) -> MTClass {
        &self - &rhs
    }
}

impl Mul for MTClass {
    type Output = MTClass;
    fn mul(self, rhs: MTClass) -> MTClass {
        &self * &rhs
    }
}

impl fmt::Display for MTClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (n, (&k, c)) in self.terms.iter().enumerate() {
            let abs = c.abs();
            match (n, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mono = match k {
                0 => String::new(),
                1 => "u".to_string(),
                _ => format!("u^{k}"),
            };
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

impl Serialize for MTClass {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (k, c) in &self.terms {
            seq.serialize_element(&(k, Int(c.clone())))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for MTClass {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let pairs: Vec<(i64, Int)> = Vec::deserialize(d)?;
        Ok(MTClass::from_terms(
            pairs.into_iter().map(|(k, c)| (k, c.0)),
        ))
    }
}
