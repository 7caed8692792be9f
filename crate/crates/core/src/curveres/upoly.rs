use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::ering::Rat;

/// Dense univariate polynomial over the rationals, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UPoly(Vec<Rat>);

impl UPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self(coeffs)
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|&c| Rat::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&Rat> {
        self.0.last()
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.0.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn monic(&self) -> UPoly {
        match self.lead() {
            None => self.clone(),
            Some(l) => UPoly(self.0.iter().map(|c| c / l).collect()),
        }
    }

    pub fn div_rem(&self, d: &UPoly) -> (UPoly, UPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead = d.lead().expect("nonzero").clone();
        let mut rem = self.0.clone();
        if rem.len() <= dd {
            return (UPoly(Vec::new()), self.clone());
        }
        let mut quot = vec![Rat::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / &lead;
            if !c.is_zero() {
                for (j, dc) in d.0.iter().enumerate() {
                    rem[k + j] -= &c * dc;
                }
            }
            quot[k] = c;
        }
        (UPoly::new(quot), UPoly::new(rem))
    }

    /// Monic greatest common divisor; zero only if both inputs are zero.
    pub fn gcd(&self, other: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Distinct rational roots, ascending.
    pub fn rational_roots(&self) -> Vec<Rat> {
        if self.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let ints = integer_coefficients(&self.0);
        let shift = ints.iter().position(|c| !c.is_zero()).expect("nonzero");
        let mut roots = Vec::new();
        if shift > 0 {
            roots.push(Rat::zero());
        }
        let core = &ints[shift..];
        if core.len() > 1 {
            let nums = divisors(&core[0]);
            let dens = divisors(core.last().expect("nonempty"));
            for p in &nums {
                for q in &dens {
                    for cand in [Rat::new(p.clone(), q.clone()), Rat::new(-p, q.clone())] {
                        if !roots.contains(&cand) && self.eval(&cand).is_zero() {
                            roots.push(cand);
                        }
                    }
                }
            }
        }
        roots.sort();
        roots
    }

    /// Rational roots when the polynomial splits completely over the
    /// rationals, `None` if some root is irrational.
    pub fn split_roots(&self) -> Option<Vec<Rat>> {
        let roots = self.rational_roots();
        let mut rest = self.clone();
        for r in &roots {
            let lin = UPoly::new(vec![-r, Rat::one()]);
            loop {
                let (q, rem) = rest.div_rem(&lin);
                if !rem.is_zero() {
                    break;
                }
                rest = q;
            }
        }
        (rest.degree() == Some(0)).then_some(roots)
    }
}

/// Primitive integer multiple of the coefficient vector.
fn integer_coefficients(coeffs: &[Rat]) -> Vec<BigInt> {
    let lcm = coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = coeffs
        .iter()
        .map(|c| (c * Rat::from_integer(lcm.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    ints.into_iter().map(|c| c / &g).collect()
}

/// Positive divisors by trial division.
fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut n = n.abs();
    let mut primes: Vec<(BigInt, u32)> = Vec::new();
    let mut p = BigInt::from(2);
    while &p * &p <= n {
        let mut k = 0;
        while (&n % &p).is_zero() {
            n /= &p;
            k += 1;
        }
        if k > 0 {
            primes.push((p.clone(), k));
        }
        p += 1;
    }
    if n > BigInt::one() {
        primes.push((n, 1));
    }
    let mut out = vec![BigInt::one()];
    for (p, k) in primes {
        let mut next = Vec::new();
        for d in &out {
            let mut pk = BigInt::one();
            for _ in 0..=k {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        out = next;
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rat {
        Rat::new(n.into(), d.into())
    }

    #[test]
    fn roots_of_products() {
        // (2t − 1)(t + 3)t² = 2t⁴ + 5t³ − 3t²
        let p = UPoly::from_ints(&[0, 0, -3, 5, 2]);
        assert_eq!(p.rational_roots(), vec![r(-3, 1), r(0, 1), r(1, 2)]);
        assert_eq!(p.split_roots().unwrap().len(), 3);
    }

    #[test]
    fn irrational_roots_detected() {
        let p = UPoly::from_ints(&[-2, 0, 1]);
        assert!(p.rational_roots().is_empty());
        assert!(p.split_roots().is_none());
        let q = UPoly::from_ints(&[0, -2, 0, 1]);
        assert_eq!(q.rational_roots(), vec![r(0, 1)]);
        assert!(q.split_roots().is_none());
    }

    #[test]
    fn gcd_and_division() {
        let a = UPoly::from_ints(&[-1, 0, 1]);
        let b = UPoly::from_ints(&[1, 2, 1]);
        assert_eq!(a.gcd(&b), UPoly::from_ints(&[1, 1]));
        let (q, rem) = b.div_rem(&UPoly::from_ints(&[1, 1]));
        assert_eq!(q, UPoly::from_ints(&[1, 1]));
        assert!(rem.is_zero());
        assert_eq!(UPoly::new(vec![]).gcd(&b), b);
    }

    #[test]
    fn constants_have_no_roots() {
        assert!(UPoly::from_ints(&[5]).rational_roots().is_empty());
        assert_eq!(UPoly::from_ints(&[5]).split_roots(), Some(vec![]));
        assert_eq!(divisors(&BigInt::from(12)).len(), 6);
    }
}
