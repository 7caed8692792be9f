use std::fmt;

use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use super::groebner::{groebner_basis, leading_exponents};
use super::poly::Poly;
use super::upoly::UPoly;
use super::CurveError;
use crate::ering::{format_rat, Rat};

/// A rational point of the projective plane, scaled so that its last nonzero
/// coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ProjPoint(pub [Rat; 3]);

impl ProjPoint {
    pub fn new(x: Rat, y: Rat, z: Rat) -> Self {
        let coords = [x, y, z];
        let last = coords
            .iter()
            .rev()
            .find(|c| !c.is_zero())
            .expect("not all coordinates zero")
            .clone();
        ProjPoint(coords.map(|c| c / &last))
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [x, y, z] = &self.0;
        write!(f, "({}:{}:{})", format_rat(x), format_rat(y), format_rat(z))
    }
}

impl Serialize for ProjPoint {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

fn rat(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

/// Singular points of the projective curve `F(x, y, z) = 0`, all of which
/// must be rational.
pub fn find_singular_points(curve: &Poly) -> Result<Vec<ProjPoint>, CurveError> {
    if curve.nvars() != 3 || !curve.is_homogeneous() {
        return Err(CurveError::NotHomogeneous);
    }
    if curve.total_degree().unwrap_or(0) == 0 {
        return Err(CurveError::ZeroPolynomial);
    }
    let grad: Vec<Poly> = (0..3).map(|i| curve.derivative(i)).collect();
    let mut points = Vec::new();

    // chart z = 1
    let (x2, y2) = (Poly::var(2, 0), Poly::var(2, 1));
    let affine: Vec<Poly> = grad
        .iter()
        .map(|g| g.compose(&[x2.clone(), y2.clone(), Poly::one(2)]))
        .collect();
    let gb = groebner_basis(&affine);
    let unit = gb.len() == 1 && gb[0] == Poly::one(2);
    if !unit {
        let leads: Vec<Vec<u32>> = gb.iter().filter_map(leading_exponents).collect();
        let pure_y = leads.iter().any(|e| e[0] == 0 && e[1] > 0);
        let pure_x = leads.iter().any(|e| e[1] == 0 && e[0] > 0);
        if !(pure_x && pure_y) {
            return Err(CurveError::NotSquarefree);
        }
        let elim = gb
            .iter()
            .find_map(|g| g.to_univariate(0))
            .expect("zero-dimensional ideal has an eliminant");
        let xs = elim
            .split_roots()
            .ok_or(CurveError::IrrationalSingularPoint)?;
        for x0 in xs {
            let mut g_y = UPoly::new(Vec::new());
            for g in &gb {
                let spec = g
                    .compose(&[Poly::constant(2, x0.clone()), y2.clone()])
                    .to_univariate(1)
                    .expect("one variable");
                g_y = g_y.gcd(&spec);
            }
            let ys = g_y
                .split_roots()
                .ok_or(CurveError::IrrationalSingularPoint)?;
            points.extend(
                ys.into_iter()
                    .map(|y0| ProjPoint::new(x0.clone(), y0, rat(1))),
            );
        }
    }

    // line z = 0, chart y = 1
    let t = Poly::var(1, 0);
    let mut at_infinity = UPoly::new(Vec::new());
    for g in &grad {
        let u = g
            .compose(&[t.clone(), Poly::one(1), Poly::zero(1)])
            .to_univariate(0)
            .expect("one variable");
        at_infinity = at_infinity.gcd(&u);
    }
    if at_infinity.is_zero() {
        return Err(CurveError::NotSquarefree);
    }
    let xs = at_infinity
        .split_roots()
        .ok_or(CurveError::IrrationalSingularPoint)?;
    points.extend(xs.into_iter().map(|x0| ProjPoint::new(x0, rat(1), rat(0))));

    // the point (1:0:0)
    let corner = [Rat::one(), Rat::zero(), Rat::zero()];
    if grad.iter().all(|g| g.eval(&corner).is_zero()) {
        points.push(ProjPoint::new(rat(1), rat(0), rat(0)));
    }
    points.sort();
    Ok(points)
}

/// Moves `point` to the origin of an affine chart containing it.
pub fn local_equation(curve: &Poly, point: &ProjPoint) -> Poly {
    let [a, b, c] = &point.0;
    let (u, v) = (Poly::var(2, 0), Poly::var(2, 1));
    let shift = |p: &Poly, r: &Rat| p + &Poly::constant(2, r.clone());
    let subs = if !c.is_zero() {
        [shift(&u, a), shift(&v, b), Poly::one(2)]
    } else if !b.is_zero() {
        [shift(&u, a), Poly::one(2), v]
    } else {
        [Poly::one(2), u, v]
    };
    curve.compose(&subs)
}
