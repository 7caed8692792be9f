use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use super::resolve::{
    local_divisor_classes, milnor_from_psi, psi_at, resolve_local, LocalResolution,
};
use super::singular::{find_singular_points, local_equation, ProjPoint};
use super::{poly::Poly, CurveError};
use crate::ering::serde_int;

#[derive(Clone, Debug, Serialize)]
pub struct SingularPoint {
    pub point: ProjPoint,
    pub resolution: LocalResolution,
    /// Index of this point's first blow-up among `e_1..e_k`.
    pub offset: usize,
}

/// A divisor on the blown-up plane with its multiplicity in the pull-back of
/// the curve; `class` is in the basis `H, e_1..e_k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResolvedDivisor {
    pub label: String,
    pub mult: i64,
    pub class: Vec<i64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GlobalResolution {
    pub degree: u32,
    pub points: Vec<SingularPoint>,
    pub blowups: usize,
    /// Strict transform first, then the exceptional curves in blow-up order.
    pub divisors: Vec<ResolvedDivisor>,
}

pub fn resolve_projective(
    curve: &Poly,
    max_blowups: usize,
) -> Result<GlobalResolution, CurveError> {
    let points = find_singular_points(curve)?;
    let degree = curve.total_degree().expect("nonzero");
    let mut singular = Vec::new();
    let mut offset = 0;
    for p in points {
        let local = local_equation(curve, &p);
        let res = resolve_local(&local, max_blowups)?;
        let k = res.blowup_count;
        singular.push(SingularPoint {
            point: p,
            resolution: res,
            offset,
        });
        offset += k;
    }
    let k = offset;
    let mut strict = vec![0i64; k + 1];
    strict[0] = degree as i64;
    let mut divisors = Vec::new();
    for sp in &singular {
        let (exc, s) = local_divisor_classes(&sp.resolution);
        for (i, v) in s.iter().enumerate() {
            strict[1 + sp.offset + i] = *v;
        }
        for (node, row) in sp.resolution.nodes.iter().zip(exc) {
            let mut class = vec![0i64; k + 1];
            for (i, v) in row.iter().enumerate() {
                class[1 + sp.offset + i] = *v;
            }
            divisors.push(ResolvedDivisor {
                label: format!("E{}", sp.offset + node.id),
                mult: node.mult as i64,
                class,
            });
        }
    }
    divisors.insert(
        0,
        ResolvedDivisor {
            label: "S".into(),
            mult: 1,
            class: strict,
        },
    );
    Ok(GlobalResolution {
        degree,
        points: singular,
        blowups: k,
        divisors,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointTopology {
    pub point: ProjPoint,
    #[serde(with = "serde_int")]
    pub psi: BigInt,
    #[serde(with = "serde_int")]
    pub milnor: BigInt,
    pub branches: u64,
    #[serde(with = "serde_int")]
    pub delta: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CurveTopology {
    /// Arithmetic genus minus the δ-invariants; the geometric genus when the
    /// curve is irreducible.
    #[serde(with = "serde_int")]
    pub genus: BigInt,
    #[serde(with = "serde_int")]
    pub euler: BigInt,
    pub points: Vec<PointTopology>,
}

pub fn curve_topology(res: &GlobalResolution) -> Result<CurveTopology, CurveError> {
    let d = BigInt::from(res.degree);
    let mut genus = (&d - 1) * (&d - 2) / 2;
    let mut extra_branches = BigInt::zero();
    let mut points = Vec::new();
    for sp in &res.points {
        let mu = milnor_from_psi(&sp.resolution);
        let b = BigInt::from(sp.resolution.branch_count);
        let twice: BigInt = &mu + &b - 1;
        if twice.is_odd() {
            return Err(CurveError::NonIntegralDelta(sp.point.to_string()));
        }
        let delta = twice / 2;
        genus -= &delta;
        extra_branches += &b - 1;
        points.push(PointTopology {
            point: sp.point.clone(),
            psi: psi_at(&sp.resolution),
            milnor: mu,
            branches: sp.resolution.branch_count,
            delta,
        });
    }
    let euler = BigInt::from(2) - &genus * 2 - extra_branches;
    Ok(CurveTopology {
        genus,
        euler,
        points,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curveres::parse::parse_poly;
    use crate::curveres::resolve::DEFAULT_MAX_BLOWUPS;

    fn global(s: &str) -> GlobalResolution {
        let f = parse_poly(s, &["x", "y", "z"]).unwrap();
        resolve_projective(&f, DEFAULT_MAX_BLOWUPS).unwrap()
    }

    fn topo(s: &str) -> (i64, i64) {
        let t = curve_topology(&global(s)).unwrap();
        (t.genus.try_into().unwrap(), t.euler.try_into().unwrap())
    }

    #[test]
    fn cubic_topology() {
        assert_eq!(topo("y^2*z - x^2*(x + z)"), (0, 1));
        assert_eq!(topo("y^2*z - x^3"), (0, 2));
        assert_eq!(topo("y^2*z - x^3 - z^3"), (1, 0));
        assert_eq!(topo("x^2 + y^2 - z^2"), (0, 2));
    }

    #[test]
    fn reducible_curves() {
        // three lines: χ = 3·2 − 3
        assert_eq!(topo("x*y*z").1, 3);
        // conic and tangent line: χ = 2 + 2 − 1
        assert_eq!(topo("y*(y*z - x^2)").1, 3);
    }

    #[test]
    fn total_transform_identity() {
        for s in [
            "y^2*z - x^3",
            "y^2*z^2 - x^4 - y^4",
            "x*y*(x - y)*z + x^4 + y^4",
        ] {
            let g = global(s);
            let mut sum = vec![0i64; g.blowups + 1];
            for d in &g.divisors {
                for (acc, c) in sum.iter_mut().zip(&d.class) {
                    *acc += d.mult * c;
                }
            }
            let mut expected = vec![0i64; g.blowups + 1];
            expected[0] = g.degree as i64;
            assert_eq!(sum, expected, "{s}");
        }
    }
}
