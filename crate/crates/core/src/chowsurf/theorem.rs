use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use super::{
    csm_complement, csm_strata_class, gysin_restrict, pushforward_to_plane, ChowClass, ChowError,
    DivisorClass, SurfaceModel,
};
use crate::curveres::{
    curve_topology, resolve_projective, GlobalResolution, Poly, ProjPoint, DEFAULT_MAX_BLOWUPS,
};
use crate::ering::{serde_int, Rat};

#[derive(Clone, Debug, Serialize)]
pub struct PointRow {
    pub point: ProjPoint,
    #[serde(with = "serde_int")]
    pub psi: BigInt,
    #[serde(with = "serde_int")]
    pub mu: BigInt,
}

#[derive(Clone, Debug, Serialize)]
pub struct TheoremOneReport {
    pub degree: u32,
    pub lhs: ChowClass,
    pub rhs: ChowClass,
    pub equal: bool,
    #[serde(with = "serde_int::rat")]
    pub degree_lhs: Rat,
    #[serde(with = "serde_int::rat")]
    pub degree_rhs: Rat,
    #[serde(with = "serde_int")]
    #[serde(rename = "chi_X")]
    pub chi_x: BigInt,
    #[serde(with = "serde_int")]
    pub chi_general_fiber: BigInt,
    /// `χ(X) − Σ_p (1 − ψ(p))`
    #[serde(with = "serde_int")]
    pub chi_corrected: BigInt,
    pub points: Vec<PointRow>,
}

impl TheoremOneReport {
    /// Class equality plus both degree identities.
    pub fn passed(&self) -> bool {
        let fiber = Rat::from_integer(self.chi_general_fiber.clone());
        self.equal
            && self.degree_lhs == fiber
            && self.degree_rhs == fiber
            && self.degree_lhs == Rat::from_integer(self.chi_corrected.clone())
    }
}

fn surface_data(res: &GlobalResolution) -> (SurfaceModel, Vec<DivisorClass>, Vec<Rat>) {
    let s = SurfaceModel::new(res.blowups);
    let ds = res
        .divisors
        .iter()
        .map(|d| DivisorClass::from_ints(&d.class))
        .collect();
    let ws = res
        .divisors
        .iter()
        .map(|d| Rat::from_integer(d.mult.into()))
        .collect();
    (s, ds, ws)
}

/// The class of the specialization function on the resolution, pushed to
/// the plane.
pub fn psi_class(res: &GlobalResolution) -> Result<ChowClass, ChowError> {
    let (s, ds, ws) = surface_data(res);
    pushforward_to_plane(&s, &csm_strata_class(&s, &ds, &ws)?)
}

/// Compares the pushed-forward class of the specialization function with the
/// restriction of the class of the complement of a degree-`d` curve.
pub fn theorem_one_check(curve: &Poly) -> Result<TheoremOneReport, ChowError> {
    let res = resolve_projective(curve, DEFAULT_MAX_BLOWUPS)?;
    let topo = curve_topology(&res)?;
    let d = BigInt::from(res.degree);
    let p2 = SurfaceModel::plane();
    let dh = p2.hyperplane().scale(&d);

    let lhs = psi_class(&res)?;
    let rhs = gysin_restrict(&p2, &csm_complement(&p2, std::slice::from_ref(&dh))?, &dh)?;
    let corrections: BigInt = topo.points.iter().map(|p| BigInt::one() - &p.psi).sum();
    Ok(TheoremOneReport {
        degree: res.degree,
        equal: lhs == rhs,
        degree_lhs: lhs.pts.clone(),
        degree_rhs: rhs.pts.clone(),
        lhs,
        rhs,
        chi_general_fiber: &d * 3 - &d * &d,
        chi_corrected: &topo.euler - corrections,
        chi_x: topo.euler,
        points: topo
            .points
            .into_iter()
            .map(|p| PointRow {
                point: p.point,
                psi: p.psi,
                mu: p.milnor,
            })
            .collect(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct WmaReport {
    pub class: ChowClass,
    pub points: Vec<PointRow>,
}

/// `c_SM(1_X) − c_SM(ψ)` on the plane; a point class of degree `Σ μ_p` for
/// curves with isolated singularities.
pub fn wma_standin(curve: &Poly) -> Result<WmaReport, ChowError> {
    let res = resolve_projective(curve, DEFAULT_MAX_BLOWUPS)?;
    let topo = curve_topology(&res)?;
    let p2 = SurfaceModel::plane();
    let csm_x = ChowClass {
        top: BigInt::from(0),
        div: p2.hyperplane().scale(&BigInt::from(res.degree)),
        pts: Rat::from_integer(topo.euler.clone()),
    };
    // (−1)^{dim P²} = 1
    let class = csm_x - psi_class(&res)?;
    Ok(WmaReport {
        class,
        points: topo
            .points
            .into_iter()
            .map(|p| PointRow {
                point: p.point,
                psi: p.psi,
                mu: p.milnor,
            })
            .collect(),
    })
}
