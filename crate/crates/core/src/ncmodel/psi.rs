use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use super::{Alpha, NCModel, NcError, Stratum};
use crate::ering::{format_rat, EPoly, MTClass, Rat};

/// Integer values on strata of the divisor.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StratumFunction(pub BTreeMap<Stratum, BigInt>);

impl StratumFunction {
    pub fn get(&self, s: &Stratum) -> BigInt {
        self.0.get(s).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.0.values().all(Zero::is_zero)
    }
}

/// Rational values at the marked points of a model.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BucketFunction(pub BTreeMap<String, Rat>);

impl BucketFunction {
    pub fn get(&self, p: &str) -> Option<&Rat> {
        self.0.get(p)
    }

    /// Value at `p` as an integer, if present and integral.
    pub fn int_at(&self, p: &str) -> Option<BigInt> {
        self.0
            .get(p)
            .filter(|r| r.is_integer())
            .map(|r| r.to_integer())
    }

    pub fn is_integral(&self) -> bool {
        self.0.values().all(|r| r.is_integer())
    }
}

impl fmt::Display for BucketFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(p, v)| format!("{p} ↦ {}", format_rat(v)))
            .collect();
        f.write_str(&parts.join(", "))
    }
}

impl Serialize for BucketFunction {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (p, v) in &self.0 {
            map.serialize_entry(p, &format_rat(v))?;
        }
        map.end()
    }
}

/// Where a class is evaluated: globally or over one marked point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scope {
    Total,
    Fiber(String),
}

impl Scope {
    pub fn parse(s: &str) -> Option<Scope> {
        match s {
            "total" => Some(Scope::Total),
            _ => s
                .strip_prefix("fiber:")
                .map(|p| Scope::Fiber(p.to_string())),
        }
    }
}

impl fmt::Display for Scope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scope::Total => f.write_str("total"),
            Scope::Fiber(p) => write!(f, "fiber:{p}"),
        }
    }
}

/// `α(m_ℓ)` on each open component stratum, zero on intersections.
pub fn psi_strata(model: &NCModel, alpha: &Alpha) -> Result<StratumFunction, NcError> {
    let mut out = BTreeMap::new();
    for s in model.declared_strata() {
        if s.len() >= 2 {
            out.insert(s, BigInt::zero());
        }
    }
    for c in &model.components {
        out.insert(Stratum::single(&c.id), alpha.apply(&c.mult)?);
    }
    Ok(StratumFunction(out))
}

/// Euler-characteristic pushforward to the marked points.
pub fn pushforward(model: &NCModel, f: &StratumFunction) -> BucketFunction {
    let weights: BTreeMap<Stratum, Rat> =
        f.0.iter()
            .map(|(s, v)| (s.clone(), Rat::from_integer(v.clone())))
            .collect();
    pushforward_rational(model, |s| weights.get(s).cloned())
}

fn pushforward_rational<F>(model: &NCModel, weight: F) -> BucketFunction
where
    F: Fn(&Stratum) -> Option<Rat>,
{
    let mut out: BTreeMap<String, Rat> = model
        .points
        .iter()
        .map(|p| (p.clone(), Rat::zero()))
        .collect();
    for ((s, p), class) in &model.strata_fiber {
        if let (Some(w), Some(acc)) = (weight(s), out.get_mut(p)) {
            *acc += w * Rat::from_integer(class.euler());
        }
    }
    BucketFunction(out)
}

pub fn psi(model: &NCModel, alpha: &Alpha) -> Result<BucketFunction, NcError> {
    Ok(pushforward(model, &psi_strata(model, alpha)?))
}

fn scoped_class(model: &NCModel, s: &Stratum, scope: &Scope) -> Option<EPoly> {
    match scope {
        Scope::Total => model.total_class(s).cloned(),
        Scope::Fiber(p) => model.fiber_class(s, p).cloned(),
    }
}

fn check_scope(model: &NCModel, scope: &Scope) -> Result<(), NcError> {
    match scope {
        Scope::Total if model.strata_total.is_none() => Err(NcError::MissingTotals),
        Scope::Fiber(p) if !model.has_point(p) => Err(NcError::UnknownPoint(p.clone())),
        _ => Ok(()),
    }
}

/// `Σ_ℓ α(m_ℓ)·[D_ℓ°]` reduced modulo the torus class.
pub fn motivic_psi(model: &NCModel, alpha: &Alpha, scope: &Scope) -> Result<MTClass, NcError> {
    check_scope(model, scope)?;
    let mut sum = EPoly::zero();
    for c in &model.components {
        let weight = alpha.apply(&c.mult)?;
        if let Some(class) = scoped_class(model, &Stratum::single(&c.id), scope) {
            sum = sum + class.scale(&weight);
        }
    }
    Ok(sum.mod_torus())
}

/// `Σ_{|I|>0} (−T)^{|I|−1}·[D_I°]`, kept as a two-variable polynomial.
pub fn naive_lift(model: &NCModel, scope: &Scope) -> Result<EPoly, NcError> {
    check_scope(model, scope)?;
    let minus_torus = -EPoly::torus();
    let mut sum = EPoly::zero();
    for s in model.declared_strata() {
        if let Some(class) = scoped_class(model, &s, scope) {
            sum = sum + minus_torus.pow(s.len() as u32 - 1) * class;
        }
    }
    Ok(sum)
}

fn discrepancy_weights(model: &NCModel) -> Result<BTreeMap<String, Rat>, NcError> {
    model
        .components
        .iter()
        .map(|c| {
            let d = c
                .discrepancy
                .clone()
                .ok_or_else(|| NcError::MissingDiscrepancy(c.id.clone()))?;
            Ok((c.id.clone(), Rat::from_integer(d + 1)))
        })
        .collect()
}

/// `1/∏_{k∈K}(1+μ_k)`.
fn inverse_product(one_plus: &BTreeMap<String, Rat>, s: &Stratum) -> Option<Rat> {
    let mut prod = Rat::one();
    for id in s.ids() {
        prod *= one_plus.get(id)?;
    }
    Some(prod.recip())
}

/// Milnor-type function from discrepancies:
/// `(−1)^{dim X}·d_*(Σ_ℓ (m_ℓ − 1/(1+μ_ℓ))·1_{D_ℓ°} − Σ_{|K|≥2} 1_{D_K°}/∏(1+μ_k))`.
pub fn behrend_mu(model: &NCModel, dim_x: Option<i64>) -> Result<BucketFunction, NcError> {
    let one_plus = discrepancy_weights(model)?;
    let dim_x = dim_x.unwrap_or(model.ambient_dim as i64 - 1);
    let sign = if dim_x.rem_euclid(2) == 0 {
        Rat::one()
    } else {
        -Rat::one()
    };
    let out = pushforward_rational(model, |s| {
        let inv = inverse_product(&one_plus, s)?;
        let w = if s.len() == 1 {
            let id = s.ids().next()?;
            Rat::from_integer(model.component(id)?.mult.clone()) - inv
        } else {
            -inv
        };
        Some(&sign * w)
    });
    Ok(out)
}

/// `d_*(Σ_{|K|≥1} 1_{D_K°}/∏(1+μ_k))`, identically one on genuine resolutions.
pub fn unit_reconstruction(model: &NCModel) -> Result<BucketFunction, NcError> {
    let one_plus = discrepancy_weights(model)?;
    Ok(pushforward_rational(model, |s| {
        inverse_product(&one_plus, s)
    }))
}
