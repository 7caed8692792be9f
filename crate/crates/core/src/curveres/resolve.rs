use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use super::poly::Poly;
use super::CurveError;
use crate::ering::{EPoly, Rat};
use crate::ncmodel::{Component, NCModel, Stratum};

pub const DEFAULT_MAX_BLOWUPS: usize = 64;

/// One exceptional curve of the embedded resolution.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResolutionNode {
    /// 1-based creation index.
    pub id: usize,
    /// Multiplicity in the total transform of the curve.
    pub mult: u64,
    /// Coefficient in the relative canonical divisor.
    pub discrepancy: u64,
    /// Points where it meets the rest of the total transform.
    pub contacts: u64,
    /// Multiplicity of the strict transform at the center.
    pub strict_mult: u64,
    /// Earlier exceptional curves passing through the center.
    pub center_on: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalResolution {
    pub nodes: Vec<ResolutionNode>,
    pub branch_count: u64,
    pub mult_sequence: Vec<u64>,
    pub blowup_count: usize,
    /// Intersection points between pairs of exceptional curves.
    pub edges: Vec<(usize, usize, u64)>,
    /// Intersection points of each exceptional curve with the strict transform.
    pub strict_edges: Vec<(usize, u64)>,
}

/// Local state at a point: the strict transform, and which exceptional
/// curves (if any) are the axes `{x = 0}` and `{y = 0}`.
struct Site {
    f: Poly,
    on_x0: Option<usize>,
    on_y0: Option<usize>,
}

struct Resolver {
    nodes: Vec<ResolutionNode>,
    branches: u64,
    edges: BTreeMap<(usize, usize), u64>,
    strict_edges: BTreeMap<usize, u64>,
    max_blowups: usize,
}

fn x() -> Poly {
    Poly::var(2, 0)
}

fn y() -> Poly {
    Poly::var(2, 1)
}

impl Resolver {
    fn edge(&mut self, a: usize, b: usize) {
        *self.edges.entry((a.min(b), a.max(b))).or_default() += 1;
    }

    fn visit(&mut self, site: Site) -> Result<(), CurveError> {
        let m = site.f.order().ok_or(CurveError::ZeroPolynomial)?;
        if m == 0 {
            return Ok(());
        }
        let through: Vec<usize> = [site.on_x0, site.on_y0].into_iter().flatten().collect();
        if m == 1 && through.len() <= 1 {
            let dx = site.f.coeff(&[1, 0]);
            let dy = site.f.coeff(&[0, 1]);
            let transverse = match (site.on_x0, site.on_y0) {
                (Some(_), None) => !dy.is_zero(),
                (None, Some(_)) => !dx.is_zero(),
                _ => true,
            };
            if transverse {
                self.branches += 1;
                if let Some(&e) = through.first() {
                    *self.strict_edges.entry(e).or_default() += 1;
                }
                return Ok(());
            }
        }
        self.blow_up(site, m)
    }

    fn blow_up(&mut self, site: Site, m: u32) -> Result<(), CurveError> {
        if self.nodes.len() >= self.max_blowups {
            return Err(CurveError::MaxIterations(self.max_blowups));
        }
        let id = self.nodes.len() + 1;
        let through: Vec<usize> = [site.on_x0, site.on_y0].into_iter().flatten().collect();
        let node_of = |i: usize| &self.nodes[i - 1];
        let mult = m as u64 + through.iter().map(|&i| node_of(i).mult).sum::<u64>();
        let discrepancy = 1 + through.iter().map(|&i| node_of(i).discrepancy).sum::<u64>();

        // Tangent directions [1:t] from the lowest form, plus [0:1] when the
        // form is divisible by x.
        let lowest = site.f.homogeneous_part(m);
        let slope_poly = lowest
            .compose(&[Poly::one(2), y()])
            .to_univariate(1)
            .expect("one variable");
        let slopes = slope_poly
            .split_roots()
            .ok_or(CurveError::IrrationalInfinitelyNearPoint)?;
        let vertical = lowest.coeff(&[0, m]).is_zero();

        let mut contact_points = slopes.len() + usize::from(vertical);
        if site.on_x0.is_some() && !vertical {
            contact_points += 1;
        }
        if site.on_y0.is_some() && !slopes.iter().any(Zero::is_zero) {
            contact_points += 1;
        }
        self.nodes.push(ResolutionNode {
            id,
            mult,
            discrepancy,
            contacts: contact_points as u64,
            strict_mult: m as u64,
            center_on: through.clone(),
        });
        if let Some(a) = site.on_x0 {
            if !vertical {
                self.edge(id, a);
            }
        }
        if let Some(b) = site.on_y0 {
            if !slopes.iter().any(Zero::is_zero) {
                self.edge(id, b);
            }
        }

        for t in &slopes {
            // x = X, y = X(Y + t)
            let shifted = &y() + &Poly::constant(2, t.clone());
            let g = site
                .f
                .compose(&[x(), &x() * &shifted])
                .div_var_power(0, m)
                .expect("strict transform");
            let on_y0 = if t.is_zero() { site.on_y0 } else { None };
            self.visit(Site {
                f: g,
                on_x0: Some(id),
                on_y0,
            })?;
        }
        if vertical {
            // x = XY, y = Y
            let g = site
                .f
                .compose(&[&x() * &y(), y()])
                .div_var_power(1, m)
                .expect("strict transform");
            self.visit(Site {
                f: g,
                on_x0: site.on_x0,
                on_y0: Some(id),
            })?;
        }
        Ok(())
    }
}

/// Embedded resolution of `f` at the origin by point blow-ups.
pub fn resolve_local(f: &Poly, max_blowups: usize) -> Result<LocalResolution, CurveError> {
    if f.nvars() != 2 {
        return Err(CurveError::Parse("expected a polynomial in x, y".into()));
    }
    if f.is_zero() {
        return Err(CurveError::ZeroPolynomial);
    }
    if !f.eval(&[Rat::zero(), Rat::zero()]).is_zero() {
        return Err(CurveError::NotOnCurve);
    }
    let mut r = Resolver {
        nodes: Vec::new(),
        branches: 0,
        edges: BTreeMap::new(),
        strict_edges: BTreeMap::new(),
        max_blowups,
    };
    r.visit(Site {
        f: f.clone(),
        on_x0: None,
        on_y0: None,
    })?;
    Ok(LocalResolution {
        mult_sequence: r.nodes.iter().map(|n| n.strict_mult).collect(),
        blowup_count: r.nodes.len(),
        nodes: r.nodes,
        branch_count: r.branches,
        edges: r.edges.into_iter().map(|((a, b), k)| (a, b, k)).collect(),
        strict_edges: r.strict_edges.into_iter().collect(),
    })
}

/// `Σ_i m_i (2 − r_i)`, or 1 at a smooth point.
pub fn psi_at(res: &LocalResolution) -> BigInt {
    if res.nodes.is_empty() {
        return BigInt::one();
    }
    res.nodes
        .iter()
        .map(|n| BigInt::from(n.mult) * (2 - n.contacts as i64))
        .sum()
}

pub fn milnor_from_psi(res: &LocalResolution) -> BigInt {
    BigInt::one() - psi_at(res)
}

pub fn node_label(i: usize) -> String {
    format!("E{i}")
}

pub const STRICT_LABEL: &str = "S";
pub const POINT_LABEL: &str = "p";

/// The resolution as a surface NC model over the marked point `p`.
pub fn to_ncmodel(res: &LocalResolution) -> NCModel {
    let mut m = NCModel::new(2);
    for n in &res.nodes {
        m.components
            .push(Component::new(node_label(n.id), n.mult).with_discrepancy(n.discrepancy));
    }
    m.components
        .push(Component::new(STRICT_LABEL, 1).with_discrepancy(0));
    m.points.push(POINT_LABEL.into());
    let p1 = EPoly::one() + EPoly::lefschetz();
    for n in &res.nodes {
        let class = &p1 - &EPoly::constant(n.contacts as i64);
        m.add_fiber(Stratum::single(node_label(n.id)), POINT_LABEL, &class);
    }
    for &(a, b, k) in &res.edges {
        let s = Stratum::new([node_label(a), node_label(b)]);
        m.add_fiber(s, POINT_LABEL, &EPoly::constant(k as i64));
    }
    for &(a, k) in &res.strict_edges {
        let s = Stratum::new([node_label(a), STRICT_LABEL.to_string()]);
        m.add_fiber(s, POINT_LABEL, &EPoly::constant(k as i64));
    }
    if res.nodes.is_empty() {
        m.add_fiber(Stratum::single(STRICT_LABEL), POINT_LABEL, &EPoly::one());
    }
    m.canonicalize();
    m
}

/// Exceptional and strict-transform classes in the basis `e_1..e_k` of the
/// blow-ups (the `H` part is added by the caller).
pub fn local_divisor_classes(res: &LocalResolution) -> (Vec<Vec<i64>>, Vec<i64>) {
    let k = res.nodes.len();
    let mut exceptional = vec![vec![0i64; k]; k];
    for (j, row) in exceptional.iter_mut().enumerate() {
        row[j] = 1;
    }
    for n in &res.nodes {
        for &j in &n.center_on {
            exceptional[j - 1][n.id - 1] -= 1;
        }
    }
    let strict = res.nodes.iter().map(|n| -(n.strict_mult as i64)).collect();
    (exceptional, strict)
}
