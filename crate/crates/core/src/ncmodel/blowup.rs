use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::{validate, Component, NCModel, NcError, Stratum};
use crate::ering::{proj_or_empty, EPoly};

/// Where a piece of the center lies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PieceSite {
    Point(String),
    /// Outside every marked fiber; only the global classes see it.
    Away,
}

/// The part of the center inside one stratum `D°_{C∪J}`, over one site.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CenterPiece {
    pub extra: Stratum,
    pub site: PieceSite,
    pub class: EPoly,
}

/// A nonsingular center `Z` meeting the divisor with normal crossings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CenterSpec {
    pub codim: u32,
    /// Components containing `Z`.
    pub contains: Stratum,
    pub pieces: Vec<CenterPiece>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CenterFile {
    codim: u32,
    contains: Vec<String>,
    pieces: Vec<PieceFile>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PieceFile {
    #[serde(default)]
    extra: Vec<String>,
    at: String,
    class: EPoly,
}

impl CenterSpec {
    pub fn from_json(text: &str) -> Result<Self, NcError> {
        let file: CenterFile = serde_json::from_str(text)?;
        Ok(CenterSpec {
            codim: file.codim,
            contains: Stratum::new(file.contains),
            pieces: file
                .pieces
                .into_iter()
                .map(|p| CenterPiece {
                    extra: Stratum::new(p.extra),
                    site: match p.at.as_str() {
                        "away" => PieceSite::Away,
                        _ => PieceSite::Point(p.at),
                    },
                    class: p.class,
                })
                .collect(),
        })
    }

    pub fn to_json(&self) -> String {
        let file = CenterFile {
            codim: self.codim,
            contains: self.contains.to_vec(),
            pieces: self
                .pieces
                .iter()
                .map(|p| PieceFile {
                    extra: p.extra.to_vec(),
                    at: match &p.site {
                        PieceSite::Away => "away".to_string(),
                        PieceSite::Point(q) => q.clone(),
                    },
                    class: p.class.clone(),
                })
                .collect(),
        };
        serde_json::to_string(&file).expect("serializable")
    }
}

/// Class of the locus in `Pʳ` lying on exactly `k` of `e` hyperplanes in
/// general position.
pub fn arrangement_stratum_class(r: i64, e: i64, k: i64) -> Result<EPoly, NcError> {
    if r < 0 || k < 0 || k > e || e > r + 1 {
        return Err(NcError::ArrangementRange { r, e, k });
    }
    let class = if k < e {
        EPoly::lefschetz().pow((r + 1 - e) as u32) * EPoly::torus().pow((e - 1 - k) as u32)
    } else {
        // k = e: a linear subspace of dimension r − e, empty when e = r + 1
        proj_or_empty(r - e)
    };
    Ok(class)
}

fn check_center(model: &NCModel, center: &CenterSpec, new_id: &str) -> Result<(), NcError> {
    let bad = |msg: String| Err(NcError::MalformedCenter(msg));
    let n = model.ambient_dim;
    if center.codim < 2 || center.codim > n {
        return bad(format!("codimension {} outside 2..={n}", center.codim));
    }
    if center.contains.is_empty() {
        return bad("center must lie on at least one component".into());
    }
    if center.contains.len() > center.codim as usize {
        return bad(format!(
            "{} components contain a center of codimension {}",
            center.contains.len(),
            center.codim
        ));
    }
    if model.component(new_id).is_some() {
        return bad(format!("id {new_id} is already in use"));
    }
    for id in center.contains.ids() {
        if model.component(id).is_none() {
            return bad(format!("unknown component {id}"));
        }
    }
    for piece in &center.pieces {
        if !piece.extra.is_disjoint(&center.contains) {
            return bad(format!("piece {} overlaps the containing set", piece.extra));
        }
        if piece.extra.len() > (n - center.codim) as usize {
            return bad(format!("piece {} meets too many components", piece.extra));
        }
        let key = center.contains.union(&piece.extra);
        match &piece.site {
            PieceSite::Point(p) => {
                if !model.has_point(p) {
                    return bad(format!("unknown point {p}"));
                }
                if model.fiber_class(&key, p).is_none() {
                    return bad(format!("no stratum {key} over {p}"));
                }
            }
            PieceSite::Away if model.strata_total.is_none() => {
                return bad("away piece on a model without global classes".into());
            }
            PieceSite::Away => {}
        }
        if model.strata_total.is_some() && model.total_class(&key).is_none() {
            return bad(format!("no global stratum {key}"));
        }
    }
    Ok(())
}

/// Rewrites the stratum data for the blow-up of `W` along the center.
///
/// The exceptional divisor gets multiplicity `Σ_{ℓ∈C} m_ℓ` and discrepancy
/// `codim − 1 + Σ_{ℓ∈C} μ_ℓ`. Over each piece, the projectivized normal
/// bundle `Pʳ` is cut by the `|C|` proper transforms in general position.
pub fn blow_up(model: &NCModel, center: &CenterSpec, new_id: &str) -> Result<NCModel, NcError> {
    let violations = validate(model);
    if !violations.is_empty() {
        return Err(NcError::InvalidModel(violations));
    }
    check_center(model, center, new_id)?;

    let r = center.codim as i64 - 1;
    let e = center.contains.len() as i64;
    let mut mult = BigInt::from(0);
    let mut disc = Some(BigInt::from(r));
    for id in center.contains.ids() {
        let c = model.component(id).expect("checked");
        mult += &c.mult;
        disc = match (disc, &c.discrepancy) {
            (Some(a), Some(b)) => Some(a + b),
            _ => None,
        };
    }
    let mut out = model.clone();
    out.components.push(Component {
        id: new_id.to_string(),
        mult,
        discrepancy: disc,
    });
    out.canonicalize();

    let subsets = center.contains.subsets();
    for piece in &center.pieces {
        let old = center.contains.union(&piece.extra);
        let neg = -&piece.class;
        let mut apply = |target: Stratum, class: &EPoly| {
            if let PieceSite::Point(p) = &piece.site {
                out.add_fiber(target.clone(), p, class);
            }
            if out.strata_total.is_some() {
                out.add_total(target, class);
            }
        };
        apply(old, &neg);
        for k in &subsets {
            let fiber = arrangement_stratum_class(r, e, k.len() as i64)?;
            let target = k.union(&piece.extra).with(new_id);
            apply(target, &(&piece.class * &fiber));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncmodel::{naive_lift, psi, Alpha, Scope};

    fn piece(extra: &[&str], at: &str, class: EPoly) -> CenterPiece {
        CenterPiece {
            extra: Stratum::new(extra.iter().copied()),
            site: if at == "away" {
                PieceSite::Away
            } else {
                PieceSite::Point(at.into())
            },
            class,
        }
    }

    #[test]
    fn arrangement_examples() {
        let c = arrangement_stratum_class(2, 1, 0).unwrap();
        assert_eq!(c, EPoly::lefschetz().pow(2));
        assert_eq!(c.euler(), 1.into());
        let c = arrangement_stratum_class(1, 2, 0).unwrap();
        assert_eq!(c, EPoly::torus());
        assert_eq!(c.euler(), 0.into());
        assert_eq!(arrangement_stratum_class(2, 2, 2).unwrap(), EPoly::one());
        assert!(arrangement_stratum_class(1, 2, 2).unwrap().is_zero());
        assert!(arrangement_stratum_class(1, 3, 0).is_err());
        assert!(arrangement_stratum_class(1, 1, 2).is_err());
    }

    #[test]
    fn arrangement_classes_sum_to_projective_space() {
        // choose(e, k) strata of each type partition Pʳ
        for r in 0..5i64 {
            for e in 0..=r + 1 {
                let mut sum = EPoly::zero();
                let mut binom = 1i64;
                for k in 0..=e {
                    let c = arrangement_stratum_class(r, e, k).unwrap();
                    sum = sum + c.scale(&binom.into());
                    binom = binom * (e - k) / (k + 1);
                }
                assert_eq!(sum, proj_or_empty(r), "r={r} e={e}");
            }
        }
    }

    fn smooth_surface() -> NCModel {
        let mut m = NCModel::new(2);
        m.components
            .push(Component::new("X", 1).with_discrepancy(0));
        m.points.push("p".into());
        m.add_fiber(Stratum::single("X"), "p", &EPoly::one());
        m
    }

    #[test]
    fn point_on_smooth_curve() {
        let m = smooth_surface();
        let center = CenterSpec {
            codim: 2,
            contains: Stratum::single("X"),
            pieces: vec![piece(&[], "p", EPoly::one())],
        };
        let b = blow_up(&m, &center, "E").unwrap();
        let e = b.component("E").unwrap();
        assert_eq!(e.mult, 1.into());
        assert_eq!(e.discrepancy, Some(1.into()));
        assert_eq!(
            psi(&m, &Alpha::Identity).unwrap(),
            psi(&b, &Alpha::Identity).unwrap()
        );
        assert_eq!(
            b.fiber_class(&Stratum::single("E"), "p"),
            Some(&EPoly::lefschetz())
        );
        assert_eq!(
            b.fiber_class(&Stratum::new(["E", "X"]), "p"),
            Some(&EPoly::one())
        );
        assert!(b.fiber_class(&Stratum::single("X"), "p").is_none());
    }

    #[test]
    fn crossing_point() {
        let mut m = NCModel::new(2);
        m.components.push(Component::new("A", 2));
        m.components.push(Component::new("B", 3));
        m.points.push("p".into());
        m.add_fiber(Stratum::new(["A", "B"]), "p", &EPoly::one());
        let center = CenterSpec {
            codim: 2,
            contains: Stratum::new(["A", "B"]),
            pieces: vec![piece(&[], "p", EPoly::one())],
        };
        let b = blow_up(&m, &center, "E").unwrap();
        assert_eq!(b.component("E").unwrap().mult, 5.into());
        assert_eq!(b.component("E").unwrap().discrepancy, None);
        let before = psi(&m, &Alpha::Identity).unwrap();
        assert_eq!(before.int_at("p"), Some(0.into()));
        assert_eq!(before, psi(&b, &Alpha::Identity).unwrap());
        let scope = Scope::Fiber("p".into());
        assert_eq!(
            naive_lift(&m, &scope).unwrap(),
            naive_lift(&b, &scope).unwrap()
        );
    }

    #[test]
    fn away_pieces_leave_points_alone() {
        let mut m = crate::fixtures::embedded_point();
        let before = psi(&m, &Alpha::Identity).unwrap();
        let center = CenterSpec {
            codim: 2,
            contains: Stratum::single("L"),
            pieces: vec![piece(&[], "away", EPoly::one())],
        };
        let b = blow_up(&m, &center, "F").unwrap();
        assert_eq!(before, psi(&b, &Alpha::Identity).unwrap());
        assert_eq!(b.strata_fiber, m.strata_fiber);
        let total = naive_lift(&m, &Scope::Total).unwrap();
        assert_eq!(total, naive_lift(&b, &Scope::Total).unwrap());
        m.strata_total = None;
        assert!(matches!(
            blow_up(&m, &center, "F"),
            Err(NcError::MalformedCenter(_))
        ));
    }

    #[test]
    fn malformed_centers_rejected() {
        let m = smooth_surface();
        let mk = |codim, contains: &[&str], pieces| CenterSpec {
            codim,
            contains: Stratum::new(contains.iter().copied()),
            pieces,
        };
        let ok_piece = || vec![piece(&[], "p", EPoly::one())];
        let cases = [
            mk(1, &["X"], ok_piece()),
            mk(3, &["X"], ok_piece()),
            mk(2, &[], ok_piece()),
            mk(2, &["Y"], ok_piece()),
            mk(2, &["X"], vec![piece(&["X"], "p", EPoly::one())]),
            mk(2, &["X"], vec![piece(&[], "q", EPoly::one())]),
        ];
        for c in &cases {
            assert!(blow_up(&m, c, "E").is_err(), "{c:?}");
        }
        assert!(blow_up(&m, &mk(2, &["X"], ok_piece()), "X").is_err());
    }

    #[test]
    fn center_json_round_trip() {
        let c = CenterSpec {
            codim: 2,
            contains: Stratum::new(["A"]),
            pieces: vec![
                piece(&["B"], "p", EPoly::one()),
                piece(&[], "away", EPoly::lefschetz()),
            ],
        };
        let text = c.to_json();
        assert_eq!(CenterSpec::from_json(&text).unwrap(), c);
    }
}
