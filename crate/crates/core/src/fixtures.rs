//! Hand-built normal-crossings models for the worked examples.
//!
//! The JSON files under `fixtures/` are the canonical serializations of these
//! builders; a test keeps them in sync.

use std::path::Path;

use num_bigint::BigInt;

use crate::ering::{std_class, EPoly, StdClass};
use crate::ncmodel::{Component, NCModel, Stratum};

fn uv() -> EPoly {
    EPoly::lefschetz()
}

fn pt() -> EPoly {
    EPoly::one()
}

fn p1() -> EPoly {
    EPoly::one() + uv()
}

/// `P¹` minus `r` points.
fn punctured_line(r: i64) -> EPoly {
    p1() - EPoly::constant(r)
}

fn model(dim: u32, comps: &[(&str, i64, Option<i64>)], points: &[&str]) -> NCModel {
    let mut m = NCModel::new(dim);
    for &(id, mult, disc) in comps {
        let mut c = Component::new(id, mult);
        c.discrepancy = disc.map(BigInt::from);
        m.components.push(c);
    }
    m.points = points.iter().map(|p| p.to_string()).collect();
    m
}

fn fiber(m: &mut NCModel, ids: &[&str], p: &str, class: EPoly) {
    m.add_fiber(Stratum::new(ids.iter().copied()), p, &class);
}

fn total(m: &mut NCModel, ids: &[&str], class: EPoly) {
    m.add_total(Stratum::new(ids.iter().copied()), &class);
}

fn cusp_strata(m: &mut NCModel) {
    fiber(m, &["E1"], "p", punctured_line(1));
    fiber(m, &["E2"], "p", punctured_line(1));
    fiber(m, &["E3"], "p", punctured_line(3));
    fiber(m, &["E1", "E3"], "p", pt());
    fiber(m, &["E2", "E3"], "p", pt());
    fiber(m, &["E3", "S"], "p", pt());
}

/// Embedded resolution of the cusp `y² = x³`.
pub fn cusp() -> NCModel {
    let mut m = model(
        2,
        &[
            ("E1", 2, Some(1)),
            ("E2", 3, Some(2)),
            ("E3", 6, Some(4)),
            ("S", 1, Some(0)),
        ],
        &["p"],
    );
    cusp_strata(&mut m);
    m
}

/// A cusp sitting on the base locus of a pencil: same configuration, but the
/// multiplicities come from the resolution of the total space.
pub fn base_locus_cusp() -> NCModel {
    let mut m = model(
        3,
        &[
            ("E1", 1, None),
            ("E2", 1, None),
            ("E3", 3, None),
            ("S", 1, None),
        ],
        &["p"],
    );
    cusp_strata(&mut m);
    m
}

/// Ordinary node: one blow-up separates the branches.
pub fn node() -> NCModel {
    let mut m = model(2, &[("E1", 2, Some(1)), ("S", 1, Some(0))], &["p"]);
    fiber(&mut m, &["E1"], "p", punctured_line(2));
    fiber(&mut m, &["E1", "S"], "p", EPoly::constant(2));
    m
}

pub fn smooth_point() -> NCModel {
    let mut m = model(2, &[("S", 1, Some(0))], &["p"]);
    fiber(&mut m, &["S"], "p", pt());
    m
}

/// Resolution of the `A_n` surface singularity `x^{n+1} = yt` over `t = 0`:
/// the proper transform `S` (multiplicity `n+1`) meets the end of a chain
/// `C1 – … – Cn` of lines with multiplicities `n, …, 1`.
pub fn a_chain(n: usize) -> NCModel {
    assert!(n >= 1);
    let ids: Vec<String> = (1..=n).map(|i| format!("C{i}")).collect();
    let mut comps = vec![("S".to_string(), n as i64 + 1)];
    comps.extend(
        ids.iter()
            .enumerate()
            .map(|(i, c)| (c.clone(), (n - i) as i64)),
    );
    let mut m = NCModel::new(2);
    for (id, mult) in comps {
        m.components.push(Component::new(id, mult));
    }
    m.points = vec!["generic".into(), "p".into()];
    for (i, c) in ids.iter().enumerate() {
        // every chain member meets two neighbours except the last
        let contacts = if i + 1 == n { 1 } else { 2 };
        fiber(&mut m, &[c], "p", punctured_line(contacts));
    }
    fiber(&mut m, &["C1", "S"], "p", pt());
    for w in ids.windows(2) {
        fiber(&mut m, &[&w[0], &w[1]], "p", pt());
    }
    fiber(&mut m, &["S"], "generic", pt());
    m
}

/// A line `L` with an embedded point `p`, resolved by one blow-up of the
/// plane; the exceptional curve carries multiplicity 2.
pub fn embedded_point() -> NCModel {
    let mut m = model(
        2,
        &[("E", 2, Some(1)), ("L", 1, Some(0))],
        &["generic", "p"],
    );
    fiber(&mut m, &["E"], "p", uv());
    fiber(&mut m, &["E", "L"], "p", pt());
    fiber(&mut m, &["L"], "generic", pt());
    total(&mut m, &["L"], uv());
    total(&mut m, &["E"], uv());
    total(&mut m, &["E", "L"], pt());
    m
}

/// Three concurrent lines in `P³` spanning the space, resolved by blowing up
/// the point (`E0`) and then the three lines (`E1..E3`).
pub fn three_lines() -> NCModel {
    let mut m = model(
        3,
        &[
            ("E0", 2, Some(2)),
            ("E1", 1, Some(1)),
            ("E2", 1, Some(1)),
            ("E3", 1, Some(1)),
        ],
        &["generic", "p"],
    );
    // Bl₃P² minus three disjoint lines
    let e0 = std_class(StdClass::Proj(2)).expect("valid") - EPoly::constant(3);
    fiber(&mut m, &["E0"], "p", e0.clone());
    total(&mut m, &["E0"], e0);
    for e in ["E1", "E2", "E3"] {
        fiber(&mut m, &["E0", e], "p", p1());
        total(&mut m, &["E0", e], p1());
        total(&mut m, &[e], p1() * uv());
    }
    fiber(&mut m, &["E1"], "generic", p1());
    m
}

/// Three concurrent coplanar lines in `P³`. Only the value at the point is
/// fixed in advance; the strata below are a reconstruction consistent with it.
pub fn three_lines_coplanar() -> NCModel {
    let mut m = model(
        3,
        &[
            ("E0", 1, Some(2)),
            ("F1", 2, Some(3)),
            ("F2", 3, Some(4)),
            ("G1", 1, Some(1)),
            ("G2", 1, Some(1)),
            ("G3", 1, Some(1)),
        ],
        &["generic", "p"],
    );
    fiber(&mut m, &["E0"], "p", uv().pow(2));
    fiber(&mut m, &["F1"], "p", p1() * EPoly::torus());
    fiber(&mut m, &["F2"], "p", punctured_line(3) * uv());
    fiber(&mut m, &["E0", "F1"], "p", p1());
    fiber(&mut m, &["F1", "F2"], "p", p1());
    for g in ["G1", "G2", "G3"] {
        fiber(&mut m, &["F2", g], "p", p1());
    }
    fiber(&mut m, &["G1"], "generic", p1());
    m
}

/// Cone over a smooth plane curve `C` of degree `m`, resolved by blowing up
/// the vertex: the exceptional plane has multiplicity `m` and meets the
/// proper transform along `C`.
pub fn cone(m: u32) -> NCModel {
    assert!(m >= 2);
    let genus = ((m - 1) * (m - 2) / 2) as i64;
    let curve = std_class(StdClass::Curve(genus)).expect("valid");
    let plane = std_class(StdClass::Proj(2)).expect("valid");
    let mut out = model(
        3,
        &[("E", m as i64, Some(2)), ("X", 1, Some(0))],
        &["generic", "p"],
    );
    fiber(&mut out, &["E"], "p", &plane - &curve);
    fiber(&mut out, &["E", "X"], "p", curve.clone());
    fiber(&mut out, &["X"], "generic", pt());
    total(&mut out, &["E"], &plane - &curve);
    total(&mut out, &["X"], &curve * &uv());
    total(&mut out, &["E", "X"], curve);
    out
}

/// Every shipped fixture with its file stem.
pub fn all() -> Vec<(String, NCModel)> {
    let mut out = vec![
        ("cusp".to_string(), cusp()),
        ("base_locus_cusp".to_string(), base_locus_cusp()),
        ("node".to_string(), node()),
        ("smooth_point".to_string(), smooth_point()),
        ("embedded_point".to_string(), embedded_point()),
        ("three_lines".to_string(), three_lines()),
        ("three_lines_coplanar".to_string(), three_lines_coplanar()),
    ];
    out.extend((1..=6).map(|n| (format!("a{n}"), a_chain(n))));
    out.extend((2..=4).map(|m| (format!("cone_m{m}"), cone(m))));
    out
}

/// Writes every fixture as `<dir>/<stem>.json`.
pub fn write_all(dir: &Path) -> std::io::Result<()> {
    std::fs::create_dir_all(dir)?;
    for (name, m) in all() {
        std::fs::write(dir.join(format!("{name}.json")), m.to_json())?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncmodel::validate;

    #[test]
    fn fixtures_are_valid() {
        for (name, m) in all() {
            assert!(validate(&m).is_empty(), "{name}: {:?}", validate(&m));
        }
    }

    #[test]
    fn shipped_files_match_builders() {
        let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures");
        for (name, m) in all() {
            let path = dir.join(format!("{name}.json"));
            let text = std::fs::read_to_string(&path)
                .unwrap_or_else(|e| panic!("{}: {e}", path.display()));
            assert_eq!(text, m.to_json(), "{name} is out of date");
            assert_eq!(NCModel::from_json(&text).unwrap(), {
                let mut c = m.clone();
                c.canonicalize();
                c
            });
        }
    }
}
