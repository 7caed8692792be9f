//! Named test curves.

/// Local singularities at the origin, as polynomials in `x, y`.
pub fn local_curves() -> Vec<(String, String)> {
    let mut out = vec![
        ("node".to_string(), "y^2 - x^2".to_string()),
        ("cusp".to_string(), "y^2 - x^3".to_string()),
        ("tacnode".to_string(), "y^2 - x^4".to_string()),
    ];
    for n in 1..=6 {
        out.push((format!("A{n}"), format!("y^2 - x^{}", n + 1)));
    }
    out.push(("E6".into(), "y^3 - x^4".into()));
    out.push(("E8".into(), "y^3 - x^5".into()));
    for m in 2..=5 {
        out.push((format!("ordinary{m}"), ordinary_point(m)));
    }
    out
}

/// Product of the first `m` of the lines `x, y, x − y, x + y, x − 2y`.
pub fn ordinary_point(m: usize) -> String {
    const LINES: [&str; 5] = ["x", "y", "(x - y)", "(x + y)", "(x - 2*y)"];
    assert!((1..=LINES.len()).contains(&m));
    LINES[..m].join("*")
}

/// Projective curves in `x, y, z` with rational singular points.
pub fn projective_curves() -> Vec<(&'static str, &'static str)> {
    vec![
        ("nodal cubic", "y^2*z - x^2*(x + z)"),
        ("cuspidal cubic", "y^2*z - x^3"),
        ("conic and tangent line", "y*(y*z - x^2)"),
        ("tacnodal quartic", "y^2*z^2 - x^4 - y^4"),
        ("ordinary triple point quartic", "x*y*(x - y)*z + x^4 + y^4"),
        ("nodal quartic", "x^2*z^2 - y^2*z^2 + x^4 + y^4"),
        ("cusp quartic", "y^2*z^2 - x^3*z - x^4"),
        ("triangle", "x*y*z"),
        ("four general lines", "x*y*z*(x + y + z)"),
        ("three concurrent lines and a line", "x*y*(x - y)*z"),
        ("smooth conic", "x^2 + y^2 - z^2"),
        ("smooth cubic", "y^2*z - x^3 - z^3"),
    ]
}

/// Curves on which the class of ψ is compared with the restricted class of
/// the complement.
pub const CLASS_CHECK_CURVES: [&str; 4] = [
    "nodal cubic",
    "cuspidal cubic",
    "tacnodal quartic",
    "ordinary triple point quartic",
];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curveres::{
        curve_topology, parse_affine, parse_projective, resolve_local, resolve_projective,
        DEFAULT_MAX_BLOWUPS,
    };

    #[test]
    fn every_local_curve_resolves() {
        for (name, f) in local_curves() {
            let f = parse_affine(&f).unwrap();
            resolve_local(&f, DEFAULT_MAX_BLOWUPS).unwrap_or_else(|e| panic!("{name}: {e}"));
        }
    }

    #[test]
    fn every_projective_curve_resolves() {
        for (name, f) in projective_curves() {
            let f = parse_projective(f).unwrap();
            let res = resolve_projective(&f, DEFAULT_MAX_BLOWUPS)
                .unwrap_or_else(|e| panic!("{name}: {e}"));
            curve_topology(&res).unwrap_or_else(|e| panic!("{name}: {e}"));
        }
    }

    #[test]
    fn class_check_curves_are_in_the_corpus() {
        let names: Vec<_> = projective_curves().into_iter().map(|(n, _)| n).collect();
        for n in CLASS_CHECK_CURVES {
            assert!(names.contains(&n));
        }
    }
}
