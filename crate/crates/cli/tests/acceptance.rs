//! The acceptance gate: one PASS/FAIL line per criterion, exact comparisons.

use std::path::{Path, PathBuf};
use std::process::Command;

use num_bigint::BigInt;
use psikit::chowsurf::{
    csm_complement, csm_strata_class, gysin_restrict, pushforward_to_plane, theorem_one_check,
    ChowClass, DivisorClass, SurfaceModel,
};
use psikit::corpus::{local_curves, ordinary_point, projective_curves, CLASS_CHECK_CURVES};
use psikit::curveres::{
    milnor_from_psi, milnor_oracle, parse_affine, parse_projective, psi_at, resolve_local,
    resolve_projective, to_ncmodel, DEFAULT_MAX_BLOWUPS,
};
use psikit::ering::{rat_from_int, std_class, EPoly, Rat, StdClass};
use psikit::ncmodel::fuzz::check_invariance;
use psikit::ncmodel::{behrend_mu, motivic_psi, psi, unit_reconstruction, Alpha, NCModel, Scope};

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn fixture(stem: &str) -> Result<NCModel, String> {
    let path: PathBuf = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(format!("{stem}.json"));
    let text = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    NCModel::from_json(&text).map_err(|e| format!("{stem}: {e}"))
}

fn psi_value(model: &NCModel, alpha: &Alpha, p: &str) -> Result<Rat, String> {
    let f = psi(model, alpha).map_err(|e| e.to_string())?;
    f.get(p).cloned().ok_or_else(|| format!("no value at {p}"))
}

fn int(n: i64) -> Rat {
    rat_from_int(n)
}

fn ac01_cusp() -> Check {
    let out = Command::new(env!("CARGO_BIN_EXE_psikit"))
        .args(["psi-curve", "--poly", "y^2 - x^3", "--format", "json"])
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.success(), || {
        format!("exit {:?}", out.status.code())
    })?;
    let r: serde_json::Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    ensure(r["multiplicities"] == serde_json::json!([2, 3, 6]), || {
        format!("multiplicities {}", r["multiplicities"])
    })?;
    ensure(r["psi"] == "-1", || format!("psi {}", r["psi"]))?;
    ensure(r["milnor"] == "2", || format!("milnor {}", r["milnor"]))?;
    let oracle = milnor_oracle(&parse_affine("y^2 - x^3").unwrap()).map_err(|e| e.to_string())?;
    ensure(oracle == 2 && r["milnor_oracle"] == 2, || {
        format!("oracle {oracle}")
    })
}

fn ac02_ordinary_points() -> Check {
    for m in 2..=5i64 {
        let f = parse_affine(&ordinary_point(m as usize)).unwrap();
        let res = resolve_local(&f, DEFAULT_MAX_BLOWUPS).map_err(|e| e.to_string())?;
        let oracle = milnor_oracle(&f).map_err(|e| e.to_string())?;
        ensure(psi_at(&res) == BigInt::from(m * (2 - m)), || {
            format!("m={m}: psi {}", psi_at(&res))
        })?;
        ensure(
            milnor_from_psi(&res) == BigInt::from((m - 1) * (m - 1)),
            || format!("m={m}: mu {}", milnor_from_psi(&res)),
        )?;
        ensure(BigInt::from(oracle) == milnor_from_psi(&res), || {
            format!("m={m}: oracle {oracle}")
        })?;
    }
    Ok(())
}

fn ac03_a_chains() -> Check {
    for n in 1..=6 {
        let v = psi_value(&fixture(&format!("a{n}"))?, &Alpha::Identity, "p")?;
        ensure(v == int(1), || format!("a{n}: {v}"))?;
    }
    Ok(())
}

fn ac04_base_locus() -> Check {
    let base = fixture("base_locus_cusp")?;
    // exceptional curves; the strict transform meets the fiber only at crossings
    let mut mults: Vec<BigInt> = base
        .components
        .iter()
        .filter(|c| c.id != "S")
        .map(|c| c.mult.clone())
        .collect();
    mults.sort();
    ensure(mults == [1.into(), 1.into(), 3.into()], || {
        format!("mults {mults:?}")
    })?;
    let eps3 = Alpha::indicator(3);
    let a = psi_value(&base, &Alpha::Identity, "p")?;
    let b = psi_value(&base, &eps3, "p")?;
    let c = psi_value(&fixture("cusp")?, &eps3, "p")?;
    ensure(a == int(-1) && b == int(-1) && c == int(1), || {
        format!("base psi {a}, base eps3 {b}, cusp eps3 {c}")
    })
}

fn ac05_embedded_point() -> Check {
    let m = fixture("embedded_point")?;
    let p = psi_value(&m, &Alpha::Identity, "p")?;
    let g = psi_value(&m, &Alpha::Identity, "generic")?;
    ensure(p == int(2) && g == int(1), || {
        format!("psi(p) {p}, psi(generic) {g}")
    })?;

    let s = SurfaceModel::new(1);
    let line = DivisorClass::from_ints(&[1, -1]);
    let exc = DivisorClass::from_ints(&[0, 1]);
    let class = csm_strata_class(&s, &[line, exc], &[int(1), int(2)]).map_err(|e| e.to_string())?;
    let pushed = pushforward_to_plane(&s, &class).map_err(|e| e.to_string())?;
    let expected = ChowClass {
        top: 0.into(),
        div: DivisorClass::from_ints(&[1]),
        pts: int(3),
    };
    ensure(pushed == expected, || format!("pushforward {pushed}"))?;

    let p2 = SurfaceModel::plane();
    let h = p2.hyperplane();
    let complement = csm_complement(&p2, std::slice::from_ref(&h)).map_err(|e| e.to_string())?;
    let given = ChowClass {
        top: 1.into(),
        div: DivisorClass::from_ints(&[2]),
        pts: int(1),
    };
    ensure(complement == given, || {
        format!("complement of a line {complement}")
    })?;
    let restricted = gysin_restrict(&p2, &given, &h).map_err(|e| e.to_string())?;
    let expected = ChowClass {
        top: 0.into(),
        div: DivisorClass::from_ints(&[1]),
        pts: int(2),
    };
    ensure(restricted == expected, || {
        format!("restriction {restricted}")
    })
}

fn ac06_three_lines() -> Check {
    for (stem, at_p) in [("three_lines", 0), ("three_lines_coplanar", -2)] {
        let m = fixture(stem)?;
        let p = psi_value(&m, &Alpha::Identity, "p")?;
        let g = psi_value(&m, &Alpha::Identity, "generic")?;
        ensure(p == int(at_p) && g == int(2), || {
            format!("{stem}: p {p}, generic {g}")
        })?;
    }
    Ok(())
}

fn ac07_cones() -> Check {
    for m in 2..=4i64 {
        let model = fixture(&format!("cone_m{m}"))?;
        let vertex = psi_value(&model, &Alpha::Identity, "p")?;
        ensure(vertex == int((m - 1).pow(3) + 1), || {
            format!("m={m}: vertex {vertex}")
        })?;
        let curve = std_class(StdClass::Curve((m - 1) * (m - 2) / 2)).unwrap();
        let expected =
            (&curve + &(EPoly::constant(3) - curve.clone()).scale(&m.into())).mod_torus();
        let total =
            motivic_psi(&model, &Alpha::Identity, &Scope::Total).map_err(|e| e.to_string())?;
        ensure(total == expected, || {
            format!("m={m}: {total} vs {expected}")
        })?;
        ensure(total.is_constant() == (m < 3), || {
            format!("m={m}: constancy")
        })?;
    }
    Ok(())
}

fn ac08_behrend() -> Check {
    for (name, f) in local_curves() {
        let poly = parse_affine(&f).unwrap();
        let res = resolve_local(&poly, DEFAULT_MAX_BLOWUPS).map_err(|e| e.to_string())?;
        let model = to_ncmodel(&res);
        let oracle = milnor_oracle(&poly).map_err(|e| e.to_string())?;
        let mu = behrend_mu(&model, None).map_err(|e| e.to_string())?;
        ensure(mu.get("p") == Some(&int(oracle as i64)), || {
            format!("{name}: mu {mu}")
        })?;
        let unit = unit_reconstruction(&model).map_err(|e| e.to_string())?;
        ensure(unit.get("p") == Some(&int(1)), || {
            format!("{name}: unit {unit}")
        })?;
    }
    // Cusp: E1, E2, E3 (m = 2, 3, 6; a = 1, 2, 4) with χ(E1°) = χ(E2°) = 1,
    // χ(E3°) = −1, and three crossing points.
    let r = |n: i64, d: i64| Rat::new(n.into(), d.into());
    let cusp = -(r(3, 2) + r(8, 3) - r(29, 5) - r(1, 10) - r(1, 15) - r(1, 5));
    let node = -(int(0) * (int(2) - r(1, 2)) - r(1, 2) - r(1, 2));
    ensure(cusp == int(2) && node == int(1), || {
        format!("hand values {cusp}, {node}")
    })?;
    let cusp_mu = behrend_mu(&fixture("cusp")?, None).map_err(|e| e.to_string())?;
    let node_mu = behrend_mu(&fixture("node")?, None).map_err(|e| e.to_string())?;
    ensure(
        cusp_mu.get("p") == Some(&cusp) && node_mu.get("p") == Some(&node),
        || format!("fixtures: cusp {cusp_mu}, node {node_mu}"),
    )
}

fn ac09_invariance() -> Check {
    for (name, model) in psikit::fixtures::all() {
        let from_disk = fixture(&name)?;
        ensure(from_disk.to_json() == model.to_json(), || {
            format!("{name}: shipped file differs")
        })?;
        let report = check_invariance(&from_disk, 7, 100, 3).map_err(|e| e.to_string())?;
        ensure(report.rounds >= 100 && report.passed(), || {
            format!("{name}: {:?}", report.failures)
        })?;
    }
    Ok(())
}

fn ac10_theorem_one() -> Check {
    let corpus = projective_curves();
    for name in CLASS_CHECK_CURVES {
        let (_, f) = corpus
            .iter()
            .find(|(n, _)| *n == name)
            .expect("named curve");
        let r = theorem_one_check(&parse_projective(f).unwrap()).map_err(|e| e.to_string())?;
        let d = r.degree as i64;
        ensure(r.equal, || format!("{name}: {} vs {}", r.lhs, r.rhs))?;
        ensure(
            r.degree_lhs == int(3 * d - d * d)
                && r.degree_rhs == r.degree_lhs
                && r.degree_lhs == Rat::from_integer(r.chi_corrected.clone()),
            || {
                format!(
                    "{name}: degrees {} {} {}",
                    r.degree_lhs, r.degree_rhs, r.chi_corrected
                )
            },
        )?;
    }
    Ok(())
}

fn ac11_monodromy_pieces() -> Check {
    for (name, f) in projective_curves() {
        let res = resolve_projective(&parse_projective(f).unwrap(), DEFAULT_MAX_BLOWUPS)
            .map_err(|e| e.to_string())?;
        let s = SurfaceModel::new(res.blowups);
        let ds: Vec<_> = res
            .divisors
            .iter()
            .map(|d| DivisorClass::from_ints(&d.class))
            .collect();
        let mults: Vec<i64> = res.divisors.iter().map(|d| d.mult).collect();
        let weights: Vec<_> = mults.iter().map(|m| int(*m)).collect();
        let whole = csm_strata_class(&s, &ds, &weights).map_err(|e| e.to_string())?;
        let mut distinct = mults.clone();
        distinct.sort();
        distinct.dedup();
        let mut sum = ChowClass::zero(&s);
        for m in distinct {
            let ws: Vec<_> = mults.iter().map(|k| int((*k == m) as i64)).collect();
            let piece = csm_strata_class(&s, &ds, &ws).map_err(|e| e.to_string())?;
            sum = sum
                + ChowClass {
                    top: piece.top * m,
                    div: piece.div.scale(&m.into()),
                    pts: piece.pts * int(m),
                };
        }
        ensure(sum == whole, || format!("{name}: {sum} vs {whole}"))?;
    }
    Ok(())
}

fn ac12_cross_route() -> Check {
    let mut germs: Vec<_> = local_curves()
        .into_iter()
        .map(|(_, f)| parse_affine(&f).unwrap())
        .collect();
    for (_, f) in projective_curves() {
        let res = resolve_projective(&parse_projective(f).unwrap(), DEFAULT_MAX_BLOWUPS)
            .map_err(|e| e.to_string())?;
        for p in &res.points {
            let model = to_ncmodel(&p.resolution);
            let v = psi_value(&model, &Alpha::Identity, "p")?;
            ensure(v == Rat::from_integer(psi_at(&p.resolution)), || {
                format!("{f} at {}", p.point)
            })?;
        }
    }
    for f in germs.drain(..) {
        let res = resolve_local(&f, DEFAULT_MAX_BLOWUPS).map_err(|e| e.to_string())?;
        let model = to_ncmodel(&res);
        let graph = psi_at(&res);
        let v = psi_value(&model, &Alpha::Identity, "p")?;
        let fiber = motivic_psi(&model, &Alpha::Identity, &Scope::Fiber("p".into()))
            .map_err(|e| e.to_string())?;
        ensure(
            v == Rat::from_integer(graph.clone()) && fiber.euler() == graph,
            || format!("{f}: graph {graph}, model {v}, motivic {}", fiber.euler()),
        )?;
    }
    Ok(())
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 12] = [
        ("AC-01 cusp resolution, psi and Milnor number", ac01_cusp),
        ("AC-02 ordinary m-fold points", ac02_ordinary_points),
        ("AC-03 A_n chain fixtures", ac03_a_chains),
        ("AC-04 base-locus cusp versus cusp", ac04_base_locus),
        (
            "AC-05 embedded point and Gysin restriction",
            ac05_embedded_point,
        ),
        ("AC-06 three lines", ac06_three_lines),
        ("AC-07 cones", ac07_cones),
        ("AC-08 Behrend function", ac08_behrend),
        ("AC-09 blow-up invariance", ac09_invariance),
        ("AC-10 classwise comparison on the plane", ac10_theorem_one),
        (
            "AC-11 monodromy decomposition of classes",
            ac11_monodromy_pieces,
        ),
        ("AC-12 cross-route equality", ac12_cross_route),
    ];
    let mut failed = Vec::new();
    for (name, check) in criteria {
        match check() {
            Ok(()) => println!("[PASS] {name}"),
            Err(why) => {
                println!("[FAIL] {name}: {why}");
                failed.push(name);
            }
        }
    }
    assert!(failed.is_empty(), "failed: {failed:?}");
}
