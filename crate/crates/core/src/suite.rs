//! The fixture table: every shipped model evaluated against its known values.

use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

use crate::ering::{format_rat, std_class, EPoly, StdClass};
use crate::ncmodel::{
    behrend_mu, motivic_psi, psi, unit_reconstruction, Alpha, NCModel, NcError, Scope,
};

#[derive(Debug, Error)]
pub enum SuiteError {
    #[error("missing fixture file {0}")]
    MissingFixture(PathBuf),
    #[error("{path}: {source}")]
    Model { path: PathBuf, source: NcError },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteRow {
    pub fixture: String,
    pub quantity: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

pub fn load_fixture(dir: &Path, stem: &str) -> Result<NCModel, SuiteError> {
    let path = dir.join(format!("{stem}.json"));
    let text =
        std::fs::read_to_string(&path).map_err(|_| SuiteError::MissingFixture(path.clone()))?;
    NCModel::from_json(&text).map_err(|source| SuiteError::Model { path, source })
}

struct Table {
    rows: Vec<SuiteRow>,
}

impl Table {
    fn push(&mut self, fixture: &str, quantity: &str, expected: String, computed: String) {
        self.rows.push(SuiteRow {
            fixture: fixture.into(),
            quantity: quantity.into(),
            pass: expected == computed,
            expected,
            computed,
        });
    }
}

fn value(model: &NCModel, alpha: &Alpha, p: &str) -> Result<String, NcError> {
    let f = psi(model, alpha)?;
    Ok(f.get(p)
        .map(format_rat)
        .unwrap_or_else(|| "undefined".into()))
}

fn bucket(f: Result<crate::ncmodel::BucketFunction, NcError>, p: &str) -> Result<String, NcError> {
    Ok(f?
        .get(p)
        .map(format_rat)
        .unwrap_or_else(|| "undefined".into()))
}

/// Evaluates every fixture in `dir` and compares with the expected values.
pub fn fixtures_run(dir: &Path) -> Result<Vec<SuiteRow>, SuiteError> {
    let mut t = Table { rows: Vec::new() };
    let wrap = |stem: &str| {
        let path = dir.join(format!("{stem}.json"));
        move |source| SuiteError::Model {
            path: path.clone(),
            source,
        }
    };
    let id = Alpha::Identity;
    let eps3 = Alpha::indicator(3);

    let cusp = load_fixture(dir, "cusp")?;
    let err = wrap("cusp");
    t.push(
        "cusp",
        "psi(p)",
        "-1".into(),
        value(&cusp, &id, "p").map_err(&err)?,
    );
    t.push(
        "cusp",
        "psi^eps3(p)",
        "1".into(),
        value(&cusp, &eps3, "p").map_err(&err)?,
    );
    t.push(
        "cusp",
        "mu(p)",
        "2".into(),
        bucket(behrend_mu(&cusp, None), "p").map_err(&err)?,
    );
    t.push(
        "cusp",
        "unit(p)",
        "1".into(),
        bucket(unit_reconstruction(&cusp), "p").map_err(&err)?,
    );

    let node = load_fixture(dir, "node")?;
    let err = wrap("node");
    t.push(
        "node",
        "psi(p)",
        "0".into(),
        value(&node, &id, "p").map_err(&err)?,
    );
    t.push(
        "node",
        "mu(p)",
        "1".into(),
        bucket(behrend_mu(&node, None), "p").map_err(&err)?,
    );

    let smooth = load_fixture(dir, "smooth_point")?;
    let err = wrap("smooth_point");
    t.push(
        "smooth_point",
        "psi(p)",
        "1".into(),
        value(&smooth, &id, "p").map_err(&err)?,
    );
    t.push(
        "smooth_point",
        "mu(p)",
        "0".into(),
        bucket(behrend_mu(&smooth, None), "p").map_err(&err)?,
    );

    let base = load_fixture(dir, "base_locus_cusp")?;
    let err = wrap("base_locus_cusp");
    t.push(
        "base_locus_cusp",
        "psi(p)",
        "-1".into(),
        value(&base, &id, "p").map_err(&err)?,
    );
    t.push(
        "base_locus_cusp",
        "psi^eps3(p)",
        "-1".into(),
        value(&base, &eps3, "p").map_err(&err)?,
    );

    for n in 1..=6 {
        let stem = format!("a{n}");
        let m = load_fixture(dir, &stem)?;
        let v = value(&m, &id, "p").map_err(wrap(&stem))?;
        t.push(&stem, "psi(p)", "1".into(), v);
    }

    let emb = load_fixture(dir, "embedded_point")?;
    let err = wrap("embedded_point");
    t.push(
        "embedded_point",
        "psi(p)",
        "2".into(),
        value(&emb, &id, "p").map_err(&err)?,
    );
    t.push(
        "embedded_point",
        "psi(generic)",
        "1".into(),
        value(&emb, &id, "generic").map_err(&err)?,
    );

    for (stem, at_point) in [("three_lines", "0"), ("three_lines_coplanar", "-2")] {
        let m = load_fixture(dir, stem)?;
        let err = wrap(stem);
        t.push(
            stem,
            "psi(p)",
            at_point.into(),
            value(&m, &id, "p").map_err(&err)?,
        );
        t.push(
            stem,
            "psi(generic)",
            "2".into(),
            value(&m, &id, "generic").map_err(&err)?,
        );
    }

    for m in 2..=4u32 {
        let stem = format!("cone_m{m}");
        let model = load_fixture(dir, &stem)?;
        let err = wrap(&stem);
        let vertex: BigInt = BigInt::from(m - 1).pow(3u32) + 1;
        t.push(
            &stem,
            "psi(p)",
            vertex.to_string(),
            value(&model, &id, "p").map_err(&err)?,
        );
        let genus = ((m - 1) * (m - 2) / 2) as i64;
        let curve = std_class(StdClass::Curve(genus)).expect("valid");
        let expected = &curve + &(EPoly::constant(3) - curve.clone()).scale(&BigInt::from(m));
        let total = motivic_psi(&model, &id, &Scope::Total).map_err(&err)?;
        t.push(
            &stem,
            "Psi(total) mod T",
            expected.mod_torus().to_string(),
            total.to_string(),
        );
        t.push(
            &stem,
            "Psi(total) constant",
            (m < 3).to_string(),
            total.is_constant().to_string(),
        );
    }
    Ok(t.rows)
}
