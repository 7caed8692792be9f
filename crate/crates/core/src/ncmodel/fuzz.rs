//! Seeded random blow-up sequences and the invariance check built on them.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{
    blow_up, motivic_psi, naive_lift, psi, Alpha, CenterPiece, CenterSpec, NCModel, NcError,
    PieceSite, Scope, Stratum,
};
use crate::ering::EPoly;

/// Draws an admissible center from the existing strata, or `None` if the
/// model has no stratum that can host one.
pub fn random_center<R: Rng>(model: &NCModel, rng: &mut R) -> Option<CenterSpec> {
    let n = model.ambient_dim as usize;
    let mut keys: Vec<(&Stratum, &String)> =
        model.strata_fiber.keys().map(|(s, p)| (s, p)).collect();
    keys.shuffle(rng);
    for (stratum, p) in keys {
        if model.strata_total.is_some() && model.total_class(stratum).is_none() {
            continue;
        }
        let ids = stratum.to_vec();
        let mask: u32 = rng.gen_range(1..(1u32 << ids.len()));
        let (inside, outside): (Vec<_>, Vec<_>) = ids
            .iter()
            .enumerate()
            .partition(|(i, _)| mask & (1 << i) != 0);
        let contains = Stratum::new(inside.into_iter().map(|(_, s)| s.clone()));
        let extra = Stratum::new(outside.into_iter().map(|(_, s)| s.clone()));
        let lo = contains.len().max(2);
        let hi = n.saturating_sub(extra.len());
        if lo > hi {
            continue;
        }
        let codim = rng.gen_range(lo..=hi) as u32;
        let full = model.fiber_class(stratum, p).expect("key exists").clone();
        let class = if rng.gen_bool(0.5) {
            EPoly::one()
        } else {
            full
        };
        let mut pieces = vec![CenterPiece {
            extra: extra.clone(),
            site: PieceSite::Point(p.clone()),
            class,
        }];
        if model.strata_total.is_some() && rng.gen_bool(0.3) {
            pieces.push(CenterPiece {
                extra,
                site: PieceSite::Away,
                class: EPoly::one(),
            });
        }
        return Some(CenterSpec {
            codim,
            contains,
            pieces,
        });
    }
    None
}

/// Weight functions compared across blow-ups: identity, the constant one,
/// each indicator of an occurring multiplicity, and `random_tables` random
/// tables with a default.
pub fn invariance_alphas<R: Rng>(model: &NCModel, random_tables: usize, rng: &mut R) -> Vec<Alpha> {
    let mut out = vec![Alpha::Identity, Alpha::constant(1)];
    out.extend(model.multiplicities().into_iter().map(Alpha::indicator));
    let max_m = model
        .multiplicities()
        .into_iter()
        .max()
        .unwrap_or_else(|| BigInt::from(1));
    let max_m: i64 = max_m.try_into().unwrap_or(8).min(16);
    for _ in 0..random_tables {
        let mut values = BTreeMap::new();
        for m in 1..=max_m + 4 {
            if rng.gen_bool(0.6) {
                values.insert(BigInt::from(m), BigInt::from(rng.gen_range(-5..=5)));
            }
        }
        out.push(Alpha::Table {
            values,
            default: Some(BigInt::from(rng.gen_range(-3..=3))),
        });
    }
    out
}

/// Everything that must survive a blow-up.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Snapshot {
    psi: Vec<super::BucketFunction>,
    motivic: Vec<crate::ering::MTClass>,
    lifts: Vec<EPoly>,
}

fn snapshot(model: &NCModel, alphas: &[Alpha]) -> Result<Snapshot, NcError> {
    let mut scopes: Vec<Scope> = model.points.iter().cloned().map(Scope::Fiber).collect();
    if model.strata_total.is_some() {
        scopes.push(Scope::Total);
    }
    let mut snap = Snapshot {
        psi: Vec::new(),
        motivic: Vec::new(),
        lifts: Vec::new(),
    };
    for a in alphas {
        snap.psi.push(psi(model, a)?);
        for s in &scopes {
            snap.motivic.push(motivic_psi(model, a, s)?);
        }
    }
    for s in &scopes {
        snap.lifts.push(naive_lift(model, s)?);
    }
    Ok(snap)
}

#[derive(Clone, Debug, Serialize)]
pub struct InvarianceReport {
    pub seed: u64,
    pub rounds: usize,
    pub max_blowups: usize,
    pub alphas: usize,
    pub blowups_performed: usize,
    pub failures: Vec<String>,
}

impl InvarianceReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Runs `rounds` random blow-up sequences of length `1..=max_blowups` and
/// compares every ψ^α value, motivic class (mod T) and exact lift with the
/// original model.
pub fn check_invariance(
    model: &NCModel,
    seed: u64,
    rounds: usize,
    max_blowups: usize,
) -> Result<InvarianceReport, NcError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let alphas = invariance_alphas(model, 5, &mut rng);
    let reference = snapshot(model, &alphas)?;
    let mut report = InvarianceReport {
        seed,
        rounds,
        max_blowups,
        alphas: alphas.len(),
        blowups_performed: 0,
        failures: Vec::new(),
    };
    for round in 0..rounds {
        let steps = rng.gen_range(1..=max_blowups.max(1));
        let mut current = model.clone();
        for step in 0..steps {
            let Some(center) = random_center(&current, &mut rng) else {
                break;
            };
            let new_id = format!("X{round}_{step}");
            let next = blow_up(&current, &center, &new_id)?;
            report.blowups_performed += 1;
            let expected: BigInt = center
                .contains
                .ids()
                .map(|id| current.component(id).expect("checked").mult.clone())
                .sum();
            let got = &next.component(&new_id).expect("added").mult;
            if *got != expected {
                report.failures.push(format!(
                    "round {round} step {step}: exceptional multiplicity {got}, expected {expected}"
                ));
            }
            let snap = snapshot(&next, &alphas)?;
            if snap != reference {
                report.failures.push(format!(
                    "round {round} step {step}: invariants changed after center {}",
                    center.to_json()
                ));
                break;
            }
            current = next;
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn centers_are_admissible() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for (_, model) in fixtures::all() {
            for i in 0..20 {
                let c = random_center(&model, &mut rng).expect("fixture has strata");
                blow_up(&model, &c, &format!("N{i}")).expect("admissible");
            }
        }
    }

    #[test]
    fn cusp_survives_blowups() {
        let report = check_invariance(&fixtures::cusp(), 7, 25, 4).unwrap();
        assert!(report.passed(), "{:?}", report.failures);
        assert!(report.blowups_performed >= 25);
    }

    #[test]
    fn same_seed_same_report() {
        let a = check_invariance(&fixtures::cone(3), 3, 5, 3).unwrap();
        let b = check_invariance(&fixtures::cone(3), 3, 5, 3).unwrap();
        assert_eq!(a.blowups_performed, b.blowups_performed);
    }
}
