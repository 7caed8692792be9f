use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::NcError;

/// A function on multiplicities, used to reweight components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Alpha {
    Identity,
    /// Finite table; multiplicities outside it map to `default`, or are
    /// undefined when there is none.
    Table {
        values: BTreeMap<BigInt, BigInt>,
        default: Option<BigInt>,
    },
}

impl Alpha {
    pub fn constant(c: impl Into<BigInt>) -> Self {
        Alpha::Table {
            values: BTreeMap::new(),
            default: Some(c.into()),
        }
    }

    /// Indicator of a single multiplicity.
    pub fn indicator(m: impl Into<BigInt>) -> Self {
        Alpha::Table {
            values: BTreeMap::from([(m.into(), BigInt::one())]),
            default: Some(BigInt::zero()),
        }
    }

    pub fn apply(&self, m: &BigInt) -> Result<BigInt, NcError> {
        match self {
            Alpha::Identity => Ok(m.clone()),
            Alpha::Table { values, default } => values
                .get(m)
                .or(default.as_ref())
                .cloned()
                .ok_or_else(|| NcError::AlphaUndefined(m.clone())),
        }
    }

    /// Parses `id`, `one`, `zero`, `eps:M` or `table:K=V,...[,default=V]`.
    pub fn parse(s: &str) -> Result<Self, NcError> {
        let bad = || NcError::BadAlpha(s.to_string());
        let int = |t: &str| t.trim().parse::<BigInt>().map_err(|_| bad());
        match s.trim() {
            "id" | "identity" => return Ok(Alpha::Identity),
            "one" => return Ok(Alpha::constant(1)),
            "zero" => return Ok(Alpha::constant(0)),
            _ => {}
        }
        if let Some(m) = s.trim().strip_prefix("eps:") {
            return Ok(Alpha::indicator(int(m)?));
        }
        let body = s.trim().strip_prefix("table:").ok_or_else(bad)?;
        let mut values = BTreeMap::new();
        let mut default = None;
        for entry in body.split(',').filter(|e| !e.trim().is_empty()) {
            let (k, v) = entry.split_once('=').ok_or_else(bad)?;
            if k.trim() == "default" {
                default = Some(int(v)?);
            } else if values.insert(int(k)?, int(v)?).is_some() {
                return Err(bad());
            }
        }
        Ok(Alpha::Table { values, default })
    }
}

impl fmt::Display for Alpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Alpha::Identity => f.write_str("id"),
            Alpha::Table { values, default } => {
                let mut parts: Vec<String> =
                    values.iter().map(|(k, v)| format!("{k}={v}")).collect();
                if let Some(d) = default {
                    parts.push(format!("default={d}"));
                }
                write!(f, "table:{}", parts.join(","))
            }
        }
    }
}
