use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::NcError;
use crate::ering::{serde_int, EPoly};

/// A set of component ids, naming the locally closed stratum `D_I°`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Stratum(BTreeSet<String>);

impl Stratum {
    pub fn new<I, S>(ids: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Self(ids.into_iter().map(Into::into).collect())
    }

    pub fn single(id: impl Into<String>) -> Self {
        Self::new([id.into()])
    }

    pub fn ids(&self) -> impl Iterator<Item = &str> {
        self.0.iter().map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, id: &str) -> bool {
        self.0.contains(id)
    }

    pub fn union(&self, other: &Stratum) -> Stratum {
        Stratum(self.0.union(&other.0).cloned().collect())
    }

    pub fn with(&self, id: &str) -> Stratum {
        let mut s = self.0.clone();
        s.insert(id.to_string());
        Stratum(s)
    }

    pub fn is_disjoint(&self, other: &Stratum) -> bool {
        self.0.is_disjoint(&other.0)
    }

    /// All subsets, in a deterministic order.
    pub fn subsets(&self) -> Vec<Stratum> {
        let ids: Vec<&String> = self.0.iter().collect();
        (0u64..(1 << ids.len()))
            .map(|mask| {
                Stratum(
                    ids.iter()
                        .enumerate()
                        .filter(|(i, _)| mask & (1 << i) != 0)
                        .map(|(_, s)| (*s).clone())
                        .collect(),
                )
            })
            .collect()
    }

    pub fn to_vec(&self) -> Vec<String> {
        self.0.iter().cloned().collect()
    }
}

impl fmt::Display for Stratum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.to_vec().join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub id: String,
    #[serde(with = "serde_int")]
    pub mult: BigInt,
    #[serde(
        default,
        with = "serde_int::option",
        skip_serializing_if = "Option::is_none"
    )]
    pub discrepancy: Option<BigInt>,
}

impl Component {
    pub fn new(id: impl Into<String>, mult: impl Into<BigInt>) -> Self {
        Self {
            id: id.into(),
            mult: mult.into(),
            discrepancy: None,
        }
    }

    pub fn with_discrepancy(mut self, d: impl Into<BigInt>) -> Self {
        self.discrepancy = Some(d.into());
        self
    }
}

/// A normal-crossings divisor `D = Σ m_ℓ D_ℓ` in a nonsingular `W`, with the
/// classes of its strata over finitely many marked points of `X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NCModel {
    pub ambient_dim: u32,
    pub components: Vec<Component>,
    pub points: Vec<String>,
    /// class of `D_I° ∩ w⁻¹(p)`
    pub strata_fiber: BTreeMap<(Stratum, String), EPoly>,
    /// class of `D_I°`
    pub strata_total: Option<BTreeMap<Stratum, EPoly>>,
}

impl NCModel {
    pub fn new(ambient_dim: u32) -> Self {
        Self {
            ambient_dim,
            components: Vec::new(),
            points: Vec::new(),
            strata_fiber: BTreeMap::new(),
            strata_total: None,
        }
    }

    pub fn component(&self, id: &str) -> Option<&Component> {
        self.components.iter().find(|c| c.id == id)
    }

    pub fn has_point(&self, p: &str) -> bool {
        self.points.iter().any(|q| q == p)
    }

    pub fn fiber_class(&self, stratum: &Stratum, p: &str) -> Option<&EPoly> {
        self.strata_fiber.get(&(stratum.clone(), p.to_string()))
    }

    pub fn total_class(&self, stratum: &Stratum) -> Option<&EPoly> {
        self.strata_total.as_ref()?.get(stratum)
    }

    /// Adds `class` to the fiber stratum, dropping the entry if it cancels.
    pub fn add_fiber(&mut self, stratum: Stratum, p: &str, class: &EPoly) {
        add_class(&mut self.strata_fiber, (stratum, p.to_string()), class);
    }

    pub fn add_total(&mut self, stratum: Stratum, class: &EPoly) {
        let totals = self.strata_total.get_or_insert_with(BTreeMap::new);
        add_class(totals, stratum, class);
    }

    /// Sorts components and points by id.
    pub fn canonicalize(&mut self) {
        self.components.sort_by(|a, b| a.id.cmp(&b.id));
        self.points.sort();
    }

    /// Distinct multiplicities of the components, ascending.
    pub fn multiplicities(&self) -> BTreeSet<BigInt> {
        self.components.iter().map(|c| c.mult.clone()).collect()
    }

    /// Every stratum key mentioned in either map.
    pub fn declared_strata(&self) -> BTreeSet<Stratum> {
        let mut keys: BTreeSet<Stratum> =
            self.strata_fiber.keys().map(|(s, _)| s.clone()).collect();
        if let Some(t) = &self.strata_total {
            keys.extend(t.keys().cloned());
        }
        keys
    }

    pub fn from_json(text: &str) -> Result<Self, NcError> {
        let file: ModelFile = serde_json::from_str(text)?;
        file.try_into()
    }

    /// Canonical JSON: sorted ids and strata, one record per line.
    pub fn to_json(&self) -> String {
        let mut m = self.clone();
        m.canonicalize();
        let file = ModelFile::from(&m);
        let mut out = String::from("{\n");
        out.push_str(&format!("  \"ambient_dim\": {},\n", file.ambient_dim));
        out.push_str("  \"components\": ");
        push_lines(&mut out, &file.components);
        out.push_str(",\n  \"points\": ");
        out.push_str(&serde_json::to_string(&file.points).expect("strings"));
        out.push_str(",\n  \"strata_fiber\": ");
        push_lines(&mut out, &file.strata_fiber);
        if let Some(total) = &file.strata_total {
            out.push_str(",\n  \"strata_total\": ");
            push_lines(&mut out, total);
        }
        out.push_str("\n}\n");
        out
    }
}

fn add_class<K: Ord>(map: &mut BTreeMap<K, EPoly>, key: K, class: &EPoly) {
    if class.is_zero() {
        return;
    }
    let sum = match map.remove(&key) {
        Some(old) => &old + class,
        None => class.clone(),
    };
    if !sum.is_zero() {
        map.insert(key, sum);
    }
}

fn push_lines<T: Serialize>(out: &mut String, items: &[T]) {
    if items.is_empty() {
        out.push_str("[]");
        return;
    }
    out.push_str("[\n");
    for (i, item) in items.iter().enumerate() {
        out.push_str("    ");
        out.push_str(&serde_json::to_string(item).expect("serializable"));
        if i + 1 < items.len() {
            out.push(',');
        }
        out.push('\n');
    }
    out.push_str("  ]");
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelFile {
    ambient_dim: u32,
    components: Vec<Component>,
    points: Vec<String>,
    #[serde(default)]
    strata_fiber: Vec<FiberEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    strata_total: Option<Vec<TotalEntry>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FiberEntry {
    on: Vec<String>,
    at: String,
    class: EPoly,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TotalEntry {
    on: Vec<String>,
    class: EPoly,
}

fn stratum_from_list(on: Vec<String>) -> Result<Stratum, NcError> {
    let n = on.len();
    let s = Stratum::new(on);
    if s.len() != n {
        return Err(NcError::Parse(format!("repeated id in stratum {s}")));
    }
    Ok(s)
}

impl TryFrom<ModelFile> for NCModel {
    type Error = NcError;

    fn try_from(file: ModelFile) -> Result<Self, NcError> {
        let mut strata_fiber = BTreeMap::new();
        for e in file.strata_fiber {
            let key = (stratum_from_list(e.on)?, e.at);
            if strata_fiber.insert(key.clone(), e.class).is_some() {
                return Err(NcError::Parse(format!(
                    "duplicate fiber stratum {} at {}",
                    key.0, key.1
                )));
            }
        }
        let strata_total = match file.strata_total {
            None => None,
            Some(entries) => {
                let mut map = BTreeMap::new();
                for e in entries {
                    let key = stratum_from_list(e.on)?;
                    if map.insert(key.clone(), e.class).is_some() {
                        return Err(NcError::Parse(format!("duplicate total stratum {key}")));
                    }
                }
                Some(map)
            }
        };
        Ok(NCModel {
            ambient_dim: file.ambient_dim,
            components: file.components,
            points: file.points,
            strata_fiber,
            strata_total,
        })
    }
}

impl From<&NCModel> for ModelFile {
    fn from(m: &NCModel) -> Self {
        ModelFile {
            ambient_dim: m.ambient_dim,
            components: m.components.clone(),
            points: m.points.clone(),
            strata_fiber: m
                .strata_fiber
                .iter()
                .map(|((s, p), c)| FiberEntry {
                    on: s.to_vec(),
                    at: p.clone(),
                    class: c.clone(),
                })
                .collect(),
            strata_total: m.strata_total.as_ref().map(|t| {
                t.iter()
                    .map(|(s, c)| TotalEntry {
                        on: s.to_vec(),
                        class: c.clone(),
                    })
                    .collect()
            }),
        }
    }
}

/// One broken invariant of an [`NCModel`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    AmbientDimZero,
    DuplicateComponent(String),
    DuplicatePoint(String),
    MultiplicityTooSmall(String),
    NegativeDiscrepancy(String),
    UnknownComponent { id: String, stratum: Stratum },
    UnknownPoint(String),
    EmptyStratum,
    TooManyComponents(Stratum),
    ZeroClass(Stratum),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::AmbientDimZero => write!(f, "ambient dimension must be ≥ 1"),
            Violation::DuplicateComponent(id) => write!(f, "duplicate component: {id}"),
            Violation::DuplicatePoint(p) => write!(f, "duplicate point: {p}"),
            Violation::MultiplicityTooSmall(id) => {
                write!(f, "multiplicity must be ≥ 1 (component {id})")
            }
            Violation::NegativeDiscrepancy(id) => {
                write!(f, "discrepancy must be ≥ 0 (component {id})")
            }
            Violation::UnknownComponent { id, stratum } => {
                write!(f, "unknown component: {id} in stratum {stratum}")
            }
            Violation::UnknownPoint(p) => write!(f, "unknown point: {p}"),
            Violation::EmptyStratum => write!(f, "empty stratum"),
            Violation::TooManyComponents(s) => {
                write!(
                    f,
                    "stratum {s} meets more components than the ambient dimension"
                )
            }
            Violation::ZeroClass(s) => write!(f, "zero class stored for stratum {s}"),
        }
    }
}

pub fn validate(model: &NCModel) -> Vec<Violation> {
    let mut out = Vec::new();
    if model.ambient_dim == 0 {
        out.push(Violation::AmbientDimZero);
    }
    let mut seen = BTreeSet::new();
    for c in &model.components {
        if !seen.insert(c.id.as_str()) {
            out.push(Violation::DuplicateComponent(c.id.clone()));
        }
        if c.mult < BigInt::one() {
            out.push(Violation::MultiplicityTooSmall(c.id.clone()));
        }
        if matches!(&c.discrepancy, Some(d) if *d < BigInt::zero()) {
            out.push(Violation::NegativeDiscrepancy(c.id.clone()));
        }
    }
    let mut points = BTreeSet::new();
    for p in &model.points {
        if !points.insert(p.as_str()) {
            out.push(Violation::DuplicatePoint(p.clone()));
        }
    }
    let check_stratum = |s: &Stratum, class: &EPoly, out: &mut Vec<Violation>| {
        if s.is_empty() {
            out.push(Violation::EmptyStratum);
        }
        for id in s.ids() {
            if !seen.contains(id) {
                out.push(Violation::UnknownComponent {
                    id: id.to_string(),
                    stratum: s.clone(),
                });
            }
        }
        if s.len() > model.ambient_dim as usize {
            out.push(Violation::TooManyComponents(s.clone()));
        }
        if class.is_zero() {
            out.push(Violation::ZeroClass(s.clone()));
        }
    };
    for ((s, p), class) in &model.strata_fiber {
        check_stratum(s, class, &mut out);
        if !points.contains(p.as_str()) {
            out.push(Violation::UnknownPoint(p.clone()));
        }
    }
    if let Some(t) = &model.strata_total {
        for (s, class) in t {
            check_stratum(s, class, &mut out);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny() -> NCModel {
        let mut m = NCModel::new(2);
        m.components.push(Component::new("A", 2));
        m.components.push(Component::new("B", 1));
        m.points.push("p".into());
        m.add_fiber(Stratum::single("A"), "p", &EPoly::lefschetz());
        m.add_fiber(Stratum::new(["A", "B"]), "p", &EPoly::one());
        m
    }

    #[test]
    fn well_formed_model_has_no_violations() {
        assert!(validate(&tiny()).is_empty());
    }

    #[test]
    fn unknown_component_reported() {
        let mut m = tiny();
        m.add_fiber(Stratum::single("Z"), "p", &EPoly::one());
        let v = validate(&m);
        assert_eq!(v.len(), 1);
        assert!(v[0].to_string().starts_with("unknown component"));
    }

    #[test]
    fn zero_multiplicity_reported() {
        let mut m = tiny();
        m.components[1].mult = BigInt::zero();
        let v = validate(&m);
        assert_eq!(v.len(), 1);
        assert!(v[0].to_string().starts_with("multiplicity must be ≥ 1"));
    }

    #[test]
    fn other_violations() {
        let mut m = tiny();
        m.components.push(Component::new("A", 1));
        m.points.push("p".into());
        m.strata_fiber
            .insert((Stratum::new(["A"]), "q".into()), EPoly::zero());
        m.strata_fiber
            .insert((Stratum::new(["A", "B", "C"]), "p".into()), EPoly::one());
        let v = validate(&m);
        assert!(v.contains(&Violation::DuplicateComponent("A".into())));
        assert!(v.contains(&Violation::DuplicatePoint("p".into())));
        assert!(v.contains(&Violation::UnknownPoint("q".into())));
        assert!(v.contains(&Violation::ZeroClass(Stratum::single("A"))));
        assert!(v.contains(&Violation::TooManyComponents(Stratum::new(["A", "B", "C"]))));
    }

    #[test]
    fn add_fiber_drops_cancelled_entries() {
        let mut m = tiny();
        m.add_fiber(Stratum::new(["A", "B"]), "p", &-EPoly::one());
        assert!(m.fiber_class(&Stratum::new(["A", "B"]), "p").is_none());
    }

    #[test]
    fn json_round_trip_is_canonical() {
        let mut m = tiny();
        m.components.reverse();
        m.add_total(Stratum::single("B"), &EPoly::lefschetz());
        let text = m.to_json();
        let back = NCModel::from_json(&text).unwrap();
        assert_eq!(back.to_json(), text);
        assert_eq!(back.components[0].id, "A");
        assert!(text.contains(r#"{"on":["A","B"],"at":"p","class":[[0,0,1]]}"#));
    }

    #[test]
    fn duplicate_keys_and_unknown_fields_rejected() {
        let dup = r#"{"ambient_dim":2,"components":[{"id":"A","mult":1}],"points":["p"],
            "strata_fiber":[{"on":["A"],"at":"p","class":[[0,0,1]]},
                            {"on":["A"],"at":"p","class":[[0,0,2]]}]}"#;
        assert!(matches!(NCModel::from_json(dup), Err(NcError::Parse(_))));
        let extra = r#"{"ambient_dim":2,"components":[],"points":[],"bogus":1}"#;
        assert!(NCModel::from_json(extra).is_err());
    }

    #[test]
    fn subsets_enumerates_power_set() {
        let s = Stratum::new(["a", "b", "c"]);
        let subs = s.subsets();
        assert_eq!(subs.len(), 8);
        assert!(subs.contains(&Stratum::default()));
        assert!(subs.contains(&s));
    }
}
