//! The JSON space document.
//!
//! ```json
//! {
//!   "D": 2,
//!   "kind": "lowen",
//!   "maps": {"swap": {"a": "b", "b": "a"}},
//!   "n": 1,
//!   "opens": [{"a": ["0/2"], "b": ["0/2"]}, ...],
//!   "universe": ["a", "b"]
//! }
//! ```
//!
//! Tuples are arrays of `"k/m"` strings. A bare string is accepted for
//! one-dimensional tuples. Keys come out sorted, so serialisation is
//! canonical.

use std::collections::BTreeMap;
use std::sync::Arc;

use mftop::{Grade, MultiFuzzySet, MultiFuzzyTopology, PointMap, Shape, TopologyKind, Universe};
use serde_json::{json, Map, Value};

use crate::error::CliError;

/// A parsed space with its named maps (resolved lazily, since the codomain
/// may live in another document).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpaceDocument {
    pub topology: Arc<MultiFuzzyTopology>,
    pub maps: BTreeMap<String, BTreeMap<String, String>>,
}

fn input(path: impl Into<String>, message: impl Into<String>) -> CliError {
    CliError::Input {
        path: path.into(),
        message: message.into(),
    }
}

fn field<'a>(doc: &'a Map<String, Value>, key: &str) -> Result<&'a Value, CliError> {
    doc.get(key).ok_or_else(|| input(key, "missing field"))
}

fn integer(doc: &Map<String, Value>, key: &str) -> Result<u64, CliError> {
    field(doc, key)?
        .as_u64()
        .ok_or_else(|| input(key, "expected a non-negative integer"))
}

/// Parses a document. With `verify`, the opens must satisfy the axioms of
/// the declared kind; violations come back as [`CliError::Axioms`].
pub fn parse_space(text: &str, verify: bool) -> Result<SpaceDocument, CliError> {
    let value: Value = serde_json::from_str(text).map_err(|e| {
        input(
            format!("line {} column {}", e.line(), e.column()),
            strip_location(&e.to_string()),
        )
    })?;
    let doc = value
        .as_object()
        .ok_or_else(|| input("$", "expected an object"))?;
    for key in doc.keys() {
        if !["universe", "n", "D", "kind", "opens", "maps"].contains(&key.as_str()) {
            return Err(input(key.as_str(), "unknown field"));
        }
    }

    let labels = field(doc, "universe")?
        .as_array()
        .ok_or_else(|| input("universe", "expected an array of strings"))?
        .iter()
        .enumerate()
        .map(|(i, v)| {
            v.as_str()
                .map(str::to_string)
                .ok_or_else(|| input(format!("universe[{i}]"), "expected a string"))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let universe = Universe::new(labels).map_err(|e| input("universe", e.to_string()))?;
    let n = integer(doc, "n")?;
    let d = integer(doc, "D")?;
    let d = u32::try_from(d).map_err(|_| input("D", "denominator too large"))?;
    let shape = Shape::new(
        Arc::new(universe),
        n as usize,
        mftop::GradeChain::new(d).map_err(|e| input("D", e.to_string()))?,
    )
    .map_err(|e| input("n", e.to_string()))?;
    let kind = match field(doc, "kind")?.as_str() {
        Some("lowen") => TopologyKind::Lowen,
        Some("chang") => TopologyKind::Chang,
        _ => return Err(input("kind", "expected \"lowen\" or \"chang\"")),
    };

    let opens = field(doc, "opens")?
        .as_array()
        .ok_or_else(|| input("opens", "expected an array"))?
        .iter()
        .enumerate()
        .map(|(i, v)| parse_set(&shape, v, &format!("opens[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;

    let mut maps = BTreeMap::new();
    if let Some(raw) = doc.get("maps") {
        let raw = raw
            .as_object()
            .ok_or_else(|| input("maps", "expected an object"))?;
        for (name, assignment) in raw {
            let path = format!("maps.{name}");
            let assignment = assignment
                .as_object()
                .ok_or_else(|| input(path.as_str(), "expected an object"))?;
            let mut pairs = BTreeMap::new();
            for (from, to) in assignment {
                let to = to
                    .as_str()
                    .ok_or_else(|| input(format!("{path}.{from}"), "expected a point label"))?;
                pairs.insert(from.clone(), to.to_string());
            }
            for label in shape.universe().labels() {
                if !pairs.contains_key(label) {
                    return Err(input(path.as_str(), format!("point {label} is not mapped")));
                }
            }
            if let Some(extra) = pairs
                .keys()
                .find(|k| shape.universe().index_of(k).is_none())
            {
                return Err(input(format!("{path}.{extra}"), "unknown point"));
            }
            maps.insert(name.clone(), pairs);
        }
    }

    let topology = if verify {
        MultiFuzzyTopology::new(shape, kind, opens).map_err(|e| match e {
            mftop::Error::InvalidTopology(report) => CliError::Axioms(report),
            other => input("opens", other.to_string()),
        })?
    } else {
        MultiFuzzyTopology::from_opens_unchecked(shape, kind, opens)
            .map_err(|e| input("opens", e.to_string()))?
    };
    Ok(SpaceDocument {
        topology: Arc::new(topology),
        maps,
    })
}

/// Parses one set given as `{point: tuple}`; every point must appear.
pub fn parse_set(shape: &Arc<Shape>, value: &Value, path: &str) -> Result<MultiFuzzySet, CliError> {
    let rows = value
        .as_object()
        .ok_or_else(|| input(path, "expected an object from points to tuples"))?;
    if let Some(extra) = rows.keys().find(|k| shape.universe().index_of(k).is_none()) {
        return Err(input(format!("{path}.{extra}"), "unknown point"));
    }
    let chain = shape.chain();
    let mut grades = Vec::with_capacity(shape.cells());
    for label in shape.universe().labels() {
        let here = format!("{path}.{label}");
        let tuple = rows
            .get(label)
            .ok_or_else(|| input(here.as_str(), "missing point"))?;
        let entries: Vec<&Value> = match tuple {
            Value::Array(items) => items.iter().collect(),
            Value::String(_) => vec![tuple],
            _ => return Err(input(here.as_str(), "expected an array of grades")),
        };
        if entries.len() != shape.dimension() {
            return Err(input(
                here.as_str(),
                format!(
                    "expected {} grades, found {}",
                    shape.dimension(),
                    entries.len()
                ),
            ));
        }
        for (i, entry) in entries.into_iter().enumerate() {
            let text = entry
                .as_str()
                .ok_or_else(|| input(format!("{here}[{i}]"), "expected a \"k/D\" string"))?;
            grades.push(
                chain
                    .parse(text)
                    .map_err(|e| input(format!("{here}[{i}]"), e.to_string()))?,
            );
        }
    }
    MultiFuzzySet::from_grades(shape.clone(), grades).map_err(|e| input(path, e.to_string()))
}

// serde_json appends " at line L column C", which the path already carries
fn strip_location(message: &str) -> String {
    match message.rfind(" at line ") {
        Some(i) => message[..i].to_string(),
        None => message.to_string(),
    }
}

/// `{point: ["k/D", ...]}`.
pub fn set_to_json(set: &MultiFuzzySet) -> Value {
    let chain = set.shape().chain();
    let rows: Map<String, Value> = set
        .shape()
        .universe()
        .labels()
        .iter()
        .enumerate()
        .map(|(x, label)| {
            let tuple = set
                .tuple(x)
                .iter()
                .map(|g| Value::from(chain.format(*g)))
                .collect();
            (label.clone(), Value::Array(tuple))
        })
        .collect();
    Value::Object(rows)
}

pub fn family_to_json(family: &[MultiFuzzySet]) -> Value {
    Value::Array(family.iter().map(set_to_json).collect())
}

/// The canonical document for a space.
pub fn space_to_json(
    topology: &MultiFuzzyTopology,
    maps: &BTreeMap<String, BTreeMap<String, String>>,
) -> Value {
    let shape = topology.shape();
    let mut doc = json!({
        "D": shape.chain().denominator(),
        "kind": topology.kind().to_string(),
        "n": shape.dimension(),
        "opens": family_to_json(topology.opens()),
        "universe": shape.universe().labels(),
    });
    if !maps.is_empty() {
        doc["maps"] = json!(maps);
    }
    doc
}

pub fn serialize_space(doc: &SpaceDocument) -> String {
    let mut text = serde_json::to_string_pretty(&space_to_json(&doc.topology, &doc.maps))
        .expect("documents serialise");
    text.push('\n');
    text
}

/// `{point: point}`.
pub fn map_to_json(map: &PointMap) -> Value {
    let rows: Map<String, Value> = map
        .domain()
        .labels()
        .iter()
        .enumerate()
        .map(|(x, label)| {
            (
                label.clone(),
                Value::from(map.codomain().label(map.apply(x))),
            )
        })
        .collect();
    Value::Object(rows)
}

impl SpaceDocument {
    /// Resolves a named map against a codomain universe; with no name the
    /// document must hold exactly one map.
    pub fn point_map(
        &self,
        name: Option<&str>,
        codomain: &Arc<Universe>,
    ) -> Result<PointMap, CliError> {
        let (name, pairs) = match name {
            Some(name) => (
                name,
                self.maps
                    .get(name)
                    .ok_or_else(|| CliError::Usage(format!("no map named {name}")))?,
            ),
            None => match self.maps.len() {
                1 => self
                    .maps
                    .iter()
                    .next()
                    .map(|(k, v)| (k.as_str(), v))
                    .expect("one map"),
                0 => return Err(CliError::Usage("the document has no maps".into())),
                _ => {
                    return Err(CliError::Usage(
                        "several maps; choose one with --map".into(),
                    ))
                }
            },
        };
        PointMap::new(
            self.topology.shape().universe().clone(),
            codomain.clone(),
            pairs.iter().map(|(a, b)| (a.as_str(), b.as_str())),
        )
        .map_err(|e| input(format!("maps.{name}"), e.to_string()))
    }
}

/// Grade helper for callers building documents by hand.
pub fn grade_string(shape: &Shape, grade: Grade) -> String {
    shape.chain().format(grade)
}
