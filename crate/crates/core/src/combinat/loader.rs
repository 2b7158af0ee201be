use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::Deserialize;
use serde_json::Value;

use super::{AffineConnection, CombinatError, FiniteGroup, FiniteGroupoid, Form1, GroupoidConnection, NeighbourSpace};

/// A model file after validation.
///
/// ```json
/// {"points": ["a", "b", "c"],
///  "neighbours": [["a", "b"], [1, 2]],
///  "group": {"name": "S3"},
///  "form1": {"a,b": "(0 1)"},
///  "connection": {"b,c": "(0 1 2)"},
///  "lambda": {"a,b,b": "a"},
///  "morphisms": [{"target": {"points": 1, "neighbours": []}, "map": [0, 0, 0]}]}
/// ```
///
/// Points and elements may be given by name or index. `"points"` may also be
/// a count. A `"groupoid"` (arrows with `source`/`target` and a composition
/// table of arrow indices or `null`) replaces the group for `"connection"`.
#[derive(Clone, Debug)]
pub struct Model {
    pub space: Arc<NeighbourSpace>,
    pub group: Option<Arc<FiniteGroup>>,
    pub groupoid: Option<Arc<FiniteGroupoid>>,
    pub form1: Option<Form1>,
    pub connection: Option<GroupoidConnection<FiniteGroup>>,
    pub groupoid_connection: Option<GroupoidConnection<FiniteGroupoid>>,
    pub lambda: Option<AffineConnection>,
    pub morphisms: Vec<Morphism>,
}

/// A declared map of neighbour spaces, checked to preserve `~`.
#[derive(Clone, Debug)]
pub struct Morphism {
    pub source: Arc<NeighbourSpace>,
    pub target: Arc<NeighbourSpace>,
    pub map: Vec<usize>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawModel {
    points: Value,
    #[serde(default)]
    neighbours: Vec<[Value; 2]>,
    group: Option<RawGroup>,
    groupoid: Option<RawGroupoid>,
    form1: Option<BTreeMap<String, Value>>,
    connection: Option<BTreeMap<String, Value>>,
    lambda: Option<BTreeMap<String, Value>>,
    #[serde(default)]
    morphisms: Vec<RawMorphism>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpace {
    points: Value,
    #[serde(default)]
    neighbours: Vec<[Value; 2]>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGroup {
    name: Option<String>,
    table: Option<Vec<Vec<usize>>>,
    names: Option<Vec<String>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGroupoid {
    arrows: Vec<RawArrow>,
    table: Vec<Vec<Option<usize>>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawArrow {
    name: Option<String>,
    source: Value,
    target: Value,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMorphism {
    source: Option<RawSpace>,
    target: RawSpace,
    map: Vec<Value>,
}

fn bad(msg: impl Into<String>) -> CombinatError {
    CombinatError::Model(msg.into())
}

fn label(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn build_space(raw: &RawSpace) -> Result<NeighbourSpace, CombinatError> {
    let names: Vec<String> = match &raw.points {
        Value::Array(items) => items.iter().map(label).collect(),
        Value::Number(n) => {
            let n = n.as_u64().ok_or_else(|| bad("\"points\" must be a count or a list"))?;
            (0..n).map(|i| i.to_string()).collect()
        }
        _ => return Err(bad("\"points\" must be a count or a list")),
    };
    let probe = NeighbourSpace::named(names.clone(), [])?;
    let edges = raw
        .neighbours
        .iter()
        .map(|[a, b]| Ok((point(&probe, a)?, point(&probe, b)?)))
        .collect::<Result<Vec<_>, CombinatError>>()?;
    NeighbourSpace::named(names, edges)
}

fn point(space: &NeighbourSpace, v: &Value) -> Result<usize, CombinatError> {
    let name = label(v);
    space.point(&name).ok_or_else(|| bad(format!("unknown point {name:?}")))
}

fn key_points<const K: usize>(space: &NeighbourSpace, key: &str) -> Result<[usize; K], CombinatError> {
    let parts: Vec<&str> = key.split(',').collect();
    if parts.len() != K {
        return Err(bad(format!("key {key:?} must name {K} points")));
    }
    let mut out = [0; K];
    for (o, p) in out.iter_mut().zip(parts) {
        *o = space.point(p).ok_or_else(|| bad(format!("unknown point {:?} in key {key:?}", p.trim())))?;
    }
    Ok(out)
}

fn group_element(group: &FiniteGroup, v: &Value) -> Result<usize, CombinatError> {
    let name = label(v);
    group.element(&name).ok_or(CombinatError::NoSuchElement(name))
}

fn build_group(raw: RawGroup) -> Result<FiniteGroup, CombinatError> {
    match (raw.name, raw.table) {
        (Some(name), None) => FiniteGroup::named(&name),
        (name, Some(table)) => FiniteGroup::from_table(name.unwrap_or_else(|| "G".into()), table, raw.names),
        (None, None) => Err(bad("\"group\" needs a \"name\" or a \"table\"")),
    }
}

fn build_groupoid(space: &NeighbourSpace, raw: RawGroupoid) -> Result<FiniteGroupoid, CombinatError> {
    let ends = raw
        .arrows
        .iter()
        .map(|a| Ok((point(space, &a.source)?, point(space, &a.target)?)))
        .collect::<Result<Vec<_>, CombinatError>>()?;
    let names = raw
        .arrows
        .iter()
        .enumerate()
        .map(|(i, a)| a.name.clone().unwrap_or_else(|| i.to_string()))
        .collect();
    FiniteGroupoid::new(space.len(), ends, raw.table, Some(names))
}

impl Model {
    pub fn from_json(text: &str) -> Result<Self, CombinatError> {
        let value: Value = serde_json::from_str(text).map_err(|e| bad(e.to_string()))?;
        Self::from_value(value)
    }

    pub fn from_value(value: Value) -> Result<Self, CombinatError> {
        let raw: RawModel = serde_json::from_value(value).map_err(|e| bad(e.to_string()))?;
        let space = RawSpace { points: raw.points, neighbours: raw.neighbours };
        let space = Arc::new(build_space(&space)?);
        let group = raw.group.map(build_group).transpose()?.map(Arc::new);
        let groupoid = raw.groupoid.map(|g| build_groupoid(&space, g)).transpose()?.map(Arc::new);
        let need_group = || group.clone().ok_or_else(|| bad("a \"group\" is required"));

        let pairs = |values: &BTreeMap<String, Value>, elem: &dyn Fn(&Value) -> Result<usize, CombinatError>| {
            values
                .iter()
                .map(|(k, v)| {
                    let [x, y] = key_points::<2>(&space, k)?;
                    Ok(((x, y), elem(v)?))
                })
                .collect::<Result<HashMap<_, _>, CombinatError>>()
        };

        let form1 = match &raw.form1 {
            Some(values) => {
                let g = need_group()?;
                Some(Form1::new(&space, &g, &pairs(values, &|v| group_element(&g, v))?)?)
            }
            None => None,
        };

        let (mut connection, mut groupoid_connection) = (None, None);
        if let Some(values) = &raw.connection {
            match &groupoid {
                Some(gd) => {
                    let arrow = |v: &Value| {
                        let name = label(v);
                        gd.arrow(&name).ok_or(CombinatError::NoSuchElement(name))
                    };
                    groupoid_connection = Some(GroupoidConnection::new(&space, gd, &pairs(values, &arrow)?)?);
                }
                None => {
                    let g = need_group()?;
                    connection = Some(GroupoidConnection::new(&space, &g, &pairs(values, &|v| group_element(&g, v))?)?);
                }
            }
        }

        let lambda = match &raw.lambda {
            Some(values) => {
                let entries = values
                    .iter()
                    .map(|(k, v)| Ok((key_points::<3>(&space, k)?.into(), point(&space, v)?)))
                    .collect::<Result<HashMap<(usize, usize, usize), usize>, CombinatError>>()?;
                Some(AffineConnection::new(&space, &entries)?)
            }
            None => None,
        };

        let morphisms = raw
            .morphisms
            .iter()
            .map(|m| {
                let source = match &m.source {
                    Some(s) => Arc::new(build_space(s)?),
                    None => space.clone(),
                };
                let target = Arc::new(build_space(&m.target)?);
                let map = m.map.iter().map(|v| point(&target, v)).collect::<Result<Vec<_>, _>>()?;
                source.check_morphism(&target, &map)?;
                Ok(Morphism { source, target, map })
            })
            .collect::<Result<Vec<_>, CombinatError>>()?;

        Ok(Model { space, group, groupoid, form1, connection, groupoid_connection, lambda, morphisms })
    }
}

/// Parses and validates a model file.
pub fn load_model(text: &str) -> Result<Model, CombinatError> {
    Model::from_json(text)
}
