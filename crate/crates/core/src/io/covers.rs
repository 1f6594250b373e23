//! Cover and polytope-family inputs.
//!
//! A vertex of the level-`d` subdivision is written as the list of level-`d−1`
//! vertex names spanning the simplex it is the barycenter of; at level 0 it
//! is a vertex id of the complex. So at level 2 the barycenter of the edge
//! `[a] – [a, b]` is `[["a"], ["a", "b"]]`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use serde::Deserialize;
use serde_json::{Map, Value};

use super::{parse_complex, rational_rows, rational_vector, LabelledComplex, RationalSpec, VertexId};
use crate::covers::{ConvexPolytopeFamily, RegularCover, SimpleCover};
use crate::error::{Error, Result};
use crate::simplicial::{iterated_subdivision, Simplex, SimplicialComplex, SubdivisionMap, Vertex};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum Name {
    Base(String),
    Set(BTreeSet<Name>),
}

impl Name {
    fn to_json(&self) -> Value {
        match self {
            Name::Base(s) => Value::from(s.clone()),
            Name::Set(ns) => ns.iter().map(Name::to_json).collect(),
        }
    }

    fn from_json(v: &Value, depth: usize) -> Result<Name> {
        if depth == 0 {
            let id: VertexId = serde_json::from_value(v.clone())
                .map_err(|_| Error::invalid(format!("expected a vertex id, found {v}")))?;
            return Ok(Name::Base(id.label()));
        }
        let items = v
            .as_array()
            .ok_or_else(|| Error::invalid(format!("expected a list naming a subdivided vertex, found {v}")))?;
        let set = items
            .iter()
            .map(|i| Name::from_json(i, depth - 1))
            .collect::<Result<BTreeSet<_>>>()?;
        if set.len() != items.len() || set.is_empty() {
            return Err(Error::invalid(format!("malformed subdivided vertex {v}")));
        }
        Ok(Name::Set(set))
    }
}

/// Names of the vertices of a subdivision, in both directions.
#[derive(Clone, Debug)]
pub struct SubdivisionNames {
    level: usize,
    names: Vec<Name>,
    index: HashMap<Name, Vertex>,
}

impl SubdivisionNames {
    pub fn new(x: &LabelledComplex, sd: &SubdivisionMap) -> Self {
        let mut names: Vec<Name> = x.labels.iter().cloned().map(Name::Base).collect();
        for level in sd.barycenters() {
            names = level
                .iter()
                .map(|s| Name::Set(s.vertices().iter().map(|&v| names[v].clone()).collect()))
                .collect();
        }
        let index = names.iter().enumerate().map(|(i, n)| (n.clone(), i)).collect();
        SubdivisionNames {
            level: sd.level(),
            names,
            index,
        }
    }

    pub fn vertex(&self, v: &Value) -> Result<Vertex> {
        let name = Name::from_json(v, self.level)?;
        self.index
            .get(&name)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(v.to_string()))
    }

    pub fn name(&self, v: Vertex) -> Value {
        self.names[v].to_json()
    }

    pub fn simplex(&self, s: &Simplex) -> Value {
        s.vertices().iter().map(|&v| self.name(v)).collect()
    }
}

#[derive(Clone, Debug)]
pub enum CoverSpec {
    Regular(RegularCover),
    Simple(SimpleCover),
}

#[derive(Clone, Debug)]
pub struct ParsedCover {
    pub complex: LabelledComplex,
    pub names: SubdivisionNames,
    pub cover: CoverSpec,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct CoverFile {
    complex: Value,
    subdivision_level: usize,
    sets: Map<String, Value>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SetSpec {
    #[serde(default)]
    simplices: Option<Vec<Vec<Value>>>,
    #[serde(default)]
    star_vertices: Option<Vec<Value>>,
}

/// Levels above this make the subdivision too large to enumerate.
const MAX_LEVEL: usize = 3;

pub fn parse_cover(v: &Value) -> Result<ParsedCover> {
    let file: CoverFile = serde_json::from_value(v.clone())?;
    if file.subdivision_level > MAX_LEVEL {
        return Err(Error::invalid(format!(
            "subdivision level {} exceeds {MAX_LEVEL}",
            file.subdivision_level
        )));
    }
    let complex = parse_complex(&file.complex)?;
    let sd = iterated_subdivision(Arc::new(complex.complex.clone()), file.subdivision_level);
    let names = SubdivisionNames::new(&complex, &sd);

    let mut closed = BTreeMap::new();
    let mut open = BTreeMap::new();
    for (label, spec) in &file.sets {
        let alpha = complex.index_of(label)?;
        let spec: SetSpec = serde_json::from_value(spec.clone())
            .map_err(|e| Error::invalid(format!("set {label}: {e}")))?;
        match (spec.simplices, spec.star_vertices) {
            (Some(simplices), None) => {
                let mut out = BTreeSet::new();
                for s in &simplices {
                    if s.is_empty() {
                        return Err(Error::invalid(format!("set {label}: empty simplex")));
                    }
                    let s = Simplex::new(s.iter().map(|v| names.vertex(v)).collect::<Result<Vec<_>>>()?);
                    if !sd.source().contains(&s) {
                        return Err(Error::NotASubcomplex(format!("set {label}: {}", names.simplex(&s))));
                    }
                    out.insert(s);
                }
                closed.insert(alpha, SimplicialComplex::closure(&out));
            }
            (None, Some(vs)) => {
                let w = vs.iter().map(|v| names.vertex(v)).collect::<Result<BTreeSet<_>>>()?;
                open.insert(alpha, w);
            }
            _ => {
                return Err(Error::invalid(format!(
                    "set {label}: give exactly one of \"simplices\" or \"star_vertices\""
                )))
            }
        }
    }
    let cover = match (closed.is_empty(), open.is_empty()) {
        (false, true) => CoverSpec::Regular(RegularCover::on_subdivision(sd, closed)?),
        (true, false) => CoverSpec::Simple(SimpleCover::on_subdivision(sd, open)?),
        (true, true) => return Err(Error::invalid("cover has no sets")),
        (false, false) => return Err(Error::invalid("cover mixes closed and open-star sets")),
    };
    Ok(ParsedCover { complex, names, cover })
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct PolytopeFile {
    dim: usize,
    members: Map<String, Value>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct PolytopeSpec {
    #[serde(rename = "A")]
    a: Vec<Vec<RationalSpec>>,
    b: Vec<RationalSpec>,
}

/// `{"dim": n, "members": {"label": {"A": [...], "b": [...]}}}`, each member `A x ≤ b`.
pub fn parse_polytopes(v: &Value) -> Result<ConvexPolytopeFamily> {
    let file: PolytopeFile = serde_json::from_value(v.clone())?;
    if file.dim == 0 {
        return Err(Error::invalid("dimension must be positive"));
    }
    let members = file
        .members
        .iter()
        .map(|(label, m)| {
            let spec: PolytopeSpec = serde_json::from_value(m.clone())
                .map_err(|e| Error::invalid(format!("member {label}: {e}")))?;
            Ok((label.clone(), rational_rows(&spec.a)?, rational_vector(&spec.b)?))
        })
        .collect::<Result<Vec<_>>>()?;
    ConvexPolytopeFamily::new(file.dim, members)
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn half_edge_cover_by_names() {
        let p = parse_cover(&json!({
            "complex": {"maximal_simplices": [["a", "b"]]},
            "subdivision_level": 1,
            "sets": {
                "a": {"simplices": [[["a"], ["a", "b"]]]},
                "b": {"simplices": [[["b"], ["b", "a"]]]}
            }
        }))
        .unwrap();
        let CoverSpec::Regular(rc) = p.cover else { panic!() };
        assert_eq!(rc.sets()[&0].len(), 3);
        let mid = p.names.vertex(&json!(["a", "b"])).unwrap();
        assert_eq!(p.names.name(mid), json!(["a", "b"]));
    }

    #[test]
    fn level_two_names_nest() {
        let p = parse_cover(&json!({
            "complex": {"maximal_simplices": [["a", "b"]]},
            "subdivision_level": 2,
            "sets": {
                "a": {"star_vertices": [[["a"]], [["a"], ["a", "b"]], [["a", "b"]]]},
                "b": {"star_vertices": [[["b"]], [["b"], ["a", "b"]]]}
            }
        }))
        .unwrap();
        assert!(matches!(p.cover, CoverSpec::Simple(_)));
    }

    #[test]
    fn rejects_mixed_and_unknown() {
        let base = |sets: Value| json!({"complex": {"maximal_simplices": [["a"]]}, "subdivision_level": 0, "sets": sets});
        assert!(parse_cover(&base(json!({"a": {"simplices": [["z"]]}}))).is_err());
        assert!(parse_cover(&base(json!({"a": {"simplices": [["a"]], "star_vertices": ["a"]}}))).is_err());
        assert!(parse_cover(&base(json!({"a": {"simplices": [["a"]]}}))).is_ok());
    }

    #[test]
    fn polytopes() {
        let f = parse_polytopes(&json!({"dim": 1, "members": {"p": {"A": [[1], [-1]], "b": ["1/2", 0]}}})).unwrap();
        assert_eq!(f.len(), 1);
        assert!(parse_polytopes(&json!({"dim": 1, "members": {"p": {"A": [[1]], "b": []}}})).is_err());
    }
}
