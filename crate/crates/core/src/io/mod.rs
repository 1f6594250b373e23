//! JSON input formats and rational serialization.
//!
//! Rationals are written as `"p/q"` strings (`"p"` for integers) and read from
//! such strings or from JSON integers. Vertex ids may be strings or integers;
//! internally they become indices `0..m` in order of first appearance (the
//! `"vertices"` list first, when present).

mod covers;
mod economy;

pub use covers::{parse_cover, parse_polytopes, CoverSpec, ParsedCover, SubdivisionNames};
pub use economy::parse_economy;

use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize, Serializer};
use serde_json::{Map, Value};

use crate::cones::{strict_dual, ConeGenerators, PolyhedralCone};
use crate::error::{Error, Result};
use crate::exactmath::{parse_rational, Rational};
use crate::families::IndexedFamily;
use crate::simplicial::{Simplex, SimplicialComplex, Vertex};

pub fn rational_to_string(r: &Rational) -> String {
    crate::exactmath::format_rational(r)
}

pub fn rational_vec_to_strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(rational_to_string).collect()
}

pub fn serialize_rational_vec<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
    rational_vec_to_strings(v).serialize(s)
}

pub fn serialize_optional_rational_vec<S: Serializer>(
    v: &Option<Vec<Rational>>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    v.as_ref().map(|v| rational_vec_to_strings(v)).serialize(s)
}

/// A rational as it appears in input files.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum RationalSpec {
    Text(String),
    Int(i64),
}

impl RationalSpec {
    pub fn value(&self) -> Result<Rational> {
        match self {
            RationalSpec::Text(s) => parse_rational(s),
            RationalSpec::Int(i) => Ok(crate::exactmath::rat(*i)),
        }
    }
}

pub fn rational_vector(spec: &[RationalSpec]) -> Result<Vec<Rational>> {
    spec.iter().map(RationalSpec::value).collect()
}

pub fn rational_rows(spec: &[Vec<RationalSpec>]) -> Result<Vec<Vec<Rational>>> {
    spec.iter().map(|r| rational_vector(r)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Deserialize)]
#[serde(untagged)]
pub enum VertexId {
    Text(String),
    Int(i64),
}

impl VertexId {
    pub fn label(&self) -> String {
        match self {
            VertexId::Text(s) => s.clone(),
            VertexId::Int(i) => i.to_string(),
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexSpec {
    #[serde(default)]
    pub vertices: Option<Vec<VertexId>>,
    pub maximal_simplices: Vec<Vec<VertexId>>,
}

/// A complex together with the names of its vertices.
#[derive(Clone, Debug)]
pub struct LabelledComplex {
    pub labels: Vec<String>,
    pub complex: SimplicialComplex,
}

impl LabelledComplex {
    pub fn index_of(&self, label: &str) -> Result<Vertex> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownVertex(label.to_string()))
    }

    pub fn simplex_labels(&self, s: &Simplex) -> Vec<String> {
        s.vertices().iter().map(|&v| self.labels[v].clone()).collect()
    }

    /// Face closure of simplices written with this complex's labels.
    pub fn subcomplex_from_ids(&self, simplices: &[Vec<VertexId>]) -> Result<SimplicialComplex> {
        let mut out = Vec::new();
        for s in simplices {
            if s.is_empty() {
                return Err(Error::invalid("empty simplex"));
            }
            out.push(s.iter().map(|v| self.index_of(&v.label())).collect::<Result<Vec<_>>>()?);
        }
        let c = SimplicialComplex::from_maximal(out);
        if !c.is_subcomplex_of(&self.complex) {
            return Err(Error::NotASubcomplex(format!("{simplices:?}")));
        }
        Ok(c)
    }
}

pub fn complex_from_spec(spec: &ComplexSpec) -> Result<LabelledComplex> {
    let mut labels: Vec<String> = Vec::new();
    let mut index: HashMap<String, Vertex> = HashMap::new();
    let fixed = spec.vertices.is_some();
    for v in spec.vertices.iter().flatten() {
        let l = v.label();
        if index.insert(l.clone(), labels.len()).is_some() {
            return Err(Error::invalid(format!("duplicate vertex {l:?}")));
        }
        labels.push(l);
    }
    let mut maximal = Vec::new();
    for s in &spec.maximal_simplices {
        if s.is_empty() {
            return Err(Error::invalid("empty simplex in maximal_simplices"));
        }
        let mut vs = Vec::new();
        for v in s {
            let l = v.label();
            let i = match index.get(&l) {
                Some(&i) => i,
                None if fixed => return Err(Error::UnknownVertex(l)),
                None => {
                    index.insert(l.clone(), labels.len());
                    labels.push(l);
                    labels.len() - 1
                }
            };
            vs.push(i);
        }
        maximal.push(vs);
    }
    let mut complex = SimplicialComplex::from_maximal(maximal);
    // Listed vertices that no simplex mentions are isolated points.
    let missing: Vec<Vec<Vertex>> = (0..labels.len()).filter(|&v| !complex.has_vertex(v)).map(|v| vec![v]).collect();
    if !missing.is_empty() {
        complex = complex.union(&SimplicialComplex::from_maximal(missing));
    }
    Ok(LabelledComplex { labels, complex })
}

pub fn parse_complex(v: &Value) -> Result<LabelledComplex> {
    let spec: ComplexSpec = serde_json::from_value(v.clone())?;
    complex_from_spec(&spec)
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum ConeSpec {
    Inequalities {
        dim: usize,
        #[serde(default)]
        weak: Vec<Vec<RationalSpec>>,
        #[serde(default)]
        strict: Vec<Vec<RationalSpec>>,
        #[serde(default)]
        exclude_origin: bool,
    },
    Generators {
        generators: Vec<Vec<RationalSpec>>,
        derive: String,
    },
}

pub fn cone_from_spec(spec: &ConeSpec, expected_dim: Option<usize>) -> Result<PolyhedralCone> {
    let cone = match spec {
        ConeSpec::Inequalities {
            dim,
            weak,
            strict,
            exclude_origin,
        } => PolyhedralCone::new(*dim, rational_rows(weak)?, rational_rows(strict)?, *exclude_origin)?,
        ConeSpec::Generators { generators, derive } => {
            if derive != "strict_dual" {
                return Err(Error::invalid(format!("unknown derivation {derive:?}")));
            }
            let rows = rational_rows(generators)?;
            let dim = match (rows.first(), expected_dim) {
                (Some(r), _) => r.len(),
                (None, Some(d)) => d,
                (None, None) => return Err(Error::invalid("generator list is empty")),
            };
            strict_dual(&ConeGenerators::new(dim, rows)?)?
        }
    };
    if let Some(d) = expected_dim {
        if cone.dim() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: cone.dim(),
            });
        }
    }
    Ok(cone)
}

pub fn parse_cone(v: &Value, expected_dim: Option<usize>) -> Result<PolyhedralCone> {
    let spec: ConeSpec = serde_json::from_value(v.clone())
        .map_err(|e| Error::invalid(format!("malformed cone spec: {e}")))?;
    cone_from_spec(&spec, expected_dim)
}

/// A family read from JSON, with the ambient vertex names for subcomplex
/// families.
#[derive(Clone, Debug)]
pub struct ParsedFamily {
    pub family: IndexedFamily,
    pub ambient: Option<LabelledComplex>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FamilySpec {
    ambient: Value,
    members: Map<String, Value>,
    #[serde(default)]
    declared_dimension: Option<usize>,
}

pub fn parse_family(v: &Value) -> Result<ParsedFamily> {
    let spec: FamilySpec = serde_json::from_value(v.clone())?;
    if spec.members.is_empty() {
        return Err(Error::invalid("a family needs at least one member"));
    }
    let cone_dim = spec.ambient.get("dimension").and_then(Value::as_u64).map(|d| d as usize);
    let (family, ambient) = if let Some(dim) = cone_dim {
        let members = spec
            .members
            .iter()
            .map(|(l, m)| Ok((l.clone(), parse_cone(m, Some(dim))?)))
            .collect::<Result<Vec<_>>>()?;
        (IndexedFamily::cones(dim, members)?, None)
    } else {
        let ambient = parse_complex(&spec.ambient)?;
        let members = spec
            .members
            .iter()
            .map(|(l, m)| {
                let simplices: Vec<Vec<VertexId>> = serde_json::from_value(m.clone())
                    .map_err(|e| Error::invalid(format!("member {l}: expected a simplex list ({e})")))?;
                Ok((l.clone(), ambient.subcomplex_from_ids(&simplices)?))
            })
            .collect::<Result<Vec<_>>>()?;
        (
            IndexedFamily::subcomplexes(Arc::new(ambient.complex.clone()), members)?,
            Some(ambient),
        )
    };
    let family = match spec.declared_dimension {
        Some(n) => family.with_declared_dimension(n)?,
        None => family,
    };
    Ok(ParsedFamily { family, ambient })
}

/// `{"dim": n, "weak": …, "strict": …, "exclude_origin": …}` for a cone.
pub fn cone_to_json(c: &PolyhedralCone) -> Value {
    let rows = |m: &crate::exactmath::RationalMatrix| -> Value {
        m.row_vectors().iter().map(|r| Value::from(rational_vec_to_strings(r))).collect()
    };
    serde_json::json!({
        "dim": c.dim(),
        "weak": rows(c.weak_rows()),
        "strict": rows(c.strict_rows()),
        "exclude_origin": c.excludes_origin(),
    })
}
