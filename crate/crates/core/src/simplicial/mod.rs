//! Finite abstract simplicial complexes.
//!
//! Vertices are `usize` tokens; a [`Simplex`] is a sorted, duplicate-free,
//! nonempty vertex list. Simplices order by dimension first and then
//! lexicographically, so iterating a complex walks it skeleton by skeleton.

mod homology;
mod nerve;
mod subdivision;

pub use homology::{is_acyclic, reduced_homology, GradedGroup, HomologyProfile};
pub use nerve::nerve_from_predicate;
pub use subdivision::{barycentric_subdivision, iterated_subdivision, SubdivisionMap};

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Vertex = usize;

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Simplex(Vec<Vertex>);

impl Simplex {
    /// Sorts and dedups. Panics on an empty vertex list.
    pub fn new(vertices: impl IntoIterator<Item = Vertex>) -> Self {
        let mut v: Vec<Vertex> = vertices.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        assert!(!v.is_empty(), "a simplex needs at least one vertex");
        Simplex(v)
    }

    pub fn vertex(v: Vertex) -> Self {
        Simplex(vec![v])
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_face_of(&self, other: &Simplex) -> bool {
        self.0.iter().all(|v| other.contains(*v))
    }

    /// Codimension-one faces, `i`-th entry omits the `i`-th vertex.
    pub fn facets(&self) -> Vec<Simplex> {
        if self.0.len() == 1 {
            return Vec::new();
        }
        (0..self.0.len())
            .map(|i| {
                let mut v = self.0.clone();
                v.remove(i);
                Simplex(v)
            })
            .collect()
    }

    /// All nonempty faces, including the simplex itself.
    pub fn faces(&self) -> Vec<Simplex> {
        let n = self.0.len();
        (1u64..(1 << n))
            .map(|mask| Simplex((0..n).filter(|i| mask & (1 << i) != 0).map(|i| self.0[i]).collect()))
            .collect()
    }
}

impl Ord for Simplex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Simplex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

#[derive(Clone, Default, PartialEq, Eq, Hash, Debug)]
pub struct SimplicialComplex {
    simplices: BTreeSet<Simplex>,
}

impl SimplicialComplex {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Face closure of the given vertex sets. Empty vertex sets are ignored.
    pub fn from_maximal<I, S>(simplices: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: IntoIterator<Item = Vertex>,
    {
        let mut out = BTreeSet::new();
        for s in simplices {
            let v: Vec<Vertex> = s.into_iter().collect();
            if v.is_empty() {
                continue;
            }
            let s = Simplex::new(v);
            if !out.contains(&s) {
                out.extend(s.faces());
            }
        }
        SimplicialComplex { simplices: out }
    }

    /// Face closure of an arbitrary simplex set.
    pub fn closure<'a>(simplices: impl IntoIterator<Item = &'a Simplex>) -> Self {
        Self::from_maximal(simplices.into_iter().map(|s| s.0.clone()))
    }

    /// Accepts a simplex set that is already face-closed.
    pub fn from_closed_set(simplices: BTreeSet<Simplex>) -> Result<Self> {
        for s in &simplices {
            if let Some(f) = s.facets().into_iter().find(|f| !simplices.contains(f)) {
                return Err(Error::invalid(format!("simplex set not closed: {s:?} lacks face {f:?}")));
            }
        }
        Ok(SimplicialComplex { simplices })
    }

    pub fn simplex(vertices: impl IntoIterator<Item = Vertex>) -> Self {
        Self::from_maximal([vertices.into_iter().collect::<Vec<_>>()])
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn dim(&self) -> Option<usize> {
        self.simplices.iter().next_back().map(Simplex::dim)
    }

    pub fn vertices(&self) -> BTreeSet<Vertex> {
        self.simplices
            .iter()
            .take_while(|s| s.dim() == 0)
            .map(|s| s.0[0])
            .collect()
    }

    pub fn has_vertex(&self, v: Vertex) -> bool {
        self.simplices.contains(&Simplex::vertex(v))
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.simplices.contains(s)
    }

    pub fn simplices(&self) -> impl DoubleEndedIterator<Item = &Simplex> + '_ {
        self.simplices.iter()
    }

    pub fn simplex_set(&self) -> &BTreeSet<Simplex> {
        &self.simplices
    }

    pub fn simplices_of_dim(&self, q: usize) -> impl Iterator<Item = &Simplex> + '_ {
        self.simplices.iter().filter(move |s| s.dim() == q)
    }

    /// Number of simplices per dimension.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = vec![0; self.dim().map_or(0, |d| d + 1)];
        for s in &self.simplices {
            f[s.dim()] += 1;
        }
        f
    }

    /// `Σ_q (−1)^q f_q − 1`, the alternating count including the empty simplex.
    pub fn reduced_euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(q, &f)| if q % 2 == 0 { f as i64 } else { -(f as i64) })
            .sum::<i64>()
            - 1
    }

    pub fn maximal_simplices(&self) -> Vec<Simplex> {
        let mut out: Vec<Simplex> = Vec::new();
        for s in self.simplices.iter().rev() {
            if !out.iter().any(|m| s.is_face_of(m)) {
                out.push(s.clone());
            }
        }
        out.sort();
        out
    }

    /// True when the complex is one simplex together with all its faces.
    pub fn is_single_simplex(&self) -> bool {
        self.maximal_simplices().len() == 1
    }

    fn require_vertex(&self, v: Vertex) -> Result<()> {
        if self.has_vertex(v) {
            Ok(())
        } else {
            Err(Error::UnknownVertex(v.to_string()))
        }
    }

    /// Simplices having `v` as a vertex. Not closed under faces.
    pub fn open_star(&self, v: Vertex) -> Result<BTreeSet<Simplex>> {
        self.require_vertex(v)?;
        Ok(self.simplices.iter().filter(|s| s.contains(v)).cloned().collect())
    }

    pub fn closed_star(&self, v: Vertex) -> Result<SimplicialComplex> {
        Ok(Self::closure(&self.open_star(v)?))
    }

    /// All simplices whose vertices lie in `w`.
    pub fn full_subcomplex(&self, w: &BTreeSet<Vertex>) -> Result<SimplicialComplex> {
        if let Some(v) = w.iter().find(|v| !self.has_vertex(**v)) {
            return Err(Error::UnknownVertex(v.to_string()));
        }
        Ok(SimplicialComplex {
            simplices: self
                .simplices
                .iter()
                .filter(|s| s.0.iter().all(|v| w.contains(v)))
                .cloned()
                .collect(),
        })
    }

    /// Cone with a new `apex` vertex (which must not already be present).
    pub fn cone(&self, apex: Vertex) -> Result<SimplicialComplex> {
        if self.has_vertex(apex) {
            return Err(Error::invalid(format!("apex {apex} already a vertex")));
        }
        let mut simplices = self.simplices.clone();
        simplices.insert(Simplex::vertex(apex));
        for s in &self.simplices {
            simplices.insert(Simplex::new(s.0.iter().copied().chain([apex])));
        }
        Ok(SimplicialComplex { simplices })
    }

    pub fn union(&self, other: &SimplicialComplex) -> SimplicialComplex {
        SimplicialComplex {
            simplices: self.simplices.union(&other.simplices).cloned().collect(),
        }
    }

    pub fn intersection(&self, other: &SimplicialComplex) -> SimplicialComplex {
        SimplicialComplex {
            simplices: self.simplices.intersection(&other.simplices).cloned().collect(),
        }
    }

    pub fn is_subcomplex_of(&self, other: &SimplicialComplex) -> bool {
        self.simplices.is_subset(&other.simplices)
    }
}

/// A face-closed subset of a fixed ambient complex.
#[derive(Clone, Debug)]
pub struct Subcomplex {
    parent: Arc<SimplicialComplex>,
    complex: SimplicialComplex,
}

impl Subcomplex {
    pub fn new(parent: Arc<SimplicialComplex>, complex: SimplicialComplex) -> Result<Self> {
        if !complex.is_subcomplex_of(&parent) {
            return Err(Error::NotASubcomplex(format!("{:?}", complex.maximal_simplices())));
        }
        Ok(Subcomplex { parent, complex })
    }

    pub fn whole(parent: Arc<SimplicialComplex>) -> Self {
        let complex = (*parent).clone();
        Subcomplex { parent, complex }
    }

    pub fn full(parent: &Arc<SimplicialComplex>, w: &BTreeSet<Vertex>) -> Result<Self> {
        let complex = parent.full_subcomplex(w)?;
        Ok(Subcomplex {
            parent: Arc::clone(parent),
            complex,
        })
    }

    pub fn closed_star(parent: &Arc<SimplicialComplex>, v: Vertex) -> Result<Self> {
        let complex = parent.closed_star(v)?;
        Ok(Subcomplex {
            parent: Arc::clone(parent),
            complex,
        })
    }

    pub fn parent(&self) -> &Arc<SimplicialComplex> {
        &self.parent
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn into_complex(self) -> SimplicialComplex {
        self.complex
    }

    fn same_parent(&self, other: &Subcomplex) -> Result<()> {
        if Arc::ptr_eq(&self.parent, &other.parent) || self.parent == other.parent {
            Ok(())
        } else {
            Err(Error::ParentMismatch)
        }
    }

    pub fn union(&self, other: &Subcomplex) -> Result<Subcomplex> {
        self.same_parent(other)?;
        Ok(Subcomplex {
            parent: Arc::clone(&self.parent),
            complex: self.complex.union(&other.complex),
        })
    }

    pub fn intersection(&self, other: &Subcomplex) -> Result<Subcomplex> {
        self.same_parent(other)?;
        Ok(Subcomplex {
            parent: Arc::clone(&self.parent),
            complex: self.complex.intersection(&other.complex),
        })
    }
}

impl PartialEq for Subcomplex {
    fn eq(&self, other: &Self) -> bool {
        self.complex == other.complex && *self.parent == *other.parent
    }
}
