//! Simple and regular covers of a simplicial complex `X`, living on an
//! iterated barycentric subdivision `X′`, and the intersection theorems for
//! them.
//!
//! A regular cover assigns to each vertex `α` of `X` a subcomplex `C_α` of
//! `X′` (a closed set) such that the part of `X′` over every full subcomplex
//! `[θ]` of `X` lies in `⋃_{α∈θ} C_α`. A simple cover assigns to each `α` a
//! set `W_α` of vertices of `X′`; the open set `U_α` is the union of their
//! open stars, and the closure of `U_α` must lie in the open star of `α`.
//!
//! Points of `|X′|` are handled through the simplices whose relative
//! interiors contain them, so every inclusion and intersection question
//! becomes a finite one about simplices of `X′`.

mod helly;

pub use helly::{helly_check, ConvexPolytopeFamily, HellyReport};

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::simplicial::{
    iterated_subdivision, nerve_from_predicate, reduced_homology, HomologyProfile, Simplex, SimplicialComplex,
    SubdivisionMap, Vertex,
};
use crate::subsets::{check_guard, combinations, lex_subsets, DEFAULT_INDEX_GUARD};

/// Positions of the vertices of `X` (the index set `S`) as bits.
#[derive(Clone, Debug)]
struct IndexSet {
    vertices: Vec<Vertex>,
    position: BTreeMap<Vertex, usize>,
}

impl IndexSet {
    fn of(x: &SimplicialComplex) -> Self {
        let vertices: Vec<Vertex> = x.vertices().into_iter().collect();
        let position = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        IndexSet { vertices, position }
    }

    fn mask_of(&self, s: &Simplex) -> u64 {
        s.vertices().iter().fold(0, |m, v| m | 1 << self.position[v])
    }

    fn mask_of_positions(theta: &[usize]) -> u64 {
        theta.iter().fold(0, |m, &p| m | 1 << p)
    }

    fn vertices_of(&self, theta: &[usize]) -> Vec<Vertex> {
        theta.iter().map(|&p| self.vertices[p]).collect()
    }

    fn len(&self) -> usize {
        self.vertices.len()
    }
}

/// Closed cover `{C_α}` of `X′` indexed by the vertices of `X`.
#[derive(Clone, Debug)]
pub struct RegularCover {
    subdivision: SubdivisionMap,
    sets: BTreeMap<Vertex, SimplicialComplex>,
    index: IndexSet,
}

impl RegularCover {
    pub fn new(x: Arc<SimplicialComplex>, level: usize, sets: BTreeMap<Vertex, SimplicialComplex>) -> Result<Self> {
        Self::on_subdivision(iterated_subdivision(x, level), sets)
    }

    /// Checks that the keys are exactly the vertices of `X` and that each set
    /// is a subcomplex of `X′`. Covering is the `θ = S` case of regularity and
    /// is left to [`is_regular_cover`].
    pub fn on_subdivision(subdivision: SubdivisionMap, sets: BTreeMap<Vertex, SimplicialComplex>) -> Result<Self> {
        let x = subdivision.target();
        let index = IndexSet::of(x);
        check_guard(index.len(), crate::subsets::MAX_INDEX_GUARD)?;
        let keys: Vec<Vertex> = sets.keys().copied().collect();
        if keys != index.vertices {
            return Err(Error::invalid("cover sets must be indexed by exactly the vertices of the complex"));
        }
        let xs = subdivision.source();
        for (a, c) in &sets {
            if !c.is_subcomplex_of(xs) {
                return Err(Error::NotASubcomplex(format!("cover set {a}")));
            }
        }
        Ok(RegularCover {
            subdivision,
            sets,
            index,
        })
    }

    pub fn complex(&self) -> &Arc<SimplicialComplex> {
        self.subdivision.target()
    }

    pub fn subdivision(&self) -> &SubdivisionMap {
        &self.subdivision
    }

    pub fn sets(&self) -> &BTreeMap<Vertex, SimplicialComplex> {
        &self.sets
    }

    pub fn index_set(&self) -> &[Vertex] {
        &self.index.vertices
    }

    /// For each simplex of `X′`: (carrier mask, mask of sets containing it).
    fn masks(&self) -> Vec<(Simplex, u64, u64)> {
        self.subdivision
            .carrier()
            .iter()
            .map(|(s, c)| {
                let inside = self
                    .sets
                    .values()
                    .enumerate()
                    .filter(|(_, set)| set.contains(s))
                    .fold(0u64, |m, (i, _)| m | 1 << i);
                (s.clone(), self.index.mask_of(c), inside)
            })
            .collect()
    }
}

/// Open cover `{U_α}` of `|X|`, `U_α` = union of open stars in `X′` of `W_α`.
#[derive(Clone, Debug)]
pub struct SimpleCover {
    subdivision: SubdivisionMap,
    star_sets: BTreeMap<Vertex, BTreeSet<Vertex>>,
    index: IndexSet,
}

impl SimpleCover {
    pub fn new(x: Arc<SimplicialComplex>, level: usize, star_sets: BTreeMap<Vertex, BTreeSet<Vertex>>) -> Result<Self> {
        Self::on_subdivision(iterated_subdivision(x, level), star_sets)
    }

    /// Checks the index set and that each `W_α` consists of vertices of `X′`.
    pub fn on_subdivision(subdivision: SubdivisionMap, star_sets: BTreeMap<Vertex, BTreeSet<Vertex>>) -> Result<Self> {
        let index = IndexSet::of(subdivision.target());
        check_guard(index.len(), crate::subsets::MAX_INDEX_GUARD)?;
        let keys: Vec<Vertex> = star_sets.keys().copied().collect();
        if keys != index.vertices {
            return Err(Error::invalid("star sets must be indexed by exactly the vertices of the complex"));
        }
        let xs = subdivision.source();
        for (a, w) in &star_sets {
            if let Some(v) = w.iter().find(|&&v| !xs.has_vertex(v)) {
                return Err(Error::UnknownVertex(format!("{v} in star set {a}")));
            }
        }
        Ok(SimpleCover {
            subdivision,
            star_sets,
            index,
        })
    }

    pub fn complex(&self) -> &Arc<SimplicialComplex> {
        self.subdivision.target()
    }

    pub fn subdivision(&self) -> &SubdivisionMap {
        &self.subdivision
    }

    pub fn star_sets(&self) -> &BTreeMap<Vertex, BTreeSet<Vertex>> {
        &self.star_sets
    }

    pub fn index_set(&self) -> &[Vertex] {
        &self.index.vertices
    }

    /// For each simplex `σ` of `X′`, the mask of `α` with `σ ∩ W_α ≠ ∅`, i.e.
    /// of the `U_α` containing the relative interior of `σ`.
    fn masks(&self) -> Vec<(Simplex, u64)> {
        self.subdivision
            .source()
            .simplices()
            .map(|s| {
                let m = self
                    .star_sets
                    .values()
                    .enumerate()
                    .filter(|(_, w)| s.vertices().iter().any(|v| w.contains(v)))
                    .fold(0u64, |m, (i, _)| m | 1 << i);
                (s.clone(), m)
            })
            .collect()
    }

    /// The closed cover `{cl U_α}`, which is regular whenever this cover is simple.
    pub fn closures(&self) -> Result<RegularCover> {
        let xs = self.subdivision.source();
        let mut sets = BTreeMap::new();
        for (&a, w) in &self.star_sets {
            let mut c = SimplicialComplex::empty();
            for &v in w {
                c = c.union(&xs.closed_star(v)?);
            }
            sets.insert(a, c);
        }
        RegularCover::on_subdivision(self.subdivision.clone(), sets)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RegularityReport {
    pub regular: bool,
    /// Least `θ ⊆ S` (lexicographic) with `[θ]` not inside `⋃_{α∈θ} C_α`.
    pub witness: Option<Vec<Vertex>>,
    /// A simplex of the subdivided `[θ]` outside that union.
    pub uncovered: Option<Vec<Vertex>>,
}

/// Definition check: for every `θ ⊆ S` in lexicographic order, every simplex
/// of `X′` carried by `[θ]` lies in some `C_α` with `α ∈ θ`.
pub fn is_regular_cover(rc: &RegularCover) -> Result<RegularityReport> {
    check_guard(rc.index.len(), DEFAULT_INDEX_GUARD.max(rc.index.len().min(crate::subsets::MAX_INDEX_GUARD)))?;
    let masks = rc.masks();
    for theta in lex_subsets(rc.index.len(), rc.index.len()) {
        let t = IndexSet::mask_of_positions(&theta);
        if let Some((s, _, _)) = masks.iter().find(|(_, carrier, inside)| carrier & !t == 0 && inside & t == 0) {
            return Ok(RegularityReport {
                regular: false,
                witness: Some(rc.index.vertices_of(&theta)),
                uncovered: Some(s.vertices().to_vec()),
            });
        }
    }
    Ok(RegularityReport {
        regular: true,
        witness: None,
        uncovered: None,
    })
}

/// Simplexwise form of regularity: each simplex of `X′` lies in some `C_α`
/// with `α` a vertex of its carrier.
pub fn regular_simplexwise(rc: &RegularCover) -> bool {
    rc.masks().iter().all(|(_, carrier, inside)| carrier & inside != 0)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SimplicityReport {
    pub simple: bool,
    /// First `α` whose `cl U_α` leaves the open star of `α`.
    pub witness: Option<Vertex>,
    /// `(w, τ)`: a simplex `τ` in the closed star of `w ∈ W_α` whose carrier misses `α`.
    pub offending: Option<(Vertex, Vec<Vertex>)>,
    /// A simplex of `X′` with no vertex in any `W_α`, when the open stars do not cover.
    pub uncovered: Option<Vec<Vertex>>,
}

/// The open stars cover `|X|`, and `cl U_α ⊆ star(α)` for every `α`, by
/// enumerating every simplex in the closed star (in `X′`) of every `w ∈ W_α`.
pub fn is_simple_cover(sc: &SimpleCover) -> Result<SimplicityReport> {
    let xs = sc.subdivision.source();
    if let Some((s, _)) = sc.masks().into_iter().find(|(_, m)| *m == 0) {
        return Ok(SimplicityReport {
            simple: false,
            witness: None,
            offending: None,
            uncovered: Some(s.vertices().to_vec()),
        });
    }
    for (&a, w) in &sc.star_sets {
        for &v in w {
            for t in xs.closed_star(v)?.simplices() {
                if !sc.subdivision.carrier()[t].contains(a) {
                    return Ok(SimplicityReport {
                        simple: false,
                        witness: Some(a),
                        offending: Some((v, t.vertices().to_vec())),
                        uncovered: None,
                    });
                }
            }
        }
    }
    Ok(SimplicityReport {
        simple: true,
        witness: None,
        offending: None,
        uncovered: None,
    })
}

/// Vertex-only form of simplicity: every vertex of `X′` is in some `W_α`, and
/// every vertex adjacent or equal to some `w ∈ W_α` is carried by a simplex
/// containing `α`.
pub fn simple_by_vertices(sc: &SimpleCover) -> bool {
    let xs = sc.subdivision.source();
    let all: BTreeSet<Vertex> = sc.star_sets.values().flatten().copied().collect();
    xs.vertices().is_subset(&all)
        && sc.star_sets.iter().all(|(&a, w)| {
        xs.simplices_of_dim(1)
            .flat_map(|e| {
                let (p, q) = (e.vertices()[0], e.vertices()[1]);
                [(p, q), (q, p)]
            })
            .filter(|(p, _)| w.contains(p))
            .map(|(_, q)| q)
            .chain(w.iter().copied())
            .all(|u| sc.subdivision.carrier()[&Simplex::vertex(u)].contains(a))
    })
}

/// Comparison of a cover's nerve with `X` under `α ↔ set_α`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NerveReport {
    pub matches: bool,
    /// Simplices of `X` whose sets do not meet.
    pub missing: Vec<Vec<Vertex>>,
    /// Meeting sets that do not span a simplex of `X`.
    pub extra: Vec<Vec<Vertex>>,
}

fn compare_nerve(index: &IndexSet, x: &SimplicialComplex, masks: &[u64]) -> Result<NerveReport> {
    let nerve = nerve_from_predicate(index.len(), |theta| {
        let t = IndexSet::mask_of_positions(theta);
        Ok(masks.iter().any(|m| m & t == t))
    })?;
    let as_x: BTreeSet<Simplex> = nerve
        .simplices()
        .map(|s| Simplex::new(index.vertices_of(s.vertices())))
        .collect();
    let missing = x
        .simplices()
        .filter(|s| !as_x.contains(s))
        .map(|s| s.vertices().to_vec())
        .collect::<Vec<_>>();
    let extra = as_x
        .iter()
        .filter(|s| !x.contains(s))
        .map(|s| s.vertices().to_vec())
        .collect::<Vec<_>>();
    Ok(NerveReport {
        matches: missing.is_empty() && extra.is_empty(),
        missing,
        extra,
    })
}

/// Nerve of `{C_α}` against `X`. Always contains `X` for a regular cover of
/// a simplex-wise covered complex; may have extra simplices when `X` is not
/// a simplex.
pub fn nerve_matches_complex(rc: &RegularCover) -> Result<NerveReport> {
    if !is_regular_cover(rc)?.regular {
        return Err(Error::PreconditionFailed("cover is not regular".into()));
    }
    let masks: Vec<u64> = rc.masks().into_iter().map(|(_, _, m)| m).collect();
    compare_nerve(&rc.index, rc.complex(), &masks)
}

/// Nerve of `{U_α}` against `X`.
pub fn nerve_matches_complex_simple(sc: &SimpleCover) -> Result<NerveReport> {
    if !is_simple_cover(sc)?.simple {
        return Err(Error::PreconditionFailed("cover is not simple".into()));
    }
    let masks: Vec<u64> = sc.masks().into_iter().map(|(_, m)| m).collect();
    compare_nerve(&sc.index, sc.complex(), &masks)
}

fn require_simplex(x: &SimplicialComplex) -> Result<()> {
    if x.is_empty() || !x.is_single_simplex() {
        return Err(Error::PreconditionFailed("complex is not a single simplex".into()));
    }
    Ok(())
}

/// A simplex of `X′` lying in every `C_α` of a regular cover of a simplex.
/// Not finding one would contradict the theorem and is reported as an
/// inconsistency.
pub fn kkm_witness(rc: &RegularCover) -> Result<Simplex> {
    require_simplex(rc.complex())?;
    if !is_regular_cover(rc)?.regular {
        return Err(Error::PreconditionFailed("cover is not regular".into()));
    }
    let witness = rc
        .subdivision
        .source()
        .simplices()
        .find(|s| rc.sets.values().all(|c| c.contains(s)))
        .cloned()
        .ok_or_else(|| Error::Inconsistent("regular cover of a simplex with empty intersection".into()))?;
    Ok(witness)
}

/// A simplex of `X′` whose relative interior lies in every `U_α` of a simple
/// cover of a simplex (it meets every `W_α`).
pub fn kkm_witness_simple(sc: &SimpleCover) -> Result<Simplex> {
    require_simplex(sc.complex())?;
    if !is_simple_cover(sc)?.simple {
        return Err(Error::PreconditionFailed("cover is not simple".into()));
    }
    sc.subdivision
        .source()
        .simplices()
        .find(|s| sc.star_sets.values().all(|w| s.vertices().iter().any(|v| w.contains(v))))
        .cloned()
        .ok_or_else(|| Error::Inconsistent("simple cover of a simplex with empty intersection".into()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum PreconditionMode {
    /// Every subfamily with `k − 1` members meets.
    AllButOne,
    /// `k > n + 1`: every subfamily with `n + 1` members meets.
    DimensionBound { n: usize },
}

#[derive(Clone, Debug, Serialize)]
pub struct IntersectionCriterionReport {
    pub k: usize,
    pub mode: PreconditionMode,
    pub precondition_holds: bool,
    /// First subfamily (lexicographic) of the required size that does not meet.
    pub precondition_witness: Option<Vec<Vertex>>,
    pub union_profile: HomologyProfile,
    pub union_acyclic: bool,
    pub total_nonempty: bool,
    /// `total_nonempty ⇔ union_acyclic`, claimed only under the precondition.
    pub biconditional_holds: Option<bool>,
}

fn criterion(
    index: &IndexSet,
    masks: &[u64],
    union: &SimplicialComplex,
    dimension: Option<usize>,
    valid: bool,
) -> IntersectionCriterionReport {
    let k = index.len();
    let (mode, size) = match dimension {
        Some(n) if k > n + 1 => (PreconditionMode::DimensionBound { n }, n + 1),
        _ => (PreconditionMode::AllButOne, k.saturating_sub(1)),
    };
    let meets = |t: u64| masks.iter().any(|m| m & t == t);
    let precondition_witness = combinations(k, size)
        .into_iter()
        .find(|theta| !meets(IndexSet::mask_of_positions(theta)))
        .map(|theta| index.vertices_of(&theta));
    let union_profile = reduced_homology(union);
    let union_acyclic = union_profile.is_acyclic();
    let total_nonempty = meets(IndexSet::mask_of_positions(&(0..k).collect::<Vec<_>>()));
    let precondition_holds = valid && precondition_witness.is_none();
    IntersectionCriterionReport {
        k,
        mode,
        precondition_holds,
        precondition_witness,
        union_profile,
        union_acyclic,
        total_nonempty,
        biconditional_holds: precondition_holds.then_some(total_nonempty == union_acyclic),
    }
}

/// For a simple cover whose `(k−1)`-subfamilies meet (or `(n+1)`-subfamilies
/// when `k > n+1`): total intersection nonempty versus union acyclic. The
/// union of open stars of `W` deformation retracts onto the full subcomplex
/// of `X′` spanned by `W`, which is where its homology is computed.
pub fn simple_family_intersection_criterion(
    sc: &SimpleCover,
    dimension: Option<usize>,
) -> Result<IntersectionCriterionReport> {
    let valid = is_simple_cover(sc)?.simple;
    let masks: Vec<u64> = sc.masks().into_iter().map(|(_, m)| m).collect();
    let w: BTreeSet<Vertex> = sc.star_sets.values().flatten().copied().collect();
    let union = sc.subdivision.source().full_subcomplex(&w)?;
    Ok(criterion(&sc.index, &masks, &union, dimension, valid))
}

/// The same criterion for a closed cover satisfying the regularity condition.
pub fn closed_family_intersection_criterion(
    rc: &RegularCover,
    dimension: Option<usize>,
) -> Result<IntersectionCriterionReport> {
    let valid = is_regular_cover(rc)?.regular;
    let masks: Vec<u64> = rc.masks().into_iter().map(|(_, _, m)| m).collect();
    let union = rc
        .sets
        .values()
        .fold(SimplicialComplex::empty(), |acc, c| acc.union(c));
    Ok(criterion(&rc.index, &masks, &union, dimension, valid))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn edge() -> Arc<SimplicialComplex> {
        Arc::new(SimplicialComplex::simplex([0, 1]))
    }

    /// Level-1 subdivision of the edge: vertices 0 = {0}, 1 = {1}, 2 = {0,1}.
    fn half_edges() -> RegularCover {
        let sets = BTreeMap::from([
            (0, SimplicialComplex::simplex([0, 2])),
            (1, SimplicialComplex::simplex([1, 2])),
        ]);
        RegularCover::new(edge(), 1, sets).unwrap()
    }

    #[test]
    fn half_edge_cover() {
        let rc = half_edges();
        assert!(is_regular_cover(&rc).unwrap().regular);
        assert!(regular_simplexwise(&rc));
        assert!(nerve_matches_complex(&rc).unwrap().matches);
        assert_eq!(kkm_witness(&rc).unwrap(), Simplex::vertex(2));
        let report = closed_family_intersection_criterion(&rc, None).unwrap();
        assert_eq!(report.biconditional_holds, Some(true));
        assert!(report.total_nonempty && report.union_acyclic);
    }

    #[test]
    fn missing_coverage_fails_at_the_full_index_set() {
        let sets = BTreeMap::from([
            (0, SimplicialComplex::simplex([0])),
            (1, SimplicialComplex::simplex([1])),
        ]);
        let report = is_regular_cover(&RegularCover::new(edge(), 1, sets).unwrap()).unwrap();
        assert!(!report.regular);
        assert_eq!(report.witness, Some(vec![0, 1]));
    }

    #[test]
    fn point_covered_by_itself() {
        let x = Arc::new(SimplicialComplex::simplex([0]));
        let rc = RegularCover::new(x.clone(), 0, BTreeMap::from([(0, (*x).clone())])).unwrap();
        assert_eq!(kkm_witness(&rc).unwrap(), Simplex::vertex(0));
        let sc = SimpleCover::new(x, 0, BTreeMap::from([(0, BTreeSet::from([0]))])).unwrap();
        assert!(is_simple_cover(&sc).unwrap().simple);
        assert!(nerve_matches_complex_simple(&sc).unwrap().matches);
    }

    #[test]
    fn two_points() {
        let x = Arc::new(SimplicialComplex::from_maximal([vec![0], vec![1]]));
        let rc = RegularCover::new(
            x,
            0,
            BTreeMap::from([(0, SimplicialComplex::simplex([0])), (1, SimplicialComplex::simplex([1]))]),
        )
        .unwrap();
        let n = nerve_matches_complex(&rc).unwrap();
        assert!(n.matches);
        assert!(kkm_witness(&rc).is_err());
    }
}
