//! Finite indexed families `{U_α}_{α∈S}` of subcomplexes or cones, with the
//! intersection and union acyclicity conditions and the theorems tying them
//! together.
//!
//! `A_k`: every subfamily with at most `k+1` members has an acyclic
//! intersection. `B_k`: the same for unions. Subcomplexes of one ambient
//! complex always form an excisive family (subcomplex pairs are excisive
//! couples), so no runtime excisiveness check is made for that backend.
//! Cone families rely on convexity instead; see [`crate::cones::union_homology`]
//! for when the nerve computes their unions.

mod reports;

pub use reports::{
    AllSubfamilyReport, Condition, ConditionReport, DimensionBoundReport, DimensionClause, DualityReport,
    EquivalenceReport, IntersectionWitness, NonemptyIntersectionReport, Violation,
};

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::cones::{cone_nonempty, intersect_cones, union_homology, PolyhedralCone};
use crate::error::{Error, Result};
use crate::simplicial::{nerve_from_predicate, reduced_homology, HomologyProfile, SimplicialComplex};
use crate::subsets::{check_guard, lex_subsets, DEFAULT_INDEX_GUARD};

#[derive(Clone, Debug)]
pub enum FamilyBackend {
    Subcomplexes {
        ambient: Arc<SimplicialComplex>,
        members: Vec<SimplicialComplex>,
    },
    Cones {
        dim: usize,
        members: Vec<PolyhedralCone>,
    },
}

#[derive(Clone, Debug)]
pub struct IndexedFamily {
    labels: Vec<String>,
    backend: FamilyBackend,
    declared_dimension: Option<usize>,
    guard: usize,
}

impl IndexedFamily {
    pub fn subcomplexes(ambient: Arc<SimplicialComplex>, members: Vec<(String, SimplicialComplex)>) -> Result<Self> {
        let (labels, members): (Vec<String>, Vec<SimplicialComplex>) = members.into_iter().unzip();
        check_labels(&labels)?;
        for (l, m) in labels.iter().zip(&members) {
            if !m.is_subcomplex_of(&ambient) {
                return Err(Error::NotASubcomplex(format!("member {l}")));
            }
        }
        Ok(IndexedFamily {
            labels,
            backend: FamilyBackend::Subcomplexes { ambient, members },
            declared_dimension: None,
            guard: DEFAULT_INDEX_GUARD,
        })
    }

    pub fn cones(dim: usize, members: Vec<(String, PolyhedralCone)>) -> Result<Self> {
        let (labels, members): (Vec<String>, Vec<PolyhedralCone>) = members.into_iter().unzip();
        check_labels(&labels)?;
        if let Some(bad) = members.iter().find(|c| c.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: bad.dim(),
            });
        }
        Ok(IndexedFamily {
            labels,
            backend: FamilyBackend::Cones { dim, members },
            declared_dimension: None,
            guard: DEFAULT_INDEX_GUARD,
        })
    }

    /// Declares that the members live in `Rⁿ`, enabling the dimension-bound
    /// checks on subcomplex families. The caller vouches for the embedding;
    /// `n` below the ambient dimension is rejected outright.
    pub fn with_declared_dimension(mut self, n: usize) -> Result<Self> {
        match &self.backend {
            FamilyBackend::Subcomplexes { ambient, .. } => {
                if let Some(d) = ambient.dim() {
                    if n < d {
                        return Err(Error::invalid(format!(
                            "declared dimension {n} is below the ambient complex dimension {d}"
                        )));
                    }
                }
            }
            FamilyBackend::Cones { dim, .. } => {
                if n != *dim {
                    return Err(Error::DimensionMismatch {
                        expected: *dim,
                        found: n,
                    });
                }
            }
        }
        self.declared_dimension = Some(n);
        Ok(self)
    }

    pub fn with_guard(mut self, guard: usize) -> Result<Self> {
        check_guard(0, guard)?;
        self.guard = guard;
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn labels_of(&self, theta: &[usize]) -> Vec<String> {
        theta.iter().map(|&i| self.labels[i].clone()).collect()
    }

    pub fn backend(&self) -> &FamilyBackend {
        &self.backend
    }

    pub fn guard(&self) -> usize {
        self.guard
    }

    /// `n` for families in `Rⁿ`: the cone dimension, or the declared one.
    pub fn ambient_dimension(&self) -> Option<usize> {
        match &self.backend {
            FamilyBackend::Cones { dim, .. } => Some(*dim),
            FamilyBackend::Subcomplexes { .. } => self.declared_dimension,
        }
    }

    /// The subfamily indexed by `theta`, relabelled `0..|θ|`.
    pub fn restrict(&self, theta: &[usize]) -> Result<IndexedFamily> {
        let theta = self.normalize(theta)?;
        let backend = match &self.backend {
            FamilyBackend::Subcomplexes { ambient, members } => FamilyBackend::Subcomplexes {
                ambient: Arc::clone(ambient),
                members: theta.iter().map(|&i| members[i].clone()).collect(),
            },
            FamilyBackend::Cones { dim, members } => FamilyBackend::Cones {
                dim: *dim,
                members: theta.iter().map(|&i| members[i].clone()).collect(),
            },
        };
        Ok(IndexedFamily {
            labels: self.labels_of(&theta),
            backend,
            declared_dimension: self.declared_dimension,
            guard: self.guard,
        })
    }

    /// Sorted, deduplicated, range-checked copy of `theta`.
    pub fn normalize(&self, theta: &[usize]) -> Result<Vec<usize>> {
        if theta.is_empty() {
            return Err(Error::EmptySubfamily);
        }
        if let Some(&bad) = theta.iter().find(|&&i| i >= self.len()) {
            return Err(Error::IndexOutOfRange {
                index: bad,
                len: self.len(),
            });
        }
        let set: BTreeSet<usize> = theta.iter().copied().collect();
        Ok(set.into_iter().collect())
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::invalid(format!("unknown member label {label:?}")))
    }

    pub fn all(&self) -> Vec<usize> {
        (0..self.len()).collect()
    }

    /// `U_θ` as a subcomplex (subcomplex backend only).
    pub fn intersection_complex(&self, theta: &[usize]) -> Result<Option<SimplicialComplex>> {
        let theta = self.normalize(theta)?;
        Ok(match &self.backend {
            FamilyBackend::Subcomplexes { members, .. } => {
                let mut it = theta.iter().map(|&i| &members[i]);
                let first = it.next().expect("nonempty").clone();
                Some(it.fold(first, |acc, m| acc.intersection(m)))
            }
            FamilyBackend::Cones { .. } => None,
        })
    }

    /// `U^θ` as a subcomplex (subcomplex backend only).
    pub fn union_complex(&self, theta: &[usize]) -> Result<Option<SimplicialComplex>> {
        let theta = self.normalize(theta)?;
        Ok(match &self.backend {
            FamilyBackend::Subcomplexes { members, .. } => Some(
                theta
                    .iter()
                    .fold(SimplicialComplex::empty(), |acc, &i| acc.union(&members[i])),
            ),
            FamilyBackend::Cones { .. } => None,
        })
    }

    /// `⋂_{α∈θ} U_α` as a cone (cone backend only).
    pub fn intersection_cone(&self, theta: &[usize]) -> Result<Option<PolyhedralCone>> {
        let theta = self.normalize(theta)?;
        match &self.backend {
            FamilyBackend::Cones { members, .. } => Ok(Some(intersect_cones(theta.iter().map(|&i| &members[i]))?)),
            FamilyBackend::Subcomplexes { .. } => Ok(None),
        }
    }

    /// A certificate that `U_θ ≠ ∅`, or `None`.
    pub fn intersection_witness(&self, theta: &[usize]) -> Result<Option<IntersectionWitness>> {
        if let Some(c) = self.intersection_complex(theta)? {
            return Ok(c
                .simplices()
                .next()
                .map(|s| IntersectionWitness::Simplex(s.vertices().to_vec())));
        }
        let cone = self.intersection_cone(theta)?.expect("cone backend");
        Ok(cone_nonempty(&cone)?.map(IntersectionWitness::Point))
    }

    pub fn intersection_nonempty(&self, theta: &[usize]) -> Result<bool> {
        Ok(self.intersection_witness(theta)?.is_some())
    }

    /// Reduced homology of `U_θ`. Cone intersections are decided exactly
    /// (see [`PolyhedralCone::homology`]).
    pub fn intersection_profile(&self, theta: &[usize]) -> Result<HomologyProfile> {
        if let Some(c) = self.intersection_complex(theta)? {
            return Ok(reduced_homology(&c));
        }
        self.intersection_cone(theta)?.expect("cone backend").homology()
    }

    /// Reduced homology of `U^θ`: computed directly for subcomplexes and via
    /// the nerve for cones.
    pub fn union_profile(&self, theta: &[usize]) -> Result<HomologyProfile> {
        if let Some(c) = self.union_complex(theta)? {
            return Ok(reduced_homology(&c));
        }
        let theta = self.normalize(theta)?;
        let FamilyBackend::Cones { members, .. } = &self.backend else {
            unreachable!()
        };
        let labelled: Vec<(&str, &PolyhedralCone)> =
            theta.iter().map(|&i| (self.labels[i].as_str(), &members[i])).collect();
        union_homology(&labelled)
    }

    /// Union homology read off the nerve of `{U_α}_{α∈θ}`, refusing when a
    /// nonempty intersection is not acyclic. For subcomplexes this is the
    /// independent route checked against [`Self::union_profile`].
    pub fn union_profile_via_nerve(&self, theta: &[usize]) -> Result<HomologyProfile> {
        let theta = self.normalize(theta)?;
        if matches!(self.backend, FamilyBackend::Cones { .. }) {
            return self.union_profile(&theta);
        }
        let mut bad: Option<Vec<usize>> = None;
        let nerve = nerve_from_predicate(theta.len(), |sub| {
            let global: Vec<usize> = sub.iter().map(|&i| theta[i]).collect();
            let profile = self.intersection_profile(&global)?;
            if profile.is_empty_space() {
                return Ok(false);
            }
            if bad.is_none() && !profile.is_acyclic() {
                bad = Some(global);
            }
            Ok(true)
        })?;
        if let Some(b) = bad {
            return Err(Error::NerveNotApplicable {
                theta: self.labels_of(&b),
                reason: "intersection is nonempty but not acyclic".into(),
            });
        }
        Ok(reduced_homology(&nerve))
    }

    /// Nerve of the whole family: vertex `i` is member `i`.
    pub fn nerve(&self) -> Result<SimplicialComplex> {
        check_guard(self.len(), self.guard)?;
        nerve_from_predicate(self.len(), |theta| self.intersection_nonempty(theta))
    }

    fn profile(&self, which: Condition, theta: &[usize]) -> Result<HomologyProfile> {
        match which {
            Condition::AcyclicIntersections => self.intersection_profile(theta),
            Condition::AcyclicUnions => self.union_profile(theta),
        }
    }

    /// Enumerates every `θ` with `1 ≤ |θ| ≤ k+1` in lexicographic order; the
    /// first non-acyclic one is the witness.
    pub fn check_condition(&self, which: Condition, k: usize) -> Result<ConditionReport> {
        self.check_condition_with(which, k, |p| p.is_acyclic())
    }

    /// [`Self::check_condition`] with a caller-supplied acyclicity predicate
    /// (used by the self-test negative control).
    pub fn check_condition_with(
        &self,
        which: Condition,
        k: usize,
        acyclic: impl Fn(&HomologyProfile) -> bool,
    ) -> Result<ConditionReport> {
        check_guard(self.len(), self.guard)?;
        let mut examined = 0;
        for theta in lex_subsets(self.len(), k + 1) {
            examined += 1;
            let profile = self.profile(which, &theta)?;
            if !acyclic(&profile) {
                return Ok(ConditionReport {
                    condition: which,
                    k,
                    holds: false,
                    examined,
                    witness: Some(Violation {
                        labels: self.labels_of(&theta),
                        theta,
                        profile,
                    }),
                });
            }
        }
        Ok(ConditionReport {
            condition: which,
            k,
            holds: true,
            examined,
            witness: None,
        })
    }

    /// Compares `H_q(U^θ)` with `H_{q−k}(U_θ)` for `|θ| = k+1 ≥ 2`, after
    /// checking `A_{k−1}` on the subfamily.
    pub fn verify_duality(&self, theta: &[usize]) -> Result<DualityReport> {
        let theta = self.normalize(theta)?;
        if theta.len() < 2 {
            return Err(Error::PreconditionFailed("duality needs at least two members".into()));
        }
        let k = theta.len() - 1;
        let sub = self.restrict(&theta)?;
        let mut hypothesis = sub.check_condition(Condition::AcyclicIntersections, k - 1)?;
        if let Some(w) = &mut hypothesis.witness {
            w.theta = w.theta.iter().map(|&i| theta[i]).collect();
        }
        let intersection_profile = self.intersection_profile(&theta)?;
        let union_profile = self.union_profile(&theta)?;
        let shift_matches = union_profile.matches_shifted(&intersection_profile, k);
        Ok(DualityReport {
            labels: self.labels_of(&theta),
            theta,
            k,
            hypothesis,
            union_profile,
            intersection_profile,
            shift_matches,
        })
    }

    /// `A_k` and `B_k` computed separately; they must agree.
    pub fn intersection_union_equivalence(&self, k: usize) -> Result<EquivalenceReport> {
        let a = self.check_condition(Condition::AcyclicIntersections, k)?;
        let b = self.check_condition(Condition::AcyclicUnions, k)?;
        Ok(EquivalenceReport {
            k,
            agree: a.holds == b.holds,
            a,
            b,
        })
    }

    /// For `|S| = k ≥ 2`: (i) every subfamily intersection acyclic, (ii)
    /// `B_{k−1}`, and, for families in `Rⁿ` whose nonempty intersections are
    /// all acyclic, (iii) total intersection acyclic ⇔ union acyclic and
    /// `B_j` with `j = min(n, k−2)`.
    pub fn all_subfamily_acyclicity(&self) -> Result<AllSubfamilyReport> {
        let k = self.len();
        if k < 2 {
            return Err(Error::PreconditionFailed("needs a family of at least two sets".into()));
        }
        let intersections = self.check_condition(Condition::AcyclicIntersections, k - 1)?;
        let unions = self.check_condition(Condition::AcyclicUnions, k - 1)?;
        let dimension_clause = match self.ambient_dimension() {
            None => None,
            Some(n) => {
                let family_acyclic = self.acyclic_family_violation()?.is_none();
                let j = n.min(k - 2);
                let all = self.all();
                let total_intersection_acyclic = self.intersection_profile(&all)?.is_acyclic();
                let union_acyclic = self.union_profile(&all)?.is_acyclic();
                let b_j = self.check_condition(Condition::AcyclicUnions, j)?;
                let holds = total_intersection_acyclic == (union_acyclic && b_j.holds);
                Some(DimensionClause {
                    n,
                    j,
                    applicable: family_acyclic,
                    total_intersection_acyclic,
                    union_acyclic,
                    b_j,
                    holds,
                })
            }
        };
        let clause_ok = dimension_clause.as_ref().is_none_or(|c| !c.applicable || c.holds);
        Ok(AllSubfamilyReport {
            k,
            agree: intersections.holds == unions.holds && clause_ok,
            intersections,
            unions,
            dimension_clause,
        })
    }

    /// First `θ` (lexicographic) whose intersection is nonempty but not acyclic.
    pub fn acyclic_family_violation(&self) -> Result<Option<Violation>> {
        check_guard(self.len(), self.guard)?;
        for theta in lex_subsets(self.len(), self.len()) {
            let profile = self.intersection_profile(&theta)?;
            if !profile.is_empty_space() && !profile.is_acyclic() {
                return Ok(Some(Violation {
                    labels: self.labels_of(&theta),
                    theta,
                    profile,
                }));
            }
        }
        Ok(None)
    }

    /// For an acyclic family: `⋂ U_α ≠ ∅` decided directly versus every
    /// subfamily union acyclic.
    pub fn nonempty_intersection_criterion(&self) -> Result<NonemptyIntersectionReport> {
        if let Some(v) = self.acyclic_family_violation()? {
            return Err(Error::PreconditionFailed(format!(
                "family is not acyclic: intersection of {:?} is nonempty but not acyclic",
                v.labels
            )));
        }
        let witness = self.intersection_witness(&self.all())?;
        let unions = self.check_condition(Condition::AcyclicUnions, self.len() - 1)?;
        let total_nonempty = witness.is_some();
        Ok(NonemptyIntersectionReport {
            agree: total_nonempty == unions.holds,
            total_nonempty,
            witness,
            unions,
        })
    }

    /// For a family in `Rⁿ` satisfying `A_n`: `A_k` and `B_k` for all
    /// `n ≤ k < |S|` and a nonempty total intersection, each computed directly.
    pub fn dimension_bound_check(&self) -> Result<DimensionBoundReport> {
        let n = self
            .ambient_dimension()
            .ok_or_else(|| Error::PreconditionFailed("dimension bound needs a declared dimension".into()))?;
        let hypothesis = self.check_condition(Condition::AcyclicIntersections, n)?;
        let mut levels = Vec::new();
        let mut total_nonempty = None;
        let mut consistent = true;
        if hypothesis.holds {
            for k in n..self.len() {
                let a = self.check_condition(Condition::AcyclicIntersections, k)?.holds;
                let b = self.check_condition(Condition::AcyclicUnions, k)?.holds;
                consistent &= a && b;
                levels.push((k, a, b));
            }
            let nonempty = self.intersection_nonempty(&self.all())?;
            consistent &= nonempty;
            total_nonempty = Some(nonempty);
        }
        Ok(DimensionBoundReport {
            n,
            hypothesis,
            levels,
            total_nonempty,
            consistent,
        })
    }
}

fn check_labels(labels: &[String]) -> Result<()> {
    if labels.is_empty() {
        return Err(Error::invalid("a family needs at least one member"));
    }
    let set: BTreeSet<&String> = labels.iter().collect();
    if set.len() != labels.len() {
        return Err(Error::invalid("duplicate member labels"));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn four_cycle_arcs() -> IndexedFamily {
        let cycle = Arc::new(SimplicialComplex::from_maximal([vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]]));
        IndexedFamily::subcomplexes(
            cycle,
            vec![
                ("upper".into(), SimplicialComplex::from_maximal([vec![0, 1], vec![1, 2]])),
                ("lower".into(), SimplicialComplex::from_maximal([vec![2, 3], vec![3, 0]])),
            ],
        )
        .unwrap()
    }

    #[test]
    fn arcs_of_a_square() {
        let f = four_cycle_arcs();
        assert_eq!(f.intersection_profile(&[0, 1]).unwrap(), HomologyProfile::sphere(0));
        assert_eq!(f.union_profile(&[0, 1]).unwrap(), HomologyProfile::sphere(1));
        let b1 = f.check_condition(Condition::AcyclicUnions, 1).unwrap();
        assert!(!b1.holds);
        assert_eq!(b1.witness.unwrap().theta, vec![0, 1]);
        let d = f.verify_duality(&[0, 1]).unwrap();
        assert!(d.hypothesis.holds && d.shift_matches);
    }

    #[test]
    fn rejects_bad_input() {
        let f = four_cycle_arcs();
        assert!(matches!(f.intersection_profile(&[]), Err(Error::EmptySubfamily)));
        assert!(matches!(f.union_profile(&[5]), Err(Error::IndexOutOfRange { .. })));
        let tri = Arc::new(SimplicialComplex::simplex([0, 1, 2]));
        let outside = SimplicialComplex::simplex([0, 3]);
        assert!(IndexedFamily::subcomplexes(tri.clone(), vec![("x".into(), outside)]).is_err());
        assert!(IndexedFamily::subcomplexes(tri, vec![]).is_err());
    }

    #[test]
    fn declared_dimension_below_ambient_is_rejected() {
        let tri = Arc::new(SimplicialComplex::simplex([0, 1, 2]));
        let f = IndexedFamily::subcomplexes(tri.clone(), vec![("t".into(), (*tri).clone())]).unwrap();
        assert!(f.clone().with_declared_dimension(1).is_err());
        assert_eq!(f.with_declared_dimension(2).unwrap().ambient_dimension(), Some(2));
    }
}
