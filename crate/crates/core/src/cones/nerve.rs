use serde::Serialize;

use super::{cone_nonempty, intersect_cones, ConeKind, PolyhedralCone};
use crate::error::{Error, Result};
use crate::simplicial::{nerve_from_predicate, reduced_homology, HomologyProfile, SimplicialComplex};
use crate::subsets::{check_guard, DEFAULT_INDEX_GUARD};

/// Nerve of a labelled cone family. Vertex `i` of `complex` is member `i`;
/// members with empty cones do not appear.
#[derive(Clone, Debug, Serialize)]
pub struct NerveComplex {
    pub labels: Vec<String>,
    #[serde(serialize_with = "serialize_complex")]
    pub complex: SimplicialComplex,
}

fn serialize_complex<S: serde::Serializer>(c: &SimplicialComplex, s: S) -> std::result::Result<S::Ok, S::Error> {
    let maximal: Vec<Vec<usize>> = c.maximal_simplices().iter().map(|m| m.vertices().to_vec()).collect();
    maximal.serialize(s)
}

impl NerveComplex {
    /// Maximal simplices written with member labels.
    pub fn labelled_facets(&self) -> Vec<Vec<String>> {
        self.complex
            .maximal_simplices()
            .iter()
            .map(|s| s.vertices().iter().map(|&v| self.labels[v].clone()).collect())
            .collect()
    }
}

pub fn build_nerve(cs: &[(&str, &PolyhedralCone)]) -> Result<NerveComplex> {
    build_nerve_with_guard(cs, DEFAULT_INDEX_GUARD)
}

pub fn build_nerve_with_guard(cs: &[(&str, &PolyhedralCone)], guard: usize) -> Result<NerveComplex> {
    check_guard(cs.len(), guard)?;
    check_dims(cs)?;
    let complex = nerve_from_predicate(cs.len(), |theta| {
        let c = intersect_cones(theta.iter().map(|&i| cs[i].1))?;
        Ok(cone_nonempty(&c)?.is_some())
    })?;
    Ok(NerveComplex {
        labels: cs.iter().map(|(l, _)| l.to_string()).collect(),
        complex,
    })
}

fn check_dims(cs: &[(&str, &PolyhedralCone)]) -> Result<()> {
    if let Some((_, first)) = cs.first() {
        if let Some((_, bad)) = cs.iter().find(|(_, c)| c.dim() != first.dim()) {
            return Err(Error::DimensionMismatch {
                expected: first.dim(),
                found: bad.dim(),
            });
        }
    }
    Ok(())
}

/// Reduced homology of `⋃ cs`, read off the nerve.
///
/// The nerve computes the union only for a good cover whose members are all
/// open or all closed (in `Qⁿ` or in `Qⁿ∖{0}`): mixing an open half-plane with
/// the complementary closed one gives disjoint members with a connected
/// union. Both requirements are checked; a failure is reported as
/// [`Error::NerveNotApplicable`] naming the offending members.
pub fn union_homology(cs: &[(&str, &PolyhedralCone)]) -> Result<HomologyProfile> {
    check_dims(cs)?;
    let mut nonempty = Vec::new();
    for (i, (_, c)) in cs.iter().enumerate() {
        if cone_nonempty(c)?.is_some() {
            nonempty.push(i);
        }
    }
    match nonempty.len() {
        0 => return Ok(HomologyProfile::empty_space()),
        1 => return cs[nonempty[0]].1.homology(),
        _ => {}
    }
    let labels = |idx: &[usize]| idx.iter().map(|&i| cs[i].0.to_string()).collect::<Vec<_>>();
    let kinds: Vec<ConeKind> = nonempty.iter().map(|&i| cs[i].1.kind()).collect();
    if kinds.iter().any(|k| *k != kinds[0]) || kinds[0] == ConeKind::Mixed {
        return Err(Error::NerveNotApplicable {
            theta: labels(&nonempty),
            reason: format!("members are not all open or all closed ({kinds:?})"),
        });
    }
    let check_acyclic = kinds[0] == ConeKind::ClosedPunctured;
    let mut bad: Option<Vec<usize>> = None;
    let complex = nerve_from_predicate(cs.len(), |theta| {
        let c = intersect_cones(theta.iter().map(|&i| cs[i].1))?;
        if cone_nonempty(&c)?.is_none() {
            return Ok(false);
        }
        if check_acyclic && bad.is_none() && !c.homology()?.is_acyclic() {
            bad = Some(theta.to_vec());
        }
        Ok(true)
    })?;
    if let Some(theta) = bad {
        return Err(Error::NerveNotApplicable {
            theta: labels(&theta),
            reason: "intersection is nonempty but not acyclic".into(),
        });
    }
    Ok(reduced_homology(&complex))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::Simplex;

    fn cone(weak: &[Vec<i64>], strict: &[Vec<i64>], ex: bool) -> PolyhedralCone {
        PolyhedralCone::from_i64(2, weak, strict, ex).unwrap()
    }

    /// Closed half-planes with inward normals 120° apart (integer approximations
    /// suffice: each pair shares a wedge, the three share only the origin).
    fn three_half_planes() -> Vec<PolyhedralCone> {
        vec![
            cone(&[vec![0, 1]], &[], true),
            cone(&[vec![-1, -1]], &[], true),
            cone(&[vec![1, -1]], &[], true),
        ]
    }

    #[test]
    fn two_meeting_cones_give_an_edge() {
        let a = cone(&[], &[vec![1, 0]], false);
        let b = cone(&[], &[vec![0, 1]], false);
        let n = build_nerve(&[("a", &a), ("b", &b)]).unwrap();
        assert_eq!(n.complex.maximal_simplices(), vec![Simplex::new([0, 1])]);
    }

    #[test]
    fn pairwise_half_planes_form_a_circle() {
        let hs = three_half_planes();
        let labelled: Vec<(&str, &PolyhedralCone)> = vec![("x", &hs[0]), ("y", &hs[1]), ("z", &hs[2])];
        let n = build_nerve(&labelled).unwrap();
        assert_eq!(n.complex.f_vector(), vec![3, 3]);
        assert_eq!(union_homology(&labelled).unwrap(), HomologyProfile::sphere(1));
    }

    #[test]
    fn empty_member_is_not_a_vertex() {
        let a = cone(&[], &[vec![1, 0]], false);
        let empty = cone(&[], &[vec![1, 0], vec![-1, 0]], false);
        let n = build_nerve(&[("a", &a), ("e", &empty)]).unwrap();
        assert_eq!(n.complex.vertices().into_iter().collect::<Vec<_>>(), vec![0]);
    }

    #[test]
    fn mixed_open_and_closed_is_refused() {
        let open = cone(&[], &[vec![1, 0]], false);
        let closed = cone(&[vec![-1, 0]], &[], true);
        assert!(matches!(
            union_homology(&[("open", &open), ("closed", &closed)]),
            Err(Error::NerveNotApplicable { .. })
        ));
    }

    #[test]
    fn non_acyclic_intersection_is_refused() {
        let upper = cone(&[vec![0, 1]], &[], true);
        let lower = cone(&[vec![0, -1]], &[], true);
        assert!(matches!(
            union_homology(&[("u", &upper), ("l", &lower)]),
            Err(Error::NerveNotApplicable { .. })
        ));
    }

    #[test]
    fn single_member_union_is_the_member() {
        let punctured_line = cone(&[vec![0, 1], vec![0, -1]], &[], true);
        assert_eq!(union_homology(&[("l", &punctured_line)]).unwrap(), HomologyProfile::sphere(0));
    }
}
