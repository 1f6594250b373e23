use std::collections::BTreeSet;

use super::{Simplex, SimplicialComplex};
use crate::error::Result;

/// Nerve of a family of `count` members, given an oracle deciding whether the
/// members named by a sorted index list have a common point.
///
/// Built by monotone expansion: a set is only offered to the oracle once all
/// of its facets are already simplices, so the oracle is never asked about a
/// set with an empty sub-intersection. Vertex `i` of the result is member `i`.
pub fn nerve_from_predicate(
    count: usize,
    mut intersects: impl FnMut(&[usize]) -> Result<bool>,
) -> Result<SimplicialComplex> {
    let mut simplices: BTreeSet<Simplex> = BTreeSet::new();
    let mut layer: Vec<Vec<usize>> = Vec::new();
    for i in 0..count {
        if intersects(&[i])? {
            simplices.insert(Simplex::vertex(i));
            layer.push(vec![i]);
        }
    }
    while !layer.is_empty() {
        let mut next = Vec::new();
        for s in &layer {
            let top = *s.last().expect("nonempty");
            for v in top + 1..count {
                let mut candidate = s.clone();
                candidate.push(v);
                let cand = Simplex::new(candidate.iter().copied());
                if !cand.facets().iter().all(|f| simplices.contains(f)) {
                    continue;
                }
                if intersects(&candidate)? {
                    simplices.insert(cand);
                    next.push(candidate);
                }
            }
        }
        layer = next;
    }
    SimplicialComplex::from_closed_set(simplices)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::{reduced_homology, HomologyProfile};

    #[test]
    fn pairwise_but_not_triple_is_a_circle() {
        let nerve = nerve_from_predicate(3, |s| Ok(s.len() <= 2)).unwrap();
        assert_eq!(nerve.f_vector(), vec![3, 3]);
        assert_eq!(reduced_homology(&nerve), HomologyProfile::sphere(1));
    }

    #[test]
    fn empty_members_are_dropped() {
        let nerve = nerve_from_predicate(3, |s| Ok(!s.contains(&1))).unwrap();
        assert_eq!(nerve.maximal_simplices(), vec![Simplex::new([0, 2])]);
    }

    #[test]
    fn oracle_never_sees_sets_with_missing_facets() {
        let mut asked = Vec::new();
        nerve_from_predicate(4, |s| {
            asked.push(s.to_vec());
            Ok(!(s.contains(&0) && s.contains(&1)))
        })
        .unwrap();
        assert!(!asked.contains(&vec![0, 1, 2]));
        assert!(asked.contains(&vec![0, 1]));
    }
}
