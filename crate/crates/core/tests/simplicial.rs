mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use common::{arb_complex, hollow_triangle, rational_betti, solid_triangle};
use conetop::simplicial::{
    barycentric_subdivision, is_acyclic, iterated_subdivision, reduced_homology, HomologyProfile, Simplex,
    SimplicialComplex, Subcomplex,
};
use num_bigint::BigInt;
use proptest::prelude::*;

fn simplex_set(sets: &[&[usize]]) -> BTreeSet<Simplex> {
    sets.iter().map(|s| Simplex::new(s.iter().copied())).collect()
}

fn profile_betti(p: &HomologyProfile, len: usize) -> Vec<usize> {
    std::iter::once(p.minus_one_rank).chain((0..len - 1).map(|q| p.betti(q))).collect()
}

/// Six-vertex triangulation of the real projective plane.
fn projective_plane() -> SimplicialComplex {
    SimplicialComplex::from_maximal([
        vec![0, 1, 2],
        vec![0, 2, 3],
        vec![0, 3, 4],
        vec![0, 4, 5],
        vec![0, 1, 5],
        vec![1, 2, 4],
        vec![2, 3, 5],
        vec![1, 3, 4],
        vec![1, 3, 5],
        vec![2, 4, 5],
    ])
}

#[test]
fn face_closures() {
    let t = solid_triangle();
    assert_eq!(t.len(), 7);
    assert_eq!(t.f_vector(), vec![3, 3, 1]);
    assert!(SimplicialComplex::from_maximal(Vec::<Vec<usize>>::new()).is_empty());
    assert_eq!(hollow_triangle().len(), 6);
}

#[test]
fn homology_goldens() {
    assert_eq!(reduced_homology(&SimplicialComplex::empty()), HomologyProfile::empty_space());
    assert_eq!(reduced_homology(&SimplicialComplex::simplex([0])), HomologyProfile::acyclic());
    let two_points = SimplicialComplex::from_maximal([vec![0], vec![1]]);
    assert_eq!(reduced_homology(&two_points).betti(0), 1);
    let circle = reduced_homology(&hollow_triangle());
    assert_eq!(circle, HomologyProfile::sphere(1));
    assert_eq!(circle.betti(0), 0);
}

#[test]
fn projective_plane_has_two_torsion() {
    let p = reduced_homology(&projective_plane());
    assert_eq!(p.betti(1), 0);
    assert_eq!(p.betti(2), 0);
    assert_eq!(p.torsion, BTreeMap::from([(1, vec![BigInt::from(2)])]));
    assert!(!p.is_acyclic());
}

#[test]
fn acyclicity() {
    assert!(is_acyclic(&solid_triangle()));
    assert!(!is_acyclic(&SimplicialComplex::empty()));
    assert!(!is_acyclic(&hollow_triangle()));
}

#[test]
fn stars() {
    let path = SimplicialComplex::from_maximal([vec![0, 1], vec![1, 2]]);
    assert_eq!(path.open_star(1).unwrap(), simplex_set(&[&[1], &[0, 1], &[1, 2]]));
    let isolated = SimplicialComplex::from_maximal([vec![0, 1], vec![5]]);
    assert_eq!(isolated.open_star(5).unwrap(), simplex_set(&[&[5]]));
    assert_eq!(solid_triangle().closed_star(0).unwrap(), solid_triangle());
    assert!(path.open_star(9).is_err());
}

#[test]
fn full_subcomplexes() {
    let h = hollow_triangle();
    assert_eq!(h.full_subcomplex(&BTreeSet::from([0, 1])).unwrap(), SimplicialComplex::simplex([0, 1]));
    let t = solid_triangle();
    assert_eq!(t.full_subcomplex(&BTreeSet::from([0, 1, 2])).unwrap(), t);
    assert!(t.full_subcomplex(&BTreeSet::new()).unwrap().is_empty());
    assert!(t.full_subcomplex(&BTreeSet::from([7])).is_err());
}

#[test]
fn subdivision_counts() {
    let edge = barycentric_subdivision(&SimplicialComplex::simplex([0, 1]));
    assert_eq!(edge.source().f_vector(), vec![3, 2]);
    let tri = barycentric_subdivision(&solid_triangle());
    assert_eq!(tri.source().simplices_of_dim(2).count(), 6);
    assert_eq!(tri.source().f_vector(), vec![7, 12, 6]);
    tri.check_invariants().unwrap();
}

#[test]
fn iterated_subdivision_carriers_lie_in_the_base() {
    let x = Arc::new(solid_triangle());
    let sd = iterated_subdivision(x.clone(), 2);
    assert_eq!(sd.level(), 2);
    assert_eq!(sd.source().simplices_of_dim(2).count(), 36);
    for (s, c) in sd.carrier() {
        assert!(sd.source().contains(s));
        assert!(x.contains(c));
    }
}

#[test]
fn subcomplex_operations() {
    let parent = Arc::new(SimplicialComplex::from_maximal([vec![0, 1], vec![1, 2], vec![3]]));
    let ab = Subcomplex::new(parent.clone(), SimplicialComplex::simplex([0, 1])).unwrap();
    let bc = Subcomplex::new(parent.clone(), SimplicialComplex::simplex([1, 2])).unwrap();
    assert_eq!(ab.intersection(&bc).unwrap().complex(), &SimplicialComplex::simplex([1]));
    let d = Subcomplex::new(parent.clone(), SimplicialComplex::simplex([3])).unwrap();
    let a = Subcomplex::new(parent.clone(), SimplicialComplex::simplex([0])).unwrap();
    assert!(a.intersection(&d).unwrap().complex().is_empty());

    let other = Arc::new(SimplicialComplex::simplex([0, 1]));
    let foreign = Subcomplex::whole(other);
    assert!(ab.union(&foreign).is_err());
    assert!(Subcomplex::new(parent, SimplicialComplex::simplex([0, 2])).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn betti_numbers_match_rational_oracle(c in arb_complex()) {
        let expected = rational_betti(&c);
        let p = reduced_homology(&c);
        prop_assert_eq!(profile_betti(&p, expected.len()), expected);
    }

    #[test]
    fn euler_poincare(c in arb_complex()) {
        let p = reduced_homology(&c);
        prop_assert_eq!(p.reduced_euler_characteristic(), c.reduced_euler_characteristic());
    }

    #[test]
    fn cones_are_acyclic(c in arb_complex()) {
        prop_assert!(reduced_homology(&c.cone(100).unwrap()).is_acyclic());
    }

    #[test]
    fn subdivision_preserves_homology(c in arb_complex()) {
        let sd = barycentric_subdivision(&c);
        prop_assert_eq!(sd.source().reduced_euler_characteristic(), c.reduced_euler_characteristic());
        prop_assert_eq!(reduced_homology(sd.source()), reduced_homology(&c));
    }

    #[test]
    fn union_and_intersection_are_idempotent(c in arb_complex(), d in arb_complex()) {
        prop_assert_eq!(c.union(&c), c.clone());
        prop_assert_eq!(c.intersection(&c), c.clone());
        let u = c.union(&d);
        let i = c.intersection(&d);
        prop_assert!(c.is_subcomplex_of(&u) && i.is_subcomplex_of(&c) && i.is_subcomplex_of(&d));
    }
}
