mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use common::{hollow_triangle, solid_triangle};
use conetop::covers::{
    closed_family_intersection_criterion, helly_check, is_regular_cover, is_simple_cover, kkm_witness,
    kkm_witness_simple, nerve_matches_complex, nerve_matches_complex_simple, regular_simplexwise,
    simple_by_vertices, simple_family_intersection_criterion, ConvexPolytopeFamily, RegularCover, SimpleCover,
};
use conetop::exactmath::{rat, ratio, Rational};
use conetop::selftest::generators::random_regular_cover;
use conetop::simplicial::{iterated_subdivision, Simplex, SimplicialComplex, SubdivisionMap, Vertex};
use conetop::Error;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The vertex of a level-one subdivision standing for the face `s`.
fn bary(sd: &SubdivisionMap, s: &[Vertex]) -> Vertex {
    let s = Simplex::new(s.iter().copied());
    sd.barycenters()[0].iter().position(|t| *t == s).expect("face of X")
}

/// Vertex `v` of `X′` at level two: the least original vertex of the least
/// face in its chain, which is also the original vertex nearest to it.
fn nearest_original(sd: &SubdivisionMap, v: Vertex) -> Vertex {
    let chain = &sd.barycenters()[1][v];
    let faces: Vec<&Simplex> = chain.vertices().iter().map(|&u| &sd.barycenters()[0][u]).collect();
    let least = faces.iter().min_by_key(|f| f.dim()).expect("nonempty chain");
    // Barycentric weight of α: sum over the chain of [α ∈ face] / |face|.
    let weight = |a: Vertex| -> Rational {
        faces
            .iter()
            .filter(|f| f.contains(a))
            .map(|f| ratio(1, f.vertices().len() as i64))
            .sum()
    };
    let best = sd.target().vertices().into_iter().map(weight).max().unwrap();
    let nearest = sd.target().vertices().into_iter().find(|&a| weight(a) == best).unwrap();
    assert!(least.contains(nearest));
    nearest
}

fn nearest_vertex_cover(x: SimplicialComplex) -> SimpleCover {
    let sd = iterated_subdivision(Arc::new(x), 2);
    let mut w: BTreeMap<Vertex, BTreeSet<Vertex>> =
        sd.target().vertices().into_iter().map(|a| (a, BTreeSet::new())).collect();
    for v in sd.source().vertices() {
        w.get_mut(&nearest_original(&sd, v)).unwrap().insert(v);
    }
    SimpleCover::on_subdivision(sd, w).unwrap()
}

/// Simplicity straight from open stars: every simplex of `X′` containing a
/// vertex of `W_α` is carried by a face containing `α`.
fn simple_by_open_stars(sc: &SimpleCover) -> bool {
    let sd = sc.subdivision();
    let covering = sd.source().simplices().all(|s| {
        s.vertices().iter().any(|v| sc.star_sets().values().any(|w| w.contains(v)))
    });
    covering
        && sc.star_sets().iter().all(|(&a, w)| {
            sd.source()
                .simplices()
                .filter(|s| s.vertices().iter().any(|v| w.contains(v)))
                .all(|s| sd.carrier()[s].contains(a))
        })
}

/// Regularity straight from the definition: for every θ, each simplex of
/// `X′` carried inside `[θ]` lies in a set indexed by θ.
fn regular_by_definition(rc: &RegularCover) -> bool {
    let s: Vec<Vertex> = rc.index_set().to_vec();
    (1u32..1 << s.len()).all(|m| {
        let theta: BTreeSet<Vertex> = (0..s.len()).filter(|i| m >> i & 1 == 1).map(|i| s[i]).collect();
        rc.subdivision().carrier().iter().all(|(simplex, carrier)| {
            !carrier.vertices().iter().all(|v| theta.contains(v))
                || theta.iter().any(|a| rc.sets()[a].contains(simplex))
        })
    })
}

fn edge() -> Arc<SimplicialComplex> {
    Arc::new(SimplicialComplex::simplex([0, 1]))
}

fn half_edge_cover() -> RegularCover {
    let sd = iterated_subdivision(edge(), 1);
    let mid = bary(&sd, &[0, 1]);
    let sets = BTreeMap::from([
        (0, SimplicialComplex::simplex([bary(&sd, &[0]), mid])),
        (1, SimplicialComplex::simplex([bary(&sd, &[1]), mid])),
    ]);
    RegularCover::on_subdivision(sd, sets).unwrap()
}

/// Closed stars in `X′` of the original vertices, at level one.
fn star_cover(x: SimplicialComplex) -> RegularCover {
    let sd = iterated_subdivision(Arc::new(x), 1);
    let sets = sd
        .target()
        .vertices()
        .into_iter()
        .map(|a| (a, sd.source().closed_star(bary(&sd, &[a])).unwrap()))
        .collect();
    RegularCover::on_subdivision(sd, sets).unwrap()
}

#[test]
fn half_edges_form_a_regular_cover() {
    let rc = half_edge_cover();
    let r = is_regular_cover(&rc).unwrap();
    assert!(r.regular && r.witness.is_none());
    assert!(regular_by_definition(&rc));
    assert!(nerve_matches_complex(&rc).unwrap().matches);
    let mid = bary(rc.subdivision(), &[0, 1]);
    assert_eq!(kkm_witness(&rc).unwrap(), Simplex::vertex(mid));
    let c = closed_family_intersection_criterion(&rc, None).unwrap();
    assert!(c.precondition_holds && c.total_nonempty && c.union_acyclic);
    assert_eq!(c.biconditional_holds, Some(true));
}

#[test]
fn uncovered_edge_fails_at_the_full_index_set() {
    let sd = iterated_subdivision(edge(), 1);
    let sets = BTreeMap::from([
        (0, SimplicialComplex::simplex([bary(&sd, &[0])])),
        (1, SimplicialComplex::simplex([bary(&sd, &[1])])),
    ]);
    let rc = RegularCover::on_subdivision(sd, sets).unwrap();
    let r = is_regular_cover(&rc).unwrap();
    assert!(!r.regular);
    assert_eq!(r.witness, Some(vec![0, 1]));
    assert!(!regular_by_definition(&rc) && !regular_simplexwise(&rc));
    assert!(matches!(kkm_witness(&rc), Err(Error::PreconditionFailed(_))));
}

#[test]
fn vertex_in_the_wrong_set_is_irregular() {
    // C_0 holds the half-edge at 1 and C_1 the half-edge at 0.
    let sd = iterated_subdivision(edge(), 1);
    let mid = bary(&sd, &[0, 1]);
    let sets = BTreeMap::from([
        (0, SimplicialComplex::simplex([bary(&sd, &[1]), mid])),
        (1, SimplicialComplex::simplex([bary(&sd, &[0]), mid])),
    ]);
    let rc = RegularCover::on_subdivision(sd, sets).unwrap();
    let r = is_regular_cover(&rc).unwrap();
    assert_eq!(r.witness, Some(vec![0]));
    assert!(!regular_by_definition(&rc));
}

#[test]
fn star_cover_of_a_triangle() {
    let rc = star_cover(solid_triangle());
    assert!(is_regular_cover(&rc).unwrap().regular);
    let n = nerve_matches_complex(&rc).unwrap();
    assert!(n.matches && n.missing.is_empty() && n.extra.is_empty());
    let centre = bary(rc.subdivision(), &[0, 1, 2]);
    let w = kkm_witness(&rc).unwrap();
    assert_eq!(w, Simplex::vertex(centre));
    assert!(rc.sets().values().all(|c| c.contains(&w)));
}

#[test]
fn closed_arcs_of_a_circle() {
    let rc = star_cover(hollow_triangle());
    assert!(is_regular_cover(&rc).unwrap().regular);
    assert!(regular_by_definition(&rc));
    let c = closed_family_intersection_criterion(&rc, None).unwrap();
    assert!(c.precondition_holds);
    assert!(!c.total_nonempty && !c.union_acyclic);
    assert_eq!(c.union_profile.betti(1), 1);
    assert_eq!(c.biconditional_holds, Some(true));
}

#[test]
fn every_set_is_everything() {
    let sd = iterated_subdivision(Arc::new(solid_triangle()), 1);
    let all = (**sd.source()).clone();
    let sets = (0..3).map(|a| (a, all.clone())).collect();
    let rc = RegularCover::on_subdivision(sd, sets).unwrap();
    let c = closed_family_intersection_criterion(&rc, None).unwrap();
    assert!(c.total_nonempty && c.union_acyclic);
    assert_eq!(c.biconditional_holds, Some(true));
}

#[test]
fn two_points_covered_by_themselves() {
    let x = Arc::new(SimplicialComplex::from_maximal([vec![0], vec![1]]));
    let sets = BTreeMap::from([(0, SimplicialComplex::simplex([0])), (1, SimplicialComplex::simplex([1]))]);
    let rc = RegularCover::new(x.clone(), 0, sets).unwrap();
    assert!(nerve_matches_complex(&rc).unwrap().matches);

    let w = BTreeMap::from([(0, BTreeSet::from([0])), (1, BTreeSet::from([1]))]);
    let sc = SimpleCover::new(x, 0, w).unwrap();
    let c = simple_family_intersection_criterion(&sc, None).unwrap();
    assert!(c.precondition_holds && !c.total_nonempty && !c.union_acyclic);
    assert_eq!(c.union_profile.betti(0), 1);
    assert_eq!(c.biconditional_holds, Some(true));
}

#[test]
fn a_point() {
    let x = Arc::new(SimplicialComplex::simplex([0]));
    let sc = SimpleCover::new(x.clone(), 0, BTreeMap::from([(0, BTreeSet::from([0]))])).unwrap();
    assert!(is_simple_cover(&sc).unwrap().simple);
    let rc = RegularCover::new(x, 0, BTreeMap::from([(0, SimplicialComplex::simplex([0]))])).unwrap();
    assert_eq!(kkm_witness(&rc).unwrap(), Simplex::vertex(0));
}

#[test]
fn nearest_vertex_stars_are_simple() {
    let sc = nearest_vertex_cover(solid_triangle());
    let r = is_simple_cover(&sc).unwrap();
    assert!(r.simple);
    assert!(simple_by_vertices(&sc) && simple_by_open_stars(&sc));
    assert!(nerve_matches_complex_simple(&sc).unwrap().matches);
    let w = kkm_witness_simple(&sc).unwrap();
    assert!(sc.star_sets().values().all(|ws| w.vertices().iter().any(|v| ws.contains(v))));
    let c = simple_family_intersection_criterion(&sc, None).unwrap();
    assert!(c.precondition_holds && c.total_nonempty && c.union_acyclic);
    assert_eq!(c.biconditional_holds, Some(true));
    assert!(is_regular_cover(&sc.closures().unwrap()).unwrap().regular);
}

#[test]
fn nearest_vertex_stars_on_a_circle() {
    let sc = nearest_vertex_cover(hollow_triangle());
    assert!(is_simple_cover(&sc).unwrap().simple);
    assert!(nerve_matches_complex_simple(&sc).unwrap().matches);
    let c = simple_family_intersection_criterion(&sc, None).unwrap();
    assert!(c.precondition_holds && !c.total_nonempty);
    assert_eq!(c.union_profile.betti(1), 1);
    assert_eq!(c.biconditional_holds, Some(true));
}

#[test]
fn star_reaching_the_opposite_side_is_not_simple() {
    let sc = nearest_vertex_cover(solid_triangle());
    let sd = sc.subdivision().clone();
    // The level-two vertex over the original vertex 1 sits opposite 0's star.
    let over_b = sd.barycenters()[1]
        .iter()
        .position(|c| c.vertices().len() == 1 && sd.barycenters()[0][c.vertices()[0]] == Simplex::vertex(1))
        .unwrap();
    let mut w = sc.star_sets().clone();
    w.get_mut(&0).unwrap().insert(over_b);
    let bad = SimpleCover::on_subdivision(sd, w).unwrap();
    let r = is_simple_cover(&bad).unwrap();
    assert!(!r.simple);
    assert_eq!(r.witness, Some(0));
    assert!(!simple_by_vertices(&bad) && !simple_by_open_stars(&bad));
    assert!(matches!(nerve_matches_complex_simple(&bad), Err(Error::PreconditionFailed(_))));
}

#[test]
fn open_stars_must_cover() {
    let sc = nearest_vertex_cover(solid_triangle());
    let mut w = sc.star_sets().clone();
    w.get_mut(&2).unwrap().clear();
    let partial = SimpleCover::on_subdivision(sc.subdivision().clone(), w).unwrap();
    let r = is_simple_cover(&partial).unwrap();
    assert!(!r.simple && r.uncovered.is_some());
    assert!(!simple_by_vertices(&partial) && !simple_by_open_stars(&partial));
}

#[test]
fn kkm_needs_a_simplex() {
    let rc = star_cover(hollow_triangle());
    assert!(matches!(kkm_witness(&rc), Err(Error::PreconditionFailed(_))));
}

fn polytopes(dim: usize, members: &[(&str, Vec<Vec<i64>>, Vec<Rational>)]) -> ConvexPolytopeFamily {
    ConvexPolytopeFamily::new(
        dim,
        members
            .iter()
            .map(|(l, a, b)| {
                (
                    l.to_string(),
                    a.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect(),
                    b.clone(),
                )
            })
            .collect(),
    )
    .unwrap()
}

fn interval(label: &str, lo: Rational, hi: Rational) -> (&str, Vec<Vec<i64>>, Vec<Rational>) {
    (label, vec![vec![1], vec![-1]], vec![hi, -lo])
}

#[test]
fn helly_on_intervals() {
    let f = polytopes(
        1,
        &[
            interval("I", rat(0), rat(2)),
            interval("J", rat(1), rat(3)),
            interval("K", ratio(3, 2), ratio(5, 2)),
        ],
    );
    let r = helly_check(&f).unwrap();
    assert!(r.hypothesis_holds && r.consistent);
    assert_eq!(r.conclusion, Some(true));
    let p = &r.witness_point.unwrap()[0];
    assert!(*p >= ratio(3, 2) && *p <= rat(2));
}

#[test]
fn helly_on_thin_strips() {
    // Strips along the three sides of a large triangle.
    let f = polytopes(
        2,
        &[
            ("bottom", vec![vec![0, -1], vec![0, 1], vec![-1, 0], vec![1, 0]], vec![rat(0), rat(1), rat(0), rat(10)]),
            ("left", vec![vec![-1, 0], vec![1, 0], vec![0, -1], vec![0, 1]], vec![rat(0), rat(1), rat(0), rat(10)]),
            ("slant", vec![vec![-1, -1], vec![1, 1], vec![-1, 0], vec![0, -1]], vec![rat(-9), rat(10), rat(0), rat(0)]),
        ],
    );
    for pair in [[0, 1], [0, 2], [1, 2]] {
        assert!(f.common_point(&pair).unwrap().is_some());
    }
    let r = helly_check(&f).unwrap();
    assert!(!r.hypothesis_holds && r.consistent);
    assert_eq!(r.hypothesis_witness, Some(vec!["bottom".into(), "left".into(), "slant".into()]));
    assert_eq!(r.conclusion, None);
}

#[test]
fn helly_on_copies() {
    let square = (vec![vec![1, 0], vec![-1, 0], vec![0, 1], vec![0, -1]], vec![rat(1); 4]);
    let f = polytopes(2, &[("a", square.0.clone(), square.1.clone()), ("b", square.0.clone(), square.1.clone()), ("c", square.0, square.1)]);
    let r = helly_check(&f).unwrap();
    assert!(r.hypothesis_holds && r.conclusion == Some(true));
}

#[test]
fn helly_needs_enough_members() {
    let f = polytopes(2, &[("a", vec![vec![1, 0]], vec![rat(0)])]);
    assert!(matches!(helly_check(&f), Err(Error::PreconditionFailed(_))));
}

/// Closed subcomplexes of the level-one subdivision of `x`, one per vertex.
fn arb_closed_sets(x: SimplicialComplex) -> impl Strategy<Value = RegularCover> {
    let sd = iterated_subdivision(Arc::new(x), 1);
    let simplices: Vec<Simplex> = sd.source().simplices().cloned().collect();
    let k = sd.target().vertices().len();
    prop::collection::vec(prop::collection::vec(any::<prop::sample::Index>(), 0..5), k).prop_map(move |picks| {
        let sets = picks
            .iter()
            .enumerate()
            .map(|(a, p)| (a, SimplicialComplex::closure(p.iter().map(|i| i.get(&simplices)))))
            .collect();
        RegularCover::on_subdivision(sd.clone(), sets).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn regularity_matches_definition(rc in arb_closed_sets(solid_triangle())) {
        let r = is_regular_cover(&rc).unwrap();
        prop_assert_eq!(r.regular, regular_by_definition(&rc));
        prop_assert_eq!(r.regular, regular_simplexwise(&rc));
    }

    #[test]
    fn regularity_matches_definition_on_a_circle(rc in arb_closed_sets(hollow_triangle())) {
        prop_assert_eq!(is_regular_cover(&rc).unwrap().regular, regular_by_definition(&rc));
    }

    #[test]
    fn helly_on_random_intervals(bounds in prop::collection::vec((-6i64..=6, 0i64..=6), 2..=8)) {
        let members: Vec<(String, Vec<Vec<Rational>>, Vec<Rational>)> = bounds
            .iter()
            .enumerate()
            .map(|(i, &(lo, len))| (format!("I{i}"), vec![vec![rat(1)], vec![rat(-1)]], vec![rat(lo + len), rat(-lo)]))
            .collect();
        let f = ConvexPolytopeFamily::new(1, members).unwrap();
        let r = helly_check(&f).unwrap();
        let max_lo = bounds.iter().map(|&(lo, _)| lo).max().unwrap();
        let min_hi = bounds.iter().map(|&(lo, len)| lo + len).min().unwrap();
        // Pairwise meeting intervals always share a point, so both sides match the interval oracle.
        prop_assert_eq!(r.hypothesis_holds, max_lo <= min_hi);
        prop_assert!(r.consistent);
        if let Some(p) = r.witness_point {
            prop_assert!(p[0] >= rat(max_lo) && p[0] <= rat(min_hi));
        }
    }
}

#[test]
fn kkm_on_random_regular_covers_of_simplices() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for dim in 0..=3 {
        for level in 0..=2 {
            if dim == 3 && level == 2 {
                continue;
            }
            let sd = iterated_subdivision(Arc::new(SimplicialComplex::simplex(0..=dim)), level);
            for _ in 0..5 {
                let rc = random_regular_cover(&mut rng, &sd).unwrap();
                assert!(regular_by_definition(&rc));
                let w = kkm_witness(&rc).unwrap();
                assert!(rc.sets().values().all(|c| c.contains(&w)));
                assert!(nerve_matches_complex(&rc).unwrap().matches);
            }
        }
    }
}
