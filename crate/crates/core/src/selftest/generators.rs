//! Random instances for the self-test suites and property tests.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::cones::{ConeGenerators, PolyhedralCone};
use crate::covers::{regular_simplexwise, ConvexPolytopeFamily, RegularCover, SimpleCover};
use crate::economy::{asymptotic_cone, Economy, Trader, Utility};
use crate::error::Result;
use crate::exactmath::{is_zero_vector, rat, ratio, Rational, RationalMatrix};
use crate::families::IndexedFamily;
use crate::simplicial::{Simplex, SimplicialComplex, SubdivisionMap, Vertex};

fn random_vertex_set<R: Rng>(rng: &mut R, pool: &[Vertex], size: usize) -> Vec<Vertex> {
    let mut vs: Vec<Vertex> = pool.choose_multiple(rng, size.min(pool.len())).copied().collect();
    vs.sort_unstable();
    vs
}

/// A complex on `vertices` vertices with at most `max_simplices` simplices,
/// built from random maximal simplices of dimension at most `max_dim`.
pub fn random_complex<R: Rng>(rng: &mut R, vertices: usize, max_dim: usize, max_simplices: usize) -> SimplicialComplex {
    let pool: Vec<Vertex> = (0..vertices).collect();
    let mut c = SimplicialComplex::from_maximal([vec![rng.gen_range(0..vertices)]]);
    for _ in 0..3 * vertices {
        let size = rng.gen_range(1..=max_dim + 1);
        let next = c.union(&SimplicialComplex::simplex(random_vertex_set(rng, &pool, size)));
        if next.len() <= max_simplices {
            c = next;
        }
    }
    c
}

/// Closure of one to three random simplices of `ambient`.
pub fn random_subcomplex<R: Rng>(rng: &mut R, ambient: &SimplicialComplex) -> SimplicialComplex {
    let all: Vec<&Simplex> = ambient.simplices().collect();
    let count = rng.gen_range(1..=3);
    let picks: Vec<&Simplex> = (0..count).map(|_| *all.choose(rng).expect("nonempty ambient")).collect();
    SimplicialComplex::closure(picks)
}

fn labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("U{i}")).collect()
}

/// A family of `size` random subcomplexes of a random complex with at most
/// 40 simplices.
pub fn random_subcomplex_family<R: Rng>(rng: &mut R, size: usize) -> Result<IndexedFamily> {
    let vertices = rng.gen_range(3..=7);
    let ambient = Arc::new(random_complex(rng, vertices, 3, 40));
    let members = labels(size)
        .into_iter()
        .map(|l| (l, random_subcomplex(rng, &ambient)))
        .collect();
    IndexedFamily::subcomplexes(ambient, members)
}

/// `size` random faces of a full simplex; every nonempty intersection is a face.
pub fn random_face_family<R: Rng>(rng: &mut R, size: usize) -> Result<IndexedFamily> {
    let vertices = rng.gen_range(3..=5);
    let pool: Vec<Vertex> = (0..vertices).collect();
    let ambient = Arc::new(SimplicialComplex::simplex(pool.clone()));
    let members = labels(size)
        .into_iter()
        .map(|l| {
            let k = rng.gen_range(1..=vertices);
            (l, SimplicialComplex::simplex(random_vertex_set(rng, &pool, k)))
        })
        .collect();
    IndexedFamily::subcomplexes(ambient, members)
}

/// Closures of one or two faces of a simplex on at most five vertices.
pub fn random_face_union_family<R: Rng>(rng: &mut R, size: usize) -> Result<IndexedFamily> {
    let vertices = rng.gen_range(3..=5);
    let pool: Vec<Vertex> = (0..vertices).collect();
    let ambient = Arc::new(SimplicialComplex::simplex(pool.clone()));
    let members = labels(size)
        .into_iter()
        .map(|l| {
            let faces: Vec<Vec<Vertex>> = (0..rng.gen_range(1..=2))
                .map(|_| {
                    let k = rng.gen_range(2..=vertices);
                    random_vertex_set(rng, &pool, k)
                })
                .collect();
            (l, SimplicialComplex::from_maximal(faces))
        })
        .collect();
    IndexedFamily::subcomplexes(ambient, members)
}

/// Member `i` is the face missing vertex `i` of a simplex with at least
/// `size` vertices, sometimes joined with a random extra face. With exactly
/// `size` vertices every proper subfamily meets and the whole family does
/// not, so the union is a sphere.
pub fn random_sphere_family<R: Rng>(rng: &mut R, size: usize) -> Result<IndexedFamily> {
    let vertices = rng.gen_range(size..=size + 1).max(2);
    let pool: Vec<Vertex> = (0..vertices).collect();
    let ambient = Arc::new(SimplicialComplex::simplex(pool.clone()));
    let members = labels(size)
        .into_iter()
        .enumerate()
        .map(|(i, l)| {
            let mut faces = vec![pool.iter().copied().filter(|&v| v != i).collect::<Vec<_>>()];
            if rng.gen_bool(0.3) {
                let k = rng.gen_range(1..=vertices);
                faces.push(random_vertex_set(rng, &pool, k));
            }
            (l, SimplicialComplex::from_maximal(faces))
        })
        .collect();
    IndexedFamily::subcomplexes(ambient, members)
}

fn small_vector<R: Rng>(rng: &mut R, n: usize, lo: i64, hi: i64) -> Vec<Rational> {
    loop {
        let v: Vec<Rational> = (0..n).map(|_| rat(rng.gen_range(lo..=hi))).collect();
        if !is_zero_vector(&v) {
            return v;
        }
    }
}

/// Solid generator set with small integer entries.
pub fn random_solid_generators<R: Rng>(rng: &mut R, n: usize, positive_bias: bool) -> ConeGenerators {
    loop {
        let count = rng.gen_range(n..=n + 2);
        let lo = if positive_bias && rng.gen_bool(0.7) { 0 } else { -2 };
        let gens: Vec<Vec<Rational>> = (0..count).map(|_| small_vector(rng, n, lo, 2)).collect();
        let g = ConeGenerators::new(n, gens).expect("nonzero generators");
        if g.is_solid() {
            return g;
        }
    }
}

/// Which shape every member of a random cone family has.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConeShape {
    /// Strict inequalities only.
    Open,
    /// Closed dual of a solid cone, minus the origin.
    ClosedPunctured,
    /// Weak inequalities through the origin.
    Closed,
}

pub fn random_cone<R: Rng>(rng: &mut R, n: usize, shape: ConeShape) -> Result<PolyhedralCone> {
    let rows = |rng: &mut R| -> Vec<Vec<Rational>> { (0..rng.gen_range(1..=n)).map(|_| small_vector(rng, n, -2, 2)).collect() };
    match shape {
        ConeShape::Open => {
            let strict = rows(rng);
            PolyhedralCone::new(n, vec![], strict, false)
        }
        ConeShape::Closed => {
            let weak = rows(rng);
            PolyhedralCone::new(n, weak, vec![], false)
        }
        ConeShape::ClosedPunctured => crate::cones::strict_dual(&random_solid_generators(rng, n, false)),
    }
}

/// Convex cones of one shape in `Qⁿ`, so every nonempty intersection is convex.
pub fn random_cone_family<R: Rng>(rng: &mut R, n: usize, size: usize) -> Result<IndexedFamily> {
    let shape = *[ConeShape::Open, ConeShape::ClosedPunctured, ConeShape::Closed]
        .choose(rng)
        .expect("nonempty");
    let members = labels(size)
        .into_iter()
        .map(|l| Ok((l, random_cone(rng, n, shape)?)))
        .collect::<Result<Vec<_>>>()?;
    IndexedFamily::cones(n, members)
}

/// Random system `A x ≥ b` with small integer data.
pub fn random_system<R: Rng>(rng: &mut R, vars: usize, rows: usize) -> (RationalMatrix, Vec<Rational>) {
    let a: Vec<Vec<Rational>> = (0..rows)
        .map(|_| (0..vars).map(|_| rat(rng.gen_range(-3..=3))).collect())
        .collect();
    let b = (0..rows).map(|_| rat(rng.gen_range(-3..=3))).collect();
    (RationalMatrix::new(vars, a).expect("rows have the right length"), b)
}

/// Up to `max_members` boxes around nearby centres, some cut by an extra
/// half-space, in `Qⁿ`.
pub fn random_polytope_family<R: Rng>(rng: &mut R, n: usize, max_members: usize) -> Result<ConvexPolytopeFamily> {
    let count = rng.gen_range(n + 1..=max_members.max(n + 1));
    let spread = rng.gen_range(0..=4);
    let members = (0..count)
        .map(|i| {
            let mut a = Vec::new();
            let mut b = Vec::new();
            for j in 0..n {
                let centre = rng.gen_range(-spread..=spread);
                let lo = centre - rng.gen_range(0..=4);
                let hi = centre + rng.gen_range(0..=4);
                let mut up = vec![rat(0); n];
                up[j] = rat(1);
                let mut down = vec![rat(0); n];
                down[j] = rat(-1);
                a.push(up);
                b.push(rat(hi));
                a.push(down);
                b.push(rat(-lo));
            }
            if rng.gen_bool(0.5) {
                a.push(small_vector(rng, n, -3, 3));
                b.push(ratio(rng.gen_range(-6..=12), 2));
            }
            (format!("P{i}"), a, b)
        })
        .collect();
    ConvexPolytopeFamily::new(n, members)
}

/// A trader with a random utility of the requested form (0 linear, 1 min-of-linear,
/// 2 explicit cone), biased towards the positive orthant.
pub fn random_trader<R: Rng>(rng: &mut R, id: String, n: usize, form: usize) -> Trader {
    let endowment = small_vector(rng, n, 0, 3);
    loop {
        let lo = if rng.gen_bool(0.75) { 0 } else { -2 };
        let utility = match form {
            0 => Utility::Linear(small_vector(rng, n, lo, 3)),
            1 => Utility::MinLinear((0..rng.gen_range(1..=n)).map(|_| small_vector(rng, n, lo, 3)).collect()),
            _ => Utility::ExplicitCone(random_solid_generators(rng, n, true)),
        };
        let t = Trader::new(id.clone(), endowment.clone(), utility).expect("valid trader data");
        if asymptotic_cone(&t, n).is_ok() {
            return t;
        }
    }
}

/// `n ≤ 3` goods and `2 ≤ H ≤ max_traders` traders with mixed utility forms.
pub fn random_economy<R: Rng>(rng: &mut R, max_traders: usize) -> Economy {
    let n = rng.gen_range(2..=3);
    let h = rng.gen_range(2..=max_traders.max(2));
    let traders = (0..h)
        .map(|i| {
            let form = rng.gen_range(0..3);
            random_trader(rng, format!("t{i}"), n, form)
        })
        .collect();
    Economy::new(n, traders).expect("generated economy is valid")
}

/// Assigns each vertex of a level ≥ 2 subdivision to the least vertex of the
/// least simplex in the chain it stands for, then lets every vertex also join
/// random further sets it may belong to. The result is simple.
pub fn random_simple_cover<R: Rng>(rng: &mut R, sd: &SubdivisionMap) -> Result<SimpleCover> {
    assert!(sd.level() >= 2 || sd.source().dim() == Some(0), "simple covers need level two");
    let xs = sd.source();
    let x_vertices: Vec<Vertex> = sd.target().vertices().into_iter().collect();
    let mut sets: BTreeMap<Vertex, BTreeSet<Vertex>> = x_vertices.iter().map(|&a| (a, BTreeSet::new())).collect();
    for v in xs.vertices() {
        let canonical = canonical_owner(sd, v);
        sets.get_mut(&canonical).expect("vertex of X").insert(v);
        // α may also own v when every vertex of the closed star of v is carried by a simplex containing α.
        let star = xs.closed_star(v)?;
        let allowed: Vec<Vertex> = x_vertices
            .iter()
            .copied()
            .filter(|&a| star.vertices().iter().all(|&u| sd.carrier()[&Simplex::vertex(u)].contains(a)))
            .collect();
        for a in allowed {
            if a != canonical && rng.gen_bool(0.3) {
                sets.get_mut(&a).expect("vertex of X").insert(v);
            }
        }
    }
    SimpleCover::on_subdivision(sd.clone(), sets)
}

/// Least vertex of the least simplex in the chain a top-level vertex stands for.
fn canonical_owner(sd: &SubdivisionMap, v: Vertex) -> Vertex {
    let levels = sd.barycenters();
    if levels.is_empty() {
        return v;
    }
    let mut s = Simplex::vertex(v);
    for level in levels.iter().rev() {
        // Descend through the least element of each chain.
        let least = s.vertices()[0];
        let mut best = level[least].clone();
        for &u in s.vertices() {
            if level[u].dim() < best.dim() {
                best = level[u].clone();
            }
        }
        s = best;
    }
    s.vertices()[0]
}

/// A regular cover: closed stars of the vertices of `X` for levels 0 and 1,
/// closures of a simple cover at level 2, followed by random growth and
/// shrink moves kept only when the cover stays regular.
pub fn random_regular_cover<R: Rng>(rng: &mut R, sd: &SubdivisionMap) -> Result<RegularCover> {
    let xs = sd.source();
    let mut sets: BTreeMap<Vertex, SimplicialComplex> = if sd.level() >= 2 {
        random_simple_cover(rng, sd)?.closures()?.sets().clone()
    } else {
        let index: BTreeMap<&Simplex, Vertex> = match sd.barycenters().first() {
            Some(level) => level.iter().enumerate().map(|(i, s)| (s, i)).collect(),
            None => BTreeMap::new(),
        };
        sd.target()
            .vertices()
            .into_iter()
            .map(|a| {
                let centre = if sd.level() == 0 { a } else { index[&Simplex::vertex(a)] };
                Ok((a, xs.closed_star(centre)?))
            })
            .collect::<Result<_>>()?
    };
    let all: Vec<&Simplex> = xs.simplices().collect();
    let keys: Vec<Vertex> = sets.keys().copied().collect();
    for _ in 0..rng.gen_range(0..=6) {
        let a = *keys.choose(rng).expect("nonempty index set");
        let mut trial = sets.clone();
        if rng.gen_bool(0.5) {
            let s = *all.choose(rng).expect("nonempty complex");
            trial.insert(a, trial[&a].union(&SimplicialComplex::closure([s])));
        } else {
            let maximal = trial[&a].maximal_simplices();
            let Some(drop) = maximal.choose(rng) else { continue };
            let kept: BTreeSet<Simplex> = trial[&a].simplices().filter(|s| *s != drop).cloned().collect();
            trial.insert(a, SimplicialComplex::from_closed_set(kept)?);
        }
        if let Ok(rc) = RegularCover::on_subdivision(sd.clone(), trial.clone()) {
            if regular_simplexwise(&rc) {
                sets = trial;
            }
        }
    }
    RegularCover::on_subdivision(sd.clone(), sets)
}
