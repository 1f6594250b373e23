//! Polyhedral convex cones in `Qⁿ` given by homogeneous weak and strict
//! inequalities, optionally with the origin removed.
//!
//! Nonemptiness is decided exactly with the weak-inequality simplex: a strict
//! row `a·x > 0` becomes `a·x ≥ 1` (the set is closed under positive scaling),
//! and a punctured cone without strict rows is searched along the `2n`
//! half-spaces `±x_i ≥ 1` in the fixed order `+e₁, −e₁, +e₂, …`.

mod conversions;
mod nerve;

pub use conversions::{generators_of_weak, rays_with_equalities};
pub use nerve::{build_nerve, build_nerve_with_guard, union_homology, NerveComplex};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmath::{feasible_weak, is_zero_vector, rat, Rational, RationalMatrix};
use crate::simplicial::HomologyProfile;

/// `{x : W x ≥ 0, S x > 0}`, minus the origin when `exclude_origin`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyhedralCone {
    dim: usize,
    weak: RationalMatrix,
    strict: RationalMatrix,
    exclude_origin: bool,
}

/// How a cone sits topologically inside `Qⁿ`; the nerve shortcut is only
/// sound for families whose nonempty members share one kind.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConeKind {
    /// Strict rows only: an open set.
    Open,
    /// Weak rows only, origin kept: closed, contains the origin.
    Closed,
    /// Weak rows only, origin removed: closed in `Qⁿ∖{0}`.
    ClosedPunctured,
    /// Both weak and strict rows: neither open nor closed.
    Mixed,
}

impl PolyhedralCone {
    pub fn new(
        dim: usize,
        weak: Vec<Vec<Rational>>,
        strict: Vec<Vec<Rational>>,
        exclude_origin: bool,
    ) -> Result<Self> {
        Ok(PolyhedralCone {
            dim,
            weak: RationalMatrix::new(dim, weak)?,
            strict: RationalMatrix::new(dim, strict)?,
            exclude_origin,
        })
    }

    /// All of `Qⁿ`.
    pub fn whole(dim: usize) -> Self {
        PolyhedralCone {
            dim,
            weak: RationalMatrix::empty(dim),
            strict: RationalMatrix::empty(dim),
            exclude_origin: false,
        }
    }

    pub fn from_i64(dim: usize, weak: &[Vec<i64>], strict: &[Vec<i64>], exclude_origin: bool) -> Result<Self> {
        Ok(PolyhedralCone {
            dim,
            weak: RationalMatrix::from_i64(dim, weak)?,
            strict: RationalMatrix::from_i64(dim, strict)?,
            exclude_origin,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn weak_rows(&self) -> &RationalMatrix {
        &self.weak
    }

    pub fn strict_rows(&self) -> &RationalMatrix {
        &self.strict
    }

    pub fn excludes_origin(&self) -> bool {
        self.exclude_origin
    }

    /// The origin is outside the set as soon as there is a strict row.
    pub fn misses_origin(&self) -> bool {
        self.exclude_origin || self.strict.rows() > 0
    }

    pub fn kind(&self) -> ConeKind {
        match (self.weak.rows() > 0, self.strict.rows() > 0) {
            (false, true) => ConeKind::Open,
            (true, true) => ConeKind::Mixed,
            (_, false) if self.exclude_origin => ConeKind::ClosedPunctured,
            (_, false) => ConeKind::Closed,
        }
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        x.len() == self.dim
            && self.weak.apply(x).iter().all(|v| *v >= Rational::zero())
            && self.strict.apply(x).iter().all(|v| *v > Rational::zero())
            && !(self.exclude_origin && is_zero_vector(x))
    }

    /// Weak systems `M x ≥ b` whose feasible sets together are exactly the
    /// nonzero-scaled witnesses of this cone; the cone is nonempty iff one of
    /// them is feasible. Tried in order by [`cone_nonempty`].
    pub fn reduced_systems(&self) -> Vec<(RationalMatrix, Vec<Rational>)> {
        let mut base = self.weak.clone();
        let mut rhs = vec![Rational::zero(); self.weak.rows()];
        for row in self.strict.row_vectors() {
            base.push_row(row.clone()).expect("row length");
            rhs.push(Rational::one());
        }
        if self.strict.rows() > 0 || !self.exclude_origin {
            return vec![(base, rhs)];
        }
        let mut out = Vec::with_capacity(2 * self.dim);
        for i in 0..self.dim {
            for sign in [1, -1] {
                let mut m = base.clone();
                let mut e = vec![Rational::zero(); self.dim];
                e[i] = rat(sign);
                m.push_row(e).expect("row length");
                let mut b = rhs.clone();
                b.push(Rational::one());
                out.push((m, b));
            }
        }
        out
    }

    /// Reduced homology of the represented set, decided exactly.
    ///
    /// Sets with a strict row, or containing the origin, are convex. A
    /// punctured closed cone `C∖{0}` is star-shaped about any point of `C`
    /// outside its lineality space, unless `C` is that subspace itself, in
    /// which case it is a sphere of one dimension less.
    pub fn homology(&self) -> Result<HomologyProfile> {
        if cone_nonempty(self)?.is_none() {
            return Ok(HomologyProfile::empty_space());
        }
        if self.strict.rows() > 0 || !self.exclude_origin {
            return Ok(HomologyProfile::acyclic());
        }
        let rank = self.weak.rank();
        if rank == self.dim {
            return Ok(HomologyProfile::acyclic());
        }
        for row in self.weak.row_vectors() {
            let mut m = self.weak.clone();
            m.push_row(row.clone())?;
            let mut b = vec![Rational::zero(); self.weak.rows()];
            b.push(Rational::one());
            if feasible_weak(&m, &b)?.is_some() {
                return Ok(HomologyProfile::acyclic());
            }
        }
        Ok(HomologyProfile::sphere((self.dim - rank) as i64 - 1))
    }

    /// Convex sets: anything with a strict row or the origin, and punctured
    /// cones with trivial lineality space.
    pub fn is_convex(&self) -> bool {
        self.strict.rows() > 0 || !self.exclude_origin || self.weak.rank() == self.dim
    }
}

/// Closed cone of nonnegative combinations of nonzero generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeGenerators {
    dim: usize,
    generators: Vec<Vec<Rational>>,
}

impl ConeGenerators {
    pub fn new(dim: usize, generators: Vec<Vec<Rational>>) -> Result<Self> {
        for g in &generators {
            if g.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: g.len(),
                });
            }
            if is_zero_vector(g) {
                return Err(Error::invalid("cone generators must be nonzero"));
            }
        }
        Ok(ConeGenerators { dim, generators })
    }

    pub fn from_i64(dim: usize, generators: &[Vec<i64>]) -> Result<Self> {
        Self::new(
            dim,
            generators.iter().map(|g| g.iter().map(|&x| rat(x)).collect()).collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[Vec<Rational>] {
        &self.generators
    }

    pub fn rank(&self) -> usize {
        RationalMatrix::new(self.dim, self.generators.clone())
            .expect("validated lengths")
            .rank()
    }

    pub fn is_solid(&self) -> bool {
        self.rank() == self.dim
    }

    /// Inward facet normals `f` with `cone = {x : f·x ≥ 0 ∀f}`. Requires a
    /// solid cone, whose dual is then pointed and has these as extreme rays.
    pub fn facets(&self) -> Result<Vec<Vec<Rational>>> {
        self.require_solid()?;
        let g = RationalMatrix::new(self.dim, self.generators.clone())?;
        Ok(rays_with_equalities(&g, &RationalMatrix::empty(self.dim)))
    }

    fn require_solid(&self) -> Result<()> {
        let rank = self.rank();
        if rank < self.dim {
            return Err(Error::NotSolid { rank, dim: self.dim });
        }
        Ok(())
    }

    /// True when `x` is a nonnegative combination of the generators.
    pub fn spans(&self, x: &[Rational]) -> Result<bool> {
        // Solve G^T λ = x, λ ≥ 0 as a weak system in λ.
        let m = self.generators.len();
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for (i, xi) in x.iter().enumerate() {
            let row: Vec<Rational> = self.generators.iter().map(|g| g[i].clone()).collect();
            rows.push(row.clone());
            rhs.push(xi.clone());
            rows.push(row.into_iter().map(|v| -v).collect());
            rhs.push(-xi.clone());
        }
        for j in 0..m {
            let mut e = vec![Rational::zero(); m];
            e[j] = Rational::one();
            rows.push(e);
            rhs.push(Rational::zero());
        }
        Ok(feasible_weak(&RationalMatrix::new(m, rows)?, &rhs)?.is_some())
    }
}

/// Decides nonemptiness with a rational witness (see module docs for the
/// reduction).
pub fn cone_nonempty(c: &PolyhedralCone) -> Result<Option<Vec<Rational>>> {
    for (m, b) in c.reduced_systems() {
        if let Some(x) = feasible_weak(&m, &b)? {
            debug_assert!(c.contains(&x));
            return Ok(Some(x));
        }
    }
    Ok(None)
}

/// Row concatenation; the origin is excluded if any input excludes it.
pub fn intersect_cones<'a>(cs: impl IntoIterator<Item = &'a PolyhedralCone>) -> Result<PolyhedralCone> {
    let mut it = cs.into_iter();
    let first = it
        .next()
        .ok_or_else(|| Error::invalid("intersection of no cones"))?;
    let mut out = first.clone();
    for c in it {
        if c.dim != out.dim {
            return Err(Error::DimensionMismatch {
                expected: out.dim,
                found: c.dim,
            });
        }
        for r in c.weak.row_vectors() {
            out.weak.push_row(r.clone())?;
        }
        for r in c.strict.row_vectors() {
            out.strict.push_row(r.clone())?;
        }
        out.exclude_origin |= c.exclude_origin;
    }
    Ok(out)
}

/// `{p : p·v > 0 for every v in the interior of cone(g)}`.
///
/// For a solid `cone(g)` this equals `{p : p·g ≥ 0 ∀g}∖{0}`: a nonzero `p`
/// in the closed dual is positive on the interior, and `p = 0` is not.
pub fn strict_dual(g: &ConeGenerators) -> Result<PolyhedralCone> {
    g.require_solid()?;
    Ok(PolyhedralCone {
        dim: g.dim,
        weak: RationalMatrix::new(g.dim, g.generators.clone())?,
        strict: RationalMatrix::empty(g.dim),
        exclude_origin: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{fourier_motzkin_feasible, rat_vec};

    fn cone(dim: usize, weak: &[Vec<i64>], strict: &[Vec<i64>], ex: bool) -> PolyhedralCone {
        PolyhedralCone::from_i64(dim, weak, strict, ex).unwrap()
    }

    #[test]
    fn strict_half_line() {
        let c = cone(1, &[], &[vec![1]], false);
        assert_eq!(cone_nonempty(&c).unwrap(), Some(rat_vec(&[1])));
        let empty = cone(1, &[], &[vec![1], vec![-1]], false);
        assert_eq!(cone_nonempty(&empty).unwrap(), None);
    }

    #[test]
    fn punctured_quadrant_searches_directions_in_order() {
        let q = cone(2, &[vec![1, 0], vec![0, 1]], &[], true);
        assert_eq!(cone_nonempty(&q).unwrap(), Some(rat_vec(&[1, 0])));
        let origin_only = cone(2, &[vec![1, 0], vec![-1, 0], vec![0, 1], vec![0, -1]], &[], true);
        assert_eq!(cone_nonempty(&origin_only).unwrap(), None);
        let with_origin = cone(2, &[vec![1, 0], vec![-1, 0], vec![0, 1], vec![0, -1]], &[], false);
        assert_eq!(cone_nonempty(&with_origin).unwrap(), Some(rat_vec(&[0, 0])));
    }

    #[test]
    fn intersections() {
        let a = cone(2, &[], &[vec![1, 0]], false);
        let b = cone(2, &[], &[vec![0, 1]], false);
        let ab = intersect_cones([&a, &b]).unwrap();
        assert_eq!(ab.strict_rows().rows(), 2);
        let w = cone_nonempty(&ab).unwrap().unwrap();
        assert!(a.contains(&w) && b.contains(&w));

        let ray = cone(2, &[vec![0, 1], vec![0, -1], vec![1, 0]], &[], false);
        let quadrant = cone(2, &[vec![1, 0], vec![0, 1]], &[], true);
        let w = cone_nonempty(&intersect_cones([&ray, &quadrant]).unwrap()).unwrap().unwrap();
        assert_eq!(w, rat_vec(&[1, 0]));

        let aa = intersect_cones([&a, &a]).unwrap();
        for x in [rat_vec(&[1, 5]), rat_vec(&[-1, 0]), rat_vec(&[0, 0])] {
            assert_eq!(aa.contains(&x), a.contains(&x));
        }
        let one = cone(1, &[], &[], false);
        assert!(intersect_cones([&a, &one]).is_err());
    }

    #[test]
    fn strict_dual_examples() {
        let orthant = ConeGenerators::from_i64(2, &[vec![1, 0], vec![0, 1]]).unwrap();
        let d = strict_dual(&orthant).unwrap();
        assert_eq!(d.weak_rows().row_vectors(), &[rat_vec(&[1, 0]), rat_vec(&[0, 1])]);
        assert!(d.excludes_origin());

        let half = ConeGenerators::from_i64(2, &[vec![1, 0], vec![-1, 0], vec![0, 1]]).unwrap();
        let d = strict_dual(&half).unwrap();
        // Hand solution: p·(1,0) ≥ 0 and p·(−1,0) ≥ 0 force p₁ = 0, then p₂ ≥ 0.
        assert!(d.contains(&rat_vec(&[0, 3])));
        assert!(!d.contains(&rat_vec(&[0, 0])));
        assert!(!d.contains(&rat_vec(&[1, 1])));
        assert!(!d.contains(&rat_vec(&[0, -1])));

        let thin = ConeGenerators::from_i64(2, &[vec![1, 1]]).unwrap();
        assert!(matches!(strict_dual(&thin), Err(Error::NotSolid { rank: 1, dim: 2 })));
    }

    #[test]
    fn generators_reject_zero() {
        assert!(ConeGenerators::from_i64(2, &[vec![0, 0]]).is_err());
        assert!(ConeGenerators::from_i64(2, &[vec![1]]).is_err());
    }

    #[test]
    fn homology_of_cones() {
        assert!(cone(2, &[], &[vec![1, 0]], false).homology().unwrap().is_acyclic());
        // Half-plane minus the origin: star-shaped about (1,0).
        assert!(cone(2, &[vec![1, 0]], &[], true).homology().unwrap().is_acyclic());
        // A line minus the origin is two points.
        let line = cone(2, &[vec![0, 1], vec![0, -1]], &[], true);
        assert_eq!(line.homology().unwrap(), HomologyProfile::sphere(0));
        assert!(!line.is_convex());
        // Whole plane minus the origin is a circle.
        assert_eq!(cone(2, &[], &[], true).homology().unwrap(), HomologyProfile::sphere(1));
        assert_eq!(
            cone(1, &[], &[vec![1], vec![-1]], false).homology().unwrap(),
            HomologyProfile::empty_space()
        );
    }

    #[test]
    fn kinds() {
        assert_eq!(cone(1, &[], &[vec![1]], false).kind(), ConeKind::Open);
        assert_eq!(cone(1, &[vec![1]], &[], false).kind(), ConeKind::Closed);
        assert_eq!(cone(1, &[vec![1]], &[], true).kind(), ConeKind::ClosedPunctured);
        assert_eq!(cone(2, &[vec![1, 0]], &[vec![0, 1]], false).kind(), ConeKind::Mixed);
    }

    #[test]
    fn reduced_systems_agree_with_elimination() {
        let c = cone(2, &[vec![1, -1]], &[vec![-1, 0]], false);
        let lp = cone_nonempty(&c).unwrap().is_some();
        let fm = c
            .reduced_systems()
            .iter()
            .any(|(m, b)| fourier_motzkin_feasible(m, b).unwrap());
        assert_eq!(lp, fm);
        assert!(lp);
    }

    #[test]
    fn spans_membership() {
        let g = ConeGenerators::from_i64(2, &[vec![1, 0], vec![1, 1]]).unwrap();
        assert!(g.spans(&rat_vec(&[2, 1])).unwrap());
        assert!(!g.spans(&rat_vec(&[0, 1])).unwrap());
    }
}
