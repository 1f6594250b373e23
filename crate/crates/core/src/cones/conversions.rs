//! Brute-force passage between inequality and generator descriptions.
//!
//! Only used on the handful of rows a single utility produces, so the
//! enumeration of tight row subsets is cheap.

use std::collections::BTreeSet;

use num_traits::Zero;

use crate::exactmath::{primitive_integer_vector, Rational, RationalMatrix};
use crate::subsets::combinations;

/// Extreme rays of the pointed cone `{x : W x ≥ 0, E x = 0}`, as primitive
/// integer vectors in sorted order.
///
/// A ray is a nonzero feasible point whose tight constraints (together with
/// the equalities) have rank `n − 1`; every such point spans the kernel of
/// some `n − 1 − rank E` rows of `W` stacked under `E`.
pub fn rays_with_equalities(w: &RationalMatrix, eq: &RationalMatrix) -> Vec<Vec<Rational>> {
    let n = w.cols();
    let eq_rank = eq.rank();
    let mut out: BTreeSet<Vec<Rational>> = BTreeSet::new();
    if n == 0 || eq_rank >= n {
        return Vec::new();
    }
    let need = n - 1 - eq_rank;
    for subset in combinations(w.rows(), need) {
        let mut m = eq.clone();
        for &i in &subset {
            m.push_row(w.row(i).to_vec()).expect("row length");
        }
        let kernel = m.nullspace();
        if kernel.len() != 1 {
            continue;
        }
        let v = &kernel[0];
        for sign in [1i64, -1] {
            let cand: Vec<Rational> = v.iter().map(|x| x * Rational::from_integer(sign.into())).collect();
            if w.apply(&cand).iter().all(|x| *x >= Rational::zero()) {
                out.insert(primitive_integer_vector(&cand));
            }
        }
    }
    out.into_iter().collect()
}

/// Generators of the closed cone `{x : W x ≥ 0}`: a ± basis of the
/// lineality space `ker W` followed by the extreme rays of the pointed part
/// `{W x ≥ 0} ∩ (ker W)^⊥`.
pub fn generators_of_weak(w: &RationalMatrix) -> Vec<Vec<Rational>> {
    let lineality = w.nullspace();
    let mut out = Vec::new();
    for b in &lineality {
        let b = primitive_integer_vector(b);
        out.push(b.iter().map(|x| -x).collect());
        out.push(b);
    }
    let eq = RationalMatrix::new(w.cols(), lineality).expect("basis vectors have n entries");
    out.extend(rays_with_equalities(w, &eq));
    out
}
