//! Exact phase-one simplex for `a·x ≥ b` with free `x`.
//!
//! Free variables are split as `x = x⁺ − x⁻`. Rows with `b_i ≤ 0` start with
//! their surplus variable basic; rows with `b_i > 0` get an artificial. Bland's
//! rule picks both the entering and the leaving variable, so the method
//! terminates without cycling.

use num_traits::{Signed, Zero};

use super::{dot, Rational, RationalMatrix};
use crate::error::{Error, Result};

/// Returns a rational point with `a·x ≥ b`, or `None` when the system is
/// infeasible.
pub fn feasible_weak(a: &RationalMatrix, b: &[Rational]) -> Result<Option<Vec<Rational>>> {
    if a.rows() != b.len() {
        return Err(Error::DimensionMismatch {
            expected: a.rows(),
            found: b.len(),
        });
    }
    let n = a.cols();
    let m = a.rows();
    let needs_artificial: Vec<bool> = b.iter().map(|bi| bi.is_positive()).collect();
    let art_count = needs_artificial.iter().filter(|&&x| x).count();
    if art_count == 0 {
        return Ok(Some(vec![Rational::zero(); n]));
    }

    // Columns: x⁺ (n) | x⁻ (n) | surplus (m) | artificial (art_count) | rhs
    let surplus0 = 2 * n;
    let art0 = surplus0 + m;
    let width = art0 + art_count;
    let mut tab: Vec<Vec<Rational>> = Vec::with_capacity(m);
    let mut basis: Vec<usize> = Vec::with_capacity(m);
    let mut next_art = art0;
    for i in 0..m {
        let mut row = vec![Rational::zero(); width + 1];
        let sign = if needs_artificial[i] { Rational::from_integer(1.into()) } else { Rational::from_integer((-1).into()) };
        for j in 0..n {
            let aij = &a.row(i)[j];
            row[j] = &sign * aij;
            row[n + j] = -(&sign * aij);
        }
        row[surplus0 + i] = -sign.clone();
        row[width] = &sign * &b[i];
        if needs_artificial[i] {
            row[next_art] = Rational::from_integer(1.into());
            basis.push(next_art);
            next_art += 1;
        } else {
            basis.push(surplus0 + i);
        }
        tab.push(row);
    }

    // Reduced costs of min Σ artificials.
    let mut cost = vec![Rational::zero(); width + 1];
    for j in art0..width {
        cost[j] = Rational::from_integer(1.into());
    }
    for (i, &bv) in basis.iter().enumerate() {
        if bv >= art0 {
            for (c, t) in cost.iter_mut().zip(&tab[i]) {
                *c -= t;
            }
        }
    }

    loop {
        let Some(enter) = (0..width).find(|&j| cost[j].is_negative()) else {
            break;
        };
        let mut leave: Option<usize> = None;
        let mut best_ratio: Option<Rational> = None;
        for i in 0..m {
            if tab[i][enter].is_positive() {
                let ratio = &tab[i][width] / &tab[i][enter];
                let better = match &best_ratio {
                    None => true,
                    Some(r) => ratio < *r || (ratio == *r && basis[i] < basis[leave.unwrap()]),
                };
                if better {
                    best_ratio = Some(ratio);
                    leave = Some(i);
                }
            }
        }
        // Phase one is bounded below by zero, so some row always blocks.
        let r = leave.expect("phase-one objective is bounded");
        pivot(&mut tab, &mut cost, r, enter);
        basis[r] = enter;
    }

    // cost[width] holds minus the objective value.
    if !cost[width].is_zero() {
        return Ok(None);
    }
    let mut x = vec![Rational::zero(); n];
    for (i, &bv) in basis.iter().enumerate() {
        if bv < n {
            x[bv] += &tab[i][width];
        } else if bv < 2 * n {
            x[bv - n] -= &tab[i][width];
        }
    }
    debug_assert!(satisfies_weak(a, b, &x));
    Ok(Some(x))
}

fn pivot(tab: &mut [Vec<Rational>], cost: &mut [Rational], r: usize, c: usize) {
    let inv = tab[r][c].recip();
    for x in tab[r].iter_mut() {
        *x *= &inv;
    }
    let pivot_row = tab[r].clone();
    for (i, row) in tab.iter_mut().enumerate() {
        if i != r && !row[c].is_zero() {
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
    }
    if !cost[c].is_zero() {
        let f = cost[c].clone();
        for (x, p) in cost.iter_mut().zip(&pivot_row) {
            if !p.is_zero() {
                *x -= &f * p;
            }
        }
    }
}

/// Exact check of `a·x ≥ b`.
pub fn satisfies_weak(a: &RationalMatrix, b: &[Rational], x: &[Rational]) -> bool {
    a.rows() == b.len()
        && x.len() == a.cols()
        && a.row_vectors().iter().zip(b).all(|(row, bi)| dot(row, x) >= *bi)
}
