//! Fourier–Motzkin elimination, an exact decider for `a·x ≥ b` that shares
//! no code path with the simplex routine.
//!
//! Rows remember which input rows they were combined from; after eliminating
//! `s` variables a row built from more than `s + 1` inputs is implied by the
//! others and is dropped (Chernikov's rule). Without it the row count explodes
//! even on small random systems.

use num_traits::{Signed, Zero};

use super::{Rational, RationalMatrix};
use crate::error::{Error, Result};

pub const FM_MAX_VARS: usize = 8;
const FM_MAX_ROWS: usize = 200_000;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Row {
    coeffs: Vec<Rational>,
    rhs: Rational,
    origin: Vec<usize>,
}

impl Row {
    /// Positive rescaling so the first nonzero coefficient is ±1.
    fn normalized(mut self) -> Row {
        if let Some(lead) = self.coeffs.iter().find(|c| !c.is_zero()) {
            let s = lead.abs().recip();
            for c in &mut self.coeffs {
                *c *= &s;
            }
            self.rhs *= &s;
        }
        self
    }
}

fn merge(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = a.iter().chain(b).copied().collect();
    out.sort_unstable();
    out.dedup();
    out
}

pub fn fourier_motzkin_feasible(a: &RationalMatrix, b: &[Rational]) -> Result<bool> {
    if a.rows() != b.len() {
        return Err(Error::DimensionMismatch {
            expected: a.rows(),
            found: b.len(),
        });
    }
    if a.cols() > FM_MAX_VARS {
        return Err(Error::EliminationGuard {
            what: "variables",
            size: a.cols(),
            limit: FM_MAX_VARS,
        });
    }
    let mut rows: Vec<Row> = a
        .row_vectors()
        .iter()
        .zip(b)
        .enumerate()
        .map(|(i, (r, bi))| Row {
            coeffs: r.clone(),
            rhs: bi.clone(),
            origin: vec![i],
        })
        .collect();
    let mut live: Vec<usize> = (0..a.cols()).collect();
    let mut eliminated = 0usize;

    loop {
        // Drop trivial rows, detect 0 ≥ positive.
        let mut kept = Vec::with_capacity(rows.len());
        for r in rows {
            if r.coeffs.iter().all(Zero::is_zero) {
                if r.rhs.is_positive() {
                    return Ok(false);
                }
            } else {
                kept.push(r.normalized());
            }
        }
        rows = dedup_rows(kept);
        if live.is_empty() || rows.is_empty() {
            return Ok(true);
        }

        // Variable with the fewest generated pairs.
        let (pos, var) = live
            .iter()
            .enumerate()
            .map(|(p, &v)| {
                let up = rows.iter().filter(|r| r.coeffs[v].is_positive()).count();
                let down = rows.iter().filter(|r| r.coeffs[v].is_negative()).count();
                (up * down, p, v)
            })
            .min()
            .map(|(_, p, v)| (p, v))
            .unwrap();
        live.remove(pos);
        eliminated += 1;

        let (mut upper, mut lower, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for r in rows {
            if r.coeffs[var].is_positive() {
                upper.push(r);
            } else if r.coeffs[var].is_negative() {
                lower.push(r);
            } else {
                rest.push(r);
            }
        }
        for p in &upper {
            for q in &lower {
                let origin = merge(&p.origin, &q.origin);
                if origin.len() > eliminated + 1 {
                    continue;
                }
                let sp = p.coeffs[var].recip();
                let sq = q.coeffs[var].abs().recip();
                let coeffs = p
                    .coeffs
                    .iter()
                    .zip(&q.coeffs)
                    .map(|(x, y)| x * &sp + y * &sq)
                    .collect();
                rest.push(Row {
                    coeffs,
                    rhs: &p.rhs * &sp + &q.rhs * &sq,
                    origin,
                });
            }
        }
        if rest.len() > FM_MAX_ROWS {
            return Err(Error::EliminationGuard {
                what: "rows",
                size: rest.len(),
                limit: FM_MAX_ROWS,
            });
        }
        rows = rest;
    }
}

/// Drops a row when another row with the same coefficients is at least as
/// strong and was combined from a subset of its inputs. Keeping a stronger
/// row with a larger origin instead would let the origin-size rule prune
/// combinations that the weaker row still needs.
fn dedup_rows(rows: Vec<Row>) -> Vec<Row> {
    let mut sorted = rows;
    sorted.sort_by(|x, y| {
        x.coeffs
            .cmp(&y.coeffs)
            .then(y.rhs.cmp(&x.rhs))
            .then(x.origin.len().cmp(&y.origin.len()))
            .then(x.origin.cmp(&y.origin))
    });
    let mut kept: Vec<Row> = Vec::with_capacity(sorted.len());
    let mut group_start = 0;
    for r in sorted {
        if kept.last().is_some_and(|k| k.coeffs != r.coeffs) {
            group_start = kept.len();
        }
        let dominated = kept[group_start..]
            .iter()
            .any(|q| q.rhs >= r.rhs && q.origin.iter().all(|o| r.origin.binary_search(o).is_ok()));
        if !dominated {
            kept.push(r);
        }
    }
    kept
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat_vec;

    #[test]
    fn interval_cases() {
        let a = RationalMatrix::from_i64(1, &[vec![1], vec![-1]]).unwrap();
        assert!(fourier_motzkin_feasible(&a, &rat_vec(&[1, -2])).unwrap());
        assert!(!fourier_motzkin_feasible(&a, &rat_vec(&[1, 0])).unwrap());
    }

    #[test]
    fn guard_refuses_wide_systems() {
        let a = RationalMatrix::from_i64(9, &[vec![1; 9]]).unwrap();
        assert!(matches!(
            fourier_motzkin_feasible(&a, &rat_vec(&[0])),
            Err(Error::EliminationGuard { .. })
        ));
    }

    #[test]
    fn chained_bounds_found_infeasible() {
        // x - y >= 2/3 and -2x + y >= 1 force x <= -5/3, so x + 2y < 2.
        let a = RationalMatrix::from_i64(
            2,
            &[vec![-2, 1], vec![-1, 2], vec![-1, 0], vec![3, -3], vec![-2, -3], vec![1, 2]],
        )
        .unwrap();
        assert!(!fourier_motzkin_feasible(&a, &rat_vec(&[1, 2, -3, 2, 3, 2])).unwrap());
    }

    #[test]
    fn zero_row_with_positive_rhs_is_infeasible() {
        let a = RationalMatrix::from_i64(2, &[vec![0, 0]]).unwrap();
        assert!(!fourier_motzkin_feasible(&a, &rat_vec(&[1])).unwrap());
        assert!(fourier_motzkin_feasible(&a, &rat_vec(&[0])).unwrap());
    }
}
