//! Smith normal form over the integers.
//!
//! [`smith_normal_form`] first strips unit pivots from a sparse copy of the
//! matrix (boundary operators are mostly ±1) and then runs the dense
//! smallest-magnitude-pivot reduction on whatever is left.
//! [`smith_normal_form_verbose`] runs the dense reduction on the whole matrix
//! and records the unimodular transforms `U`, `V` with `U·M·V = D`.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    /// `d_1 | d_2 | …`, padded with zeros to `min(rows, cols)` entries.
    pub invariant_factors: Vec<BigInt>,
    pub rank: usize,
}

impl SnfResult {
    fn from_factors(mut factors: Vec<BigInt>, len: usize) -> Self {
        let rank = factors.iter().filter(|d| !d.is_zero()).count();
        factors.resize(len, BigInt::zero());
        SnfResult {
            invariant_factors: factors,
            rank,
        }
    }

    /// Invariant factors strictly greater than one (the torsion coefficients).
    pub fn torsion(&self) -> Vec<BigInt> {
        self.invariant_factors
            .iter()
            .filter(|d| **d > BigInt::one())
            .cloned()
            .collect()
    }
}

/// SNF together with its unimodular certificate.
#[derive(Clone, Debug)]
pub struct SnfCertificate {
    pub result: SnfResult,
    pub left: IntMatrix,
    pub right: IntMatrix,
    pub diagonal: IntMatrix,
}

pub fn smith_normal_form(m: &IntMatrix) -> SnfResult {
    let len = m.rows().min(m.cols());
    let (units, rest) = strip_unit_pivots(m);
    let mut dense = DenseSnf::new(rest, false);
    let mut factors = vec![BigInt::one(); units];
    factors.extend(dense.run());
    SnfResult::from_factors(factors, len)
}

pub fn smith_normal_form_verbose(m: &IntMatrix) -> SnfCertificate {
    let len = m.rows().min(m.cols());
    let mut dense = DenseSnf::new(m.to_rows(), true);
    let factors = dense.run();
    let rows = m.rows();
    let cols = m.cols();
    let flatten = |rs: Vec<Vec<BigInt>>, r: usize, c: usize| {
        IntMatrix::new(r, c, rs.into_iter().flatten().collect()).expect("shape")
    };
    SnfCertificate {
        result: SnfResult::from_factors(factors, len),
        left: flatten(dense.left.take().unwrap_or_default(), rows, rows),
        right: flatten(dense.right.take().unwrap_or_default(), cols, cols),
        diagonal: flatten(dense.a, rows, cols),
    }
}

/// `cols − rank(m)`.
pub fn kernel_rank(m: &IntMatrix) -> usize {
    m.cols() - smith_normal_form(m).rank
}

/// Eliminates ±1 pivots on a sparse copy. Returns the number of pivots removed
/// and the remaining dense block (rows/columns not touched by a pivot).
fn strip_unit_pivots(m: &IntMatrix) -> (usize, Vec<Vec<BigInt>>) {
    let mut rows: Vec<Option<BTreeMap<usize, BigInt>>> = (0..m.rows())
        .map(|i| {
            Some(
                m.row(i)
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(j, x)| (j, x.clone()))
                    .collect(),
            )
        })
        .collect();
    let mut cols: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); m.cols()];
    for (i, row) in rows.iter().enumerate() {
        for &j in row.as_ref().unwrap().keys() {
            cols[j].insert(i);
        }
    }
    let mut col_alive = vec![true; m.cols()];
    let mut units = 0;

    loop {
        // Unit pivot with the least fill-in estimate; ties broken by position.
        let mut best: Option<(usize, usize, usize)> = None;
        for (i, row) in rows.iter().enumerate() {
            let Some(row) = row else { continue };
            for (&j, x) in row {
                if x.is_one() || (-x).is_one() {
                    let cost = (row.len() - 1) * (cols[j].len() - 1);
                    if best.is_none_or(|(c, _, _)| cost < c) {
                        best = Some((cost, i, j));
                    }
                }
            }
        }
        let Some((_, pi, pj)) = best else { break };

        let pivot_row = rows[pi].take().unwrap();
        let pivot = pivot_row[&pj].clone();
        let others: Vec<usize> = cols[pj].iter().copied().filter(|&r| r != pi).collect();
        for r in others {
            let row = rows[r].as_mut().unwrap();
            // pivot is ±1, so dividing by it is multiplying by it.
            let factor = &row[&pj] * &pivot;
            for (&c, v) in &pivot_row {
                let entry = row.entry(c).or_insert_with(BigInt::zero);
                *entry -= &factor * v;
                if entry.is_zero() {
                    row.remove(&c);
                    cols[c].remove(&r);
                } else {
                    cols[c].insert(r);
                }
            }
        }
        for &c in pivot_row.keys() {
            cols[c].remove(&pi);
        }
        col_alive[pj] = false;
        units += 1;
    }

    let live_cols: Vec<usize> = (0..m.cols()).filter(|&j| col_alive[j]).collect();
    let rest = rows
        .into_iter()
        .flatten()
        .map(|row| {
            live_cols
                .iter()
                .map(|j| row.get(j).cloned().unwrap_or_else(BigInt::zero))
                .collect()
        })
        .collect();
    (units, rest)
}

struct DenseSnf {
    a: Vec<Vec<BigInt>>,
    rows: usize,
    cols: usize,
    left: Option<Vec<Vec<BigInt>>>,
    right: Option<Vec<Vec<BigInt>>>,
}

fn identity_rows(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

impl DenseSnf {
    fn new(a: Vec<Vec<BigInt>>, track: bool) -> Self {
        let rows = a.len();
        let cols = a.first().map_or(0, Vec::len);
        DenseSnf {
            a,
            rows,
            cols,
            left: track.then(|| identity_rows(rows)),
            right: track.then(|| identity_rows(cols)),
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            self.a.swap(i, j);
            if let Some(u) = &mut self.left {
                u.swap(i, j);
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i != j {
            for row in &mut self.a {
                row.swap(i, j);
            }
            if let Some(v) = &mut self.right {
                for row in v.iter_mut() {
                    row.swap(i, j);
                }
            }
        }
    }

    /// row[dst] += q · row[src]
    fn add_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        fn apply(m: &mut [Vec<BigInt>], dst: usize, src: usize, q: &BigInt) {
            let (s, d) = if src < dst {
                let (lo, hi) = m.split_at_mut(dst);
                (&lo[src], &mut hi[0])
            } else {
                let (lo, hi) = m.split_at_mut(src);
                (&hi[0], &mut lo[dst])
            };
            for (x, y) in d.iter_mut().zip(s) {
                if !y.is_zero() {
                    *x += q * y;
                }
            }
        }
        apply(&mut self.a, dst, src, q);
        if let Some(u) = &mut self.left {
            apply(u, dst, src, q);
        }
    }

    /// col[dst] += q · col[src]
    fn add_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        fn apply(m: &mut [Vec<BigInt>], dst: usize, src: usize, q: &BigInt) {
            for row in m.iter_mut() {
                if !row[src].is_zero() {
                    let delta = q * &row[src];
                    row[dst] += delta;
                }
            }
        }
        apply(&mut self.a, dst, src, q);
        if let Some(v) = &mut self.right {
            apply(v, dst, src, q);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in &mut self.a[i] {
            *x = -&*x;
        }
        if let Some(u) = &mut self.left {
            for x in &mut u[i] {
                *x = -&*x;
            }
        }
    }

    fn smallest_nonzero(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                let x = &self.a[i][j];
                if x.is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| x.abs() < self.a[bi][bj].abs()) {
                    best = Some((i, j));
                    if x.is_one() || (-x).is_one() {
                        return best;
                    }
                }
            }
        }
        best
    }

    fn run(&mut self) -> Vec<BigInt> {
        let n = self.rows.min(self.cols);
        let mut factors = Vec::new();
        for t in 0..n {
            loop {
                let Some((pi, pj)) = self.smallest_nonzero(t) else {
                    return factors;
                };
                self.swap_rows(t, pi);
                self.swap_cols(t, pj);
                let pivot = self.a[t][t].clone();
                let mut clean = true;
                for i in t + 1..self.rows {
                    if !self.a[i][t].is_zero() {
                        let q = -self.a[i][t].div_floor(&pivot);
                        self.add_row(i, t, &q);
                        clean &= self.a[i][t].is_zero();
                    }
                }
                for j in t + 1..self.cols {
                    if !self.a[t][j].is_zero() {
                        let q = -self.a[t][j].div_floor(&pivot);
                        self.add_col(j, t, &q);
                        clean &= self.a[t][j].is_zero();
                    }
                }
                if !clean {
                    continue;
                }
                let offender = (t + 1..self.rows)
                    .find(|&i| (t + 1..self.cols).any(|j| !self.a[i][j].is_multiple_of(&pivot)));
                match offender {
                    Some(i) => self.add_row(t, i, &BigInt::one()),
                    None => break,
                }
            }
            if self.a[t][t].is_negative() {
                self.negate_row(t);
            }
            factors.push(self.a[t][t].clone());
        }
        factors
    }
}
