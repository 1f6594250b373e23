#![allow(dead_code)]

use conetop::simplicial::{Simplex, SimplicialComplex};
use num_integer::Integer;
use proptest::prelude::*;

/// Rank over Q by fraction-free elimination on i128.
pub fn rank_by_elimination(m: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..a.len()).find(|&r| a[r][c] != 0) else { continue };
        a.swap(rank, p);
        for r in rank + 1..a.len() {
            let (f, g) = (a[r][c], a[rank][c]);
            for j in 0..cols {
                a[r][j] = a[r][j] * g - a[rank][j] * f;
            }
            let h = a[r].iter().fold(0i128, |h, &x| h.gcd(&x));
            if h > 1 {
                a[r].iter_mut().for_each(|x| *x /= h);
            }
        }
        rank += 1;
    }
    rank
}

/// Reduced rational Betti numbers `[b₋₁, b₀, b₁, …]` from the augmented
/// boundary matrices, built here from scratch.
pub fn rational_betti(c: &SimplicialComplex) -> Vec<usize> {
    let top = c.dim().map_or(0, |d| d + 1);
    // cells[q + 1] = q-simplices; the single (−1)-cell is the empty face.
    let mut cells: Vec<Vec<Vec<usize>>> = vec![vec![vec![]]];
    for q in 0..top {
        cells.push(c.simplices_of_dim(q).map(|s| s.vertices().to_vec()).collect());
    }
    cells.push(vec![]);
    let boundary_rank = |q: usize| -> usize {
        // ∂ from cells[q] to cells[q − 1].
        if q == 0 || cells[q].is_empty() || cells[q - 1].is_empty() {
            return 0;
        }
        let rows: Vec<Vec<i64>> = cells[q - 1]
            .iter()
            .map(|f| {
                cells[q]
                    .iter()
                    .map(|s| match (0..s.len()).find(|&i| {
                        let mut t = s.clone();
                        t.remove(i);
                        t == *f
                    }) {
                        Some(i) if i % 2 == 0 => 1,
                        Some(_) => -1,
                        None => 0,
                    })
                    .collect()
            })
            .collect();
        rank_by_elimination(&rows)
    };
    (0..=top).map(|q| cells[q].len() - boundary_rank(q) - boundary_rank(q + 1)).collect()
}

pub fn hollow_triangle() -> SimplicialComplex {
    SimplicialComplex::from_maximal([vec![0, 1], vec![1, 2], vec![0, 2]])
}

pub fn solid_triangle() -> SimplicialComplex {
    SimplicialComplex::simplex([0, 1, 2])
}

/// Complexes on vertices `0..6` given by up to six random maximal sets.
pub fn arb_complex() -> impl Strategy<Value = SimplicialComplex> {
    prop::collection::vec(1u8..64, 0..6).prop_map(|masks| {
        SimplicialComplex::from_maximal(masks.into_iter().map(|m| (0..6).filter(move |i| m >> i & 1 == 1)))
    })
}

pub fn simplices_of(c: &SimplicialComplex) -> Vec<Simplex> {
    c.simplices().cloned().collect()
}
