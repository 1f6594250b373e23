//! Enumeration of index subsets and the subfamily-count guard.
//!
//! Subsets are sorted index lists. "Lexicographic order" means the order of
//! those lists as sequences, so `[0] < [0,1] < [0,1,2] < [0,2] < [1] < …`;
//! this is the order in which every condition check reports its first witness.

use crate::error::{Error, Result};

/// Largest index set enumerated without an explicit override.
pub const DEFAULT_INDEX_GUARD: usize = 16;

/// Hard ceiling for overrides.
pub const MAX_INDEX_GUARD: usize = 24;

/// Fails when `size` exceeds `limit`, or when `limit` itself is above the ceiling.
pub fn check_guard(size: usize, limit: usize) -> Result<()> {
    if limit > MAX_INDEX_GUARD {
        return Err(Error::GuardExceeded {
            size: limit,
            limit: MAX_INDEX_GUARD,
        });
    }
    if size > limit {
        return Err(Error::GuardExceeded { size, limit });
    }
    Ok(())
}

/// All nonempty subsets of `0..n` with at most `max_size` elements, in
/// lexicographic order.
pub fn lex_subsets(n: usize, max_size: usize) -> Vec<Vec<usize>> {
    fn walk(n: usize, max_size: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let start = prefix.last().map_or(0, |&l| l + 1);
        for i in start..n {
            prefix.push(i);
            out.push(prefix.clone());
            if prefix.len() < max_size {
                walk(n, max_size, prefix, out);
            }
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if max_size > 0 {
        walk(n, max_size, &mut Vec::new(), &mut out);
    }
    out
}

/// All `k`-element subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        // Rightmost position that can still advance.
        let Some(i) = (0..k).rev().find(|&i| idx[i] < n - k + i) else {
            return out;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Picks the entries of `items` named by `theta`.
pub fn select<T: Clone>(items: &[T], theta: &[usize]) -> Vec<T> {
    theta.iter().map(|&i| items[i].clone()).collect()
}
