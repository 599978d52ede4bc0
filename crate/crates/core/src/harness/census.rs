//! Exhaustive census of finite spaces up to homeomorphism.
//!
//! A preorder on `n ≤ 5` points is encoded as the bitmask of its strict
//! reach pairs; its canonical form is the least mask over all relabelings.
//! A relation is emitted exactly when it is its own canonical form, so each
//! homeomorphism class appears once, in increasing mask order.

use crate::error::{Error, Result};
use crate::finspace::FinSpace;

pub const MAX_CENSUS_POINTS: usize = 5;
pub const DEFAULT_CENSUS_POINTS: usize = 4;

fn pair_bit(n: usize, i: usize, j: usize) -> u32 {
    // Off-diagonal pairs in row-major order.
    let k = i * (n - 1) + if j < i { j } else { j - 1 };
    1 << k
}

fn reaches(mask: u32, n: usize, i: usize, j: usize) -> bool {
    i == j || mask & pair_bit(n, i, j) != 0
}

fn is_transitive(mask: u32, n: usize) -> bool {
    (0..n).all(|i| {
        (0..n).all(|j| {
            !reaches(mask, n, i, j)
                || (0..n).all(|k| !reaches(mask, n, j, k) || reaches(mask, n, i, k))
        })
    })
}

fn is_antisymmetric(mask: u32, n: usize) -> bool {
    (0..n).all(|i| (0..i).all(|j| !(reaches(mask, n, i, j) && reaches(mask, n, j, i))))
}

fn relabel(mask: u32, n: usize, perm: &[usize]) -> u32 {
    let mut out = 0;
    for i in 0..n {
        for j in 0..n {
            if i != j && mask & pair_bit(n, i, j) != 0 {
                out |= pair_bit(n, perm[i], perm[j]);
            }
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                go(cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Canonical form of a space on at most five points.
pub fn canonical_mask(space: &FinSpace) -> u32 {
    let n = space.n();
    if n < 2 {
        return 0;
    }
    let mask = space
        .strict_pairs()
        .into_iter()
        .fold(0, |m, (i, j)| m | pair_bit(n, i, j));
    permutations(n)
        .iter()
        .map(|p| relabel(mask, n, p))
        .min()
        .unwrap_or(0)
}

fn to_space(mask: u32, n: usize) -> FinSpace {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| i != j && mask & pair_bit(n, i, j) != 0)
        .collect();
    FinSpace::new(n, &pairs).expect("census relations are transitive")
}

/// All spaces on `n` points up to homeomorphism, optionally T0 only.
pub fn census_spaces(n: usize, posets_only: bool) -> Result<Vec<FinSpace>> {
    if n > MAX_CENSUS_POINTS {
        return Err(Error::ResourceLimit {
            what: "census",
            size: n,
            limit: MAX_CENSUS_POINTS,
        });
    }
    if n < 2 {
        return Ok(vec![to_space(0, n)]);
    }
    let perms = permutations(n);
    let bits = n * (n - 1);
    let mut out = Vec::new();
    for mask in 0..(1u32 << bits) {
        if posets_only && !is_antisymmetric(mask, n) {
            continue;
        }
        if !is_transitive(mask, n) {
            continue;
        }
        if perms.iter().all(|p| relabel(mask, n, p) >= mask) {
            out.push(to_space(mask, n));
        }
    }
    Ok(out)
}

/// Census of every size from `0` to `max_points`, smallest first.
pub fn census_up_to(max_points: usize, posets_only: bool) -> Result<Vec<FinSpace>> {
    let mut out = Vec::new();
    for n in 0..=max_points {
        out.extend(census_spaces(n, posets_only)?);
    }
    Ok(out)
}
