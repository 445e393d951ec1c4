//! Well distributing matrices: 0/1 grids with prescribed row sums whose
//! column sums avoid 0 and u.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::spectrum::naive_k;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WellDistributingMatrix {
    pub u: usize,
    pub k: usize,
    pub grid: Vec<Vec<u8>>,
    pub row_targets: Vec<usize>,
}

impl WellDistributingMatrix {
    /// Conditions (i) row sums and (ii) column sums in [1, u−1].
    pub fn is_valid(&self) -> bool {
        is_well_distributing(&self.grid, &self.row_targets)
    }
}

pub fn is_well_distributing(grid: &[Vec<u8>], l: &[usize]) -> bool {
    let u = grid.len();
    if u != l.len() || u < 2 {
        return false;
    }
    let k = grid[0].len();
    let rows_ok = grid.iter().zip(l).all(|(r, &li)| r.len() == k && r.iter().map(|&x| x as usize).sum::<usize>() == li);
    let cols_ok = (0..k).all(|j| {
        let c: usize = grid.iter().map(|r| r[j] as usize).sum();
        (1..u).contains(&c)
    });
    rows_ok && cols_ok
}

/// Rows are laid out as consecutive runs that wrap around the K columns, so
/// every column receives ⌊Σl/K⌋ or ⌈Σl/K⌉ ones and no row meets a column
/// twice (l_i ≤ K). Both column bounds then follow from K ≤ Σl ≤ (u−1)K.
pub fn well_distributing(l: &[usize], k: usize) -> Result<WellDistributingMatrix> {
    let u = l.len();
    let bound = naive_k(l)?;
    let total: usize = l.iter().sum();
    if k < bound {
        return Err(Error::Invalid(format!("K = {k} is below the bound max(max l_i, ceil(sum l_i/(u-1))) = {bound}")));
    }
    if k > total {
        return Err(Error::Invalid(format!("K = {k} exceeds sum l_i = {total}; some column would be empty")));
    }
    let mut grid = vec![vec![0u8; k]; u];
    let mut pos = 0;
    for (i, &li) in l.iter().enumerate() {
        for _ in 0..li {
            grid[i][pos % k] = 1;
            pos += 1;
        }
    }
    let w = WellDistributingMatrix { u, k, grid, row_targets: l.to_vec() };
    debug_assert!(w.is_valid());
    Ok(w)
}

/// Smallest K admitting a well distributing matrix, by exhaustive search.
pub fn min_feasible_k_brute(l: &[usize]) -> Option<usize> {
    let u = l.len();
    let total: usize = l.iter().sum();
    (1..=total).find(|&k| {
        // columns are unordered, so enumerate multisets of column patterns
        let patterns: Vec<u32> = (1..(1u32 << u) - 1).collect();
        search(&patterns, 0, k, &mut vec![0; u], l)
    })
}

fn search(patterns: &[u32], start: usize, left: usize, sums: &mut Vec<usize>, l: &[usize]) -> bool {
    if sums.iter().zip(l).any(|(s, t)| s > t) {
        return false;
    }
    if left == 0 {
        return sums == l;
    }
    for (pi, &p) in patterns.iter().enumerate().skip(start) {
        for (i, s) in sums.iter_mut().enumerate() {
            *s += ((p >> i) & 1) as usize;
        }
        let ok = search(patterns, pi, left - 1, sums, l);
        for (i, s) in sums.iter_mut().enumerate() {
            *s -= ((p >> i) & 1) as usize;
        }
        if ok {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_examples() {
        let w = well_distributing(&[2, 1, 1], 2).unwrap();
        assert_eq!(w.grid, vec![vec![1, 1], vec![1, 0], vec![0, 1]]);
        assert_eq!(well_distributing(&[1, 1], 2).unwrap().grid, vec![vec![1, 0], vec![0, 1]]);
        assert_eq!(well_distributing(&[3, 0], 3).unwrap().grid, vec![vec![1, 1, 1], vec![0, 0, 0]]);
        assert!(well_distributing(&[2, 1, 1], 1).is_err());
        assert!(well_distributing(&[2], 2).is_err());
    }

    #[test]
    fn bound_is_minimal_for_small_cases() {
        for u in 2..=3 {
            let mut l = vec![0; u];
            loop {
                if l.iter().sum::<usize>() > 0 {
                    let k = naive_k(&l).unwrap();
                    assert_eq!(min_feasible_k_brute(&l), Some(k), "{l:?}");
                    assert!(well_distributing(&l, k).unwrap().is_valid());
                }
                let mut i = 0;
                while i < u && l[i] == 3 {
                    l[i] = 0;
                    i += 1;
                }
                if i == u {
                    break;
                }
                l[i] += 1;
            }
        }
    }
}
