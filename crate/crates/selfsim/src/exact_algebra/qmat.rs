//! Dense rational linear algebra on `Vec<Vec<Q>>`.

use num_traits::{One, Zero};

use super::poly::Q;

pub type QMat = Vec<Vec<Q>>;

pub fn identity(n: usize) -> QMat {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect())
        .collect()
}

pub fn det(m: &QMat) -> Q {
    let n = m.len();
    let mut a = m.clone();
    let mut d = Q::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Q::zero();
        };
        if p != col {
            a.swap(p, col);
            d = -d;
        }
        let pv = a[col][col].clone();
        d *= &pv;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &pv;
            for c in col..n {
                let t = &f * &a[col][c];
                a[r][c] -= t;
            }
        }
    }
    d
}

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref(a: &mut QMat) -> Vec<usize> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(p, r);
        let inv = Q::one() / &a[r][c];
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..cols {
                    let t = &f * &a[r][j];
                    a[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of {x : a·x = 0} given the number of columns.
pub fn kernel(a: &QMat, cols: usize) -> Vec<Vec<Q>> {
    let mut m = a.clone();
    let piv = rref(&mut m);
    let free: Vec<usize> = (0..cols).filter(|c| !piv.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); cols];
            v[f] = Q::one();
            for (i, &p) in piv.iter().enumerate() {
                v[p] = -m[i][f].clone();
            }
            v
        })
        .collect()
}

/// Solve a·x = b for square non-singular a.
pub fn solve(a: &QMat, b: &[Q]) -> Option<Vec<Q>> {
    let n = a.len();
    let mut m: QMat = a.iter().zip(b).map(|(r, bi)| {
        let mut r = r.clone();
        r.push(bi.clone());
        r
    }).collect();
    let piv = rref(&mut m);
    if piv.len() < n || piv.iter().any(|&p| p >= n) {
        return None;
    }
    Some(m.iter().map(|r| r[n].clone()).collect())
}

pub fn matmul(a: &QMat, b: &QMat) -> QMat {
    let k = b.len();
    let m = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..m)
                .map(|j| (0..k).fold(Q::zero(), |acc, l| acc + &row[l] * &b[l][j]))
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::poly::q;

    fn m(v: &[&[i64]]) -> QMat {
        v.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
    }

    #[test]
    fn det_kernel_solve() {
        let a = m(&[&[2, 1], &[4, 3]]);
        assert_eq!(det(&a), q(2));
        let s = m(&[&[1, 2, 3], &[2, 4, 6]]);
        let k = kernel(&s, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(s.iter().all(|r| r.iter().zip(v).fold(Q::zero(), |a, (x, y)| a + x * y).is_zero()));
        }
        assert_eq!(solve(&a, &[q(3), q(7)]).unwrap(), vec![q(1), q(1)]);
    }
}
