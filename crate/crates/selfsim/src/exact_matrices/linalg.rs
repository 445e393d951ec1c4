use std::collections::BTreeMap;

use num_traits::Zero;

use super::{ExactMatrix, Mono, Tp};
use crate::error::{Error, Result};
use crate::exact_algebra::qmat;
use crate::exact_algebra::Q;

/// Gauss–Jordan with full pivoting on unit (indeterminate-free) pivots.
///
/// When the indeterminates are present the inverse exists in the polynomial
/// ring only if the determinant is a nonzero constant; this routine finds it
/// whenever a unit pivot is available at every step.
pub(super) fn invert(m: &ExactMatrix) -> Result<ExactMatrix> {
    assert!(m.is_square(), "only square matrices can be inverted");
    let n = m.rows;
    let t = &m.t;
    let mut a: Vec<Vec<Tp>> = (0..n).map(|i| (0..n).map(|j| m.get(i, j).clone()).collect()).collect();
    let mut e: Vec<Vec<Tp>> = (0..n)
        .map(|i| (0..n).map(|j| Tp::from_i64(t, (i == j) as i64)).collect())
        .collect();
    let mut row_used = vec![false; n];
    let mut col_used = vec![false; n];
    let mut pivots = vec![];
    for _ in 0..n {
        let mut unit = None;
        let mut any = false;
        'search: for c in (0..n).filter(|&c| !col_used[c]) {
            for r in (0..n).filter(|&r| !row_used[r]) {
                if a[r][c].is_unit() {
                    unit = Some((r, c));
                    break 'search;
                }
                any |= !a[r][c].is_zero();
            }
        }
        let Some((r, c)) = unit else {
            if any {
                return Err(Error::NonPolynomialInverse);
            }
            return Err(Error::Singular(kernel_description(&a, &pivots, &col_used)));
        };
        let inv = a[r][c].as_const().unwrap().inv().unwrap();
        for x in a[r].iter_mut().chain(e[r].iter_mut()) {
            *x = x.scale(&inv);
        }
        for i in 0..n {
            if i == r || a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone();
            for j in 0..n {
                if !a[r][j].is_zero() {
                    a[i][j] = a[i][j].sub(&f.mul(&a[r][j]));
                }
                if !e[r][j].is_zero() {
                    e[i][j] = e[i][j].sub(&f.mul(&e[r][j]));
                }
            }
        }
        row_used[r] = true;
        col_used[c] = true;
        pivots.push((r, c));
    }
    // E·M = Π with Π[r][c] = 1 at pivots, so M⁻¹ = Πᵀ·E
    let mut out = ExactMatrix::zeros(t, n, n);
    for &(r, c) in &pivots {
        for j in 0..n {
            out.set(c, j, e[r][j].clone());
        }
    }
    Ok(out)
}

fn kernel_description(a: &[Vec<Tp>], pivots: &[(usize, usize)], col_used: &[bool]) -> String {
    let n = col_used.len();
    let free = (0..n).find(|&c| !col_used[c]).unwrap();
    let mut x: Vec<String> = vec!["0".into(); n];
    x[free] = "1".into();
    for &(r, c) in pivots {
        x[c] = a[r][free].neg().to_string();
    }
    format!("({})", x.join(", "))
}

/// Basis of { n : nᵀ·cols = 0 } over the fraction field of the entry ring,
/// scaled to have polynomial entries (fraction-free elimination).
pub fn left_kernel(cols: &ExactMatrix) -> Vec<Vec<Tp>> {
    let t = &cols.t;
    // rows of colsᵀ
    let k = cols.cols;
    let s = cols.rows;
    let mut a: Vec<Vec<Tp>> = (0..k).map(|i| (0..s).map(|j| cols.get(j, i).clone()).collect()).collect();
    let mut pivots: Vec<(usize, usize)> = vec![]; // (row, col)
    let mut used = vec![false; k];
    for c in 0..s {
        let cand: Vec<usize> = (0..k).filter(|&r| !used[r] && !a[r][c].is_zero()).collect();
        let Some(&r) = cand.iter().find(|&&r| a[r][c].is_unit()).or(cand.first()) else { continue };
        if a[r][c].is_unit() {
            let inv = a[r][c].as_const().unwrap().inv().unwrap();
            for x in a[r].iter_mut() {
                *x = x.scale(&inv);
            }
        }
        let p = a[r][c].clone();
        let p_is_one = p.as_const().is_some_and(|x| x.is_one());
        for i in 0..k {
            if i == r || a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone();
            for j in 0..s {
                let lhs = if p_is_one { a[i][j].clone() } else { p.mul(&a[i][j]) };
                a[i][j] = lhs.sub(&f.mul(&a[r][j]));
            }
        }
        used[r] = true;
        pivots.push((r, c));
    }
    let pivot_cols: Vec<usize> = pivots.iter().map(|p| p.1).collect();
    let pis: Vec<Tp> = pivots.iter().map(|&(r, c)| a[r][c].clone()).collect();
    let mut out = vec![];
    for j in (0..s).filter(|j| !pivot_cols.contains(j)) {
        let mut x = vec![Tp::zero(t); s];
        x[j] = pis.iter().fold(Tp::from_i64(t, 1), |acc, p| acc.mul(p));
        for (i, &(r, c)) in pivots.iter().enumerate() {
            let others = pis
                .iter()
                .enumerate()
                .filter(|&(l, _)| l != i)
                .fold(Tp::from_i64(t, 1), |acc, (_, p)| acc.mul(p));
            x[c] = a[r][j].mul(&others).neg();
        }
        out.push(x);
    }
    out
}

/// Rational kernel of the system "Σ_j v_j·x_j = 0 for every v in `eqs`",
/// expanded into one rational equation per (t-monomial, tower basis element).
pub fn rational_solutions(eqs: &[Vec<Tp>], s: usize) -> Vec<Vec<Q>> {
    let mut rows: BTreeMap<(usize, Mono, usize), Vec<Q>> = BTreeMap::new();
    for (e, v) in eqs.iter().enumerate() {
        for (j, x) in v.iter().enumerate() {
            for ((m, b), c) in x.coordinates() {
                rows.entry((e, m, b)).or_insert_with(|| vec![Q::zero(); s])[j] += c;
            }
        }
    }
    let mat: Vec<Vec<Q>> = rows.into_values().collect();
    let mut basis = qmat::kernel(&mat, s);
    for v in basis.iter_mut() {
        normalize_integer(v);
    }
    basis
}

/// Scale a rational vector to a primitive integer vector.
fn normalize_integer(v: &mut [Q]) {
    use num_integer::Integer;
    let den = v.iter().fold(num_bigint::BigInt::from(1), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<num_bigint::BigInt> = v.iter().map(|x| (x * Q::from_integer(den.clone())).to_integer()).collect();
    let g = ints.iter().fold(num_bigint::BigInt::from(0), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return;
    }
    for (x, i) in v.iter_mut().zip(ints) {
        *x = Q::from_integer(i / &g);
    }
}

/// Basis of span(cols) ∩ ℚ^s. Empty means the intersection is {0}.
pub fn rational_vectors_in_span(cols: &ExactMatrix) -> Vec<Vec<Q>> {
    let s = cols.rows;
    if cols.cols == 0 {
        return vec![];
    }
    let kernel = left_kernel(cols);
    for v in &kernel {
        for c in 0..cols.cols {
            let dot = (0..s).fold(Tp::zero(&cols.t), |acc, j| acc.add(&v[j].mul(cols.get(j, c))));
            debug_assert!(dot.is_zero(), "left kernel vector fails to annihilate");
        }
    }
    if kernel.is_empty() {
        // columns span everything
        return (0..s)
            .map(|i| (0..s).map(|j| Q::from_integer(((i == j) as i64).into())).collect())
            .collect();
    }
    rational_solutions(&kernel, s)
}

/// Basis of { q ∈ ℚ^s : qᵀ·W = 0 }.
pub fn rational_left_annihilator(w: &ExactMatrix) -> Vec<Vec<Q>> {
    let eqs: Vec<Vec<Tp>> = (0..w.cols).map(|c| (0..w.rows).map(|j| w.get(j, c).clone()).collect()).collect();
    if eqs.is_empty() {
        return (0..w.rows)
            .map(|i| (0..w.rows).map(|j| Q::from_integer(((i == j) as i64).into())).collect())
            .collect();
    }
    rational_solutions(&eqs, w.rows)
}
