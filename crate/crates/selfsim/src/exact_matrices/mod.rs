//! Exact matrices over a number-field tower, optionally with formal
//! indeterminates; Kronecker products, exact inversion, and the
//! rational-vectors-in-span test.

mod build;
mod entry;
mod linalg;
mod numeric;

use std::fmt;
use std::sync::Arc;

pub use build::{class_block, companion, re_im, real_basis, root_classes, vandermonde, RealBasis, RootClass};
pub use entry::{Mono, Tp};
pub use linalg::{left_kernel, rational_left_annihilator, rational_solutions, rational_vectors_in_span};
pub use numeric::NumericMatrix;

use crate::exact_algebra::{Fe, Tower, TowerMap, Q};

#[derive(Clone, PartialEq)]
pub struct ExactMatrix {
    pub rows: usize,
    pub cols: usize,
    pub t: Arc<Tower>,
    data: Vec<Tp>,
}

impl ExactMatrix {
    pub fn zeros(t: &Arc<Tower>, rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, t: t.clone(), data: vec![Tp::zero(t); rows * cols] }
    }

    pub fn identity(t: &Arc<Tower>, n: usize) -> Self {
        let mut m = Self::zeros(t, n, n);
        for i in 0..n {
            m.set(i, i, Tp::from_i64(t, 1));
        }
        m
    }

    pub fn from_fn(t: &Arc<Tower>, rows: usize, cols: usize, f: impl Fn(usize, usize) -> Tp) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        ExactMatrix { rows, cols, t: t.clone(), data }
    }

    pub fn from_fe(t: &Arc<Tower>, grid: &[Vec<Fe>]) -> Self {
        let rows = grid.len();
        let cols = grid.first().map_or(0, |r| r.len());
        Self::from_fn(t, rows, cols, |i, j| Tp::from_fe(grid[i][j].clone()))
    }

    pub fn from_i64(t: &Arc<Tower>, grid: &[Vec<i64>]) -> Self {
        let rows = grid.len();
        let cols = grid.first().map_or(0, |r| r.len());
        Self::from_fn(t, rows, cols, |i, j| Tp::from_i64(t, grid[i][j]))
    }

    pub fn from_q(t: &Arc<Tower>, grid: &[Vec<Q>]) -> Self {
        let rows = grid.len();
        let cols = grid.first().map_or(0, |r| r.len());
        Self::from_fn(t, rows, cols, |i, j| Tp::from_q(t, grid[i][j].clone()))
    }

    pub fn get(&self, i: usize, j: usize) -> &Tp {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Tp) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[Tp] {
        &self.data
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn mul(&self, o: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, o.rows, "dimension mismatch in product");
        ExactMatrix::from_fn(&self.t, self.rows, o.cols, |i, j| {
            let mut acc = Tp::zero(&self.t);
            for k in 0..self.cols {
                let a = self.get(i, k);
                let b = o.get(k, j);
                if !a.is_zero() && !b.is_zero() {
                    acc = acc.add(&a.mul(b));
                }
            }
            acc
        })
    }

    pub fn add(&self, o: &ExactMatrix) -> ExactMatrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        ExactMatrix::from_fn(&self.t, self.rows, self.cols, |i, j| self.get(i, j).add(o.get(i, j)))
    }

    pub fn sub(&self, o: &ExactMatrix) -> ExactMatrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        ExactMatrix::from_fn(&self.t, self.rows, self.cols, |i, j| self.get(i, j).sub(o.get(i, j)))
    }

    pub fn scale(&self, k: &Fe) -> ExactMatrix {
        ExactMatrix::from_fn(&self.t, self.rows, self.cols, |i, j| self.get(i, j).scale(k))
    }

    pub fn transpose(&self) -> ExactMatrix {
        ExactMatrix::from_fn(&self.t, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// First (row, col) where the two matrices differ.
    pub fn first_difference(&self, o: &ExactMatrix) -> Option<(usize, usize)> {
        (0..self.rows)
            .flat_map(|i| (0..self.cols).map(move |j| (i, j)))
            .find(|&(i, j)| self.get(i, j) != o.get(i, j))
    }

    /// A ⊗ B
    pub fn kron(&self, o: &ExactMatrix) -> ExactMatrix {
        ExactMatrix::from_fn(&self.t, self.rows * o.rows, self.cols * o.cols, |i, j| {
            let a = self.get(i / o.rows, j / o.cols);
            if a.is_zero() {
                Tp::zero(&self.t)
            } else {
                a.mul(o.get(i % o.rows, j % o.cols))
            }
        })
    }

    pub fn block_diag(t: &Arc<Tower>, blocks: &[&ExactMatrix]) -> ExactMatrix {
        let rows: usize = blocks.iter().map(|b| b.rows).sum();
        let cols: usize = blocks.iter().map(|b| b.cols).sum();
        let mut m = ExactMatrix::zeros(t, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    m.set(r0 + i, c0 + j, b.get(i, j).clone());
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    pub fn select_cols(&self, idx: &[usize]) -> ExactMatrix {
        ExactMatrix::from_fn(&self.t, self.rows, idx.len(), |i, j| self.get(i, idx[j]).clone())
    }

    pub fn select_rows(&self, idx: &[usize]) -> ExactMatrix {
        ExactMatrix::from_fn(&self.t, idx.len(), self.cols, |i, j| self.get(idx[i], j).clone())
    }

    /// M·P where column j of the result is column perm[j] of M.
    pub fn permute_cols(&self, perm: &[usize]) -> ExactMatrix {
        self.select_cols(perm)
    }

    /// Pᵀ·M for the same convention: row j of the result is row perm[j] of M.
    pub fn permute_rows(&self, perm: &[usize]) -> ExactMatrix {
        self.select_rows(perm)
    }

    pub fn map_tower(&self, map: &TowerMap) -> ExactMatrix {
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            t: map.dst.clone(),
            data: self.data.iter().map(|x| x.map_tower(map)).collect(),
        }
    }

    pub fn shift_indets(&self, offset: usize) -> ExactMatrix {
        ExactMatrix { data: self.data.iter().map(|x| x.shift_indets(offset)).collect(), ..self.clone() }
    }

    pub fn n_indets(&self) -> usize {
        self.data.iter().map(|x| x.n_indets()).max().unwrap_or(0)
    }

    /// Entries as rationals, if all of them are.
    pub fn to_rational(&self) -> Option<Vec<Vec<Q>>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).as_rational()).collect())
            .collect()
    }

    /// Entries as tower constants, if none involves an indeterminate.
    pub fn to_const(&self) -> Option<Vec<Vec<Fe>>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).as_const()).collect())
            .collect()
    }

    /// p(M) for a rational polynomial p (square M).
    pub fn eval_poly(&self, p: &crate::exact_algebra::QPoly) -> ExactMatrix {
        let n = self.rows;
        let mut acc = ExactMatrix::zeros(&self.t, n, n);
        for c in p.0.iter().rev() {
            acc = acc.mul(self).add(&ExactMatrix::identity(&self.t, n).scale(&Fe::from_q(&self.t, c.clone())));
        }
        acc
    }

    pub fn invert(&self) -> crate::error::Result<ExactMatrix> {
        linalg::invert(self)
    }

    /// Numeric realization with indeterminates set to `vals`.
    pub fn numeric(&self, vals: &[Q]) -> NumericMatrix {
        NumericMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j).eval(vals))
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  {}", row.join(", "))?;
        }
        write!(f, "]")
    }
}
