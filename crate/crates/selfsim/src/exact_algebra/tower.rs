//! Number-field towers ℚ ⊂ ℚ(α₁) ⊂ ℚ(α₁,α₂) ⊂ … with a fixed complex embedding.
//!
//! Level k adjoins a root α_k of a monic polynomial irreducible over the
//! previous levels. An element of the full tower is a flat vector of D
//! rationals in the monomial basis ∏ α_k^{e_k}, with index
//! Σ e_k·dims[k]; equivalently, the top level is a polynomial in α_top whose
//! coefficients are chunks of length dims[top].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use super::ball::CBall;
use super::poly::{IntPoly, Q};
use super::qmat::{self, QMat};

#[derive(Clone, Debug, PartialEq)]
pub struct Level {
    pub degree: usize,
    /// coefficients c_0..c_{degree−1} of the monic minimal polynomial
    /// x^degree + Σ c_i x^i over the lower levels
    pub minpoly: Vec<Vec<Q>>,
    /// integer polynomial the generator is a root of
    pub source: IntPoly,
    /// canonical root index of the generator among the roots of `source`
    pub root_index: usize,
    /// certified embedding of the generator
    pub embedding: CBall,
}

#[derive(Debug)]
pub struct Tower {
    levels: Vec<Level>,
    dims: Vec<usize>,
    basis_vals: Vec<CBall>,
    bits: u64,
}

impl PartialEq for Tower {
    fn eq(&self, o: &Self) -> bool {
        self.levels.len() == o.levels.len()
            && self.levels.iter().zip(&o.levels).all(|(a, b)| {
                a.minpoly == b.minpoly && a.source == b.source && a.root_index == b.root_index
            })
    }
}

impl Tower {
    pub fn rational(bits: u64) -> Arc<Tower> {
        Arc::new(Tower { levels: vec![], dims: vec![1], basis_vals: vec![CBall::from_int(1, bits)], bits })
    }

    pub fn dim(&self) -> usize {
        *self.dims.last().unwrap()
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    /// Whether `self` consists of the first levels of `o`.
    pub fn is_prefix_of(&self, o: &Tower) -> bool {
        self.levels.len() <= o.levels.len()
            && self.levels.iter().zip(&o.levels).all(|(a, b)| {
                a.minpoly == b.minpoly && a.source == b.source && a.root_index == b.root_index
            })
    }

    /// Adjoin a root of `minpoly` (monic, coefficients in this tower, leading 1 included).
    pub fn adjoin(self: &Arc<Self>, minpoly: &[Fe], source: IntPoly, root_index: usize, embedding: CBall) -> Arc<Tower> {
        let d = minpoly.len() - 1;
        assert!(minpoly[d].is_one(), "adjoined polynomial must be monic");
        let m = self.dim();
        let mut levels = self.levels.clone();
        levels.push(Level {
            degree: d,
            minpoly: minpoly[..d].iter().map(|c| c.c.clone()).collect(),
            source,
            root_index,
            embedding: embedding.clone(),
        });
        let mut dims = self.dims.clone();
        dims.push(m * d);
        let mut basis_vals = self.basis_vals.clone();
        let mut pw = CBall::from_int(1, self.bits);
        for _ in 1..d {
            pw = pw.mul(&embedding);
            for j in 0..m {
                basis_vals.push(pw.mul(&self.basis_vals[j]));
            }
        }
        Arc::new(Tower { levels, dims, basis_vals, bits: self.bits })
    }

    /// Multiply two elements living in the first `k` levels.
    pub(crate) fn mul_at(&self, k: usize, a: &[Q], b: &[Q]) -> Vec<Q> {
        if k == 0 {
            return vec![&a[0] * &b[0]];
        }
        let lv = &self.levels[k - 1];
        let d = lv.degree;
        let m = self.dims[k - 1];
        let chunk = |v: &[Q], i: usize| -> Option<Vec<Q>> {
            let c = &v[i * m..(i + 1) * m];
            (!c.iter().all(|x| x.is_zero())).then(|| c.to_vec())
        };
        let ac: Vec<Option<Vec<Q>>> = (0..d).map(|i| chunk(a, i)).collect();
        let bc: Vec<Option<Vec<Q>>> = (0..d).map(|i| chunk(b, i)).collect();
        let mut c: Vec<Vec<Q>> = vec![vec![Q::zero(); m]; 2 * d - 1];
        for (i, ai) in ac.iter().enumerate() {
            let Some(ai) = ai else { continue };
            for (j, bj) in bc.iter().enumerate() {
                let Some(bj) = bj else { continue };
                let p = self.mul_at(k - 1, ai, bj);
                for (x, y) in c[i + j].iter_mut().zip(p) {
                    *x += y;
                }
            }
        }
        // α^d = −Σ minpoly_i α^i
        for top in (d..2 * d - 1).rev() {
            let t = std::mem::replace(&mut c[top], vec![Q::zero(); m]);
            if t.iter().all(|x| x.is_zero()) {
                continue;
            }
            for (i, mi) in lv.minpoly.iter().enumerate() {
                let p = self.mul_at(k - 1, &t, mi);
                for (x, y) in c[top - d + i].iter_mut().zip(p) {
                    *x -= y;
                }
            }
        }
        c.truncate(d);
        c.into_iter().flatten().collect()
    }

    fn mul_full(&self, a: &[Q], b: &[Q]) -> Vec<Q> {
        self.mul_at(self.levels.len(), a, b)
    }

    /// The ℚ-matrix of multiplication by `a` (column j = a·e_j).
    pub fn mult_matrix(&self, a: &[Q]) -> QMat {
        let n = self.dim();
        let mut m = vec![vec![Q::zero(); n]; n];
        for j in 0..n {
            let mut e = vec![Q::zero(); n];
            e[j] = Q::one();
            let col = self.mul_full(a, &e);
            for i in 0..n {
                m[i][j] = col[i].clone();
            }
        }
        m
    }

    pub fn basis_value(&self, idx: usize) -> &CBall {
        &self.basis_vals[idx]
    }

    /// Human-readable name of basis monomial `idx`.
    pub fn basis_name(&self, idx: usize) -> String {
        let mut parts = vec![];
        let mut rest = idx;
        for k in (0..self.levels.len()).rev() {
            let e = rest / self.dims[k];
            rest %= self.dims[k];
            match e {
                0 => {}
                1 => parts.push(format!("a{}", k + 1)),
                _ => parts.push(format!("a{}^{}", k + 1, e)),
            }
        }
        parts.reverse();
        if parts.is_empty() { "1".into() } else { parts.join("*") }
    }
}

/// An element of a tower.
#[derive(Clone)]
pub struct Fe {
    pub t: Arc<Tower>,
    pub c: Vec<Q>,
}

impl Fe {
    pub fn zero(t: &Arc<Tower>) -> Fe {
        Fe { t: t.clone(), c: vec![Q::zero(); t.dim()] }
    }

    pub fn one(t: &Arc<Tower>) -> Fe {
        Fe::from_q(t, Q::one())
    }

    pub fn from_q(t: &Arc<Tower>, x: Q) -> Fe {
        let mut c = vec![Q::zero(); t.dim()];
        c[0] = x;
        Fe { t: t.clone(), c }
    }

    pub fn from_i64(t: &Arc<Tower>, x: i64) -> Fe {
        Fe::from_q(t, Q::from_integer(x.into()))
    }

    /// The generator of level `k` (0-based).
    pub fn generator(t: &Arc<Tower>, k: usize) -> Fe {
        let mut c = vec![Q::zero(); t.dim()];
        c[t.dims[k]] = Q::one();
        Fe { t: t.clone(), c }
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.c[0].is_one() && self.c[1..].iter().all(|x| x.is_zero())
    }

    pub fn as_rational(&self) -> Option<Q> {
        self.c[1..].iter().all(|x| x.is_zero()).then(|| self.c[0].clone())
    }

    /// Embed into a tower that extends this element's tower.
    pub fn lift(&self, t: &Arc<Tower>) -> Fe {
        assert!(self.t.is_prefix_of(t), "target tower does not extend the source tower");
        let mut c = self.c.clone();
        c.resize(t.dim(), Q::zero());
        Fe { t: t.clone(), c }
    }

    pub fn scale(&self, k: &Q) -> Fe {
        Fe { t: self.t.clone(), c: self.c.iter().map(|x| x * k).collect() }
    }

    pub fn inv(&self) -> Option<Fe> {
        if self.is_zero() {
            return None;
        }
        let m = self.t.mult_matrix(&self.c);
        let mut e = vec![Q::zero(); self.t.dim()];
        e[0] = Q::one();
        qmat::solve(&m, &e).map(|c| Fe { t: self.t.clone(), c })
    }

    pub fn pow(&self, e: usize) -> Fe {
        let mut r = Fe::one(&self.t);
        for _ in 0..e {
            r = &r * self;
        }
        r
    }

    /// Norm down to ℚ.
    pub fn norm(&self) -> Q {
        qmat::det(&self.t.mult_matrix(&self.c))
    }

    /// Certified numeric value under the tower's embedding.
    pub fn ball(&self) -> CBall {
        let bits = self.t.bits;
        let mut acc = CBall::from_int(0, bits);
        for (i, x) in self.c.iter().enumerate() {
            if !x.is_zero() {
                acc = acc.add(&self.t.basis_vals[i].scale(x));
            }
        }
        acc
    }

    pub fn to_f64(&self) -> (f64, f64) {
        let b = self.ball();
        (b.re_f64(), b.im_f64())
    }

    fn check(&self, o: &Fe) {
        debug_assert!(Arc::ptr_eq(&self.t, &o.t) || *self.t == *o.t, "elements of different towers");
    }
}

impl PartialEq for Fe {
    fn eq(&self, o: &Self) -> bool {
        self.c == o.c
    }
}

impl fmt::Debug for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .c
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, x)| if i == 0 { format!("{x}") } else { format!("({x})*{}", self.t.basis_name(i)) })
            .collect();
        if terms.is_empty() { write!(f, "0") } else { write!(f, "{}", terms.join(" + ")) }
    }
}

impl Add for &Fe {
    type Output = Fe;
    fn add(self, o: &Fe) -> Fe {
        self.check(o);
        Fe { t: self.t.clone(), c: self.c.iter().zip(&o.c).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &Fe {
    type Output = Fe;
    fn sub(self, o: &Fe) -> Fe {
        self.check(o);
        Fe { t: self.t.clone(), c: self.c.iter().zip(&o.c).map(|(a, b)| a - b).collect() }
    }
}

impl Mul for &Fe {
    type Output = Fe;
    fn mul(self, o: &Fe) -> Fe {
        self.check(o);
        Fe { t: self.t.clone(), c: self.t.mul_full(&self.c, &o.c) }
    }
}

impl Neg for &Fe {
    type Output = Fe;
    fn neg(self) -> Fe {
        Fe { t: self.t.clone(), c: self.c.iter().map(|a| -a).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::roots::isolate_roots;

    fn golden() -> Arc<Tower> {
        let t = Tower::rational(128);
        let f = IntPoly::from_i64(&[-1, -1, 1]);
        let r = isolate_roots(&f, 128).unwrap();
        let mp: Vec<Fe> = [-1, -1, 1].iter().map(|&x| Fe::from_i64(&t, x)).collect();
        t.adjoin(&mp, f, 1, r[1].approx.clone())
    }

    #[test]
    fn golden_arithmetic() {
        let t = golden();
        let tau = Fe::generator(&t, 0);
        let one = Fe::one(&t);
        // τ² = τ + 1
        assert_eq!(&tau * &tau, &tau + &one);
        let inv = tau.inv().unwrap();
        assert_eq!(&inv, &(&tau - &one));
        assert_eq!(tau.norm(), Q::from_integer((-1).into()));
        let (re, _) = tau.to_f64();
        assert!((re - 1.618033988749895).abs() < 1e-14);
    }
}
