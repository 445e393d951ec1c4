use std::sync::Arc;

use super::{ExactMatrix, Tp};
use crate::error::{Error, Result};
use crate::exact_algebra::{AlgebraicInteger, Fe, IntPoly, SplittingField, Tower, Q};

/// C_f: superdiagonal ones, last row (a₀,…,a_{d−1}) for f = x^d − Σ a_i x^i.
pub fn companion(t: &Arc<Tower>, f: &IntPoly) -> ExactMatrix {
    let d = f.degree();
    let c = f.coeffs();
    ExactMatrix::from_fn(t, d, d, |i, j| {
        if i + 1 == j {
            Tp::from_i64(t, 1)
        } else if i == d - 1 {
            Tp::from_q(t, -Q::from_integer(c[j].clone()))
        } else {
            Tp::zero(t)
        }
    })
}

/// Z with column j = (1, β_j, …, β_j^{d−1})ᵀ, roots in canonical order.
pub fn vandermonde(f: &IntPoly, sf: &SplittingField) -> Result<ExactMatrix> {
    if !crate::exact_algebra::is_irreducible(f) {
        return Err(Error::Reducible);
    }
    let k = sf.poly_index(f).ok_or_else(|| Error::Invalid(format!("{f} not in splitting field")))?;
    let roots = &sf.values[k];
    let d = f.degree();
    let t = &sf.tower;
    Ok(ExactMatrix::from_fn(t, d, d, |i, j| Tp::from_fe(roots[j].pow(i))))
}

/// A real root, or a conjugate pair listed as (Im < 0, Im > 0).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootClass {
    pub indices: Vec<usize>,
}

impl RootClass {
    pub fn is_real(&self) -> bool {
        self.indices.len() == 1
    }

    pub fn size(&self) -> usize {
        self.indices.len()
    }

    /// Canonical index of the class representative (lowest index).
    pub fn rep(&self) -> usize {
        self.indices[0]
    }
}

/// Root classes in canonical order of their first member.
pub fn root_classes(roots: &[AlgebraicInteger]) -> Vec<RootClass> {
    let mut out = vec![];
    for r in roots {
        match r.conj_index {
            None => out.push(RootClass { indices: vec![r.root_index] }),
            Some(j) if j > r.root_index => out.push(RootClass { indices: vec![r.root_index, j] }),
            _ => {}
        }
    }
    out
}

pub struct RealBasis {
    /// Y_f: real columns, one or two per class
    pub y: ExactMatrix,
    /// D_f: real quasidiagonal form, C_f·Y_f = Y_f·D_f
    pub d: ExactMatrix,
    pub classes: Vec<RootClass>,
    /// first column of each class in Y_f
    pub offsets: Vec<usize>,
}

/// The 1×1 block (β) or 2×2 block [[a, b], [−b, a]] for β = a + ib, b > 0.
pub fn class_block(class: &RootClass, values: &[Fe], i: Option<&Fe>) -> Vec<Vec<Fe>> {
    if class.is_real() {
        return vec![vec![values[class.rep()].clone()]];
    }
    let beta = &values[class.indices[1]];
    let (a, b) = re_im(beta, &values[class.indices[0]], i.expect("i is needed for complex roots"));
    vec![vec![a.clone(), b.clone()], vec![-&b, a]]
}

/// (Re z, Im z) from z and z̄ in a field containing i.
pub fn re_im(z: &Fe, zbar: &Fe, i: &Fe) -> (Fe, Fe) {
    let half = Q::new(1.into(), 2.into());
    let re = (z + zbar).scale(&half);
    // (z − z̄)/(2i) = −i(z − z̄)/2
    let im = (&(z - zbar) * i).scale(&-half);
    (re, im)
}

pub fn real_basis(f: &IntPoly, sf: &SplittingField) -> Result<RealBasis> {
    let k = sf.poly_index(f).ok_or_else(|| Error::Invalid(format!("{f} not in splitting field")))?;
    let values = &sf.values[k];
    let classes = root_classes(&sf.roots[k]);
    let t = &sf.tower;
    let d = f.degree();
    let mut cols: Vec<Vec<Fe>> = vec![];
    let mut dblocks = vec![];
    let mut offsets = vec![];
    for c in &classes {
        offsets.push(cols.len());
        if c.is_real() {
            let b = &values[c.rep()];
            cols.push((0..d).map(|p| b.pow(p)).collect());
        } else {
            let b = &values[c.indices[1]];
            let bb = &values[c.indices[0]];
            let i = sf.i.as_ref().ok_or_else(|| Error::Invalid("splitting field lacks i".into()))?;
            let (re, im): (Vec<Fe>, Vec<Fe>) = (0..d).map(|p| re_im(&b.pow(p), &bb.pow(p), i)).unzip();
            cols.push(re);
            cols.push(im);
        }
        dblocks.push(ExactMatrix::from_fe(t, &class_block(c, values, sf.i.as_ref())));
    }
    let y = ExactMatrix::from_fn(t, d, d, |r, c| Tp::from_fe(cols[c][r].clone()));
    let refs: Vec<&ExactMatrix> = dblocks.iter().collect();
    let dm = ExactMatrix::block_diag(t, &refs);
    Ok(RealBasis { y, d: dm, classes, offsets })
}
