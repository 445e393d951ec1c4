//! Conjugation isomorphisms ℚ(β) → ℚ(β′) between roots of one minimal polynomial.

use std::sync::Arc;

use super::poly::IntPoly;
use super::roots::AlgebraicInteger;
use super::splitting::{tpoly_from_int, SplittingField, TowerMap};
use super::tower::{Fe, Tower};
use crate::error::{Error, Result};

/// ℚ(β) as a one-level tower.
pub fn simple_field(beta: &AlgebraicInteger, bits: u64) -> Arc<Tower> {
    let q = Tower::rational(bits);
    let mp = tpoly_from_int(&q, &beta.min_poly);
    q.adjoin(&mp, beta.min_poly.clone(), beta.root_index, beta.approx.clone())
}

/// ψ: ℚ(src) → splitting field of the common minimal polynomial, src ↦ dst.
#[derive(Clone, Debug)]
pub struct ConjugationMap {
    pub source: Arc<Tower>,
    pub field: SplittingField,
    map: TowerMap,
    identity: TowerMap,
}

pub fn conjugation_map(src: &AlgebraicInteger, dst: &AlgebraicInteger, bits: u64) -> Result<ConjugationMap> {
    conjugation_map_in(src, dst, &SplittingField::new(&[src.min_poly.clone()], bits)?)
}

/// Same as [`conjugation_map`] with a caller-provided splitting field.
pub fn conjugation_map_in(src: &AlgebraicInteger, dst: &AlgebraicInteger, field: &SplittingField) -> Result<ConjugationMap> {
    if src.min_poly != dst.min_poly {
        return Err(Error::Invalid(format!(
            "conjugation map needs a shared minimal polynomial ({} vs {})",
            src.min_poly, dst.min_poly
        )));
    }
    let f: &IntPoly = &src.min_poly;
    let source = simple_field(src, field.tower.bits());
    let img = |a: &AlgebraicInteger| {
        field
            .root(f, a.root_index)
            .cloned()
            .ok_or_else(|| Error::Invalid(format!("splitting field lacks roots of {f}")))
    };
    let map = TowerMap::new(&source, &field.tower, vec![img(dst)?])?;
    let identity = TowerMap::new(&source, &field.tower, vec![img(src)?])?;
    Ok(ConjugationMap { source, field: field.clone(), map, identity })
}

impl ConjugationMap {
    /// ψ(a) for a ∈ ℚ(src).
    pub fn apply(&self, a: &Fe) -> Fe {
        self.map.apply(a)
    }

    /// a itself, viewed inside the splitting field.
    pub fn embed(&self, a: &Fe) -> Fe {
        self.identity.apply(a)
    }

    /// Element of ℚ(src) from polynomial coefficients in src (lowest first).
    pub fn element(&self, coeffs: &[super::poly::Q]) -> Fe {
        let mut c = coeffs.to_vec();
        c.resize(self.source.dim(), num_traits::Zero::zero());
        Fe { t: self.source.clone(), c }
    }

    /// Pull an element of the splitting field back to ℚ(src), when the
    /// splitting tower's first level is src and the element lies in it.
    pub fn pull_back(&self, x: &Fe) -> Option<Fe> {
        let lv = x.t.levels().first()?;
        let s = self.source.levels().first()?;
        if lv.source != s.source || lv.root_index != s.root_index {
            return None;
        }
        let d = self.source.dim();
        x.c[d..].iter().all(num_traits::Zero::is_zero).then(|| self.element(&x.c[..d]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::poly::qf;
    use crate::exact_algebra::roots::isolate_roots;

    #[test]
    fn golden_conjugation() {
        let f = IntPoly::from_i64(&[-1, -1, 1]);
        let r = isolate_roots(&f, 128).unwrap();
        let psi = conjugation_map(&r[1], &r[0], 128).unwrap();
        let one_plus_tau = psi.element(&[qf(1, 1), qf(1, 1)]);
        let expect = &Fe::one(&psi.field.tower) + psi.field.root(&f, 0).unwrap();
        assert_eq!(psi.apply(&one_plus_tau), expect);
        let tau = psi.element(&[qf(0, 1), qf(1, 1)]);
        let taup = psi.field.root(&f, 0).unwrap();
        assert_eq!(psi.apply(&(&tau * &tau)), taup * taup);
        let half = psi.element(&[qf(3, 2)]);
        assert_eq!(psi.apply(&half), Fe::from_q(&psi.field.tower, qf(3, 2)));
    }

    #[test]
    fn mismatched_polys_rejected() {
        let a = isolate_roots(&IntPoly::from_i64(&[-1, -1, 1]), 64).unwrap();
        let b = isolate_roots(&IntPoly::from_i64(&[1, 0, 1]), 64).unwrap();
        assert!(conjugation_map(&a[0], &b[0], 64).is_err());
    }
}
