//! Polynomials over towers, factorization over a tower (norm method), and
//! splitting-field construction.

use std::sync::Arc;

use num_traits::Zero;

use super::ball::CBall;
use super::factor::factor_q_poly;
use super::poly::{IntPoly, QPoly, Q};
use super::roots::{isolate_roots, AlgebraicInteger};
use super::tower::{Fe, Tower};
use crate::error::{Error, Result};

/// Polynomial over a tower, lowest degree first.
pub type TPoly = Vec<Fe>;

pub fn tpoly_from_int(t: &Arc<Tower>, f: &IntPoly) -> TPoly {
    f.coeffs().iter().map(|c| Fe::from_q(t, Q::from_integer(c.clone()))).collect()
}

pub fn tpoly_from_q(t: &Arc<Tower>, f: &QPoly) -> TPoly {
    f.0.iter().map(|c| Fe::from_q(t, c.clone())).collect()
}

fn trim(mut p: TPoly) -> TPoly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

pub fn tp_add(a: &[Fe], b: &[Fe], t: &Arc<Tower>) -> TPoly {
    let n = a.len().max(b.len());
    let z = Fe::zero(t);
    trim((0..n).map(|i| a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z)).collect())
}

pub fn tp_mul(a: &[Fe], b: &[Fe], t: &Arc<Tower>) -> TPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut r = vec![Fe::zero(t); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            r[i + j] = &r[i + j] + &(x * y);
        }
    }
    trim(r)
}

pub fn tp_eval(p: &[Fe], x: &Fe) -> Fe {
    let mut acc = Fe::zero(&x.t);
    for c in p.iter().rev() {
        acc = &(&acc * x) + c;
    }
    acc
}

pub fn tp_monic(p: &[Fe]) -> TPoly {
    let l = p.last().expect("nonzero polynomial").inv().expect("nonzero leading coefficient");
    p.iter().map(|c| c * &l).collect()
}

pub fn tp_divrem(a: &[Fe], d: &[Fe], t: &Arc<Tower>) -> (TPoly, TPoly) {
    let d = trim(d.to_vec());
    assert!(!d.is_empty());
    let mut r = trim(a.to_vec());
    if r.len() < d.len() {
        return (vec![], r);
    }
    let dd = d.len() - 1;
    let linv = d[dd].inv().unwrap();
    let mut q = vec![Fe::zero(t); r.len() - dd];
    for k in (0..q.len()).rev() {
        let c = &r[k + dd] * &linv;
        if !c.is_zero() {
            for (j, dj) in d.iter().enumerate() {
                r[k + j] = &r[k + j] - &(&c * dj);
            }
        }
        q[k] = c;
    }
    r.truncate(dd);
    (trim(q), trim(r))
}

pub fn tp_gcd(a: &[Fe], b: &[Fe], t: &Arc<Tower>) -> TPoly {
    let (mut x, mut y) = (trim(a.to_vec()), trim(b.to_vec()));
    while !y.is_empty() {
        let r = tp_divrem(&x, &y, t).1;
        x = y;
        y = r;
    }
    tp_monic(&x)
}

/// p(x + s)
pub fn tp_shift(p: &[Fe], s: &Fe, t: &Arc<Tower>) -> TPoly {
    let lin = vec![s.clone(), Fe::one(t)];
    let mut acc: TPoly = vec![];
    for c in p.iter().rev() {
        acc = tp_add(&tp_mul(&acc, &lin, t), std::slice::from_ref(c), t);
    }
    acc
}

pub fn tp_ball_eval(p: &[Fe], z: &CBall) -> CBall {
    let mut acc = CBall::from_int(0, z.bits);
    for c in p.iter().rev() {
        acc = acc.mul(z).add(&c.ball());
    }
    acc
}

/// Norm_{T/ℚ} of a polynomial over T, by evaluation and interpolation.
fn tp_norm(p: &[Fe], t: &Arc<Tower>) -> QPoly {
    let n = (p.len() - 1) * t.dim();
    let xs: Vec<Q> = (0..=n as i64).map(|i| Q::from_integer(i.into())).collect();
    let ys: Vec<Q> = xs.iter().map(|x| tp_eval(p, &Fe::from_q(t, x.clone())).norm()).collect();
    QPoly::interpolate(&xs, &ys)
}

/// Monic irreducible factors over T of a monic squarefree polynomial.
///
/// Shift g(x) ↦ h(x) = g(x − θ) until N(h) = Norm_{T/ℚ}(h) is squarefree; then
/// each irreducible factor N_i of N over ℚ yields the irreducible factor
/// gcd(h, N_i)(x + θ) of g. Squarefreeness of N forces each Norm of an
/// irreducible factor to be a single irreducible rational polynomial.
pub fn factor_over_tower(g: &[Fe], t: &Arc<Tower>) -> Result<Vec<TPoly>> {
    let g = tp_monic(g);
    if g.len() <= 2 {
        return Ok(vec![g]);
    }
    if t.dim() == 1 {
        let gq = QPoly::new(g.iter().map(|c| c.c[0].clone()).collect());
        return Ok(factor_q_poly(&gq).into_iter().map(|(f, _)| tpoly_from_q(t, &f)).collect());
    }
    let nlev = t.levels().len();
    for j in 0..60i64 {
        let theta = (0..nlev).fold(Fe::zero(t), |acc, k| {
            let c = Q::from_integer(num_bigint::BigInt::from(j).pow(k as u32 + 1));
            &acc + &Fe::generator(t, k).scale(&c)
        });
        let h = tp_shift(&g, &(-&theta), t);
        let n = tp_norm(&h, t);
        if !n.is_squarefree() {
            continue;
        }
        let mut out = vec![];
        for (ni, _) in factor_q_poly(&n) {
            let gi = tp_gcd(&h, &tpoly_from_q(t, &ni), t);
            if gi.len() > 1 {
                out.push(tp_shift(&gi, &theta, t));
            }
        }
        let total: usize = out.iter().map(|f| f.len() - 1).sum();
        if total != g.len() - 1 {
            return Err(Error::Invalid("factorization over tower lost degree".into()));
        }
        out.sort_by_key(|f| f.len());
        return Ok(out);
    }
    Err(Error::Invalid("no squarefree norm found; input not squarefree over the tower".into()))
}

/// A tower containing all roots of the given irreducible integer polynomials,
/// with every root known exactly (and i, when some root is non-real).
#[derive(Clone, Debug)]
pub struct SplittingField {
    pub tower: Arc<Tower>,
    pub polys: Vec<IntPoly>,
    /// numeric roots, canonical order, per polynomial
    pub roots: Vec<Vec<AlgebraicInteger>>,
    /// exact root values in `tower`, canonical order, per polynomial
    pub values: Vec<Vec<Fe>>,
    pub i: Option<Fe>,
}

fn i_poly() -> IntPoly {
    IntPoly::from_i64(&[1, 0, 1])
}

/// Roots of f in T (from the linear factors), matched to numeric roots.
fn roots_in_tower(f: &IntPoly, roots: &[AlgebraicInteger], t: &Arc<Tower>) -> Result<Vec<Option<Fe>>> {
    let factors = factor_over_tower(&tpoly_from_int(t, f), t)?;
    let mut out = vec![None; roots.len()];
    for fac in factors.iter().filter(|p| p.len() == 2) {
        let a = -&fac[0];
        let b = a.ball();
        let hits: Vec<usize> = roots.iter().filter(|r| r.approx.overlaps(&b)).map(|r| r.root_index).collect();
        match hits.as_slice() {
            [k] if out[*k].is_none() => out[*k] = Some(a),
            _ => return Err(Error::Precision(format!("cannot match tower root of {f} numerically"))),
        }
    }
    Ok(out)
}

impl SplittingField {
    pub fn new(polys: &[IntPoly], bits: u64) -> Result<SplittingField> {
        Self::build(polys, bits, true)
    }

    fn build(polys: &[IntPoly], bits: u64, with_i: bool) -> Result<SplittingField> {
        let mut t = Tower::rational(bits + 64);
        let mut uniq: Vec<IntPoly> = vec![];
        for p in polys {
            if !uniq.contains(p) {
                uniq.push(p.clone());
            }
        }
        let mut all_roots = vec![];
        let mut values: Vec<Vec<Fe>> = vec![];
        for f in &uniq {
            let roots = isolate_roots(f, bits + 64)?;
            loop {
                let factors = factor_over_tower(&tpoly_from_int(&t, f), &t)?;
                let Some(h) = factors.iter().find(|p| p.len() > 2) else { break };
                let k = roots
                    .iter()
                    .find(|r| tp_ball_eval(h, &r.approx).contains_zero())
                    .ok_or_else(|| Error::Precision(format!("no numeric root matches a factor of {f}")))?;
                t = t.adjoin(h, f.clone(), k.root_index, k.approx.clone());
            }
            let found = roots_in_tower(f, &roots, &t)?;
            let vals: Option<Vec<Fe>> = found.into_iter().collect();
            values.push(vals.ok_or_else(|| Error::Invalid(format!("{f} did not split")))?);
            all_roots.push(roots);
        }
        let mut i = None;
        if with_i && all_roots.iter().flatten().any(|r| !r.is_real()) {
            let ir = isolate_roots(&i_poly(), bits + 64)?;
            let found = roots_in_tower(&i_poly(), &ir, &t)?;
            i = match &found[1] {
                Some(v) => Some(v.clone()),
                None => {
                    let mp = tpoly_from_int(&t, &i_poly());
                    t = t.adjoin(&mp, i_poly(), 1, ir[1].approx.clone());
                    Some(Fe::generator(&t, t.levels().len() - 1))
                }
            };
        }
        let values = values.into_iter().map(|v| v.into_iter().map(|x| x.lift(&t)).collect()).collect();
        let i = i.map(|x| x.lift(&t));
        Ok(SplittingField { tower: t, polys: uniq, roots: all_roots, values, i })
    }

    /// Rebuild the root table for a given tower (used when loading artifacts).
    pub fn from_tower(t: &Arc<Tower>, polys: &[IntPoly], bits: u64) -> Result<SplittingField> {
        let mut uniq: Vec<IntPoly> = vec![];
        for p in polys {
            if !uniq.contains(p) {
                uniq.push(p.clone());
            }
        }
        let mut all_roots = vec![];
        let mut values = vec![];
        for f in &uniq {
            let roots = isolate_roots(f, bits)?;
            let found: Option<Vec<Fe>> = roots_in_tower(f, &roots, t)?.into_iter().collect();
            values.push(found.ok_or_else(|| Error::Invalid(format!("{f} does not split in the given tower")))?);
            all_roots.push(roots);
        }
        let ir = isolate_roots(&i_poly(), bits)?;
        let i = roots_in_tower(&i_poly(), &ir, t)?[1].clone();
        Ok(SplittingField { tower: t.clone(), polys: uniq, roots: all_roots, values, i })
    }

    pub fn poly_index(&self, f: &IntPoly) -> Option<usize> {
        self.polys.iter().position(|p| p == f)
    }

    /// Exact value of root `idx` of `f`.
    pub fn root(&self, f: &IntPoly, idx: usize) -> Option<&Fe> {
        self.poly_index(f).map(|k| &self.values[k][idx])
    }

    pub fn numeric_roots(&self, f: &IntPoly) -> Option<&[AlgebraicInteger]> {
        self.poly_index(f).map(|k| self.roots[k].as_slice())
    }

    /// Exact value of a generator's source root, including i.
    fn source_value(&self, f: &IntPoly, idx: usize) -> Option<Fe> {
        if *f == i_poly() {
            return match idx {
                1 => self.i.clone(),
                _ => self.i.as_ref().map(|x| -x),
            };
        }
        self.root(f, idx).cloned()
    }

    /// Field embedding of `src` into this splitting field, determined by
    /// sending each generator to the root it was adjoined as.
    pub fn embedding_of(&self, src: &Arc<Tower>) -> Result<TowerMap> {
        let mut gens = vec![];
        for lv in src.levels() {
            let v = self
                .source_value(&lv.source, lv.root_index)
                .ok_or_else(|| Error::Invalid(format!("target field lacks roots of {}", lv.source)))?;
            gens.push(v);
        }
        TowerMap::new(src, &self.tower, gens)
    }
}

/// Tower homomorphism given by the images of the generators.
#[derive(Clone, Debug)]
pub struct TowerMap {
    pub src: Arc<Tower>,
    pub dst: Arc<Tower>,
    basis_images: Vec<Fe>,
}

impl TowerMap {
    pub fn new(src: &Arc<Tower>, dst: &Arc<Tower>, gens: Vec<Fe>) -> Result<TowerMap> {
        let mut imgs = vec![Fe::one(dst)];
        for (k, lv) in src.levels().iter().enumerate() {
            let g = &gens[k];
            // generator must satisfy its minimal polynomial after mapping
            let mut val = Fe::one(dst);
            let mut pw = Fe::one(dst);
            let mut acc = Fe::zero(dst);
            for c in &lv.minpoly {
                acc = &acc + &(&map_with(&imgs, c, dst) * &pw);
                pw = &pw * g;
            }
            val = &(&val * &pw) + &acc;
            if !val.is_zero() {
                return Err(Error::Invalid("generator image is not a root of its minimal polynomial".into()));
            }
            let m = imgs.len();
            let mut gp = Fe::one(dst);
            for _ in 1..lv.degree {
                gp = &gp * g;
                for j in 0..m {
                    imgs.push(&gp * &imgs[j]);
                }
            }
        }
        Ok(TowerMap { src: src.clone(), dst: dst.clone(), basis_images: imgs })
    }

    pub fn apply(&self, a: &Fe) -> Fe {
        map_with(&self.basis_images, &a.c, &self.dst)
    }
}

fn map_with(imgs: &[Fe], c: &[Q], dst: &Arc<Tower>) -> Fe {
    let mut acc = Fe::zero(dst);
    for (x, img) in c.iter().zip(imgs) {
        if !x.is_zero() {
            acc = &acc + &img.scale(x);
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_splits_in_degree_two() {
        let f = IntPoly::from_i64(&[-1, -1, 1]);
        let sf = SplittingField::new(&[f.clone()], 128).unwrap();
        assert_eq!(sf.tower.dim(), 2);
        let tau = sf.root(&f, 1).unwrap();
        let taup = sf.root(&f, 0).unwrap();
        assert_eq!(&(tau + taup), &Fe::from_i64(&sf.tower, 1));
        assert!(sf.i.is_none());
    }

    #[test]
    fn cubic_cyclic_field() {
        let f = IntPoly::from_i64(&[1, -1, -2, 1]);
        let sf = SplittingField::new(&[f.clone()], 128).unwrap();
        assert_eq!(sf.tower.dim(), 3);
        for r in &sf.values[0] {
            assert!(tp_eval(&tpoly_from_int(&sf.tower, &f), r).is_zero());
        }
    }

    #[test]
    fn phi5_with_i() {
        let f = IntPoly::from_i64(&[1, 1, 1, 1, 1]);
        let sf = SplittingField::new(&[f.clone()], 128).unwrap();
        assert_eq!(sf.tower.dim(), 8);
        let i = sf.i.clone().unwrap();
        assert_eq!(&(&i * &i), &Fe::from_i64(&sf.tower, -1));
    }
}
