//! Certified isolation of all complex roots of a squarefree integer polynomial.
//!
//! Approximations come from Aberth iterations (f64 seed, then exact rational
//! Newton steps rounded to the working precision). Each approximation z_i is
//! certified by the Weierstrass correction W_i = f(z_i)/∏_{j≠i}(z_i − z_j):
//! the disks D(z_i, d·|W_i|) contain all roots, and pairwise disjoint disks
//! contain exactly one root each.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::ball::{ceil_dyadic, q_from_f64, round_dyadic, sqrt_upper, CBall};
use super::poly::{require_squarefree, IntPoly, Q};
use crate::error::{Error, Result};

/// A root of a monic irreducible (or at least squarefree) integer polynomial.
#[derive(Clone, Debug)]
pub struct AlgebraicInteger {
    pub min_poly: IntPoly,
    /// position in canonical order: by real part, then imaginary part
    pub root_index: usize,
    pub approx: CBall,
    /// canonical index of the complex conjugate, `None` for real roots
    pub conj_index: Option<usize>,
}

impl AlgebraicInteger {
    pub fn is_real(&self) -> bool {
        self.conj_index.is_none()
    }

    pub fn re_f64(&self) -> f64 {
        self.approx.re_f64()
    }

    pub fn im_f64(&self) -> f64 {
        self.approx.im_f64()
    }

    pub fn label(&self) -> String {
        let (re, im) = (self.re_f64(), self.im_f64());
        if self.is_real() {
            format!("{re:.10}")
        } else {
            format!("{re:.10}{}{:.10}i", if im < 0.0 { "-" } else { "+" }, im.abs())
        }
    }
}

impl PartialEq for AlgebraicInteger {
    fn eq(&self, o: &Self) -> bool {
        self.min_poly == o.min_poly && self.root_index == o.root_index
    }
}

impl Eq for AlgebraicInteger {}

type C = (Q, Q);

fn c_mul(a: &C, b: &C) -> C {
    (&a.0 * &b.0 - &a.1 * &b.1, &a.0 * &b.1 + &a.1 * &b.0)
}

fn c_sub(a: &C, b: &C) -> C {
    (&a.0 - &b.0, &a.1 - &b.1)
}

fn c_abs2(a: &C) -> Q {
    &a.0 * &a.0 + &a.1 * &a.1
}

fn c_div(a: &C, b: &C) -> Option<C> {
    let m = c_abs2(b);
    if m.is_zero() {
        return None;
    }
    let n = c_mul(a, &(b.0.clone(), -&b.1));
    Some((n.0 / &m, n.1 / m))
}

fn c_round(a: &C, bits: u64) -> C {
    (round_dyadic(&a.0, bits), round_dyadic(&a.1, bits))
}

fn eval_c(f: &[Q], z: &C) -> (C, C) {
    // value and derivative by Horner
    let mut p: C = (Q::zero(), Q::zero());
    let mut dp: C = (Q::zero(), Q::zero());
    for c in f.iter().rev() {
        dp = c_mul(&dp, z);
        dp = (&dp.0 + &p.0, &dp.1 + &p.1);
        p = c_mul(&p, z);
        p.0 += c;
    }
    (p, dp)
}

fn seed_f64(f: &IntPoly) -> Vec<(f64, f64)> {
    let d = f.degree();
    let c: Vec<f64> = f.coeffs().iter().map(|x| super::ball::q_to_f64(&Q::from_integer(x.clone()))).collect();
    let lc = c[d];
    let c: Vec<f64> = c.iter().map(|x| x / lc).collect();
    // Cauchy bound for the initial circle
    let bound = 1.0 + c[..d].iter().map(|x| x.abs()).fold(0.0, f64::max);
    let r0 = bound.min(1e6) * 0.5 + 0.1;
    let mut z: Vec<(f64, f64)> = (0..d)
        .map(|k| {
            let t = 2.0 * std::f64::consts::PI * (k as f64) / (d as f64) + 0.4;
            (r0 * t.cos(), r0 * t.sin())
        })
        .collect();
    let ev = |z: (f64, f64)| {
        let mut p = (0.0, 0.0);
        let mut dp = (0.0, 0.0);
        for k in (0..=d).rev() {
            dp = (dp.0 * z.0 - dp.1 * z.1 + p.0, dp.0 * z.1 + dp.1 * z.0 + p.1);
            p = (p.0 * z.0 - p.1 * z.1 + c[k], p.0 * z.1 + p.1 * z.0);
        }
        (p, dp)
    };
    let div = |a: (f64, f64), b: (f64, f64)| {
        let m = b.0 * b.0 + b.1 * b.1;
        ((a.0 * b.0 + a.1 * b.1) / m, (a.1 * b.0 - a.0 * b.1) / m)
    };
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..d {
            let (p, dp) = ev(z[i]);
            if p.0 == 0.0 && p.1 == 0.0 {
                continue;
            }
            let n = div(p, dp);
            let mut s = (0.0, 0.0);
            for j in 0..d {
                if j != i {
                    let w = div((1.0, 0.0), (z[i].0 - z[j].0, z[i].1 - z[j].1));
                    s = (s.0 + w.0, s.1 + w.1);
                }
            }
            let den = (1.0 - (n.0 * s.0 - n.1 * s.1), -(n.0 * s.1 + n.1 * s.0));
            let step = div(n, den);
            if step.0.is_finite() && step.1.is_finite() {
                z[i] = (z[i].0 - step.0, z[i].1 - step.1);
                moved = moved.max(step.0.abs() + step.1.abs());
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

/// Simultaneous Aberth steps in rational arithmetic.
fn aberth_exact(f: &[Q], z: &mut [C], bits: u64, rounds: usize) {
    let d = z.len();
    for _ in 0..rounds {
        for i in 0..d {
            let (p, dp) = eval_c(f, &z[i]);
            if p.0.is_zero() && p.1.is_zero() {
                continue;
            }
            let Some(n) = c_div(&p, &dp) else { continue };
            let mut s: C = (Q::zero(), Q::zero());
            for j in 0..d {
                if j != i {
                    if let Some(w) = c_div(&(Q::from_integer(1.into()), Q::zero()), &c_sub(&z[i], &z[j])) {
                        s = (&s.0 + &w.0, &s.1 + &w.1);
                    }
                }
            }
            let ns = c_mul(&n, &s);
            let den = (Q::from_integer(1.into()) - &ns.0, -ns.1);
            if let Some(step) = c_div(&n, &den) {
                z[i] = c_round(&c_sub(&z[i], &step), bits);
            }
        }
    }
}

/// Weierstrass radii d·|W_i| (upper bounds), or None if two centers coincide.
fn weierstrass_radii(f: &[Q], z: &[C], bits: u64) -> Option<Vec<Q>> {
    let d = z.len();
    let lc = f[d].clone();
    let mut out = Vec::with_capacity(d);
    for i in 0..d {
        let (p, _) = eval_c(f, &z[i]);
        let mut den: C = (lc.clone(), Q::zero());
        for j in 0..d {
            if j != i {
                den = c_mul(&den, &c_sub(&z[i], &z[j]));
            }
        }
        let w2 = c_div(&p, &den).map(|w| c_abs2(&w))?;
        let dq = Q::from_integer(BigInt::from(d as u64));
        out.push(ceil_dyadic(&(sqrt_upper(&w2, bits + 8) * dq), bits + 8));
    }
    Some(out)
}

fn disjoint(balls: &[CBall]) -> bool {
    for i in 0..balls.len() {
        for j in i + 1..balls.len() {
            if balls[i].overlaps(&balls[j]) {
                return false;
            }
        }
    }
    true
}

fn certify(f: &[Q], z: &[C], bits: u64) -> Option<Vec<CBall>> {
    let radii = weierstrass_radii(f, z, bits)?;
    let balls: Vec<CBall> = z
        .iter()
        .zip(radii)
        .map(|(c, r)| CBall { re: c.0.clone(), im: c.1.clone(), rad: r, bits })
        .collect();
    disjoint(&balls).then_some(balls)
}

/// Pair each disk with its conjugate; snap centers so real roots have zero
/// imaginary part and pairs have exactly conjugate centers.
fn conjugate_structure(balls: &[CBall]) -> Option<Vec<Option<usize>>> {
    let d = balls.len();
    let mut partner = vec![None; d];
    for i in 0..d {
        let cj = balls[i].conj();
        let hits: Vec<usize> = (0..d).filter(|&j| cj.overlaps(&balls[j])).collect();
        match hits.as_slice() {
            [j] if *j == i => {}
            [j] => partner[i] = Some(*j),
            _ => return None,
        }
    }
    for i in 0..d {
        if let Some(j) = partner[i] {
            if partner[j] != Some(i) {
                return None;
            }
        }
    }
    Some(partner)
}

fn cmp_roots(a: &CBall, b: &CBall, force: bool) -> Option<Ordering> {
    let (alo, ahi) = a.re_interval();
    let (blo, bhi) = b.re_interval();
    if a.re == b.re && a.rad == b.rad {
        // conjugate pair (or identical real parts by construction)
        return a.im.partial_cmp(&b.im);
    }
    if ahi < blo {
        return Some(Ordering::Less);
    }
    if bhi < alo {
        return Some(Ordering::Greater);
    }
    if force {
        let (ailo, aihi) = a.im_interval();
        let (bilo, bihi) = b.im_interval();
        if aihi < bilo {
            return Some(Ordering::Less);
        }
        if bihi < ailo {
            return Some(Ordering::Greater);
        }
        return a.re.partial_cmp(&b.re);
    }
    None
}

const MAX_BITS: u64 = 8192;

/// All roots of a squarefree integer polynomial, certified, in canonical order.
pub fn isolate_roots(f: &IntPoly, precision_bits: u64) -> Result<Vec<AlgebraicInteger>> {
    require_squarefree(f)?;
    let d = f.degree();
    let fq: Vec<Q> = f.coeffs().iter().map(|c| Q::from_integer(c.clone())).collect();
    let seeds = seed_f64(f);
    let mut z: Vec<C> = seeds.iter().map(|&(a, b)| (q_from_f64(a), q_from_f64(b))).collect();
    // headroom for large roots
    let mag = seeds.iter().map(|s| (s.0.abs() + s.1.abs()).max(1.0).log2().ceil() as u64).max().unwrap_or(0);
    let mut bits = precision_bits + 24 + mag;
    let mut rounds = 4;
    loop {
        aberth_exact(&fq, &mut z, bits, rounds);
        if let Some(balls) = certify(&fq, &z, bits) {
            if let Some(partner) = conjugate_structure(&balls) {
                for i in 0..d {
                    match partner[i] {
                        None => z[i].1 = Q::zero(),
                        Some(j) if balls[i].im.is_positive() => {
                            z[j] = (z[i].0.clone(), -&z[i].1);
                        }
                        _ => {}
                    }
                }
                if let Some(balls) = certify(&fq, &z, bits) {
                    let small = balls.iter().all(|b| {
                        let scale = b.abs_upper().max(Q::from_integer(1.into()));
                        b.rad.clone() * Q::from_integer(BigInt::from(2)) * Q::from_integer(BigInt::from(1) << precision_bits)
                            <= scale
                    });
                    if small && conjugate_structure(&balls).as_ref() == Some(&partner) {
                        let force = bits >= MAX_BITS;
                        if let Some(order) = canonical_order(&balls, force) {
                            return Ok(assemble(f, &balls, &partner, &order));
                        }
                    }
                }
            }
        }
        if bits >= MAX_BITS {
            return Err(Error::Precision(format!("root isolation of {f} did not converge")));
        }
        bits = (bits * 2).min(MAX_BITS);
        rounds = 3;
    }
}

fn canonical_order(balls: &[CBall], force: bool) -> Option<Vec<usize>> {
    let mut idx: Vec<usize> = (0..balls.len()).collect();
    // insertion sort so that undecided comparisons surface
    for i in 1..idx.len() {
        let mut j = i;
        while j > 0 {
            match cmp_roots(&balls[idx[j - 1]], &balls[idx[j]], force)? {
                Ordering::Greater => {
                    idx.swap(j - 1, j);
                    j -= 1;
                }
                _ => break,
            }
        }
    }
    // verify total order on all pairs
    for a in 0..idx.len() {
        for b in a + 1..idx.len() {
            if cmp_roots(&balls[idx[a]], &balls[idx[b]], force)? != Ordering::Less {
                return None;
            }
        }
    }
    Some(idx)
}

fn assemble(f: &IntPoly, balls: &[CBall], partner: &[Option<usize>], order: &[usize]) -> Vec<AlgebraicInteger> {
    let mut pos = vec![0; order.len()];
    for (k, &i) in order.iter().enumerate() {
        pos[i] = k;
    }
    order
        .iter()
        .enumerate()
        .map(|(k, &i)| AlgebraicInteger {
            min_poly: f.clone(),
            root_index: k,
            approx: balls[i].clone(),
            conj_index: partner[i].map(|j| pos[j]),
        })
        .collect()
}

/// Evaluate an integer polynomial on a ball.
pub fn eval_ball(f: &IntPoly, z: &CBall) -> CBall {
    let mut acc = CBall::from_int(0, z.bits);
    for c in f.coeffs().iter().rev() {
        acc = acc.mul(z).add(&CBall::real(Q::from_integer(c.clone()), z.bits));
    }
    acc
}

/// Decide |μ| against 1 for a certified root. Returns the sign of |μ| − 1.
///
/// Straddling cases are resolved exactly: cyclotomic polynomials have all
/// roots on the unit circle; for reciprocal f, 1/μ̄ is a root, and if it falls
/// inside μ's isolating disk the two coincide, so |μ| = 1.
pub fn modulus_vs_one(mu: &AlgebraicInteger, precision_bits: u64) -> Result<Ordering> {
    let one = Q::from_integer(1.into());
    let mut bits = precision_bits;
    loop {
        let roots = if bits == precision_bits && mu.approx.bits >= precision_bits {
            None
        } else {
            Some(isolate_roots(&mu.min_poly, bits)?)
        };
        let ball = roots.as_ref().map(|r| r[mu.root_index].approx.clone()).unwrap_or_else(|| mu.approx.clone());
        let (lo, hi) = ball.abs2_interval();
        if lo > one {
            return Ok(Ordering::Greater);
        }
        if hi < one {
            return Ok(Ordering::Less);
        }
        if super::factor::is_cyclotomic(&mu.min_poly).is_some() {
            return Ok(Ordering::Equal);
        }
        if mu.min_poly.is_reciprocal() {
            if let Some(inv) = ball.conj().recip() {
                let all = match &roots {
                    Some(r) => r.clone(),
                    None => isolate_roots(&mu.min_poly, bits)?,
                };
                let others_clear = all
                    .iter()
                    .filter(|r| r.root_index != mu.root_index)
                    .all(|r| !inv.overlaps(&r.approx));
                // the root 1/μ̄ lies in `inv`; if only μ's disk meets it, 1/μ̄ = μ
                if inv.overlaps(&ball) && others_clear {
                    return Ok(Ordering::Equal);
                }
            }
        }
        if bits >= MAX_BITS {
            return Err(Error::Precision(format!("cannot decide |root| vs 1 for {}", mu.min_poly)));
        }
        bits *= 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_ratio_roots() {
        let r = isolate_roots(&IntPoly::from_i64(&[-1, -1, 1]), 128).unwrap();
        assert_eq!(r.len(), 2);
        assert!((r[0].re_f64() + 0.6180339887498949).abs() < 1e-15);
        assert!((r[1].re_f64() - 1.618033988749895).abs() < 1e-15);
        assert!(r.iter().all(|x| x.is_real()));
    }

    #[test]
    fn i_pair() {
        let r = isolate_roots(&IntPoly::from_i64(&[1, 0, 1]), 64).unwrap();
        assert_eq!(r[0].conj_index, Some(1));
        assert!(r[0].im_f64() < 0.0 && r[1].im_f64() > 0.0);
        assert_eq!(r[0].approx.re, r[1].approx.re);
    }

    #[test]
    fn nonsquarefree_rejected() {
        assert!(matches!(isolate_roots(&IntPoly::from_i64(&[1, -2, 1]), 64), Err(Error::NotSquarefree)));
    }

    #[test]
    fn salem_like_modulus() {
        // x^4 - x^3 - x^2 - x + 1: Salem number with two unimodular conjugates
        let f = IntPoly::from_i64(&[1, -1, -1, -1, 1]);
        let r = isolate_roots(&f, 128).unwrap();
        let signs: Vec<Ordering> = r.iter().map(|m| modulus_vs_one(m, 128).unwrap()).collect();
        assert_eq!(signs.iter().filter(|&&s| s == Ordering::Equal).count(), 2);
        assert_eq!(signs.iter().filter(|&&s| s == Ordering::Greater).count(), 1);
        assert_eq!(signs.iter().filter(|&&s| s == Ordering::Less).count(), 1);
    }
}
