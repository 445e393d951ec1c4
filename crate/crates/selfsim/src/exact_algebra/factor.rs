//! Factorization over ℚ and cyclotomic recognition.

use algebraics::polynomial::Polynomial;
use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::poly::{IntPoly, QPoly, Q};
use crate::error::{Error, Result};

/// Irreducible factors of a monic integer polynomial with multiplicities,
/// sorted by (degree, coefficients).
pub fn factor_over_q(p: &IntPoly) -> Result<Vec<(IntPoly, usize)>> {
    if !p.is_monic() {
        return Err(Error::NotMonic);
    }
    if p.degree() == 0 {
        return Err(Error::Invalid("degree must be at least 1".into()));
    }
    Ok(factor_primitive(p))
}

fn factor_primitive(p: &IntPoly) -> Vec<(IntPoly, usize)> {
    let poly: Polynomial<BigInt> = p.coeffs().to_vec().into();
    let factors = poly.factor();
    let mut out: Vec<(IntPoly, usize)> = factors
        .polynomial_factors
        .into_iter()
        .map(|f| {
            let mut c = f.polynomial.into_coefficients();
            if c.last().is_some_and(|l| l.is_negative()) {
                c.iter_mut().for_each(|x| *x = -x.clone());
            }
            (IntPoly::new(c), f.power)
        })
        .collect();
    out.sort_by(|a, b| (a.0.degree(), &a.0).cmp(&(b.0.degree(), &b.0)));
    out
}

/// Monic irreducible rational factors of a nonzero rational polynomial.
pub fn factor_q_poly(p: &QPoly) -> Vec<(QPoly, usize)> {
    assert!(!p.is_zero());
    if p.degree() == 0 {
        return vec![];
    }
    factor_primitive(&p.to_primitive_int())
        .into_iter()
        .map(|(f, e)| (f.to_q().monic(), e))
        .collect()
}

/// Monic irreducible rational factors that must be integral; otherwise the
/// roots are not algebraic integers.
pub fn factor_monic_integral(p: &QPoly) -> Result<Vec<(IntPoly, usize)>> {
    factor_q_poly(p)
        .into_iter()
        .map(|(f, e)| {
            IntPoly::from_q(&f)
                .map(|g| (g, e))
                .ok_or_else(|| Error::NotAlgebraicInteger(format!("factor {:?}", f.0)))
        })
        .collect()
}

pub fn is_irreducible(f: &IntPoly) -> bool {
    let fs = factor_primitive(f);
    fs.len() == 1 && fs[0].1 == 1
}

fn totient(mut n: u64) -> u64 {
    let mut r = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            r -= r / p;
        }
        p += 1;
    }
    if n > 1 {
        r -= r / n;
    }
    r
}

/// Φ_k by repeated division of x^k − 1.
pub fn cyclotomic(k: u64) -> IntPoly {
    let mut num = vec![Q::from_integer(BigInt::from(-1))];
    num.resize(k as usize, Q::from_integer(BigInt::from(0)));
    num.push(Q::one());
    let mut p = QPoly::new(num);
    for d in 1..k {
        if k % d == 0 {
            p = p.divrem(&cyclotomic(d).to_q()).0;
        }
    }
    IntPoly::from_q(&p).expect("cyclotomic polynomials are integral")
}

/// Returns k when f = Φ_k. Candidates are the k with φ(k) = deg f, and
/// φ(k) ≥ √(k/2) bounds them by 2·deg².
pub fn is_cyclotomic(f: &IntPoly) -> Option<u64> {
    let d = f.degree() as u64;
    if d == 0 || !f.is_monic() {
        return None;
    }
    (1..=2 * d * d + 2)
        .filter(|&k| totient(k) == d)
        .find(|&k| &cyclotomic(k) == f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn x4_minus_1() {
        let f = factor_over_q(&IntPoly::from_i64(&[-1, 0, 0, 0, 1])).unwrap();
        let expect = vec![
            (IntPoly::from_i64(&[-1, 1]), 1),
            (IntPoly::from_i64(&[1, 1]), 1),
            (IntPoly::from_i64(&[1, 0, 1]), 1),
        ];
        assert_eq!(f, expect);
    }

    #[test]
    fn repeated_factor_and_nonmonic() {
        let f = factor_over_q(&IntPoly::from_i64(&[1, -2, 1])).unwrap();
        assert_eq!(f, vec![(IntPoly::from_i64(&[-1, 1]), 2)]);
        assert!(factor_over_q(&IntPoly::from_i64(&[1, 2])).is_err());
    }

    #[test]
    fn cyclotomic_recognition() {
        assert_eq!(is_cyclotomic(&IntPoly::from_i64(&[1, 1, 1])), Some(3));
        assert_eq!(is_cyclotomic(&IntPoly::from_i64(&[1, 0, 1])), Some(4));
        assert_eq!(is_cyclotomic(&IntPoly::from_i64(&[1, -1, 1])), Some(6));
        assert_eq!(is_cyclotomic(&IntPoly::from_i64(&[-1, -1, 1])), None);
        assert_eq!(cyclotomic(5), IntPoly::from_i64(&[1, 1, 1, 1, 1]));
        assert_eq!(cyclotomic(8), IntPoly::from_i64(&[1, 0, 0, 0, 1]));
        assert_eq!(cyclotomic(1), IntPoly::from_i64(&[-1, 1]));
    }
}
