//! Complex ball arithmetic: dyadic rational centers rounded to a working
//! precision, with a rational radius that is always an upper bound.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::Q;

fn pow2(bits: u64) -> BigInt {
    BigInt::one() << bits
}

/// Round to the nearest multiple of 2^-bits.
pub fn round_dyadic(x: &Q, bits: u64) -> Q {
    let scaled = x * Q::from_integer(pow2(bits));
    let n = (scaled + Q::new(BigInt::one(), BigInt::from(2))).floor().to_integer();
    Q::new(n, pow2(bits))
}

/// Smallest multiple of 2^-bits that is ≥ x.
pub fn ceil_dyadic(x: &Q, bits: u64) -> Q {
    let scaled = x * Q::from_integer(pow2(bits));
    Q::new(scaled.ceil().to_integer(), pow2(bits))
}

/// An upper bound for √x (x ≥ 0) as a dyadic rational.
pub fn sqrt_upper(x: &Q, bits: u64) -> Q {
    if x.is_zero() {
        return Q::zero();
    }
    // integer sqrt of x·4^bits, plus one ulp
    let scaled = (x * Q::from_integer(pow2(2 * bits))).ceil().to_integer();
    let r = scaled.sqrt() + BigInt::one();
    Q::new(r, pow2(bits))
}

/// A lower bound for √x (x ≥ 0).
pub fn sqrt_lower(x: &Q, bits: u64) -> Q {
    if !x.is_positive() {
        return Q::zero();
    }
    let scaled = (x * Q::from_integer(pow2(2 * bits))).floor().to_integer();
    Q::new(scaled.sqrt(), pow2(bits))
}

pub fn q_to_f64(x: &Q) -> f64 {
    // scale so that both parts fit comfortably in f64
    let n = x.numer();
    let d = x.denom();
    let shift = (n.bits().max(d.bits()) as i64 - 900).max(0) as u32;
    let (n, d) = (n >> shift, d >> shift);
    match (n.to_f64(), d.to_f64()) {
        (Some(a), Some(b)) if b != 0.0 => a / b,
        _ => x.to_f64().unwrap_or(f64::NAN),
    }
}

/// Exact rational from an f64 (every finite double is dyadic).
pub fn q_from_f64(x: f64) -> Q {
    Q::from_float(x).unwrap_or_else(Q::zero)
}

/// Parse a decimal string like "-0.6931" or "3/2".
pub fn parse_rational(s: &str) -> Option<Q> {
    let s = s.trim();
    if let Some((a, b)) = s.split_once('/') {
        let a: BigInt = a.trim().parse().ok()?;
        let b: BigInt = b.trim().parse().ok()?;
        if b.is_zero() {
            return None;
        }
        return Some(Q::new(a, b));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(r) => (true, r),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (ip, fp) = body.split_once('.').unwrap_or((body, ""));
    if ip.is_empty() && fp.is_empty() {
        return None;
    }
    let digits = format!("{ip}{fp}");
    if !digits.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    let n: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().ok()? };
    let v = Q::new(n, BigInt::from(10).pow(fp.len() as u32));
    Some(if neg { -v } else { v })
}

/// Decimal rendering with `digits` digits after the point (rounded).
pub fn q_to_decimal(x: &Q, digits: usize) -> String {
    let scale = BigInt::from(10).pow(digits as u32);
    let v = (x * Q::from_integer(scale.clone())).round().to_integer();
    let neg = v.is_negative();
    let (ip, fp) = v.abs().div_rem(&scale);
    let fs = format!("{:0>width$}", fp.to_string(), width = digits);
    format!("{}{}{}{}", if neg { "-" } else { "" }, ip, if digits > 0 { "." } else { "" }, fs)
}

#[derive(Clone, Debug, PartialEq)]
pub struct CBall {
    pub re: Q,
    pub im: Q,
    /// radius upper bound
    pub rad: Q,
    pub bits: u64,
}

impl CBall {
    pub fn exact(re: Q, im: Q, bits: u64) -> Self {
        CBall { re, im, rad: Q::zero(), bits }
    }

    pub fn real(x: Q, bits: u64) -> Self {
        Self::exact(x, Q::zero(), bits)
    }

    pub fn from_int(k: i64, bits: u64) -> Self {
        Self::real(Q::from_integer(BigInt::from(k)), bits)
    }

    /// Round the center, absorbing the rounding error into the radius.
    fn normalize(mut self) -> Self {
        let re = round_dyadic(&self.re, self.bits);
        let im = round_dyadic(&self.im, self.bits);
        let err = (&re - &self.re).abs() + (&im - &self.im).abs();
        self.re = re;
        self.im = im;
        self.rad = ceil_dyadic(&(&self.rad + err), self.bits + 8);
        self
    }

    /// Upper bound for |center| (cheap, via |re|+|im|).
    pub fn abs_center_upper(&self) -> Q {
        self.re.abs() + self.im.abs()
    }

    pub fn abs_upper(&self) -> Q {
        self.abs_center_upper() + &self.rad
    }

    pub fn add(&self, o: &CBall) -> CBall {
        CBall {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
            rad: &self.rad + &o.rad,
            bits: self.bits.max(o.bits),
        }
        .normalize()
    }

    pub fn sub(&self, o: &CBall) -> CBall {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> CBall {
        CBall { re: -&self.re, im: -&self.im, rad: self.rad.clone(), bits: self.bits }
    }

    pub fn conj(&self) -> CBall {
        CBall { re: self.re.clone(), im: -&self.im, rad: self.rad.clone(), bits: self.bits }
    }

    pub fn mul(&self, o: &CBall) -> CBall {
        let re = &self.re * &o.re - &self.im * &o.im;
        let im = &self.re * &o.im + &self.im * &o.re;
        let rad = self.abs_center_upper() * &o.rad + o.abs_center_upper() * &self.rad + &self.rad * &o.rad;
        CBall { re, im, rad, bits: self.bits.max(o.bits) }.normalize()
    }

    pub fn scale(&self, k: &Q) -> CBall {
        CBall { re: &self.re * k, im: &self.im * k, rad: &self.rad * k.abs(), bits: self.bits }.normalize()
    }

    /// 1/z; None if the ball may contain zero.
    pub fn recip(&self) -> Option<CBall> {
        let m2 = &self.re * &self.re + &self.im * &self.im;
        let lo = sqrt_lower(&m2, self.bits + 8);
        if lo <= self.rad {
            return None;
        }
        let re = &self.re / &m2;
        let im = -&self.im / &m2;
        // |1/(c+e) − 1/c| ≤ r / (|c|(|c|−r))
        let rad = &self.rad / (&lo * (&lo - &self.rad));
        Some(CBall { re, im, rad, bits: self.bits }.normalize())
    }

    pub fn contains_zero(&self) -> bool {
        let m2 = &self.re * &self.re + &self.im * &self.im;
        m2 <= &self.rad * &self.rad
    }

    /// Whether this ball lies entirely inside `o`.
    pub fn inside(&self, o: &CBall) -> bool {
        if self.rad > o.rad {
            return false;
        }
        let dr = &self.re - &o.re;
        let di = &self.im - &o.im;
        let gap = &o.rad - &self.rad;
        &dr * &dr + &di * &di <= &gap * &gap
    }

    pub fn overlaps(&self, o: &CBall) -> bool {
        let dr = &self.re - &o.re;
        let di = &self.im - &o.im;
        let s = &self.rad + &o.rad;
        &dr * &dr + &di * &di <= &s * &s
    }

    /// Real-part interval.
    pub fn re_interval(&self) -> (Q, Q) {
        (&self.re - &self.rad, &self.re + &self.rad)
    }

    pub fn im_interval(&self) -> (Q, Q) {
        (&self.im - &self.rad, &self.im + &self.rad)
    }

    /// Certified bounds on |z|².
    pub fn abs2_interval(&self) -> (Q, Q) {
        let m2 = &self.re * &self.re + &self.im * &self.im;
        let lo_abs = sqrt_lower(&m2, self.bits + 8);
        let hi_abs = sqrt_upper(&m2, self.bits + 8) + &self.rad;
        let lo = if lo_abs > self.rad { (&lo_abs - &self.rad).pow(2) } else { Q::zero() };
        (lo, hi_abs.pow(2))
    }

    /// Whether the ball meets the real axis.
    pub fn touches_real_axis(&self) -> bool {
        self.im.abs() <= self.rad
    }

    pub fn re_f64(&self) -> f64 {
        q_to_f64(&self.re)
    }

    pub fn im_f64(&self) -> f64 {
        q_to_f64(&self.im)
    }

    pub fn rad_f64(&self) -> f64 {
        // round the radius up so the float stays an upper bound
        let r = q_to_f64(&self.rad);
        if r == 0.0 { 0.0 } else { r * (1.0 + 1e-12) + f64::MIN_POSITIVE }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::poly::qf;

    #[test]
    fn decimal_parse_roundtrip() {
        assert_eq!(parse_rational("-1.25").unwrap(), qf(-5, 4));
        assert_eq!(parse_rational("3/2").unwrap(), qf(3, 2));
        assert_eq!(parse_rational(".5").unwrap(), qf(1, 2));
        assert!(parse_rational("abc").is_none());
        assert_eq!(q_to_decimal(&qf(-5, 4), 3), "-1.250");
        assert_eq!(q_to_decimal(&qf(2, 3), 4), "0.6667");
    }

    #[test]
    fn sqrt_bounds() {
        let two = qf(2, 1);
        let up = sqrt_upper(&two, 64);
        let lo = sqrt_lower(&two, 64);
        assert!(&up * &up >= two && &lo * &lo <= two);
        assert!(&up - &lo < qf(1, 1 << 60));
    }

    #[test]
    fn ball_mul_encloses() {
        let a = CBall { re: qf(1, 3), im: qf(1, 7), rad: qf(1, 1000), bits: 64 };
        let b = a.mul(&a).recip().unwrap();
        // exact value at the center lies in the ball
        let c = a.mul(&a);
        let m2 = &c.re * &c.re + &c.im * &c.im;
        let exact = CBall::exact(&c.re / &m2, -&c.im / &m2, 64);
        assert!(exact.inside(&b));
    }
}
