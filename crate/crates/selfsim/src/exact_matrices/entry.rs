//! Matrix entries: polynomials in formal indeterminates with tower coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use crate::exact_algebra::{CBall, Fe, Tower, TowerMap, Q};

/// Exponent vector, trailing zeros trimmed.
pub type Mono = Vec<u32>;

fn mono_mul(a: &Mono, b: &Mono) -> Mono {
    let n = a.len().max(b.len());
    (0..n).map(|i| a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)).collect()
}

#[derive(Clone)]
pub struct Tp {
    pub t: Arc<Tower>,
    /// nonzero coefficients only
    pub terms: BTreeMap<Mono, Fe>,
}

impl Tp {
    pub fn zero(t: &Arc<Tower>) -> Tp {
        Tp { t: t.clone(), terms: BTreeMap::new() }
    }

    pub fn from_fe(x: Fe) -> Tp {
        let mut terms = BTreeMap::new();
        let t = x.t.clone();
        if !x.is_zero() {
            terms.insert(vec![], x);
        }
        Tp { t, terms }
    }

    pub fn from_i64(t: &Arc<Tower>, k: i64) -> Tp {
        Tp::from_fe(Fe::from_i64(t, k))
    }

    pub fn from_q(t: &Arc<Tower>, k: Q) -> Tp {
        Tp::from_fe(Fe::from_q(t, k))
    }

    /// The indeterminate with global index `k`, times `c`.
    pub fn var(t: &Arc<Tower>, k: usize, power: u32) -> Tp {
        let mut m = vec![0; k + 1];
        m[k] = power;
        let mut terms = BTreeMap::new();
        terms.insert(m, Fe::one(t));
        Tp { t: t.clone(), terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value if this entry has no indeterminates.
    pub fn as_const(&self) -> Option<Fe> {
        match self.terms.len() {
            0 => Some(Fe::zero(&self.t)),
            1 => self.terms.get(&vec![]).cloned(),
            _ => None,
        }
    }

    pub fn is_unit(&self) -> bool {
        self.as_const().is_some_and(|c| !c.is_zero())
    }

    pub fn as_rational(&self) -> Option<Q> {
        self.as_const().and_then(|c| c.as_rational())
    }

    fn insert_add(terms: &mut BTreeMap<Mono, Fe>, m: Mono, c: Fe) {
        match terms.get_mut(&m) {
            Some(v) => {
                *v = &*v + &c;
                if v.is_zero() {
                    terms.remove(&m);
                }
            }
            None => {
                if !c.is_zero() {
                    terms.insert(m, c);
                }
            }
        }
    }

    pub fn add(&self, o: &Tp) -> Tp {
        let mut terms = self.terms.clone();
        for (m, c) in &o.terms {
            Self::insert_add(&mut terms, m.clone(), c.clone());
        }
        Tp { t: self.t.clone(), terms }
    }

    pub fn neg(&self) -> Tp {
        Tp { t: self.t.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn sub(&self, o: &Tp) -> Tp {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Tp) -> Tp {
        let mut terms = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                Self::insert_add(&mut terms, mono_mul(ma, mb), ca * cb);
            }
        }
        Tp { t: self.t.clone(), terms }
    }

    pub fn scale(&self, k: &Fe) -> Tp {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let v = c * k;
            if !v.is_zero() {
                terms.insert(m.clone(), v);
            }
        }
        Tp { t: self.t.clone(), terms }
    }

    pub fn pow(&self, e: u32) -> Tp {
        let mut r = Tp::from_i64(&self.t, 1);
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    /// Renumber indeterminates by adding `offset` to every index.
    pub fn shift_indets(&self, offset: usize) -> Tp {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let nm = if m.is_empty() {
                    vec![]
                } else {
                    let mut v = vec![0; offset];
                    v.extend_from_slice(m);
                    v
                };
                (nm, c.clone())
            })
            .collect();
        Tp { t: self.t.clone(), terms }
    }

    pub fn map_tower(&self, map: &TowerMap) -> Tp {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let v = map.apply(c);
            if !v.is_zero() {
                terms.insert(m.clone(), v);
            }
        }
        Tp { t: map.dst.clone(), terms }
    }

    pub fn lift(&self, t: &Arc<Tower>) -> Tp {
        Tp { t: t.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), c.lift(t))).collect() }
    }

    /// Largest indeterminate index used, plus one.
    pub fn n_indets(&self) -> usize {
        self.terms.keys().map(|m| m.len()).max().unwrap_or(0)
    }

    /// Numeric value with the indeterminates replaced by `vals`.
    pub fn eval(&self, vals: &[Q]) -> CBall {
        let bits = self.t.bits();
        let mut acc = CBall::from_int(0, bits);
        for (m, c) in &self.terms {
            let mut mono = Q::from_integer(1.into());
            for (k, &e) in m.iter().enumerate() {
                for _ in 0..e {
                    mono *= &vals[k];
                }
            }
            acc = acc.add(&c.ball().scale(&mono));
        }
        acc
    }

    /// Rational coordinates: (monomial, tower basis index) → coefficient.
    pub fn coordinates(&self) -> impl Iterator<Item = ((Mono, usize), Q)> + '_ {
        self.terms.iter().flat_map(|(m, c)| {
            c.c.iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(move |(b, x)| ((m.clone(), b), x.clone()))
        })
    }
}

impl PartialEq for Tp {
    fn eq(&self, o: &Tp) -> bool {
        self.terms == o.terms
    }
}

impl fmt::Debug for Tp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Tp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let vars: Vec<String> = m
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(k, &e)| if e == 1 { format!("u{k}") } else { format!("u{k}^{e}") })
                    .collect();
                if vars.is_empty() { format!("[{c}]") } else { format!("[{c}]*{}", vars.join("*")) }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
