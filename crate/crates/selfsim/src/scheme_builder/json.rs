//! Scheme files: exact matrices as nested arrays of sparse entries, each
//! entry a list of [monomial exponents, tower coefficients] pairs.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{certify, CertificateSummary, Indet, Scheme};
use crate::error::{Error, Result};
use crate::exact_algebra::ball::parse_rational;
use crate::exact_algebra::{isolate_roots, Fe, IntPoly, Tower, Q};
use crate::exact_matrices::{ExactMatrix, Tp};
use crate::spectrum::SpecEntryJson;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LevelJson {
    /// integer polynomial the generator is a root of
    pub source: Vec<i64>,
    pub root_index: usize,
    /// minimal polynomial over the previous levels, lowest degree first, monic term omitted
    pub minpoly: Vec<Vec<String>>,
}

pub type EntryJson = Vec<(Vec<u32>, Vec<String>)>;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SchemeJson {
    pub n: usize,
    pub s: usize,
    pub precision_bits: u64,
    pub tower: Vec<LevelJson>,
    pub polys: Vec<Vec<i64>>,
    /// generator names used in entries: a1, a2, … for tower levels, u0, u1, … for indeterminates
    pub indets: Vec<Indet>,
    #[serde(rename = "Y")]
    pub y: Vec<Vec<EntryJson>>,
    #[serde(rename = "L")]
    pub l: Vec<Vec<EntryJson>>,
    /// integers; rational strings are accepted on load so that audits can reject them
    #[serde(rename = "C")]
    pub c: Vec<Vec<Value>>,
    #[serde(rename = "A")]
    pub a: Vec<Vec<EntryJson>>,
    #[serde(rename = "B")]
    pub b: Vec<Vec<EntryJson>>,
    #[serde(rename = "P")]
    pub perm: Vec<usize>,
    #[serde(rename = "A_spec")]
    pub a_spec: Vec<SpecEntryJson>,
    #[serde(rename = "B_spec")]
    pub b_spec: Vec<SpecEntryJson>,
    pub provenance: String,
    pub certificate: CertificateSummary,
    #[serde(default)]
    pub warnings: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub audit: Option<Value>,
    /// run settings that produced the file
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub config: Option<Value>,
}

fn q_strings(c: &[Q]) -> Vec<String> {
    let last = c.iter().rposition(|x| !num_traits::Zero::is_zero(x)).map_or(0, |i| i + 1);
    c[..last].iter().map(|x| x.to_string()).collect()
}

fn parse_q(s: &str) -> Result<Q> {
    parse_rational(s).ok_or_else(|| Error::Parse(format!("{s:?} is not a rational number")))
}

fn fe_from(t: &Arc<Tower>, c: &[String]) -> Result<Fe> {
    if c.len() > t.dim() {
        return Err(Error::Parse(format!("coefficient vector longer than the tower degree {}", t.dim())));
    }
    let mut v = Fe::zero(t);
    for (k, s) in c.iter().enumerate() {
        v.c[k] = parse_q(s)?;
    }
    Ok(v)
}

fn matrix_to_json(m: &ExactMatrix) -> Vec<Vec<EntryJson>> {
    (0..m.rows)
        .map(|i| {
            (0..m.cols)
                .map(|j| m.get(i, j).terms.iter().map(|(mono, c)| (mono.clone(), q_strings(&c.c))).collect())
                .collect()
        })
        .collect()
}

fn matrix_from_json(t: &Arc<Tower>, rows: &[Vec<EntryJson>], name: &str) -> Result<ExactMatrix> {
    let r = rows.len();
    let c = rows.first().map_or(0, |x| x.len());
    if rows.iter().any(|x| x.len() != c) {
        return Err(Error::Parse(format!("matrix {name} is ragged")));
    }
    let mut m = ExactMatrix::zeros(t, r, c);
    for (i, row) in rows.iter().enumerate() {
        for (j, entry) in row.iter().enumerate() {
            let mut terms = BTreeMap::new();
            for (mono, coeffs) in entry {
                let mut mono = mono.clone();
                while mono.last() == Some(&0) {
                    mono.pop();
                }
                let v = fe_from(t, coeffs).map_err(|e| Error::Parse(format!("{name}[{i}][{j}]: {e}")))?;
                if !v.is_zero() {
                    terms.insert(mono, v);
                }
            }
            m.set(i, j, Tp { t: t.clone(), terms });
        }
    }
    Ok(m)
}

impl SchemeJson {
    pub fn from_scheme(sc: &Scheme) -> SchemeJson {
        let tower = sc
            .tower
            .levels()
            .iter()
            .map(|lv| LevelJson {
                source: lv.source.to_i64(),
                root_index: lv.root_index,
                minpoly: lv.minpoly.iter().map(|c| q_strings(c)).collect(),
            })
            .collect();
        let c = (0..sc.s)
            .map(|i| {
                (0..sc.s)
                    .map(|j| match sc.c.get(i, j).as_rational() {
                        Some(x) if x.is_integer() => match i64::try_from(x.to_integer()) {
                            Ok(k) => Value::from(k),
                            Err(_) => Value::from(x.to_string()),
                        },
                        Some(x) => Value::from(x.to_string()),
                        None => Value::from(sc.c.get(i, j).to_string()),
                    })
                    .collect()
            })
            .collect();
        SchemeJson {
            n: sc.n,
            s: sc.s,
            precision_bits: sc.tower.bits(),
            tower,
            polys: sc.polys.iter().map(|p| p.to_i64()).collect(),
            indets: sc.indets.clone(),
            y: matrix_to_json(&sc.y),
            l: matrix_to_json(&sc.l),
            c,
            a: matrix_to_json(&sc.a),
            b: matrix_to_json(&sc.b),
            perm: sc.perm.clone(),
            a_spec: sc.a_spec.clone(),
            b_spec: sc.b_spec.clone(),
            provenance: sc.provenance.clone(),
            certificate: sc.certificate.summary(),
            warnings: sc.warnings.clone(),
            audit: None,
            config: None,
        }
    }

    /// Rebuild the tower from its recorded levels and re-derive the certificate.
    pub fn to_scheme(&self) -> Result<Scheme> {
        let bits = self.precision_bits;
        let mut t = Tower::rational(bits);
        for (k, lv) in self.tower.iter().enumerate() {
            let source = IntPoly::from_i64(&lv.source);
            let roots = isolate_roots(&source, bits)?;
            let emb = roots
                .get(lv.root_index)
                .ok_or_else(|| Error::Parse(format!("tower level {k}: root index out of range")))?
                .approx
                .clone();
            let mut mp: Vec<Fe> = lv.minpoly.iter().map(|c| fe_from(&t, c)).collect::<Result<_>>()?;
            mp.push(Fe::one(&t));
            t = t.adjoin(&mp, source, lv.root_index, emb);
        }
        let y = matrix_from_json(&t, &self.y, "Y")?;
        let l = matrix_from_json(&t, &self.l, "L")?;
        let a = matrix_from_json(&t, &self.a, "A")?;
        let b = matrix_from_json(&t, &self.b, "B")?;
        let c = ExactMatrix::from_q(
            &t,
            &self
                .c
                .iter()
                .enumerate()
                .map(|(i, row)| {
                    row.iter()
                        .enumerate()
                        .map(|(j, v)| match v {
                            Value::Number(k) if k.is_i64() => Ok(Q::from_integer(k.as_i64().unwrap().into())),
                            Value::String(s) => parse_q(s),
                            _ => Err(Error::Parse(format!("C[{i}][{j}] must be an integer"))),
                        })
                        .collect::<Result<Vec<Q>>>()
                })
                .collect::<Result<Vec<_>>>()?,
        );
        let (n, s) = (self.n, self.s);
        let shapes = [(&y, s, "Y"), (&l, s, "L"), (&c, s, "C"), (&a, n, "A"), (&b, s.saturating_sub(n), "B")];
        if n > s || self.perm.len() != s {
            return Err(Error::Parse(format!("inconsistent dimensions n = {n}, s = {s}")));
        }
        for (m, k, name) in shapes {
            if m.rows != k || m.cols != k {
                return Err(Error::Parse(format!("{name} is {}×{}, expected {k}×{k}", m.rows, m.cols)));
            }
        }
        let certificate = certify(&y, &l, self.n);
        Ok(Scheme {
            n: self.n,
            s: self.s,
            tower: t,
            polys: self.polys.iter().map(|p| IntPoly::from_i64(p)).collect(),
            y,
            l,
            c,
            a,
            b,
            perm: self.perm.clone(),
            a_spec: self.a_spec.clone(),
            b_spec: self.b_spec.clone(),
            provenance: self.provenance.clone(),
            indets: self.indets.clone(),
            certificate,
            warnings: self.warnings.clone(),
        })
    }
}

pub fn save_scheme(sc: &Scheme) -> Result<String> {
    Ok(serde_json::to_string_pretty(&SchemeJson::from_scheme(sc))?)
}

pub fn load_scheme(text: &str) -> Result<Scheme> {
    serde_json::from_str::<SchemeJson>(text)?.to_scheme()
}
