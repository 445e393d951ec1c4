//! Spectra of self-similarities: parsing, properties 𝔓, dimension formulas.

use std::cmp::Ordering;
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_algebra::factor::factor_monic_integral;
use crate::exact_algebra::{
    ball::parse_rational, is_cyclotomic, isolate_roots, modulus_vs_one, qmat, AlgebraicInteger,
    IntPoly, QPoly, Q,
};
use crate::exact_matrices::{root_classes, RootClass};

/// One irreducible factor of the spectrum with the multiplicity of each of
/// its roots (0 for absent conjugates).
#[derive(Clone, Debug)]
pub struct FactorPart {
    pub f: IntPoly,
    pub roots: Vec<AlgebraicInteger>,
    pub mults: Vec<usize>,
}

impl FactorPart {
    pub fn degree(&self) -> usize {
        self.f.degree()
    }

    /// M: the largest multiplicity over all roots of f.
    pub fn max_mult(&self) -> usize {
        *self.mults.iter().max().unwrap()
    }

    /// m: the smallest multiplicity over all roots of f.
    pub fn min_mult(&self) -> usize {
        *self.mults.iter().min().unwrap()
    }

    pub fn n(&self) -> usize {
        self.mults.iter().sum()
    }

    pub fn classes(&self) -> Vec<RootClass> {
        root_classes(&self.roots)
    }

    pub fn is_nonreal_quadratic(&self) -> bool {
        self.degree() == 2 && !self.roots[0].is_real()
    }
}

/// The multiset σ(A), closed under conjugation, grouped by minimal polynomial.
#[derive(Clone, Debug)]
pub struct SpectrumSpec {
    pub parts: Vec<FactorPart>,
    pub bits: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct SpecEntryJson {
    pub min_poly: Vec<i64>,
    pub root_index: usize,
    pub multiplicity: usize,
}

impl SpectrumSpec {
    /// Build from (minimal polynomial, root index, multiplicity) triples.
    /// Repeated triples add up.
    pub fn new(entries: &[(IntPoly, usize, usize)], bits: u64) -> Result<SpectrumSpec> {
        let mut parts: Vec<FactorPart> = vec![];
        for (f, idx, mult) in entries {
            if !f.is_monic() {
                return Err(Error::NotAlgebraicInteger(format!("minimal polynomial {f} is not monic")));
            }
            if f.degree() == 0 {
                return Err(Error::Invalid("minimal polynomial of degree 0".into()));
            }
            if f.coeffs()[0].is_zero() {
                return Err(Error::Singular("eigenvalue 0: A must be non-singular".into()));
            }
            if *mult == 0 {
                continue;
            }
            let pos = match parts.iter().position(|p| &p.f == f) {
                Some(p) => p,
                None => {
                    if !crate::exact_algebra::is_irreducible(f) {
                        return Err(Error::Reducible);
                    }
                    let roots = isolate_roots(f, bits)?;
                    parts.push(FactorPart { f: f.clone(), mults: vec![0; roots.len()], roots });
                    parts.len() - 1
                }
            };
            let p = &mut parts[pos];
            if *idx >= p.roots.len() {
                return Err(Error::Invalid(format!("root index {idx} out of range for {f}")));
            }
            p.mults[*idx] += mult;
        }
        for p in &parts {
            for r in &p.roots {
                if let Some(c) = r.conj_index {
                    if p.mults[c] != p.mults[r.root_index] {
                        return Err(Error::Invalid(format!(
                            "spectrum of a real matrix must be closed under conjugation: root {} of {} has multiplicity {} but its conjugate has {}",
                            r.root_index, p.f, p.mults[r.root_index], p.mults[c]
                        )));
                    }
                }
            }
        }
        if parts.is_empty() {
            return Err(Error::Invalid("empty spectrum".into()));
        }
        parts.sort_by(|a, b| (a.f.degree(), &a.f).cmp(&(b.f.degree(), &b.f)));
        Ok(SpectrumSpec { parts, bits })
    }

    pub fn from_json(text: &str, bits: u64) -> Result<SpectrumSpec> {
        let raw: Vec<SpecEntryJson> = serde_json::from_str(text)?;
        let entries: Vec<_> =
            raw.iter().map(|e| (IntPoly::from_i64(&e.min_poly), e.root_index, e.multiplicity)).collect();
        Self::new(&entries, bits)
    }

    pub fn to_json_entries(&self) -> Vec<SpecEntryJson> {
        let mut out = vec![];
        for p in &self.parts {
            for (j, &m) in p.mults.iter().enumerate() {
                if m > 0 {
                    out.push(SpecEntryJson { min_poly: p.f.to_i64(), root_index: j, multiplicity: m });
                }
            }
        }
        out
    }

    /// Physical dimension n.
    pub fn n(&self) -> usize {
        self.parts.iter().map(|p| p.n()).sum()
    }

    /// The sub-spectrum of a single factor.
    pub fn single(part: &FactorPart, bits: u64) -> SpectrumSpec {
        SpectrumSpec { parts: vec![part.clone()], bits }
    }

    /// Spectrum that shares this one's roots but with other multiplicities.
    pub fn with_mults(&self, mults: Vec<Vec<usize>>) -> SpectrumSpec {
        let parts = self
            .parts
            .iter()
            .zip(mults)
            .map(|(p, m)| FactorPart { mults: m, ..p.clone() })
            .filter(|p| p.n() > 0)
            .collect();
        SpectrumSpec { parts, bits: self.bits }
    }
}

impl fmt::Display for SpectrumSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self
            .parts
            .iter()
            .flat_map(|p| {
                p.roots
                    .iter()
                    .zip(&p.mults)
                    .filter(|(_, &m)| m > 0)
                    .map(move |(r, m)| format!("{}[{}]:{}", p.f, r.label(), m))
            })
            .collect();
        write!(f, "{{{}}}", items.join(", "))
    }
}

/// det(xI − A) by interpolation at n+1 integer points.
pub fn characteristic_polynomial(a: &[Vec<Q>]) -> QPoly {
    let n = a.len();
    let xs: Vec<Q> = (0..=n as i64).map(|k| Q::from_integer(k.into())).collect();
    let ys: Vec<Q> = xs
        .iter()
        .map(|x| {
            let m: qmat::QMat = (0..n)
                .map(|i| (0..n).map(|j| if i == j { x - &a[i][j] } else { -a[i][j].clone() }).collect())
                .collect();
            qmat::det(&m)
        })
        .collect();
    QPoly::interpolate(&xs, &ys)
}

fn eval_matrix_poly(p: &QPoly, a: &[Vec<Q>]) -> qmat::QMat {
    let n = a.len();
    let mut acc = vec![vec![Q::zero(); n]; n];
    for c in p.0.iter().rev() {
        acc = qmat::matmul(&acc, &a.to_vec());
        for (i, row) in acc.iter_mut().enumerate() {
            row[i] += c;
        }
    }
    acc
}

/// Exact spectrum of a rational matrix. Diagonalizability is certified by
/// the squarefree part of χ_A annihilating A (it is then μ_A).
pub fn spectrum_from_matrix(a: &[Vec<Q>], bits: u64) -> Result<SpectrumSpec> {
    let n = a.len();
    if n == 0 || a.iter().any(|r| r.len() != n) {
        return Err(Error::Invalid("matrix must be square and nonempty".into()));
    }
    let chi = characteristic_polynomial(a);
    if chi.0[0].is_zero() {
        return Err(Error::Singular("0 is an eigenvalue: A must be non-singular".into()));
    }
    let radical = chi.divrem(&chi.gcd(&chi.derivative())).0.monic();
    if eval_matrix_poly(&radical, a).iter().flatten().any(|x| !x.is_zero()) {
        return Err(Error::NotDiagonalizable);
    }
    let factors = factor_monic_integral(&chi)?;
    let mut entries = vec![];
    for (f, e) in factors {
        for j in 0..f.degree() {
            entries.push((f.clone(), j, e));
        }
    }
    SpectrumSpec::new(&entries, bits)
}

/// Minimal polynomial over ℚ of a matrix with the given spectrum.
pub fn minimal_polynomial(spec: &SpectrumSpec) -> QPoly {
    spec.parts.iter().fold(QPoly::one(), |acc, p| acc.mul(&p.f.to_q()))
}

pub fn parse_rational_matrix(text: &str) -> Result<Vec<Vec<Q>>> {
    let v: serde_json::Value = serde_json::from_str(text)?;
    let rows = v.as_array().ok_or_else(|| Error::Parse("matrix must be a JSON array of rows".into()))?;
    rows.iter()
        .enumerate()
        .map(|(i, r)| {
            let r = r.as_array().ok_or_else(|| Error::Parse(format!("row {i} is not an array")))?;
            r.iter()
                .enumerate()
                .map(|(j, x)| {
                    let s = match x {
                        serde_json::Value::String(s) => s.clone(),
                        serde_json::Value::Number(k) if k.is_i64() => k.to_string(),
                        _ => return Err(Error::Parse(format!("entry ({i},{j}) must be an integer or a rational string"))),
                    };
                    parse_rational(&s).ok_or_else(|| Error::Parse(format!("entry ({i},{j}) = {s:?} is not rational")))
                })
                .collect()
        })
        .collect()
}

/// Why a root of modulus > 1 violates 𝔓.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PReason {
    NotAnEigenvalue,
    MultiplicityTooSmall,
    NoStrictInequality,
}

#[derive(Clone, Debug, Serialize)]
pub struct PFailure {
    pub min_poly: Vec<i64>,
    pub root_index: usize,
    pub root: String,
    pub reason: PReason,
}

#[derive(Clone, Debug, Serialize)]
pub struct FactorData {
    pub min_poly: Vec<i64>,
    pub degree: usize,
    pub max_mult: usize,
    pub min_mult: usize,
    pub cyclotomic: Option<u64>,
    /// |μ| vs 1 per root, as −1/0/1
    pub modulus_sign: Vec<i8>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PVerdict {
    pub satisfied: bool,
    pub failures: Vec<PFailure>,
    pub factors: Vec<FactorData>,
}

pub fn modulus_signs(part: &FactorPart, bits: u64) -> Result<Vec<Ordering>> {
    if is_cyclotomic(&part.f).is_some() {
        return Ok(vec![Ordering::Equal; part.roots.len()]);
    }
    part.roots.iter().map(|r| modulus_vs_one(r, bits)).collect()
}

/// Properties 𝔓: every conjugate μ with |μ| > 1 is an eigenvalue whose
/// multiplicity is maximal among its conjugates and strictly exceeds some
/// conjugate's multiplicity. Algebraic integrality holds by construction.
pub fn check_properties_p(spec: &SpectrumSpec) -> Result<PVerdict> {
    let mut failures = vec![];
    let mut factors = vec![];
    for p in &spec.parts {
        let signs = modulus_signs(p, spec.bits)?;
        let (big, small) = (p.max_mult(), p.min_mult());
        for (j, s) in signs.iter().enumerate() {
            if *s != Ordering::Greater {
                continue;
            }
            let reason = if p.mults[j] == 0 {
                PReason::NotAnEigenvalue
            } else if p.mults[j] < big {
                PReason::MultiplicityTooSmall
            } else if small == big {
                PReason::NoStrictInequality
            } else {
                continue;
            };
            failures.push(PFailure { min_poly: p.f.to_i64(), root_index: j, root: p.roots[j].label(), reason });
        }
        factors.push(FactorData {
            min_poly: p.f.to_i64(),
            degree: p.degree(),
            max_mult: big,
            min_mult: small,
            cyclotomic: is_cyclotomic(&p.f),
            modulus_sign: signs.iter().map(|o| *o as i8).collect(),
        });
    }
    Ok(PVerdict { satisfied: failures.is_empty(), failures, factors })
}

impl fmt::Display for PFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let why = match self.reason {
            PReason::NotAnEigenvalue => "has modulus > 1 but is not an eigenvalue",
            PReason::MultiplicityTooSmall => "has modulus > 1 but a conjugate has larger multiplicity",
            PReason::NoStrictInequality => "has modulus > 1 but no conjugate has strictly smaller multiplicity",
        };
        write!(f, "root {} (index {}) of {} {why}", self.root, self.root_index, IntPoly::from_i64(&self.min_poly))
    }
}

/// Which construction realizes the minimal dimension for a factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    /// f linear: s = n + 1
    TrivialInteger,
    /// f quadratic with non-real roots: s = n + 2
    TrivialQuadratic,
    /// s = Md if m < M, (M+1)d otherwise
    General,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SchemeDimension {
    pub s: usize,
    pub regime: Regime,
    /// number of elementary blocks: M if m < M, else M + 1
    pub k: usize,
}

fn only_part(spec: &SpectrumSpec) -> Result<&FactorPart> {
    match spec.parts.as_slice() {
        [p] => Ok(p),
        _ => Err(Error::Invalid(format!(
            "spectrum mixes {} minimal polynomials; split it by irreducible factor first",
            spec.parts.len()
        ))),
    }
}

pub fn part_scheme_dimension(p: &FactorPart) -> SchemeDimension {
    let (big, small, d) = (p.max_mult(), p.min_mult(), p.degree());
    let k = if small < big { big } else { big + 1 };
    let regime = if d == 1 {
        Regime::TrivialInteger
    } else if p.is_nonreal_quadratic() {
        Regime::TrivialQuadratic
    } else {
        Regime::General
    };
    // the trivial regimes agree with the formula: n + 1 = (M+1)·1, n + 2 = (M+1)·2
    SchemeDimension { s: k * d, regime, k }
}

/// Smallest lattice dimension of a scheme with self-similarity A whose
/// spectrum lies on one irreducible factor.
pub fn min_scheme_dimension(spec: &SpectrumSpec) -> Result<SchemeDimension> {
    Ok(part_scheme_dimension(only_part(spec)?))
}

/// Per-class multiplicities l_i (real roots, then pairs, canonical order).
pub fn class_multiplicities(p: &FactorPart) -> (Vec<RootClass>, Vec<usize>) {
    let mut classes = p.classes();
    classes.sort_by_key(|c| !c.is_real());
    let l = classes.iter().map(|c| p.mults[c.rep()]).collect();
    (classes, l)
}

/// K = max{M, ⌈Σ l_i / (u − 1)⌉}.
pub fn naive_k(l: &[usize]) -> Result<usize> {
    let u = l.len();
    if u < 2 {
        return Err(Error::Invalid("at least two root classes are needed for the naive construction".into()));
    }
    let total: usize = l.iter().sum();
    Ok((*l.iter().max().unwrap()).max(total.div_ceil(u - 1)))
}

/// s = d·K of the direct-sum-of-Vandermonde-schemes construction.
pub fn naive_scheme_dimension(spec: &SpectrumSpec) -> Result<usize> {
    let p = only_part(spec)?;
    let (_, l) = class_multiplicities(p);
    Ok(p.degree() * naive_k(&l)?)
}

/// Minimal lattice dimension of a cut-and-project set with self-similarity A.
pub fn min_set_dimension(spec: &SpectrumSpec) -> Result<usize> {
    let v = check_properties_p(spec)?;
    if !v.satisfied {
        let why: Vec<String> = v.failures.iter().map(|f| f.to_string()).collect();
        return Err(Error::Certificate(format!("properties P fail: {}", why.join("; "))));
    }
    Ok(spec.parts.iter().map(part_set_dimension).sum())
}

pub fn part_set_dimension(p: &FactorPart) -> usize {
    let (big, small, d) = (p.max_mult(), p.min_mult(), p.degree());
    if is_cyclotomic(&p.f).is_some() && big == small {
        (big + 1) * d
    } else {
        big * d
    }
}

/// Irreducible factors of μ_{A,ℚ} for reporting.
pub fn minimal_polynomial_factors(spec: &SpectrumSpec) -> Vec<IntPoly> {
    spec.parts.iter().map(|p| p.f.clone()).collect()
}

/// Integer spectrum {k: n}.
pub fn integer_spectrum(k: i64, mult: usize, bits: u64) -> Result<SpectrumSpec> {
    SpectrumSpec::new(&[(IntPoly::from_i64(&[-k, 1]), 0, mult)], bits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::cyclotomic;

    const B: u64 = 128;

    fn golden() -> IntPoly {
        IntPoly::from_i64(&[-1, -1, 1])
    }

    fn cubic() -> IntPoly {
        IntPoly::from_i64(&[1, -1, -2, 1])
    }

    fn spec(e: &[(IntPoly, usize, usize)]) -> SpectrumSpec {
        SpectrumSpec::new(e, B).unwrap()
    }

    // golden roots in canonical order: 0 = τ′, 1 = τ
    #[test]
    fn matrix_spectra() {
        let q = |k: i64| Q::from_integer(k.into());
        let s = spectrum_from_matrix(&[vec![q(0), q(1)], vec![q(1), q(1)]], B).unwrap();
        assert_eq!(s.parts.len(), 1);
        assert_eq!(s.parts[0].mults, vec![1, 1]);
        let s = spectrum_from_matrix(&[vec![q(2), q(0)], vec![q(0), q(2)]], B).unwrap();
        assert_eq!(s.parts[0].f, IntPoly::from_i64(&[-2, 1]));
        assert_eq!(s.parts[0].mults, vec![2]);
        assert!(matches!(
            spectrum_from_matrix(&[vec![q(1), q(1)], vec![q(0), q(1)]], B),
            Err(Error::NotDiagonalizable)
        ));
        assert!(matches!(spectrum_from_matrix(&[vec![q(0)]], B), Err(Error::Singular(_))));
        let half = Q::new(1.into(), 2.into());
        assert!(matches!(spectrum_from_matrix(&[vec![half]], B), Err(Error::NotAlgebraicInteger(_))));
    }

    #[test]
    fn conjugation_closure_enforced() {
        assert!(SpectrumSpec::new(&[(IntPoly::from_i64(&[1, 0, 1]), 0, 1)], B).is_err());
        assert!(SpectrumSpec::new(&[(IntPoly::from_i64(&[0, 1]), 0, 1)], B).is_err());
    }

    #[test]
    fn properties_p_examples() {
        assert!(check_properties_p(&spec(&[(golden(), 1, 1)])).unwrap().satisfied);
        let v = check_properties_p(&spec(&[(golden(), 0, 1)])).unwrap();
        assert!(!v.satisfied);
        assert_eq!(v.failures[0].root_index, 1);
        assert_eq!(v.failures[0].reason, PReason::NotAnEigenvalue);
        let f3 = IntPoly::from_i64(&[-3, -1, 1]);
        let v = check_properties_p(&spec(&[(f3.clone(), 0, 1), (f3, 1, 1)])).unwrap();
        assert!(v.failures.iter().all(|f| f.reason == PReason::NoStrictInequality));
        assert_eq!(v.failures.len(), 2);
        let i = IntPoly::from_i64(&[1, 0, 1]);
        assert!(check_properties_p(&spec(&[(i.clone(), 0, 1), (i, 1, 1)])).unwrap().satisfied);
        assert!(!check_properties_p(&integer_spectrum(3, 1, B).unwrap()).unwrap().satisfied);
        assert!(check_properties_p(&integer_spectrum(-1, 2, B).unwrap()).unwrap().satisfied);
    }

    #[test]
    fn p_rejects_other_nonreal_quadratics() {
        // x² − x + 2: roots of modulus √2, always paired with equal multiplicity
        let f = IntPoly::from_i64(&[2, -1, 1]);
        assert!(!check_properties_p(&spec(&[(f.clone(), 0, 1), (f, 1, 1)])).unwrap().satisfied);
        for k in [3, 4, 6] {
            let f = cyclotomic(k);
            assert!(check_properties_p(&spec(&[(f.clone(), 0, 1), (f, 1, 1)])).unwrap().satisfied);
        }
    }

    #[test]
    fn dimension_formulas() {
        let s = spec(&[(golden(), 1, 2), (golden(), 0, 1)]);
        assert_eq!(min_scheme_dimension(&s).unwrap().s, 4);
        assert_eq!(naive_scheme_dimension(&s).unwrap(), 6);
        assert_eq!(min_scheme_dimension(&spec(&[(golden(), 1, 1)])).unwrap().s, 2);
        let c = spec(&[(cubic(), 0, 1), (cubic(), 1, 1), (cubic(), 2, 2)]);
        assert_eq!(min_scheme_dimension(&c).unwrap().s, 6);
        assert_eq!(naive_scheme_dimension(&c).unwrap(), 6);
        let i = IntPoly::from_i64(&[1, 0, 1]);
        let d = min_scheme_dimension(&spec(&[(i.clone(), 0, 1), (i, 1, 1)])).unwrap();
        assert_eq!((d.s, d.regime), (4, Regime::TrivialQuadratic));
        assert_eq!(naive_scheme_dimension(&spec(&[(golden(), 0, 1), (golden(), 1, 1)])).unwrap(), 4);
        assert!(min_scheme_dimension(&spec(&[(golden(), 1, 1), (cubic(), 0, 1)])).is_err());
    }

    #[test]
    fn set_dimension_examples() {
        for n in 1..4 {
            assert_eq!(min_set_dimension(&spec(&[(golden(), 1, n)])).unwrap(), 2 * n);
        }
        let p5 = cyclotomic(5);
        let zeta = isolate_roots(&p5, B).unwrap().into_iter().find(|r| r.im_f64() > 0.9).unwrap();
        let s = spec(&[(p5.clone(), zeta.root_index, 1), (p5, zeta.conj_index.unwrap(), 1)]);
        assert_eq!(min_set_dimension(&s).unwrap(), 4);
        let i = IntPoly::from_i64(&[1, 0, 1]);
        assert_eq!(min_set_dimension(&spec(&[(i.clone(), 0, 1), (i, 1, 1)])).unwrap(), 4);
        assert!(min_set_dimension(&spec(&[(golden(), 0, 1)])).is_err());
    }

    #[test]
    fn randomized_invariants() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let polys = [golden(), cubic(), IntPoly::from_i64(&[-1, 0, -1, 1])];
        for _ in 0..30 {
            let f = &polys[rng.gen_range(0..polys.len())];
            let roots = isolate_roots(f, B).unwrap();
            let mut entries: Vec<(IntPoly, usize, usize)> = vec![];
            for r in &roots {
                if r.conj_index.is_some_and(|c| c < r.root_index) {
                    let m = entries.iter().find(|e| e.1 == r.conj_index.unwrap()).map_or(0, |e| e.2);
                    entries.push((f.clone(), r.root_index, m));
                } else {
                    entries.push((f.clone(), r.root_index, rng.gen_range(0..4)));
                }
            }
            if entries.iter().all(|e| e.2 == 0) {
                continue;
            }
            let s = spec(&entries);
            let d = f.degree();
            let min = min_scheme_dimension(&s).unwrap().s;
            assert_eq!(min % d, 0);
            if let Ok(naive) = naive_scheme_dimension(&s) {
                assert!(min <= naive, "{s}: {min} > {naive}");
            }
            let v = check_properties_p(&s).unwrap();
            entries.reverse();
            assert_eq!(check_properties_p(&spec(&entries)).unwrap().satisfied, v.satisfied);
            let p = &s.parts[0];
            if p.min_mult() == p.max_mult() {
                assert!(!v.satisfied, "equal multiplicities with a root outside the unit circle");
            }
        }
    }

    #[test]
    fn json_roundtrip() {
        let s = SpectrumSpec::from_json(
            r#"[{"min_poly":[-1,-1,1],"root_index":1,"multiplicity":2},{"min_poly":[-1,-1,1],"root_index":0,"multiplicity":1}]"#,
            B,
        )
        .unwrap();
        assert_eq!(s.parts[0].mults, vec![1, 2]);
        let back = serde_json::to_string(&s.to_json_entries()).unwrap();
        assert_eq!(SpectrumSpec::from_json(&back, B).unwrap().parts[0].mults, vec![1, 2]);
        assert!(SpectrumSpec::from_json("[{\"min_poly\":[1]}]", B).is_err());
        let m = parse_rational_matrix(r#"[["0","1"],[1,"3/2"]]"#).unwrap();
        assert_eq!(m[1][1], Q::new(3.into(), 2.into()));
    }
}
