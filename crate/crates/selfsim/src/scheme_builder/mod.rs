//! Generic cut-and-project schemes with a prescribed self-similarity:
//! Vandermonde schemes, trivial constructions, direct sums, the minimal
//! H⊗Y_f construction, certificates and the intertwining check.

mod construct;
mod json;
mod well;

use std::sync::Arc;

use serde::Serialize;

pub use construct::{
    build_identity_h_scheme, build_minimal_scheme, build_naive_scheme, build_scheme_for, build_trivial_integer,
    build_trivial_quadratic, build_vandermonde_scheme, direct_sum, greedy_assignment, NumericParams, Route, DEFAULT_GAMMA,
    DEFAULT_T,
};
pub use json::{load_scheme, save_scheme, SchemeJson};
pub use well::{is_well_distributing, min_feasible_k_brute, well_distributing, WellDistributingMatrix};

use crate::exact_algebra::{factor::factor_q_poly, IntPoly, QPoly, Tower, Q};
use crate::exact_matrices::{
    rational_left_annihilator, rational_solutions, rational_vectors_in_span, ExactMatrix, NumericMatrix, Tp,
};
use crate::spectrum::{characteristic_polynomial, SpecEntryJson};

/// Beyond these sizes the independent span recheck is skipped.
pub const TOWER_DEGREE_CAP: usize = 16;
pub const MATRIX_SIZE_CAP: usize = 24;

/// A formal indeterminate of the construction and the value substituted for
/// it when the scheme is realized numerically.
#[derive(Clone, Debug, PartialEq, Serialize, serde::Deserialize)]
pub struct Indet {
    pub name: String,
    pub value: String,
}

/// Evidence for genericity. Each list holds rational witnesses of failure;
/// all three empty means generic.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Certificate {
    /// r ∈ ℚ^s with L₁r = 0, i.e. r ∈ span(Y₂): lattice points with zero physical image
    pub degenerate: Vec<Vec<Q>>,
    /// r ∈ ℚ^s with L₂r = 0, i.e. r ∈ span(Y₁)
    pub periodic: Vec<Vec<Q>>,
    /// q ∈ ℚ^s with qᵀY₁ = 0; such q make π⊥(𝓛) lie in a proper closed subgroup
    pub reducible: Vec<Vec<Q>>,
    /// whether the left-kernel computation on Y₁ and Y₂ agreed; None when skipped by the size cap
    pub recheck: Option<bool>,
}

impl Certificate {
    pub fn nondegenerate(&self) -> bool {
        self.degenerate.is_empty()
    }

    pub fn aperiodic(&self) -> bool {
        self.periodic.is_empty()
    }

    pub fn irreducible(&self) -> bool {
        self.reducible.is_empty()
    }

    pub fn is_generic(&self) -> bool {
        self.nondegenerate() && self.aperiodic() && self.irreducible() && self.recheck != Some(false)
    }

    pub fn summary(&self) -> CertificateSummary {
        let fmt = |v: &Vec<Vec<Q>>| v.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
        CertificateSummary {
            generic: self.is_generic(),
            nondegenerate: self.nondegenerate(),
            aperiodic: self.aperiodic(),
            irreducible: self.irreducible(),
            recheck: self.recheck,
            witnesses_degenerate: fmt(&self.degenerate),
            witnesses_periodic: fmt(&self.periodic),
            witnesses_reducible: fmt(&self.reducible),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, serde::Deserialize)]
pub struct CertificateSummary {
    pub generic: bool,
    pub nondegenerate: bool,
    pub aperiodic: bool,
    pub irreducible: bool,
    pub recheck: Option<bool>,
    pub witnesses_degenerate: Vec<Vec<String>>,
    pub witnesses_periodic: Vec<Vec<String>>,
    pub witnesses_reducible: Vec<Vec<String>>,
}

/// A cut-and-project scheme (𝓛 = Lℤ^s ⊂ ℝ^s, ℝ^n) with self-similarity A:
/// blockdiag(A, B)·L = L·C, equivalently C·Y = Y·blockdiag(A, B) for Y = L⁻¹.
#[derive(Clone, Debug)]
pub struct Scheme {
    pub n: usize,
    pub s: usize,
    pub tower: Arc<Tower>,
    /// minimal polynomials whose splitting field is `tower`
    pub polys: Vec<IntPoly>,
    pub y: ExactMatrix,
    pub l: ExactMatrix,
    pub c: ExactMatrix,
    /// exact real quasidiagonal forms
    pub a: ExactMatrix,
    pub b: ExactMatrix,
    /// column j of Y is column perm[j] of the unpermuted construction
    pub perm: Vec<usize>,
    pub a_spec: Vec<SpecEntryJson>,
    pub b_spec: Vec<SpecEntryJson>,
    pub provenance: String,
    pub indets: Vec<Indet>,
    pub certificate: Certificate,
    pub warnings: Vec<String>,
}

impl Scheme {
    pub fn y1(&self) -> ExactMatrix {
        self.y.select_cols(&(0..self.n).collect::<Vec<_>>())
    }

    pub fn y2(&self) -> ExactMatrix {
        self.y.select_cols(&(self.n..self.s).collect::<Vec<_>>())
    }

    pub fn indet_values(&self) -> Vec<Q> {
        self.indets
            .iter()
            .map(|x| crate::exact_algebra::ball::parse_rational(&x.value).expect("indeterminate values are rational"))
            .collect()
    }

    /// L with the indeterminates replaced by their recorded values.
    pub fn l_numeric(&self) -> NumericMatrix {
        self.l.numeric(&self.indet_values())
    }

    pub fn a_numeric(&self) -> NumericMatrix {
        self.a.numeric(&[])
    }

    pub fn b_numeric(&self) -> NumericMatrix {
        self.b.numeric(&[])
    }

    /// C as an integer matrix, if it is one.
    pub fn c_integer(&self) -> Option<Vec<Vec<num_bigint::BigInt>>> {
        let q = self.c.to_rational()?;
        q.iter()
            .map(|r| r.iter().map(|x| x.is_integer().then(|| x.to_integer())).collect())
            .collect()
    }

    pub fn is_generic(&self) -> bool {
        self.certificate.is_generic()
    }

    pub fn recompute_certificate(&mut self) {
        self.certificate = certify(&self.y, &self.l, self.n);
    }
}

fn rows_of(m: &ExactMatrix, rows: std::ops::Range<usize>) -> Vec<Vec<Tp>> {
    rows.map(|i| (0..m.cols).map(|j| m.get(i, j).clone()).collect()).collect()
}

/// Genericity evidence from exact linear algebra.
///
/// With L·Y = I the rows of L₁ span the left kernel of Y₂ and the rows of L₂
/// that of Y₁, so rational points of span(Y₂), span(Y₁) are the rational
/// solutions of L₁r = 0, L₂r = 0. Irreducibility uses the whole of Y₁: the
/// rational q with qᵀY₁ = 0 are exactly the q for which qᵀy vanishes on every
/// y ∈ span(Y₁). When the sizes allow, the left kernels are recomputed
/// independently by elimination on Y₁ and Y₂.
pub fn certify(y: &ExactMatrix, l: &ExactMatrix, n: usize) -> Certificate {
    let s = y.rows;
    let degenerate = rational_solutions(&rows_of(l, 0..n), s);
    let periodic = rational_solutions(&rows_of(l, n..s), s);
    let y1 = y.select_cols(&(0..n).collect::<Vec<_>>());
    let reducible = rational_left_annihilator(&y1);
    let recheck = (y.t.dim() <= TOWER_DEGREE_CAP && s <= MATRIX_SIZE_CAP).then(|| {
        let y2 = y.select_cols(&(n..s).collect::<Vec<_>>());
        rational_vectors_in_span(&y2).is_empty() == degenerate.is_empty()
            && rational_vectors_in_span(&y1).is_empty() == periodic.is_empty()
    });
    Certificate { degenerate, periodic, reducible, recheck }
}

/// Outcome of the exact intertwining audit.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct AbcReport {
    pub passed: bool,
    /// C·Y − Y·blockdiag(A, B) = 0
    pub eq_abc_y: bool,
    /// blockdiag(A, B)·L − L·C = 0
    pub eq_abc_l: bool,
    /// first nonzero residual entry, if any
    pub residual_at: Option<(usize, usize)>,
    pub l_inverts_y: bool,
    pub c_integral: bool,
    /// μ_{A,ℚ} = μ_{B,ℚ} = μ_C
    pub minpolys_equal: bool,
    /// χ_C = χ_A·χ_B by multiplicities
    pub charpoly_split: bool,
    pub messages: Vec<String>,
}

fn annihilates(p: &QPoly, m: &ExactMatrix) -> bool {
    m.rows == 0 || m.eval_poly(p).is_zero()
}

/// μ_M = g exactly: g annihilates M and no g/f_i does.
fn minpoly_is(g: &QPoly, factors: &[QPoly], m: &ExactMatrix) -> bool {
    annihilates(g, m) && factors.iter().all(|f| !annihilates(&g.divrem(f).0, m))
}

pub fn verify_eq_abc(sc: &Scheme) -> AbcReport {
    let mut messages = vec![];
    let t = &sc.tower;
    let d = ExactMatrix::block_diag(t, &[&sc.a, &sc.b]);
    let (s, n) = (sc.s, sc.n);
    let shapes_ok = [&sc.y, &sc.l, &sc.c].iter().all(|m| m.rows == s && m.cols == s)
        && sc.a.rows == n
        && sc.b.rows == s - n;
    if !shapes_ok {
        return AbcReport {
            passed: false,
            eq_abc_y: false,
            eq_abc_l: false,
            residual_at: None,
            l_inverts_y: false,
            c_integral: false,
            minpolys_equal: false,
            charpoly_split: false,
            messages: vec!["matrix shapes are inconsistent with (n, s)".into()],
        };
    }
    let lhs = sc.c.mul(&sc.y);
    let rhs = sc.y.mul(&d);
    let res_y = lhs.first_difference(&rhs);
    let res_l = d.mul(&sc.l).first_difference(&sc.l.mul(&sc.c));
    if let Some((i, j)) = res_y {
        messages.push(format!("C·Y − Y·blockdiag(A,B) is nonzero at ({i},{j})"));
    }
    if let Some((i, j)) = res_l {
        messages.push(format!("blockdiag(A,B)·L − L·C is nonzero at ({i},{j})"));
    }
    let l_inverts_y = sc.l.mul(&sc.y) == ExactMatrix::identity(t, s);
    if !l_inverts_y {
        messages.push("L·Y ≠ I".into());
    }
    let c_int = sc.c_integer();
    if c_int.is_none() {
        messages.push("C is not an integer matrix".into());
    }
    let (mut minpolys_equal, mut charpoly_split) = (false, false);
    if let Some(cq) = sc.c.to_rational() {
        let chi = characteristic_polynomial(&cq);
        let factors = factor_q_poly(&chi);
        let g = factors.iter().fold(QPoly::one(), |acc, (f, _)| acc.mul(f));
        let fs: Vec<QPoly> = factors.iter().map(|(f, _)| f.clone()).collect();
        minpolys_equal = minpoly_is(&g, &fs, &sc.c) && minpoly_is(&g, &fs, &sc.a) && minpoly_is(&g, &fs, &sc.b);
        if !minpolys_equal {
            messages.push("minimal polynomials of A, B, C differ".into());
        }
        charpoly_split = charpoly_matches(&factors, &sc.a_spec, &sc.b_spec);
        if !charpoly_split {
            messages.push("σ(C) ≠ σ(A) ∪ σ(B) with multiplicities".into());
        }
    }
    let eq_abc_y = res_y.is_none();
    let eq_abc_l = res_l.is_none();
    AbcReport {
        passed: eq_abc_y && eq_abc_l && l_inverts_y && c_int.is_some() && minpolys_equal && charpoly_split,
        eq_abc_y,
        eq_abc_l,
        residual_at: res_y.or(res_l),
        l_inverts_y,
        c_integral: c_int.is_some(),
        minpolys_equal,
        charpoly_split,
        messages,
    }
}

fn charpoly_matches(factors: &[(QPoly, usize)], a: &[SpecEntryJson], b: &[SpecEntryJson]) -> bool {
    let mut count = std::collections::BTreeMap::<(Vec<i64>, usize), usize>::new();
    for e in a.iter().chain(b) {
        *count.entry((e.min_poly.clone(), e.root_index)).or_default() += e.multiplicity;
    }
    let mut expect = std::collections::BTreeMap::new();
    for (f, e) in factors {
        let Some(fi) = IntPoly::from_q(f) else { return false };
        for j in 0..fi.degree() {
            expect.insert((fi.to_i64(), j), *e);
        }
    }
    count.retain(|_, v| *v > 0);
    count == expect
}

/// Report for a scheme: intertwining audit plus a fresh genericity check.
#[derive(Clone, Debug, Serialize)]
pub struct AuditReport {
    pub passed: bool,
    pub abc: AbcReport,
    pub certificate: CertificateSummary,
}

pub fn audit(sc: &Scheme) -> AuditReport {
    let abc = verify_eq_abc(sc);
    let cert = certify(&sc.y, &sc.l, sc.n);
    AuditReport { passed: abc.passed && cert.is_generic(), abc, certificate: cert.summary() }
}

#[cfg(test)]
mod tests;
