use std::cmp::Reverse;
use std::str::FromStr;
use std::sync::Arc;

use num_traits::{Signed, Zero};
use num_bigint::BigInt;

use super::{certify, well_distributing, Indet, Scheme};
use crate::error::{Error, Result};
use crate::exact_algebra::ball::parse_rational;
use crate::exact_algebra::{
    is_irreducible, AlgebraicInteger, Fe, IntPoly, SplittingField, Tower, DEFAULT_PRECISION_BITS, Q,
};
use crate::exact_matrices::{companion, real_basis, ExactMatrix, RealBasis, Tp};
use crate::spectrum::{
    check_properties_p, class_multiplicities, naive_k, part_scheme_dimension, FactorPart, Regime, SpecEntryJson,
    SpectrumSpec,
};

/// Which construction handles factors outside the trivial regimes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    /// H⊗Y_f with bidiagonal H: minimal lattice dimension
    Minimal,
    /// direct sum of Vandermonde schemes driven by a well distributing matrix
    Naive,
    Auto,
}

impl FromStr for Route {
    type Err = Error;

    fn from_str(s: &str) -> Result<Route> {
        match s {
            "minimal" => Ok(Route::Minimal),
            "naive" => Ok(Route::Naive),
            "auto" => Ok(Route::Auto),
            _ => Err(Error::Parse(format!("unknown route {s:?}; expected minimal, naive or auto"))),
        }
    }
}

/// Values substituted for the formal indeterminates, and working precision.
#[derive(Clone, Debug)]
pub struct NumericParams {
    pub t_values: Vec<Q>,
    pub gamma: Q,
    pub bits: u64,
}

pub const DEFAULT_T: [&str; 6] = ["0.5772156649", "0.6931471806", "0.4342944819", "0.3010299957", "0.7853981634", "0.3678794412"];
pub const DEFAULT_GAMMA: &str = "0.5403023059";

impl Default for NumericParams {
    fn default() -> Self {
        NumericParams {
            t_values: DEFAULT_T.iter().map(|s| parse_rational(s).unwrap()).collect(),
            gamma: parse_rational(DEFAULT_GAMMA).unwrap(),
            bits: DEFAULT_PRECISION_BITS,
        }
    }
}

impl NumericParams {
    /// Value of t_{j+1}; the list is reused with a shift when exhausted.
    pub fn t(&self, j: usize) -> Q {
        let len = self.t_values.len();
        let shift = Q::new(((j / len) as i64).into(), 7.into());
        &self.t_values[j % len] + shift
    }

    fn indet(name: &str, v: &Q) -> Indet {
        Indet { name: name.into(), value: v.to_string() }
    }
}

fn spec_entries(f: &IntPoly, mults: &[usize]) -> Vec<SpecEntryJson> {
    mults
        .iter()
        .enumerate()
        .filter(|(_, &m)| m > 0)
        .map(|(j, &m)| SpecEntryJson { min_poly: f.to_i64(), root_index: j, multiplicity: m })
        .collect()
}

fn merge_entries(a: &[SpecEntryJson], b: &[SpecEntryJson]) -> Vec<SpecEntryJson> {
    let mut out: Vec<SpecEntryJson> = a.to_vec();
    for e in b {
        match out.iter_mut().find(|x| x.min_poly == e.min_poly && x.root_index == e.root_index) {
            Some(x) => x.multiplicity += e.multiplicity,
            None => out.push(e.clone()),
        }
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn finish(
    n: usize,
    tower: &Arc<Tower>,
    polys: Vec<IntPoly>,
    y: ExactMatrix,
    l: ExactMatrix,
    c: ExactMatrix,
    a: ExactMatrix,
    b: ExactMatrix,
    perm: Vec<usize>,
    specs: (Vec<SpecEntryJson>, Vec<SpecEntryJson>),
    provenance: String,
    indets: Vec<Indet>,
) -> Scheme {
    let certificate = certify(&y, &l, n);
    Scheme {
        n,
        s: y.rows,
        tower: tower.clone(),
        polys,
        y,
        l,
        c,
        a,
        b,
        perm,
        a_spec: specs.0,
        b_spec: specs.1,
        provenance,
        indets,
        certificate,
        warnings: vec![],
    }
}

/// Unit lower triangular E with last row (γ, γ², …, γ^{s−1}, 1) and unit
/// upper triangular F with last column (γ, γ², …, γ^{s−1}, 1)ᵀ. The last row
/// of E·F has ℚ-independent entries for formal γ.
fn gamma_factors(t: &Arc<Tower>, s: usize) -> (ExactMatrix, ExactMatrix) {
    let g = |e: u32| Tp::var(t, 0, e);
    let e = ExactMatrix::from_fn(t, s, s, |i, j| {
        if i == s - 1 && j < s - 1 {
            g(j as u32 + 1)
        } else {
            Tp::from_i64(t, (i == j) as i64)
        }
    });
    let f = ExactMatrix::from_fn(t, s, s, |i, j| {
        if j == s - 1 && i < s - 1 {
            g(i as u32 + 1)
        } else {
            Tp::from_i64(t, (i == j) as i64)
        }
    });
    (e, f)
}

/// Scheme with A = kIₙ, B = (k), C = kI_{n+1}.
pub fn build_trivial_integer(k: i64, n: usize, params: &NumericParams) -> Result<Scheme> {
    if k == 0 {
        return Err(Error::Singular("k = 0 gives a singular self-similarity".into()));
    }
    if n == 0 {
        return Err(Error::Invalid("physical dimension must be at least 1".into()));
    }
    let s = n + 1;
    let f = IntPoly::from_i64(&[-k, 1]);
    let t = Tower::rational(params.bits + 64);
    let (e, fm) = gamma_factors(&t, s);
    let l = e.mul(&fm);
    let y = fm.invert()?.mul(&e.invert()?);
    let kk = Fe::from_i64(&t, k);
    let c = ExactMatrix::identity(&t, s).scale(&kk);
    let a = ExactMatrix::identity(&t, n).scale(&kk);
    let b = ExactMatrix::identity(&t, 1).scale(&kk);
    let specs = (spec_entries(&f, &[n]), spec_entries(&f, &[1]));
    let indets = vec![NumericParams::indet("gamma", &params.gamma)];
    Ok(finish(n, &t, vec![f], y, l, c, a, b, (0..s).collect(), specs, format!("trivial-integer(k={k}, n={n})"), indets))
}

/// Scheme for a non-real quadratic λ with λ² = pλ + q: L = H⊗[[1, Re λ], [0, Im λ]],
/// C = I⊗[[0, q], [1, p]], A = I_{n/2}⊗R, B = R, R = [[Re λ, −Im λ], [Im λ, Re λ]].
/// λ is taken with Im λ < 0 so that R is the real block of the conjugate
/// with positive imaginary part.
pub fn build_trivial_quadratic(lambda: &AlgebraicInteger, n: usize, params: &NumericParams) -> Result<Scheme> {
    let f = &lambda.min_poly;
    let c = f.coeffs();
    if f.degree() != 2 || !f.is_monic() {
        return Err(Error::Invalid(format!("{f} is not a monic quadratic")));
    }
    let disc: BigInt = &c[1] * &c[1] - BigInt::from(4) * &c[0];
    if !disc.is_negative() {
        return Err(Error::Invalid(format!("{f} has real roots; use the Vandermonde route")));
    }
    if n == 0 || n % 2 == 1 {
        return Err(Error::Invalid(format!("physical dimension {n} must be even and positive")));
    }
    let m = n / 2;
    let sf = SplittingField::new(&[f.clone()], params.bits)?;
    let t = sf.tower.clone();
    let roots = &sf.roots[0];
    let lo = roots.iter().find(|r| r.im_f64() < 0.0).unwrap().root_index;
    let hi = roots[lo].conj_index.unwrap();
    let (re, im) = crate::exact_matrices::re_im(&sf.values[0][lo], &sf.values[0][hi], sf.i.as_ref().unwrap());
    let one = Fe::one(&t);
    let zero = Fe::zero(&t);
    let nmat = ExactMatrix::from_fe(&t, &[vec![one.clone(), re.clone()], vec![zero.clone(), im.clone()]]);
    let im_inv = im.inv().unwrap();
    let ninv = ExactMatrix::from_fe(&t, &[vec![one.clone(), -&(&re * &im_inv)], vec![zero, im_inv]]);
    let (e, fm) = gamma_factors(&t, m + 1);
    let h = e.mul(&fm);
    let hinv = fm.invert()?.mul(&e.invert()?);
    let l = h.kron(&nmat);
    let y = hinv.kron(&ninv);
    let (p, q) = (-Q::from_integer(c[1].clone()), -Q::from_integer(c[0].clone()));
    let cq = ExactMatrix::from_q(&t, &[vec![Q::zero(), q], vec![Q::from_integer(1.into()), p]]);
    let cm = ExactMatrix::identity(&t, m + 1).kron(&cq);
    let r = ExactMatrix::from_fe(&t, &[vec![re.clone(), -&im], vec![im, re]]);
    let a = ExactMatrix::identity(&t, m).kron(&r);
    let s = n + 2;
    let specs = (spec_entries(f, &[m, m]), spec_entries(f, &[1, 1]));
    let indets = vec![NumericParams::indet("gamma", &params.gamma)];
    let prov = format!("trivial-quadratic({f}, n={n})");
    Ok(finish(n, &t, vec![f.clone()], y, l, cm, a, r, (0..s).collect(), specs, prov, indets))
}

/// Place (class, block) pairs of I_K⊗Y_f-type constructions: physical pairs
/// first, each group ordered by (class, block).
struct Layout {
    y: ExactMatrix,
    l: ExactMatrix,
    a: ExactMatrix,
    b: ExactMatrix,
    perm: Vec<usize>,
    n: usize,
    a_mults: Vec<usize>,
    b_mults: Vec<usize>,
}

fn layout(rb: &RealBasis, d: usize, x: &ExactMatrix, x_inv: &ExactMatrix, k: usize, phys: &[(usize, usize)]) -> Layout {
    let t = &x.t;
    let mut phys = phys.to_vec();
    phys.sort();
    let internal: Vec<(usize, usize)> = (0..rb.classes.len())
        .flat_map(|c| (0..k).map(move |b| (c, b)))
        .filter(|p| !phys.contains(p))
        .collect();
    let mut perm = vec![];
    let mut blocks = vec![];
    let mut a_mults = vec![0; d];
    let mut b_mults = vec![0; d];
    let mut n = 0;
    for (pos, &(c, b)) in phys.iter().chain(&internal).enumerate() {
        let cls = &rb.classes[c];
        let idx: Vec<usize> = (0..cls.size()).map(|j| rb.offsets[c] + j).collect();
        perm.extend(idx.iter().map(|j| b * d + j));
        blocks.push(rb.d.select_rows(&idx).select_cols(&idx));
        let target = if pos < phys.len() { &mut a_mults } else { &mut b_mults };
        for &r in &cls.indices {
            target[r] += 1;
        }
        if pos < phys.len() {
            n += cls.size();
        }
    }
    let (pa, pb) = blocks.split_at(phys.len());
    let a = ExactMatrix::block_diag(t, &pa.iter().collect::<Vec<_>>());
    let b = ExactMatrix::block_diag(t, &pb.iter().collect::<Vec<_>>());
    Layout { y: x.select_cols(&perm), l: x_inv.select_rows(&perm), a, b, perm, n, a_mults, b_mults }
}

/// Physical (class, block) pairs for K copies: class c is physical in l_c
/// blocks, every block gets a physical class, and block 0 keeps an internal
/// class (the lowest class with l_c < K).
pub fn greedy_assignment(l: &[usize], k: usize) -> Result<Vec<(usize, usize)>> {
    let u = l.len();
    if let Some(c) = (0..u).find(|&c| l[c] > k) {
        return Err(Error::Invalid(format!("class {c} has multiplicity {} > K = {k}", l[c])));
    }
    let c0 = (0..u)
        .find(|&c| l[c] < k)
        .ok_or_else(|| Error::Invalid("every class is physical in every block; B would be empty".into()))?;
    let mut used = vec![vec![false; k]; u];
    let mut covered = vec![false; k];
    if let Some(first) = (0..u).filter(|&c| c != c0 && l[c] > 0).max_by_key(|&c| (l[c], Reverse(c))) {
        used[first][0] = true;
        covered[0] = true;
    }
    for c in 0..u {
        let mut need = l[c] - used[c].iter().filter(|&&x| x).count();
        let order: Vec<usize> = (0..k).filter(|&b| !covered[b]).chain((0..k).filter(|&b| covered[b])).collect();
        for b in order {
            if need == 0 {
                break;
            }
            if used[c][b] || (c == c0 && b == 0) {
                continue;
            }
            used[c][b] = true;
            covered[b] = true;
            need -= 1;
        }
        if need > 0 {
            return Err(Error::Invalid(format!("cannot place class {c} in {} blocks", l[c])));
        }
    }
    if let Some(b) = covered.iter().position(|&x| !x) {
        return Err(Error::Invalid(format!("block {b} receives no physical eigenvalue")));
    }
    Ok((0..u).flat_map(|c| (0..k).map(move |b| (c, b))).filter(|&(c, b)| used[c][b]).collect())
}

fn single_part(spec: &SpectrumSpec) -> Result<&FactorPart> {
    match spec.parts.as_slice() {
        [p] => Ok(p),
        _ => Err(Error::Invalid("spectrum mixes minimal polynomials; split it by irreducible factor first".into())),
    }
}

fn general_part(spec: &SpectrumSpec) -> Result<&FactorPart> {
    let p = single_part(spec)?;
    if p.degree() == 1 {
        return Err(Error::Invalid("linear minimal polynomial: use the trivial integer construction".into()));
    }
    if p.is_nonreal_quadratic() {
        return Err(Error::Invalid("non-real quadratic: use the trivial quadratic construction".into()));
    }
    Ok(p)
}

/// K×K bidiagonal H: ones on the diagonal, −t_k on the superdiagonal.
fn bidiagonal(t: &Arc<Tower>, k: usize) -> ExactMatrix {
    ExactMatrix::from_fn(t, k, k, |i, j| {
        if i == j {
            Tp::from_i64(t, 1)
        } else if j == i + 1 {
            Tp::var(t, i, 1).neg()
        } else {
            Tp::zero(t)
        }
    })
}

fn kron_scheme(
    p: &FactorPart,
    k: usize,
    formal_h: bool,
    phys_of: impl Fn(&RealBasis, &[usize]) -> Result<Vec<(usize, usize)>>,
    params: &NumericParams,
    prov: String,
) -> Result<Scheme> {
    let f = &p.f;
    let d = f.degree();
    let sf = SplittingField::new(&[f.clone()], params.bits)?;
    let t = sf.tower.clone();
    let rb = real_basis(f, &sf)?;
    let l: Vec<usize> = rb.classes.iter().map(|c| p.mults[c.rep()]).collect();
    let phys = phys_of(&rb, &l)?;
    let h = if formal_h { bidiagonal(&t, k) } else { ExactMatrix::identity(&t, k) };
    let x = h.kron(&rb.y);
    let x_inv = h.invert()?.kron(&rb.y.invert()?);
    let lay = layout(&rb, d, &x, &x_inv, k, &phys);
    let c = ExactMatrix::identity(&t, k).kron(&companion(&t, f));
    let indets = if formal_h {
        (0..k.saturating_sub(1)).map(|j| NumericParams::indet(&format!("t{}", j + 1), &params.t(j))).collect()
    } else {
        vec![]
    };
    let specs = (spec_entries(f, &lay.a_mults), spec_entries(f, &lay.b_mults));
    Ok(finish(lay.n, &t, vec![f.clone()], lay.y, lay.l, c, lay.a, lay.b, lay.perm, specs, prov, indets))
}

/// Y = (H⊗Y_f)P with the bidiagonal H of size K = M (m < M) or M + 1.
pub fn build_minimal_scheme(spec: &SpectrumSpec, params: &NumericParams) -> Result<Scheme> {
    let p = general_part(spec)?;
    let k = part_scheme_dimension(p).k;
    let prov = format!("minimal({}, K={k})", p.f);
    kron_scheme(p, k, true, |_, l| greedy_assignment(l, k), params, prov)
}

/// The same layout with H = I: K plain copies of the Vandermonde scheme.
/// Some copy then has all of its eigenvalues physical, so it is not generic.
pub fn build_identity_h_scheme(spec: &SpectrumSpec, params: &NumericParams) -> Result<Scheme> {
    let p = general_part(spec)?;
    let k = part_scheme_dimension(p).k;
    let prov = format!("identity-h({}, K={k})", p.f);
    kron_scheme(p, k, false, |_, l| greedy_assignment(l, k), params, prov)
}

/// Direct sum of K Vandermonde schemes; class i is physical in copy j iff
/// the well distributing matrix has a 1 at (i, j). Classes are listed real
/// roots first, then conjugate pairs.
pub fn build_naive_scheme(spec: &SpectrumSpec, params: &NumericParams) -> Result<Scheme> {
    let p = general_part(spec)?;
    let (sorted, l) = class_multiplicities(p);
    let k = naive_k(&l)?;
    let grid = well_distributing(&l, k)?;
    let prov = format!("naive({}, K={k})", p.f);
    kron_scheme(
        p,
        k,
        false,
        |rb, _| {
            let mut phys = vec![];
            for (i, cls) in sorted.iter().enumerate() {
                let c = rb.classes.iter().position(|x| x == cls).unwrap();
                for b in 0..k {
                    if grid.grid[i][b] == 1 {
                        phys.push((c, b));
                    }
                }
            }
            Ok(phys)
        },
        params,
        prov,
    )
}

/// Vandermonde scheme of f with the given roots physical (closed under conjugation).
pub fn build_vandermonde_scheme(f: &IntPoly, physical_roots: &[usize], params: &NumericParams) -> Result<Scheme> {
    if !is_irreducible(f) || !f.is_monic() {
        return Err(Error::Reducible);
    }
    if f.degree() < 2 {
        return Err(Error::Invalid("a Vandermonde scheme needs degree at least 2".into()));
    }
    let d = f.degree();
    let mut mults = vec![0; d];
    for &r in physical_roots {
        if r >= d {
            return Err(Error::Invalid(format!("root index {r} out of range")));
        }
        mults[r] = 1;
    }
    if mults.iter().all(|&m| m == 0) || mults.iter().all(|&m| m == 1) {
        return Err(Error::Invalid("physical roots must be a proper nonempty subset".into()));
    }
    let roots = crate::exact_algebra::isolate_roots(f, params.bits)?;
    if roots.iter().any(|r| r.conj_index.is_some_and(|c| mults[c] != mults[r.root_index])) {
        return Err(Error::Invalid("physical roots must be closed under complex conjugation".into()));
    }
    let p = FactorPart { f: f.clone(), roots, mults };
    let prov = format!("vandermonde({f}, physical={physical_roots:?})");
    kron_scheme(&p, 1, false, |_, l| Ok((0..l.len()).filter(|&c| l[c] == 1).map(|c| (c, 0)).collect()), params, prov)
}

/// Direct sum: lattice 𝓛₁ × 𝓛₂ with coordinates interleaved so that both
/// physical spaces come first.
pub fn direct_sum(s1: &Scheme, s2: &Scheme, bits: u64) -> Result<Scheme> {
    for (k, sc) in [s1, s2].iter().enumerate() {
        if !sc.is_generic() {
            return Err(Error::Certificate(format!("summand {} ({}) is not generic", k + 1, sc.provenance)));
        }
    }
    let mut polys = s1.polys.clone();
    for p in &s2.polys {
        if !polys.contains(p) {
            polys.push(p.clone());
        }
    }
    let sf = SplittingField::new(&polys, bits)?;
    let t = sf.tower.clone();
    let m1 = sf.embedding_of(&s1.tower)?;
    let m2 = sf.embedding_of(&s2.tower)?;
    let off = s1.indets.len();
    let map1 = |m: &ExactMatrix| m.map_tower(&m1);
    let map2 = |m: &ExactMatrix| m.map_tower(&m2).shift_indets(off);
    let (n1, n2, k1, k2) = (s1.n, s2.n, s1.s, s2.s);
    let order: Vec<usize> = (0..n1).chain(k1..k1 + n2).chain(n1..k1).chain(k1 + n2..k1 + k2).collect();
    let y = ExactMatrix::block_diag(&t, &[&map1(&s1.y), &map2(&s2.y)]).select_cols(&order);
    let l = ExactMatrix::block_diag(&t, &[&map1(&s1.l), &map2(&s2.l)]).select_rows(&order);
    let c = ExactMatrix::block_diag(&t, &[&map1(&s1.c), &map2(&s2.c)]);
    let a = ExactMatrix::block_diag(&t, &[&map1(&s1.a), &map2(&s2.a)]);
    let b = ExactMatrix::block_diag(&t, &[&map1(&s1.b), &map2(&s2.b)]);
    let perm = order.iter().map(|&o| if o < k1 { s1.perm[o] } else { k1 + s2.perm[o - k1] }).collect();
    let specs = (merge_entries(&s1.a_spec, &s2.a_spec), merge_entries(&s1.b_spec, &s2.b_spec));
    let indets = s1.indets.iter().chain(&s2.indets).cloned().collect();
    let prov = format!("{} + {}", s1.provenance, s2.provenance);
    let mut sc = finish(n1 + n2, &t, polys, y, l, c, a, b, perm, specs, prov, indets);
    sc.warnings = s1.warnings.iter().chain(&s2.warnings).cloned().collect();
    Ok(sc)
}

/// Split by irreducible factor, build each part, and sum the parts.
pub fn build_scheme_for(spec: &SpectrumSpec, route: Route, params: &NumericParams) -> Result<Scheme> {
    let verdict = check_properties_p(spec)?;
    let mut parts = vec![];
    for p in &spec.parts {
        let single = SpectrumSpec::single(p, spec.bits);
        let sc = match part_scheme_dimension(p).regime {
            Regime::TrivialInteger => {
                let k = -&p.f.coeffs()[0];
                let k: i64 = i64::try_from(&k).map_err(|_| Error::Invalid(format!("eigenvalue {k} out of range")))?;
                build_trivial_integer(k, p.n(), params)?
            }
            Regime::TrivialQuadratic => build_trivial_quadratic(&p.roots[0], p.n(), params)?,
            Regime::General => match route {
                Route::Naive => build_naive_scheme(&single, params)?,
                Route::Minimal | Route::Auto => build_minimal_scheme(&single, params)?,
            },
        };
        if !sc.is_generic() {
            return Err(Error::Certificate(format!("construction {} failed its genericity certificate", sc.provenance)));
        }
        parts.push(sc);
    }
    let mut it = parts.into_iter();
    let mut acc = it.next().ok_or_else(|| Error::Invalid("empty spectrum".into()))?;
    for sc in it {
        acc = direct_sum(&acc, &sc, params.bits)?;
    }
    acc.warnings.extend(verdict.failures.iter().map(|f| {
        format!("properties P fail: {f}; no bounded invariant window exists, point generation will be refused")
    }));
    Ok(acc)
}
