//! Windows, cut-and-project sets Σ(Ω) = {π∥(Lr) : r ∈ ℤˢ, π⊥(Lr) ∈ Ω} and
//! their finite-scale checks.
//!
//! B is produced in real quasidiagonal form (1×1 real blocks, 2×2 blocks
//! [[a, b], [−b, a]]), so its eigenbasis is the coordinate basis of the
//! internal space and windows are products of intervals and disks directly in
//! internal coordinates.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_algebra::ball::{q_to_decimal, q_to_f64};
use crate::exact_algebra::{isolate_roots, modulus_vs_one, CBall, IntPoly, Q};
use crate::exact_matrices::NumericMatrix;
use crate::scheme_builder::Scheme;

/// Undecided boundary points tolerated before generation gives up.
pub const DEFAULT_FLAG_BUDGET: usize = 256;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum WindowBlock {
    /// lo ≤ x*_i ≤ hi
    Interval {
        index: usize,
        #[serde(with = "qstr")]
        lo: Q,
        #[serde(with = "qstr")]
        hi: Q,
    },
    /// x*_i² + x*_{i+1}² ≤ radius²
    Disk {
        index: usize,
        #[serde(with = "qstr")]
        radius: Q,
    },
}

impl WindowBlock {
    fn index(&self) -> usize {
        match self {
            WindowBlock::Interval { index, .. } | WindowBlock::Disk { index, .. } => *index,
        }
    }
}

/// Rationals as "p/q" strings.
mod qstr {
    use super::Q;
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Q, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&q.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
        let text = String::deserialize(d)?;
        crate::exact_algebra::ball::parse_rational(&text).ok_or_else(|| D::Error::custom(format!("bad rational {text:?}")))
    }
}

/// Closed window Ω ⊂ ℝ^{s−n}: a product of intervals and disks.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WindowSpec {
    pub dim: usize,
    pub blocks: Vec<WindowBlock>,
    #[serde(with = "qstr")]
    pub scale: Q,
}

fn q_f64_bounds(q: &Q) -> (f64, f64) {
    let v = q_to_f64(q);
    let e = v.abs() * f64::EPSILON * 2.0 + f64::MIN_POSITIVE;
    (v - e, v + e)
}

/// Certified verdict of a membership test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Membership {
    Inside,
    Outside,
    Undecided,
}

fn combine(a: Membership, b: Membership) -> Membership {
    use Membership::*;
    match (a, b) {
        (Outside, _) | (_, Outside) => Outside,
        (Inside, Inside) => Inside,
        _ => Undecided,
    }
}

impl WindowSpec {
    /// Window with explicit blocks; blocks must tile 0..dim in order.
    pub fn new(dim: usize, blocks: Vec<WindowBlock>, scale: Q) -> Result<WindowSpec> {
        let mut next = 0;
        for b in &blocks {
            if b.index() != next {
                return Err(Error::Invalid(format!("window blocks must cover coordinates in order (expected {next})")));
            }
            next += match b {
                WindowBlock::Interval { lo, hi, .. } => {
                    if lo > hi {
                        return Err(Error::Invalid("empty interval in window".into()));
                    }
                    1
                }
                WindowBlock::Disk { radius, .. } => {
                    if radius.is_negative() {
                        return Err(Error::Invalid("negative disk radius".into()));
                    }
                    2
                }
            };
        }
        if next != dim {
            return Err(Error::Invalid(format!("window blocks cover {next} coordinates, expected {dim}")));
        }
        Ok(WindowSpec { dim, blocks, scale })
    }

    /// Inclusion test with a per-coordinate absolute error bound (f64 fast path).
    fn test_f64(&self, y: &[f64], err: &[f64]) -> Membership {
        let mut m = Membership::Inside;
        for b in &self.blocks {
            let v = match b {
                WindowBlock::Interval { index, lo, hi } => {
                    let (x, e) = (y[*index], err[*index]);
                    let (lo_lo, lo_hi) = q_f64_bounds(lo);
                    let (hi_lo, hi_hi) = q_f64_bounds(hi);
                    if x - e >= lo_hi && x + e <= hi_lo {
                        Membership::Inside
                    } else if x + e < lo_lo || x - e > hi_hi {
                        Membership::Outside
                    } else {
                        Membership::Undecided
                    }
                }
                WindowBlock::Disk { index, radius } => {
                    let (a, b) = (y[*index], y[*index + 1]);
                    let (ea, eb) = (err[*index], err[*index + 1]);
                    let r2 = a * a + b * b;
                    let e2 = 2.0 * (a.abs() * ea + b.abs() * eb) + ea * ea + eb * eb + 4.0 * f64::EPSILON * r2;
                    let (rl, rh) = q_f64_bounds(&(radius * radius));
                    if r2 + e2 <= rl {
                        Membership::Inside
                    } else if r2 - e2 > rh {
                        Membership::Outside
                    } else {
                        Membership::Undecided
                    }
                }
            };
            m = combine(m, v);
            if m == Membership::Outside {
                break;
            }
        }
        m
    }

    /// Inclusion test on certified balls.
    fn test_balls(&self, y: &[CBall]) -> Membership {
        let mut m = Membership::Inside;
        for b in &self.blocks {
            let v = match b {
                WindowBlock::Interval { index, lo, hi } => {
                    let (a, c) = y[*index].re_interval();
                    if &a >= lo && &c <= hi {
                        Membership::Inside
                    } else if &c < lo || &a > hi {
                        Membership::Outside
                    } else {
                        Membership::Undecided
                    }
                }
                WindowBlock::Disk { index, radius } => {
                    let (a0, a1) = y[*index].re_interval();
                    let (b0, b1) = y[*index + 1].re_interval();
                    let sq = |l: &Q, h: &Q| {
                        let lo = if l.is_negative() && h.is_positive() { Q::zero() } else { (l * l).min(h * h) };
                        (lo, (l * l).max(h * h))
                    };
                    let (xa, ya) = sq(&a0, &a1);
                    let (xb, yb) = sq(&b0, &b1);
                    let r2 = radius * radius;
                    if ya + yb <= r2 {
                        Membership::Inside
                    } else if xa + xb > r2 {
                        Membership::Outside
                    } else {
                        Membership::Undecided
                    }
                }
            };
            m = combine(m, v);
        }
        m
    }

    /// Closed-window test with tolerance, for sampled points.
    pub fn contains(&self, y: &[f64], tol: f64) -> bool {
        self.blocks.iter().all(|b| match b {
            WindowBlock::Interval { index, lo, hi } => {
                y[*index] >= q_to_f64(lo) - tol && y[*index] <= q_to_f64(hi) + tol
            }
            WindowBlock::Disk { index, radius } => {
                y[*index].hypot(y[*index + 1]) <= q_to_f64(radius) + tol
            }
        })
    }

    /// Map a point of the unit cube [0,1]^dim onto the window (area-uniform on disks).
    pub fn sample(&self, u: &[f64]) -> Vec<f64> {
        let mut y = vec![0.0; self.dim];
        for b in &self.blocks {
            match b {
                WindowBlock::Interval { index, lo, hi } => {
                    let (l, h) = (q_to_f64(lo), q_to_f64(hi));
                    y[*index] = l + (h - l) * u[*index];
                }
                WindowBlock::Disk { index, radius } => {
                    let r = q_to_f64(radius) * u[*index].sqrt();
                    let th = std::f64::consts::TAU * u[*index + 1];
                    y[*index] = r * th.cos();
                    y[*index + 1] = r * th.sin();
                }
            }
        }
        y
    }

    /// Axis-aligned bounding box of the window.
    pub fn bounding_box(&self) -> Vec<(f64, f64)> {
        let mut bb = vec![(0.0, 0.0); self.dim];
        for b in &self.blocks {
            match b {
                WindowBlock::Interval { index, lo, hi } => bb[*index] = (q_to_f64(lo), q_to_f64(hi)),
                WindowBlock::Disk { index, radius } => {
                    let r = q_to_f64(radius);
                    bb[*index] = (-r, r);
                    bb[*index + 1] = (-r, r);
                }
            }
        }
        bb
    }
}

/// Window of the given scale adapted to the blocks of B: [−scale, scale] for
/// real eigenvalues, a disk of radius `scale` for conjugate pairs. Each block of
/// B acts as multiplication by β (real) or |β|·rotation, so |β| ≤ 1 makes it
/// invariant.
pub fn build_window(sc: &Scheme, scale: &Q) -> Result<WindowSpec> {
    if scale.is_negative() {
        return Err(Error::Invalid("window scale must be nonnegative".into()));
    }
    let bits = sc.tower.bits();
    for e in &sc.b_spec {
        let f = IntPoly::from_i64(&e.min_poly);
        let roots = isolate_roots(&f, bits)?;
        let mu = &roots[e.root_index];
        if modulus_vs_one(mu, bits)? == Ordering::Greater {
            return Err(Error::NoInvariantWindow(mu.label()));
        }
    }
    let dim = sc.s - sc.n;
    let mut blocks = vec![];
    let mut i = 0;
    while i < dim {
        if i + 1 < dim && !sc.b.get(i, i + 1).is_zero() {
            blocks.push(WindowBlock::Disk { index: i, radius: scale.clone() });
            i += 2;
        } else {
            blocks.push(WindowBlock::Interval { index: i, lo: -scale.clone(), hi: scale.clone() });
            i += 1;
        }
    }
    WindowSpec::new(dim, blocks, scale.clone())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: Vec<f64>,
    pub x_star: Vec<f64>,
    /// absolute error bound for every coordinate of x and x_star
    pub err: f64,
    pub r: Vec<i64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PointSet {
    pub n: usize,
    pub s: usize,
    pub points: Vec<Point>,
    /// lattice points whose membership could not be decided (on ∂Ω up to precision)
    pub flagged: Vec<Vec<i64>>,
    pub enum_radius: i64,
    pub precision_bits: u64,
    pub window: WindowSpec,
    /// values substituted for the formal indeterminates
    pub indets: Vec<(String, String)>,
}

/// f64 copy of L with entrywise error bounds.
struct FastL {
    s: usize,
    vals: Vec<f64>,
    errs: Vec<f64>,
}

impl FastL {
    fn new(l: &NumericMatrix) -> FastL {
        let (v, e) = l.to_f64_with_error();
        FastL { s: l.rows, vals: v.concat(), errs: e.concat() }
    }

    /// Lr in f64 with a rigorous absolute bound per coordinate.
    fn apply(&self, r: &[i64], out: &mut [f64], err: &mut [f64]) {
        let s = self.s;
        for i in 0..s {
            let (mut acc, mut mag, mut e) = (0.0, 0.0, 0.0);
            for j in 0..s {
                let rj = r[j] as f64;
                let t = self.vals[i * s + j] * rj;
                acc += t;
                mag += t.abs();
                e += self.errs[i * s + j] * rj.abs();
            }
            out[i] = acc;
            err[i] = e + 2.0 * (s as f64 + 1.0) * f64::EPSILON * mag;
        }
    }
}

fn ball_apply(l: &NumericMatrix, r: &[i64]) -> Vec<CBall> {
    let bits = l.get(0, 0).bits;
    (0..l.rows)
        .map(|i| {
            (0..l.cols).fold(CBall::from_int(0, bits), |acc, j| {
                acc.add(&l.get(i, j).scale(&Q::from_integer(r[j].into())))
            })
        })
        .collect()
}

fn box_point(idx: u64, s: usize, radius: i64) -> Vec<i64> {
    let side = (2 * radius + 1) as u64;
    let mut r = vec![0; s];
    let mut k = idx;
    for c in r.iter_mut().rev() {
        *c = (k % side) as i64 - radius;
        k /= side;
    }
    r
}

/// Σ(Ω) restricted to lattice points with ‖r‖∞ ≤ enum_radius.
pub fn generate(sc: &Scheme, window: &WindowSpec, enum_radius: i64) -> Result<PointSet> {
    generate_with_budget(sc, window, enum_radius, DEFAULT_FLAG_BUDGET)
}

pub fn generate_with_budget(sc: &Scheme, window: &WindowSpec, enum_radius: i64, budget: usize) -> Result<PointSet> {
    if !sc.is_generic() {
        return Err(Error::Certificate(format!("scheme {} is not generic", sc.provenance)));
    }
    if window.dim != sc.s - sc.n {
        return Err(Error::Invalid(format!("window dimension {} ≠ s − n = {}", window.dim, sc.s - sc.n)));
    }
    if enum_radius < 0 {
        return Err(Error::Invalid("enumeration radius must be nonnegative".into()));
    }
    let (n, s) = (sc.n, sc.s);
    let l = sc.l_numeric();
    let fast = FastL::new(&l);
    let total = ((2 * enum_radius + 1) as u64)
        .checked_pow(s as u32)
        .ok_or_else(|| Error::Invalid("enumeration box too large".into()))?;

    enum Hit {
        In(Point),
        Flag(Vec<i64>),
    }
    let hits: Vec<Hit> = (0..total)
        .into_par_iter()
        .map_init(
            || (vec![0.0; s], vec![0.0; s]),
            |(y, e), idx| {
                let r = box_point(idx, s, enum_radius);
                fast.apply(&r, y, e);
                let verdict = match window.test_f64(&y[n..], &e[n..]) {
                    Membership::Undecided => window.test_balls(&ball_apply(&l, &r)[n..]),
                    m => m,
                };
                match verdict {
                    Membership::Outside => None,
                    Membership::Undecided => Some(Hit::Flag(r)),
                    Membership::Inside => {
                        let err = e.iter().cloned().fold(0.0, f64::max);
                        Some(Hit::In(Point { x: y[..n].to_vec(), x_star: y[n..].to_vec(), err, r }))
                    }
                }
            },
        )
        .flatten()
        .collect();
    let mut points = vec![];
    let mut flagged = vec![];
    for h in hits {
        match h {
            Hit::In(p) => points.push(p),
            Hit::Flag(r) => flagged.push(r),
        }
    }
    if flagged.len() > budget {
        return Err(Error::Precision(format!(
            "{} lattice points lie on the window boundary within working precision; raise --precision-bits",
            flagged.len()
        )));
    }
    sort_points(&mut points);
    flagged.sort();
    Ok(PointSet {
        n,
        s,
        points,
        flagged,
        enum_radius,
        precision_bits: sc.tower.bits(),
        window: window.clone(),
        indets: sc.indets.iter().map(|i| (i.name.clone(), i.value.clone())).collect(),
    })
}

fn sort_points(points: &mut [Point]) {
    points.sort_by(|a, b| {
        a.x.iter()
            .zip(&b.x)
            .map(|(p, q)| p.total_cmp(q))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
            .then_with(|| a.r.cmp(&b.r))
    });
}

/// Point set for given lattice coordinates (e.g. read back from CSV).
pub fn points_from_coordinates(sc: &Scheme, window: &WindowSpec, rs: Vec<Vec<i64>>, enum_radius: i64) -> PointSet {
    let fast = FastL::new(&sc.l_numeric());
    let (n, s) = (sc.n, sc.s);
    let mut points: Vec<Point> = rs
        .into_iter()
        .map(|r| {
            let (mut y, mut e) = (vec![0.0; s], vec![0.0; s]);
            fast.apply(&r, &mut y, &mut e);
            Point { x: y[..n].to_vec(), x_star: y[n..].to_vec(), err: e.iter().cloned().fold(0.0, f64::max), r }
        })
        .collect();
    sort_points(&mut points);
    PointSet {
        n,
        s,
        points,
        flagged: vec![],
        enum_radius,
        precision_bits: sc.tower.bits(),
        window: window.clone(),
        indets: sc.indets.iter().map(|i| (i.name.clone(), i.value.clone())).collect(),
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct SelfSimilarityReport {
    pub checked: usize,
    pub confirmed: usize,
    /// C·r left the enumeration box
    pub out_of_box: usize,
    pub violations: usize,
    /// first few offending lattice coordinates
    pub examples: Vec<Vec<i64>>,
}

/// For each point r, r′ = C·r must again be a point of the set (when inside
/// the box) and its position must be A·x.
pub fn verify_selfsimilarity(ps: &PointSet, sc: &Scheme) -> Result<SelfSimilarityReport> {
    let (a, _) = sc.a_numeric().to_f64_with_error();
    verify_selfsimilarity_with(ps, sc, &a)
}

/// Same, with an explicit physical map A.
pub fn verify_selfsimilarity_with(ps: &PointSet, sc: &Scheme, a: &[Vec<f64>]) -> Result<SelfSimilarityReport> {
    let c = sc.c_integer().ok_or_else(|| Error::Certificate("C is not an integer matrix".into()))?;
    let c: Vec<Vec<i64>> = c
        .iter()
        .map(|row| row.iter().map(|x| i64::try_from(x).map_err(|_| Error::Invalid("C entry out of range".into()))).collect())
        .collect::<Result<_>>()?;
    let index: HashMap<&[i64], usize> = ps.points.iter().enumerate().map(|(k, p)| (p.r.as_slice(), k)).collect();
    let flagged: HashSet<&[i64]> = ps.flagged.iter().map(|r| r.as_slice()).collect();
    let n = ps.n;
    let amax = a.iter().flatten().fold(0.0f64, |m, v| m.max(v.abs()));
    let mut rep = SelfSimilarityReport::default();
    for p in &ps.points {
        rep.checked += 1;
        let r2: Vec<i64> = c.iter().map(|row| row.iter().zip(&p.r).map(|(x, y)| x * y).sum()).collect();
        if r2.iter().any(|v| v.abs() > ps.enum_radius) {
            rep.out_of_box += 1;
            continue;
        }
        if flagged.contains(r2.as_slice()) {
            rep.out_of_box += 1;
            continue;
        }
        let ok = index.get(r2.as_slice()).is_some_and(|&k| {
            let q = &ps.points[k];
            let tol = 1e-9 + q.err + (n as f64) * amax * p.err;
            (0..n).all(|i| {
                let ax: f64 = (0..n).map(|j| a[i][j] * p.x[j]).sum();
                (ax - q.x[i]).abs() <= tol * (1.0 + ax.abs())
            })
        });
        if ok {
            rep.confirmed += 1;
        } else {
            rep.violations += 1;
            if rep.examples.len() < 5 {
                rep.examples.push(p.r.clone());
            }
        }
    }
    Ok(rep)
}

/// Uniform-grid nearest neighbor index over points in ℝ^d.
struct GridIndex<'a> {
    pts: &'a [Vec<f64>],
    h: f64,
    cells: HashMap<Vec<i64>, Vec<usize>>,
    span: i64,
}

impl<'a> GridIndex<'a> {
    fn new(pts: &'a [Vec<f64>], h: f64) -> Self {
        let mut cells: HashMap<Vec<i64>, Vec<usize>> = HashMap::new();
        let mut lo = i64::MAX;
        let mut hi = i64::MIN;
        for (k, p) in pts.iter().enumerate() {
            let key: Vec<i64> = p.iter().map(|v| (v / h).floor() as i64).collect();
            lo = lo.min(*key.iter().min().unwrap_or(&0));
            hi = hi.max(*key.iter().max().unwrap_or(&0));
            cells.entry(key).or_default().push(k);
        }
        GridIndex { pts, h, cells, span: (hi - lo).max(0) + 2 }
    }

    fn ring(d: usize, k: i64) -> Vec<Vec<i64>> {
        let mut out = vec![vec![]];
        for _ in 0..d {
            out = out.into_iter().flat_map(|v| (-k..=k).map(move |o| [v.clone(), vec![o]].concat())).collect();
        }
        out.retain(|v| v.iter().any(|o| o.abs() == k));
        out
    }

    /// Distance from q to the nearest indexed point other than `skip`.
    fn nearest(&self, q: &[f64], skip: Option<usize>) -> Option<f64> {
        let d = q.len();
        let base: Vec<i64> = q.iter().map(|v| (v / self.h).floor() as i64).collect();
        let mut best = f64::INFINITY;
        for k in 0..=self.span + base.iter().map(|b| b.abs()).max().unwrap_or(0) {
            for off in Self::ring(d, k) {
                let key: Vec<i64> = base.iter().zip(&off).map(|(b, o)| b + o).collect();
                for &i in self.cells.get(&key).map(|v| v.as_slice()).unwrap_or(&[]) {
                    if Some(i) == skip {
                        continue;
                    }
                    let dist = self.pts[i].iter().zip(q).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt();
                    best = best.min(dist);
                }
            }
            if best <= k as f64 * self.h {
                break;
            }
        }
        best.is_finite().then_some(best)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DeloneStats {
    pub points: usize,
    /// smallest distance between two points
    pub min_gap: Option<f64>,
    /// largest empty-ball radius probed on the inner part of the sample
    pub covering_radius: Option<f64>,
    /// distinct gaps (consecutive gaps in 1D, nearest-neighbor distances otherwise) with counts
    pub gaps: Vec<(f64, usize)>,
}

fn cluster(mut v: Vec<f64>, rel: f64) -> Vec<(f64, usize)> {
    v.sort_by(f64::total_cmp);
    let mut out: Vec<(f64, usize)> = vec![];
    for x in v {
        match out.last_mut() {
            Some((y, c)) if (x - *y).abs() <= rel * y.abs().max(1e-300) => *c += 1,
            _ => out.push((x, 1)),
        }
    }
    out
}

/// Gap tolerance used to merge equal distances.
pub const GAP_TOLERANCE: f64 = 1e-9;

fn bbox(pts: &[Vec<f64>]) -> Vec<(f64, f64)> {
    let d = pts[0].len();
    (0..d)
        .map(|i| pts.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), p| (l.min(p[i]), h.max(p[i]))))
        .collect()
}

/// Largest distance from a probe in `region` to the nearest point.
fn empty_ball_radius(pts: &[Vec<f64>], region: &[(f64, f64)], h: f64) -> Option<f64> {
    if pts.is_empty() || region.iter().any(|(l, u)| l > u) {
        return None;
    }
    let idx = GridIndex::new(pts, h);
    let d = region.len();
    let steps: Vec<usize> = region.iter().map(|(l, u)| (((u - l) / (h / 2.0)).ceil() as usize).clamp(1, 400)).collect();
    let mut worst: f64 = 0.0;
    let total: usize = steps.iter().map(|k| k + 1).product();
    for lin in 0..total {
        let mut k = lin;
        let q: Vec<f64> = (0..d)
            .map(|i| {
                let t = k % (steps[i] + 1);
                k /= steps[i] + 1;
                region[i].0 + (region[i].1 - region[i].0) * t as f64 / steps[i] as f64
            })
            .collect();
        worst = worst.max(idx.nearest(&q, None)?);
    }
    Some(worst)
}

pub fn stats(ps: &PointSet) -> DeloneStats {
    let pts: Vec<Vec<f64>> = ps.points.iter().map(|p| p.x.clone()).collect();
    if pts.len() < 2 {
        return DeloneStats { points: pts.len(), min_gap: None, covering_radius: None, gaps: vec![] };
    }
    let (gaps, min_gap) = if ps.n == 1 {
        let mut xs: Vec<f64> = pts.iter().map(|p| p[0]).collect();
        xs.sort_by(f64::total_cmp);
        let g: Vec<f64> = xs.windows(2).map(|w| w[1] - w[0]).collect();
        let m = g.iter().cloned().fold(f64::INFINITY, f64::min);
        (g, m)
    } else {
        let bb = bbox(&pts);
        let vol: f64 = bb.iter().map(|(l, h)| (h - l).max(1e-12)).product();
        let h = (vol / pts.len() as f64).powf(1.0 / ps.n as f64);
        let idx = GridIndex::new(&pts, h);
        let g: Vec<f64> = (0..pts.len()).into_par_iter().map(|k| idx.nearest(&pts[k], Some(k)).unwrap()).collect();
        let m = g.iter().cloned().fold(f64::INFINITY, f64::min);
        (g, m)
    };
    // inner region: the bounding box with a quarter of its extent trimmed on each side
    let bb = bbox(&pts);
    let inner: Vec<(f64, f64)> = bb.iter().map(|(l, h)| (l + (h - l) / 4.0, h - (h - l) / 4.0)).collect();
    let covering = if ps.n == 1 {
        let mut xs: Vec<f64> = pts.iter().map(|p| p[0]).filter(|x| *x >= inner[0].0 && *x <= inner[0].1).collect();
        xs.sort_by(f64::total_cmp);
        (xs.len() >= 2).then(|| xs.windows(2).map(|w| (w[1] - w[0]) / 2.0).fold(0.0, f64::max))
    } else {
        empty_ball_radius(&pts, &inner, min_gap.max(1e-9))
    };
    DeloneStats { points: pts.len(), min_gap: Some(min_gap), covering_radius: covering, gaps: cluster(gaps, GAP_TOLERANCE) }
}

/// Largest empty-ball radius of the star images x* within Ω (probed on the
/// window's bounding box, restricted to Ω). Shrinks toward 0 as the
/// enumeration box grows when π⊥(𝓛) is dense.
pub fn star_empty_radius(ps: &PointSet) -> Option<f64> {
    let stars: Vec<Vec<f64>> = ps.points.iter().map(|p| p.x_star.clone()).collect();
    if stars.is_empty() {
        return None;
    }
    let w = &ps.window;
    if w.dim == 1 {
        let mut v: Vec<f64> = stars.iter().map(|p| p[0]).collect();
        v.sort_by(f64::total_cmp);
        let (lo, hi) = w.bounding_box()[0];
        let inner = v.windows(2).map(|x| (x[1] - x[0]) / 2.0).fold(0.0, f64::max);
        return Some(inner.max(v[0] - lo).max(hi - v[v.len() - 1]));
    }
    let bb = w.bounding_box();
    let size = bb.iter().map(|(l, h)| h - l).fold(0.0, f64::max);
    let h = size / 64.0;
    let idx = GridIndex::new(&stars, h.max(1e-12));
    let steps = 64usize;
    let mut worst: f64 = 0.0;
    let d = w.dim;
    let total = (steps + 1).pow(d as u32);
    for lin in 0..total {
        let mut k = lin;
        let q: Vec<f64> = (0..d)
            .map(|i| {
                let t = k % (steps + 1);
                k /= steps + 1;
                bb[i].0 + (bb[i].1 - bb[i].0) * t as f64 / steps as f64
            })
            .collect();
        if w.contains(&q, 0.0) {
            worst = worst.max(idx.nearest(&q, None)?);
        }
    }
    Some(worst)
}

/// Decimal digits matching a binary precision, capped for readability.
pub fn csv_digits(bits: u64) -> usize {
    ((bits as f64 * std::f64::consts::LOG10_2) as usize).clamp(6, 40)
}

/// CSV with x₁..x_n, star₁..star_{s−n}, r₁..r_s. Coordinates are recomputed
/// from the certified L and printed to `csv_digits(bits)` decimals.
pub fn to_csv(ps: &PointSet, sc: &Scheme) -> String {
    let l = sc.l_numeric();
    let digits = csv_digits(ps.precision_bits);
    let mut out = String::new();
    let header: Vec<String> = (1..=ps.n)
        .map(|i| format!("x{i}"))
        .chain((1..=ps.s - ps.n).map(|i| format!("star{i}")))
        .chain((1..=ps.s).map(|i| format!("r{i}")))
        .collect();
    out.push_str(&header.join(","));
    out.push('\n');
    for p in &ps.points {
        let ys = ball_apply(&l, &p.r);
        let cols: Vec<String> =
            ys.iter().map(|b| q_to_decimal(&b.re, digits)).chain(p.r.iter().map(|v| v.to_string())).collect();
        out.push_str(&cols.join(","));
        out.push('\n');
    }
    out
}

/// Lattice coordinates from a CSV written by [`to_csv`].
pub fn coordinates_from_csv(text: &str, s: usize) -> Result<Vec<Vec<i64>>> {
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| Error::Parse("empty CSV".into()))?;
    let cols: Vec<&str> = header.split(',').collect();
    let first = cols
        .iter()
        .position(|c| *c == "r1")
        .ok_or_else(|| Error::Parse("CSV header has no r1 column".into()))?;
    if cols.len() != first + s {
        return Err(Error::Parse(format!("CSV has {} lattice columns, scheme has s = {s}", cols.len() - first)));
    }
    lines
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(k, line)| {
            let f: Vec<&str> = line.split(',').collect();
            if f.len() != cols.len() {
                return Err(Error::Parse(format!("CSV line {}: expected {} fields", k + 2, cols.len())));
            }
            f[first..]
                .iter()
                .map(|v| v.trim().parse::<i64>().map_err(|_| Error::Parse(format!("CSV line {}: bad integer {v:?}", k + 2))))
                .collect()
        })
        .collect()
}

/// Scatter plot for n = 1 (points on a line) or n = 2.
pub fn to_svg(ps: &PointSet) -> Result<String> {
    if ps.n > 2 {
        return Err(Error::Invalid("SVG export needs a 1- or 2-dimensional physical space".into()));
    }
    let (w, h, pad) = (800.0, if ps.n == 1 { 120.0 } else { 800.0 }, 20.0);
    let pts: Vec<(f64, f64)> = ps.points.iter().map(|p| (p.x[0], if ps.n == 2 { p.x[1] } else { 0.0 })).collect();
    let (x0, x1) = pts.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(l, u), p| (l.min(p.0), u.max(p.0)));
    let (y0, y1) = pts.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(l, u), p| (l.min(p.1), u.max(p.1)));
    let sx = if x1 > x0 { (w - 2.0 * pad) / (x1 - x0) } else { 1.0 };
    let sy = if y1 > y0 { (h - 2.0 * pad) / (y1 - y0) } else { 1.0 };
    let k = if ps.n == 2 { sx.min(sy) } else { sx };
    let mut out = format!("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n");
    out.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    for (x, y) in pts {
        let cx = pad + (x - x0) * k;
        let cy = if ps.n == 2 { h - pad - (y - y0) * k } else { h / 2.0 };
        let _ = writeln!(out, "<circle cx=\"{cx:.3}\" cy=\"{cy:.3}\" r=\"2\" fill=\"black\"/>");
    }
    out.push_str("</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests;
