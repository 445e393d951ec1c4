//! Acceptance checks, one line per criterion. Exits nonzero if any fails.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use selfsim::exact_algebra::ball::sqrt_upper;
use selfsim::exact_algebra::{conjugation_map_in, cyclotomic, isolate_roots, IntPoly, SplittingField, Q};
use selfsim::exact_matrices::{rational_vectors_in_span, vandermonde};
use selfsim::pointset::{build_window, generate, stats, verify_selfsimilarity};
use selfsim::scheme_builder::{
    build_identity_h_scheme, build_minimal_scheme, build_naive_scheme, build_scheme_for, build_trivial_integer,
    build_trivial_quadratic, build_vandermonde_scheme, direct_sum, is_well_distributing, min_feasible_k_brute,
    verify_eq_abc, well_distributing, NumericParams, Route, Scheme, MATRIX_SIZE_CAP, TOWER_DEGREE_CAP,
};
use selfsim::spectrum::{
    check_properties_p, min_scheme_dimension, min_set_dimension, naive_k, naive_scheme_dimension, PReason,
    SpectrumSpec,
};

const BITS: u64 = 256;
const TAU: f64 = 1.618_033_988_749_895;

type Check = Result<String, String>;

fn golden() -> IntPoly {
    IntPoly::from_i64(&[-1, -1, 1])
}

fn cubic() -> IntPoly {
    IntPoly::from_i64(&[1, -1, -2, 1])
}

fn spec(e: &[(IntPoly, usize, usize)]) -> SpectrumSpec {
    SpectrumSpec::new(e, BITS).unwrap()
}

fn params() -> NumericParams {
    NumericParams { bits: BITS, ..NumericParams::default() }
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn e<T: std::fmt::Display>(x: T) -> String {
    x.to_string()
}

// golden roots: 0 = τ′, 1 = τ; Φ₅ roots 2, 3 = e^{∓2πi/5}; Φ₄ roots 0, 1 = −i, i
fn dimensions() -> Check {
    let cases: Vec<(&str, SpectrumSpec, usize, Option<usize>)> = vec![
        ("{τ:2, τ′:1}", spec(&[(golden(), 1, 2), (golden(), 0, 1)]), 4, Some(6)),
        ("x³−2x²−x+1 (2,1,1)", spec(&[(cubic(), 2, 2), (cubic(), 0, 1), (cubic(), 1, 1)]), 6, Some(6)),
        ("τ·I₁", spec(&[(golden(), 1, 1)]), 2, None),
        ("τ·I₂", spec(&[(golden(), 1, 2)]), 4, None),
        ("τ·I₃", spec(&[(golden(), 1, 3)]), 6, None),
        ("5-fold rotation", spec(&[(cyclotomic(5), 2, 1), (cyclotomic(5), 3, 1)]), 4, None),
        ("4-fold rotation", spec(&[(cyclotomic(4), 0, 1), (cyclotomic(4), 1, 1)]), 4, None),
    ];
    for (name, sp, s, naive) in &cases {
        let got = min_scheme_dimension(sp).map_err(e)?.s;
        ensure(got == *s, format!("{name}: minimal {got} ≠ {s}"))?;
        if let Some(nv) = naive {
            let got = naive_scheme_dimension(sp).map_err(e)?;
            ensure(got == *nv, format!("{name}: naive {got} ≠ {nv}"))?;
        }
    }
    for (name, sp, s) in [("5-fold rotation", &cases[5].1, 4), ("4-fold rotation", &cases[6].1, 4), ("τ·I₂", &cases[3].1, 4)] {
        let got = min_set_dimension(sp).map_err(e)?;
        ensure(got == s, format!("{name}: set dimension {got} ≠ {s}"))?;
    }
    Ok(format!("{} spectra, exact equality", cases.len()))
}

fn kmatrices() -> Check {
    let mut cases = 0;
    for u in 2..=4usize {
        let mut l = vec![0usize; u];
        loop {
            if l.iter().any(|&x| x > 0) {
                let k = naive_k(&l).map_err(e)?;
                let brute = min_feasible_k_brute(&l).ok_or(format!("no feasible K for {l:?}"))?;
                ensure(k == brute, format!("l = {l:?}: formula {k}, brute force {brute}"))?;
                let m = well_distributing(&l, k).map_err(e)?;
                ensure(m.is_valid() && is_well_distributing(&m.grid, &l), format!("l = {l:?}: invalid output"))?;
                cases += 1;
            }
            let mut i = 0;
            while i < u && l[i] == 3 {
                l[i] = 0;
                i += 1;
            }
            if i == u {
                break;
            }
            l[i] += 1;
        }
    }
    let m = well_distributing(&[2, 1, 1], 2).map_err(e)?;
    let mut cols: Vec<Vec<u8>> = (0..2).map(|j| m.grid.iter().map(|r| r[j]).collect()).collect();
    cols.sort();
    let mut want = vec![vec![1, 1, 0], vec![1, 0, 1]];
    want.sort();
    ensure(cols == want, format!("(2,1,1) gave {:?}", m.grid))?;
    Ok(format!("{cases} row-sum vectors, exact"))
}

fn battery() -> Result<Vec<Scheme>, String> {
    let p = params();
    let fib = build_vandermonde_scheme(&golden(), &[1], &p).map_err(e)?;
    let phi5 = build_minimal_scheme(&spec(&[(cyclotomic(5), 2, 1), (cyclotomic(5), 3, 1)]), &p).map_err(e)?;
    let phi8 = build_minimal_scheme(&spec(&[(cyclotomic(8), 2, 1), (cyclotomic(8), 3, 1)]), &p).map_err(e)?;
    let cub = spec(&[(cubic(), 2, 2), (cubic(), 0, 1), (cubic(), 1, 1)]);
    let cub_min = build_minimal_scheme(&cub, &p).map_err(e)?;
    let cub_naive = build_naive_scheme(&cub, &p).map_err(e)?;
    let golden21 = build_minimal_scheme(&spec(&[(golden(), 1, 2), (golden(), 0, 1)]), &p).map_err(e)?;
    let int = build_trivial_integer(2, 2, &p).map_err(e)?;
    let i_roots = isolate_roots(&cyclotomic(4), BITS).map_err(e)?;
    let quad_i = build_trivial_quadratic(&i_roots[0], 2, &p).map_err(e)?;
    let w_roots = isolate_roots(&IntPoly::from_i64(&[1, -1, 1]), BITS).map_err(e)?;
    let quad_w = build_trivial_quadratic(&w_roots[0], 2, &p).map_err(e)?;
    let sum1 = direct_sum(&fib, &int, BITS).map_err(e)?;
    let sum2 = direct_sum(&fib, &quad_i, BITS).map_err(e)?;
    let mixed = build_scheme_for(&spec(&[(golden(), 1, 1), (IntPoly::from_i64(&[-3, 1]), 0, 1)]), Route::Auto, &p)
        .map_err(e)?;
    Ok(vec![fib, phi5, phi8, cub_min, cub_naive, golden21, int, quad_i, quad_w, sum1, sum2, mixed])
}

fn eq_abc(schemes: &[Scheme]) -> Check {
    for sc in schemes {
        let r = verify_eq_abc(sc);
        ensure(r.eq_abc_y && r.eq_abc_l, format!("{}: residual at {:?}", sc.provenance, r.residual_at))?;
        ensure(r.c_integral, format!("{}: C not integral", sc.provenance))?;
        ensure(r.minpolys_equal, format!("{}: minimal polynomials differ", sc.provenance))?;
        ensure(r.passed, format!("{}: {:?}", sc.provenance, r.messages))?;
    }
    Ok(format!("{} schemes, residual exactly zero in the tower", schemes.len()))
}

fn genericity(schemes: &[Scheme]) -> Check {
    let mut spans = 0;
    for sc in schemes {
        if sc.tower.dim() <= TOWER_DEGREE_CAP && sc.s <= MATRIX_SIZE_CAP {
            let y1 = rational_vectors_in_span(&sc.y1());
            let y2 = rational_vectors_in_span(&sc.y2());
            ensure(y1.is_empty(), format!("{}: rational vectors in span Y₁", sc.provenance))?;
            ensure(y2.is_empty(), format!("{}: rational vectors in span Y₂", sc.provenance))?;
            spans += 1;
        }
        ensure(sc.certificate.irreducible(), format!("{}: irreducibility witness found", sc.provenance))?;
        ensure(sc.is_generic(), format!("{}: certificate failed", sc.provenance))?;
    }
    let bad = build_identity_h_scheme(&spec(&[(golden(), 1, 2), (golden(), 0, 1)]), &params()).map_err(e)?;
    ensure(!bad.is_generic(), "identity-H fixture passed the certificate")?;
    ensure(!rational_vectors_in_span(&bad.y1()).is_empty(), "identity-H fixture: span Y₁ has no rational vector")?;
    Ok(format!("{spans}/{} span checks under the cap, identity-H fixture rejected", schemes.len()))
}

fn properties_p() -> Check {
    let ok = check_properties_p(&spec(&[(golden(), 1, 1)])).map_err(e)?;
    ensure(ok.satisfied, "{τ:1} rejected")?;
    let bad = check_properties_p(&spec(&[(golden(), 0, 1)])).map_err(e)?;
    ensure(
        !bad.satisfied
            && bad.failures.iter().any(|f| f.root_index == 1 && f.reason == PReason::NotAnEigenvalue && f.root.starts_with("1.618")),
        format!("{{τ′:1}}: {:?}", bad.failures),
    )?;
    let f3 = IntPoly::from_i64(&[-3, -1, 1]);
    let both = check_properties_p(&spec(&[(f3.clone(), 0, 1), (f3, 1, 1)])).map_err(e)?;
    ensure(
        !both.satisfied && both.failures.iter().all(|f| f.reason == PReason::NoStrictInequality),
        format!("x²−x−3: {:?}", both.failures),
    )?;
    let rot = check_properties_p(&spec(&[(cyclotomic(4), 0, 1), (cyclotomic(4), 1, 1)])).map_err(e)?;
    ensure(rot.satisfied, "{i, −i} rejected")?;
    let three = check_properties_p(&spec(&[(IntPoly::from_i64(&[-3, 1]), 0, 1)])).map_err(e)?;
    ensure(!three.satisfied, "{3:1} accepted")?;
    Ok("5 spectra, exact verdicts".into())
}

fn fibonacci_end_to_end() -> Check {
    let sc = build_scheme_for(&spec(&[(golden(), 1, 1)]), Route::Auto, &params()).map_err(e)?;
    // window of length 1 in ℤ[τ] coordinates: x* ∈ [−1/(2√5), 1/(2√5)]
    let half = Q::from_integer(1.into()) / sqrt_upper(&Q::from_integer(20.into()), 300);
    let w = build_window(&sc, &half).map_err(e)?;
    let ps = generate(&sc, &w, 200).map_err(e)?;
    ensure(ps.points.len() >= 100, format!("only {} points", ps.points.len()))?;
    let st = stats(&ps);
    ensure(st.gaps.len() == 2, format!("gaps {:?}", st.gaps))?;
    let ratio = st.gaps[1].0 / st.gaps[0].0;
    ensure((ratio - TAU).abs() < 1e-9, format!("gap ratio {ratio}"))?;
    let rep = verify_selfsimilarity(&ps, &sc).map_err(e)?;
    ensure(rep.violations == 0, format!("{} violations", rep.violations))?;
    Ok(format!(
        "{} points, gaps {:.6}/{:.6}, |ratio − τ| = {:.1e} (tol 1e-9), {} confirmed, {} out of box, 0 violations",
        ps.points.len(),
        st.gaps[0].0,
        st.gaps[1].0,
        (ratio - TAU).abs(),
        rep.confirmed,
        rep.out_of_box
    ))
}

fn fivefold_end_to_end() -> Check {
    let f = cyclotomic(5);
    let sc = build_scheme_for(&spec(&[(f.clone(), 2, 1), (f, 3, 1)]), Route::Auto, &params()).map_err(e)?;
    ensure(sc.s == 4 && sc.n == 2, format!("(n, s) = ({}, {})", sc.n, sc.s))?;
    let (a, _) = sc.a_numeric().to_f64_with_error();
    let th = 72f64.to_radians();
    ensure(
        (a[0][0] - th.cos()).abs() < 1e-12 && (a[0][1].abs() - th.sin()).abs() < 1e-12 && (a[1][0] + a[0][1]).abs() < 1e-12,
        format!("A = {a:?} is not the 72° rotation"),
    )?;
    let w = build_window(&sc, &Q::from_integer(1.into())).map_err(e)?;
    let ps = generate(&sc, &w, 12).map_err(e)?;
    let rep = verify_selfsimilarity(&ps, &sc).map_err(e)?;
    ensure(rep.violations == 0, format!("{} violations", rep.violations))?;
    let g12 = stats(&ps).min_gap.ok_or("no gap at radius 12")?;
    let g24 = stats(&generate(&sc, &w, 24).map_err(e)?).min_gap.ok_or("no gap at radius 24")?;
    let rel = (g24 - g12).abs() / g12;
    ensure(rel <= 0.05, format!("min gap {g12} → {g24}"))?;
    Ok(format!(
        "{} points, {} confirmed, 0 violations; min gap {g12:.6} → {g24:.6} (change {:.2}%, tol 5%)",
        ps.points.len(),
        rep.confirmed,
        rel * 100.0
    ))
}

fn conjugate_rows() -> Check {
    let f = cubic();
    let sf = SplittingField::new(&[f.clone()], BITS).map_err(e)?;
    let zi = vandermonde(&f, &sf).map_err(e)?.invert().map_err(e)?;
    let roots = &sf.roots[0];
    let base = &sf.tower.levels()[0];
    let b1 = &roots[base.root_index];
    let mut rows = 0;
    for (j, r) in roots.iter().enumerate().filter(|(j, _)| *j != base.root_index) {
        let psi = conjugation_map_in(b1, r, &sf).map_err(e)?;
        for c in 0..3 {
            let x = zi.get(base.root_index, c).as_const().ok_or("non-constant entry")?;
            let small = psi.pull_back(&x).ok_or("row 1 does not lie in ℚ(β₁)")?;
            ensure(psi.apply(&small) == zi.get(j, c).as_const().ok_or("non-constant entry")?, format!("row {j}, column {c}"))?;
        }
        rows += 1;
    }
    Ok(format!("{rows} conjugate rows reproduced exactly"))
}

fn window_invariance() -> Check {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2024);
    let p = params();
    let fib = build_vandermonde_scheme(&golden(), &[1], &p).map_err(e)?;
    let f = cyclotomic(5);
    let rot = build_minimal_scheme(&spec(&[(f.clone(), 2, 1), (f, 3, 1)]), &p).map_err(e)?;
    for sc in [&fib, &rot] {
        let w = build_window(sc, &Q::from_integer(1.into())).map_err(e)?;
        let (b, _) = sc.b_numeric().to_f64_with_error();
        for _ in 0..10_000 {
            let u: Vec<f64> = (0..w.dim).map(|_| rng.gen()).collect();
            let y = w.sample(&u);
            let by: Vec<f64> = (0..w.dim).map(|i| (0..w.dim).map(|j| b[i][j] * y[j]).sum()).collect();
            ensure(w.contains(&by, 1e-12), format!("{}: B·{y:?} left the window", sc.provenance))?;
        }
    }
    let expanding = build_vandermonde_scheme(&golden(), &[0], &p).map_err(e)?;
    ensure(build_window(&expanding, &Q::from_integer(1.into())).is_err(), "window built for B = (τ)")?;
    Ok("2 × 10⁴ samples inside (tol 1e-12), B = (τ) rejected".into())
}

fn main() {
    let t0 = Instant::now();
    let schemes = battery();
    let build_time = t0.elapsed();
    let with_battery = |f: fn(&[Scheme]) -> Check| -> Box<dyn Fn() -> Check> {
        let s = schemes.clone();
        Box::new(move || match &s {
            Ok(v) => f(v),
            Err(m) => Err(format!("battery construction failed: {m}")),
        })
    };
    let criteria: Vec<(u32, &str, u64, Box<dyn Fn() -> Check>)> = vec![
        (1, "dimension formulas", 1, Box::new(dimensions)),
        (2, "well distributing matrices", 10, Box::new(kmatrices)),
        (3, "intertwining equation exactness", 30, with_battery(eq_abc)),
        (4, "genericity certificates", 60, with_battery(genericity)),
        (5, "properties 𝔓", 5, Box::new(properties_p)),
        (6, "Fibonacci end to end", 30, Box::new(fibonacci_end_to_end)),
        (7, "five-fold end to end", 120, Box::new(fivefold_end_to_end)),
        (8, "conjugate rows of Z⁻¹", 5, Box::new(conjugate_rows)),
        (9, "window invariance", 5, Box::new(window_invariance)),
    ];
    let mut failed = 0;
    for (k, name, budget, f) in criteria {
        let t = Instant::now();
        let r = f();
        let mut dt = t.elapsed();
        if k == 3 {
            dt += build_time;
        }
        let in_time = dt <= Duration::from_secs(budget);
        let (status, detail) = match (&r, in_time) {
            (Ok(d), true) => ("PASS", d.clone()),
            (Ok(d), false) => ("FAIL", format!("{d}; over time budget")),
            (Err(m), _) => ("FAIL", m.clone()),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!("criterion {k} [{status}] {name}: {detail} ({:.2}s, budget {budget}s)", dt.as_secs_f64());
    }
    println!("{} of 9 criteria passed", 9 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
