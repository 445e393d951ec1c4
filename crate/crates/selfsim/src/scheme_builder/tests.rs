use super::*;
use crate::exact_algebra::{isolate_roots, IntPoly};
use crate::spectrum::SpectrumSpec;

const B: u64 = 128;

fn params() -> NumericParams {
    NumericParams { bits: B, ..NumericParams::default() }
}

fn golden() -> IntPoly {
    IntPoly::from_i64(&[-1, -1, 1])
}

fn cubic() -> IntPoly {
    IntPoly::from_i64(&[1, -1, -2, 1])
}

fn spec(e: &[(IntPoly, usize, usize)]) -> SpectrumSpec {
    SpectrumSpec::new(e, B).unwrap()
}

fn num(m: &NumericMatrix) -> Vec<Vec<f64>> {
    m.to_f64_with_error().0
}

fn y_numeric(sc: &Scheme) -> Vec<Vec<f64>> {
    num(&sc.y.numeric(&sc.indet_values()))
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() < 1e-12
}

fn sorted_diag(m: &NumericMatrix) -> Vec<f64> {
    let v = num(m);
    let mut d: Vec<f64> = (0..v.len()).map(|i| v[i][i]).collect();
    d.sort_by(f64::total_cmp);
    d
}

const TAU: f64 = 1.618_033_988_749_895;
const TAU_C: f64 = -0.618_033_988_749_895;

fn assert_valid(sc: &Scheme) {
    let r = audit(sc);
    assert!(r.passed, "{}: {:?} {:?}", sc.provenance, r.abc.messages, r.certificate);
    assert_eq!(sc.certificate.recheck, Some(true));
}

#[test]
fn fibonacci_vandermonde() {
    let sc = build_vandermonde_scheme(&golden(), &[1], &params()).unwrap();
    assert_valid(&sc);
    let y = y_numeric(&sc);
    // physical column (1, τ), internal (1, τ′)
    assert!(close(y[0][0], 1.0) && close(y[1][0], TAU));
    assert!(close(y[0][1], 1.0) && close(y[1][1], TAU_C));
    let c: Vec<Vec<i64>> =
        sc.c_integer().unwrap().iter().map(|r| r.iter().map(|x| i64::try_from(x).unwrap()).collect()).collect();
    assert_eq!(c, vec![vec![0, 1], vec![1, 1]]);
    assert!(close(num(&sc.a_numeric())[0][0], TAU));
    assert!(close(num(&sc.b_numeric())[0][0], TAU_C));
}

#[test]
fn cubic_vandermonde_internal_root() {
    let sc = build_vandermonde_scheme(&cubic(), &[0, 1], &params()).unwrap();
    assert_valid(&sc);
    assert_eq!((sc.n, sc.s), (2, 3));
    let beta = isolate_roots(&cubic(), B).unwrap()[2].approx.re_f64();
    assert!(close(num(&sc.b_numeric())[0][0], beta));
    assert!(build_vandermonde_scheme(&cubic(), &[0, 1, 2], &params()).is_err());
    assert!(build_vandermonde_scheme(&cubic(), &[], &params()).is_err());
    assert!(build_vandermonde_scheme(&IntPoly::from_i64(&[1, 0, -1]), &[0], &params()).is_err());
}

#[test]
fn trivial_integer_schemes() {
    for (k, n) in [(1, 1), (2, 2), (-3, 1)] {
        let sc = build_trivial_integer(k, n, &params()).unwrap();
        assert_eq!(sc.s, n + 1);
        assert_valid(&sc);
    }
    assert!(build_trivial_integer(0, 1, &params()).is_err());
}

#[test]
fn trivial_quadratic_schemes() {
    for f in [IntPoly::from_i64(&[1, 0, 1]), IntPoly::from_i64(&[1, -1, 1])] {
        let roots = isolate_roots(&f, B).unwrap();
        for n in [2, 4] {
            let sc = build_trivial_quadratic(&roots[0], n, &params()).unwrap();
            assert_eq!(sc.s, n + 2);
            assert_valid(&sc);
        }
        assert!(build_trivial_quadratic(&roots[0], 3, &params()).is_err());
    }
    let sqrt2 = isolate_roots(&IntPoly::from_i64(&[-2, 0, 1]), B).unwrap();
    assert!(build_trivial_quadratic(&sqrt2[1], 2, &params()).is_err());
}

#[test]
fn minimal_dimensions() {
    let phi5 = crate::exact_algebra::cyclotomic(5);
    let cases = [
        (spec(&[(golden(), 1, 2), (golden(), 0, 1)]), 4),
        (spec(&[(golden(), 1, 1)]), 2),
        (spec(&[(golden(), 0, 1), (golden(), 1, 1)]), 4),
        (spec(&[(phi5.clone(), 2, 1), (phi5.clone(), 3, 1)]), 4),
        (spec(&[(cubic(), 0, 1), (cubic(), 1, 1), (cubic(), 2, 2)]), 6),
    ];
    for (sp, s) in cases {
        let sc = build_minimal_scheme(&sp, &params()).unwrap();
        assert_eq!(sc.s, s, "{sp}");
        assert_eq!(sc.n, sp.n());
        assert_valid(&sc);
    }
}

#[test]
fn minimal_golden_spectra() {
    let sc = build_minimal_scheme(&spec(&[(golden(), 1, 2), (golden(), 0, 1)]), &params()).unwrap();
    let a = sorted_diag(&sc.a_numeric());
    let b = sorted_diag(&sc.b_numeric());
    assert!(close(a[0], TAU_C) && close(a[1], TAU) && close(a[2], TAU));
    assert_eq!(b.len(), 1);
    assert!(close(b[0], TAU_C));
}

#[test]
fn identity_h_is_not_generic() {
    let sp = spec(&[(golden(), 1, 2), (golden(), 0, 1)]);
    let sc = build_identity_h_scheme(&sp, &params()).unwrap();
    assert!(verify_eq_abc(&sc).passed);
    assert!(!sc.certificate.aperiodic());
    assert!(!audit(&sc).passed);
}

#[test]
fn naive_matches_three_vandermonde_blocks() {
    let sp = spec(&[(golden(), 1, 2), (golden(), 0, 1)]);
    let sc = build_naive_scheme(&sp, &params()).unwrap();
    assert_eq!(sc.s, 6);
    assert_valid(&sc);
    // every column of Y is (1, β) placed in one of three 2-row blocks; the
    // physical roots per block must be {τ}, {τ}, {τ′} in some order
    let y = y_numeric(&sc);
    let mut phys = vec![];
    for j in 0..sc.n {
        let blk = (0..3).find(|&b| close(y[2 * b][j], 1.0)).unwrap();
        phys.push((blk, if close(y[2 * blk + 1][j], TAU) { 1 } else { 0 }));
    }
    phys.sort();
    let mut roots: Vec<usize> = phys.iter().map(|p| p.1).collect();
    roots.sort();
    assert_eq!(roots, vec![0, 1, 1]);
    assert!(phys.windows(2).all(|w| w[0].0 != w[1].0));
    let b = sorted_diag(&sc.b_numeric());
    assert!(close(b[0], TAU_C) && close(b[1], TAU_C) && close(b[2], TAU));
}

#[test]
fn greedy_covers_every_block() {
    let g = greedy_assignment(&[2, 1], 2).unwrap();
    let mut blocks: Vec<usize> = g.iter().map(|p| p.1).collect();
    blocks.sort();
    blocks.dedup();
    assert_eq!(blocks, vec![0, 1]);
    assert_eq!(g.len(), 3);
}

#[test]
fn direct_sums() {
    let fib = build_vandermonde_scheme(&golden(), &[1], &params()).unwrap();
    let ff = direct_sum(&fib, &fib, B).unwrap();
    assert_eq!((ff.n, ff.s), (2, 4));
    assert_valid(&ff);
    let tr = build_trivial_integer(1, 1, &params()).unwrap();
    let ft = direct_sum(&fib, &tr, B).unwrap();
    assert_eq!((ft.n, ft.s), (2, 4));
    assert_valid(&ft);
    let cube = build_vandermonde_scheme(&cubic(), &[2], &params()).unwrap();
    let fc = direct_sum(&fib, &cube, B).unwrap();
    assert_eq!((fc.n, fc.s), (2, 5));
    assert_valid(&fc);
    let bad = build_identity_h_scheme(&spec(&[(golden(), 1, 2), (golden(), 0, 1)]), &params()).unwrap();
    assert!(direct_sum(&fib, &bad, B).is_err());
}

#[test]
fn build_for_mixed_spectrum() {
    let sp = spec(&[(golden(), 1, 2), (golden(), 0, 1), (IntPoly::from_i64(&[-2, 1]), 0, 1)]);
    let sc = build_scheme_for(&sp, Route::Auto, &params()).unwrap();
    assert_eq!((sc.n, sc.s), (4, 6));
    assert_valid(&sc);
    let naive = build_scheme_for(&sp, Route::Naive, &params()).unwrap();
    assert_eq!(naive.s, 8);
    assert_valid(&naive);
}

#[test]
fn json_round_trip() {
    let sp = spec(&[(golden(), 1, 2), (golden(), 0, 1)]);
    let sc = build_minimal_scheme(&sp, &params()).unwrap();
    let text = save_scheme(&sc).unwrap();
    let back = load_scheme(&text).unwrap();
    assert_eq!(back.y, sc.y);
    assert_eq!(back.l, sc.l);
    assert_eq!(back.c, sc.c);
    assert_valid(&back);
}

#[test]
fn audit_rejects_corruption() {
    let sc = build_vandermonde_scheme(&golden(), &[1], &params()).unwrap();
    let mut bad = sc.clone();
    let eps = Tp::from_q(&sc.tower, Q::new(1.into(), 1000.into()));
    bad.l.set(0, 0, sc.l.get(0, 0).add(&eps));
    let r = verify_eq_abc(&bad);
    assert!(!r.passed && !r.l_inverts_y);
    assert!(r.residual_at.is_some());

    let mut js = SchemeJson::from_scheme(&sc);
    js.c[0][0] = serde_json::Value::from("1/2");
    let half = js.to_scheme().unwrap();
    let r = verify_eq_abc(&half);
    assert!(!r.passed && !r.c_integral);
}
