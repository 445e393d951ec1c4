use super::*;
use crate::exact_algebra::ball::sqrt_upper;
use crate::exact_algebra::cyclotomic;
use crate::scheme_builder::{build_minimal_scheme, build_vandermonde_scheme, NumericParams};
use crate::spectrum::SpectrumSpec;
use rand::{Rng, SeedableRng};

const B: u64 = 128;

fn params() -> NumericParams {
    NumericParams { bits: B, ..NumericParams::default() }
}

fn golden() -> IntPoly {
    IntPoly::from_i64(&[-1, -1, 1])
}

fn fib() -> Scheme {
    build_vandermonde_scheme(&golden(), &[1], &params()).unwrap()
}

fn phi5() -> Scheme {
    let f = cyclotomic(5);
    build_minimal_scheme(&SpectrumSpec::new(&[(f.clone(), 2, 1), (f, 3, 1)], B).unwrap(), &params()).unwrap()
}

fn q(s: &str) -> Q {
    crate::exact_algebra::ball::parse_rational(s).unwrap()
}

/// half of 1/√5: the symmetric window of length 1 in ℤ[τ] units
fn half_unit() -> Q {
    Q::from_integer(1.into()) / sqrt_upper(&Q::from_integer(20.into()), 200)
}

const TAU: f64 = 1.618_033_988_749_895;

#[test]
fn window_shapes() {
    let w = build_window(&fib(), &q("1/2")).unwrap();
    assert_eq!(w.blocks, vec![WindowBlock::Interval { index: 0, lo: q("-1/2"), hi: q("1/2") }]);
    let w = build_window(&phi5(), &q("1")).unwrap();
    assert_eq!(w.blocks, vec![WindowBlock::Disk { index: 0, radius: q("1") }]);
    let expanding = build_vandermonde_scheme(&golden(), &[0], &params()).unwrap();
    assert!(matches!(build_window(&expanding, &q("1")), Err(Error::NoInvariantWindow(_))));
}

#[test]
fn fibonacci_matches_closed_form() {
    // x = (r₂ − τ′r₁)/√5, x* = (τr₁ − r₂)/√5 for L = [[1, 1], [τ, τ′]]⁻¹
    let sc = fib();
    let w = build_window(&sc, &half_unit()).unwrap();
    let ps = generate(&sc, &w, 30).unwrap();
    let s5 = 5f64.sqrt();
    let tc = 1.0 - TAU;
    let mut expect = vec![];
    for r1 in -30i64..=30 {
        for r2 in -30i64..=30 {
            let xs = (TAU * r1 as f64 - r2 as f64) / s5;
            if xs.abs() <= 0.5 / s5 {
                expect.push((vec![r1, r2], (r2 as f64 - tc * r1 as f64) / s5));
            }
        }
    }
    assert_eq!(ps.points.len(), expect.len());
    for (r, x) in expect {
        let p = ps.points.iter().find(|p| p.r == r).unwrap();
        assert!((p.x[0] - x).abs() < 1e-12);
    }
    assert!(ps.flagged.is_empty());
}

#[test]
fn fibonacci_two_gaps_and_self_similarity() {
    let sc = fib();
    let w = build_window(&sc, &half_unit()).unwrap();
    let ps = generate(&sc, &w, 60).unwrap();
    let st = stats(&ps);
    assert_eq!(st.gaps.len(), 2, "{:?}", st.gaps);
    assert!((st.gaps[1].0 / st.gaps[0].0 - TAU).abs() < 1e-9);
    let rep = verify_selfsimilarity(&ps, &sc).unwrap();
    assert_eq!(rep.violations, 0);
    assert!(rep.confirmed > 0);
    let (mut a, _) = sc.a_numeric().to_f64_with_error();
    a[0][0] *= 1.01;
    assert!(verify_selfsimilarity_with(&ps, &sc, &a).unwrap().violations > 0);
}

#[test]
fn zero_window_keeps_origin() {
    let sc = fib();
    let w = build_window(&sc, &Q::zero()).unwrap();
    let ps = generate(&sc, &w, 20).unwrap();
    assert_eq!(ps.points.len(), 1);
    assert_eq!(ps.points[0].r, vec![0, 0]);
    assert!(stats(&ps).min_gap.is_none());
}

#[test]
fn boundary_points_are_flagged() {
    // ±1/√5 are the star images of (0, ∓1); a 300-bit approximation of the
    // bound is far below the working precision, so both stay undecided
    let sc = fib();
    let bound = crate::exact_algebra::ball::sqrt_lower(&Q::from_integer(5.into()), 300) / Q::from_integer(5.into());
    let w = WindowSpec::new(1, vec![WindowBlock::Interval { index: 0, lo: -bound.clone(), hi: bound }], Q::zero()).unwrap();
    let ps = generate(&sc, &w, 5).unwrap();
    assert_eq!(ps.flagged, vec![vec![0, -1], vec![0, 1]]);
    assert!(ps.points.iter().all(|p| p.r != vec![0, 1] && p.r != vec![0, -1]));
    assert!(matches!(generate_with_budget(&sc, &w, 5, 0), Err(Error::Precision(_))));
}

#[test]
fn enlarging_radius_gives_superset() {
    let sc = fib();
    let w = build_window(&sc, &half_unit()).unwrap();
    let small = generate(&sc, &w, 20).unwrap();
    let big = generate(&sc, &w, 40).unwrap();
    let bigset: HashSet<&Vec<i64>> = big.points.iter().map(|p| &p.r).collect();
    assert!(small.points.iter().all(|p| bigset.contains(&p.r)));
    assert!(big.points.len() > small.points.len());
}

#[test]
fn star_images_fill_window() {
    let sc = fib();
    let w = build_window(&sc, &half_unit()).unwrap();
    let radii: Vec<f64> = [10, 20, 40, 80].iter().map(|&r| star_empty_radius(&generate(&sc, &w, r).unwrap()).unwrap()).collect();
    assert!(radii.windows(2).all(|p| p[1] < p[0]), "{radii:?}");
}

#[test]
fn fivefold_pattern() {
    let sc = phi5();
    let w = build_window(&sc, &q("1")).unwrap();
    let counts: Vec<usize> = [3, 6].iter().map(|&r| generate(&sc, &w, r).unwrap().points.len()).collect();
    // the physical footprint of the box grows like R², so (13/7)² ≈ 3.45
    let ratio = counts[1] as f64 / counts[0] as f64;
    assert!(ratio > 2.5 && ratio < 4.5, "{counts:?}");
    let ps = generate(&sc, &w, 6).unwrap();
    assert!(stats(&ps).min_gap.unwrap() > 0.0);
    let rep = verify_selfsimilarity(&ps, &sc).unwrap();
    assert_eq!(rep.violations, 0);
    assert!(rep.confirmed > 0);
}

#[test]
fn windows_are_invariant() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    for sc in [fib(), phi5()] {
        let w = build_window(&sc, &q("1")).unwrap();
        let (b, _) = sc.b_numeric().to_f64_with_error();
        for _ in 0..2000 {
            let u: Vec<f64> = (0..w.dim).map(|_| rng.gen()).collect();
            let y = w.sample(&u);
            let by: Vec<f64> = (0..w.dim).map(|i| (0..w.dim).map(|j| b[i][j] * y[j]).sum()).collect();
            assert!(w.contains(&by, 1e-12));
        }
    }
}

#[test]
fn integer_lattice_gaps() {
    let w = WindowSpec::new(1, vec![WindowBlock::Interval { index: 0, lo: q("-1"), hi: q("1") }], q("1")).unwrap();
    let points = (0..10).map(|k| Point { x: vec![k as f64], x_star: vec![0.0], err: 0.0, r: vec![k, 0] }).collect();
    let ps = PointSet { n: 1, s: 2, points, flagged: vec![], enum_radius: 10, precision_bits: 64, window: w, indets: vec![] };
    let st = stats(&ps);
    assert_eq!(st.gaps, vec![(1.0, 9)]);
    assert_eq!(st.min_gap, Some(1.0));
}

#[test]
fn csv_round_trip() {
    let sc = fib();
    let w = build_window(&sc, &half_unit()).unwrap();
    let ps = generate(&sc, &w, 15).unwrap();
    let csv = to_csv(&ps, &sc);
    assert!(csv.starts_with("x1,star1,r1,r2\n"));
    let rs = coordinates_from_csv(&csv, 2).unwrap();
    let back = points_from_coordinates(&sc, &w, rs, 15);
    assert_eq!(back.points, ps.points);
    assert!(coordinates_from_csv(&csv, 3).is_err());
    let svg = to_svg(&ps).unwrap();
    assert_eq!(svg.matches("<circle").count(), ps.points.len());
}
