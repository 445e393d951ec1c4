//! The Fibonacci chain: build the scheme, cut a window, check gaps and self-similarity.

use selfsim::exact_algebra::ball::sqrt_upper;
use selfsim::exact_algebra::{IntPoly, Q};
use selfsim::pointset::{build_window, generate, stats, verify_selfsimilarity};
use selfsim::scheme_builder::{build_scheme_for, NumericParams, Route};
use selfsim::spectrum::SpectrumSpec;

fn main() -> selfsim::error::Result<()> {
    let spec = SpectrumSpec::new(&[(IntPoly::from_i64(&[-1, -1, 1]), 1, 1)], 256)?;
    let sc = build_scheme_for(&spec, Route::Auto, &NumericParams::default())?;
    println!("{} (n = {}, s = {})", sc.provenance, sc.n, sc.s);
    println!("A = {:?}\nB = {:?}\nC = {:?}", sc.a, sc.b, sc.c);

    let half = Q::from_integer(1.into()) / sqrt_upper(&Q::from_integer(20.into()), 200);
    let w = build_window(&sc, &half)?;
    let ps = generate(&sc, &w, 100)?;
    let st = stats(&ps);
    println!("{} points, gaps:", ps.points.len());
    for (g, k) in &st.gaps {
        println!("  {g:.9} × {k}");
    }
    let rep = verify_selfsimilarity(&ps, &sc)?;
    println!("A·x checked for {} points: {} confirmed, {} violations", rep.checked, rep.confirmed, rep.violations);
    Ok(())
}
