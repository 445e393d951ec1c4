//! A planar pattern with five-fold symmetry from a four-dimensional scheme.
//! Writes fivefold.svg to the current directory.

use selfsim::exact_algebra::{cyclotomic, Q};
use selfsim::pointset::{build_window, generate, stats, to_svg, verify_selfsimilarity};
use selfsim::scheme_builder::{build_scheme_for, NumericParams, Route};
use selfsim::spectrum::SpectrumSpec;

fn main() -> selfsim::error::Result<()> {
    let f = cyclotomic(5);
    let spec = SpectrumSpec::new(&[(f.clone(), 2, 1), (f, 3, 1)], 256)?;
    let sc = build_scheme_for(&spec, Route::Auto, &NumericParams::default())?;
    let w = build_window(&sc, &Q::from_integer(1.into()))?;
    let ps = generate(&sc, &w, 10)?;
    let st = stats(&ps);
    let rep = verify_selfsimilarity(&ps, &sc)?;
    println!(
        "{} points, min gap {:.6}, covering radius {:.6}, {} violations",
        ps.points.len(),
        st.min_gap.unwrap_or(f64::NAN),
        st.covering_radius.unwrap_or(f64::NAN),
        rep.violations
    );
    std::fs::write("fivefold.svg", to_svg(&ps)?)?;
    Ok(())
}
