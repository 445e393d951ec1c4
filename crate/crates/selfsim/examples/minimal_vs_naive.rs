//! The minimal scheme against the class-by-class one for a repeated eigenvalue.

use selfsim::exact_algebra::IntPoly;
use selfsim::scheme_builder::{build_minimal_scheme, build_naive_scheme, verify_eq_abc, NumericParams};
use selfsim::spectrum::SpectrumSpec;

fn main() -> selfsim::error::Result<()> {
    let g = IntPoly::from_i64(&[-1, -1, 1]);
    let f = IntPoly::from_i64(&[1, -1, -2, 1]);
    let specs = [
        SpectrumSpec::new(&[(g.clone(), 1, 2), (g, 0, 1)], 256)?,
        SpectrumSpec::new(&[(f.clone(), 2, 2), (f.clone(), 0, 1), (f, 1, 1)], 256)?,
    ];
    let p = NumericParams::default();
    for sc in specs.iter().flat_map(|s| [build_minimal_scheme(s, &p), build_naive_scheme(s, &p)]) {
        let sc = sc?;
        let r = verify_eq_abc(&sc);
        println!(
            "{:<40} s = {:>2}, tower degree {:>2}, equation {}, generic {}",
            sc.provenance,
            sc.s,
            sc.tower.dim(),
            if r.passed { "exact" } else { "FAILS" },
            sc.is_generic()
        );
    }
    Ok(())
}
