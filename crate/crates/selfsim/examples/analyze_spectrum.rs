//! Dimension bounds and property 𝔓 for a few spectra.

use selfsim::exact_algebra::{cyclotomic, IntPoly};
use selfsim::spectrum::{check_properties_p, min_scheme_dimension, min_set_dimension, naive_scheme_dimension, SpectrumSpec};

fn main() -> selfsim::error::Result<()> {
    let golden = IntPoly::from_i64(&[-1, -1, 1]);
    let cases = [
        ("τ", vec![(golden.clone(), 1, 1)]),
        ("τ (×2), τ′", vec![(golden.clone(), 1, 2), (golden.clone(), 0, 1)]),
        ("τ′ alone", vec![(golden, 0, 1)]),
        ("72° rotation", vec![(cyclotomic(5), 2, 1), (cyclotomic(5), 3, 1)]),
    ];
    for (name, entries) in cases {
        let spec = SpectrumSpec::new(&entries, 128)?;
        let p = check_properties_p(&spec)?;
        println!(
            "{name:>14}: n = {}, minimal s = {}, naive s = {}, set s = {}, 𝔓 {}",
            spec.n(),
            min_scheme_dimension(&spec)?.s,
            naive_scheme_dimension(&spec)?,
            min_set_dimension(&spec).map_or("-".into(), |s| s.to_string()),
            if p.satisfied { "holds".to_string() } else { format!("fails: {}", p.failures[0]) }
        );
    }
    Ok(())
}
