//! The rows of an inverse Vandermonde matrix are Galois conjugates of the first.

use selfsim::exact_algebra::{conjugation_map_in, IntPoly, SplittingField};
use selfsim::exact_matrices::vandermonde;

fn main() -> selfsim::error::Result<()> {
    let f = IntPoly::from_i64(&[1, -1, -2, 1]);
    let sf = SplittingField::new(&[f.clone()], 256)?;
    let zi = vandermonde(&f, &sf)?.invert()?;
    let roots = &sf.roots[0];
    let i0 = sf.tower.levels()[0].root_index;
    println!("Z⁻¹ =\n{zi:?}");
    for (j, r) in roots.iter().enumerate().filter(|(j, _)| *j != i0) {
        let psi = conjugation_map_in(&roots[i0], r, &sf)?;
        let ok = (0..roots.len()).all(|c| {
            let x = zi.get(i0, c).as_const().unwrap();
            psi.pull_back(&x).is_some_and(|y| Some(psi.apply(&y)) == zi.get(j, c).as_const())
        });
        println!("row {j} = conjugate of row {i0}: {ok}");
    }
    Ok(())
}
