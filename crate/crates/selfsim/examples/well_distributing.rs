//! 0/1 matrices with prescribed row sums whose columns share a common total.

use selfsim::scheme_builder::{min_feasible_k_brute, well_distributing};
use selfsim::spectrum::naive_k;

fn main() -> selfsim::error::Result<()> {
    for l in [vec![2, 1, 1], vec![3, 1], vec![2, 2, 2], vec![3, 0, 1, 2]] {
        let k = naive_k(&l)?;
        let m = well_distributing(&l, k)?;
        println!("l = {l:?}: K = {k} (brute force {:?})", min_feasible_k_brute(&l));
        for row in &m.grid {
            println!("    {row:?}");
        }
    }
    Ok(())
}
