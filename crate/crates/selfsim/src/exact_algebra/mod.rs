//! Exact arithmetic: integer polynomials, factorization over ℚ, certified
//! root isolation, number-field towers and conjugation maps.

pub mod ball;
pub mod conj;
pub mod factor;
pub mod poly;
pub mod qmat;
pub mod roots;
pub mod splitting;
pub mod tower;

pub use ball::CBall;
pub use conj::{conjugation_map, conjugation_map_in, ConjugationMap};
pub use factor::{cyclotomic, factor_over_q, is_cyclotomic, is_irreducible};
pub use poly::{IntPoly, QPoly, Q};
pub use roots::{isolate_roots, modulus_vs_one, AlgebraicInteger};
pub use splitting::{factor_over_tower, SplittingField, TPoly, TowerMap};
pub use tower::{Fe, Tower};

/// Default working precision in bits.
pub const DEFAULT_PRECISION_BITS: u64 = 256;
