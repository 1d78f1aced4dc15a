//! Fixed inputs for the criterion benches.

use prinseries_core::cosets::{s_map, CosetModel, FiniteMatrix};
use prinseries_core::distinction::PrincipalSeriesDatum;
use prinseries_core::sampling::{random_invertible, random_tuple, seeded_rng};
use prinseries_core::Extension;

pub const SEED: u64 = 7;

/// `count` random irreducible tuples of length `n` over `ext`.
pub fn tuples(ext: &Extension, n: usize, count: usize) -> Vec<PrincipalSeriesDatum> {
    let mut rng = seeded_rng(SEED);
    (0..count)
        .map(|_| random_tuple(ext, n, &mut rng).expect("sampler yields irreducible tuples"))
        .collect()
}

/// `count` random points `g^σ g^{-1}` of the symmetric space.
pub fn symmetric_points(m: &CosetModel, n: usize, count: usize) -> Vec<FiniteMatrix> {
    let mut rng = seeded_rng(SEED);
    (0..count)
        .map(|_| s_map(m, &random_invertible(m, n, &mut rng)).expect("invertible input"))
        .collect()
}
