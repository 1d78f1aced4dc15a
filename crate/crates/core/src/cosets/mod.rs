//! Finite model of the symmetric space `G(K)/G(F)`: `K/F` becomes `F_{q²}/F_q`,
//! σ the Frobenius, and `G(K)/G(F)` becomes `S = {M : M·M^σ = I}` via
//! `g ↦ g^σ·g^{-1}`.

mod enumerate;
mod matrix;
mod reduce;

pub use enumerate::{
    borel_generators, count_s, enumerate_s, orbit_decomposition, Orbit, OrbitTable, COUNT_LIMIT,
    ENUMERATION_LIMIT, ENUMERATION_MAX_N,
};
pub use matrix::{
    gl_order, s_map, solve_affine, symmetric_space_size, u_matrix, AffineSolution, CosetModel,
    FiniteMatrix, MODEL_MAX_ORDER,
};
pub use reduce::{
    bruhat_decompose, reduce_to_involution, solve_torus_h90, solve_unipotent_h90,
    solve_unipotent_h90_exhaustive, torus_conjugate, u_r_w_coverage, u_r_w_representative,
    u_r_w_representatives, BruhatDecomposition, CoverageReport, Reduction, Twist,
};
