//! Distinction of principal series representations of `GL(n)` over a quadratic
//! extension `K/F` of p-adic fields (p odd), checked on exact models.
//!
//! * [`extension`], [`characters`]: tame characters of `K*` and `F*` with exact
//!   group law, Galois action and restriction.
//! * [`distinction`]: the matching criterion for distinguished and
//!   η-distinguished principal series, and counter-examples to Jacquet's
//!   conjecture for `n ≥ 3`.
//! * [`gamma`]: Tate gamma factors of tame characters via Gauss sums.
//! * [`cosets`], [`cells`]: the finite model `F_{q²}/F_q` of the Borel orbits on
//!   `G(K)/G(F)`, and the Bruhat order on `S_n`.

pub mod cells;
pub mod characters;
pub mod cosets;
pub mod distinction;
pub mod error;
pub mod extension;
pub mod field;
pub mod gamma;
pub mod sampling;

pub use cells::Perm;
pub use characters::{Rational, TameCharacter, TameCharacterF, TameValue};
pub use cosets::{CosetModel, FiniteMatrix, OrbitTable};
pub use distinction::{Certificate, DistinctionVerdict, PrincipalSeriesDatum};
pub use error::{Error, Result};
pub use extension::{Extension, ExtensionDescriptor, Ramification};
pub use gamma::{AdditiveCharacter, GammaValue};
