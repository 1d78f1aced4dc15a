//! Seeded random inputs for property checks: tame characters, planted tuples
//! and matrices over the finite model.

use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::characters::{characters_trivial_on_f, extend_from_f, Rational, TameCharacter};
use crate::cosets::{CosetModel, FiniteMatrix};
use crate::distinction::PrincipalSeriesDatum;
use crate::error::Result;
use crate::extension::Extension;

pub type SeededRng = ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Magnitude exponents used by the random generators. Two of them differ by 1,
/// so reducible data do come up and exercise the rejection path.
pub const SAMPLE_MAGS: [(i64, i64); 5] = [(0, 1), (0, 1), (1, 2), (-1, 2), (1, 1)];

/// Uniform residue exponent, phase in `(1/phase_den)·Z`, magnitude from [`SAMPLE_MAGS`].
pub fn random_character(ext: &Extension, phase_den: i64, rng: &mut impl Rng) -> TameCharacter {
    let m = ext.q_k() as i64 - 1;
    let (a, b) = SAMPLE_MAGS[rng.random_range(0..SAMPLE_MAGS.len())];
    TameCharacter::new(
        ext.clone(),
        rng.random_range(0..m),
        Rational::new(rng.random_range(0..phase_den), phase_den),
        Rational::new(a, b),
    )
}

/// An irreducible tuple of length `n` with planted structure: pairs
/// `(μ, μ^{−σ})`, characters trivial on `F*`, characters restricting to `η`, and
/// unconstrained characters, shuffled. Uniform tuples would almost never be
/// distinguished.
pub fn random_tuple(ext: &Extension, n: usize, rng: &mut impl Rng) -> Result<PrincipalSeriesDatum> {
    let trivial = characters_trivial_on_f(ext);
    let eta_tilde = extend_from_f(&ext.eta_character())?;
    loop {
        let mut chars = Vec::with_capacity(n);
        while chars.len() < n {
            match rng.random_range(0..4) {
                0 => chars.push(random_character(ext, 4, rng)),
                1 if chars.len() + 2 <= n => {
                    let mu = random_character(ext, 4, rng);
                    chars.push(mu.inv_galois());
                    chars.push(mu);
                }
                2 => chars.push(trivial.choose(rng).expect("nonempty").clone()),
                3 => chars.push(eta_tilde.mul(trivial.choose(rng).expect("nonempty"))?),
                _ => {}
            }
        }
        chars.shuffle(rng);
        let datum = PrincipalSeriesDatum::new(chars)?;
        if datum.reducibility_witness().is_none() {
            return Ok(datum);
        }
    }
}

/// A uniformly random element of `GL_n(F_{q²})`, by rejection.
pub fn random_invertible(m: &CosetModel, n: usize, rng: &mut impl Rng) -> FiniteMatrix {
    let order = m.field().order();
    loop {
        let rows = (0..n)
            .map(|_| (0..n).map(|_| rng.random_range(0..order)).collect())
            .collect();
        let g = FiniteMatrix::from_rows(rows).expect("square");
        if g.inverse(m.field()).is_ok() {
            return g;
        }
    }
}

/// A random invertible upper-triangular matrix.
pub fn random_borel(m: &CosetModel, n: usize, rng: &mut impl Rng) -> FiniteMatrix {
    let order = m.field().order();
    let mut b = FiniteMatrix::zero(n);
    for i in 0..n {
        b.set(i, i, rng.random_range(1..order));
        for j in i + 1..n {
            b.set(i, j, rng.random_range(0..order));
        }
    }
    b
}
