//! Abelian Tate gamma factors of tame characters of `K*` (unramified `K/F`).
//!
//! The additive character is `ψ = ψ_F ∘ Tr_{K/F} ∘ (x ↦ δx)` with `ψ_F` of level
//! zero, so `ψ` is trivial on `F` and has level zero. Its residue shadow is
//! `ψ̄(t) = exp(2πi·Tr_{k_K/F_p}(β t)/p)` with `β = δ̄`.
//!
//! Convention (Tate, self-dual measure for `ψ`):
//!
//! ```text
//! γ(s, χ, ψ) = ε(s, χ, ψ) · L(1 − s, χ^{-1}) / L(s, χ)
//! L(s, χ)    = (1 − χ(ϖ) q_K^{-s})^{-1} if c = 0, else 1
//! ε(s, χ, ψ) = 1 if c = 0, else q_K^{-s} · χ(ϖ) · G(χ^{-1}, ψ̄)
//! ```
//!
//! It satisfies `γ(s,χ,ψ)·γ(1−s,χ^{-1},ψ^{-1}) = 1` and `|ε(1/2,χ,ψ)| = 1` for
//! unitary `χ`, which is all the `GL(2)` product identity needs.

use num_complex::Complex64;
use num_rational::Ratio;
use num_traits::Zero;
use rayon::prelude::*;

use crate::characters::{characters_trivial_on_f, ratio_f64, Rational, TameCharacter};
use crate::distinction::{is_distinguished, PrincipalSeriesDatum};
use crate::error::{Error, Result};
use crate::extension::Extension;

/// Tolerance for every floating identity checked in this module.
pub const GAMMA_TOLERANCE: f64 = 1e-9;

/// `ψ̄(t) = exp(2πi·Tr(βt)/p)`, stored as the trace of `β·g^k` for every `k`.
#[derive(Debug, Clone)]
pub struct AdditiveCharacter {
    ext: Extension,
    beta_dlog: u32,
    traces: Vec<u32>,
}

impl AdditiveCharacter {
    /// The standard character attached to `δ`.
    pub fn standard(ext: &Extension) -> Result<Self> {
        let delta = ext.delta_residue().ok_or_else(|| {
            Error::UnsupportedRamification(format!(
                "{ext}: additive characters are only modelled for unramified K/F"
            ))
        })?;
        let dlog = ext.residue_field_k().log(delta).expect("δ is a unit");
        Ok(Self::with_beta(ext, dlog))
    }

    fn with_beta(ext: &Extension, beta_dlog: u32) -> Self {
        let field = ext.residue_field_k();
        let m = field.order() as u64 - 1;
        let traces = (0..m)
            .map(|k| field.trace_to_prime(field.exp(beta_dlog as u64 + k)))
            .collect();
        AdditiveCharacter {
            ext: ext.clone(),
            beta_dlog,
            traces,
        }
    }

    pub fn ext(&self) -> &Extension {
        &self.ext
    }

    pub fn beta_dlog(&self) -> u32 {
        self.beta_dlog
    }

    /// Conductor exponent `n(ψ)`; always 0 here.
    pub fn level(&self) -> i32 {
        0
    }

    /// `ψ^{-1}`, i.e. `β ↦ −β`.
    pub fn inverse(&self) -> Self {
        let m = self.ext.q_k() as u32 - 1;
        Self::with_beta(&self.ext, (self.beta_dlog + m / 2) % m)
    }

    /// `ψ^σ = ψ ∘ σ`, i.e. `β ↦ β^q`.
    pub fn galois(&self) -> Self {
        let m = self.ext.q_k() - 1;
        Self::with_beta(&self.ext, (self.beta_dlog as u64 * self.ext.q() % m) as u32)
    }

    /// `β^q = −β`, the residue form of "trivial on `F`".
    pub fn is_trivial_on_f(&self) -> bool {
        let m = self.ext.q_k() - 1;
        let conj = self.beta_dlog as u64 * self.ext.q() % m;
        conj == (self.beta_dlog as u64 + m / 2) % m
    }

    /// `ψ̄(g^k)`.
    pub fn value(&self, k: u64) -> Complex64 {
        let m = self.traces.len() as u64;
        let t = self.traces[(k % m) as usize];
        Complex64::from_polar(1.0, std::f64::consts::TAU * t as f64 / self.ext.p() as f64)
    }

    /// `ψ̄` on an arbitrary residue element given by its field code (0 ↦ 1).
    pub fn value_at_code(&self, x: u32) -> Complex64 {
        match self.ext.residue_field_k().log(x) {
            None => Complex64::new(1.0, 0.0),
            Some(k) => self.value(k as u64),
        }
    }
}

impl PartialEq for AdditiveCharacter {
    fn eq(&self, other: &Self) -> bool {
        self.ext == other.ext && self.beta_dlog == other.beta_dlog
    }
}

fn root_of_unity(num: u64, den: u64) -> Complex64 {
    Complex64::from_polar(1.0, std::f64::consts::TAU * (num % den) as f64 / den as f64)
}

/// `G(c, ψ̄) = Σ_{t ∈ k_K*} ζ_{q_K−1}^{c·dlog t} ψ̄(t)` by direct summation.
pub fn gauss_sum(c: i64, psi: &AdditiveCharacter) -> Result<Complex64> {
    let m = psi.ext.q_k() - 1;
    let c = c.rem_euclid(m as i64) as u64;
    if c == 0 {
        return Err(Error::DegenerateGaussSum(m));
    }
    Ok((0..m)
        .map(|k| root_of_unity(c * k % m, m) * psi.value(k))
        .sum())
}

/// Tate `L(s, χ)`.
pub fn l_factor(chi: &TameCharacter, s: Rational) -> Result<Complex64> {
    if chi.is_ramified() {
        return Ok(Complex64::new(1.0, 0.0));
    }
    // χ(ϖ)·q_K^{-s} = e^{2πi·phase}·q_K^{-(mag+s)}
    if chi.phase().is_zero() && (chi.mag() + s).is_zero() {
        return Err(Error::Pole(format!("L(s, {chi}) at s = {s}")));
    }
    let q_k = chi.ext().q_k() as f64;
    let x = Complex64::from_polar(
        q_k.powf(-ratio_f64(chi.mag() + s)),
        std::f64::consts::TAU * ratio_f64(chi.phase()),
    );
    Ok((Complex64::new(1.0, 0.0) - x).inv())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaParts {
    pub l_num: Complex64,
    pub l_den: Complex64,
    pub epsilon: Complex64,
    pub gauss_summand_count: u64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaValue {
    pub value: Complex64,
    pub parts: GammaParts,
}

fn require_supported(chi: &TameCharacter, psi: &AdditiveCharacter) -> Result<()> {
    if !chi.ext().is_unramified() {
        return Err(Error::UnsupportedRamification(format!(
            "{}: gamma factors are only modelled for unramified K/F",
            chi.ext()
        )));
    }
    if chi.ext() != psi.ext() {
        return Err(Error::IncompatibleExtensions {
            left: chi.ext().to_string(),
            right: psi.ext().to_string(),
        });
    }
    Ok(())
}

/// `ε(s, χ, ψ)`.
pub fn epsilon_factor(chi: &TameCharacter, psi: &AdditiveCharacter, s: Rational) -> Result<Complex64> {
    require_supported(chi, psi)?;
    if !chi.is_ramified() {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let q_k = chi.ext().q_k() as f64;
    let g = gauss_sum(-(chi.c() as i64), psi)?;
    Ok(q_k.powf(-ratio_f64(s)) * chi.uniformizer_value() * g)
}

/// `γ(s, χ, ψ) = ε(s, χ, ψ)·L(1 − s, χ^{-1})/L(s, χ)`. Either L-factor having a
/// pole is reported as [`Error::Pole`].
pub fn gamma_factor(chi: &TameCharacter, psi: &AdditiveCharacter, s: Rational) -> Result<GammaValue> {
    require_supported(chi, psi)?;
    let one_minus_s = Rational::from_integer(1) - s;
    let l_num = l_factor(&chi.inv(), one_minus_s)?;
    let l_den = l_factor(chi, s)?;
    let epsilon = epsilon_factor(chi, psi, s)?;
    Ok(GammaValue {
        value: epsilon * l_num / l_den,
        parts: GammaParts {
            l_num,
            l_den,
            epsilon,
            gauss_summand_count: if chi.is_ramified() { chi.ext().q_k() - 1 } else { 0 },
        },
    })
}

fn half() -> Rational {
    Ratio::new(1, 2)
}

/// `γ(μχ, ψ)·γ(μ^{−σ}χ, ψ)` at `s = 1/2` without checking the hypotheses on `χ`, `ψ`.
pub fn gl2_gamma_product_unchecked(
    mu: &TameCharacter,
    chi: &TameCharacter,
    psi: &AdditiveCharacter,
) -> Result<Complex64> {
    let a = gamma_factor(&mu.mul(chi)?, psi, half())?;
    let b = gamma_factor(&mu.inv_galois().mul(chi)?, psi, half())?;
    Ok(a.value * b.value)
}

/// `γ(π(μ, μ^{−σ}) ⊗ χ, ψ) = γ(μχ, ψ)·γ(μ^{−σ}χ, ψ)` at `s = 1/2`, for `χ` trivial
/// on `F*` and `ψ` trivial on `F`.
pub fn gl2_gamma_product(
    mu: &TameCharacter,
    chi: &TameCharacter,
    psi: &AdditiveCharacter,
) -> Result<Complex64> {
    if !chi.is_trivial_on_f() {
        return Err(Error::Precondition(format!("chi = {chi} is not trivial on F*")));
    }
    if !psi.is_trivial_on_f() {
        return Err(Error::Precondition("psi is not trivial on F".into()));
    }
    gl2_gamma_product_unchecked(mu, chi, psi)
}

#[derive(Debug, Clone)]
pub struct GammaSweepRow {
    pub chi: TameCharacter,
    /// `None` when one of the four L-factors has a pole at 1/2.
    pub product: Option<Complex64>,
    pub deviation: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct Gl2GammaReport {
    pub mu: TameCharacter,
    pub sweep_size: usize,
    pub rows: Vec<GammaSweepRow>,
    pub all_products_one: bool,
    pub worst_deviation: f64,
    pub witnesses: Vec<TameCharacter>,
    pub poles: Vec<TameCharacter>,
    /// Verdict of the distinction module on `(μ, μ^{−σ})`; `None` if that datum is reducible.
    pub distinction_verdict: Option<bool>,
    pub tolerance: f64,
}

impl Gl2GammaReport {
    pub fn agrees(&self) -> Option<bool> {
        self.distinction_verdict.map(|v| v == self.all_products_one)
    }
}

/// Sweeps every tame `χ` trivial on `F*` and cross-checks the outcome against
/// [`is_distinguished`] on `(μ, μ^{−σ})`.
pub fn gl2_distinction_by_gamma(mu: &TameCharacter, psi: &AdditiveCharacter) -> Result<Gl2GammaReport> {
    require_supported(mu, psi)?;
    let sweep = characters_trivial_on_f(mu.ext());
    let rows: Vec<GammaSweepRow> = sweep
        .par_iter()
        .map(|chi| match gl2_gamma_product(mu, chi, psi) {
            Ok(product) => Ok(GammaSweepRow {
                chi: chi.clone(),
                product: Some(product),
                deviation: Some((product - 1.0).norm()),
            }),
            Err(Error::Pole(_)) => Ok(GammaSweepRow {
                chi: chi.clone(),
                product: None,
                deviation: None,
            }),
            Err(e) => Err(e),
        })
        .collect::<Result<_>>()?;
    let worst_deviation = rows.iter().filter_map(|r| r.deviation).fold(0.0, f64::max);
    let witnesses: Vec<_> = rows
        .iter()
        .filter(|r| r.deviation.is_some_and(|d| d > GAMMA_TOLERANCE))
        .map(|r| r.chi.clone())
        .collect();
    let poles: Vec<_> = rows
        .iter()
        .filter(|r| r.product.is_none())
        .map(|r| r.chi.clone())
        .collect();
    let datum = PrincipalSeriesDatum::new(vec![mu.clone(), mu.inv_galois()])?;
    let distinction_verdict = match is_distinguished(&datum) {
        Ok(v) => Some(v.distinguished),
        Err(Error::Reducible { .. }) => None,
        Err(e) => return Err(e),
    };
    Ok(Gl2GammaReport {
        mu: mu.clone(),
        sweep_size: rows.len(),
        all_products_one: witnesses.is_empty() && poles.is_empty(),
        rows,
        worst_deviation,
        witnesses,
        poles,
        distinction_verdict,
        tolerance: GAMMA_TOLERANCE,
    })
}
