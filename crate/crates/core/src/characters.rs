//! Exact tame characters of `K*` and `F*`.
//!
//! A tame character of `K*` is determined by a residue exponent `c` (it sends
//! the Teichmüller lift of `g^k` to `ζ_{q_K−1}^{c·k}`) and its value at the
//! uniformizer, `χ(ϖ_K) = e^{2πi·phase} · q_K^{−mag}` with `phase ∈ [0,1)` and
//! `mag` rational. Everything is stored exactly, so equality is decidable.
//!
//! `F`-characters use the same shape with modulus `q − 1`, generator `g_F`
//! and uniformizer `p`.

use std::cmp::Ordering;
use std::fmt;

use num_complex::Complex64;
use num_rational::Ratio;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::extension::Extension;

pub type Rational = Ratio<i64>;

fn frac(r: Rational) -> Rational {
    r - r.floor()
}

fn zero() -> Rational {
    Rational::zero()
}

/// Exact value of a tame character: `e^{2πi·phase} · q^{−log_q}` with `q = |k_F|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TameValue {
    pub phase: Rational,
    pub log_q: Rational,
}

impl TameValue {
    pub fn new(phase: Rational, log_q: Rational) -> Self {
        TameValue {
            phase: frac(phase),
            log_q,
        }
    }

    pub fn is_one(&self) -> bool {
        self.phase.is_zero() && self.log_q.is_zero()
    }

    pub fn to_complex(&self, q: u64) -> Complex64 {
        let r = (q as f64).powf(-ratio_f64(self.log_q));
        Complex64::from_polar(r, std::f64::consts::TAU * ratio_f64(self.phase))
    }
}

pub fn ratio_f64(r: Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Tame character of `K*`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TameCharacter {
    ext: Extension,
    c: u32,
    phase: Rational,
    mag: Rational,
}

/// Tame character of `F*`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TameCharacterF {
    ext: Extension,
    c: u32,
    phase: Rational,
    mag: Rational,
}

fn check_same(a: &Extension, b: &Extension) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::IncompatibleExtensions {
            left: a.to_string(),
            right: b.to_string(),
        })
    }
}

fn fmt_char(out: &mut fmt::Formatter<'_>, c: u32, phase: Rational, mag: Rational) -> fmt::Result {
    write!(out, "c={c}")?;
    if !phase.is_zero() {
        write!(out, ",phase={}/{}", phase.numer(), phase.denom())?;
    }
    if !mag.is_zero() {
        write!(out, ",mag={}/{}", mag.numer(), mag.denom())?;
    }
    Ok(())
}

impl TameCharacter {
    pub fn new(ext: Extension, c: i64, phase: Rational, mag: Rational) -> Self {
        let m = ext.q_k() as i64 - 1;
        TameCharacter {
            c: c.rem_euclid(m) as u32,
            phase: frac(phase),
            mag,
            ext,
        }
    }

    /// Unitary character with the given residue exponent and phase `num/den`.
    pub fn unitary(ext: &Extension, c: i64, num: i64, den: i64) -> Self {
        Self::new(ext.clone(), c, Ratio::new(num, den), zero())
    }

    pub fn trivial(ext: &Extension) -> Self {
        Self::new(ext.clone(), 0, zero(), zero())
    }

    /// `|·|_K`: `χ(ϖ_K) = q_K^{−1}`.
    pub fn abs_k(ext: &Extension) -> Self {
        Self::new(ext.clone(), 0, zero(), Rational::from_integer(1))
    }

    pub fn ext(&self) -> &Extension {
        &self.ext
    }

    pub fn c(&self) -> u32 {
        self.c
    }

    pub fn phase(&self) -> Rational {
        self.phase
    }

    pub fn mag(&self) -> Rational {
        self.mag
    }

    pub fn is_trivial(&self) -> bool {
        self.c == 0 && self.phase.is_zero() && self.mag.is_zero()
    }

    pub fn is_unitary(&self) -> bool {
        self.mag.is_zero()
    }

    /// Tamely ramified (nontrivial on units) as opposed to unramified.
    pub fn is_ramified(&self) -> bool {
        self.c != 0
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        check_same(&self.ext, &other.ext)?;
        Ok(Self::new(
            self.ext.clone(),
            self.c as i64 + other.c as i64,
            self.phase + other.phase,
            self.mag + other.mag,
        ))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.mul(&other.inv())
    }

    pub fn inv(&self) -> Self {
        Self::new(self.ext.clone(), -(self.c as i64), -self.phase, -self.mag)
    }

    pub fn pow(&self, e: i64) -> Self {
        Self::new(
            self.ext.clone(),
            self.c as i64 * e,
            self.phase * e,
            self.mag * e,
        )
    }

    /// `χ^σ(x) = χ(x^σ)`.
    pub fn galois(&self) -> Self {
        if self.ext.is_unramified() {
            // σ(p) = p, σ = Frobenius on residues
            let m = self.ext.q_k() - 1;
            let c = self.c as u64 * self.ext.q() % m;
            Self::new(self.ext.clone(), c as i64, self.phase, self.mag)
        } else {
            // σ(δ) = −δ and χ(−1) = (−1)^c
            Self::new(
                self.ext.clone(),
                self.c as i64,
                self.phase + Ratio::new(self.c as i64, 2),
                self.mag,
            )
        }
    }

    /// `χ^{−σ}`, the inverse of the Galois conjugate.
    pub fn inv_galois(&self) -> Self {
        self.galois().inv()
    }

    /// `χ|_{F*}`.
    pub fn restrict_to_f(&self) -> TameCharacterF {
        let ext = self.ext.clone();
        match ext.u0() {
            None => TameCharacterF::new(ext, self.c as i64, self.phase, self.mag * 2),
            Some(u0) => {
                // p = δ²·ε^{-1} with ε̄ = g^{u0}
                let qm1 = ext.q() as i64 - 1;
                let phase = self.phase * 2 - Ratio::new(self.c as i64 * u0 as i64, qm1);
                TameCharacterF::new(ext, self.c as i64, phase, self.mag * 2)
            }
        }
    }

    pub fn is_trivial_on_f(&self) -> bool {
        self.restrict_to_f().is_trivial()
    }

    pub fn equals_eta_on_f(&self) -> bool {
        self.restrict_to_f() == self.ext.eta_character()
    }

    /// `χ(ϖ_K^v · [g^k])`.
    pub fn evaluate(&self, v: i64, k: i64) -> TameValue {
        let m = self.ext.q_k() as i64 - 1;
        TameValue::new(
            self.phase * v + Ratio::new(self.c as i64 * k.rem_euclid(m), m),
            self.mag * v * self.ext.residue_degree(),
        )
    }

    /// `χ(ϖ_K)` as a floating complex number.
    pub fn uniformizer_value(&self) -> Complex64 {
        self.evaluate(1, 0).to_complex(self.ext.q())
    }

    fn sort_key(&self) -> (u32, i64, i64, Rational) {
        (self.c, *self.phase.denom(), *self.phase.numer(), self.mag)
    }
}

impl PartialOrd for TameCharacter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders by `(c, phase denominator, phase numerator, mag)` within an extension.
impl Ord for TameCharacter {
    fn cmp(&self, other: &Self) -> Ordering {
        self.ext
            .descriptor()
            .cmp(&other.ext.descriptor())
            .then_with(|| self.sort_key().cmp(&other.sort_key()))
    }
}

impl fmt::Display for TameCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_char(f, self.c, self.phase, self.mag)
    }
}

impl TameCharacterF {
    pub fn new(ext: Extension, c: i64, phase: Rational, mag: Rational) -> Self {
        let m = ext.q() as i64 - 1;
        TameCharacterF {
            c: c.rem_euclid(m) as u32,
            phase: frac(phase),
            mag,
            ext,
        }
    }

    pub fn trivial(ext: &Extension) -> Self {
        Self::new(ext.clone(), 0, zero(), zero())
    }

    pub fn ext(&self) -> &Extension {
        &self.ext
    }

    pub fn c(&self) -> u32 {
        self.c
    }

    pub fn phase(&self) -> Rational {
        self.phase
    }

    pub fn mag(&self) -> Rational {
        self.mag
    }

    pub fn is_trivial(&self) -> bool {
        self.c == 0 && self.phase.is_zero() && self.mag.is_zero()
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        check_same(&self.ext, &other.ext)?;
        Ok(Self::new(
            self.ext.clone(),
            self.c as i64 + other.c as i64,
            self.phase + other.phase,
            self.mag + other.mag,
        ))
    }

    pub fn inv(&self) -> Self {
        Self::new(self.ext.clone(), -(self.c as i64), -self.phase, -self.mag)
    }

    /// `χ_F(p^v · [g_F^k])`.
    pub fn evaluate(&self, v: i64, k: i64) -> TameValue {
        let m = self.ext.q() as i64 - 1;
        TameValue::new(
            self.phase * v + Ratio::new(self.c as i64 * k.rem_euclid(m), m),
            self.mag * v,
        )
    }

    /// The base change `χ_F ∘ N_{K/F}`, a tame character of `K*`.
    pub fn compose_norm(&self) -> TameCharacter {
        let ext = self.ext.clone();
        match ext.u0() {
            None => {
                let c = self.c as i64 * (ext.q() as i64 + 1);
                TameCharacter::new(ext, c, self.phase * 2, self.mag)
            }
            Some(u0) => {
                let qm1 = ext.q() as i64 - 1;
                let minus_eps = qm1 / 2 + u0 as i64;
                let phase = self.phase + Ratio::new(self.c as i64 * minus_eps, qm1);
                TameCharacter::new(ext, 2 * self.c as i64, phase, self.mag)
            }
        }
    }
}

impl fmt::Display for TameCharacterF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_char(f, self.c, self.phase, self.mag)
    }
}

/// Some tame `χ` of `K*` with `χ|_{F*} = χ_F`: smallest non-negative `c`, then
/// smallest phase.
pub fn extend_from_f(chi_f: &TameCharacterF) -> Result<TameCharacter> {
    let ext = chi_f.ext().clone();
    let mag = chi_f.mag() / 2;
    let candidate = match ext.u0() {
        None => TameCharacter::new(ext, chi_f.c() as i64, chi_f.phase(), mag),
        Some(u0) => {
            let qm1 = ext.q() as i64 - 1;
            let c = chi_f.c() as i64;
            let base = frac((chi_f.phase() + Ratio::new(c * u0 as i64, qm1)) / 2);
            let phase = if base >= Ratio::new(1, 2) {
                base - Ratio::new(1, 2)
            } else {
                base
            };
            TameCharacter::new(ext, c, phase, mag)
        }
    };
    if &candidate.restrict_to_f() != chi_f {
        return Err(Error::Internal(format!(
            "extension of {chi_f} failed to restrict back"
        )));
    }
    Ok(candidate)
}

/// All tame characters of `K*` trivial on `F*` (a finite group at tame level).
pub fn characters_trivial_on_f(ext: &Extension) -> Vec<TameCharacter> {
    let mut out: Vec<TameCharacter> = match ext.u0() {
        None => {
            let q = ext.q() as i64;
            (0..=q)
                .map(|j| TameCharacter::new(ext.clone(), j * (q - 1), zero(), zero()))
                .collect()
        }
        Some(_) => vec![
            TameCharacter::new(ext.clone(), 0, zero(), zero()),
            TameCharacter::new(ext.clone(), 0, Ratio::new(1, 2), zero()),
        ],
    };
    debug_assert!(out.iter().all(|chi| chi.is_trivial_on_f()));
    out.sort();
    out
}

/// The finite family of tame characters with phases in `(1/phase_den)·Z` and
/// magnitude exponents from `mags`, in sorted order.
pub fn character_grid(ext: &Extension, phase_den: i64, mags: &[Rational]) -> Vec<TameCharacter> {
    let m = ext.q_k() as i64 - 1;
    let mut out = Vec::with_capacity((m * phase_den) as usize * mags.len());
    for c in 0..m {
        for num in 0..phase_den {
            for &mag in mags {
                out.push(TameCharacter::new(ext.clone(), c, Ratio::new(num, phase_den), mag));
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

fn parse_rational(s: &str) -> std::result::Result<Rational, String> {
    let s = s.trim();
    let parse_int = |t: &str| {
        t.trim()
            .parse::<i64>()
            .map_err(|_| format!("'{t}' is not an integer"))
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let d = parse_int(d)?;
            if d == 0 {
                return Err("zero denominator".into());
            }
            Ok(Ratio::new(parse_int(n)?, d))
        }
        None => Ok(Rational::from_integer(parse_int(s)?)),
    }
}

/// Parses `c=<int>[,phase=<num>/<den>][,mag=<num>/<den>]`. `index` is 1-based and
/// only used in diagnostics.
pub fn parse_character(ext: &Extension, input: &str, index: usize) -> Result<TameCharacter> {
    let err = |reason: String| Error::CharacterSyntax {
        index,
        input: input.to_string(),
        reason,
    };
    let (mut c, mut phase, mut mag) = (None, None, None);
    for item in input.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (key, value) = item
            .split_once('=')
            .ok_or_else(|| err(format!("expected key=value, got '{item}'")))?;
        match key.trim() {
            "c" => {
                let v = value
                    .trim()
                    .parse::<i64>()
                    .map_err(|_| err(format!("c = '{value}' is not an integer")))?;
                if c.replace(v).is_some() {
                    return Err(err("duplicate c".into()));
                }
            }
            "phase" => {
                if phase.replace(parse_rational(value).map_err(&err)?).is_some() {
                    return Err(err("duplicate phase".into()));
                }
            }
            "mag" => {
                if mag.replace(parse_rational(value).map_err(&err)?).is_some() {
                    return Err(err("duplicate mag".into()));
                }
            }
            other => return Err(err(format!("unknown key '{other}'"))),
        }
    }
    let c = c.ok_or_else(|| err("missing c".into()))?;
    Ok(TameCharacter::new(
        ext.clone(),
        c,
        phase.unwrap_or_else(zero),
        mag.unwrap_or_else(zero),
    ))
}

/// Parses a `;`-separated list of characters.
pub fn parse_characters(ext: &Extension, input: &str) -> Result<Vec<TameCharacter>> {
    input
        .split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .enumerate()
        .map(|(i, s)| parse_character(ext, s, i + 1))
        .collect()
}

pub fn format_characters(chars: &[TameCharacter]) -> String {
    chars
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(";")
}
