//! Tame-level model of a quadratic extension `K/F` of p-adic fields.
//!
//! `F` is the degree-`f` unramified extension of `Q_p` (residue field `k_F`
//! of order `q = p^f`, uniformizer `p`). `K = F(δ)` with `δ² = d ∈ F*`:
//!
//! * unramified: `d` a nonsquare unit, `k_K = k_F(δ̄)` of order `q²`, `ϖ_K = p`;
//! * ramified: `d = p·ε` with `ε` a unit whose residue is `g^{u0}`, `k_K = k_F`,
//!   `ϖ_K = δ`, `N(δ) = −d`.
//!
//! A tame element of `K*` is `ϖ_K^v · [t]` (Teichmüller lift of a residue unit
//! `t`), i.e. everything modulo 1-units.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;
use std::sync::Arc;

use num_rational::Ratio;

use crate::characters::TameCharacterF;
use crate::error::{Error, Result};
use crate::field::{is_prime, Fe, GaloisField, MAX_ORDER};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ramification {
    Unramified,
    /// `d = p·ε`, `ε̄ = g^{u0}` in `k_F*`.
    Ramified { u0: u32 },
}

/// The data identifying an extension: residue characteristic, `f`, ramification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtensionDescriptor {
    pub p: u32,
    pub f: u32,
    pub kind: Ramification,
}

impl ExtensionDescriptor {
    pub fn unramified(p: u32) -> Self {
        ExtensionDescriptor {
            p,
            f: 1,
            kind: Ramification::Unramified,
        }
    }

    pub fn ramified(p: u32, u0: u32) -> Self {
        ExtensionDescriptor {
            p,
            f: 1,
            kind: Ramification::Ramified { u0 },
        }
    }

    pub fn build(self) -> Result<Extension> {
        Extension::new(self)
    }
}

impl fmt::Display for ExtensionDescriptor {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            Ramification::Unramified => write!(out, "unram:p={},f={}", self.p, self.f),
            Ramification::Ramified { u0 } => write!(out, "ram:p={},u0={},f={}", self.p, u0, self.f),
        }
    }
}

impl FromStr for ExtensionDescriptor {
    type Err = Error;

    /// `unram:p=<prime>[,f=<int>]` or `ram:p=<prime>,u0=<int>[,f=<int>]`.
    fn from_str(input: &str) -> Result<Self> {
        let syntax = |reason: &str| Error::ExtensionSyntax {
            input: input.to_string(),
            reason: reason.to_string(),
        };
        let (head, rest) = input
            .trim()
            .split_once(':')
            .ok_or_else(|| syntax("expected '<unram|ram>:key=value,...'"))?;
        let mut p = None;
        let mut f = None;
        let mut u0 = None;
        for item in rest.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| syntax(&format!("expected key=value, got '{item}'")))?;
            let value: u32 = value
                .trim()
                .parse()
                .map_err(|_| syntax(&format!("'{value}' is not a non-negative integer")))?;
            let slot = match key.trim() {
                "p" => &mut p,
                "f" => &mut f,
                "u0" => &mut u0,
                other => return Err(syntax(&format!("unknown key '{other}'"))),
            };
            if slot.replace(value).is_some() {
                return Err(syntax(&format!("duplicate key '{}'", key.trim())));
            }
        }
        let p = p.ok_or_else(|| syntax("missing p"))?;
        let f = f.unwrap_or(1);
        let kind = match head.trim() {
            "unram" => {
                if u0.is_some() {
                    return Err(syntax("u0 only applies to ram"));
                }
                Ramification::Unramified
            }
            "ram" => Ramification::Ramified {
                u0: u0.ok_or_else(|| syntax("ram requires u0"))?,
            },
            other => return Err(syntax(&format!("unknown kind '{other}'"))),
        };
        let desc = ExtensionDescriptor { p, f, kind };
        desc.validate()?;
        Ok(desc)
    }
}

impl ExtensionDescriptor {
    fn validate(&self) -> Result<()> {
        if self.p.is_multiple_of(2) {
            return Err(Error::EvenPrime(self.p as u64));
        }
        if !is_prime(self.p as u64) {
            return Err(Error::NotPrime(self.p as u64));
        }
        if self.f == 0 {
            return Err(Error::OutOfRange("f must be at least 1".into()));
        }
        let q = (self.p as u64).checked_pow(self.f).unwrap_or(u64::MAX);
        let q_k = match self.kind {
            Ramification::Unramified => q.saturating_mul(q),
            Ramification::Ramified { .. } => q,
        };
        if q_k > MAX_ORDER {
            return Err(Error::FieldTooLarge(format!(
                "residue field of K has order {q_k} > {MAX_ORDER}"
            )));
        }
        Ok(())
    }
}

/// A residue-field element of `K` as a discrete log to the fixed generator `g`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ResidueElement {
    Zero,
    Unit(u32),
}

impl ResidueElement {
    pub fn dlog(self) -> Option<u32> {
        match self {
            ResidueElement::Zero => None,
            ResidueElement::Unit(k) => Some(k),
        }
    }
}

#[derive(Debug)]
struct Inner {
    desc: ExtensionDescriptor,
    q: u64,
    residue_f: GaloisField,
    residue_k: GaloisField,
}

/// Shared, immutable extension data with the residue fields of `F` and `K`.
///
/// Equality and hashing only look at the descriptor.
#[derive(Debug, Clone)]
pub struct Extension(Arc<Inner>);

impl PartialEq for Extension {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.desc == other.0.desc
    }
}
impl Eq for Extension {}

impl Hash for Extension {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.desc.hash(state)
    }
}

impl fmt::Display for Extension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.desc.fmt(f)
    }
}

impl FromStr for Extension {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Extension::new(s.parse()?)
    }
}

impl Extension {
    pub fn new(desc: ExtensionDescriptor) -> Result<Self> {
        desc.validate()?;
        let residue_f = GaloisField::new(desc.p, desc.f)?;
        let q = residue_f.order() as u64;
        let residue_k = match desc.kind {
            Ramification::Unramified => GaloisField::quadratic(&residue_f)?,
            Ramification::Ramified { u0 } => {
                if u0 as u64 >= q - 1 {
                    return Err(Error::OutOfRange(format!("u0 = {u0} must be < q - 1 = {}", q - 1)));
                }
                residue_f.clone()
            }
        };
        Ok(Extension(Arc::new(Inner {
            desc,
            q,
            residue_f,
            residue_k,
        })))
    }

    pub fn unramified(p: u32) -> Result<Self> {
        Self::new(ExtensionDescriptor::unramified(p))
    }

    pub fn ramified(p: u32, u0: u32) -> Result<Self> {
        Self::new(ExtensionDescriptor::ramified(p, u0))
    }

    pub fn descriptor(&self) -> ExtensionDescriptor {
        self.0.desc
    }

    pub fn kind(&self) -> Ramification {
        self.0.desc.kind
    }

    pub fn is_unramified(&self) -> bool {
        self.0.desc.kind == Ramification::Unramified
    }

    pub fn p(&self) -> u32 {
        self.0.desc.p
    }

    /// `q = |k_F|`.
    pub fn q(&self) -> u64 {
        self.0.q
    }

    /// `q_K = |k_K|`: `q²` unramified, `q` ramified.
    pub fn q_k(&self) -> u64 {
        self.0.residue_k.order() as u64
    }

    /// Residue degree of `K/F` (1 or 2); `|ϖ_K|_K = q^{-residue_degree}`.
    pub fn residue_degree(&self) -> i64 {
        if self.is_unramified() {
            2
        } else {
            1
        }
    }

    pub fn u0(&self) -> Option<u32> {
        match self.0.desc.kind {
            Ramification::Ramified { u0 } => Some(u0),
            Ramification::Unramified => None,
        }
    }

    pub fn residue_field_k(&self) -> &GaloisField {
        &self.0.residue_k
    }

    pub fn residue_field_f(&self) -> &GaloisField {
        &self.0.residue_f
    }

    /// The fixed generator `g` of `k_K*`.
    pub fn generator(&self) -> Fe {
        self.0.residue_k.generator()
    }

    /// Dlog (to `g`) of the generator `g_F` of `k_F*` used for `F`-characters.
    /// Unramified: `g_F = g^{q+1}`; ramified: `g_F = g`.
    pub fn f_generator_dlog(&self) -> u64 {
        if self.is_unramified() {
            self.q() + 1
        } else {
            1
        }
    }

    pub fn unit(&self, dlog: i64) -> ResidueElement {
        ResidueElement::Unit(dlog.rem_euclid(self.q_k() as i64 - 1) as u32)
    }

    /// `x ↦ x^σ` on residues: `x^q` unramified, identity ramified.
    pub fn frobenius(&self, x: ResidueElement) -> ResidueElement {
        match x {
            ResidueElement::Zero => ResidueElement::Zero,
            ResidueElement::Unit(k) => {
                if self.is_unramified() {
                    let m = self.q_k() - 1;
                    ResidueElement::Unit((k as u64 * self.q() % m) as u32)
                } else {
                    x
                }
            }
        }
    }

    /// Norm of the tame element `ϖ_K^v·[r]`, returned as `(v_F, dlog_F)` meaning
    /// `p^{v_F}·[g_F^{dlog_F}]` in `F*`.
    pub fn norm_tame(&self, v: i64, r: ResidueElement) -> Result<(i64, u32)> {
        let k = r.dlog().ok_or(Error::ZeroResidue)? as i64;
        let qm1 = self.q() as i64 - 1;
        Ok(match self.kind() {
            // p^v [t] ↦ p^{2v} [t^{q+1}], and t = g^k gives t^{q+1} = g_F^k.
            Ramification::Unramified => (2 * v, k.rem_euclid(qm1) as u32),
            // N(δ) = −d = p·[−ε̄], N([t]) = [t²].
            Ramification::Ramified { u0 } => {
                let minus_eps = qm1 / 2 + u0 as i64;
                (v, (v * minus_eps + 2 * k).rem_euclid(qm1) as u32)
            }
        })
    }

    /// Embeds the tame element `p^v·[g_F^k]` of `F*` into `K*` as `(v_K, dlog_K)`.
    pub fn embed_f_element(&self, v: i64, k: i64) -> (i64, u32) {
        let m = self.q_k() as i64 - 1;
        match self.kind() {
            Ramification::Unramified => (v, (k * (self.q() as i64 + 1)).rem_euclid(m) as u32),
            // p = δ²·ε^{-1}
            Ramification::Ramified { u0 } => (2 * v, (k - v * u0 as i64).rem_euclid(m) as u32),
        }
    }

    /// `η_{K/F}`: the order-2 tame character of `F*` killing the norm group.
    pub fn eta_character(&self) -> TameCharacterF {
        let zero = Ratio::from_integer(0);
        match self.kind() {
            Ramification::Unramified => {
                TameCharacterF::new(self.clone(), 0, Ratio::new(1, 2), zero)
            }
            Ramification::Ramified { u0 } => {
                // Legendre symbol on residues; at p fixed by η(p)·η([−ε̄]) = 1.
                let half = (self.q() as i64 - 1) / 2;
                let phase = if (half + u0 as i64) % 2 == 0 {
                    zero
                } else {
                    Ratio::new(1, 2)
                };
                TameCharacterF::new(self.clone(), half, phase, zero)
            }
        }
    }

    /// Residue `δ̄` of `δ` (unramified only; it is 0 when `K/F` is ramified).
    pub fn delta_residue(&self) -> Option<Fe> {
        self.0.residue_k.delta()
    }

    /// Human-readable description including the choice of `d`.
    pub fn describe(&self) -> String {
        match self.kind() {
            Ramification::Unramified => format!(
                "unramified K/F, q = {}, q_K = {}, d = least nonsquare unit",
                self.q(),
                self.q_k()
            ),
            Ramification::Ramified { u0 } => format!(
                "ramified K/F, q = {}, d = p*eps with eps residue g^{u0} ({})",
                self.q(),
                if u0 % 2 == 0 { "d = p up to squares" } else { "d = u*p, u nonsquare" }
            ),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::TameCharacterF;

    fn unram3() -> Extension {
        Extension::unramified(3).unwrap()
    }

    #[test]
    fn parse_descriptors() {
        let d: ExtensionDescriptor = "unram:p=3".parse().unwrap();
        assert_eq!(d, ExtensionDescriptor::unramified(3));
        let d: ExtensionDescriptor = "ram:p=5,u0=1,f=1".parse().unwrap();
        assert_eq!(d, ExtensionDescriptor::ramified(5, 1));
        assert_eq!(d.to_string(), "ram:p=5,u0=1,f=1");
        let d: ExtensionDescriptor = "unram:p=3,f=2".parse().unwrap();
        assert_eq!(d.f, 2);
    }

    #[test]
    fn parse_rejects_even_and_malformed() {
        let err = "unram:p=2".parse::<ExtensionDescriptor>().unwrap_err();
        assert_eq!(err, Error::EvenPrime(2));
        assert!(err.to_string().contains("even residue characteristic unsupported"));
        assert!("ram:p=3".parse::<ExtensionDescriptor>().is_err());
        assert!("unram:p=9".parse::<ExtensionDescriptor>().is_err());
        assert!("unram:p=3,u0=1".parse::<ExtensionDescriptor>().is_err());
        assert!("weird:p=3".parse::<ExtensionDescriptor>().is_err());
        assert!("unram:p=3,p=5".parse::<ExtensionDescriptor>().is_err());
        assert!("ram:p=3,u0=2".parse::<Extension>().is_err());
    }

    #[test]
    fn frobenius_examples() {
        let e = unram3();
        assert_eq!(e.frobenius(ResidueElement::Unit(1)), ResidueElement::Unit(3));
        assert_eq!(e.frobenius(ResidueElement::Unit(3)), ResidueElement::Unit(1));
        let r = Extension::ramified(3, 0).unwrap();
        assert_eq!(r.frobenius(ResidueElement::Unit(1)), ResidueElement::Unit(1));
    }

    #[test]
    fn frobenius_is_an_involution_and_matches_field() {
        for ext in [unram3(), Extension::unramified(5).unwrap(), Extension::ramified(5, 1).unwrap()] {
            let field = ext.residue_field_k();
            for k in 0..ext.q_k() as u32 - 1 {
                let x = ResidueElement::Unit(k);
                assert_eq!(ext.frobenius(ext.frobenius(x)), x);
                if ext.is_unramified() {
                    let y = ext.frobenius(x).dlog().unwrap();
                    assert_eq!(field.exp(y as u64), field.conj(field.exp(k as u64)));
                }
            }
        }
    }

    #[test]
    fn generator_has_full_order_and_f_embeds() {
        for ext in [unram3(), Extension::unramified(5).unwrap(), Extension::ramified(7, 2).unwrap()] {
            let field = ext.residue_field_k();
            assert_eq!(field.element_order(ext.generator()), Some(ext.q_k() - 1));
        }
        // unramified: <g^{q+1}> is exactly the copy of k_F* (codes with zero δ-part)
        let e = Extension::unramified(5).unwrap();
        let field = e.residue_field_k();
        let gf = field.pow(e.generator(), e.q() + 1);
        let sub: std::collections::BTreeSet<_> = (0..4).map(|k| field.pow(gf, k)).collect();
        let base: std::collections::BTreeSet<_> = (1..5).collect();
        assert_eq!(sub, base);
    }

    #[test]
    fn norm_examples() {
        let e = unram3();
        assert_eq!(e.norm_tame(1, ResidueElement::Unit(0)).unwrap(), (2, 0));
        assert_eq!(e.norm_tame(0, ResidueElement::Unit(1)).unwrap(), (0, 1));
        // ram(p=3, d=p): N(√p) = −p, and dlog(−1) = 1 in F_3*
        let r = Extension::ramified(3, 0).unwrap();
        assert_eq!(r.norm_tame(1, ResidueElement::Unit(0)).unwrap(), (1, 1));
        assert_eq!(e.norm_tame(0, ResidueElement::Zero), Err(Error::ZeroResidue));
    }

    #[test]
    fn residue_norm_oracle_unramified() {
        // t·t^q over F_9 matched against powers of g^4 by direct field arithmetic.
        let e = unram3();
        let field = e.residue_field_k();
        let gf = field.pow(e.generator(), 4);
        for k in 0..8u32 {
            let t = field.exp(k as u64);
            let nt = field.mul(t, field.pow(t, 3));
            let (_, kf) = e.norm_tame(0, ResidueElement::Unit(k)).unwrap();
            assert_eq!(field.pow(gf, kf as u64), nt);
        }
    }

    #[test]
    fn eta_examples() {
        let e = unram3();
        let eta = e.eta_character();
        assert_eq!(eta, TameCharacterF::new(e.clone(), 0, Ratio::new(1, 2), Ratio::from_integer(0)));
        let r = Extension::ramified(3, 0).unwrap();
        assert_eq!(r.eta_character().c() % 2, 1);
        for ext in [e, r] {
            let eta = ext.eta_character();
            assert!(eta.mul(&eta).unwrap().is_trivial());
            assert!(!eta.is_trivial());
        }
    }

    #[test]
    fn eta_is_the_nontrivial_character_of_the_norm_quotient() {
        // Brute force: the tame image of the norm for v in -2..=2 and all residues;
        // η must be 1 exactly on that image (restricted to the same valuation window).
        let exts = [
            unram3(),
            Extension::unramified(5).unwrap(),
            Extension::ramified(3, 0).unwrap(),
            Extension::ramified(3, 1).unwrap(),
            Extension::ramified(5, 0).unwrap(),
            Extension::ramified(5, 3).unwrap(),
        ];
        for ext in exts {
            let eta = ext.eta_character();
            let mut image = std::collections::BTreeSet::new();
            for v in -2..=2 {
                for k in 0..ext.q_k() as i64 - 1 {
                    let x = ext.norm_tame(v, ext.unit(k)).unwrap();
                    assert!(eta.evaluate(x.0, x.1 as i64).is_one(), "{ext} norm {x:?}");
                    image.insert(x);
                }
            }
            let mut off_image = 0;
            for v in -2..=2 {
                for k in 0..ext.q() as u32 - 1 {
                    if !image.contains(&(v, k)) && v.abs() <= 1 {
                        off_image += 1;
                        assert!(!eta.evaluate(v, k as i64).is_one(), "{ext} ({v},{k})");
                    }
                }
            }
            assert!(off_image > 0);
        }
    }
}
