//! Distinction of principal series `π(χ_1, …, χ_n)` of `GL_n(K)`.
//!
//! `π(χ)` is distinguished iff the indices can be split into pairs `{i, j}`
//! with `χ_j = χ_i^{−σ}` and singletons with `χ_i|_{F*} = 1`. The literal
//! ordered pattern (pairs `(1,2), (3,4), …` then singletons) is exposed
//! separately by [`literal_pattern_check`]; a verdict is the unordered form.

use std::collections::BTreeMap;
use std::fmt;

use crate::characters::{characters_trivial_on_f, extend_from_f, TameCharacter};
use crate::error::{Error, Result};
use crate::extension::Extension;

/// Largest `n` accepted by [`brute_force_distinguished`].
pub const BRUTE_FORCE_MAX: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PrincipalSeriesDatum {
    chars: Vec<TameCharacter>,
}

impl PrincipalSeriesDatum {
    pub fn new(chars: Vec<TameCharacter>) -> Result<Self> {
        let first = chars.first().ok_or(Error::EmptyDatum)?;
        for chi in &chars[1..] {
            if chi.ext() != first.ext() {
                return Err(Error::IncompatibleExtensions {
                    left: first.ext().to_string(),
                    right: chi.ext().to_string(),
                });
            }
        }
        Ok(PrincipalSeriesDatum { chars })
    }

    pub fn chars(&self) -> &[TameCharacter] {
        &self.chars
    }

    pub fn len(&self) -> usize {
        self.chars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chars.is_empty()
    }

    pub fn ext(&self) -> &Extension {
        self.chars[0].ext()
    }

    /// `(χ_1·μ^{-1}, …, χ_n·μ^{-1})`.
    pub fn twist_inverse(&self, mu: &TameCharacter) -> Result<Self> {
        let inv = mu.inv();
        let chars = self
            .chars
            .iter()
            .map(|chi| chi.mul(&inv))
            .collect::<Result<Vec<_>>>()?;
        Self::new(chars)
    }

    pub fn permuted(&self, order: &[usize]) -> Self {
        PrincipalSeriesDatum {
            chars: order.iter().map(|&i| self.chars[i].clone()).collect(),
        }
    }

    /// First offending `(i, j)` (0-based) with `χ_i/χ_j = |·|_K^{±1}`.
    pub fn reducibility_witness(&self) -> Option<(usize, usize, char)> {
        let abs = TameCharacter::abs_k(self.ext());
        let abs_inv = abs.inv();
        for (i, a) in self.chars.iter().enumerate() {
            for (j, b) in self.chars.iter().enumerate() {
                if i == j {
                    continue;
                }
                let quotient = a.div(b).expect("same extension");
                if quotient == abs {
                    return Some((i, j, '+'));
                }
                if quotient == abs_inv {
                    return Some((i, j, '-'));
                }
            }
        }
        None
    }

    fn require_irreducible(&self) -> Result<()> {
        match self.reducibility_witness() {
            Some((i, j, sign)) => Err(Error::Reducible {
                i: i + 1,
                j: j + 1,
                sign,
            }),
            None => Ok(()),
        }
    }
}

impl fmt::Display for PrincipalSeriesDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::characters::format_characters(&self.chars))
    }
}

/// Pairs `(i, j)` with `χ_j = χ_i^{−σ}` and singletons with `χ_i|_{F*} = 1`
/// (0-based indices).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Certificate {
    pub pairs: Vec<(usize, usize)>,
    pub singletons: Vec<usize>,
}

impl Certificate {
    pub fn r(&self) -> usize {
        self.pairs.len()
    }

    /// Re-checks every pair and singleton condition and that the parts cover `0..n`.
    pub fn validate(&self, datum: &PrincipalSeriesDatum) -> bool {
        let chars = datum.chars();
        let mut seen = vec![false; chars.len()];
        let mut mark = |i: usize| i < seen.len() && !std::mem::replace(&mut seen[i], true);
        for &(i, j) in &self.pairs {
            if !mark(i) || !mark(j) || chars[j] != chars[i].inv_galois() {
                return false;
            }
        }
        for &i in &self.singletons {
            if !mark(i) || !chars[i].is_trivial_on_f() {
                return false;
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// A reordering of the datum that satisfies the literal pattern with `r = self.r()`.
    pub fn ordering(&self) -> Vec<usize> {
        self.pairs
            .iter()
            .flat_map(|&(i, j)| [i, j])
            .chain(self.singletons.iter().copied())
            .collect()
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .pairs
            .iter()
            .map(|(i, j)| format!("({},{})", i + 1, j + 1))
            .collect();
        parts.extend(self.singletons.iter().map(|i| format!("({})", i + 1)));
        f.write_str(&parts.join(" "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistinctionVerdict {
    pub distinguished: bool,
    pub certificate: Option<Certificate>,
}

impl DistinctionVerdict {
    fn from_certificate(certificate: Option<Certificate>) -> Self {
        DistinctionVerdict {
            distinguished: certificate.is_some(),
            certificate,
        }
    }

    pub fn r(&self) -> Option<usize> {
        self.certificate.as_ref().map(Certificate::r)
    }
}

pub fn check_irreducible(datum: &PrincipalSeriesDatum) -> bool {
    datum.reducibility_witness().is_none()
}

/// Largest `r ≤ n/2` such that `χ_{i+1}^σ = χ_i^{−1}` for `i = 1, 3, …, 2r−1`
/// and `χ_i|_{F*} = 1` for `i > 2r`, in the given order.
pub fn literal_pattern_check(datum: &PrincipalSeriesDatum) -> Option<usize> {
    let chars = datum.chars();
    let n = chars.len();
    let pair_ok = |k: usize| chars[2 * k + 1].galois() == chars[2 * k].inv();
    (0..=n / 2).rev().find(|&r| {
        (0..r).all(pair_ok) && chars[2 * r..].iter().all(TameCharacter::is_trivial_on_f)
    })
}

/// Decides distinction by grouping equal characters into classes.
///
/// A class `A` is matched against `A^{−σ}`. Classes trivial on `F*` are
/// self-dual and absorb any count as singletons; other self-dual classes
/// must have even size; a non-self-dual class needs exactly as many members
/// as its partner.
pub fn is_distinguished(datum: &PrincipalSeriesDatum) -> Result<DistinctionVerdict> {
    datum.require_irreducible()?;
    let mut classes: BTreeMap<&TameCharacter, Vec<usize>> = BTreeMap::new();
    for (i, chi) in datum.chars().iter().enumerate() {
        classes.entry(chi).or_default().push(i);
    }
    let mut cert = Certificate::default();
    let mut handled: Vec<&TameCharacter> = Vec::new();
    for (&chi, members) in &classes {
        if handled.contains(&chi) {
            continue;
        }
        let partner = chi.inv_galois();
        if chi.is_trivial_on_f() {
            cert.singletons.extend(members);
        } else if &partner == chi {
            if members.len() % 2 == 1 {
                return Ok(DistinctionVerdict::from_certificate(None));
            }
            cert.pairs.extend(members.chunks(2).map(|w| (w[0], w[1])));
        } else {
            let Some(others) = classes.get(&partner) else {
                return Ok(DistinctionVerdict::from_certificate(None));
            };
            if others.len() != members.len() {
                return Ok(DistinctionVerdict::from_certificate(None));
            }
            cert.pairs.extend(members.iter().copied().zip(others.iter().copied()));
            handled.push(classes.get_key_value(&partner).expect("present").0);
        }
    }
    cert.pairs.sort_unstable();
    cert.singletons.sort_unstable();
    debug_assert!(cert.validate(datum));
    Ok(DistinctionVerdict::from_certificate(Some(cert)))
}

/// Exhaustive search over all partitions of the indices into pairs and singletons.
pub fn brute_force_distinguished(datum: &PrincipalSeriesDatum) -> Result<DistinctionVerdict> {
    if datum.len() > BRUTE_FORCE_MAX {
        return Err(Error::SizeGuard(format!(
            "brute force limited to n <= {BRUTE_FORCE_MAX}, got {}",
            datum.len()
        )));
    }
    datum.require_irreducible()?;

    fn search(chars: &[TameCharacter], used: &mut [bool], cert: &mut Certificate) -> bool {
        let Some(i) = used.iter().position(|&u| !u) else {
            return true;
        };
        used[i] = true;
        if chars[i].is_trivial_on_f() {
            cert.singletons.push(i);
            if search(chars, used, cert) {
                return true;
            }
            cert.singletons.pop();
        }
        let target = chars[i].inv_galois();
        for j in i + 1..chars.len() {
            if !used[j] && chars[j] == target {
                used[j] = true;
                cert.pairs.push((i, j));
                if search(chars, used, cert) {
                    return true;
                }
                cert.pairs.pop();
                used[j] = false;
            }
        }
        used[i] = false;
        false
    }

    let mut used = vec![false; datum.len()];
    let mut cert = Certificate::default();
    let found = search(datum.chars(), &mut used, &mut cert);
    Ok(DistinctionVerdict::from_certificate(found.then_some(cert)))
}

/// Distinction twisted by `μ`: is `π ⊗ μ^{-1}` distinguished. With `μ|_{F*} = χ_F`
/// this decides `χ_F`-distinction.
pub fn is_twisted_distinguished(
    datum: &PrincipalSeriesDatum,
    mu: &TameCharacter,
) -> Result<DistinctionVerdict> {
    datum.require_irreducible()?;
    is_distinguished(&datum.twist_inverse(mu)?)
}

pub fn is_eta_distinguished(datum: &PrincipalSeriesDatum) -> Result<DistinctionVerdict> {
    let mu = extend_from_f(&datum.ext().eta_character())?;
    is_twisted_distinguished(datum, &mu)
}

/// Multiset equality `{χ_i^{−σ}} = {χ_i}`.
pub fn sigma_selfdual(datum: &PrincipalSeriesDatum) -> bool {
    let mut a: Vec<TameCharacter> = datum.chars().to_vec();
    let mut b: Vec<TameCharacter> = datum.chars().iter().map(TameCharacter::inv_galois).collect();
    a.sort();
    b.sort();
    a == b
}

pub fn central_character(datum: &PrincipalSeriesDatum) -> TameCharacter {
    datum
        .chars()
        .iter()
        .fold(TameCharacter::trivial(datum.ext()), |acc, chi| {
            acc.mul(chi).expect("same extension")
        })
}

pub fn central_character_trivial_on_f(datum: &PrincipalSeriesDatum) -> bool {
    central_character(datum).is_trivial_on_f()
}

/// The four properties a counter-example must have, plus the recipe's hygiene checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CounterexampleReport {
    pub irreducible: bool,
    pub all_distinct: bool,
    pub sigma_selfdual: bool,
    pub central_trivial: bool,
    pub distinguished: bool,
    pub eta_distinguished: bool,
}

impl CounterexampleReport {
    pub fn verify(datum: &PrincipalSeriesDatum) -> Result<Self> {
        let mut sorted = datum.chars().to_vec();
        sorted.sort();
        sorted.dedup();
        let irreducible = check_irreducible(datum);
        let (distinguished, eta_distinguished) = if irreducible {
            (
                is_distinguished(datum)?.distinguished,
                is_eta_distinguished(datum)?.distinguished,
            )
        } else {
            (false, false)
        };
        Ok(CounterexampleReport {
            irreducible,
            all_distinct: sorted.len() == datum.len(),
            sigma_selfdual: sigma_selfdual(datum),
            central_trivial: central_character_trivial_on_f(datum),
            distinguished,
            eta_distinguished,
        })
    }

    /// σ-self-dual, central character trivial on `F*`, yet neither distinguished
    /// nor η-distinguished.
    pub fn passes(&self) -> bool {
        self.irreducible
            && self.sigma_selfdual
            && self.central_trivial
            && !self.distinguished
            && !self.eta_distinguished
    }
}

#[derive(Debug, Clone)]
pub struct VerifiedCounterexample {
    pub datum: PrincipalSeriesDatum,
    pub report: CounterexampleReport,
}

#[derive(Debug, Clone)]
pub struct CounterexampleSearch {
    pub items: Vec<VerifiedCounterexample>,
    pub candidates_examined: usize,
    pub diagnostic: Option<String>,
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Tuples `(χ_1, …, χ_n)`, all different, with `χ_1|_{F*} = χ_2|_{F*} = η` and
/// `χ_j|_{F*} = 1` for `j ≥ 3`, each re-verified.
///
/// The tame characters restricting to `η` are exactly `η̃·T` for any extension
/// `η̃` of `η` and `T` the (finite) group of characters trivial on `F*`, so the
/// candidate pool is complete at tame level. Candidates are visited in
/// lexicographic order of sorted characters.
pub fn jacquet_counterexample_search(
    n: usize,
    ext: &Extension,
    budget: usize,
) -> Result<CounterexampleSearch> {
    if n < 3 {
        return Err(Error::OutOfRange(format!(
            "counter-examples need n >= 3 (got {n}); the conjecture holds trivially out of range here"
        )));
    }
    let trivial_on_f = characters_trivial_on_f(ext);
    let eta_tilde = extend_from_f(&ext.eta_character())?;
    let mut eta_like: Vec<TameCharacter> = trivial_on_f
        .iter()
        .map(|t| eta_tilde.mul(t))
        .collect::<Result<_>>()?;
    eta_like.sort();

    let mut items = Vec::new();
    let mut examined = 0;
    'outer: for head in combinations(eta_like.len(), 2) {
        for tail in combinations(trivial_on_f.len(), n - 2) {
            if items.len() >= budget {
                break 'outer;
            }
            examined += 1;
            let chars: Vec<TameCharacter> = head
                .iter()
                .map(|&i| eta_like[i].clone())
                .chain(tail.iter().map(|&j| trivial_on_f[j].clone()))
                .collect();
            let datum = PrincipalSeriesDatum::new(chars)?;
            let report = CounterexampleReport::verify(&datum)?;
            if report.all_distinct && report.passes() {
                items.push(VerifiedCounterexample { datum, report });
            }
        }
    }
    let diagnostic = items.is_empty().then(|| {
        format!(
            "no counter-example for n = {n} over {ext}: {} characters restrict to eta and {} are trivial on F*, {} candidates examined",
            eta_like.len(),
            trivial_on_f.len(),
            examined
        )
    });
    Ok(CounterexampleSearch {
        items,
        candidates_examined: examined,
        diagnostic,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unram3() -> Extension {
        Extension::unramified(3).unwrap()
    }

    fn cor31(e: &Extension) -> PrincipalSeriesDatum {
        PrincipalSeriesDatum::new(vec![
            TameCharacter::unitary(e, 0, 1, 2),
            TameCharacter::unitary(e, 4, 1, 2),
            TameCharacter::unitary(e, 0, 0, 1),
        ])
        .unwrap()
    }

    #[test]
    fn irreducibility_examples() {
        let e = unram3();
        let chi = TameCharacter::unitary(&e, 1, 1, 3);
        let abs = TameCharacter::abs_k(&e);
        let d = PrincipalSeriesDatum::new(vec![chi.clone(), chi.mul(&abs).unwrap()]).unwrap();
        assert!(!check_irreducible(&d));
        assert!(matches!(is_distinguished(&d), Err(Error::Reducible { .. })));
        let d = PrincipalSeriesDatum::new(vec![chi.mul(&abs).unwrap(), chi.clone()]).unwrap();
        assert!(!check_irreducible(&d));
        let d = PrincipalSeriesDatum::new(vec![chi.clone(), chi]).unwrap();
        assert!(check_irreducible(&d));
        assert!(check_irreducible(&cor31(&e)));
    }

    #[test]
    fn literal_pattern_examples() {
        let e = unram3();
        let mu = TameCharacter::unitary(&e, 1, 1, 3);
        let d = PrincipalSeriesDatum::new(vec![mu.clone(), mu.inv_galois()]).unwrap();
        assert_eq!(literal_pattern_check(&d), Some(1));
        let d = PrincipalSeriesDatum::new(vec![mu.inv_galois(), mu.clone()]).unwrap();
        assert_eq!(literal_pattern_check(&d), Some(1));
        let d = PrincipalSeriesDatum::new(vec![TameCharacter::trivial(&e)]).unwrap();
        assert_eq!(literal_pattern_check(&d), Some(0));
        assert_eq!(literal_pattern_check(&cor31(&e)), None);
    }

    #[test]
    fn distinction_examples() {
        let e = unram3();
        let mu = TameCharacter::unitary(&e, 1, 1, 3);
        let d = PrincipalSeriesDatum::new(vec![mu.clone(), mu.inv_galois()]).unwrap();
        for verdict in [is_distinguished(&d).unwrap(), brute_force_distinguished(&d).unwrap()] {
            assert!(verdict.distinguished);
            assert_eq!(verdict.r(), Some(1));
            assert!(verdict.certificate.unwrap().validate(&d));
        }
        let d = PrincipalSeriesDatum::new(vec![TameCharacter::trivial(&e)]).unwrap();
        assert!(is_distinguished(&d).unwrap().distinguished);
        assert!(brute_force_distinguished(&d).unwrap().distinguished);
        let d = cor31(&e);
        assert!(!is_distinguished(&d).unwrap().distinguished);
        assert!(!brute_force_distinguished(&d).unwrap().distinguished);
    }

    #[test]
    fn eta_distinction_examples() {
        let e = unram3();
        let d = cor31(&e);
        let twisted = d
            .twist_inverse(&extend_from_f(&e.eta_character()).unwrap())
            .unwrap();
        assert_eq!(twisted.to_string(), "c=0;c=4;c=0,phase=1/2");
        assert!(!is_eta_distinguished(&d).unwrap().distinguished);
        assert!(!brute_force_distinguished(&twisted).unwrap().distinguished);

        let single = PrincipalSeriesDatum::new(vec![TameCharacter::unitary(&e, 4, 1, 2)]).unwrap();
        assert!(is_eta_distinguished(&single).unwrap().distinguished);
        assert!(!is_distinguished(&single).unwrap().distinguished);
    }

    #[test]
    fn eta_verdict_independent_of_extension_choice() {
        for ext in [unram3(), Extension::ramified(5, 1).unwrap()] {
            let eta1 = extend_from_f(&ext.eta_character()).unwrap();
            let nu = characters_trivial_on_f(&ext).pop().unwrap();
            assert!(!nu.is_trivial());
            let eta2 = eta1.mul(&nu).unwrap();
            let grid = crate::characters::character_grid(&ext, 2, &[num_rational::Ratio::from_integer(0)]);
            for a in grid.iter().step_by(3) {
                for b in grid.iter().step_by(2) {
                    let d = PrincipalSeriesDatum::new(vec![a.clone(), b.clone()]).unwrap();
                    assert_eq!(
                        is_twisted_distinguished(&d, &eta1).unwrap().distinguished,
                        is_twisted_distinguished(&d, &eta2).unwrap().distinguished
                    );
                }
            }
        }
    }

    #[test]
    fn selfduality_and_central_character() {
        let e = unram3();
        let mu = TameCharacter::unitary(&e, 1, 1, 3);
        let pair = PrincipalSeriesDatum::new(vec![mu.clone(), mu.inv_galois()]).unwrap();
        assert!(sigma_selfdual(&pair));
        assert!(central_character_trivial_on_f(&pair));
        assert!(sigma_selfdual(&cor31(&e)));
        assert!(central_character_trivial_on_f(&cor31(&e)));
        assert_eq!(central_character(&cor31(&e)), TameCharacter::unitary(&e, 4, 0, 1));
        let single = PrincipalSeriesDatum::new(vec![mu]).unwrap();
        assert!(!sigma_selfdual(&single));
        let abs = PrincipalSeriesDatum::new(vec![TameCharacter::abs_k(&e)]).unwrap();
        assert!(!central_character_trivial_on_f(&abs));
    }

    #[test]
    fn counterexample_search_contains_worked_instance() {
        let e = unram3();
        let found = jacquet_counterexample_search(3, &e, 64).unwrap();
        assert!(found.diagnostic.is_none());
        assert!(found.items.iter().all(|it| it.report.passes()));
        assert!(found.items.iter().any(|it| it.datum == cor31(&e)));
        let four = jacquet_counterexample_search(4, &e, 4).unwrap();
        assert_eq!(four.items.len(), 4);
        assert!(matches!(
            jacquet_counterexample_search(2, &e, 4),
            Err(Error::OutOfRange(_))
        ));
    }

    #[test]
    fn counterexample_search_reports_exhaustion() {
        // Ramified: only two characters are trivial on F*, so n = 5 is impossible.
        let e = Extension::ramified(3, 0).unwrap();
        let found = jacquet_counterexample_search(5, &e, 8).unwrap();
        assert!(found.items.is_empty());
        assert!(found.diagnostic.unwrap().contains("no counter-example"));
        assert!(!jacquet_counterexample_search(4, &e, 8).unwrap().items.is_empty());
    }

    #[test]
    fn brute_force_size_guard() {
        let e = unram3();
        let d = PrincipalSeriesDatum::new(vec![TameCharacter::trivial(&e); 11]).unwrap();
        assert!(matches!(brute_force_distinguished(&d), Err(Error::SizeGuard(_))));
        assert!(is_distinguished(&d).unwrap().distinguished);
    }

    #[test]
    fn empty_and_mixed_data_rejected() {
        assert_eq!(PrincipalSeriesDatum::new(vec![]), Err(Error::EmptyDatum));
        let a = TameCharacter::trivial(&unram3());
        let b = TameCharacter::trivial(&Extension::unramified(5).unwrap());
        assert!(PrincipalSeriesDatum::new(vec![a, b]).is_err());
    }
}
