//! Permutations of `{0, …, n−1}`, the length-sorted cell order and the Bruhat order.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// Largest `n` accepted by [`cell_order`].
pub const CELL_ORDER_MAX: usize = 6;

/// A permutation in one-line notation: `w[j] = w(j)`, 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n).collect())
    }

    pub fn from_one_line(w: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; w.len()];
        for &x in &w {
            if x >= w.len() || std::mem::replace(&mut seen[x], true) {
                return Err(Error::OutOfRange(format!("{w:?} is not a permutation")));
            }
        }
        Ok(Perm(w))
    }

    /// The transposition of `i` and `j` in `S_n`.
    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        let mut w = Self::identity(n);
        w.0.swap(i, j);
        w
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn apply(&self, j: usize) -> usize {
        self.0[j]
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&j| self.0[j]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.n()];
        for (j, &wj) in self.0.iter().enumerate() {
            inv[wj] = j;
        }
        Perm(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn is_involution(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| self.0[x] == i)
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let w = &self.0;
        (0..w.len())
            .flat_map(|i| (i + 1..w.len()).map(move |j| (i, j)))
            .filter(|&(i, j)| w[i] > w[j])
            .count()
    }

    /// `self · s_i`, which swaps positions `i` and `i+1` in one-line notation.
    pub fn times_simple(&self, i: usize) -> Perm {
        let mut w = self.0.clone();
        w.swap(i, i + 1);
        Perm(w)
    }

    /// A reduced word `[a_1, …, a_l]` with `self = s_{a_1} ⋯ s_{a_l}`.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut w = self.clone();
        let mut word = Vec::new();
        while let Some(i) = (0..w.n().saturating_sub(1)).find(|&i| w.0[i] > w.0[i + 1]) {
            w = w.times_simple(i);
            word.push(i);
        }
        word.reverse();
        word
    }

    /// Every permutation of size `n`, in lexicographic order.
    pub fn all(n: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut w: Vec<usize> = (0..n).collect();
        loop {
            out.push(Perm(w.clone()));
            let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| w[i] < w[i + 1]) else {
                return out;
            };
            let j = (i + 1..n).rev().find(|&j| w[j] > w[i]).expect("successor exists");
            w.swap(i, j);
            w[i + 1..].reverse();
        }
    }

    pub fn involutions(n: usize) -> Vec<Perm> {
        Self::all(n).into_iter().filter(Perm::is_involution).collect()
    }
}

impl fmt::Display for Perm {
    /// One-line notation, 1-based: `[2 1 3]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, x) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", x + 1)?;
        }
        write!(f, "]")
    }
}

/// All products of subwords of a reduced word of `w`.
pub fn bruhat_down_set(w: &Perm) -> BTreeSet<Perm> {
    let mut down = BTreeSet::from([Perm::identity(w.n())]);
    for i in w.reduced_word() {
        let grown: Vec<Perm> = down.iter().map(|x| x.times_simple(i)).collect();
        down.extend(grown);
    }
    down
}

/// `v ≤ w` in the Bruhat order, by the subword criterion.
pub fn bruhat_leq(v: &Perm, w: &Perm) -> bool {
    v.n() == w.n() && bruhat_down_set(w).contains(v)
}

/// Permutations sorted by length, ties broken lexicographically.
pub fn cell_order(n: usize) -> Result<Vec<Perm>> {
    if n == 0 || n > CELL_ORDER_MAX {
        return Err(Error::OutOfRange(format!(
            "cell order needs 1 <= n <= {CELL_ORDER_MAX}, got {n}"
        )));
    }
    let mut cells = Perm::all(n);
    cells.sort_by_cached_key(|w| (w.length(), w.clone()));
    Ok(cells)
}

#[derive(Debug, Clone)]
pub struct ClosureReport {
    pub n: usize,
    pub cells: Vec<Perm>,
    /// `(v, w)` with `v < w` in the Bruhat order but `v` listed after `w`.
    pub violations: Vec<(Perm, Perm)>,
    pub pairs_checked: usize,
}

impl ClosureReport {
    pub fn passes(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks that every strict Bruhat predecessor of each cell is listed earlier.
pub fn check_cell_closure(n: usize) -> Result<ClosureReport> {
    let cells = cell_order(n)?;
    let position: std::collections::HashMap<&Perm, usize> =
        cells.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut violations = Vec::new();
    let mut pairs_checked = 0;
    for (i, w) in cells.iter().enumerate() {
        for v in bruhat_down_set(w) {
            if &v == w {
                continue;
            }
            pairs_checked += 1;
            if position[&v] > i {
                violations.push((v, w.clone()));
            }
        }
    }
    Ok(ClosureReport {
        n,
        cells,
        violations,
        pairs_checked,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    // Ehresmann's tableau criterion, independent of reduced words.
    fn tableau_leq(v: &Perm, w: &Perm) -> bool {
        (1..=v.n()).all(|i| {
            let mut a = v.as_slice()[..i].to_vec();
            let mut b = w.as_slice()[..i].to_vec();
            a.sort_unstable();
            b.sort_unstable();
            a.iter().zip(&b).all(|(x, y)| x <= y)
        })
    }

    #[test]
    fn permutation_basics() {
        assert_eq!(Perm::all(4).len(), 24);
        assert_eq!(Perm::involutions(3).len(), 4);
        assert_eq!(Perm::involutions(4).len(), 10);
        let w = Perm::from_one_line(vec![2, 0, 1]).unwrap();
        assert_eq!(w.compose(&w.inverse()), Perm::identity(3));
        assert_eq!(w.to_string(), "[3 1 2]");
        assert!(Perm::from_one_line(vec![0, 0]).is_err());
    }

    #[test]
    fn reduced_words_multiply_back() {
        for n in 1..=5 {
            for w in Perm::all(n) {
                let word = w.reduced_word();
                assert_eq!(word.len(), w.length());
                let prod = word.iter().fold(Perm::identity(n), |acc, &i| acc.times_simple(i));
                assert_eq!(prod, w);
            }
        }
    }

    #[test]
    fn cell_order_examples() {
        let cells = cell_order(3).unwrap();
        let lengths: Vec<_> = cells.iter().map(Perm::length).collect();
        assert_eq!(lengths, [0, 1, 1, 2, 2, 3]);
        assert!(cells[0].is_identity());
        assert_eq!(cells[5].as_slice(), &[2, 1, 0]);
        assert!(cell_order(7).is_err());
        assert!(cell_order(0).is_err());
    }

    #[test]
    fn identity_is_below_everything() {
        for w in Perm::all(4) {
            assert!(bruhat_leq(&Perm::identity(4), &w));
        }
    }

    #[test]
    fn subword_matches_tableau_criterion() {
        for n in 1..=5 {
            let all = Perm::all(n);
            for w in &all {
                let down = bruhat_down_set(w);
                for v in &all {
                    assert_eq!(down.contains(v), tableau_leq(v, w), "{v} vs {w}");
                }
            }
        }
    }

    #[test]
    fn closure_holds() {
        for n in 3..=5 {
            let rep = check_cell_closure(n).unwrap();
            assert!(rep.passes());
            assert!(rep.pairs_checked > 0);
        }
    }
}
