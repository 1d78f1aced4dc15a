//! Enumeration of `S = {M : M·M^σ = I}` and its Borel orbits.
//!
//! `M ∈ S` is the same thing as a σ-semilinear involution `φ(v) = M·σ(v)` of
//! `F_{q²}^n`, with `M e_j = φ(e_j)`. The enumeration picks `φ(e_0), φ(e_1), …` in
//! turn while maintaining the φ-stable span `X` of everything fixed so far,
//! described by a basis of φ-fixed vectors. A new `φ(e_k)` either leaves
//! `X + ⟨e_k⟩` (then `X` grows by two dimensions) or lies inside it, in which
//! case it must be `x + λe_k` with `λσ(λ) = 1` and `φ(x) = −σ(λ)x`. Every choice
//! extends, so the search has no dead ends.

use std::collections::{HashMap, VecDeque};

use super::matrix::{solve_affine, symmetric_space_size, CosetModel, FiniteMatrix};
use crate::cells::Perm;
use crate::error::{Error, Result};
use crate::field::{Fe, GaloisField};

/// Largest `|S|` that [`enumerate_s`] and [`orbit_decomposition`] will materialise.
pub const ENUMERATION_LIMIT: u128 = 200_000;
/// Largest `|S|` that [`count_s`] will walk.
pub const COUNT_LIMIT: u128 = 5_000_000;
/// Largest `n` for full enumeration.
pub const ENUMERATION_MAX_N: usize = 3;

struct Walker<'a> {
    m: &'a CosetModel,
    n: usize,
    norm_one: Vec<Fe>,
}

fn unit(n: usize, k: usize) -> Vec<Fe> {
    let mut v = vec![0; n];
    v[k] = 1;
    v
}

fn axpy(f: &GaloisField, y: &mut [Fe], c: Fe, x: &[Fe]) {
    if c != 0 {
        for (yi, &xi) in y.iter_mut().zip(x) {
            *yi = f.add(*yi, f.mul(c, xi));
        }
    }
}

fn scaled(f: &GaloisField, c: Fe, x: &[Fe]) -> Vec<Fe> {
    x.iter().map(|&xi| f.mul(c, xi)).collect()
}

/// Coordinates of `v` in `basis`, if `v` is in its span.
fn coordinates(f: &GaloisField, basis: &[Vec<Fe>], v: &[Fe]) -> Option<Vec<Fe>> {
    let n = v.len();
    let rows: Vec<Vec<Fe>> = (0..n).map(|i| basis.iter().map(|b| b[i]).collect()).collect();
    solve_affine(f, &rows, v, basis.len()).map(|s| s.particular)
}

impl<'a> Walker<'a> {
    fn new(m: &'a CosetModel, n: usize) -> Self {
        let f = m.field();
        let norm_one = f.elements().filter(|&x| x != 0 && m.norm(x) == 1).collect();
        Walker { m, n, norm_one }
    }

    /// φ on `X`, with `X` spanned by the φ-fixed vectors `fixed`.
    fn phi(&self, fixed: &[Vec<Fe>], v: &[Fe]) -> Option<Vec<Fe>> {
        let f = self.m.field();
        let coords = coordinates(f, fixed, v)?;
        let mut out = vec![0; self.n];
        for (c, b) in coords.iter().zip(fixed) {
            axpy(f, &mut out, self.m.sigma(*c), b);
        }
        Some(out)
    }

    /// Some `ν ≠ 0` with `σ(ν)/ν = μ`, for `μ` of norm one.
    fn h90(&self, mu: Fe) -> Fe {
        let f = self.m.field();
        let q = self.m.q() as u64;
        let l = f.log(mu).expect("unit") as u64;
        debug_assert_eq!(l % (q - 1), 0);
        f.exp(l / (q - 1))
    }

    fn walk(&self, cols: &mut Vec<Vec<Fe>>, fixed: &mut Vec<Vec<Fe>>, visit: &mut dyn FnMut(&[Vec<Fe>])) {
        let k = cols.len();
        if k == self.n {
            visit(cols);
            return;
        }
        let f = self.m.field();
        let e = unit(self.n, k);
        if let Some(image) = self.phi(fixed, &e) {
            cols.push(image);
            self.walk(cols, fixed, visit);
            cols.pop();
            return;
        }
        // φ(e_k) outside X + ⟨e_k⟩.
        let dim = fixed.len() + 1;
        if dim < self.n {
            let mut span = fixed.clone();
            span.push(e.clone());
            let total = (f.order() as u64).pow(self.n as u32);
            for code in 0..total {
                let y = decode(code, f.order(), self.n);
                if coordinates(f, &span, &y).is_some() {
                    continue;
                }
                let plus: Vec<Fe> = e.iter().zip(&y).map(|(&a, &b)| f.add(a, b)).collect();
                let delta = self.m.delta();
                let minus: Vec<Fe> = e.iter().zip(&y).map(|(&a, &b)| f.mul(delta, f.sub(a, b))).collect();
                fixed.push(plus);
                fixed.push(minus);
                cols.push(y);
                self.walk(cols, fixed, visit);
                cols.pop();
                fixed.pop();
                fixed.pop();
            }
        }
        // φ(e_k) = x + λe_k inside X + ⟨e_k⟩.
        let q = self.m.q();
        for &lambda in &self.norm_one {
            let nu = self.h90(f.neg(self.m.sigma(lambda)));
            let m_dim = fixed.len();
            for code in 0..(q as u64).pow(m_dim as u32) {
                let c = decode(code, q, m_dim);
                let mut y = scaled(f, lambda, &e);
                for (ci, b) in c.iter().zip(fixed.iter()) {
                    axpy(f, &mut y, f.mul(nu, *ci), b);
                }
                // ν'·e_k + σ(ν')·y is φ-fixed; pick ν' so it leaves X.
                let new_fixed = [1, self.m.delta()]
                    .into_iter()
                    .find_map(|nu2| {
                        let coef = f.add(nu2, f.mul(self.m.sigma(nu2), lambda));
                        (coef != 0).then(|| {
                            let mut v = scaled(f, nu2, &e);
                            axpy(f, &mut v, self.m.sigma(nu2), &y);
                            v
                        })
                    })
                    .expect("1 and δ cannot both fail");
                fixed.push(new_fixed);
                cols.push(y);
                self.walk(cols, fixed, visit);
                cols.pop();
                fixed.pop();
            }
        }
    }
}

fn decode(mut code: u64, base: u32, len: usize) -> Vec<Fe> {
    (0..len)
        .map(|_| {
            let d = (code % base as u64) as Fe;
            code /= base as u64;
            d
        })
        .collect()
}

fn guard(n: usize, q: u32, limit: u128) -> Result<u128> {
    if n == 0 {
        return Err(Error::OutOfRange("n must be positive".into()));
    }
    let size = symmetric_space_size(n as u32, q as u64);
    if size > limit {
        return Err(Error::SizeGuard(format!(
            "|S| = {size} for n = {n}, q = {q} exceeds the limit {limit}"
        )));
    }
    Ok(size)
}

fn for_each_s(m: &CosetModel, n: usize, mut visit: impl FnMut(&[Vec<Fe>])) {
    let walker = Walker::new(m, n);
    walker.walk(&mut Vec::with_capacity(n), &mut Vec::with_capacity(n), &mut visit);
}

/// Every `M` with `M·M^σ = I`, in enumeration order.
pub fn enumerate_s(m: &CosetModel, n: usize) -> Result<Vec<FiniteMatrix>> {
    if n > ENUMERATION_MAX_N {
        return Err(Error::SizeGuard(format!(
            "full enumeration is limited to n <= {ENUMERATION_MAX_N}"
        )));
    }
    let expected = guard(n, m.q(), ENUMERATION_LIMIT)?;
    let mut out = Vec::with_capacity(expected as usize);
    for_each_s(m, n, |cols| out.push(FiniteMatrix::from_columns(cols)));
    Ok(out)
}

/// `|S|` by walking the enumeration without storing it.
pub fn count_s(m: &CosetModel, n: usize) -> Result<u128> {
    if n > ENUMERATION_MAX_N {
        return Err(Error::SizeGuard(format!(
            "enumeration is limited to n <= {ENUMERATION_MAX_N}"
        )));
    }
    guard(n, m.q(), COUNT_LIMIT)?;
    let mut count = 0u128;
    for_each_s(m, n, |_| count += 1);
    Ok(count)
}

#[derive(Debug, Clone)]
pub struct Orbit {
    pub representative: Perm,
    pub size: usize,
    pub members: Option<Vec<FiniteMatrix>>,
}

#[derive(Debug, Clone)]
pub struct OrbitTable {
    pub n: usize,
    pub q: u32,
    pub s_size: usize,
    pub s_size_formula: u128,
    pub orbits: Vec<Orbit>,
    index: HashMap<FiniteMatrix, usize>,
}

impl OrbitTable {
    /// Index into `orbits` of the orbit containing `s`.
    pub fn orbit_of(&self, s: &FiniteMatrix) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn representatives(&self) -> Vec<Perm> {
        self.orbits.iter().map(|o| o.representative.clone()).collect()
    }

    pub fn sizes_sum(&self) -> usize {
        self.orbits.iter().map(|o| o.size).sum()
    }
}

/// Generators of the upper Borel subgroup of `GL_n(F_{q²})`: `diag(…, g, …)` and `1 + E_{i,i+1}`.
pub fn borel_generators(m: &CosetModel, n: usize) -> Vec<FiniteMatrix> {
    let g = m.field().generator();
    let mut gens = Vec::new();
    for i in 0..n {
        let mut d = vec![1; n];
        d[i] = g;
        gens.push(FiniteMatrix::diag(&d));
    }
    for i in 0..n.saturating_sub(1) {
        let mut x = FiniteMatrix::identity(n);
        x.set(i, i + 1, 1);
        gens.push(x);
    }
    gens
}

/// Orbits of `s ↦ b^σ·s·b^{-1}` for `b` upper triangular, by closure under [`borel_generators`].
/// Each orbit must contain exactly one permutation matrix; anything else is an
/// [`Error::Anomaly`].
pub fn orbit_decomposition(m: &CosetModel, n: usize, keep_members: bool) -> Result<OrbitTable> {
    let elements = enumerate_s(m, n)?;
    let f = m.field();
    let actions: Vec<(FiniteMatrix, FiniteMatrix)> = borel_generators(m, n)
        .into_iter()
        .map(|b| {
            let inv = b.inverse(f).expect("generators are invertible");
            (b.sigma(m), inv)
        })
        .collect();
    let position: HashMap<&FiniteMatrix, usize> = elements.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut label = vec![usize::MAX; elements.len()];
    let mut raw: Vec<Vec<usize>> = Vec::new();
    for start in 0..elements.len() {
        if label[start] != usize::MAX {
            continue;
        }
        let id = raw.len();
        let mut members = vec![start];
        label[start] = id;
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            for (bs, binv) in &actions {
                let t = bs.mul(&elements[i], f).mul(binv, f);
                let j = *position.get(&t).ok_or_else(|| {
                    Error::Anomaly(format!("Borel action left S: {} -> {t}", elements[i]))
                })?;
                if label[j] == usize::MAX {
                    label[j] = id;
                    members.push(j);
                    queue.push_back(j);
                }
            }
        }
        raw.push(members);
    }
    let mut orbits = Vec::with_capacity(raw.len());
    for members in &raw {
        let perms: Vec<Perm> = members.iter().filter_map(|&i| elements[i].as_permutation()).collect();
        let [w] = perms.as_slice() else {
            let shown: Vec<String> = perms.iter().map(Perm::to_string).collect();
            return Err(Error::Anomaly(format!(
                "orbit of {} (size {}) contains {} permutation matrices: [{}]",
                elements[members[0]],
                members.len(),
                perms.len(),
                shown.join(", ")
            )));
        };
        if !w.is_involution() {
            return Err(Error::Anomaly(format!("representative {w} is not an involution")));
        }
        orbits.push((w.clone(), members));
    }
    orbits.sort_by(|a, b| a.0.cmp(&b.0));
    let mut index = HashMap::with_capacity(elements.len());
    for (k, (_, members)) in orbits.iter().enumerate() {
        for &i in members.iter() {
            index.insert(elements[i].clone(), k);
        }
    }
    let orbits = orbits
        .into_iter()
        .map(|(w, members)| Orbit {
            representative: w,
            size: members.len(),
            members: keep_members.then(|| {
                let mut v: Vec<FiniteMatrix> = members.iter().map(|&i| elements[i].clone()).collect();
                v.sort();
                v
            }),
        })
        .collect();
    Ok(OrbitTable {
        n,
        q: m.q(),
        s_size: elements.len(),
        s_size_formula: symmetric_space_size(n as u32, m.q() as u64),
        orbits,
        index,
    })
}
