use std::fmt;

use crate::cells::Perm;
use crate::error::{Error, Result};
use crate::field::{is_prime, Fe, GaloisField};

/// Largest `q²` the finite model accepts.
pub const MODEL_MAX_ORDER: u32 = 1024;

/// `F_{q²}/F_q` with `σ(x) = x^q`, `δ² = ` the least nonsquare of `F_q`.
///
/// Codes below `q` are exactly the elements of `F_q`.
#[derive(Debug, Clone)]
pub struct CosetModel {
    q: u32,
    field: GaloisField,
}

impl CosetModel {
    pub fn new(q: u32) -> Result<Self> {
        let p = (2..=q).find(|d| q.is_multiple_of(*d)).ok_or(Error::NotPrime(q as u64))?;
        if p == 2 {
            return Err(Error::EvenPrime(q as u64));
        }
        let mut f = 0;
        let mut r = q;
        while r.is_multiple_of(p) {
            r /= p;
            f += 1;
        }
        if r != 1 || !is_prime(p as u64) {
            return Err(Error::OutOfRange(format!("q = {q} is not a prime power")));
        }
        if (q as u64) * (q as u64) > MODEL_MAX_ORDER as u64 {
            return Err(Error::FieldTooLarge(format!(
                "q^2 = {} exceeds {MODEL_MAX_ORDER}",
                q as u64 * q as u64
            )));
        }
        let base = GaloisField::new(p, f)?;
        let field = GaloisField::quadratic(&base)?;
        Ok(CosetModel { q, field })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn field(&self) -> &GaloisField {
        &self.field
    }

    pub fn delta(&self) -> Fe {
        self.field.delta().expect("quadratic construction")
    }

    pub fn delta_sq(&self) -> Fe {
        self.field.delta_sq().expect("quadratic construction")
    }

    #[inline]
    pub fn sigma(&self, x: Fe) -> Fe {
        self.field.conj(x)
    }

    pub fn in_base(&self, x: Fe) -> bool {
        x < self.q
    }

    pub fn norm(&self, x: Fe) -> Fe {
        self.field.mul(x, self.sigma(x))
    }
}

/// Square matrix over `F_{q²}`, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteMatrix {
    n: usize,
    a: Vec<Fe>,
}

impl FiniteMatrix {
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn zero(n: usize) -> Self {
        FiniteMatrix { n, a: vec![0; n * n] }
    }

    pub fn from_rows(rows: Vec<Vec<Fe>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::OutOfRange("matrix rows must form a square".into()));
        }
        Ok(FiniteMatrix {
            n,
            a: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_columns(cols: &[Vec<Fe>]) -> Self {
        let n = cols.len();
        let mut m = Self::zero(n);
        for (j, c) in cols.iter().enumerate() {
            for (i, &x) in c.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
    }

    pub fn diag(d: &[Fe]) -> Self {
        let mut m = Self::zero(d.len());
        for (i, &x) in d.iter().enumerate() {
            m.set(i, i, x);
        }
        m
    }

    /// `P_w` with `(P_w)_{w(j), j} = 1`, so that `P_v·P_w = P_{v∘w}`.
    pub fn permutation(w: &Perm) -> Self {
        let mut m = Self::zero(w.n());
        for j in 0..w.n() {
            m.set(w.apply(j), j, 1);
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Fe {
        self.a[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: Fe) {
        self.a[i * self.n + j] = x;
    }

    pub fn entries(&self) -> &[Fe] {
        &self.a
    }

    pub fn rows(&self) -> Vec<Vec<Fe>> {
        self.a.chunks(self.n).map(<[Fe]>::to_vec).collect()
    }

    pub fn diagonal(&self) -> Vec<Fe> {
        (0..self.n).map(|i| self.get(i, i)).collect()
    }

    pub fn mul(&self, other: &Self, f: &GaloisField) -> Self {
        let n = self.n;
        let mut out = Self::zero(n);
        for i in 0..n {
            for l in 0..n {
                let x = self.get(i, l);
                if x == 0 {
                    continue;
                }
                for j in 0..n {
                    let y = other.get(l, j);
                    if y != 0 {
                        out.a[i * n + j] = f.add(out.a[i * n + j], f.mul(x, y));
                    }
                }
            }
        }
        out
    }

    pub fn sigma(&self, m: &CosetModel) -> Self {
        FiniteMatrix {
            n: self.n,
            a: self.a.iter().map(|&x| m.sigma(x)).collect(),
        }
    }

    pub fn scale(&self, c: Fe, f: &GaloisField) -> Self {
        FiniteMatrix {
            n: self.n,
            a: self.a.iter().map(|&x| f.mul(c, x)).collect(),
        }
    }

    /// Gauss-Jordan inverse.
    pub fn inverse(&self, f: &GaloisField) -> Result<Self> {
        let n = self.n;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let piv = (col..n).find(|&r| a.get(r, col) != 0).ok_or(Error::Singular)?;
            a.swap_rows(piv, col);
            inv.swap_rows(piv, col);
            let s = f.inv(a.get(col, col)).expect("nonzero pivot");
            a.scale_row(col, s, f);
            inv.scale_row(col, s, f);
            for r in 0..n {
                let c = a.get(r, col);
                if r != col && c != 0 {
                    let c = f.neg(c);
                    a.add_row_multiple(r, col, c, f);
                    inv.add_row_multiple(r, col, c, f);
                }
            }
        }
        Ok(inv)
    }

    pub fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            for k in 0..self.n {
                self.a.swap(i * self.n + k, j * self.n + k);
            }
        }
    }

    pub fn scale_row(&mut self, i: usize, c: Fe, f: &GaloisField) {
        for k in 0..self.n {
            self.a[i * self.n + k] = f.mul(c, self.a[i * self.n + k]);
        }
    }

    /// `row_i += c·row_j`.
    pub fn add_row_multiple(&mut self, i: usize, j: usize, c: Fe, f: &GaloisField) {
        for k in 0..self.n {
            let y = self.a[j * self.n + k];
            self.a[i * self.n + k] = f.add(self.a[i * self.n + k], f.mul(c, y));
        }
    }

    /// `col_i += c·col_j`.
    pub fn add_col_multiple(&mut self, i: usize, j: usize, c: Fe, f: &GaloisField) {
        for k in 0..self.n {
            let y = self.get(k, j);
            let x = self.get(k, i);
            self.set(k, i, f.add(x, f.mul(c, y)));
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| i == j || self.get(i, j) == 0))
    }

    pub fn is_upper_unipotent(&self) -> bool {
        (0..self.n).all(|i| self.get(i, i) == 1 && (0..i).all(|j| self.get(i, j) == 0))
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j) == 0))
    }

    /// The permutation `w` if this is `P_w`.
    pub fn as_permutation(&self) -> Option<Perm> {
        let mut w = vec![usize::MAX; self.n];
        for j in 0..self.n {
            let mut hit = None;
            for i in 0..self.n {
                match self.get(i, j) {
                    0 => {}
                    1 if hit.is_none() => hit = Some(i),
                    _ => return None,
                }
            }
            w[j] = hit?;
        }
        Perm::from_one_line(w).ok()
    }

    /// `M·M^σ = I`.
    pub fn in_symmetric_space(&self, m: &CosetModel) -> bool {
        self.mul(&self.sigma(m), m.field()).is_identity()
    }
}

impl fmt::Display for FiniteMatrix {
    /// Rows separated by `;`, entries as field codes.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.a.chunks(self.n).enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            let cells: Vec<String> = row.iter().map(u32::to_string).collect();
            write!(f, "{}", cells.join(" "))?;
        }
        write!(f, "]")
    }
}

/// `g^σ·g^{-1}`.
pub fn s_map(m: &CosetModel, g: &FiniteMatrix) -> Result<FiniteMatrix> {
    let inv = g.inverse(m.field())?;
    Ok(g.sigma(m).mul(&inv, m.field()))
}

/// The 2×2 matrix with rows `(1, −δ)` and `(1, δ)`.
pub fn u_matrix(m: &CosetModel) -> FiniteMatrix {
    let d = m.delta();
    FiniteMatrix::from_rows(vec![vec![1, m.field().neg(d)], vec![1, d]]).expect("square")
}

/// Solution set `{p + Σ t_i k_i}` of an affine system over a field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineSolution {
    pub particular: Vec<Fe>,
    pub kernel: Vec<Vec<Fe>>,
}

impl AffineSolution {
    pub fn count(&self, order: u32) -> u64 {
        (order as u64).pow(self.kernel.len() as u32)
    }

    /// Calls `visit` on every solution, in a fixed order.
    pub fn for_each(&self, f: &GaloisField, mut visit: impl FnMut(&[Fe])) {
        let k = self.kernel.len();
        let mut coeffs = vec![0u32; k];
        let mut x = self.particular.clone();
        loop {
            visit(&x);
            let Some(pos) = (0..k).find(|&i| coeffs[i] + 1 < f.order()) else {
                return;
            };
            for c in &mut coeffs[..pos] {
                *c = 0;
            }
            coeffs[pos] += 1;
            x.clone_from(&self.particular);
            for (c, v) in coeffs.iter().zip(&self.kernel) {
                if *c != 0 {
                    for (xi, &vi) in x.iter_mut().zip(v) {
                        *xi = f.add(*xi, f.mul(*c, vi));
                    }
                }
            }
        }
    }
}

/// Solves `A·x = b` for `A` with `rows.len()` equations in `vars` unknowns.
pub fn solve_affine(f: &GaloisField, rows: &[Vec<Fe>], b: &[Fe], vars: usize) -> Option<AffineSolution> {
    let mut a: Vec<Vec<Fe>> = rows
        .iter()
        .zip(b)
        .map(|(r, &bi)| {
            let mut r = r.clone();
            r.push(bi);
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..vars {
        let Some(piv) = (row..a.len()).find(|&r| a[r][col] != 0) else {
            continue;
        };
        a.swap(row, piv);
        let s = f.inv(a[row][col]).expect("nonzero pivot");
        for x in &mut a[row] {
            *x = f.mul(*x, s);
        }
        for r in 0..a.len() {
            let c = a[r][col];
            if r != row && c != 0 {
                let c = f.neg(c);
                for k in 0..=vars {
                    let y = a[row][k];
                    a[r][k] = f.add(a[r][k], f.mul(c, y));
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    if a[row..].iter().any(|r| r[vars] != 0) {
        return None;
    }
    let mut particular = vec![0; vars];
    for (r, &col) in pivots.iter().enumerate() {
        particular[col] = a[r][vars];
    }
    let kernel = (0..vars)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![0; vars];
            v[free] = 1;
            for (r, &col) in pivots.iter().enumerate() {
                v[col] = f.neg(a[r][free]);
            }
            v
        })
        .collect();
    Some(AffineSolution { particular, kernel })
}

/// `|GL_n(F_q)|`.
pub fn gl_order(n: u32, q: u64) -> u128 {
    let qn = (q as u128).pow(n);
    (0..n).map(|i| qn - (q as u128).pow(i)).product()
}

/// `|GL_n(F_{q²})| / |GL_n(F_q)|`.
pub fn symmetric_space_size(n: u32, q: u64) -> u128 {
    gl_order(n, q * q) / gl_order(n, q)
}
