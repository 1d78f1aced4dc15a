//! Bruhat decomposition and the constructive reduction `s = y·w·y^{-σ}`.

use super::matrix::{s_map, u_matrix, CosetModel, FiniteMatrix};
use crate::cells::Perm;
use crate::error::{Error, Result};
use crate::field::Fe;

/// `m = n1·a·w·n2` with `n1`, `n2` upper unipotent and `a` diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BruhatDecomposition {
    pub n1: FiniteMatrix,
    pub a: FiniteMatrix,
    pub w: Perm,
    pub n2: FiniteMatrix,
}

impl BruhatDecomposition {
    pub fn product(&self, m: &CosetModel) -> FiniteMatrix {
        let f = m.field();
        self.n1
            .mul(&self.a, f)
            .mul(&FiniteMatrix::permutation(&self.w), f)
            .mul(&self.n2, f)
    }
}

/// Column-by-column elimination: the pivot of column `j` is the lowest nonzero
/// entry among rows not yet used; entries above it are cleared by row operations
/// and entries to its right by column operations.
pub fn bruhat_decompose(m: &CosetModel, g: &FiniteMatrix) -> Result<BruhatDecomposition> {
    let f = m.field();
    let n = g.n();
    let mut x = g.clone();
    let mut left = FiniteMatrix::identity(n);
    let mut right = FiniteMatrix::identity(n);
    let mut used = vec![false; n];
    let mut w = vec![0; n];
    for j in 0..n {
        let r = (0..n)
            .rev()
            .find(|&r| !used[r] && x.get(r, j) != 0)
            .ok_or(Error::Singular)?;
        used[r] = true;
        w[j] = r;
        let pivot_inv = f.inv(x.get(r, j)).expect("nonzero pivot");
        for i in 0..r {
            let c = x.get(i, j);
            if c != 0 {
                let c = f.neg(f.mul(c, pivot_inv));
                x.add_row_multiple(i, r, c, f);
                left.add_row_multiple(i, r, c, f);
            }
        }
        for k in j + 1..n {
            let c = x.get(r, k);
            if c != 0 {
                let c = f.neg(f.mul(c, pivot_inv));
                x.add_col_multiple(k, j, c, f);
                right.add_col_multiple(k, j, c, f);
            }
        }
    }
    let w = Perm::from_one_line(w).map_err(|e| Error::Internal(e.to_string()))?;
    let mut d = vec![0; n];
    for j in 0..n {
        d[w.apply(j)] = x.get(w.apply(j), j);
    }
    Ok(BruhatDecomposition {
        n1: left.inverse(f)?,
        a: FiniteMatrix::diag(&d),
        w,
        n2: right.inverse(f)?,
    })
}

/// `θ(u) = (aw)^{-1}·u^σ·(aw)` for a diagonal `a` and involution `w` with `w·a·w = a^{-σ}`.
#[derive(Debug, Clone)]
pub struct Twist {
    aw: FiniteMatrix,
    aw_inv: FiniteMatrix,
    w: Perm,
}

impl Twist {
    pub fn new(m: &CosetModel, a: &FiniteMatrix, w: &Perm) -> Result<Self> {
        let f = m.field();
        if !w.is_involution() {
            return Err(Error::Precondition(format!("{w} is not an involution")));
        }
        let pw = FiniteMatrix::permutation(w);
        let conj = pw.mul(a, f).mul(&pw, f);
        let target = a.inverse(f)?.sigma(m);
        if !a.is_diagonal() || conj != target {
            return Err(Error::Precondition("w·a·w must equal a^{-σ}".into()));
        }
        let aw = a.mul(&pw, f);
        let aw_inv = aw.inverse(f)?;
        Ok(Twist {
            aw,
            aw_inv,
            w: w.clone(),
        })
    }

    pub fn apply(&self, m: &CosetModel, u: &FiniteMatrix) -> FiniteMatrix {
        let f = m.field();
        self.aw_inv.mul(&u.sigma(m), f).mul(&self.aw, f)
    }

    /// Membership in `U'_w`: upper unipotent, supported on `i < j` with `w(i) < w(j)`.
    pub fn in_u_prime(&self, u: &FiniteMatrix) -> bool {
        let n = u.n();
        u.is_upper_unipotent()
            && (0..n).all(|i| (i + 1..n).all(|j| u.get(i, j) == 0 || self.w.apply(i) < self.w.apply(j)))
    }

    /// Positions `(i, j)` allowed in `U'_w`.
    pub fn u_prime_positions(&self) -> Vec<(usize, usize)> {
        let n = self.w.n();
        (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.w.apply(i) < self.w.apply(j))
            .collect()
    }

    fn level(&self, i: usize, j: usize) -> usize {
        (j - i) + (self.w.apply(j) - self.w.apply(i))
    }
}

/// Solves `n = θ(u)^{-1}·u` for `u ∈ U'_w`.
///
/// Grade `U'_w` by `h(i, j) = (j − i) + (w(j) − w(i))`, which θ preserves. If the
/// lowest nonzero level of `n` is `N`, then `θ(N) = −N` there and `u_h = 1 + N/2`
/// clears it; recurse on `θ(u_h)·n·u_h^{-1}`.
pub fn solve_unipotent_h90(m: &CosetModel, twist: &Twist, n: &FiniteMatrix) -> Result<FiniteMatrix> {
    let f = m.field();
    if !twist.in_u_prime(n) {
        return Err(Error::Precondition(format!("{n} is not in U'_w")));
    }
    if !n.mul(&twist.apply(m, n), f).is_identity() {
        return Err(Error::Precondition("n·θ(n) must be the identity".into()));
    }
    let size = n.n();
    let half = f.half();
    let mut cur = n.clone();
    let mut acc = FiniteMatrix::identity(size);
    let positions = twist.u_prime_positions();
    for _ in 0..=2 * size {
        let Some(h) = positions
            .iter()
            .filter(|&&(i, j)| cur.get(i, j) != 0)
            .map(|&(i, j)| twist.level(i, j))
            .min()
        else {
            break;
        };
        let mut step = FiniteMatrix::identity(size);
        for &(i, j) in &positions {
            if twist.level(i, j) == h {
                step.set(i, j, f.mul(half, cur.get(i, j)));
            }
        }
        cur = twist.apply(m, &step).mul(&cur, f).mul(&step.inverse(f)?, f);
        acc = step.mul(&acc, f);
    }
    let rebuilt = twist.apply(m, &acc).inverse(f)?.mul(&acc, f);
    if cur.is_identity() && rebuilt == *n {
        return Ok(acc);
    }
    if size <= 3 {
        if let Some(u) = solve_unipotent_h90_exhaustive(m, twist, n)? {
            return Ok(u);
        }
    }
    Err(Error::Anomaly(format!("no u in U'_w with θ(u)^(-1)·u = {n}")))
}

/// Searches all of `U'_w`; only for tiny cases.
pub fn solve_unipotent_h90_exhaustive(
    m: &CosetModel,
    twist: &Twist,
    n: &FiniteMatrix,
) -> Result<Option<FiniteMatrix>> {
    let f = m.field();
    let positions = twist.u_prime_positions();
    let order = f.order() as u64;
    let total = order
        .checked_pow(positions.len() as u32)
        .filter(|&t| t <= 1 << 22)
        .ok_or_else(|| Error::SizeGuard("U'_w too large for exhaustive search".into()))?;
    for code in 0..total {
        let mut u = FiniteMatrix::identity(n.n());
        let mut c = code;
        for &(i, j) in &positions {
            u.set(i, j, (c % order) as Fe);
            c /= order;
        }
        if twist.apply(m, &u).inverse(f)?.mul(&u, f) == *n {
            return Ok(Some(u));
        }
    }
    Ok(None)
}

/// Solves `t = c·θ'(c)^{-1}` for diagonal `c`, where `θ'(x) = w^{-1}·x^σ·w`,
/// i.e. `θ'(x)_i = σ(x_{w(i)})`.
pub fn solve_torus_h90(m: &CosetModel, t: &[Fe], w: &Perm) -> Result<Vec<Fe>> {
    let f = m.field();
    let n = t.len();
    if w.n() != n || !w.is_involution() {
        return Err(Error::Precondition(format!("{w} is not an involution of size {n}")));
    }
    if t.contains(&0) {
        return Err(Error::Singular);
    }
    if (0..n).any(|i| f.mul(t[i], m.sigma(t[w.apply(i)])) != 1) {
        return Err(Error::Precondition("t·θ'(t) must be the identity".into()));
    }
    let q = m.q() as u64;
    let mut c = vec![1; n];
    for i in 0..n {
        let j = w.apply(i);
        if j == i {
            // t_i = c_i^{1-q}
            let l = f.log(t[i]).expect("unit") as u64;
            if !l.is_multiple_of(q - 1) {
                return Err(Error::Anomaly(format!("norm-one element {} is not a (1-q)-th power", t[i])));
            }
            let k = (q + 1 - (l / (q - 1)) % (q + 1)) % (q + 1);
            c[i] = f.exp(k);
        } else if i < j {
            c[i] = t[i];
            c[j] = 1;
        }
    }
    let check: Vec<Fe> = (0..n)
        .map(|i| f.div(c[i], m.sigma(c[w.apply(i)])).expect("unit"))
        .collect();
    if check != t {
        return Err(Error::Anomaly("torus solution failed verification".into()));
    }
    Ok(c)
}

#[derive(Debug, Clone)]
pub struct Reduction {
    pub w: Perm,
    pub y: FiniteMatrix,
    pub bruhat: BruhatDecomposition,
    /// The Borel element `b` with `b^σ·s·b^{-1} = P_w`; `y = b^{-σ}`.
    pub b: FiniteMatrix,
}

/// `s ∈ S` ↦ `(w, y)` with `w² = 1` and `s = y·P_w·y^{-σ}`.
pub fn reduce_to_involution(m: &CosetModel, s: &FiniteMatrix) -> Result<Reduction> {
    let f = m.field();
    if !s.in_symmetric_space(m) {
        return Err(Error::Precondition(format!("{s} does not satisfy M·M^σ = I")));
    }
    let bruhat = bruhat_decompose(m, s)?;
    let BruhatDecomposition { n1, a, w, n2 } = &bruhat;
    let pw = FiniteMatrix::permutation(w);
    if !w.is_involution() {
        return Err(Error::Anomaly(format!("Bruhat cell {w} of {s} is not an involution")));
    }
    let twist = Twist::new(m, a, w).map_err(|e| Error::Anomaly(format!("{s}: {e}")))?;

    // b1 = n2: s1 = n2^σ·s·n2^{-1} = (n2^σ·n1)·a·w = (aw)·n
    let v = n2.sigma(m).mul(n1, f);
    let aw = a.mul(&pw, f);
    let aw_inv = aw.inverse(f)?;
    let nmat = aw_inv.mul(&v, f).mul(&aw, f);
    let u = solve_unipotent_h90(m, &twist, &nmat).map_err(|e| Error::Anomaly(format!("{s}: {e}")))?;
    // b2 = u: s2 = a·w
    let c = solve_torus_h90(m, &a.diagonal(), w).map_err(|e| Error::Anomaly(format!("{s}: {e}")))?;
    // b3 = c^{-σ}: s3 = w
    let b3 = FiniteMatrix::diag(&c).inverse(f)?.sigma(m);
    let b = b3.mul(&u, f).mul(n2, f);
    let y = b.inverse(f)?.sigma(m);

    let rebuilt = y.mul(&pw, f).mul(&y.inverse(f)?.sigma(m), f);
    if rebuilt != *s || !b.is_upper_triangular() {
        return Err(Error::Anomaly(format!("reduction of {s} failed verification")));
    }
    Ok(Reduction {
        w: w.clone(),
        y,
        bruhat,
        b,
    })
}

/// `U_r^w = P_w^{-1}·diag(u, …, u, I_{n−2r})·P_w`.
pub fn u_r_w_representative(m: &CosetModel, n: usize, r: usize, w: &Perm) -> Result<FiniteMatrix> {
    if 2 * r > n || w.n() != n {
        return Err(Error::OutOfRange(format!("need 2r <= n and w in S_n (n={n}, r={r})")));
    }
    let f = m.field();
    let u = u_matrix(m);
    let mut ur = FiniteMatrix::identity(n);
    for k in 0..r {
        for i in 0..2 {
            for j in 0..2 {
                ur.set(2 * k + i, 2 * k + j, u.get(i, j));
            }
        }
    }
    let pw = FiniteMatrix::permutation(w);
    Ok(pw.inverse(f)?.mul(&ur, f).mul(&pw, f))
}

/// Every `U_r^w` for `0 ≤ r ≤ n/2`, `w ∈ S_n`, tagged with `(r, w)`.
pub fn u_r_w_representatives(m: &CosetModel, n: usize) -> Result<Vec<(usize, Perm, FiniteMatrix)>> {
    let mut out = Vec::new();
    for r in 0..=n / 2 {
        for w in Perm::all(n) {
            let rep = u_r_w_representative(m, n, r, &w)?;
            out.push((r, w, rep));
        }
    }
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct CoverageReport {
    pub representatives: usize,
    pub orbits: usize,
    pub covered: Vec<bool>,
}

impl CoverageReport {
    pub fn complete(&self) -> bool {
        self.covered.iter().all(|&c| c)
    }

    pub fn covered_count(&self) -> usize {
        self.covered.iter().filter(|&&c| c).count()
    }
}

/// Locates `s_map(U_r^w)` in the orbit table for every `(r, w)`.
pub fn u_r_w_coverage(m: &CosetModel, table: &super::OrbitTable) -> Result<CoverageReport> {
    let reps = u_r_w_representatives(m, table.n)?;
    let mut covered = vec![false; table.orbits.len()];
    for (_, w, g) in &reps {
        let s = s_map(m, g)?;
        let k = table
            .orbit_of(&s)
            .ok_or_else(|| Error::Anomaly(format!("s_map(U^{w}) = {s} is not in S")))?;
        covered[k] = true;
    }
    Ok(CoverageReport {
        representatives: reps.len(),
        orbits: table.orbits.len(),
        covered,
    })
}

/// For `z ∈ F_{q²}*`: `u^{-1}·diag(z, z^σ)·u = [[x, Δy], [y, x]]` with `x, y ∈ F_q`,
/// `Δ = δ²`. Returns `(x, y)`, or `None` if the shape fails.
pub fn torus_conjugate(m: &CosetModel, z: Fe) -> Option<(Fe, Fe)> {
    let f = m.field();
    let u = u_matrix(m);
    let t = u
        .inverse(f)
        .ok()?
        .mul(&FiniteMatrix::diag(&[z, m.sigma(z)]), f)
        .mul(&u, f);
    let (x, y) = (t.get(0, 0), t.get(1, 0));
    let ok = t.get(1, 1) == x && t.get(0, 1) == f.mul(m.delta_sq(), y) && m.in_base(x) && m.in_base(y);
    ok.then_some((x, y))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn model(q: u32) -> CosetModel {
        CosetModel::new(q).unwrap()
    }

    #[test]
    fn bruhat_examples() {
        let m = model(3);
        let d = FiniteMatrix::diag(&[2, 5, 7]);
        let b = bruhat_decompose(&m, &d).unwrap();
        assert_eq!(b.a, d);
        assert!(b.w.is_identity() && b.n1.is_identity() && b.n2.is_identity());
        for w in Perm::all(3) {
            let b = bruhat_decompose(&m, &FiniteMatrix::permutation(&w)).unwrap();
            assert_eq!(b.w, w);
            assert!(b.a.is_identity() && b.n1.is_identity() && b.n2.is_identity());
        }
        let s = FiniteMatrix::from_rows(vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(bruhat_decompose(&m, &s).unwrap().w, Perm::transposition(2, 0, 1));
        let sing = FiniteMatrix::from_rows(vec![vec![1, 1], vec![1, 1]]).unwrap();
        assert!(matches!(bruhat_decompose(&m, &sing), Err(Error::Singular)));
    }

    #[test]
    fn bruhat_exhaustive_n2() {
        let m = model(3);
        let f = m.field();
        for code in 0..9u32.pow(4) {
            let e = [code % 9, code / 9 % 9, code / 81 % 9, code / 729];
            let g = FiniteMatrix::from_rows(vec![vec![e[0], e[1]], vec![e[2], e[3]]]).unwrap();
            let det = f.sub(f.mul(e[0], e[3]), f.mul(e[1], e[2]));
            match bruhat_decompose(&m, &g) {
                Ok(b) => {
                    assert_ne!(det, 0);
                    assert_eq!(b.product(&m), g);
                    assert!(b.n1.is_upper_unipotent() && b.n2.is_upper_unipotent() && b.a.is_diagonal());
                    // the big cell is exactly where the lower-left entry is nonzero
                    assert_eq!(b.w.is_identity(), e[2] == 0);
                }
                Err(_) => assert_eq!(det, 0),
            }
        }
    }

    #[test]
    fn reduction_examples() {
        let m = model(3);
        let r = reduce_to_involution(&m, &FiniteMatrix::identity(3)).unwrap();
        assert!(r.w.is_identity());
        assert!(r.y.is_upper_triangular());
        let anti = FiniteMatrix::from_rows(vec![vec![0, 1], vec![1, 0]]).unwrap();
        let r = reduce_to_involution(&m, &anti).unwrap();
        assert_eq!(r.w, Perm::transposition(2, 0, 1));
        let f = m.field();
        let pw = FiniteMatrix::permutation(&r.w);
        assert_eq!(r.y.mul(&pw, f).mul(&r.y.inverse(f).unwrap().sigma(&m), f), anti);
        assert_eq!(s_map(&m, &u_matrix(&m)).unwrap(), pw);
        let bad = FiniteMatrix::diag(&[4, 1]);
        assert!(matches!(reduce_to_involution(&m, &bad), Err(Error::Precondition(_))));
    }

    #[test]
    fn torus_examples() {
        let m = model(3);
        let f = m.field();
        assert_eq!(solve_torus_h90(&m, &[1, 1], &Perm::identity(2)).unwrap(), vec![1, 1]);
        for z in f.elements().filter(|&z| z != 0 && m.norm(z) == 1) {
            let c = solve_torus_h90(&m, &[z], &Perm::identity(1)).unwrap();
            assert_eq!(f.div(c[0], m.sigma(c[0])), Some(z));
        }
        let w = Perm::transposition(2, 0, 1);
        for x in 1..f.order() {
            let t = [x, f.inv(m.sigma(x)).unwrap()];
            assert_eq!(solve_torus_h90(&m, &t, &w).unwrap(), vec![x, 1]);
        }
        assert!(solve_torus_h90(&m, &[2, 1], &w).is_err());
    }

    #[test]
    fn unipotent_h90_exhaustive_sweep() {
        // every n in U'_w with n·θ(n) = 1 is solved, and agrees with brute force on solvability
        for q in [3] {
            let m = model(q);
            let f = m.field();
            for size in 2..=3 {
                for w in Perm::involutions(size) {
                    let twist = Twist::new(&m, &FiniteMatrix::identity(size), &w).unwrap();
                    let positions = twist.u_prime_positions();
                    let order = f.order();
                    let mut valid = 0;
                    for code in 0..order.pow(positions.len() as u32) {
                        let mut n = FiniteMatrix::identity(size);
                        let mut c = code;
                        for &(i, j) in &positions {
                            n.set(i, j, c % order);
                            c /= order;
                        }
                        if !n.mul(&twist.apply(&m, &n), f).is_identity() {
                            continue;
                        }
                        valid += 1;
                        let u = solve_unipotent_h90(&m, &twist, &n).unwrap();
                        assert!(twist.in_u_prime(&u));
                        assert_eq!(twist.apply(&m, &u).inverse(f).unwrap().mul(&u, f), n);
                        if size == 2 || valid % 5 == 1 {
                            assert!(solve_unipotent_h90_exhaustive(&m, &twist, &n).unwrap().is_some());
                        }
                    }
                    assert!(valid >= 1);
                }
            }
        }
    }

    #[test]
    fn u_r_w_examples() {
        let m = model(3);
        assert!(u_r_w_representative(&m, 3, 0, &Perm::identity(3)).unwrap().is_identity());
        assert_eq!(u_r_w_representative(&m, 2, 1, &Perm::identity(2)).unwrap(), u_matrix(&m));
        assert!(u_r_w_representative(&m, 3, 2, &Perm::identity(3)).is_err());
    }

    #[test]
    fn torus_conjugation_shape() {
        for q in [3, 5] {
            let m = model(q);
            for z in 1..m.field().order() {
                assert!(torus_conjugate(&m, z).is_some(), "z = {z}");
            }
        }
    }
}
