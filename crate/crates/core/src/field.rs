//! Small finite fields `F_{p^m}` driven by log/antilog tables.
//!
//! Elements are integer codes in `[0, p^m)`: the base-`p` digits of a code are
//! its coordinates in a fixed basis over `F_p`, so addition is digitwise and
//! multiplication goes through discrete logarithms to a fixed generator.
//!
//! Two constructions exist. [`GaloisField::new`] builds `F_p[x]/(P)` with `P`
//! the least monic irreducible polynomial of degree `m`. [`GaloisField::quadratic`]
//! builds `k(δ)` over an existing field `k`, with `δ² = d` the least nonsquare
//! of `k`; a code is then `a + b·|k|` for `a + bδ`. In both cases the generator
//! is the least code of full multiplicative order.

use crate::error::{Error, Result};

/// Element code.
pub type Fe = u32;

/// Upper bound on the field order handled by the tables.
pub const MAX_ORDER: u64 = 1 << 16;

/// Fields up to this order also get full addition/multiplication tables.
const DENSE_TABLE_ORDER: u32 = 1024;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Construction {
    Polynomial { modulus: Vec<u32> },
    Quadratic { base_order: u32, delta_sq: Fe },
}

#[derive(Debug, Clone)]
pub struct GaloisField {
    p: u32,
    degree: u32,
    order: u32,
    generator: Fe,
    exp: Vec<Fe>,
    log: Vec<u32>,
    construction: Construction,
    add_table: Option<Vec<u16>>,
    mul_table: Option<Vec<u16>>,
}

impl PartialEq for GaloisField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.degree == other.degree && self.construction == other.construction
    }
}
impl Eq for GaloisField {}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// Dense coefficient vectors over F_p, little-endian, fixed length.
fn poly_mul_mod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let m = modulus.len() - 1;
    let mut prod = vec![0u64; 2 * m];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    // modulus is monic
    for k in (m..2 * m).rev() {
        let c = prod[k];
        if c == 0 {
            continue;
        }
        prod[k] = 0;
        for i in 0..m {
            let sub = c * modulus[i] as u64 % p as u64;
            let slot = &mut prod[k - m + i];
            *slot = (*slot + p as u64 - sub) % p as u64;
        }
    }
    prod.truncate(m);
    prod.into_iter().map(|x| x as u32).collect()
}

fn poly_rem_is_zero(num: &[u32], den: &[u32], p: u32) -> bool {
    // den monic
    let mut r: Vec<u64> = num.iter().map(|&x| x as u64).collect();
    let dd = den.len() - 1;
    for k in (dd..r.len()).rev() {
        let c = r[k];
        if c == 0 {
            continue;
        }
        for i in 0..=dd {
            let sub = c * den[i] as u64 % p as u64;
            r[k - dd + i] = (r[k - dd + i] + p as u64 - sub) % p as u64;
        }
    }
    r[..dd].iter().all(|&x| x == 0)
}

fn monic_polys(p: u32, degree: usize) -> impl Iterator<Item = Vec<u32>> {
    let count = (p as u64).pow(degree as u32);
    (0..count).map(move |mut code| {
        let mut v = Vec::with_capacity(degree + 1);
        for _ in 0..degree {
            v.push((code % p as u64) as u32);
            code /= p as u64;
        }
        v.push(1);
        v
    })
}

fn least_irreducible(p: u32, degree: usize) -> Vec<u32> {
    if degree == 1 {
        return vec![0, 1];
    }
    monic_polys(p, degree)
        .find(|cand| {
            (1..=degree / 2).all(|d| monic_polys(p, d).all(|fac| !poly_rem_is_zero(cand, &fac, p)))
        })
        .expect("irreducible polynomials exist in every degree")
}

impl GaloisField {
    /// `F_{p^degree}` in the polynomial basis of the least monic irreducible.
    pub fn new(p: u32, degree: u32) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if degree == 0 {
            return Err(Error::OutOfRange("field degree must be at least 1".into()));
        }
        let order = (p as u64)
            .checked_pow(degree)
            .filter(|&o| o <= MAX_ORDER)
            .ok_or_else(|| Error::FieldTooLarge(format!("{p}^{degree} exceeds {MAX_ORDER}")))?;
        let modulus = least_irreducible(p, degree as usize);
        let m = degree as usize;
        let reduce_by = modulus.clone();
        Self::build(
            p,
            degree,
            order as u32,
            Construction::Polynomial { modulus },
            move |a, b| {
                let (x, y) = (digits(a, p, m), digits(b, p, m));
                undigits(&poly_mul_mod(&x, &y, &reduce_by, p), p)
            },
        )
    }

    /// `base(δ)` with `δ² = d`, `d` the least nonsquare of `base`. Requires odd characteristic.
    pub fn quadratic(base: &GaloisField) -> Result<Self> {
        if base.p == 2 {
            return Err(Error::EvenPrime(2));
        }
        let q = base.order;
        let order = q as u64 * q as u64;
        if order > MAX_ORDER {
            return Err(Error::FieldTooLarge(format!("{q}^2 exceeds {MAX_ORDER}")));
        }
        let delta_sq = (1..q)
            .find(|&x| base.log[x as usize] % 2 == 1)
            .expect("odd order field has nonsquares");
        let construction = Construction::Quadratic {
            base_order: q,
            delta_sq,
        };
        Self::build(base.p, base.degree * 2, order as u32, construction, |x, y| {
            let (a, b) = (x % q, x / q);
            let (c, e) = (y % q, y / q);
            let re = base.add(base.mul(a, c), base.mul(delta_sq, base.mul(b, e)));
            let im = base.add(base.mul(a, e), base.mul(b, c));
            re + im * q
        })
    }

    fn build(
        p: u32,
        degree: u32,
        order: u32,
        construction: Construction,
        slow_mul: impl Fn(Fe, Fe) -> Fe,
    ) -> Result<Self> {
        let group = (order - 1) as u64;
        let factors = prime_factors(group);
        let slow_pow = |x: Fe, mut e: u64| {
            let mut acc = 1;
            let mut base = x;
            while e > 0 {
                if e & 1 == 1 {
                    acc = slow_mul(acc, base);
                }
                base = slow_mul(base, base);
                e >>= 1;
            }
            acc
        };
        let generator = (1..order)
            .find(|&x| factors.iter().all(|&r| slow_pow(x, group / r) != 1))
            .ok_or_else(|| Error::Internal("no primitive element found".into()))?;
        let mut exp = Vec::with_capacity(order as usize - 1);
        let mut log = vec![u32::MAX; order as usize];
        let mut x: Fe = 1;
        for k in 0..order - 1 {
            if log[x as usize] != u32::MAX {
                return Err(Error::Internal("generator has short order".into()));
            }
            exp.push(x);
            log[x as usize] = k;
            x = slow_mul(x, generator);
        }
        let mut field = GaloisField {
            p,
            degree,
            order,
            generator,
            exp,
            log,
            construction,
            add_table: None,
            mul_table: None,
        };
        if order <= DENSE_TABLE_ORDER {
            let n = order as usize;
            let mut add = vec![0u16; n * n];
            let mut mul = vec![0u16; n * n];
            for a in 0..order {
                for b in 0..order {
                    add[a as usize * n + b as usize] = field.add_digits(a, b) as u16;
                    mul[a as usize * n + b as usize] = field.mul_logs(a, b) as u16;
                }
            }
            field.add_table = Some(add);
            field.mul_table = Some(mul);
        }
        Ok(field)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// Degree over the prime field.
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn generator(&self) -> Fe {
        self.generator
    }

    /// Order of the quadratic subfield's base (`q` for `F_{q²}`), if built by [`Self::quadratic`].
    pub fn base_order(&self) -> Option<u32> {
        match self.construction {
            Construction::Quadratic { base_order, .. } => Some(base_order),
            Construction::Polynomial { .. } => None,
        }
    }

    /// Code of `δ` in a quadratic construction.
    pub fn delta(&self) -> Option<Fe> {
        self.base_order()
    }

    /// `δ²`, an element of the base field.
    pub fn delta_sq(&self) -> Option<Fe> {
        match self.construction {
            Construction::Quadratic { delta_sq, .. } => Some(delta_sq),
            Construction::Polynomial { .. } => None,
        }
    }

    fn add_digits(&self, mut a: Fe, mut b: Fe) -> Fe {
        let mut out = 0;
        let mut place = 1;
        while a > 0 || b > 0 {
            let d = (a % self.p + b % self.p) % self.p;
            out += d * place;
            place *= self.p;
            a /= self.p;
            b /= self.p;
        }
        out
    }

    fn mul_logs(&self, a: Fe, b: Fe) -> Fe {
        if a == 0 || b == 0 {
            return 0;
        }
        let k = (self.log[a as usize] as u64 + self.log[b as usize] as u64) % (self.order - 1) as u64;
        self.exp[k as usize]
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        match &self.add_table {
            Some(t) => t[a as usize * self.order as usize + b as usize] as Fe,
            None => self.add_digits(a, b),
        }
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        match &self.mul_table {
            Some(t) => t[a as usize * self.order as usize + b as usize] as Fe,
            None => self.mul_logs(a, b),
        }
    }

    pub fn neg(&self, mut a: Fe) -> Fe {
        let mut out = 0;
        let mut place = 1;
        while a > 0 {
            let d = (self.p - a % self.p) % self.p;
            out += d * place;
            place *= self.p;
            a /= self.p;
        }
        out
    }

    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    pub fn inv(&self, a: Fe) -> Option<Fe> {
        if a == 0 {
            return None;
        }
        let n = self.order - 1;
        Some(self.exp[((n - self.log[a as usize]) % n) as usize])
    }

    pub fn div(&self, a: Fe, b: Fe) -> Option<Fe> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    pub fn pow(&self, a: Fe, e: u64) -> Fe {
        if a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        let n = (self.order - 1) as u64;
        self.exp[((self.log[a as usize] as u64 * (e % n)) % n) as usize]
    }

    /// `g^k` for the fixed generator.
    pub fn exp(&self, k: u64) -> Fe {
        self.exp[(k % (self.order - 1) as u64) as usize]
    }

    /// Discrete log to the fixed generator; `None` for zero.
    pub fn log(&self, a: Fe) -> Option<u32> {
        if a == 0 {
            None
        } else {
            Some(self.log[a as usize])
        }
    }

    /// Embeds an integer into the prime field.
    pub fn from_int(&self, v: i64) -> Fe {
        v.rem_euclid(self.p as i64) as Fe
    }

    pub fn half(&self) -> Fe {
        self.inv(self.from_int(2)).expect("odd characteristic")
    }

    /// The nontrivial automorphism `x ↦ x^q` of a quadratic construction: `a + bδ ↦ a − bδ`.
    pub fn conj(&self, x: Fe) -> Fe {
        match self.construction {
            Construction::Quadratic { base_order, .. } => {
                let (a, b) = (x % base_order, x / base_order);
                a + self.neg(b) * base_order
            }
            Construction::Polynomial { .. } => x,
        }
    }

    /// Absolute trace to `F_p`, returned as an integer in `[0, p)`.
    pub fn trace_to_prime(&self, x: Fe) -> u32 {
        let mut acc = 0;
        let mut y = x;
        for _ in 0..self.degree {
            acc = self.add(acc, y);
            y = self.pow(y, self.p as u64);
        }
        debug_assert!(acc < self.p, "trace must land in the prime field");
        acc
    }

    /// Multiplicative order of a nonzero element, computed by repeated multiplication.
    pub fn element_order(&self, x: Fe) -> Option<u64> {
        if x == 0 {
            return None;
        }
        let mut y = x;
        let mut k = 1u64;
        while y != 1 {
            y = self.mul(y, x);
            k += 1;
        }
        Some(k)
    }

    pub fn is_square(&self, x: Fe) -> bool {
        x == 0 || self.log[x as usize].is_multiple_of(2)
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        0..self.order
    }
}

fn digits(mut x: u32, p: u32, m: usize) -> Vec<u32> {
    let mut v = Vec::with_capacity(m);
    for _ in 0..m {
        v.push(x % p);
        x /= p;
    }
    v
}

fn undigits(v: &[u32], p: u32) -> u32 {
    v.iter().rev().fold(0, |acc, &d| acc * p + d)
}
