//! Prime fields `F_p`, extension fields `F_{p^k}` in a polynomial basis, and the
//! deterministic searches for irreducible moduli, primitive elements and roots of unity.

use std::fmt::Debug;
use std::hash::Hash;

use crate::error::{Error, Result};

/// Default cap on the extension degree searched by [`find_root_of_unity`].
pub const DEFAULT_EXTENSION_CAP: usize = 16;

/// Largest supported characteristic (exclusive).
pub const MAX_PRIME: u64 = 1 << 16;

const MAX_K: usize = 32;

/// A finite field with `Copy` elements.
///
/// Every element also has an integer code (`encode`/`decode`) in `[0, size)`; for
/// extension fields the code is the base-`p` reading of the coefficient vector,
/// lowest degree first.
pub trait Field: Clone + Debug + PartialEq + Eq + Send + Sync {
    type Elem: Copy + Eq + Ord + Hash + Debug + Send + Sync;

    fn characteristic(&self) -> u32;
    fn size(&self) -> u64;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn neg(&self, a: Self::Elem) -> Self::Elem;
    fn mul(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn inv(&self, a: Self::Elem) -> Option<Self::Elem>;
    /// Image of an integer under `Z -> F_p -> F`.
    #[allow(clippy::wrong_self_convention)]
    fn from_int(&self, v: i64) -> Self::Elem;
    fn encode(&self, a: Self::Elem) -> u64;
    fn decode(&self, code: u64) -> Option<Self::Elem>;

    fn sub(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem {
        self.add(a, self.neg(b))
    }

    fn is_zero(&self, a: Self::Elem) -> bool {
        a == self.zero()
    }

    fn pow(&self, a: Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// All elements in code order.
    fn elements(&self) -> Vec<Self::Elem> {
        (0..self.size()).filter_map(|c| self.decode(c)).collect()
    }
}

/// Trial-division primality test.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors of `n`, ascending.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
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

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// The prime field `F_p`, elements are integers in `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p >= MAX_PRIME {
            return Err(Error::TooLarge(format!("characteristic {p} >= 2^16")));
        }
        Ok(Self { p: p as u32 })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn reduce(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }
}

/// Builds `F_p`, rejecting composite moduli.
pub fn make_prime_field(p: u64) -> Result<PrimeField> {
    PrimeField::new(p)
}

impl Field for PrimeField {
    type Elem = u32;

    fn characteristic(&self) -> u32 {
        self.p
    }
    fn size(&self) -> u64 {
        self.p as u64
    }
    #[inline]
    fn zero(&self) -> u32 {
        0
    }
    #[inline]
    fn one(&self) -> u32 {
        1 % self.p
    }
    #[inline]
    fn add(&self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    #[inline]
    fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }
    #[inline]
    fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }
    fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        // extended Euclid on (a, p)
        let (mut r0, mut r1) = (self.p as i64, a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        Some(self.reduce(t0))
    }
    fn from_int(&self, v: i64) -> u32 {
        self.reduce(v)
    }
    fn encode(&self, a: u32) -> u64 {
        a as u64
    }
    fn decode(&self, code: u64) -> Option<u32> {
        (code < self.p as u64).then_some(code as u32)
    }
}

/// Element of an [`ExtField`]: base-`p` code of its coefficient vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExtElem(pub u64);

/// `F_p[z] / (modulus)` with `modulus` monic irreducible of degree `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtField {
    p: u32,
    k: usize,
    /// Coefficients lowest degree first, length `k + 1`, last entry 1.
    modulus: Vec<u32>,
    size: u64,
    /// `modulus` without the leading term, as a bit mask (only meaningful for `p == 2`).
    low_mask: u64,
}

impl ExtField {
    /// Checks that `modulus` is monic and irreducible over `F_p`.
    pub fn new(p: u64, modulus: Vec<u32>) -> Result<Self> {
        let base = PrimeField::new(p)?;
        let p = base.p;
        if modulus.len() < 2 || *modulus.last().unwrap() != 1 {
            return Err(Error::BadShape(
                "modulus must be monic of degree >= 1".into(),
            ));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::BadShape("modulus coefficient not reduced".into()));
        }
        let k = modulus.len() - 1;
        if k > MAX_K {
            return Err(Error::TooLarge(format!("extension degree {k}")));
        }
        let size = (p as u64)
            .checked_pow(k as u32)
            .filter(|&s| s < (1u64 << 62))
            .ok_or_else(|| Error::TooLarge(format!("field of size {p}^{k}")))?;
        if !is_irreducible(&modulus, p) {
            return Err(Error::BadShape("modulus is reducible".into()));
        }
        let low_mask = if p == 2 {
            modulus[..k]
                .iter()
                .enumerate()
                .fold(0u64, |m, (i, &c)| m | ((c as u64) << i))
        } else {
            0
        };
        Ok(Self {
            p,
            k,
            modulus,
            size,
            low_mask,
        })
    }

    /// The graded-lex first monic irreducible polynomial of degree `k` over `F_p`.
    pub fn first_irreducible(p: u64, k: usize) -> Result<Self> {
        let base = PrimeField::new(p)?;
        if k == 0 || k > MAX_K {
            return Err(Error::BadRange(format!("extension degree {k}")));
        }
        let count = (base.p as u64)
            .checked_pow(k as u32)
            .filter(|&s| s < (1u64 << 62))
            .ok_or_else(|| Error::TooLarge(format!("field of size {p}^{k}")))?;
        for code in 0..count {
            let mut m = digits_of(code, base.p, k);
            m.push(1);
            if is_irreducible(&m, base.p) {
                return Self::new(p, m);
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// Coefficients of `a`, lowest degree first, length `k`.
    pub fn coeffs(&self, a: ExtElem) -> Vec<u32> {
        digits_of(a.0, self.p, self.k)
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> ExtElem {
        assert!(coeffs.len() <= self.k);
        ExtElem(code_of(coeffs, self.p))
    }

    /// The class of the polynomial variable `z`.
    pub fn generator_z(&self) -> ExtElem {
        if self.k == 1 {
            // z = -modulus[0]
            ExtElem(((self.p - self.modulus[0]) % self.p) as u64)
        } else {
            ExtElem(self.p as u64)
        }
    }

    fn split(&self, code: u64) -> [u32; MAX_K] {
        let mut out = [0u32; MAX_K];
        let mut c = code;
        for d in out.iter_mut().take(self.k) {
            *d = (c % self.p as u64) as u32;
            c /= self.p as u64;
        }
        out
    }

    fn join(&self, d: &[u32]) -> u64 {
        let mut code = 0u64;
        for &x in d[..self.k].iter().rev() {
            code = code * self.p as u64 + x as u64;
        }
        code
    }

    fn mul_binary(&self, a: u64, b: u64) -> u64 {
        // carry-less product, then reduce from the top
        let mut prod: u128 = 0;
        for i in 0..self.k {
            if (b >> i) & 1 == 1 {
                prod ^= (a as u128) << i;
            }
        }
        for i in (self.k..2 * self.k).rev() {
            if (prod >> i) & 1 == 1 {
                prod ^= 1u128 << i;
                prod ^= (self.low_mask as u128) << (i - self.k);
            }
        }
        prod as u64
    }
}

impl Field for ExtField {
    type Elem = ExtElem;

    fn characteristic(&self) -> u32 {
        self.p
    }
    fn size(&self) -> u64 {
        self.size
    }
    fn zero(&self) -> ExtElem {
        ExtElem(0)
    }
    fn one(&self) -> ExtElem {
        ExtElem(1)
    }
    fn add(&self, a: ExtElem, b: ExtElem) -> ExtElem {
        if self.p == 2 {
            return ExtElem(a.0 ^ b.0);
        }
        let (x, y) = (self.split(a.0), self.split(b.0));
        let mut s = [0u32; MAX_K];
        for i in 0..self.k {
            s[i] = (x[i] + y[i]) % self.p;
        }
        ExtElem(self.join(&s))
    }
    fn neg(&self, a: ExtElem) -> ExtElem {
        if self.p == 2 {
            return a;
        }
        let mut x = self.split(a.0);
        for d in x.iter_mut().take(self.k) {
            *d = (self.p - *d) % self.p;
        }
        ExtElem(self.join(&x))
    }
    fn mul(&self, a: ExtElem, b: ExtElem) -> ExtElem {
        if self.p == 2 {
            return ExtElem(self.mul_binary(a.0, b.0));
        }
        let p = self.p as u64;
        let (x, y) = (self.split(a.0), self.split(b.0));
        let mut prod = [0u64; 2 * MAX_K];
        for i in 0..self.k {
            if x[i] == 0 {
                continue;
            }
            for j in 0..self.k {
                prod[i + j] = (prod[i + j] + x[i] as u64 * y[j] as u64) % p;
            }
        }
        for i in (self.k..2 * self.k - 1).rev() {
            let c = prod[i] % p;
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            for j in 0..self.k {
                let t = &mut prod[i - self.k + j];
                *t = (*t + (p - c) * self.modulus[j] as u64) % p;
            }
        }
        let mut out = [0u32; MAX_K];
        for i in 0..self.k {
            out[i] = prod[i] as u32;
        }
        ExtElem(self.join(&out))
    }
    fn inv(&self, a: ExtElem) -> Option<ExtElem> {
        if a.0 == 0 {
            None
        } else {
            Some(self.pow(a, self.size - 2))
        }
    }
    fn from_int(&self, v: i64) -> ExtElem {
        ExtElem(v.rem_euclid(self.p as i64) as u64)
    }
    fn encode(&self, a: ExtElem) -> u64 {
        a.0
    }
    fn decode(&self, code: u64) -> Option<ExtElem> {
        (code < self.size).then_some(ExtElem(code))
    }
}

fn digits_of(mut code: u64, p: u32, k: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(k + 1);
    for _ in 0..k {
        out.push((code % p as u64) as u32);
        code /= p as u64;
    }
    out
}

fn code_of(coeffs: &[u32], p: u32) -> u64 {
    coeffs
        .iter()
        .rev()
        .fold(0u64, |acc, &c| acc * p as u64 + c as u64)
}

/// Remainder of `a` modulo the monic polynomial `b` over `F_p` (coefficients low to high).
fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u64> = a.iter().map(|&c| c as u64).collect();
    let db = b.len() - 1;
    let p64 = p as u64;
    if r.len() > db {
        for i in (db..r.len()).rev() {
            let c = r[i] % p64;
            if c == 0 {
                continue;
            }
            for j in 0..=db {
                let t = &mut r[i - db + j];
                *t = (*t + (p64 - c) * b[j] as u64) % p64;
            }
        }
    }
    r.truncate(db);
    r.into_iter().map(|c| (c % p64) as u32).collect()
}

/// Irreducibility by trial division against every monic polynomial of degree
/// at most `deg / 2`.
pub fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let k = poly.len() - 1;
    if k == 0 {
        return false;
    }
    if k == 1 {
        return true;
    }
    // roots first: cheap and rejects most candidates
    for a in 0..p as u64 {
        let v = poly
            .iter()
            .rev()
            .fold(0u64, |acc, &c| (acc * a + c as u64) % p as u64);
        if v == 0 {
            return false;
        }
    }
    for d in 2..=k / 2 {
        let count = (p as u64).pow(d as u32);
        for code in 0..count {
            let mut divisor = digits_of(code, p, d);
            divisor.push(1);
            if poly_rem(poly, &divisor, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// Multiplicative order of a nonzero element of any finite field.
pub fn element_order<F: Field>(field: &F, a: F::Elem) -> Result<u64> {
    if field.is_zero(a) {
        return Err(Error::ZeroElement);
    }
    let group = field.size() - 1;
    let mut t = group;
    for r in prime_factors(group) {
        while t.is_multiple_of(r) && field.pow(a, t / r) == field.one() {
            t /= r;
        }
    }
    Ok(t)
}

/// Lexicographically (code-order) first element of multiplicative order `|F| - 1`.
pub fn first_primitive_element<F: Field>(field: &F) -> F::Elem {
    let group = field.size() - 1;
    let factors = prime_factors(group);
    (1..field.size())
        .filter_map(|c| field.decode(c))
        .find(|&g| {
            factors
                .iter()
                .all(|&r| field.pow(g, group / r) != field.one())
        })
        .expect("a finite field has a primitive element")
}

/// Smallest `k >= 1` with `q | p^k - 1`, searched up to `cap`.
pub fn multiplicative_order_mod(p: u64, q: u64, cap: usize) -> Result<usize> {
    if gcd(p, q) != 1 {
        return Err(Error::NotCoprime { p, q });
    }
    let mut acc = 1u64 % q;
    for k in 1..=cap {
        acc = (acc as u128 * p as u128 % q as u128) as u64;
        if acc == 1 % q {
            return Ok(k);
        }
    }
    Err(Error::SearchLimit { cap })
}

/// A primitive `q`-th root of unity in the smallest extension of `F_p` that has one.
pub fn find_root_of_unity(p: u64, q: u64) -> Result<(ExtField, ExtElem)> {
    find_root_of_unity_capped(p, q, DEFAULT_EXTENSION_CAP)
}

pub fn find_root_of_unity_capped(p: u64, q: u64, cap: usize) -> Result<(ExtField, ExtElem)> {
    PrimeField::new(p)?;
    if q < 2 {
        return Err(Error::BadRange(format!("root-of-unity order {q} < 2")));
    }
    let k = multiplicative_order_mod(p, q, cap)?;
    let field = ExtField::first_irreducible(p, k)?;
    let g = first_primitive_element(&field);
    let omega = field.pow(g, (field.size() - 1) / q);
    debug_assert_eq!(element_order(&field, omega), Ok(q));
    Ok((field, omega))
}
