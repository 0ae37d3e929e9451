//! The ring `F[x_1..x_n]/(x_i^2 = x_i)`: Boolean functions, multilinear polynomials,
//! the `y`-coordinate change and the named members of `<chi_q>` and `<not chi_q>`.
//!
//! Variables are 0-based internally: bit `i` of a monomial mask or of a point index is
//! `x_{i+1}`. Displayed polynomials use 1-based names.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::gf::{self, ExtElem, ExtField, Field, PrimeField};

/// Largest supported arity.
pub const MAX_VARS: usize = 24;

/// A total map `{0,1}^n -> {0,1}` stored as a packed truth table.
///
/// Entry `x` (bit `i` of `x` is `x_{i+1}`) holds `f(x)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BooleanFunction {
    n: usize,
    words: Vec<u64>,
}

impl BooleanFunction {
    pub fn from_fn(n: usize, mut f: impl FnMut(u32) -> bool) -> Result<Self> {
        check_arity(n)?;
        let len = 1usize << n;
        let mut words = vec![0u64; len.div_ceil(64)];
        for x in 0..len {
            if f(x as u32) {
                words[x / 64] |= 1 << (x % 64);
            }
        }
        Ok(Self { n, words })
    }

    pub fn from_bits(n: usize, bits: &[bool]) -> Result<Self> {
        check_arity(n)?;
        if bits.len() != 1 << n {
            return Err(Error::BadShape(format!(
                "truth table of length {} for n = {n}",
                bits.len()
            )));
        }
        Self::from_fn(n, |x| bits[x as usize])
    }

    pub fn constant(n: usize, value: bool) -> Result<Self> {
        Self::from_fn(n, |_| value)
    }

    /// Low `2^n` bits of `table` (for `n <= 6`).
    pub fn from_u64(n: usize, table: u64) -> Result<Self> {
        if n > 6 {
            return Err(Error::BadShape("from_u64 needs n <= 6".into()));
        }
        Self::from_fn(n, |x| (table >> x) & 1 == 1)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        1 << self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn get(&self, x: u32) -> bool {
        let x = x as usize;
        (self.words[x / 64] >> (x % 64)) & 1 == 1
    }

    pub fn set(&mut self, x: u32, value: bool) {
        let x = x as usize;
        if value {
            self.words[x / 64] |= 1 << (x % 64);
        } else {
            self.words[x / 64] &= !(1 << (x % 64));
        }
    }

    pub fn eval(&self, point: &[bool]) -> Result<bool> {
        if point.len() != self.n {
            return Err(Error::ArityMismatch {
                expected: self.n,
                got: point.len(),
            });
        }
        Ok(self.get(point_index(point)))
    }

    pub fn zero_set(&self) -> Vec<u32> {
        (0..self.len() as u32).filter(|&x| !self.get(x)).collect()
    }

    pub fn one_set(&self) -> Vec<u32> {
        (0..self.len() as u32).filter(|&x| self.get(x)).collect()
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_constant(&self) -> bool {
        let ones = self.count_ones();
        ones == 0 || ones == self.len()
    }

    pub fn complement(&self) -> Self {
        Self::from_fn(self.n, |x| !self.get(x)).expect("arity already checked")
    }

    pub fn is_symmetric(&self) -> bool {
        let mut by_weight: Vec<Option<bool>> = vec![None; self.n + 1];
        (0..self.len() as u32).all(|x| {
            let w = x.count_ones() as usize;
            let v = self.get(x);
            *by_weight[w].get_or_insert(v) == v
        })
    }

    /// Restriction to the unassigned variables, which are renumbered in increasing order.
    pub fn restrict(&self, assignment: &[(usize, bool)]) -> Result<Self> {
        let (fixed_mask, fixed_bits) = assignment_masks(self.n, assignment)?;
        let free: Vec<usize> = (0..self.n).filter(|i| fixed_mask >> i & 1 == 0).collect();
        Self::from_fn(free.len(), |y| {
            let mut x = fixed_bits;
            for (j, &i) in free.iter().enumerate() {
                if y >> j & 1 == 1 {
                    x |= 1 << i;
                }
            }
            self.get(x)
        })
    }

    /// The 0/1 indicator as a ring element.
    pub fn indicator_poly<F: Field>(&self, field: &F) -> MultilinearPoly<F> {
        let values: Vec<F::Elem> = (0..self.len() as u32)
            .map(|x| {
                if self.get(x) {
                    field.one()
                } else {
                    field.zero()
                }
            })
            .collect();
        MultilinearPoly::from_values(self.n, field, &values).expect("arity already checked")
    }

    /// Parses the truth-table text format: a line `n p`, then `2^n` characters in `{0,1}`.
    pub fn parse_table(text: &str) -> Result<(Self, u64)> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty truth-table file".into()))?;
        let mut it = header.split_whitespace();
        let mut field = |name: &str| -> Result<u64> {
            it.next()
                .ok_or_else(|| Error::Parse(format!("header is missing {name}")))?
                .parse()
                .map_err(|e| Error::Parse(format!("bad {name}: {e}")))
        };
        let n = field("n")? as usize;
        let p = field("p")?;
        let body = lines
            .next()
            .ok_or_else(|| Error::Parse("missing truth-table line".into()))?;
        let bits = body
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Parse(format!("unexpected character {other:?}"))),
            })
            .collect::<Result<Vec<bool>>>()?;
        Ok((Self::from_bits(n, &bits)?, p))
    }

    pub fn to_table_text(&self, p: u64) -> String {
        let body: String = (0..self.len() as u32)
            .map(|x| if self.get(x) { '1' } else { '0' })
            .collect();
        format!("{} {p}\n{body}\n", self.n)
    }
}

fn check_arity(n: usize) -> Result<()> {
    if n > MAX_VARS {
        return Err(Error::TooLarge(format!("{n} variables > {MAX_VARS}")));
    }
    Ok(())
}

fn point_index(point: &[bool]) -> u32 {
    point
        .iter()
        .enumerate()
        .fold(0u32, |acc, (i, &b)| acc | ((b as u32) << i))
}

fn assignment_masks(n: usize, assignment: &[(usize, bool)]) -> Result<(u32, u32)> {
    let mut mask = 0u32;
    let mut bits = 0u32;
    for &(i, v) in assignment {
        if i >= n {
            return Err(Error::ArityMismatch {
                expected: n,
                got: i + 1,
            });
        }
        mask |= 1 << i;
        if v {
            bits |= 1 << i;
        }
    }
    Ok((mask, bits))
}

/// `chi_q`: 1 exactly when `q` divides the Hamming weight.
pub fn mod_indicator(n: usize, q: u32) -> Result<BooleanFunction> {
    if q < 2 {
        return Err(Error::BadRange(format!("modulus q = {q} < 2")));
    }
    BooleanFunction::from_fn(n, |x| x.count_ones() % q == 0)
}

/// Compares monomial masks in graded-lex order: by degree, then by the sorted list
/// of variable indices.
pub fn graded_lex_cmp(a: u32, b: u32) -> Ordering {
    a.count_ones().cmp(&b.count_ones()).then_with(|| {
        if a == b {
            return Ordering::Equal;
        }
        // the smallest variable in exactly one of the two sets decides
        let lowest = (a ^ b).trailing_zeros();
        if a >> lowest & 1 == 1 {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    })
}

/// All monomials of exactly degree `d` on `n` variables, in lex order.
pub fn monomials_of_degree(n: usize, d: usize) -> Vec<u32> {
    let mut out = Vec::new();
    if d > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..d).collect();
    loop {
        out.push(idx.iter().fold(0u32, |m, &i| m | 1 << i));
        // next combination
        let mut j = d;
        loop {
            if j == 0 {
                return out;
            }
            j -= 1;
            if idx[j] < n - d + j {
                idx[j] += 1;
                for k in j + 1..d {
                    idx[k] = idx[k - 1] + 1;
                }
                break;
            }
        }
    }
}

/// All monomials of degree at most `d`, graded-lex ascending.
pub fn graded_monomials(n: usize, d: usize) -> Vec<u32> {
    (0..=d.min(n))
        .flat_map(|k| monomials_of_degree(n, k))
        .collect()
}

/// `C(n, <= m)`, the number of multilinear monomials of degree at most `m`.
pub fn binomial_sum(n: usize, m: usize) -> u64 {
    let mut c = 1u64;
    let mut total = 0u64;
    for k in 0..=m.min(n) {
        total += c;
        c = c * (n - k) as u64 / (k as u64 + 1);
    }
    total
}

/// A multilinear polynomial: monomial mask to nonzero coefficient.
#[derive(Clone, PartialEq, Eq)]
pub struct MultilinearPoly<F: Field> {
    n: usize,
    field: F,
    terms: BTreeMap<u32, F::Elem>,
}

impl<F: Field> MultilinearPoly<F> {
    pub fn zero(n: usize, field: &F) -> Self {
        Self {
            n,
            field: field.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, field: &F, c: F::Elem) -> Self {
        Self::monomial(n, field, 0, c)
    }

    pub fn one(n: usize, field: &F) -> Self {
        Self::constant(n, field, field.one())
    }

    /// `x_{i+1}` for 0-based `i`.
    pub fn var(n: usize, field: &F, i: usize) -> Self {
        assert!(i < n, "variable index out of range");
        Self::monomial(n, field, 1 << i, field.one())
    }

    pub fn monomial(n: usize, field: &F, mask: u32, c: F::Elem) -> Self {
        let mut p = Self::zero(n, field);
        p.add_term(mask, c);
        p
    }

    pub fn from_terms(
        n: usize,
        field: &F,
        terms: impl IntoIterator<Item = (u32, F::Elem)>,
    ) -> Self {
        let mut p = Self::zero(n, field);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Interpolates the unique multilinear polynomial with the given values
    /// (Möbius transform over the subset lattice).
    pub fn from_values(n: usize, field: &F, values: &[F::Elem]) -> Result<Self> {
        check_arity(n)?;
        if values.len() != 1 << n {
            return Err(Error::BadShape("value table length is not 2^n".into()));
        }
        let mut t = values.to_vec();
        for i in 0..n {
            let bit = 1usize << i;
            for m in 0..t.len() {
                if m & bit != 0 {
                    t[m] = field.sub(t[m], t[m ^ bit]);
                }
            }
        }
        Ok(Self::from_terms(
            n,
            field,
            t.into_iter().enumerate().map(|(m, c)| (m as u32, c)),
        ))
    }

    fn add_term(&mut self, mask: u32, c: F::Elem) {
        if self.field.is_zero(c) {
            return;
        }
        let f = &self.field;
        match self.terms.get_mut(&mask) {
            Some(v) => {
                *v = f.add(*v, c);
                if f.is_zero(*v) {
                    self.terms.remove(&mask);
                }
            }
            None => {
                self.terms.insert(mask, c);
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(|m| m.count_ones() as usize).max()
    }

    pub fn coeff(&self, mask: u32) -> F::Elem {
        self.terms.get(&mask).copied().unwrap_or(self.field.zero())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in mask order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, F::Elem)> + '_ {
        self.terms.iter().map(|(&m, &c)| (m, c))
    }

    /// Terms in graded-lex order, ascending.
    pub fn terms_graded(&self) -> Vec<(u32, F::Elem)> {
        let mut t: Vec<_> = self.terms().collect();
        t.sort_by(|a, b| graded_lex_cmp(a.0, b.0));
        t
    }

    /// Graded-lex largest monomial.
    pub fn leading_monomial(&self) -> Option<(u32, F::Elem)> {
        self.terms().max_by(|a, b| graded_lex_cmp(a.0, b.0))
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::ArityMismatch {
                expected: self.n,
                got: other.n,
            });
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m, c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(self.field.neg(self.field.one()))
    }

    pub fn scale(&self, c: F::Elem) -> Self {
        let f = &self.field;
        Self::from_terms(self.n, f, self.terms().map(|(m, v)| (m, f.mul(v, c))))
    }

    /// Product with `x_i^2 = x_i`: masks are united instead of exponents added.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let f = &self.field;
        let mut out = Self::zero(self.n, f);
        for (ma, ca) in self.terms() {
            for (mb, cb) in other.terms() {
                out.add_term(ma | mb, f.mul(ca, cb));
            }
        }
        Ok(out)
    }

    pub fn evaluate(&self, point: &[bool]) -> Result<F::Elem> {
        if point.len() != self.n {
            return Err(Error::ArityMismatch {
                expected: self.n,
                got: point.len(),
            });
        }
        Ok(self.eval_index(point_index(point)))
    }

    /// Value at the point with index `x`.
    pub fn eval_index(&self, x: u32) -> F::Elem {
        let f = &self.field;
        self.terms()
            .filter(|&(m, _)| m & !x == 0)
            .fold(f.zero(), |acc, (_, c)| f.add(acc, c))
    }

    /// Values on all of `{0,1}^n`, by the zeta transform.
    pub fn truth_values(&self) -> Vec<F::Elem> {
        let f = &self.field;
        let mut t = vec![f.zero(); 1 << self.n];
        for (m, c) in self.terms() {
            t[m as usize] = c;
        }
        for i in 0..self.n {
            let bit = 1usize << i;
            for m in 0..t.len() {
                if m & bit != 0 {
                    t[m] = f.add(t[m], t[m ^ bit]);
                }
            }
        }
        t
    }

    /// Substitutes constants for some variables. The arity is kept; assigned
    /// variables simply no longer occur.
    pub fn restrict(&self, assignment: &[(usize, bool)]) -> Result<Self> {
        let (fixed_mask, fixed_bits) = assignment_masks(self.n, assignment)?;
        let mut out = Self::zero(self.n, &self.field);
        for (m, c) in self.terms() {
            // a monomial survives iff every fixed variable in it is set to 1
            if m & fixed_mask & !fixed_bits == 0 {
                out.add_term(m & !fixed_mask, c);
            }
        }
        Ok(out)
    }

    /// Re-expresses the polynomial in `y_i = 1 + (a - 1) x_i`, with `a = omega` or,
    /// when `inverse` is set, `a = omega^{-1}` (the `y'` coordinates).
    pub fn y_transform(&self, omega: F::Elem, inverse: bool) -> Result<Self> {
        let f = &self.field;
        let a = y_base(f, omega, inverse)?;
        let beta = f.inv(f.sub(a, f.one())).expect("a != 1");
        let minus_one = f.neg(f.one());
        let mut out = Self::zero(self.n, f);
        // x^S = beta^|S| * prod_{i in S} (y_i - 1)
        for (s, c) in self.terms() {
            let e = f.mul(c, f.pow(beta, s.count_ones() as u64));
            for t in subsets(s) {
                let sign = f.pow(minus_one, (s ^ t).count_ones() as u64);
                out.add_term(t, f.mul(e, sign));
            }
        }
        Ok(out)
    }

    /// Inverse of [`MultilinearPoly::y_transform`]: reads `self` as a polynomial in the
    /// `y` (or `y'`) coordinates and returns it in the `x` coordinates.
    pub fn from_y_coordinates(&self, omega: F::Elem, inverse: bool) -> Result<Self> {
        let f = &self.field;
        let a = y_base(f, omega, inverse)?;
        let am1 = f.sub(a, f.one());
        let mut out = Self::zero(self.n, f);
        for (t, c) in self.terms() {
            for s in subsets(t) {
                out.add_term(s, f.mul(c, f.pow(am1, s.count_ones() as u64)));
            }
        }
        Ok(out)
    }
}

fn y_base<F: Field>(f: &F, omega: F::Elem, inverse: bool) -> Result<F::Elem> {
    if f.is_zero(omega) || omega == f.one() {
        return Err(Error::NotRootOfUnity);
    }
    Ok(if inverse {
        f.inv(omega).expect("nonzero")
    } else {
        omega
    })
}

/// All submasks of `s`, including `s` and 0.
fn subsets(s: u32) -> impl Iterator<Item = u32> {
    let mut next = Some(s);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 { None } else { Some((cur - 1) & s) };
        Some(cur)
    })
}

impl<F: Field> fmt::Debug for MultilinearPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultilinearPoly(n={}, {})", self.n, self)
    }
}

/// Signed monomial list: highest degree first, lex order within a degree.
impl<F: Field> fmt::Display for MultilinearPoly<F> {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(out, "0");
        }
        let mut terms = self.terms_graded();
        terms.sort_by(|a, b| {
            b.0.count_ones()
                .cmp(&a.0.count_ones())
                .then_with(|| graded_lex_cmp(a.0, b.0))
        });
        let prime_field = self.field.size() == self.field.characteristic() as u64;
        for (k, (mask, c)) in terms.into_iter().enumerate() {
            let code = self.field.encode(c);
            let (negative, magnitude) = if prime_field {
                let p = self.field.characteristic() as u64;
                if code * 2 > p {
                    (true, p - code)
                } else {
                    (false, code)
                }
            } else {
                (false, code)
            };
            let sign = match (k, negative) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            };
            let mono = monomial_name(mask);
            let coeff = match (prime_field, magnitude, mask) {
                (true, 1, m) if m != 0 => String::new(),
                (true, v, _) => v.to_string(),
                (false, 1, m) if m != 0 => String::new(),
                (false, v, _) => format!("[{v}]"),
            };
            write!(out, "{sign}{coeff}{mono}")?;
        }
        Ok(())
    }
}

/// `x1x3` for mask `0b101`; empty for the constant monomial.
pub fn monomial_name(mask: u32) -> String {
    (0..32)
        .filter(|i| mask >> i & 1 == 1)
        .map(|i| format!("x{}", i + 1))
        .collect()
}

/// `g in <f>`: `g` vanishes on every zero of `f`.
pub fn ideal_member<F: Field>(g: &MultilinearPoly<F>, f: &BooleanFunction) -> Result<bool> {
    if g.n() != f.n() {
        return Err(Error::ArityMismatch {
            expected: f.n(),
            got: g.n(),
        });
    }
    if g.is_zero() {
        return Ok(true);
    }
    let field = g.field();
    let values = g.truth_values();
    Ok(values
        .iter()
        .enumerate()
        .all(|(x, &v)| f.get(x as u32) || field.is_zero(v)))
}

/// `prod_{i=1}^{k} (x_{2i-1} - x_{2i})` on `n` variables.
pub fn pair_product<F: Field>(n: usize, field: &F, pairs: usize) -> MultilinearPoly<F> {
    assert!(2 * pairs <= n);
    let mut g = MultilinearPoly::one(n, field);
    for i in 0..pairs {
        let factor = MultilinearPoly::var(n, field, 2 * i)
            .sub(&MultilinearPoly::var(n, field, 2 * i + 1))
            .expect("same ring");
        g = g.multiply(&factor).expect("same ring");
    }
    g
}

/// `prod_{i=1}^{n/2} (x_{2i-1} - x_{2i})` over `F_p`: a member of `<chi_q>` of degree
/// `n/2` whenever `n` is even and `q | n/2`.
pub fn tightness_witness(n: usize, q: u32, p: u64) -> Result<MultilinearPoly<PrimeField>> {
    let field = PrimeField::new(p)?;
    check_arity(n)?;
    if q < 2 || n == 0 || !n.is_multiple_of(2) || !(n / 2).is_multiple_of(q as usize) {
        return Err(Error::BadShape(format!(
            "tightness witness needs n even and q | n/2 (n = {n}, q = {q})"
        )));
    }
    Ok(pair_product(n, &field, n / 2))
}

/// `prod_{i <= ceil(n/2)} y_i - prod_{i > ceil(n/2)} y'_i` in the `x` coordinates, over
/// the smallest extension of `F_p` holding a primitive `q`-th root of unity. It vanishes
/// whenever `q` divides the weight, so it lies in `<not chi_q>`.
pub fn not_mod_upper_witness(n: usize, q: u32, p: u64) -> Result<MultilinearPoly<ExtField>> {
    check_arity(n)?;
    if n < 2 {
        return Err(Error::BadShape(format!(
            "upper witness needs n >= 2, got {n}"
        )));
    }
    let (field, omega) = gf::find_root_of_unity(p, q as u64)?;
    Ok(y_product_difference(n, &field, omega))
}

fn y_product_difference(n: usize, field: &ExtField, omega: ExtElem) -> MultilinearPoly<ExtField> {
    let half = n.div_ceil(2);
    let omega_inv = field.inv(omega).expect("nonzero");
    let y = |i: usize, a: ExtElem| {
        MultilinearPoly::constant(n, field, field.one())
            .add(&MultilinearPoly::monomial(
                n,
                field,
                1 << i,
                field.sub(a, field.one()),
            ))
            .expect("same ring")
    };
    let mut left = MultilinearPoly::one(n, field);
    for i in 0..half {
        left = left.multiply(&y(i, omega)).expect("same ring");
    }
    let mut right = MultilinearPoly::one(n, field);
    for i in half..n {
        right = right.multiply(&y(i, omega_inv)).expect("same ring");
    }
    left.sub(&right).expect("same ring")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_prime_field;

    fn pts(n: usize) -> impl Iterator<Item = Vec<bool>> {
        (0..1u32 << n).map(move |x| (0..n).map(|i| x >> i & 1 == 1).collect())
    }

    #[test]
    fn evaluate_examples() {
        let f2 = make_prime_field(2).unwrap();
        let x1x2 = MultilinearPoly::monomial(2, &f2, 0b11, 1);
        assert_eq!(x1x2.evaluate(&[true, true]).unwrap(), 1);
        let f3 = make_prime_field(3).unwrap();
        let g = MultilinearPoly::var(2, &f3, 0)
            .sub(&MultilinearPoly::var(2, &f3, 1))
            .unwrap();
        assert_eq!(g.evaluate(&[false, true]).unwrap(), 2);
        let z = MultilinearPoly::zero(3, &f3);
        for pt in pts(3) {
            assert_eq!(z.evaluate(&pt).unwrap(), 0);
        }
        assert!(matches!(
            g.evaluate(&[true]),
            Err(Error::ArityMismatch { .. })
        ));
        assert_eq!(z.degree(), None);
    }

    #[test]
    fn multiply_examples() {
        let f2 = make_prime_field(2).unwrap();
        let x1 = MultilinearPoly::var(2, &f2, 0);
        assert_eq!(x1.multiply(&x1).unwrap(), x1);
        let s = x1.add(&MultilinearPoly::var(2, &f2, 1)).unwrap();
        assert_eq!(s.multiply(&s).unwrap(), s);
        let g = MultilinearPoly::monomial(2, &f2, 0b11, 1).add(&x1).unwrap();
        assert_eq!(MultilinearPoly::one(2, &f2).multiply(&g).unwrap(), g);
        let f3 = make_prime_field(3).unwrap();
        assert_eq!(
            x1.multiply(&MultilinearPoly::var(2, &f3, 0)),
            Err(Error::FieldMismatch)
        );
        assert!(matches!(
            x1.multiply(&MultilinearPoly::var(3, &f2, 0)),
            Err(Error::ArityMismatch { .. })
        ));
    }

    fn all_polys(n: usize, f: &PrimeField) -> Vec<MultilinearPoly<PrimeField>> {
        let m = 1usize << n;
        let p = f.p() as usize;
        let total = p.pow(m as u32);
        (0..total)
            .map(|mut code| {
                let mut terms = Vec::new();
                for mask in 0..m {
                    terms.push((mask as u32, (code % p) as u32));
                    code /= p;
                }
                MultilinearPoly::from_terms(n, f, terms)
            })
            .collect()
    }

    #[test]
    fn ring_laws_exhaustive_small() {
        for (n, p) in [(1usize, 2u64), (2, 2), (1, 3), (2, 3)] {
            let f = make_prime_field(p).unwrap();
            let all = all_polys(n, &f);
            let stride = (all.len() / 9).max(1);
            for a in all.iter().step_by(stride) {
                for b in &all {
                    let ab = a.multiply(b).unwrap();
                    assert_eq!(ab, b.multiply(a).unwrap());
                    let pointwise: Vec<u32> = a
                        .truth_values()
                        .iter()
                        .zip(b.truth_values())
                        .map(|(&x, y)| f.mul(x, y))
                        .collect();
                    assert_eq!(ab.truth_values(), pointwise);
                    for c in all.iter().step_by(stride) {
                        assert_eq!(
                            ab.multiply(c).unwrap(),
                            a.multiply(&b.multiply(c).unwrap()).unwrap()
                        );
                        assert_eq!(
                            a.multiply(&b.add(c).unwrap()).unwrap(),
                            ab.add(&a.multiply(c).unwrap()).unwrap()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn ring_laws_n3_f2_sampled() {
        let f = make_prime_field(2).unwrap();
        let all = all_polys(3, &f);
        for a in all.iter().step_by(17) {
            for b in all.iter().step_by(5) {
                for c in all.iter().step_by(31) {
                    let l = a.multiply(&b.add(c).unwrap()).unwrap();
                    let r = a.multiply(b).unwrap().add(&a.multiply(c).unwrap()).unwrap();
                    assert_eq!(l, r);
                    assert_eq!(
                        a.multiply(b).unwrap().multiply(c).unwrap(),
                        a.multiply(&b.multiply(c).unwrap()).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn restrict_examples() {
        let f2 = make_prime_field(2).unwrap();
        let x1x2 = MultilinearPoly::monomial(2, &f2, 0b11, 1);
        assert_eq!(
            x1x2.restrict(&[(0, true)]).unwrap(),
            MultilinearPoly::var(2, &f2, 1)
        );
        assert!(x1x2.restrict(&[(0, false)]).unwrap().is_zero());
        let f5 = make_prime_field(5).unwrap();
        let g = MultilinearPoly::from_terms(3, &f5, [(0b001, 1), (0b010, 4), (0b100, 1)]);
        let want = MultilinearPoly::from_terms(3, &f5, [(0b001, 1), (0b100, 1), (0, 4)]);
        assert_eq!(g.restrict(&[(1, true)]).unwrap(), want);
        assert!(g.restrict(&[(3, true)]).is_err());
    }

    #[test]
    fn restrict_commutes_with_evaluation() {
        let f3 = make_prime_field(3).unwrap();
        for code in (0..3u32.pow(8)).step_by(37) {
            let mut c = code;
            let g = MultilinearPoly::from_terms(
                3,
                &f3,
                (0..8u32).map(|m| {
                    let v = c % 3;
                    c /= 3;
                    (m, v)
                }),
            );
            for pt in pts(3) {
                let rho = [(0usize, pt[0]), (2, pt[2])];
                let r = g.restrict(&rho).unwrap();
                assert_eq!(r.evaluate(&pt).unwrap(), g.evaluate(&pt).unwrap());
            }
        }
    }

    #[test]
    fn interpolation_round_trip() {
        let f5 = make_prime_field(5).unwrap();
        let values: Vec<u32> = (0..16).map(|i| (i * 7 + 3) % 5).collect();
        let g = MultilinearPoly::from_values(4, &f5, &values).unwrap();
        assert_eq!(g.truth_values(), values);
        for x in 0..16u32 {
            assert_eq!(g.eval_index(x), values[x as usize]);
        }
    }

    #[test]
    fn mod_indicator_examples() {
        let f = mod_indicator(3, 2).unwrap();
        let bits: Vec<bool> = (0..8).map(|x| f.get(x)).collect();
        assert_eq!(bits, [true, false, false, true, false, true, true, false]);
        let f = mod_indicator(4, 5).unwrap();
        assert_eq!(f.one_set(), vec![0]);
        let f = mod_indicator(6, 3).unwrap();
        assert!(f
            .one_set()
            .iter()
            .all(|x| [0, 3, 6].contains(&x.count_ones())));
        assert_eq!(f.count_ones(), 1 + 20 + 1);
        assert!(mod_indicator(3, 1).is_err());
    }

    #[test]
    fn truth_table_text_round_trip() {
        let f = mod_indicator(3, 2).unwrap();
        let text = f.to_table_text(3);
        assert_eq!(text, "3 3\n10010110\n");
        assert_eq!(BooleanFunction::parse_table(&text).unwrap(), (f, 3));
        assert!(BooleanFunction::parse_table("2 2\n101\n").is_err());
        assert!(BooleanFunction::parse_table("2 2\n10a1\n").is_err());
        assert!(BooleanFunction::parse_table("2\n1011\n").is_err());
    }

    #[test]
    fn y_transform_of_x1() {
        let (f, w) = gf::find_root_of_unity(2, 3).unwrap();
        let x1 = MultilinearPoly::var(2, &f, 0);
        let y = x1.y_transform(w, false).unwrap();
        let beta = f.inv(f.sub(w, f.one())).unwrap();
        let want = MultilinearPoly::from_terms(2, &f, [(0b01, beta), (0, f.neg(beta))]);
        assert_eq!(y, want);
        assert_eq!(y.degree(), Some(1));
        assert_eq!(y.from_y_coordinates(w, false).unwrap(), x1);
        let c = MultilinearPoly::constant(2, &f, w);
        assert_eq!(c.y_transform(w, true).unwrap(), c);
        assert_eq!(x1.y_transform(f.one(), false), Err(Error::NotRootOfUnity));
    }

    #[test]
    fn y_transform_preserves_degree() {
        for (p, q) in [(2u64, 3u64), (3, 2), (5, 3), (2, 5)] {
            let (f, w) = gf::find_root_of_unity(p, q).unwrap();
            let size = f.size();
            for seed in 0..40u64 {
                let n = 1 + (seed % 4) as usize;
                let g = MultilinearPoly::from_terms(
                    n,
                    &f,
                    (0..1u32 << n).map(|m| {
                        let h = (seed * 2654435761 + m as u64 * 40503) % 7;
                        (m, f.decode(if h < 3 { 0 } else { h % size }).unwrap())
                    }),
                );
                for inv in [false, true] {
                    let y = g.y_transform(w, inv).unwrap();
                    assert_eq!(y.degree(), g.degree());
                    assert_eq!(y.from_y_coordinates(w, inv).unwrap(), g);
                }
            }
        }
    }

    #[test]
    fn y_products_complement() {
        // prod_{S} y_i * prod_all y'_i = prod_{complement S} y'_i
        let (f, w) = gf::find_root_of_unity(2, 3).unwrap();
        let n = 3;
        let winv = f.inv(w).unwrap();
        let y = |i: usize, a| {
            MultilinearPoly::one(n, &f)
                .add(&MultilinearPoly::monomial(n, &f, 1 << i, f.sub(a, f.one())))
                .unwrap()
        };
        let prod = |mask: u32, a| {
            (0..n)
                .filter(|i| mask >> i & 1 == 1)
                .fold(MultilinearPoly::one(n, &f), |acc, i| {
                    acc.multiply(&y(i, a)).unwrap()
                })
        };
        let all_prime = prod(0b111, winv);
        for s in 0..8u32 {
            let lhs = prod(s, w).multiply(&all_prime).unwrap();
            assert_eq!(lhs, prod(!s & 0b111, winv));
            // in y coordinates a y-monomial is a single term
            assert_eq!(prod(s, w).y_transform(w, false).unwrap().num_terms(), 1);
        }
    }

    #[test]
    fn ideal_member_examples() {
        let f2 = make_prime_field(2).unwrap();
        let chi2 = mod_indicator(2, 2).unwrap();
        let g = MultilinearPoly::var(2, &f2, 0)
            .add(&MultilinearPoly::var(2, &f2, 1))
            .unwrap();
        assert!(!ideal_member(&g, &chi2).unwrap());
        assert!(ideal_member(&MultilinearPoly::zero(2, &f2), &chi2).unwrap());
        let chi3 = mod_indicator(6, 3).unwrap();
        assert!(ideal_member(&pair_product(6, &f2, 3), &chi3).unwrap());
        assert!(ideal_member(&g, &mod_indicator(3, 2).unwrap()).is_err());
    }

    #[test]
    fn ideal_member_matches_product_with_indicator() {
        let f3 = make_prime_field(3).unwrap();
        for table in (0..256u64).step_by(7) {
            let f = BooleanFunction::from_u64(3, table).unwrap();
            let ind = f.indicator_poly(&f3);
            for code in (0..3u32.pow(8)).step_by(113) {
                let mut c = code;
                let g = MultilinearPoly::from_terms(
                    3,
                    &f3,
                    (0..8u32).map(|m| {
                        let v = c % 3;
                        c /= 3;
                        (m, v)
                    }),
                );
                let fixed = g.multiply(&ind).unwrap() == g;
                assert_eq!(ideal_member(&g, &f).unwrap(), fixed);
            }
        }
    }

    #[test]
    fn tightness_witness_examples() {
        let g = tightness_witness(6, 3, 2).unwrap();
        assert_eq!(g.degree(), Some(3));
        assert!(ideal_member(&g, &mod_indicator(6, 3).unwrap()).unwrap());
        let g = tightness_witness(4, 2, 3).unwrap();
        assert_eq!(g.degree(), Some(2));
        assert_eq!(g.to_string(), "x1x3 - x1x4 - x2x3 + x2x4");
        assert!(ideal_member(&g, &mod_indicator(4, 2).unwrap()).unwrap());
        assert!(matches!(
            tightness_witness(5, 3, 2),
            Err(Error::BadShape(_))
        ));
        assert!(matches!(
            tightness_witness(6, 2, 2),
            Err(Error::BadShape(_))
        ));
    }

    #[test]
    fn tightness_witness_family() {
        for q in 2..=4u32 {
            for p in [2u64, 3, 5] {
                let n = 2 * q as usize;
                let g = tightness_witness(n, q, p).unwrap();
                assert_eq!(g.degree(), Some(n / 2));
                assert!(ideal_member(&g, &mod_indicator(n, q).unwrap()).unwrap());
            }
        }
    }

    fn vanishes_on_multiples(g: &MultilinearPoly<ExtField>, q: u32) -> bool {
        let f = g.field().clone();
        g.truth_values()
            .iter()
            .enumerate()
            .all(|(x, &v)| !(x as u32).count_ones().is_multiple_of(q) || f.is_zero(v))
    }

    #[test]
    fn upper_witness_examples() {
        let g = not_mod_upper_witness(4, 3, 2).unwrap();
        assert_eq!(g.field().size(), 4);
        assert_eq!(g.degree(), Some(2));
        assert!(vanishes_on_multiples(&g, 3));

        let g = not_mod_upper_witness(2, 2, 3).unwrap();
        assert_eq!(g.degree(), Some(1));
        assert!(vanishes_on_multiples(&g, 2));

        let g = not_mod_upper_witness(3, 6, 5).unwrap();
        assert_eq!(g.degree(), Some(2));
        assert!(vanishes_on_multiples(&g, 6));

        assert!(matches!(
            not_mod_upper_witness(4, 3, 3),
            Err(Error::NotCoprime { .. })
        ));
    }

    #[test]
    fn graded_monomial_order() {
        assert_eq!(graded_monomials(3, 2), vec![0, 1, 2, 4, 3, 5, 6]);
        assert_eq!(binomial_sum(6, 2), 22);
        assert_eq!(binomial_sum(4, 9), 16);
        let all = graded_monomials(5, 5);
        assert_eq!(all.len(), 32);
        for w in all.windows(2) {
            assert_eq!(graded_lex_cmp(w[0], w[1]), Ordering::Less);
        }
    }

    #[test]
    fn boolean_restrict_and_symmetry() {
        let chi = mod_indicator(4, 3).unwrap();
        assert!(chi.is_symmetric());
        let r = chi.restrict(&[(0, true), (1, false)]).unwrap();
        assert_eq!(r.n(), 2);
        // weight 1 + |y|: 1 only at |y| = 2
        assert_eq!(r.one_set(), vec![3]);
        let and = BooleanFunction::from_u64(2, 0b1000).unwrap();
        assert!(and.is_symmetric());
        assert!(!BooleanFunction::from_u64(2, 0b0010).unwrap().is_symmetric());
    }
}
