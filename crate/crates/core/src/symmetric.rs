//! Symmetric functions through their weight profiles: value and coefficient vectors,
//! the `psi_d` binomial rows, the weight-level immunity computation and the degree
//! bounds for symmetric members of `<chi_q>`.

use crate::error::{Error, Result};
use crate::gf::{Field, PrimeField};
use crate::immunity::{ImmunityReport, Method};
use crate::linalg::{ColumnSpace, Insertion};
use crate::ring::{self, monomials_of_degree, BooleanFunction, MultilinearPoly};

/// Largest arity for which [`symmetric_immunity`] builds and checks a witness.
pub const MAX_WITNESS_VARS: usize = 20;

/// Largest arity accepted by the weight-level computations.
pub const MAX_SYMMETRIC_VARS: usize = 4096;

/// A symmetric function on `n` variables, stored as its value at each weight
/// `0..=n` together with its coefficients in the elementary symmetric basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetricFn {
    field: PrimeField,
    values: Vec<u32>,
    coeffs: Vec<u32>,
}

impl SymmetricFn {
    /// From the value vector `v(0..=n)`; entries are reduced mod p.
    pub fn from_values(values: &[i64], p: u64) -> Result<Self> {
        let field = PrimeField::new(p)?;
        if values.is_empty() {
            return Err(Error::BadShape(
                "value vector needs at least one entry".into(),
            ));
        }
        if values.len() > MAX_SYMMETRIC_VARS + 1 {
            return Err(Error::TooLarge(format!("{} weights", values.len())));
        }
        let values: Vec<u32> = values.iter().map(|&v| field.reduce(v)).collect();
        let coeffs = coeffs_from_values(&values, p)?;
        Ok(Self {
            field,
            values,
            coeffs,
        })
    }

    /// From the coefficients `c(0..=n)` of `sigma_0..sigma_n`.
    pub fn from_coeffs(coeffs: &[i64], p: u64) -> Result<Self> {
        let field = PrimeField::new(p)?;
        if coeffs.is_empty() {
            return Err(Error::BadShape(
                "coefficient vector needs at least one entry".into(),
            ));
        }
        let coeffs: Vec<u32> = coeffs.iter().map(|&v| field.reduce(v)).collect();
        let values = values_from_coeffs(&coeffs, p)?;
        Ok(Self {
            field,
            values,
            coeffs,
        })
    }

    /// The weight profile of a symmetric Boolean function.
    pub fn from_boolean(f: &BooleanFunction, p: u64) -> Result<Self> {
        if !f.is_symmetric() {
            return Err(Error::BadShape("function is not symmetric".into()));
        }
        let values: Vec<i64> = (0..=f.n()).map(|w| f.get((1u32 << w) - 1) as i64).collect();
        Self::from_values(&values, p)
    }

    /// Parses a comma-separated value vector such as `1,0,0,1`.
    pub fn parse(list: &str, p: u64) -> Result<Self> {
        let values = list
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::Parse(format!("bad value {s:?} in symmetric list")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_values(&values, p)
    }

    /// `v(w) = [q | w]` on `n` variables.
    pub fn mod_indicator(n: usize, q: usize, p: u64) -> Result<Self> {
        if q == 0 {
            return Err(Error::BadRange("q must be positive".into()));
        }
        let values: Vec<i64> = (0..=n).map(|w| (w % q == 0) as i64).collect();
        Self::from_values(&values, p)
    }

    /// Boolean complement of [`Self::to_boolean`]: 1 on the zero weights, 0 elsewhere.
    pub fn complement(&self) -> Self {
        let values: Vec<i64> = self.values.iter().map(|&v| (v == 0) as i64).collect();
        Self::from_values(&values, self.field.p() as u64).expect("field already validated")
    }

    pub fn n(&self) -> usize {
        self.values.len() - 1
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    /// Degree as a ring element: the largest `i` with `c(i) != 0`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|&c| c != 0)
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    /// Weights at which the function vanishes.
    pub fn zero_weights(&self) -> Vec<usize> {
        (0..self.values.len())
            .filter(|&w| self.values[w] == 0)
            .collect()
    }

    /// The Boolean function `x -> [v(|x|) != 0]`; it has the same zero set, hence the
    /// same ideal of vanishing polynomials.
    pub fn to_boolean(&self) -> Result<BooleanFunction> {
        BooleanFunction::from_fn(self.n(), |x| self.values[x.count_ones() as usize] != 0)
    }
}

/// `C(i, 0..d)` reduced mod p.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PsiVector {
    pub d: usize,
    pub entries: Vec<u32>,
}

/// `C(w, k) mod p` as the product of binomials of base-p digits.
pub fn lucas_binomial(w: u64, k: u64, p: u64) -> Result<u32> {
    let field = PrimeField::new(p)?;
    Ok(lucas(w, k, &field))
}

fn lucas(mut w: u64, mut k: u64, field: &PrimeField) -> u32 {
    let p = field.p() as u64;
    let mut acc = 1u32;
    while k > 0 {
        let (a, b) = (w % p, k % p);
        if b > a {
            return 0;
        }
        acc = field.mul(acc, digit_binomial(a as u32, b as u32, field));
        w /= p;
        k /= p;
    }
    acc
}

fn digit_binomial(a: u32, b: u32, field: &PrimeField) -> u32 {
    // a < p, so every factorial below is invertible
    let b = b.min(a - b);
    let mut num = 1u32;
    let mut den = 1u32;
    for i in 0..b {
        num = field.mul(num, a - i);
        den = field.mul(den, i + 1);
    }
    field.mul(num, field.inv(den).expect("den < p! is a unit"))
}

/// `sum_{j <= i} s(i, j) C(i, j) x(j)` for every `i`, with `s(i, j) = +-1` as chosen
/// by `alternate`; walks Pascal's triangle one row at a time.
fn binomial_transform(x: &[u32], field: &PrimeField, alternate: bool) -> Vec<u32> {
    let mut row: Vec<u32> = Vec::with_capacity(x.len());
    let mut out = Vec::with_capacity(x.len());
    for i in 0..x.len() {
        row.push(1);
        for j in (1..i).rev() {
            row[j] = field.add(row[j], row[j - 1]);
        }
        out.push((0..=i).fold(0, |acc, j| {
            let t = field.mul(row[j], x[j]);
            if alternate && (i + j) % 2 == 1 {
                field.sub(acc, t)
            } else {
                field.add(acc, t)
            }
        }));
    }
    out
}

/// `v(i) = sum_{j <= i} C(i, j) c(j) mod p`.
pub fn values_from_coeffs(c: &[u32], p: u64) -> Result<Vec<u32>> {
    let field = PrimeField::new(p)?;
    let c: Vec<u32> = c.iter().map(|&v| field.reduce(v as i64)).collect();
    Ok(binomial_transform(&c, &field, false))
}

/// `c(i) = sum_{j <= i} (-1)^(i+j) C(i, j) v(j) mod p`.
pub fn coeffs_from_values(v: &[u32], p: u64) -> Result<Vec<u32>> {
    let field = PrimeField::new(p)?;
    let v: Vec<u32> = v.iter().map(|&x| field.reduce(x as i64)).collect();
    Ok(binomial_transform(&v, &field, true))
}

/// `psi_d(i) = (C(i,0), ..., C(i,d-1)) mod p`.
pub fn psi(d: usize, i: u64, p: u64) -> Result<PsiVector> {
    let field = PrimeField::new(p)?;
    if d == 0 {
        return Err(Error::BadRange("psi needs d >= 1".into()));
    }
    Ok(PsiVector {
        d,
        entries: (0..d as u64).map(|j| lucas(i, j, &field)).collect(),
    })
}

/// The middle slice `v(l..=n-l)`: `f` with `l` variables fixed to 1 and `l` to 0.
pub fn restrict_sym(f: &SymmetricFn, l: usize) -> Result<SymmetricFn> {
    let n = f.n();
    if 2 * l > n {
        return Err(Error::BadRange(format!(
            "restriction {l} exceeds n/2 for n = {n}"
        )));
    }
    let values = f.values[l..=n - l].to_vec();
    let coeffs = coeffs_from_values(&values, f.field.p() as u64)?;
    Ok(SymmetricFn {
        field: f.field,
        values,
        coeffs,
    })
}

/// Smallest `D` such that some nonzero symmetric polynomial of degree at most `D`
/// vanishes on every zero weight of `f`, with its coefficients on `sigma_0..sigma_D`
/// (`c_D = 1`). `None` when `f` vanishes everywhere.
///
/// Column `j` of the system is `(C(w, j))_w` over the zero weights `w`; the first
/// column depending on earlier ones marks the rank drop of the `psi_{D+1}` rows.
pub fn min_symmetric_annihilator(f: &SymmetricFn) -> Option<(usize, Vec<u32>)> {
    let zeros = f.zero_weights();
    if zeros.len() == f.values.len() {
        return None;
    }
    let field = f.field;
    let mut space = ColumnSpace::new(&field, zeros.len(), true);
    for j in 0..=f.n() {
        if let Insertion::Dependent(Some(comb)) =
            space.insert(|i| lucas(zeros[i] as u64, j as u64, &field))
        {
            return Some((j, comb));
        }
    }
    unreachable!("at most n zero weights, so n+1 columns are dependent")
}

/// Degree part of [`min_symmetric_annihilator`].
pub fn min_symmetric_annihilator_degree(f: &SymmetricFn) -> Option<usize> {
    min_symmetric_annihilator(f).map(|(d, _)| d)
}

/// Immunity of a symmetric function from its weight profile alone.
///
/// Minimizes `l + D(l)` over `l in 0..=n/2`, where `D(l)` is the least symmetric
/// annihilator degree of the slice `v(l..=n-l)`. The witness is
/// `g'(x_{2l+1}, ..., x_n) * prod_{i<=l} (x_{2i-1} - x_{2i})` and is checked against the
/// zero set of `f`; it is built only for `n <= 20` (see [`symmetric_immunity_degree`]).
pub fn symmetric_immunity(f: &SymmetricFn) -> Result<ImmunityReport> {
    let n = f.n();
    if n > MAX_WITNESS_VARS {
        return Err(Error::TooLarge(format!(
            "symmetric witness supports n <= {MAX_WITNESS_VARS}, got {n}"
        )));
    }
    let (l, d, comb) = best_split(f)?;
    let field = f.field;
    let shift = 2 * l;
    let mut inner = MultilinearPoly::zero(n, &field);
    for (j, &c) in comb.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let sigma = MultilinearPoly::from_terms(
            n,
            &field,
            monomials_of_degree(n - shift, j)
                .into_iter()
                .map(|m| (m << shift, c)),
        );
        inner = inner.add(&sigma)?;
    }
    let g = inner.multiply(&ring::pair_product(n, &field, l))?;
    let degree = l + d;
    let checked = crate::immunity::check_witness(&g, &f.to_boolean()?, degree)?;
    if !checked {
        return Err(Error::AssertionFailure {
            theorem: "symmetric witness re-check".into(),
            params: format!("n={n}, p={}, l={l}", field.p()),
        });
    }
    Ok(ImmunityReport {
        degree: Some(degree),
        witness: Some(g),
        method: Method::Symmetric,
        checked,
    })
}

/// Degree returned by [`symmetric_immunity`], without building a witness, for any
/// arity up to [`MAX_SYMMETRIC_VARS`].
pub fn symmetric_immunity_degree(f: &SymmetricFn) -> Result<usize> {
    best_split(f).map(|(l, d, _)| l + d)
}

/// `l + D(l)` for every `l in 0..=n/2` (`None` where the slice vanishes everywhere).
pub fn split_profile(f: &SymmetricFn) -> Vec<Option<usize>> {
    (0..=f.n() / 2)
        .map(|l| {
            let r = restrict_sym(f, l).expect("l <= n/2");
            min_symmetric_annihilator_degree(&r).map(|d| l + d)
        })
        .collect()
}

fn best_split(f: &SymmetricFn) -> Result<(usize, usize, Vec<u32>)> {
    if f.is_zero() {
        return Err(Error::ZeroFunction);
    }
    let mut best: Option<(usize, usize, Vec<u32>)> = None;
    for l in 0..=f.n() / 2 {
        if best.as_ref().is_some_and(|(bl, bd, _)| l >= bl + bd) {
            break;
        }
        let r = restrict_sym(f, l)?;
        if let Some((d, comb)) = min_symmetric_annihilator(&r) {
            if best.as_ref().is_none_or(|(bl, bd, _)| l + d < bl + bd) {
                best = Some((l, d, comb));
            }
        }
    }
    Ok(best.expect("l = 0 slice is f itself, which is nonzero"))
}

/// Which side of the duality [`reflex_dual_exists`] tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// A nonzero symmetric function of degree `< d` whose value support lies in `S`.
    ValueSupport,
    /// A nonzero symmetric function with coefficient support in `S` vanishing on every
    /// weight `>= d`.
    CoefficientSupport,
}

/// Decides either side of the value/coefficient support duality by a rank test.
pub fn reflex_dual_exists(
    s: &[usize],
    d: usize,
    n: usize,
    p: u64,
    direction: Direction,
) -> Result<bool> {
    let field = PrimeField::new(p)?;
    if let Some(&w) = s.iter().find(|&&w| w > n) {
        return Err(Error::BadRange(format!("weight {w} exceeds n = {n}")));
    }
    let mut support = s.to_vec();
    support.sort_unstable();
    support.dedup();
    Ok(match direction {
        Direction::ValueSupport => {
            let cols = d.min(n + 1);
            let rows: Vec<usize> = (0..=n)
                .filter(|w| support.binary_search(w).is_err())
                .collect();
            cols > 0 && column_rank(&field, &rows, (0..cols).collect()) < cols
        }
        Direction::CoefficientSupport => {
            let rows: Vec<usize> = (d..=n).collect();
            !support.is_empty() && column_rank(&field, &rows, support.clone()) < support.len()
        }
    })
}

fn column_rank(field: &PrimeField, rows: &[usize], cols: Vec<usize>) -> usize {
    let mut space = ColumnSpace::new(field, rows.len(), false);
    for k in cols {
        space.insert(|i| lucas(rows[i] as u64, k as u64, field));
    }
    space.rank()
}

/// Lower and upper bounds on the least degree of a nonzero symmetric member of
/// `<chi_q>`, next to the measured value.
#[derive(Debug, Clone, PartialEq)]
pub struct RestrictionBoundReport {
    pub n: usize,
    pub q: u64,
    pub p: u64,
    /// Largest `l` with `p^l <= q - 1`.
    pub ell: u32,
    /// `n + 1 - p^e` for the largest `p^e <= n + 1`.
    pub n_prime: usize,
    /// `(n - n') (1 - p^-l)`.
    pub lower_bound: f64,
    pub measured: usize,
    /// `n - floor(n/q)`: the number of weights where `chi_q` vanishes.
    pub upper_bound: usize,
}

/// Measures the least degree of a nonzero symmetric member of `<chi_q>` and asserts
/// `measured >= (n - n') (1 - p^-l)` and `measured <= n - floor(n/q)`.
pub fn restriction_bound_check(n: usize, q: u64, p: u64) -> Result<RestrictionBoundReport> {
    let field = PrimeField::new(p)?;
    if q < 2 {
        return Err(Error::BadRange(format!("q must be at least 2, got {q}")));
    }
    if n > MAX_SYMMETRIC_VARS {
        return Err(Error::TooLarge(format!(
            "restriction bound supports n <= {MAX_SYMMETRIC_VARS}, got {n}"
        )));
    }
    let p_ = field.p() as u64;
    let mut ell = 0u32;
    while p_.pow(ell + 1) < q {
        ell += 1;
    }
    let mut top = 1u64;
    while top * p_ <= n as u64 + 1 {
        top *= p_;
    }
    let n_prime = n + 1 - top as usize;
    let pl = p_.pow(ell);
    let chi = SymmetricFn::mod_indicator(n, q as usize, p)?;
    let measured = min_symmetric_annihilator_degree(&chi).expect("chi_q(0) = 1");
    let upper_bound = n - n / q as usize;
    let params = format!("n={n}, q={q}, p={p}");
    // measured >= (n - n')(1 - 1/p^l), in integers
    if (measured as u64) * pl < (n - n_prime) as u64 * (pl - 1) {
        return Err(Error::AssertionFailure {
            theorem: "symmetric restriction lower bound".into(),
            params,
        });
    }
    if measured > upper_bound {
        return Err(Error::AssertionFailure {
            theorem: "symmetric restriction upper bound".into(),
            params,
        });
    }
    Ok(RestrictionBoundReport {
        n,
        q,
        p,
        ell,
        n_prime,
        lower_bound: (n - n_prime) as f64 * (1.0 - 1.0 / pl as f64),
        measured,
        upper_bound,
    })
}
