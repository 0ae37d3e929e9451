//! The `q`-th power residue character of `F_{2^n}`, read as a Boolean function through
//! a basis of `F_{2^n}` over `F_2`, and the immunity bound for its complement.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::gf::{self, ExtElem, ExtField, Field, PrimeField};
use crate::immunity::immunity;
use crate::linalg::Matrix;
use crate::ring::{binomial_sum, BooleanFunction};

/// Largest `n` for which the immunity of the residue character is measured.
pub const MAX_RESIDUE_VARS: usize = 12;

/// Which basis of `F_{2^n}` over `F_2` identifies field elements with bit vectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Basis {
    /// `1, xi, ..., xi^(n-1)`.
    Polynomial,
    /// The polynomial basis transformed by a random invertible matrix drawn from
    /// ChaCha8 seeded with the given value.
    Random(u64),
}

impl Basis {
    /// Parses `poly` or `random:SEED`.
    pub fn parse(text: &str) -> Result<Self> {
        if text == "poly" {
            return Ok(Basis::Polynomial);
        }
        text.strip_prefix("random:")
            .and_then(|s| s.parse().ok())
            .map(Basis::Random)
            .ok_or_else(|| {
                Error::Parse(format!(
                    "basis must be `poly` or `random:SEED`, got {text:?}"
                ))
            })
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Basis::Polynomial => f.write_str("poly"),
            Basis::Random(seed) => write!(f, "random:{seed}"),
        }
    }
}

/// `F_{2^n}` with a primitive element `xi` and the map `phi(x) = sum x_i b_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryFieldMap {
    field: ExtField,
    xi: ExtElem,
    basis: Vec<ExtElem>,
    kind: Basis,
}

/// Builds `F_{2^n}` over the first irreducible modulus of degree `n`, with `xi` the
/// class of `z` when it is primitive and the first primitive element otherwise, and
/// the basis of powers of `xi`.
pub fn build_binary_field(n: usize) -> Result<BinaryFieldMap> {
    if !(2..=16).contains(&n) {
        return Err(Error::TooLarge(format!(
            "binary field needs 2 <= n <= 16, got {n}"
        )));
    }
    let field = ExtField::first_irreducible(2, n)?;
    let z = field.generator_z();
    let xi = if gf::element_order(&field, z)? == field.size() - 1 {
        z
    } else {
        gf::first_primitive_element(&field)
    };
    let basis = (0..n as u64).map(|i| field.pow(xi, i)).collect();
    Ok(BinaryFieldMap {
        field,
        xi,
        basis,
        kind: Basis::Polynomial,
    })
}

impl BinaryFieldMap {
    /// The same field and generator under another basis.
    pub fn with_basis(&self, kind: Basis) -> Self {
        let basis = match kind {
            Basis::Polynomial => {
                let n = self.n() as u64;
                (0..n).map(|i| self.field.pow(self.xi, i)).collect()
            }
            Basis::Random(seed) => {
                let n = self.n();
                let poly: Vec<ExtElem> =
                    (0..n as u64).map(|i| self.field.pow(self.xi, i)).collect();
                let change = random_invertible(n, seed);
                change
                    .iter()
                    .map(|row| {
                        row.iter()
                            .zip(&poly)
                            .filter(|(&bit, _)| bit)
                            .fold(self.field.zero(), |acc, (_, &b)| self.field.add(acc, b))
                    })
                    .collect()
            }
        };
        Self {
            field: self.field.clone(),
            xi: self.xi,
            basis,
            kind,
        }
    }

    pub fn n(&self) -> usize {
        self.field.degree()
    }

    pub fn field(&self) -> &ExtField {
        &self.field
    }

    pub fn xi(&self) -> ExtElem {
        self.xi
    }

    pub fn basis(&self) -> &[ExtElem] {
        &self.basis
    }

    pub fn kind(&self) -> Basis {
        self.kind
    }

    /// `phi(x) = sum_i x_i b_i`, with bit `i` of `x` standing for `x_{i+1}`.
    pub fn phi(&self, x: u32) -> ExtElem {
        self.basis
            .iter()
            .enumerate()
            .filter(|&(i, _)| x >> i & 1 == 1)
            .fold(self.field.zero(), |acc, (_, &b)| self.field.add(acc, b))
    }

    /// Rank over `F_2` of the basis written in coordinates.
    pub fn basis_rank(&self) -> usize {
        let rows: Vec<u64> = self.basis.iter().map(|b| b.0).collect();
        f2_rank(&rows, self.n())
    }
}

fn random_invertible(n: usize, seed: u64) -> Vec<Vec<bool>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let rows: Vec<Vec<bool>> = (0..n)
            .map(|_| (0..n).map(|_| rng.gen()).collect())
            .collect();
        let packed: Vec<u64> = rows
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .fold(0u64, |m, (i, &b)| m | (b as u64) << i)
            })
            .collect();
        if f2_rank(&packed, n) == n {
            return rows;
        }
    }
}

fn f2_rank(rows: &[u64], width: usize) -> usize {
    let f2 = PrimeField::new(2).expect("2 is prime");
    let data = rows
        .iter()
        .flat_map(|r| (0..width).map(move |i| (r >> i & 1) as u32))
        .collect();
    Matrix::new(&f2, rows.len(), width, data)
        .expect("rows x width entries")
        .rank()
}

fn check_divisor(n: usize, q: u64) -> Result<u64> {
    let order = (1u64 << n) - 1;
    if q == 0 || !order.is_multiple_of(q) {
        return Err(Error::NotDivisor { q, modulus: order });
    }
    Ok(order / q)
}

/// `Lambda_q(phi(x))`: 1 exactly when `phi(x)` is a `q`-th power, which includes 0.
pub fn residue_character(map: &BinaryFieldMap, q: u64) -> Result<BooleanFunction> {
    let t = check_divisor(map.n(), q)?;
    let field = &map.field;
    let mut is_power = vec![false; field.size() as usize];
    is_power[0] = true;
    let step = field.pow(map.xi, q);
    let mut r = field.one();
    for _ in 0..t {
        is_power[r.0 as usize] = true;
        r = field.mul(r, step);
    }
    BooleanFunction::from_fn(map.n(), |x| is_power[map.phi(x).0 as usize])
}

/// `max { popcount(i) }` over the exponents of a univariate polynomial: the degree of
/// the multilinear form of `x -> P(phi(x))`. `None` for the zero polynomial.
pub fn univariate_weight_degree(exponents: &[u64]) -> Option<usize> {
    exponents.iter().map(|e| e.count_ones() as usize).max()
}

/// Largest `d` with `q * C(n, <= d) <= 2^n`.
pub fn residue_bound(n: usize, q: u64) -> Option<usize> {
    (0..=n)
        .take_while(|&d| q as u128 * binomial_sum(n, d) as u128 <= 1u128 << n)
        .last()
}

/// Rank over `F_{2^n}` of the matrix with rows `j < (2^n - 1)/q` and columns the
/// exponents `i` of binary weight at most `d`, entry `xi^(j q i)`. Returns the rank and
/// the number of columns.
pub fn vandermonde_rank(map: &BinaryFieldMap, q: u64, d: usize) -> Result<(usize, usize)> {
    let t = check_divisor(map.n(), q)?;
    let field = &map.field;
    let exps: Vec<u64> = (0..1u64 << map.n())
        .filter(|i| i.count_ones() as usize <= d)
        .collect();
    let step = field.pow(map.xi, q);
    let rows: Vec<Vec<ExtElem>> = (0..t)
        .map(|j| {
            let r = field.pow(step, j);
            exps.iter().map(|&i| field.pow(r, i)).collect()
        })
        .collect();
    let m = Matrix::from_rows(field, &rows)?;
    Ok((m.rank(), exps.len()))
}

/// Measured immunity of the complement of the residue character against the bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueReport {
    pub n: usize,
    pub q: u64,
    pub basis: Basis,
    /// Largest `d` with `C(n, <= d) <= 2^n / q`; the immunity should exceed it.
    pub bound_d: usize,
    pub measured_immunity: usize,
    pub pass: bool,
}

impl ResidueReport {
    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "q": self.q,
            "basis": self.basis.to_string(),
            "bound_d": self.bound_d,
            "measured_immunity": self.measured_immunity,
            "pass": self.pass,
        })
    }
}

/// Measures `immunity(not Lambda_q)` over `F_2` under the given basis and compares it
/// with the largest `d` satisfying `C(n, <= d) <= 2^n / q`.
pub fn verify_residue_immunity(n: usize, q: u64, basis: Basis) -> Result<ResidueReport> {
    if n > MAX_RESIDUE_VARS {
        return Err(Error::TooLarge(format!(
            "residue immunity supports n <= {MAX_RESIDUE_VARS}, got {n}"
        )));
    }
    check_divisor(n, q)?;
    if q < 2 {
        return Err(Error::BadRange(
            "q = 1 makes every element a residue".into(),
        ));
    }
    let map = build_binary_field(n)?.with_basis(basis);
    let f = residue_character(&map, q)?.complement();
    let measured_immunity = immunity(&f, 2)?
        .degree
        .expect("0 and 1 cannot both be non-residues");
    let bound_d = residue_bound(n, q).expect("q < 2^n");
    Ok(ResidueReport {
        n,
        q,
        basis,
        bound_d,
        measured_immunity,
        pass: measured_immunity > bound_d,
    })
}

/// Divisors `q >= 2` of `2^n - 1`, ascending.
pub fn admissible_moduli(n: usize) -> Vec<u64> {
    let order = (1u64 << n) - 1;
    (2..=order).filter(|q| order.is_multiple_of(*q)).collect()
}
