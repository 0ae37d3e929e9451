//! Immunity (weak p-degree) of Boolean functions: the least degree of a nonzero
//! multilinear polynomial over `F_p` that vanishes on every zero of `f`.

use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::gf::{self, Field, PrimeField};
use crate::linalg::{ColumnSpace, Insertion};
use crate::ring::{
    self, graded_monomials, ideal_member, monomials_of_degree, BooleanFunction, MultilinearPoly,
};

/// Largest arity accepted by the general (exhaustive linear algebra) path.
pub const MAX_GENERAL_VARS: usize = 20;

/// Largest number of candidates the `Z_m` exhaustive search will visit.
pub const BRUTE_FORCE_BUDGET: f64 = 1e7;

/// How an immunity value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Incremental rank over all monomials, graded-lex.
    General,
    /// Weight-level reduction for symmetric functions.
    Symmetric,
    /// Closed form for the complement of a mod-q indicator.
    Formula,
    /// Minimum over the prime factors of a composite modulus.
    Composite,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::General => "general",
            Method::Symmetric => "symmetric",
            Method::Formula => "formula",
            Method::Composite => "composite",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Result of an immunity computation.
///
/// `degree` is `None` when `f` is identically zero (no nonzero polynomial can vanish
/// everywhere). `checked` records that the witness was re-verified to lie in `<f>`
/// and to have exactly the reported degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImmunityReport {
    pub degree: Option<usize>,
    pub witness: Option<MultilinearPoly<PrimeField>>,
    pub method: Method,
    pub checked: bool,
}

impl ImmunityReport {
    /// `{"degree", "method", "witness": [{"mask", "coeff"}], "checked"}`, with the
    /// witness terms in graded-lex order.
    pub fn to_json(&self) -> Value {
        let witness: Vec<Value> = self
            .witness
            .iter()
            .flat_map(|g| g.terms_graded())
            .map(|(mask, c)| json!({"mask": mask, "coeff": c}))
            .collect();
        json!({
            "degree": self.degree,
            "method": self.method.as_str(),
            "witness": witness,
            "checked": self.checked,
        })
    }
}

/// Checks that `g` is a nonzero member of `<f>` of degree exactly `degree`.
pub fn check_witness<F: Field>(
    g: &MultilinearPoly<F>,
    f: &BooleanFunction,
    degree: usize,
) -> Result<bool> {
    Ok(!g.is_zero() && g.degree() == Some(degree) && ideal_member(g, f)?)
}

/// Immunity of `f` over `F_p` by exhaustive linear algebra.
///
/// Monomials are offered in graded-lex order as columns of the evaluation matrix on
/// the zero set of `f`; the first column that depends on earlier ones gives both the
/// degree and a monic witness whose leading monomial is the least possible.
pub fn immunity(f: &BooleanFunction, p: u64) -> Result<ImmunityReport> {
    let field = PrimeField::new(p)?;
    let n = f.n();
    if n > MAX_GENERAL_VARS {
        return Err(Error::TooLarge(format!(
            "general immunity supports n <= {MAX_GENERAL_VARS}, got {n}"
        )));
    }
    if f.count_ones() == 0 {
        return Ok(ImmunityReport {
            degree: None,
            witness: None,
            method: Method::General,
            checked: true,
        });
    }
    let zeros = f.zero_set();
    let mut space = ColumnSpace::new(&field, zeros.len(), true);
    let mut offered: Vec<u32> = Vec::new();
    for d in 0..=n {
        for m in monomials_of_degree(n, d) {
            offered.push(m);
            if let Insertion::Dependent(Some(comb)) = space.insert(|i| (zeros[i] & m == m) as u32) {
                let g = MultilinearPoly::from_terms(
                    n,
                    &field,
                    offered.iter().zip(&comb).map(|(&mono, &c)| (mono, c)),
                );
                let checked = check_witness(&g, f, d)?;
                if !checked {
                    return Err(Error::AssertionFailure {
                        theorem: "immunity witness re-check".into(),
                        params: format!("n={n}, p={p}, d={d}"),
                    });
                }
                return Ok(ImmunityReport {
                    degree: Some(d),
                    witness: Some(g),
                    method: Method::General,
                    checked,
                });
            }
        }
    }
    // f is not identically zero, so fewer than 2^n rows remain and some column of the
    // full monomial basis must be dependent
    unreachable!("full monomial basis is independent only on the whole cube")
}

/// `min(immunity(f), immunity(not f))`.
pub fn two_sided_immunity(f: &BooleanFunction, p: u64) -> Result<usize> {
    if f.is_constant() {
        return Err(Error::ConstantFunction);
    }
    let a = immunity(f, p)?.degree.expect("nonconstant");
    let b = immunity(&f.complement(), p)?.degree.expect("nonconstant");
    Ok(a.min(b))
}

/// Weak degree modulo a composite `m`: the minimum over the prime factors `p` of `m`
/// of the immunity over `F_p`. Returns the degree and the prime attaining it (the
/// smallest one on ties). The degree is `None` only for the zero function.
pub fn weak_mod_m_degree(f: &BooleanFunction, m: u64) -> Result<(Option<usize>, u64)> {
    if m < 2 {
        return Err(Error::BadRange(format!(
            "modulus must be at least 2, got {m}"
        )));
    }
    let mut best: Option<(usize, u64)> = None;
    let primes = gf::prime_factors(m);
    for &p in &primes {
        if let Some(d) = immunity(f, p)?.degree {
            if best.is_none_or(|(b, _)| d < b) {
                best = Some((d, p));
            }
        }
    }
    Ok(match best {
        Some((d, p)) => (Some(d), p),
        None => (None, primes[0]),
    })
}

/// Same as [`weak_mod_m_degree`], packaged as a report whose witness is the `F_p`
/// witness for the attaining prime `p`. Multiplying it by `m / p` gives a `Z_m`
/// polynomial with the same zero pattern.
pub fn weak_mod_m_report(f: &BooleanFunction, m: u64) -> Result<(ImmunityReport, u64)> {
    let (degree, p) = weak_mod_m_degree(f, m)?;
    let mut report = immunity(f, p)?;
    debug_assert_eq!(report.degree, degree);
    report.method = Method::Composite;
    Ok((report, p))
}

/// Least `d <= d_max` such that some nonzero multilinear polynomial over `Z_m` of
/// degree at most `d` vanishes on every zero of `f`, found by exhaustive search.
///
/// Coefficients are enumerated in graded-lex order. A monomial that is itself a zero of
/// `f` has its coefficient fixed by that point's equation (all its proper subsets come
/// first), and every other equation is checked as soon as its last coefficient is set.
/// Every solution is therefore visited; the budget bounds `m^k` where `k` counts the
/// free coefficients at the degree being searched.
pub fn brute_force_weak_mod_m(f: &BooleanFunction, m: u64, d_max: usize) -> Result<Option<usize>> {
    if m < 2 {
        return Err(Error::BadRange(format!(
            "modulus must be at least 2, got {m}"
        )));
    }
    let n = f.n();
    if n > 16 {
        return Err(Error::TooLarge(format!(
            "exhaustive search supports n <= 16, got {n}"
        )));
    }
    for d in 0..=d_max.min(n) {
        let monos = graded_monomials(n, d);
        let free = monos.iter().filter(|&&s| f.get(s)).count();
        let needed = (m as f64).powi(free as i32);
        if needed > BRUTE_FORCE_BUDGET {
            return Err(Error::SearchBudgetExceeded {
                needed,
                budget: BRUTE_FORCE_BUDGET,
            });
        }
        if ZmSearch::new(f, m, &monos).run() {
            return Ok(Some(d));
        }
    }
    Ok(None)
}

struct ZmSearch<'a> {
    m: u64,
    monos: &'a [u32],
    forced: Vec<bool>,
    // for each monomial position: indices of earlier positions that are proper subsets
    subsets: Vec<Vec<usize>>,
    // equations of zeros with weight > d, grouped by the position that completes them
    closing: Vec<Vec<Vec<usize>>>,
    coeffs: Vec<u64>,
}

impl<'a> ZmSearch<'a> {
    fn new(f: &BooleanFunction, m: u64, monos: &'a [u32]) -> Self {
        let d = monos.last().map_or(0, |s| s.count_ones() as usize);
        let pos: std::collections::HashMap<u32, usize> =
            monos.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        let forced: Vec<bool> = monos.iter().map(|&s| !f.get(s)).collect();
        let subsets: Vec<Vec<usize>> = monos
            .iter()
            .map(|&s| {
                monos
                    .iter()
                    .enumerate()
                    .filter(|&(_, &t)| t != s && t & s == t)
                    .map(|(i, _)| i)
                    .collect()
            })
            .collect();
        let mut closing = vec![Vec::new(); monos.len()];
        for x in f.zero_set() {
            if x.count_ones() as usize <= d {
                continue;
            }
            let eq: Vec<usize> = monos
                .iter()
                .filter(|&&t| t & x == t)
                .map(|t| pos[t])
                .collect();
            let last = *eq
                .iter()
                .max()
                .expect("the empty monomial divides every point");
            closing[last].push(eq);
        }
        Self {
            m,
            monos,
            forced,
            subsets,
            closing,
            coeffs: vec![0; monos.len()],
        }
    }

    fn run(&mut self) -> bool {
        self.descend(0)
    }

    fn descend(&mut self, k: usize) -> bool {
        if k == self.monos.len() {
            return self.coeffs.iter().any(|&c| c != 0);
        }
        if self.forced[k] {
            let s: u64 = self.subsets[k].iter().map(|&i| self.coeffs[i]).sum();
            self.coeffs[k] = (self.m - s % self.m) % self.m;
            return self.closes(k) && self.descend(k + 1);
        }
        for c in 0..self.m {
            self.coeffs[k] = c;
            if self.closes(k) && self.descend(k + 1) {
                return true;
            }
        }
        self.coeffs[k] = 0;
        false
    }

    fn closes(&self, k: usize) -> bool {
        self.closing[k]
            .iter()
            .all(|eq| eq.iter().map(|&i| self.coeffs[i]).sum::<u64>() % self.m == 0)
    }
}

/// `ceil(n / q)`, the immunity of `not chi_q` on `n` variables over any field of
/// characteristic coprime to `q`.
pub fn not_mod_formula(n: usize, q: usize) -> usize {
    n.div_ceil(q)
}

/// `ceil(n / 2)`, the lower bound on the immunity of `chi_q`.
pub fn mod_lower_bound(n: usize) -> usize {
    n.div_ceil(2)
}

/// Formula-based report for `not chi_q`. The witness comes from the general path when
/// `n` is small enough and is re-checked against the formula.
pub fn not_mod_immunity_by_formula(n: usize, q: u32, p: u64) -> Result<ImmunityReport> {
    PrimeField::new(p)?;
    if q < 2 {
        return Err(Error::BadRange(format!("q must be at least 2, got {q}")));
    }
    if gf::gcd(p, q as u64) != 1 {
        return Err(Error::NotCoprime { p, q: q as u64 });
    }
    let degree = not_mod_formula(n, q as usize);
    let (witness, checked) = if n <= 12 {
        let f = ring::mod_indicator(n, q)?.complement();
        let r = immunity(&f, p)?;
        if r.degree != Some(degree) {
            return Err(Error::AssertionFailure {
                theorem: "not-mod-q immunity formula".into(),
                params: format!("n={n}, q={q}, p={p}"),
            });
        }
        (r.witness, r.checked)
    } else {
        (None, false)
    };
    Ok(ImmunityReport {
        degree: Some(degree),
        witness,
        method: Method::Formula,
        checked,
    })
}

/// Measured immunities of `chi_q` and `not chi_q` together with the bounds they must
/// satisfy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModBoundsReport {
    pub n: usize,
    pub q: u32,
    pub p: u64,
    pub mod_immunity: usize,
    pub not_mod_immunity: usize,
    pub lower_bound: usize,
    /// Set when `2q | n`: the product witness has degree `n / 2` and lies in `<chi_q>`.
    pub tight: Option<bool>,
}

impl ModBoundsReport {
    /// `immunity(chi_q) - immunity(not chi_q)`.
    pub fn gap(&self) -> i64 {
        self.mod_immunity as i64 - self.not_mod_immunity as i64
    }
}

/// Computes `immunity(chi_q)` and `immunity(not chi_q)` by the general path and
/// asserts the lower bound `ceil(n/2)`, the exact value `ceil(n/q)` for the complement,
/// and tightness with the pair-product witness when `2q | n`.
pub fn verify_mod_bounds(n: usize, q: u32, p: u64) -> Result<ModBoundsReport> {
    PrimeField::new(p)?;
    if q < 2 {
        return Err(Error::BadRange(format!("q must be at least 2, got {q}")));
    }
    if gf::gcd(p, q as u64) != 1 {
        return Err(Error::NotCoprime { p, q: q as u64 });
    }
    if n > 14 {
        return Err(Error::TooLarge(format!(
            "mod bounds check supports n <= 14, got {n}"
        )));
    }
    let fail = |theorem: &str| Error::AssertionFailure {
        theorem: theorem.into(),
        params: format!("n={n}, q={q}, p={p}"),
    };
    let chi = ring::mod_indicator(n, q)?;
    let mod_immunity = immunity(&chi, p)?.degree.expect("chi_q(0) = 1");
    let not_mod_immunity = if n == 0 {
        // not chi_q is identically zero on the single point
        0
    } else {
        immunity(&chi.complement(), p)?
            .degree
            .expect("weight 1 is not divisible by q")
    };
    let lower_bound = mod_lower_bound(n);
    if mod_immunity < lower_bound {
        return Err(fail("mod-q lower bound"));
    }
    if n > 0 && not_mod_immunity != not_mod_formula(n, q as usize) {
        return Err(fail("not-mod-q immunity formula"));
    }
    let tight = if n > 0 && n.is_multiple_of(2 * q as usize) {
        let w = ring::tightness_witness(n, q, p)?;
        let ok = mod_immunity == n / 2 && check_witness(&w, &chi, n / 2)?;
        if !ok {
            return Err(fail("mod-q tightness"));
        }
        Some(true)
    } else {
        None
    };
    Ok(ModBoundsReport {
        n,
        q,
        p,
        mod_immunity,
        not_mod_immunity,
        lower_bound,
        tight,
    })
}
