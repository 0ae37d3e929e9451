//! Desk-scale verification of the immunity results: one check per claim, each run over a
//! parameter grid and reported as a single pass/fail line.
//!
//! Shared by the `verify` command and the acceptance tests.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gf::{gcd, Field, PrimeField};
use crate::hilbert::{brute_force_min_distance, hilbert_function, smolensky_bound, PointSet};
use crate::immunity::{
    brute_force_weak_mod_m, immunity, mod_lower_bound, not_mod_formula, weak_mod_m_degree,
};
use crate::linalg::{tensor, Matrix, MatrixGF};
use crate::residue::{verify_residue_immunity, Basis};
use crate::ring::{binomial_sum, mod_indicator, tightness_witness, BooleanFunction};
use crate::symmetric::{
    coeffs_from_values, psi, reflex_dual_exists, restriction_bound_check,
    symmetric_immunity_degree, values_from_coeffs, Direction, SymmetricFn,
};

/// Number of checks run by [`run_all`].
pub const CRITERIA: u32 = 10;

/// Parameter grid and run options.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grid {
    /// Largest arity for the grid-based checks.
    pub max_n: usize,
    pub primes: Vec<u64>,
    pub qs: Vec<u32>,
    pub seed: u64,
    /// Worker threads for independent cells.
    pub jobs: usize,
    /// Flips one truth-table bit in the first cell of check 1 (negative control).
    pub inject_fault: bool,
}

impl Default for Grid {
    fn default() -> Self {
        Self {
            max_n: 10,
            primes: vec![2, 3, 5],
            qs: (2..=7).collect(),
            seed: 2024,
            jobs: 1,
            inject_fault: false,
        }
    }
}

impl Grid {
    /// `(n, q, p)` with `2 <= n <= max_n` and `gcd(p, q) = 1`, ordered by the tuple.
    fn mod_cells(&self) -> Vec<(usize, u32, u64)> {
        let mut cells = Vec::new();
        for n in 2..=self.max_n {
            for &q in &self.qs {
                for &p in &self.primes {
                    if gcd(p, q as u64) == 1 {
                        cells.push((n, q, p));
                    }
                }
            }
        }
        cells
    }

    fn rng(&self, criterion: u32) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(
            self.seed
                .wrapping_mul(1_000_003)
                .wrapping_add(criterion as u64),
        )
    }

    fn par_map<T: Sync, R: Send>(&self, items: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
        if self.jobs <= 1 {
            return items.iter().map(f).collect();
        }
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(self.jobs)
            .build()
            .expect("thread pool");
        // collect keeps input order, whatever order the cells finish in
        pool.install(|| items.par_iter().map(f).collect())
    }
}

/// Whether a check asserts a proven statement or records an experimental remark.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Theorem,
    Observation,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Theorem => "theorem",
            Kind::Observation => "observation",
        })
    }
}

/// Result of one check over its grid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub id: u32,
    pub title: &'static str,
    pub kind: Kind,
    pub cases: usize,
    /// One entry per failing parameter tuple, in grid order.
    pub failures: Vec<String>,
    /// Measured values worth reporting whether or not the check passed.
    pub notes: Vec<String>,
}

impl Outcome {
    fn new(id: u32, title: &'static str, kind: Kind) -> Self {
        Self {
            id,
            title,
            kind,
            cases: 0,
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(describe());
        }
    }

    fn record_error(&mut self, params: String, e: Error) {
        self.cases += 1;
        self.failures.push(format!("{params}: {e}"));
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// `criterion  N  PASS  [kind] title (cases; first failure)`.
    pub fn line(&self) -> String {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        let mut s = format!(
            "criterion {:>2}  {status}  [{}] {} ({} cases",
            self.id, self.kind, self.title, self.cases
        );
        if let Some(first) = self.failures.first() {
            s.push_str(&format!(
                "; {} failing, first: {first}",
                self.failures.len()
            ));
        }
        s.push(')');
        s
    }
}

/// Runs check `id` (1 to [`CRITERIA`]).
pub fn run_criterion(id: u32, grid: &Grid) -> Result<Outcome> {
    Ok(match id {
        1 => not_mod_exact(grid),
        2 => mod_lower_bound_and_tightness(grid),
        3 => mod_gap_observation(grid),
        4 => symmetric_equivalence(grid),
        5 => psi_progressions(grid),
        6 => tensor_nondegenerate(grid),
        7 => composite_reduction(grid),
        8 => hilbert_bridge(grid),
        9 => residue_immunity(grid),
        10 => transforms_and_duality(grid),
        _ => return Err(Error::BadRange(format!("no check numbered {id}"))),
    })
}

/// Every check in order.
pub fn run_all(grid: &Grid) -> Vec<Outcome> {
    (1..=CRITERIA)
        .map(|id| run_criterion(id, grid).expect("id in range"))
        .collect()
}

/// Checks whose failure makes the run fail; observations are reported only.
pub fn all_theorems_pass(outcomes: &[Outcome]) -> bool {
    outcomes
        .iter()
        .filter(|o| o.kind == Kind::Theorem)
        .all(Outcome::passed)
}

fn cell(n: usize, q: u32, p: u64) -> String {
    format!("(n={n}, q={q}, p={p})")
}

fn not_mod_exact(grid: &Grid) -> Outcome {
    let mut out = Outcome::new(1, "immunity of not chi_q equals ceil(n/q)", Kind::Theorem);
    let cells = grid.mod_cells();
    let results = grid.par_map(&cells, |&(n, q, p)| {
        let mut f = mod_indicator(n, q)?.complement();
        if grid.inject_fault && (n, q, p) == cells[0] {
            f.set(1, !f.get(1));
        }
        immunity(&f, p).map(|r| r.degree)
    });
    for (&(n, q, p), r) in cells.iter().zip(results) {
        let want = not_mod_formula(n, q as usize);
        match r {
            Ok(got) => out.check(got == Some(want), || {
                format!("{}: measured {got:?}, expected {want}", cell(n, q, p))
            }),
            Err(e) => out.record_error(cell(n, q, p), e),
        }
    }
    out
}

/// `(n, q, p, immunity(chi_q))` over the grid, plus the cells `n in {2q, 4q}` up to 12
/// that lie beyond `max_n` when the grid reaches `n = 10`.
fn mod_immunities(grid: &Grid) -> Vec<((usize, u32, u64), Result<usize>)> {
    let mut cells = grid.mod_cells();
    if grid.max_n >= 10 {
        for &q in &grid.qs {
            for n in [2 * q as usize, 4 * q as usize] {
                if n > grid.max_n && n <= 12 {
                    for &p in &grid.primes {
                        if gcd(p, q as u64) == 1 {
                            cells.push((n, q, p));
                        }
                    }
                }
            }
        }
        cells.sort_unstable();
    }
    let results = grid.par_map(&cells, |&(n, q, p)| {
        let f = mod_indicator(n, q)?;
        Ok(immunity(&f, p)?.degree.expect("chi_q(0) = 1"))
    });
    cells.into_iter().zip(results).collect()
}

fn mod_lower_bound_and_tightness(grid: &Grid) -> Outcome {
    let mut out = Outcome::new(
        2,
        "immunity of chi_q is at least ceil(n/2), with equality and a pair-product witness when 2q | n",
        Kind::Theorem,
    );
    for ((n, q, p), r) in mod_immunities(grid) {
        let got = match r {
            Ok(d) => d,
            Err(e) => {
                out.record_error(cell(n, q, p), e);
                continue;
            }
        };
        let bound = mod_lower_bound(n);
        out.check(got >= bound, || {
            format!("{}: measured {got} below {bound}", cell(n, q, p))
        });
        if n % (2 * q as usize) == 0 {
            let witness_ok = tightness_witness(n, q, p).and_then(|w| {
                let f = mod_indicator(n, q)?;
                crate::immunity::check_witness(&w, &f, n / 2)
            });
            out.check(got == n / 2 && matches!(witness_ok, Ok(true)), || {
                format!(
                    "{}: measured {got}, witness check {witness_ok:?}",
                    cell(n, q, p)
                )
            });
        }
    }
    out
}

fn mod_gap_observation(grid: &Grid) -> Outcome {
    let mut out = Outcome::new(
        3,
        "gap immunity(chi_q) - ceil(n/2) is at most 1",
        Kind::Observation,
    );
    let mut max_gap = 0;
    for ((n, q, p), r) in mod_immunities(grid) {
        match r {
            Ok(got) => {
                let gap = got as i64 - mod_lower_bound(n) as i64;
                max_gap = max_gap.max(gap);
                out.check(gap <= 1, || format!("{}: gap {gap}", cell(n, q, p)));
            }
            Err(e) => out.record_error(cell(n, q, p), e),
        }
    }
    out.notes.push(format!("largest gap {max_gap}"));
    out
}

fn symmetric_equivalence(grid: &Grid) -> Outcome {
    let mut out = Outcome::new(
        4,
        "weight-level immunity of symmetric functions equals the general computation",
        Kind::Theorem,
    );
    let mut rng = grid.rng(4);
    let mut cells: Vec<(usize, u64, Vec<i64>)> = Vec::new();
    for n in 1..=grid.max_n {
        for &p in &grid.primes {
            for _ in 0..200 {
                let values = loop {
                    let v: Vec<i64> = (0..=n).map(|_| rng.gen_range(0..2)).collect();
                    if v.contains(&1) {
                        break v;
                    }
                };
                cells.push((n, p, values));
            }
        }
    }
    let results = grid.par_map(&cells, |(_, p, values)| -> Result<(usize, Option<usize>)> {
        let f = SymmetricFn::from_values(values, *p)?;
        let fast = symmetric_immunity_degree(&f)?;
        let general = immunity(&f.to_boolean()?, *p)?.degree;
        Ok((fast, general))
    });
    for ((n, p, values), r) in cells.iter().zip(results) {
        let params = format!("(n={n}, p={p}, v={values:?})");
        match r {
            Ok((fast, general)) => out.check(Some(fast) == general, || {
                format!("{params}: weight-level {fast}, general {general:?}")
            }),
            Err(e) => out.record_error(params, e),
        }
    }
    out
}

fn psi_progressions(_grid: &Grid) -> Outcome {
    let mut out = Outcome::new(
        5,
        "psi_d rows on a progression a, a+q, .. form a basis with determinant q^(d(d-1)/2)",
        Kind::Theorem,
    );
    for p in [2u64, 3, 5, 7] {
        let field = PrimeField::new(p).expect("prime");
        for q in (1..=9u64).filter(|&q| gcd(p, q) == 1) {
            for d in 1..=7usize {
                for a in 0..=10u64 {
                    let params = format!("(p={p}, q={q}, d={d}, a={a})");
                    let rows: Result<Vec<Vec<u32>>> = (0..d as u64)
                        .map(|i| psi(d, a + i * q, p).map(|v| v.entries))
                        .collect();
                    let m = rows.and_then(|rows| Matrix::from_rows(&field, &rows));
                    let m = match m {
                        Ok(m) => m,
                        Err(e) => {
                            out.record_error(params, e);
                            continue;
                        }
                    };
                    let want = field.pow(field.from_int(q as i64), (d * (d - 1) / 2) as u64);
                    let det = m.det();
                    let rank = m.rank();
                    out.check(rank == d && det == Ok(want), || {
                        format!("{params}: rank {rank}, det {det:?}, expected {want}")
                    });
                }
            }
        }
    }
    out
}

/// Every strong nondegenerate `s x s` matrix over `F_p`, in code order.
pub fn strong_nondegenerate_matrices(p: u64, s: usize) -> Result<Vec<MatrixGF>> {
    let field = PrimeField::new(p)?;
    let total = (p as u128).pow((s * s) as u32);
    if total > 1 << 22 {
        return Err(Error::TooLarge(format!("{total} matrices to enumerate")));
    }
    let mut found = Vec::new();
    for code in 0..total as u64 {
        let data: Vec<u32> = (0..s * s)
            .map(|i| (code / p.pow(i as u32) % p) as u32)
            .collect();
        let m = Matrix::new(&field, s, s, data)?;
        if m.is_strong_nondegenerate()? {
            found.push(m);
        }
    }
    Ok(found)
}

fn random_strong_nondegenerate(field: &PrimeField, s: usize, rng: &mut ChaCha8Rng) -> MatrixGF {
    loop {
        let data: Vec<u32> = (0..s * s).map(|_| rng.gen_range(0..field.p())).collect();
        let m = Matrix::new(field, s, s, data).expect("s x s entries");
        if m.is_strong_nondegenerate().expect("square") {
            return m;
        }
    }
}

fn tensor_nondegenerate(grid: &Grid) -> Outcome {
    let mut out = Outcome::new(
        6,
        "tensor products of strong nondegenerate matrices are weak nondegenerate",
        Kind::Theorem,
    );
    let mut products: Vec<(String, Vec<MatrixGF>)> = Vec::new();
    for p in [2u64, 3] {
        // the 3 x 3 matrices over F_3 give ~800k pairs; smoke grids stop at size 2
        let max_size = if p == 3 && grid.max_n < 6 { 2 } else { 3 };
        let mut all = Vec::new();
        for s in 1..=max_size {
            match strong_nondegenerate_matrices(p, s) {
                Ok(ms) => all.extend(ms),
                Err(e) => out.record_error(format!("(p={p}, size={s})"), e),
            }
        }
        out.notes.push(format!(
            "{} strong nondegenerate matrices over F_{p}",
            all.len()
        ));
        for (i, a) in all.iter().enumerate() {
            for (j, b) in all.iter().enumerate() {
                products.push((
                    format!("(p={p}, pair {i} x {j})"),
                    vec![a.clone(), b.clone()],
                ));
            }
            if a.rows() == 2 {
                products.push((
                    format!("(p={p}, cube of {i})"),
                    vec![a.clone(), a.clone(), a.clone()],
                ));
            }
        }
    }
    let field = PrimeField::new(5).expect("prime");
    let mut rng = grid.rng(6);
    for k in 0..50 {
        let a = random_strong_nondegenerate(&field, rng.gen_range(2..=4), &mut rng);
        let b = random_strong_nondegenerate(&field, rng.gen_range(2..=4), &mut rng);
        products.push((format!("(p=5, random pair {k})"), vec![a, b]));
    }
    let results = grid.par_map(&products, |(_, factors)| {
        let mut t = factors[0].clone();
        for f in &factors[1..] {
            t = tensor(&t, f)?;
        }
        t.is_weak_nondegenerate()
    });
    for ((label, factors), r) in products.iter().zip(results) {
        match r {
            Ok(ok) => out.check(ok, || format!("{label}: factors {factors:?}")),
            Err(e) => out.record_error(label.clone(), e),
        }
    }
    out
}

fn composite_reduction(grid: &Grid) -> Outcome {
    let mut out = Outcome::new(
        7,
        "weak degree mod m is the least immunity over the prime factors of m",
        Kind::Theorem,
    );
    let mut rng = grid.rng(7);
    let mut functions: Vec<BooleanFunction> = (0..16u64)
        .map(|t| BooleanFunction::from_u64(2, t).expect("n = 2"))
        .collect();
    functions.extend(
        (0..100).map(|_| BooleanFunction::from_u64(3, rng.gen_range(0..256)).expect("n = 3")),
    );
    let cells: Vec<(usize, u64)> = (0..functions.len())
        .flat_map(|i| [6u64, 10, 15].map(|m| (i, m)))
        .collect();
    let results = grid.par_map(
        &cells,
        |&(i, m)| -> Result<(Option<usize>, Option<usize>)> {
            let f = &functions[i];
            let brute = brute_force_weak_mod_m(f, m, f.n())?;
            let (reduced, _) = weak_mod_m_degree(f, m)?;
            Ok((brute, reduced))
        },
    );
    for (&(i, m), r) in cells.iter().zip(results) {
        let f = &functions[i];
        let params = format!(
            "(n={}, table={}, m={m})",
            f.n(),
            f.to_table_text(2).replace('\n', " ")
        );
        match r {
            Ok((brute, reduced)) => out.check(brute == reduced, || {
                format!("{params}: exhaustive {brute:?}, prime reduction {reduced:?}")
            }),
            Err(e) => out.record_error(params, e),
        }
    }
    out
}

fn hilbert_bridge(grid: &Grid) -> Outcome {
    let mut out = Outcome::new(
        8,
        "h_m(Z(chi_q)) is full below ceil(n/2), and 2 h_m(S) - |S| bounds the distance to degree d",
        Kind::Theorem,
    );
    for (n, q, p) in grid.mod_cells() {
        let zeros = match mod_indicator(n, q) {
            Ok(f) => PointSet::zeros_of(&f),
            Err(e) => {
                out.record_error(cell(n, q, p), e);
                continue;
            }
        };
        for m in 0..mod_lower_bound(n) {
            let full = binomial_sum(n, m) as usize;
            match hilbert_function(&zeros, m, p) {
                Ok(h) => out.check(h == full, || {
                    format!("{} m={m}: h {h}, expected {full}", cell(n, q, p))
                }),
                Err(e) => out.record_error(format!("{} m={m}", cell(n, q, p)), e),
            }
        }
    }
    for n in 1..=grid.max_n.min(4) {
        for d in 0..=1usize {
            if n < d + 1 {
                continue;
            }
            for table in 0..1u64 << (1 << n) {
                let f = BooleanFunction::from_u64(n, table).expect("n <= 4");
                let params = format!("(n={n}, d={d}, table={table:#x})");
                match (
                    brute_force_min_distance(&f, d, 2),
                    smolensky_bound(&f, d, 2),
                ) {
                    (Ok(dist), Ok(bound)) => out.check(dist as i64 >= bound, || {
                        format!("{params}: distance {dist} below bound {bound}")
                    }),
                    (Err(e), _) | (_, Err(e)) => out.record_error(params, e),
                }
            }
        }
    }
    out
}

/// The `(n, q)` pairs of the residue check.
pub const RESIDUE_PAIRS: [(usize, u64); 6] = [(4, 3), (4, 5), (4, 15), (6, 3), (6, 7), (6, 9)];

fn residue_immunity(grid: &Grid) -> Outcome {
    let mut out = Outcome::new(
        9,
        "immunity of not Lambda_q exceeds the largest d with C(n, <= d) <= 2^n / q",
        Kind::Theorem,
    );
    let bases = [
        Basis::Polynomial,
        Basis::Random(grid.seed),
        Basis::Random(grid.seed + 1),
    ];
    for (n, q) in RESIDUE_PAIRS {
        if n > grid.max_n {
            continue;
        }
        for basis in bases {
            let params = format!("(n={n}, q={q}, basis={basis})");
            match verify_residue_immunity(n, q, basis) {
                Ok(r) => {
                    out.notes.push(format!(
                        "{params}: bound {} measured {}",
                        r.bound_d, r.measured_immunity
                    ));
                    out.check(r.pass, || {
                        format!(
                            "{params}: measured {} does not exceed {}",
                            r.measured_immunity, r.bound_d
                        )
                    })
                }
                Err(e) => out.record_error(params, e),
            }
        }
    }
    out
}

/// The `(n, q, p)` instances of the restriction bound check.
pub const RESTRICTION_INSTANCES: [(usize, u64, u64); 3] = [(8, 3, 3), (26, 10, 3), (15, 3, 2)];

fn transforms_and_duality(grid: &Grid) -> Outcome {
    let mut out = Outcome::new(
        10,
        "value/coefficient transforms invert each other, support duality holds, restriction bounds hold",
        Kind::Theorem,
    );
    let mut rng = grid.rng(10);
    for &p in &[2u64, 3, 5] {
        for _ in 0..100 {
            let len = rng.gen_range(1..=13);
            let v: Vec<u32> = (0..len).map(|_| rng.gen_range(0..p as u32)).collect();
            let params = format!("(p={p}, v={v:?})");
            let round = coeffs_from_values(&v, p)
                .and_then(|c| values_from_coeffs(&c, p))
                .and_then(|w| Ok((w, coeffs_from_values(&values_from_coeffs(&v, p)?, p)?)));
            match round {
                Ok((w, back)) => out.check(w == v && back == v, || {
                    format!("{params}: round trip {w:?} / {back:?}")
                }),
                Err(e) => out.record_error(params, e),
            }
        }
    }
    for _ in 0..100 {
        let n = rng.gen_range(0..=10usize);
        let p = [2u64, 3][rng.gen_range(0..2)];
        let s: Vec<usize> = (0..=n).filter(|_| rng.gen_bool(0.5)).collect();
        let d = rng.gen_range(0..=n + 1);
        let params = format!("(n={n}, p={p}, S={s:?}, d={d})");
        let a = reflex_dual_exists(&s, d, n, p, Direction::ValueSupport);
        let b = reflex_dual_exists(&s, d, n, p, Direction::CoefficientSupport);
        match (a, b) {
            (Ok(a), Ok(b)) => out.check(a == b, || {
                format!("{params}: value side {a}, coefficient side {b}")
            }),
            (Err(e), _) | (_, Err(e)) => out.record_error(params, e),
        }
    }
    for (n, q, p) in RESTRICTION_INSTANCES {
        let params = format!("(n={n}, q={q}, p={p})");
        match restriction_bound_check(n, q, p) {
            Ok(r) => {
                out.notes.push(format!(
                    "{params}: lower bound {:.3}, measured {}, zero weights {}",
                    r.lower_bound, r.measured, r.upper_bound
                ));
                out.check(true, String::new)
            }
            Err(e) => out.record_error(params, e),
        }
    }
    out
}
