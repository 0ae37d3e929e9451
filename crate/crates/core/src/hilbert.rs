//! Hilbert functions of point sets in `{0,1}^n`, annihilator dimensions and the
//! Smolensky-type lower bound on the distance to low-degree polynomials.

use crate::error::{Error, Result};
use crate::gf::{Field, PrimeField};
use crate::linalg::{ColumnSpace, Matrix};
use crate::ring::{binomial_sum, graded_monomials, BooleanFunction, MAX_VARS};

/// Largest `|S| * C(n, <= m)` handled by [`hilbert_function`].
pub const HILBERT_BUDGET: u64 = 1 << 28;

/// Largest `|S| * C(n, <= m)` handled by [`annihilator_dim`], which also runs a dense
/// nullspace computation.
pub const ANNIHILATOR_BUDGET: u64 = 1 << 24;

/// Candidate budget of [`brute_force_min_distance`].
pub const DISTANCE_BUDGET: f64 = 1e7;

/// A set of points of `{0,1}^n`, sorted and deduplicated. Bit `i` of a point is `x_{i+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet {
    n: usize,
    points: Vec<u32>,
}

impl PointSet {
    pub fn new(n: usize, points: impl IntoIterator<Item = u32>) -> Result<Self> {
        if n > MAX_VARS {
            return Err(Error::TooLarge(format!("n = {n} exceeds {MAX_VARS}")));
        }
        let mut points: Vec<u32> = points.into_iter().collect();
        if let Some(&x) = points.iter().find(|&&x| n < 32 && x >> n != 0) {
            return Err(Error::BadShape(format!(
                "point {x:#b} has more than {n} coordinates"
            )));
        }
        points.sort_unstable();
        points.dedup();
        Ok(Self { n, points })
    }

    /// The zero set of `f`.
    pub fn zeros_of(f: &BooleanFunction) -> Self {
        Self {
            n: f.n(),
            points: f.zero_set(),
        }
    }

    /// Every point of the cube.
    pub fn full(n: usize) -> Result<Self> {
        Self::new(n, 0..1u32 << n)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn points(&self) -> &[u32] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

fn check_degree(s: &PointSet, m: usize, budget: u64) -> Result<u64> {
    if m > s.n {
        return Err(Error::BadRange(format!("degree {m} exceeds n = {}", s.n)));
    }
    let cols = binomial_sum(s.n, m);
    if s.len() as u64 * cols > budget {
        return Err(Error::TooLarge(format!(
            "{} points x {cols} monomials exceeds {budget}",
            s.len()
        )));
    }
    Ok(cols)
}

/// `h_m(S)`: rank over `F_p` of the evaluations of all monomials of degree `<= m` on `S`.
pub fn hilbert_function(s: &PointSet, m: usize, p: u64) -> Result<usize> {
    let field = PrimeField::new(p)?;
    check_degree(s, m, HILBERT_BUDGET)?;
    let points = s.points();
    let mut space = ColumnSpace::new(&field, points.len(), false);
    for mono in graded_monomials(s.n, m) {
        if space.rank() == points.len() {
            break;
        }
        space.insert(|i| (points[i] & mono == mono) as u32);
    }
    Ok(space.rank())
}

/// Dimension of the space of polynomials of degree `<= m` vanishing on `S`.
///
/// Computed as the nullity of the evaluation matrix by dense elimination and checked
/// against `C(n, <= m) - h_m(S)`.
pub fn annihilator_dim(s: &PointSet, m: usize, p: u64) -> Result<usize> {
    let field = PrimeField::new(p)?;
    let cols = check_degree(s, m, ANNIHILATOR_BUDGET)? as usize;
    let monos = graded_monomials(s.n, m);
    let data: Vec<u32> = s
        .points()
        .iter()
        .flat_map(|&x| monos.iter().map(move |&mono| (x & mono == mono) as u32))
        .collect();
    let eval = Matrix::new(&field, s.len(), cols, data)?;
    let dim = eval.nullspace_basis().len();
    let h = hilbert_function(s, m, p)?;
    if dim + h != cols {
        return Err(Error::AssertionFailure {
            theorem: "annihilator dimension plus Hilbert function equals C(n, <= m)".into(),
            params: format!("n={}, |S|={}, m={m}, p={p}", s.n, s.len()),
        });
    }
    Ok(dim)
}

/// One row of [`hilbert_table`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HilbertRow {
    pub m: usize,
    pub h: usize,
    /// `C(n, <= m)`, the value of `h_m` on the whole cube.
    pub monomials: u64,
    /// `2 h_m(S) - |S|`.
    pub bound: i64,
}

/// `h_m(S)` for `m = 0..=max_m`, with the quantities it is compared against.
pub fn hilbert_table(s: &PointSet, max_m: usize, p: u64) -> Result<Vec<HilbertRow>> {
    (0..=max_m)
        .map(|m| {
            let h = hilbert_function(s, m, p)?;
            Ok(HilbertRow {
                m,
                h,
                monomials: binomial_sum(s.n, m),
                bound: 2 * h as i64 - s.len() as i64,
            })
        })
        .collect()
}

/// `2 h_m(Z(f)) - |Z(f)|` with `m = floor((n - d - 1) / 2)`: a lower bound on the number
/// of points where `f` differs from any degree-`d` polynomial read as Boolean. The
/// value may be negative, in which case the bound says nothing.
pub fn smolensky_bound(f: &BooleanFunction, d: usize, p: u64) -> Result<i64> {
    let n = f.n();
    if n < d + 1 {
        return Err(Error::BadRange(format!(
            "need n >= d + 1, got n = {n}, d = {d}"
        )));
    }
    let m = (n - d - 1) / 2;
    let zeros = PointSet::zeros_of(f);
    let h = hilbert_function(&zeros, m, p)?;
    Ok(2 * h as i64 - zeros.len() as i64)
}

/// Least number of points where `f` disagrees with `[g != 0]`, over every polynomial
/// `g` of degree `<= d` over `F_p`, by enumerating all `p^C(n, <= d)` of them.
pub fn brute_force_min_distance(f: &BooleanFunction, d: usize, p: u64) -> Result<usize> {
    let field = PrimeField::new(p)?;
    let n = f.n();
    if n > 16 {
        return Err(Error::TooLarge(format!(
            "distance oracle supports n <= 16, got {n}"
        )));
    }
    let monos = graded_monomials(n, d);
    let needed = (p as f64).powi(monos.len() as i32);
    if needed > DISTANCE_BUDGET {
        return Err(Error::SearchBudgetExceeded {
            needed,
            budget: DISTANCE_BUDGET,
        });
    }
    // points above each monomial, the only ones whose value it affects
    let supersets: Vec<Vec<u32>> = monos
        .iter()
        .map(|&mono| (0..1u32 << n).filter(|&x| x & mono == mono).collect())
        .collect();
    let mut coeffs = vec![0u32; monos.len()];
    let mut values = vec![0u32; 1 << n];
    // g = 0 disagrees with f exactly on its ones
    let mut distance = f.count_ones();
    let mut best = distance;
    loop {
        // odometer step: raise the lowest digit by 1, carrying past digits that wrap
        let mut k = 0;
        loop {
            if k == monos.len() {
                return Ok(best);
            }
            coeffs[k] = field.add(coeffs[k], 1);
            for &x in &supersets[k] {
                let v = &mut values[x as usize];
                let before = (*v != 0) != f.get(x);
                *v = field.add(*v, 1);
                let after = (*v != 0) != f.get(x);
                distance = distance + after as usize - before as usize;
            }
            if coeffs[k] != 0 {
                break;
            }
            k += 1;
        }
        best = best.min(distance);
    }
}
