//! Exact dense linear algebra over finite fields: rank, nullspace, determinant,
//! Kronecker products, Pascal matrices and the strong/weak nondegeneracy predicates.
//!
//! Fields with two elements take a word-packed XOR path for rank; every other field
//! uses plain Gaussian elimination. [`ColumnSpace`] is the incremental engine behind
//! the immunity and Hilbert-function searches.

use std::fmt;

use crate::error::{Error, Result};
use crate::gf::{gcd, Field, PrimeField};

/// Dense row-major matrix over a finite field.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<F: Field> {
    rows: usize,
    cols: usize,
    field: F,
    data: Vec<F::Elem>,
}

/// Matrices over prime fields.
pub type MatrixGF = Matrix<PrimeField>;

impl<F: Field> Matrix<F> {
    pub fn new(field: &F, rows: usize, cols: usize, data: Vec<F::Elem>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::BadShape(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Self {
            rows,
            cols,
            field: field.clone(),
            data,
        })
    }

    pub fn zeros(field: &F, rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            field: field.clone(),
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &F, size: usize) -> Self {
        let mut m = Self::zeros(field, size, size);
        for i in 0..size {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: &F, rows: &[Vec<F::Elem>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::BadShape("ragged rows".into()));
        }
        Self::new(field, rows.len(), cols, rows.concat())
    }

    /// Builds a matrix from integer entries, reduced into the field.
    pub fn from_ints(field: &F, rows: &[Vec<i64>]) -> Result<Self> {
        let rows: Vec<Vec<F::Elem>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| field.from_int(v)).collect())
            .collect();
        Self::from_rows(field, &rows)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> F::Elem {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: F::Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[F::Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    /// The submatrix on the listed rows (in the given order) and the first `cols` columns.
    pub fn select(&self, row_idx: &[usize], cols: usize) -> Self {
        let mut data = Vec::with_capacity(row_idx.len() * cols);
        for &r in row_idx {
            data.extend_from_slice(&self.row(r)[..cols]);
        }
        Self::new(&self.field, row_idx.len(), cols, data).expect("shape is consistent")
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(f.zero(), |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        if self.field.size() == 2 {
            self.rank_bitpacked()
        } else {
            self.rank_generic()
        }
    }

    /// Rank by row reduction in the field's own arithmetic.
    pub fn rank_generic(&self) -> usize {
        self.clone().reduce_in_place().len()
    }

    /// Rank over a two-element field with rows packed into 64-bit words.
    pub fn rank_bitpacked(&self) -> usize {
        assert_eq!(
            self.field.size(),
            2,
            "bit-packed rank needs a two-element field"
        );
        let words = self.cols.div_ceil(64);
        let mut rows: Vec<Vec<u64>> = (0..self.rows)
            .map(|r| {
                let mut w = vec![0u64; words];
                for (c, &v) in self.row(r).iter().enumerate() {
                    if !self.field.is_zero(v) {
                        w[c / 64] |= 1 << (c % 64);
                    }
                }
                w
            })
            .collect();
        bit_rank(&mut rows, self.cols)
    }

    /// Reduced row echelon form in place; returns the pivot columns, left to right.
    fn reduce_in_place(&mut self) -> Vec<usize> {
        let f = self.field.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| !f.is_zero(self.get(i, c))) else {
                continue;
            };
            self.swap_rows(r, pr);
            let inv = f.inv(self.get(r, c)).expect("nonzero pivot");
            for j in c..self.cols {
                let v = f.mul(self.get(r, j), inv);
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let factor = self.get(i, c);
                if f.is_zero(factor) {
                    continue;
                }
                for j in c..self.cols {
                    let v = f.sub(self.get(i, j), f.mul(factor, self.get(r, j)));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.reduce_in_place();
        (m, pivots)
    }

    /// Basis of `{v : A v = 0}`. Each vector has its lowest-index nonzero entry equal to 1,
    /// and the basis is sorted by that index (which is distinct across vectors).
    pub fn nullspace_basis(&self) -> Vec<Vec<F::Elem>> {
        let f = &self.field;
        // eliminate right to left, so free columns become the leading positions
        let mut rev = Self::zeros(f, self.rows, self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                rev.set(r, self.cols - 1 - c, self.get(r, c));
            }
        }
        let (red, pivots) = rev.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis: Vec<Vec<F::Elem>> = (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![f.zero(); self.cols];
                v[free] = f.one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(red.get(row, free));
                }
                v.reverse();
                v
            })
            .collect();
        basis.sort_by_key(|v| v.iter().position(|&x| !f.is_zero(x)));
        basis
    }

    pub fn det(&self) -> Result<F::Elem> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let f = self.field.clone();
        let n = self.rows;
        let mut m = self.clone();
        let mut det = f.one();
        for c in 0..n {
            let Some(pr) = (c..n).find(|&i| !f.is_zero(m.get(i, c))) else {
                return Ok(f.zero());
            };
            if pr != c {
                m.swap_rows(pr, c);
                det = f.neg(det);
            }
            let pivot = m.get(c, c);
            det = f.mul(det, pivot);
            let inv = f.inv(pivot).expect("nonzero pivot");
            for i in c + 1..n {
                let factor = f.mul(m.get(i, c), inv);
                if f.is_zero(factor) {
                    continue;
                }
                for j in c..n {
                    let v = f.sub(m.get(i, j), f.mul(factor, m.get(c, j)));
                    m.set(i, j, v);
                }
            }
        }
        Ok(det)
    }

    /// True iff every leading principal minor is nonzero (elimination without row swaps).
    fn leading_minors_nonzero(&self) -> bool {
        let f = &self.field;
        let n = self.rows.min(self.cols);
        let mut m = self.clone();
        for c in 0..n {
            let pivot = m.get(c, c);
            if f.is_zero(pivot) {
                return false;
            }
            let inv = f.inv(pivot).expect("nonzero pivot");
            for i in c + 1..n {
                let factor = f.mul(m.get(i, c), inv);
                if f.is_zero(factor) {
                    continue;
                }
                for j in c..n {
                    let v = f.sub(m.get(i, j), f.mul(factor, m.get(c, j)));
                    m.set(i, j, v);
                }
            }
        }
        true
    }

    fn require_square(&self) -> Result<usize> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(self.rows)
    }

    /// Every increasing row selection `i_1 < .. < i_t`, against the first `t` columns,
    /// has full rank `t`.
    pub fn is_strong_nondegenerate(&self) -> Result<bool> {
        let s = self.require_square()?;
        if s > 16 {
            return Err(Error::TooLarge(format!("strong check on size {s} > 16")));
        }
        for subset in 1u32..(1 << s) {
            let rows: Vec<usize> = (0..s).filter(|i| subset >> i & 1 == 1).collect();
            let t = rows.len();
            if self.select(&rows, t).rank() != t {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Every arithmetic progression of rows `a, a+q, .., a+(t-1)q` (indices mod the
    /// size `s`, `q` coprime to `s`), against the first `t` columns, has full rank `t`.
    ///
    /// Row selections depend only on `a mod s` and `q mod s`, so the search is finite.
    pub fn is_weak_nondegenerate(&self) -> Result<bool> {
        let s = self.require_square()?;
        if s > 64 {
            return Err(Error::TooLarge(format!("weak check on size {s} > 64")));
        }
        for q in (1..=s).filter(|&q| gcd(q as u64, s as u64) == 1) {
            for a in 0..s {
                let order: Vec<usize> = (0..s).map(|i| (a + i * q) % s).collect();
                debug_assert!({
                    let mut seen = order.clone();
                    seen.sort_unstable();
                    seen.dedup();
                    seen.len() == s
                });
                // all t at once: the leading t x t minors of the reordered matrix
                if !self.select(&order, s).leading_minors_nonzero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Weak nondegeneracy checked submatrix by submatrix, one rank per `(q, a, t)`.
    pub fn is_weak_nondegenerate_direct(&self) -> Result<bool> {
        let s = self.require_square()?;
        if s > 64 {
            return Err(Error::TooLarge(format!("weak check on size {s} > 64")));
        }
        for t in 1..=s {
            for q in (1..=s * t).filter(|&q| gcd(q as u64, s as u64) == 1) {
                for a in 0..s {
                    let rows: Vec<usize> = (0..t).map(|i| (a + i * q) % s).collect();
                    if self.select(&rows, t).rank() != t {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<u64> = self.row(r).iter().map(|&v| self.field.encode(v)).collect();
            writeln!(f, "  {row:?}")?;
        }
        write!(f, "]")
    }
}

/// Kronecker product: entry `((i1, i2), (j1, j2))` is `A[i1][j1] * B[i2][j2]`, with row
/// index `i1 * rows(B) + i2`.
pub fn tensor<F: Field>(a: &Matrix<F>, b: &Matrix<F>) -> Result<Matrix<F>> {
    if a.field != b.field {
        return Err(Error::FieldMismatch);
    }
    let f = &a.field;
    let (rows, cols) = (a.rows * b.rows, a.cols * b.cols);
    let mut out = Matrix::zeros(f, rows, cols);
    for i1 in 0..a.rows {
        for j1 in 0..a.cols {
            let x = a.get(i1, j1);
            if f.is_zero(x) {
                continue;
            }
            for i2 in 0..b.rows {
                for j2 in 0..b.cols {
                    out.set(i1 * b.rows + i2, j1 * b.cols + j2, f.mul(x, b.get(i2, j2)));
                }
            }
        }
    }
    Ok(out)
}

/// `(C(i, j) mod p)` for `i, j < p`.
pub fn pascal_matrix(p: u64) -> Result<MatrixGF> {
    let field = PrimeField::new(p)?;
    if p > 64 {
        return Err(Error::TooLarge(format!("Pascal matrix of size {p} > 64")));
    }
    let s = p as usize;
    let mut m = Matrix::zeros(&field, s, s);
    for i in 0..s {
        m.set(i, 0, 1);
        for j in 1..=i {
            let v = field.add(m.get(i - 1, j - 1), m.get(i - 1, j));
            m.set(i, j, v);
        }
    }
    Ok(m)
}

/// Rank of a list of rows.
pub fn rank_of_rows<F: Field>(field: &F, rows: &[Vec<F::Elem>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    Matrix::from_rows(field, rows)
        .expect("rows of equal length")
        .rank()
}

fn bit_rank(rows: &mut [Vec<u64>], cols: usize) -> usize {
    let mut r = 0;
    for c in 0..cols {
        let (w, b) = (c / 64, 1u64 << (c % 64));
        let Some(pr) = (r..rows.len()).find(|&i| rows[i][w] & b != 0) else {
            continue;
        };
        rows.swap(r, pr);
        let (head, tail) = rows.split_at_mut(r + 1);
        let pivot = &head[r];
        for row in tail.iter_mut() {
            if row[w] & b != 0 {
                for (x, y) in row[w..].iter_mut().zip(&pivot[w..]) {
                    *x ^= y;
                }
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

/// Result of offering a column to a [`ColumnSpace`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Insertion {
    /// The column extended the span.
    Independent,
    /// The column lies in the span of the earlier columns. When combinations are
    /// tracked, the payload holds coefficients `c_0..c_j` (for the columns inserted so
    /// far, this one last, with `c_j = 1`) such that `sum c_i col_i = 0`.
    Dependent(Option<Vec<u32>>),
}

struct BinVec {
    pivot: usize,
    bits: Vec<u64>,
    comb: Vec<u64>,
}

struct ModVec {
    pivot: usize,
    vals: Vec<u32>,
    comb: Vec<u32>,
}

enum Basis {
    Binary(Vec<BinVec>),
    Modular(Vec<ModVec>),
}

/// Span of a growing list of column vectors over `F_p`, kept in semi-echelon form.
///
/// Adding a column costs `O(rank * len)` word operations. Over `F_2` columns are bit
/// vectors; otherwise entries are reduced lazily, since `rank * (p-1)^2` stays far
/// below `u32::MAX` for the small primes this crate works with.
pub struct ColumnSpace {
    field: PrimeField,
    len: usize,
    track: bool,
    inserted: usize,
    basis: Basis,
}

impl ColumnSpace {
    /// Columns of length `len`; `track` records combinations for dependent columns.
    pub fn new(field: &PrimeField, len: usize, track: bool) -> Self {
        let basis = if field.p() == 2 {
            Basis::Binary(Vec::new())
        } else {
            Basis::Modular(Vec::new())
        };
        Self {
            field: *field,
            len,
            track,
            inserted: 0,
            basis,
        }
    }

    pub fn rank(&self) -> usize {
        match &self.basis {
            Basis::Binary(b) => b.len(),
            Basis::Modular(b) => b.len(),
        }
    }

    pub fn inserted(&self) -> usize {
        self.inserted
    }

    /// Offers the column whose entry `i` is `entry(i)` (already reduced mod p).
    pub fn insert(&mut self, entry: impl Fn(usize) -> u32) -> Insertion {
        let j = self.inserted;
        self.inserted += 1;
        let p = self.field.p();
        let track = self.track;
        let len = self.len;
        match &mut self.basis {
            Basis::Binary(basis) => {
                let words = len.div_ceil(64);
                let mut bits = vec![0u64; words];
                for i in 0..len {
                    if entry(i) & 1 == 1 {
                        bits[i / 64] |= 1 << (i % 64);
                    }
                }
                let mut comb = if track {
                    let mut c = vec![0u64; (j + 1).div_ceil(64)];
                    c[j / 64] |= 1 << (j % 64);
                    c
                } else {
                    Vec::new()
                };
                for b in basis.iter() {
                    if bits[b.pivot / 64] >> (b.pivot % 64) & 1 == 1 {
                        for (x, y) in bits.iter_mut().zip(&b.bits) {
                            *x ^= y;
                        }
                        for (x, y) in comb.iter_mut().zip(&b.comb) {
                            *x ^= y;
                        }
                    }
                }
                match bits.iter().position(|&w| w != 0) {
                    Some(w) => {
                        let pivot = w * 64 + bits[w].trailing_zeros() as usize;
                        basis.push(BinVec { pivot, bits, comb });
                        Insertion::Independent
                    }
                    None => Insertion::Dependent(track.then(|| {
                        (0..=j)
                            .map(|i| (comb[i / 64] >> (i % 64) & 1) as u32)
                            .collect()
                    })),
                }
            }
            Basis::Modular(basis) => {
                let mut vals: Vec<u32> = (0..len).map(&entry).collect();
                let mut comb = if track {
                    let mut c = vec![0u32; j + 1];
                    c[j] = 1;
                    c
                } else {
                    Vec::new()
                };
                // entries grow by at most (p-1)^2 per update before the final reduction
                let step = (p as u64 - 1) * (p as u64 - 1);
                let budget = (u32::MAX as u64 - p as u64) / step.max(1);
                let mut pending = 0u64;
                for b in basis.iter() {
                    let c = vals[b.pivot] % p;
                    if c == 0 {
                        continue;
                    }
                    if pending == budget {
                        vals.iter_mut().for_each(|v| *v %= p);
                        comb.iter_mut().for_each(|v| *v %= p);
                        pending = 0;
                    }
                    let m = p - c;
                    for (x, &y) in vals.iter_mut().zip(&b.vals) {
                        *x += m * y;
                    }
                    for (x, &y) in comb.iter_mut().zip(&b.comb) {
                        *x += m * y;
                    }
                    pending += 1;
                }
                vals.iter_mut().for_each(|v| *v %= p);
                comb.iter_mut().for_each(|v| *v %= p);
                match vals.iter().position(|&v| v != 0) {
                    Some(pivot) => {
                        let inv = self.field.inv(vals[pivot]).expect("nonzero");
                        if inv != 1 {
                            for v in vals.iter_mut().chain(comb.iter_mut()) {
                                *v = self.field.mul(*v, inv);
                            }
                        }
                        basis.push(ModVec { pivot, vals, comb });
                        Insertion::Independent
                    }
                    None => Insertion::Dependent(track.then_some(comb)),
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_prime_field;

    fn gf(p: u64) -> PrimeField {
        make_prime_field(p).unwrap()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Matrix::identity(&gf(2), 3).rank(), 3);
        let ones = Matrix::from_ints(&gf(3), &vec![vec![1; 4]; 4]).unwrap();
        assert_eq!(ones.rank(), 1);
        // psi_3(1), psi_3(3), psi_3(5) over F_5
        let psi =
            Matrix::from_ints(&gf(5), &[vec![1, 1, 0], vec![1, 3, 3], vec![1, 5, 10]]).unwrap();
        assert_eq!(psi.rank(), 3);
    }

    #[test]
    fn nullspace_examples() {
        assert!(Matrix::identity(&gf(3), 4).nullspace_basis().is_empty());
        let z = Matrix::zeros(&gf(5), 2, 3);
        assert_eq!(
            z.nullspace_basis(),
            vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]
        );
        let a = Matrix::from_ints(&gf(2), &[vec![1, 1]]).unwrap();
        assert_eq!(a.nullspace_basis(), vec![vec![1, 1]]);
    }

    #[test]
    fn nullspace_is_kernel_and_normalized() {
        let f = gf(3);
        let a = Matrix::from_ints(
            &f,
            &[
                vec![1, 2, 0, 1, 1],
                vec![2, 1, 0, 2, 2],
                vec![0, 0, 1, 1, 0],
            ],
        )
        .unwrap();
        let basis = a.nullspace_basis();
        assert_eq!(basis.len(), 5 - a.rank());
        let mut last = None;
        for v in &basis {
            assert!(a.mul_vec(v).iter().all(|&x| x == 0));
            let lead = v.iter().position(|&x| x != 0).unwrap();
            assert_eq!(v[lead], 1);
            assert!(last.is_none_or(|l| l < lead));
            last = Some(lead);
        }
    }

    #[test]
    fn det_examples() {
        let psi =
            Matrix::from_ints(&gf(5), &[vec![1, 1, 0], vec![1, 3, 3], vec![1, 5, 10]]).unwrap();
        assert_eq!(psi.det().unwrap(), 3);
        assert_eq!(Matrix::identity(&gf(7), 5).det().unwrap(), 1);
        let ones = Matrix::from_ints(&gf(7), &vec![vec![1; 2]; 2]).unwrap();
        assert_eq!(ones.det().unwrap(), 0);
        let rect = Matrix::zeros(&gf(7), 2, 3);
        assert_eq!(rect.det(), Err(Error::NotSquare { rows: 2, cols: 3 }));
    }

    #[test]
    fn pascal_examples() {
        let p2 = pascal_matrix(2).unwrap();
        assert_eq!(
            p2,
            Matrix::from_ints(&gf(2), &[vec![1, 0], vec![1, 1]]).unwrap()
        );
        let p3 = pascal_matrix(3).unwrap();
        assert_eq!(
            p3,
            Matrix::from_ints(&gf(3), &[vec![1, 0, 0], vec![1, 1, 0], vec![1, 2, 1]]).unwrap()
        );
        assert_eq!(pascal_matrix(5).unwrap().row(4), &[1, 4, 1, 4, 1]);
        assert!(matches!(pascal_matrix(67), Err(Error::TooLarge(_))));
        assert!(matches!(pascal_matrix(4), Err(Error::NotPrime(4))));
    }

    #[test]
    fn strong_nondegenerate_examples() {
        assert!(pascal_matrix(2).unwrap().is_strong_nondegenerate().unwrap());
        assert!(!Matrix::identity(&gf(2), 2)
            .is_strong_nondegenerate()
            .unwrap());
        for p in [3, 5, 7] {
            assert!(pascal_matrix(p).unwrap().is_strong_nondegenerate().unwrap());
        }
        assert!(Matrix::zeros(&gf(2), 2, 3)
            .is_strong_nondegenerate()
            .is_err());
    }

    #[test]
    fn weak_nondegenerate_examples() {
        let p2 = pascal_matrix(2).unwrap();
        let t = tensor(&p2, &p2).unwrap();
        assert!(t.is_weak_nondegenerate().unwrap());
        assert!(t.is_weak_nondegenerate_direct().unwrap());
        for s in 2..5 {
            let id = Matrix::identity(&gf(3), s);
            assert!(!id.is_weak_nondegenerate().unwrap());
            assert!(!id.is_weak_nondegenerate_direct().unwrap());
        }
        assert!(pascal_matrix(7).unwrap().is_weak_nondegenerate().unwrap());
    }

    #[test]
    fn weak_check_agrees_with_direct_check() {
        let f = gf(3);
        // every 3x3 matrix over F_3 with a given first column pattern
        for code in (0..3u32.pow(9)).step_by(7) {
            let mut c = code;
            let data: Vec<u32> = (0..9)
                .map(|_| {
                    let v = c % 3;
                    c /= 3;
                    v
                })
                .collect();
            let m = Matrix::new(&f, 3, 3, data).unwrap();
            assert_eq!(
                m.is_weak_nondegenerate().unwrap(),
                m.is_weak_nondegenerate_direct().unwrap()
            );
        }
    }

    #[test]
    fn tensor_examples() {
        let f = gf(5);
        let b = Matrix::from_ints(&f, &[vec![1, 2], vec![3, 4]]).unwrap();
        let t = tensor(&Matrix::identity(&f, 2), &b).unwrap();
        let want = Matrix::from_ints(
            &f,
            &[
                vec![1, 2, 0, 0],
                vec![3, 4, 0, 0],
                vec![0, 0, 1, 2],
                vec![0, 0, 3, 4],
            ],
        )
        .unwrap();
        assert_eq!(t, want);
        assert_eq!(tensor(&b, &Matrix::identity(&f, 1)).unwrap(), b);
        let p2 = pascal_matrix(2).unwrap();
        let t = tensor(&p2, &p2).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                // C(i, j) mod 2, from Pascal's rule
                let c = if j <= i {
                    (0..j).fold(1u64, |acc, k| acc * (i - k) as u64 / (k + 1) as u64)
                } else {
                    0
                };
                assert_eq!(t.get(i, j) as u64, c % 2);
            }
        }
        assert_eq!(tensor(&p2, &b), Err(Error::FieldMismatch));
    }

    #[test]
    fn column_space_matches_matrix_rank() {
        for p in [2u64, 3, 5] {
            let f = gf(p);
            for seed in 0..30u64 {
                let rows = 3 + (seed % 5) as usize;
                let cols = 2 + (seed % 7) as usize;
                let data: Vec<u32> = (0..rows * cols)
                    .map(|i| {
                        ((seed * 31 + i as u64 * 17 + i as u64 * i as u64) % (p + 1)) as u32
                            % p as u32
                    })
                    .collect();
                let m = Matrix::new(&f, rows, cols, data).unwrap();
                let mut cs = ColumnSpace::new(&f, rows, true);
                for c in 0..cols {
                    if let Insertion::Dependent(Some(comb)) = cs.insert(|r| m.get(r, c)) {
                        assert_eq!(comb[c], 1);
                        let mut v = comb.clone();
                        v.resize(cols, 0);
                        assert!(m.mul_vec(&v).iter().all(|&x| x == 0));
                    }
                }
                assert_eq!(cs.rank(), m.rank());
            }
        }
    }
}
