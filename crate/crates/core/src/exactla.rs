//! Exact integer and rational linear algebra.
//!
//! Everything here works over [`BigInt`] or [`BigRational`]; there is no
//! floating point anywhere in this module. Matrices are immutable values and
//! every operation returns a fresh matrix.

use std::fmt;
use std::ops::{Mul, Neg};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense row-major matrix over an exact ring.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    entries: Vec<T>,
}

pub type IntMatrix = Matrix<BigInt>;
pub type RatMatrix = Matrix<BigRational>;

impl<T> Matrix<T>
where
    T: Num + Clone,
{
    pub fn new(rows: usize, cols: usize, entries: Vec<T>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::EntryCount {
                rows,
                cols,
                expected: rows * cols,
                got: entries.len(),
            });
        }
        Ok(Matrix { rows, cols, entries })
    }

    /// Builds a matrix from nested rows. Rejects ragged and empty input.
    pub fn from_rows<S, R>(rows: impl IntoIterator<Item = R>) -> Result<Self>
    where
        R: IntoIterator<Item = S>,
        S: Into<T>,
    {
        let mut entries = Vec::new();
        let mut width = None;
        let mut count = 0;
        for (i, row) in rows.into_iter().enumerate() {
            let before = entries.len();
            entries.extend(row.into_iter().map(Into::into));
            let len = entries.len() - before;
            match width {
                None => width = Some(len),
                Some(w) if w != len => {
                    return Err(Error::RaggedRows {
                        row: i,
                        expected: w,
                        got: len,
                    })
                }
                _ => {}
            }
            count += 1;
        }
        let cols = width.unwrap_or(0);
        if count == 0 || cols == 0 {
            return Err(Error::EmptyMatrix);
        }
        Matrix::new(count, cols, entries)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = T::one();
        }
        m
    }

    pub fn from_diagonal(diag: &[T]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n, n);
        for (i, d) in diag.iter().enumerate() {
            m.entries[i * n + i] = d.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn diagonal(&self) -> Vec<T> {
        (0..self.rows.min(self.cols))
            .map(|i| self.get(i, i).clone())
            .collect()
    }

    /// Returns a copy with entry `(i, j)` replaced.
    pub fn with_entry(&self, i: usize, j: usize, value: T) -> Self {
        let mut m = self.clone();
        m.entries[i * self.cols + j] = value;
        m
    }

    pub fn map<U, F>(&self, f: F) -> Matrix<U>
    where
        F: FnMut(&T) -> U,
    {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).clone());
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (i + 1..self.cols).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn trace(&self) -> T {
        self.diagonal()
            .into_iter()
            .fold(T::zero(), |acc, x| acc + x)
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let idx = i * rhs.cols + j;
                        out.entries[idx] = out.entries[idx].clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[T]) -> Result<Vec<T>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect())
    }

    /// `block_diag(A, B) = [[A, 0], [0, B]]`.
    pub fn block_diag(&self, other: &Self) -> Self {
        let rows = self.rows + other.rows;
        let cols = self.cols + other.cols;
        let mut m = Self::zeros(rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.entries[i * cols + j] = self.get(i, j).clone();
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                m.entries[(self.rows + i) * cols + self.cols + j] = other.get(i, j).clone();
            }
        }
        m
    }

    /// `Pᵀ · self · P`.
    pub fn congruent(&self, p: &Self) -> Result<Self> {
        p.transpose().checked_mul(self)?.checked_mul(p)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[target] += factor * row[source]
    fn add_row_multiple(&mut self, target: usize, source: usize, factor: &T) {
        for j in 0..self.cols {
            let s = self.entries[source * self.cols + j].clone();
            let idx = target * self.cols + j;
            self.entries[idx] = self.entries[idx].clone() + factor.clone() * s;
        }
    }

    /// col[target] += factor * col[source]
    fn add_col_multiple(&mut self, target: usize, source: usize, factor: &T) {
        for i in 0..self.rows {
            let s = self.entries[i * self.cols + source].clone();
            let idx = i * self.cols + target;
            self.entries[idx] = self.entries[idx].clone() + factor.clone() * s;
        }
    }

    fn scale_row(&mut self, row: usize, factor: &T) {
        for j in 0..self.cols {
            let idx = row * self.cols + j;
            self.entries[idx] = self.entries[idx].clone() * factor.clone();
        }
    }
}

impl<T: Num + Clone> Mul for &Matrix<T> {
    type Output = Matrix<T>;

    /// Panics on incompatible shapes; use [`Matrix::checked_mul`] otherwise.
    fn mul(self, rhs: Self) -> Matrix<T> {
        self.checked_mul(rhs).expect("incompatible matrix shapes")
    }
}

impl<T: Num + Clone + Neg<Output = T>> Neg for &Matrix<T> {
    type Output = Matrix<T>;

    fn neg(self) -> Matrix<T> {
        self.map(|x| -x.clone())
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.entries[i * self.cols + j])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

impl<T: fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{}:\n{}", self.rows, self.cols, self)
    }
}

impl IntMatrix {
    pub fn to_rational(&self) -> RatMatrix {
        self.map(|x| BigRational::from_integer(x.clone()))
    }
}

impl RatMatrix {
    /// Some(integer matrix) when every entry is integral.
    pub fn to_integer(&self) -> Option<IntMatrix> {
        if self.entries.iter().all(|x| x.is_integer()) {
            Some(self.map(|x| x.to_integer()))
        } else {
            None
        }
    }
}

/// Smith normal form `U·A·V = S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnfResult {
    pub s: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
    /// `d₁ | d₂ | …`, length `min(rows, cols)`, zeros last.
    pub diagonal: Vec<BigInt>,
}

impl SnfResult {
    pub fn rank(&self) -> usize {
        self.diagonal.iter().filter(|d| !d.is_zero()).count()
    }
}

/// Smith normal form with transformation matrices.
///
/// Pivots on the smallest nonzero absolute value in the remaining block,
/// scanning row-major, so `U` and `V` are reproducible. `S` is canonical.
pub fn snf(a: &IntMatrix) -> Result<SnfResult> {
    if a.rows == 0 || a.cols == 0 {
        return Err(Error::EmptyMatrix);
    }
    let (m, n) = (a.rows, a.cols);
    let mut s = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);

    for t in 0..m.min(n) {
        while let Some((pi, pj)) = smallest_pivot(&s, t) {
            s.swap_rows(t, pi);
            u.swap_rows(t, pi);
            s.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let pivot = s.get(t, t).clone();
            let mut dirty = false;
            for i in t + 1..m {
                let entry = s.get(i, t).clone();
                if entry.is_zero() {
                    continue;
                }
                let q = -entry.div_floor(&pivot);
                s.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                dirty |= !s.get(i, t).is_zero();
            }
            for j in t + 1..n {
                let entry = s.get(t, j).clone();
                if entry.is_zero() {
                    continue;
                }
                let q = -entry.div_floor(&pivot);
                s.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                dirty |= !s.get(t, j).is_zero();
            }
            if dirty {
                continue;
            }
            // Pivot row and column are clear; enforce divisibility on the rest.
            let offender = (t + 1..m).find(|&i| (t + 1..n).any(|j| !s.get(i, j).is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    s.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if s.get(t, t).is_negative() {
            let minus_one = -BigInt::one();
            s.scale_row(t, &minus_one);
            u.scale_row(t, &minus_one);
        }
    }
    let diagonal = s.diagonal();
    Ok(SnfResult { s, u, v, diagonal })
}

fn smallest_pivot(s: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for i in t..s.rows {
        for j in t..s.cols {
            let x = s.get(i, j);
            if x.is_zero() {
                continue;
            }
            let ax = x.abs();
            if best.as_ref().is_none_or(|(_, _, b)| ax < *b) {
                best = Some((i, j, ax));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

/// Exact determinant by Bareiss fraction-free elimination.
pub fn determinant(a: &IntMatrix) -> Result<BigInt> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows,
            cols: a.cols,
        });
    }
    let n = a.rows;
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut m = a.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m.get(k, k).is_zero() {
            match (k + 1..n).find(|&i| !m.get(i, k).is_zero()) {
                Some(i) => {
                    m.swap_rows(k, i);
                    sign = -sign;
                }
                None => return Ok(BigInt::zero()),
            }
        }
        let pivot = m.get(k, k).clone();
        for i in k + 1..n {
            for j in k + 1..n {
                let val = (m.get(i, j) * &pivot - m.get(i, k) * m.get(k, j)) / &prev;
                m.entries[i * n + j] = val;
            }
        }
        prev = pivot;
    }
    Ok(sign * m.get(n - 1, n - 1).clone())
}

/// Rank over the rationals.
pub fn rank(a: &IntMatrix) -> usize {
    let mut m = a.to_rational();
    let mut r = 0;
    for c in 0..m.cols {
        let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
            continue;
        };
        m.swap_rows(r, p);
        let pivot = m.get(r, c).clone();
        for i in r + 1..m.rows {
            let f = -(m.get(i, c) / &pivot);
            if !f.is_zero() {
                m.add_row_multiple(i, r, &f);
            }
        }
        r += 1;
        if r == m.rows {
            break;
        }
    }
    r
}

/// `Pᵀ·G·P = D` over the rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatDiagonalization {
    pub d: RatMatrix,
    pub p: RatMatrix,
}

/// Diagonalizes a symmetric integer matrix by simultaneous row and column
/// operations over the rationals.
///
/// Zero pivot at `i` with some `G[i][j] ≠ 0` (first such `j > i`): row and
/// column `j` are added into `i`, or subtracted when adding would leave the
/// pivot zero. One of the two always yields `±2·G[i][j] + G[j][j] ≠ 0`.
pub fn congruent_diagonalize(g: &IntMatrix) -> Result<RatDiagonalization> {
    if !g.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let n = g.rows;
    let mut a = g.to_rational();
    let mut p = RatMatrix::identity(n);
    for i in 0..n {
        if a.get(i, i).is_zero() {
            let Some(j) = (i + 1..n).find(|&j| !a.get(i, j).is_zero()) else {
                continue;
            };
            let twice = a.get(i, j) * BigRational::from_integer(2.into());
            let factor = if (&twice + a.get(j, j)).is_zero() {
                -BigRational::one()
            } else {
                BigRational::one()
            };
            a.add_col_multiple(i, j, &factor);
            a.add_row_multiple(i, j, &factor);
            p.add_col_multiple(i, j, &factor);
        }
        let pivot = a.get(i, i).clone();
        for j in i + 1..n {
            if a.get(i, j).is_zero() {
                continue;
            }
            let c = -(a.get(i, j) / &pivot);
            a.add_col_multiple(j, i, &c);
            a.add_row_multiple(j, i, &c);
            p.add_col_multiple(j, i, &c);
        }
    }
    debug_assert!(a.is_diagonal());
    Ok(RatDiagonalization { d: a, p })
}

/// Inertia `(n₊, n₋, n₀)` of a symmetric matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Signature {
    pub fn new(positive: usize, negative: usize, zero: usize) -> Self {
        Signature {
            positive,
            negative,
            zero,
        }
    }

    /// `n₊ − n₋`.
    pub fn value(&self) -> i64 {
        self.positive as i64 - self.negative as i64
    }

    pub fn dimension(&self) -> usize {
        self.positive + self.negative + self.zero
    }
}

impl std::ops::Add for Signature {
    type Output = Signature;

    fn add(self, rhs: Signature) -> Signature {
        Signature::new(
            self.positive + rhs.positive,
            self.negative + rhs.negative,
            self.zero + rhs.zero,
        )
    }
}

impl serde::Serialize for Signature {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        (self.positive, self.negative, self.zero).serialize(serializer)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.positive, self.negative, self.zero)
    }
}

pub fn signature(g: &IntMatrix) -> Result<Signature> {
    let diag = congruent_diagonalize(g)?;
    let mut sig = Signature::default();
    for d in diag.d.diagonal() {
        if d.is_positive() {
            sig.positive += 1;
        } else if d.is_negative() {
            sig.negative += 1;
        } else {
            sig.zero += 1;
        }
    }
    Ok(sig)
}
