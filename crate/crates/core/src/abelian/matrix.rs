//! Dense integer matrices with checked 64-bit arithmetic.
//!
//! Every arithmetic operation that can overflow goes through the `checked_*`
//! helpers and surfaces [`AbelianError::Overflow`] instead of wrapping.

use std::fmt;
use std::ops::Index;

use serde::{Deserialize, Serialize};

use super::AbelianError;

pub(crate) fn add(a: i64, b: i64) -> Result<i64, AbelianError> {
    a.checked_add(b).ok_or(AbelianError::Overflow)
}

pub(crate) fn sub(a: i64, b: i64) -> Result<i64, AbelianError> {
    a.checked_sub(b).ok_or(AbelianError::Overflow)
}

pub(crate) fn mul(a: i64, b: i64) -> Result<i64, AbelianError> {
    a.checked_mul(b).ok_or(AbelianError::Overflow)
}

pub(crate) fn neg(a: i64) -> Result<i64, AbelianError> {
    a.checked_neg().ok_or(AbelianError::Overflow)
}

/// `a - k * b`, checked.
pub(crate) fn sub_mul(a: i64, k: i64, b: i64) -> Result<i64, AbelianError> {
    sub(a, mul(k, b)?)
}

/// Row-major dense matrix over ℤ.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<i64>) -> Result<Self, AbelianError> {
        if data.len() != rows * cols {
            return Err(AbelianError::Shape(format!(
                "{} entries supplied for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(IntMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn diagonal(rows: usize, cols: usize, diag: &[i64]) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (i, &d) in diag.iter().enumerate().take(rows.min(cols)) {
            m.data[i * cols + i] = d;
        }
        m
    }

    /// Builds a matrix from row slices.
    ///
    /// Panics if the rows are ragged. An empty slice gives a 0×0 matrix.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            assert_eq!(r.len(), cols, "ragged rows in IntMatrix::from_rows");
            data.extend_from_slice(r);
        }
        IntMatrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn column_vector(v: &[i64]) -> Self {
        IntMatrix {
            rows: v.len(),
            cols: 1,
            data: v.to_vec(),
        }
    }

    pub fn from_columns<C: AsRef<[i64]>>(rows: usize, cols: &[C]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            let c = c.as_ref();
            assert_eq!(c.len(), rows, "column length mismatch");
            for (i, &x) in c.iter().enumerate() {
                m.data[i * m.cols + j] = x;
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[i64] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: i64) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == i64::from(i == j)))
    }

    /// True when every off-diagonal entry is zero.
    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j) == 0))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j);
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<Self, AbelianError> {
        if self.cols != other.rows {
            return Err(AbelianError::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * out.cols + j;
                    out.data[idx] = add(out.data[idx], mul(a, other.get(k, j))?)?;
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[i64]) -> Result<Vec<i64>, AbelianError> {
        Ok(self.mul(&Self::column_vector(v))?.data)
    }

    pub fn add(&self, other: &IntMatrix) -> Result<Self, AbelianError> {
        self.zip_with(other, add)
    }

    pub fn sub(&self, other: &IntMatrix) -> Result<Self, AbelianError> {
        self.zip_with(other, sub)
    }

    pub fn neg(&self) -> Result<Self, AbelianError> {
        self.scale(-1)
    }

    pub fn scale(&self, k: i64) -> Result<Self, AbelianError> {
        let data = self
            .data
            .iter()
            .map(|&x| mul(k, x))
            .collect::<Result<_, _>>()?;
        Ok(IntMatrix { data, ..*self })
    }

    fn zip_with(
        &self,
        other: &IntMatrix,
        op: fn(i64, i64) -> Result<i64, AbelianError>,
    ) -> Result<Self, AbelianError> {
        if self.shape() != other.shape() {
            return Err(AbelianError::Shape(format!(
                "shape mismatch {:?} vs {:?}",
                self.shape(),
                other.shape()
            )));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| op(a, b))
            .collect::<Result<_, _>>()?;
        Ok(IntMatrix { data, ..*self })
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &IntMatrix) -> Result<Self, AbelianError> {
        if self.rows != other.rows {
            return Err(AbelianError::Shape(format!(
                "hstack of {} rows with {} rows",
                self.rows, other.rows
            )));
        }
        let mut out = Self::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j));
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j));
            }
        }
        Ok(out)
    }

    /// `[self; other]`.
    pub fn vstack(&self, other: &IntMatrix) -> Result<Self, AbelianError> {
        if self.cols != other.cols {
            return Err(AbelianError::Shape(format!(
                "vstack of {} cols with {} cols",
                self.cols, other.cols
            )));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(IntMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn block_diag(blocks: &[&IntMatrix]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(r0 + i, c0 + j, b.get(i, j));
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &IntMatrix) -> Result<Self, AbelianError> {
        let mut out = Self::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.set(i * other.rows + k, j * other.cols + l, mul(a, other.get(k, l))?);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Self {
        let mut out = Self::zeros(rows.len(), cols.len());
        for (oi, i) in rows.clone().enumerate() {
            for (oj, j) in cols.clone().enumerate() {
                out.set(oi, oj, self.get(i, j));
            }
        }
        out
    }

    /// Exact determinant by fraction-free (Bareiss) elimination in `i128`.
    pub fn determinant(&self) -> Result<i64, AbelianError> {
        if !self.is_square() {
            return Err(AbelianError::Shape(format!(
                "determinant of non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(1);
        }
        let mut a: Vec<Vec<i128>> = (0..n)
            .map(|i| self.row(i).iter().map(|&x| i128::from(x)).collect())
            .collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if a[k][k] == 0 {
                match (k + 1..n).find(|&i| a[i][k] != 0) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return Ok(0),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = a[i][j]
                        .checked_mul(a[k][k])
                        .and_then(|x| x.checked_sub(a[i][k].checked_mul(a[k][j])?))
                        .ok_or(AbelianError::Overflow)?;
                    a[i][j] = num / prev;
                }
                a[i][k] = 0;
            }
            prev = a[k][k];
        }
        i64::try_from(sign * a[n - 1][n - 1]).map_err(|_| AbelianError::Overflow)
    }

    pub fn is_unimodular(&self) -> bool {
        self.is_square() && matches!(self.determinant(), Ok(1) | Ok(-1))
    }

    // Elementary operations, used by the normal-form routines.

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row `dst` -= k * row `src`
    pub(crate) fn row_sub_mul(&mut self, dst: usize, k: i64, src: usize) -> Result<(), AbelianError> {
        if k == 0 {
            return Ok(());
        }
        for j in 0..self.cols {
            let v = sub_mul(self.get(dst, j), k, self.get(src, j))?;
            self.set(dst, j, v);
        }
        Ok(())
    }

    /// column `dst` -= k * column `src`
    pub(crate) fn col_sub_mul(&mut self, dst: usize, k: i64, src: usize) -> Result<(), AbelianError> {
        if k == 0 {
            return Ok(());
        }
        for i in 0..self.rows {
            let v = sub_mul(self.get(i, dst), k, self.get(i, src))?;
            self.set(i, dst, v);
        }
        Ok(())
    }

    pub(crate) fn negate_row(&mut self, i: usize) -> Result<(), AbelianError> {
        for j in 0..self.cols {
            let v = neg(self.get(i, j))?;
            self.set(i, j, v);
        }
        Ok(())
    }

    pub(crate) fn negate_col(&mut self, j: usize) -> Result<(), AbelianError> {
        for i in 0..self.rows {
            let v = neg(self.get(i, j))?;
            self.set(i, j, v);
        }
        Ok(())
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = i64;

    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        &self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix{}x{}{:?}", self.rows, self.cols, self.to_rows())
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}
