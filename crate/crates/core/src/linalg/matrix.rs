use std::fmt;
use std::ops::Index;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::combinatorics::Subset;
use crate::error::{Error, Result};

/// Dense matrix of arbitrary-precision integers, row-major, with optional
/// subset labels on rows and columns.
///
/// Equality compares dimensions and entries only; labels are metadata.
#[derive(Clone, Debug)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
    row_labels: Option<Vec<Subset>>,
    col_labels: Option<Vec<Subset>>,
}

impl PartialEq for IntMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.data == other.data
    }
}

impl Eq for IntMatrix {}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(IntMatrix {
            rows,
            cols,
            data,
            row_labels: None,
            col_labels: None,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
            row_labels: None,
            col_labels: None,
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| BigInt::from(u8::from(i == j)))
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        IntMatrix {
            rows,
            cols,
            data,
            row_labels: None,
            col_labels: None,
        }
    }

    /// Builds a matrix from row vectors; all rows must have the same length.
    /// An empty outer vector gives a 0×0 matrix.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch(format!(
                "ragged rows: {} vs {cols}",
                bad.len()
            )));
        }
        let data = rows.iter().flatten().cloned().map(Into::into).collect();
        Self::new(rows.len(), cols, data)
    }

    pub fn diagonal(rows: usize, cols: usize, diag: &[BigInt]) -> Result<Self> {
        if diag.len() > rows.min(cols) {
            return Err(Error::DimensionMismatch(format!(
                "{} diagonal entries for a {rows}x{cols} matrix",
                diag.len()
            )));
        }
        let mut m = Self::zeros(rows, cols);
        for (i, d) in diag.iter().enumerate() {
            m.set(i, i, d.clone());
        }
        Ok(m)
    }

    pub fn with_labels(
        mut self,
        row_labels: Option<Vec<Subset>>,
        col_labels: Option<Vec<Subset>>,
    ) -> Result<Self> {
        if row_labels.as_ref().is_some_and(|l| l.len() != self.rows)
            || col_labels.as_ref().is_some_and(|l| l.len() != self.cols)
        {
            return Err(Error::DimensionMismatch(
                "label count does not match matrix dimensions".into(),
            ));
        }
        self.row_labels = row_labels;
        self.col_labels = col_labels;
        Ok(self)
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

    pub fn row_labels(&self) -> Option<&[Subset]> {
        self.row_labels.as_deref()
    }

    pub fn col_labels(&self) -> Option<&[Subset]> {
        self.col_labels.as_deref()
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [BigInt] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn to_row_vecs(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub(crate) fn from_row_vecs(rows: usize, cols: usize, v: Vec<Vec<BigInt>>) -> Self {
        let data: Vec<BigInt> = v.into_iter().flatten().collect();
        debug_assert_eq!(data.len(), rows * cols);
        IntMatrix {
            rows,
            cols,
            data,
            row_labels: None,
            col_labels: None,
        }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone());
        t.row_labels = self.col_labels.clone();
        t.col_labels = self.row_labels.clone();
        t
    }

    /// Entries as `i64` if they all fit.
    pub fn to_i64(&self) -> Option<Vec<i64>> {
        self.data.iter().map(ToPrimitive::to_i64).collect()
    }

    /// Exact product. Runs on `i128` accumulators when every entry fits in
    /// `i64`, otherwise on `BigInt`.
    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = match (self.to_i64(), other.to_i64()) {
            (Some(a), Some(b)) => self
                .mul_small(&a, &b, other.cols)
                .unwrap_or_else(|| self.mul_big(other)),
            _ => self.mul_big(other),
        };
        out.row_labels = self.row_labels.clone();
        out.col_labels = other.col_labels.clone();
        Ok(out)
    }

    fn mul_small(&self, a: &[i64], b: &[i64], n: usize) -> Option<IntMatrix> {
        let mut acc = vec![0i128; self.rows * n];
        for i in 0..self.rows {
            let out_row = &mut acc[i * n..(i + 1) * n];
            for k in 0..self.cols {
                let x = a[i * self.cols + k];
                if x == 0 {
                    continue;
                }
                let x = i128::from(x);
                for (o, &y) in out_row.iter_mut().zip(&b[k * n..(k + 1) * n]) {
                    if y != 0 {
                        *o = o.checked_add(x * i128::from(y))?;
                    }
                }
            }
        }
        Some(IntMatrix::new(self.rows, n, acc.into_iter().map(BigInt::from).collect()).unwrap())
    }

    fn mul_big(&self, other: &IntMatrix) -> IntMatrix {
        let n = other.cols;
        let mut data = vec![BigInt::zero(); self.rows * n];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let x = self.get(i, k);
                if x.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let y = other.get(k, j);
                    if !y.is_zero() {
                        data[i * n + j] += x * y;
                    }
                }
            }
        }
        IntMatrix::new(self.rows, n, data).unwrap()
    }

    pub fn scale_rows(&self, factors: &[BigInt]) -> Result<IntMatrix> {
        if factors.len() != self.rows {
            return Err(Error::DimensionMismatch("row factor count".into()));
        }
        let mut out = self.clone();
        for (i, f) in factors.iter().enumerate() {
            for v in out.row_mut(i) {
                *v *= f;
            }
        }
        Ok(out)
    }

    /// Vertical concatenation, preserving part order. Row labels are kept only
    /// if every part carries them; column labels come from the first part.
    pub fn stack(parts: &[IntMatrix]) -> Result<IntMatrix> {
        let Some(first) = parts.first() else {
            return Ok(IntMatrix::zeros(0, 0));
        };
        let cols = first.cols;
        if let Some(bad) = parts.iter().find(|p| p.cols != cols) {
            return Err(Error::DimensionMismatch(format!(
                "stacking parts with {} and {cols} columns",
                bad.cols
            )));
        }
        let rows = parts.iter().map(|p| p.rows).sum();
        let data = parts.iter().flat_map(|p| p.data.iter().cloned()).collect();
        let row_labels = parts
            .iter()
            .map(|p| p.row_labels.clone())
            .collect::<Option<Vec<_>>>()
            .map(|v| v.concat());
        let mut out = IntMatrix::new(rows, cols, data)?;
        out.row_labels = row_labels;
        out.col_labels = first.col_labels.clone();
        Ok(out)
    }

    /// The submatrix on the given row and column indices, in that order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> IntMatrix {
        let mut out = Self::from_fn(rows.len(), cols.len(), |i, j| {
            self.get(rows[i], cols[j]).clone()
        });
        out.row_labels = self
            .row_labels
            .as_ref()
            .map(|l| rows.iter().map(|&i| l[i].clone()).collect());
        out.col_labels = self
            .col_labels
            .as_ref()
            .map(|l| cols.iter().map(|&j| l[j].clone()).collect());
        out
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<BigInt> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "determinant of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::from(1));
        }
        let mut a = self.to_row_vecs();
        let mut sign = 1;
        let mut prev = BigInt::from(1);
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                    a[i][j] = v;
                }
            }
            prev = a[k][k].clone();
        }
        let det = a[n - 1][n - 1].clone();
        Ok(if sign < 0 { -det } else { det })
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;

    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        self.get(i, j)
    }
}

impl fmt::Display for IntMatrix {
    /// Right-aligned columns, one row per line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strs: Vec<String> = self.data.iter().map(ToString::to_string).collect();
        let width = strs.iter().map(String::len).max().unwrap_or(0);
        for i in 0..self.rows {
            f.write_str("[")?;
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{:>width$}", strs[i * self.cols + j])?;
            }
            f.write_str("]")?;
            if i + 1 < self.rows {
                f.write_str("\n")?;
            }
        }
        Ok(())
    }
}
