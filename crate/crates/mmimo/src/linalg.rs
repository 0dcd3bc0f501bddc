//! Minimal dense complex-matrix kernel.
//!
//! Everything the rate analysis needs reduces to Hermitian transposes, Gram
//! products and the inversion of a Hermitian positive-definite (HPD) Gram
//! matrix, so that is all this module provides. The inverse goes through a
//! complex Cholesky factorization rather than generic LU: it halves the work
//! and turns rank deficiency into a clean "not positive definite" signal.

use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: left is {ar}x{ac}, right is {br}x{bc}")]
    DimMismatch { ar: usize, ac: usize, br: usize, bc: usize },
    #[error("entry count {got} does not match {rows}x{cols}")]
    BadLength { rows: usize, cols: usize, got: usize },
    #[error("non-finite entry at ({i}, {j})")]
    NonFinite { i: usize, j: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not hermitian: |a[{i}][{j}] - conj(a[{j}][{i}])| = {dev:.3e} exceeds tolerance {tol:.3e}")]
    NotHermitian { i: usize, j: usize, dev: f64, tol: f64 },
    #[error("matrix is not positive definite: pivot {pivot:.6e} at row {row} is below floor {floor:.6e}")]
    NotPositiveDefinite { row: usize, pivot: f64, floor: f64 },
}

/// Row-major dense complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries, rejecting NaN/Inf.
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self, LinalgError> {
        if data.len() != rows * cols {
            return Err(LinalgError::BadLength { rows, cols, got: data.len() });
        }
        for (idx, z) in data.iter().enumerate() {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(LinalgError::NonFinite { i: idx / cols, j: idx % cols });
            }
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Complex64::new(0.0, 0.0); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.cols + j] = v;
    }

    /// Conjugate transpose.
    pub fn hermitian(&self) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            let row = &self.data[i * self.cols..(i + 1) * self.cols];
            for (j, z) in row.iter().enumerate() {
                out.data[j * self.rows + i] = z.conj();
            }
        }
        out
    }

    /// Standard matrix product.
    pub fn matmul(&self, b: &ComplexMatrix) -> Result<ComplexMatrix, LinalgError> {
        if self.cols != b.rows {
            return Err(LinalgError::DimMismatch {
                ar: self.rows,
                ac: self.cols,
                br: b.rows,
                bc: b.cols,
            });
        }
        let mut out = ComplexMatrix::zeros(self.rows, b.cols);
        for i in 0..self.rows {
            let arow = &self.data[i * self.cols..(i + 1) * self.cols];
            let orow = &mut out.data[i * b.cols..(i + 1) * b.cols];
            for (t, &a) in arow.iter().enumerate() {
                let brow = &b.data[t * b.cols..(t + 1) * b.cols];
                for (o, &bv) in orow.iter_mut().zip(brow.iter()) {
                    *o += a * bv;
                }
            }
        }
        Ok(out)
    }

    /// Sum of squared moduli of all entries.
    pub fn frobenius_norm_sq(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Squared Euclidean norm of column `j`. Panics if `j` is out of range.
    pub fn column_norm_sq(&self, j: usize) -> f64 {
        assert!(j < self.cols, "column index {} out of range for {} columns", j, self.cols);
        (0..self.rows).map(|i| self.data[i * self.cols + j].norm_sqr()).sum()
    }

    /// Unconjugated product of row `i` of `a` with column `j` of `b`.
    /// This is the h_i^T g_j pairing the SINR expressions use; no conjugate
    /// is applied to either factor.
    pub fn row_dot_col(&self, i: usize, b: &ComplexMatrix, j: usize) -> Complex64 {
        assert_eq!(self.cols, b.rows, "inner dimensions differ");
        assert!(i < self.rows && j < b.cols, "row {i} or column {j} out of range");
        let mut s = Complex64::new(0.0, 0.0);
        for t in 0..self.cols {
            s += self.data[i * self.cols + t] * b.data[t * b.cols + j];
        }
        s
    }

    /// Inverse of a Hermitian positive-definite matrix via complex Cholesky.
    ///
    /// The input must be Hermitian within a relative tolerance of 1e-10. A
    /// factorization pivot below 1e-12 times the largest diagonal entry is
    /// reported as "not positive definite"; callers hitting this on a Gram
    /// matrix should treat the draw as degenerate (or reconsider K > M).
    pub fn invert_hpd(&self) -> Result<ComplexMatrix, LinalgError> {
        let n = self.rows;
        if self.rows != self.cols {
            return Err(LinalgError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let scale = self.data.iter().map(|z| z.norm()).fold(0.0f64, f64::max);
        let herm_tol = 1e-10 * scale.max(1.0);
        for i in 0..n {
            for j in i..n {
                let dev = (self.get(i, j) - self.get(j, i).conj()).norm();
                if dev > herm_tol {
                    return Err(LinalgError::NotHermitian { i, j, dev, tol: herm_tol });
                }
            }
        }
        let max_diag = (0..n).map(|i| self.get(i, i).re).fold(f64::NEG_INFINITY, f64::max);
        let floor = 1e-12 * max_diag;
        // NaN pivots must fail, so the comparisons reject anything not provably positive
        if max_diag.is_nan() || max_diag <= 0.0 {
            return Err(LinalgError::NotPositiveDefinite { row: 0, pivot: max_diag, floor });
        }

        // lower-triangular L with A = L L^H
        let mut l = vec![Complex64::new(0.0, 0.0); n * n];
        for j in 0..n {
            let mut d = self.get(j, j).re;
            for t in 0..j {
                d -= l[j * n + t].norm_sqr();
            }
            if d.is_nan() || d <= floor {
                return Err(LinalgError::NotPositiveDefinite { row: j, pivot: d, floor });
            }
            let ljj = d.sqrt();
            l[j * n + j] = Complex64::new(ljj, 0.0);
            for i in (j + 1)..n {
                let mut s = self.get(i, j);
                for t in 0..j {
                    s -= l[i * n + t] * l[j * n + t].conj();
                }
                l[i * n + j] = s / ljj;
            }
        }

        // Y = L^{-1} by forward substitution, then A^{-1} = Y^H Y.
        let mut y = vec![Complex64::new(0.0, 0.0); n * n];
        for j in 0..n {
            y[j * n + j] = Complex64::new(1.0 / l[j * n + j].re, 0.0);
            for i in (j + 1)..n {
                let mut s = Complex64::new(0.0, 0.0);
                for t in j..i {
                    s += l[i * n + t] * y[t * n + j];
                }
                y[i * n + j] = -s / l[i * n + i].re;
            }
        }
        let mut inv = ComplexMatrix::zeros(n, n);
        for a in 0..n {
            for b in a..n {
                let mut s = Complex64::new(0.0, 0.0);
                // y is lower triangular: rows below max(a, b) contribute
                for t in b..n {
                    s += y[t * n + a].conj() * y[t * n + b];
                }
                inv.data[a * n + b] = s;
                inv.data[b * n + a] = s.conj();
            }
        }
        Ok(inv)
    }
}
