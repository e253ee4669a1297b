use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Deref, Index, IndexMut, Mul, Sub};

use crate::{math, Error, Result, C64};

/// Relative tolerance on `‖A − A*‖₂` for a matrix to count as Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// Dense complex matrix stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidParameter("matrix dimensions must be positive"));
        }
        if data.len() != rows * cols {
            return Err(Error::BadEntryCount {
                expected: rows * cols,
                found: data.len(),
            });
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![C64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Real matrix from row slices; panics on ragged input.
    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Self::from_fn(rows.len(), cols, |i, j| C64::new(rows[i][j], 0.0))
    }

    pub fn diagonal(values: &[f64]) -> Self {
        let n = values.len();
        let mut m = Self::zeros(n, n);
        for (i, &v) in values.iter().enumerate() {
            m.data[i * n + i] = C64::new(v, 0.0);
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [C64] {
        &mut self.data
    }

    pub fn into_vec(self) -> Vec<C64> {
        self.data
    }

    pub fn row(&self, i: usize) -> &[C64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub(crate) fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    pub(crate) fn require_same_shape(&self, other: &Matrix) -> Result<()> {
        if self.rows == other.rows && self.cols == other.cols {
            Ok(())
        } else {
            Err(Error::ShapeMismatch {
                expected: (self.rows, self.cols),
                found: (other.rows, other.cols),
            })
        }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn scale(&self, s: C64) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn scale_real(&self, s: f64) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn try_add(&self, other: &Matrix) -> Result<Matrix> {
        self.require_same_shape(other)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn try_sub(&self, other: &Matrix) -> Result<Matrix> {
        self.require_same_shape(other)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    /// `self += s * other`, shapes must agree.
    pub fn add_scaled(&mut self, s: C64, other: &Matrix) -> Result<()> {
        self.require_same_shape(other)?;
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += s * b;
        }
        Ok(())
    }

    fn zip_with(&self, other: &Matrix, f: impl Fn(C64, C64) -> C64) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f(a, b)).collect(),
        }
    }

    pub fn try_mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch {
                expected: (self.cols, other.cols),
                found: (other.rows, other.cols),
            });
        }
        let (n, k, m) = (self.rows, self.cols, other.cols);
        let mut out = vec![C64::new(0.0, 0.0); n * m];
        for i in 0..n {
            let out_row = &mut out[i * m..(i + 1) * m];
            for l in 0..k {
                let a = self.data[i * k + l];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                let b_row = &other.data[l * m..(l + 1) * m];
                for (o, b) in out_row.iter_mut().zip(b_row) {
                    *o += a * b;
                }
            }
        }
        Ok(Matrix {
            rows: n,
            cols: m,
            data: out,
        })
    }

    pub fn trace(&self) -> Result<C64> {
        let n = self.require_square()?;
        Ok((0..n).map(|i| self.data[i * n + i]).sum())
    }

    /// `tr(self · other)` in `O(n²)` without forming the product.
    pub fn trace_of_product(&self, other: &Matrix) -> Result<C64> {
        if self.cols != other.rows || self.rows != other.cols {
            return Err(Error::ShapeMismatch {
                expected: (self.cols, self.rows),
                found: (other.rows, other.cols),
            });
        }
        let mut acc = C64::new(0.0, 0.0);
        for i in 0..self.rows {
            for l in 0..self.cols {
                acc += self.data[i * self.cols + l] * other.data[l * other.cols + i];
            }
        }
        Ok(acc)
    }

    /// `self^d` by repeated squaring; `d = 0` gives the identity.
    pub fn pow(&self, d: u32) -> Result<Matrix> {
        let n = self.require_square()?;
        let mut result = Matrix::identity(n);
        let mut base = self.clone();
        let mut k = d;
        let mut first = true;
        while k > 0 {
            if k & 1 == 1 {
                result = if first { base.clone() } else { result.try_mul(&base)? };
                first = false;
            }
            k >>= 1;
            if k > 0 {
                base = base.try_mul(&base)?;
            }
        }
        Ok(result)
    }

    /// Hilbert–Schmidt (Frobenius) norm.
    pub fn frobenius_norm(&self) -> f64 {
        math::sqrt(self.data.iter().map(|z| z.norm_sqr()).sum())
    }

    /// Largest entry modulus.
    pub fn max_entry_modulus(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entry modulus of `self − other`.
    pub fn max_entry_distance(&self, other: &Matrix) -> Result<f64> {
        self.require_same_shape(other)?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// `‖A − A*‖₂`; square input required.
    pub fn hermitian_defect(&self) -> Result<f64> {
        let n = self.require_square()?;
        let mut acc = 0.0;
        for i in 0..n {
            for j in 0..n {
                acc += (self.data[i * n + j] - self.data[j * n + i].conj()).norm_sqr();
            }
        }
        Ok(math::sqrt(acc))
    }

    /// Block of size `rows x cols` starting at `(r0, c0)` overwritten by `block`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Matrix) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        for i in 0..block.rows {
            let dst = (r0 + i) * self.cols + c0;
            self.data[dst..dst + block.cols].copy_from_slice(block.row(i));
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        Matrix::from_fn(rows, cols, |i, j| self[(r0 + i, c0 + j)])
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = C64;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.cols + j]
    }
}

// Operator forms panic on shape mismatch, like slice indexing.
impl Mul for &Matrix {
    type Output = Matrix;

    fn mul(self, rhs: &Matrix) -> Matrix {
        self.try_mul(rhs).expect("matrix product shape mismatch")
    }
}

impl Add for &Matrix {
    type Output = Matrix;

    fn add(self, rhs: &Matrix) -> Matrix {
        self.try_add(rhs).expect("matrix sum shape mismatch")
    }
}

impl Sub for &Matrix {
    type Output = Matrix;

    fn sub(self, rhs: &Matrix) -> Matrix {
        self.try_sub(rhs).expect("matrix difference shape mismatch")
    }
}

/// A square matrix that is Hermitian up to [`HERMITIAN_TOL`].
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianMatrix(Matrix);

impl HermitianMatrix {
    /// Validates `‖A − A*‖₂ ≤ 1e−12 · max(1, ‖A‖₂)`.
    pub fn new(m: Matrix) -> Result<Self> {
        m.require_square()?;
        let defect = m.hermitian_defect()?;
        let scale = m.frobenius_norm().max(1.0);
        if defect > HERMITIAN_TOL * scale {
            return Err(Error::NotHermitian { defect: defect / scale });
        }
        Ok(Self(m))
    }

    /// Hermitian part `(A + A*)/2`; exact symmetry by construction.
    pub fn hermitian_part(m: &Matrix) -> Result<Self> {
        let n = m.require_square()?;
        Ok(Self(Matrix::from_fn(n, n, |i, j| (m[(i, j)] + m[(j, i)].conj()) * 0.5)))
    }

    pub fn from_real_diagonal(values: &[f64]) -> Self {
        Self(Matrix::diagonal(values))
    }

    pub fn n(&self) -> usize {
        self.0.rows
    }

    pub fn as_matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix {
        self.0
    }

    /// Real linear combination stays Hermitian.
    pub fn combine(&self, a: f64, other: &HermitianMatrix, b: f64) -> Result<HermitianMatrix> {
        self.0.require_same_shape(&other.0)?;
        Ok(Self(self.0.zip_with(&other.0, |x, y| x * a + y * b)))
    }

    pub fn scale_real(&self, s: f64) -> HermitianMatrix {
        Self(self.0.scale_real(s))
    }

    /// Real inner product `Re tr(A B)` on the space of Hermitian matrices.
    pub fn inner(&self, other: &HermitianMatrix) -> Result<f64> {
        Ok(self.0.trace_of_product(&other.0)?.re)
    }
}

impl Deref for HermitianMatrix {
    type Target = Matrix;

    fn deref(&self) -> &Matrix {
        &self.0
    }
}

impl TryFrom<Matrix> for HermitianMatrix {
    type Error = Error;

    fn try_from(m: Matrix) -> Result<Self> {
        Self::new(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn rejects_bad_shapes_and_values() {
        assert!(matches!(
            Matrix::new(2, 2, vec![c(1.0, 0.0); 3]),
            Err(Error::BadEntryCount { expected: 4, found: 3 })
        ));
        assert_eq!(Matrix::new(1, 1, vec![c(f64::NAN, 0.0)]), Err(Error::NonFinite));
        let rect = Matrix::zeros(2, 3);
        assert!(matches!(rect.trace(), Err(Error::NotSquare { .. })));
        assert!(rect.try_mul(&rect).is_err());
    }

    #[test]
    fn product_adjoint_and_trace() {
        let a = Matrix::new(2, 2, vec![c(1.0, 1.0), c(2.0, 0.0), c(0.0, -1.0), c(3.0, 0.0)]).unwrap();
        let b = a.adjoint();
        assert_eq!(b[(0, 1)], c(0.0, 1.0));
        assert_eq!(b[(1, 0)], c(2.0, 0.0));
        let ab = &a * &b;
        assert_eq!(ab.trace().unwrap(), a.trace_of_product(&b).unwrap());
        // tr(A A*) = ‖A‖₂²
        assert!((ab.trace().unwrap().re - a.frobenius_norm().powi(2)).abs() < 1e-12);
    }

    #[test]
    fn pow_matches_repeated_product() {
        let a = Matrix::new(2, 2, vec![c(0.5, 0.1), c(-1.0, 0.0), c(0.3, 0.2), c(0.0, 1.0)]).unwrap();
        let mut naive = Matrix::identity(2);
        for d in 0..7 {
            let fast = a.pow(d).unwrap();
            assert!(fast.max_entry_distance(&naive).unwrap() < 1e-13);
            naive = &naive * &a;
        }
    }

    #[test]
    fn hermitian_validation() {
        let h = Matrix::new(2, 2, vec![c(1.0, 0.0), c(0.0, 2.0), c(0.0, -2.0), c(-1.0, 0.0)]).unwrap();
        assert!(HermitianMatrix::new(h.clone()).is_ok());
        let mut bad = h;
        bad[(0, 1)] = c(0.0, 2.1);
        assert!(matches!(HermitianMatrix::new(bad), Err(Error::NotHermitian { .. })));
    }
}
