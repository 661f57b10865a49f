//! Small dense complex matrices and vectors.
//!
//! Everything here is sized for desk-scale work: dimensions never exceed
//! [`MAX_DIM`], storage is row-major, and all operations are pure. The
//! workhorse operations are the Kronecker product, the determinant (exact
//! cofactor at 2x2, partially pivoted LU above), and the antisymmetric wedge
//! product of two 2-vectors embedded in dimension 4.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest row/column count a [`DenseMatrix`] may have.
pub const MAX_DIM: usize = 64;

/// Largest dimension accepted by [`DenseMatrix::det`].
pub const MAX_DET_DIM: usize = 16;

/// Default absolute comparison tolerance on max-norms.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Complex scalar used throughout the crate.
pub type Complex = Complex64;

/// Shorthand constructor for a complex scalar.
#[inline]
pub fn c(re: f64, im: f64) -> Complex {
    Complex::new(re, im)
}

/// Shorthand for a real scalar embedded in the complex field.
#[inline]
pub fn re(x: f64) -> Complex {
    Complex::new(x, 0.0)
}

fn ensure_finite(entries: &[Complex], what: &'static str) -> Result<()> {
    if entries.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFinite(what))
    }
}

/// Column vector of complex entries.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexVector {
    entries: Vec<Complex>,
}

impl ComplexVector {
    pub fn new(entries: Vec<Complex>) -> Result<Self> {
        if entries.is_empty() || entries.len() > MAX_DIM {
            return Err(Error::DimensionOverflow(entries.len(), MAX_DIM));
        }
        ensure_finite(&entries, "vector entries")?;
        Ok(Self { entries })
    }

    pub fn from_reals(entries: &[f64]) -> Result<Self> {
        Self::new(entries.iter().map(|&x| re(x)).collect())
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            entries: vec![Complex::ZERO; dim],
        }
    }

    /// Standard basis vector `e_k` of the given dimension.
    pub fn basis(dim: usize, k: usize) -> Result<Self> {
        if k >= dim {
            return Err(Error::InvalidArgument(format!(
                "basis index {k} out of range for dimension {dim}"
            )));
        }
        let mut v = Self::zeros(dim);
        v.entries[k] = Complex::ONE;
        Ok(v)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    #[inline]
    pub fn get(&self, i: usize) -> Complex {
        self.entries[i]
    }

    pub fn entries(&self) -> &[Complex] {
        &self.entries
    }

    /// Conjugate-linear inner product `<self|other>`.
    pub fn inner(&self, other: &Self) -> Result<Complex> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch(format!(
                "inner product of dim {} with dim {}",
                self.dim(),
                other.dim()
            )));
        }
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    pub fn norm(&self) -> f64 {
        self.entries
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn max_norm(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn scale(&self, s: Complex) -> Self {
        Self {
            entries: self.entries.iter().map(|z| z * s).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch("vector addition".into()));
        }
        Ok(Self {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(re(-1.0)))
    }

    /// Tensor product of two column vectors.
    pub fn kron(&self, other: &Self) -> Result<Self> {
        let dim = self.dim() * other.dim();
        if dim > MAX_DIM {
            return Err(Error::DimensionOverflow(dim, MAX_DIM));
        }
        let mut entries = Vec::with_capacity(dim);
        for a in &self.entries {
            for b in &other.entries {
                entries.push(a * b);
            }
        }
        Ok(Self { entries })
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.dim() == other.dim()
            && self
                .entries
                .iter()
                .zip(&other.entries)
                .all(|(a, b)| (a - b).norm() <= tol)
    }
}

/// Row-major dense complex matrix with dimensions at most [`MAX_DIM`].
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Complex>,
}

impl DenseMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Complex>) -> Result<Self> {
        if rows == 0 || cols == 0 || rows > MAX_DIM || cols > MAX_DIM {
            return Err(Error::DimensionOverflow(rows.max(cols), MAX_DIM));
        }
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        ensure_finite(&entries, "matrix entries")?;
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    /// Builds a matrix from nested real rows; test and construction helper.
    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let r = rows.len();
        let c_ = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c_) {
            return Err(Error::DimensionMismatch("jagged rows".into()));
        }
        let entries = rows
            .iter()
            .flat_map(|row| row.iter().map(|&x| re(x)))
            .collect();
        Self::new(r, c_, entries)
    }

    pub fn from_rows(rows: &[Vec<Complex>]) -> Result<Self> {
        let r = rows.len();
        let c_ = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c_) {
            return Err(Error::DimensionMismatch("jagged rows".into()));
        }
        let entries = rows.iter().flatten().copied().collect();
        Self::new(r, c_, entries)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Complex::ZERO; rows * cols],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim, dim);
        for i in 0..dim {
            m.entries[i * dim + i] = Complex::ONE;
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

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex {
        self.entries[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, z: Complex) {
        self.entries[i * self.cols + j] = z;
    }

    pub fn entries(&self) -> &[Complex] {
        &self.entries
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self.get(i, k);
                if aik == Complex::ZERO {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + aik * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &ComplexVector) -> Result<ComplexVector> {
        if self.cols != v.dim() {
            return Err(Error::DimensionMismatch(format!(
                "cannot apply {}x{} to vector of dim {}",
                self.rows,
                self.cols,
                v.dim()
            )));
        }
        let entries = (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self.get(i, j) * v.get(j))
                    .sum::<Complex>()
            })
            .collect();
        Ok(ComplexVector { entries })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch("matrix addition".into()));
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(re(-1.0)))
    }

    pub fn scale(&self, s: Complex) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|z| z * s).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).conj());
            }
        }
        out
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        if !self.is_square() {
            return false;
        }
        for i in 0..self.rows {
            for j in i..self.cols {
                if (self.get(i, j) - self.get(j, i).conj()).norm() > tol {
                    return false;
                }
            }
        }
        true
    }

    pub fn max_norm(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self
                .entries
                .iter()
                .zip(&other.entries)
                .all(|(a, b)| (a - b).norm() <= tol)
    }

    /// Kronecker product `self (x) other`.
    pub fn kron(&self, other: &Self) -> Result<Self> {
        kron(self, other)
    }

    /// Determinant. Exact cofactor formula at 2x2, LU with partial pivoting
    /// above. A vanishing pivot is not an error; the determinant is simply 0.
    pub fn det(&self) -> Result<Complex> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n > MAX_DET_DIM {
            return Err(Error::DimensionOverflow(n, MAX_DET_DIM));
        }
        if n == 1 {
            return Ok(self.get(0, 0));
        }
        if n == 2 {
            return Ok(self.get(0, 0) * self.get(1, 1) - self.get(0, 1) * self.get(1, 0));
        }
        let mut lu = self.entries.clone();
        let mut det = Complex::ONE;
        for k in 0..n {
            let mut pivot_row = k;
            let mut pivot_mag = lu[k * n + k].norm();
            for r in (k + 1)..n {
                let mag = lu[r * n + k].norm();
                if mag > pivot_mag {
                    pivot_mag = mag;
                    pivot_row = r;
                }
            }
            if pivot_mag == 0.0 {
                return Ok(Complex::ZERO);
            }
            if pivot_row != k {
                for j in 0..n {
                    lu.swap(k * n + j, pivot_row * n + j);
                }
                det = -det;
            }
            let pivot = lu[k * n + k];
            det *= pivot;
            for r in (k + 1)..n {
                let factor = lu[r * n + k] / pivot;
                lu[r * n + k] = Complex::ZERO;
                for j in (k + 1)..n {
                    let delta = factor * lu[k * n + j];
                    lu[r * n + j] -= delta;
                }
            }
        }
        Ok(det)
    }
}

/// Kronecker product of two matrices, `(a (x) b)[(i*rb+k),(j*cb+l)] = a[i,j] b[k,l]`.
pub fn kron(a: &DenseMatrix, b: &DenseMatrix) -> Result<DenseMatrix> {
    let rows = a.rows() * b.rows();
    let cols = a.cols() * b.cols();
    if rows > MAX_DIM || cols > MAX_DIM {
        return Err(Error::DimensionOverflow(rows.max(cols), MAX_DIM));
    }
    let mut out = DenseMatrix::zeros(rows, cols);
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            let aij = a.get(i, j);
            for k in 0..b.rows() {
                for l in 0..b.cols() {
                    out.set(i * b.rows() + k, j * b.cols() + l, aij * b.get(k, l));
                }
            }
        }
    }
    Ok(out)
}

/// Wedge product of two 2-vectors, `a /\ b = a (x) b - b (x) a`, as a 4-vector.
///
/// Proportional to the embedded singlet: `a /\ b = (a1 b2 - b1 a2) * (0,1,-1,0)^T`.
pub fn wedge(a: &ComplexVector, b: &ComplexVector) -> Result<ComplexVector> {
    if a.dim() != 2 || b.dim() != 2 {
        return Err(Error::DimensionMismatch(format!(
            "wedge product needs two 2-vectors, got dims {} and {}",
            a.dim(),
            b.dim()
        )));
    }
    a.kron(b)?.sub(&b.kron(a)?)
}

/// `det [a, b] = a1 b2 - b1 a2` for two 2-vectors.
pub fn det2(a: &ComplexVector, b: &ComplexVector) -> Result<Complex> {
    if a.dim() != 2 || b.dim() != 2 {
        return Err(Error::DimensionMismatch("det2 needs two 2-vectors".into()));
    }
    Ok(a.get(0) * b.get(1) - b.get(0) * a.get(1))
}
