//! Named spin states, spin observables, and the brute-force statevector
//! expectation that every closed-form prediction in this crate is checked
//! against.
//!
//! Basis conventions, fixed once for the whole crate:
//! - single spin: `e1 = (1,0)^T` is "up", `e2 = (0,1)^T` is "down";
//! - composite systems use lexicographic tensor order, so the two-spin basis
//!   is `e1(x)e1, e1(x)e2, e2(x)e1, e2(x)e2` and the four-spin basis counts
//!   binary from `0000` (index 0) to `1111` (index 15) with bit 0 = "down".

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{c, kron, re, Complex, ComplexVector, DenseMatrix};

/// Absolute tolerance on the unit-norm invariant of [`StateVector`].
pub const NORM_TOL: f64 = 1e-12;

/// Tolerance for the Hermiticity check and the imaginary residue of
/// [`expectation`].
pub const HERMITIAN_TOL: f64 = 1e-10;

/// Largest state dimension (four spin-1/2 particles).
pub const MAX_STATE_DIM: usize = 16;

/// Normalized complex vector of dimension 2^k, k <= 4.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: ComplexVector,
}

impl StateVector {
    /// Wraps an amplitude vector, requiring unit norm within [`NORM_TOL`].
    pub fn new(amplitudes: ComplexVector) -> Result<Self> {
        let dim = amplitudes.dim();
        if !dim.is_power_of_two() || dim > MAX_STATE_DIM {
            return Err(Error::BadStateDimension(dim));
        }
        let norm = amplitudes.norm();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized {
                norm,
                tol: NORM_TOL,
            });
        }
        Ok(Self { amplitudes })
    }

    /// Rescales an arbitrary nonzero vector onto the unit sphere.
    pub fn normalized(v: ComplexVector) -> Result<Self> {
        let norm = v.norm();
        if norm == 0.0 {
            return Err(Error::InvalidArgument(
                "cannot normalize zero vector".into(),
            ));
        }
        Self::new(v.scale(re(1.0 / norm)))
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.amplitudes.dim()
    }

    pub fn num_spins(&self) -> usize {
        self.dim().trailing_zeros() as usize
    }

    pub fn amplitudes(&self) -> &ComplexVector {
        &self.amplitudes
    }

    /// Overlap `<self|other>`.
    pub fn inner(&self, other: &Self) -> Result<Complex> {
        self.amplitudes.inner(&other.amplitudes)
    }
}

/// Spherical direction: `theta` polar from +z, `phi` azimuthal from +x.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Direction {
    pub theta: f64,
    pub phi: f64,
}

impl Direction {
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !theta.is_finite() || !phi.is_finite() {
            return Err(Error::NonFinite("direction angles"));
        }
        Ok(Self { theta, phi })
    }

    /// Direction in the measurement plane: polar angle only, zero azimuth.
    ///
    /// Coplanar detector settings quoted as azimuthal angles in the plane map
    /// onto this single-parameter family.
    pub fn planar(angle: f64) -> Self {
        Self {
            theta: angle,
            phi: 0.0,
        }
    }

    /// Unit 3-vector `(sin t cos p, sin t sin p, cos t)`.
    pub fn unit_vector(&self) -> [f64; 3] {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [st * cp, st * sp, ct]
    }

    pub fn dot(&self, other: &Self) -> f64 {
        let a = self.unit_vector();
        let b = other.unit_vector();
        a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
    }
}

/// Measurement outcome sign for [`spin_ket`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spin {
    Up,
    Down,
}

impl Spin {
    pub fn sign(self) -> f64 {
        match self {
            Spin::Up => 1.0,
            Spin::Down => -1.0,
        }
    }
}

/// The two-spin singlet `(0, 1, -1, 0)^T / sqrt(2)`.
pub fn singlet() -> StateVector {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    StateVector::new(ComplexVector::from_reals(&[0.0, s, -s, 0.0]).unwrap()).unwrap()
}

/// The four-spin state `(|0011> - |1100>)/sqrt(2)`: +1/sqrt(2) at index 3,
/// -1/sqrt(2) at index 12.
pub fn ghz4() -> StateVector {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let mut amps = vec![0.0; 16];
    amps[3] = s;
    amps[12] = -s;
    StateVector::new(ComplexVector::from_reals(&amps).unwrap()).unwrap()
}

/// Spin component along `n`: the Hermitian 2x2 matrix
/// `[[cos t, sin t e^{-ip}], [sin t e^{ip}, -cos t]]` with eigenvalues +-1.
pub fn spin_obs(n: &Direction) -> DenseMatrix {
    let (st, ct) = n.theta.sin_cos();
    let phase = Complex::from_polar(1.0, n.phi);
    DenseMatrix::from_rows(&[vec![re(ct), st * phase.conj()], vec![st * phase, re(-ct)]]).unwrap()
}

pub fn pauli_x() -> DenseMatrix {
    DenseMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap()
}

pub fn pauli_y() -> DenseMatrix {
    DenseMatrix::from_rows(&[vec![re(0.0), c(0.0, -1.0)], vec![c(0.0, 1.0), re(0.0)]]).unwrap()
}

pub fn pauli_z() -> DenseMatrix {
    DenseMatrix::from_real_rows(&[&[1.0, 0.0], &[0.0, -1.0]]).unwrap()
}

/// Eigenvector of [`spin_obs`]`(n)` with eigenvalue `sign`.
///
/// `|n,+> = (cos t/2, e^{ip} sin t/2)^T` and
/// `|n,-> = (-sin t/2, e^{ip} cos t/2)^T`, which at `phi = 0` reduce to the
/// real planar pair `(cos t/2, sin t/2)` / `(-sin t/2, cos t/2)`.
pub fn spin_ket(n: &Direction, sign: Spin) -> StateVector {
    let (sh, ch) = (n.theta / 2.0).sin_cos();
    let phase = Complex::from_polar(1.0, n.phi);
    let amps = match sign {
        Spin::Up => vec![re(ch), sh * phase],
        Spin::Down => vec![re(-sh), ch * phase],
    };
    StateVector::new(ComplexVector::new(amps).unwrap()).unwrap()
}

/// Brute-force expectation `<psi| O_1 (x) ... (x) O_k |psi>`.
///
/// Builds the full tensor-product operator, so it is independent of any
/// closed-form shortcut and serves as the oracle for them. Each factor must
/// be Hermitian within [`HERMITIAN_TOL`] and the factor dimensions must
/// multiply to the state dimension. The imaginary part of the quadratic form
/// is discarded when below [`HERMITIAN_TOL`] and is an error otherwise.
pub fn expectation(psi: &StateVector, observables: &[DenseMatrix]) -> Result<f64> {
    if observables.is_empty() {
        return Err(Error::InvalidArgument("no observables given".into()));
    }
    let mut dim = 1usize;
    for obs in observables {
        if !obs.is_square() {
            return Err(Error::NotSquare {
                rows: obs.rows(),
                cols: obs.cols(),
            });
        }
        if !obs.is_hermitian(HERMITIAN_TOL) {
            return Err(Error::NotHermitian { tol: HERMITIAN_TOL });
        }
        dim *= obs.rows();
    }
    if dim != psi.dim() {
        return Err(Error::DimensionMismatch(format!(
            "observable dims multiply to {dim}, state dim is {}",
            psi.dim()
        )));
    }
    let mut full = observables[0].clone();
    for obs in &observables[1..] {
        full = kron(&full, obs)?;
    }
    let applied = full.mul_vec(psi.amplitudes())?;
    let value = psi.amplitudes().inner(&applied)?;
    if value.im.abs() > HERMITIAN_TOL {
        return Err(Error::ImaginaryResidue {
            residue: value.im.abs(),
            tol: HERMITIAN_TOL,
        });
    }
    Ok(value.re)
}
