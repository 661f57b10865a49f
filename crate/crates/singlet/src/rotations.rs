//! Polar-parameterized 2x2 operators over a non-orthogonal frame, their
//! action on wedge products, and the correlated expectation they induce on
//! the singlet span.
//!
//! The family is `R(theta, phi) = [[r1 cos t, r2 sin p], [-r1 sin t, r2 cos p]]`
//! with `r1 r2 = 1`, so the determinant collapses to `cos(theta - phi)`
//! independently of `r1`.

use crate::error::{Error, Result};
use crate::linalg::{ComplexVector, DenseMatrix};

/// Member of the polar operator family. Radial weights satisfy `r2 = 1/r1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarRotation {
    pub theta: f64,
    pub phi: f64,
    pub r1: f64,
}

impl PolarRotation {
    /// Materializes the 2x2 matrix.
    pub fn matrix(&self) -> DenseMatrix {
        let r2 = 1.0 / self.r1;
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        DenseMatrix::from_real_rows(&[&[self.r1 * ct, r2 * sp], &[-self.r1 * st, r2 * cp]]).unwrap()
    }

    /// Closed-form determinant `cos(theta - phi)`.
    pub fn det_closed_form(&self) -> f64 {
        (self.theta - self.phi).cos()
    }
}

/// Constructs a [`PolarRotation`]; `r1` must be finite and positive.
///
/// Angles are taken as given, without reduction mod 2 pi, so scans can sweep
/// any real interval. Singular members (`theta - phi` an odd multiple of
/// pi/2) are legitimate: the family is a semigroup, not a group.
pub fn rot(theta: f64, phi: f64, r1: f64) -> Result<PolarRotation> {
    if !theta.is_finite() || !phi.is_finite() {
        return Err(Error::NonFinite("rotation angles"));
    }
    if !r1.is_finite() || r1 <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "radial weight r1 must be positive and finite, got {r1}"
        )));
    }
    Ok(PolarRotation { theta, phi, r1 })
}

/// Result of pushing a wedge product through `R (x) R`.
#[derive(Debug, Clone)]
pub struct WedgeAction {
    /// `(R (x) R)(a /\ b)`, computed by explicit multiplication.
    pub image: ComplexVector,
    /// The scalar `cos(theta - phi)` the wedge is predicted to pick up.
    pub factor: f64,
}

/// Applies `R (x) R` to `a /\ b` and reports the predicted eigenfactor.
///
/// The image always equals `factor * (a /\ b)`: the wedge spans the
/// determinant line of the tensor square.
pub fn wedge_action(
    r: &PolarRotation,
    a: &ComplexVector,
    b: &ComplexVector,
) -> Result<WedgeAction> {
    let w = crate::linalg::wedge(a, b)?;
    let m = r.matrix();
    let rr = crate::linalg::kron(&m, &m)?;
    Ok(WedgeAction {
        image: rr.mul_vec(&w)?,
        factor: r.det_closed_form(),
    })
}

/// `[x, y] = xy - yx` for square matrices of equal dimension.
pub fn commutator(x: &DenseMatrix, y: &DenseMatrix) -> Result<DenseMatrix> {
    if !x.is_square() || !y.is_square() || x.rows() != y.rows() {
        return Err(Error::DimensionMismatch(format!(
            "commutator needs equal square dims, got {}x{} and {}x{}",
            x.rows(),
            x.cols(),
            y.rows(),
            y.cols()
        )));
    }
    x.mul(y)?.sub(&y.mul(x)?)
}

/// Expectation of `R sigma3 (x) R sigma3` restricted to the singlet span:
/// `-cos(theta - phi)`.
///
/// For coplanar unit detector directions at azimuths `theta` and `phi` this
/// equals `-n1 . n2`; the identification is made only in that case.
pub fn correlated_expectation(theta: f64, phi: f64) -> f64 {
    -(theta - phi).cos()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{c, kron, re, wedge};
    use crate::states::pauli_z;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, PI};

    fn rand_vec2(rng: &mut ChaCha8Rng) -> ComplexVector {
        ComplexVector::new(
            (0..2)
                .map(|_| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn identity_member() {
        let r = rot(0.0, 0.0, 1.0).unwrap();
        assert!(r.matrix().approx_eq(&DenseMatrix::identity(2), 0.0));
    }

    #[test]
    fn aligned_angles_have_unit_det() {
        for r1 in [0.25, 1.0, 3.0] {
            let r = rot(1.234, 1.234, r1).unwrap();
            assert!((r.matrix().det().unwrap() - re(1.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn quarter_turn_offset_is_singular() {
        let r = rot(0.0, FRAC_PI_2, 1.0).unwrap();
        assert!(r.matrix().det().unwrap().norm() < 1e-12);
        assert!(r.det_closed_form().abs() < 1e-12);
    }

    #[test]
    fn det_matches_closed_form_independent_of_r1() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..1000 {
            let theta = rng.random_range(-2.0 * PI..2.0 * PI);
            let phi = rng.random_range(-2.0 * PI..2.0 * PI);
            let r1 = rng.random_range(0.05..20.0);
            let r = rot(theta, phi, r1).unwrap();
            let d = r.matrix().det().unwrap();
            assert!((d - re(r.det_closed_form())).norm() < 1e-12);
        }
    }

    #[test]
    fn rot_rejects_bad_r1() {
        assert!(rot(0.0, 0.0, 0.0).is_err());
        assert!(rot(0.0, 0.0, -1.0).is_err());
        assert!(rot(0.0, 0.0, f64::NAN).is_err());
    }

    #[test]
    fn wedge_action_aligned_is_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(32);
        let a = rand_vec2(&mut rng);
        let b = rand_vec2(&mut rng);
        let r = rot(0.7, 0.7, 2.0).unwrap();
        let act = wedge_action(&r, &a, &b).unwrap();
        assert_eq!(act.factor, 1.0);
        assert!(act.image.approx_eq(&wedge(&a, &b).unwrap(), 1e-12));
    }

    #[test]
    fn wedge_action_quarter_offset_annihilates() {
        let mut rng = ChaCha8Rng::seed_from_u64(33);
        let a = rand_vec2(&mut rng);
        let b = rand_vec2(&mut rng);
        let r = rot(FRAC_PI_2 + 0.3, 0.3, 1.0).unwrap();
        let act = wedge_action(&r, &a, &b).unwrap();
        assert!(act.factor.abs() < 1e-12);
        assert!(act.image.max_norm() < 1e-10);
    }

    #[test]
    fn wedge_action_scales_by_cosine() {
        let mut rng = ChaCha8Rng::seed_from_u64(34);
        for _ in 0..500 {
            let theta = rng.random_range(-PI..PI);
            let phi = rng.random_range(-PI..PI);
            let r1 = rng.random_range(0.2..5.0);
            let a = rand_vec2(&mut rng);
            let b = rand_vec2(&mut rng);
            let r = rot(theta, phi, r1).unwrap();
            let act = wedge_action(&r, &a, &b).unwrap();
            let predicted = wedge(&a, &b).unwrap().scale(re(act.factor));
            assert!(act.image.approx_eq(&predicted, 1e-10));
        }
    }

    #[test]
    fn wedge_factor_depends_only_on_difference() {
        // Dyadic angles keep the difference bit-exact under the shift.
        let r1 = rot(1.25, 0.5, 1.0).unwrap();
        let r2 = rot(1.25 + 2.0, 0.5 + 2.0, 1.0).unwrap();
        assert_eq!(r1.det_closed_form(), r2.det_closed_form());
    }

    #[test]
    fn commutator_with_identity_vanishes() {
        let z = pauli_z();
        let i = DenseMatrix::identity(2);
        let c = commutator(&z, &i).unwrap();
        assert_eq!(c.max_norm(), 0.0);
    }

    #[test]
    fn sigma3_does_not_commute_with_rotation() {
        let r = rot(FRAC_PI_4, FRAC_PI_4, 1.0).unwrap();
        let c = commutator(&pauli_z(), &r.matrix()).unwrap();
        assert!(c.max_norm() > 0.1);
    }

    #[test]
    fn tensor_square_commutator_annihilates_wedge() {
        let mut rng = ChaCha8Rng::seed_from_u64(35);
        for _ in 0..200 {
            let theta = rng.random_range(-PI..PI);
            let phi = rng.random_range(-PI..PI);
            let r = rot(theta, phi, rng.random_range(0.3..3.0)).unwrap();
            let zz = kron(&pauli_z(), &pauli_z()).unwrap();
            let m = r.matrix();
            let rr = kron(&m, &m).unwrap();
            let comm = commutator(&zz, &rr).unwrap();
            // The operators do not commute globally...
            if (theta - phi).abs() > 0.1 && theta.abs() > 0.1 {
                assert!(comm.max_norm() > 1e-6);
            }
            // ...but they do on the wedge line.
            let a = rand_vec2(&mut rng);
            let b = rand_vec2(&mut rng);
            let w = wedge(&a, &b).unwrap();
            assert!(comm.mul_vec(&w).unwrap().max_norm() < 1e-10);
        }
    }

    #[test]
    fn rotated_pair_acts_as_minus_cosine_on_wedge() {
        let mut rng = ChaCha8Rng::seed_from_u64(36);
        for _ in 0..300 {
            let theta = rng.random_range(-PI..PI);
            let phi = rng.random_range(-PI..PI);
            let r = rot(theta, phi, rng.random_range(0.3..3.0)).unwrap();
            let rs = r.matrix().mul(&pauli_z()).unwrap();
            let op = kron(&rs, &rs).unwrap();
            let a = rand_vec2(&mut rng);
            let b = rand_vec2(&mut rng);
            let w = wedge(&a, &b).unwrap();
            let image = op.mul_vec(&w).unwrap();
            let predicted = w.scale(re(-(theta - phi).cos()));
            assert!(image.approx_eq(&predicted, 1e-10));
        }
    }

    #[test]
    fn correlated_expectation_values() {
        assert!((correlated_expectation(0.9, 0.9) + 1.0).abs() < 1e-15);
        assert!((correlated_expectation(FRAC_PI_3, 0.0) + 0.5).abs() < 1e-12);
        assert!((correlated_expectation(2.0 * FRAC_PI_3, 0.0) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn correlated_expectation_matches_statevector_oracle() {
        use crate::states::{expectation, singlet, spin_obs, Direction};
        let mut rng = ChaCha8Rng::seed_from_u64(37);
        for _ in 0..300 {
            let theta = rng.random_range(-PI..PI);
            let phi = rng.random_range(-PI..PI);
            let closed = correlated_expectation(theta, phi);
            let oracle = expectation(
                &singlet(),
                &[
                    spin_obs(&Direction::planar(theta)),
                    spin_obs(&Direction::planar(phi)),
                ],
            )
            .unwrap();
            assert!((closed - oracle).abs() < 1e-10);
        }
    }
}
