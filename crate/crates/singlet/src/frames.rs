//! Laboratory and spinor reference frames: detector triads with a species
//! constant, decomposition of a rotated frame in a base frame, operators
//! conjugated by plane rotations, and the half-angle spinor pairs whose sign
//! pattern makes "up" and "down" frame-relative.
//!
//! Everything in this module is real and planar; complex azimuths live in
//! [`crate::states`].

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{ComplexVector, DenseMatrix};
use crate::states::StateVector;

/// Species constant for photons.
pub const PHOTON_C: f64 = 1.0;

/// Species constant for electrons (half-angle response).
pub const ELECTRON_C: f64 = 0.5;

/// Right-handed orthonormal frame `(e_i, e_r, e_theta)`: propagation axis,
/// detector axis, and their cross product.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Triad {
    pub e_i: [f64; 3],
    pub e_r: [f64; 3],
    pub e_theta: [f64; 3],
}

fn dot3(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross3(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// Frame reached from the laboratory triad `(i, j, k)` by rotating the
/// detector through `theta` in the j-k plane with species response `c`:
/// `(i, j cos(c t) + k sin(c t), k cos(c t) - j sin(c t))`.
pub fn triad(theta: f64, c: f64) -> Result<Triad> {
    if !theta.is_finite() {
        return Err(Error::NonFinite("triad angle"));
    }
    if !c.is_finite() || c <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "species constant must be positive and finite, got {c}"
        )));
    }
    let (s, co) = (c * theta).sin_cos();
    Ok(Triad {
        e_i: [1.0, 0.0, 0.0],
        e_r: [0.0, co, s],
        e_theta: [0.0, -s, co],
    })
}

impl Triad {
    /// Largest deviation from orthonormality and right-handedness.
    pub fn frame_defect(&self) -> f64 {
        let unit = |v: [f64; 3]| (dot3(v, v).sqrt() - 1.0).abs();
        let handed = cross3(self.e_i, self.e_r);
        let handed_defect = (0..3)
            .map(|k| (handed[k] - self.e_theta[k]).abs())
            .fold(0.0, f64::max);
        [
            unit(self.e_i),
            unit(self.e_r),
            unit(self.e_theta),
            dot3(self.e_i, self.e_r).abs(),
            dot3(self.e_i, self.e_theta).abs(),
            dot3(self.e_r, self.e_theta).abs(),
            handed_defect,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

/// Amplitudes of a rotated spin axis in its base frame; the squares are the
/// identification probabilities.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrameDecomposition {
    pub amp_r: f64,
    pub amp_theta: f64,
}

impl FrameDecomposition {
    pub fn probabilities(&self) -> (f64, f64) {
        (self.amp_r * self.amp_r, self.amp_theta * self.amp_theta)
    }
}

/// Decomposes the spin axis rotated to `theta + phi` in the spinor frame
/// erected at `theta`: amplitude `cos(phi/2)` on the base spin axis and
/// `sin(phi/2)` on the base detector axis.
///
/// Computed geometrically from the half-angle triads, so only the offset
/// `phi` survives; the base angle cancels.
pub fn frame_decompose(theta: f64, phi: f64) -> FrameDecomposition {
    let base = triad(theta, ELECTRON_C).expect("finite base angle");
    let rotated = triad(theta + phi, ELECTRON_C).expect("finite rotated angle");
    FrameDecomposition {
        amp_r: -dot3(rotated.e_theta, base.e_r),
        amp_theta: dot3(rotated.e_theta, base.e_theta),
    }
}

/// The spin operator conjugated into the frame at `theta`:
/// `R(t) sigma3 R(-t) = [[cos 2t, sin 2t], [sin 2t, -cos 2t]]`.
pub fn rotated_operator(theta: f64) -> DenseMatrix {
    let (s, c) = (2.0 * theta).sin_cos();
    DenseMatrix::from_real_rows(&[&[c, s], &[s, -c]]).unwrap()
}

/// Up/down spinor pair of the frame rotated through `theta`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinorFrames {
    pub ket_plus: StateVector,
    pub ket_minus: StateVector,
}

/// Real spinor pair of the frame at `theta`, with the sign pattern fixed by
/// the decomposition `|n(0),+> = cos(t/2) |n(t),+> + sin(t/2) |n(t),->`:
/// `ket_plus = (cos t/2, sin t/2)` and `ket_minus = (sin t/2, -cos t/2)`.
/// At the base angle itself the pair is the standard basis.
pub fn spinor_frames(theta: f64) -> SpinorFrames {
    let (s, c) = (theta / 2.0).sin_cos();
    let (plus, minus) = if s == 0.0 {
        ([1.0, 0.0], [0.0, 1.0])
    } else {
        ([c, s], [s, -c])
    };
    SpinorFrames {
        ket_plus: StateVector::new(ComplexVector::from_reals(&plus).unwrap()).unwrap(),
        ket_minus: StateVector::new(ComplexVector::from_reals(&minus).unwrap()).unwrap(),
    }
}

/// Numerical record of the quarter-turn frame identities.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrameIdentificationReport {
    /// `<n2,+ | n3,+>` for frames at +- pi/2; zero when the frames are
    /// mutually orthogonal.
    pub overlap_plus: f64,
    /// `<n2,- | n3,->`.
    pub overlap_minus: f64,
    /// `<n2,+ | n2,->`, zero for an orthonormal pair.
    pub self_overlap: f64,
    /// Largest componentwise difference between `|n2,->` and `|n3,+>`; zero
    /// exhibits the down-state of one frame as the up-state of the other.
    pub identification_gap: f64,
    pub pass: bool,
}

/// Checks the quarter-turn identities: the frames at `+pi/2` and `-pi/2` are
/// mutually orthogonal, yet the down spinor of one is componentwise the up
/// spinor of the other.
pub fn frame_identification_check() -> FrameIdentificationReport {
    let n2 = spinor_frames(std::f64::consts::FRAC_PI_2);
    let n3 = spinor_frames(-std::f64::consts::FRAC_PI_2);
    let overlap = |a: &StateVector, b: &StateVector| a.inner(b).unwrap().re;
    let overlap_plus = overlap(&n2.ket_plus, &n3.ket_plus);
    let overlap_minus = overlap(&n2.ket_minus, &n3.ket_minus);
    let self_overlap = overlap(&n2.ket_plus, &n2.ket_minus);
    let identification_gap = n2
        .ket_minus
        .amplitudes()
        .sub(n3.ket_plus.amplitudes())
        .unwrap()
        .max_norm();
    let pass = overlap_plus.abs() < 1e-12
        && overlap_minus.abs() < 1e-12
        && self_overlap.abs() < 1e-12
        && identification_gap < 1e-12;
    FrameIdentificationReport {
        overlap_plus,
        overlap_minus,
        self_overlap,
        identification_gap,
        pass,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::re;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    #[test]
    fn triad_at_zero_is_laboratory_frame() {
        let t = triad(0.0, 1.0).unwrap();
        assert_eq!(t.e_i, [1.0, 0.0, 0.0]);
        assert_eq!(t.e_r, [0.0, 1.0, 0.0]);
        assert_eq!(t.e_theta, [0.0, 0.0, 1.0]);
    }

    #[test]
    fn photon_quarter_turn() {
        let t = triad(FRAC_PI_2, PHOTON_C).unwrap();
        assert!((t.e_r[2] - 1.0).abs() < 1e-15 && t.e_r[1].abs() < 1e-15);
        assert!((t.e_theta[1] + 1.0).abs() < 1e-15 && t.e_theta[2].abs() < 1e-15);
    }

    #[test]
    fn electron_half_turn_flips_spin_axis() {
        let t = triad(PI, ELECTRON_C).unwrap();
        assert!((t.e_theta[1] + 1.0).abs() < 1e-12);
        assert!(t.e_theta[0].abs() < 1e-12 && t.e_theta[2].abs() < 1e-12);
    }

    #[test]
    fn triads_are_orthonormal_and_right_handed() {
        let mut rng = ChaCha8Rng::seed_from_u64(61);
        for _ in 0..1000 {
            let theta = rng.random_range(-10.0..10.0);
            let c = rng.random_range(0.05..4.0);
            assert!(triad(theta, c).unwrap().frame_defect() < 1e-10);
        }
    }

    #[test]
    fn triad_rejects_bad_constant() {
        assert!(triad(1.0, 0.0).is_err());
        assert!(triad(1.0, -0.5).is_err());
        assert!(triad(f64::NAN, 1.0).is_err());
    }

    #[test]
    fn decompose_identity_and_quarter_and_half() {
        let d = frame_decompose(0.7, 0.0);
        assert!(d.amp_r.abs() < 1e-15);
        assert!((d.amp_theta - 1.0).abs() < 1e-15);

        let d = frame_decompose(0.0, PI);
        assert!((d.amp_r - 1.0).abs() < 1e-12);
        assert!(d.amp_theta.abs() < 1e-12);

        let d = frame_decompose(1.1, FRAC_PI_2);
        assert!((d.amp_r - (FRAC_PI_4).sin()).abs() < 1e-12);
        assert!((d.amp_theta - (FRAC_PI_4).cos()).abs() < 1e-12);
    }

    #[test]
    fn decompose_probabilities_sum_to_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(62);
        for _ in 0..1000 {
            let theta = rng.random_range(-7.0..7.0);
            let phi = rng.random_range(-7.0..7.0);
            let (pr, pt) = frame_decompose(theta, phi).probabilities();
            assert!((pr + pt - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn decompose_depends_only_on_offset() {
        let a = frame_decompose(0.0, 1.3);
        let b = frame_decompose(2.9, 1.3);
        assert!((a.amp_r - b.amp_r).abs() < 1e-12);
        assert!((a.amp_theta - b.amp_theta).abs() < 1e-12);
    }

    #[test]
    fn decompose_composes_as_half_angle_rotation() {
        let mut rng = ChaCha8Rng::seed_from_u64(63);
        for _ in 0..500 {
            let theta = rng.random_range(-5.0..5.0);
            let phi = rng.random_range(-5.0..5.0);
            let first = frame_decompose(0.0, theta);
            let second = frame_decompose(theta, phi);
            let composed_theta = first.amp_theta * second.amp_theta - first.amp_r * second.amp_r;
            let composed_r = first.amp_r * second.amp_theta + first.amp_theta * second.amp_r;
            let direct = frame_decompose(0.0, theta + phi);
            assert!((composed_theta - direct.amp_theta).abs() < 1e-12);
            assert!((composed_r - direct.amp_r).abs() < 1e-12);
        }
    }

    #[test]
    fn rotated_operator_limits() {
        assert!(rotated_operator(0.0).approx_eq(&crate::states::pauli_z(), 1e-15));
        assert!(rotated_operator(FRAC_PI_4).approx_eq(&crate::states::pauli_x(), 1e-15));
    }

    #[test]
    fn rotated_operator_eigenvector() {
        let mut rng = ChaCha8Rng::seed_from_u64(64);
        for _ in 0..1000 {
            let theta: f64 = rng.random_range(-10.0..10.0);
            let op = rotated_operator(theta);
            let v = ComplexVector::from_reals(&[theta.cos(), theta.sin()]).unwrap();
            let image = op.mul_vec(&v).unwrap();
            assert!(image.approx_eq(&v, 1e-12));
            // trace 0 and det -1: eigenvalues are exactly +-1.
            assert!((op.det().unwrap() + re(1.0)).norm() < 1e-12);
            assert!((op.get(0, 0) + op.get(1, 1)).norm() < 1e-15);
        }
    }

    #[test]
    fn rotated_operator_matches_explicit_conjugation() {
        let mut rng = ChaCha8Rng::seed_from_u64(65);
        for _ in 0..200 {
            let theta: f64 = rng.random_range(-5.0..5.0);
            let (s, c) = theta.sin_cos();
            let r = DenseMatrix::from_real_rows(&[&[c, -s], &[s, c]]).unwrap();
            let r_inv = DenseMatrix::from_real_rows(&[&[c, s], &[-s, c]]).unwrap();
            let conj = r
                .mul(&crate::states::pauli_z())
                .unwrap()
                .mul(&r_inv)
                .unwrap();
            assert!(conj.approx_eq(&rotated_operator(theta), 1e-12));
        }
    }

    #[test]
    fn spinor_frames_quarter_turns() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let n2 = spinor_frames(FRAC_PI_2);
        assert!(n2
            .ket_plus
            .amplitudes()
            .approx_eq(&ComplexVector::from_reals(&[s, s]).unwrap(), 1e-15));
        assert!(n2
            .ket_minus
            .amplitudes()
            .approx_eq(&ComplexVector::from_reals(&[s, -s]).unwrap(), 1e-15));

        let n3 = spinor_frames(-FRAC_PI_2);
        assert!(n3
            .ket_plus
            .amplitudes()
            .approx_eq(&ComplexVector::from_reals(&[s, -s]).unwrap(), 1e-15));
        assert!(n3
            .ket_minus
            .amplitudes()
            .approx_eq(&ComplexVector::from_reals(&[-s, -s]).unwrap(), 1e-15));
    }

    #[test]
    fn spinor_frames_base_is_standard_basis() {
        let n1 = spinor_frames(0.0);
        assert!(n1
            .ket_plus
            .amplitudes()
            .approx_eq(&ComplexVector::from_reals(&[1.0, 0.0]).unwrap(), 0.0));
        assert!(n1
            .ket_minus
            .amplitudes()
            .approx_eq(&ComplexVector::from_reals(&[0.0, 1.0]).unwrap(), 0.0));
    }

    #[test]
    fn spinor_decomposition_identity() {
        // |n(0),+> = cos(t/2) |n(t),+> + sin(t/2) |n(t),->.
        let mut rng = ChaCha8Rng::seed_from_u64(66);
        for _ in 0..500 {
            let theta: f64 = rng.random_range(-6.0..6.0);
            let frames = spinor_frames(theta);
            let (s, c) = (theta / 2.0).sin_cos();
            let recombined = frames
                .ket_plus
                .amplitudes()
                .scale(re(c))
                .add(&frames.ket_minus.amplitudes().scale(re(s)))
                .unwrap();
            let base = ComplexVector::from_reals(&[1.0, 0.0]).unwrap();
            assert!(recombined.approx_eq(&base, 1e-12));
        }
    }

    #[test]
    fn spinor_overlap_follows_half_angle() {
        let base = spinor_frames(0.0);
        let mut rng = ChaCha8Rng::seed_from_u64(67);
        for _ in 0..300 {
            let theta: f64 = rng.random_range(-6.0..6.0);
            let rotated = spinor_frames(theta);
            let overlap = base.ket_plus.inner(&rotated.ket_plus).unwrap().re;
            assert!((overlap - (theta / 2.0).cos()).abs() < 1e-12);
        }
    }

    #[test]
    fn eigenvalue_invariant_under_ket_negation() {
        let op = rotated_operator(0.0);
        let v = ComplexVector::from_reals(&[1.0, 0.0]).unwrap();
        let lambda = re(1.0);
        let image = op.mul_vec(&v).unwrap();
        assert!(image.approx_eq(&v.scale(lambda), 0.0));
        let negated = v.scale(re(-1.0));
        let image_neg = op.mul_vec(&negated).unwrap();
        assert!(image_neg.approx_eq(&negated.scale(lambda), 0.0));
    }

    #[test]
    fn identification_check_passes() {
        let report = frame_identification_check();
        assert!(report.pass);
        assert!(report.overlap_plus.abs() < 1e-15);
        assert!(report.overlap_minus.abs() < 1e-15);
        assert!(report.self_overlap.abs() < 1e-15);
        assert!(report.identification_gap < 1e-15);
    }
}
