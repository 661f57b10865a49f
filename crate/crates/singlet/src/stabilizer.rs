//! Stabilizer semigroups: the full affine family of matrices fixing a given
//! vector, with sampling, membership checks, and the Kronecker
//! self-factorization test that separates the reducible members
//! `g (x) g / det(g)` from the rest.
//!
//! For the embedded singlet `(0,1,-1,0)^T` the family is the 12-complex-
//! parameter semigroup whose rows obey one affine relation each; the same
//! construction applied to the 16-dimensional four-spin state produces the
//! analogous 16x16 family.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{kron, re, Complex, ComplexVector, DenseMatrix};
use crate::serde_support::{complex_pair, complex_pairs};

/// The 12 free complex entries of the 4x4 singlet stabilizer.
///
/// The remaining four entries are pinned by `a13 = a12`, `a23 = a22 - 1`,
/// `a32 = a33 - 1`, `a43 = a42` (1-based names).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sm4Params {
    pub a11: Complex,
    pub a12: Complex,
    pub a14: Complex,
    pub a21: Complex,
    pub a22: Complex,
    pub a24: Complex,
    pub a31: Complex,
    pub a33: Complex,
    pub a34: Complex,
    pub a41: Complex,
    pub a42: Complex,
    pub a44: Complex,
}

impl Sm4Params {
    /// Parameters materializing the identity matrix.
    pub fn identity() -> Self {
        Self {
            a11: Complex::ONE,
            a12: Complex::ZERO,
            a14: Complex::ZERO,
            a21: Complex::ZERO,
            a22: Complex::ONE,
            a24: Complex::ZERO,
            a31: Complex::ZERO,
            a33: Complex::ONE,
            a34: Complex::ZERO,
            a41: Complex::ZERO,
            a42: Complex::ZERO,
            a44: Complex::ONE,
        }
    }

    /// Uniform draw of all 12 parameters from the complex disk of radius
    /// `scale`.
    pub fn sample(rng: &mut impl Rng, scale: f64) -> Self {
        let mut draw = || {
            let r = scale * rng.random::<f64>().sqrt();
            let ang = rng.random::<f64>() * std::f64::consts::TAU;
            Complex::from_polar(r, ang)
        };
        Self {
            a11: draw(),
            a12: draw(),
            a14: draw(),
            a21: draw(),
            a22: draw(),
            a24: draw(),
            a31: draw(),
            a33: draw(),
            a34: draw(),
            a41: draw(),
            a42: draw(),
            a44: draw(),
        }
    }
}

/// Materializes the 4x4 stabilizer member for the given free parameters.
///
/// The result fixes `(0,1,-1,0)^T` identically: each row's second and third
/// entries differ by exactly the row's target component.
pub fn sm4(p: &Sm4Params) -> DenseMatrix {
    let one = Complex::ONE;
    DenseMatrix::from_rows(&[
        vec![p.a11, p.a12, p.a12, p.a14],
        vec![p.a21, p.a22, p.a22 - one, p.a24],
        vec![p.a31, p.a33 - one, p.a33, p.a34],
        vec![p.a41, p.a42, p.a42, p.a44],
    ])
    .unwrap()
}

/// The embedded singlet `(0, 1, -1, 0)^T` fixed by [`sm4`] members.
pub fn psi_tilde() -> ComplexVector {
    ComplexVector::from_reals(&[0.0, 1.0, -1.0, 0.0]).unwrap()
}

/// One bound matrix entry expressed as an affine combination of free entries
/// in the same row: `a[target] = sum coeff * a[pos] + constant`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AffineRelation {
    pub target: (usize, usize),
    pub terms: Vec<RelationTerm>,
    #[serde(with = "complex_pair")]
    pub constant: Complex,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RelationTerm {
    pub pos: (usize, usize),
    #[serde(with = "complex_pair")]
    pub coeff: Complex,
}

impl AffineRelation {
    /// Value the target entry must take given the rest of the matrix.
    pub fn resolve(&self, m: &DenseMatrix) -> Complex {
        self.terms
            .iter()
            .map(|t| t.coeff * m.get(t.pos.0, t.pos.1))
            .sum::<Complex>()
            + self.constant
    }

    pub fn residual(&self, m: &DenseMatrix) -> f64 {
        (m.get(self.target.0, self.target.1) - self.resolve(m)).norm()
    }
}

/// Affine description of `{A : A v = v}` for a fixed nonzero vector `v`.
///
/// Per row exactly one entry over the support of `v` is bound by an affine
/// relation; every other entry is free. Matrices satisfying the relations fix
/// `v` by construction, and the set is closed under multiplication.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StabilizerFamily {
    #[serde(with = "complex_pairs")]
    fixed_vector: Vec<Complex>,
    free_indices: Vec<(usize, usize)>,
    bound_constraints: Vec<AffineRelation>,
}

/// Builds the stabilizer family of a nonzero vector.
///
/// In each row the bound entry sits in the highest support column other than
/// the row's own index (or the sole support column); for a vector supported
/// on exactly two entries of opposite sign this reproduces the
/// pairing/sum-to-one pattern of the 4x4 family above.
pub fn stabilizer_family(v: &ComplexVector) -> Result<StabilizerFamily> {
    let n = v.dim();
    let support: Vec<usize> = (0..n).filter(|&j| v.get(j) != Complex::ZERO).collect();
    if support.is_empty() {
        return Err(Error::InvalidArgument(
            "stabilizer of the zero vector is everything; fixed vector must be nonzero".into(),
        ));
    }
    let mut bound_constraints = Vec::with_capacity(n);
    let mut bound_pos = std::collections::HashSet::new();
    for i in 0..n {
        let b = support
            .iter()
            .copied()
            .filter(|&j| j != i)
            .max()
            .unwrap_or(support[0]);
        let vb = v.get(b);
        let terms = support
            .iter()
            .copied()
            .filter(|&j| j != b)
            .map(|j| RelationTerm {
                pos: (i, j),
                coeff: -v.get(j) / vb,
            })
            .collect();
        bound_constraints.push(AffineRelation {
            target: (i, b),
            terms,
            constant: v.get(i) / vb,
        });
        bound_pos.insert((i, b));
    }
    let free_indices = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|pos| !bound_pos.contains(pos))
        .collect();
    Ok(StabilizerFamily {
        fixed_vector: v.entries().to_vec(),
        free_indices,
        bound_constraints,
    })
}

impl StabilizerFamily {
    pub fn dim(&self) -> usize {
        self.fixed_vector.len()
    }

    pub fn fixed_vector(&self) -> ComplexVector {
        ComplexVector::new(self.fixed_vector.clone()).unwrap()
    }

    pub fn free_indices(&self) -> &[(usize, usize)] {
        &self.free_indices
    }

    pub fn bound_constraints(&self) -> &[AffineRelation] {
        &self.bound_constraints
    }

    /// Deterministic member draw: free entries uniform on the complex disk of
    /// radius `scale`, bound entries resolved from the relations. The same
    /// seed always yields the same matrix.
    pub fn sample_member(&self, seed: u64, scale: f64) -> Result<DenseMatrix> {
        if !scale.is_finite() || scale <= 0.0 {
            return Err(Error::InvalidArgument(format!(
                "sampling scale must be positive and finite, got {scale}"
            )));
        }
        let n = self.dim();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut m = DenseMatrix::zeros(n, n);
        for &(i, j) in &self.free_indices {
            let r = scale * rng.random::<f64>().sqrt();
            let ang = rng.random::<f64>() * std::f64::consts::TAU;
            m.set(i, j, Complex::from_polar(r, ang));
        }
        for rel in &self.bound_constraints {
            let value = rel.resolve(&m);
            m.set(rel.target.0, rel.target.1, value);
        }
        Ok(m)
    }

    /// Whether `a` fixes the family vector and satisfies every affine
    /// relation, both within `tol`.
    pub fn is_member(&self, a: &DenseMatrix, tol: f64) -> Result<bool> {
        let n = self.dim();
        if !a.is_square() || a.rows() != n {
            return Err(Error::DimensionMismatch(format!(
                "family dimension {n}, matrix is {}x{}",
                a.rows(),
                a.cols()
            )));
        }
        let v = self.fixed_vector();
        let image = a.mul_vec(&v)?;
        if !image.approx_eq(&v, tol) {
            return Ok(false);
        }
        Ok(self
            .bound_constraints
            .iter()
            .all(|rel| rel.residual(a) <= tol))
    }
}

/// Default tolerance for [`kron_self_factor`]'s rank-1 acceptance.
pub const FACTOR_TOL: f64 = 1e-8;

/// Attempts to write a 4x4 matrix as `g (x) g / det(g)` for an invertible
/// 2x2 `g`.
///
/// The block rearrangement of a Kronecker product has rank 1; the candidate
/// factor is read off its dominant cross-section (largest 2x2 minor bounds
/// the rank-1 defect), then verified by exact reconstruction. Absence of a
/// factorization returns `None`, never an error. The returned factor is
/// canonicalized by [`canonical_factor`].
pub fn kron_self_factor(a: &DenseMatrix, tol: f64) -> Result<Option<DenseMatrix>> {
    if a.rows() != 4 || a.cols() != 4 {
        return Err(Error::DimensionMismatch(format!(
            "self-factorization is defined for 4x4 matrices, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    // Rearrange so that blocks become rows: R[2i+j][2k+l] = A[2i+k][2j+l].
    let mut r = DenseMatrix::zeros(4, 4);
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    r.set(2 * i + j, 2 * k + l, a.get(2 * i + k, 2 * j + l));
                }
            }
        }
    }
    let max_abs = r.max_norm();
    if max_abs == 0.0 {
        return Ok(None);
    }
    let minor_tol = tol * max_abs.powi(2).max(1.0);
    for r1 in 0..4 {
        for r2 in (r1 + 1)..4 {
            for c1 in 0..4 {
                for c2 in (c1 + 1)..4 {
                    let minor = r.get(r1, c1) * r.get(r2, c2) - r.get(r1, c2) * r.get(r2, c1);
                    if minor.norm() > minor_tol {
                        return Ok(None);
                    }
                }
            }
        }
    }
    // Rank is (numerically) 1: R = u v^T with v read off the dominant row.
    let (mut pr, mut pc, mut best) = (0, 0, 0.0);
    for i in 0..4 {
        for j in 0..4 {
            if r.get(i, j).norm() > best {
                best = r.get(i, j).norm();
                pr = i;
                pc = j;
            }
        }
    }
    let pivot = r.get(pr, pc);
    let g = DenseMatrix::from_rows(&[
        vec![r.get(pr, 0) / pivot, r.get(pr, 1) / pivot],
        vec![r.get(pr, 2) / pivot, r.get(pr, 3) / pivot],
    ])
    .unwrap();
    let det = g.det()?;
    if det.norm() < tol {
        return Ok(None);
    }
    let reconstruction = kron(&g, &g)?.scale(Complex::ONE / det);
    let residual = reconstruction.sub(a)?.max_norm();
    if residual > tol * a.max_norm().max(1.0) {
        return Ok(None);
    }
    Ok(Some(canonical_factor(&g)))
}

/// Canonical representative of the factor gauge class `{lambda g}`:
/// determinant 1, and the first nonzero entry made lexicographically
/// positive (positive real part, or positive imaginary part on the boundary).
pub fn canonical_factor(g: &DenseMatrix) -> DenseMatrix {
    let det = g.det().expect("factor must be square");
    let mut out = g.scale(Complex::ONE / det.sqrt());
    let eps = 1e-12 * out.max_norm();
    let lead = out.entries().iter().find(|z| z.norm() > eps).copied();
    if let Some(z) = lead {
        let flip = if z.re.abs() > eps {
            z.re < 0.0
        } else {
            z.im < 0.0
        };
        if flip {
            out = out.scale(re(-1.0));
        }
    }
    out
}

/// Constructs `g (x) g / det(g)`; the reducible members of the singlet
/// stabilizer.
pub fn self_kron_normalized(g: &DenseMatrix) -> Result<DenseMatrix> {
    let det = g.det()?;
    if det.norm() == 0.0 {
        return Err(Error::InvalidArgument(
            "singular factor cannot be determinant-normalized".into(),
        ));
    }
    Ok(kron(g, g)?.scale(Complex::ONE / det))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::c;
    use crate::states::{ghz4, pauli_z};

    fn ones_column_member(corner: f64) -> Sm4Params {
        Sm4Params {
            a11: Complex::ONE,
            a12: Complex::ZERO,
            a14: Complex::ZERO,
            a21: Complex::ONE,
            a22: Complex::ONE,
            a24: Complex::ZERO,
            a31: Complex::ONE,
            a33: Complex::ONE,
            a34: Complex::ZERO,
            a41: Complex::ONE,
            a42: Complex::ONE,
            a44: re(corner),
        }
    }

    #[test]
    fn identity_params_give_identity() {
        let a = sm4(&Sm4Params::identity());
        assert!(a.approx_eq(&DenseMatrix::identity(4), 0.0));
        let psi = psi_tilde();
        assert!(a.mul_vec(&psi).unwrap().approx_eq(&psi, 0.0));
    }

    #[test]
    fn corner_two_matrix_shape() {
        let a = sm4(&ones_column_member(2.0));
        let expected = DenseMatrix::from_real_rows(&[
            &[1.0, 0.0, 0.0, 0.0],
            &[1.0, 1.0, 0.0, 0.0],
            &[1.0, 0.0, 1.0, 0.0],
            &[1.0, 1.0, 1.0, 2.0],
        ])
        .unwrap();
        assert!(a.approx_eq(&expected, 0.0));
        let psi = psi_tilde();
        assert!(a.mul_vec(&psi).unwrap().approx_eq(&psi, 0.0));
    }

    #[test]
    fn random_params_fix_psi_tilde() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        let psi = psi_tilde();
        for _ in 0..1000 {
            let a = sm4(&Sm4Params::sample(&mut rng, 3.0));
            let image = a.mul_vec(&psi).unwrap();
            assert!(image.sub(&psi).unwrap().max_norm() < 1e-12);
        }
    }

    #[test]
    fn family_of_psi_tilde_matches_known_pattern() {
        let fam = stabilizer_family(&psi_tilde()).unwrap();
        let targets: Vec<(usize, usize)> =
            fam.bound_constraints().iter().map(|r| r.target).collect();
        assert_eq!(targets, vec![(0, 2), (1, 2), (2, 1), (3, 2)]);
        // Row 1: a[1][2] = a[1][1] - 1.
        let rel = &fam.bound_constraints()[1];
        assert_eq!(rel.terms.len(), 1);
        assert_eq!(rel.terms[0].pos, (1, 1));
        assert!((rel.terms[0].coeff - Complex::ONE).norm() < 1e-15);
        assert!((rel.constant + Complex::ONE).norm() < 1e-15);
        // Row 0: a[0][2] = a[0][1].
        let rel0 = &fam.bound_constraints()[0];
        assert!((rel0.terms[0].coeff - Complex::ONE).norm() < 1e-15);
        assert!(rel0.constant.norm() < 1e-15);
        assert_eq!(fam.free_indices().len(), 12);
    }

    #[test]
    fn family_accepts_sm4_members() {
        let fam = stabilizer_family(&psi_tilde()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..100 {
            let a = sm4(&Sm4Params::sample(&mut rng, 2.0));
            assert!(fam.is_member(&a, 1e-10).unwrap());
        }
    }

    #[test]
    fn family_of_basis_vector() {
        let e1 = ComplexVector::basis(2, 0).unwrap();
        let fam = stabilizer_family(&e1).unwrap();
        // a[0][0] = 1 and a[1][0] = 0; second column free.
        let m = fam.sample_member(5, 1.0).unwrap();
        assert!((m.get(0, 0) - Complex::ONE).norm() < 1e-15);
        assert!(m.get(1, 0).norm() < 1e-15);
        assert!(fam.is_member(&m, 1e-12).unwrap());
    }

    #[test]
    fn family_of_ghz_vector_pairs_support_columns() {
        let fam = stabilizer_family(ghz4().amplitudes()).unwrap();
        for (i, rel) in fam.bound_constraints().iter().enumerate() {
            if i == 12 {
                assert_eq!(rel.target, (12, 3));
                assert!((rel.constant + Complex::ONE).norm() < 1e-15);
            } else {
                assert_eq!(rel.target, (i, 12));
                let expected_const = if i == 3 { re(-1.0) } else { Complex::ZERO };
                assert!((rel.constant - expected_const).norm() < 1e-15);
            }
            assert_eq!(rel.terms.len(), 1);
            assert!((rel.terms[0].coeff - Complex::ONE).norm() < 1e-15);
        }
    }

    #[test]
    fn zero_vector_rejected() {
        let z = ComplexVector::zeros(4);
        assert!(stabilizer_family(&z).is_err());
    }

    #[test]
    fn sampling_is_deterministic_and_members_check_out() {
        let fam = stabilizer_family(&psi_tilde()).unwrap();
        let a = fam.sample_member(7, 1.5).unwrap();
        let b = fam.sample_member(7, 1.5).unwrap();
        assert_eq!(a, b);
        assert!(fam.is_member(&a, 1e-12).unwrap());
        let other = fam.sample_member(8, 1.5).unwrap();
        assert_ne!(a, other);
    }

    #[test]
    fn sampling_rejects_bad_scale() {
        let fam = stabilizer_family(&psi_tilde()).unwrap();
        assert!(fam.sample_member(0, 0.0).is_err());
        assert!(fam.sample_member(0, -2.0).is_err());
    }

    #[test]
    fn products_of_members_are_members() {
        let fam = stabilizer_family(&psi_tilde()).unwrap();
        for seed in 0..50u64 {
            let a = fam.sample_member(seed, 1.0).unwrap();
            let b = fam.sample_member(seed + 1000, 1.0).unwrap();
            let ab = a.mul(&b).unwrap();
            assert!(fam.is_member(&ab, 1e-10).unwrap());
        }
    }

    #[test]
    fn sigma_pair_is_not_a_member() {
        let fam = stabilizer_family(&psi_tilde()).unwrap();
        let zz = kron(&pauli_z(), &pauli_z()).unwrap();
        assert!(!fam.is_member(&zz, 1e-10).unwrap());
    }

    #[test]
    fn is_member_rejects_wrong_dims() {
        let fam = stabilizer_family(&psi_tilde()).unwrap();
        assert!(fam.is_member(&DenseMatrix::identity(2), 1e-10).is_err());
    }

    #[test]
    fn determinant_ranges_over_zero() {
        // Zeroing the first row forces det = 0 exactly.
        let mut p = Sm4Params::identity();
        p.a11 = Complex::ZERO;
        p.a12 = Complex::ZERO;
        p.a14 = Complex::ZERO;
        let a = sm4(&p);
        assert_eq!(a.det().unwrap(), Complex::ZERO);
        assert!(a
            .mul_vec(&psi_tilde())
            .unwrap()
            .approx_eq(&psi_tilde(), 0.0));
        // Real-parameter samples still spread their determinants around.
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        let mut seen_large = false;
        for _ in 0..100 {
            let mut q = Sm4Params::sample(&mut rng, 2.0);
            q.a11 = re(q.a11.re);
            q.a22 = re(q.a22.re);
            if sm4(&q).det().unwrap().norm() > 0.5 {
                seen_large = true;
            }
        }
        assert!(seen_large);
    }

    #[test]
    fn corner_one_matrix_factors() {
        let a = sm4(&ones_column_member(1.0));
        let g = kron_self_factor(&a, FACTOR_TOL)
            .unwrap()
            .expect("reducible");
        let expected = DenseMatrix::from_real_rows(&[&[1.0, 0.0], &[1.0, 1.0]]).unwrap();
        assert!(g.approx_eq(&expected, 1e-12));
    }

    #[test]
    fn corner_two_matrix_does_not_factor() {
        let a = sm4(&ones_column_member(2.0));
        assert!(kron_self_factor(&a, FACTOR_TOL).unwrap().is_none());
    }

    #[test]
    fn roundtrip_recovers_random_factors() {
        let mut rng = ChaCha8Rng::seed_from_u64(44);
        let mut done = 0;
        while done < 200 {
            let entries = (0..4)
                .map(|_| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
                .collect();
            let g = DenseMatrix::new(2, 2, entries).unwrap();
            if g.det().unwrap().norm() < 1e-3 {
                continue;
            }
            let a = self_kron_normalized(&g).unwrap();
            let rec = kron_self_factor(&a, FACTOR_TOL)
                .unwrap()
                .expect("constructed input must factor");
            let canon = canonical_factor(&g);
            assert!(
                rec.sub(&canon).unwrap().max_norm() < 1e-8,
                "gauge-fixed recovery drifted"
            );
            done += 1;
        }
    }

    #[test]
    fn reducible_members_fix_psi_tilde() {
        let fam = stabilizer_family(&psi_tilde()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(45);
        for _ in 0..100 {
            let entries = (0..4)
                .map(|_| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
                .collect();
            let g = DenseMatrix::new(2, 2, entries).unwrap();
            if g.det().unwrap().norm() < 1e-3 {
                continue;
            }
            let a = self_kron_normalized(&g).unwrap();
            assert!(fam.is_member(&a, 1e-9).unwrap());
        }
    }

    #[test]
    fn factor_rejects_plain_kron_of_distinct_matrices() {
        // b (x) c with b not proportional to c: rank-1 rearrangement but no
        // self-factorization.
        let b = DenseMatrix::from_real_rows(&[&[1.0, 2.0], &[0.0, 1.0]]).unwrap();
        let cmat = DenseMatrix::from_real_rows(&[&[3.0, 0.0], &[1.0, 1.0]]).unwrap();
        let a = kron(&b, &cmat).unwrap();
        assert!(kron_self_factor(&a, FACTOR_TOL).unwrap().is_none());
    }

    #[test]
    fn factor_requires_4x4() {
        assert!(kron_self_factor(&DenseMatrix::identity(3), FACTOR_TOL).is_err());
    }

    #[test]
    fn family_serializes_roundtrip() {
        let fam = stabilizer_family(&psi_tilde()).unwrap();
        let json = serde_json::to_string(&fam).unwrap();
        let back: StabilizerFamily = serde_json::from_str(&json).unwrap();
        assert_eq!(fam, back);
    }
}
