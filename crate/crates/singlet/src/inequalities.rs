//! Closed-form quantum correlations, the classical bounds they violate, and
//! the machinery that certifies the violations: Bell's triangle inequality,
//! Wigner's outcome-atom inequality, the four-particle perfect-correlation
//! formula with its parity infeasibility certificate, and a Monte Carlo
//! estimator for local-hidden-variable response models.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::states::Direction;

/// Margins above this count as violations; every interesting margin in this
/// domain is O(0.1), far above rounding noise.
pub const VIOLATION_TOL: f64 = 1e-9;

/// Two-sided comparison record for any of the inequality checks.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InequalityReport {
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub violated: bool,
}

impl InequalityReport {
    pub fn new(lhs: f64, rhs: f64) -> Self {
        let margin = lhs - rhs;
        Self {
            lhs,
            rhs,
            margin,
            violated: margin > VIOLATION_TOL,
        }
    }
}

/// Singlet spin correlation `E(n1, n2) = -(n1 . n2)`.
pub fn bell_correlation(n1: &Direction, n2: &Direction) -> f64 {
    -n1.dot(n2)
}

/// Bell's triangle inequality
/// `|E(n1,n2) - E(n1,n3)| <= 1 + E(n2,n3)` evaluated on the quantum
/// correlation; a positive margin exhibits the hidden-variable contradiction.
pub fn bell_check(n1: &Direction, n2: &Direction, n3: &Direction) -> InequalityReport {
    let lhs = (bell_correlation(n1, n2) - bell_correlation(n1, n3)).abs();
    let rhs = 1.0 + bell_correlation(n2, n3);
    InequalityReport::new(lhs, rhs)
}

/// Same-sign pair probability for coplanar settings:
/// `P(++|t,p) = P(--|t,p) = sin^2((t - p)/2) / 2`.
pub fn wigner_probability(theta: f64, phi: f64) -> f64 {
    let s = ((theta - phi) / 2.0).sin();
    0.5 * s * s
}

/// Wigner's inequality on pair probabilities at three coplanar separations:
/// `P(t_ki) <= P(t_jk) + P(t_ij)` with `P(t) = sin^2(t/2) / 2`.
pub fn wigner_check(t_ij: f64, t_jk: f64, t_ki: f64) -> InequalityReport {
    let lhs = wigner_probability(t_ki, 0.0);
    let rhs = wigner_probability(t_jk, 0.0) + wigner_probability(t_ij, 0.0);
    InequalityReport::new(lhs, rhs)
}

/// Sign triple `(s1, s2, s3)` of predetermined outcomes in three directions,
/// listed in the fixed enumeration order of [`OutcomeDistribution`].
pub const OUTCOME_ATOMS: [(i8, i8, i8); 8] = [
    (1, 1, 1),
    (1, 1, -1),
    (1, -1, 1),
    (-1, 1, 1),
    (1, -1, -1),
    (-1, 1, -1),
    (-1, -1, 1),
    (-1, -1, -1),
];

/// Probability assignment over the eight predetermined outcome triples.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutcomeDistribution {
    p: [f64; 8],
}

impl OutcomeDistribution {
    pub fn new(p: [f64; 8]) -> Result<Self> {
        if p.iter().any(|x| !x.is_finite() || *x < 0.0) {
            return Err(Error::InvalidDistribution(
                "probabilities must be finite and nonnegative".into(),
            ));
        }
        let sum: f64 = p.iter().sum();
        if (sum - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidDistribution(format!(
                "probabilities sum to {sum}, not 1"
            )));
        }
        Ok(Self { p })
    }

    pub fn uniform() -> Self {
        Self { p: [0.125; 8] }
    }

    /// All mass on a single outcome triple.
    pub fn point_mass(s1: i8, s2: i8, s3: i8) -> Self {
        let mut p = [0.0; 8];
        p[Self::index_of(s1, s2, s3)] = 1.0;
        Self { p }
    }

    /// Seeded random distribution (normalized uniform draws).
    pub fn sample(rng: &mut impl Rng) -> Self {
        let mut p = [0.0; 8];
        for x in &mut p {
            *x = rng.random::<f64>();
        }
        let sum: f64 = p.iter().sum();
        for x in &mut p {
            *x /= sum;
        }
        Self { p }
    }

    pub fn index_of(s1: i8, s2: i8, s3: i8) -> usize {
        OUTCOME_ATOMS
            .iter()
            .position(|&atom| atom == (s1, s2, s3))
            .expect("signs must be +-1")
    }

    pub fn prob(&self, s1: i8, s2: i8, s3: i8) -> f64 {
        self.p[Self::index_of(s1, s2, s3)]
    }

    pub fn probabilities(&self) -> &[f64; 8] {
        &self.p
    }
}

/// The subset comparison underlying Wigner's bound:
/// `P{(++-), (+--)} <= P{(++-), (+--), (-+-), (+-+)}`.
///
/// The left event set is contained in the right one, so no valid distribution
/// can violate this; the quantum pair probabilities jointly escape every such
/// assignment.
pub fn wigner_classical_sides(d: &OutcomeDistribution) -> InequalityReport {
    let lhs = d.prob(1, 1, -1) + d.prob(1, -1, -1);
    let rhs = d.prob(1, 1, -1) + d.prob(1, -1, -1) + d.prob(-1, 1, -1) + d.prob(1, -1, 1);
    InequalityReport::new(lhs, rhs)
}

/// Deterministic hidden-variable response model `A(n, lambda) in {-1, +1}`
/// with `lambda` uniform on the unit sphere.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum LhvModel {
    /// `A(n, lambda) = sign(n . lambda)`.
    SignOfDotProduct,
    /// Piecewise response on `n . lambda`: the interval `[-1, 1]` is split
    /// into equally wide bins, each assigned a fixed sign.
    CustomTable(Vec<i8>),
}

impl LhvModel {
    fn validate(&self) -> Result<()> {
        match self {
            LhvModel::SignOfDotProduct => Ok(()),
            LhvModel::CustomTable(values) => {
                if values.is_empty() || values.iter().any(|v| *v != 1 && *v != -1) {
                    Err(Error::InvalidArgument(
                        "custom response table must be nonempty with +-1 entries".into(),
                    ))
                } else {
                    Ok(())
                }
            }
        }
    }

    /// Response of the model for detector direction `n` and hidden state
    /// `lambda` (a unit 3-vector).
    pub fn response(&self, n: &Direction, lambda: [f64; 3]) -> f64 {
        let u = {
            let v = n.unit_vector();
            (v[0] * lambda[0] + v[1] * lambda[1] + v[2] * lambda[2]).clamp(-1.0, 1.0)
        };
        match self {
            LhvModel::SignOfDotProduct => {
                if u >= 0.0 {
                    1.0
                } else {
                    -1.0
                }
            }
            LhvModel::CustomTable(values) => {
                let bins = values.len();
                let idx = (((u + 1.0) / 2.0) * bins as f64).floor() as usize;
                values[idx.min(bins - 1)] as f64
            }
        }
    }
}

/// Monte Carlo estimate with its standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LhvEstimate {
    pub estimate: f64,
    pub std_error: f64,
    pub samples: usize,
}

/// Monte Carlo estimate of the hidden-variable correlation
/// `-<A(n1, lambda) A(n2, lambda)>` with `lambda` drawn uniformly from the
/// unit sphere. Identical seeds give bit-identical estimates.
pub fn lhv_correlation(
    model: &LhvModel,
    n1: &Direction,
    n2: &Direction,
    samples: usize,
    seed: u64,
) -> Result<LhvEstimate> {
    model.validate()?;
    if samples == 0 {
        return Err(Error::InvalidArgument("need at least one sample".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    for _ in 0..samples {
        let z: f64 = rng.random_range(-1.0..1.0);
        let ang = rng.random::<f64>() * std::f64::consts::TAU;
        let r = (1.0 - z * z).max(0.0).sqrt();
        let lambda = [r * ang.cos(), r * ang.sin(), z];
        let x = -model.response(n1, lambda) * model.response(n2, lambda);
        sum += x;
        sum_sq += x * x;
    }
    let n = samples as f64;
    let mean = sum / n;
    let std_error = if samples > 1 {
        let var = ((sum_sq - n * mean * mean) / (n - 1.0)).max(0.0);
        (var / n).sqrt()
    } else {
        0.0
    };
    Ok(LhvEstimate {
        estimate: mean,
        std_error,
        samples,
    })
}

/// Closed form of the sign-model correlation: for detectors separated by an
/// angle `gamma`, the hemispheres agree with probability `1 - gamma/pi`, so
/// the estimator converges to `-(1 - 2 gamma / pi)`.
pub fn sign_model_expectation(n1: &Direction, n2: &Direction) -> f64 {
    let gamma = n1.dot(n2).clamp(-1.0, 1.0).acos();
    -(1.0 - 2.0 * gamma / std::f64::consts::PI)
}

/// Four-particle perfect correlation
/// `E = cos t1 cos t2 cos t3 cos t4 - sin t1 sin t2 sin t3 sin t4 cos(p1 + p2 - p3 - p4)`.
pub fn ghz_correlation(d1: &Direction, d2: &Direction, d3: &Direction, d4: &Direction) -> f64 {
    let cos_prod = d1.theta.cos() * d2.theta.cos() * d3.theta.cos() * d4.theta.cos();
    let sin_prod = d1.theta.sin() * d2.theta.sin() * d3.theta.sin() * d4.theta.sin();
    let phase = d1.phi + d2.phi - d3.phi - d4.phi;
    cos_prod - sin_prod * phase.cos()
}

/// One product constraint on the four equatorial response functions:
/// `A(k1) B(k2) C(k3) D(k4) = required_product` where `k` indexes grid
/// azimuths `2 pi k / m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParityConstraint {
    pub settings: [usize; 4],
    pub required_product: i8,
}

/// Satisfying assignment: four tables of +-1 responses over the grid.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GhzWitness {
    pub a: Vec<i8>,
    pub b: Vec<i8>,
    pub c: Vec<i8>,
    pub d: Vec<i8>,
}

/// Outcome of the grid feasibility search for the four-particle perfect
/// correlations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GhzContradictionReport {
    pub grid_m: usize,
    pub feasible: bool,
    /// Present when feasible: an assignment satisfying every constraint.
    pub witness: Option<GhzWitness>,
    /// Present when infeasible: constraints whose product equation forces
    /// `+1 = -1`; multiplying them out cancels every response factor.
    pub conflict_chain: Option<Vec<ParityConstraint>>,
}

#[derive(Clone)]
struct ParityRow {
    mask: u64,
    rhs: bool,
    history: Vec<usize>,
}

fn xor_histories(a: &[usize], b: &[usize]) -> Vec<usize> {
    // Symmetric difference of sorted index lists.
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Searches for +-1 grid response functions reproducing the perfect
/// correlations: product `-1` whenever the azimuth combination
/// `p1 + p2 - p3 - p4` is `0 (mod 2 pi)` and `+1` whenever it is `pi`.
///
/// Constraints are parity equations over GF(2); Gaussian elimination either
/// produces a satisfying assignment or an exact conflict chain (the subset of
/// constraints whose product is the contradiction `+1 = -1`).
///
/// `grid_m` must be even (so pi sits on the grid) and between 4 and 16.
pub fn ghz_contradiction(grid_m: usize) -> Result<GhzContradictionReport> {
    parity_feasibility(grid_m, true, true)
}

fn parity_feasibility(
    grid_m: usize,
    include_zero_family: bool,
    include_pi_family: bool,
) -> Result<GhzContradictionReport> {
    if grid_m < 4 {
        return Err(Error::InvalidArgument(format!(
            "grid must have at least 4 points, got {grid_m}"
        )));
    }
    if !grid_m.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!(
            "grid size {grid_m} is odd, so the azimuth pi is not on the grid"
        )));
    }
    // 4 response tables packed into one 64-bit row caps the grid at 16.
    if grid_m > 16 {
        return Err(Error::InvalidArgument(format!(
            "grid size {grid_m} exceeds the supported maximum of 16"
        )));
    }
    let m = grid_m;
    let h = m / 2;
    let mi = m as i64;

    let mut constraints: Vec<ParityConstraint> = Vec::new();
    // Leading with a known short cycle keeps the elimination certificate
    // minimal when the system is contradictory (possible only when 4 | m,
    // where the doubled settings reach the half-turn).
    if include_zero_family && include_pi_family && m.is_multiple_of(4) {
        let t = m / 4;
        constraints.push(ParityConstraint {
            settings: [t, 0, t, 0],
            required_product: -1,
        });
        constraints.push(ParityConstraint {
            settings: [t, 0, 0, t],
            required_product: -1,
        });
        constraints.push(ParityConstraint {
            settings: [h, 0, t, t],
            required_product: -1,
        });
        constraints.push(ParityConstraint {
            settings: [h, 0, 0, 0],
            required_product: 1,
        });
    }
    let preseeded = constraints.len();
    for k1 in 0..m {
        for k2 in 0..m {
            for k3 in 0..m {
                if include_zero_family {
                    let k4 = (k1 as i64 + k2 as i64 - k3 as i64).rem_euclid(mi) as usize;
                    let cons = ParityConstraint {
                        settings: [k1, k2, k3, k4],
                        required_product: -1,
                    };
                    if !constraints[..preseeded].contains(&cons) {
                        constraints.push(cons);
                    }
                }
                if include_pi_family {
                    let k4 = (k1 as i64 + k2 as i64 - k3 as i64 - h as i64).rem_euclid(mi) as usize;
                    let cons = ParityConstraint {
                        settings: [k1, k2, k3, k4],
                        required_product: 1,
                    };
                    if !constraints[..preseeded].contains(&cons) {
                        constraints.push(cons);
                    }
                }
            }
        }
    }

    // Online elimination over GF(2); variables are the 4m response bits
    // (sign -1 maps to bit 1), packed a | b | c | d into one u64.
    let nvars = 4 * m;
    debug_assert!(nvars <= 64);
    let mut basis: Vec<Option<ParityRow>> = vec![None; nvars];
    for (idx, cons) in constraints.iter().enumerate() {
        let [k1, k2, k3, k4] = cons.settings;
        let mask =
            (1u64 << k1) | (1u64 << (m + k2)) | (1u64 << (2 * m + k3)) | (1u64 << (3 * m + k4));
        let mut row = ParityRow {
            mask,
            rhs: cons.required_product == -1,
            history: vec![idx],
        };
        loop {
            if row.mask == 0 {
                if row.rhs {
                    let chain = row
                        .history
                        .iter()
                        .map(|&i| constraints[i])
                        .collect::<Vec<_>>();
                    debug_assert!(verify_conflict_chain(&chain, m));
                    return Ok(GhzContradictionReport {
                        grid_m: m,
                        feasible: false,
                        witness: None,
                        conflict_chain: Some(chain),
                    });
                }
                break;
            }
            let lead = row.mask.trailing_zeros() as usize;
            match &basis[lead] {
                Some(b) => {
                    row.mask ^= b.mask;
                    row.rhs ^= b.rhs;
                    row.history = xor_histories(&row.history, &b.history);
                }
                None => {
                    basis[lead] = Some(row);
                    break;
                }
            }
        }
    }

    // Consistent: back-substitute with free variables set to +1.
    let mut bits = vec![false; nvars];
    for lead in (0..nvars).rev() {
        if let Some(row) = &basis[lead] {
            let mut value = row.rhs;
            let mut rest = row.mask & !(1u64 << lead);
            while rest != 0 {
                let j = rest.trailing_zeros() as usize;
                if bits[j] {
                    value = !value;
                }
                rest &= rest - 1;
            }
            bits[lead] = value;
        }
    }
    let table = |offset: usize| -> Vec<i8> {
        (0..m)
            .map(|k| if bits[offset + k] { -1 } else { 1 })
            .collect()
    };
    let witness = GhzWitness {
        a: table(0),
        b: table(m),
        c: table(2 * m),
        d: table(3 * m),
    };
    for cons in &constraints {
        let [k1, k2, k3, k4] = cons.settings;
        let product = witness.a[k1] * witness.b[k2] * witness.c[k3] * witness.d[k4];
        debug_assert_eq!(product, cons.required_product);
        if product != cons.required_product {
            return Err(Error::InvalidArgument(
                "internal: back-substituted witness failed a constraint".into(),
            ));
        }
    }
    Ok(GhzContradictionReport {
        grid_m: m,
        feasible: true,
        witness: Some(witness),
        conflict_chain: None,
    })
}

/// A conflict chain is valid when every response factor cancels while the
/// required products multiply to -1.
pub fn verify_conflict_chain(chain: &[ParityConstraint], m: usize) -> bool {
    let mut mask = 0u64;
    let mut rhs = false;
    for cons in chain {
        let [k1, k2, k3, k4] = cons.settings;
        mask ^= (1u64 << k1) | (1u64 << (m + k2)) | (1u64 << (2 * m + k3)) | (1u64 << (3 * m + k4));
        rhs ^= cons.required_product == -1;
    }
    mask == 0 && rhs
}

/// Which inequality a scan sweeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Experiment {
    Bell,
    Wigner,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanRow {
    pub angles: [f64; 3],
    #[serde(flatten)]
    pub report: InequalityReport,
}

/// Exhaustive evaluation over the coplanar angle grid `{2 pi k / n}^3`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanTable {
    pub experiment: Experiment,
    pub grid_n: usize,
    pub rows: Vec<ScanRow>,
    /// Index of the first row attaining the maximal margin.
    pub max_index: usize,
}

impl ScanTable {
    pub fn max_row(&self) -> &ScanRow {
        &self.rows[self.max_index]
    }
}

/// Evaluates the chosen check on every triple of grid angles, in
/// lexicographic order, and records the maximal-margin configuration.
pub fn violation_scan(experiment: Experiment, grid_n: usize) -> Result<ScanTable> {
    if grid_n < 2 {
        return Err(Error::InvalidArgument(format!(
            "scan grid must have at least 2 points, got {grid_n}"
        )));
    }
    let step = std::f64::consts::TAU / grid_n as f64;
    let mut rows = Vec::with_capacity(grid_n * grid_n * grid_n);
    let mut max_index = 0;
    for i in 0..grid_n {
        for j in 0..grid_n {
            for k in 0..grid_n {
                let angles = [i as f64 * step, j as f64 * step, k as f64 * step];
                let report = match experiment {
                    Experiment::Bell => bell_check(
                        &Direction::planar(angles[0]),
                        &Direction::planar(angles[1]),
                        &Direction::planar(angles[2]),
                    ),
                    Experiment::Wigner => wigner_check(
                        angles[1] - angles[0],
                        angles[2] - angles[1],
                        angles[2] - angles[0],
                    ),
                };
                rows.push(ScanRow { angles, report });
                if report.margin > rows[max_index].report.margin {
                    max_index = rows.len() - 1;
                }
            }
        }
    }
    Ok(ScanTable {
        experiment,
        grid_n,
        rows,
        max_index,
    })
}
