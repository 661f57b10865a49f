//! Exact desk-scale toolkit for spin-entanglement algebra.
//!
//! The crate constructs the singlet and four-spin perfectly correlated
//! states, evaluates and violates the Bell and Wigner inequalities, builds
//! the stabilizer semigroup of any fixed vector (with Kronecker
//! self-factorization to separate its reducible members), simulates
//! local-hidden-variable response models by Monte Carlo, and works out the
//! frame-relative spin assignments of half-angle spinor frames. Every closed
//! form is cross-checked against a brute-force statevector expectation.
//!
//! Modules, bottom up:
//! - [`linalg`]: small dense complex matrices, Kronecker and wedge products,
//!   determinants;
//! - [`states`]: named states, spin observables, the expectation oracle;
//! - [`rotations`]: the polar operator family and its singlet-span action;
//! - [`stabilizer`]: affine stabilizer families, sampling, membership, and
//!   factorization;
//! - [`inequalities`]: Bell/Wigner checks, the four-particle parity
//!   certificate, hidden-variable Monte Carlo, violation scans;
//! - [`frames`]: triads, frame decompositions, spinor frame identities.
//!
//! All values are immutable after construction and all operations are pure
//! functions of their inputs (sampling takes explicit seeds), so everything
//! is safe to share across threads.
//!
//! ```
//! use singlet::inequalities::{bell_check, ghz_contradiction};
//! use singlet::states::{expectation, singlet, spin_obs, Direction};
//!
//! let n1 = Direction::planar(0.0);
//! let n2 = Direction::planar(std::f64::consts::FRAC_PI_3);
//!
//! // closed form and brute-force oracle agree: E = -cos(pi/3) = -1/2
//! let oracle = expectation(&singlet(), &[spin_obs(&n1), spin_obs(&n2)]).unwrap();
//! assert!((oracle + 0.5).abs() < 1e-12);
//!
//! // the classical bound breaks at the standard angle triple
//! let third = Direction::planar(2.0 * std::f64::consts::FRAC_PI_3);
//! assert!(bell_check(&n1, &n2, &third).violated);
//!
//! // and no +-1 response assignment survives the four-particle constraints
//! assert!(!ghz_contradiction(8).unwrap().feasible);
//! ```

mod error;
mod serde_support;

pub mod frames;
pub mod inequalities;
pub mod linalg;
pub mod rotations;
pub mod stabilizer;
pub mod states;

pub use error::{Error, Result};
