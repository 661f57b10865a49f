//! Browser bindings for the interactive demo page: correlation curves,
//! inequality heatmaps, and the spinor-frame explorer. Everything returns
//! flat `f64` buffers or JSON strings so the page needs no framework, and
//! every export is an ordinary function on native targets, where the unit
//! tests run.

use wasm_bindgen::prelude::*;

use singlet::frames::{frame_decompose, spinor_frames, triad, ELECTRON_C};
use singlet::inequalities::{
    bell_check, bell_correlation, lhv_correlation, sign_model_expectation, wigner_check, LhvModel,
};
use singlet::states::Direction;

/// Quantum vs sign-model correlation across detector separations `[0, pi]`.
///
/// Returns `points` rows flattened as `[gamma, quantum, hidden_variable]`:
/// the curves whose pointwise gap is the violation the inequalities certify.
#[wasm_bindgen]
pub fn correlation_curve(points: usize) -> Vec<f64> {
    let points = points.max(2);
    let mut out = Vec::with_capacity(points * 3);
    for i in 0..points {
        let gamma = std::f64::consts::PI * i as f64 / (points - 1) as f64;
        let n1 = Direction::planar(0.0);
        let n2 = Direction::planar(gamma);
        out.push(gamma);
        out.push(bell_correlation(&n1, &n2));
        out.push(sign_model_expectation(&n1, &n2));
    }
    out
}

/// Violation margin over a square slice of the scan grid.
///
/// The first detector stays at azimuth 0 (all checks are invariant under a
/// common rotation); the other two sweep `{2 pi k / grid_n}`. Row-major
/// `grid_n * grid_n` margins; positive entries are violations.
#[wasm_bindgen]
pub fn violation_heatmap(experiment: &str, grid_n: usize) -> Result<Vec<f64>, String> {
    if !(2..=512).contains(&grid_n) {
        return Err(format!("grid must be between 2 and 512, got {grid_n}"));
    }
    let step = std::f64::consts::TAU / grid_n as f64;
    let mut out = Vec::with_capacity(grid_n * grid_n);
    for i in 0..grid_n {
        for j in 0..grid_n {
            let a2 = i as f64 * step;
            let a3 = j as f64 * step;
            let report = match experiment {
                "bell" => bell_check(
                    &Direction::planar(0.0),
                    &Direction::planar(a2),
                    &Direction::planar(a3),
                ),
                "wigner" => wigner_check(a2, a3 - a2, a3),
                other => return Err(format!("unknown experiment `{other}`")),
            };
            out.push(report.margin);
        }
    }
    Ok(out)
}

/// One seeded Monte Carlo run of the sign model at a coplanar separation.
///
/// Returns `[estimate, std_error, closed_form, quantum]`.
#[wasm_bindgen]
pub fn lhv_run(separation: f64, samples: usize, seed: u64) -> Result<Vec<f64>, String> {
    let n1 = Direction::planar(0.0);
    let n2 = Direction::planar(separation);
    let est = lhv_correlation(
        &LhvModel::SignOfDotProduct,
        &n1,
        &n2,
        samples.clamp(1, 5_000_000),
        seed,
    )
    .map_err(|e| e.to_string())?;
    Ok(vec![
        est.estimate,
        est.std_error,
        sign_model_expectation(&n1, &n2),
        bell_correlation(&n1, &n2),
    ])
}

/// Frame-explorer state for a detector rotated through `theta`, as JSON:
/// the electron triad, the spinor pair, and the identification
/// probabilities against the base frame.
#[wasm_bindgen]
pub fn frame_panel(theta: f64) -> String {
    let t = triad(theta, ELECTRON_C).expect("finite angle");
    let pair = spinor_frames(theta);
    let d = frame_decompose(0.0, theta);
    let (prob_r, prob_theta) = d.probabilities();
    let kets =
        |v: &singlet::states::StateVector| vec![v.amplitudes().get(0).re, v.amplitudes().get(1).re];
    serde_json::json!({
        "theta": theta,
        "triad": { "e_i": t.e_i, "e_r": t.e_r, "e_theta": t.e_theta },
        "ket_plus": kets(&pair.ket_plus),
        "ket_minus": kets(&pair.ket_minus),
        "prob_theta": prob_theta,
        "prob_r": prob_r,
    })
    .to_string()
}
