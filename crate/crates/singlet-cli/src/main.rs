//! Command-line front end: every experiment in the library as a subcommand
//! with reproducible seeds and machine-readable output.
//!
//! Exit codes: 0 = evaluated (a violation is a result, not an error),
//! 2 = usage error, 3 = input data error.

mod angle;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use singlet::frames::{
    frame_decompose, frame_identification_check, spinor_frames, triad, ELECTRON_C, PHOTON_C,
};
use singlet::inequalities::{
    bell_check, bell_correlation, ghz_contradiction, ghz_correlation, lhv_correlation,
    sign_model_expectation, violation_scan, Experiment, InequalityReport, LhvModel,
};
use singlet::linalg::DenseMatrix;
use singlet::stabilizer::{kron_self_factor, psi_tilde, stabilizer_family, FACTOR_TOL};
use singlet::states::{expectation, ghz4, spin_obs, Direction};

const EXIT_USAGE: u8 = 2;
const EXIT_DATA: u8 = 3;

#[derive(Debug)]
enum CliError {
    Usage(anyhow::Error),
    Data(anyhow::Error),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Data(_) => EXIT_DATA,
        }
    }

    fn message(&self) -> &anyhow::Error {
        match self {
            CliError::Usage(e) | CliError::Data(e) => e,
        }
    }
}

fn usage<T>(msg: impl Into<String>) -> Result<T, CliError> {
    Err(CliError::Usage(anyhow!(msg.into())))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Debug, Parser)]
#[command(
    name = "singlet",
    version,
    about = "Spin-entanglement experiments: inequality checks, stabilizer semigroups, hidden-variable runs"
)]
struct Cli {
    /// Output format (falls back to SINGLET_FORMAT, then json)
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Numerical tolerance for membership and comparison checks
    #[arg(long, global = true, default_value_t = singlet::linalg::DEFAULT_TOL)]
    tolerance: f64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Bell triangle inequality at three coplanar detector azimuths
    Bell { a1: String, a2: String, a3: String },
    /// Wigner pair-probability inequality at three coplanar separations
    Wigner {
        t_ij: String,
        t_jk: String,
        t_ki: String,
    },
    /// Four-particle perfect correlations: grid feasibility or the closed form
    #[command(group(ArgGroup::new("mode").required(true).args(["contradiction", "correlate"])))]
    Ghz {
        /// Search for +-1 response functions on the azimuth grid
        #[arg(long)]
        contradiction: bool,
        /// Grid size (even, 4..=16)
        #[arg(long, default_value_t = 8)]
        grid: usize,
        /// Four directions `theta,phi;theta,phi;theta,phi;theta,phi`
        #[arg(long, value_name = "DIRS")]
        correlate: Option<String>,
    },
    /// Reference-frame geometry: triads, decompositions, spinor pairs
    Frames {
        #[command(subcommand)]
        cmd: FramesCmd,
    },
    /// Stabilizer semigroup of the singlet (or four-spin) vector
    #[command(group(ArgGroup::new("mode").required(true).args(["sample", "check", "factor", "describe"])))]
    Semigroup {
        /// Draw a random member (deterministic in --seed)
        #[arg(long)]
        sample: bool,
        /// Check a matrix (JSON file) for membership
        #[arg(long, value_name = "FILE")]
        check: Option<PathBuf>,
        /// Try to factor a 4x4 matrix (JSON file) as g (x) g / det g
        #[arg(long, value_name = "FILE")]
        factor: Option<PathBuf>,
        /// Print the affine family description
        #[arg(long)]
        describe: bool,
        /// Which fixed vector: the singlet (psi) or the four-spin state (ghz)
        #[arg(long, value_enum, default_value_t = StateChoice::Psi)]
        state: StateChoice,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Radius of the disk free entries are drawn from
        #[arg(long, default_value_t = 1.0)]
        scale: f64,
    },
    /// Monte Carlo correlation of a local hidden-variable model
    Lhv {
        /// First detector azimuth (coplanar)
        a1: String,
        /// Second detector azimuth (coplanar)
        a2: String,
        /// Response model: `sign`, or `table:+--+` for a binned response
        #[arg(long, default_value = "sign")]
        model: String,
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Exhaustive inequality evaluation over the angle grid {2 pi k / n}^3
    Scan {
        #[arg(value_enum)]
        experiment: ExperimentArg,
        #[arg(long, default_value_t = 12)]
        grid: usize,
    },
}

#[derive(Debug, Subcommand)]
enum FramesCmd {
    /// Detector triad after rotating through theta with species constant c
    Triad {
        #[arg(long)]
        theta: String,
        /// Species constant: a positive number, `photon` (1) or `electron` (1/2)
        #[arg(long, default_value = "electron")]
        c: String,
    },
    /// Amplitudes of the frame at theta+phi in the frame at theta
    Decompose {
        #[arg(long)]
        theta: String,
        #[arg(long)]
        phi: String,
    },
    /// Spinor pair of the frame rotated through theta
    Spinors {
        #[arg(long)]
        theta: String,
    },
    /// Quarter-turn identities: orthogonal frames sharing a spinor
    Identify,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StateChoice {
    Psi,
    Ghz,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ExperimentArg {
    Bell,
    Wigner,
}

/// Fully rendered command output; `csv` is `None` for commands without a
/// tabular form.
struct OutputDoc {
    json: serde_json::Value,
    csv: Option<String>,
    pretty: String,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap renders its own message; usage problems exit 2
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {:#}", e.message());
            ExitCode::from(e.code())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let format = resolve_format(cli.format)?;
    if !(cli.tolerance.is_finite() && cli.tolerance > 0.0) {
        return usage(format!(
            "--tolerance must be positive, got {}",
            cli.tolerance
        ));
    }
    let doc = match &cli.command {
        Command::Bell { a1, a2, a3 } => cmd_bell(a1, a2, a3)?,
        Command::Wigner { t_ij, t_jk, t_ki } => cmd_wigner(t_ij, t_jk, t_ki)?,
        Command::Ghz {
            contradiction,
            grid,
            correlate,
        } => cmd_ghz(*contradiction, *grid, correlate.as_deref())?,
        Command::Frames { cmd } => cmd_frames(cmd)?,
        Command::Semigroup {
            sample,
            check,
            factor,
            describe,
            state,
            seed,
            scale,
        } => cmd_semigroup(
            *sample,
            check.as_deref(),
            factor.as_deref(),
            *describe,
            *state,
            *seed,
            *scale,
            cli.tolerance,
        )?,
        Command::Lhv {
            a1,
            a2,
            model,
            samples,
            seed,
        } => cmd_lhv(a1, a2, model, *samples, *seed)?,
        Command::Scan { experiment, grid } => cmd_scan(*experiment, *grid)?,
    };
    emit(&doc, format)
}

fn resolve_format(flag: Option<Format>) -> Result<Format, CliError> {
    if let Some(f) = flag {
        return Ok(f);
    }
    match std::env::var("SINGLET_FORMAT") {
        Ok(v) => match v.to_ascii_lowercase().as_str() {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "pretty" => Ok(Format::Pretty),
            other => usage(format!(
                "SINGLET_FORMAT must be json, csv or pretty, got `{other}`"
            )),
        },
        Err(_) => Ok(Format::Json),
    }
}

fn emit(doc: &OutputDoc, format: Format) -> Result<(), CliError> {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&doc.json).unwrap()),
        Format::Csv => match &doc.csv {
            Some(body) => print!("{body}"),
            None => return usage("this subcommand has no CSV form; use --format json or pretty"),
        },
        Format::Pretty => println!("{}", doc.pretty),
    }
    Ok(())
}

fn parse_angle_arg(raw: &str) -> Result<f64, CliError> {
    angle::parse_angle(raw).map_err(|e| CliError::Usage(anyhow!(e)))
}

#[derive(Serialize)]
struct ReportDoc<'a> {
    inputs: serde_json::Value,
    #[serde(flatten)]
    report: &'a InequalityReport,
}

fn report_csv(labels: [&str; 3], angles: [f64; 3], report: &InequalityReport) -> String {
    let mut out = format!(
        "{},{},{},lhs,rhs,margin,violated\n",
        labels[0], labels[1], labels[2]
    );
    out.push_str(&format!(
        "{},{},{},{},{},{},{}\n",
        angles[0], angles[1], angles[2], report.lhs, report.rhs, report.margin, report.violated
    ));
    out
}

fn verdict(report: &InequalityReport) -> &'static str {
    if report.violated {
        "VIOLATED"
    } else {
        "satisfied"
    }
}

fn cmd_bell(a1: &str, a2: &str, a3: &str) -> Result<OutputDoc, CliError> {
    let angles = [
        parse_angle_arg(a1)?,
        parse_angle_arg(a2)?,
        parse_angle_arg(a3)?,
    ];
    let report = bell_check(
        &Direction::planar(angles[0]),
        &Direction::planar(angles[1]),
        &Direction::planar(angles[2]),
    );
    let json = serde_json::to_value(ReportDoc {
        inputs: json!({ "raw": [a1, a2, a3], "radians": angles }),
        report: &report,
    })
    .unwrap();
    let pretty = format!(
        "bell check at azimuths ({a1}, {a2}, {a3})\n|E12 - E13| = {:.12}\n1 + E23     = {:.12}\nmargin      = {:.12}  [{}]",
        report.lhs,
        report.rhs,
        report.margin,
        verdict(&report)
    );
    Ok(OutputDoc {
        json,
        csv: Some(report_csv(["a1", "a2", "a3"], angles, &report)),
        pretty,
    })
}

fn cmd_wigner(t_ij: &str, t_jk: &str, t_ki: &str) -> Result<OutputDoc, CliError> {
    let seps = [
        parse_angle_arg(t_ij)?,
        parse_angle_arg(t_jk)?,
        parse_angle_arg(t_ki)?,
    ];
    let report = singlet::inequalities::wigner_check(seps[0], seps[1], seps[2]);
    let json = serde_json::to_value(ReportDoc {
        inputs: json!({ "raw": [t_ij, t_jk, t_ki], "radians": seps }),
        report: &report,
    })
    .unwrap();
    let pretty = format!(
        "wigner check at separations ({t_ij}, {t_jk}, {t_ki})\nP(t_ki)           = {:.12}\nP(t_jk) + P(t_ij) = {:.12}\nmargin            = {:.12}  [{}]",
        report.lhs,
        report.rhs,
        report.margin,
        verdict(&report)
    );
    Ok(OutputDoc {
        json,
        csv: Some(report_csv(["t_ij", "t_jk", "t_ki"], seps, &report)),
        pretty,
    })
}

fn parse_directions(raw: &str) -> Result<Vec<Direction>, CliError> {
    raw.split(';')
        .map(|pair| {
            let mut parts = pair.split(',');
            let theta = parts
                .next()
                .ok_or_else(|| CliError::Usage(anyhow!("missing theta in `{pair}`")))?;
            let phi = parts
                .next()
                .ok_or_else(|| CliError::Usage(anyhow!("missing phi in `{pair}`")))?;
            if parts.next().is_some() {
                return Err(CliError::Usage(anyhow!(
                    "direction `{pair}` must be theta,phi"
                )));
            }
            Direction::new(parse_angle_arg(theta)?, parse_angle_arg(phi)?)
                .map_err(|e| CliError::Usage(anyhow!(e)))
        })
        .collect()
}

fn cmd_ghz(
    contradiction: bool,
    grid: usize,
    correlate: Option<&str>,
) -> Result<OutputDoc, CliError> {
    if contradiction {
        let report = ghz_contradiction(grid).map_err(|e| CliError::Usage(anyhow!(e)))?;
        let json = serde_json::to_value(&report).unwrap();
        let pretty = if report.feasible {
            format!(
                "grid m = {}: feasible; a satisfying response assignment exists\nA = {:?}",
                grid,
                report.witness.as_ref().unwrap().a
            )
        } else {
            let chain = report.conflict_chain.as_ref().unwrap();
            let mut s = format!(
                "grid m = {}: infeasible; {} constraints multiply to +1 = -1:",
                grid,
                chain.len()
            );
            for c in chain {
                s.push_str(&format!(
                    "\n  A({}) B({}) C({}) D({}) = {:+}",
                    c.settings[0], c.settings[1], c.settings[2], c.settings[3], c.required_product
                ));
            }
            s
        };
        return Ok(OutputDoc {
            json,
            csv: None,
            pretty,
        });
    }
    let dirs_arg = correlate.expect("clap group guarantees one mode");
    let dirs = parse_directions(dirs_arg)?;
    if dirs.len() != 4 {
        return usage(format!(
            "--correlate needs 4 directions, got {}",
            dirs.len()
        ));
    }
    let closed = ghz_correlation(&dirs[0], &dirs[1], &dirs[2], &dirs[3]);
    let obs: Vec<DenseMatrix> = dirs.iter().map(spin_obs).collect();
    let oracle = expectation(&ghz4(), &obs).map_err(|e| CliError::Data(anyhow!(e)))?;
    let json = json!({
        "directions": dirs.iter().map(|d| json!({"theta": d.theta, "phi": d.phi})).collect::<Vec<_>>(),
        "closed_form": closed,
        "statevector_oracle": oracle,
        "difference": (closed - oracle).abs(),
    });
    let pretty = format!(
        "four-particle correlation\nclosed form        = {closed:.12}\nstatevector oracle = {oracle:.12}\ndifference         = {:.3e}",
        (closed - oracle).abs()
    );
    Ok(OutputDoc {
        json,
        csv: None,
        pretty,
    })
}

fn parse_species(raw: &str) -> Result<f64, CliError> {
    match raw {
        "photon" => Ok(PHOTON_C),
        "electron" => Ok(ELECTRON_C),
        other => other
            .parse::<f64>()
            .map_err(|_| CliError::Usage(anyhow!("--c must be a number, `photon` or `electron`"))),
    }
}

fn cmd_frames(cmd: &FramesCmd) -> Result<OutputDoc, CliError> {
    match cmd {
        FramesCmd::Triad { theta, c } => {
            let th = parse_angle_arg(theta)?;
            let species = parse_species(c)?;
            let t = triad(th, species).map_err(|e| CliError::Usage(anyhow!(e)))?;
            let json = json!({ "theta": th, "c": species, "triad": t });
            let pretty = format!(
                "triad(theta = {th:.9}, c = {species})\ne_i     = {:?}\ne_r     = {:?}\ne_theta = {:?}",
                t.e_i, t.e_r, t.e_theta
            );
            Ok(OutputDoc {
                json,
                csv: None,
                pretty,
            })
        }
        FramesCmd::Decompose { theta, phi } => {
            let th = parse_angle_arg(theta)?;
            let ph = parse_angle_arg(phi)?;
            let d = frame_decompose(th, ph);
            let (pr, pt) = d.probabilities();
            let json = json!({
                "theta": th, "phi": ph,
                "amp_r": d.amp_r, "amp_theta": d.amp_theta,
                "prob_r": pr, "prob_theta": pt,
            });
            let pretty = format!(
                "frame at theta+phi decomposed at theta = {th:.9}, phi = {ph:.9}\namp_theta = {:.12} (prob {:.12})\namp_r     = {:.12} (prob {:.12})",
                d.amp_theta, pt, d.amp_r, pr
            );
            Ok(OutputDoc {
                json,
                csv: None,
                pretty,
            })
        }
        FramesCmd::Spinors { theta } => {
            let th = parse_angle_arg(theta)?;
            let pair = spinor_frames(th);
            let json = json!({
                "theta": th,
                "ket_plus": pair.ket_plus.amplitudes(),
                "ket_minus": pair.ket_minus.amplitudes(),
            });
            let fmt = |v: &singlet::linalg::ComplexVector| {
                format!("({:.12}, {:.12})", v.get(0).re, v.get(1).re)
            };
            let pretty = format!(
                "spinor frame at theta = {th:.9}\n|n,+> = {}\n|n,-> = {}",
                fmt(pair.ket_plus.amplitudes()),
                fmt(pair.ket_minus.amplitudes())
            );
            Ok(OutputDoc {
                json,
                csv: None,
                pretty,
            })
        }
        FramesCmd::Identify => {
            let report = frame_identification_check();
            let json = serde_json::to_value(report).unwrap();
            let pretty = format!(
                "quarter-turn frame identities\n<n2,+|n3,+> = {:.3e}\n<n2,-|n3,-> = {:.3e}\n<n2,+|n2,-> = {:.3e}\nmax ||n2,-> - |n3,+>|| = {:.3e}\n{}",
                report.overlap_plus,
                report.overlap_minus,
                report.self_overlap,
                report.identification_gap,
                if report.pass { "PASS" } else { "FAIL" }
            );
            Ok(OutputDoc {
                json,
                csv: None,
                pretty,
            })
        }
    }
}

fn load_matrix(path: &Path) -> Result<DenseMatrix, CliError> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read matrix file `{}`", path.display()))
        .map_err(CliError::Data)?;
    serde_json::from_str(&text)
        .with_context(|| format!("malformed matrix JSON in `{}`", path.display()))
        .map_err(CliError::Data)
}

#[allow(clippy::too_many_arguments)]
fn cmd_semigroup(
    sample: bool,
    check: Option<&Path>,
    factor: Option<&Path>,
    describe: bool,
    state: StateChoice,
    seed: u64,
    scale: f64,
    tolerance: f64,
) -> Result<OutputDoc, CliError> {
    let (state_name, fixed) = match state {
        StateChoice::Psi => ("psi", psi_tilde()),
        StateChoice::Ghz => ("ghz", ghz4().amplitudes().clone()),
    };
    let family = stabilizer_family(&fixed).map_err(|e| CliError::Usage(anyhow!(e)))?;

    if sample {
        let matrix = family
            .sample_member(seed, scale)
            .map_err(|e| CliError::Usage(anyhow!(e)))?;
        let self_check = family
            .is_member(&matrix, tolerance)
            .map_err(|e| CliError::Data(anyhow!(e)))?;
        let json = json!({
            "state": state_name,
            "seed": seed,
            "scale": scale,
            "matrix": matrix,
            "self_check": self_check,
        });
        let pretty = format!(
            "sampled {}x{} member of the {} stabilizer (seed {seed}, scale {scale})\nself check: fixes the vector within {tolerance:e}: {self_check}\nmatrix JSON:\n{}",
            matrix.rows(),
            matrix.cols(),
            state_name,
            serde_json::to_string(&matrix).unwrap()
        );
        return Ok(OutputDoc {
            json,
            csv: None,
            pretty,
        });
    }
    if let Some(path) = check {
        let matrix = load_matrix(path)?;
        let member = family
            .is_member(&matrix, tolerance)
            .map_err(|e| CliError::Data(anyhow!(e)))?;
        let json = json!({
            "state": state_name,
            "tolerance": tolerance,
            "member": member,
        });
        let pretty = format!(
            "matrix from `{}` is{} a member of the {} stabilizer (tolerance {tolerance:e})",
            path.display(),
            if member { "" } else { " NOT" },
            state_name
        );
        return Ok(OutputDoc {
            json,
            csv: None,
            pretty,
        });
    }
    if let Some(path) = factor {
        if state == StateChoice::Ghz {
            return usage("--factor applies to 4x4 matrices only; drop --state ghz");
        }
        let matrix = load_matrix(path)?;
        let factor =
            kron_self_factor(&matrix, FACTOR_TOL).map_err(|e| CliError::Data(anyhow!(e)))?;
        let json = json!({
            "tolerance": FACTOR_TOL,
            "factor": factor,
        });
        let pretty = match &factor {
            Some(g) => format!(
                "reducible: matrix = g (x) g / det g with canonical g:\n{}",
                serde_json::to_string(g).unwrap()
            ),
            None => "irreducible: no Kronecker self-factorization within tolerance".to_string(),
        };
        return Ok(OutputDoc {
            json,
            csv: None,
            pretty,
        });
    }
    debug_assert!(describe);
    let json = json!({
        "state": state_name,
        "family": family,
    });
    let pretty = format!(
        "affine stabilizer family of the {} vector ({} free entries, {} bound rows)",
        state_name,
        family.free_indices().len(),
        family.bound_constraints().len()
    );
    Ok(OutputDoc {
        json,
        csv: None,
        pretty,
    })
}

fn parse_model(raw: &str) -> Result<LhvModel, CliError> {
    if raw == "sign" {
        return Ok(LhvModel::SignOfDotProduct);
    }
    if let Some(tbl) = raw.strip_prefix("table:") {
        let values: Result<Vec<i8>, CliError> = tbl
            .chars()
            .map(|ch| match ch {
                '+' => Ok(1),
                '-' => Ok(-1),
                other => usage(format!("table entries must be + or -, got `{other}`")),
            })
            .collect();
        return Ok(LhvModel::CustomTable(values?));
    }
    usage(format!(
        "--model must be `sign` or `table:+-...`, got `{raw}`"
    ))
}

fn cmd_lhv(
    a1: &str,
    a2: &str,
    model: &str,
    samples: usize,
    seed: u64,
) -> Result<OutputDoc, CliError> {
    let angle1 = parse_angle_arg(a1)?;
    let angle2 = parse_angle_arg(a2)?;
    let n1 = Direction::planar(angle1);
    let n2 = Direction::planar(angle2);
    let lhv_model = parse_model(model)?;
    let est = lhv_correlation(&lhv_model, &n1, &n2, samples, seed)
        .map_err(|e| CliError::Usage(anyhow!(e)))?;
    let quantum = bell_correlation(&n1, &n2);
    let closed = sign_model_expectation(&n1, &n2);
    let json = json!({
        "model": model,
        "a1": angle1,
        "a2": angle2,
        "samples": samples,
        "seed": seed,
        "estimate": est.estimate,
        "std_error": est.std_error,
        "sign_model_closed_form": closed,
        "quantum": quantum,
        "quantum_gap": (est.estimate - quantum).abs(),
    });
    let pretty = format!(
        "hidden-variable run: model {model}, azimuths {a1} and {a2}, {samples} samples, seed {seed}\nestimate            = {:.6} +- {:.6}\nsign-model integral = {:.6}\nquantum prediction  = {:.6}\ngap to quantum      = {:.6}",
        est.estimate,
        est.std_error,
        closed,
        quantum,
        (est.estimate - quantum).abs()
    );
    Ok(OutputDoc {
        json,
        csv: Some(format!(
            "a1,a2,samples,seed,estimate,std_error,quantum\n{},{},{},{},{},{},{}\n",
            angle1, angle2, samples, seed, est.estimate, est.std_error, quantum
        )),
        pretty,
    })
}

fn cmd_scan(experiment: ExperimentArg, grid: usize) -> Result<OutputDoc, CliError> {
    let exp = match experiment {
        ExperimentArg::Bell => Experiment::Bell,
        ExperimentArg::Wigner => Experiment::Wigner,
    };
    let table = violation_scan(exp, grid).map_err(|e| CliError::Usage(anyhow!(e)))?;
    let mut csv = String::from("a1,a2,a3,lhs,rhs,margin,violated\n");
    for row in &table.rows {
        csv.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            row.angles[0],
            row.angles[1],
            row.angles[2],
            row.report.lhs,
            row.report.rhs,
            row.report.margin,
            row.report.violated
        ));
    }
    let max = table.max_row();
    let violated = table.rows.iter().filter(|r| r.report.violated).count();
    let pretty = format!(
        "{:?} scan over {}^3 grid angles: {} rows, {} violations\nmax margin {:.12} at angles ({:.9}, {:.9}, {:.9})",
        exp,
        grid,
        table.rows.len(),
        violated,
        max.report.margin,
        max.angles[0],
        max.angles[1],
        max.angles[2]
    );
    let json = serde_json::to_value(&table).unwrap();
    Ok(OutputDoc {
        json,
        csv: Some(csv),
        pretty,
    })
}
