//! `multient`: command-line front end. Every command prints one JSON report
//! on stdout. Exit status is 0 on success, 1 on a domain error and 2 on a
//! usage error.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use multient::report::{error_report, Report};
use multient::secret_sharing::{self, DecodePair, SecretQutrit};
use multient::{catalog, invariants, schmidt, state_file, tol};
use multient::{Complex64, ComplexMatrix, Error, PureState, Spectrum};

#[derive(Parser)]
#[command(name = "multient", version, about = "Multipartite pure-state toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a catalog state.
    Build {
        name: String,
        /// Numeric parameters, separate or comma-separated. A comma list that
        /// starts with a minus sign goes after `--`.
        #[arg(allow_negative_numbers = true, num_args = 0..)]
        params: Vec<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Reduced density matrix on the kept parties.
    Reduce {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        keep: Vec<usize>,
    },
    /// Reduced spectrum and purity of every single party.
    Spectra { file: PathBuf },
    /// Schmidt decomposition across a cut.
    Schmidt {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        left: Vec<usize>,
    },
    /// Majorization between the Schmidt weights of two states.
    Majorize {
        file1: PathBuf,
        file2: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        left: Vec<usize>,
        #[arg(long, default_value_t = tol::MAJORIZATION)]
        tol: f64,
    },
    /// Bipartite LOCC convertibility in both directions.
    Nielsen {
        file1: PathBuf,
        file2: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        left: Vec<usize>,
    },
    /// Local-unitary invariants I1..I5 of a three-party state.
    Invariants { file: PathBuf },
    /// Certify LOCC incommensurability of two three-party states.
    Certify {
        file1: PathBuf,
        file2: PathBuf,
        #[arg(long, default_value_t = tol::CERTIFIER)]
        tol: f64,
    },
    /// Hidden-parameter counts for k qubits.
    HiddenCount { k: u32 },
    /// Qutrit threshold secret sharing.
    #[command(subcommand)]
    Qss(QssCommand),
}

#[derive(Subcommand)]
enum QssCommand {
    /// Encode a secret given as a_re,a_im,b_re,b_im,c_re,c_im.
    Encode(EncodeArgs),
    /// Decode a shared state with one pair of parties.
    Decode {
        file: PathBuf,
        #[arg(long)]
        pair: DecodePair,
    },
    /// Single-party cheating attack on every basis secret and pair.
    CheatDemo,
    /// Pairwise certificates for the cheat-proof encoding set.
    PreventionCheck,
}

#[derive(Args)]
struct EncodeArgs {
    #[arg(allow_hyphen_values = true, value_parser = parse_secret)]
    secret: SecretArg,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy)]
struct SecretArg([f64; 6]);

fn parse_secret(raw: &str) -> Result<SecretArg, String> {
    let values = raw
        .split(',')
        .map(|s| s.trim().parse::<f64>().map_err(|_| format!("{s:?} is not a number")))
        .collect::<Result<Vec<_>, _>>()?;
    values
        .try_into()
        .map(SecretArg)
        .map_err(|v: Vec<f64>| format!("expected 6 comma-separated numbers, got {}", v.len()))
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Build { .. } => "build",
            Command::Reduce { .. } => "reduce",
            Command::Spectra { .. } => "spectra",
            Command::Schmidt { .. } => "schmidt",
            Command::Majorize { .. } => "majorize",
            Command::Nielsen { .. } => "nielsen",
            Command::Invariants { .. } => "invariants",
            Command::Certify { .. } => "certify",
            Command::HiddenCount { .. } => "hidden-count",
            Command::Qss(QssCommand::Encode(_)) => "qss encode",
            Command::Qss(QssCommand::Decode { .. }) => "qss decode",
            Command::Qss(QssCommand::CheatDemo) => "qss cheat-demo",
            Command::Qss(QssCommand::PreventionCheck) => "qss prevention-check",
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                emit(&e.to_string());
                return ExitCode::SUCCESS;
            }
            eprint!("{e}");
            let message = e.to_string();
            let first_line = message.lines().next().unwrap_or_default();
            let first_line = first_line.strip_prefix("error: ").unwrap_or(first_line);
            emit(&error_report("usage", "usage", first_line));
            return ExitCode::from(2);
        }
    };
    let name = cli.command.name();
    match run(cli.command) {
        Ok(report) => {
            emit(&report.to_json());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            emit(&error_report(name, e.kind(), &e.to_string()));
            ExitCode::from(1)
        }
    }
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{}", text.trim_end()).and_then(|()| out.flush());
}

fn run(command: Command) -> multient::Result<Report> {
    let name = command.name();
    match command {
        Command::Build { name: state_name, params, output } => {
            let params = parse_params(&params)?;
            let state = catalog::build(&state_name, &params)?;
            Ok(Report::new(
                name,
                json!({ "name": state_name, "params": params, "output": output }),
                state_outputs(&state, output.as_ref())?,
                json!({ "norm": tol::NORM }),
            ))
        }
        Command::Reduce { file, keep } => {
            let state = state_file::read(&file)?;
            let rho = state.reduce(&keep)?;
            let spectrum = rho.spectrum();
            Ok(Report::new(
                name,
                json!({ "file": file, "keep": keep }),
                json!({
                    "dim": rho.dim(),
                    "matrix": matrix_json(rho.matrix()),
                    "purity": rho.purity(),
                    "spectrum": spectrum.values(),
                }),
                json!({ "spectrum": tol::SPECTRUM }),
            ))
        }
        Command::Spectra { file } => {
            let state = state_file::read(&file)?;
            let spectra: Vec<Vec<f64>> = state.local_spectra().iter().map(|s| s.values().to_vec()).collect();
            Ok(Report::new(
                name,
                json!({ "file": file }),
                json!({
                    "dims": state.dims(),
                    "purities": invariants::purity_per_party(&state),
                    "spectra": spectra,
                }),
                json!({ "spectrum": tol::SPECTRUM }),
            ))
        }
        Command::Schmidt { file, left } => {
            let state = state_file::read(&file)?;
            let d = schmidt::schmidt(&state, &left)?;
            Ok(Report::new(
                name,
                json!({ "file": file, "left": left }),
                json!({
                    "coefficients": d.coefficients,
                    "left": d.left,
                    "rank": d.coefficients.iter().filter(|&&c| c > tol::MIN_NORM).count(),
                    "right": d.right,
                    "weights": d.weights().values(),
                }),
                json!({ "reconstruction": tol::RECONSTRUCTION, "rank": tol::MIN_NORM }),
            ))
        }
        Command::Majorize { file1, file2, left, tol } => {
            let p = schmidt::schmidt(&state_file::read(&file1)?, &left)?.weights();
            let q = schmidt::schmidt(&state_file::read(&file2)?, &left)?.weights();
            let forward = schmidt::majorizes(&p, &q, tol)?;
            let backward = schmidt::majorizes(&q, &p, tol)?;
            Ok(Report::new(
                name,
                json!({ "file1": file1, "file2": file2, "left": left }),
                json!({
                    "first_majorized_by_second": forward,
                    "incomparable": !forward && !backward,
                    "second_majorized_by_first": backward,
                    "weights1": p.values(),
                    "weights2": q.values(),
                }),
                json!({ "majorization": tol }),
            ))
        }
        Command::Nielsen { file1, file2, left } => {
            let a = state_file::read(&file1)?;
            let b = state_file::read(&file2)?;
            Ok(Report::new(
                name,
                json!({ "file1": file1, "file2": file2, "left": left }),
                json!({
                    "first_to_second": schmidt::nielsen_transformable(&a, &b, &left)?,
                    "second_to_first": schmidt::nielsen_transformable(&b, &a, &left)?,
                }),
                json!({ "majorization": tol::MAJORIZATION }),
            ))
        }
        Command::Invariants { file } => {
            let state = state_file::read(&file)?;
            let inv = invariants::compute_invariants(&state)?;
            Ok(Report::new(
                name,
                json!({ "file": file }),
                json!({ "i1": inv.i1, "i2": inv.i2, "i3": inv.i3, "i4": inv.i4, "i5": inv.i5 }),
                json!({ "imaginary_residue": tol::IMAGINARY_RESIDUE }),
            ))
        }
        Command::Certify { file1, file2, tol } => {
            let a = state_file::read(&file1)?;
            let b = state_file::read(&file2)?;
            let verdict = invariants::certify_incommensurate(&a, &b, tol)?;
            Ok(Report::new(
                name,
                json!({ "file1": file1, "file2": file2 }),
                verdict_json(&verdict),
                json!({ "certifier": tol }),
            ))
        }
        Command::HiddenCount { k } => Ok(Report::new(
            name,
            json!({ "k": k }),
            json!({
                "bound": invariants::hidden_param_lower_bound(k)?,
                "hidden_from_single_party": invariants::hidden_from_single_party(k)?,
            }),
            json!({}),
        )),
        Command::Qss(QssCommand::Encode(EncodeArgs { secret: SecretArg(secret), output })) => {
            let z = |i: usize| Complex64::new(secret[i], secret[i + 1]);
            let state = secret_sharing::qss_encode(&SecretQutrit::new(z(0), z(2), z(4))?)?;
            Ok(Report::new(
                name,
                json!({ "output": output, "secret": secret }),
                state_outputs(&state, output.as_ref())?,
                json!({ "norm": tol::NORM }),
            ))
        }
        Command::Qss(QssCommand::Decode { file, pair }) => {
            let state = state_file::read(&file)?;
            let r = secret_sharing::qss_decode(&state, pair)?;
            Ok(Report::new(
                name,
                json!({ "file": file, "pair": pair }),
                json!({
                    "fidelity": r.fidelity,
                    "reconstructed": complex_list(&r.reconstructed.to_array()),
                    "residual": complex_list(r.residual.amplitudes()),
                    "secret_register": r.secret_register,
                }),
                json!({ "reconstruction": tol::RECONSTRUCTION }),
            ))
        }
        Command::Qss(QssCommand::CheatDemo) => Ok(Report::new(
            name,
            json!({ "cheater": secret_sharing::CHEATER }),
            serde_json::to_value(secret_sharing::run_cheat_demo()?).expect("records serialize"),
            json!({ "basis_probability": tol::SPECTRUM }),
        )),
        Command::Qss(QssCommand::PreventionCheck) => {
            let rows: Vec<Value> = secret_sharing::prevention_check()?
                .iter()
                .map(|p| {
                    let mut v = verdict_json(&p.verdict);
                    v["first"] = json!(p.first);
                    v["second"] = json!(p.second);
                    v
                })
                .collect();
            Ok(Report::new(name, json!({}), Value::Array(rows), json!({ "certifier": tol::CERTIFIER })))
        }
    }
}

fn parse_params(raw: &[String]) -> multient::Result<Vec<f64>> {
    raw.iter()
        .flat_map(|s| s.split(','))
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| Error::InvalidArgument(format!("parameter {s:?} is not a number")))
        })
        .collect()
}

fn state_outputs(state: &PureState, output: Option<&PathBuf>) -> multient::Result<Value> {
    if let Some(path) = output {
        state_file::write(path, state)?;
    }
    Ok(json!({
        "amps": complex_list(state.amplitudes()),
        "dims": state.dims(),
        "local_spectra": state.local_spectra().iter().map(Spectrum::values).collect::<Vec<_>>(),
    }))
}

fn complex_list(zs: &[Complex64]) -> Value {
    zs.iter().map(|z| json!([z.re, z.im])).collect()
}

fn matrix_json(m: &ComplexMatrix) -> Value {
    (0..m.rows())
        .map(|r| (0..m.cols()).map(|c| json!([m[(r, c)].re, m[(r, c)].im])).collect::<Value>())
        .collect()
}

fn verdict_json(v: &multient::IncommensurabilityVerdict) -> Value {
    json!({
        "kind": v.kind.as_str(),
        "max_spectral_difference": v.max_spectral_difference,
        "witnesses": v.witnesses.iter().map(|w| json!({
            "first": w.first,
            "quantity": w.quantity.to_string(),
            "second": w.second,
        })).collect::<Vec<_>>(),
    })
}
