use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use fockspin::classify::{canonical_state, classify_with, orbit_sample, OrbitLabel, Tolerances};
use fockspin::embed::{embed_three_qubit_even, embed_three_qubit_odd, embed_two_qubit_d4};
use fockspin::invariants::{invariant_report, mukai_pairing};
use fockspin::io::{
    default_tolerance, parse_generator, parse_state, QubitFile, Qubits, ReportFile, StateFile,
    TOL_ENV_VAR,
};
use fockspin::selftest::{run_all, Fault};
use fockspin::spin::{exp_apply, is_unitary_generator};
use fockspin::{Error, FockState, ParitySector};

const EXIT_FAILED: u8 = 1;
const EXIT_SCHEMA: u8 = 2;
const EXIT_UNSUPPORTED: u8 = 3;

#[derive(Parser)]
#[command(name = "fockspin", version, about = "Spin-group invariants and orbits of fermionic Fock states")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Orbit classification report for a state file.
    Classify {
        #[arg(long)]
        state: PathBuf,
        /// Relative zero-test tolerance; defaults to $FOCKSPIN_TOL or 1e-8.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Pairing, moment-map and trace invariants of a state file.
    Invariants {
        #[arg(long)]
        state: PathBuf,
        #[arg(long, default_value_t = 4)]
        k_max: usize,
    },
    /// Mukai pairing of two state files.
    Pairing {
        #[arg(long)]
        state: PathBuf,
        #[arg(long)]
        other: PathBuf,
    },
    /// Applies exp(T_o1) exp(T_o2) ... exp(T_on) to a state; the rightmost factor acts first.
    Transform {
        #[arg(long)]
        state: PathBuf,
        #[arg(long = "generator", required = true)]
        generators: Vec<PathBuf>,
        /// 1-based generator indices, leftmost applied last; defaults to the given order.
        #[arg(long, value_delimiter = ',')]
        order: Option<Vec<usize>>,
    },
    /// Canonical orbit representative.
    Canonical {
        #[arg(long = "d")]
        d: usize,
        #[arg(long)]
        sector: String,
        #[arg(long)]
        label: String,
    },
    /// Embeds a qubit file into a Fock space.
    Embed {
        #[arg(long)]
        qubits: PathBuf,
        #[arg(long, value_enum)]
        target: Target,
    },
    /// Random Spin-group images of a canonical state or a state file.
    Sample {
        /// "d,sector,label", for example "6,even,rank3".
        #[arg(long, required_unless_present = "state")]
        canonical: Option<String>,
        #[arg(long, conflicts_with = "canonical")]
        state: Option<PathBuf>,
        #[arg(long, default_value_t = 4)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Runs the acceptance properties; exit 0 iff all pass.
    Selftest {
        /// Deliberately break the pairing to check that the suite notices.
        #[arg(long, value_enum)]
        inject_fault: Option<FaultArg>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    Odd,
    Even,
    D4,
}

#[derive(Clone, Copy, ValueEnum)]
enum FaultArg {
    TransposeSign,
}

enum Failure {
    Schema(String),
    Unsupported(String),
    Failed(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Schema(_)
            | Error::NotAntisymmetric { .. }
            | Error::ModeOutOfRange { .. }
            | Error::DimensionMismatch { .. }
            | Error::OddOrder(_) => Failure::Schema(e.to_string()),
            _ => Failure::Unsupported(e.to_string()),
        }
    }
}

type Outcome = Result<String, Failure>;

fn read_input(path: &Path) -> Result<String, Failure> {
    let mut text = String::new();
    let res = if path == Path::new("-") {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|s| text = s)
    };
    res.map_err(|e| Failure::Schema(format!("{}: {e}", path.display())))?;
    Ok(text)
}

fn load_state(path: &Path) -> Result<FockState, Failure> {
    Ok(parse_state(&read_input(path)?)?)
}

fn pretty(v: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(v).expect("output serializes")
}

fn classify_cmd(state: &Path, tol: Option<f64>) -> Outcome {
    let phi = load_state(state)?;
    let tol = match tol {
        Some(t) if t > 0.0 && t.is_finite() => t,
        Some(t) => return Err(Failure::Schema(format!("--tol must be positive, got {t}"))),
        None => default_tolerance().map_err(|e| Failure::Schema(format!("{TOL_ENV_VAR}: {e}")))?,
    };
    let report = classify_with(&phi, &Tolerances::with_zero(tol))?;
    Ok(ReportFile::new(report).to_json())
}

fn transform_cmd(state: &Path, generators: &[PathBuf], order: Option<Vec<usize>>) -> Outcome {
    let phi = load_state(state)?;
    let gens = generators
        .iter()
        .map(|p| Ok(parse_generator(&read_input(p)?)?))
        .collect::<Result<Vec<_>, Failure>>()?;
    let order = order.unwrap_or_else(|| (1..=gens.len()).collect());
    let mut out = phi.clone();
    let mut unitary = true;
    for &i in order.iter().rev() {
        let gen = gens.get(i.wrapping_sub(1)).ok_or_else(|| {
            Failure::Schema(format!("--order index {i} outside 1..={}", gens.len()))
        })?;
        unitary &= is_unitary_generator(gen);
        out = exp_apply(gen, &out)?;
    }
    let mut file = StateFile::from_state(&out).with_meta(&out);
    if let Some(meta) = file.meta.as_mut() {
        meta.input_norm = Some(phi.norm());
        meta.unitary = Some(unitary);
    }
    Ok(file.to_json())
}

fn parse_sector(s: &str) -> Result<ParitySector, Failure> {
    match s.parse::<ParitySector>()? {
        ParitySector::Mixed => Err(Failure::Unsupported("canonical states need even or odd".into())),
        sector => Ok(sector),
    }
}

fn canonical(d: usize, sector: &str, label: &str) -> Result<FockState, Failure> {
    let sector = parse_sector(sector)?;
    let label: OrbitLabel = label.parse()?;
    Ok(canonical_state(d, sector, label)?.state)
}

fn embed_cmd(qubits: &Path, target: Target) -> Outcome {
    let parsed = QubitFile::parse(&read_input(qubits)?)?.to_qubits()?;
    let phi = match (parsed, target) {
        (Qubits::Two(x), Target::D4) => embed_two_qubit_d4(&x),
        (Qubits::Three(p), Target::Odd) => embed_three_qubit_odd(&p),
        (Qubits::Three(p), Target::Even) => embed_three_qubit_even(&p),
        (Qubits::Two(_), _) => {
            return Err(Failure::Unsupported("two qubits embed only with --target d4".into()))
        }
        (Qubits::Three(_), Target::D4) => {
            return Err(Failure::Unsupported("three qubits embed with --target odd or even".into()))
        }
    };
    Ok(StateFile::from_state(&phi).with_meta(&phi).to_json())
}

fn sample_cmd(canon: Option<String>, state: Option<PathBuf>, count: usize, seed: u64) -> Outcome {
    let base = match (canon, state) {
        (_, Some(path)) => load_state(&path)?,
        (Some(spec), None) => {
            let parts: Vec<&str> = spec.split(',').map(str::trim).collect();
            let [d, sector, label] = parts[..] else {
                return Err(Failure::Schema(format!("--canonical expects d,sector,label, got '{spec}'")));
            };
            let d = d
                .parse()
                .map_err(|_| Failure::Schema(format!("bad mode count '{d}'")))?;
            canonical(d, sector, label)?
        }
        (None, None) => return Err(Failure::Schema("need --canonical or --state".into())),
    };
    let files: Vec<StateFile> = orbit_sample(&base, seed, count)?
        .iter()
        .map(|s| StateFile::from_state(s).with_meta(s))
        .collect();
    Ok(pretty(&files))
}

fn selftest_cmd(fault: Option<FaultArg>) -> Outcome {
    let fault = match fault {
        Some(FaultArg::TransposeSign) => Fault::PairingTransposeSign,
        None => Fault::None,
    };
    let results = run_all(fault);
    for r in &results {
        eprintln!("{}", r.line());
    }
    let failed = results.iter().filter(|r| !r.pass).count();
    let body = json!({
        "criteria": results,
        "passed": results.len() - failed,
        "failed": failed,
    });
    let text = pretty(&ReportFile::new(body));
    if failed == 0 {
        Ok(text)
    } else {
        emit(&text);
        Err(Failure::Failed(format!("{failed} criteria failed")))
    }
}

// A closed pipe (e.g. `| head`) is not an error worth reporting.
fn emit(text: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Classify { state, tol } => classify_cmd(&state, tol),
        Command::Invariants { state, k_max } => {
            let phi = load_state(&state)?;
            Ok(ReportFile::new(invariant_report(&phi, k_max)?).to_json())
        }
        Command::Pairing { state, other } => {
            let z = mukai_pairing(&load_state(&state)?, &load_state(&other)?)?;
            Ok(pretty(&ReportFile::new(json!({ "pairing": [z.re, z.im] }))))
        }
        Command::Transform { state, generators, order } => transform_cmd(&state, &generators, order),
        Command::Canonical { d, sector, label } => {
            let phi = canonical(d, &sector, &label)?;
            Ok(StateFile::from_state(&phi).with_meta(&phi).to_json())
        }
        Command::Embed { qubits, target } => embed_cmd(&qubits, target),
        Command::Sample { canonical, state, count, seed } => sample_cmd(canonical, state, count, seed),
        Command::Selftest { inject_fault } => selftest_cmd(inject_fault),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(text) => {
            emit(&text);
            ExitCode::SUCCESS
        }
        Err(Failure::Schema(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_SCHEMA)
        }
        Err(Failure::Unsupported(msg)) => {
            eprintln!("unsupported: {msg}");
            ExitCode::from(EXIT_UNSUPPORTED)
        }
        Err(Failure::Failed(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(EXIT_FAILED)
        }
    }
}
