//! `braket` subcommands. Every command prints one JSON document to stdout;
//! diagnostics go to stderr. Exit codes: 0 success, 1 domain error, 2 usage.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use braket_core::opalg::{KindedOperator, OperatorKind};
use braket_core::repsl2c::{self, BasisKind, Weight};
use braket_core::transforms::{self, BasisChange};
use braket_core::Tolerances;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::dsl;
use crate::json::{self, JsonError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "braket", version, about = "Bra-ket calculus on coupled vector spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum BasisArg {
    Canonical,
    Rotation,
    Orthonormal,
}

impl From<BasisArg> for BasisKind {
    fn from(b: BasisArg) -> Self {
        match b {
            BasisArg::Canonical => BasisKind::Canonical,
            BasisArg::Rotation => BasisKind::Rotation,
            BasisArg::Orthonormal => BasisKind::Orthonormal,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum KindArg {
    DownDown,
    UpUp,
    DownUp,
    UpDown,
}

impl From<KindArg> for OperatorKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::DownDown => OperatorKind::DownDown,
            KindArg::UpUp => OperatorKind::UpUp,
            KindArg::DownUp => OperatorKind::DownUp,
            KindArg::UpDown => OperatorKind::UpDown,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Canonical su(2) matrices J_1, J_2, J_3 of weight j = K/2.
    Su2 {
        #[arg(long)]
        twice_j: u32,
    },
    /// Exact Clebsch-Gordan coefficient <j1 l1; j2 l2 | s sigma>.
    /// Values are decimals (0.5, -1.5) or fractions (1/2).
    Cg {
        #[arg(long, allow_hyphen_values = true)]
        j1: String,
        #[arg(long, allow_hyphen_values = true)]
        l1: String,
        #[arg(long, allow_hyphen_values = true)]
        j2: String,
        #[arg(long, allow_hyphen_values = true)]
        l2: String,
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        #[arg(long, allow_hyphen_values = true)]
        sigma: String,
    },
    /// Representation bundle [j1, j2], or [j] when both weights agree.
    Rep {
        #[arg(long)]
        twice_j1: u32,
        #[arg(long)]
        twice_j2: u32,
        #[arg(long, allow_hyphen_values = true)]
        epsilon: Option<i8>,
        #[arg(long, value_enum, default_value = "canonical")]
        basis: BasisArg,
    },
    /// Signature [n_plus, n_minus] of a hermitian matrix.
    Signature {
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Whether U^+ eta U = eta.
    CheckSymmetry {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        metric: PathBuf,
    },
    /// Evaluate a bra-ket expression in an environment file.
    Eval {
        #[arg(long)]
        env: PathBuf,
        expr: String,
    },
    /// Transform an operator and the metric under the basis change T.
    Transform {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        metric: PathBuf,
        #[arg(long)]
        t: PathBuf,
        #[arg(long, value_enum, default_value = "down-down")]
        kind: KindArg,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error(transparent)]
    Json(#[from] JsonError),
    #[error(transparent)]
    Dsl(#[from] dsl::DslError),
    #[error(transparent)]
    Core(#[from] braket_core::Error),
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// `0.5`, `-1.5`, `3` or `1/2`, `-3/2`.
fn parse_half(text: &str) -> Result<f64, CliError> {
    let bad = || braket_core::Error::InvalidWeights(format!("not a number: {text:?}"));
    let value = match text.split_once('/') {
        Some((num, den)) => {
            let num: f64 = num.trim().parse().map_err(|_| bad())?;
            let den: f64 = den.trim().parse().map_err(|_| bad())?;
            num / den
        }
        None => text.trim().parse().map_err(|_| bad())?,
    };
    if !value.is_finite() {
        return Err(bad().into());
    }
    Ok(value)
}

fn execute(command: Command) -> Result<Value, CliError> {
    let tol = Tolerances::default();
    Ok(match command {
        Command::Su2 { twice_j } => {
            let irrep = repsl2c::su2_generators(Weight::from_twice(twice_j));
            let mats = irrep
                .generators
                .iter()
                .map(json::matrix_to_json)
                .collect::<Result<Vec<_>, _>>()?;
            json!({"twice_j": twice_j, "dim": irrep.dim(), "J": mats})
        }
        Command::Cg {
            j1,
            l1,
            j2,
            l2,
            s,
            sigma,
        } => {
            let cg = repsl2c::clebsch_gordan_f64(
                parse_half(&j1)?,
                parse_half(&l1)?,
                parse_half(&j2)?,
                parse_half(&l2)?,
                parse_half(&s)?,
                parse_half(&sigma)?,
            )?;
            json!({"sign": cg.sign(), "squared": cg.squared().to_string()})
        }
        Command::Rep {
            twice_j1,
            twice_j2,
            epsilon,
            basis,
        } => {
            let rep = repsl2c::build_in_basis(
                Weight::from_twice(twice_j1),
                Weight::from_twice(twice_j2),
                epsilon,
                basis.into(),
            )?;
            json::rep_to_json(&rep)?
        }
        Command::Signature { matrix } => {
            let a = json::matrix_from_str(&read(&matrix)?)?;
            json::signature_to_json(json::signature_of(&a)?)
        }
        Command::CheckSymmetry { matrix, metric } => {
            let u = json::matrix_from_str(&read(&matrix)?)?;
            let m = json::metric_from_str(&read(&metric)?)?;
            let deviation = transforms::symmetry_deviation(&u, &m)?;
            json!({
                "is_symmetry": deviation <= tol.sym_tol,
                "deviation": json::number(deviation)?,
            })
        }
        Command::Eval { env, expr } => {
            let env = json::env_from_str(&read(&env)?)?;
            json::value_to_json(&dsl::eval_str(&expr, &env)?)?
        }
        Command::Transform {
            matrix,
            metric,
            t,
            kind,
        } => {
            let op = KindedOperator::new(json::matrix_from_str(&read(&matrix)?)?, kind.into())?;
            let m = json::metric_from_str(&read(&metric)?)?;
            let bc = BasisChange::new(json::matrix_from_str(&read(&t)?)?, &tol)?;
            let op2 = transforms::transform_operator(&bc, &op)?;
            let m2 = transforms::transform_metric(&bc, &m, &tol)?;
            json!({
                "operator": json::operator_to_json(&op2)?,
                "metric": json::matrix_to_json(m2.eta())?,
            })
        }
    })
}

/// Runs the command line `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                EXIT_USAGE
            } else {
                let _ = write!(out, "{}", e.render());
                EXIT_OK
            };
            return code;
        }
    };
    match execute(cli.command) {
        Ok(value) => {
            let _ = writeln!(out, "{}", json::to_text(&value));
            EXIT_OK
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_DOMAIN
        }
    }
}
