use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use gz_cli::commands::*;
use gz_cli::io::{
    parse_complex, parse_key, read_coord, read_json, read_matrix, MeasureJson, VectorJson, WordJson,
};
use gz_cli::sample::DEFAULT_SEED;
use gz_cli::selftest::SelftestConfig;
use gz_cli::{exit, CliError, CliResult};
use gz_core::ToleranceConfig;
use serde_json::Value;

/// Gelfand-Zeitlin toolkit for complex matrices.
///
/// Results are JSON on stdout (or the --output file). Exit codes: 0 success,
/// 1 malformed input, 2 input outside the mathematical domain, 3 numerical
/// failure or failed selftest. Errors print {"error": code, "detail": ...}.
#[derive(Parser)]
#[command(name = "gz", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Seed for every randomized command.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Relative singular-value cutoff for numerical rank.
    #[arg(long, global = true)]
    tol_rank: Option<f64>,
    /// Entrywise comparison tolerance.
    #[arg(long, global = true)]
    tol_eq: Option<f64>,
    /// Minimum eigenvalue separation for the disjoint locus.
    #[arg(long, global = true)]
    tol_disjoint: Option<f64>,
    /// Write the result here instead of stdout.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
}

impl Global {
    fn tolerances(&self) -> CliResult<ToleranceConfig> {
        let d = ToleranceConfig::default();
        Ok(ToleranceConfig::new(
            self.tol_rank.unwrap_or(d.rank_tol),
            self.tol_eq.unwrap_or(d.eq_tol),
            self.tol_disjoint.unwrap_or(d.disjoint_tol),
        )?)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Gelfand-Zeitlin coordinates of a matrix.
    Phi {
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Hessenberg cross-section point over given coordinates.
    Invert {
        #[arg(long)]
        coord: PathBuf,
        /// Prescribed subdiagonal, a list of [re, im] pairs.
        #[arg(long)]
        subdiag: Option<PathBuf>,
    },
    /// Regularity report for a matrix.
    Classify {
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Time-t flow of the generator f_(k,m).
    Flow {
        #[arg(long)]
        matrix: PathBuf,
        /// Generator key "k,m".
        #[arg(long)]
        key: String,
        /// Complex time "re,im".
        #[arg(long, allow_hyphen_values = true)]
        t: String,
    },
    /// Action of a group word.
    Act {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        word: PathBuf,
    },
    /// Fiber geometry.
    #[command(subcommand)]
    Fiber(FiberCommand),
    /// Discrete measures and Jacobi matrices.
    #[command(subcommand)]
    Orthopoly(OrthopolyCommand),
    /// Exact Poisson brackets.
    #[command(subcommand)]
    Poisson(PoissonCommand),
    /// Run every acceptance property on seeded samples.
    Selftest {
        /// Largest matrix size sampled.
        #[arg(long, default_value_t = 5)]
        n_max: usize,
    },
}

#[derive(Subcommand)]
enum FiberCommand {
    /// Canonical representative of the orbit and the word reaching it.
    NormalForm {
        #[arg(long)]
        matrix: PathBuf,
    },
    /// All symmetric matrices over a coordinate point, sorted by sign index.
    Symmetric {
        #[arg(long)]
        coord: PathBuf,
        #[arg(long)]
        jacobi_only: bool,
    },
}

#[derive(Subcommand)]
enum OrthopolyCommand {
    /// Three-term recurrence and Jacobi matrix of a measure.
    Jacobi {
        #[arg(long)]
        measure: PathBuf,
        #[arg(long)]
        n: usize,
    },
    /// Compare orthogonal polynomials with cutoff characteristic polynomials.
    Verify {
        #[arg(long)]
        measure: PathBuf,
        #[arg(long)]
        n: usize,
    },
}

#[derive(Subcommand)]
enum PoissonCommand {
    /// Check that all generators commute exactly.
    Verify {
        #[arg(long)]
        n: usize,
    },
    /// Bracket of two polynomials in the entries a_ij.
    Bracket {
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long, allow_hyphen_values = true)]
        g: String,
        /// Evaluate at this matrix; its size fixes n.
        #[arg(long)]
        matrix: Option<PathBuf>,
        /// Matrix size when no matrix is given.
        #[arg(long)]
        n: Option<usize>,
    },
}

fn run(cli: &Cli) -> CliResult<Value> {
    let tol = cli.global.tolerances()?;
    match &cli.command {
        Command::Phi { matrix } => Ok(cmd_phi(&read_matrix(matrix)?)),
        Command::Invert { coord, subdiag } => {
            let c = read_coord(coord)?;
            let z = subdiag
                .as_deref()
                .map(|p| read_json::<VectorJson>(p)?.to_vec())
                .transpose()?;
            cmd_invert(&c, z.as_deref())
        }
        Command::Classify { matrix } => Ok(cmd_classify(&read_matrix(matrix)?, &tol)),
        Command::Flow { matrix, key, t } => {
            cmd_flow(&read_matrix(matrix)?, parse_key(key)?, parse_complex(t)?)
        }
        Command::Act { matrix, word } => {
            cmd_act(&read_matrix(matrix)?, &read_json::<WordJson>(word)?)
        }
        Command::Fiber(FiberCommand::NormalForm { matrix }) => {
            cmd_normal_form(&read_matrix(matrix)?, &tol)
        }
        Command::Fiber(FiberCommand::Symmetric { coord, jacobi_only }) => {
            cmd_symmetric(&read_coord(coord)?, *jacobi_only, &tol)
        }
        Command::Orthopoly(OrthopolyCommand::Jacobi { measure, n }) => {
            cmd_orthopoly_jacobi(&read_json::<MeasureJson>(measure)?.to_measure()?, *n)
        }
        Command::Orthopoly(OrthopolyCommand::Verify { measure, n }) => {
            cmd_orthopoly_verify(&read_json::<MeasureJson>(measure)?.to_measure()?, *n, &tol)
        }
        Command::Poisson(PoissonCommand::Verify { n }) => cmd_poisson_verify(*n),
        Command::Poisson(PoissonCommand::Bracket { f, g, matrix, n }) => {
            let x = matrix.as_deref().map(read_matrix).transpose()?;
            let size = match (&x, n) {
                (Some(x), Some(n)) if x.n() != *n => {
                    return Err(CliError::Usage(format!(
                        "--n {n} disagrees with the {0}x{0} matrix",
                        x.n()
                    )))
                }
                (Some(x), _) => x.n(),
                (None, Some(n)) => *n,
                (None, None) => {
                    return Err(CliError::Usage("give --matrix or --n".into()));
                }
            };
            cmd_poisson_bracket(f, g, size, x.as_ref())
        }
        Command::Selftest { n_max } => {
            if *n_max < 2 {
                return Err(CliError::Usage("--n-max must be at least 2".into()));
            }
            let cfg = SelftestConfig {
                seed: cli.global.seed,
                n_max: *n_max,
                tol,
            };
            let (report, all_pass) = cmd_selftest(&cfg);
            if all_pass {
                Ok(report)
            } else {
                emit(&report, cli.global.output.as_deref())?;
                let failed = report["criteria"]
                    .as_array()
                    .into_iter()
                    .flatten()
                    .filter(|c| c["passed"] == Value::Bool(false))
                    .filter_map(|c| c["id"].as_u64().map(|id| id as u32))
                    .collect();
                Err(CliError::SelftestFailed(failed))
            }
        }
    }
}

fn emit(value: &Value, output: Option<&Path>) -> CliResult<()> {
    let text = serde_json::to_string_pretty(value).expect("serializable") + "\n";
    match output {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn fail(err: &CliError) -> ExitCode {
    eprintln!("gz: {err}");
    // a failed selftest has already written its full report
    if !matches!(err, CliError::SelftestFailed(_)) {
        println!("{}", err.to_json());
    }
    ExitCode::from(err.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::from(exit::OK as u8);
        }
        Err(e) => return fail(&CliError::Usage(e.to_string())),
    };
    match run(&cli).and_then(|v| emit(&v, cli.global.output.as_deref())) {
        Ok(()) => ExitCode::from(exit::OK as u8),
        Err(e) => fail(&e),
    }
}
