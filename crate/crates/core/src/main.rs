use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use cubedom::experiments::{
    self, run_conjecture_table, run_gk1_check, run_theorem1_sweep, run_theorem2_sweep,
    ExperimentRow, SweepConfig, SweepRow,
};
use cubedom::solver::{branch_and_bound_gamma_with_workers, DEFAULT_NODE_BUDGET};
use cubedom::{
    graph_stats, greedy_dominate, theorem1_construct, theorem2_construct, verify_certificate,
    verify_structural, DominationCertificate, Error, LevelGraphSpec, StructuralVerdict,
};

const EXIT_FAILED: u8 = 1;
const EXIT_INVALID: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "cubedom", version, about = "Domination numbers of graphs between two levels of the n-cube")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Vertex/edge counts and degrees of G(k,l)
    Stats {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        l: u32,
    },
    /// Emit a construction certificate as JSON
    Construct {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        theorem: u8,
        #[arg(long)]
        n: u32,
        /// Upper level (theorem 1 only)
        #[arg(long)]
        k: Option<u32>,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    /// Check that a certificate file dominates its graph
    Verify {
        #[arg(long)]
        cert: PathBuf,
        /// Polynomial-time pair-covering check instead of enumeration (l = 2)
        #[arg(long)]
        structural: bool,
    },
    /// Exact domination number by branch and bound
    Exact {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        l: u32,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        node_budget: u64,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    /// Greedy dominating set
    Greedy {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        l: u32,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    /// Reproduce a construction over a range of n
    Sweep {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        theorem: u8,
        #[arg(long)]
        n_min: u32,
        #[arg(long)]
        n_max: u32,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        structural_only: bool,
        #[command(flatten)]
        budgets: Budgets,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    /// Prove gamma(G(k,1)) = n - k + 1 for all 2 <= k < n <= n_max
    Gk1Check {
        #[arg(long)]
        n_max: u32,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[command(flatten)]
        budgets: Budgets,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    /// Tabulate solver bounds against the conjectured main term for G(k,2)
    Conjecture {
        #[arg(long)]
        n_min: u32,
        #[arg(long)]
        n_max: u32,
        #[arg(long)]
        k_min: u32,
        #[arg(long)]
        k_max: u32,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[command(flatten)]
        budgets: Budgets,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
}

#[derive(clap::Args, Debug)]
struct Budgets {
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
    node_budget: u64,
    /// Only solve graphs with at most this many vertices
    #[arg(long, default_value_t = 200)]
    solve_max_vertices: u64,
    #[arg(long, default_value_t = 1)]
    workers: usize,
}

impl Budgets {
    fn config(&self, structural_only: bool) -> SweepConfig {
        SweepConfig {
            node_budget: self.node_budget,
            solve_max_vertices: self.solve_max_vertices,
            workers: self.workers.max(1),
            structural_only,
            ..SweepConfig::default()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug)]
enum CliError {
    Lib(Error),
    Io(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

fn exit_code(e: &CliError) -> u8 {
    match e {
        CliError::Lib(Error::TooLarge { .. } | Error::BudgetExceeded(_)) => EXIT_BUDGET,
        CliError::Lib(Error::Internal(_)) => EXIT_FAILED,
        CliError::Lib(_) | CliError::Io(_) => EXIT_INVALID,
    }
}

fn emit(output: Option<&Path>, text: &str) -> Result<(), CliError> {
    match output {
        Some(path) => fs::write(path, text)?,
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
        }
    }
    Ok(())
}

fn json_line<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("serializable");
    s.push('\n');
    s
}

fn render_rows(rows: &[SweepRow], format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => Ok(experiments::to_json(rows) + "\n"),
        Format::Csv => {
            let plain: Vec<ExperimentRow> = rows.iter().map(|r| r.row.clone()).collect();
            let mut buf = Vec::new();
            experiments::write_rows_csv(&plain, &mut buf)?;
            Ok(String::from_utf8(buf).expect("csv is utf-8"))
        }
    }
}

fn report_failures(rows: &[SweepRow]) -> u8 {
    let mut code = 0;
    for r in rows.iter().filter(|r| !r.passed()) {
        eprintln!("n={} k={} l={}: {:?}", r.row.n, r.row.k, r.l, r.status);
        code = EXIT_FAILED;
    }
    code
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Stats { n, k, l } => {
            let spec = LevelGraphSpec::new(n, k, l)?;
            emit(None, &(serde_json::to_string(&graph_stats(&spec)?).expect("stats") + "\n"))?;
            Ok(0)
        }
        Command::Construct { theorem, n, k, output } => {
            let cert = match (theorem, k) {
                (1, Some(k)) => theorem1_construct(n, k)?.1,
                (1, None) => {
                    return Err(Error::InvalidParameters("--theorem 1 needs --k".into()).into())
                }
                _ => {
                    if k.is_some_and(|k| k + 1 != n) {
                        return Err(Error::InvalidParameters("--theorem 2 fixes k = n - 1".into()).into());
                    }
                    theorem2_construct(n)?
                }
            };
            emit(output.as_deref(), &(cert.to_json() + "\n"))?;
            Ok(0)
        }
        Command::Verify { cert, structural } => {
            let text = fs::read_to_string(&cert)?;
            let cert = DominationCertificate::from_json(&text)?;
            if structural {
                let verdict = verify_structural(&cert)?;
                emit(None, &json_line(&verdict))?;
                Ok(if verdict == StructuralVerdict::Verified { 0 } else { EXIT_FAILED })
            } else {
                let v = verify_certificate(&cert)?;
                emit(None, &json_line(&v))?;
                Ok(if v.verified { 0 } else { EXIT_FAILED })
            }
        }
        Command::Exact { n, k, l, node_budget, workers, output } => {
            let spec = LevelGraphSpec::new(n, k, l)?;
            let report = branch_and_bound_gamma_with_workers(&spec, node_budget, workers.max(1))?;
            emit(output.as_deref(), &json_line(&report))?;
            Ok(if report.proven_optimal { 0 } else { EXIT_BUDGET })
        }
        Command::Greedy { n, k, l, output } => {
            let spec = LevelGraphSpec::new(n, k, l)?;
            emit(output.as_deref(), &json_line(&greedy_dominate(&spec)?))?;
            Ok(0)
        }
        Command::Sweep { theorem, n_min, n_max, format, structural_only, budgets, output } => {
            let cfg = budgets.config(structural_only);
            let rows = if theorem == 1 {
                run_theorem1_sweep(n_min, n_max, &cfg)?
            } else {
                run_theorem2_sweep(n_min, n_max, &cfg)?
            };
            emit(output.as_deref(), &render_rows(&rows, format)?)?;
            Ok(report_failures(&rows))
        }
        Command::Gk1Check { n_max, format, budgets, output } => {
            let rows = run_gk1_check(n_max, &budgets.config(false))?;
            emit(output.as_deref(), &render_rows(&rows, format)?)?;
            Ok(report_failures(&rows))
        }
        Command::Conjecture { n_min, n_max, k_min, k_max, format, budgets, output } => {
            let rows = run_conjecture_table(n_min, n_max, k_min, k_max, &budgets.config(false))?;
            let text = match format {
                Format::Json => experiments::to_json(&rows) + "\n",
                Format::Csv => {
                    let mut buf = Vec::new();
                    experiments::write_conjecture_csv(&rows, &mut buf)?;
                    String::from_utf8(buf).expect("csv is utf-8")
                }
            };
            emit(output.as_deref(), &text)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INVALID } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            match &e {
                CliError::Lib(err) => eprintln!("error: {err}"),
                CliError::Io(msg) => eprintln!("error: {msg}"),
            }
            ExitCode::from(exit_code(&e))
        }
    }
}
