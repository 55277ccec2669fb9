use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use codegraph::report::{self, Invariant, OracleMode, ReportOptions};
use codegraph::{build, parse_code, Family, Graph, OracleBudget, OracleError};

#[derive(Parser)]
#[command(name = "codegraph", version, about = "Invariants of threshold and chain graphs given by binary generating codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute every invariant of one code as a JSON report.
    Invariants {
        /// Code such as "0^3 1^2 0 1" or "(0 1^2)(0^3 1)".
        code: String,
        #[arg(long, value_enum, default_value_t = FamilyArg::Threshold)]
        family: FamilyArg,
        #[arg(long, value_enum, default_value_t = OracleArg::Off)]
        oracle: OracleArg,
        #[command(flatten)]
        select: Select,
    },
    /// Compare formulas with oracles over all codes up to a length.
    Sweep {
        #[arg(long)]
        max_n: usize,
        #[arg(long, value_enum, default_value_t = FamilyArg::Threshold)]
        family: FamilyArg,
        #[arg(long, value_enum, default_value_t = OracleArg::Try)]
        oracle: OracleArg,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[command(flatten)]
        select: Select,
    },
    /// Run the exact oracles on a graph read from an edge-list file.
    Oracle {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = OracleArg::Require)]
        oracle: OracleArg,
        #[command(flatten)]
        select: Select,
    },
    /// Write the graph of a code as an edge list or Graphviz DOT.
    Export {
        code: String,
        #[arg(long, value_enum, default_value_t = FamilyArg::Threshold)]
        family: FamilyArg,
        #[arg(long, value_enum, default_value_t = ExportFormat::Edgelist)]
        format: ExportFormat,
    },
}

#[derive(Args)]
struct Select {
    /// Restrict the oracles to these invariants (repeatable).
    #[arg(long = "invariant", value_enum)]
    invariants: Vec<InvariantArg>,
    #[arg(long, default_value_t = OracleBudget::default().max_n_beta)]
    budget_beta: usize,
    #[arg(long, default_value_t = OracleBudget::default().max_n_lambda)]
    budget_lambda: usize,
    #[arg(long, default_value_t = OracleBudget::default().max_nonedges_tau)]
    budget_tau: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Threshold,
    Chain,
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleArg {
    Off,
    Try,
    Require,
}

#[derive(Clone, Copy, ValueEnum)]
enum InvariantArg {
    Beta,
    Tau,
    TauR,
    Lambda,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExportFormat {
    Edgelist,
    Dot,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Threshold => Family::Threshold,
            FamilyArg::Chain => Family::Chain,
        }
    }
}

impl From<OracleArg> for OracleMode {
    fn from(o: OracleArg) -> Self {
        match o {
            OracleArg::Off => OracleMode::Off,
            OracleArg::Try => OracleMode::Try,
            OracleArg::Require => OracleMode::Require,
        }
    }
}

impl From<InvariantArg> for Invariant {
    fn from(i: InvariantArg) -> Self {
        match i {
            InvariantArg::Beta => Invariant::Beta,
            InvariantArg::Tau => Invariant::Tau,
            InvariantArg::TauR => Invariant::TauR,
            InvariantArg::Lambda => Invariant::Lambda,
        }
    }
}

enum Failure {
    Parse(String),
    Budget(String),
    Other(String),
}

impl Failure {
    fn exit_code(&self) -> ExitCode {
        match self {
            Failure::Parse(_) => ExitCode::from(2),
            Failure::Budget(_) => ExitCode::from(3),
            Failure::Other(_) => ExitCode::FAILURE,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Parse(m) | Failure::Budget(m) | Failure::Other(m) => m,
        }
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::BudgetExceeded { .. } => Failure::Budget(e.to_string()),
            _ => Failure::Other(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Other(e.to_string())
    }
}

fn options(oracle: OracleArg, select: Select) -> Result<ReportOptions, Failure> {
    let budget = OracleBudget::new(select.budget_beta, select.budget_lambda, select.budget_tau)?;
    let invariants = if select.invariants.is_empty() {
        Invariant::ALL.to_vec()
    } else {
        let mut v: Vec<Invariant> = select.invariants.into_iter().map(Invariant::from).collect();
        v.sort();
        v.dedup();
        v
    };
    Ok(ReportOptions {
        oracle: oracle.into(),
        budget,
        invariants,
    })
}

#[derive(serde::Serialize)]
struct SummaryLine<'a> {
    summary: &'a report::SweepSummary,
}

fn json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("reports always serialize")
}

fn run(cli: Cli, out: &mut impl Write) -> Result<(), Failure> {
    match cli.command {
        Command::Invariants {
            code,
            family,
            oracle,
            select,
        } => {
            let code = parse_code(&code).map_err(|e| Failure::Parse(e.to_string()))?;
            let report = report::invariant_report(&code, family.into(), &options(oracle, select)?)?;
            writeln!(out, "{}", report.to_json())?;
        }
        Command::Sweep {
            max_n,
            family,
            oracle,
            format,
            select,
        } => {
            let sweep = report::sweep(max_n, family.into(), &options(oracle, select)?)?;
            match format {
                Format::Json => {
                    for r in &sweep.reports {
                        writeln!(out, "{}", r.to_json())?;
                    }
                    writeln!(out, "{}", json(&SummaryLine { summary: &sweep.summary }))?;
                }
                Format::Csv => {
                    write!(out, "{}", report::sweep_csv(&sweep.reports))?;
                    eprintln!("{}", json(&sweep.summary));
                }
            }
        }
        Command::Oracle { file, oracle, select } => {
            let text = std::fs::read_to_string(&file)?;
            let g = Graph::parse_edge_list(&text).map_err(|e| Failure::Parse(e.to_string()))?;
            let report = report::oracle_report(&g, &options(oracle, select)?)?;
            writeln!(out, "{}", json(&report))?;
        }
        Command::Export { code, family, format } => {
            let code = parse_code(&code).map_err(|e| Failure::Parse(e.to_string()))?;
            let g = build(&code, family.into());
            match format {
                ExportFormat::Edgelist => write!(out, "{}", g.to_edge_list())?,
                ExportFormat::Dot => write!(out, "{}", g.to_dot())?,
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(cli, &mut out) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            f.exit_code()
        }
    }
}
