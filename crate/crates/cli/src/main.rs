//! Command-line front end: generates hosts, computes exact anti-Ramsey
//! values with certificates, verifies the closed-form tables, and emits
//! the catalog colorings.
//!
//! Exit codes: 0 success, 1 disagreement (a computed value contradicts
//! the closed form, or a checked coloring has a rainbow copy), 2 invalid
//! input, 3 node-budget exhaustion (a bracket for the value is printed).

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::{env, fs, io, process};

use clap::{Parser, Subcommand, ValueEnum};

use gpar_core::census::catalog_cycles;
use gpar_core::coloring::{construction, verify_no_rainbow, RainbowCheck};
use gpar_core::engine::{
    anti_ramsey, table_to_csv, theorem_table, ArOptions, Method, SymmetryMode,
};
use gpar_core::petersen::{generate, PetersenParams};
use gpar_core::{Error, DEFAULT_NODE_BUDGET};

const EXIT_OK: u8 = 0;
const EXIT_DISAGREE: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_BUDGET: u8 = 3;

/// Environment variable overriding the default search-node budget
/// (the `--budget` flag wins over both).
const BUDGET_ENV: &str = "GPAR_NODE_BUDGET";

#[derive(Parser)]
#[command(
    name = "gpar",
    version,
    about = "Exact anti-Ramsey values for 5- and 6-cycles in generalized Petersen graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit the generalized Petersen graph P_{n,k} as JSON or DOT.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Write to a file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compute Ar(P_{n,k}, C_d) exactly, with certificates in both
    /// directions.
    Ar {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Target cycle length (5 or 6).
        #[arg(long)]
        d: usize,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
        /// Search-node budget (overrides GPAR_NODE_BUDGET).
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long, value_enum, default_value_t = SymmetryArg::Auto)]
        symmetry: SymmetryArg,
        /// Write the result JSON to a file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare computed values against the closed-form tables for every
    /// valid (n, k) up to --n-max; prints CSV.
    VerifyTheorems {
        /// Target cycle length (5 or 6).
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n_max: usize,
        /// Worker threads for the table rows (default: all cores).
        #[arg(long)]
        jobs: Option<usize>,
        /// Also write the CSV to this path.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Search-node budget per row (overrides GPAR_NODE_BUDGET).
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long, value_enum, default_value_t = SymmetryArg::Auto)]
        symmetry: SymmetryArg,
    },
    /// Emit a catalog coloring by its identifier, optionally verifying
    /// it against the copy census.
    Coloring {
        /// Construction identifier (e.g. 3.16, 3.18, 3.20).
        #[arg(long)]
        lemma: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Verify the coloring is rainbow-free before printing it.
        #[arg(long)]
        check: bool,
        /// Write the coloring JSON to a file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Auto,
    Packing,
    Cover,
    Oracle,
}

impl From<MethodArg> for Method {
    fn from(value: MethodArg) -> Self {
        match value {
            MethodArg::Auto => Method::Auto,
            MethodArg::Packing => Method::Packing,
            MethodArg::Cover => Method::Cover,
            MethodArg::Oracle => Method::Oracle,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SymmetryArg {
    Auto,
    On,
    Off,
}

impl From<SymmetryArg> for SymmetryMode {
    fn from(value: SymmetryArg) -> Self {
        match value {
            SymmetryArg::Auto => SymmetryMode::Auto,
            SymmetryArg::On => SymmetryMode::On,
            SymmetryArg::Off => SymmetryMode::Off,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Gen { n, k, format, out } => cmd_gen(n, k, format, out.as_deref()),
        Command::Ar {
            n,
            k,
            d,
            method,
            budget,
            symmetry,
            out,
        } => cmd_ar(n, k, d, method, budget, symmetry, out.as_deref()),
        Command::VerifyTheorems {
            d,
            n_max,
            jobs,
            report,
            budget,
            symmetry,
        } => cmd_verify_theorems(d, n_max, jobs, report.as_deref(), budget, symmetry),
        Command::Coloring {
            lemma,
            n,
            k,
            check,
            out,
        } => cmd_coloring(&lemma, n, k, check, out.as_deref()),
    };
    ExitCode::from(code)
}

/// Resolves the node budget: flag, then environment, then default.
fn effective_budget(flag: Option<u64>) -> Result<u64, String> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match env::var(BUDGET_ENV) {
        Ok(text) => text
            .parse()
            .map_err(|_| format!("{BUDGET_ENV} must be an integer, got {text:?}")),
        Err(_) => Ok(DEFAULT_NODE_BUDGET),
    }
}

/// Prints to stdout or writes to `out`.
///
/// A closed stdout pipe (the reader took what it wanted and hung up)
/// ends the process quietly with exit 0 instead of panicking.
fn emit(text: &str, out: Option<&Path>) -> Result<(), String> {
    match out {
        None => match writeln!(io::stdout().lock(), "{text}") {
            Ok(()) => Ok(()),
            Err(e) if e.kind() == io::ErrorKind::BrokenPipe => process::exit(EXIT_OK.into()),
            Err(e) => Err(format!("cannot write to stdout: {e}")),
        },
        Some(path) => {
            let mut owned = text.to_owned();
            if !owned.ends_with('\n') {
                owned.push('\n');
            }
            fs::write(path, owned).map_err(|e| format!("cannot write {}: {e}", path.display()))
        }
    }
}

fn input_error(message: impl std::fmt::Display) -> u8 {
    eprintln!("error: {message}");
    EXIT_INPUT
}

fn notice_normalized(params: &PetersenParams) {
    if let Some(original) = params.normalized_from() {
        eprintln!(
            "notice: k = {original} normalized to k = {} (P_{{n,k}} and P_{{n,n-k}} are isomorphic)",
            params.k()
        );
    }
}

fn cmd_gen(n: usize, k: usize, format: Format, out: Option<&Path>) -> u8 {
    let params = match PetersenParams::new(n, k) {
        Ok(p) => p,
        Err(e) => return input_error(e),
    };
    notice_normalized(&params);
    let g = generate(&params);
    let text = match format {
        Format::Json => g.to_json(),
        Format::Dot => g.to_dot(),
    };
    match emit(&text, out) {
        Ok(()) => EXIT_OK,
        Err(e) => input_error(e),
    }
}

fn cmd_ar(
    n: usize,
    k: usize,
    d: usize,
    method: MethodArg,
    budget: Option<u64>,
    symmetry: SymmetryArg,
    out: Option<&Path>,
) -> u8 {
    let node_budget = match effective_budget(budget) {
        Ok(b) => b,
        Err(e) => return input_error(e),
    };
    let params = match PetersenParams::new(n, k) {
        Ok(p) => p,
        Err(e) => return input_error(e),
    };
    notice_normalized(&params);
    let options = ArOptions {
        method: method.into(),
        symmetry: symmetry.into(),
        node_budget,
    };
    match anti_ramsey(n, k, d, &options) {
        Ok(result) => {
            eprintln!(
                "Ar(P_{{{},{}}}, C_{d}) = {} via {} (dead edges: {})",
                params.n(),
                params.k(),
                result.value,
                result.method,
                result.dead_edge_count
            );
            if let Some(path) = out {
                eprintln!("result written to {}", path.display());
            }
            match emit(&result.to_json(), out) {
                Ok(()) => EXIT_OK,
                Err(e) => input_error(e),
            }
        }
        Err(e) if e.is_budget() => {
            eprintln!("error: {e}");
            EXIT_BUDGET
        }
        Err(e) => input_error(e),
    }
}

fn cmd_verify_theorems(
    d: usize,
    n_max: usize,
    jobs: Option<usize>,
    report: Option<&Path>,
    budget: Option<u64>,
    symmetry: SymmetryArg,
) -> u8 {
    let node_budget = match effective_budget(budget) {
        Ok(b) => b,
        Err(e) => return input_error(e),
    };
    let options = ArOptions {
        method: Method::Auto,
        symmetry: symmetry.into(),
        node_budget,
    };
    let table = match jobs {
        None => theorem_table(d, n_max, &options),
        Some(threads) => {
            let pool = match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
                Ok(p) => p,
                Err(e) => return input_error(e),
            };
            pool.install(|| theorem_table(d, n_max, &options))
        }
    };
    let rows = match table {
        Ok(rows) => rows,
        Err(e) => return input_error(e),
    };
    let csv = table_to_csv(&rows);
    print!("{csv}");
    if let Some(path) = report {
        if let Err(e) = emit(&csv, Some(path)) {
            return input_error(e);
        }
        eprintln!("report written to {}", path.display());
    }
    let disagreements: Vec<_> = rows
        .iter()
        .filter(|r| r.computed.is_some() && !r.agree)
        .collect();
    let skipped = rows.iter().filter(|r| r.computed.is_none()).count();
    if skipped > 0 {
        eprintln!("warning: {skipped} row(s) skipped on budget exhaustion");
    }
    if disagreements.is_empty() {
        eprintln!(
            "{} row(s): {} agree, {skipped} skipped",
            rows.len(),
            rows.len() - skipped
        );
        EXIT_OK
    } else {
        for row in &disagreements {
            eprintln!(
                "disagree: (n = {}, k = {}): closed form {}, computed {}",
                row.n,
                row.k,
                row.closed_form,
                row.computed.expect("disagreements carry a value")
            );
        }
        EXIT_DISAGREE
    }
}

/// Target cycle length of a catalog coloring: the two pentagon entries,
/// then the hexagon family.
fn construction_cycle_length(lemma: &str) -> usize {
    match lemma {
        "3.1" | "3.3" => 5,
        _ => 6,
    }
}

fn cmd_coloring(lemma: &str, n: usize, k: usize, check: bool, out: Option<&Path>) -> u8 {
    let coloring = match construction(lemma, n, k) {
        Ok(c) => c,
        Err(e) => return input_error(e),
    };
    if check {
        let d = construction_cycle_length(lemma);
        let params = match PetersenParams::new(n, k) {
            Ok(p) => p,
            Err(e) => return input_error(e),
        };
        let g = generate(&params);
        let psi = match catalog_cycles(&params, d) {
            Ok(psi) => psi,
            Err(Error::NoCatalog { .. }) => {
                match gpar_core::census::enumerate_cycles(&g, d) {
                    Ok(psi) => psi,
                    Err(e) => return input_error(e),
                }
            }
            Err(e) => return input_error(e),
        };
        match verify_no_rainbow(&g, &psi, &coloring) {
            Ok(RainbowCheck::NoRainbow) => {
                eprintln!(
                    "ok: {} colors, no rainbow C_{d} copy",
                    coloring.color_count()
                );
            }
            Ok(RainbowCheck::RainbowFound {
                copy_index, label, ..
            }) => {
                eprintln!("rainbow copy found: index {copy_index} ({label})");
                return EXIT_DISAGREE;
            }
            Err(e) => return input_error(e),
        }
    }
    match emit(&coloring.to_json(), out) {
        Ok(()) => EXIT_OK,
        Err(e) => input_error(e),
    }
}
