//! Command-line front end: compute invariants of a single algebra, verify
//! a catalog of expectations, or run the structural property suite.
//!
//! Exit statuses: 0 success, 1 verification/check failure, 2 input error
//! (unreadable file, syntax error, bad selection), 3 precondition
//! violation (non-associative input without the override).
//!
//! The `QCENTROID_PARALLEL` environment variable controls how many threads
//! batch verification uses: unset means all available cores, a positive
//! number pins the pool size, and `0` disables parallelism entirely for
//! bit-stable timing runs (output bytes are identical either way; entries
//! are always reported in input order).

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use qcentroid::catalog::{self, CatalogEntry, EntryOutcome};
use qcentroid::properties;
use qcentroid::rational::format_rational;
use qcentroid::solvers::{self, Nonassociative, SolverError};
use qcentroid::{Algebra, LinearMap};

const EXIT_FAILURE: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_PRECONDITION: u8 = 3;

#[derive(Parser)]
#[command(
    name = "qcentroid",
    version,
    about = "Exact derivation-type invariants of finite-dimensional algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute selected invariants of the single algebra in an input file.
    Compute {
        /// Input file containing exactly one catalog entry.
        #[arg(long)]
        input: PathBuf,
        /// Comma-separated subset of: der, centroid, qc, zder, qder.
        #[arg(long, value_delimiter = ',', required = true)]
        invariant: Vec<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Solve the linear systems even if the table is not associative.
        #[arg(long)]
        allow_nonassociative: bool,
    },
    /// Verify every entry of a catalog against its expectations.
    Verify {
        #[arg(long)]
        catalog: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run the structural property checks on every algebra in a file.
    Props {
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Machine,
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Compute {
            input,
            invariant,
            format,
            allow_nonassociative,
        } => run_compute(&input, &invariant, format, allow_nonassociative),
        Command::Verify { catalog, format } => run_verify(&catalog, format),
        Command::Props { input } => run_props(&input),
    }
}

fn load_catalog(path: &Path) -> Result<Vec<CatalogEntry>, ExitCode> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        eprintln!("error: cannot read {}: {e}", path.display());
        ExitCode::from(EXIT_INPUT)
    })?;
    catalog::parse_catalog(&text).map_err(|e| {
        eprintln!("error: {}: {e}", path.display());
        ExitCode::from(EXIT_INPUT)
    })
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Invariant {
    Der,
    Centroid,
    Qc,
    Zder,
    Qder,
}

impl Invariant {
    fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "der" => Invariant::Der,
            "centroid" => Invariant::Centroid,
            "qc" => Invariant::Qc,
            "zder" => Invariant::Zder,
            "qder" => Invariant::Qder,
            _ => return None,
        })
    }
}

/// Stable machine rendering: two-space indentation, keys in sorted order
/// (the underlying map is ordered), so the bytes are reproducible.
fn pretty(value: &serde_json::Value) -> String {
    serde_json::to_string_pretty(value).expect("JSON documents built here always serialize")
}

/// Basis matrix as rows of exact rational strings.
fn matrix_rows(m: &LinearMap) -> Vec<Vec<String>> {
    let n = m.dim();
    (0..n)
        .map(|r| (0..n).map(|c| format_rational(m.entry(r, c))).collect())
        .collect()
}

fn run_compute(
    input: &Path,
    selections: &[String],
    format: Format,
    allow_nonassociative: bool,
) -> ExitCode {
    let mut invariants = Vec::new();
    for s in selections {
        match Invariant::parse(s) {
            Some(inv) if !invariants.contains(&inv) => invariants.push(inv),
            Some(_) => {}
            None => {
                eprintln!(
                    "error: unknown invariant '{s}' (choose from: der, centroid, qc, zder, qder)"
                );
                return ExitCode::from(EXIT_INPUT);
            }
        }
    }

    let entries = match load_catalog(input) {
        Ok(e) => e,
        Err(code) => return code,
    };
    if entries.len() != 1 {
        eprintln!(
            "error: {} contains {} entries; compute needs exactly one",
            input.display(),
            entries.len()
        );
        return ExitCode::from(EXIT_INPUT);
    }
    let entry = &entries[0];
    let algebra = entry
        .to_algebra()
        .expect("parser enforces the dimension cap");

    let policy = if allow_nonassociative {
        Nonassociative::Allow
    } else {
        Nonassociative::Reject
    };
    if let (Nonassociative::Reject, Some((i, j, k))) =
        (policy, algebra.first_nonassociative_triple())
    {
        eprintln!(
            "error: {} is not associative: (e{i}·e{j})·e{k} ≠ e{i}·(e{j}·e{k}); \
             pass --allow-nonassociative to solve the systems anyway",
            entry.name
        );
        return ExitCode::from(EXIT_PRECONDITION);
    }

    match compute_report(entry, &algebra, &invariants, policy) {
        Ok(value) => {
            match format {
                Format::Text => print!("{}", render_compute_text(&value)),
                Format::Machine => println!("{}", pretty(&value)),
            }
            ExitCode::SUCCESS
        }
        Err(SolverError::NonAssociative { i, j, k }) => {
            // Unreachable given the pre-check, but keep the contract total.
            eprintln!("error: non-associative at ({i}, {j}, {k})");
            ExitCode::from(EXIT_PRECONDITION)
        }
    }
}

/// Computes the selected invariants into the machine-format document; the
/// text renderer reads from the same document so the two formats can never
/// disagree.
fn compute_report(
    entry: &CatalogEntry,
    algebra: &Algebra,
    invariants: &[Invariant],
    policy: Nonassociative,
) -> Result<serde_json::Value, SolverError> {
    let mut items = Vec::new();
    for &inv in invariants {
        let item = match inv {
            Invariant::Der => {
                let der = solvers::derivations(algebra, policy)?;
                serde_json::json!({
                    "kind": "der",
                    "dim": der.dim(),
                    "basis": der.maps().iter().map(matrix_rows).collect::<Vec<_>>(),
                })
            }
            Invariant::Centroid => {
                let c = solvers::centroid(algebra, policy)?;
                serde_json::json!({
                    "kind": "centroid",
                    "dim": c.dim(),
                    "basis": c.maps().iter().map(matrix_rows).collect::<Vec<_>>(),
                })
            }
            Invariant::Qc => {
                let qc = solvers::quasi_centroid(algebra, policy)?;
                let small = solvers::is_small_quasi_centroid(algebra, policy)?;
                serde_json::json!({
                    "kind": "qc",
                    "dim": qc.dim(),
                    "basis": qc.maps().iter().map(matrix_rows).collect::<Vec<_>>(),
                    "small": small.is_small,
                    "zder_dim": small.zder_dim,
                    "zder_plus_scalars_dim": small.zder_plus_scalars_dim,
                })
            }
            Invariant::Zder => {
                let zder = solvers::central_derivations(algebra, policy)?;
                let der = solvers::derivations(algebra, policy)?;
                let meet = zder.space().intersection(der.space());
                serde_json::json!({
                    "kind": "zder",
                    "dim": zder.dim(),
                    "basis": zder.maps().iter().map(matrix_rows).collect::<Vec<_>>(),
                    "zder_intersect_der_dim": meet.dim(),
                })
            }
            Invariant::Qder => {
                let qder = solvers::quasi_derivations(algebra, policy)?;
                let pairs: Vec<serde_json::Value> = qder
                    .pairs()
                    .iter()
                    .map(|(d, dp)| {
                        serde_json::json!({
                            "d": matrix_rows(d),
                            "dprime": matrix_rows(dp),
                        })
                    })
                    .collect();
                serde_json::json!({
                    "kind": "qder",
                    "pair_dim": qder.pair_dim(),
                    "d_projection_dim": qder.d_projection().dim(),
                    "dprime_projection_dim": qder.dprime_projection().dim(),
                    "pairs": pairs,
                })
            }
        };
        items.push(item);
    }
    Ok(serde_json::json!({
        "name": entry.name,
        "dim": entry.dim,
        "invariants": items,
    }))
}

fn render_compute_text(value: &serde_json::Value) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "algebra {} dim {}\n",
        value["name"].as_str().unwrap_or("?"),
        value["dim"]
    ));
    for item in value["invariants"].as_array().into_iter().flatten() {
        let kind = item["kind"].as_str().unwrap_or("?");
        match kind {
            "qder" => {
                out.push_str(&format!(
                    "qder: pair dim {}; D-projection dim {}; D'-projection dim {}\n",
                    item["pair_dim"], item["d_projection_dim"], item["dprime_projection_dim"]
                ));
                for (i, pair) in item["pairs"].as_array().into_iter().flatten().enumerate() {
                    out.push_str(&format!("  pair {}:\n", i + 1));
                    out.push_str("    D:\n");
                    render_string_matrix(&pair["d"], "      ", &mut out);
                    out.push_str("    D':\n");
                    render_string_matrix(&pair["dprime"], "      ", &mut out);
                }
            }
            _ => {
                out.push_str(&format!("{kind}: dim {}\n", item["dim"]));
                if kind == "qc" {
                    out.push_str(&format!(
                        "  small: {} (zder dim {}, zder + scalars dim {})\n",
                        if item["small"].as_bool() == Some(true) {
                            "yes"
                        } else {
                            "no"
                        },
                        item["zder_dim"],
                        item["zder_plus_scalars_dim"]
                    ));
                }
                if kind == "zder" {
                    out.push_str(&format!(
                        "  dim(ZDer ∩ Der) = {}\n",
                        item["zder_intersect_der_dim"]
                    ));
                }
                for (i, basis) in item["basis"].as_array().into_iter().flatten().enumerate() {
                    out.push_str(&format!("  basis {}:\n", i + 1));
                    render_string_matrix(basis, "    ", &mut out);
                }
            }
        }
    }
    out
}

fn render_string_matrix(rows: &serde_json::Value, indent: &str, out: &mut String) {
    for row in rows.as_array().into_iter().flatten() {
        let cells: Vec<&str> = row
            .as_array()
            .into_iter()
            .flatten()
            .filter_map(|v| v.as_str())
            .collect();
        out.push_str(&format!("{indent}[{}]\n", cells.join(", ")));
    }
}

/// Verifies entries, honoring `QCENTROID_PARALLEL` (0 = sequential,
/// N = pool of N threads, unset = all cores).  Results keep input order in
/// every mode.
fn verify_outcomes(entries: &[CatalogEntry]) -> Vec<(usize, EntryOutcome)> {
    let each = |e: &CatalogEntry| (e.dim, catalog::verify_entry_outcome(e));
    match std::env::var("QCENTROID_PARALLEL")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
    {
        Some(0) => entries.iter().map(each).collect(),
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build()
            .expect("thread pool")
            .install(|| entries.par_iter().map(each).collect()),
        None => entries.par_iter().map(each).collect(),
    }
}

fn run_verify(path: &Path, format: Format) -> ExitCode {
    let entries = match load_catalog(path) {
        Ok(e) => e,
        Err(code) => return code,
    };
    let report = catalog::assemble_batch(verify_outcomes(&entries));
    match format {
        Format::Text => print!("{}", catalog::text_report(&report)),
        Format::Machine => println!("{}", pretty(&catalog::machine_report(&report))),
    }
    if report.all_pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FAILURE)
    }
}

fn run_props(path: &Path) -> ExitCode {
    let entries = match load_catalog(path) {
        Ok(e) => e,
        Err(code) => return code,
    };

    let mut checked = 0usize;
    let mut skipped = 0usize;
    let mut failures = 0usize;
    let mut out = String::new();

    for entry in &entries {
        let algebra = entry
            .to_algebra()
            .expect("parser enforces the dimension cap");
        out.push_str(&format!("algebra {} dim {}\n", entry.name, entry.dim));
        if let Some((i, j, k)) = algebra.first_nonassociative_triple() {
            out.push_str(&format!(
                "  [skip] non-associative at basis triple ({i}, {j}, {k})\n"
            ));
            skipped += 1;
            continue;
        }
        let report = properties::run_all_checks(&algebra)
            .expect("associativity was just established");
        for check in &report.checks {
            if check.holds {
                out.push_str(&format!("  [ok] {}\n", check.name));
            } else {
                failures += 1;
                out.push_str(&format!(
                    "  [FAIL] {}: {}\n",
                    check.name,
                    check.witness.as_deref().unwrap_or("no witness")
                ));
            }
        }
        for note in &report.notes {
            out.push_str(&format!("  note: {note}\n"));
        }
        checked += 1;
    }
    out.push_str(&format!(
        "summary: {checked} checked, {failures} failing checks, {skipped} skipped\n"
    ));
    print!("{out}");

    if checked == 0 && skipped > 0 {
        eprintln!("error: no associative algebra in the input (all entries skipped)");
        return ExitCode::from(EXIT_PRECONDITION);
    }
    if failures > 0 {
        ExitCode::from(EXIT_FAILURE)
    } else {
        ExitCode::SUCCESS
    }
}
