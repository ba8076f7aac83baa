//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 when a verification sweep finds a
//! disagreement, 2 on usage errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::closed_form::tev_closed;
use crate::coefficients::{expand, Expansion};
use crate::error::Error;
use crate::lattice_paths::{count_paths_by_index, enumerate_paths, path_stats, tev_via_paths};
use crate::primitives::{is_valid, BigCount, TevParams};
use crate::recursion::{tev_recursive, MemoTable};
use crate::verify::{cross_check, cross_check_with, GridSpec, Method};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "tevelev",
    version,
    about = "Exact Tevelev degrees and their cross-checks"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print Tev_{g,ell,r}.
    #[command(allow_negative_numbers = true)]
    Tev(TevArgs),
    /// Print the E_s expansions of T_{ell,r} for ell <= 0.
    #[command(allow_negative_numbers = true)]
    Table(TableArgs),
    /// List the lattice paths from (0,1) to (ell,r) with their statistics.
    #[command(allow_negative_numbers = true)]
    Paths(PathsArgs),
    /// Cross-check all evaluation routes over a parameter grid.
    #[command(allow_negative_numbers = true)]
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TevMethod {
    Recursion,
    Closed,
    Paths,
    Auto,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Pretty,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableSource {
    /// Closed-form coefficients.
    Closed,
    /// Index histograms of enumerated paths.
    Paths,
}

#[derive(Debug, Args)]
struct Output {
    /// Write to FILE instead of stdout.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct TevArgs {
    #[arg(long)]
    g: i64,
    #[arg(long)]
    ell: i64,
    #[arg(long)]
    r: i64,
    #[arg(long, value_enum, default_value_t = TevMethod::Auto)]
    method: TevMethod,
    #[command(flatten)]
    output: Output,
}

#[derive(Debug, Args)]
struct TableArgs {
    #[arg(long, default_value_t = -5)]
    ell_min: i64,
    #[arg(long, default_value_t = -1)]
    ell_max: i64,
    #[arg(long, default_value_t = 5)]
    r_max: i64,
    #[arg(long, value_enum, default_value_t = Format::Pretty)]
    format: Format,
    #[arg(long, value_enum, default_value_t = TableSource::Closed)]
    source: TableSource,
    #[command(flatten)]
    output: Output,
}

#[derive(Debug, Args)]
struct PathsArgs {
    #[arg(long)]
    ell: i64,
    #[arg(long)]
    r: i64,
    #[arg(long, value_enum, default_value_t = Format::Pretty)]
    format: Format,
    #[command(flatten)]
    output: Output,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 12)]
    g_max: i64,
    #[arg(long, default_value_t = -4)]
    ell_min: i64,
    #[arg(long, default_value_t = 4)]
    ell_max: i64,
    #[arg(long, default_value_t = 5)]
    r_max: i64,
    /// Comma-separated subset of recursion,closed,paths,expansion.
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "recursion,closed,paths,expansion"
    )]
    methods: Vec<Method>,
    /// Perturb the closed form on one valid cell; the sweep must then fail.
    #[arg(long)]
    inject_fault: bool,
    #[command(flatten)]
    output: Output,
}

/// Parses `args` (including the program name) and runs the command,
/// writing results to `stdout` (or `--out`) and diagnostics to `stderr`.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    let (result, out_path) = match &cli.command {
        Command::Tev(a) => (cmd_tev(a), &a.output.out),
        Command::Table(a) => (cmd_table(a), &a.output.out),
        Command::Paths(a) => (cmd_paths(a), &a.output.out),
        Command::Verify(a) => (cmd_verify(a), &a.output.out),
    };
    match result {
        Ok((text, code)) => {
            let written = match out_path {
                Some(path) => std::fs::write(path, text.as_bytes()),
                None => stdout.write_all(text.as_bytes()),
            };
            if let Err(e) = written {
                let _ = writeln!(stderr, "error: cannot write output: {e}");
                return EXIT_USAGE;
            }
            code
        }
        Err(msg) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_USAGE
        }
    }
}

type CmdResult = Result<(String, i32), String>;

fn usage(e: Error) -> String {
    e.to_string()
}

fn cmd_tev(a: &TevArgs) -> CmdResult {
    let p = TevParams::new(a.g, a.ell, a.r).map_err(usage)?;
    let value = match a.method {
        TevMethod::Recursion => tev_recursive(p, &MemoTable::new()),
        TevMethod::Closed | TevMethod::Auto => tev_closed(p),
        TevMethod::Paths => {
            if p.ell > 0 {
                return Err(format!(
                    "method 'paths' needs ell <= 0, got ell = {}",
                    p.ell
                ));
            }
            if is_valid(&p) {
                tev_via_paths(p)
            } else {
                Ok(BigCount::zero())
            }
        }
    }
    .map_err(usage)?;
    Ok((format!("{value}\n"), EXIT_OK))
}

fn table_expansion(ell: i64, r: i64, source: TableSource) -> Result<Expansion, Error> {
    match source {
        TableSource::Closed => expand(ell, r),
        TableSource::Paths => {
            let hist = count_paths_by_index(ell, r)?;
            Ok(Expansion::from_histogram(ell, r, &hist))
        }
    }
}

/// One line per cell: `ell=-4 r=3: 28E3 + 32E4 + 21E5 + 8E6 + E7`.
pub fn format_table_pretty(cells: &[Expansion]) -> String {
    cells
        .iter()
        .map(|e| format!("ell={} r={}: {e}\n", e.ell, e.r))
        .collect()
}

fn cmd_table(a: &TableArgs) -> CmdResult {
    if a.ell_max > 0 {
        return Err(format!("table needs ell_max <= 0, got {}", a.ell_max));
    }
    if a.ell_min > a.ell_max {
        return Err(format!("ell_min = {} > ell_max = {}", a.ell_min, a.ell_max));
    }
    if a.r_max < 1 {
        return Err(format!("r_max must be at least 1, got {}", a.r_max));
    }
    let mut cells = Vec::new();
    for ell in (a.ell_min..=a.ell_max).rev() {
        for r in 1..=a.r_max {
            cells.push(table_expansion(ell, r, a.source).map_err(usage)?);
        }
    }
    let text = match a.format {
        Format::Pretty => format_table_pretty(&cells),
        Format::Json => {
            let records: Vec<_> = cells
                .iter()
                .map(|e| {
                    let coeffs: serde_json::Map<_, _> = e
                        .coeffs
                        .iter()
                        .map(|(s, c)| (s.to_string(), json!(c.to_string())))
                        .collect();
                    json!({ "ell": e.ell, "r": e.r, "coefficients": coeffs })
                })
                .collect();
            format!(
                "{}\n",
                serde_json::to_string_pretty(&records).map_err(|e| e.to_string())?
            )
        }
        Format::Csv => {
            let mut s = String::from("ell,r,s,coefficient\n");
            for e in &cells {
                for (k, c) in &e.coeffs {
                    s.push_str(&format!("{},{},{},{}\n", e.ell, e.r, k, c));
                }
            }
            s
        }
    };
    Ok((text, EXIT_OK))
}

fn cmd_paths(a: &PathsArgs) -> CmdResult {
    let paths = enumerate_paths(a.ell, a.r).map_err(usage)?;
    let rows: Vec<_> = paths
        .iter()
        .map(|p| (p.to_string(), path_stats(p)))
        .collect();
    let hist = count_paths_by_index(a.ell, a.r).map_err(usage)?;
    let text = match a.format {
        Format::Pretty => {
            let mut s = String::new();
            for (steps, st) in &rows {
                s.push_str(&format!(
                    "path={steps} index={} returns={}\n",
                    st.index, st.returns
                ));
            }
            let hist_str: Vec<String> = hist.iter().map(|(k, c)| format!("{k}:{c}")).collect();
            s.push_str(&format!(
                "total={} histogram={{{}}}\n",
                rows.len(),
                hist_str.join(", ")
            ));
            s
        }
        Format::Json => {
            let list: Vec<_> = rows
                .iter()
                .map(|(steps, st)| json!({ "steps": steps, "index": st.index, "returns": st.returns }))
                .collect();
            let h: serde_json::Map<_, _> = hist
                .iter()
                .map(|(k, c)| (k.to_string(), json!(c)))
                .collect();
            let doc = json!({ "ell": a.ell, "r": a.r, "paths": list, "histogram": h });
            format!(
                "{}\n",
                serde_json::to_string_pretty(&doc).map_err(|e| e.to_string())?
            )
        }
        Format::Csv => {
            let mut s = String::from("steps,index,returns\n");
            for (steps, st) in &rows {
                s.push_str(&format!("{steps},{},{}\n", st.index, st.returns));
            }
            s
        }
    };
    Ok((text, EXIT_OK))
}

fn cmd_verify(a: &VerifyArgs) -> CmdResult {
    let spec = GridSpec {
        g_max: a.g_max,
        ell_min: a.ell_min,
        ell_max: a.ell_max,
        r_max: a.r_max,
        methods: a.methods.iter().copied().collect(),
    };
    let report = if a.inject_fault {
        let target = spec
            .cells()
            .into_iter()
            .find(is_valid)
            .ok_or("grid has no valid cell to perturb")?;
        cross_check_with(&spec, move |m, p, v| {
            if m == Method::Closed && *p == target {
                v + BigCount::one()
            } else {
                v
            }
        })
    } else {
        cross_check(&spec)
    }
    .map_err(usage)?;
    let code = if report.passed() {
        EXIT_OK
    } else {
        EXIT_MISMATCH
    };
    Ok((format!("{}\n", report.to_json()), code))
}
