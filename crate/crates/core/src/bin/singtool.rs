use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use singtool::catalog::{self, Format, Summary};
use singtool::polyexpr::{instantiate, parse_expression};
use singtool::quasihom::blowup_discrepancy;
use singtool::rational::fmt_q;
use singtool::rotation::{self, render_monomial};
use singtool::Error;

#[derive(Parser)]
#[command(name = "singtool", version, about = "Weighted hypersurface singularity calculator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Weights, Newton criteria, well-formed datum and complement profile as JSON.
    Analyze {
        poly: String,
        /// Comma-separated weights (t,z,x,y); detected from the support if omitted.
        #[arg(long, value_delimiter = ',')]
        weights: Option<Vec<u64>>,
        #[arg(long, requires = "weights")]
        degree: Option<u64>,
        /// Parameter binding such as `n=4`; repeatable.
        #[arg(long = "param", value_parser = parse_binding)]
        params: Vec<(String, i64)>,
    },
    /// Verify a JSONL dataset of table rows.
    Verify {
        #[arg(long)]
        dataset: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
        /// Also verify rows marked `ocr_suspect`.
        #[arg(long)]
        include_suspect: bool,
        #[arg(long, default_value_t = 0)]
        threads: usize,
    },
    /// List the pivot monomials of a rotation preset.
    Rotate {
        #[arg(long)]
        preset: String,
        #[arg(long, default_value_t = rotation::DEFAULT_BOUND)]
        bounds: u32,
    },
    /// Discrepancy of the weighted blow-up with the given weight.
    Discrepancy {
        #[arg(long, value_delimiter = ',', required = true)]
        weight: Vec<u64>,
        poly: String,
        #[arg(long = "param", value_parser = parse_binding)]
        params: Vec<(String, i64)>,
    },
}

fn parse_binding(s: &str) -> Result<(String, i64), String> {
    let (k, v) = s.split_once('=').ok_or("expected NAME=VALUE")?;
    let v = v.trim().parse().map_err(|e| format!("{e}"))?;
    Ok((k.trim().to_string(), v))
}

fn usage_error(e: &Error) -> bool {
    matches!(
        e,
        Error::Syntax { .. }
            | Error::Undeclared { .. }
            | Error::UnboundParameter(_)
            | Error::NegativeExponent(_)
            | Error::Schema { .. }
            | Error::Io(_)
            | Error::UnknownPreset(_)
            | Error::SearchBound(_)
    )
}

fn fail(e: Error) -> ExitCode {
    eprintln!("error: {e}");
    if usage_error(&e) {
        ExitCode::from(2)
    } else {
        ExitCode::from(1)
    }
}

/// Writes to stdout, treating a closed pipe (e.g. `| head`) as success.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    if let Err(e) = out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
        if e.kind() != std::io::ErrorKind::BrokenPipe {
            eprintln!("error: {e}");
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Analyze { poly, weights, degree, params } => {
            let params: BTreeMap<_, _> = params.into_iter().collect();
            match catalog::analyze(&poly, &params, weights.as_deref(), degree) {
                Ok(v) => {
                    emit(&(serde_json::to_string_pretty(&v).expect("json") + "\n"));
                    ExitCode::SUCCESS
                }
                Err(e) => fail(e),
            }
        }
        Command::Verify { dataset, format, include_suspect, threads } => {
            let rows = match catalog::load_dataset(&dataset) {
                Ok(rows) => rows,
                Err(e) => return fail(e),
            };
            let rows: Vec<_> = rows
                .into_iter()
                .filter(|r| include_suspect || r.curation_status == catalog::CurationStatus::Clean)
                .collect();
            let threads = if threads == 0 { rayon::current_num_threads() } else { threads };
            let reports = catalog::verify_all(&rows, threads);
            let format = match format {
                OutputFormat::Text => Format::Text,
                OutputFormat::Json => Format::Json,
            };
            emit(&catalog::emit_report(&reports, format));
            if Summary::of(&reports).success() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Command::Rotate { preset, bounds } => {
            let result = rotation::lookup(&preset).and_then(|p| rotation::enumerate_pivots(&p, bounds));
            match result {
                Ok(list) => {
                    let text: String = list.iter().map(|m| render_monomial(m) + "\n").collect();
                    emit(&text);
                    ExitCode::SUCCESS
                }
                Err(e) => fail(e),
            }
        }
        Command::Discrepancy { weight, poly, params } => {
            let params: BTreeMap<_, _> = params.into_iter().collect();
            let names: Vec<&str> = params.keys().map(String::as_str).collect();
            let result = parse_expression(&poly, &names)
                .and_then(|e| instantiate(&e, &params))
                .and_then(|p| blowup_discrepancy(&weight, &p));
            match result {
                Ok(v) => {
                    emit(&(fmt_q(&v) + "\n"));
                    ExitCode::SUCCESS
                }
                Err(e) => fail(e),
            }
        }
    }
}
