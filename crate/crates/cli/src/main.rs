//! `sig`: signature pairs, f_{p,q} tables, verification sweeps and ratio tables.

use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use invsig::closedforms::{delta_ratio, lambda_signature_closed};
use invsig::fpq::{format_by_weight, fpq, t_closed, table1, TableFormat};
use invsig::group::{binary_dihedral, dihedral, parse_group_spec};
use invsig::signature::{
    signature_pair, signature_record, Method, DEFAULT_NUMERIC_PRECISION, DEFAULT_ZERO_THRESHOLD,
};
use invsig::verify::{verify, VerifyOptions, THEOREM_IDS};
use invsig::Error;

const EXIT_PARSE: u8 = 2;
const EXIT_GROUP: u8 = 3;
const EXIT_COUNTEREXAMPLE: u8 = 4;

#[derive(Parser)]
#[command(name = "sig", version, about = "Signature pairs of group-invariant Hermitian polynomials")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Signature pair of one group as a JSON record.
    Signature {
        /// cyclic:p,q | dihedral:p | binary-dihedral:p | T | O | I | file:<path>
        #[arg(long)]
        group: String,
        #[arg(long, value_enum, default_value = "exact")]
        method: MethodArg,
        /// Working precision of the numeric oracle, in bits.
        #[arg(long, default_value_t = DEFAULT_NUMERIC_PRECISION)]
        precision: usize,
        /// Omit elapsed times so repeated runs are byte-identical.
        #[arg(long)]
        stable_output: bool,
    },
    /// Print f_{p,q}, or the table of f_{p,q} for 1 <= p <= p-max.
    Fpq {
        #[arg(long)]
        p: Option<u32>,
        #[arg(long, allow_negative_numbers = true)]
        q: i64,
        #[arg(long)]
        table: bool,
        #[arg(long, default_value_t = 9)]
        p_max: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
    },
    /// Run a verification sweep; exits 4 on a counterexample.
    Verify {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(THEOREM_IDS))]
        theorem: String,
        #[arg(long)]
        p_max: Option<u32>,
        #[arg(long)]
        include_slow: bool,
        #[arg(long)]
        stable_output: bool,
    },
    /// Positivity ratios of a family as CSV rows (index, formula, engine).
    Ratio {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        q_max: Option<u32>,
        /// A single member of the family.
        #[arg(long)]
        p: Option<u32>,
        #[arg(long)]
        p_max: Option<u32>,
        /// Compute the engine column up to this index.
        #[arg(long, default_value_t = 12)]
        engine_max: u32,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Exact,
    Numeric,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Latex,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    #[value(name = "cyclic-T")]
    CyclicT,
    Dihedral,
    BinaryDihedral,
}

enum Failure {
    Lib(Error),
    Usage(String),
    Counterexample(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn strip_elapsed(v: &mut Value, stable: bool) {
    if stable {
        if let Some(o) = v.as_object_mut() {
            o.remove("elapsed_ms");
        }
    }
}

fn to_json<T: Serialize>(x: &T, stable: bool) -> String {
    let mut v = serde_json::to_value(x).expect("records serialize");
    strip_elapsed(&mut v, stable);
    v.to_string()
}

fn cmd_signature(
    out: &mut impl Write,
    spec: &str,
    method: MethodArg,
    precision: usize,
    stable: bool,
) -> Result<(), Failure> {
    if precision < 64 {
        return Err(Failure::Usage(format!("precision must be at least 64 bits, got {precision}")));
    }
    let g = parse_group_spec(spec)?;
    let methods: &[Method] = match method {
        MethodArg::Exact => &[Method::Exact],
        MethodArg::Numeric => &[Method::Numeric],
        MethodArg::Both => &[Method::Exact, Method::Numeric],
    };
    let mut records = Vec::new();
    for &m in methods {
        records.push(signature_record(&g, m, precision, DEFAULT_ZERO_THRESHOLD)?);
    }
    for r in &records {
        writeln!(out, "{}", to_json(r, stable)).map_err(io_failure)?;
    }
    if let [a, b] = records.as_slice() {
        if (a.n_plus, a.n_minus, a.rank) != (b.n_plus, b.n_minus, b.rank) {
            return Err(Failure::Counterexample(format!(
                "{}: exact ({}, {}) vs numeric ({}, {})",
                a.group, a.n_plus, a.n_minus, b.n_plus, b.n_minus
            )));
        }
    }
    Ok(())
}

fn cmd_fpq(
    out: &mut impl Write,
    p: Option<u32>,
    q: i64,
    table: bool,
    p_max: u32,
    format: FormatArg,
) -> Result<(), Failure> {
    let fmt = match format {
        FormatArg::Text => TableFormat::Text,
        FormatArg::Latex => TableFormat::Latex,
    };
    if table {
        if p_max < 1 {
            return Err(Failure::Usage("--p-max must be at least 1".into()));
        }
        write!(out, "{}", table1(q, p_max, fmt)?).map_err(io_failure)?;
        return Ok(());
    }
    let p = p.ok_or_else(|| Failure::Usage("--p is required unless --table is given".into()))?;
    if p < 1 {
        return Err(Failure::Usage("--p must be at least 1".into()));
    }
    let body = format_by_weight(&fpq(p, q)?, p, q);
    match format {
        FormatArg::Text => writeln!(out, "{body}"),
        FormatArg::Latex => writeln!(out, "${body}$"),
    }
    .map_err(io_failure)
}

fn cmd_verify(
    out: &mut impl Write,
    theorem: &str,
    p_max: Option<u32>,
    include_slow: bool,
    stable: bool,
) -> Result<(), Failure> {
    let report = verify(theorem, &VerifyOptions { p_max, include_slow })?;
    writeln!(out, "{}", to_json(&report, stable)).map_err(io_failure)?;
    for w in &report.warnings {
        eprintln!("warning: {w}");
    }
    match &report.counterexample {
        Some(c) => Err(Failure::Counterexample(c.clone())),
        None => Ok(()),
    }
}

#[derive(Serialize)]
struct RatioRow {
    index: u32,
    formula: String,
    engine: String,
}

fn rational_text(r: &num_rational::BigRational) -> String {
    r.to_string()
}

fn cmd_ratio(
    out: &mut impl Write,
    family: Family,
    q_max: Option<u32>,
    p: Option<u32>,
    p_max: Option<u32>,
    engine_max: u32,
) -> Result<(), Failure> {
    let rows: Vec<RatioRow> = match family {
        Family::CyclicT => {
            let q_max = q_max.ok_or_else(|| Failure::Usage("--q-max is required for cyclic-T".into()))?;
            (1..=q_max)
                .map(|q| RatioRow {
                    index: q,
                    formula: rational_text(&t_closed(q)),
                    engine: String::new(),
                })
                .collect()
        }
        Family::Dihedral | Family::BinaryDihedral => {
            let lo = if matches!(family, Family::Dihedral) { 3 } else { 2 };
            let (range, single) = match (p, p_max) {
                (Some(p), None) => (p..=p, true),
                (None, Some(m)) => (lo..=m, false),
                _ => return Err(Failure::Usage("give exactly one of --p or --p-max".into())),
            };
            if range.is_empty() || *range.start() < lo {
                return Err(Failure::Usage(format!("the closed forms need p >= {lo}")));
            }
            let mut rows = Vec::new();
            for p in range {
                let (formula, engine) = match family {
                    Family::Dihedral => {
                        let e = (single || p <= engine_max)
                            .then(|| signature_pair(&dihedral(p)).and_then(|s| s.ratio()))
                            .transpose()?;
                        (delta_ratio(p), e)
                    }
                    _ => {
                        let e = (single || p <= engine_max)
                            .then(|| signature_pair(&binary_dihedral(p)).and_then(|s| s.ratio()))
                            .transpose()?;
                        (lambda_signature_closed(p).ratio()?, e)
                    }
                };
                if let Some(e) = &engine {
                    if *e != formula {
                        return Err(Failure::Counterexample(format!(
                            "p = {p}: formula {} vs engine {}",
                            rational_text(&formula),
                            rational_text(e)
                        )));
                    }
                }
                rows.push(RatioRow {
                    index: p,
                    formula: rational_text(&formula),
                    engine: engine.as_ref().map(rational_text).unwrap_or_default(),
                });
            }
            rows
        }
    };
    let mut w = csv::Writer::from_writer(out);
    for r in &rows {
        w.serialize(r).map_err(|e| Failure::Usage(e.to_string()))?;
    }
    w.flush().map_err(io_failure)
}

fn io_failure(e: io::Error) -> Failure {
    Failure::Usage(e.to_string())
}

fn run(cli: Cli) -> Result<(), Failure> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match cli.command {
        Command::Signature {
            group,
            method,
            precision,
            stable_output,
        } => cmd_signature(&mut out, &group, method, precision, stable_output),
        Command::Fpq {
            p,
            q,
            table,
            p_max,
            format,
        } => cmd_fpq(&mut out, p, q, table, p_max, format),
        Command::Verify {
            theorem,
            p_max,
            include_slow,
            stable_output,
        } => cmd_verify(&mut out, &theorem, p_max, include_slow, stable_output),
        Command::Ratio {
            family,
            q_max,
            p,
            p_max,
            engine_max,
        } => cmd_ratio(&mut out, family, q_max, p, p_max, engine_max),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // help and version go to stdout with success
            let code = if e.use_stderr() { EXIT_PARSE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Parse(_) => EXIT_PARSE,
                Error::NotUnitary(_) | Error::CapExceeded(_) => EXIT_GROUP,
                _ => 1,
            })
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_PARSE)
        }
        Err(Failure::Counterexample(msg)) => {
            eprintln!("counterexample: {msg}");
            ExitCode::from(EXIT_COUNTEREXAMPLE)
        }
    }
}
