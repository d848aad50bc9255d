use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use ffhyp_core::chargauss::{CharGroup, CharRef};
use ffhyp_core::fieldcore::DEFAULT_EXT_PMAX;
use ffhyp_core::harness::report::row_of;
use ffhyp_core::harness::{
    class_number_table, newform_table, run_suites, trace_table, write_reports, write_rows, ConfigPatch, OutputFormat,
    RunConfig, TableKind,
};
use ffhyp_core::hyper::{format_gauss, hyp, HyperValue};

/// Exit status for usage and runtime errors; suite failures use their count (at most 18).
const EXIT_ERROR: u8 = 64;

#[derive(Parser)]
#[command(name = "ffhyp", version, about = "Finite-field hypergeometric sums and the identities they satisfy")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites; exit status is the number of failing suites.
    Verify(VerifyArgs),
    /// Evaluate one hypergeometric sum.
    Eval(EvalArgs),
    /// Print reference tables.
    Tables(TablesArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite id, or `all`.
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long)]
    pmax: Option<u64>,
    /// Largest p for the F_{p^2} sweep.
    #[arg(long)]
    ext_pmax: Option<u64>,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    format: Option<OutputFormat>,
    /// Worker threads; 1 runs sequentially.
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// key = value file; flags win over it.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct EvalArgs {
    /// `2f1`, `3f2`, `4f3`, ... (any `<n+1>f<n>`).
    function: String,
    /// Comma-separated characters: phi, eps, chi4, chi4bar, or exponents k of chi_k.
    #[arg(long, allow_hyphen_values = true)]
    upper: String,
    #[arg(long, allow_hyphen_values = true)]
    lower: String,
    #[arg(long, allow_hyphen_values = true)]
    x: i64,
    #[arg(long)]
    p: u64,
    /// Evaluate over F_{p^2}.
    #[arg(long)]
    ext: bool,
    #[arg(long, default_value = "text")]
    format: OutputFormat,
}

#[derive(Args)]
struct TablesArgs {
    /// class-numbers, traces, or newforms.
    #[arg(long)]
    what: TableKind,
    /// Smallest discriminant for class-numbers.
    #[arg(long, default_value_t = -100, allow_hyphen_values = true)]
    dmin: i64,
    /// Largest prime for traces.
    #[arg(long, default_value_t = 200)]
    pmax: u64,
    /// Last coefficient index for newforms.
    #[arg(long, default_value_t = 100)]
    nmax: usize,
    #[arg(long, default_value = "csv")]
    format: OutputFormat,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Verify(a) => verify(a),
        Command::Eval(a) => eval(a).map(|()| 0),
        Command::Tables(a) => tables(a).map(|()| 0),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}

fn verify(a: VerifyArgs) -> Result<u8> {
    let mut cfg = RunConfig::default();
    if let Some(path) = &a.config {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        cfg.apply(&ConfigPatch::parse(&text)?);
    }
    cfg.apply(&ConfigPatch {
        pmax: a.pmax,
        ext_pmax: a.ext_pmax,
        tol: a.tol,
        threads: a.threads,
        format: a.format,
        seed: a.seed,
    });
    let reports = run_suites(&a.suite, &cfg)?;
    let mut out = BufWriter::new(io::stdout().lock());
    write_reports(&mut out, cfg.format, &reports)?;
    out.flush()?;
    let failing = reports.iter().filter(|r| !r.passed()).count();
    Ok(failing.min(255) as u8)
}

fn parse_char(token: &str, group: &CharGroup) -> Result<CharRef> {
    Ok(match token.trim() {
        "phi" => group.phi(),
        "eps" => group.eps(),
        "chi4" => group.chi4()?,
        "chi4bar" => group.chi4()?.conj(),
        other => match other.parse::<i64>() {
            Ok(k) => group.char_ref(k),
            Err(_) => bail!("unknown character `{other}` (phi, eps, chi4, chi4bar, or an integer exponent)"),
        },
    })
}

fn parse_chars(list: &str, group: &CharGroup) -> Result<Vec<CharRef>> {
    list.split(',').map(|t| parse_char(t, group)).collect()
}

fn eval(a: EvalArgs) -> Result<()> {
    let (top, bottom) = a
        .function
        .to_ascii_lowercase()
        .split_once('f')
        .and_then(|(m, n)| Some((m.parse::<usize>().ok()?, n.parse::<usize>().ok()?)))
        .with_context(|| format!("function `{}` is not of the form <n+1>f<n>", a.function))?;
    if top != bottom + 1 {
        bail!("function `{}` needs one more upper than lower parameter", a.function);
    }
    let group = if a.ext { CharGroup::for_extension(a.p, DEFAULT_EXT_PMAX)? } else { CharGroup::for_prime(a.p)? };
    let upper = parse_chars(&a.upper, &group)?;
    let lower = parse_chars(&a.lower, &group)?;
    if upper.len() != top || lower.len() != bottom {
        bail!(
            "{} takes {top} upper and {bottom} lower characters, got {} and {}",
            a.function,
            upper.len(),
            lower.len()
        );
    }
    let v: HyperValue = hyp(&group, &upper, &lower, a.x)?;
    let mut out = BufWriter::new(io::stdout().lock());
    match a.format {
        OutputFormat::Text => {
            writeln!(out, "{}", format_gauss(v.rounded))?;
            writeln!(out, "raw      {:+.12} {:+.12}i", v.raw.re, v.raw.im)?;
            writeln!(out, "residual {:.3e}", v.residual)?;
        }
        fmt => write_rows(&mut out, fmt, &["raw", "rounded", "residual"], &[row_of(&v)])?,
    }
    out.flush()?;
    Ok(())
}

fn tables(a: TablesArgs) -> Result<()> {
    let table = match a.what {
        TableKind::ClassNumbers => class_number_table(a.dmin)?,
        TableKind::Traces => trace_table(a.pmax)?,
        TableKind::Newforms => newform_table(a.nmax)?,
    };
    let mut out = BufWriter::new(io::stdout().lock());
    write_rows(&mut out, a.format, table.columns, &table.rows)?;
    out.flush()?;
    Ok(())
}
