//! `decompose`, `verify` and `bench` subcommands. Each returns the process
//! exit code and writes only to the given streams.

use std::fs::OpenOptions;
use std::io::{self, Write};
use std::path::PathBuf;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pfd::expr::{parse_expr, render, to_rational_function, ExprError, Format};
use pfd::{decompose, DecomposeOptions, Field, Method, ParamRational, PfdError, PolyPartMode, Rational};

use crate::bench::{self, BenchCase, CoeffMode, Family, Limits};

pub const EXIT_OK: u8 = 0;
pub const EXIT_MISMATCH: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_INTERNAL: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "pfd", version, about = "Exact partial fraction decomposition")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decompose a rational expression.
    Decompose(DecomposeArgs),
    /// Check that two expressions are the same rational function.
    Verify(VerifyArgs),
    /// Run a benchmark sweep and append CSV rows.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum MethodArg {
    Auto,
    Linear,
    Euclid,
    Galois,
    Linsys,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Method {
        match m {
            MethodArg::Auto => Method::Auto,
            MethodArg::Linear => Method::Linear,
            MethodArg::Euclid => Method::Euclid,
            MethodArg::Galois => Method::Galois,
            MethodArg::Linsys => Method::Linsys,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum FormatArg {
    Human,
    Json,
    Cas,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Human => Format::Human,
            FormatArg::Json => Format::Json,
            FormatArg::Cas => Format::Cas,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum PolyPartArg {
    Infinity,
    Accumulate,
}

#[derive(Args, Debug)]
pub struct DecomposeArgs {
    /// Decomposition variable.
    #[arg(long)]
    pub var: String,
    #[arg(long, value_enum, default_value = "auto")]
    pub method: MethodArg,
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    #[arg(long, value_enum, default_value = "human")]
    pub format: FormatArg,
    /// Parameter symbol; coefficients then live in Q(param).
    #[arg(long)]
    pub param: Option<String>,
    /// Recombine the result and fail on mismatch.
    #[arg(long)]
    pub verify: bool,
    #[arg(long, value_enum, default_value = "infinity")]
    pub poly_part: PolyPartArg,
    /// Expression; read from standard input when absent.
    pub expr: Option<String>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long)]
    pub var: String,
    #[arg(long)]
    pub param: Option<String>,
    pub original: String,
    pub claimed: String,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    #[arg(long)]
    pub family: String,
    /// Inclusive range of the swept parameter, `A..B`.
    #[arg(long = "j-range")]
    pub j_range: String,
    #[arg(long)]
    pub n: u32,
    /// Comma-separated methods.
    #[arg(long, default_value = "euclid,galois,linsys")]
    pub methods: String,
    /// Overridden by the PFD_SEED environment variable.
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value = "integer")]
    pub coeff: String,
    #[arg(long = "time-limit", default_value_t = bench::DEFAULT_TIME_LIMIT.as_secs_f64())]
    pub time_limit: f64,
    #[arg(long = "mem-limit", default_value_t = bench::DEFAULT_MEM_LIMIT)]
    pub mem_limit: usize,
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    /// CSV file to append to; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn run(cli: Cli, input: &mut dyn io::Read, out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    match cli.command {
        Command::Decompose(a) => cmd_decompose(&a, input, out, err),
        Command::Verify(a) => cmd_verify(&a, out, err),
        Command::Bench(a) => cmd_bench(&a, out, err),
    }
}

fn expr_exit(e: &ExprError) -> u8 {
    match e {
        ExprError::Pfd(PfdError::Internal(_)) => EXIT_INTERNAL,
        _ => EXIT_USAGE,
    }
}

fn pfd_exit(e: &PfdError) -> u8 {
    match e {
        PfdError::Internal(_) | PfdError::NotCoprime | PfdError::ModulusMismatch | PfdError::OrderMismatch => {
            EXIT_INTERNAL
        }
        _ => EXIT_USAGE,
    }
}

fn params(p: &Option<String>) -> Vec<&str> {
    p.iter().map(String::as_str).collect()
}

pub fn cmd_decompose(a: &DecomposeArgs, input: &mut dyn io::Read, out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    let text = match &a.expr {
        Some(t) => t.clone(),
        None => {
            let mut s = String::new();
            if let Err(e) = input.read_to_string(&mut s) {
                let _ = writeln!(err, "error: cannot read input: {e}");
                return EXIT_USAGE;
            }
            s
        }
    };
    match &a.param {
        Some(_) => decompose_in::<ParamRational>(a, &text, out, err),
        None => decompose_in::<Rational>(a, &text, out, err),
    }
}

fn decompose_in<F: Field>(a: &DecomposeArgs, text: &str, out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    let ps = params(&a.param);
    let f = match parse_expr(text.trim(), &a.var, &ps)
        .map_err(ExprError::from)
        .and_then(|ast| to_rational_function::<F>(&ast))
    {
        Ok(f) => f,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return expr_exit(&e);
        }
    };
    let opts = DecomposeOptions {
        method: a.method.into(),
        jobs: a.jobs.max(1),
        poly_part: match a.poly_part {
            PolyPartArg::Infinity => PolyPartMode::Infinity,
            PolyPartArg::Accumulate => PolyPartMode::Accumulate,
        },
    };
    let d = match decompose(&f, &opts) {
        Ok(d) => d,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return pfd_exit(&e);
        }
    };
    if !d.satisfies_degree_bounds() {
        let _ = writeln!(err, "error: internal invariant violated: numerator degree bound");
        return EXIT_INTERNAL;
    }
    let param = a.param.as_deref().unwrap_or("t");
    let _ = writeln!(out, "{}", render(&d, a.format.into(), &a.var, param));
    if a.verify && !d.recombine().same_function(&f) {
        let _ = writeln!(err, "verification failed: recombined result differs from the input");
        return EXIT_MISMATCH;
    }
    EXIT_OK
}

pub fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    match &a.param {
        Some(_) => verify_in::<ParamRational>(a, out, err),
        None => verify_in::<Rational>(a, out, err),
    }
}

fn verify_in<F: Field>(a: &VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    let ps = params(&a.param);
    let read = |s: &str| {
        parse_expr(s.trim(), &a.var, &ps)
            .map_err(ExprError::from)
            .and_then(|ast| to_rational_function::<F>(&ast))
    };
    let (f, g) = match (read(&a.original), read(&a.claimed)) {
        (Ok(f), Ok(g)) => (f, g),
        (Err(e), _) | (_, Err(e)) => {
            let _ = writeln!(err, "error: {e}");
            return expr_exit(&e);
        }
    };
    if f.same_function(&g) {
        let _ = writeln!(out, "equal");
        EXIT_OK
    } else {
        let _ = writeln!(out, "different");
        EXIT_MISMATCH
    }
}

fn parse_methods(s: &str) -> Result<Vec<Method>, String> {
    s.split(',')
        .map(|m| m.trim().parse::<Method>().map_err(|e| e.to_string()))
        .collect()
}

pub fn cmd_bench(a: &BenchArgs, out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    let setup = (|| -> Result<_, String> {
        let family: Family = a.family.parse()?;
        let (lo, hi) = bench::parse_range(&a.j_range)?;
        let methods = parse_methods(&a.methods)?;
        let coeff_mode: CoeffMode = a.coeff.parse()?;
        let seed = match std::env::var("PFD_SEED") {
            Ok(s) => s.trim().parse().map_err(|_| format!("invalid PFD_SEED '{s}'"))?,
            Err(_) => a.seed,
        };
        if !(a.time_limit.is_finite() && a.time_limit >= 0.0) {
            return Err(format!("invalid time limit {}", a.time_limit));
        }
        Ok((family, lo, hi, methods, coeff_mode, seed))
    })();
    let (family, lo, hi, methods, coeff_mode, seed) = match setup {
        Ok(s) => s,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let limits = Limits {
        time: Duration::from_secs_f64(a.time_limit),
        memory: Some(a.mem_limit),
    };

    let mut file;
    let sink: &mut dyn Write = match &a.out {
        Some(path) => {
            let fresh = std::fs::metadata(path).map(|m| m.len() == 0).unwrap_or(true);
            file = match OpenOptions::new().create(true).append(true).open(path) {
                Ok(f) => f,
                Err(e) => {
                    let _ = writeln!(err, "error: cannot open {}: {e}", path.display());
                    return EXIT_USAGE;
                }
            };
            if fresh && write_preamble(&mut file).is_err() {
                return EXIT_USAGE;
            }
            &mut file
        }
        None => {
            if write_preamble(out).is_err() {
                return EXIT_USAGE;
            }
            out
        }
    };
    for j in lo..=hi {
        let case = BenchCase {
            family,
            j,
            n: a.n,
            seed,
            coeff_mode,
        };
        for &method in &methods {
            let result = bench::run_case(&case, method, a.jobs.max(1), limits);
            if writeln!(sink, "{}", result.csv_row()).and_then(|_| sink.flush()).is_err() {
                let _ = writeln!(err, "error: cannot write CSV row");
                return EXIT_USAGE;
            }
        }
    }
    EXIT_OK
}

fn write_preamble(w: &mut dyn Write) -> io::Result<()> {
    writeln!(w, "{}", bench::metadata_line())?;
    writeln!(w, "{}", bench::CSV_HEADER)
}
