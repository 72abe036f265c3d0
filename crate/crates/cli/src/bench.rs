//! Benchmark families, deterministic input generation, and isolated timed
//! runs with time and heap limits.

use std::fmt;
use std::str::FromStr;
use std::sync::mpsc;
use std::thread;
use std::time::{Duration, Instant};

use pfd::budget::{self, Budget, Interrupt};
use pfd::expr::{parse_expr, to_rational_function};
use pfd::{decompose, DecomposeOptions, Field, Method, ParamRational, Rational, RationalFunction};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const CSV_HEADER: &str = "family,j,n,seed,coeff_mode,method,status,wall_time_s,peak_mem_bytes";

/// Pinned generator: ChaCha with 8 rounds, keyed by `seed_from_u64(seed)`,
/// one stream per case.
pub const RNG_NAME: &str = "ChaCha8Rng/rand_chacha-0.3/seed_from_u64/stream-per-case";

pub const COEFF_MIN: u64 = 1;
pub const COEFF_MAX: u64 = 100_000;

pub const DEFAULT_TIME_LIMIT: Duration = Duration::from_secs(60);
pub const DEFAULT_MEM_LIMIT: usize = 2_000_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// `1 / prod_{i=1}^{j} sum_{k=0}^{n} b_ik x^k`
    CountSweep,
    /// `1 / prod_{i=1}^{4} (sum_{k=0}^{n} b_ik x^k)^j`
    AllMultiplicity,
    /// `1 / (quadratic)^j / prod_{i=1}^{3} (quadratic)^n`
    OneMultiplicity,
    /// `1 / prod_{i=1}^{4} (sum_{k=0}^{j} b_ik x^k)^n`
    DegreeSweep,
}

impl Family {
    pub const ALL: [Family; 4] = [
        Family::CountSweep,
        Family::AllMultiplicity,
        Family::OneMultiplicity,
        Family::DegreeSweep,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::CountSweep => "count-sweep",
            Family::AllMultiplicity => "all-multiplicity",
            Family::OneMultiplicity => "one-multiplicity",
            Family::DegreeSweep => "degree-sweep",
        }
    }

    /// (degree, multiplicity) of every denominator factor.
    pub fn shape(self, j: u32, n: u32) -> Vec<(u32, u32)> {
        match self {
            Family::CountSweep => vec![(n, 1); j as usize],
            Family::AllMultiplicity => vec![(n, j); 4],
            Family::OneMultiplicity => {
                let mut s = vec![(2, j)];
                s.extend([(2, n); 3]);
                s
            }
            Family::DegreeSweep => vec![(j, n); 4],
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| format!("unknown family '{s}'"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CoeffMode {
    Integer,
    /// Coefficients `c*t + d` over `Q(t)`.
    Parameter,
}

impl CoeffMode {
    pub fn name(self) -> &'static str {
        match self {
            CoeffMode::Integer => "integer",
            CoeffMode::Parameter => "parameter",
        }
    }
}

impl FromStr for CoeffMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "integer" => Ok(CoeffMode::Integer),
            "parameter" => Ok(CoeffMode::Parameter),
            _ => Err(format!("unknown coefficient mode '{s}'")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BenchCase {
    pub family: Family,
    pub j: u32,
    pub n: u32,
    pub seed: u64,
    pub coeff_mode: CoeffMode,
}

impl BenchCase {
    fn stream(&self) -> u64 {
        let fam = Family::ALL.iter().position(|f| *f == self.family).unwrap() as u64;
        let mode = matches!(self.coeff_mode, CoeffMode::Parameter) as u64;
        (fam << 56) | (mode << 55) | ((self.j as u64 & 0x7f_ffff) << 32) | self.n as u64
    }

    /// The generated input as expression text in `x` (and `t` in parameter
    /// mode). Identical for identical cases on every platform.
    pub fn expression(&self) -> String {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream());
        let mut draw = || rng.gen_range(COEFF_MIN..=COEFF_MAX);
        let mut factors = Vec::new();
        for (deg, mult) in self.family.shape(self.j, self.n) {
            if mult == 0 {
                continue;
            }
            let terms: Vec<String> = (0..=deg)
                .map(|k| {
                    let c = match self.coeff_mode {
                        CoeffMode::Integer => draw().to_string(),
                        CoeffMode::Parameter => {
                            let (c, d) = (draw(), draw());
                            format!("({c}*t + {d})")
                        }
                    };
                    match k {
                        0 => c,
                        1 => format!("{c}*x"),
                        _ => format!("{c}*x^{k}"),
                    }
                })
                .collect();
            let base = format!("({})", terms.join(" + "));
            factors.push(if mult == 1 { base } else { format!("{base}^{mult}") });
        }
        if factors.is_empty() {
            "1".to_string()
        } else {
            format!("1/({})", factors.join("*"))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Timeout,
    MemoryLimit,
    /// The method rejected the input (e.g. `linear` on a quadratic base).
    Error,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Timeout => "timeout",
            Status::MemoryLimit => "memory-limit",
            Status::Error => "error",
        }
    }
}

#[derive(Clone, Debug)]
pub struct BenchResult {
    pub case: BenchCase,
    pub method: Method,
    pub status: Status,
    /// Present only for `Ok` runs.
    pub wall_time: Option<Duration>,
    pub peak_memory: Option<usize>,
}

impl BenchResult {
    pub fn csv_row(&self) -> String {
        let c = &self.case;
        format!(
            "{},{},{},{},{},{},{},{},{}",
            c.family,
            c.j,
            c.n,
            c.seed,
            c.coeff_mode.name(),
            self.method,
            self.status.name(),
            self.wall_time.map(|t| format!("{:.6}", t.as_secs_f64())).unwrap_or_default(),
            self.peak_memory.map(|m| m.to_string()).unwrap_or_default(),
        )
    }
}

/// Name of the memory metric in effect for this process.
pub fn memory_metric() -> &'static str {
    if budget::counting_active() {
        "heap_high_water_bytes"
    } else {
        "process_peak_rss_bytes"
    }
}

/// Comment line written ahead of the CSV header.
pub fn metadata_line() -> String {
    format!("# rng={RNG_NAME} memory_metric={}", memory_metric())
}

#[derive(Clone, Copy, Debug)]
pub struct Limits {
    pub time: Duration,
    pub memory: Option<usize>,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            time: DEFAULT_TIME_LIMIT,
            memory: Some(DEFAULT_MEM_LIMIT),
        }
    }
}

// supervisor slack on top of the cooperative deadline
const GRACE: Duration = Duration::from_secs(2);

enum Outcome {
    Done(Duration, usize),
    Stopped(Interrupt),
    Failed,
}

fn timed<F: Field>(f: RationalFunction<F>, opts: DecomposeOptions, limits: Limits) -> Outcome {
    let (tx, rx) = mpsc::channel();
    let deadline = Instant::now() + limits.time;
    let budget = Budget::new(Some(deadline), limits.memory);
    let worker_budget = budget.clone();
    thread::spawn(move || {
        let base = budget::live_bytes();
        budget::reset_peak();
        let start = Instant::now();
        let out = budget::run_with_budget(worker_budget, || decompose(&f, &opts).is_ok());
        let elapsed = start.elapsed();
        let peak = if budget::counting_active() {
            budget::peak_bytes().saturating_sub(base)
        } else {
            budget::process_peak_rss().unwrap_or(0)
        };
        let outcome = match out {
            Ok(true) => Outcome::Done(elapsed, peak),
            Ok(false) => Outcome::Failed,
            Err(why) => Outcome::Stopped(why),
        };
        let _ = tx.send(outcome);
        drop(f);
    });
    match rx.recv_timeout(limits.time + GRACE) {
        Ok(o) => o,
        Err(_) => {
            // the kernel missed its checkpoints; stop it and move on
            budget.cancel(Interrupt::Timeout);
            let _ = rx.recv_timeout(GRACE);
            Outcome::Stopped(Interrupt::Timeout)
        }
    }
}

/// Runs one (case, method) pair in its own thread under `limits`.
pub fn run_case(case: &BenchCase, method: Method, jobs: usize, limits: Limits) -> BenchResult {
    let text = case.expression();
    let opts = DecomposeOptions {
        method,
        jobs,
        ..DecomposeOptions::default()
    };
    let outcome = match case.coeff_mode {
        CoeffMode::Integer => prepare::<Rational>(&text, &[]).map(|f| timed(f, opts, limits)),
        CoeffMode::Parameter => prepare::<ParamRational>(&text, &["t"]).map(|f| timed(f, opts, limits)),
    }
    .unwrap_or(Outcome::Failed);
    let (status, wall_time, peak_memory) = match outcome {
        Outcome::Done(t, m) => (Status::Ok, Some(t), Some(m)),
        Outcome::Stopped(Interrupt::Timeout) => (Status::Timeout, None, None),
        Outcome::Stopped(Interrupt::MemoryLimit) => (Status::MemoryLimit, None, None),
        Outcome::Failed => (Status::Error, None, None),
    };
    BenchResult {
        case: *case,
        method,
        status,
        wall_time,
        peak_memory,
    }
}

fn prepare<F: Field>(text: &str, params: &[&str]) -> Option<RationalFunction<F>> {
    to_rational_function(&parse_expr(text, "x", params).ok()?).ok()
}

/// Parses an inclusive range `A..B` (or a single value).
pub fn parse_range(s: &str) -> Result<(u32, u32), String> {
    let bad = || format!("invalid range '{s}' (expected A..B)");
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (a.trim(), b.trim().trim_start_matches('=')),
        None => (s.trim(), s.trim()),
    };
    let a: u32 = a.parse().map_err(|_| bad())?;
    let b: u32 = b.parse().map_err(|_| bad())?;
    if a > b {
        return Err(bad());
    }
    Ok((a, b))
}
