//! Thin command-line surface over the library: exact f-factorials,
//! the p-ordering oracle, constant enclosures, comparison tables, and
//! the seeded verification suites.
//!
//! Exit codes: 0 success, 1 usage error, 2 domain error (divergence,
//! ambiguity, budget), 3 verification failure.

use clap::{Parser, Subcommand, ValueEnum};
use ffactorial::asymptotics::{render_csv, render_text, table_rows};
use ffactorial::bhargava::{factorial_s, v_n, IntegerSet};
use ffactorial::constants::{beta_f, constant_beta, constant_c, Mode};
use ffactorial::fmap::LinearCertificate;
use ffactorial::legendre::{factorial, log_of_vector};
use ffactorial::verify::{run_suite, Suite};
use ffactorial::{Error, FMap};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "ffactorial", version, about = "Generalized factorials via Legendre-type prime-power formulas")]
struct Cli {
    /// Working precision in bits for enclosures.
    #[arg(long, global = true, default_value_t = 96)]
    precision: u32,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Prime cache directory (overrides LEGENDRE_CACHE_DIR).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Worker threads (default: all cores); results are identical for
    /// any thread count.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Maximum digits when printing expanded integers.
    #[arg(long, global = true, default_value_t = 5000)]
    digit_cap: usize,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute n!_f: factorization, value, and log enclosure.
    Ffact {
        /// Map DSL: x, x-1, (x+b)/a, ceil((x-1)/2), log(x), abs(sin(x)).
        #[arg(long)]
        f: String,
        #[arg(long)]
        n: u64,
    },
    /// Bhargava factorial n!_S via greedy p-orderings.
    Bhargava {
        /// "primes" or comma-separated integers.
        #[arg(long)]
        set: String,
        #[arg(long)]
        n: usize,
        /// Also print the per-prime v_n breakdown.
        #[arg(long)]
        show_orderings: bool,
    },
    /// Evaluate C, beta, or beta_f as an enclosure.
    Constant {
        /// One of: C, beta, beta_f.
        name: String,
        #[arg(long, default_value_t = 1e-5)]
        tol: f64,
        /// "rigorous" or "accelerated".
        #[arg(long, default_value = "rigorous")]
        mode: String,
        /// Map DSL (beta_f only).
        #[arg(long)]
        f: Option<String>,
        /// Certificate alpha (beta_f only).
        #[arg(long)]
        alpha: Option<u64>,
        /// Certificate M (beta_f only).
        #[arg(long = "M")]
        m: Option<u64>,
    },
    /// Reproduce comparison table 1 (f = x-1) or 2 (f = ceil((x-1)/2)).
    Table {
        /// 1 or 2.
        which: u8,
        /// Rows: comma-separated values and ranges, e.g. 1..10,100,1000.
        #[arg(long, default_value = "1..10,100,1000,5000,10000")]
        rows: String,
    },
    /// Run a seeded property suite.
    Verify {
        /// One of: legendre, bhargava, chebyshev, constants, all.
        suite: String,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
}

fn parse_rows(spec: &str) -> Result<Vec<u64>, Error> {
    let mut out = Vec::new();
    for part in spec.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        if let Some((a, b)) = part.split_once("..") {
            let a: u64 = a.parse().map_err(|_| Error::Parse(format!("bad row: {part}")))?;
            let b: u64 = b.parse().map_err(|_| Error::Parse(format!("bad row: {part}")))?;
            if a > b {
                return Err(Error::Parse(format!("empty range: {part}")));
            }
            out.extend(a..=b);
        } else {
            out.push(part.parse().map_err(|_| Error::Parse(format!("bad row: {part}")))?);
        }
    }
    if out.is_empty() {
        return Err(Error::Parse("no rows requested".into()));
    }
    Ok(out)
}

fn parse_set(spec: &str) -> Result<IntegerSet, Error> {
    if spec.trim() == "primes" {
        return IntegerSet::primes(1_000_000);
    }
    let elements: Result<Vec<i64>, _> = spec
        .split(',')
        .map(|s| s.trim().parse::<i64>())
        .collect();
    IntegerSet::explicit(elements.map_err(|_| Error::Parse(format!("bad set: {spec}")))?)
}

fn print_integer(value: &rug::Integer, digit_cap: usize) -> String {
    let s = value.to_string();
    if s.len() <= digit_cap {
        s
    } else {
        format!("[{} digits; raise --digit-cap to expand]", s.len())
    }
}

fn run(cli: &Cli) -> Result<ExitCode, Error> {
    match &cli.cmd {
        Cmd::Ffact { f, n } => {
            let f: FMap = f.parse()?;
            let vec = factorial(&f, *n)?;
            let log = log_of_vector(&vec, cli.precision);
            match cli.format {
                Format::Json => {
                    let out = serde_json::json!({
                        "factorization": &vec,
                        "value": print_integer(&vec.to_integer(), cli.digit_cap),
                        "log_lo": log.lo().to_f64(),
                        "log_hi": log.hi().to_f64(),
                    });
                    println!("{}", serde_json::to_string_pretty(&out).unwrap());
                }
                _ => {
                    println!("{}!_({}) = {}", n, f, print_integer(&vec.to_integer(), cli.digit_cap));
                    let factors: Vec<String> = vec
                        .entries()
                        .map(|(p, e)| if e == 1 { p.to_string() } else { format!("{p}^{e}") })
                        .collect();
                    println!("factorization: {}", if factors.is_empty() { "1".into() } else { factors.join(" * ") });
                    println!("log: [{}, {}]", log.lo().to_f64(), log.hi().to_f64());
                }
            }
        }
        Cmd::Bhargava { set, n, show_orderings } => {
            let s = parse_set(set)?;
            let value = factorial_s(&s, *n)?;
            println!("{}!_S = {}", n, print_integer(&value, cli.digit_cap));
            if *show_orderings {
                // any prime beyond the largest pairwise difference in the
                // search pool contributes v_n = 1
                let pool_len = (4 * (n + 1)).max(64).min(s.elements().len());
                let pool = &s.elements()[..pool_len];
                let max_diff = match (pool.first(), pool.last()) {
                    (Some(lo), Some(hi)) => (hi - lo).unsigned_abs(),
                    _ => 0,
                };
                for &p in ffactorial::primes::primes_up_to(max_diff.max(2))?.primes() {
                    let v = v_n(&s, p, *n)?;
                    if v != 1 {
                        println!("  v_{n}(S, {p}) = {v}");
                    }
                }
            }
        }
        Cmd::Constant { name, tol, mode, f, alpha, m } => {
            let mode: Mode = mode.parse()?;
            let result = match name.as_str() {
                "C" => constant_c(*tol, mode)?,
                "beta" => constant_beta(*tol, mode)?,
                "beta_f" => {
                    let f: FMap = f
                        .as_deref()
                        .ok_or_else(|| Error::Parse("beta_f requires --f".into()))?
                        .parse()?;
                    let alpha = alpha.ok_or_else(|| Error::Parse("beta_f requires --alpha".into()))?;
                    let m = m.ok_or_else(|| Error::Parse("beta_f requires --M".into()))?;
                    beta_f(&f, &LinearCertificate::new(alpha, m), *tol, mode)?
                }
                other => return Err(Error::Parse(format!("unknown constant: {other}"))),
            };
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&result).unwrap()),
                _ => {
                    println!(
                        "{name} in [{:.10}, {:.10}] ({} mode, {} primes, tail bound {:.3e})",
                        result.value.lo().to_f64(),
                        result.value.hi().to_f64(),
                        result.mode.as_str(),
                        result.primes_used,
                        result.tail_bound.hi().to_f64(),
                    );
                }
            }
        }
        Cmd::Table { which, rows } => {
            let rows = parse_rows(rows)?;
            let (f, cert) = match which {
                1 => ("x-1".parse::<FMap>()?, LinearCertificate::new(1, 2)),
                2 => (FMap::HalfCeiling, LinearCertificate::new(2, 4)),
                other => return Err(Error::Parse(format!("no table {other}; use 1 or 2"))),
            };
            let table = table_rows(&f, &cert, &rows, cli.precision)?;
            match cli.format {
                Format::Text => print!("{}", render_text(&table)),
                Format::Csv => print!("{}", render_csv(&table)),
                Format::Json => println!("{}", serde_json::to_string_pretty(&table).unwrap()),
            }
        }
        Cmd::Verify { suite, seed } => {
            let suite: Suite = suite.parse()?;
            let report = run_suite(suite, *seed);
            print!("{}", report.render());
            if !report.passed() {
                return Ok(ExitCode::from(3));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help/version are normal exits; everything else is usage
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(dir) = &cli.cache_dir {
        std::env::set_var("LEGENDRE_CACHE_DIR", dir);
    }
    if let Some(threads) = cli.threads {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::Parse(_) => 1,
                _ => 2,
            };
            ExitCode::from(code)
        }
    }
}
