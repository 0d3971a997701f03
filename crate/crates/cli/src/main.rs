use std::io::{self, Write};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

use opavoid_core::error::Error;
use opavoid_core::formulas::{diagonal_count, qr_polynomial};
use opavoid_core::method::{default_oracle_budget, CountMethod, MethodRegistry};
use opavoid_core::patterns::Permutation;
use opavoid_core::table::OpTable;
use opavoid_core::verify::{Bounds, SuiteRegistry};

/// Exact counts of ordered set partitions avoiding a permutation pattern.
#[derive(Parser)]
#[command(name = "opavoid", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the triangle op(n,k), 1 <= k <= n <= nmax.
    Table {
        #[arg(long, default_value_t = 10)]
        nmax: u32,
        #[arg(long, default_value = "321")]
        pattern: String,
        /// Defaults to double-sum for patterns of length 3, oracle otherwise.
        #[arg(long)]
        method: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
        /// Largest n the oracle-based methods will attempt.
        #[arg(long)]
        budget: Option<u32>,
    },
    /// Print a single count op(n,k).
    Count {
        n: u32,
        k: u32,
        #[arg(default_value = "321")]
        pattern: String,
        #[arg(long)]
        method: Option<String>,
        #[arg(long)]
        budget: Option<u32>,
    },
    /// Run a named suite of exact checks; exit status 1 if any fails.
    Verify {
        suite: String,
        #[arg(long = "n")]
        n: Option<u32>,
        /// Series window in the block variable.
        #[arg(long = "K")]
        k_window: Option<usize>,
        /// Series window in the length variable.
        #[arg(long = "N")]
        n_window: Option<usize>,
    },
    /// Print the diagonal polynomials Q_0..Q_rmax and the diagonal counts.
    Diag {
        #[arg(long, default_value_t = 5)]
        rmax: u32,
        #[arg(long, default_value_t = 10)]
        nmax: u32,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Plain,
    Csv,
    Json,
}

/// Outcome that decides the exit status.
enum Failure {
    Usage(anyhow::Error),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.into())
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Usage(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.into())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let mut out = io::stdout().lock();
    match cli.command {
        Command::Table {
            nmax,
            pattern,
            method,
            format,
            budget,
        } => {
            let p = parse_pattern(&pattern)?;
            let registry = registry_for(&p, budget);
            let m = pick_method(&registry, method.as_deref(), &p)?;
            let table = m.table(nmax, &p)?;
            match format {
                Format::Plain => write_plain(&mut out, &table, nmax)?,
                Format::Csv => write_csv(&mut out, &table, nmax)?,
                Format::Json => writeln!(out, "{}", table.to_json())?,
            }
        }
        Command::Count {
            n,
            k,
            pattern,
            method,
            budget,
        } => {
            let p = parse_pattern(&pattern)?;
            let registry = registry_for(&p, budget);
            let m = pick_method(&registry, method.as_deref(), &p)?;
            writeln!(out, "{}", m.count(n, k, &p)?)?;
        }
        Command::Verify {
            suite,
            n,
            k_window,
            n_window,
        } => {
            let suites = SuiteRegistry::default();
            let s = suites.get(&suite)?;
            let report = s.run(&Bounds { n, k_window, n_window })?;
            writeln!(out, "{report}")?;
            if !report.passed() {
                return Err(Failure::Verification);
            }
        }
        Command::Diag { rmax, nmax } => write_diag(&mut out, rmax, nmax)?,
    }
    Ok(())
}

fn parse_pattern(s: &str) -> anyhow::Result<Permutation> {
    s.parse().with_context(|| format!("bad pattern `{s}`"))
}

fn registry_for(p: &Permutation, budget: Option<u32>) -> MethodRegistry {
    if let Some(b) = budget {
        let default = default_oracle_budget(p);
        if b > default {
            eprintln!("warning: oracle budget raised to n <= {b} (default {default}); this may be slow");
        }
    }
    MethodRegistry::with_defaults(budget)
}

fn pick_method<'a>(registry: &'a MethodRegistry, name: Option<&str>, p: &Permutation) -> Result<&'a dyn CountMethod, Error> {
    let name = name.unwrap_or(if p.is_length_three() { "double-sum" } else { "oracle" });
    registry.get(name)
}

fn cell(table: &OpTable, n: u32, k: u32) -> String {
    table.count(n, k).map(BigInt::to_string).unwrap_or_default()
}

fn write_plain(out: &mut impl Write, table: &OpTable, nmax: u32) -> io::Result<()> {
    let width = table.iter().map(|(_, e)| e.count.to_string().len()).max().unwrap_or(1).max(2);
    let label = nmax.to_string().len().max(3);
    write!(out, "{:>label$}", "n\\k")?;
    for k in 1..=nmax {
        write!(out, " {k:>width$}")?;
    }
    writeln!(out)?;
    for n in 1..=nmax {
        write!(out, "{n:>label$}")?;
        for k in 1..=n {
            write!(out, " {:>width$}", cell(table, n, k))?;
        }
        writeln!(out)?;
    }
    Ok(())
}

fn write_csv(out: &mut impl Write, table: &OpTable, nmax: u32) -> anyhow::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["n".to_string()];
    header.extend((1..=nmax).map(|k| k.to_string()));
    w.write_record(&header)?;
    for n in 1..=nmax {
        let mut row = vec![n.to_string()];
        row.extend((1..=nmax).map(|k| cell(table, n, k)));
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

fn write_diag(out: &mut impl Write, rmax: u32, nmax: u32) -> Result<(), Failure> {
    for r in 0..=rmax as i64 {
        let q = qr_polynomial(r)?;
        let coeffs: Vec<String> = q.coeffs().iter().map(ToString::to_string).collect();
        writeln!(out, "Q_{r} = {q}")?;
        writeln!(out, "  coefficients (n^0 first): [{}]", coeffs.join(", "))?;
    }
    writeln!(out)?;
    for r in 0..=rmax as i64 {
        let counts = (0..=nmax)
            .map(|n| diagonal_count(n, r).map(|c| c.to_string()))
            .collect::<Result<Vec<_>, _>>()?;
        writeln!(out, "op(n+{r},n), n = 0..{nmax}: {}", counts.join(", "))?;
    }
    Ok(())
}
