//! `variogram`: evaluate, tabulate and cross-check lattice variograms.

use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lattice_variogram::oracle::{bessel_laplace_variogram, quadrature_variogram};
use lattice_variogram::variogram::{
    variogram_diagonal, variogram_edge, variogram_exact, variogram_symmetric, Regime,
};
use lattice_variogram::{variogram, CoeffPair, Error, EvalConfig, Lag};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::value::RawValue;

#[derive(Parser)]
#[command(name = "variogram", version, about = "Lattice variograms of first-order intrinsic autoregressions")]
#[command(allow_negative_numbers = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one lag.
    Eval(EvalArgs),
    /// Evaluate every lag with 0 <= s <= smax, 0 <= t <= tmax.
    Table(TableArgs),
    /// Evaluate one lag with every applicable method and compare.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct Coeffs {
    #[arg(long)]
    a: f64,
    #[arg(long)]
    b: f64,
}

#[derive(Args)]
struct EvalArgs {
    #[command(flatten)]
    coeffs: Coeffs,
    #[arg(long)]
    s: u64,
    #[arg(long)]
    t: u64,
    #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
    method: MethodArg,
    /// Tolerance of the series and quadrature evaluations.
    #[arg(long)]
    tol: Option<f64>,
    /// Term budget of a single series evaluation.
    #[arg(long)]
    max_terms: Option<u64>,
    /// Print the record as JSON instead of CSV.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct TableArgs {
    #[command(flatten)]
    coeffs: Coeffs,
    #[arg(long)]
    smax: u64,
    #[arg(long)]
    tmax: u64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
    method: MethodArg,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    max_terms: Option<u64>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    coeffs: Coeffs,
    #[arg(long)]
    s: u64,
    #[arg(long)]
    t: u64,
    /// Largest acceptable pairwise discrepancy.
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Auto,
    Exact,
    Edge,
    Symmetric,
    Quad,
    Bessel,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

const CSV_HEADER: &str = "s,t,a,b,value,method,est_error,terms";

struct Record {
    s: u64,
    t: u64,
    a: f64,
    b: f64,
    value: f64,
    method: &'static str,
    est_error: f64,
    terms: u64,
}

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

impl Record {
    fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{}",
            self.s,
            self.t,
            num(self.a),
            num(self.b),
            num(self.value),
            self.method,
            num(self.est_error),
            self.terms
        )
    }

    fn json(&self) -> String {
        #[derive(Serialize)]
        struct Json<'a> {
            s: u64,
            t: u64,
            a: &'a RawValue,
            b: &'a RawValue,
            value: &'a RawValue,
            method: &'a str,
            est_error: &'a RawValue,
            terms: u64,
        }
        let raw = |x: f64| RawValue::from_string(num(x)).expect("formatted float is valid JSON");
        let (a, b, value, est_error) = (raw(self.a), raw(self.b), raw(self.value), raw(self.est_error));
        serde_json::to_string(&Json {
            s: self.s,
            t: self.t,
            a: &a,
            b: &b,
            value: &value,
            method: self.method,
            est_error: &est_error,
            terms: self.terms,
        })
        .expect("record serializes")
    }
}

/// Failure of a command, mapped to the process exit code.
enum Failure {
    Eval(Error),
    Discrepancy(f64),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Eval(e)
    }
}

fn config(tol: Option<f64>, max_terms: Option<u64>) -> Result<EvalConfig, Error> {
    let mut cfg = EvalConfig::default();
    if let Some(t) = tol {
        if !(t > 0.0 && t < 1.0) {
            return Err(Error::Domain(format!("--tol must lie in (0, 1), got {t}")));
        }
        cfg = cfg.with_tol(t);
        cfg.quadrature.abs_tol = t;
        cfg.quadrature.rel_tol = t;
    }
    if let Some(n) = max_terms {
        if n == 0 {
            return Err(Error::Domain("--max-terms must be positive".into()));
        }
        cfg.max_terms = n;
        cfg.b_series_max_terms = cfg.b_series_max_terms.min(n as usize);
    }
    Ok(cfg)
}

fn evaluate(c: &CoeffPair, lag: Lag, method: MethodArg, cfg: &EvalConfig) -> Result<Record, Error> {
    let (value, method, est_error, terms) = match method {
        MethodArg::Auto => {
            let r = variogram(c, lag, cfg)?;
            (r.value, r.method.as_str(), r.est_error, r.terms_used())
        }
        MethodArg::Exact => {
            let r = variogram_exact(c, lag, cfg)?;
            (r.value, r.method.as_str(), r.est_error, r.terms_used())
        }
        MethodArg::Edge => {
            if c.regime == Regime::Interior || c.a <= 0.0 || c.b <= 0.0 {
                return Err(Error::Domain(format!(
                    "edge method needs a + b = 1/2 with a, b > 0, got ({}, {})",
                    c.a, c.b
                )));
            }
            let r = variogram_edge(c.a, lag, cfg)?;
            (r.value, r.method.as_str(), r.est_error, r.terms_used())
        }
        MethodArg::Symmetric => {
            if c.regime != Regime::SymmetricQuarter {
                return Err(Error::Domain(format!(
                    "symmetric method needs a = b = 1/4, got ({}, {})",
                    c.a, c.b
                )));
            }
            let r = variogram_symmetric(lag, cfg)?;
            (r.value, r.method.as_str(), r.est_error, r.terms_used())
        }
        MethodArg::Quad => {
            let q = quadrature_variogram(c, lag, &cfg.quadrature)?;
            (q.value, "quad", q.error, 0)
        }
        MethodArg::Bessel => {
            let q = bessel_laplace_variogram(c, lag, &cfg.quadrature)?;
            (q.value, "bessel", q.error, 0)
        }
    };
    Ok(Record {
        s: lag.s,
        t: lag.t,
        a: c.a,
        b: c.b,
        value,
        method,
        est_error,
        terms,
    })
}

fn cmd_eval(args: &EvalArgs, out: &mut impl Write) -> Result<(), Failure> {
    let cfg = config(args.tol, args.max_terms)?;
    let c = CoeffPair::new(args.coeffs.a, args.coeffs.b)?;
    let r = evaluate(&c, Lag::new(args.s, args.t), args.method, &cfg)?;
    let text = if args.json {
        r.json()
    } else {
        format!("{CSV_HEADER}\n{}", r.csv_row())
    };
    writeln!(out, "{text}").ok();
    Ok(())
}

fn cmd_table(args: &TableArgs, out: &mut impl Write) -> Result<(), Failure> {
    let cfg = config(args.tol, args.max_terms)?;
    let c = CoeffPair::new(args.coeffs.a, args.coeffs.b)?;
    let lags: Vec<Lag> = (0..=args.smax)
        .flat_map(|s| (0..=args.tmax).map(move |t| Lag::new(s, t)))
        .collect();
    let records = lags
        .par_iter()
        .map(|&lag| evaluate(&c, lag, args.method, &cfg))
        .collect::<Result<Vec<_>, _>>()?;
    match args.format {
        Format::Csv => {
            writeln!(out, "{CSV_HEADER}").ok();
            for r in &records {
                writeln!(out, "{}", r.csv_row()).ok();
            }
        }
        Format::Json => {
            let rows: Vec<String> = records.iter().map(Record::json).collect();
            writeln!(out, "[{}]", rows.join(",")).ok();
        }
    }
    Ok(())
}

fn cmd_verify(args: &VerifyArgs, out: &mut impl Write) -> Result<(), Failure> {
    if !(args.tol >= 0.0) {
        return Err(Error::Domain(format!("--tol must be nonnegative, got {}", args.tol)).into());
    }
    let cfg = EvalConfig::default();
    let c = CoeffPair::new(args.coeffs.a, args.coeffs.b)?;
    let lag = Lag::new(args.s, args.t);
    let mut records = Vec::new();
    match c.regime {
        Regime::SymmetricQuarter => {
            records.push(evaluate(&c, lag, MethodArg::Symmetric, &cfg)?);
            if lag.s == lag.t {
                records.push(Record {
                    s: lag.s,
                    t: lag.t,
                    a: c.a,
                    b: c.b,
                    value: variogram_diagonal(lag.s),
                    method: "diagonal",
                    est_error: 0.0,
                    terms: lag.s,
                });
            }
            records.push(evaluate(&c, lag, MethodArg::Edge, &cfg)?);
        }
        Regime::Edge => records.push(evaluate(&c, lag, MethodArg::Edge, &cfg)?),
        Regime::Interior => records.push(evaluate(&c, lag, MethodArg::Exact, &cfg)?),
    }
    records.push(evaluate(&c, lag, MethodArg::Quad, &cfg)?);
    records.push(evaluate(&c, lag, MethodArg::Bessel, &cfg)?);

    let mut worst = 0.0f64;
    for (i, x) in records.iter().enumerate() {
        for y in &records[i + 1..] {
            worst = worst.max((x.value - y.value).abs());
        }
    }
    let pass = worst <= args.tol;
    if args.json {
        let rows: Vec<String> = records.iter().map(Record::json).collect();
        writeln!(
            out,
            "{{\"records\":[{}],\"max_discrepancy\":{},\"tol\":{},\"pass\":{pass}}}",
            rows.join(","),
            num(worst),
            num(args.tol)
        )
        .ok();
    } else {
        for r in &records {
            writeln!(out, "{:<10} {} (est. error {})", r.method, num(r.value), num(r.est_error)).ok();
        }
        writeln!(
            out,
            "max discrepancy {} tol {} {}",
            num(worst),
            num(args.tol),
            if pass { "PASS" } else { "FAIL" }
        )
        .ok();
    }
    if pass {
        Ok(())
    } else {
        Err(Failure::Discrepancy(worst))
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            e.print().ok();
            return ExitCode::from(code);
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let result = match &cli.command {
        Command::Eval(args) => cmd_eval(args, &mut out),
        Command::Table(args) => cmd_table(args, &mut out),
        Command::Verify(args) => cmd_verify(args, &mut out),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Eval(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_convergence_failure() { 2 } else { 1 })
        }
        Err(Failure::Discrepancy(d)) => {
            eprintln!("error: methods disagree by {d:e}");
            ExitCode::from(3)
        }
    }
}
