//! The `ene` command-line tool.
//!
//! Errors print one machine-parsable line to stderr,
//! `error: <kind>: <message>`, where `<kind>` is `parse`, `ring-contract`,
//! `cap-exceeded` or `failure`. Expression parse errors follow it with the
//! input and a caret under the offending character.

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;

use crate::analytic::{
    ene_radius, ene_radius_series, poly_roots, verify_zero_products, Radius, RootOptions,
};
use crate::engine::{UnivCache, DEFAULT_QCAP};
use crate::error::{EneError, Result};
use crate::expr::{caret, eval, parse, Expr};
use crate::ring::{
    ComplexRing, GaussianRing, IntegerRing, ModularRing, RationalRing, Ring, RingDescriptor,
};
use crate::series::{Series, UnitSeries};
use crate::verify::{self, Size, Suite};

const GRAMMAR: &str = "\
Expressions (lowest to highest precedence):
  expr     := term (('+' | '-') term)*
  term     := ene (('*' | '/') ene)*          series product and quotient
  ene      := signed ('@' signed)*            eñe product
  signed   := '-' signed | power
  power    := atom ('^' exponent)?            exponent: 3, -1, (1/2), (-2/3)
  atom     := number | X | [re, im] | (expr)
            | UNIT (1 - X) | ZERO (1) | KOEBE (X/(1-X)^2)
            | E(N) Weierstrass factor | I(N) 1 - X^N | AH(p) Artin-Hasse
            | EXP(f) | D(f) log-derivative | INV(f) eñe inverse
            | T(n, f) Hecke operator | Te(N, f) exponential truncation

Exit codes: 0 ok, 1 failed check or numerical failure, 2 malformed input,
3 ring-contract violation, 4 universal polynomial cap exceeded.
The universal polynomial cache lives in $ENE_CACHE_DIR when set.";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Pretty,
}

#[derive(Debug, Parser)]
#[command(name = "ene", version, about = "Eñe product of power series", after_long_help = GRAMMAR)]
pub struct Cli {
    /// Coefficient ring: Q, Z, Zmod:m, C or C:eps
    #[arg(long, global = true, default_value = "Q")]
    ring: String,
    /// Truncation order N (series are known mod X^{N+1})
    #[arg(long, global = true, default_value_t = 16)]
    order: usize,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Numerical tolerance (roots: 1e-8, zero-products: 1e-6)
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Largest universal polynomial index that may be generated
    #[arg(long, global = true, default_value_t = DEFAULT_QCAP)]
    qcap: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate a series expression
    Eval { expr: String },
    /// Print the universal polynomial Q_p
    Qpoly { p: usize },
    /// Run an identity suite
    Verify {
        /// ring-axioms, ene-axioms, main-formula, hadamard, operators,
        /// rational, analytic or all
        suite: String,
        #[arg(long, default_value = "small")]
        size: String,
    },
    /// Complex roots of a polynomial
    Roots { poly: String },
    /// Eñe radius: smallest zero modulus, or radius of convergence of log f
    Radius { expr: String },
    /// Check that the zeros of P ⋆ Q are the products of zeros of P and Q
    ZeroProducts { p: String, q: String },
}

/// What the process should print and return.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Failure {
    error: EneError,
    source: Option<String>,
}

impl From<EneError> for Failure {
    fn from(error: EneError) -> Self {
        Failure {
            error,
            source: None,
        }
    }
}

fn kind(e: &EneError) -> &'static str {
    match e.exit_code() {
        2 => "parse",
        3 => "ring-contract",
        4 => "cap-exceeded",
        _ => "failure",
    }
}

/// Runs the tool on `args` (including the program name).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                let first = text.lines().next().unwrap_or("invalid arguments");
                let reason = first.trim_start_matches("error: ");
                Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: format!("error: parse: {reason}\n"),
                }
            };
        }
    };
    match dispatch(&cli) {
        Ok((code, stdout)) => Outcome {
            code,
            stdout,
            stderr: String::new(),
        },
        Err(Failure { error, source }) => {
            let mut stderr = format!("error: {}: {}\n", kind(&error), error);
            if let (EneError::Parse { pos, .. }, Some(src)) = (&error, source) {
                stderr.push_str(&caret(&src, *pos));
                stderr.push('\n');
            }
            Outcome {
                code: error.exit_code(),
                stdout: String::new(),
                stderr,
            }
        }
    }
}

fn parse_expr(src: &str) -> std::result::Result<Expr, Failure> {
    parse(src).map_err(|error| Failure {
        error,
        source: Some(src.to_string()),
    })
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("serializable") + "\n"
}

fn show<R: Ring>(s: &Series<R>, format: Format) -> String {
    match format {
        Format::Pretty => s.pretty() + "\n",
        Format::Json => to_json(&s.to_json()),
    }
}

fn eval_in(expr: &Expr, desc: RingDescriptor, order: usize, format: Format) -> Result<String> {
    Ok(match desc {
        RingDescriptor::BigRational => show(&eval(expr, &RationalRing, order)?, format),
        RingDescriptor::BigInteger => show(&eval(expr, &IntegerRing, order)?, format),
        RingDescriptor::Modular { modulus } => show(&eval(expr, &ModularRing::new(modulus)?, order)?, format),
        RingDescriptor::ComplexFloat { eps } => show(&eval(expr, &ComplexRing::new(eps)?, order)?, format),
        RingDescriptor::GaussianRational => show(&eval(expr, &GaussianRing, order)?, format),
        RingDescriptor::MultivariatePoly { .. } => {
            return Err(EneError::invalid("eval", "polynomial rings are not available here"))
        }
    })
}

fn complex_ring(cli: &Cli) -> Result<ComplexRing> {
    match cli.ring.parse::<RingDescriptor>()? {
        RingDescriptor::ComplexFloat { eps } => ComplexRing::new(eps),
        _ => Ok(ComplexRing::default()),
    }
}

fn complex_poly(src: &str, cli: &Cli) -> std::result::Result<UnitSeries<ComplexRing>, Failure> {
    let expr = parse_expr(src)?;
    let s = eval(&expr, &complex_ring(cli)?, cli.order)?;
    let d = s.degree();
    Ok(UnitSeries::new(s.as_polynomial_at(d))?)
}

/// Rounds to 12 significant digits so float noise does not reach the output.
fn tidy(x: f64) -> f64 {
    if !x.is_finite() {
        return x;
    }
    let r: f64 = format!("{x:.11e}").parse().expect("float text");
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

/// Drops components below `tol` relative to the modulus, then tidies.
fn clean(z: Complex64, tol: f64) -> Complex64 {
    let small = |x: f64| x.abs() <= tol * (1.0 + z.norm());
    Complex64::new(
        if small(z.re) { 0.0 } else { tidy(z.re) },
        if small(z.im) { 0.0 } else { tidy(z.im) },
    )
}

fn show_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{:?}", z.re)
    } else {
        format!("[{:?}, {:?}]", z.re, z.im)
    }
}

#[derive(Serialize)]
struct RootJson {
    re: f64,
    im: f64,
    multiplicity: usize,
}

#[derive(Serialize)]
struct RadiusJson {
    radius: Radius,
    kind: &'static str,
}

#[derive(Serialize)]
struct QpolyJson {
    p: usize,
    terms: usize,
    poly: String,
}

fn cache_for(cli: &Cli) -> UnivCache {
    let dir = std::env::var_os("ENE_CACHE_DIR").map(PathBuf::from);
    UnivCache::new(cli.qcap, dir)
}

fn dispatch(cli: &Cli) -> std::result::Result<(i32, String), Failure> {
    let opts = RootOptions {
        seed: cli.seed,
        tol: cli.tol.unwrap_or(RootOptions::default().tol),
        ..RootOptions::default()
    };
    match &cli.command {
        Command::Eval { expr } => {
            let parsed = parse_expr(expr)?;
            let desc: RingDescriptor = cli.ring.parse()?;
            let format = cli.format.unwrap_or(Format::Pretty);
            Ok((0, eval_in(&parsed, desc, cli.order, format)?))
        }
        Command::Qpoly { p } => {
            if *p == 0 {
                return Err(EneError::invalid("qpoly", "p must be at least 1").into());
            }
            let poly = cache_for(cli).get(*p)?;
            let text = poly.to_string();
            Ok((
                0,
                match cli.format.unwrap_or(Format::Pretty) {
                    Format::Pretty => text + "\n",
                    Format::Json => to_json(&QpolyJson {
                        p: *p,
                        terms: poly.terms().len(),
                        poly: text,
                    }),
                },
            ))
        }
        Command::Verify { suite, size } => {
            let suite: Suite = suite.parse()?;
            let size: Size = size.parse()?;
            let report = verify::run(suite, cli.seed, size, &cache_for(cli));
            let code = if report.pass { 0 } else { 1 };
            let out = match cli.format.unwrap_or(Format::Json) {
                Format::Json => to_json(&report),
                Format::Pretty => {
                    let mut out = String::new();
                    for c in &report.checks {
                        let status = if c.pass { "PASS" } else { "FAIL" };
                        out.push_str(&format!("{status} {} ({} cases)", c.name, c.cases));
                        if let Some(m) = c.max_mismatch {
                            out.push_str(&format!(" max_mismatch={m:e}"));
                        }
                        if let Some(f) = &c.failure {
                            out.push_str(&format!(" {f}"));
                        }
                        out.push('\n');
                    }
                    out.push_str(if report.pass { "pass\n" } else { "fail\n" });
                    out
                }
            };
            Ok((code, out))
        }
        Command::Roots { poly } => {
            let p = complex_poly(poly, cli)?;
            let zeros = poly_roots(&p, &opts)?;
            let mut list: Vec<(Complex64, usize)> =
                zeros.distinct().iter().map(|&(z, m)| (clean(z, opts.tol), m)).collect();
            list.sort_by(|a, b| b.0.norm().total_cmp(&a.0.norm()).then(a.0.arg().total_cmp(&b.0.arg())));
            Ok((
                0,
                match cli.format.unwrap_or(Format::Pretty) {
                    Format::Pretty => {
                        let items: Vec<String> = list
                            .iter()
                            .flat_map(|&(z, m)| std::iter::repeat_n(show_complex(z), m))
                            .collect();
                        format!("[{}]\n", items.join(", "))
                    }
                    Format::Json => {
                        let items: Vec<RootJson> = list
                            .iter()
                            .map(|&(z, multiplicity)| RootJson {
                                re: z.re,
                                im: z.im,
                                multiplicity,
                            })
                            .collect();
                        to_json(&items)
                    }
                },
            ))
        }
        Command::Radius { expr } => {
            let parsed = parse_expr(expr)?;
            let s = eval(&parsed, &complex_ring(cli)?, cli.order)?;
            let f = UnitSeries::new(s)?;
            let exact_degree = f.coeffs().iter().rposition(|c| !f.ring().is_exact_zero(c)).unwrap_or(0);
            let (radius, kind) = if exact_degree < f.order() {
                let p = f.as_polynomial_at(f.degree());
                (ene_radius(&p, &opts)?, "polynomial")
            } else {
                (ene_radius_series(&f)?, "series")
            };
            let radius = match radius {
                Radius::Finite(r) => Radius::Finite(tidy(r)),
                r => r,
            };
            Ok((
                0,
                match cli.format.unwrap_or(Format::Pretty) {
                    Format::Pretty => format!("{radius}\n"),
                    Format::Json => to_json(&RadiusJson { radius, kind }),
                },
            ))
        }
        Command::ZeroProducts { p, q } => {
            let (pp, qq) = (complex_poly(p, cli)?, complex_poly(q, cli)?);
            let tol = cli.tol.unwrap_or(1e-6);
            let report = verify_zero_products(&pp, &qq, tol, &RootOptions { tol: 1e-8, ..opts })?;
            let code = if report.pass { 0 } else { 1 };
            Ok((
                code,
                match cli.format.unwrap_or(Format::Pretty) {
                    Format::Pretty => format!(
                        "{} max_mismatch={:e} pairs={}\n",
                        if report.pass { "pass" } else { "fail" },
                        report.max_mismatch,
                        report.pairs.len()
                    ),
                    Format::Json => to_json(&report),
                },
            ))
        }
    }
}
