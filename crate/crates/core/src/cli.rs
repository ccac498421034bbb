//! Command-line front end. `run` returns the process exit code:
//! 0 success, 1 verification failure, 2 configuration error, 3 singular Gram
//! block.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::algebra::{int, parse_rational, Poly, Rational};
use crate::deform::{apply_deformation, Alpha};
use crate::error::Error;
use crate::gram::{w_poly, MFamily};
use crate::laguerre::laguerre;
use crate::measure::{moment, MeasureParams};
use crate::numeric::{gamma_value_to_f64, quad_moment};
use crate::verify::{self, Grid, Perturbation, VerifyConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_DEGENERATE: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "laguerre-deform",
    version,
    about = "Exact deformed Laguerre polynomials and their sign-indefinite measure"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Coefficient table of L, M, C or W for 0 <= n <= nmax.
    Table(TableArgs),
    /// Run every invariant suite over the parameter grid.
    Verify(VerifyArgs),
    /// Moments of the measure, exact and by quadrature.
    Moments(MomentArgs),
    /// Weights of C_n in terms of M_n, ..., M_1.
    Weights(WeightArgs),
    /// Evaluate one polynomial at a point.
    Eval(EvalArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    #[value(name = "L", alias = "l")]
    L,
    #[value(name = "M", alias = "m")]
    M,
    #[value(name = "C", alias = "c")]
    C,
    #[value(name = "W", alias = "w")]
    W,
}

impl Family {
    fn label(self) -> &'static str {
        match self {
            Family::L => "L",
            Family::M => "M",
            Family::C => "C",
            Family::W => "W",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PerturbArg {
    OdeSign,
}

fn parse_beta(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn parse_alpha(s: &str) -> Result<Alpha, String> {
    match s {
        "1" | "+1" => Ok(Alpha::Plus),
        "-1" => Ok(Alpha::Minus),
        _ => Err("expected 1 or -1".to_string()),
    }
}

fn parse_tol(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(t) if t > 0.0 && t.is_finite() => Ok(t),
        Ok(_) => Err("tolerance must be positive".to_string()),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Debug, Args)]
struct Output {
    /// Output format; tables default to csv, verify to text.
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct TableArgs {
    #[arg(long, value_enum)]
    family: Family,
    #[arg(long, value_parser = parse_beta, allow_hyphen_values = true)]
    beta: Rational,
    #[arg(long, default_value_t = 0)]
    s: u32,
    #[arg(long, default_value_t = 5)]
    nmax: usize,
    /// Deformation direction for family M.
    #[arg(long, value_parser = parse_alpha, allow_hyphen_values = true, default_value = "-1")]
    alpha: Alpha,
    #[command(flatten)]
    output: Output,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 10)]
    nmax: usize,
    /// Series truncation order.
    #[arg(long, default_value_t = crate::series::DEFAULT_ORDER)]
    order: usize,
    /// Quadrature error target.
    #[arg(long, value_parser = parse_tol, default_value = "1e-10")]
    tol: f64,
    /// Inject a known fault to exercise the failure path.
    #[arg(long, value_enum)]
    perturb: Option<PerturbArg>,
    #[command(flatten)]
    output: Output,
}

#[derive(Debug, Args)]
struct MomentArgs {
    #[arg(long, value_parser = parse_beta, allow_hyphen_values = true)]
    beta: Rational,
    #[arg(long, default_value_t = 0)]
    s: u32,
    #[arg(long, default_value_t = 5)]
    nmax: u32,
    #[arg(long, value_parser = parse_tol, default_value = "1e-10")]
    tol: f64,
    #[command(flatten)]
    output: Output,
}

#[derive(Debug, Args)]
struct WeightArgs {
    #[arg(long, value_parser = parse_beta, allow_hyphen_values = true)]
    beta: Rational,
    #[arg(long, default_value_t = 0)]
    s: u32,
    #[arg(long)]
    n: usize,
    #[command(flatten)]
    output: Output,
}

#[derive(Debug, Args)]
struct EvalArgs {
    #[arg(long, value_enum)]
    family: Family,
    #[arg(long)]
    n: usize,
    #[arg(long, value_parser = parse_beta, allow_hyphen_values = true)]
    beta: Rational,
    #[arg(long, default_value_t = 0)]
    s: u32,
    /// Evaluation point; decimals are read exactly.
    #[arg(long, value_parser = parse_beta, allow_hyphen_values = true)]
    z: Rational,
    #[arg(long, value_parser = parse_alpha, allow_hyphen_values = true, default_value = "-1")]
    alpha: Alpha,
    #[command(flatten)]
    output: Output,
}

/// A command failure carrying its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::DegenerateGram { .. } => EXIT_DEGENERATE,
            _ => EXIT_CONFIG,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure {
            code: EXIT_CONFIG,
            message: format!("i/o error: {e}"),
        }
    }
}

fn config_error(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_CONFIG,
        message: message.into(),
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(stderr, "{text}")
            } else {
                write!(stdout, "{text}")
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Table(a) => cmd_table(a, stdout),
        Command::Verify(a) => cmd_verify(a, stdout),
        Command::Moments(a) => cmd_moments(a, stdout),
        Command::Weights(a) => cmd_weights(a, stdout),
        Command::Eval(a) => cmd_eval(a, stdout),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

fn emit(
    output: &Output,
    default: Format,
    stdout: &mut dyn Write,
    body: &dyn Fn(Format, &mut dyn Write) -> io::Result<()>,
) -> Result<(), Failure> {
    let format = output.format.unwrap_or(default);
    match &output.out {
        Some(path) => {
            let mut file = File::create(path)
                .map_err(|e| config_error(format!("cannot write {}: {e}", path.display())))?;
            body(format, &mut file)?;
            file.flush()?;
        }
        None => body(format, stdout)?,
    }
    Ok(())
}

fn write_json<T: Serialize>(w: &mut dyn Write, rows: &T) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *w, rows)?;
    writeln!(w)
}

fn write_csv(w: &mut dyn Write, header: &[String], rows: &[Vec<String>]) -> io::Result<()> {
    let mut out = csv::WriterBuilder::new().flexible(true).from_writer(w);
    out.write_record(header)?;
    for r in rows {
        out.write_record(r)?;
    }
    out.flush()
}

#[derive(Debug, Serialize)]
struct PolyRow {
    family: &'static str,
    n: usize,
    beta: String,
    s: Option<u32>,
    coeffs: Vec<String>,
}

fn check_measure(s: u32, beta: &Rational) -> Result<(), Failure> {
    MeasureParams::new(s, beta.clone())?;
    Ok(())
}

/// Polynomials of one family for `0..=nmax`.
fn family_polys(
    family: Family,
    nmax: usize,
    beta: &Rational,
    s: u32,
    alpha: Alpha,
) -> Result<Vec<Poly>, Failure> {
    if alpha == Alpha::Plus && family != Family::M {
        return Err(config_error("--alpha 1 applies to family M only"));
    }
    let s_r = int(s as i64);
    match family {
        Family::L => Ok((0..=nmax).map(|n| laguerre(n, beta)).collect()),
        Family::M => Ok((0..=nmax)
            .map(|n| apply_deformation(&laguerre(n, beta), &s_r, alpha))
            .collect()),
        Family::C => {
            check_measure(s, beta)?;
            let mut fam = MFamily::new(s, beta)?;
            (0..=nmax)
                .map(|n| fam.c_poly(n).map_err(Failure::from))
                .collect()
        }
        Family::W => {
            check_measure(s, beta)?;
            (0..=nmax)
                .map(|n| w_poly(n, s, beta).map_err(Failure::from))
                .collect()
        }
    }
}

fn cmd_table(a: TableArgs, stdout: &mut dyn Write) -> Result<i32, Failure> {
    let polys = family_polys(a.family, a.nmax, &a.beta, a.s, a.alpha)?;
    let s = (a.family != Family::L).then_some(a.s);
    let rows: Vec<PolyRow> = polys
        .iter()
        .enumerate()
        .map(|(n, p)| PolyRow {
            family: a.family.label(),
            n,
            beta: a.beta.to_string(),
            s,
            coeffs: p.coeffs().iter().map(|c| c.to_string()).collect(),
        })
        .collect();
    emit(&a.output, Format::Csv, stdout, &|format, w| match format {
        Format::Json => write_json(w, &rows),
        Format::Csv | Format::Text => {
            let width = rows.iter().map(|r| r.coeffs.len()).max().unwrap_or(1);
            let mut header: Vec<String> = ["family", "n", "beta", "s"].map(String::from).to_vec();
            header.extend((0..width).map(|k| format!("coeff_{k}")));
            let body: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    let mut rec = vec![
                        r.family.to_string(),
                        r.n.to_string(),
                        r.beta.clone(),
                        r.s.map(|s| s.to_string()).unwrap_or_default(),
                    ];
                    rec.extend(r.coeffs.iter().cloned());
                    rec
                })
                .collect();
            write_csv(w, &header, &body)
        }
    })?;
    Ok(EXIT_OK)
}

fn cmd_verify(a: VerifyArgs, stdout: &mut dyn Write) -> Result<i32, Failure> {
    let config = VerifyConfig {
        grid: Grid::default().with_nmax(a.nmax).with_order(a.order),
        perturb: a.perturb.map(|PerturbArg::OdeSign| Perturbation::OdeSign),
        tol: a.tol,
    };
    let report = verify::run(&config);
    emit(&a.output, Format::Text, stdout, &|format, w| match format {
        Format::Json => write_json(w, &report.rows),
        Format::Text => writeln!(w, "{report}"),
        Format::Csv => {
            let header = [
                "suite",
                "identity",
                "anchor",
                "grid_size",
                "passed",
                "max_deviation",
                "detail",
            ]
            .map(String::from);
            let body: Vec<Vec<String>> = report
                .rows
                .iter()
                .map(|r| {
                    vec![
                        r.suite.to_string(),
                        r.identity.to_string(),
                        r.anchor.to_string(),
                        r.grid_size.to_string(),
                        r.passed.to_string(),
                        r.max_deviation
                            .map(|d| format!("{d:e}"))
                            .unwrap_or_default(),
                        r.detail.clone().unwrap_or_default(),
                    ]
                })
                .collect();
            write_csv(w, &header, &body)
        }
    })?;
    Ok(if report.all_passed() {
        EXIT_OK
    } else {
        EXIT_VERIFY_FAILED
    })
}

#[derive(Debug, Serialize)]
struct MomentRow {
    n: u32,
    beta: String,
    s: u32,
    exact: String,
    coeff: String,
    value: f64,
    quadrature: f64,
    quad_error: f64,
    unreliable: bool,
}

fn cmd_moments(a: MomentArgs, stdout: &mut dyn Write) -> Result<i32, Failure> {
    check_measure(a.s, &a.beta)?;
    let mut rows = Vec::new();
    for n in 0..=a.nmax {
        let exact = moment(n, a.s, &a.beta)?;
        let q = quad_moment(n, a.s, &a.beta, a.tol)?;
        rows.push(MomentRow {
            n,
            beta: a.beta.to_string(),
            s: a.s,
            exact: exact.to_string(),
            coeff: exact.coeff.to_string(),
            value: gamma_value_to_f64(&exact),
            quadrature: q.value,
            quad_error: q.abs_error_estimate,
            unreliable: q.unreliable,
        });
    }
    emit(&a.output, Format::Csv, stdout, &|format, w| match format {
        Format::Json => write_json(w, &rows),
        Format::Csv | Format::Text => {
            let header = [
                "n",
                "beta",
                "s",
                "exact",
                "coeff",
                "value",
                "quadrature",
                "quad_error",
                "unreliable",
            ]
            .map(String::from);
            let body: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    vec![
                        r.n.to_string(),
                        r.beta.clone(),
                        r.s.to_string(),
                        r.exact.clone(),
                        r.coeff.clone(),
                        format!("{:e}", r.value),
                        format!("{:e}", r.quadrature),
                        format!("{:e}", r.quad_error),
                        r.unreliable.to_string(),
                    ]
                })
                .collect();
            write_csv(w, &header, &body)
        }
    })?;
    Ok(EXIT_OK)
}

#[derive(Debug, Serialize)]
struct WeightRow {
    n: usize,
    i: usize,
    beta: String,
    s: u32,
    weight: String,
    value: f64,
}

fn cmd_weights(a: WeightArgs, stdout: &mut dyn Write) -> Result<i32, Failure> {
    check_measure(a.s, &a.beta)?;
    let mut fam = MFamily::new(a.s, &a.beta)?;
    let w = fam.weights(a.n)?;
    let rows: Vec<WeightRow> = w
        .as_slice()
        .iter()
        .enumerate()
        .map(|(i, x)| WeightRow {
            n: a.n,
            i,
            beta: a.beta.to_string(),
            s: a.s,
            weight: x.to_string(),
            value: num_traits::ToPrimitive::to_f64(x).unwrap_or(f64::NAN),
        })
        .collect();
    emit(
        &a.output,
        Format::Csv,
        stdout,
        &|format, out| match format {
            Format::Json => write_json(out, &rows),
            Format::Csv | Format::Text => {
                let header = ["n", "i", "beta", "s", "weight", "value"].map(String::from);
                let body: Vec<Vec<String>> = rows
                    .iter()
                    .map(|r| {
                        vec![
                            r.n.to_string(),
                            r.i.to_string(),
                            r.beta.clone(),
                            r.s.to_string(),
                            r.weight.clone(),
                            format!("{:e}", r.value),
                        ]
                    })
                    .collect();
                write_csv(out, &header, &body)
            }
        },
    )?;
    Ok(EXIT_OK)
}

#[derive(Debug, Serialize)]
struct EvalRow {
    family: &'static str,
    n: usize,
    beta: String,
    s: Option<u32>,
    z: String,
    exact: String,
    value: f64,
}

fn cmd_eval(a: EvalArgs, stdout: &mut dyn Write) -> Result<i32, Failure> {
    let polys = family_polys(a.family, a.n, &a.beta, a.s, a.alpha)?;
    let exact = polys[a.n].evaluate(&a.z);
    let row = EvalRow {
        family: a.family.label(),
        n: a.n,
        beta: a.beta.to_string(),
        s: (a.family != Family::L).then_some(a.s),
        z: a.z.to_string(),
        exact: exact.to_string(),
        value: num_traits::ToPrimitive::to_f64(&exact).unwrap_or(f64::NAN),
    };
    emit(&a.output, Format::Csv, stdout, &|format, w| match format {
        Format::Json => write_json(w, &[&row]),
        Format::Csv | Format::Text => {
            let header = ["family", "n", "beta", "s", "z", "exact", "value"].map(String::from);
            let rec = vec![
                row.family.to_string(),
                row.n.to_string(),
                row.beta.clone(),
                row.s.map(|s| s.to_string()).unwrap_or_default(),
                row.z.clone(),
                row.exact.clone(),
                format!("{}", row.value),
            ];
            write_csv(w, &header, &[rec])
        }
    })?;
    Ok(EXIT_OK)
}
