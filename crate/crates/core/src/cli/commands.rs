//! Subcommand definitions and dispatch.

use std::io::Write;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::geometry::{
    divergence_i, divergence_ii, divergence_iii, try_to_radial, Metric, VectorField,
};
use crate::grassmann::{SpaceDims, SuperFun};
use crate::harmonic::{
    check_fundamental_solution, harmonic_basis, verify_divergence_theorem, verify_green,
    verify_mvt_ball_unchecked, verify_mvt_sphere_unchecked, verify_noether, VerificationReport,
};
use crate::integrate::{ball_integral, ball_volume, sphere_integral, sphere_volume, RetractionTag};
use crate::sample;
use crate::scalar::ExactValue;

use super::parser::parse_superfun;
use super::CliError;

#[derive(Parser)]
#[command(
    name = "superspace",
    about = "Exact calculus on flat superspace: Berezin integration over superspheres and superballs, divergence operators, and theorem verification",
    disable_help_subcommand = true
)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form supersphere area or superball volume.
    Volume {
        #[arg(long, value_enum)]
        shape: Shape,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
    },
    /// Exact integral of an expression over the supersphere or superball.
    Integrate {
        #[arg(long, value_enum)]
        domain: Shape,
        /// Retraction for ball integrals (the sphere integral is defined
        /// through the spherical retraction).
        #[arg(long, value_enum, default_value_t = Retraction::Gamma)]
        retraction: Retraction,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        expr: String,
    },
    /// Flat super Laplacian of an expression.
    Laplacian {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        expr: String,
    },
    /// Divergence of a vector field over the flat metric.
    Divergence {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        /// Semicolon-separated components X^1; ..; X^{m+2n}.
        #[arg(long)]
        field: String,
        #[arg(long, value_enum, default_value_t = Formula::I)]
        formula: Formula,
    },
    /// Verify a theorem; exits 0 on equality, 2 on verified inequality.
    Verify {
        #[arg(value_enum)]
        theorem: Theorem,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        /// Expression input (for green: two expressions separated by ';').
        #[arg(long)]
        expr: Option<String>,
        /// Degree bound for harmonic bases and random inputs.
        #[arg(long)]
        degree: Option<usize>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Shape {
    Sphere,
    Ball,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Retraction {
    Gamma,
    Std,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Formula {
    I,
    Ii,
    Iii,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Theorem {
    MvtSphere,
    MvtBall,
    Green,
    Divergence,
    Noether,
    Fundamental,
}

/// Run the command line against explicit arguments and output sinks;
/// returns the process exit code.
pub fn run_with_args<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let argv = std::iter::once("superspace".to_string()).chain(args.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{rendered}");
                    0
                }
                _ => {
                    let _ = write!(err, "{rendered}");
                    1
                }
            };
        }
    };
    match dispatch(&cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn space(m: usize, n: usize) -> Result<SpaceDims, CliError> {
    SpaceDims::new(m, n).map_err(|e| CliError::Usage(e.to_string()))
}

fn emit_value(value: &ExactValue, json: bool, out: &mut dyn Write) {
    if json {
        let _ = writeln!(
            out,
            "{}",
            serde_json::to_string(value).expect("serializable")
        );
    } else {
        let _ = writeln!(out, "{value}");
    }
}

fn report_line(report: &VerificationReport) -> String {
    format!(
        "{} m={} n={}: lhs = {}, rhs = {} => {} ({} ms)",
        report.theorem,
        report.m,
        report.n,
        report.lhs,
        report.rhs,
        if report.equal { "equal" } else { "NOT EQUAL" },
        report.ms
    )
}

fn emit_reports(reports: &[VerificationReport], json: bool, out: &mut dyn Write) -> i32 {
    let all_equal = reports.iter().all(|r| r.equal);
    if json {
        let payload = if reports.len() == 1 {
            serde_json::to_value(&reports[0]).expect("serializable")
        } else {
            json!({
                "cases": reports,
                "equal": all_equal,
            })
        };
        let _ = writeln!(out, "{payload}");
    } else {
        for report in reports {
            let _ = writeln!(out, "{}", report_line(report));
        }
        if reports.len() > 1 {
            let equal_count = reports.iter().filter(|r| r.equal).count();
            let _ = writeln!(out, "verified {equal_count}/{} cases", reports.len());
        }
    }
    if all_equal {
        0
    } else {
        2
    }
}

fn parse_field(
    src: &str,
    dims: SpaceDims,
) -> Result<VectorField<crate::scalar::RadialCoeff>, CliError> {
    let parts: Vec<&str> = src.split(';').collect();
    if parts.len() != dims.total() {
        return Err(CliError::Usage(format!(
            "expected {} field components separated by ';', got {}",
            dims.total(),
            parts.len()
        )));
    }
    let mut field = VectorField::zero(dims);
    for (k, part) in parts.iter().enumerate() {
        field.set_component(k + 1, parse_superfun(part, dims)?);
    }
    Ok(field)
}

fn dispatch(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    match &cli.command {
        Command::Volume { shape, m, n } => {
            let dims = space(*m, *n)?;
            let value = match shape {
                Shape::Sphere => sphere_volume(dims),
                Shape::Ball => ball_volume(dims),
            };
            emit_value(&value, cli.json, out);
            Ok(0)
        }
        Command::Integrate {
            domain,
            retraction,
            m,
            n,
            expr,
        } => {
            let dims = space(*m, *n)?;
            let f = parse_superfun(expr, dims)?;
            let value = match domain {
                Shape::Sphere => {
                    if *retraction == Retraction::Std {
                        return Err(CliError::Usage(
                            "the supersphere integral is defined through the spherical retraction; use --retraction gamma".into(),
                        ));
                    }
                    sphere_integral(&f)?
                }
                Shape::Ball => {
                    let tag = match retraction {
                        Retraction::Gamma => RetractionTag::Gamma,
                        Retraction::Std => RetractionTag::Std,
                    };
                    ball_integral(&f, tag)?
                }
            };
            emit_value(&value, cli.json, out);
            Ok(0)
        }
        Command::Laplacian { m, n, expr } => {
            let dims = space(*m, *n)?;
            let f = parse_superfun(expr, dims)?;
            let result = crate::geometry::laplacian_flat(&f)?;
            if cli.json {
                let _ = writeln!(out, "{}", json!({ "result": result.to_string() }));
            } else {
                let _ = writeln!(out, "{result}");
            }
            Ok(0)
        }
        Command::Divergence {
            m,
            n,
            field,
            formula,
        } => {
            let dims = space(*m, *n)?;
            let x = parse_field(field, dims)?.to_frac();
            let metric = Metric::flat(dims);
            let div = match formula {
                Formula::I => divergence_i(&metric, &x)?,
                Formula::Ii => divergence_ii(&metric, &x)?,
                Formula::Iii => divergence_iii(&metric, &x)?,
            };
            let result = try_to_radial(&div).ok_or_else(|| {
                CliError::Usage("divergence has non-constant denominators".into())
            })?;
            if cli.json {
                let _ = writeln!(out, "{}", json!({ "result": result.to_string() }));
            } else {
                let _ = writeln!(out, "{result}");
            }
            Ok(0)
        }
        Command::Verify {
            theorem,
            m,
            n,
            expr,
            degree,
        } => {
            let dims = space(*m, *n)?;
            let reports = run_verify(*theorem, dims, expr.as_deref(), *degree, err)?;
            Ok(emit_reports(&reports, cli.json, out))
        }
    }
}

fn harmonic_inputs(
    dims: SpaceDims,
    expr: Option<&str>,
    degree: Option<usize>,
    err: &mut dyn Write,
) -> Result<Vec<SuperFun>, CliError> {
    match expr {
        Some(src) => {
            let f = parse_superfun(src, dims)?;
            if !crate::geometry::laplacian_flat(&f)?.is_zero() {
                let _ = writeln!(
                    err,
                    "note: input is not harmonic; reporting the raw identity"
                );
            }
            Ok(vec![f])
        }
        None => Ok(harmonic_basis(dims, degree.unwrap_or(3))?),
    }
}

fn run_verify(
    theorem: Theorem,
    dims: SpaceDims,
    expr: Option<&str>,
    degree: Option<usize>,
    err: &mut dyn Write,
) -> Result<Vec<VerificationReport>, CliError> {
    match theorem {
        Theorem::Fundamental => Ok(vec![check_fundamental_solution(dims)?]),
        Theorem::MvtSphere => {
            let mut reports = Vec::new();
            for f in harmonic_inputs(dims, expr, degree, err)? {
                reports.push(verify_mvt_sphere_unchecked(&f)?);
            }
            Ok(reports)
        }
        Theorem::MvtBall => {
            let mut reports = Vec::new();
            for f in harmonic_inputs(dims, expr, degree, err)? {
                let [gamma, std] = verify_mvt_ball_unchecked(&f)?;
                reports.push(gamma);
                reports.push(std);
            }
            Ok(reports)
        }
        Theorem::Green => {
            let mut reports = Vec::new();
            match expr {
                Some(src) => {
                    let (fs, ks) = src.split_once(';').ok_or_else(|| {
                        CliError::Usage("green expects two expressions separated by ';'".into())
                    })?;
                    let f = parse_superfun(fs, dims)?;
                    let k = parse_superfun(ks, dims)?;
                    reports.push(verify_green(&f, &k)?);
                }
                None => {
                    let mut rng = sample::rng(0x47_52_45_45);
                    let deg = degree.unwrap_or(2);
                    for case in 0..20 {
                        let f = sample::random_homogeneous(&mut rng, dims, deg, case % 2 == 1);
                        let k =
                            sample::random_homogeneous(&mut rng, dims, deg, (case / 2) % 2 == 1);
                        reports.push(verify_green(&f, &k)?);
                    }
                }
            }
            Ok(reports)
        }
        Theorem::Divergence => {
            let mut reports = Vec::new();
            match expr {
                Some(src) => {
                    let x = parse_field(src, dims)?;
                    reports.push(verify_divergence_theorem(&x)?);
                }
                None => {
                    let mut rng = sample::rng(0x44_49_56);
                    let deg = degree.unwrap_or(2);
                    for _ in 0..20 {
                        let x = sample::random_vector_field(&mut rng, dims, deg);
                        reports.push(verify_divergence_theorem(&x)?);
                    }
                }
            }
            Ok(reports)
        }
        Theorem::Noether => {
            let mut generators = sample::translations(dims);
            generators.extend(sample::rotations(dims));
            let mut reports = Vec::new();
            for f in harmonic_inputs(dims, expr, degree.or(Some(2)), err)? {
                for xi in &generators {
                    reports.push(verify_noether(&f, xi)?);
                }
            }
            Ok(reports)
        }
    }
}
