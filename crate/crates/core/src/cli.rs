//! The `subord` command line. [`run`] parses arguments, writes the artifact
//! and returns the process exit code: 0 on success or when the checked
//! condition holds, 1 when it fails or a verification finds a violation, 2 on
//! usage errors.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use crate::admissibility::{constants, minimize_profile, ProfileTarget, MINIMIZATION_GRID};
use crate::conditions::{evaluate, region_scan, MKPair, ScanFixed, TheoremId};
use crate::domain::TargetDomain;
use crate::error::Error;
use crate::grid::GridSpec;
use crate::identity::{identity_test, IdentityWhich};
use crate::par::Exec;
use crate::series::OperatorParams;
use crate::verifier::{implication_test, FamilySpec};

/// Significant digits of every printed float.
pub const SIGNIFICANT_DIGITS: usize = 9;

#[derive(Debug, Parser)]
#[command(
    name = "subord",
    version,
    about = "Differential subordination conditions for the sine and petal dominants"
)]
pub struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Common {
    /// Write the artifact to this path instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, default_value_t = 1e-9)]
    tolerance: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TargetArg {
    Sine,
    Petal,
}

impl From<TargetArg> for ProfileTarget {
    fn from(t: TargetArg) -> Self {
        match t {
            TargetArg::Sine => ProfileTarget::Sine,
            TargetArg::Petal => ProfileTarget::Petal,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FamilyArg {
    Constant,
    Linear,
    Quadratic,
    Scaled,
    Builtin,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Extremal constants and thresholds.
    Constants {
        /// Also minimize the profile functions numerically.
        #[arg(long)]
        numeric: bool,
    },
    /// Sampled boundary curve `phi(e^{i theta})`.
    Boundary {
        #[command(flatten)]
        domain: DomainArgs,
        #[arg(long, default_value_t = 360)]
        samples: usize,
    },
    /// Disk about 1 containing the domain.
    EnclosingDisk {
        #[command(flatten)]
        domain: DomainArgs,
    },
    /// Evaluate one sufficient condition.
    Check {
        #[command(flatten)]
        theorem: TheoremArgs,
        #[command(flatten)]
        betas: BetaArgs,
    },
    /// Margins on a beta1 x beta2 raster.
    Scan {
        #[command(flatten)]
        theorem: TheoremArgs,
        #[arg(long, default_value_t = 0.0)]
        beta1_min: f64,
        #[arg(long, default_value_t = 10.0)]
        beta1_max: f64,
        #[arg(long, default_value_t = 0.0)]
        beta2_min: f64,
        #[arg(long, default_value_t = 5.0)]
        beta2_max: f64,
        #[arg(long, default_value_t = 101)]
        steps1: usize,
        #[arg(long, default_value_t = 51)]
        steps2: usize,
        #[arg(long)]
        beta3: Option<f64>,
    },
    /// Sample the implication over a family of test functions.
    Verify {
        #[command(flatten)]
        theorem: TheoremArgs,
        #[command(flatten)]
        betas: BetaArgs,
        #[arg(long, value_enum, default_value = "builtin")]
        family: FamilyArg,
        #[arg(long, default_value_t = 0.99)]
        radius: f64,
        #[arg(long, default_value_t = 64)]
        radial_steps: usize,
        #[arg(long, default_value_t = 512)]
        angular_steps: usize,
    },
    /// Compare the S_j-form operators with phi2/phi3 of z f'/f.
    Identity {
        /// Sf or Thetaf.
        #[arg(long, default_value = "Sf")]
        which: String,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 12)]
        degree: usize,
        #[arg(long, default_value_t = 1.0)]
        beta1: f64,
        #[arg(long, default_value_t = 1.0)]
        beta2: f64,
        #[arg(long, default_value_t = 1.0)]
        beta3: f64,
    },
}

#[derive(Debug, Args)]
struct DomainArgs {
    /// lemniscate, janowski, sigmoid, crescent, cardioid, exponential, sine or petal.
    #[arg(long)]
    domain: String,
    #[arg(long = "C", default_value_t = 1.0, allow_hyphen_values = true)]
    c: f64,
    #[arg(long = "D", default_value_t = 0.0, allow_hyphen_values = true)]
    d: f64,
}

#[derive(Debug, Args)]
struct TheoremArgs {
    #[arg(long, value_enum)]
    target: TargetArg,
    #[arg(long, default_value_t = 2)]
    order: u8,
    /// Majorant of the operator, named as for --domain.
    #[arg(long)]
    h: String,
    #[arg(long = "C", default_value_t = 1.0, allow_hyphen_values = true)]
    c: f64,
    #[arg(long = "D", default_value_t = 0.0, allow_hyphen_values = true)]
    d: f64,
    #[arg(long)]
    m: Option<u32>,
    #[arg(long)]
    k: Option<u32>,
}

#[derive(Debug, Args)]
struct BetaArgs {
    #[arg(long)]
    beta1: f64,
    #[arg(long)]
    beta2: f64,
    #[arg(long)]
    beta3: Option<f64>,
}

enum CliError {
    Usage(String),
    Io(std::io::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

fn domain(name: &str, c: f64, d: f64) -> Result<TargetDomain, Error> {
    match name.parse::<TargetDomain>()? {
        TargetDomain::Janowski { .. } => TargetDomain::janowski(c, d),
        other => Ok(other),
    }
}

impl TheoremArgs {
    fn theorem(&self) -> Result<TheoremId, Error> {
        TheoremId::new(
            self.target.into(),
            self.order,
            domain(&self.h, self.c, self.d)?,
        )
    }

    fn mk(&self) -> Result<Option<MKPair>, Error> {
        match (self.m, self.k) {
            (None, None) => Ok(None),
            (m, k) => MKPair::new(m.unwrap_or(2), k.unwrap_or(2)).map(Some),
        }
    }
}

impl BetaArgs {
    fn params(&self) -> Result<OperatorParams, Error> {
        match self.beta3 {
            Some(b3) => OperatorParams::third_order(self.beta1, self.beta2, b3),
            None => OperatorParams::second_order(self.beta1, self.beta2),
        }
    }
}

/// Rounds to [`SIGNIFICANT_DIGITS`] significant digits.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x)
        .parse()
        .unwrap_or(x)
}

fn round_value(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => n
            .as_f64()
            .and_then(|x| serde_json::Number::from_f64(round_sig(x)))
            .map_or(Value::Null, Value::Number),
        Value::Array(items) => Value::Array(items.into_iter().map(round_value).collect()),
        Value::Object(map) => {
            Value::Object(map.into_iter().map(|(k, v)| (k, round_value(v))).collect())
        }
        other => other,
    }
}

fn json<T: Serialize>(payload: &T) -> String {
    let value = round_value(serde_json::to_value(payload).expect("serializable payload"));
    let mut s = serde_json::to_string_pretty(&value).expect("serializable value");
    s.push('\n');
    s
}

fn num(x: f64) -> String {
    round_sig(x).to_string()
}

fn csv<I, R>(header: &[&str], rows: I) -> Result<String, CliError>
where
    I: IntoIterator<Item = R>,
    R: IntoIterator<Item = String>,
{
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).map_err(|e| CliError::Io(e.into()))?;
    for row in rows {
        w.write_record(row.into_iter().collect::<Vec<_>>())
            .map_err(|e| CliError::Io(e.into()))?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn json_only(format: Format, command: &str) -> Result<(), CliError> {
    if format == Format::Csv {
        return Err(CliError::Usage(format!(
            "--format csv is not available for '{command}'; valid: json"
        )));
    }
    Ok(())
}

#[derive(Serialize)]
struct ConstantsOut {
    nu0: f64,
    nu1: f64,
    r0: f64,
    r0_residual: f64,
    sinh1: f64,
    e_minus_1: f64,
    half_pi: f64,
    sqrt2: f64,
    e: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    numeric: Option<NumericMinima>,
}

#[derive(Serialize)]
struct NumericMinima {
    sine_nu0: f64,
    sine_nu1: f64,
    petal_nu0: f64,
    petal_nu1: f64,
}

#[derive(Serialize)]
struct BoundaryPoint {
    theta: f64,
    re: f64,
    im: f64,
}

#[derive(Serialize)]
struct DiskOut {
    domain: String,
    center_re: f64,
    center_im: f64,
    radius: f64,
    sampled_radius: f64,
}

fn execute(cli: &Cli) -> Result<(String, i32), CliError> {
    let common = &cli.common;
    let format_or = |default| common.format.unwrap_or(default);
    if !(common.tolerance > 0.0 && common.tolerance.is_finite()) {
        return Err(CliError::Usage(format!(
            "--tolerance {} must be finite and > 0",
            common.tolerance
        )));
    }
    match &cli.command {
        Command::Constants { numeric } => {
            let c = constants();
            let cot1 = 1.0 / 1f64.tan();
            let numeric = numeric.then(|| {
                let s = minimize_profile(ProfileTarget::Sine, MINIMIZATION_GRID, Exec::default());
                let p = minimize_profile(ProfileTarget::Petal, MINIMIZATION_GRID, Exec::default());
                NumericMinima {
                    sine_nu0: s.nu0,
                    sine_nu1: s.nu1,
                    petal_nu0: p.nu0,
                    petal_nu1: p.nu1,
                }
            });
            let out = ConstantsOut {
                nu0: c.nu0,
                nu1: c.nu1,
                r0: c.r0,
                r0_residual: (c.r0 * c.r0 + 2.0 * cot1 * c.r0 - 1.0).abs(),
                sinh1: c.sinh1,
                e_minus_1: c.e_minus_1,
                half_pi: c.half_pi,
                sqrt2: c.sqrt2,
                e: c.e,
                numeric,
            };
            let body = match format_or(Format::Json) {
                Format::Json => json(&out),
                Format::Csv => {
                    let mut rows = vec![
                        ("nu0", out.nu0),
                        ("nu1", out.nu1),
                        ("r0", out.r0),
                        ("r0_residual", out.r0_residual),
                        ("sinh1", out.sinh1),
                        ("e_minus_1", out.e_minus_1),
                        ("half_pi", out.half_pi),
                        ("sqrt2", out.sqrt2),
                        ("e", out.e),
                    ];
                    if let Some(n) = &out.numeric {
                        rows.extend([
                            ("numeric.sine_nu0", n.sine_nu0),
                            ("numeric.sine_nu1", n.sine_nu1),
                            ("numeric.petal_nu0", n.petal_nu0),
                            ("numeric.petal_nu1", n.petal_nu1),
                        ]);
                    }
                    csv(
                        &["name", "value"],
                        rows.into_iter().map(|(k, v)| [k.to_string(), num(v)]),
                    )?
                }
            };
            Ok((body, 0))
        }
        Command::Boundary { domain: d, samples } => {
            let dom = domain(&d.domain, d.c, d.d)?;
            let pts: Vec<BoundaryPoint> = dom
                .boundary(*samples)?
                .into_iter()
                .enumerate()
                .map(|(k, w)| BoundaryPoint {
                    theta: std::f64::consts::TAU * k as f64 / *samples as f64,
                    re: w.re,
                    im: w.im,
                })
                .collect();
            let body = match format_or(Format::Csv) {
                Format::Json => json(&pts),
                Format::Csv => csv(
                    &["theta", "re", "im"],
                    pts.iter().map(|p| [num(p.theta), num(p.re), num(p.im)]),
                )?,
            };
            Ok((body, 0))
        }
        Command::EnclosingDisk { domain: d } => {
            let dom = domain(&d.domain, d.c, d.d)?;
            let disk = dom.enclosing_disk();
            let out = DiskOut {
                domain: dom.to_string(),
                center_re: disk.center.re,
                center_im: disk.center.im,
                radius: disk.radius,
                sampled_radius: dom
                    .numeric_enclosing_radius(crate::domain::DEFAULT_BOUNDARY_SAMPLES),
            };
            let body = match format_or(Format::Json) {
                Format::Json => json(&out),
                Format::Csv => csv(
                    &[
                        "domain",
                        "center_re",
                        "center_im",
                        "radius",
                        "sampled_radius",
                    ],
                    [[
                        out.domain.clone(),
                        num(out.center_re),
                        num(out.center_im),
                        num(out.radius),
                        num(out.sampled_radius),
                    ]],
                )?,
            };
            Ok((body, 0))
        }
        Command::Check { theorem, betas } => {
            let t = theorem.theorem()?;
            let r = evaluate(&t, &betas.params()?, theorem.mk()?)?;
            let body = match format_or(Format::Json) {
                Format::Json => json(&r),
                Format::Csv => csv(
                    &[
                        "target",
                        "order",
                        "h",
                        "holds",
                        "lhs",
                        "rhs",
                        "margin",
                        "core",
                        "hypothesis_flags",
                    ],
                    [[
                        format!("{:?}", t.target).to_lowercase(),
                        t.order.to_string(),
                        t.h.to_string(),
                        r.holds.to_string(),
                        num(r.lhs),
                        num(r.rhs),
                        num(r.margin),
                        num(r.core),
                        r.hypothesis_flags.join(";"),
                    ]],
                )?,
            };
            Ok((body, if r.holds { 0 } else { 1 }))
        }
        Command::Scan {
            theorem,
            beta1_min,
            beta1_max,
            beta2_min,
            beta2_max,
            steps1,
            steps2,
            beta3,
        } => {
            let t = theorem.theorem()?;
            let raster = region_scan(
                &t,
                (*beta1_min, *beta1_max),
                (*beta2_min, *beta2_max),
                (*steps1, *steps2),
                ScanFixed {
                    beta3: *beta3,
                    mk: theorem.mk()?,
                },
                Exec::default(),
            )?;
            let body = match format_or(Format::Csv) {
                Format::Json => json(&raster.cells),
                Format::Csv => csv(
                    &["beta1", "beta2", "margin", "holds"],
                    raster.cells.iter().map(|c| {
                        [
                            num(c.beta1),
                            num(c.beta2),
                            num(c.margin),
                            c.holds.to_string(),
                        ]
                    }),
                )?,
            };
            Ok((body, 0))
        }
        Command::Verify {
            theorem,
            betas,
            family,
            radius,
            radial_steps,
            angular_steps,
        } => {
            json_only(format_or(Format::Json), "verify")?;
            let t = theorem.theorem()?;
            let grid = GridSpec::new(*radius, *radial_steps, *angular_steps)?;
            let family = match family {
                FamilyArg::Constant => FamilySpec::Constant,
                FamilyArg::Linear => FamilySpec::default_linear(),
                FamilyArg::Quadratic => FamilySpec::default_quadratic(),
                FamilyArg::Scaled => FamilySpec::default_scaled_target(),
                FamilyArg::Builtin => FamilySpec::builtin(),
            };
            let r = implication_test(&t, &betas.params()?, theorem.mk()?, &family, &grid)?;
            let code = if r.implication_violations.is_empty() {
                0
            } else {
                1
            };
            Ok((json(&r), code))
        }
        Command::Identity {
            which,
            trials,
            degree,
            beta1,
            beta2,
            beta3,
        } => {
            json_only(format_or(Format::Json), "identity")?;
            let which: IdentityWhich = which.parse()?;
            let params = OperatorParams::third_order(*beta1, *beta2, *beta3)?;
            let r = identity_test(
                which,
                *trials,
                *degree,
                common.seed,
                &params,
                common.tolerance,
            )?;
            Ok((json(&r), if r.passed { 0 } else { 1 }))
        }
    }
}

/// Runs the command line on `args` (including the program name). Artifacts
/// go to `out` unless `--out` is given; diagnostics go to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{e}");
                    2
                }
            };
        }
    };
    let result = execute(&cli).and_then(|(body, code)| {
        match &cli.common.out {
            Some(path) => fs::write(path, body)?,
            None => out.write_all(body.as_bytes())?,
        }
        Ok(code)
    });
    match result {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(CliError::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}
