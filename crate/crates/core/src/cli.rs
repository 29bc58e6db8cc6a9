//! Command-line front end: `verify`, `eval` and `transform`.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::algebra::FloatQuat;
use crate::appell::{m_poly, q_poly};
use crate::bargmann::kernels::{kernel_k, kernel_phi, kernel_theta};
use crate::error::{Error, Result};
use crate::fueter_maps::{map_c, map_tau};
use crate::hermite::qhermite;
use crate::ncpoly::float_quat;
use crate::report::{reports_to_json, tally};
use crate::slicepoly::SliceCoeffMatrix;
use crate::suites::{run_suite, Suite, SuiteConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "fueterlab", version, about = "Exact and numeric checks for slice polyanalytic Fueter maps and Bargmann transforms")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run verification suites and emit a JSON report array.
    Verify(VerifyArgs),
    /// Evaluate an object at a quaternion and print JSON.
    Eval(EvalArgs),
    /// Apply a Fueter map to a serialized coefficient matrix.
    Transform(TransformArgs),
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_parser = parse_suite)]
    pub suite: Suite,
    #[arg(long, default_value_t = 3)]
    pub n_max: u32,
    #[arg(long, default_value_t = 8)]
    pub deg_max: u32,
    #[arg(long, default_value_t = 64)]
    pub trunc: usize,
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    /// Report destination; stdout when omitted.
    #[arg(long = "json", value_name = "PATH")]
    pub json_path: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EvalObject {
    #[value(name = "Q")]
    Q,
    #[value(name = "M")]
    M,
    #[value(name = "Hq")]
    Hq,
    #[value(name = "K")]
    K,
    #[value(name = "Phi")]
    Phi,
    #[value(name = "Theta")]
    Theta,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    pub object: EvalObject,
    /// Point w,x,y,z.
    #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
    pub at: FloatQuat,
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long)]
    pub s: Option<u32>,
    #[arg(long)]
    pub m: Option<u32>,
    #[arg(long)]
    pub p: Option<u32>,
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<f64>,
    #[arg(long, default_value_t = 64)]
    pub trunc: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MapArg {
    #[value(name = "C")]
    C,
    #[value(name = "tau")]
    Tau,
}

#[derive(Debug, Args)]
pub struct TransformArgs {
    pub map: MapArg,
    pub input: PathBuf,
    pub output: PathBuf,
}

fn parse_suite(s: &str) -> std::result::Result<Suite, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_point(s: &str) -> std::result::Result<FloatQuat, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 4 {
        return Err(format!("expected four comma-separated numbers, got {}", parts.len()));
    }
    let mut c = [0.0; 4];
    for (slot, p) in c.iter_mut().zip(&parts) {
        *slot = p.parse::<f64>().map_err(|e| format!("`{p}`: {e}"))?;
        if !slot.is_finite() {
            return Err(format!("`{p}` is not finite"));
        }
    }
    Ok(float_quat(c[0], c[1], c[2], c[3]))
}

fn require(v: Option<u32>, flag: &str, object: EvalObject) -> Result<u32> {
    v.ok_or_else(|| Error::Domain(format!("{object:?} needs --{flag}")))
}

fn quat_json(q: &FloatQuat) -> Value {
    json!([q.w, q.x, q.y, q.z])
}

/// The evaluated object as `{"object", "params", "value"}`, plus `"closed"` for K.
pub fn eval_object(a: &EvalArgs) -> Result<Value> {
    use EvalObject::*;
    let q = &a.at;
    let mut params = serde_json::Map::new();
    let mut put = |key: &str, v: u32| {
        params.insert(key.into(), json!(v));
    };
    let mut extra = None;
    let value = match a.object {
        Q => {
            let k = require(a.k, "k", a.object)?;
            put("k", k);
            q_poly(k as i64).evaluate(q)?
        }
        M => {
            let k = require(a.k, "k", a.object)?;
            let s = require(a.s, "s", a.object)?;
            put("k", k);
            put("s", s);
            m_poly(k, s as i64).evaluate(q)?
        }
        Hq => {
            let m = require(a.m, "m", a.object)?;
            let p = require(a.p, "p", a.object)?;
            put("m", m);
            put("p", p);
            qhermite(m, p).to_ncpoly().evaluate(q)?
        }
        K | Phi | Theta => {
            let n = require(a.n, "n", a.object)? as usize;
            let x = a.x.ok_or_else(|| Error::Domain(format!("{:?} needs --x", a.object)))?;
            put("n", n as u32);
            match a.object {
                K => {
                    let pair = kernel_k(n, q, x, a.trunc)?;
                    extra = Some(quat_json(&pair.closed));
                    pair.series
                }
                Phi => kernel_phi(n, q, x, a.trunc)?,
                _ => kernel_theta(n, q, x, a.trunc)?,
            }
        }
    };
    let mut out = json!({
        "object": format!("{:?}", a.object),
        "params": params,
        "value": quat_json(&value),
    });
    if let Some(c) = extra {
        out["closed"] = c;
    }
    Ok(out)
}

fn read_json(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::schema("<root>", format!("invalid JSON: {e}")))
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

pub fn transform(a: &TransformArgs) -> Result<()> {
    let f = SliceCoeffMatrix::from_json(&read_json(&a.input)?)?;
    let image = match a.map {
        MapArg::C => map_c(&f),
        MapArg::Tau => map_tau(&f),
    };
    let mut text = serde_json::to_string_pretty(&image.to_json()).expect("serializable");
    text.push('\n');
    write_text(&a.output, &text)
}

/// Returns the exit code; failures of checks give 1, anything unusable gives 2.
pub fn verify(a: &VerifyArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32> {
    let cfg = SuiteConfig {
        n_max: a.n_max,
        deg_max: a.deg_max,
        trunc: a.trunc,
        tol: a.tol,
        seed: a.seed,
    };
    let reports = run_suite(a.suite, &cfg)?;
    let text = reports_to_json(&reports);
    match &a.json_path {
        Some(p) => write_text(p, &text)?,
        None => stdout.write_all(text.as_bytes()).map_err(|e| Error::Io(e.to_string()))?,
    }
    let t = tally(&reports);
    let _ = writeln!(stderr, "{}: {} pass, {} flagged, {} fail", a.suite, t.pass, t.flagged, t.fail);
    Ok(if t.fail == 0 { EXIT_OK } else { EXIT_FAIL })
}

pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(rendered.as_bytes())
            } else {
                stdout.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    let outcome = match &cli.command {
        Command::Verify(a) => verify(a, stdout, stderr),
        Command::Eval(a) => eval_object(a).map(|v| {
            let _ = writeln!(stdout, "{}", serde_json::to_string(&v).expect("serializable"));
            EXIT_OK
        }),
        Command::Transform(a) => transform(a).map(|_| EXIT_OK),
    };
    outcome.unwrap_or_else(|e| {
        let _ = writeln!(stderr, "error: {e}");
        EXIT_USAGE
    })
}
