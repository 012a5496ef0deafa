//! Batch verification front end for the `tqc` binary.

pub mod config;
pub mod constellation;
pub mod error;
pub mod report;
pub mod robustness;
pub mod scenarios;

use std::path::{Path, PathBuf};
use std::time::Instant;

use serde_json::json;
use tqc_core::gates::{verdict, GateRecipe, GateTarget};
use tqc_core::linalg::CMatrix;

pub use config::{Command, Format, RunConfig};
pub use error::{CliError, CliResult};
pub use report::{Check, Report};

use constellation::{constellation_of, StateSpec};
use report::{matrix_json, stars_json};
use scenarios::TOL_NUMERIC;

/// Gate names accepted by `synthesize`.
pub const SYNTHESIZE_GATES: [&str; 7] = ["NOT", "TOFFOLI8", "H3", "H1", "H2", "TOFFOLI_TARGET1", "TOFFOLI_TARGET2"];

fn timed(config: &RunConfig, body: impl FnOnce(&mut Report) -> CliResult<()>) -> CliResult<Report> {
    config.validate()?;
    let start = Instant::now();
    let mut report = Report::new(config.clone());
    body(&mut report)?;
    report.timing_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(report)
}

pub fn cmd_verify(config: &RunConfig) -> CliResult<Report> {
    timed(config, |r| {
        r.checks = scenarios::verify_checks(config)?;
        Ok(())
    })
}

pub fn cmd_robustness(config: &RunConfig) -> CliResult<Report> {
    timed(config, |r| {
        r.checks = robustness::robustness_checks(config)?;
        Ok(())
    })
}

pub fn cmd_constellation(config: &RunConfig) -> CliResult<Report> {
    let spec = StateSpec::parse(&config.scenario)?;
    timed(config, |r| {
        let (stars, checks) = constellation_of(&spec)?;
        r.checks = checks;
        r.stars = Some(stars_json(&stars));
        Ok(())
    })
}

/// Runs the gate's recipe; the achieved matrix is the first check's `achieved`.
pub fn cmd_synthesize(config: &RunConfig) -> CliResult<(Report, CMatrix)> {
    let gate = config.scenario.trim().to_ascii_uppercase();
    let target = SYNTHESIZE_GATES
        .contains(&gate.as_str())
        .then(|| GateTarget::parse(&gate))
        .flatten()
        .ok_or_else(|| CliError::Config(format!("unknown gate `{}` (expected one of {SYNTHESIZE_GATES:?})", config.scenario)))?;
    let mut achieved = None;
    let report = timed(config, |r| {
        let recipe = GateRecipe::for_target(target)?;
        let path = recipe.path();
        let result = recipe.run(&path, config.steps)?;
        let v = verdict(&recipe, &path, result.u.clone(), TOL_NUMERIC)?;
        r.checks.push(Check {
            name: format!("synthesize {}", v.target),
            expected: matrix_json(&v.expected),
            achieved: matrix_json(&v.achieved),
            distance: v.distance,
            tolerance: v.tolerance,
            pass: v.pass,
            expected_fail: false,
            details: Some(json!({
                "up_to_phase": v.up_to_phase,
                "path": v.path,
                "coding": v.coding,
                "spin": recipe.plane.spin().to_string(),
                "k": recipe.plane.k(),
                "steps": result.steps,
            })),
        });
        r.checks.push(Check::below("max connection norm", result.max_connection_norm, scenarios::TOL_CONNECTION));
        achieved = Some(v.achieved);
        Ok(())
    })?;
    Ok((report, achieved.expect("set on success")))
}

fn write(path: &Path, contents: &str) -> CliResult<()> {
    std::fs::write(path, contents).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

/// Where `synthesize` puts the bare matrix: next to the report.
pub fn matrix_path(report_path: &Path, format: Format) -> PathBuf {
    let ext = match format {
        Format::Json => "json",
        Format::Csv => "csv",
    };
    report_path.with_extension(format!("matrix.{ext}"))
}

pub fn matrix_csv(m: &CMatrix) -> String {
    let mut out = String::from("row,col,re,im\n");
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            let z = m[(i, j)];
            out.push_str(&format!("{i},{j},{:.16e},{:.16e}\n", z.re, z.im));
        }
    }
    out
}

/// Runs one command, writes its output, and returns the exit status.
pub fn run(config: &RunConfig) -> CliResult<i32> {
    let (report, matrix) = match config.command {
        Command::Verify => (cmd_verify(config)?, None),
        Command::Robustness => (cmd_robustness(config)?, None),
        Command::Constellation => (cmd_constellation(config)?, None),
        Command::Synthesize => {
            let (r, m) = cmd_synthesize(config)?;
            (r, Some(m))
        }
    };
    let body = match (config.format, config.command) {
        (Format::Json, _) => report.to_json()?,
        (Format::Csv, Command::Constellation) => {
            let spec = StateSpec::parse(&config.scenario)?;
            constellation_of(&spec)?.0.to_csv()
        }
        (Format::Csv, _) => report.to_csv(),
    };
    match &config.output {
        Some(path) => {
            write(path, &body)?;
            if let Some(m) = &matrix {
                let text = match config.format {
                    Format::Json => serde_json::to_string(&matrix_json(m))? + "\n",
                    Format::Csv => matrix_csv(m),
                };
                write(&matrix_path(path, config.format), &text)?;
            }
        }
        None => print!("{body}"),
    }
    Ok(if report.all_pass() { 0 } else { 1 })
}
