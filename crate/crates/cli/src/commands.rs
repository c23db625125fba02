//! Subcommand implementations. Each returns the text destined for stdout so
//! that callers (and tests) decide where it goes.

use std::path::{Path, PathBuf};

use exhauster::exhauster::{
    optimality_check, reduce_auto, reduce_by_cover, reduce_pairwise, verify_equivalence,
};
use exhauster::order::{precedes_m1, precedes_m2};
use exhauster::tolerance::eps;
use exhauster::{ReductionReport, Vector};
use serde::Serialize;

use crate::error::CliError;
use crate::problem::{load, ProblemFile};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Pairwise,
    Cover,
    Auto,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    M1,
    M2,
}

/// Result of a command: stdout text, plus a failure to report after printing it.
#[derive(Debug)]
pub struct Output {
    pub text: String,
    pub failure: Option<CliError>,
}

impl From<String> for Output {
    fn from(text: String) -> Self {
        Output {
            text,
            failure: None,
        }
    }
}

/// Fixed-point with 12 decimals; values that round to zero print without a sign.
pub fn format_number(x: f64) -> String {
    let text = format!("{x:.12}");
    match text.strip_prefix('-') {
        Some(rest) if rest.bytes().all(|b| b == b'0' || b == b'.') => rest.to_string(),
        _ => text,
    }
}

fn clean(v: &Vector) -> Vec<f64> {
    v.iter().map(|x| x + 0.0).collect()
}

fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    serde_json::to_string_pretty(value).map_err(|e| CliError::General(e.to_string()))
}

pub fn parse_direction(text: &str, dim: usize) -> Result<Vector, CliError> {
    let coords = text
        .split(',')
        .map(|part| {
            part.trim()
                .parse::<f64>()
                .map_err(|_| CliError::Schema(format!("cannot parse direction component {part:?}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if coords.len() != dim {
        return Err(CliError::Dimension(format!(
            "direction has {} components, expected {dim}",
            coords.len()
        )));
    }
    if coords.iter().any(|c| !c.is_finite()) {
        return Err(CliError::Schema(
            "direction has a non-finite component".into(),
        ));
    }
    Ok(Vector::from(coords))
}

pub fn eval(file: &Path, direction: &str) -> Result<Output, CliError> {
    let problem = load(file)?;
    let g = parse_direction(direction, problem.exhauster.dim())?;
    let value = problem.exhauster.evaluate(&g)?;
    Ok(format_number(value).into())
}

#[derive(Serialize)]
struct ReduceOutput<'a> {
    method: Method,
    output: &'a Path,
    members_before: usize,
    members_after: usize,
    #[serde(flatten)]
    report: &'a ReductionReport,
}

/// `<stem>.reduced.json` next to the input.
pub fn default_reduced_path(file: &Path) -> PathBuf {
    let stem = file
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("problem");
    file.with_file_name(format!("{stem}.reduced.json"))
}

pub fn reduce(file: &Path, method: Method, output: Option<&Path>) -> Result<Output, CliError> {
    let problem = load(file)?;
    let e = &problem.exhauster;
    let (_, report) = match method {
        Method::Pairwise => reduce_pairwise(e, &problem.cone_k)?,
        Method::Cover => reduce_by_cover(e)?,
        Method::Auto => reduce_auto(e, Some(&problem.cone_k))?,
    };
    let reduced: ProblemFile = problem.file.with_members(report.survivors.iter().copied());
    let target = output
        .map(Path::to_path_buf)
        .unwrap_or_else(|| default_reduced_path(file));
    reduced.write(&target)?;
    log::info!(
        "removed {} of {} members; reduced problem written to {}",
        report.removed.len(),
        e.members().len(),
        target.display()
    );
    Ok(to_json(&ReduceOutput {
        method,
        output: &target,
        members_before: e.members().len(),
        members_after: report.survivors.len(),
        report: &report,
    })?
    .into())
}

#[derive(Serialize)]
struct CompareOutput {
    relation: Relation,
    left: usize,
    right: usize,
    holds: bool,
    witness: Option<Vec<f64>>,
}

/// Whether member `i` precedes member `j` in the chosen relation with cone `K`.
pub fn compare(file: &Path, i: usize, j: usize, relation: Relation) -> Result<Output, CliError> {
    let problem = load(file)?;
    let members = problem.exhauster.members();
    let get = |k: usize| {
        members.get(k).ok_or_else(|| {
            CliError::Precondition(format!(
                "member index {k} out of range (0..{})",
                members.len()
            ))
        })
    };
    let (a, b) = (get(i)?, get(j)?);
    let check = match relation {
        Relation::M1 => precedes_m1(a, b, &problem.cone_k),
        Relation::M2 => precedes_m2(a, b, &problem.cone_k),
    }
    .map_err(|e| CliError::from(e).with_context(&format!("members {i} and {j}")))?;
    Ok(to_json(&CompareOutput {
        relation,
        left: i,
        right: j,
        holds: check.holds(),
        witness: check.witness.as_ref().map(clean),
    })?
    .into())
}

pub fn optimality(file: &Path) -> Result<Output, CliError> {
    let problem = load(file)?;
    let Some(decomposition) = &problem.decomposition else {
        return Err(CliError::Missing(
            "the problem file has no decomposition".into(),
        ));
    };
    let report = optimality_check(&problem.exhauster, decomposition)?;
    Ok(to_json(&report)?.into())
}

#[derive(Serialize)]
struct VerifyOutput {
    max_abs_gap: f64,
    worst_g: Vec<f64>,
    samples: usize,
    seed: u64,
    tolerance: f64,
    pass: bool,
}

pub fn verify(
    original: &Path,
    reduced: &Path,
    samples: usize,
    seed: u64,
    tolerance: Option<f64>,
) -> Result<Output, CliError> {
    let a = load(original)?;
    let b = load(reduced)?;
    let report = verify_equivalence(&a.exhauster, &b.exhauster, samples, seed)?;
    let tolerance = tolerance.unwrap_or_else(eps);
    let pass = report.max_abs_gap <= tolerance;
    let text = to_json(&VerifyOutput {
        max_abs_gap: report.max_abs_gap,
        worst_g: clean(&report.worst_g),
        samples: report.samples,
        seed,
        tolerance,
        pass,
    })?;
    Ok(Output {
        text,
        failure: (!pass).then_some(CliError::GapExceeded {
            gap: report.max_abs_gap,
            tolerance,
        }),
    })
}

/// Unit directions: `±1` in 1-D, `grid` equally spaced angles in 2-D, a
/// `grid × grid` polar/azimuth grid in 3-D.
pub fn direction_grid(dim: usize, grid: usize) -> Result<Vec<Vector>, CliError> {
    use std::f64::consts::{PI, TAU};
    Ok(match dim {
        1 => vec![Vector::from([-1.0]), Vector::from([1.0])],
        2 => (0..grid)
            .map(|k| {
                let t = TAU * k as f64 / grid as f64;
                Vector::from([t.cos(), t.sin()])
            })
            .collect(),
        3 => (0..grid)
            .flat_map(|i| {
                let theta = PI * (i as f64 + 0.5) / grid as f64;
                (0..grid).map(move |j| {
                    let phi = TAU * j as f64 / grid as f64;
                    Vector::from([
                        theta.sin() * phi.cos(),
                        theta.sin() * phi.sin(),
                        theta.cos(),
                    ])
                })
            })
            .collect(),
        _ => {
            return Err(CliError::Precondition(format!(
                "export supports dimensions 1 to 3, got {dim}"
            )))
        }
    })
}

pub fn export(file: &Path, grid: usize) -> Result<Output, CliError> {
    let problem = load(file)?;
    let e = &problem.exhauster;
    let dim = e.dim();
    let mut csv = String::new();
    let header: Vec<String> = (1..=dim)
        .map(|i| format!("g{i}"))
        .chain(["h".to_string()])
        .collect();
    csv.push_str(&header.join(","));
    csv.push('\n');
    for g in direction_grid(dim, grid)? {
        if !e.in_domain(&g)? {
            continue;
        }
        let value = e.evaluate(&g)?;
        let row: Vec<String> = g
            .iter()
            .map(|&x| format_number(x))
            .chain([format_number(value)])
            .collect();
        csv.push_str(&row.join(","));
        csv.push('\n');
    }
    Ok(Output {
        text: csv,
        failure: None,
    })
}

impl CliError {
    fn with_context(self, context: &str) -> CliError {
        match self {
            CliError::Unsupported(m) => CliError::Unsupported(format!("{context}: {m}")),
            CliError::Precondition(m) => CliError::Precondition(format!("{context}: {m}")),
            other => other,
        }
    }
}
