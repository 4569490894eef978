use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use mnesor::laws::{check_laws, check_semiring_laws, GradeWindow, LawReport};
use mnesor::sim::Sample;
use mnesor::trace::{write_atomic, write_csv, TraceError};
use mnesor::{
    compare as run_pair, evaluate, metrics, run, ConfigError, ControllerKind, ExprError, Metrics,
    RunConfig, SimError, Status,
};
use serde_json::json;
use thiserror::Error;

use crate::{table, Suite, TableOp};

/// Grades allowed on the command line.
const GRADE_LIMIT: i64 = 32;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Config(#[from] ConfigError),
    /// Already rendered with its caret marker.
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Runtime(String),
    #[error("{0}")]
    Trace(#[from] TraceError),
    #[error("cannot write {}: {source}", path.display())]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Config(_) | CliError::Parse(_) => 2,
            CliError::Runtime(_) | CliError::Trace(_) | CliError::Write { .. } => 1,
        }
    }
}

impl From<SimError> for CliError {
    fn from(e: SimError) -> Self {
        match e {
            SimError::Invalid(_) | SimError::Mismatch(_) => CliError::Usage(e.to_string()),
            SimError::Signal(_) => CliError::Runtime(e.to_string()),
        }
    }
}

fn window(min: i64, max: i64) -> Result<GradeWindow, CliError> {
    if min < -GRADE_LIMIT || max > GRADE_LIMIT {
        return Err(CliError::Usage(format!(
            "grade window [{min}, {max}] must lie within [-{GRADE_LIMIT}, {GRADE_LIMIT}]"
        )));
    }
    GradeWindow::new(min, max).map_err(|e| CliError::Usage(e.to_string()))
}

pub fn laws(min: i64, max: i64, suite: Suite, as_json: bool) -> Result<(), CliError> {
    let w = window(min, max)?;
    let mut reports: Vec<(&str, LawReport)> = Vec::new();
    if matches!(suite, Suite::Mnesor | Suite::All) {
        reports.push(("mnesor", check_laws(w)));
    }
    if matches!(suite, Suite::Semiring | Suite::All) {
        reports.push(("semiring", check_semiring_laws(w)));
    }
    if as_json {
        let doc: serde_json::Map<String, serde_json::Value> = reports
            .iter()
            .map(|(name, r)| {
                (
                    name.to_string(),
                    serde_json::to_value(r).expect("report serializes"),
                )
            })
            .collect();
        println!(
            "{}",
            serde_json::to_string_pretty(&doc).expect("report serializes")
        );
    } else {
        for (name, r) in &reports {
            println!("== {name} laws ==\n{r}\n");
        }
    }
    let failed: usize = reports.iter().map(|(_, r)| r.failures().count()).sum();
    if failed == 0 {
        Ok(())
    } else {
        Err(CliError::Runtime(format!("{failed} law(s) failed")))
    }
}

pub fn table(op: TableOp, min: i64, max: i64) -> Result<(), CliError> {
    let w = window(min, max)?;
    let text = match op {
        TableOp::Add => table::render("+", w, |x, y| x.madd(y)),
        TableOp::Mul => table::render("×", w, |x, y| x.mmul(y)),
    };
    print!("{text}");
    Ok(())
}

pub fn eval(expr: &str) -> Result<(), CliError> {
    match evaluate(expr) {
        Ok(m) => {
            println!("{m}");
            Ok(())
        }
        Err(ExprError::Parse(e)) => Err(CliError::Parse(e.render(expr))),
        Err(e) => Err(CliError::Runtime(e.to_string())),
    }
}

fn load(path: Option<&Path>) -> Result<RunConfig, CliError> {
    Ok(match path {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    })
}

fn write(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    write_atomic(path, bytes).map_err(|source| CliError::Write {
        path: path.to_path_buf(),
        source,
    })
}

fn write_trace(path: &Path, samples: &[Sample]) -> Result<(), CliError> {
    let mut buf = Vec::new();
    write_csv(&mut buf, samples)?;
    write(path, &buf)
}

fn json_bytes(value: &serde_json::Value) -> Vec<u8> {
    let mut bytes = serde_json::to_vec_pretty(value).expect("json serializes");
    bytes.push(b'\n');
    bytes
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map_or_else(|| "none".to_string(), |t| format!("{t:.3} s"))
}

fn status_name(s: Status) -> &'static str {
    match s {
        Status::Completed => "completed",
        Status::FellOver => "fell-over",
        Status::Diverged => "diverged",
    }
}

/// Rows of a metrics table, one column per run.
fn metrics_table(columns: &[(&str, &Metrics)]) -> String {
    type Row = (&'static str, fn(&Metrics) -> String);
    let rows: [Row; 7] = [
        ("status", |m| status_name(m.status).to_string()),
        ("settling_time", |m| fmt_opt(m.settling_time)),
        ("max_abs_theta", |m| format!("{:.4} rad", m.max_abs_theta)),
        ("max_abs_u", |m| format!("{:.3} m/s^2", m.max_abs_u)),
        ("control_effort", |m| format!("{:.3} m/s", m.control_effort)),
        ("terminal_theta", |m| {
            format!("{:.3e} rad", m.terminal_theta)
        }),
        ("samples", |m| m.samples.to_string()),
    ];
    let mut out = String::new();
    let _ = write!(out, "{:<16}", "");
    for (name, _) in columns {
        let _ = write!(out, "{name:>20}");
    }
    out.push('\n');
    for (label, f) in rows {
        let _ = write!(out, "{label:<16}");
        for (_, m) in columns {
            let _ = write!(out, "{:>20}", f(m));
        }
        out.push('\n');
    }
    out
}

fn strict_check(strict: bool, runs: &[(&str, &Metrics)]) -> Result<(), CliError> {
    if !strict {
        return Ok(());
    }
    match runs.iter().find(|(_, m)| m.status != Status::Completed) {
        Some((name, m)) => Err(CliError::Runtime(format!(
            "{name} run ended with status {}",
            status_name(m.status)
        ))),
        None => Ok(()),
    }
}

pub fn simulate(
    controller: Option<ControllerKind>,
    config: Option<&Path>,
    out: &Path,
    metrics_path: Option<&Path>,
    strict: bool,
) -> Result<(), CliError> {
    let mut cfg = load(config)?;
    if let Some(kind) = controller {
        cfg.controller = kind;
    }
    let tr = run(&cfg.sim_config(cfg.controller))?;
    let m = metrics(&tr, cfg.settling_epsilon);
    write_trace(out, &tr.samples)?;
    let metrics_path = metrics_path.map_or_else(|| out.with_extension("json"), Path::to_path_buf);
    let doc = json!({ "config": cfg, "metrics": m });
    write(&metrics_path, &json_bytes(&doc))?;
    let name = cfg.controller.to_string();
    print!("{}", metrics_table(&[(&name, &m)]));
    println!(
        "trace: {}\nmetrics: {}",
        out.display(),
        metrics_path.display()
    );
    strict_check(strict, &[(&name, &m)])
}

pub struct CompareArgs<'a> {
    pub config: Option<&'a Path>,
    pub right_config: Option<&'a Path>,
    pub left: ControllerKind,
    pub right: ControllerKind,
    pub out_dir: &'a Path,
    pub plot: bool,
    pub strict: bool,
}

pub fn compare(args: CompareArgs<'_>) -> Result<(), CliError> {
    let mut left_cfg = load(args.config)?;
    let mut right_cfg = match args.right_config {
        Some(p) => RunConfig::load(p)?,
        None => left_cfg,
    };
    left_cfg.controller = args.left;
    right_cfg.controller = args.right;
    let [l, r] = run_pair(
        &left_cfg.sim_config(args.left),
        &right_cfg.sim_config(args.right),
        left_cfg.settling_epsilon,
    )?;
    std::fs::create_dir_all(args.out_dir).map_err(|source| CliError::Write {
        path: args.out_dir.to_path_buf(),
        source,
    })?;
    let left_name = format!("left-{}", args.left);
    let right_name = format!("right-{}", args.right);
    write_trace(
        &args.out_dir.join(format!("{left_name}.csv")),
        &l.trajectory.samples,
    )?;
    write_trace(
        &args.out_dir.join(format!("{right_name}.csv")),
        &r.trajectory.samples,
    )?;
    let doc = json!({
        "left": { "config": left_cfg, "metrics": l.metrics },
        "right": { "config": right_cfg, "metrics": r.metrics },
    });
    write(&args.out_dir.join("comparison.json"), &json_bytes(&doc))?;
    if args.plot {
        let svg = mnesor::plot::render_svg(&[
            (left_name.as_str(), &l.trajectory),
            (right_name.as_str(), &r.trajectory),
        ]);
        write(&args.out_dir.join("comparison.svg"), svg.as_bytes())?;
    }
    let columns = [
        (left_name.as_str(), &l.metrics),
        (right_name.as_str(), &r.metrics),
    ];
    print!("{}", metrics_table(&columns));
    println!("outputs: {}", args.out_dir.display());
    strict_check(args.strict, &columns)
}
