//! Persistence: bodies, reports, CSV summaries, findings and corpora.

mod body;
mod corpus;

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

pub use body::{
    body_from_json, body_from_value, body_to_json, body_to_value, fingerprint, Real, BODY_SCHEMA,
};
pub use corpus::{
    body_rng, generate, generate_one, random_sign_change, sign_orbit, CorpusSpec, Family,
};

use crate::error::{Error, Result};
use crate::geom::Body;
use crate::lab::IneqReport;

pub const FINDING_SCHEMA: &str = "finding/1";

/// Where and how a result was produced. Contains nothing time- or
/// host-dependent, so reruns are byte-identical.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Environment {
    pub crate_version: String,
    pub os: String,
    pub arch: String,
    pub parallel: bool,
}

impl Environment {
    pub fn current() -> Self {
        Environment {
            crate_version: env!("CARGO_PKG_VERSION").to_string(),
            os: std::env::consts::OS.to_string(),
            arch: std::env::consts::ARCH.to_string(),
            parallel: cfg!(feature = "parallel"),
        }
    }
}

/// A conjecture checker came out negative (or a search hit its violation
/// threshold).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Finding {
    pub schema: String,
    pub config: serde_json::Value,
    pub witness: serde_json::Value,
    pub lhs: f64,
    pub rhs: f64,
    pub oriented_slack: f64,
    pub tolerance: f64,
    pub environment: Environment,
}

impl Finding {
    pub fn new(
        config: serde_json::Value,
        witness: &Body,
        lhs: f64,
        rhs: f64,
        oriented_slack: f64,
        tolerance: f64,
    ) -> Self {
        Finding {
            schema: FINDING_SCHEMA.into(),
            config,
            witness: body_to_value(witness),
            lhs,
            rhs,
            oriented_slack,
            tolerance,
            environment: Environment::current(),
        }
    }

    pub fn from_report(report: &IneqReport, body: &Body) -> Self {
        Finding::new(
            serde_json::json!({ "id": report.id.to_string() }),
            body,
            report.lhs,
            report.rhs,
            report.oriented_slack,
            report.tolerance,
        )
    }

    pub fn witness_body(&self) -> Result<Body> {
        body_from_value(self.witness.clone())
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_json_pretty<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| Error::invalid(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

pub fn from_json<T: for<'de> Deserialize<'de>>(text: &str, context: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        context: context.into(),
        message: e.to_string(),
    })
}

pub fn reports_to_json(reports: &[IneqReport]) -> Result<String> {
    to_json_pretty(&reports)
}

pub fn reports_from_json(text: &str) -> Result<Vec<IneqReport>> {
    from_json(text, crate::lab::REPORT_SCHEMA)
}

pub const CSV_HEADER: [&str; 11] = [
    "body",
    "id",
    "status",
    "lhs",
    "rhs",
    "oriented_slack",
    "tolerance",
    "satisfied",
    "equality_flag",
    "equality_family",
    "quadrature_error",
];

fn label<T: Serialize>(v: &T) -> String {
    match serde_json::to_value(v) {
        Ok(serde_json::Value::String(s)) => s,
        Ok(serde_json::Value::Null) => String::new(),
        Ok(other) => other.to_string(),
        Err(_) => String::new(),
    }
}

/// One row per (body, inequality).
pub fn summary_csv(rows: &[(String, IneqReport)]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| Error::invalid(e.to_string());
    w.write_record(CSV_HEADER).map_err(csv_err)?;
    for (body, r) in rows {
        w.write_record([
            body.clone(),
            r.id.to_string(),
            label(&r.status),
            format!("{:?}", r.lhs),
            format!("{:?}", r.rhs),
            format!("{:?}", r.oriented_slack),
            format!("{:?}", r.tolerance),
            r.satisfied.to_string(),
            label(&r.equality_flag),
            label(&r.equality_family),
            r.quadrature_error
                .map(|e| format!("{e:?}"))
                .unwrap_or_default(),
        ])
        .map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::invalid(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// Generic CSV from a header and string rows.
pub fn table_csv(header: &[&str], rows: &[Vec<String>]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| Error::invalid(e.to_string());
    w.write_record(header).map_err(csv_err)?;
    for r in rows {
        w.write_record(r).map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::invalid(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

/// Write `text`, creating parent directories.
pub fn write_text(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }
    fs::write(path, text).map_err(|e| Error::io(path, e))
}

pub fn read_body(path: &Path) -> Result<Body> {
    body_from_json(&read_text(path)?).map_err(|e| match e {
        Error::Parse { message, .. } => Error::Parse {
            context: path.display().to_string(),
            message,
        },
        other => other,
    })
}

pub fn write_body(path: &Path, body: &Body) -> Result<()> {
    write_text(path, &body_to_json(body))
}

/// Generate a corpus into `dir` as `body_0000.json`, ... and return the
/// paths in order.
pub fn write_corpus(spec: &CorpusSpec, dir: &Path) -> Result<Vec<PathBuf>> {
    let bodies = generate(spec)?;
    let width = (spec.count.saturating_sub(1)).to_string().len().max(4);
    bodies
        .iter()
        .enumerate()
        .map(|(i, b)| {
            let path = dir.join(format!("body_{i:0width$}.json"));
            write_body(&path, b)?;
            Ok(path)
        })
        .collect()
}
