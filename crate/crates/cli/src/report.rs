//! Machine-readable experiment reports.
//!
//! One record schema serves every command, so the CSV columns are fixed:
//!
//! ```text
//! case, kind, a_re, a_im, b_re, b_im, abs_diff, tolerance, pass, detail
//! ```
//!
//! `kind` is `match` (pass ⇔ |a−b| ≤ tolerance), `bound` (pass ⇔ a > b) or
//! `value` (informational). JSON mirrors the same records under a top-level
//! `{"meta": …, "rows": […]}` object. Every floating-point cell is rendered
//! with 17 significant digits, and reports contain nothing run-dependent, so
//! identical configurations produce byte-identical files.

use serde::Serialize;
use std::io::Write;

use crate::CliError;

/// 17 significant digits, deterministic.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RowKind {
    /// pass ⇔ |a − b| ≤ tolerance
    Match,
    /// pass ⇔ a > b (strict)
    Bound,
    /// informational measurement
    Value,
}

#[derive(Debug, Clone, Serialize)]
pub struct Row {
    pub case: String,
    pub kind: RowKind,
    pub a_re: String,
    pub a_im: String,
    pub b_re: String,
    pub b_im: String,
    pub abs_diff: String,
    pub tolerance: String,
    pub pass: bool,
    pub detail: String,
}

impl Row {
    pub fn matches(
        case: impl Into<String>,
        a: num_complex::Complex64,
        b: num_complex::Complex64,
        tolerance: f64,
        detail: impl Into<String>,
    ) -> Self {
        let diff = (a - b).norm();
        Self {
            case: case.into(),
            kind: RowKind::Match,
            a_re: fmt_f64(a.re),
            a_im: fmt_f64(a.im),
            b_re: fmt_f64(b.re),
            b_im: fmt_f64(b.im),
            abs_diff: fmt_f64(diff),
            tolerance: fmt_f64(tolerance),
            pass: diff <= tolerance,
            detail: detail.into(),
        }
    }

    pub fn bound(case: impl Into<String>, a: f64, b: f64, detail: impl Into<String>) -> Self {
        Self {
            case: case.into(),
            kind: RowKind::Bound,
            a_re: fmt_f64(a),
            a_im: fmt_f64(0.0),
            b_re: fmt_f64(b),
            b_im: fmt_f64(0.0),
            abs_diff: fmt_f64(a - b),
            tolerance: fmt_f64(0.0),
            pass: a > b,
            detail: detail.into(),
        }
    }

    pub fn value(case: impl Into<String>, v: f64, detail: impl Into<String>) -> Self {
        Self {
            case: case.into(),
            kind: RowKind::Value,
            a_re: fmt_f64(v),
            a_im: fmt_f64(0.0),
            b_re: fmt_f64(0.0),
            b_im: fmt_f64(0.0),
            abs_diff: fmt_f64(0.0),
            tolerance: fmt_f64(0.0),
            pass: true,
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Meta {
    pub command: String,
    /// The mathematical claim the experiment exercises.
    pub claim: String,
    pub mu: String,
    pub c0: String,
    pub quad: QuadEcho,
}

#[derive(Debug, Clone, Serialize)]
pub struct QuadEcho {
    pub radial_nodes: usize,
    pub angular_nodes: usize,
    pub s_nodes: usize,
    pub max_subdivision: usize,
    pub abs_tol: String,
    pub rel_tol: String,
    pub mc_samples: u64,
    pub seed: u64,
}

impl Meta {
    pub fn new(
        command: &str,
        claim: &str,
        params: &bergman_worm::WormParams,
        quad: &bergman_worm::QuadConfig,
    ) -> Self {
        Self {
            command: command.to_string(),
            claim: claim.to_string(),
            mu: fmt_f64(params.mu()),
            c0: fmt_f64(params.c0()),
            quad: QuadEcho {
                radial_nodes: quad.radial_nodes,
                angular_nodes: quad.angular_nodes,
                s_nodes: quad.s_nodes,
                max_subdivision: quad.max_subdivision,
                abs_tol: fmt_f64(quad.abs_tol),
                rel_tol: fmt_f64(quad.rel_tol),
                mc_samples: quad.mc_samples,
                seed: quad.seed,
            },
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub meta: Meta,
    pub rows: Vec<Row>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum ReportFormat {
    Csv,
    Json,
}

impl Report {
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record([
            "case",
            "kind",
            "a_re",
            "a_im",
            "b_re",
            "b_im",
            "abs_diff",
            "tolerance",
            "pass",
            "detail",
        ])
        .expect("header");
        for r in &self.rows {
            let kind = match r.kind {
                RowKind::Match => "match",
                RowKind::Bound => "bound",
                RowKind::Value => "value",
            };
            w.write_record([
                r.case.as_str(),
                kind,
                r.a_re.as_str(),
                r.a_im.as_str(),
                r.b_re.as_str(),
                r.b_im.as_str(),
                r.abs_diff.as_str(),
                r.tolerance.as_str(),
                if r.pass { "true" } else { "false" },
                r.detail.as_str(),
            ])
            .expect("record");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
    }

    /// Write to `path` in `format` and echo one line per row to stdout.
    pub fn emit(&self, path: Option<&str>, format: ReportFormat) -> Result<(), CliError> {
        let mut out = std::io::stdout().lock();
        for r in &self.rows {
            let verdict = if r.pass { "pass" } else { "FAIL" };
            writeln!(
                out,
                "[{verdict}] {}: a = ({}, {}) detail = {}",
                r.case, r.a_re, r.a_im, r.detail
            )
            .map_err(|e| CliError::Validation(format!("stdout: {e}")))?;
        }
        if let Some(path) = path {
            let body = match format {
                ReportFormat::Json => self.to_json(),
                ReportFormat::Csv => self.to_csv(),
            };
            std::fs::write(path, body)
                .map_err(|e| CliError::Validation(format!("output {path}: {e}")))?;
            writeln!(out, "report written to {path}")
                .map_err(|e| CliError::Validation(format!("stdout: {e}")))?;
        }
        Ok(())
    }
}
