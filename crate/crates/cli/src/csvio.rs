//! The stable CSV schema shared by every command.
//!
//! Header (fixed, order mandatory):
//! `experiment,n,d,sigma,alpha,lambda,per_query_kl,kl_bound,tv_bound,psi1_lower,psi2_upper,minimax_lower,metric,value,stderr,seed,status`
//!
//! Every row carries the closed-form bound columns of its configuration;
//! measured quantities ride in `metric`/`value`/`stderr` rows. Floats are
//! serialized with 17 significant digits so parsing them back is bit-exact.

use std::io::Write;
use std::path::Path;

use sgs_core::BoundReport;

use crate::error::CliResult;

pub const CSV_HEADER: &str = "experiment,n,d,sigma,alpha,lambda,per_query_kl,kl_bound,\
tv_bound,psi1_lower,psi2_upper,minimax_lower,metric,value,stderr,seed,status";

/// 17 significant digits: round-trip exact for every finite f64.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

/// Budgets print as integers when they are integers.
fn fmt_n(n: f64) -> String {
    if n.fract() == 0.0 && n.abs() < 9.0e15 {
        format!("{}", n as i64)
    } else {
        fmt_f64(n)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CsvRow {
    pub experiment: &'static str,
    pub n: f64,
    pub d: usize,
    pub sigma: f64,
    pub alpha: f64,
    pub lambda: f64,
    pub per_query_kl: f64,
    pub kl_bound: f64,
    pub tv_bound: f64,
    pub psi1_lower: f64,
    pub psi2_upper: f64,
    pub minimax_lower: f64,
    pub metric: String,
    pub value: Option<f64>,
    pub stderr: Option<f64>,
    pub seed: u64,
    pub status: String,
}

impl CsvRow {
    /// A row pre-filled with the bound columns of a report; the caller sets
    /// the metric triple.
    pub fn from_report(experiment: &'static str, report: &BoundReport, seed: u64) -> Self {
        CsvRow {
            experiment,
            n: report.n,
            d: report.d,
            sigma: report.sigma,
            alpha: report.alpha,
            lambda: report.lambda,
            per_query_kl: report.per_query_kl,
            kl_bound: report.transcript_kl_bound,
            tv_bound: report.tv_bound,
            psi1_lower: report.psi1_lower,
            psi2_upper: report.psi2_upper,
            minimax_lower: report.minimax_lower,
            metric: String::new(),
            value: None,
            stderr: None,
            seed,
            status: "ok".into(),
        }
    }

    pub fn with_metric(mut self, metric: &str, value: f64) -> Self {
        self.metric = metric.to_string();
        self.value = Some(value);
        self
    }

    pub fn with_stderr(mut self, stderr: f64) -> Self {
        self.stderr = Some(stderr);
        self
    }

    pub fn with_status(mut self, status: impl Into<String>) -> Self {
        self.status = status.into();
        self
    }

    fn fields(&self) -> [String; 17] {
        [
            self.experiment.to_string(),
            fmt_n(self.n),
            self.d.to_string(),
            fmt_f64(self.sigma),
            fmt_f64(self.alpha),
            fmt_f64(self.lambda),
            fmt_f64(self.per_query_kl),
            fmt_f64(self.kl_bound),
            fmt_f64(self.tv_bound),
            fmt_f64(self.psi1_lower),
            fmt_f64(self.psi2_upper),
            fmt_f64(self.minimax_lower),
            self.metric.clone(),
            self.value.map(fmt_f64).unwrap_or_default(),
            self.stderr.map(fmt_f64).unwrap_or_default(),
            self.seed.to_string(),
            self.status.clone(),
        ]
    }
}

/// Writes header plus rows (UTF-8, LF line ends).
pub fn write_rows<W: Write>(w: W, rows: &[CsvRow]) -> CliResult<()> {
    let mut writer = csv::WriterBuilder::new().from_writer(w);
    writer.write_record(CSV_HEADER.split(','))?;
    for row in rows {
        writer.write_record(row.fields())?;
    }
    writer.flush()?;
    Ok(())
}

pub fn write_rows_to_path(path: &Path, rows: &[CsvRow]) -> CliResult<()> {
    let file = std::fs::File::create(path)?;
    write_rows(std::io::BufWriter::new(file), rows)
}
