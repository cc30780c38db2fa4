//! Flat report rows, written as CSV or JSON lines.
//!
//! Column order is fixed. `p` is exact (`p_num`, `p_den`); `ratio` and `bound`
//! are decimal renderings of exact values, printed with six places.

use serde::Serialize;

use crate::harness::Verification;
use crate::online::RunReport;
use crate::{rational_to_f64, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Jsonl,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(Format::Csv),
            "jsonl" | "json" => Ok(Format::Jsonl),
            _ => Err(format!("unknown format `{s}` (csv or jsonl)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportRow {
    pub run_id: String,
    pub pattern: String,
    pub strategy: String,
    pub p_num: Option<i64>,
    pub p_den: Option<i64>,
    pub advice_source: String,
    pub m: usize,
    pub deletions: usize,
    pub opt: usize,
    pub e: u64,
    pub d: u64,
    pub ratio: String,
    pub bound: Option<String>,
    /// Empty when no bound applies to the strategy.
    pub pass: Option<bool>,
}

pub fn decimal(r: Rational) -> String {
    format!("{:.6}", rational_to_f64(r))
}

impl ReportRow {
    pub fn new(run_id: impl Into<String>, report: &RunReport, m: usize, verdict: &Verification) -> Self {
        let check = verdict.check();
        ReportRow {
            run_id: run_id.into(),
            pattern: report.pattern.clone(),
            strategy: report.strategy.clone(),
            p_num: report.algp_p.map(|p| *p.numer()),
            p_den: report.algp_p.map(|p| *p.denom()),
            advice_source: report.provenance.to_string(),
            m,
            deletions: report.deletions_total,
            opt: report.opt_cost,
            e: report.final_e,
            d: report.final_d,
            ratio: decimal(report.ratio),
            bound: check.map(|c| decimal(c.bound)),
            pass: check.map(|c| c.pass),
        }
    }
}

/// Serializes rows; CSV includes a header even when `rows` is empty.
pub fn render<T: Serialize>(rows: &[T], format: Format, header: &[&str]) -> String {
    match format {
        Format::Csv => {
            let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
            w.write_record(header).expect("in-memory write");
            for row in rows {
                w.serialize(row).expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv output is UTF-8")
        }
        Format::Jsonl => {
            let mut out = String::new();
            for row in rows {
                out.push_str(&serde_json::to_string(row).expect("plain data"));
                out.push('\n');
            }
            out
        }
    }
}

pub const REPORT_COLUMNS: [&str; 14] = [
    "run_id",
    "pattern",
    "strategy",
    "p_num",
    "p_den",
    "advice_source",
    "m",
    "deletions",
    "opt",
    "e",
    "d",
    "ratio",
    "bound",
    "pass",
];

pub fn render_reports(rows: &[ReportRow], format: Format) -> String {
    render(rows, format, &REPORT_COLUMNS)
}
