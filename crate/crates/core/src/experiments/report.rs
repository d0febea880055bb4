//! CSV, JSON and gnuplot output for sweeps.

use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{ExperimentSpec, ProbabilityRule, SummaryRow, TrialRecord, DEFAULT_MULTIPLIER};
use crate::error::{Error, Result};
use crate::matrix_analysis::{compute_m, satisfies_star};

pub const CSV_HEADER: [&str; 12] =
    ["system_id", "n", "p", "seed", "board_size", "edges", "components", "max_component", "bicycle", "winner", "certificate", "millis"];

fn io(e: impl std::fmt::Display) -> Error {
    Error::Io(e.to_string())
}

fn csv_row(r: &TrialRecord) -> [String; 12] {
    [
        r.system_id.clone(),
        r.n.to_string(),
        r.p.to_string(),
        r.seed.to_string(),
        r.board_size.to_string(),
        r.edges.to_string(),
        r.components.to_string(),
        r.max_component.to_string(),
        r.bicycle.map_or("unknown".into(), |b| b.to_string()),
        r.winner.map_or("unknown".into(), |w| w.name().into()),
        r.certificate.clone(),
        r.millis.to_string(),
    ]
}

pub fn write_csv_to<W: Write>(records: &[TrialRecord], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER).map_err(io)?;
    for r in records {
        w.write_record(csv_row(r)).map_err(io)?;
    }
    w.flush().map_err(io)
}

pub fn write_csv(records: &[TrialRecord], path: &Path) -> Result<()> {
    let f = std::fs::File::create(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    write_csv_to(records, std::io::BufWriter::new(f))
}

/// Rows of a CSV report, header excluded.
pub fn read_csv_rows(text: &str) -> Result<Vec<Vec<String>>> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let header: Vec<String> = r.headers().map_err(io)?.iter().map(str::to_owned).collect();
    if header != CSV_HEADER {
        return Err(Error::Parse { line: 1, message: format!("unexpected header {header:?}") });
    }
    r.records().map(|row| row.map(|x| x.iter().map(str::to_owned).collect()).map_err(io)).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportMetadata {
    pub system_id: String,
    pub system: String,
    pub k: usize,
    /// `m(A)` as a fraction, when (*) holds.
    pub m: Option<String>,
    pub rule: ProbabilityRule,
    pub exponent: f64,
    pub n_values: Vec<u32>,
    pub trials: usize,
    pub seed: u64,
    pub default_multiplier: f64,
    /// `1/(k e^2)`, the multiplier below which the probabilistic argument applies.
    pub proof_constant: f64,
}

impl ReportMetadata {
    pub fn for_spec(spec: &ExperimentSpec) -> Self {
        let k = spec.system.cols();
        let m = if satisfies_star(&spec.system) { compute_m(&spec.system).ok().map(|m| m.value.to_string()) } else { None };
        Self {
            system_id: spec.system_id.clone(),
            system: spec.system.to_string(),
            k,
            m,
            rule: spec.rule.clone(),
            exponent: spec.exponent,
            n_values: spec.n_values.clone(),
            trials: spec.trials,
            seed: spec.seed,
            default_multiplier: DEFAULT_MULTIPLIER,
            proof_constant: 1.0 / (k as f64 * std::f64::consts::E.powi(2)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub metadata: ReportMetadata,
    pub records: Vec<TrialRecord>,
}

pub fn write_json_to<W: Write>(report: &Report, out: W) -> Result<()> {
    serde_json::to_writer_pretty(out, report).map_err(io)
}

pub fn write_json(report: &Report, path: &Path) -> Result<()> {
    let f = std::fs::File::create(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let mut w = std::io::BufWriter::new(f);
    write_json_to(report, &mut w)?;
    w.flush().map_err(io)
}

pub fn read_json(text: &str) -> Result<Report> {
    serde_json::from_str(text).map_err(|e| Error::Parse { line: e.line(), message: e.to_string() })
}

/// One gnuplot data block per `n`, separated by two blank lines so `index` selects them.
pub fn gnuplot_table(summary: &[SummaryRow]) -> String {
    let mut out = String::new();
    let mut ns: Vec<u32> = summary.iter().map(|r| r.n).collect();
    ns.dedup();
    for (i, n) in ns.into_iter().enumerate() {
        if i > 0 {
            out.push_str("\n\n");
        }
        out.push_str(&format!("# n = {n}\n# p maker_freq breaker_freq unknown_freq\n"));
        for r in summary.iter().filter(|r| r.n == n) {
            out.push_str(&format!("{} {} {} {}\n", r.p, r.maker_freq(), r.breaker_freq(), r.unknown_freq()));
        }
    }
    out
}
