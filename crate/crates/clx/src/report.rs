//! Machine-readable reports and the flat tabular export.
//!
//! Reports are serialized with a stable field order so that identical
//! scenarios and seeds produce byte-identical files. Output is written
//! atomically (temp file in the target directory, then rename).

use std::path::Path;

use serde::Serialize;

use crate::bornology::StabilityReport;
use crate::convergence::{CellRecord, ClassifyReport, Status};
use crate::error::{Error, Result};

fn status_str(s: Status) -> &'static str {
    match s {
        Status::ConfirmedAtHorizon => "confirmed_at_horizon",
        Status::Refuted => "refuted",
        Status::Inconclusive => "inconclusive",
    }
}

/// One CSV row per cell: mode, probe, eps, status, n0 or witness index,
/// witness point, last deficit.
pub fn cells_to_csv(cells: &[CellRecord]) -> String {
    let mut out = String::from("mode,probe,eps,status,vacuous,n0,witness_n,witness_point,last_deficit\n");
    for c in cells {
        let (wn, wp) = match &c.witness {
            Some(w) => (w.n.to_string(), w.point.to_string().replace(' ', ";")),
            None => (String::new(), String::new()),
        };
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}\n",
            c.mode.name(),
            c.probe_id,
            c.eps,
            status_str(c.status),
            c.vacuous,
            c.n0.map(|v| v.to_string()).unwrap_or_default(),
            wn,
            wp,
            c.trace.last,
        ));
    }
    out
}

/// Serializes any report value as stable pretty JSON.
pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    serde_json::to_string_pretty(value)
        .map_err(|e| Error::InvalidInput(format!("serialization failure: {e}")))
}

/// Atomic write: a sibling temp file followed by a rename.
pub fn write_atomic(path: &Path, content: &str) -> Result<()> {
    let io_err = |source: std::io::Error| Error::Io {
        path: path.display().to_string(),
        source,
    };
    let tmp = path.with_extension("tmp");
    std::fs::write(&tmp, content).map_err(io_err)?;
    std::fs::rename(&tmp, path).map_err(io_err)?;
    Ok(())
}

pub fn write_classify_report(report: &ClassifyReport, json_path: &Path, csv_path: &Path) -> Result<()> {
    write_atomic(json_path, &to_json(report)?)?;
    write_atomic(csv_path, &cells_to_csv(&report.cells))?;
    Ok(())
}

/// The combined output of a stability run: all four checkers.
#[derive(Debug, Clone, Serialize)]
pub struct StabilitySuite {
    pub bornology: String,
    pub seed: u64,
    pub reports: Vec<StabilityReport>,
}

pub fn write_stability_suite(suite: &StabilitySuite, path: &Path) -> Result<()> {
    write_atomic(path, &to_json(suite)?)
}
