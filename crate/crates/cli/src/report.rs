//! Run reports: a deterministic JSON envelope around each command's payload.
//! Wall time goes to stderr so identical command + seed gives byte-identical
//! output.

use std::path::Path;

use anyhow::Result;
use serde::Serialize;
use sha2::{Digest, Sha256};
use ytiling::hypergraph::Hypergraph;
use ytiling::io::write_hg;

#[derive(Debug, Serialize)]
pub struct InstanceDigest {
    pub n: usize,
    pub k: usize,
    pub m: usize,
    /// SHA-256 of the canonical .hg serialization, independent of the input
    /// format.
    pub sha256: String,
}

pub fn digest_of(h: &Hypergraph) -> InstanceDigest {
    let bytes = write_hg(h);
    let mut hasher = Sha256::new();
    hasher.update(bytes.as_bytes());
    InstanceDigest {
        n: h.n(),
        k: h.k(),
        m: h.edge_count(),
        sha256: format!("{:x}", hasher.finalize()),
    }
}

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub instance: Option<InstanceDigest>,
    pub payload: serde_json::Value,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

/// Prints the report to stdout and mirrors the same bytes to `out` if given.
pub fn emit(report: &RunReport, out: Option<&Path>, csv: Option<String>) -> Result<()> {
    let text = match csv {
        Some(table) => table,
        None => report.to_json(),
    };
    print!("{text}");
    if let Some(path) = out {
        std::fs::write(path, &text)?;
    }
    Ok(())
}
