//! On-disk formats: the `.hg` text format and its JSON mirror.
//!
//! `.hg` layout: a header line `n k m`, then m lines of k strictly increasing
//! vertex ids. `#` starts a comment. Writing a parsed graph reproduces the
//! bytes exactly once the edge list is canonical.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hypergraph::{Hypergraph, HypergraphError};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("edge line {line} is not strictly increasing")]
    NotIncreasing { line: usize },
    #[error("expected {expected} edge lines, found {found}")]
    EdgeCountMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Graph(#[from] HypergraphError),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    File(#[from] std::io::Error),
    #[error("unknown instance format for {0:?} (expected .hg or .json)")]
    UnknownFormat(std::path::PathBuf),
}

pub fn write_hg(h: &Hypergraph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {} {}", h.n(), h.k(), h.edge_count());
    for e in h.edges() {
        let words: Vec<String> = e.iter().map(|v| v.to_string()).collect();
        let _ = writeln!(out, "{}", words.join(" "));
    }
    out
}

pub fn parse_hg(text: &str) -> Result<Hypergraph, IoError> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut edges: Vec<Vec<usize>> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let nums: Result<Vec<usize>, _> = line.split_whitespace().map(str::parse).collect();
        let nums = nums.map_err(|e| IoError::Parse { line: lineno + 1, msg: e.to_string() })?;
        match header {
            None => {
                if nums.len() != 3 {
                    return Err(IoError::Parse {
                        line: lineno + 1,
                        msg: format!("header needs `n k m`, got {} fields", nums.len()),
                    });
                }
                header = Some((nums[0], nums[1], nums[2]));
            }
            Some((_, k, _)) => {
                if nums.len() != k {
                    return Err(IoError::Parse {
                        line: lineno + 1,
                        msg: format!("edge has {} ids, expected {}", nums.len(), k),
                    });
                }
                if nums.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(IoError::NotIncreasing { line: lineno + 1 });
                }
                edges.push(nums);
            }
        }
    }
    let (n, k, m) =
        header.ok_or(IoError::Parse { line: 0, msg: "empty input, missing header".into() })?;
    if edges.len() != m {
        return Err(IoError::EdgeCountMismatch { expected: m, found: edges.len() });
    }
    Ok(Hypergraph::build(n, k, edges)?)
}

#[derive(Debug, Serialize, Deserialize)]
struct JsonGraph {
    n: usize,
    k: usize,
    edges: Vec<Vec<usize>>,
}

pub fn write_json(h: &Hypergraph) -> String {
    let g = JsonGraph { n: h.n(), k: h.k(), edges: h.edges().to_vec() };
    let mut s = serde_json::to_string_pretty(&g).expect("graph serialization cannot fail");
    s.push('\n');
    s
}

pub fn parse_json(text: &str) -> Result<Hypergraph, IoError> {
    let g: JsonGraph = serde_json::from_str(text)?;
    Ok(Hypergraph::build(g.n, g.k, g.edges)?)
}

/// Dispatches on the file extension: `.hg` text or `.json`.
pub fn read_path(path: &Path) -> Result<Hypergraph, IoError> {
    let text = std::fs::read_to_string(path)?;
    match path.extension().and_then(|e| e.to_str()) {
        Some("hg") => parse_hg(&text),
        Some("json") => parse_json(&text),
        _ => Err(IoError::UnknownFormat(path.to_path_buf())),
    }
}

pub fn write_path(path: &Path, h: &Hypergraph) -> Result<(), IoError> {
    let text = match path.extension().and_then(|e| e.to_str()) {
        Some("hg") => write_hg(h),
        Some("json") => write_json(h),
        _ => return Err(IoError::UnknownFormat(path.to_path_buf())),
    };
    std::fs::write(path, text)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::gen_random;

    #[test]
    fn hg_round_trip_is_byte_stable() {
        let h = gen_random(10, 3, 0.4, 99).unwrap();
        let once = write_hg(&h);
        let again = write_hg(&parse_hg(&once).unwrap());
        assert_eq!(once, again);
    }

    #[test]
    fn hg_comments_and_blank_lines() {
        let text = "# a graph\n4 3 2\n0 1 2 # first\n\n0 1 3\n";
        let h = parse_hg(text).unwrap();
        assert_eq!(h.edge_count(), 2);
    }

    #[test]
    fn hg_rejects_malformed() {
        assert!(parse_hg("4 3 1\n0 1\n").is_err());
        assert!(parse_hg("4 3 1\n2 1 0\n").is_err());
        assert!(parse_hg("4 3 2\n0 1 2\n").is_err());
        assert!(parse_hg("").is_err());
    }

    #[test]
    fn json_mirror_round_trip() {
        let h = gen_random(8, 3, 0.5, 5).unwrap();
        let s = write_json(&h);
        assert_eq!(parse_json(&s).unwrap(), h);
    }
}
