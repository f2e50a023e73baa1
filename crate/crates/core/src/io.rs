//! Graph files: one JSON object `{"n": <int>, "chords": [[a, b], ...]}` per
//! non-blank line. `MopGraph::to_json` writes the canonical form of a line.

use std::fs;
use std::io::Write;
use std::path::Path;

use serde::Deserialize;
use thiserror::Error;

use crate::mop::{MopError, MopGraph, Pair};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    Read { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Write { path: String, source: std::io::Error },
    #[error("line {line}: malformed graph object: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: {source}")]
    Invalid { line: usize, source: MopError },
    #[error("no graph found in input")]
    Empty,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphRecord {
    n: usize,
    chords: Vec<[usize; 2]>,
}

/// Parses every non-blank line of `text` as a graph. Line numbers in errors
/// are 1-based.
pub fn parse_graphs(text: &str) -> Result<Vec<MopGraph>, IoError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            continue;
        }
        let rec: GraphRecord =
            serde_json::from_str(trimmed).map_err(|e| IoError::Syntax { line, msg: e.to_string() })?;
        let chords: Vec<Pair> = rec.chords.iter().map(|&[a, b]| (a, b)).collect();
        out.push(MopGraph::new(rec.n, &chords).map_err(|source| IoError::Invalid { line, source })?);
    }
    if out.is_empty() {
        return Err(IoError::Empty);
    }
    Ok(out)
}

pub fn read_graphs(path: &Path) -> Result<Vec<MopGraph>, IoError> {
    let text = fs::read_to_string(path).map_err(|source| IoError::Read { path: path.display().to_string(), source })?;
    parse_graphs(&text)
}

/// The canonical document for a list of graphs, one per line.
pub fn format_graphs<'a>(graphs: impl IntoIterator<Item = &'a MopGraph>) -> String {
    let mut s = String::new();
    for g in graphs {
        s.push_str(&g.to_json());
        s.push('\n');
    }
    s
}

pub fn write_graphs<'a>(path: &Path, graphs: impl IntoIterator<Item = &'a MopGraph>) -> Result<(), IoError> {
    let wrap = |source| IoError::Write { path: path.display().to_string(), source };
    let mut f = fs::File::create(path).map_err(wrap)?;
    f.write_all(format_graphs(graphs).as_bytes()).map_err(wrap)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_several_lines() {
        let gs = parse_graphs("{\"n\":4,\"chords\":[[0,2]]}\n\n{\"n\":3,\"chords\":[]}\n").unwrap();
        assert_eq!(gs.len(), 2);
        assert_eq!(format_graphs(&gs), "{\"n\":4,\"chords\":[[0,2]]}\n{\"n\":3,\"chords\":[]}\n");
    }

    #[test]
    fn unsorted_chords_are_normalized() {
        let g = &parse_graphs("{\"n\":5,\"chords\":[[3,0],[2,0]]}").unwrap()[0];
        assert_eq!(g.to_json(), "{\"n\":5,\"chords\":[[0,2],[0,3]]}");
    }

    #[test]
    fn errors_name_the_line() {
        let err = parse_graphs("{\"n\":3,\"chords\":[]}\n{\"n\":4,\"chords\":[]}").unwrap_err();
        assert!(matches!(err, IoError::Invalid { line: 2, .. }), "{err}");
        let err = parse_graphs("\n\n{\"n\":4,\"chords\":[[0,2]]").unwrap_err();
        assert!(matches!(err, IoError::Syntax { line: 3, .. }), "{err}");
        let err = parse_graphs("{\"n\":4,\"edges\":[]}").unwrap_err();
        assert!(matches!(err, IoError::Syntax { line: 1, .. }));
        assert!(matches!(parse_graphs("  \n"), Err(IoError::Empty)));
    }
}
