//! Plain-text edge lists: one `u v` pair per line, `#` starts a comment.
//! A `# nodes=N` header before the first edge declares the node count, so
//! isolated trailing vertices survive a round trip.

use std::fmt::Write as _;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use super::{Graph, GraphError};

pub fn parse_edge_list<R: BufRead>(reader: R) -> Result<Graph, GraphError> {
    let mut declared: Option<usize> = None;
    let mut edges = Vec::new();
    let mut max_id: Option<usize> = None;
    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line.map_err(|e| GraphError::Io(e.to_string()))?;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(comment) = trimmed.strip_prefix('#') {
            if edges.is_empty() {
                if let Some(value) = comment.trim().strip_prefix("nodes=") {
                    let n = value.trim().parse::<usize>().map_err(|e| GraphError::Parse {
                        line: line_no,
                        message: format!("bad node count: {e}"),
                    })?;
                    declared = Some(n);
                }
            }
            continue;
        }
        let mut fields = trimmed.split_whitespace();
        let mut next_id = || -> Result<usize, GraphError> {
            let tok = fields.next().ok_or_else(|| GraphError::Parse {
                line: line_no,
                message: "expected two node IDs".into(),
            })?;
            tok.parse::<usize>().map_err(|e| GraphError::Parse {
                line: line_no,
                message: format!("bad node ID {tok:?}: {e}"),
            })
        };
        let u = next_id()?;
        let v = next_id()?;
        if fields.next().is_some() {
            return Err(GraphError::Parse { line: line_no, message: "trailing fields".into() });
        }
        max_id = Some(max_id.map_or(u.max(v), |m: usize| m.max(u).max(v)));
        edges.push((u, v));
    }
    let n = declared.unwrap_or_else(|| max_id.map_or(0, |m| m + 1));
    Graph::from_edges(n, &edges)
}

pub fn read_edge_list(path: &Path) -> Result<Graph, GraphError> {
    let file = std::fs::File::open(path).map_err(|e| GraphError::Io(format!("{}: {e}", path.display())))?;
    parse_edge_list(BufReader::new(file))
}

/// Canonical text form: node header, then every edge once with `u < v`.
pub fn format_edge_list(g: &Graph) -> String {
    let mut out = String::with_capacity(16 + 12 * g.edge_count());
    let _ = writeln!(out, "# nodes={}", g.node_count());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

pub fn write_edge_list(g: &Graph, path: &Path) -> Result<(), GraphError> {
    let io = |e: std::io::Error| GraphError::Io(format!("{}: {e}", path.display()));
    let file = std::fs::File::create(path).map_err(io)?;
    let mut w = BufWriter::new(file);
    writeln!(w, "# nodes={}", g.node_count()).map_err(io)?;
    for (u, v) in g.edges() {
        writeln!(w, "{u} {v}").map_err(io)?;
    }
    w.flush().map_err(io)
}
