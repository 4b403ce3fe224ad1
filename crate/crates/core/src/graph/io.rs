//! Text formats: TSV edge lists and whitespace-separated dense matrices.

use thiserror::Error;

use super::{validate_edge, Edge, Graph, GraphError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LoadError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: {source}")]
    Invalid {
        line: usize,
        #[source]
        source: GraphError,
    },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

impl LoadError {
    /// 1-based line number the error refers to, if any.
    pub fn line(&self) -> Option<usize> {
        match self {
            LoadError::Parse { line, .. } | LoadError::Invalid { line, .. } => Some(*line),
            LoadError::Graph(_) => None,
        }
    }
}

fn parse_error(line: usize, message: impl Into<String>) -> LoadError {
    LoadError::Parse {
        line,
        message: message.into(),
    }
}

/// Parses a `# nodes=N` header, tolerating whitespace around the tokens.
fn parse_node_header(comment: &str) -> Option<&str> {
    let body = comment.trim_start_matches('#').trim();
    let rest = body.strip_prefix("nodes")?.trim_start();
    Some(rest.strip_prefix('=')?.trim())
}

/// Reads the edge-list format.
///
/// Lines starting with `#` are comments; `# nodes=N` fixes the node count,
/// otherwise it is `1 + max id`. Data lines are `src<TAB>dst[<TAB>weight]`
/// (any run of whitespace is accepted as a separator).
pub fn load_edge_list(text: &str) -> Result<Graph, LoadError> {
    let mut declared: Option<usize> = None;
    let mut edges: Vec<(usize, Edge)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if line.starts_with('#') {
            if let Some(value) = parse_node_header(line) {
                let n = value
                    .parse::<usize>()
                    .map_err(|_| parse_error(line_no, format!("bad node count {value:?}")))?;
                declared = Some(n);
            }
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if !(2..=3).contains(&fields.len()) {
            return Err(parse_error(
                line_no,
                format!("expected 2 or 3 fields, found {}", fields.len()),
            ));
        }
        let id = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| parse_error(line_no, format!("bad node id {s:?}")))
        };
        let source = id(fields[0])?;
        let target = id(fields[1])?;
        let weight = match fields.get(2) {
            Some(w) => w
                .parse::<f64>()
                .map_err(|_| parse_error(line_no, format!("bad weight {w:?}")))?,
            None => 1.0,
        };
        edges.push((line_no, Edge::weighted(source, target, weight)));
    }

    let node_count = declared.unwrap_or_else(|| {
        edges
            .iter()
            .map(|(_, e)| e.source.max(e.target) + 1)
            .max()
            .unwrap_or(0)
    });

    // Re-run the per-edge checks here so failures can carry a line number.
    let mut seen = std::collections::HashSet::new();
    for (line, e) in &edges {
        let err = validate_edge(node_count, e).err().or_else(|| {
            (!seen.insert((e.source, e.target))).then_some(GraphError::DuplicateEdge {
                from: e.source,
                to: e.target,
            })
        });
        if let Some(source) = err {
            return Err(LoadError::Invalid {
                line: *line,
                source,
            });
        }
    }

    Ok(Graph::build(node_count, edges.into_iter().map(|(_, e)| e))?)
}

/// Reads V lines of V whitespace-separated reals. Blank and `#` lines are skipped.
pub fn load_adjacency_matrix(text: &str) -> Result<Graph, LoadError> {
    let mut rows = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let row = line
            .split_whitespace()
            .map(|s| {
                s.parse::<f64>()
                    .map_err(|_| parse_error(idx + 1, format!("bad matrix entry {s:?}")))
            })
            .collect::<Result<Vec<f64>, _>>()?;
        rows.push(row);
    }
    Ok(Graph::from_rows(&rows)?)
}
