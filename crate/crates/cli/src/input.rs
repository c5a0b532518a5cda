//! Reading graphs from graph6 or JSON files.

use std::io::Read;
use std::path::Path;

use walkspec::graph6::parse_graph6;
use walkspec::{Error, Graph, GraphJson, Result};

/// Graphs in `path` (`-` for stdin): one graph6 line each, or JSON holding
/// one `{n, edges, loops}` object or an array of them. Blank lines and
/// lines starting with `#` are skipped.
pub fn read_graphs(path: &Path) -> Result<Vec<Graph>> {
    let text = if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Error::Io { path: "<stdin>".into(), reason: e.to_string() })?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| Error::Io { path: path.display().to_string(), reason: e.to_string() })?
    };
    parse_graphs(&text)
}

pub fn parse_graphs(text: &str) -> Result<Vec<Graph>> {
    let trimmed = text.trim_start();
    let graphs = if trimmed.starts_with('{') {
        let one: GraphJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        vec![Graph::try_from(&one)?]
    } else if trimmed.starts_with('[') {
        let many: Vec<GraphJson> = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        many.iter().map(Graph::try_from).collect::<Result<_>>()?
    } else {
        text.lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(parse_graph6)
            .collect::<Result<_>>()?
    };
    if graphs.is_empty() {
        return Err(Error::Parse("input contains no graphs".into()));
    }
    Ok(graphs)
}
