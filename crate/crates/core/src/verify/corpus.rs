use std::collections::HashMap;
use std::path::Path;

use crate::error::{Error, Result};
use crate::format::{encode_graph6, parse_graph6};
use crate::graph::Graph;

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    /// 1-based line in the source, or position for in-memory corpora.
    pub line: usize,
    pub graph6: String,
    pub graph: Graph,
}

/// One graph per line in graph6, `#` starts a comment. Every entry is
/// parsed up front so a bad line is reported before any work starts.
#[derive(Clone, Debug)]
pub struct Corpus {
    source: String,
    entries: Vec<CorpusEntry>,
    duplicates: Vec<CorpusEntry>,
}

impl Corpus {
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| {
            Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display())))
        })?;
        Self::parse(path.display().to_string(), &text)
    }

    pub fn parse(source: impl Into<String>, text: &str) -> Result<Self> {
        let mut entries = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let line = line.strip_prefix(">>graph6<<").unwrap_or(line);
            let graph = parse_graph6(line)
                .map_err(|e| Error::Parse(format!("line {}: {e}", i + 1)))?;
            entries.push(CorpusEntry {
                line: i + 1,
                graph6: line.to_string(),
                graph,
            });
        }
        Ok(Self::with_entries(source.into(), entries))
    }

    pub fn from_graphs(source: impl Into<String>, graphs: &[Graph]) -> Result<Self> {
        let entries = graphs
            .iter()
            .enumerate()
            .map(|(i, g)| {
                Ok(CorpusEntry {
                    line: i + 1,
                    graph6: encode_graph6(g)?,
                    graph: g.clone(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::with_entries(source.into(), entries))
    }

    fn with_entries(source: String, entries: Vec<CorpusEntry>) -> Self {
        let mut first: HashMap<&str, usize> = HashMap::new();
        let mut duplicates = Vec::new();
        for e in &entries {
            if first.insert(&e.graph6, e.line).is_some() {
                duplicates.push(e.clone());
            }
        }
        Corpus {
            source,
            entries,
            duplicates,
        }
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn entries(&self) -> &[CorpusEntry] {
        &self.entries
    }

    /// Repeated lines after their first occurrence. They are still checked.
    pub fn duplicates(&self) -> &[CorpusEntry] {
        &self.duplicates
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}
