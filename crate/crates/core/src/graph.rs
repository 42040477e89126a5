//! Undirected, reflexive synonym graph over lexeme labels.
//!
//! Vertices are numbered in lexicographic label order, so a vertex id
//! comparison is also a label comparison. Every vertex carries a self-loop;
//! loops count towards [`LexicalGraph::degree`] but not towards
//! [`LexicalGraph::edge_count`].

use std::collections::{BTreeSet, VecDeque};
use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::Path;

use crate::error::{Error, Result};
use crate::lexeme::Lexeme;

pub type VertexId = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LexicalGraph {
    labels: Vec<Lexeme>,
    // CSR adjacency; each row sorted, deduplicated, and containing its own id.
    offsets: Vec<usize>,
    targets: Vec<VertexId>,
    edge_count: usize,
}

impl LexicalGraph {
    /// Builds the symmetric, reflexive closure of `edges`.
    pub fn from_edges<I>(edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Lexeme, Lexeme)>,
    {
        let edges: Vec<(Lexeme, Lexeme)> = edges.into_iter().collect();
        let labels: Vec<Lexeme> = edges
            .iter()
            .flat_map(|(a, b)| [a.clone(), b.clone()])
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        if labels.is_empty() {
            return Err(Error::EmptyGraph);
        }
        let id = |lx: &Lexeme| labels.binary_search(lx).expect("label collected above");

        let mut rows: Vec<Vec<VertexId>> = (0..labels.len()).map(|i| vec![i]).collect();
        for (a, b) in &edges {
            let (i, j) = (id(a), id(b));
            if i != j {
                rows[i].push(j);
                rows[j].push(i);
            }
        }
        Ok(Self::from_rows(labels, rows))
    }

    fn from_rows(labels: Vec<Lexeme>, mut rows: Vec<Vec<VertexId>>) -> Self {
        let mut offsets = Vec::with_capacity(rows.len() + 1);
        let mut targets = Vec::new();
        let mut incidences = 0;
        offsets.push(0);
        for row in &mut rows {
            row.sort_unstable();
            row.dedup();
            // every row holds exactly one loop
            incidences += row.len() - 1;
            targets.extend_from_slice(row);
            offsets.push(targets.len());
        }
        LexicalGraph {
            labels,
            offsets,
            targets,
            edge_count: incidences / 2,
        }
    }

    /// Reads a tab-separated edge list. Blank lines and lines starting with
    /// `#` are skipped.
    pub fn load<R: BufRead>(reader: R) -> Result<Self> {
        let mut edges = Vec::new();
        for (idx, line) in reader.lines().enumerate() {
            let line = line?;
            let lineno = idx + 1;
            let line = line.strip_suffix('\r').unwrap_or(&line);
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split('\t').collect();
            if fields.len() != 2 {
                return Err(Error::parse(
                    lineno,
                    format!("expected 2 tab-separated labels, found {}", fields.len()),
                ));
            }
            let a = Lexeme::new(fields[0]).map_err(|e| Error::parse(lineno, e.to_string()))?;
            let b = Lexeme::new(fields[1]).map_err(|e| Error::parse(lineno, e.to_string()))?;
            edges.push((a, b));
        }
        Self::from_edges(edges)
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        Self::load(BufReader::new(File::open(path)?))
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    /// Number of undirected edges between distinct vertices.
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn lexeme(&self, v: VertexId) -> &Lexeme {
        &self.labels[v]
    }

    pub fn lexemes(&self) -> &[Lexeme] {
        &self.labels
    }

    pub fn vertex_id(&self, lexeme: &Lexeme) -> Option<VertexId> {
        self.labels.binary_search(lexeme).ok()
    }

    pub fn lookup(&self, label: &str) -> Option<VertexId> {
        self.labels
            .binary_search_by(|probe| probe.label().cmp(label))
            .ok()
    }

    pub fn require(&self, lexeme: &Lexeme) -> Result<VertexId> {
        self.vertex_id(lexeme)
            .ok_or_else(|| Error::UnknownLexeme(lexeme.label().to_string()))
    }

    pub fn contains(&self, lexeme: &Lexeme) -> bool {
        self.vertex_id(lexeme).is_some()
    }

    /// Neighbours of `v`, sorted, including `v` itself.
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    /// Degree counting the self-loop; always at least 1.
    pub fn degree(&self, v: VertexId) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    /// Degree without the self-loop.
    pub fn proper_degree(&self, v: VertexId) -> usize {
        self.degree(v) - 1
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.neighbors(u).binary_search(&v).is_ok()
    }

    /// Sorted vertex ids of the component containing `v`.
    pub fn component_of(&self, v: VertexId) -> Vec<VertexId> {
        let mut seen = vec![false; self.vertex_count()];
        let mut queue = VecDeque::from([v]);
        let mut members = vec![v];
        seen[v] = true;
        while let Some(u) = queue.pop_front() {
            for &w in self.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    members.push(w);
                    queue.push_back(w);
                }
            }
        }
        members.sort_unstable();
        members
    }

    pub fn components(&self) -> ComponentMap {
        let n = self.vertex_count();
        let mut component = vec![usize::MAX; n];
        let mut sizes = Vec::new();
        for start in 0..n {
            if component[start] != usize::MAX {
                continue;
            }
            // scanning in id order makes `start` the smallest member
            let members = self.component_of(start);
            for &v in &members {
                component[v] = start;
            }
            sizes.push((start, members.len()));
        }
        ComponentMap { component, sizes }
    }

    /// Subgraph induced by the component containing `root`.
    pub fn restrict_to_component(&self, root: &Lexeme) -> Result<LexicalGraph> {
        let r = self.require(root)?;
        Ok(self.induced(&self.component_of(r)))
    }

    /// Subgraph induced by a sorted set of vertex ids.
    pub(crate) fn induced(&self, members: &[VertexId]) -> LexicalGraph {
        if members.len() == self.vertex_count() {
            return self.clone();
        }
        let labels = members.iter().map(|&v| self.labels[v].clone()).collect();
        let rows = members
            .iter()
            .map(|&v| {
                self.neighbors(v)
                    .iter()
                    .filter_map(|w| members.binary_search(w).ok())
                    .collect()
            })
            .collect();
        Self::from_rows(labels, rows)
    }
}

/// Connected components, identified by their smallest vertex id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentMap {
    component: Vec<VertexId>,
    sizes: Vec<(VertexId, usize)>,
}

impl ComponentMap {
    pub fn component_of(&self, v: VertexId) -> VertexId {
        self.component[v]
    }

    /// `(component id, size)` pairs in ascending id order.
    pub fn sizes(&self) -> &[(VertexId, usize)] {
        &self.sizes
    }

    pub fn count(&self) -> usize {
        self.sizes.len()
    }

    /// The largest component; ties go to the smallest id.
    pub fn largest(&self) -> (VertexId, usize) {
        self.sizes
            .iter()
            .copied()
            .max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)))
            .expect("graphs are never empty")
    }

    pub fn members(&self, id: VertexId) -> Vec<VertexId> {
        (0..self.component.len())
            .filter(|&v| self.component[v] == id)
            .collect()
    }
}
