//! Simply-laced graphs without loops or multiple edges and the symmetric
//! bilinear form `i.j` they define.

use std::collections::{BTreeSet, HashMap};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{KlrError, Result};

/// Index of a vertex in [`CartanGraph::vertices`]. Vertices are stored in
/// lexicographic order of their names, so comparing indices compares names.
pub type Vertex = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanGraph {
    names: Vec<String>,
    index: HashMap<String, Vertex>,
    adjacent: Vec<Vec<bool>>,
}

#[derive(Serialize, Deserialize)]
struct GraphFile {
    vertices: Vec<String>,
    edges: Vec<[String; 2]>,
}

impl CartanGraph {
    pub fn new<S: AsRef<str>>(vertices: &[S], edges: &[(S, S)]) -> Result<Self> {
        let mut names: Vec<String> = vertices.iter().map(|v| v.as_ref().to_string()).collect();
        names.sort();
        for pair in names.windows(2) {
            if pair[0] == pair[1] {
                return Err(KlrError::InvalidGraph(format!("duplicate vertex `{}`", pair[0])));
            }
        }
        if let Some(bad) = names.iter().find(|n| n.is_empty() || n.chars().any(|c| "^(),:[] \t\n".contains(c))) {
            return Err(KlrError::InvalidGraph(format!("vertex name `{bad}` is empty or contains a reserved character")));
        }
        let index: HashMap<String, Vertex> = names.iter().enumerate().map(|(k, n)| (n.clone(), k)).collect();
        let n = names.len();
        let mut adjacent = vec![vec![false; n]; n];
        let mut seen = BTreeSet::new();
        for (a, b) in edges {
            let (a, b) = (a.as_ref(), b.as_ref());
            let ia = *index.get(a).ok_or_else(|| KlrError::InvalidGraph(format!("edge endpoint `{a}` is not a vertex")))?;
            let ib = *index.get(b).ok_or_else(|| KlrError::InvalidGraph(format!("edge endpoint `{b}` is not a vertex")))?;
            if ia == ib {
                return Err(KlrError::InvalidGraph(format!("loop at vertex `{a}`")));
            }
            if !seen.insert((ia.min(ib), ia.max(ib))) {
                return Err(KlrError::InvalidGraph(format!("duplicate edge `{a}`-`{b}`")));
            }
            adjacent[ia][ib] = true;
            adjacent[ib][ia] = true;
        }
        Ok(Self { names, index, adjacent })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: GraphFile = serde_json::from_str(text).map_err(|e| KlrError::Parse(e.to_string()))?;
        let edges: Vec<(String, String)> = file.edges.into_iter().map(|[a, b]| (a, b)).collect();
        Self::new(&file.vertices, &edges)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| KlrError::Parse(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        let file = GraphFile { vertices: self.names.clone(), edges: self.edges().map(|(a, b)| [self.names[a].clone(), self.names[b].clone()]).collect() };
        serde_json::to_string(&file).expect("graph serializes")
    }

    /// Single vertex `i`.
    pub fn a1() -> Self {
        Self::new(&["i"], &[]).unwrap()
    }

    /// `i - j`.
    pub fn a2() -> Self {
        Self::new(&["i", "j"], &[("i", "j")]).unwrap()
    }

    /// Two isolated vertices `i`, `j`.
    pub fn a1xa1() -> Self {
        Self::new(&["i", "j"], &[]).unwrap()
    }

    /// `i - j` plus an isolated vertex `k`.
    pub fn a2xa1() -> Self {
        Self::new(&["i", "j", "k"], &[("i", "j")]).unwrap()
    }

    /// The `n`-cycle on vertices `1, ..., n`.
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(KlrError::InvalidArgument(format!("a cycle needs at least 3 vertices, got {n}")));
        }
        let names: Vec<String> = (1..=n).map(|k| k.to_string()).collect();
        let edges: Vec<(String, String)> = (0..n).map(|k| (names[k].clone(), names[(k + 1) % n].clone())).collect();
        Self::new(&names, &edges)
    }

    pub fn num_vertices(&self) -> usize {
        self.names.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        0..self.names.len()
    }

    pub fn name(&self, v: Vertex) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn vertex(&self, name: &str) -> Result<Vertex> {
        self.index.get(name).copied().ok_or_else(|| KlrError::UnknownVertex(name.to_string()))
    }

    /// Edges as `(a, b)` with `a < b`.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.vertices().flat_map(move |a| ((a + 1)..self.names.len()).filter(move |&b| self.adjacent[a][b]).map(move |b| (a, b)))
    }

    pub fn is_edge(&self, a: Vertex, b: Vertex) -> bool {
        self.adjacent[a][b]
    }

    /// `i.j`: 2 on the diagonal, -1 for an edge, 0 otherwise.
    pub fn cartan(&self, i: Vertex, j: Vertex) -> i64 {
        if i == j {
            2
        } else if self.adjacent[i][j] {
            -1
        } else {
            0
        }
    }

    /// [`cartan`](Self::cartan) on vertex names.
    pub fn cartan_by_name(&self, i: &str, j: &str) -> Result<i64> {
        Ok(self.cartan(self.vertex(i)?, self.vertex(j)?))
    }

    /// True if every vertex name is a single character, so sequences can be
    /// written without separators.
    pub fn compact_names(&self) -> bool {
        self.names.iter().all(|n| n.chars().count() == 1)
    }

    /// Reads one vertex name at the start of `s` (longest match).
    pub(crate) fn lex_vertex<'s>(&self, s: &'s str) -> Option<(Vertex, &'s str)> {
        self.names
            .iter()
            .enumerate()
            .filter(|(_, n)| s.starts_with(n.as_str()))
            .max_by_key(|(_, n)| n.len())
            .map(|(v, n)| (v, &s[n.len()..]))
    }
}
