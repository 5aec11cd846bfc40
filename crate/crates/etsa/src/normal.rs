//! Normal graphs: ETSs with satisfied checks contracted to edges.

use serde::{Deserialize, Serialize};

use crate::types::EtsSignature;
use crate::{Error, Result};

/// The normal graph of an elementary trapping set: a simple graph on `n`
/// vertices together with each vertex's degree in the code. For a
/// variable-regular code all `code_degrees` equal the column weight.
///
/// Vertices are `0..n`. Edges are stored as `(min, max)` pairs in sorted
/// order, so equal graphs serialize identically. The deficiency
/// `sum(code_degree(v) - degree(v))` is the signature's `b`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NormalGraph {
    n: usize,
    edges: Vec<(u32, u32)>,
    code_degrees: Vec<u32>,
}

/// Outcome of [`NormalGraph::validate`]. A violation names the first failed
/// invariant in lowest vertex/edge index order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Validation {
    Ok,
    Violation(String),
}

impl Validation {
    pub fn is_ok(&self) -> bool {
        matches!(self, Validation::Ok)
    }
}

impl NormalGraph {
    /// Builds a graph from raw parts. Edge endpoints are normalized to
    /// `(min, max)` and the list is sorted, but duplicates and self-loops are
    /// kept so that [`validate`](Self::validate) can report them.
    pub fn new(n: usize, edges: &[(u32, u32)], code_degrees: Vec<u32>) -> Self {
        let mut edges: Vec<(u32, u32)> = edges
            .iter()
            .map(|&(u, v)| (u.min(v), u.max(v)))
            .collect();
        edges.sort_unstable();
        NormalGraph {
            n,
            edges,
            code_degrees,
        }
    }

    /// A variable-regular graph: every code degree equals `gamma`.
    pub fn regular(n: usize, edges: &[(u32, u32)], gamma: u32) -> Self {
        Self::new(n, edges, vec![gamma; n])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn code_degrees(&self) -> &[u32] {
        &self.code_degrees
    }

    pub fn degree(&self, v: u32) -> u32 {
        self.edges
            .iter()
            .filter(|&&(a, b)| a == v || b == v)
            .count() as u32
    }

    pub fn degrees(&self) -> Vec<u32> {
        let mut deg = vec![0u32; self.n];
        for &(u, v) in &self.edges {
            deg[u as usize] += 1;
            deg[v as usize] += 1;
        }
        deg
    }

    /// Total deficiency `sum(code_degrees) - 2|E|`, the signature's `b`.
    pub fn deficiency(&self) -> u32 {
        let total: u32 = self.code_degrees.iter().sum();
        total - 2 * self.edges.len() as u32
    }

    pub fn signature(&self) -> EtsSignature {
        EtsSignature {
            a: self.n as u32,
            b: self.deficiency(),
        }
    }

    /// Checks all structural invariants, reporting the first violation in
    /// deterministic order: edge list first (index range, self-loop,
    /// duplicate), then per-vertex degree caps.
    pub fn validate(&self) -> Validation {
        if self.code_degrees.len() != self.n {
            return Validation::Violation(format!(
                "code_degrees has {} entries for {} vertices",
                self.code_degrees.len(),
                self.n
            ));
        }
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            if u as usize >= self.n || v as usize >= self.n {
                return Validation::Violation(format!("edge ({u},{v}): vertex out of range"));
            }
            if u == v {
                return Validation::Violation(format!("edge ({u},{v}): self-loop"));
            }
            if i > 0 && self.edges[i - 1] == (u, v) {
                return Validation::Violation(format!("duplicate edge ({u},{v})"));
            }
        }
        for (v, (deg, code)) in self.degrees().iter().zip(&self.code_degrees).enumerate() {
            if deg > code {
                return Validation::Violation(format!(
                    "vertex {v}: degree {deg} exceeds code degree {code}"
                ));
            }
        }
        Validation::Ok
    }

    pub fn validated(self) -> Result<Self> {
        match self.validate() {
            Validation::Ok => Ok(self),
            Validation::Violation(msg) => Err(Error::InvalidInput(msg)),
        }
    }

    pub fn adjacency(&self) -> Vec<Vec<u32>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u as usize].push(v);
            adj[v as usize].push(u);
        }
        for row in &mut adj {
            row.sort_unstable();
        }
        adj
    }

    /// Girth of the graph, or `None` for a forest. Breadth-first search from
    /// every vertex; this is the shortest-cycle finder the exhaustive
    /// searches are checked against.
    pub fn girth(&self) -> Option<u32> {
        let adj = self.adjacency();
        let mut best: Option<u32> = None;
        for start in 0..self.n {
            let mut dist = vec![u32::MAX; self.n];
            let mut parent = vec![usize::MAX; self.n];
            let mut queue = std::collections::VecDeque::new();
            dist[start] = 0;
            queue.push_back(start);
            while let Some(u) = queue.pop_front() {
                for &w in &adj[u] {
                    let w = w as usize;
                    if dist[w] == u32::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push_back(w);
                    } else if parent[u] != w {
                        // Closed walk through `start`; the shortest such walk
                        // over all starts is the girth.
                        let cycle = dist[u] + dist[w] + 1;
                        if best.is_none_or(|b| cycle < b) {
                            best = Some(cycle);
                        }
                    }
                }
            }
        }
        best
    }

    /// Whether the graph is connected (true for `n == 1`).
    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let adj = self.adjacency();
        let mut seen = vec![false; self.n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &w in &adj[u] {
                let w = w as usize;
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n
    }

    /// DOT serialization: every vertex declared, one undirected edge per line.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph {\n");
        for v in 0..self.n {
            out.push_str(&format!("  v{v};\n"));
        }
        for &(u, v) in &self.edges {
            out.push_str(&format!("  v{u} -- v{v};\n"));
        }
        out.push_str("}\n");
        out
    }

    /// JSON serialization: `{"n": .., "edges": [[i,j],..], "code_degrees": [..]}`.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("normal graph serializes")
    }
}
