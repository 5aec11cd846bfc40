//! Canonical forms for small vertex-colored graphs.
//!
//! A graph on `n <= 16` vertices is encoded as per-vertex adjacency bitmasks.
//! Its canonical form is the lexicographically minimal adjacency bit-string
//! over all color-preserving relabelings, with pair `(i, j)`, `i < j`, placed
//! at bit index `j(j-1)/2 + i` and earlier pairs more significant. The search
//! refines the coloring to an equitable partition first, then backtracks over
//! within-cell labelings with prefix pruning; interchangeable twins are
//! branched only once.

/// Adjacency bitmask per vertex. Limits graphs to 16 vertices, which covers
/// every exhaustive search in this crate.
pub(crate) type AdjMask = u16;

pub(crate) const MAX_VERTICES: usize = 16;

fn pair_bit(base: usize, offset: usize) -> u128 {
    1u128 << (127 - (base + offset))
}

/// Equitable refinement of the initial color classes. Returns the partition
/// as an ordered list of cells; the order is an isomorphism invariant (color
/// first, then neighbor-count signatures), so corresponding cells of
/// isomorphic graphs line up.
fn refine(n: usize, adj: &[AdjMask], colors: &[u8]) -> Vec<Vec<u8>> {
    let mut cells: Vec<Vec<u8>> = Vec::new();
    let mut sorted_colors: Vec<u8> = colors.to_vec();
    sorted_colors.sort_unstable();
    sorted_colors.dedup();
    for c in sorted_colors {
        let cell: Vec<u8> = (0..n as u8).filter(|&v| colors[v as usize] == c).collect();
        cells.push(cell);
    }
    loop {
        let masks: Vec<AdjMask> = cells
            .iter()
            .map(|cell| cell.iter().fold(0, |m, &v| m | (1 << v)))
            .collect();
        let key = |v: u8| -> Vec<u32> {
            masks
                .iter()
                .map(|&m| (adj[v as usize] & m).count_ones())
                .collect()
        };
        let mut next: Vec<Vec<u8>> = Vec::new();
        let mut split = false;
        for cell in &cells {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<u32>, u8)> = cell.iter().map(|&v| (key(v), v)).collect();
            keyed.sort();
            let mut sub: Vec<u8> = vec![keyed[0].1];
            for w in 1..keyed.len() {
                if keyed[w].0 == keyed[w - 1].0 {
                    sub.push(keyed[w].1);
                } else {
                    next.push(std::mem::take(&mut sub));
                    sub = vec![keyed[w].1];
                    split = true;
                }
            }
            next.push(sub);
        }
        cells = next;
        if !split {
            return cells;
        }
    }
}

struct CanonSearch<'a> {
    n: usize,
    adj: &'a [AdjMask],
    pos_cell: Vec<usize>,
    cells: Vec<Vec<u8>>,
    assigned: AdjMask,
    pos_vertex: Vec<u8>,
    best: u128,
    best_perm: Vec<u8>,
    have_best: bool,
}

impl CanonSearch<'_> {
    fn dfs(&mut self, p: usize, prefix: u128, tight: bool) {
        if p == self.n {
            if !self.have_best || !tight {
                self.best = prefix;
                self.best_perm = self.pos_vertex.clone();
                self.have_best = true;
            }
            return;
        }
        let base = p * (p.wrapping_sub(1)) / 2;
        let cell = self.pos_cell[p].min(self.cells.len() - 1);
        let members: Vec<u8> = self.cells[cell].clone();
        let mut tried: Vec<u8> = Vec::new();
        for &u in &members {
            if self.assigned & (1 << u) != 0 {
                continue;
            }
            if tried.iter().any(|&w| self.full_twins(u, w)) {
                continue;
            }
            let mut chunk = 0u128;
            for q in 0..p {
                if self.adj[u as usize] & (1 << self.pos_vertex[q]) != 0 {
                    chunk |= pair_bit(base, q);
                }
            }
            let mut next_tight = tight;
            if self.have_best && tight {
                let mask = if p == 0 {
                    0
                } else {
                    let lo = 128 - base - p;
                    (!0u128 >> (128 - p)) << lo
                };
                let best_chunk = self.best & mask;
                if chunk > best_chunk {
                    tried.push(u);
                    continue;
                }
                next_tight = chunk == best_chunk;
            }
            self.assigned |= 1 << u;
            self.pos_vertex.push(u);
            self.dfs(p + 1, prefix | chunk, next_tight);
            self.pos_vertex.pop();
            self.assigned &= !(1 << u);
            tried.push(u);
        }
    }

    /// Vertices whose swap is an automorphism: identical neighborhoods after
    /// ignoring a possible mutual edge. They live in the same refined cell by
    /// construction, so colors already agree.
    fn full_twins(&self, u: u8, w: u8) -> bool {
        (self.adj[u as usize] & !(1 << w)) == (self.adj[w as usize] & !(1 << u))
    }
}

/// Canonical form of the colored graph and the relabeling that achieves it
/// (`perm[old] = new`).
pub(crate) fn canonical_form(n: usize, adj: &[AdjMask], colors: &[u8]) -> (u128, Vec<u8>) {
    assert!(n <= MAX_VERTICES, "canonical form limited to 16 vertices");
    if n == 0 {
        return (0, Vec::new());
    }
    let cells = refine(n, adj, colors);
    let mut pos_cell = Vec::with_capacity(n);
    for (i, cell) in cells.iter().enumerate() {
        pos_cell.extend(std::iter::repeat_n(i, cell.len()));
    }
    let mut search = CanonSearch {
        n,
        adj,
        pos_cell,
        cells,
        assigned: 0,
        pos_vertex: Vec::with_capacity(n),
        best: 0,
        best_perm: Vec::new(),
        have_best: false,
    };
    search.dfs(0, 0, true);
    let mut perm = vec![0u8; n];
    for (new, &old) in search.best_perm.iter().enumerate() {
        perm[old as usize] = new as u8;
    }
    (search.best, perm)
}

/// Canonical key of an uncolored graph.
#[cfg(test)]
pub(crate) fn canonical_key(n: usize, adj: &[AdjMask]) -> u128 {
    canonical_form(n, adj, &vec![0u8; n]).0
}

/// Edge list relabeled by `perm`, in sorted `(min, max)` order.
pub(crate) fn relabel_edges(edges: &[(u32, u32)], perm: &[u8]) -> Vec<(u32, u32)> {
    let mut out: Vec<(u32, u32)> = edges
        .iter()
        .map(|&(u, v)| {
            let (a, b) = (perm[u as usize] as u32, perm[v as usize] as u32);
            (a.min(b), a.max(b))
        })
        .collect();
    out.sort_unstable();
    out
}

/// Adjacency bitmasks from an edge list.
#[cfg(test)]
pub(crate) fn masks_from_edges(n: usize, edges: &[(u32, u32)]) -> Vec<AdjMask> {
    let mut adj = vec![0 as AdjMask; n];
    for &(u, v) in edges {
        adj[u as usize] |= 1 << v;
        adj[v as usize] |= 1 << u;
    }
    adj
}
