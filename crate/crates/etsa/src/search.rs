//! Exhaustive generation of girth-constrained graphs.
//!
//! Graphs are grown one vertex at a time; vertex `k` picks a neighborhood
//! among vertices `0..k`. A neighborhood is admissible when its members are
//! pairwise at distance `>= min_girth - 2`, which keeps the girth invariant
//! incrementally: every cycle through the new vertex has length at least
//! `2 + (min_girth - 2)`.
//!
//! The search certifies its answers: a "not found" or a maximum is reported
//! only after the pruned tree is exhausted. Pruning is by
//!
//! - per-level isomorphism rejection (canonical forms of the partial graph,
//!   respecting degree-cap classes),
//! - an admissible upper bound on the edges the remaining vertices can add
//!   (degree caps, two-packing growth for girth >= 5, degree-slack sum),
//! - for girth >= 5, the neighborhood degree-sum identity: in any such graph
//!   `sum of deg(z) over z in N(v)` cannot exceed `n - 1`,
//! - a lower bound on every final degree derived from the known maximum
//!   edge count on one vertex fewer (`E - deg(v) <= max(n-1)`).

use std::collections::HashSet;

use crate::canon::{canonical_form, relabel_edges, AdjMask, MAX_VERTICES};
use crate::{BudgetMeter, Result};

/// Parameters of one exhaustive run.
#[derive(Debug, Clone)]
pub(crate) struct SearchSpec {
    pub n: usize,
    /// Minimum girth; 3 means "simple graph, cycles unrestricted".
    pub min_girth: u32,
    /// Per-vertex degree caps, sorted descending. Vertices with equal caps
    /// are interchangeable; the cap classes double as canonical-form colors.
    pub caps: Vec<u32>,
    /// Inclusive window of acceptable total edge counts.
    pub lo: u32,
    pub hi: u32,
    pub connected: bool,
    /// Require some vertex to reach its cap exactly.
    pub require_saturated: bool,
    /// Upper bound on the edge count of any admissible graph on `n - 1`
    /// vertices (same girth, cap ceiling). Enables the degree lower-bound
    /// prune when known.
    pub prev_max_edges: Option<u32>,
}

/// A graph found by the search, in canonical labeling. The relabeling
/// preserves cap classes, so `caps[i]` still caps vertex `i`.
#[derive(Debug, Clone)]
pub(crate) struct FoundGraph {
    pub edges: Vec<(u32, u32)>,
}

enum Goal {
    FindOne,
    Maximize { stop_at: Option<u32> },
}

/// Finds one graph meeting the spec, or certifies that none exists.
pub(crate) fn find_one(spec: &SearchSpec, meter: &mut BudgetMeter) -> Result<Option<FoundGraph>> {
    let mut engine = Engine::new(spec, Goal::FindOne, meter);
    engine.run()?;
    Ok(engine.found)
}

/// Certified maximum edge count within the spec's window, with a witness in
/// minimal canonical form among the maximizers. When the incumbent reaches
/// `stop_at` (a bound the caller has certified) the search stops at that
/// first maximizer instead of enumerating its ties.
/// `None` when even the empty graph is ruled out by the spec.
pub(crate) fn maximize(
    spec: &SearchSpec,
    stop_at: Option<u32>,
    meter: &mut BudgetMeter,
) -> Result<Option<(u32, FoundGraph)>> {
    let mut engine = Engine::new(spec, Goal::Maximize { stop_at }, meter);
    engine.run()?;
    Ok(engine.best.map(|value| {
        (
            value,
            FoundGraph {
                edges: engine.best_edges,
            },
        )
    }))
}

const INF_DIST: u8 = u8::MAX;

struct Engine<'a> {
    spec: &'a SearchSpec,
    colors: Vec<u8>,
    goal: Goal,
    meter: &'a mut BudgetMeter,
    adj: Vec<AdjMask>,
    deg: Vec<u32>,
    edges: Vec<(u32, u32)>,
    seen: Vec<HashSet<u128>>,
    found: Option<FoundGraph>,
    best: Option<u32>,
    best_key: u128,
    best_edges: Vec<(u32, u32)>,
    stopped: bool,
}

impl<'a> Engine<'a> {
    fn new(spec: &'a SearchSpec, goal: Goal, meter: &'a mut BudgetMeter) -> Self {
        assert!(spec.n >= 1 && spec.n <= MAX_VERTICES);
        assert!(spec.min_girth >= 3);
        assert_eq!(spec.caps.len(), spec.n);
        assert!(
            spec.caps.windows(2).all(|w| w[0] >= w[1]),
            "caps must be sorted descending"
        );
        let mut colors = vec![0u8; spec.n];
        for v in 1..spec.n {
            colors[v] = if spec.caps[v] == spec.caps[v - 1] {
                colors[v - 1]
            } else {
                colors[v - 1] + 1
            };
        }
        Engine {
            spec,
            colors,
            goal,
            meter,
            adj: vec![0; spec.n],
            deg: vec![0; spec.n],
            edges: Vec::new(),
            seen: (0..=spec.n).map(|_| HashSet::new()).collect(),
            found: None,
            best: None,
            best_key: 0,
            best_edges: Vec::new(),
            stopped: false,
        }
    }

    fn run(&mut self) -> Result<()> {
        if self.spec.lo > self.spec.hi {
            return Ok(());
        }
        self.place(0)
    }

    /// Floor on the edge count still worth pursuing.
    fn edge_floor(&self) -> u32 {
        match self.goal {
            Goal::FindOne => self.spec.lo,
            // Ties with the incumbent are kept so every maximizer is seen.
            Goal::Maximize { .. } => self.best.unwrap_or(0),
        }
    }

    /// Lower bound on every final vertex degree, from the removal argument.
    fn min_final_degree(&self) -> u32 {
        match self.spec.prev_max_edges {
            Some(prev) => self.edge_floor().saturating_sub(prev),
            None => 0,
        }
    }

    /// For girth >= 5 the neighbor degree sum caps the maximum degree once a
    /// global degree floor is known.
    fn girth5_degree_cap(&self) -> u32 {
        let dmin = self.min_final_degree();
        if self.spec.min_girth >= 5 && dmin >= 1 {
            ((self.spec.n as u32) - 1) / dmin
        } else {
            u32::MAX
        }
    }

    fn effective_cap(&self, j: usize) -> u32 {
        self.spec.caps[j]
            .min(j as u32)
            .min(self.girth5_degree_cap())
    }

    /// Admissible bound on edges added by vertices `k..n`, given the packing
    /// bound of the current `k`-vertex graph.
    fn future_max(&self, k: usize, packing: u32) -> u32 {
        let n = self.spec.n;
        let g5cap = self.girth5_degree_cap();
        let mut by_caps = 0u32;
        for j in k..n {
            let mut cap = self.effective_cap(j);
            if self.spec.min_girth >= 5 {
                cap = cap.min(packing + (j - k) as u32);
            }
            by_caps += cap;
        }
        // Each future edge consumes two degree slots across the whole graph.
        // Future vertices contribute their full degree capacity here, not
        // their placement-time capacity: later vertices keep raising their
        // degrees.
        let old_slack: u32 = (0..k)
            .map(|v| self.spec.caps[v].min(g5cap).saturating_sub(self.deg[v]))
            .sum();
        let new_slack: u32 = (k..n).map(|j| self.spec.caps[j].min(g5cap)).sum();
        by_caps.min((old_slack + new_slack) / 2)
    }

    fn distances(&self, k: usize) -> Vec<Vec<u8>> {
        let mut dist = vec![vec![INF_DIST; k]; k];
        for (s, row) in dist.iter_mut().enumerate() {
            row[s] = 0;
            let mut frontier: AdjMask = 1 << s;
            let mut visited = frontier;
            let mut d = 0u8;
            while frontier != 0 {
                d += 1;
                let mut next: AdjMask = 0;
                let mut f = frontier;
                while f != 0 {
                    let v = f.trailing_zeros() as usize;
                    f &= f - 1;
                    next |= self.adj[v];
                }
                next &= !visited;
                visited |= next;
                let mut m = next;
                while m != 0 {
                    let v = m.trailing_zeros() as usize;
                    m &= m - 1;
                    row[v] = d;
                }
                frontier = next;
            }
        }
        dist
    }

    /// Exact maximum two-packing (independent set of the square graph) of
    /// the current `k`-vertex graph; used only for girth >= 5.
    fn max_two_packing(&self, k: usize) -> u32 {
        let mut sq = vec![0 as AdjMask; k];
        for (v, entry) in sq.iter_mut().enumerate() {
            let mut m = self.adj[v];
            let mut acc = self.adj[v];
            while m != 0 {
                let u = m.trailing_zeros() as usize;
                m &= m - 1;
                acc |= self.adj[u];
            }
            *entry = acc & !(1 << v);
        }
        let alive: AdjMask = if k == MAX_VERTICES {
            !0
        } else {
            (1 << k) - 1
        };
        mis(&sq, alive)
    }

    fn components(&self, k: usize) -> u32 {
        let mut seen: AdjMask = 0;
        let mut comps = 0;
        for v in 0..k {
            if seen & (1 << v) != 0 {
                continue;
            }
            comps += 1;
            let mut stack = vec![v];
            seen |= 1 << v;
            while let Some(u) = stack.pop() {
                let mut m = self.adj[u] & !seen;
                while m != 0 {
                    let w = m.trailing_zeros() as usize;
                    m &= m - 1;
                    seen |= 1 << w;
                    stack.push(w);
                }
            }
        }
        comps
    }

    /// Decide vertex `k`'s neighborhood and recurse. `k == n` is handled in
    /// `child` when the last vertex is placed.
    fn place(&mut self, k: usize) -> Result<()> {
        if self.stopped {
            return Ok(());
        }
        let dist = if self.spec.min_girth >= 4 && k >= 2 {
            Some(self.distances(k))
        } else {
            None
        };
        // Low-degree-first ordering steers the greedy first descent toward
        // balanced dense graphs.
        let mut cands: Vec<u8> = (0..k as u8)
            .filter(|&u| self.deg[u as usize] < self.spec.caps[u as usize])
            .collect();
        cands.sort_by_key(|&u| (self.deg[u as usize], u));
        let future_static: u32 = (k + 1..self.spec.n).map(|j| self.effective_cap(j)).sum();
        let mut chosen: Vec<u8> = Vec::new();
        self.subsets(k, &cands, 0, &mut chosen, &dist, future_static)
    }

    #[allow(clippy::too_many_arguments)]
    fn subsets(
        &mut self,
        k: usize,
        cands: &[u8],
        idx: usize,
        chosen: &mut Vec<u8>,
        dist: &Option<Vec<Vec<u8>>>,
        future_static: u32,
    ) -> Result<()> {
        if self.stopped {
            return Ok(());
        }
        // Even taking every remaining candidate cannot reach the floor.
        let optimistic = self.edges.len() as u32
            + (chosen.len() + (cands.len() - idx)).min(self.spec.caps[k] as usize) as u32
            + future_static;
        if optimistic < self.edge_floor() {
            return Ok(());
        }
        if idx == cands.len() {
            return self.child(k, chosen.clone());
        }
        let c = cands[idx];
        let compatible = chosen.len() < self.spec.caps[k] as usize
            && chosen.iter().all(|&u| match dist {
                Some(d) => d[c as usize][u as usize] >= (self.spec.min_girth - 2) as u8,
                None => true,
            });
        if compatible {
            chosen.push(c);
            self.subsets(k, cands, idx + 1, chosen, dist, future_static)?;
            chosen.pop();
        }
        self.subsets(k, cands, idx + 1, chosen, dist, future_static)
    }

    /// Attach vertex `k` to `nbrs`, prune, deduplicate, recurse.
    fn child(&mut self, k: usize, nbrs: Vec<u8>) -> Result<()> {
        self.meter.tick()?;
        let new_edges = self.edges.len() as u32 + nbrs.len() as u32;
        if new_edges > self.spec.hi {
            return Ok(());
        }
        for &u in &nbrs {
            self.adj[u as usize] |= 1 << k;
            self.adj[k] |= 1 << u;
            self.deg[u as usize] += 1;
            self.deg[k] += 1;
            self.edges.push((u as u32, k as u32));
        }
        self.explore(k + 1)?;
        for &u in &nbrs {
            self.adj[u as usize] &= !(1 << k);
            self.deg[u as usize] -= 1;
            self.edges.pop();
        }
        self.adj[k] = 0;
        self.deg[k] = 0;
        Ok(())
    }

    fn explore(&mut self, k: usize) -> Result<()> {
        let n = self.spec.n;
        if self.spec.min_girth >= 5 && !self.neighbor_sums_ok(k) {
            return Ok(());
        }
        let dmin = self.min_final_degree();
        if dmin > 0 {
            let remaining = (n - k) as u32;
            for v in 0..k {
                let headroom = self.spec.caps[v] - self.deg[v];
                if self.deg[v] + remaining.min(headroom) < dmin {
                    return Ok(());
                }
            }
        }
        if k < n {
            let packing = if self.spec.min_girth >= 5 {
                self.max_two_packing(k)
            } else {
                0
            };
            if (self.edges.len() as u32) + self.future_max(k, packing) < self.edge_floor() {
                return Ok(());
            }
        }
        if self.spec.connected {
            let merges: i64 = (k..n).map(|j| self.effective_cap(j).max(1) as i64 - 1).sum();
            if self.components(k) as i64 - merges > 1 {
                return Ok(());
            }
        }
        let (key, perm) = canonical_form(k, &self.adj[..k], &self.colors[..k]);
        if !self.seen[k].insert(key) {
            return Ok(());
        }
        if k == n {
            self.leaf(key, &perm);
            return Ok(());
        }
        self.place(k)
    }

    fn leaf(&mut self, key: u128, perm: &[u8]) {
        let e = self.edges.len() as u32;
        if e < self.spec.lo || e > self.spec.hi {
            return;
        }
        if self.spec.connected && self.components(self.spec.n) != 1 {
            return;
        }
        if self.spec.require_saturated
            && !(0..self.spec.n).any(|v| self.deg[v] == self.spec.caps[v])
        {
            return;
        }
        match self.goal {
            Goal::FindOne => {
                self.found = Some(FoundGraph {
                    edges: relabel_edges(&self.edges, perm),
                });
                self.stopped = true;
            }
            Goal::Maximize { stop_at } => {
                let better = self.best.is_none_or(|b| e > b);
                let tie = self.best == Some(e);
                if better || (tie && key < self.best_key) {
                    self.best = Some(e);
                    self.best_key = key;
                    self.best_edges = relabel_edges(&self.edges, perm);
                }
                if better && stop_at == Some(e) {
                    self.stopped = true;
                }
            }
        }
    }

    /// Girth >= 5 invariant: for every vertex, its neighbors' degrees sum to
    /// at most `n - 1`. Current degrees only grow, so exceeding the bound now
    /// is final.
    fn neighbor_sums_ok(&self, k: usize) -> bool {
        for v in 0..k {
            let mut m = self.adj[v];
            let mut sum = 0;
            while m != 0 {
                let u = m.trailing_zeros() as usize;
                m &= m - 1;
                sum += self.deg[u];
            }
            if sum > (self.spec.n as u32) - 1 {
                return false;
            }
        }
        true
    }
}

/// Exact maximum independent set of the masked graph.
fn mis(adj: &[AdjMask], alive: AdjMask) -> u32 {
    if alive == 0 {
        return 0;
    }
    let mut best_v = usize::MAX;
    let mut best_deg = 0;
    let mut isolated = 0u32;
    let mut m = alive;
    while m != 0 {
        let v = m.trailing_zeros() as usize;
        m &= m - 1;
        let d = (adj[v] & alive).count_ones();
        if d == 0 {
            isolated += 1;
        } else if best_v == usize::MAX || d > best_deg {
            best_v = v;
            best_deg = d;
        }
    }
    if best_v == usize::MAX {
        return isolated;
    }
    let without = mis(adj, alive & !(1 << best_v));
    let with = 1 + mis(adj, alive & !(adj[best_v] | (1 << best_v)));
    without.max(with)
}
