//! Tanner graphs of concrete codes: alist ingestion, girth, induced-subgraph
//! classification and bounded scanning for small trapping sets.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::normal::NormalGraph;
use crate::types::EtsSignature;
use crate::{Budget, Error, Result};

/// Bipartite variable/check adjacency. The variable-side lists are the
/// source of truth; check-side adjacency is derived.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TannerGraph {
    n_var: usize,
    n_check: usize,
    var_adj: Vec<Vec<u32>>,
}

impl TannerGraph {
    pub fn new(n_var: usize, n_check: usize, var_adj: Vec<Vec<u32>>) -> Result<Self> {
        if var_adj.len() != n_var {
            return Err(Error::InvalidInput(format!(
                "expected {n_var} variable adjacency lists, got {}",
                var_adj.len()
            )));
        }
        let mut var_adj = var_adj;
        for (v, row) in var_adj.iter_mut().enumerate() {
            row.sort_unstable();
            for w in row.windows(2) {
                if w[0] == w[1] {
                    return Err(Error::InvalidInput(format!(
                        "variable {v} lists check {} twice",
                        w[0]
                    )));
                }
            }
            if let Some(&last) = row.last() {
                if last as usize >= n_check {
                    return Err(Error::InvalidInput(format!(
                        "variable {v} lists check {last}, graph has {n_check}"
                    )));
                }
            }
        }
        Ok(TannerGraph {
            n_var,
            n_check,
            var_adj,
        })
    }

    pub fn n_var(&self) -> usize {
        self.n_var
    }

    pub fn n_check(&self) -> usize {
        self.n_check
    }

    pub fn var_neighbors(&self, v: usize) -> &[u32] {
        &self.var_adj[v]
    }

    pub fn var_degree(&self, v: usize) -> u32 {
        self.var_adj[v].len() as u32
    }

    /// Per-check degrees (the row weights).
    pub fn check_degrees(&self) -> Vec<u32> {
        let mut deg = vec![0u32; self.n_check];
        for row in &self.var_adj {
            for &c in row {
                deg[c as usize] += 1;
            }
        }
        deg
    }

    pub fn check_adj(&self) -> Vec<Vec<u32>> {
        let mut adj = vec![Vec::new(); self.n_check];
        for (v, row) in self.var_adj.iter().enumerate() {
            for &c in row {
                adj[c as usize].push(v as u32);
            }
        }
        adj
    }
}

fn parse_counted_line<'a>(
    lines: &mut impl Iterator<Item = &'a str>,
    lineno: &mut usize,
    expect: usize,
    what: &str,
) -> Result<Vec<u64>> {
    *lineno += 1;
    let line = lines.next().ok_or(Error::Parse {
        line: *lineno,
        msg: format!("unexpected end of file, expected {what}"),
    })?;
    let mut out = Vec::new();
    for tok in line.split_whitespace() {
        let v: u64 = tok.parse().map_err(|_| Error::Parse {
            line: *lineno,
            msg: format!("bad integer `{tok}` in {what}"),
        })?;
        out.push(v);
    }
    if out.len() != expect {
        return Err(Error::Parse {
            line: *lineno,
            msg: format!("{what}: expected {expect} entries, got {}", out.len()),
        });
    }
    Ok(out)
}

fn parse_neighbor_line<'a>(
    lines: &mut impl Iterator<Item = &'a str>,
    lineno: &mut usize,
    declared: u64,
    limit: u64,
    what: &str,
) -> Result<Vec<u32>> {
    *lineno += 1;
    let line = lines.next().ok_or(Error::Parse {
        line: *lineno,
        msg: format!("unexpected end of file, expected {what}"),
    })?;
    let mut out = Vec::new();
    for tok in line.split_whitespace() {
        let v: u64 = tok.parse().map_err(|_| Error::Parse {
            line: *lineno,
            msg: format!("bad integer `{tok}` in {what}"),
        })?;
        if v == 0 {
            // Padding dialect: zeros fill short rows.
            continue;
        }
        if v > limit {
            return Err(Error::Parse {
                line: *lineno,
                msg: format!("{what}: index {v} out of range (max {limit})"),
            });
        }
        out.push((v - 1) as u32);
    }
    if out.len() as u64 != declared {
        return Err(Error::Parse {
            line: *lineno,
            msg: format!(
                "{what}: degree mismatch, declared {declared} but listed {}",
                out.len()
            ),
        });
    }
    Ok(out)
}

/// Parses alist text: header `N M`, max weights, per-column and per-row
/// weights, then 1-indexed neighbor lists for every variable and check node.
/// Both the zero-padded and the unpadded dialect are accepted; the check
/// side must agree with the variable side.
pub fn parse_alist(text: &str) -> Result<TannerGraph> {
    let mut lines = text.lines();
    let mut lineno = 0usize;
    let header = parse_counted_line(&mut lines, &mut lineno, 2, "header")?;
    let (n_var, n_check) = (header[0] as usize, header[1] as usize);
    if n_var == 0 || n_check == 0 {
        return Err(Error::Parse {
            line: lineno,
            msg: "header: node counts must be positive".into(),
        });
    }
    let maxima = parse_counted_line(&mut lines, &mut lineno, 2, "max weights")?;
    let (max_col, max_row) = (maxima[0], maxima[1]);
    let col_weights = parse_counted_line(&mut lines, &mut lineno, n_var, "column weights")?;
    if let Some(w) = col_weights.iter().find(|&&w| w > max_col) {
        return Err(Error::Parse {
            line: lineno,
            msg: format!("column weight {w} exceeds declared maximum {max_col}"),
        });
    }
    let row_weights = parse_counted_line(&mut lines, &mut lineno, n_check, "row weights")?;
    if let Some(w) = row_weights.iter().find(|&&w| w > max_row) {
        return Err(Error::Parse {
            line: lineno,
            msg: format!("row weight {w} exceeds declared maximum {max_row}"),
        });
    }
    let mut var_adj = Vec::with_capacity(n_var);
    for (v, &weight) in col_weights.iter().enumerate() {
        let row = parse_neighbor_line(
            &mut lines,
            &mut lineno,
            weight,
            n_check as u64,
            &format!("variable {}", v + 1),
        )?;
        var_adj.push(row);
    }
    let mut check_adj = Vec::with_capacity(n_check);
    for (c, &weight) in row_weights.iter().enumerate() {
        let row = parse_neighbor_line(
            &mut lines,
            &mut lineno,
            weight,
            n_var as u64,
            &format!("check {}", c + 1),
        )?;
        check_adj.push(row);
    }
    let t = TannerGraph::new(n_var, n_check, var_adj).map_err(|e| Error::Parse {
        line: lineno,
        msg: e.to_string(),
    })?;
    // Cross-check the redundant check-side lists.
    let mut derived = t.check_adj();
    for (c, (listed, derived)) in check_adj.iter_mut().zip(derived.iter_mut()).enumerate() {
        listed.sort_unstable();
        derived.sort_unstable();
        if listed != derived {
            return Err(Error::Parse {
                line: lineno,
                msg: format!(
                    "check {}: neighbor list disagrees with the variable side",
                    c + 1
                ),
            });
        }
    }
    Ok(t)
}

/// Serializes in the unpadded dialect: neighbor lists ascending, 1-indexed,
/// single spaces, one trailing newline per line.
pub fn serialize_alist(t: &TannerGraph) -> String {
    let check_adj = t.check_adj();
    let col_weights: Vec<u32> = (0..t.n_var()).map(|v| t.var_degree(v)).collect();
    let row_weights: Vec<u32> = check_adj.iter().map(|r| r.len() as u32).collect();
    let mut out = String::new();
    out.push_str(&format!("{} {}\n", t.n_var(), t.n_check()));
    out.push_str(&format!(
        "{} {}\n",
        col_weights.iter().max().copied().unwrap_or(0),
        row_weights.iter().max().copied().unwrap_or(0)
    ));
    let join = |xs: &[u32]| {
        xs.iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    };
    out.push_str(&join(&col_weights));
    out.push('\n');
    out.push_str(&join(&row_weights));
    out.push('\n');
    for v in 0..t.n_var() {
        let row: Vec<u32> = t.var_neighbors(v).iter().map(|&c| c + 1).collect();
        out.push_str(&join(&row));
        out.push('\n');
    }
    for row in &check_adj {
        let row: Vec<u32> = row.iter().map(|&v| v + 1).collect();
        out.push_str(&join(&row));
        out.push('\n');
    }
    out
}

/// Girth of the Tanner graph (always even), or `None` for a forest.
/// Breadth-first search from every variable node; every cycle contains one,
/// so the minimum over those starts is exact.
pub fn girth_of(t: &TannerGraph) -> Option<u32> {
    let n = t.n_var() + t.n_check();
    let check_adj = t.check_adj();
    // Variables occupy global indices 0..n_var, checks the rest; a node's
    // neighbors live on the other side.
    let neighbors = |x: usize| -> &[u32] {
        if x < t.n_var() {
            t.var_neighbors(x)
        } else {
            &check_adj[x - t.n_var()]
        }
    };
    let mut best: Option<u32> = None;
    let mut dist = vec![u32::MAX; n];
    let mut parent = vec![usize::MAX; n];
    for start in 0..t.n_var() {
        dist.iter_mut().for_each(|d| *d = u32::MAX);
        parent.iter_mut().for_each(|p| *p = usize::MAX);
        dist[start] = 0;
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            if let Some(b) = best {
                // Cycles through `start` found deeper cannot beat `b`.
                if 2 * dist[u] >= b {
                    continue;
                }
            }
            let from_var = u < t.n_var();
            for &w in neighbors(u) {
                let w = if from_var {
                    w as usize + t.n_var()
                } else {
                    w as usize
                };
                if dist[w] == u32::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                } else if parent[u] != w {
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

/// Classification of the subgraph induced by a set of variable nodes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InducedClass {
    pub signature: EtsSignature,
    /// True when every induced check has degree one or two.
    pub is_elementary: bool,
    /// Induced check degree -> count.
    pub check_degree_histogram: BTreeMap<u32, u32>,
}

fn induced_check_degrees(t: &TannerGraph, vars: &[u32]) -> Result<BTreeMap<u32, u32>> {
    if vars.is_empty() {
        return Err(Error::InvalidInput("variable set must be non-empty".into()));
    }
    let mut sorted = vars.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != vars.len() {
        return Err(Error::InvalidInput("variable set has duplicates".into()));
    }
    let mut counts: BTreeMap<u32, u32> = BTreeMap::new();
    for &v in &sorted {
        if v as usize >= t.n_var() {
            return Err(Error::InvalidInput(format!(
                "variable {v} out of range ({} variables)",
                t.n_var()
            )));
        }
        for &c in t.var_neighbors(v as usize) {
            *counts.entry(c).or_insert(0) += 1;
        }
    }
    Ok(counts)
}

pub fn classify_induced(t: &TannerGraph, vars: &[u32]) -> Result<InducedClass> {
    let counts = induced_check_degrees(t, vars)?;
    let b = counts.values().filter(|&&d| d % 2 == 1).count() as u32;
    let is_elementary = counts.values().all(|&d| d <= 2);
    let mut histogram = BTreeMap::new();
    for &d in counts.values() {
        *histogram.entry(d).or_insert(0) += 1;
    }
    Ok(InducedClass {
        signature: EtsSignature {
            a: vars.len() as u32,
            b,
        },
        is_elementary,
        check_degree_histogram: histogram,
    })
}

/// Normal graph of an elementary induced subgraph: degree-two checks become
/// edges, code degrees are the variables' full degrees in the code.
pub fn normal_of(t: &TannerGraph, vars: &[u32]) -> Result<NormalGraph> {
    let counts = induced_check_degrees(t, vars)?;
    if counts.values().any(|&d| d > 2) {
        return Err(Error::InvalidInput(
            "variable set induces a check of degree > 2, not elementary".into(),
        ));
    }
    let mut sorted = vars.to_vec();
    sorted.sort_unstable();
    let index_of = |v: u32| sorted.binary_search(&v).unwrap() as u32;
    let mut edges = Vec::new();
    for (&c, &d) in &counts {
        if d != 2 {
            continue;
        }
        let ends: Vec<u32> = sorted
            .iter()
            .copied()
            .filter(|&v| t.var_neighbors(v as usize).contains(&c))
            .collect();
        if ends.len() != 2 {
            unreachable!("degree-2 check joins exactly two variables");
        }
        let (u, v) = (index_of(ends[0]), index_of(ends[1]));
        if edges.contains(&(u.min(v), u.max(v))) {
            return Err(Error::InvalidInput(
                "two satisfied checks join the same variable pair (Tanner girth 4)".into(),
            ));
        }
        edges.push((u.min(v), u.max(v)));
    }
    let code_degrees: Vec<u32> = sorted.iter().map(|&v| t.var_degree(v as usize)).collect();
    NormalGraph::new(sorted.len(), &edges, code_degrees).validated()
}

/// One signature class found by a scan.
#[derive(Debug, Clone, Serialize)]
pub struct ScanClass {
    pub a: u32,
    pub b: u32,
    pub count: u64,
    /// Lexicographically smallest witness set.
    pub witness: Vec<u32>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanReport {
    pub a_max: u32,
    pub b_max: u32,
    pub only_ratio_lt_one: bool,
    pub classes: Vec<ScanClass>,
}

impl ScanReport {
    pub fn class(&self, a: u32, b: u32) -> Option<&ScanClass> {
        self.classes.iter().find(|c| c.a == a && c.b == b)
    }

    pub fn render_text(&self) -> String {
        let mut grid: Vec<Vec<String>> = vec![vec![
            "(a,b)".into(),
            "count".into(),
            "witness".into(),
        ]];
        for c in &self.classes {
            grid.push(vec![
                format!("({},{})", c.a, c.b),
                c.count.to_string(),
                format!("{:?}", c.witness),
            ]);
        }
        crate::feasibility::render_grid(&grid)
    }
}

/// Enumerates induced variable subsets of size `<= a_max`, keeps the
/// elementary ones with `b <= b_max` (and `b < a` when `only_ratio_lt_one`),
/// and reports counts plus one witness per `(a, b)` class.
///
/// With `only_ratio_lt_one` only connected subsets (in the
/// shares-a-check adjacency) are enumerated: a witness in the dominant
/// regime always has a connected component still in the regime. Without the
/// flag every subset is enumerated. Each enumerated subset costs one budget
/// unit.
pub fn scan_ets(
    t: &TannerGraph,
    a_max: u32,
    b_max: u32,
    only_ratio_lt_one: bool,
    budget: &Budget,
) -> Result<ScanReport> {
    if a_max == 0 {
        return Err(Error::InvalidInput("a_max must be >= 1".into()));
    }
    let mut meter = budget.meter();
    let mut classes: BTreeMap<(u32, u32), (u64, Vec<u32>)> = BTreeMap::new();
    let mut counts = vec![0u32; t.n_check()];
    let mut visit = |subset: &[u32],
                     classes: &mut BTreeMap<(u32, u32), (u64, Vec<u32>)>,
                     counts: &mut Vec<u32>|
     -> Result<()> {
        meter.tick()?;
        let mut touched: Vec<u32> = Vec::new();
        let mut odd = 0i64;
        let mut elementary = true;
        for &v in subset {
            for &c in t.var_neighbors(v as usize) {
                let d = &mut counts[c as usize];
                if *d == 0 {
                    touched.push(c);
                }
                *d += 1;
                match *d {
                    1 => odd += 1,
                    2 => odd -= 1,
                    3 => {
                        elementary = false;
                        odd += 1;
                    }
                    _ => {
                        if *d % 2 == 1 {
                            odd += 1
                        } else {
                            odd -= 1
                        }
                    }
                }
            }
        }
        let b = odd as u32;
        let a = subset.len() as u32;
        if elementary && b <= b_max && (!only_ratio_lt_one || b < a) {
            let mut sorted = subset.to_vec();
            sorted.sort_unstable();
            classes
                .entry((a, b))
                .and_modify(|(count, witness)| {
                    *count += 1;
                    if sorted < *witness {
                        *witness = sorted.clone();
                    }
                })
                .or_insert((1, sorted));
        }
        for c in touched {
            counts[c as usize] = 0;
        }
        Ok(())
    };

    if only_ratio_lt_one {
        // Variable-side adjacency: two variables sharing a check.
        let check_adj = t.check_adj();
        let mut var_var: Vec<Vec<u32>> = vec![Vec::new(); t.n_var()];
        for vars in &check_adj {
            for (i, &u) in vars.iter().enumerate() {
                for &w in &vars[i + 1..] {
                    var_var[u as usize].push(w);
                    var_var[w as usize].push(u);
                }
            }
        }
        for row in &mut var_var {
            row.sort_unstable();
            row.dedup();
        }
        // States: 0 fresh, 1 frontier candidate, 2 banned at this root, 3 in
        // the subset. Each connected subset with a fixed minimum vertex is
        // generated exactly once.
        let mut state = vec![0u8; t.n_var()];
        let mut subset: Vec<u32> = Vec::new();
        for root in 0..t.n_var() as u32 {
            state[root as usize] = 3;
            subset.push(root);
            visit(&subset, &mut classes, &mut counts)?;
            let ext: Vec<u32> = var_var[root as usize]
                .iter()
                .copied()
                .filter(|&w| w > root)
                .collect();
            for &w in &ext {
                state[w as usize] = 1;
            }
            grow(
                &var_var, root, a_max, &mut state, &mut subset, &ext, &mut classes,
                &mut counts, &mut visit,
            )?;
            for &w in &ext {
                state[w as usize] = 0;
            }
            subset.pop();
            state[root as usize] = 0;
        }
    } else {
        let mut subset: Vec<u32> = Vec::new();
        all_subsets(
            t,
            0,
            a_max,
            &mut subset,
            &mut classes,
            &mut counts,
            &mut visit,
        )?;
    }

    let classes = classes
        .into_iter()
        .map(|((a, b), (count, witness))| ScanClass {
            a,
            b,
            count,
            witness,
        })
        .collect();
    Ok(ScanReport {
        a_max,
        b_max,
        only_ratio_lt_one,
        classes,
    })
}

#[allow(clippy::too_many_arguments)]
fn grow<F>(
    var_var: &[Vec<u32>],
    root: u32,
    a_max: u32,
    state: &mut Vec<u8>,
    subset: &mut Vec<u32>,
    ext: &[u32],
    classes: &mut BTreeMap<(u32, u32), (u64, Vec<u32>)>,
    counts: &mut Vec<u32>,
    visit: &mut F,
) -> Result<()>
where
    F: FnMut(&[u32], &mut BTreeMap<(u32, u32), (u64, Vec<u32>)>, &mut Vec<u32>) -> Result<()>,
{
    if subset.len() as u32 == a_max {
        return Ok(());
    }
    let mut banned_here: Vec<u32> = Vec::new();
    for (i, &u) in ext.iter().enumerate() {
        // Later branches exclude u entirely.
        let mut fresh: Vec<u32> = Vec::new();
        for &w in &var_var[u as usize] {
            if w > root && state[w as usize] == 0 {
                state[w as usize] = 1;
                fresh.push(w);
            }
        }
        let mut next_ext: Vec<u32> = ext[i + 1..].to_vec();
        next_ext.extend_from_slice(&fresh);
        state[u as usize] = 3;
        subset.push(u);
        visit(subset, classes, counts)?;
        grow(
            var_var, root, a_max, state, subset, &next_ext, classes, counts, visit,
        )?;
        subset.pop();
        state[u as usize] = 2;
        banned_here.push(u);
        for &w in &fresh {
            state[w as usize] = 0;
        }
    }
    for &u in &banned_here {
        state[u as usize] = 1;
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn all_subsets<F>(
    t: &TannerGraph,
    from: u32,
    a_max: u32,
    subset: &mut Vec<u32>,
    classes: &mut BTreeMap<(u32, u32), (u64, Vec<u32>)>,
    counts: &mut Vec<u32>,
    visit: &mut F,
) -> Result<()>
where
    F: FnMut(&[u32], &mut BTreeMap<(u32, u32), (u64, Vec<u32>)>, &mut Vec<u32>) -> Result<()>,
{
    for v in from..t.n_var() as u32 {
        subset.push(v);
        visit(subset, classes, counts)?;
        if (subset.len() as u32) < a_max {
            all_subsets(t, v + 1, a_max, subset, classes, counts, visit)?;
        }
        subset.pop();
    }
    Ok(())
}
