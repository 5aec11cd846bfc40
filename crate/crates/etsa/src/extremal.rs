//! Maximum edge counts of graphs with a girth floor.
//!
//! `ex(n, {C3, ..., C_{g-1}})` is the largest edge count of a simple graph on
//! `n` vertices containing no cycle shorter than `g`. Small instances are
//! settled exactly by exhaustive search ([`Extremal::exact_ex`]); larger ones
//! fall back to the classic analytic bounds (Mantel, Garnick, Furedi), all
//! evaluated in exact integer arithmetic so the strict inequalities round
//! correctly.

use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use crate::canon::MAX_VERTICES;
use crate::normal::NormalGraph;
use crate::search::{self, SearchSpec};
use crate::{Budget, Error, Result};

/// A request for the exact extremal value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ExQuery {
    pub n: usize,
    /// The graph must be `C_i`-free for `3 <= i < min_normal_girth`.
    pub min_normal_girth: u32,
    /// Optional cap on every vertex degree.
    pub max_degree: Option<u32>,
}

impl ExQuery {
    pub fn new(n: usize, min_normal_girth: u32, max_degree: Option<u32>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("ex query needs n >= 1".into()));
        }
        if min_normal_girth < 4 {
            return Err(Error::InvalidInput(
                "exact extremal queries need girth >= 4".into(),
            ));
        }
        Ok(ExQuery {
            n,
            min_normal_girth,
            max_degree,
        })
    }
}

/// Which result produced a bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EdgeBoundSource {
    /// Exhaustively certified value.
    Exact,
    /// All `C(n, 2)` pairs.
    Complete,
    /// Triangle-free maximum `floor(n^2 / 4)`.
    Mantel,
    /// Girth-5 bound `n^(3/2) / 2`.
    Garnick,
    /// `{C3..C_2k}`-free bound `n^(1+1/k)/2 + n/2` (strict).
    FurediOdd { k: u32 },
    /// `{C3..C_{2k+1}}`-free bound `n^(1+1/k)/2^(1+1/k) + n/2` (strict).
    FurediEven { k: u32 },
    /// `floor(n * max_degree / 2)`.
    DegreeCap,
}

impl std::fmt::Display for EdgeBoundSource {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            EdgeBoundSource::Exact => write!(f, "exact"),
            EdgeBoundSource::Complete => write!(f, "complete"),
            EdgeBoundSource::Mantel => write!(f, "mantel"),
            EdgeBoundSource::Garnick => write!(f, "garnick"),
            EdgeBoundSource::FurediOdd { k } => write!(f, "furedi-odd(k={k})"),
            EdgeBoundSource::FurediEven { k } => write!(f, "furedi-even(k={k})"),
            EdgeBoundSource::DegreeCap => write!(f, "degree-cap"),
        }
    }
}

/// An inclusive upper bound on the edge count, with its origin.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EdgeBound {
    pub value: u64,
    pub source: EdgeBoundSource,
    /// True when the value is attained (exhaustively certified).
    pub exact: bool,
}

/// Exact triangle-free maximum: `floor(n^2 / 4)`.
pub fn mantel_bound(n: u64) -> u64 {
    n * n / 4
}

/// Girth-5 upper bound `floor(n^(3/2) / 2)`, computed as
/// `isqrt(n^3) / 2` so no floating point is involved.
pub fn garnick_bound(n: u64) -> u64 {
    let cubed = (n as u128).pow(3);
    (cubed.isqrt() / 2) as u64
}

fn kth_root(x: u128, k: u32) -> u128 {
    if k == 1 || x <= 1 {
        return x;
    }
    let mut lo: u128 = 0;
    let mut hi: u128 = 1u128 << ((128 / k + 1).min(127));
    while lo + 1 < hi {
        let mid = lo + (hi - lo) / 2;
        match mid.checked_pow(k) {
            Some(p) if p <= x => lo = mid,
            _ => hi = mid,
        }
    }
    lo
}

/// Largest integer strictly below `n^(1+1/k)/2 + n/2`, the edge bound for
/// `{C3, ..., C_2k}`-free graphs. The comparison `(2c - n)^k < n^(k+1)` is
/// evaluated in integers, so exact crossings (the strict case) come out
/// right. Saturates on overflow, which only weakens the bound.
pub fn furedi_odd_bound(n: u64, k: u32) -> u64 {
    assert!(n >= 1 && k >= 1);
    let target = match (n as u128).checked_pow(k + 1) {
        Some(t) => t,
        None => return u64::MAX / 2,
    };
    // Largest s >= 0 with s^k < target.
    let r = kth_root(target, k);
    let s = if r.checked_pow(k) == Some(target) { r - 1 } else { r };
    ((s as u64) + n) / 2
}

/// Largest integer strictly below `n^(1+1/k)/2^(1+1/k) + n/2`, the edge
/// bound for `{C3, ..., C_{2k+1}}`-free graphs; integer test `2(2c-n)^k < n^(k+1)`.
pub fn furedi_even_bound(n: u64, k: u32) -> u64 {
    assert!(n >= 1 && k >= 1);
    let target = match (n as u128).checked_pow(k + 1) {
        Some(t) => t,
        None => return u64::MAX / 2,
    };
    // Largest s >= 0 with 2 * s^k < target.
    let mut s = kth_root(target / 2, k);
    while s
        .checked_pow(k)
        .and_then(|p| p.checked_mul(2))
        .is_some_and(|p| p < target)
    {
        s += 1;
    }
    let s = s.saturating_sub(1);
    ((s as u64) + n) / 2
}

/// Tightest analytic bound applicable at the given girth floor.
pub fn analytic_max_edges(n: u64, min_normal_girth: u32) -> EdgeBound {
    let mut best = EdgeBound {
        value: n * n.saturating_sub(1) / 2,
        source: EdgeBoundSource::Complete,
        exact: min_normal_girth <= 3,
    };
    let mut consider = |value: u64, source: EdgeBoundSource| {
        if value < best.value {
            best = EdgeBound {
                value,
                source,
                exact: false,
            };
        }
    };
    if min_normal_girth >= 4 {
        consider(mantel_bound(n), EdgeBoundSource::Mantel);
    }
    if min_normal_girth >= 5 {
        consider(garnick_bound(n), EdgeBoundSource::Garnick);
        for k in 1..=(min_normal_girth - 1) / 2 {
            consider(furedi_odd_bound(n, k), EdgeBoundSource::FurediOdd { k });
        }
        for k in 1..=(min_normal_girth - 2) / 2 {
            consider(furedi_even_bound(n, k), EdgeBoundSource::FurediEven { k });
        }
    }
    best
}

type CacheKey = (usize, u32, Option<u32>);

#[derive(Debug, Clone, Serialize, Deserialize)]
struct CacheEntry {
    value: u32,
    witness_edges: Vec<(u32, u32)>,
}

#[derive(Debug, Serialize, Deserialize)]
struct CacheFile {
    version: u32,
    entries: HashMap<String, CacheEntry>,
}

const CACHE_VERSION: u32 = 1;
const CACHE_FILE: &str = "extremal_cache.json";

/// Exact-value computer with a memo table, optionally persisted to disk.
///
/// Thresholds bound the `n` up to which [`max_edges`](Self::max_edges)
/// resolves queries exhaustively; beyond them only analytic bounds are used.
#[derive(Debug)]
pub struct Extremal {
    cache: Mutex<HashMap<CacheKey, CacheEntry>>,
    cache_path: Option<PathBuf>,
    pub exact_threshold_triangle_free: usize,
    pub exact_threshold_higher_girth: usize,
}

impl Default for Extremal {
    fn default() -> Self {
        Extremal::new()
    }
}

impl Extremal {
    pub const DEFAULT_THRESHOLD_TRIANGLE_FREE: usize = 14;
    pub const DEFAULT_THRESHOLD_HIGHER_GIRTH: usize = 12;

    pub fn new() -> Self {
        Extremal {
            cache: Mutex::new(HashMap::new()),
            cache_path: None,
            exact_threshold_triangle_free: Self::DEFAULT_THRESHOLD_TRIANGLE_FREE,
            exact_threshold_higher_girth: Self::DEFAULT_THRESHOLD_HIGHER_GIRTH,
        }
    }

    /// Binds the memo table to `dir/extremal_cache.json`, loading any
    /// compatible entries already there.
    pub fn with_cache_dir(dir: &Path) -> Self {
        let mut extremal = Extremal::new();
        let path = dir.join(CACHE_FILE);
        if let Ok(text) = std::fs::read_to_string(&path) {
            if let Ok(file) = serde_json::from_str::<CacheFile>(&text) {
                if file.version == CACHE_VERSION {
                    let mut cache = extremal.cache.lock().unwrap();
                    for (key, entry) in file.entries {
                        if let Some(parsed) = parse_cache_key(&key) {
                            cache.insert(parsed, entry);
                        }
                    }
                }
            }
        }
        extremal.cache_path = Some(path);
        extremal
    }

    fn persist(&self) {
        let Some(path) = &self.cache_path else {
            return;
        };
        let cache = self.cache.lock().unwrap();
        let entries: HashMap<String, CacheEntry> = cache
            .iter()
            .map(|(k, v)| (format_cache_key(*k), v.clone()))
            .collect();
        let file = CacheFile {
            version: CACHE_VERSION,
            entries,
        };
        if let Some(parent) = path.parent() {
            let _ = std::fs::create_dir_all(parent);
        }
        if let Ok(text) = serde_json::to_string_pretty(&file) {
            let _ = std::fs::write(path, text);
        }
    }

    /// Exact `ex(n, girth, max_degree)` with a certifying witness. Computed
    /// bottom-up so the `n - 1` value sharpens the degree pruning; every
    /// value is exhaustively certified or the budget error is returned.
    ///
    /// The witness is deterministic: when the maximum falls short of the
    /// upper bound the search enumerates every maximizer class and keeps the
    /// minimal canonical form; when the bound is attained it stops at the
    /// first maximizer (already optimal), in canonical labeling.
    pub fn exact_ex(&self, q: &ExQuery, budget: &Budget) -> Result<(u32, NormalGraph)> {
        if q.n > MAX_VERTICES {
            return Err(Error::InvalidInput(format!(
                "exact extremal search supports n <= {MAX_VERTICES}, got {}",
                q.n
            )));
        }
        for m in 1..=q.n {
            let key = (m, q.min_normal_girth, q.max_degree);
            if self.cache.lock().unwrap().contains_key(&key) {
                continue;
            }
            let prev = if m == 1 {
                Some(0)
            } else {
                self.cache
                    .lock()
                    .unwrap()
                    .get(&(m - 1, q.min_normal_girth, q.max_degree))
                    .map(|e| e.value)
            };
            let cap = q
                .max_degree
                .unwrap_or(m as u32)
                .min(m.saturating_sub(1) as u32);
            let analytic = analytic_max_edges(m as u64, q.min_normal_girth).value;
            let hi = analytic.min(m as u64 * cap as u64 / 2) as u32;
            let spec = SearchSpec {
                n: m,
                min_girth: q.min_normal_girth,
                caps: vec![cap; m],
                lo: 0,
                hi,
                connected: false,
                require_saturated: false,
                prev_max_edges: prev,
            };
            let mut meter = budget.meter();
            let (value, witness) = search::maximize(&spec, Some(hi), &mut meter)?
                .expect("the empty graph always qualifies");
            self.cache.lock().unwrap().insert(
                key,
                CacheEntry {
                    value,
                    witness_edges: witness.edges,
                },
            );
            self.persist();
        }
        let cache = self.cache.lock().unwrap();
        let entry = &cache[&(q.n, q.min_normal_girth, q.max_degree)];
        let code_degree = q
            .max_degree
            .unwrap_or(q.n as u32)
            .min(q.n.saturating_sub(1).max(1) as u32)
            .max(1);
        let witness = NormalGraph::regular(q.n, &entry.witness_edges, code_degree);
        Ok((entry.value, witness))
    }

    /// The tightest available inclusive upper bound on the edge count:
    /// exact below the thresholds, otherwise the best analytic bound, always
    /// additionally capped by `floor(n * max_degree / 2)`. A budget failure
    /// inside the exact search degrades to the analytic bound.
    pub fn max_edges(
        &self,
        n: u64,
        min_normal_girth: u32,
        max_degree: Option<u32>,
        budget: &Budget,
    ) -> EdgeBound {
        let mut bound = if min_normal_girth <= 3 {
            EdgeBound {
                value: n * n.saturating_sub(1) / 2,
                source: EdgeBoundSource::Complete,
                exact: true,
            }
        } else {
            let threshold = if min_normal_girth == 4 {
                self.exact_threshold_triangle_free
            } else {
                self.exact_threshold_higher_girth
            };
            let small = n >= 1 && n as usize <= threshold.min(MAX_VERTICES);
            let exact = if small {
                let q = ExQuery {
                    n: n as usize,
                    min_normal_girth,
                    max_degree,
                };
                self.exact_ex(&q, budget).ok()
            } else {
                None
            };
            match exact {
                Some((value, _)) => EdgeBound {
                    value: value as u64,
                    source: EdgeBoundSource::Exact,
                    exact: true,
                },
                None => analytic_max_edges(n, min_normal_girth),
            }
        };
        if let Some(d) = max_degree {
            let cap = n * d as u64 / 2;
            if cap < bound.value {
                bound = EdgeBound {
                    value: cap,
                    source: EdgeBoundSource::DegreeCap,
                    // A near-regular degree-d graph always attains the cap
                    // when cycles are unconstrained.
                    exact: min_normal_girth <= 3,
                };
            }
        }
        bound
    }
}

fn format_cache_key(key: CacheKey) -> String {
    let (n, girth, cap) = key;
    match cap {
        Some(d) => format!("{n},{girth},{d}"),
        None => format!("{n},{girth},-"),
    }
}

fn parse_cache_key(s: &str) -> Option<CacheKey> {
    let mut parts = s.split(',');
    let n = parts.next()?.parse().ok()?;
    let girth = parts.next()?.parse().ok()?;
    let cap = match parts.next()? {
        "-" => None,
        d => Some(d.parse().ok()?),
    };
    if parts.next().is_some() {
        return None;
    }
    Some((n, girth, cap))
}
