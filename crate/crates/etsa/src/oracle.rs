//! Exhaustive existence decisions for `(a, b)` signatures.
//!
//! A signature is realizable when some normal graph attains it: a simple
//! graph on `a` vertices within the girth floor, a code-degree assignment
//! with `degree(v) <= code_degree(v)` everywhere and total deficiency
//! exactly `b`. In the dominant regime `b < a` the witness must further be
//! connected and have a vertex at full code degree (otherwise every vertex
//! contributes a deficit and `b >= a`).
//!
//! Decisions are certified: "no" means the pruned exhaustive search ran dry,
//! never that a heuristic gave up. Edge counts outside the extremal table's
//! certified maximum are rejected without searching.

use rayon::prelude::*;
use serde::Serialize;

use crate::extremal::Extremal;
use crate::normal::NormalGraph;
use crate::search::{self, SearchSpec};
use crate::types::{ColumnWeight, DegreeSet, EtsSignature};
use crate::{Budget, BudgetMeter, Error, Result};

/// Uniform or per-vertex-varied code degrees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DegreeSpec {
    Regular(ColumnWeight),
    Irregular(DegreeSet),
}

impl DegreeSpec {
    pub fn max_degree(&self) -> u32 {
        match self {
            DegreeSpec::Regular(g) => g.get(),
            DegreeSpec::Irregular(d) => d.max(),
        }
    }
}

impl std::fmt::Display for DegreeSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DegreeSpec::Regular(g) => write!(f, "gamma={g}"),
            DegreeSpec::Irregular(d) => write!(f, "d(v) in {d}"),
        }
    }
}

/// One existence question.
#[derive(Debug, Clone)]
pub struct ExistenceQuery {
    pub a: u32,
    pub b: u32,
    pub degree_spec: DegreeSpec,
    /// Girth floor for the normal graph: 3 = simple graph only (Tanner girth
    /// 6), 4 = triangle-free (Tanner girth 8), 5 = also square-free (10).
    pub min_normal_girth: u32,
    /// Irregular mode: every member of the degree set must appear among the
    /// witness code degrees.
    pub require_all_degrees: bool,
}

impl ExistenceQuery {
    pub fn regular(a: u32, b: u32, gamma: ColumnWeight, min_normal_girth: u32) -> Result<Self> {
        Self::validate(a, min_normal_girth)?;
        Ok(ExistenceQuery {
            a,
            b,
            degree_spec: DegreeSpec::Regular(gamma),
            min_normal_girth,
            require_all_degrees: false,
        })
    }

    pub fn irregular(a: u32, b: u32, degrees: DegreeSet, min_normal_girth: u32) -> Result<Self> {
        Self::validate(a, min_normal_girth)?;
        Ok(ExistenceQuery {
            a,
            b,
            degree_spec: DegreeSpec::Irregular(degrees),
            min_normal_girth,
            require_all_degrees: true,
        })
    }

    fn validate(a: u32, min_normal_girth: u32) -> Result<()> {
        if a == 0 {
            return Err(Error::InvalidInput("existence query needs a >= 1".into()));
        }
        if min_normal_girth < 3 {
            return Err(Error::InvalidInput(
                "normal girth floor must be >= 3".into(),
            ));
        }
        if a as usize > crate::canon::MAX_VERTICES {
            return Err(Error::InvalidInput(format!(
                "existence search supports a <= {}",
                crate::canon::MAX_VERTICES
            )));
        }
        Ok(())
    }
}

/// A certified decision.
#[derive(Debug, Clone)]
pub enum Existence {
    Yes(NormalGraph),
    No,
}

impl Existence {
    pub fn is_yes(&self) -> bool {
        matches!(self, Existence::Yes(_))
    }

    pub fn witness(&self) -> Option<&NormalGraph> {
        match self {
            Existence::Yes(w) => Some(w),
            Existence::No => None,
        }
    }
}

/// All code-degree multisets compatible with the query, as descending cap
/// vectors in deterministic order.
fn cap_vectors(q: &ExistenceQuery) -> Vec<Vec<u32>> {
    match &q.degree_spec {
        DegreeSpec::Regular(g) => vec![vec![g.get(); q.a as usize]],
        DegreeSpec::Irregular(set) => {
            let members = set.members();
            let floor = if q.require_all_degrees { 1u32 } else { 0 };
            if q.require_all_degrees && (q.a as usize) < members.len() {
                return Vec::new();
            }
            let mut out = Vec::new();
            let mut counts = vec![0u32; members.len()];
            fn assign(
                members: &[u32],
                idx: usize,
                remaining: u32,
                floor: u32,
                counts: &mut Vec<u32>,
                out: &mut Vec<Vec<u32>>,
            ) {
                if idx == members.len() - 1 {
                    if remaining >= floor {
                        counts[idx] = remaining;
                        let mut caps: Vec<u32> = members
                            .iter()
                            .zip(counts.iter())
                            .flat_map(|(&d, &c)| std::iter::repeat_n(d, c as usize))
                            .collect();
                        caps.sort_unstable_by(|x, y| y.cmp(x));
                        out.push(caps);
                    }
                    return;
                }
                let max_here = remaining - floor * (members.len() - 1 - idx) as u32;
                for c in floor..=max_here {
                    counts[idx] = c;
                    assign(members, idx + 1, remaining - c, floor, counts, out);
                }
            }
            if q.a >= floor * members.len() as u32 {
                assign(members, 0, q.a, floor, &mut counts, &mut out);
            }
            out.sort();
            out
        }
    }
}

/// Decides the query, returning a canonical witness on yes.
pub fn exists_ets(q: &ExistenceQuery, extremal: &Extremal, budget: &Budget) -> Result<Existence> {
    let mut meter = budget.meter();
    exists_ets_metered(q, extremal, budget, &mut meter)
}

fn exists_ets_metered(
    q: &ExistenceQuery,
    extremal: &Extremal,
    budget: &Budget,
    meter: &mut BudgetMeter,
) -> Result<Existence> {
    ExistenceQuery::validate(q.a, q.min_normal_girth)?;
    let dominant = q.b < q.a;
    let a = q.a as usize;
    for caps in cap_vectors(q) {
        let total: u32 = caps.iter().sum();
        if total < q.b || !(total - q.b).is_multiple_of(2) {
            continue;
        }
        let m = (total - q.b) / 2;
        if dominant && a >= 2 && m < q.a - 1 {
            // A connected witness needs at least a-1 edges.
            continue;
        }
        let max_cap = caps[0];
        let bound = extremal.max_edges(q.a as u64, q.min_normal_girth, Some(max_cap), budget);
        if (m as u64) > bound.value {
            continue;
        }
        let prev = if a == 1 {
            Some(0)
        } else {
            Some(
                extremal
                    .max_edges(q.a as u64 - 1, q.min_normal_girth, Some(max_cap), budget)
                    .value as u32,
            )
        };
        let spec = SearchSpec {
            n: a,
            min_girth: q.min_normal_girth,
            caps: caps.clone(),
            lo: m,
            hi: m,
            connected: dominant && a >= 2,
            require_saturated: dominant,
            prev_max_edges: prev,
        };
        if let Some(found) = search::find_one(&spec, meter)? {
            let witness = NormalGraph::new(a, &found.edges, caps);
            debug_assert!(witness.validate().is_ok());
            debug_assert_eq!(witness.deficiency(), q.b);
            debug_assert!(witness
                .girth()
                .is_none_or(|g| g >= q.min_normal_girth));
            return Ok(Existence::Yes(witness));
        }
    }
    Ok(Existence::No)
}

/// One row of an existence table: the certified decisions for every `b < a`.
#[derive(Debug, Clone, Serialize)]
pub struct ExistenceRow {
    pub a: u32,
    pub realizable_b: Vec<u32>,
    /// Cells whose search hit the budget before certification.
    pub unknown_b: Vec<u32>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExistenceTable {
    pub gamma: u32,
    pub min_normal_girth: u32,
    pub rows: Vec<ExistenceRow>,
}

/// Realizable `b < a` per size, for a variable-regular code. Rows are
/// computed independently (and in parallel); each cell gets a fresh budget.
pub fn existence_table(
    gamma: ColumnWeight,
    min_normal_girth: u32,
    a_range: impl IntoIterator<Item = u32>,
    extremal: &Extremal,
    budget: &Budget,
) -> Result<ExistenceTable> {
    let a_values: Vec<u32> = a_range.into_iter().collect();
    if a_values.is_empty() {
        return Err(Error::InvalidInput("a range must be non-empty".into()));
    }
    let rows: Vec<ExistenceRow> = a_values
        .par_iter()
        .map(|&a| {
            let mut realizable = Vec::new();
            let mut unknown = Vec::new();
            for b in 0..a {
                if !crate::feasibility::feasible(a, b, gamma)
                    .expect("a >= 1")
                    .is_feasible()
                {
                    continue;
                }
                let q = ExistenceQuery::regular(a, b, gamma, min_normal_girth)
                    .expect("validated range");
                match exists_ets(&q, extremal, budget) {
                    Ok(Existence::Yes(_)) => realizable.push(b),
                    Ok(Existence::No) => {}
                    Err(Error::BudgetExceeded) => unknown.push(b),
                    Err(e) => panic!("unexpected existence error: {e}"),
                }
            }
            ExistenceRow {
                a,
                realizable_b: realizable,
                unknown_b: unknown,
            }
        })
        .collect();
    Ok(ExistenceTable {
        gamma: gamma.get(),
        min_normal_girth,
        rows,
    })
}

impl ExistenceTable {
    pub fn row(&self, a: u32) -> Option<&ExistenceRow> {
        self.rows.iter().find(|r| r.a == a)
    }

    pub fn render_text(&self) -> String {
        let mut grid: Vec<Vec<String>> = vec![vec![
            String::new(),
            format!("gamma={}", self.gamma),
        ]];
        for row in &self.rows {
            let cell = if row.realizable_b.is_empty() {
                String::new()
            } else {
                format!(
                    "b={}",
                    row.realizable_b
                        .iter()
                        .map(|b| b.to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                )
            };
            let cell = if row.unknown_b.is_empty() {
                cell
            } else {
                format!(
                    "{cell} (unknown: {})",
                    row.unknown_b
                        .iter()
                        .map(|b| b.to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                )
            };
            grid.push(vec![format!("a={}", row.a), cell]);
        }
        crate::feasibility::render_grid(&grid)
    }
}

/// Smallest size with some realizable `b < a`, scanning sizes upward and
/// deficiencies ascending within each size. `None` when nothing exists up
/// to the cap.
pub fn min_size_observed(
    degree_spec: &DegreeSpec,
    min_normal_girth: u32,
    a_cap: u32,
    extremal: &Extremal,
    budget: &Budget,
) -> Result<Option<(EtsSignature, NormalGraph)>> {
    for a in 1..=a_cap {
        for b in 0..a {
            let q = ExistenceQuery {
                a,
                b,
                degree_spec: degree_spec.clone(),
                min_normal_girth,
                require_all_degrees: matches!(degree_spec, DegreeSpec::Irregular(_)),
            };
            if let Existence::Yes(witness) = exists_ets(&q, extremal, budget)? {
                return Ok(Some((EtsSignature { a, b }, witness)));
            }
        }
    }
    Ok(None)
}
