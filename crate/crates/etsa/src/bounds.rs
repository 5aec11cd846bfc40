//! Lower bounds on the size `a` and deficiency `b` of elementary trapping
//! sets in the dominant regime `b/a < 1`, as a function of column weight and
//! Tanner girth.
//!
//! Every size bound here follows one pattern: the normal graph of an ETS is
//! a graph whose girth is at least half the Tanner girth, that maximum edge
//! count caps `2|E|`, and `b = a*gamma - 2|E| < a` then forces `a` up.
//! A bound proved at girth `g` also holds at every larger girth, so the
//! dispatcher takes the maximum over all applicable bounds.

use serde::Serialize;

use crate::extremal::{EdgeBoundSource, Extremal};
use crate::types::{ColumnWeight, Girth, GirthClass};
use crate::{Budget, Error, Result};

/// Where a size bound comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SizeBoundSource {
    /// `a >= gamma + 1`: some vertex must reach full degree.
    DegreeFloor,
    /// `a >= 2*gamma - 1` from the triangle-free edge maximum (girth 8).
    TriangleFree,
    /// `a >= (gamma-1)^2 + 1` from the girth-5 edge bound (girth 10).
    SquareFree,
    /// Sharpened girth-10 values for gamma 3 and 4.
    SquareFreeRefined,
    /// `a > (gamma-2)^k` for Tanner girth `2(2k+1)`.
    GirthClassOdd { k: u32 },
    /// `a > 2(gamma-2)^k` for Tanner girth `2(2k+2)`.
    GirthClassEven { k: u32 },
}

impl std::fmt::Display for SizeBoundSource {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SizeBoundSource::DegreeFloor => write!(f, "degree-floor"),
            SizeBoundSource::TriangleFree => write!(f, "triangle-free"),
            SizeBoundSource::SquareFree => write!(f, "square-free"),
            SizeBoundSource::SquareFreeRefined => write!(f, "square-free-refined"),
            SizeBoundSource::GirthClassOdd { k } => write!(f, "girth-class-odd(k={k})"),
            SizeBoundSource::GirthClassEven { k } => write!(f, "girth-class-even(k={k})"),
        }
    }
}

/// A size lower bound with its provenance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SizeBound {
    pub value: u64,
    pub source: SizeBoundSource,
}

/// Minimum ETS size at Tanner girth 8: `2*gamma - 1`.
pub fn min_size_girth8(gamma: ColumnWeight) -> u32 {
    2 * gamma.get() - 1
}

/// Minimum deficiency at Tanner girth 8 for size `a`: the integer form
/// `a*gamma - 2*max_edges(a, triangle-free, gamma)`, rounded up to the
/// parity of `a*gamma` and floored at zero.
pub fn min_deficiency_girth8(
    a: u32,
    gamma: ColumnWeight,
    extremal: &Extremal,
    budget: &Budget,
) -> u32 {
    min_deficiency_at(a, gamma, 4, extremal, budget)
}

/// Minimum deficiency for size `a` when the normal graph has girth at least
/// `min_normal_girth`.
pub fn min_deficiency_at(
    a: u32,
    gamma: ColumnWeight,
    min_normal_girth: u32,
    extremal: &Extremal,
    budget: &Budget,
) -> u32 {
    let product = a as u64 * gamma.get() as u64;
    let cap = extremal
        .max_edges(a as u64, min_normal_girth, Some(gamma.get()), budget)
        .value;
    let raw = product.saturating_sub(2 * cap);
    let rounded = if raw % 2 != product % 2 { raw + 1 } else { raw };
    rounded as u32
}

/// Minimum ETS size at Tanner girth 10. Gamma 3 and 4 carry sharper values
/// than the generic `(gamma-1)^2 + 1`; every value also respects the
/// girth-8 bound.
pub fn min_size_girth10(gamma: ColumnWeight) -> u32 {
    match gamma.get() {
        3 => 7,
        4 => 12,
        g => ((g - 1) * (g - 1) + 1).max(min_size_girth8(gamma)),
    }
}

/// Minimum ETS size for any even Tanner girth `>= 6`, with the provenance of
/// the binding bound. The maximum is taken over the bounds valid at every
/// girth up to `g`, since higher girth only restricts the graphs further.
pub fn min_size(gamma: ColumnWeight, girth: Girth) -> Result<SizeBound> {
    let g = girth.get();
    if g < 6 {
        return Err(Error::InvalidInput(format!(
            "size bounds need Tanner girth >= 6, got {g}"
        )));
    }
    let gv = gamma.get() as u64;
    let mut candidates: Vec<SizeBound> = vec![SizeBound {
        value: gv + 1,
        source: SizeBoundSource::DegreeFloor,
    }];
    if g >= 8 {
        candidates.push(SizeBound {
            value: 2 * gv - 1,
            source: SizeBoundSource::TriangleFree,
        });
    }
    if g >= 10 {
        let source = match gamma.get() {
            3 | 4 => SizeBoundSource::SquareFreeRefined,
            _ => SizeBoundSource::SquareFree,
        };
        candidates.push(SizeBound {
            value: min_size_girth10(gamma) as u64,
            source,
        });
    }
    let mut gp = 12;
    while gp <= g {
        let class = Girth::new(gp).unwrap().class();
        let base = gv.saturating_sub(2);
        match class {
            GirthClass::OddHalf { k } => candidates.push(SizeBound {
                value: base.saturating_pow(k) + 1,
                source: SizeBoundSource::GirthClassOdd { k },
            }),
            GirthClass::EvenHalf { k } => candidates.push(SizeBound {
                value: 2 * base.saturating_pow(k) + 1,
                source: SizeBoundSource::GirthClassEven { k },
            }),
        }
        gp += 2;
    }
    // First maximal candidate wins, so ties go to the lowest-girth argument.
    let mut best = candidates[0];
    for c in &candidates[1..] {
        if c.value > best.value {
            best = *c;
        }
    }
    Ok(best)
}

/// Per-size row of a [`BoundReport`].
#[derive(Debug, Clone, Serialize)]
pub struct BoundRow {
    pub a: u32,
    /// Analytic minimum deficiency at this size.
    pub b_min: u32,
    /// Deficiencies `b_min <= b < a` of the right parity: the signatures a
    /// search would still have to investigate.
    pub candidates: Vec<u32>,
    /// The edge bound behind `b_min` and whether it is exhaustively exact.
    pub edge_bound: u64,
    pub edge_bound_exact: bool,
    pub edge_bound_source: EdgeBoundSource,
    /// Set when even `b_min` leaves the dominant regime empty at this size;
    /// the analytic bounds alone rule out every `b < a`.
    pub dominant_b_empty: bool,
}

/// Structured bound summary for one `(gamma, girth)` pair.
#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    pub gamma: u32,
    pub girth: u32,
    pub a_min: u64,
    pub a_min_source: SizeBoundSource,
    pub rows: Vec<BoundRow>,
}

/// Assembles size and deficiency bounds for all sizes in `[a_min, a_max]`.
pub fn bound_report(
    gamma: ColumnWeight,
    girth: Girth,
    a_max: u32,
    extremal: &Extremal,
    budget: &Budget,
) -> Result<BoundReport> {
    let size = min_size(gamma, girth)?;
    if (a_max as u64) < size.value {
        return Err(Error::InvalidInput(format!(
            "a_max {a_max} is below the size bound {}",
            size.value
        )));
    }
    let normal_girth = girth.normal_girth();
    let mut rows = Vec::new();
    for a in size.value as u32..=a_max {
        let edge = extremal.max_edges(a as u64, normal_girth, Some(gamma.get()), budget);
        let b_min = min_deficiency_at(a, gamma, normal_girth, extremal, budget);
        let candidates: Vec<u32> = (b_min..a).step_by(2).collect();
        rows.push(BoundRow {
            a,
            b_min,
            dominant_b_empty: candidates.is_empty(),
            candidates,
            edge_bound: edge.value,
            edge_bound_exact: edge.exact,
            edge_bound_source: edge.source,
        });
    }
    Ok(BoundReport {
        gamma: gamma.get(),
        girth: girth.get(),
        a_min: size.value,
        a_min_source: size.source,
        rows,
    })
}

impl BoundReport {
    pub fn render_text(&self) -> String {
        let mut out = format!(
            "gamma={} girth={}: a >= {} [{}]\n",
            self.gamma, self.girth, self.a_min, self.a_min_source
        );
        let mut grid: Vec<Vec<String>> = vec![vec![
            "a".into(),
            "b_min".into(),
            "candidates b<a".into(),
            "max edges".into(),
            "source".into(),
        ]];
        for row in &self.rows {
            let cands = if row.candidates.is_empty() {
                "(none: analytic bounds exclude b<a)".to_string()
            } else {
                row.candidates
                    .iter()
                    .map(|b| b.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            };
            grid.push(vec![
                row.a.to_string(),
                row.b_min.to_string(),
                cands,
                format!(
                    "{}{}",
                    row.edge_bound,
                    if row.edge_bound_exact { "" } else { " (bound)" }
                ),
                row.edge_bound_source.to_string(),
            ]);
        }
        out.push_str(&crate::feasibility::render_grid(&grid));
        out
    }
}
