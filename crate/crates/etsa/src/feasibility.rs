//! Girth-independent necessary conditions on `(a, b, gamma)`.
//!
//! For a variable-regular code, `b = a*gamma - 2|E|` forces the parity of
//! `b`, and a normal graph in the dominant regime needs a vertex of full
//! degree `gamma`, which needs `a >= gamma + 1`. These exclusions hold for
//! every girth. "Feasible" only means "not excluded here"; existence is the
//! oracle's job.

use serde::Serialize;

use crate::types::ColumnWeight;
use crate::{Error, Result};

/// Verdict of the girth-independent screen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "verdict", content = "reason")]
pub enum Feasibility {
    Feasible,
    Infeasible(Reason),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Reason {
    /// `b >= a`: outside the dominant regime these screens speak about.
    Ratio,
    /// `a <= gamma`: no vertex can reach degree `gamma` on `a` vertices.
    Size,
    /// `b` has the wrong parity for `a * gamma - 2|E|`.
    Parity,
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible)
    }
}

/// Screens `(a, b)` under column weight `gamma`. Ratio is checked first (it
/// scopes the other rules), then size, then parity.
pub fn feasible(a: u32, b: u32, gamma: ColumnWeight) -> Result<Feasibility> {
    if a == 0 {
        return Err(Error::InvalidInput("a must be >= 1".into()));
    }
    if b >= a {
        return Ok(Feasibility::Infeasible(Reason::Ratio));
    }
    if a <= gamma.get() {
        return Ok(Feasibility::Infeasible(Reason::Size));
    }
    if (a * gamma.get()) % 2 != b % 2 {
        return Ok(Feasibility::Infeasible(Reason::Parity));
    }
    Ok(Feasibility::Feasible)
}

/// One cell of the nonexistence table: the `b < a` ruled out for `(a, gamma)`.
#[derive(Debug, Clone, Serialize)]
pub struct NonexistenceCell {
    pub a: u32,
    pub gamma: u32,
    pub infeasible_b: Vec<u32>,
    /// True when every `b < a` is excluded by the size rule (`a <= gamma`).
    pub all_infeasible_by_size: bool,
}

/// The infeasible-`b` table over rectangular ranges of `gamma` and `a`.
#[derive(Debug, Clone, Serialize)]
pub struct NonexistenceTable {
    pub gammas: Vec<u32>,
    pub a_values: Vec<u32>,
    pub cells: Vec<NonexistenceCell>,
}

pub fn nonexistence_table(
    gammas: impl IntoIterator<Item = ColumnWeight>,
    a_values: impl IntoIterator<Item = u32>,
) -> Result<NonexistenceTable> {
    let gammas: Vec<ColumnWeight> = gammas.into_iter().collect();
    let a_values: Vec<u32> = a_values.into_iter().collect();
    if gammas.is_empty() || a_values.is_empty() {
        return Err(Error::InvalidInput("table ranges must be non-empty".into()));
    }
    let mut cells = Vec::new();
    for &a in &a_values {
        for &gamma in &gammas {
            let infeasible_b: Vec<u32> = (0..a)
                .filter(|&b| !feasible(a, b, gamma).unwrap().is_feasible())
                .collect();
            cells.push(NonexistenceCell {
                a,
                gamma: gamma.get(),
                all_infeasible_by_size: a <= gamma.get(),
                infeasible_b,
            });
        }
    }
    Ok(NonexistenceTable {
        gammas: gammas.iter().map(|g| g.get()).collect(),
        a_values,
        cells,
    })
}

impl NonexistenceTable {
    pub fn cell(&self, a: u32, gamma: u32) -> Option<&NonexistenceCell> {
        self.cells.iter().find(|c| c.a == a && c.gamma == gamma)
    }

    /// Aligned text rendering: rows `a`, columns `gamma`, each cell the
    /// comma-separated infeasible `b` list, or `-` when the size rule wipes
    /// the whole row of the cell.
    pub fn render_text(&self) -> String {
        let mut grid: Vec<Vec<String>> = Vec::new();
        let mut header = vec![String::new()];
        header.extend(self.gammas.iter().map(|g| format!("gamma={g}")));
        grid.push(header);
        for &a in &self.a_values {
            let mut row = vec![format!("a={a}")];
            for &g in &self.gammas {
                let cell = self.cell(a, g).expect("rectangular table");
                if cell.all_infeasible_by_size {
                    row.push("-".to_string());
                } else {
                    let list: Vec<String> =
                        cell.infeasible_b.iter().map(|b| b.to_string()).collect();
                    row.push(format!("b={}", list.join(",")));
                }
            }
            grid.push(row);
        }
        render_grid(&grid)
    }
}

/// Pads columns to equal width, two spaces between columns.
pub(crate) fn render_grid(grid: &[Vec<String>]) -> String {
    let cols = grid.iter().map(|r| r.len()).max().unwrap_or(0);
    let mut widths = vec![0usize; cols];
    for row in grid {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.len());
        }
    }
    let mut out = String::new();
    for row in grid {
        let mut line = String::new();
        for (i, cell) in row.iter().enumerate() {
            if i > 0 {
                line.push_str("  ");
            }
            line.push_str(&format!("{:<width$}", cell, width = widths[i]));
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}
