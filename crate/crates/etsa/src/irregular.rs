//! Minimum trapping-set sizes for codes whose variable degrees range over a
//! set, at Tanner girth 8.
//!
//! The base instance is the tight regular one at the minimum degree
//! `delta`: signature `(2*delta - 1, delta)`. Realizing every other degree
//! in the set costs one raised code degree each, adding `d - delta` to the
//! deficiency; when the raised deficiency stays below the size, the base
//! size survives, otherwise the size must grow. The fast path applies that
//! arithmetic; the oracle certifies the answer either way.

use rayon::prelude::*;
use serde::Serialize;

use crate::extremal::Extremal;
use crate::normal::NormalGraph;
use crate::oracle::{self, DegreeSpec};
use crate::types::{DegreeSet, EtsSignature};
use crate::{Budget, Error, Result};

/// Certified minimum for one degree set.
#[derive(Debug, Clone, Serialize)]
pub struct IrregularMinimum {
    pub degrees: DegreeSet,
    /// Smallest size with some deficiency below it, and the least such
    /// deficiency at that size.
    pub signature: EtsSignature,
    pub witness: NormalGraph,
    /// The degree-raising shortcut's prediction, when it applies.
    pub fast_path: Option<EtsSignature>,
}

/// The degree-raising shortcut: starting from the `(2*delta-1, delta)` base,
/// one vertex per extra degree `d` adds `d - delta` to the deficiency. The
/// base size stands iff the result stays in the dominant regime.
pub fn fast_path(degrees: &DegreeSet) -> Option<EtsSignature> {
    let delta = degrees.delta();
    let a = 2 * delta - 1;
    let b: u32 = delta
        + degrees
            .members()
            .iter()
            .map(|&d| d - delta)
            .sum::<u32>();
    if b < a {
        Some(EtsSignature { a, b })
    } else {
        None
    }
}

/// A size that certainly admits an instance: a `delta`-regular bipartite
/// ring on `2q` vertices (girth >= 4, connected) with one code degree raised
/// per extra member keeps `b = sum(d - delta)` fixed, so any
/// `2q > sum(d - delta)` with `q >= delta` and room for the raises works.
fn scan_cap(degrees: &DegreeSet) -> u32 {
    let delta = degrees.delta();
    let extra: u32 = degrees.members().iter().map(|&d| d - delta).sum();
    2 * delta.max(extra / 2 + 1).max(degrees.len() as u32) + 2
}

/// Certified minimum size for the degree set, by ascending oracle scan.
pub fn min_size_irregular(
    degrees: &DegreeSet,
    extremal: &Extremal,
    budget: &Budget,
) -> Result<IrregularMinimum> {
    if degrees.len() < 2 {
        return Err(Error::InvalidInput(
            "irregular analysis needs at least two degrees".into(),
        ));
    }
    let spec = DegreeSpec::Irregular(degrees.clone());
    let cap = scan_cap(degrees);
    let found = oracle::min_size_observed(&spec, 4, cap, extremal, budget)?;
    let (signature, witness) = found.ok_or_else(|| {
        Error::InvalidInput(format!(
            "no instance for {degrees} up to size {cap}; the construction argument guarantees one"
        ))
    })?;
    Ok(IrregularMinimum {
        degrees: degrees.clone(),
        signature,
        witness,
        fast_path: fast_path(degrees),
    })
}

/// One table entry; `Unknown` marks a budget-exhausted subset.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum IrregularEntry {
    Known(IrregularMinimum),
    Unknown { degrees: DegreeSet },
}

#[derive(Debug, Clone, Serialize)]
pub struct IrregularTable {
    pub universe: DegreeSet,
    pub entries: Vec<IrregularEntry>,
}

/// Minima for every subset (of size >= 2) of the universe, computed
/// independently in parallel, reported in subset order.
pub fn irregular_table(
    universe: &DegreeSet,
    extremal: &Extremal,
    budget: &Budget,
) -> Result<IrregularTable> {
    if universe.len() > 6 {
        return Err(Error::InvalidInput(
            "table universes beyond 6 degrees blow up; pick a subset".into(),
        ));
    }
    let members = universe.members();
    let mut subsets: Vec<DegreeSet> = Vec::new();
    for mask in 1u32..(1 << members.len()) {
        if mask.count_ones() < 2 {
            continue;
        }
        let chosen: Vec<u32> = members
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, &d)| d)
            .collect();
        subsets.push(DegreeSet::new(chosen).expect("subset of a valid set"));
    }
    subsets.sort_by(|x, y| x.members().cmp(y.members()));
    let entries: Vec<IrregularEntry> = subsets
        .par_iter()
        .map(|d| match min_size_irregular(d, extremal, budget) {
            Ok(min) => IrregularEntry::Known(min),
            Err(Error::BudgetExceeded) => IrregularEntry::Unknown { degrees: d.clone() },
            Err(e) => panic!("irregular table: {e}"),
        })
        .collect();
    Ok(IrregularTable {
        universe: universe.clone(),
        entries,
    })
}

impl IrregularTable {
    pub fn entry(&self, degrees: &[u32]) -> Option<&IrregularEntry> {
        self.entries.iter().find(|e| match e {
            IrregularEntry::Known(m) => m.degrees.members() == degrees,
            IrregularEntry::Unknown { degrees: d } => d.members() == degrees,
        })
    }

    pub fn known(&self, degrees: &[u32]) -> Option<&IrregularMinimum> {
        match self.entry(degrees)? {
            IrregularEntry::Known(m) => Some(m),
            IrregularEntry::Unknown { .. } => None,
        }
    }

    /// Text layout grouped by minimum size, one line per size.
    pub fn render_text(&self) -> String {
        let mut by_a: std::collections::BTreeMap<u32, Vec<String>> =
            std::collections::BTreeMap::new();
        let mut unknown: Vec<String> = Vec::new();
        for entry in &self.entries {
            match entry {
                IrregularEntry::Known(m) => by_a.entry(m.signature.a).or_default().push(format!(
                    "{} ETS and d(v) in {}",
                    m.signature, m.degrees
                )),
                IrregularEntry::Unknown { degrees } => unknown.push(degrees.to_string()),
            }
        }
        let mut out = String::new();
        for (a, lines) in by_a {
            out.push_str(&format!("a={a}: {}\n", lines.join(", ")));
        }
        if !unknown.is_empty() {
            out.push_str(&format!("unknown (budget): {}\n", unknown.join(", ")));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(ds: &[u32]) -> DegreeSet {
        DegreeSet::new(ds.to_vec()).unwrap()
    }

    fn minimum(ds: &[u32]) -> IrregularMinimum {
        let extremal = Extremal::new();
        min_size_irregular(&set(ds), &extremal, &Budget::default()).unwrap()
    }

    #[test]
    fn fast_path_arithmetic() {
        assert_eq!(
            fast_path(&set(&[4, 5])),
            Some(EtsSignature { a: 7, b: 5 })
        );
        assert_eq!(
            fast_path(&set(&[4, 6])),
            Some(EtsSignature { a: 7, b: 6 })
        );
        // Raising past the gap forces a bigger size.
        assert_eq!(fast_path(&set(&[4, 7])), None);
        assert_eq!(fast_path(&set(&[2, 3])), None);
    }

    #[test]
    fn reference_minima() {
        let cases: &[(&[u32], (u32, u32))] = &[
            (&[2, 3], (4, 1)),
            (&[2, 4], (4, 2)),
            (&[2, 5], (4, 3)),
            (&[2, 3, 4], (4, 3)),
            (&[3, 4], (5, 4)),
            (&[2, 3, 5], (5, 2)),
            (&[4, 5], (7, 5)),
            (&[5, 6], (9, 6)),
        ];
        for &(ds, (a, b)) in cases {
            let m = minimum(ds);
            assert_eq!(m.signature, EtsSignature { a, b }, "D={ds:?}");
        }
    }

    #[test]
    fn raising_past_the_gap_moves_to_eight() {
        let m = minimum(&[4, 7]);
        assert_eq!(m.signature.a, 8);
    }

    #[test]
    fn witnesses_are_sound() {
        for ds in [&[2, 3][..], &[3, 4], &[4, 6], &[2, 5, 6]] {
            let m = minimum(ds);
            let w = &m.witness;
            assert!(w.validate().is_ok());
            assert!(w.signature().ratio_lt_one());
            assert!(w.girth().is_none_or(|g| g >= 4), "triangle-free");
            // Every degree of the set appears among the code degrees.
            for &d in m.degrees.members() {
                assert!(w.code_degrees().contains(&d), "degree {d} missing");
            }
            // The size bound at the minimum member holds.
            assert!(m.signature.a >= 2 * m.degrees.delta() - 1);
        }
    }

    #[test]
    fn fast_path_agrees_with_oracle_when_it_applies() {
        let universe = set(&[2, 3, 4, 5, 6]);
        let extremal = Extremal::new();
        let table = irregular_table(&universe, &extremal, &Budget::default()).unwrap();
        assert_eq!(table.entries.len(), 26);
        for entry in &table.entries {
            let IrregularEntry::Known(m) = entry else {
                panic!("budget should cover the whole universe");
            };
            if let Some(predicted) = m.fast_path {
                assert_eq!(m.signature, predicted, "D={}", m.degrees);
            }
            assert!(m.signature.a >= 2 * m.degrees.delta() - 1);
        }
    }

    #[test]
    fn table_lookup_and_rendering() {
        let extremal = Extremal::new();
        let table =
            irregular_table(&set(&[2, 3, 4]), &extremal, &Budget::default()).unwrap();
        assert_eq!(table.entries.len(), 4);
        let m = table.known(&[2, 3]).unwrap();
        assert_eq!(m.signature, EtsSignature { a: 4, b: 1 });
        let text = table.render_text();
        assert!(text.contains("a=4"));
        assert!(text.contains("{2,3}"));
    }
}
