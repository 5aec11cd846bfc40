//! Validated scalar domain types shared by every analysis.

use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// The pair `(a, b)`: `a` variable nodes, `b` odd-degree (degree-one) check
/// nodes. Every bound in this crate speaks about such signatures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct EtsSignature {
    pub a: u32,
    pub b: u32,
}

impl EtsSignature {
    pub fn new(a: u32, b: u32) -> Result<Self> {
        if a == 0 {
            return Err(Error::InvalidInput("signature needs a >= 1".into()));
        }
        Ok(EtsSignature { a, b })
    }

    /// Whether the signature lies in the dominant regime `b/a < 1`.
    pub fn ratio_lt_one(&self) -> bool {
        self.b < self.a
    }
}

impl std::fmt::Display for EtsSignature {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

/// Column weight of a variable-regular code; written `gamma` throughout.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ColumnWeight(u32);

impl ColumnWeight {
    pub fn new(gamma: u32) -> Result<Self> {
        if gamma < 2 {
            return Err(Error::InvalidInput(format!(
                "column weight must be >= 2, got {gamma}"
            )));
        }
        Ok(ColumnWeight(gamma))
    }

    pub fn get(&self) -> u32 {
        self.0
    }
}

impl std::fmt::Display for ColumnWeight {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

/// Tanner-graph girth. Bipartite graphs only have even cycles, so `g` is an
/// even integer `>= 4`. A `2k`-cycle of the Tanner graph corresponds to a
/// `k`-cycle of the normal graph, so the normal-graph girth floor is `g/2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Girth(u32);

/// Which of the two girth families `g = 2(2k+1)` / `g = 2(2k+2)` a girth
/// belongs to, together with its `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GirthClass {
    /// `g = 2(2k+1)`: the normal graph has odd girth floor `2k+1`.
    OddHalf { k: u32 },
    /// `g = 2(2k+2)`: the normal graph has even girth floor `2k+2`.
    EvenHalf { k: u32 },
}

impl Girth {
    pub fn new(g: u32) -> Result<Self> {
        if g < 4 || !g.is_multiple_of(2) {
            return Err(Error::InvalidInput(format!(
                "girth must be an even integer >= 4, got {g}"
            )));
        }
        Ok(Girth(g))
    }

    pub fn get(&self) -> u32 {
        self.0
    }

    /// Minimum girth of the normal graph of any ETS under this Tanner girth.
    pub fn normal_girth(&self) -> u32 {
        self.0 / 2
    }

    /// The `(class, k)` decomposition of the girth; `k = floor((g/2 - 1)/2)`.
    pub fn class(&self) -> GirthClass {
        let half = self.0 / 2;
        if half % 2 == 1 {
            GirthClass::OddHalf { k: (half - 1) / 2 }
        } else {
            GirthClass::EvenHalf { k: (half - 2) / 2 }
        }
    }
}

impl std::fmt::Display for Girth {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

/// Non-empty set of permitted variable-node degrees for irregular analyses.
/// Kept sorted; `delta()` is the minimum member.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DegreeSet {
    degrees: Vec<u32>,
}

impl DegreeSet {
    pub fn new(mut degrees: Vec<u32>) -> Result<Self> {
        degrees.sort_unstable();
        degrees.dedup();
        if degrees.is_empty() {
            return Err(Error::InvalidInput("degree set must be non-empty".into()));
        }
        if degrees[0] < 2 {
            return Err(Error::InvalidInput(
                "degree set entries must be >= 2".into(),
            ));
        }
        Ok(DegreeSet { degrees })
    }

    pub fn delta(&self) -> u32 {
        self.degrees[0]
    }

    pub fn max(&self) -> u32 {
        *self.degrees.last().unwrap()
    }

    pub fn members(&self) -> &[u32] {
        &self.degrees
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, d: u32) -> bool {
        self.degrees.binary_search(&d).is_ok()
    }
}

impl std::fmt::Display for DegreeSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (i, d) in self.degrees.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, "}}")
    }
}
