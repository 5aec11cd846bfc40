//! Analysis toolkit for elementary trapping sets (ETSs) of LDPC codes.
//!
//! An `(a, b)` trapping set is an induced subgraph of a Tanner graph on `a`
//! variable nodes whose induced check nodes include exactly `b` of odd degree;
//! it is *elementary* when every induced check node has degree one or two.
//! Contracting the degree-two checks to edges and dropping the degree-one
//! checks turns an elementary trapping set into its *normal graph*, a simple
//! graph on `a` vertices whose total deficiency `sum(code_degree - degree)`
//! equals `b`. All analyses in this crate run on normal graphs.
//!
//! The crate provides, per module:
//!
//! - [`types`] / [`normal`]: validated domain types (signatures, column
//!   weights, girths, degree sets, normal graphs).
//! - [`feasibility`]: girth-independent parity/size exclusions on `(a, b)`.
//! - [`extremal`]: maximum edge counts of graphs with a girth floor, both
//!   exact (exhaustive search with isomorphism pruning) and analytic
//!   (Mantel, Garnick, Furedi).
//! - [`bounds`]: lower bounds on the size and deficiency of ETSs as a
//!   function of column weight and Tanner girth.
//! - [`oracle`]: exhaustive existence decisions for `(a, b)` signatures,
//!   with certified witnesses.
//! - [`constructions`]: deterministic generators for tight instances.
//! - [`irregular`]: minimum ETS sizes for codes with a set of column weights.
//! - [`tanner`]: alist ingestion, girth computation and subgraph scanning
//!   for concrete parity-check codes.

pub mod bounds;
pub mod constructions;
pub mod extremal;
pub mod feasibility;
pub mod irregular;
pub mod normal;
pub mod oracle;
pub mod tanner;
pub mod types;

mod canon;
mod search;

pub use normal::{NormalGraph, Validation};
pub use types::{ColumnWeight, DegreeSet, EtsSignature, Girth};

/// Errors shared across the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Input violated a precondition (bad parameter, unsupported range).
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// A text format (alist) could not be parsed; reports the offending line.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    /// A search hit its node-expansion budget before reaching a certificate.
    #[error("search budget exhausted before certification")]
    BudgetExceeded,
}

pub type Result<T> = std::result::Result<T, Error>;

/// Node-expansion budget for the exhaustive searches.
///
/// One unit is charged per search-tree node expansion, so results are
/// machine-independent. Searches return [`Error::BudgetExceeded`] instead of
/// an uncertified answer when the budget runs out.
#[derive(Debug, Clone, Copy)]
pub struct Budget {
    limit: u64,
}

impl Budget {
    pub const DEFAULT_LIMIT: u64 = 100_000_000;

    pub fn new(limit: u64) -> Self {
        Budget { limit }
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// A fresh counter bound to this budget.
    pub(crate) fn meter(&self) -> BudgetMeter {
        BudgetMeter {
            limit: self.limit,
            used: 0,
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(Self::DEFAULT_LIMIT)
    }
}

/// Mutable expansion counter for one search run.
#[derive(Debug)]
pub(crate) struct BudgetMeter {
    limit: u64,
    used: u64,
}

impl BudgetMeter {
    pub(crate) fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.limit {
            Err(Error::BudgetExceeded)
        } else {
            Ok(())
        }
    }
}
