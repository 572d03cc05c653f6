//! Certificates for the zero tiling sum problem: construction from an
//! accepting run, exact verification, colour-level deduction and audit.

mod audit;
mod build;
mod forced;

use alloc::vec::Vec;

pub use audit::{claims_audit, AuditReport, ClaimFlag};
pub use build::{build_accepting_tiling, BuildError};
pub use forced::{forced_search, input_length, SearchError, SearchOutcome};

use crate::edge::{evaluate_placements, EdgeError, EdgeMap};
use crate::lattice::Point;
use crate::tiling::{Tile, TilingSystem};

/// A tile placed with its lower-left corner at `pos`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Placement {
    pub pos: Point,
    pub tile: Tile,
}

impl Placement {
    pub fn new(tile: Tile, x: i64, y: i64) -> Self {
        Placement {
            pos: Point::new(x, y),
            tile,
        }
    }
}

/// A multiset of placements together with the width parameter `m` and the
/// number of computation rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub placements: Vec<Placement>,
    pub width_m: i64,
    pub height_n: i64,
}

impl Certificate {
    /// Placements sorted row-major, for multiset comparison.
    pub fn sorted(&self) -> Vec<Placement> {
        let mut out = self.placements.clone();
        out.sort();
        out
    }

    pub fn same_multiset(&self, other: &Certificate) -> bool {
        self.sorted() == other.sorted()
    }

    pub fn sum(&self, ts: &TilingSystem, ring: crate::ring::Ring) -> Result<EdgeMap, EdgeError> {
        evaluate_placements(ts, self.placements.iter().map(|p| (&p.tile, p.pos)), ring)
    }
}

/// True iff `f0` plus the sum of the placed tiles is the zero map.
pub fn verify_zero(f0: &EdgeMap, cert: &Certificate, ts: &TilingSystem) -> Result<bool, EdgeError> {
    let mut total = cert.sum(ts, f0.ring())?;
    total.add_assign(f0)?;
    Ok(total.is_zero())
}

/// Tiles in the order they would be deduced row by row.
pub(crate) fn row_major(mut placements: Vec<Placement>) -> Vec<Placement> {
    placements.sort();
    placements
}
