use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::{input_length, Certificate};
use crate::edge::EdgeMap;
use crate::lattice::{Orient, Point};
use crate::tiling::Color;

/// A structural property violated by a certificate.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ClaimFlag {
    /// Placed outside the region above the bottom row and right of the input.
    OutsideRegion(Point),
    /// A bottom-row tile above the bottom row.
    BottomTileAbove(Point),
    /// Placed right of column `m`.
    BeyondWidth(Point),
    /// Several tiles at one position of a computation row.
    Stacked(Point, usize),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AuditReport {
    pub flags: Vec<ClaimFlag>,
}

impl AuditReport {
    pub fn is_clean(&self) -> bool {
        self.flags.is_empty()
    }
}

/// Reports every placement that breaks the shape every constructed tiling has.
///
/// The input length is read from `f0`; if `f0` is not shaped like an initial
/// map, it is taken as the largest column on top of the bottom row.
pub fn claims_audit(cert: &Certificate, f0: &EdgeMap) -> AuditReport {
    let n = input_length(f0).unwrap_or_else(|_| {
        f0.support()
            .filter(|(e, _, _)| e.orient == Orient::H && e.base.y == 1)
            .map(|(e, _, _)| e.base.x)
            .max()
            .unwrap_or(0)
    });
    let m = cert.width_m;
    let mut flags = Vec::new();
    let mut count: BTreeMap<Point, usize> = BTreeMap::new();
    for p in &cert.placements {
        let Point { x, y } = p.pos;
        if x < 0 || y < 0 || (y == 0 && x <= n) {
            flags.push(ClaimFlag::OutsideRegion(p.pos));
        }
        if y >= 1 && p.tile.south == Color::Blank0 && p.tile.west == Color::ArrowRight {
            flags.push(ClaimFlag::BottomTileAbove(p.pos));
        }
        if x > m {
            flags.push(ClaimFlag::BeyondWidth(p.pos));
        }
        *count.entry(p.pos).or_default() += 1;
    }
    for (pos, k) in count {
        if k >= 2 && pos.y >= 1 && (0..=m).contains(&pos.x) {
            flags.push(ClaimFlag::Stacked(pos, k));
        }
    }
    flags.sort();
    AuditReport { flags }
}
