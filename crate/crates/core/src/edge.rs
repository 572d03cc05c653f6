//! Finitely supported maps from (grid edge, colour) to a ring.

use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::lattice::{EdgeId, Point};
use crate::ring::{Ring, RingError, Sparse};
use crate::tiling::{Color, Tile, TilingSystem};

/// A finitely supported map `E x C -> R`.
///
/// Entries are ordered by `(y, x, orientation, colour)` of the edge's base.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeMap(Sparse<(EdgeId, Color)>);

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum EdgeError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("tile {0} is not part of the tiling system")]
    UnknownTile(usize),
}

impl EdgeMap {
    pub fn zero(ring: Ring) -> Self {
        EdgeMap(Sparse::zero(ring))
    }

    pub fn ring(&self) -> Ring {
        self.0.ring()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, edge: EdgeId, color: Color) -> Option<&BigInt> {
        self.0.get(&(edge, color))
    }

    pub fn add_at(&mut self, edge: EdgeId, color: Color, value: BigInt) {
        self.0.add_at((edge, color), value);
    }

    pub fn support(&self) -> impl Iterator<Item = (EdgeId, Color, &BigInt)> + '_ {
        self.0.iter().map(|((e, c), v)| (*e, *c, v))
    }

    /// Entries on one edge, in colour order.
    pub fn on_edge(&self, edge: EdgeId) -> impl Iterator<Item = (Color, &BigInt)> + '_ {
        self.0
            .iter()
            .skip_while(move |((e, _), _)| *e < edge)
            .take_while(move |((e, _), _)| *e == edge)
            .map(|((_, c), v)| (*c, v))
    }

    pub fn add(&self, other: &EdgeMap) -> Result<EdgeMap, RingError> {
        self.0.add(&other.0).map(EdgeMap)
    }

    pub fn add_assign(&mut self, other: &EdgeMap) -> Result<(), RingError> {
        self.0.add_assign(&other.0)
    }

    pub fn sub_assign(&mut self, other: &EdgeMap) -> Result<(), RingError> {
        self.0.add_scaled(&other.0, &BigInt::from(-1))
    }

    pub fn negate(&self) -> EdgeMap {
        EdgeMap(self.0.negate())
    }

    /// `result(e, c) = self(e - shift, c)`.
    pub fn translate(&self, shift: Point) -> EdgeMap {
        EdgeMap(self.0.map_keys(|(e, c)| (e.translate(shift), *c)))
    }

    pub fn change_ring(&self, ring: Ring) -> EdgeMap {
        EdgeMap(self.0.change_ring(ring))
    }

    pub fn inner(&self) -> &Sparse<(EdgeId, Color)> {
        &self.0
    }

    /// Bounding box of the support as `(min, max)` corner points over edge
    /// endpoints, or `None` for the zero map.
    pub fn bounds(&self) -> Option<(Point, Point)> {
        let mut it = self.support().flat_map(|(e, _, _)| {
            let (a, b) = e.endpoints();
            [a, b]
        });
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), p| {
            (
                Point::new(lo.x.min(p.x), lo.y.min(p.y)),
                Point::new(hi.x.max(p.x), hi.y.max(p.y)),
            )
        }))
    }
}

impl FromIterator<(EdgeId, Color, BigInt)> for EdgeMap {
    /// Collects over `Z`.
    fn from_iter<I: IntoIterator<Item = (EdgeId, Color, BigInt)>>(iter: I) -> Self {
        let mut out = EdgeMap::zero(Ring::Integers);
        for (e, c, v) in iter {
            out.add_at(e, c, v);
        }
        out
    }
}

/// The map of a single tile placed at the origin: `+1` on the north and
/// east sides, `-1` on the south and west sides, nothing for `Blank0`.
pub fn tile_eval(t: &Tile, ring: Ring) -> EdgeMap {
    let mut f = EdgeMap::zero(ring);
    let sides = [
        (EdgeId::h(0, 0), t.south, -1),
        (EdgeId::v(1, 0), t.east, 1),
        (EdgeId::h(0, 1), t.north, 1),
        (EdgeId::v(0, 0), t.west, -1),
    ];
    for (edge, color, sign) in sides {
        if color != Color::Blank0 {
            f.add_at(edge, color, BigInt::from(sign));
        }
    }
    f
}

/// `sum_i translate(tile_eval(t_i), p_i)`. Repeated placements accumulate.
pub fn evaluate_placements<'a>(
    ts: &TilingSystem,
    placements: impl IntoIterator<Item = (&'a Tile, Point)>,
    ring: Ring,
) -> Result<EdgeMap, EdgeError> {
    let mut f = EdgeMap::zero(ring);
    for (i, (tile, pos)) in placements.into_iter().enumerate() {
        if !ts.contains(tile) {
            return Err(EdgeError::UnknownTile(i));
        }
        f.add_assign(&tile_eval(tile, ring).translate(pos))?;
    }
    Ok(f)
}

/// Edges with their colours, grouped for display.
pub fn edges(f: &EdgeMap) -> Vec<(EdgeId, Vec<(Color, BigInt)>)> {
    let mut out: Vec<(EdgeId, Vec<(Color, BigInt)>)> = Vec::new();
    for (e, c, v) in f.support() {
        match out.last_mut() {
            Some((last, list)) if *last == e => list.push((c, v.clone())),
            _ => out.push((e, alloc::vec![(c, v.clone())])),
        }
    }
    out
}
