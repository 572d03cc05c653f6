//! Free modules of finite rank over `R[Z x Z]` and bounded membership search.

mod search;

use alloc::vec::Vec;

use num_bigint::BigInt;

pub use search::{member_bounded, subset_sum_bounded, Search, Term, Witness};

use crate::edge::{tile_eval, EdgeMap};
use crate::engine::Certificate;
use crate::lattice::{EdgeId, Orient, Point};
use crate::ring::{Ring, RingError, Sparse};
use crate::tiling::{Color, TilingSystem};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ModuleError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("colour {0:?} is not in the colour index")]
    UnknownColor(Color),
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("basis index {idx} out of range for rank {rank}")]
    IndexOutOfRange { idx: usize, rank: usize },
    #[error("subset sums need a ring Zmod:n")]
    NeedsFiniteRing,
    #[error("generator {0} is zero")]
    ZeroGenerator(usize),
    #[error("tile {0} is not in the tiling system")]
    UnknownTile(usize),
}

/// An element of the free `R[Z x Z]`-module with basis `0..rank`: a finitely
/// supported map from (lattice point, basis index) to `R`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ModuleElement {
    rank: usize,
    entries: Sparse<(Point, usize)>,
}

impl ModuleElement {
    pub fn zero(ring: Ring, rank: usize) -> Self {
        ModuleElement {
            rank,
            entries: Sparse::zero(ring),
        }
    }

    /// The basis vector `idx` sitting at `pos`.
    pub fn basis(ring: Ring, rank: usize, pos: Point, idx: usize) -> Result<Self, ModuleError> {
        let mut e = ModuleElement::zero(ring, rank);
        e.add_at(pos, idx, BigInt::from(1))?;
        Ok(e)
    }

    pub fn from_entries(
        ring: Ring,
        rank: usize,
        entries: impl IntoIterator<Item = (Point, usize, BigInt)>,
    ) -> Result<Self, ModuleError> {
        let mut e = ModuleElement::zero(ring, rank);
        for (p, i, v) in entries {
            e.add_at(p, i, v)?;
        }
        Ok(e)
    }

    pub fn ring(&self) -> Ring {
        self.entries.ring()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_zero()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, pos: Point, idx: usize) -> Option<&BigInt> {
        self.entries.get(&(pos, idx))
    }

    pub fn entries(&self) -> impl Iterator<Item = (Point, usize, &BigInt)> + '_ {
        self.entries.iter().map(|((p, i), v)| (*p, *i, v))
    }

    pub fn sparse(&self) -> &Sparse<(Point, usize)> {
        &self.entries
    }

    pub fn add_at(&mut self, pos: Point, idx: usize, value: BigInt) -> Result<(), ModuleError> {
        if idx >= self.rank {
            return Err(ModuleError::IndexOutOfRange {
                idx,
                rank: self.rank,
            });
        }
        self.entries.add_at((pos, idx), value);
        Ok(())
    }

    fn check(&self, other: &ModuleElement) -> Result<(), ModuleError> {
        self.ring().check(other.ring())?;
        if self.rank != other.rank {
            return Err(ModuleError::RankMismatch {
                expected: self.rank,
                found: other.rank,
            });
        }
        Ok(())
    }

    pub fn add_assign(&mut self, other: &ModuleElement) -> Result<(), ModuleError> {
        self.check(other)?;
        self.entries.add_assign(&other.entries)?;
        Ok(())
    }

    /// `self += factor * other`.
    pub fn add_scaled(
        &mut self,
        other: &ModuleElement,
        factor: &BigInt,
    ) -> Result<(), ModuleError> {
        self.check(other)?;
        self.entries.add_scaled(&other.entries, factor)?;
        Ok(())
    }

    pub fn add(&self, other: &ModuleElement) -> Result<ModuleElement, ModuleError> {
        let mut out = self.clone();
        out.add_assign(other)?;
        Ok(out)
    }

    pub fn negate(&self) -> ModuleElement {
        ModuleElement {
            rank: self.rank,
            entries: self.entries.negate(),
        }
    }

    pub fn scale(&self, factor: &BigInt) -> ModuleElement {
        ModuleElement {
            rank: self.rank,
            entries: self.entries.scale(factor),
        }
    }

    /// The action of a group element: every entry moves by `by`.
    pub fn shift(&self, by: Point) -> ModuleElement {
        ModuleElement {
            rank: self.rank,
            entries: self.entries.map_keys(|(p, i)| (*p + by, *i)),
        }
    }

    /// Moves basis index `i` to `f(i)` in a module of rank `rank`.
    pub fn reindex(
        &self,
        rank: usize,
        mut f: impl FnMut(Point, usize) -> (Point, usize),
    ) -> Result<ModuleElement, ModuleError> {
        let mut out = ModuleElement::zero(self.ring(), rank);
        for (p, i, v) in self.entries() {
            let (q, j) = f(p, i);
            out.add_at(q, j, v.clone())?;
        }
        Ok(out)
    }

    pub fn change_ring(&self, ring: Ring) -> ModuleElement {
        ModuleElement {
            rank: self.rank,
            entries: self.entries.change_ring(ring),
        }
    }
}

/// Module coordinates of an edge map: horizontal edges use indices
/// `0..|C|`, vertical ones `|C|..2|C|`, each in colour-index order.
pub fn from_edgemap(f: &EdgeMap, color_index: &[Color]) -> Result<ModuleElement, ModuleError> {
    let k = color_index.len();
    let mut out = ModuleElement::zero(f.ring(), 2 * k);
    for (e, c, v) in f.support() {
        let pos = color_index
            .iter()
            .position(|d| *d == c)
            .ok_or(ModuleError::UnknownColor(c))?;
        let offset = match e.orient {
            Orient::H => 0,
            Orient::V => k,
        };
        out.add_at(e.base, offset + pos, v.clone())?;
    }
    Ok(out)
}

/// Inverse of [`from_edgemap`].
pub fn to_edgemap(e: &ModuleElement, color_index: &[Color]) -> Result<EdgeMap, ModuleError> {
    let k = color_index.len();
    if e.rank() != 2 * k {
        return Err(ModuleError::RankMismatch {
            expected: 2 * k,
            found: e.rank(),
        });
    }
    let mut out = EdgeMap::zero(e.ring());
    for (p, i, v) in e.entries() {
        let (orient, c) = if i < k {
            (Orient::H, i)
        } else {
            (Orient::V, i - k)
        };
        out.add_at(EdgeId { base: p, orient }, color_index[c], v.clone());
    }
    Ok(out)
}

/// Generators and a target of equal ring and rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemimoduleInstance {
    ring: Ring,
    rank: usize,
    generators: Vec<ModuleElement>,
    target: ModuleElement,
}

fn check_all(
    ring: Ring,
    rank: usize,
    gens: &[ModuleElement],
    target: &ModuleElement,
) -> Result<(), ModuleError> {
    for e in gens.iter().chain([target]) {
        ring.check(e.ring())?;
        if e.rank() != rank {
            return Err(ModuleError::RankMismatch {
                expected: rank,
                found: e.rank(),
            });
        }
    }
    Ok(())
}

impl SemimoduleInstance {
    pub fn new(
        ring: Ring,
        rank: usize,
        generators: Vec<ModuleElement>,
        target: ModuleElement,
    ) -> Result<Self, ModuleError> {
        check_all(ring, rank, &generators, &target)?;
        Ok(SemimoduleInstance {
            ring,
            rank,
            generators,
            target,
        })
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn generators(&self) -> &[ModuleElement] {
        &self.generators
    }

    pub fn target(&self) -> &ModuleElement {
        &self.target
    }

    /// The same data read over another ring.
    pub fn change_ring(&self, ring: Ring) -> SemimoduleInstance {
        SemimoduleInstance {
            ring,
            rank: self.rank,
            generators: self
                .generators
                .iter()
                .map(|g| g.change_ring(ring))
                .collect(),
            target: self.target.change_ring(ring),
        }
    }
}

/// Generators `F` (non-zero) and a target over a finite ring `Z/n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetSumInstance {
    ring: Ring,
    rank: usize,
    generators: Vec<ModuleElement>,
    target: ModuleElement,
}

impl SubsetSumInstance {
    pub fn new(
        ring: Ring,
        rank: usize,
        generators: Vec<ModuleElement>,
        target: ModuleElement,
    ) -> Result<Self, ModuleError> {
        if ring.characteristic().is_none() {
            return Err(ModuleError::NeedsFiniteRing);
        }
        check_all(ring, rank, &generators, &target)?;
        if let Some(i) = generators.iter().position(ModuleElement::is_zero) {
            return Err(ModuleError::ZeroGenerator(i));
        }
        Ok(SubsetSumInstance {
            ring,
            rank,
            generators,
            target,
        })
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn generators(&self) -> &[ModuleElement] {
        &self.generators
    }

    pub fn target(&self) -> &ModuleElement {
        &self.target
    }

    pub fn as_semimodule(&self) -> SemimoduleInstance {
        SemimoduleInstance {
            ring: self.ring,
            rank: self.rank,
            generators: self.generators.clone(),
            target: self.target.clone(),
        }
    }
}

/// The instance asking whether `-f0` is a non-negative combination of
/// translated tile maps, i.e. whether a zero tiling sum exists.
pub fn tiling_to_instance(ts: &TilingSystem, f0: &EdgeMap) -> SemimoduleInstance {
    let ring = f0.ring();
    let index = ts.color_index();
    let generators = ts
        .tiles()
        .iter()
        .map(|t| from_edgemap(&tile_eval(t, ring), &index).expect("tiles use system colours"))
        .collect();
    let target = from_edgemap(&f0.negate(), &index).expect("initial maps use system colours");
    SemimoduleInstance::new(ring, 2 * index.len(), generators, target)
        .expect("uniform ring and rank")
}

/// The same instance as a subset sum problem; the ring must be `Z/n`.
///
/// Tiles whose map vanishes are dropped; their generator indices are
/// returned alongside so witnesses can be mapped back.
pub fn tiling_to_subset_sum(
    ts: &TilingSystem,
    f0: &EdgeMap,
) -> Result<(SubsetSumInstance, Vec<usize>), ModuleError> {
    let inst = tiling_to_instance(ts, f0);
    let keep: Vec<usize> = (0..inst.generators.len())
        .filter(|&i| !inst.generators[i].is_zero())
        .collect();
    let gens = keep.iter().map(|&i| inst.generators[i].clone()).collect();
    Ok((
        SubsetSumInstance::new(inst.ring, inst.rank, gens, inst.target)?,
        keep,
    ))
}

/// The witness a certificate provides for [`tiling_to_instance`]: one term
/// per distinct (position, tile), with its multiplicity.
pub fn certificate_witness(ts: &TilingSystem, cert: &Certificate) -> Result<Witness, ModuleError> {
    let mut terms: Vec<Term> = Vec::new();
    for (i, p) in cert.sorted().into_iter().enumerate() {
        let gen = ts.position(&p.tile).ok_or(ModuleError::UnknownTile(i))?;
        match terms.last_mut() {
            Some(t) if t.shift == p.pos && t.gen == gen => t.coeff += 1u32,
            _ => terms.push(Term {
                shift: p.pos,
                gen,
                coeff: BigInt::from(1),
            }),
        }
    }
    Ok(Witness { terms })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn colors() -> Vec<Color> {
        alloc::vec![Color::Blank0, Color::ArrowRight, Color::ArrowUp]
    }

    #[test]
    fn zero_round_trips() {
        let e = from_edgemap(&EdgeMap::zero(Ring::Integers), &colors()).unwrap();
        assert!(e.is_zero());
        assert_eq!(e.rank(), 6);
        assert!(to_edgemap(&e, &colors()).unwrap().is_zero());
    }

    #[test]
    fn vertical_edges_use_the_upper_half() {
        let mut f = EdgeMap::zero(Ring::Integers);
        f.add_at(EdgeId::v(2, 0), Color::ArrowUp, BigInt::from(5));
        let e = from_edgemap(&f, &colors()).unwrap();
        assert_eq!(e.get(Point::new(2, 0), 3 + 2), Some(&BigInt::from(5)));
        assert_eq!(to_edgemap(&e, &colors()).unwrap(), f);
    }

    #[test]
    fn unknown_colour_is_an_error() {
        let mut f = EdgeMap::zero(Ring::Integers);
        f.add_at(EdgeId::v(2, 0), Color::TriLeft, BigInt::from(1));
        assert_eq!(
            from_edgemap(&f, &colors()),
            Err(ModuleError::UnknownColor(Color::TriLeft))
        );
    }

    #[test]
    fn rank_is_checked() {
        let e = ModuleElement::zero(Ring::Integers, 4);
        assert!(matches!(
            to_edgemap(&e, &colors()),
            Err(ModuleError::RankMismatch { .. })
        ));
        let mut e = ModuleElement::zero(Ring::Integers, 2);
        assert!(e.add_at(Point::ORIGIN, 2, BigInt::from(1)).is_err());
    }

    #[test]
    fn subset_sum_needs_finite_ring() {
        let g = ModuleElement::basis(Ring::Integers, 1, Point::ORIGIN, 0).unwrap();
        assert_eq!(
            SubsetSumInstance::new(Ring::Integers, 1, alloc::vec![g.clone()], g),
            Err(ModuleError::NeedsFiniteRing)
        );
        let z = ModuleElement::zero(Ring::Modulo(2), 1);
        assert_eq!(
            SubsetSumInstance::new(Ring::Modulo(2), 1, alloc::vec![z.clone()], z),
            Err(ModuleError::ZeroGenerator(0))
        );
    }
}
