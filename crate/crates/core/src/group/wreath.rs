use alloc::collections::BTreeMap;

use super::{GroupError, Letter, Word};
use crate::lattice::Point;
use crate::ring::Ring;
use crate::semimodule::{ModuleElement, ModuleError};

/// An element `(f, z)` of `R[Z x Z]^k x| (Z x Z)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WreathElement {
    pub fun: ModuleElement,
    pub shift: Point,
}

impl WreathElement {
    pub fn identity(ring: Ring, rank: usize) -> Self {
        WreathElement {
            fun: ModuleElement::zero(ring, rank),
            shift: Point::ORIGIN,
        }
    }

    pub fn shift_only(ring: Ring, rank: usize, by: Point) -> Self {
        WreathElement {
            fun: ModuleElement::zero(ring, rank),
            shift: by,
        }
    }

    pub fn from_fun(fun: ModuleElement) -> Self {
        WreathElement {
            fun,
            shift: Point::ORIGIN,
        }
    }

    pub fn ring(&self) -> Ring {
        self.fun.ring()
    }

    pub fn rank(&self) -> usize {
        self.fun.rank()
    }

    pub fn is_identity(&self) -> bool {
        self.fun.is_zero() && self.shift == Point::ORIGIN
    }

    /// `(f1, z1)(f2, z2) = (f1 + z1.f2, z1 + z2)`.
    pub fn mul(&self, other: &WreathElement) -> Result<WreathElement, ModuleError> {
        let mut out = self.clone();
        out.mul_assign(other)?;
        Ok(out)
    }

    pub fn mul_assign(&mut self, other: &WreathElement) -> Result<(), ModuleError> {
        self.fun.add_assign(&other.fun.shift(self.shift))?;
        self.shift = self.shift + other.shift;
        Ok(())
    }

    /// `(f, z)^-1 = (-((-z).f), -z)`.
    pub fn inverse(&self) -> WreathElement {
        WreathElement {
            fun: self.fun.shift(-self.shift).negate(),
            shift: -self.shift,
        }
    }
}

/// Elements assigned to letters. A missing inverse letter is evaluated as
/// the inverse of its positive letter.
pub type Bindings = BTreeMap<Letter, WreathElement>;

/// The standard generators of `R wr (Z x Z)` with `rank` lamp colours:
/// `x` and `y` shift, `gi` is the unit lamp of colour `i` at the origin.
pub fn lamplighter_bindings(ring: Ring, rank: usize) -> Bindings {
    let mut b = Bindings::new();
    b.insert(
        Letter::X,
        WreathElement::shift_only(ring, rank, Point::new(1, 0)),
    );
    b.insert(
        Letter::Y,
        WreathElement::shift_only(ring, rank, Point::new(0, 1)),
    );
    for i in 0..rank {
        let lamp = ModuleElement::basis(ring, rank, Point::ORIGIN, i).expect("index below rank");
        b.insert(Letter::Gen(i as u32), WreathElement::from_fun(lamp));
    }
    b
}

fn lookup(bindings: &Bindings, l: Letter) -> Result<WreathElement, GroupError> {
    if let Some(g) = bindings.get(&l) {
        return Ok(g.clone());
    }
    if l.is_inverse() {
        if let Some(g) = bindings.get(&l.inverse()) {
            return Ok(g.inverse());
        }
    }
    Err(GroupError::UnboundSymbol(l))
}

/// Left-to-right product of the letters of `w`; the empty word is the
/// identity of the given ring and rank.
pub fn eval_word(
    bindings: &Bindings,
    ring: Ring,
    rank: usize,
    w: &Word,
) -> Result<WreathElement, GroupError> {
    let mut cache: BTreeMap<Letter, WreathElement> = BTreeMap::new();
    let mut acc = WreathElement::identity(ring, rank);
    for &l in w.letters() {
        let g = match cache.entry(l) {
            alloc::collections::btree_map::Entry::Occupied(e) => e.into_mut(),
            alloc::collections::btree_map::Entry::Vacant(e) => e.insert(lookup(bindings, l)?),
        };
        acc.mul_assign(g)?;
    }
    Ok(acc)
}

/// Realizes a rank-`k` module over `R[mZ x Z]` inside rank one over
/// `R[Z x Z]` with coset representatives `(j, 0)`: entry `((a, b), j)` goes
/// to the lattice point `(m a + j, b)`.
pub fn embed_module(e: &ModuleElement, m: usize) -> Result<WreathElement, GroupError> {
    if e.rank() > m {
        return Err(GroupError::RankExceedsIndex {
            rank: e.rank(),
            index: m,
        });
    }
    let mi = m as i64;
    let fun = e.reindex(1, |p, j| (Point::new(mi * p.x + j as i64, p.y), 0))?;
    Ok(WreathElement::from_fun(fun))
}

/// Inverse of [`embed_module`] onto rank `k`.
pub fn unembed_module(g: &WreathElement, m: usize, k: usize) -> Result<ModuleElement, GroupError> {
    let mi = m as i64;
    let mut out = ModuleElement::zero(g.ring(), k);
    for (p, _, v) in g.fun.entries() {
        let j = p.x.rem_euclid(mi);
        out.add_at(Point::new(p.x.div_euclid(mi), p.y), j as usize, v.clone())?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn lamp(ring: Ring) -> Bindings {
        lamplighter_bindings(ring, 1)
    }

    #[test]
    fn conjugating_a_lamp_moves_it() {
        let b = lamp(Ring::Integers);
        let w: Word = "xg0X".parse().unwrap();
        let g = eval_word(&b, Ring::Integers, 1, &w).unwrap();
        let expected = ModuleElement::basis(Ring::Integers, 1, Point::new(1, 0), 0).unwrap();
        assert_eq!(g, WreathElement::from_fun(expected));
    }

    #[test]
    fn conjugate_power_scales_the_lamp() {
        let b = lamp(Ring::Integers);
        let w: Word = "xyg0YX".parse().unwrap();
        let g = eval_word(&b, Ring::Integers, 1, &w.power(3)).unwrap();
        let one = ModuleElement::basis(Ring::Integers, 1, Point::new(1, 1), 0).unwrap();
        assert_eq!(g, WreathElement::from_fun(one.scale(&BigInt::from(3))));
    }

    #[test]
    fn empty_word_is_the_identity() {
        let g = eval_word(&lamp(Ring::Integers), Ring::Integers, 1, &Word::new()).unwrap();
        assert!(g.is_identity());
    }

    #[test]
    fn unbound_letters_are_reported() {
        let w: Word = "g1".parse().unwrap();
        assert_eq!(
            eval_word(&lamp(Ring::Integers), Ring::Integers, 1, &w),
            Err(GroupError::UnboundSymbol(Letter::Gen(1)))
        );
    }

    #[test]
    fn embedding_places_cosets() {
        let e = ModuleElement::from_entries(
            Ring::Integers,
            2,
            [(Point::new(1, 0), 1, BigInt::from(5))],
        )
        .unwrap();
        let g = embed_module(&e, 3).unwrap();
        assert_eq!(g.fun.get(Point::new(4, 0), 0), Some(&BigInt::from(5)));
        assert_eq!(unembed_module(&g, 3, 2).unwrap(), e);
        assert!(matches!(
            embed_module(&e, 1),
            Err(GroupError::RankExceedsIndex { .. })
        ));
    }

    #[test]
    fn inverse_cancels() {
        let b = lamp(Ring::Modulo(3));
        let g = eval_word(&b, Ring::Modulo(3), 1, &"xg0yg0g0X".parse().unwrap()).unwrap();
        assert!(g.mul(&g.inverse()).unwrap().is_identity());
        assert!(g.inverse().mul(&g).unwrap().is_identity());
    }
}
