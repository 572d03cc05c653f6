//! Coefficient rings and finitely supported maps over them.

use alloc::collections::btree_map::{self, BTreeMap};
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// The coefficient ring: the integers or `Z/nZ` with `n >= 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Ring {
    Integers,
    Modulo(u64),
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum RingError {
    #[error("ring mismatch: {0} vs {1}")]
    Mismatch(Ring, Ring),
    #[error("modulus must be at least 2, got {0}")]
    BadModulus(u64),
}

impl Ring {
    pub fn modulo(n: u64) -> Result<Ring, RingError> {
        if n < 2 {
            return Err(RingError::BadModulus(n));
        }
        Ok(Ring::Modulo(n))
    }

    /// Canonical representative of `v`.
    pub fn reduce(&self, v: BigInt) -> BigInt {
        match self {
            Ring::Integers => v,
            Ring::Modulo(n) => v.mod_floor(&BigInt::from(*n)),
        }
    }

    /// The modulus, or `None` for `Z`.
    pub fn characteristic(&self) -> Option<u64> {
        match self {
            Ring::Integers => None,
            Ring::Modulo(n) => Some(*n),
        }
    }

    pub fn one(&self) -> BigInt {
        BigInt::one()
    }

    pub fn check(&self, other: Ring) -> Result<(), RingError> {
        if *self == other {
            Ok(())
        } else {
            Err(RingError::Mismatch(*self, other))
        }
    }

    /// Whether non-negative combinations can be bounded by sign (only over `Z`).
    pub fn is_ordered(&self) -> bool {
        matches!(self, Ring::Integers)
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Integers => write!(f, "Z"),
            Ring::Modulo(n) => write!(f, "Zmod:{n}"),
        }
    }
}

impl core::str::FromStr for Ring {
    type Err = RingParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "Z" {
            return Ok(Ring::Integers);
        }
        let n = s
            .strip_prefix("Zmod:")
            .and_then(|n| n.parse::<u64>().ok())
            .ok_or(RingParseError)?;
        Ring::modulo(n).map_err(|_| RingParseError)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
#[error("expected `Z` or `Zmod:n` with n >= 2")]
pub struct RingParseError;

/// A finitely supported map `K -> R` with no stored zeros.
///
/// Iteration follows the key order, which every caller relies on for
/// deterministic output.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Sparse<K: Ord> {
    ring: Ring,
    entries: BTreeMap<K, BigInt>,
}

impl<K: Ord + Clone> Sparse<K> {
    pub fn zero(ring: Ring) -> Self {
        Sparse {
            ring,
            entries: BTreeMap::new(),
        }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, key: &K) -> Option<&BigInt> {
        self.entries.get(key)
    }

    pub fn iter(&self) -> btree_map::Iter<'_, K, BigInt> {
        self.entries.iter()
    }

    pub fn keys(&self) -> btree_map::Keys<'_, K, BigInt> {
        self.entries.keys()
    }

    pub fn first_key(&self) -> Option<&K> {
        self.entries.keys().next()
    }

    /// Adds `value` at `key`, pruning the entry if it becomes zero.
    pub fn add_at(&mut self, key: K, value: BigInt) {
        let value = self.ring.reduce(value);
        if value.is_zero() {
            return;
        }
        match self.entries.entry(key) {
            btree_map::Entry::Vacant(slot) => {
                slot.insert(value);
            }
            btree_map::Entry::Occupied(mut slot) => {
                let sum = self.ring.reduce(slot.get() + value);
                if sum.is_zero() {
                    slot.remove();
                } else {
                    *slot.get_mut() = sum;
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &Self) -> Result<(), RingError> {
        self.ring.check(other.ring)?;
        for (k, v) in other.iter() {
            self.add_at(k.clone(), v.clone());
        }
        Ok(())
    }

    /// `self += factor * other`.
    pub fn add_scaled(&mut self, other: &Self, factor: &BigInt) -> Result<(), RingError> {
        self.ring.check(other.ring)?;
        for (k, v) in other.iter() {
            self.add_at(k.clone(), v * factor);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, RingError> {
        let mut out = self.clone();
        out.add_assign(other)?;
        Ok(out)
    }

    pub fn negate(&self) -> Self {
        self.scale(&-BigInt::one())
    }

    pub fn scale(&self, factor: &BigInt) -> Self {
        let mut out = Sparse::zero(self.ring);
        for (k, v) in self.iter() {
            out.add_at(k.clone(), v * factor);
        }
        out
    }

    pub fn map_keys<L: Ord + Clone>(&self, mut f: impl FnMut(&K) -> L) -> Sparse<L> {
        let mut out = Sparse::zero(self.ring);
        for (k, v) in self.iter() {
            out.add_at(f(k), v.clone());
        }
        out
    }

    /// Reinterprets the coefficients in another ring (integers reduce canonically).
    pub fn change_ring(&self, ring: Ring) -> Self {
        let mut out = Sparse::zero(ring);
        for (k, v) in self.iter() {
            out.add_at(k.clone(), v.clone());
        }
        out
    }

    /// Largest absolute coefficient, as seen through the canonical representatives.
    pub fn max_abs(&self) -> BigInt {
        self.entries
            .values()
            .map(|v| v.abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    }
}

impl<K: Ord + Clone> FromIterator<(K, BigInt)> for Sparse<K> {
    /// Collects over `Z`.
    fn from_iter<I: IntoIterator<Item = (K, BigInt)>>(iter: I) -> Self {
        let mut out = Sparse::zero(Ring::Integers);
        for (k, v) in iter {
            out.add_at(k, v);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modular_reduction_is_canonical() {
        let r = Ring::Modulo(3);
        assert_eq!(r.reduce(BigInt::from(-1)), BigInt::from(2));
        assert_eq!(r.reduce(BigInt::from(7)), BigInt::from(1));
    }

    #[test]
    fn zeros_are_pruned() {
        let mut s: Sparse<u32> = Sparse::zero(Ring::Modulo(2));
        s.add_at(1, BigInt::from(1));
        s.add_at(1, BigInt::from(1));
        assert!(s.is_zero());
        s.add_at(2, BigInt::from(4));
        assert!(s.is_zero());
    }

    #[test]
    fn ring_parsing() {
        assert_eq!("Z".parse::<Ring>(), Ok(Ring::Integers));
        assert_eq!("Zmod:5".parse::<Ring>(), Ok(Ring::Modulo(5)));
        assert!("Zmod:1".parse::<Ring>().is_err());
        assert!("Q".parse::<Ring>().is_err());
        assert_eq!(Ring::Modulo(7).to_string(), "Zmod:7");
    }

    #[test]
    fn mismatched_rings_do_not_add() {
        let a: Sparse<u32> = Sparse::zero(Ring::Integers);
        let b: Sparse<u32> = Sparse::zero(Ring::Modulo(2));
        assert_eq!(
            a.add(&b),
            Err(RingError::Mismatch(Ring::Integers, Ring::Modulo(2)))
        );
    }
}
