//! Rational subsets of `Z/n wr (Z x Z)`: the fixed language of row sweeps,
//! Thompson automata, compiling subset sums into words, and bounded search.

mod nfa;
mod regex;
mod search;

use alloc::vec::Vec;

use num_bigint::BigInt;

pub use nfa::{nfa_accepts, regex_to_nfa, Edge, Nfa, NfaError};
pub use regex::{build_l, Regex};
pub use search::{accepted_elements, rational_member_bounded, RationalSearch};

use crate::group::{embed_module, Bindings, GroupError, Letter, Word, WreathElement};
use crate::lattice::Point;
use crate::ring::Ring;
use crate::semimodule::{SubsetSumInstance, Witness};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum RationalError {
    #[error("cannot parse expression at byte {0}")]
    BadRegex(usize),
    #[error("shift ({}, {}) is used twice", .0.x, .0.y)]
    DuplicateShift(Point),
    #[error("coefficient of the term at ({}, {}) is not one", .0.x, .0.y)]
    NotUnitCoefficient(Point),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// A subset sum problem restated as rational subset membership: the
/// language of [`build_l`] with `x` shifting by the module index, `y` by
/// one row and `gi` the embedded generator `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalInstance {
    pub ring: Ring,
    pub expr: Regex,
    pub bindings: Bindings,
    pub target: WreathElement,
}

pub fn rational_instance(inst: &SubsetSumInstance) -> Result<RationalInstance, GroupError> {
    let ring = inst.ring();
    let k = inst.rank().max(1);
    let mut bindings = Bindings::new();
    bindings.insert(
        Letter::X,
        WreathElement::shift_only(ring, 1, Point::new(k as i64, 0)),
    );
    bindings.insert(
        Letter::Y,
        WreathElement::shift_only(ring, 1, Point::new(0, 1)),
    );
    for (i, g) in inst.generators().iter().enumerate() {
        bindings.insert(Letter::Gen(i as u32), embed_module(g, k)?);
    }
    Ok(RationalInstance {
        ring,
        expr: build_l(inst.generators().len()),
        bindings,
        target: embed_module(inst.target(), k)?,
    })
}

/// Compiles a subset sum witness into a word of the row-sweep language.
///
/// Terms are sorted by row, then column. The word walks to the lowest row
/// at the leftmost column used, sweeps each row from there to its last
/// term dropping `gi` where a term sits, steps up and walks back, and
/// finally returns to the origin.
pub fn certificate_to_word(witness: &Witness) -> Result<Word, RationalError> {
    let mut terms: Vec<_> = witness.terms.iter().collect();
    terms.sort_by_key(|t| t.shift);
    for pair in terms.windows(2) {
        if pair[0].shift == pair[1].shift {
            return Err(RationalError::DuplicateShift(pair[0].shift));
        }
    }
    if let Some(t) = terms.iter().find(|t| t.coeff != BigInt::from(1)) {
        return Err(RationalError::NotUnitCoefficient(t.shift));
    }
    let mut w = Word::new();
    let (Some(first), Some(last)) = (terms.first(), terms.last()) else {
        return Ok(w);
    };
    let left = terms.iter().map(|t| t.shift.x).min().expect("non-empty");
    let (bottom, top) = (first.shift.y, last.shift.y);
    w.push_power(Letter::X, left);
    w.push_power(Letter::Y, bottom);
    let mut rest = terms.as_slice();
    for row in bottom..=top {
        let n = rest.iter().take_while(|t| t.shift.y == row).count();
        let (here, next) = rest.split_at(n);
        rest = next;
        let mut col = left;
        for t in here {
            w.push_power(Letter::X, t.shift.x - col);
            w.push(Letter::Gen(t.gen as u32));
            w.push(Letter::X);
            col = t.shift.x + 1;
        }
        w.push(Letter::Y);
        w.push_power(Letter::X, left - col);
    }
    w.push_power(Letter::Y, -(top + 1));
    w.push_power(Letter::X, -left);
    Ok(w)
}
