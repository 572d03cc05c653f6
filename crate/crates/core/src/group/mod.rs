//! Wreath products over `Z x Z`, the free metabelian group of rank two as
//! edge flows, and submonoid membership instances built from module problems.

mod metabelian;
mod submonoid;
mod wreath;

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

pub use metabelian::{
    basis_change, basis_restore, boundary, cell_coefficients, flow_decompose, flow_to_word,
    metabelian_eval, CellDecomposition, Flow, MetabelianElement,
};
pub use submonoid::{
    certificate_from_witness, make_submonoid_instance, verify_submonoid_certificate, Flavor,
    GroupElement, SubmonoidInstance, SubmonoidVerifier,
};
pub use wreath::{
    embed_module, eval_word, lamplighter_bindings, unembed_module, Bindings, WreathElement,
};

use crate::semimodule::ModuleError;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error("no element bound to `{0}`")]
    UnboundSymbol(Letter),
    #[error("module rank {rank} exceeds the index {index}")]
    RankExceedsIndex { rank: usize, index: usize },
    #[error("the flow is not a cycle")]
    NotACycle,
    #[error("generator index {0} out of range")]
    BadIndex(usize),
    #[error("submonoid instances need coefficients in Z")]
    NeedsIntegers,
    #[error("cannot parse word at `{0}`")]
    BadWord(String),
}

/// A letter of a group word: the shifts `x`, `y`, the module generators
/// `g0, g1, ...`, and their inverses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    X,
    XInv,
    Y,
    YInv,
    Gen(u32),
    GenInv(u32),
}

impl Letter {
    pub fn inverse(self) -> Letter {
        match self {
            Letter::X => Letter::XInv,
            Letter::XInv => Letter::X,
            Letter::Y => Letter::YInv,
            Letter::YInv => Letter::Y,
            Letter::Gen(i) => Letter::GenInv(i),
            Letter::GenInv(i) => Letter::Gen(i),
        }
    }

    pub fn is_inverse(self) -> bool {
        matches!(self, Letter::XInv | Letter::YInv | Letter::GenInv(_))
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::X => f.write_str("x"),
            Letter::XInv => f.write_str("X"),
            Letter::Y => f.write_str("y"),
            Letter::YInv => f.write_str("Y"),
            Letter::Gen(i) => write!(f, "g{i}"),
            Letter::GenInv(i) => write!(f, "G{i}"),
        }
    }
}

/// A word over [`Letter`]s, written as `x X y Y gN GN` tokens with capitals
/// for inverses, e.g. `xyXYg0`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn new() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn push(&mut self, l: Letter) {
        self.0.push(l);
    }

    /// Appends `l^k`, using the inverse letter for negative `k`.
    pub fn push_power(&mut self, l: Letter, k: i64) {
        let l = if k < 0 { l.inverse() } else { l };
        for _ in 0..k.unsigned_abs() {
            self.0.push(l);
        }
    }

    pub fn extend(&mut self, other: &Word) {
        self.0.extend_from_slice(&other.0);
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut out = self.clone();
        out.extend(other);
        out
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn power(&self, k: usize) -> Word {
        Word(self.0.repeat(k))
    }

    /// The commutator `u v u^-1 v^-1`.
    pub fn commutator(u: &Word, v: &Word) -> Word {
        u.concat(v).concat(&u.inverse()).concat(&v.inverse())
    }

    /// Cancels adjacent inverse pairs.
    pub fn free_reduce(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut out = Vec::new();
        let bytes = s.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            let c = bytes[i];
            i += 1;
            let letter = match c {
                b'x' => Letter::X,
                b'X' => Letter::XInv,
                b'y' => Letter::Y,
                b'Y' => Letter::YInv,
                b'g' | b'G' => {
                    let start = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    let n = s[start..i]
                        .parse::<u32>()
                        .map_err(|_| GroupError::BadWord(s[start - 1..].into()))?;
                    if c == b'g' {
                        Letter::Gen(n)
                    } else {
                        Letter::GenInv(n)
                    }
                }
                c if c.is_ascii_whitespace() => continue,
                _ => return Err(GroupError::BadWord(s[i - 1..].into())),
            };
            out.push(letter);
        }
        Ok(Word(out))
    }
}
