use alloc::vec::Vec;

use num_traits::ToPrimitive;

use super::metabelian::{boundary, flow_to_word, metabelian_eval, MetabelianElement};
use super::wreath::{embed_module, eval_word, lamplighter_bindings, WreathElement};
use super::{GroupError, Letter, Word};
use crate::lattice::Point;
use crate::ring::{Ring, Sparse};
use crate::semimodule::{ModuleElement, SemimoduleInstance, Witness};

/// The group a submonoid instance lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Flavor {
    /// `Z wr (Z x Z)` generated by `x`, `y` and the lamp `g0`.
    Wreath,
    /// The free metabelian group on `x`, `y`.
    FreeMetabelian,
}

/// Generator words and a target word; the question is whether the target
/// is a product of generators.
///
/// Instances built by [`make_submonoid_instance`] list the module
/// generators first, followed by `x^m`, `x^-m`, `y`, `y^-1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubmonoidInstance {
    pub flavor: Flavor,
    pub m: usize,
    pub generators: Vec<Word>,
    pub target: Word,
}

/// An element of either group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupElement {
    Wreath(WreathElement),
    Metabelian(MetabelianElement),
}

impl SubmonoidInstance {
    pub fn eval(&self, w: &Word) -> Result<GroupElement, GroupError> {
        match self.flavor {
            Flavor::Wreath => {
                let b = lamplighter_bindings(Ring::Integers, 1);
                Ok(GroupElement::Wreath(eval_word(&b, Ring::Integers, 1, w)?))
            }
            Flavor::FreeMetabelian => Ok(GroupElement::Metabelian(metabelian_eval(w)?)),
        }
    }

    /// Number of generators encoding module generators.
    pub fn module_generators(&self) -> usize {
        self.generators.len().saturating_sub(4)
    }
}

fn shift_generators(m: usize) -> [Word; 4] {
    let mut xm = Word::new();
    xm.push_power(Letter::X, m as i64);
    [
        xm.clone(),
        xm.inverse(),
        Word(alloc::vec![Letter::Y]),
        Word(alloc::vec![Letter::YInv]),
    ]
}

/// `prod x^a y^b g0^v y^-b x^-a` over the lamps of `g`.
fn lamp_word(g: &WreathElement) -> Word {
    let mut w = Word::new();
    for (p, _, v) in g.fun.entries() {
        w.push_power(Letter::X, p.x);
        w.push_power(Letter::Y, p.y);
        w.push_power(Letter::Gen(0), v.to_i64().expect("coefficient fits in i64"));
        w.push_power(Letter::Y, -p.y);
        w.push_power(Letter::X, -p.x);
    }
    w.free_reduce()
}

/// A word for the commutator subgroup element whose cell `(m s + j, t)`
/// carries the entry `((s, t), j)` of `e`.
fn cell_word(e: &ModuleElement, m: usize) -> Result<Word, GroupError> {
    let mi = m as i64;
    let mut cells = Sparse::zero(Ring::Integers);
    for (p, j, v) in e.entries() {
        cells.add_at(Point::new(mi * p.x + j as i64, p.y), v.clone());
    }
    flow_to_word(&boundary(&cells))
}

/// Transfers a module membership instance over `Z` to submonoid membership.
///
/// The wreath flavour embeds the module into rank one with index `m =
/// rank`; the metabelian flavour uses `m = rank + 1` and realizes basis
/// index `j` as the cell column `j` modulo `m`, leaving column `m - 1` free.
pub fn make_submonoid_instance(
    inst: &SemimoduleInstance,
    flavor: Flavor,
) -> Result<SubmonoidInstance, GroupError> {
    if inst.ring() != Ring::Integers {
        return Err(GroupError::NeedsIntegers);
    }
    let m = match flavor {
        Flavor::Wreath => inst.rank().max(1),
        Flavor::FreeMetabelian => inst.rank() + 1,
    };
    let encode = |e: &ModuleElement, m: usize| match flavor {
        Flavor::Wreath => Ok(lamp_word(&embed_module(e, m)?)),
        Flavor::FreeMetabelian => cell_word(e, m),
    };
    let mut generators = inst
        .generators()
        .iter()
        .map(|g| encode(g, m))
        .collect::<Result<Vec<_>, _>>()?;
    generators.extend(shift_generators(m));
    Ok(SubmonoidInstance {
        flavor,
        m,
        generators,
        target: encode(inst.target(), m)?,
    })
}

/// The generator sequence realizing a module witness: each term becomes a
/// conjugate of its generator power by the term's shift. Terms are taken
/// column by column and adjacent inverse shift generators cancel, so
/// consecutive conjugates share their walk.
pub fn certificate_from_witness(sub: &SubmonoidInstance, witness: &Witness) -> Vec<usize> {
    let r = sub.module_generators();
    let (xm, xm_inv, y, y_inv) = (r, r + 1, r + 2, r + 3);
    let inverse = |g: usize| match g {
        g if g == xm => Some(xm_inv),
        g if g == xm_inv => Some(xm),
        g if g == y => Some(y_inv),
        g if g == y_inv => Some(y),
        _ => None,
    };
    let mut out: Vec<usize> = Vec::new();
    let push = |out: &mut Vec<usize>, g: usize, k: i64| {
        for _ in 0..k.unsigned_abs() {
            if out.last().is_some_and(|&last| inverse(g) == Some(last)) {
                out.pop();
            } else {
                out.push(g);
            }
        }
    };
    let mut terms: Vec<_> = witness.terms.iter().collect();
    terms.sort_by_key(|t| (t.shift.x, t.shift.y, t.gen));
    for t in terms {
        let (a, b) = (t.shift.x, t.shift.y);
        push(&mut out, if a >= 0 { xm } else { xm_inv }, a);
        push(&mut out, if b >= 0 { y } else { y_inv }, b);
        let c = t.coeff.to_i64().expect("witness coefficients are small");
        push(&mut out, t.gen, c);
        push(&mut out, if b >= 0 { y_inv } else { y }, b);
        push(&mut out, if a >= 0 { xm_inv } else { xm }, a);
    }
    out
}

/// Evaluated generators and target of a submonoid instance, for checking
/// many certificates against the same instance.
#[derive(Clone, Debug)]
pub struct SubmonoidVerifier {
    gens: Vec<GroupElement>,
    target: GroupElement,
}

impl SubmonoidVerifier {
    pub fn new(sub: &SubmonoidInstance) -> Result<Self, GroupError> {
        Ok(SubmonoidVerifier {
            gens: sub
                .generators
                .iter()
                .map(|w| sub.eval(w))
                .collect::<Result<_, _>>()?,
            target: sub.eval(&sub.target)?,
        })
    }

    /// Multiplies the chosen generators and compares with the target.
    pub fn verify(&self, certificate: &[usize]) -> Result<bool, GroupError> {
        if let Some(&bad) = certificate.iter().find(|&&i| i >= self.gens.len()) {
            return Err(GroupError::BadIndex(bad));
        }
        let product = match &self.target {
            GroupElement::Wreath(_) => {
                let mut acc = WreathElement::identity(Ring::Integers, 1);
                for &i in certificate {
                    let GroupElement::Wreath(g) = &self.gens[i] else {
                        unreachable!()
                    };
                    acc.mul_assign(g)?;
                }
                GroupElement::Wreath(acc)
            }
            GroupElement::Metabelian(_) => {
                let mut acc = MetabelianElement::identity();
                for &i in certificate {
                    let GroupElement::Metabelian(g) = &self.gens[i] else {
                        unreachable!()
                    };
                    acc.mul_assign(g);
                }
                GroupElement::Metabelian(acc)
            }
        };
        Ok(product == self.target)
    }
}

pub fn verify_submonoid_certificate(
    sub: &SubmonoidInstance,
    certificate: &[usize],
) -> Result<bool, GroupError> {
    SubmonoidVerifier::new(sub)?.verify(certificate)
}
