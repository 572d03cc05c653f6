use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::{ModuleElement, ModuleError, SemimoduleInstance, SubsetSumInstance};
use crate::lattice::{Point, Window};
use crate::ring::{Ring, Sparse};

/// `coeff * (shift . generators[gen])`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Term {
    pub shift: Point,
    pub gen: usize,
    pub coeff: BigInt,
}

/// A non-negative combination of translated generators.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Witness {
    pub terms: Vec<Term>,
}

impl Witness {
    /// The literal sum of the terms.
    pub fn sum(
        &self,
        ring: Ring,
        rank: usize,
        generators: &[ModuleElement],
    ) -> Result<ModuleElement, ModuleError> {
        let mut out = ModuleElement::zero(ring, rank);
        for t in &self.terms {
            let g = generators
                .get(t.gen)
                .ok_or(ModuleError::UnknownTile(t.gen))?;
            out.add_scaled(&g.shift(t.shift), &t.coeff)?;
        }
        Ok(out)
    }

    /// Whether the sum equals the instance target.
    pub fn verifies(&self, inst: &SemimoduleInstance) -> bool {
        self.terms.iter().all(|t| !t.coeff.is_negative())
            && self
                .sum(inst.ring(), inst.rank(), inst.generators())
                .is_ok_and(|s| &s == inst.target())
    }

    /// Whether the sum equals the target and the shifts are pairwise distinct
    /// with unit coefficients.
    pub fn verifies_subset_sum(&self, inst: &SubsetSumInstance) -> bool {
        let mut shifts: Vec<Point> = self.terms.iter().map(|t| t.shift).collect();
        shifts.sort();
        shifts.dedup();
        shifts.len() == self.terms.len()
            && self.terms.iter().all(|t| t.coeff == BigInt::from(1))
            && self.verifies(&inst.as_semimodule())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Search {
    Found(Witness),
    /// No combination within the window and coefficient bounds. Not a proof
    /// of non-membership.
    NoneWithinBounds,
}

/// Searches non-negative combinations of generators shifted inside `window`
/// with coefficients at most `max_coeff` summing to the target.
///
/// The search repeatedly takes the least entry of the remaining residue and
/// branches on the (shift, generator) pairs able to change it, fixing each
/// pair's full coefficient and excluding earlier pairs in later branches.
/// A branch is cut when some residue entry can no longer be reached, or,
/// over `Z`, when the remaining pairs cannot supply its sign and size.
/// Combinations using one shift at most once are tried before the rest.
pub fn member_bounded(inst: &SemimoduleInstance, window: Window, max_coeff: u64) -> Search {
    let cap = match inst.ring().characteristic() {
        Some(n) => max_coeff.min(n - 1),
        None => max_coeff,
    };
    let single =
        Solver::new(inst.ring(), inst.generators(), window, cap, true).solve(inst.target());
    if let Search::Found(_) = single {
        return single;
    }
    Solver::new(inst.ring(), inst.generators(), window, cap, false).solve(inst.target())
}

/// Like [`member_bounded`] with unit coefficients and each shift used at most
/// once across all generators.
pub fn subset_sum_bounded(inst: &SubsetSumInstance, window: Window) -> Search {
    Solver::new(inst.ring(), inst.generators(), window, 1, true).solve(inst.target())
}

struct Solver {
    ring: Ring,
    cap: u64,
    candidates: Vec<(Point, usize)>,
    shifted: Vec<Sparse<(Point, usize)>>,
    cover: BTreeMap<(Point, usize), Vec<usize>>,
    by_shift: BTreeMap<Point, Vec<usize>>,
    distinct: bool,
    blocked: Vec<u32>,
    chosen: Vec<Term>,
}

impl Solver {
    fn new(
        ring: Ring,
        generators: &[ModuleElement],
        window: Window,
        cap: u64,
        distinct: bool,
    ) -> Self {
        let mut candidates = Vec::new();
        let mut shifted = Vec::new();
        let mut cover: BTreeMap<(Point, usize), Vec<usize>> = BTreeMap::new();
        let mut by_shift: BTreeMap<Point, Vec<usize>> = BTreeMap::new();
        if cap > 0 {
            for s in window.points() {
                for (g, gen) in generators.iter().enumerate() {
                    if gen.is_zero() {
                        continue;
                    }
                    let id = candidates.len();
                    let e = gen.shift(s).sparse().clone();
                    for k in e.keys() {
                        cover.entry(*k).or_default().push(id);
                    }
                    by_shift.entry(s).or_default().push(id);
                    candidates.push((s, g));
                    shifted.push(e);
                }
            }
        }
        let blocked = alloc::vec![0; candidates.len()];
        Solver {
            ring,
            cap,
            candidates,
            shifted,
            cover,
            by_shift,
            distinct,
            blocked,
            chosen: Vec::new(),
        }
    }

    fn solve(mut self, target: &ModuleElement) -> Search {
        let mut residue = target.sparse().clone();
        if self.dfs(&mut residue) {
            let mut terms = self.chosen;
            terms.sort();
            Search::Found(Witness { terms })
        } else {
            Search::NoneWithinBounds
        }
    }

    fn feasible(&self, residue: &Sparse<(Point, usize)>) -> bool {
        residue.iter().all(|(k, v)| {
            let Some(list) = self.cover.get(k) else {
                return false;
            };
            let mut free = list.iter().filter(|&&c| self.blocked[c] == 0);
            if !self.ring.is_ordered() {
                return free.next().is_some();
            }
            let cap = BigInt::from(self.cap);
            let mut supply = BigInt::zero();
            for &c in free {
                let g = &self.shifted[c]
                    .get(k)
                    .expect("cover lists only touching pairs");
                if g.is_positive() == v.is_positive() {
                    supply += g.abs() * &cap;
                    if supply >= v.abs() {
                        return true;
                    }
                }
            }
            false
        })
    }

    /// The residue entry with the fewest free pairs able to change it,
    /// least in key order among those.
    fn branch_key(&self, residue: &Sparse<(Point, usize)>) -> (Point, usize) {
        let mut best = None;
        for k in residue.keys() {
            let free = self.branch_pairs(k, residue).count();
            if best.is_none_or(|(n, _)| free < n) {
                best = Some((free, *k));
                if free == 1 {
                    break;
                }
            }
        }
        best.expect("residue is non-zero").1
    }

    /// Free pairs touching `k` that can appear in a completion. Over `Z` a
    /// completion must use a pair whose entry at `k` has the residue's sign.
    fn branch_pairs<'s>(
        &'s self,
        k: &'s (Point, usize),
        residue: &'s Sparse<(Point, usize)>,
    ) -> impl Iterator<Item = usize> + 's {
        let want = residue.get(k).map(|v| v.is_positive());
        let ordered = self.ring.is_ordered();
        self.cover[k].iter().copied().filter(move |&c| {
            self.blocked[c] == 0
                && (!ordered || self.shifted[c].get(k).map(|g| g.is_positive()) == want)
                && self.leaves_repairable(c, residue)
        })
    }

    /// With unit coefficients: whether every entry that taking `c` leaves
    /// non-zero can still be changed by a free pair outside `c`'s group.
    fn leaves_repairable(&self, c: usize, residue: &Sparse<(Point, usize)>) -> bool {
        if self.cap != 1 {
            return true;
        }
        let shift = self.candidates[c].0;
        self.shifted[c].iter().all(|(k, v)| {
            let left = residue.get(k).cloned().unwrap_or_default() - v;
            self.ring.reduce(left).is_zero()
                || self.cover[k].iter().any(|&d| {
                    d != c
                        && self.blocked[d] == 0
                        && !(self.distinct && self.candidates[d].0 == shift)
                })
        })
    }

    fn block(&mut self, ids: &[usize], by: i64) {
        for &c in ids {
            self.blocked[c] = (self.blocked[c] as i64 + by) as u32;
        }
    }

    fn exclusive_group(&self, c: usize) -> Vec<usize> {
        if self.distinct {
            self.by_shift[&self.candidates[c].0].clone()
        } else {
            alloc::vec![c]
        }
    }

    fn dfs(&mut self, residue: &mut Sparse<(Point, usize)>) -> bool {
        if residue.is_zero() {
            return true;
        }
        if !self.feasible(residue) {
            return false;
        }
        let key = self.branch_key(residue);
        let list: Vec<usize> = self.branch_pairs(&key, residue).collect();
        let mut passed = Vec::new();
        let mut found = false;
        for c in list {
            let group = self.exclusive_group(c);
            self.block(&group, 1);
            let (shift, gen) = self.candidates[c];
            let g = self.shifted[c].clone();
            for coeff in 1..=self.cap {
                let k = BigInt::from(coeff);
                residue.add_scaled(&g, &-&k).expect("same ring");
                self.chosen.push(Term {
                    shift,
                    gen,
                    coeff: k.clone(),
                });
                if self.dfs(residue) {
                    found = true;
                }
                if found {
                    break;
                }
                self.chosen.pop();
                residue.add_scaled(&g, &k).expect("same ring");
            }
            self.block(&group, -1);
            if found {
                break;
            }
            self.block(&[c], 1);
            passed.push(c);
        }
        self.block(&passed, -1);
        found
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(ring: Ring, entries: &[(i64, i64, usize, i64)]) -> ModuleElement {
        ModuleElement::from_entries(
            ring,
            2,
            entries
                .iter()
                .map(|&(x, y, i, v)| (Point::new(x, y), i, BigInt::from(v))),
        )
        .unwrap()
    }

    #[test]
    fn single_generator_is_a_member() {
        let g = e(Ring::Integers, &[(0, 0, 0, 1), (1, 0, 1, -1)]);
        let inst = SemimoduleInstance::new(Ring::Integers, 2, alloc::vec![g.clone()], g).unwrap();
        let Search::Found(w) = member_bounded(&inst, Window::new(-1, -1, 1, 1), 1) else {
            panic!("expected a witness");
        };
        assert_eq!(
            w.terms,
            [Term {
                shift: Point::ORIGIN,
                gen: 0,
                coeff: BigInt::from(1)
            }]
        );
        assert!(w.verifies(&inst));
    }

    #[test]
    fn zero_target_has_the_empty_witness() {
        let g = e(Ring::Integers, &[(0, 0, 0, 1)]);
        let z = ModuleElement::zero(Ring::Integers, 2);
        let inst = SemimoduleInstance::new(Ring::Integers, 2, alloc::vec![g], z).unwrap();
        assert_eq!(
            member_bounded(&inst, Window::new(0, 0, 0, 0), 1),
            Search::Found(Witness::default())
        );
    }

    #[test]
    fn negative_target_is_not_reached_by_positive_generator() {
        let g = e(Ring::Integers, &[(0, 0, 0, 1)]);
        let t = g.negate();
        let inst = SemimoduleInstance::new(Ring::Integers, 2, alloc::vec![g], t).unwrap();
        assert_eq!(
            member_bounded(&inst, Window::new(-2, -2, 2, 2), 3),
            Search::NoneWithinBounds
        );
    }

    #[test]
    fn coefficients_above_one_are_found() {
        let g = e(Ring::Integers, &[(0, 0, 0, 1)]);
        let t = g
            .scale(&BigInt::from(3))
            .add(&g.shift(Point::new(1, 0)))
            .unwrap();
        let inst = SemimoduleInstance::new(Ring::Integers, 2, alloc::vec![g], t).unwrap();
        assert_eq!(
            member_bounded(&inst, Window::new(0, 0, 1, 0), 2),
            Search::NoneWithinBounds
        );
        let Search::Found(w) = member_bounded(&inst, Window::new(0, 0, 1, 0), 3) else {
            panic!("expected a witness");
        };
        assert!(w.verifies(&inst));
    }

    #[test]
    fn distinct_shifts_over_z2() {
        let r = Ring::Modulo(2);
        let f = e(r, &[(0, 0, 0, 1), (0, 0, 1, 1)]);
        let two = f.add(&f.shift(Point::new(1, 0))).unwrap();
        let inst = SubsetSumInstance::new(r, 2, alloc::vec![f.clone()], two).unwrap();
        let Search::Found(w) = subset_sum_bounded(&inst, Window::new(0, 0, 1, 0)) else {
            panic!("expected a witness");
        };
        assert_eq!(w.terms.len(), 2);
        assert!(w.verifies_subset_sum(&inst));

        let zero = ModuleElement::zero(r, 2);
        let inst = SubsetSumInstance::new(r, 2, alloc::vec![f], zero).unwrap();
        assert_eq!(
            subset_sum_bounded(&inst, Window::new(0, 0, 1, 0)),
            Search::Found(Witness::default())
        );
        let same_shift_twice = Witness {
            terms: alloc::vec![
                Term {
                    shift: Point::ORIGIN,
                    gen: 0,
                    coeff: BigInt::from(1)
                },
                Term {
                    shift: Point::ORIGIN,
                    gen: 0,
                    coeff: BigInt::from(1)
                },
            ],
        };
        assert!(!same_shift_twice.verifies_subset_sum(&inst));
    }

    #[test]
    fn empty_window_finds_only_zero() {
        let g = e(Ring::Integers, &[(0, 0, 0, 1)]);
        let inst = SemimoduleInstance::new(Ring::Integers, 2, alloc::vec![g.clone()], g).unwrap();
        assert_eq!(
            member_bounded(&inst, Window::new(1, 1, 0, 0), 1),
            Search::NoneWithinBounds
        );
    }
}
