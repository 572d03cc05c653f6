use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use super::regex::Regex;
use crate::group::{Letter, Word};

/// A transition; `label == None` is an empty move.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub from: usize,
    pub label: Option<Letter>,
    pub to: usize,
}

/// A finite automaton over group letters with states `0..states`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nfa {
    pub states: usize,
    pub alphabet: Vec<Letter>,
    pub edges: Vec<Edge>,
    pub initial: usize,
    pub finals: BTreeSet<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum NfaError {
    #[error("edge {0} refers to a missing state")]
    BadState(usize),
    #[error("initial or final state out of range")]
    BadEndpoint,
}

struct Builder {
    states: usize,
    edges: Vec<Edge>,
}

impl Builder {
    fn fresh(&mut self) -> usize {
        self.states += 1;
        self.states - 1
    }

    fn edge(&mut self, from: usize, label: Option<Letter>, to: usize) {
        self.edges.push(Edge { from, label, to });
    }

    /// Returns the (entry, exit) pair of a fragment for `r`.
    fn build(&mut self, r: &Regex) -> (usize, usize) {
        match r {
            Regex::Epsilon => {
                let s = self.fresh();
                (s, s)
            }
            Regex::Lit(l) => {
                let (s, t) = (self.fresh(), self.fresh());
                self.edge(s, Some(*l), t);
                (s, t)
            }
            Regex::Concat(rs) => {
                let s = self.fresh();
                let mut end = s;
                for r in rs {
                    let (a, b) = self.build(r);
                    self.edge(end, None, a);
                    end = b;
                }
                (s, end)
            }
            Regex::Union(rs) => {
                let (s, t) = (self.fresh(), self.fresh());
                for r in rs {
                    let (a, b) = self.build(r);
                    self.edge(s, None, a);
                    self.edge(b, None, t);
                }
                (s, t)
            }
            Regex::Star(r) => {
                let (s, t) = (self.fresh(), self.fresh());
                let (a, b) = self.build(r);
                self.edge(s, None, a);
                self.edge(b, None, a);
                self.edge(b, None, t);
                self.edge(s, None, t);
                (s, t)
            }
        }
    }
}

/// Thompson's construction.
pub fn regex_to_nfa(r: &Regex) -> Nfa {
    let mut b = Builder {
        states: 0,
        edges: Vec::new(),
    };
    let (s, t) = b.build(r);
    Nfa {
        states: b.states,
        alphabet: r.alphabet(),
        edges: b.edges,
        initial: s,
        finals: [t].into_iter().collect(),
    }
}

impl Nfa {
    pub fn check(&self) -> Result<(), NfaError> {
        if let Some(i) = self
            .edges
            .iter()
            .position(|e| e.from >= self.states || e.to >= self.states)
        {
            return Err(NfaError::BadState(i));
        }
        if self.initial >= self.states || self.finals.iter().any(|&f| f >= self.states) {
            return Err(NfaError::BadEndpoint);
        }
        Ok(())
    }

    /// States reachable from `set` by empty moves.
    pub fn closure(&self, set: &BTreeSet<usize>) -> BTreeSet<usize> {
        let mut out = set.clone();
        let mut todo: Vec<usize> = set.iter().copied().collect();
        while let Some(s) = todo.pop() {
            for e in self
                .edges
                .iter()
                .filter(|e| e.from == s && e.label.is_none())
            {
                if out.insert(e.to) {
                    todo.push(e.to);
                }
            }
        }
        out
    }

    /// States reachable from `set` by reading `l` once.
    pub fn step(&self, set: &BTreeSet<usize>, l: Letter) -> BTreeSet<usize> {
        let moved = self
            .edges
            .iter()
            .filter(|e| e.label == Some(l) && set.contains(&e.from))
            .map(|e| e.to)
            .collect();
        self.closure(&moved)
    }

    pub fn is_final_set(&self, set: &BTreeSet<usize>) -> bool {
        set.iter().any(|s| self.finals.contains(s))
    }
}

/// Subset simulation.
pub fn nfa_accepts(n: &Nfa, w: &Word) -> bool {
    let mut current = n.closure(&[n.initial].into_iter().collect());
    for &l in w.letters() {
        current = n.step(&current, l);
        if current.is_empty() {
            return false;
        }
    }
    n.is_final_set(&current)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::build_l;

    fn accepts(s: &str) -> bool {
        nfa_accepts(&regex_to_nfa(&build_l(1)), &s.parse().unwrap())
    }

    #[test]
    fn l_membership() {
        assert!(accepts(""));
        assert!(accepts("yX"));
        assert!(accepts("xyXY"));
        assert!(accepts("g0xxg0xyXXX"));
        assert!(!accepts("g0g0"));
        assert!(!accepts("g0"));
        assert!(!accepts("g1x"));
    }

    #[test]
    fn thompson_output_is_well_formed() {
        let n = regex_to_nfa(&build_l(2));
        assert_eq!(n.check(), Ok(()));
        assert_eq!(n.alphabet.len(), 6);
    }
}
