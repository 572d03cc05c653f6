use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec::Vec;

use super::nfa::Nfa;
use crate::group::{eval_word, Bindings, GroupError, Letter, Word, WreathElement};
use crate::ring::Ring;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RationalSearch {
    /// A shortest word of the language evaluating to the target.
    Found(Word),
    NoneWithinBounds,
}

/// The automaton determinized on demand.
struct Subsets<'a> {
    nfa: &'a Nfa,
    ids: BTreeMap<BTreeSet<usize>, usize>,
    sets: Vec<BTreeSet<usize>>,
    moves: BTreeMap<(usize, Letter), Option<usize>>,
}

impl<'a> Subsets<'a> {
    fn new(nfa: &'a Nfa) -> (Self, usize) {
        let mut s = Subsets {
            nfa,
            ids: BTreeMap::new(),
            sets: Vec::new(),
            moves: BTreeMap::new(),
        };
        let start = s.intern(nfa.closure(&[nfa.initial].into_iter().collect()));
        (s, start)
    }

    fn intern(&mut self, set: BTreeSet<usize>) -> usize {
        if let Some(&id) = self.ids.get(&set) {
            return id;
        }
        self.sets.push(set.clone());
        self.ids.insert(set, self.sets.len() - 1);
        self.sets.len() - 1
    }

    fn step(&mut self, id: usize, l: Letter) -> Option<usize> {
        if let Some(&t) = self.moves.get(&(id, l)) {
            return t;
        }
        let next = self.nfa.step(&self.sets[id], l);
        let t = (!next.is_empty()).then(|| self.intern(next));
        self.moves.insert((id, l), t);
        t
    }

    fn is_final(&self, id: usize) -> bool {
        self.nfa.is_final_set(&self.sets[id])
    }
}

fn letter_values(
    nfa: &Nfa,
    bindings: &Bindings,
    ring: Ring,
    rank: usize,
) -> Result<Vec<(Letter, WreathElement)>, GroupError> {
    nfa.alphabet
        .iter()
        .map(|&l| Ok((l, eval_word(bindings, ring, rank, &Word(alloc::vec![l]))?)))
        .collect()
}

struct Node {
    state: usize,
    element: WreathElement,
    parent: Option<(usize, Letter)>,
    depth: usize,
}

/// Breadth-first search over pairs (automaton state, group element) reached
/// by words of length at most `max_len`; each pair is visited once.
/// `stop` is called on every accepted element and ends the search when it
/// returns true, yielding the arena index of that node.
fn explore(
    nfa: &Nfa,
    bindings: &Bindings,
    ring: Ring,
    rank: usize,
    max_len: usize,
    mut stop: impl FnMut(&WreathElement) -> bool,
) -> Result<(Vec<Node>, Option<usize>), GroupError> {
    let letters = letter_values(nfa, bindings, ring, rank)?;
    let (mut dfa, start) = Subsets::new(nfa);
    let mut arena = alloc::vec![Node {
        state: start,
        element: WreathElement::identity(ring, rank),
        parent: None,
        depth: 0,
    }];
    let mut seen: BTreeSet<(usize, WreathElement)> = BTreeSet::new();
    seen.insert((start, arena[0].element.clone()));
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        if dfa.is_final(arena[i].state) && stop(&arena[i].element) {
            return Ok((arena, Some(i)));
        }
        if arena[i].depth == max_len {
            continue;
        }
        for (l, g) in &letters {
            let Some(t) = dfa.step(arena[i].state, *l) else {
                continue;
            };
            let element = arena[i].element.mul(g)?;
            if seen.insert((t, element.clone())) {
                arena.push(Node {
                    state: t,
                    element,
                    parent: Some((i, *l)),
                    depth: arena[i].depth + 1,
                });
                queue.push_back(arena.len() - 1);
            }
        }
    }
    Ok((arena, None))
}

/// Looks for a word of the automaton's language, of length at most
/// `max_len`, evaluating to `target`; returns a shortest one.
pub fn rational_member_bounded(
    nfa: &Nfa,
    bindings: &Bindings,
    target: &WreathElement,
    max_len: usize,
) -> Result<RationalSearch, GroupError> {
    let (arena, hit) = explore(nfa, bindings, target.ring(), target.rank(), max_len, |g| {
        g == target
    })?;
    let Some(mut i) = hit else {
        return Ok(RationalSearch::NoneWithinBounds);
    };
    let mut letters = Vec::new();
    while let Some((p, l)) = arena[i].parent {
        letters.push(l);
        i = p;
    }
    letters.reverse();
    Ok(RationalSearch::Found(Word(letters)))
}

/// Every element reached by an accepted word of length at most `max_len`.
pub fn accepted_elements(
    nfa: &Nfa,
    bindings: &Bindings,
    ring: Ring,
    rank: usize,
    max_len: usize,
) -> Result<BTreeSet<WreathElement>, GroupError> {
    let mut out = BTreeSet::new();
    explore(nfa, bindings, ring, rank, max_len, |g| {
        out.insert(g.clone());
        false
    })?;
    Ok(out)
}
