//! Rewriting arbitrary machines into the three tiling conventions.
//!
//! Construction, for a machine `M` with blank `_`:
//!
//! * Cell 0 carries a marked copy `a@0` of its symbol from the first step
//!   on, so the rewritten machine can always find the left end.
//! * Blanks written by `M` become `_~`, so every visited cell is non-blank
//!   and the first true blank marks the end of the used region.
//! * Undefined transitions, and left moves off a marked cell, go to a
//!   two-state loop walking right forever.
//! * Transitions into the accepting state go to `#seek`, which walks right
//!   to the first true blank, then `#erase` walks back writing blanks,
//!   `#final` steps off cell 0 and the machine enters the accepting state
//!   from cell 1 moving left.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{validate, Action, Move, TuringMachine};
use crate::ids::{Names, StateId, SymbolId};

const INIT: &str = "#init";
const SEEK: &str = "#seek";
const ERASE: &str = "#erase";
const FINAL: &str = "#final";
const LOOP0: &str = "#loop0";
const LOOP1: &str = "#loop1";

/// Whether `tm` already has the shape produced by [`normalize`].
pub fn is_normal_form(tm: &TuringMachine) -> bool {
    let names = tm.names();
    let Some(fin) = names.find_state(FINAL) else {
        return false;
    };
    let reserved = [INIT, SEEK, ERASE, LOOP0, LOOP1]
        .iter()
        .all(|n| names.find_state(n).is_some());
    reserved
        && names.state(tm.initial()) == INIT
        && validate(tm).is_empty()
        && tm
            .transitions()
            .all(|((q, _), act)| act.next != tm.accepting() || q == fin)
}

fn fresh(taken: impl Fn(&str) -> bool, base: String) -> String {
    let mut name = base;
    while taken(&name) {
        name.push('\'');
    }
    name
}

/// Rewrites `tm` so that it never leaves the tape on the left, halts only by
/// accepting, and accepts with a blank tape and the head on cell 0. The
/// accepted language is unchanged when a left move at cell 0 or a missing
/// transition counts as rejection. Machines already in normal form are
/// returned unchanged.
pub fn normalize(tm: &TuringMachine) -> TuringMachine {
    if is_normal_form(tm) {
        return tm.clone();
    }
    let old = tm.names();
    let mut names = Names::new();

    let mut state_map = BTreeMap::new();
    for q in old.state_ids() {
        state_map.insert(q, names.intern_state(old.state(q)));
    }
    let reserved = |n: &str, names: &mut Names| {
        let name = fresh(|s| old.find_state(s).is_some(), n.into());
        names.intern_state(&name)
    };
    let init = reserved(INIT, &mut names);
    let seek = reserved(SEEK, &mut names);
    let erase = reserved(ERASE, &mut names);
    let fin = reserved(FINAL, &mut names);
    let loop0 = reserved(LOOP0, &mut names);
    let loop1 = reserved(LOOP1, &mut names);

    let taken_symbol =
        |s: &str, names: &Names| old.find_symbol(s).is_some() || names.find_symbol(s).is_some();
    let mut plain = BTreeMap::new();
    for a in old.symbol_ids() {
        plain.insert(a, names.intern_symbol(old.symbol(a)));
    }
    let blank = plain[&tm.blank()];
    let written_blank_name = fresh(
        |s| taken_symbol(s, &names),
        format!("{}~", old.symbol(tm.blank())),
    );
    let written_blank = names.intern_symbol(&written_blank_name);
    let mut marked = BTreeMap::new();
    for a in old.symbol_ids() {
        let name = fresh(|s| taken_symbol(s, &names), format!("{}@0", old.symbol(a)));
        marked.insert(a, names.intern_symbol(&name));
    }

    // Each new symbol as (original symbol, is it on the marked cell).
    let mut meaning: BTreeMap<SymbolId, (SymbolId, bool)> = BTreeMap::new();
    for (&a, &b) in &plain {
        meaning.insert(b, (a, false));
    }
    meaning.insert(written_blank, (tm.blank(), false));
    for (&a, &b) in &marked {
        meaning.insert(b, (a, true));
    }
    let alphabet: Vec<SymbolId> = meaning.keys().copied().collect();
    let is_marked = |s: SymbolId| meaning[&s].1;

    let accepting = state_map[&tm.accepting()];
    let mut delta: BTreeMap<(StateId, SymbolId), Action> = BTreeMap::new();
    let to_loop = |s: SymbolId| Action {
        next: loop0,
        write: s,
        dir: Move::R,
    };

    // Simulated step of the original machine in state `q` on new symbol `s`,
    // where `on_mark` says whether the head is on cell 0.
    let simulate = |q: StateId, orig: SymbolId, on_mark: bool, s: SymbolId| -> Action {
        if q == tm.accepting() {
            return Action {
                next: seek,
                write: if on_mark { marked[&orig] } else { s },
                dir: Move::R,
            };
        }
        let Some(act) = tm.action(q, orig) else {
            return to_loop(s);
        };
        if on_mark && act.dir == Move::L {
            return to_loop(s);
        }
        let write = if on_mark {
            marked[&act.write]
        } else if act.write == tm.blank() {
            written_blank
        } else {
            plain[&act.write]
        };
        let next = if act.next == tm.accepting() {
            seek
        } else {
            state_map[&act.next]
        };
        Action {
            next,
            write,
            dir: act.dir,
        }
    };

    for q in old.state_ids() {
        if q == tm.accepting() {
            continue;
        }
        for &s in &alphabet {
            let (orig, on_mark) = meaning[&s];
            delta.insert((state_map[&q], s), simulate(q, orig, on_mark, s));
        }
    }
    for &s in &alphabet {
        let (orig, on_mark) = meaning[&s];
        // The first step marks cell 0 as it goes.
        let first = if on_mark {
            to_loop(s)
        } else {
            simulate(tm.initial(), orig, true, s)
        };
        delta.insert((init, s), first);
        let seek_act = if s == blank {
            Action {
                next: erase,
                write: blank,
                dir: Move::L,
            }
        } else {
            Action {
                next: seek,
                write: s,
                dir: Move::R,
            }
        };
        delta.insert((seek, s), seek_act);
        let erase_act = if is_marked(s) {
            Action {
                next: fin,
                write: blank,
                dir: Move::R,
            }
        } else {
            Action {
                next: erase,
                write: blank,
                dir: Move::L,
            }
        };
        delta.insert((erase, s), erase_act);
        let final_act = if s == blank {
            Action {
                next: accepting,
                write: blank,
                dir: Move::L,
            }
        } else {
            to_loop(s)
        };
        delta.insert((fin, s), final_act);
        delta.insert(
            (loop0, s),
            Action {
                next: loop1,
                write: s,
                dir: Move::R,
            },
        );
        delta.insert(
            (loop1, s),
            Action {
                next: loop0,
                write: s,
                dir: Move::R,
            },
        );
    }

    let input: BTreeSet<SymbolId> = tm.input_alphabet().iter().map(|a| plain[a]).collect();
    TuringMachine::from_parts(names, input, blank, init, accepting, delta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tm::{run, NamedTransition, RunOutcome};

    fn t(from: &str, read: &str, to: &str, write: &str, dir: Move) -> NamedTransition {
        NamedTransition {
            from: from.into(),
            read: read.into(),
            to: to.into(),
            write: write.into(),
            dir,
        }
    }

    /// Accepts words starting with `a` but leaves the tape dirty, and halts
    /// (without accepting) on words starting with `b`.
    fn sloppy() -> TuringMachine {
        TuringMachine::from_names(
            &["q0", "q1", "qf"],
            &["_", "a", "b"],
            &["a", "b"],
            "_",
            "q0",
            "qf",
            &[
                t("q0", "a", "q1", "a", Move::R),
                t("q1", "a", "qf", "b", Move::R),
                t("q1", "b", "qf", "b", Move::R),
                t("q1", "_", "qf", "a", Move::R),
            ],
        )
        .unwrap()
    }

    #[test]
    fn output_is_total_and_well_formed() {
        let n = normalize(&sloppy());
        assert_eq!(validate(&n), []);
        assert!(is_normal_form(&n));
    }

    #[test]
    fn normalizing_twice_changes_nothing() {
        let n = normalize(&sloppy());
        assert_eq!(normalize(&n), n);
    }

    #[test]
    fn halting_rejection_becomes_a_loop() {
        let tm = sloppy();
        let w = tm.word(&["b"]).unwrap();
        assert!(matches!(run(&tm, &w, 1000).unwrap(), RunOutcome::Stuck(_)));
        let n = normalize(&tm);
        let w = n.word(&["b"]).unwrap();
        assert_eq!(run(&n, &w, 1000).unwrap(), RunOutcome::OutOfFuel);
    }

    #[test]
    fn dirty_acceptance_is_swept_clean() {
        let tm = sloppy();
        let w = tm.word(&["a", "b", "a"]).unwrap();
        let RunOutcome::Accepted(orig) = run(&tm, &w, 1000).unwrap() else {
            panic!()
        };
        assert!(orig
            .configs
            .last()
            .unwrap()
            .tape
            .iter()
            .any(|&s| s != tm.blank()));
        let n = normalize(&tm);
        let w = n.word(&["a", "b", "a"]).unwrap();
        let RunOutcome::Accepted(trace) = run(&n, &w, 1000).unwrap() else {
            panic!()
        };
        let last = trace.configs.last().unwrap();
        assert_eq!(last.state, n.accepting());
        assert_eq!(last.head, 0);
        assert!(last.tape.iter().all(|&s| s == n.blank()));
    }

    #[test]
    fn left_edge_crash_is_rejection() {
        let tm = TuringMachine::from_names(
            &["q0", "qf"],
            &["_", "a"],
            &["a"],
            "_",
            "q0",
            "qf",
            &[t("q0", "a", "qf", "a", Move::L)],
        )
        .unwrap();
        let n = normalize(&tm);
        let w = n.word(&["a"]).unwrap();
        assert_eq!(run(&n, &w, 500).unwrap(), RunOutcome::OutOfFuel);
    }

    #[test]
    fn reserved_names_are_freshened() {
        let tm = TuringMachine::from_names(
            &["#seek", "qf"],
            &["_", "a", "a@0"],
            &["a"],
            "_",
            "#seek",
            "qf",
            &[t("#seek", "a", "qf", "_", Move::R)],
        )
        .unwrap();
        let n = normalize(&tm);
        assert!(n.names().find_state("#seek'").is_some());
        assert!(n.names().find_symbol("a@0'").is_some());
        let w = n.word(&["a"]).unwrap();
        assert!(matches!(run(&n, &w, 100).unwrap(), RunOutcome::Accepted(_)));
    }
}
