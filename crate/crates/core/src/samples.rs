//! Small machines used in tests, examples and the command-line demos.

use alloc::vec::Vec;

use crate::tm::{Move, NamedTransition, TuringMachine};

fn rule(from: &str, read: &str, to: &str, write: &str, dir: Move) -> NamedTransition {
    NamedTransition {
        from: from.into(),
        read: read.into(),
        to: to.into(),
        write: write.into(),
        dir,
    }
}

/// Accepts the words of odd length over `{a}`. Total, but only the word `a`
/// is accepted with a blank tape; normalize it before compiling longer runs.
pub fn eraser() -> TuringMachine {
    TuringMachine::from_names(
        &["q0", "q1", "qf"],
        &["_", "a"],
        &["a"],
        "_",
        "q0",
        "qf",
        &[
            rule("q0", "a", "q1", "_", Move::R),
            rule("q1", "_", "qf", "_", Move::L),
            rule("q0", "_", "q0", "_", Move::R),
            rule("q1", "a", "q0", "a", Move::R),
        ],
    )
    .expect("well-formed")
}

/// Accepts the words over `{a, b}` with an even number of `b`, erasing the
/// tape before accepting. The first cell is marked so the sweep back can
/// find the left end; rejection is an endless walk to the right.
pub fn parity_eraser() -> TuringMachine {
    let states = ["q0", "s0", "s1", "back", "fin", "rej", "qf"];
    let tape = ["_", "a", "b", "A", "B"];
    let mut rules = Vec::from([
        rule("q0", "a", "s0", "A", Move::R),
        rule("q0", "b", "s1", "B", Move::R),
        rule("s0", "a", "s0", "a", Move::R),
        rule("s0", "b", "s1", "b", Move::R),
        rule("s0", "_", "back", "_", Move::L),
        rule("s1", "a", "s1", "a", Move::R),
        rule("s1", "b", "s0", "b", Move::R),
        rule("back", "a", "back", "_", Move::L),
        rule("back", "b", "back", "_", Move::L),
        rule("back", "A", "fin", "_", Move::R),
        rule("back", "B", "fin", "_", Move::R),
        rule("fin", "_", "qf", "_", Move::L),
    ]);
    for q in &states[..6] {
        for a in tape {
            if !rules.iter().any(|r| r.from == *q && r.read == a) {
                rules.push(rule(q, a, "rej", a, Move::R));
            }
        }
    }
    TuringMachine::from_names(&states, &tape, &["a", "b"], "_", "q0", "qf", &rules)
        .expect("well-formed")
}

/// Never accepts: walks right, steps back once, and repeats forever.
pub fn looper() -> TuringMachine {
    TuringMachine::from_names(
        &["q0", "q1", "qf"],
        &["_", "a"],
        &["a"],
        "_",
        "q0",
        "qf",
        &[
            rule("q0", "a", "q0", "a", Move::R),
            rule("q0", "_", "q1", "_", Move::L),
            rule("q1", "_", "q0", "_", Move::R),
            rule("q1", "a", "q0", "a", Move::R),
        ],
    )
    .expect("well-formed")
}
