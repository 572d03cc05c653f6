//! Deterministic, left-bounded Turing machines.
//!
//! The tape is a finite vector starting at cell 0 and is implicitly blank
//! to the right. Machines are expected to satisfy three conventions before
//! they are compiled into tiles:
//!
//! 1. the head never moves left of cell 0,
//! 2. the machine halts exactly when it enters the accepting state,
//! 3. on acceptance the tape is blank and the head is on cell 0.
//!
//! [`normalize`] rewrites an arbitrary machine into one with these
//! properties.

mod normalize;

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

pub use normalize::{is_normal_form, normalize};

use crate::ids::{Names, StateId, SymbolId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Move {
    L,
    R,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Action {
    pub next: StateId,
    pub write: SymbolId,
    pub dir: Move,
}

/// A transition written with names, as it appears in machine files.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedTransition {
    pub from: String,
    pub read: String,
    pub to: String,
    pub write: String,
    pub dir: Move,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum TmError {
    #[error("duplicate name `{0}`")]
    DuplicateName(String),
    #[error("empty name")]
    EmptyName,
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("input symbol `{0}` is not in the tape alphabet")]
    InputNotInTape(String),
    #[error("two transitions for ({0}, {1})")]
    Nondeterministic(String, String),
    #[error("left move at cell 0 from state {state:?} reading {symbol:?}")]
    LeftEdgeViolation { state: StateId, symbol: SymbolId },
    #[error("no transition for state {state:?} reading {symbol:?}")]
    NoTransition { state: StateId, symbol: SymbolId },
    #[error("symbol {0:?} is not an input symbol")]
    BadInput(SymbolId),
    #[error("configuration needs {needed} cells but only {available} fit")]
    DoesNotFit { needed: usize, available: usize },
    #[error("malformed configuration word: {0}")]
    MalformedWord(&'static str),
}

/// A deterministic machine over interned states and symbols.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TuringMachine {
    names: Names,
    input: BTreeSet<SymbolId>,
    blank: SymbolId,
    initial: StateId,
    accepting: StateId,
    delta: BTreeMap<(StateId, SymbolId), Action>,
}

impl TuringMachine {
    /// Builds a machine from names. Structural invariants (blank outside the
    /// input alphabet, totality off the accepting state, ...) are reported
    /// by [`validate`] rather than rejected here.
    pub fn from_names(
        states: &[&str],
        tape: &[&str],
        input: &[&str],
        blank: &str,
        initial: &str,
        accepting: &str,
        transitions: &[NamedTransition],
    ) -> Result<Self, TmError> {
        let mut names = Names::new();
        for s in states {
            if s.is_empty() {
                return Err(TmError::EmptyName);
            }
            if names.find_state(s).is_some() {
                return Err(TmError::DuplicateName(s.to_string()));
            }
            names.intern_state(s);
        }
        for a in tape {
            if a.is_empty() {
                return Err(TmError::EmptyName);
            }
            if names.find_symbol(a).is_some() {
                return Err(TmError::DuplicateName(a.to_string()));
            }
            names.intern_symbol(a);
        }
        let state = |n: &str| {
            names
                .find_state(n)
                .ok_or_else(|| TmError::UnknownState(n.into()))
        };
        let symbol = |n: &str| {
            names
                .find_symbol(n)
                .ok_or_else(|| TmError::UnknownSymbol(n.into()))
        };
        let mut input_ids = BTreeSet::new();
        for a in input {
            let id = names
                .find_symbol(a)
                .ok_or_else(|| TmError::InputNotInTape(a.to_string()))?;
            input_ids.insert(id);
        }
        let mut delta = BTreeMap::new();
        for t in transitions {
            let key = (state(&t.from)?, symbol(&t.read)?);
            let action = Action {
                next: state(&t.to)?,
                write: symbol(&t.write)?,
                dir: t.dir,
            };
            if delta.insert(key, action).is_some() {
                return Err(TmError::Nondeterministic(t.from.clone(), t.read.clone()));
            }
        }
        Ok(TuringMachine {
            input: input_ids,
            blank: symbol(blank)?,
            initial: state(initial)?,
            accepting: state(accepting)?,
            delta,
            names,
        })
    }

    pub(crate) fn from_parts(
        names: Names,
        input: BTreeSet<SymbolId>,
        blank: SymbolId,
        initial: StateId,
        accepting: StateId,
        delta: BTreeMap<(StateId, SymbolId), Action>,
    ) -> Self {
        TuringMachine {
            names,
            input,
            blank,
            initial,
            accepting,
            delta,
        }
    }

    pub fn names(&self) -> &Names {
        &self.names
    }

    pub fn states(&self) -> impl Iterator<Item = StateId> {
        self.names.state_ids()
    }

    pub fn tape_alphabet(&self) -> impl Iterator<Item = SymbolId> {
        self.names.symbol_ids()
    }

    pub fn input_alphabet(&self) -> &BTreeSet<SymbolId> {
        &self.input
    }

    pub fn blank(&self) -> SymbolId {
        self.blank
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn accepting(&self) -> StateId {
        self.accepting
    }

    pub fn action(&self, state: StateId, symbol: SymbolId) -> Option<Action> {
        self.delta.get(&(state, symbol)).copied()
    }

    /// All transitions in `(state, symbol)` order.
    pub fn transitions(&self) -> impl Iterator<Item = ((StateId, SymbolId), Action)> + '_ {
        self.delta.iter().map(|(k, v)| (*k, *v))
    }

    pub fn transition_count(&self) -> usize {
        self.delta.len()
    }

    pub fn named_transitions(&self) -> Vec<NamedTransition> {
        self.transitions()
            .map(|((q, a), act)| NamedTransition {
                from: self.names.state(q).into(),
                read: self.names.symbol(a).into(),
                to: self.names.state(act.next).into(),
                write: self.names.symbol(act.write).into(),
                dir: act.dir,
            })
            .collect()
    }

    /// Resolves a word of symbol names.
    pub fn word(&self, symbols: &[&str]) -> Result<Vec<SymbolId>, TmError> {
        symbols
            .iter()
            .map(|s| {
                self.names
                    .find_symbol(s)
                    .ok_or_else(|| TmError::UnknownSymbol(s.to_string()))
            })
            .collect()
    }

    pub fn initial_config(&self, w: &[SymbolId]) -> Configuration {
        Configuration {
            state: self.initial,
            tape: w.to_vec(),
            head: 0,
        }
    }
}

/// One broken machine invariant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    BlankIsInput(SymbolId),
    AcceptingHasTransition(StateId, SymbolId),
    MissingTransition(StateId, SymbolId),
}

impl Violation {
    pub fn describe(&self, names: &Names) -> String {
        match self {
            Violation::BlankIsInput(a) => {
                alloc::format!(
                    "blank symbol `{}` is in the input alphabet",
                    names.symbol(*a)
                )
            }
            Violation::AcceptingHasTransition(q, a) => alloc::format!(
                "accepting state `{}` has a transition on `{}`",
                names.state(*q),
                names.symbol(*a)
            ),
            Violation::MissingTransition(q, a) => alloc::format!(
                "no transition for (`{}`, `{}`)",
                names.state(*q),
                names.symbol(*a)
            ),
        }
    }
}

/// Every violated invariant; empty means the machine is well formed.
pub fn validate(tm: &TuringMachine) -> Vec<Violation> {
    let mut out = Vec::new();
    if tm.input.contains(&tm.blank) {
        out.push(Violation::BlankIsInput(tm.blank));
    }
    for q in tm.states() {
        for a in tm.tape_alphabet() {
            let defined = tm.delta.contains_key(&(q, a));
            if q == tm.accepting && defined {
                out.push(Violation::AcceptingHasTransition(q, a));
            } else if q != tm.accepting && !defined {
                out.push(Violation::MissingTransition(q, a));
            }
        }
    }
    out
}

/// A machine configuration; cells past the end of `tape` are blank.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Configuration {
    pub state: StateId,
    pub tape: Vec<SymbolId>,
    pub head: usize,
}

impl Configuration {
    pub fn read(&self, blank: SymbolId) -> SymbolId {
        self.tape.get(self.head).copied().unwrap_or(blank)
    }

    /// Number of cells needed to show this configuration: up to the last
    /// non-blank cell, and at least up to the head.
    pub fn cells_used(&self, blank: SymbolId) -> usize {
        let last = self
            .tape
            .iter()
            .rposition(|&s| s != blank)
            .map_or(0, |i| i + 1);
        last.max(self.head + 1)
    }

    /// The same configuration with trailing blanks past the head dropped.
    pub fn trimmed(&self, blank: SymbolId) -> Configuration {
        let mut tape = self.tape.clone();
        tape.resize(self.cells_used(blank), blank);
        Configuration {
            state: self.state,
            tape,
            head: self.head,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Step {
    Next(Configuration),
    Halted,
}

/// Applies one transition.
pub fn step(tm: &TuringMachine, c: &Configuration) -> Result<Step, TmError> {
    if c.state == tm.accepting {
        return Ok(Step::Halted);
    }
    let mut next = c.clone();
    advance(tm, &mut next)?;
    Ok(Step::Next(next))
}

/// Applies one transition in place to a non-accepting configuration.
fn advance(tm: &TuringMachine, c: &mut Configuration) -> Result<(), TmError> {
    let symbol = c.read(tm.blank);
    let act = tm.action(c.state, symbol).ok_or(TmError::NoTransition {
        state: c.state,
        symbol,
    })?;
    if act.dir == Move::L && c.head == 0 {
        return Err(TmError::LeftEdgeViolation {
            state: c.state,
            symbol,
        });
    }
    if c.tape.len() <= c.head {
        c.tape.resize(c.head + 1, tm.blank);
    }
    c.tape[c.head] = act.write;
    c.head = match act.dir {
        Move::L => c.head - 1,
        Move::R => c.head + 1,
    };
    if c.tape.len() <= c.head {
        c.tape.resize(c.head + 1, tm.blank);
    }
    c.state = act.next;
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunTrace {
    pub configs: Vec<Configuration>,
    /// Largest head position reached, plus one.
    pub space: usize,
    pub steps: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RunOutcome {
    Accepted(RunTrace),
    OutOfFuel,
    /// Halted in a non-accepting state; only possible for machines that are
    /// not total off the accepting state.
    Stuck(Configuration),
}

/// Runs the machine on `w` for at most `fuel` transitions.
///
/// Configurations are only recorded once the run is known to accept, so
/// long rejecting runs use memory proportional to the tape.
pub fn run(tm: &TuringMachine, w: &[SymbolId], fuel: u64) -> Result<RunOutcome, TmError> {
    if let Some(&bad) = w.iter().find(|a| !tm.input.contains(a)) {
        return Err(TmError::BadInput(bad));
    }
    let mut current = tm.initial_config(w);
    let mut used = 0u64;
    while current.state != tm.accepting {
        if used == fuel {
            return Ok(RunOutcome::OutOfFuel);
        }
        match advance(tm, &mut current) {
            Ok(()) => {}
            Err(TmError::NoTransition { .. }) => return Ok(RunOutcome::Stuck(current)),
            Err(e) => return Err(e),
        }
        used += 1;
    }

    let mut current = tm.initial_config(w);
    let mut configs = vec![current.clone()];
    let mut space = 1;
    while let Step::Next(next) = step(tm, &current)? {
        space = space.max(next.head + 1);
        configs.push(next.clone());
        current = next;
    }
    let steps = configs.len() - 1;
    Ok(RunOutcome::Accepted(RunTrace {
        configs,
        space,
        steps,
    }))
}

/// A letter of a configuration word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ConfigSymbol {
    /// Left end of the tape.
    Start,
    /// Right end of the tape.
    End,
    Cell(SymbolId),
    Head(StateId, SymbolId),
}

/// `Start u_1 .. (q u_j) .. u_{m-1} End`, blank padded to length `m + 1`.
pub fn config_word(
    c: &Configuration,
    m: usize,
    blank: SymbolId,
) -> Result<Vec<ConfigSymbol>, TmError> {
    let available = m.saturating_sub(1);
    let needed = c.cells_used(blank);
    if needed > available {
        return Err(TmError::DoesNotFit { needed, available });
    }
    let mut out = Vec::with_capacity(m + 1);
    out.push(ConfigSymbol::Start);
    for cell in 0..available {
        let a = c.tape.get(cell).copied().unwrap_or(blank);
        out.push(if cell == c.head {
            ConfigSymbol::Head(c.state, a)
        } else {
            ConfigSymbol::Cell(a)
        });
    }
    out.push(ConfigSymbol::End);
    Ok(out)
}

/// Inverse of [`config_word`]; the tape comes back with its full padded length.
pub fn parse_config_word(word: &[ConfigSymbol]) -> Result<Configuration, TmError> {
    let (first, rest) = word.split_first().ok_or(TmError::MalformedWord("empty"))?;
    let (last, cells) = rest
        .split_last()
        .ok_or(TmError::MalformedWord("too short"))?;
    if *first != ConfigSymbol::Start || *last != ConfigSymbol::End {
        return Err(TmError::MalformedWord("missing end markers"));
    }
    let mut tape = Vec::with_capacity(cells.len());
    let mut head = None;
    for (i, sym) in cells.iter().enumerate() {
        match *sym {
            ConfigSymbol::Cell(a) => tape.push(a),
            ConfigSymbol::Head(q, a) => {
                if head.replace((i, q)).is_some() {
                    return Err(TmError::MalformedWord("two heads"));
                }
                tape.push(a);
            }
            _ => return Err(TmError::MalformedWord("marker inside the tape")),
        }
    }
    let (head, state) = head.ok_or(TmError::MalformedWord("no head"))?;
    Ok(Configuration { state, tape, head })
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Move::L => "L",
            Move::R => "R",
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(from: &str, read: &str, to: &str, write: &str, dir: Move) -> NamedTransition {
        NamedTransition {
            from: from.into(),
            read: read.into(),
            to: to.into(),
            write: write.into(),
            dir,
        }
    }

    /// Erases a single `a`, looping on everything else.
    fn eraser() -> TuringMachine {
        TuringMachine::from_names(
            &["q0", "q1", "qf"],
            &["_", "a"],
            &["a"],
            "_",
            "q0",
            "qf",
            &[
                t("q0", "a", "q1", "_", Move::R),
                t("q1", "_", "qf", "_", Move::L),
                t("q0", "_", "q0", "_", Move::R),
                t("q1", "a", "q0", "a", Move::R),
            ],
        )
        .unwrap()
    }

    fn two_transition_eraser() -> TuringMachine {
        TuringMachine::from_names(
            &["q0", "q1", "qf"],
            &["_", "a"],
            &["a"],
            "_",
            "q0",
            "qf",
            &[
                t("q0", "a", "q1", "_", Move::R),
                t("q1", "_", "qf", "_", Move::L),
            ],
        )
        .unwrap()
    }

    #[test]
    fn well_formed_eraser_validates() {
        assert_eq!(validate(&eraser()), []);
    }

    #[test]
    fn accepting_transition_is_reported() {
        let mut tm = eraser();
        let qf = tm.accepting;
        tm.delta.insert(
            (qf, tm.blank),
            Action {
                next: qf,
                write: tm.blank,
                dir: Move::R,
            },
        );
        assert_eq!(
            validate(&tm),
            [Violation::AcceptingHasTransition(qf, tm.blank)]
        );
        assert!(validate(&tm)[0].describe(tm.names()).contains("`qf`"));
    }

    #[test]
    fn blank_in_input_is_reported() {
        let mut tm = eraser();
        tm.input.insert(tm.blank);
        assert_eq!(validate(&tm), [Violation::BlankIsInput(tm.blank)]);
    }

    #[test]
    fn duplicate_transition_is_rejected() {
        let err = TuringMachine::from_names(
            &["q0", "qf"],
            &["_", "a"],
            &["a"],
            "_",
            "q0",
            "qf",
            &[
                t("q0", "a", "qf", "_", Move::R),
                t("q0", "a", "q0", "_", Move::R),
            ],
        )
        .unwrap_err();
        assert_eq!(err, TmError::Nondeterministic("q0".into(), "a".into()));
    }

    #[test]
    fn single_step_pads_with_blank() {
        let tm = TuringMachine::from_names(
            &["q0", "q1", "qf"],
            &["_", "a", "b"],
            &["a"],
            "_",
            "q0",
            "qf",
            &[t("q0", "a", "q1", "b", Move::R)],
        )
        .unwrap();
        let c = tm.initial_config(&tm.word(&["a"]).unwrap());
        let next = step(&tm, &c).unwrap();
        let b = tm.names().find_symbol("b").unwrap();
        assert_eq!(
            next,
            Step::Next(Configuration {
                state: tm.names().find_state("q1").unwrap(),
                tape: vec![b, tm.blank()],
                head: 1,
            })
        );
    }

    #[test]
    fn accepting_config_halts() {
        let tm = eraser();
        let c = Configuration {
            state: tm.accepting(),
            tape: vec![],
            head: 0,
        };
        assert_eq!(step(&tm, &c), Ok(Step::Halted));
    }

    #[test]
    fn left_move_at_cell_zero_is_a_violation() {
        let tm = TuringMachine::from_names(
            &["q0", "q1", "qf"],
            &["_", "a"],
            &["a"],
            "_",
            "q0",
            "qf",
            &[t("q0", "_", "q1", "_", Move::L)],
        )
        .unwrap();
        let c = Configuration {
            state: tm.initial(),
            tape: vec![],
            head: 0,
        };
        assert!(matches!(
            step(&tm, &c),
            Err(TmError::LeftEdgeViolation { .. })
        ));
    }

    #[test]
    fn eraser_accepts_in_two_steps() {
        let tm = two_transition_eraser();
        let RunOutcome::Accepted(trace) = run(&tm, &tm.word(&["a"]).unwrap(), 100).unwrap() else {
            panic!("expected acceptance");
        };
        assert_eq!(trace.steps, 2);
        assert_eq!(trace.space, 2);
        assert_eq!(trace.configs.len(), 3);
        let last = trace.configs.last().unwrap();
        assert_eq!(last.head, 0);
        assert!(last.tape.iter().all(|&s| s == tm.blank()));
    }

    #[test]
    fn zero_fuel_is_out_of_fuel() {
        let tm = eraser();
        assert_eq!(
            run(&tm, &tm.word(&["a"]).unwrap(), 0),
            Ok(RunOutcome::OutOfFuel)
        );
    }

    #[test]
    fn looping_machine_runs_out_of_fuel() {
        let tm = TuringMachine::from_names(
            &["q0", "q1", "qf"],
            &["_", "a"],
            &["a"],
            "_",
            "q0",
            "qf",
            &[
                t("q0", "a", "q0", "a", Move::R),
                t("q0", "_", "q1", "_", Move::L),
                t("q1", "_", "q0", "_", Move::R),
                t("q1", "a", "q0", "a", Move::R),
            ],
        )
        .unwrap();
        assert_eq!(
            run(&tm, &tm.word(&["a"]).unwrap(), 10_000),
            Ok(RunOutcome::OutOfFuel)
        );
    }

    #[test]
    fn partial_machine_gets_stuck() {
        let tm = two_transition_eraser();
        let out = run(&tm, &tm.word(&["a", "a"]).unwrap(), 100).unwrap();
        assert!(matches!(out, RunOutcome::Stuck(_)));
    }

    #[test]
    fn non_input_symbols_are_rejected() {
        let tm = eraser();
        assert_eq!(
            run(&tm, &[tm.blank()], 10),
            Err(TmError::BadInput(tm.blank()))
        );
    }

    #[test]
    fn config_words() {
        let tm = eraser();
        let a = tm.names().find_symbol("a").unwrap();
        let c = tm.initial_config(&[a]);
        assert_eq!(
            config_word(&c, 3, tm.blank()).unwrap(),
            [
                ConfigSymbol::Start,
                ConfigSymbol::Head(tm.initial(), a),
                ConfigSymbol::Cell(tm.blank()),
                ConfigSymbol::End
            ]
        );
        let done = Configuration {
            state: tm.accepting(),
            tape: vec![tm.blank(); 2],
            head: 0,
        };
        assert_eq!(
            config_word(&done, 3, tm.blank()).unwrap(),
            [
                ConfigSymbol::Start,
                ConfigSymbol::Head(tm.accepting(), tm.blank()),
                ConfigSymbol::Cell(tm.blank()),
                ConfigSymbol::End
            ]
        );
        let wide = Configuration {
            state: tm.initial(),
            tape: vec![a; 4],
            head: 0,
        };
        assert_eq!(
            config_word(&wide, 3, tm.blank()),
            Err(TmError::DoesNotFit {
                needed: 4,
                available: 2
            })
        );
    }
}
