use alloc::vec::Vec;

use super::{row_major, Certificate, Placement};
use crate::ids::SymbolId;
use crate::tiling::{self, boundary_tiles};
use crate::tm::{run, Configuration, Move, RunOutcome, TmError, TuringMachine};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum BuildError {
    #[error("the machine does not accept within the fuel bound")]
    OutOfFuel,
    #[error("the machine halted without accepting")]
    Rejected,
    #[error("input word is empty")]
    EmptyInput,
    #[error("the accepting configuration is not the cleaned-up one; normalize the machine first")]
    NotNormalized,
    #[error(transparent)]
    Tm(#[from] TmError),
}

/// Builds the tiling certificate of an accepting run of `tm` on `w`.
pub fn build_accepting_tiling(
    tm: &TuringMachine,
    w: &[SymbolId],
    fuel: u64,
) -> Result<Certificate, BuildError> {
    if w.is_empty() {
        return Err(BuildError::EmptyInput);
    }
    let trace = match run(tm, w, fuel)? {
        RunOutcome::Accepted(trace) => trace,
        RunOutcome::OutOfFuel => return Err(BuildError::OutOfFuel),
        RunOutcome::Stuck(_) => return Err(BuildError::Rejected),
    };
    let blank = tm.blank();
    let last = trace
        .configs
        .last()
        .expect("a trace has a first configuration");
    if last.head != 0 || last.read(blank) != blank || last.tape.iter().any(|&s| s != blank) {
        return Err(BuildError::NotNormalized);
    }

    let n = w.len() as i64;
    let m = (trace.space as i64 + 1).max(n + 1);
    let rows = trace.configs.len() as i64;
    let b = boundary_tiles(blank, tm.accepting());
    let mut out = Vec::new();

    for x in n + 1..m {
        out.push(Placement::new(b[0].clone(), x, 0));
    }
    out.push(Placement::new(b[1].clone(), m, 0));

    for (i, pair) in trace.configs.windows(2).enumerate() {
        let y = i as i64 + 1;
        out.push(Placement::new(b[7].clone(), 0, y));
        out.extend(step_row(tm, &pair[0], m, y));
        out.push(Placement::new(b[2].clone(), m, y));
    }

    out.push(Placement::new(b[6].clone(), 0, rows));
    out.push(Placement::new(b[5].clone(), 1, rows));
    for x in 2..m {
        out.push(Placement::new(b[4].clone(), x, rows));
    }
    out.push(Placement::new(b[3].clone(), m, rows));

    Ok(Certificate {
        placements: row_major(out),
        width_m: m,
        height_n: rows,
    })
}

/// Tiles in columns `1..m` of the row whose south side is configuration `c`.
fn step_row(tm: &TuringMachine, c: &Configuration, m: i64, y: i64) -> Vec<Placement> {
    let blank = tm.blank();
    let q = c.state;
    let a = c.read(blank);
    let act = tm.action(q, a).expect("the run took this transition");
    let head_col = c.head as i64 + 1;
    let cell = |x: i64| c.tape.get(x as usize - 1).copied().unwrap_or(blank);

    let mut row = Vec::new();
    for x in 1..m {
        let tile = if x == head_col {
            tiling::action(q, a, act.next, act.write, act.dir)
        } else if act.dir == Move::L && x == head_col - 1 {
            tiling::merge_from_east(act.next, cell(x))
        } else if act.dir == Move::R && x == head_col + 1 {
            tiling::merge_from_west(act.next, cell(x))
        } else if x < head_col {
            tiling::alphabet_left(cell(x))
        } else {
            tiling::alphabet_right(cell(x))
        };
        row.push(Placement::new(tile, x, y));
    }
    row
}
