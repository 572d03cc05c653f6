use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::One;

use super::{Certificate, Placement};
use crate::edge::{tile_eval, EdgeMap};
use crate::lattice::{EdgeId, Orient, Point};
use crate::tiling::{Color, Tile, TilingSystem};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SearchError {
    #[error("initial map is malformed: {0}")]
    MalformedInput(&'static str),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(Certificate),
    /// No certificate with the given bounds. This says nothing about
    /// larger bounds.
    NoneWithinBounds,
}

/// Checks that `f0` is shaped like an initial map and returns the input
/// length: one `ArrowDown` on the top of `(0,0)`, a contiguous row of
/// letters or heads on the tops of `(1..=n, 0)` and one `ArrowRight` on the
/// east side of `(n, 0)`, each with value one.
pub fn input_length(f0: &EdgeMap) -> Result<i64, SearchError> {
    use SearchError::MalformedInput;
    if f0.is_zero() {
        return Err(MalformedInput("the map is zero"));
    }
    let mut arrow_down = false;
    let mut arrow_right = None;
    let mut row = Vec::new();
    for (e, c, v) in f0.support() {
        if !v.is_one() {
            return Err(MalformedInput("every entry must be one"));
        }
        match (e.orient, c) {
            (Orient::H, Color::ArrowDown) if e.base == Point::new(0, 1) && !arrow_down => {
                arrow_down = true
            }
            (Orient::V, Color::ArrowRight) if e.base.y == 0 && arrow_right.is_none() => {
                arrow_right = Some(e.base.x)
            }
            (Orient::H, Color::Letter(_) | Color::Head(..)) if e.base.y == 1 => row.push(e.base.x),
            _ => return Err(MalformedInput("unexpected entry")),
        }
    }
    if !arrow_down {
        return Err(MalformedInput("missing the downward arrow"));
    }
    let end = arrow_right.ok_or(MalformedInput("missing the rightward arrow"))?;
    let n = row.len() as i64;
    if n == 0 || end != n + 1 || row.iter().zip(1..).any(|(&x, i)| x != i) {
        return Err(MalformedInput("input row is not contiguous"));
    }
    Ok(n)
}

/// Re-derives a certificate from the tile colours alone.
///
/// For each width `m` from `n+1` to `max_m`, fills the bottom row from
/// `x = n+1` and then rows `1, 2, ...` from west to east. At every position
/// the open colours south and west of it fix the candidate tiles; a tile
/// has an uncoloured east side exactly in column `m`. Choices are undone on
/// contradiction. A width succeeds when the residue becomes zero after at
/// most `max_rows` rows above the bottom one.
pub fn forced_search(
    ts: &TilingSystem,
    f0: &EdgeMap,
    max_m: i64,
    max_rows: i64,
) -> Result<SearchOutcome, SearchError> {
    let n = input_length(f0)?;
    let mut index: BTreeMap<(Color, Color), Vec<&Tile>> = BTreeMap::new();
    for t in ts.tiles() {
        index.entry((t.south, t.west)).or_default().push(t);
    }
    for m in n + 1..=max_m {
        if let Some(cert) = Deduction::new(&index, f0, n, m, max_rows).run() {
            return Ok(SearchOutcome::Found(cert));
        }
    }
    Ok(SearchOutcome::NoneWithinBounds)
}

struct Choice<'a> {
    pos: Point,
    candidates: Vec<&'a Tile>,
    next: usize,
}

struct Deduction<'a, 'b> {
    index: &'b BTreeMap<(Color, Color), Vec<&'a Tile>>,
    residue: EdgeMap,
    n: i64,
    m: i64,
    max_rows: i64,
    stack: Vec<Choice<'a>>,
}

impl<'a, 'b> Deduction<'a, 'b> {
    fn new(
        index: &'b BTreeMap<(Color, Color), Vec<&'a Tile>>,
        f0: &EdgeMap,
        n: i64,
        m: i64,
        max_rows: i64,
    ) -> Self {
        Deduction {
            index,
            residue: f0.clone(),
            n,
            m,
            max_rows,
            stack: Vec::new(),
        }
    }

    fn first(&self) -> Point {
        Point::new(self.n + 1, 0)
    }

    fn after(&self, p: Point) -> Point {
        if p.x < self.m {
            Point::new(p.x + 1, p.y)
        } else {
            Point::new(0, p.y + 1)
        }
    }

    /// The single open colour on `edge`, `Blank0` if none, `None` if the
    /// edge cannot be closed by one tile.
    fn open(&self, edge: EdgeId) -> Option<Color> {
        let mut it = self.residue.on_edge(edge);
        match (it.next(), it.next()) {
            (None, _) => Some(Color::Blank0),
            (Some((c, v)), None) if v.is_one() => Some(c),
            _ => None,
        }
    }

    fn candidates(&self, pos: Point) -> Vec<&'a Tile> {
        let (Some(south), Some(west)) = (
            self.open(EdgeId::h(pos.x, pos.y)),
            self.open(EdgeId::v(pos.x, pos.y)),
        ) else {
            return Vec::new();
        };
        let last = pos.x == self.m;
        self.index
            .get(&(south, west))
            .map(|ts| {
                ts.iter()
                    .copied()
                    .filter(|t| (t.east == Color::Blank0) == last)
                    .collect()
            })
            .unwrap_or_default()
    }

    fn apply(&mut self, t: &Tile, pos: Point, sign: i64) {
        let mut f = tile_eval(t, self.residue.ring()).translate(pos);
        if sign < 0 {
            f = f.negate();
        }
        self.residue.add_assign(&f).expect("same ring");
    }

    /// Whether the residue after finishing row `y` only has open colours on
    /// the tops of the row's own positions.
    fn row_closed(&self, y: i64) -> bool {
        self.residue.support().all(|(e, _, v)| {
            e.orient == Orient::H
                && e.base.y == y + 1
                && (0..=self.m).contains(&e.base.x)
                && v.is_one()
        })
    }

    fn run(mut self) -> Option<Certificate> {
        let mut pos = self.first();
        loop {
            let candidates = self.candidates(pos);
            self.stack.push(Choice {
                pos,
                candidates,
                next: 0,
            });
            // advance to the next viable choice, backtracking as needed
            loop {
                let top = self.stack.last_mut()?;
                if top.next < top.candidates.len() {
                    let t = top.candidates[top.next];
                    top.next += 1;
                    let at = top.pos;
                    self.apply(t, at, 1);
                    if at.x < self.m {
                        pos = self.after(at);
                        break;
                    }
                    if self.residue.is_zero() {
                        return Some(self.certificate(at.y));
                    }
                    if self.row_closed(at.y) && at.y < self.max_rows {
                        pos = self.after(at);
                        break;
                    }
                    self.apply(t, at, -1);
                } else {
                    self.stack.pop();
                    let prev = self.stack.last()?;
                    let t = prev.candidates[prev.next - 1];
                    let at = prev.pos;
                    self.apply(t, at, -1);
                }
            }
        }
    }

    fn certificate(&self, rows: i64) -> Certificate {
        let placements = self
            .stack
            .iter()
            .map(|c| Placement {
                pos: c.pos,
                tile: c.candidates[c.next - 1].clone(),
            })
            .collect();
        Certificate {
            placements,
            width_m: self.m,
            height_n: rows,
        }
    }
}
