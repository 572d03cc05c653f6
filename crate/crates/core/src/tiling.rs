//! Edge-coloured tiles and the compiler from Turing machines to tile sets.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::hash::{Hash, Hasher};

use num_bigint::BigInt;

use crate::edge::EdgeMap;
use crate::ids::{Names, StateId, SymbolId};
use crate::lattice::EdgeId;
use crate::ring::Ring;
use crate::tm::{Move, TuringMachine};

/// An edge colour.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Color {
    /// The distinguished colour: a side coloured with it is ignored.
    Blank0,
    ArrowRight,
    ArrowUp,
    ArrowLeft,
    ArrowDown,
    /// The left arrow turned by 45 degrees, used only between `b5` and `b6`.
    ArrowDiag,
    TriLeft,
    TriRight,
    State(StateId),
    Letter(SymbolId),
    Head(StateId, SymbolId),
}

impl Color {
    pub const SPECIALS: [Color; 8] = [
        Color::Blank0,
        Color::ArrowRight,
        Color::ArrowUp,
        Color::ArrowLeft,
        Color::ArrowDown,
        Color::ArrowDiag,
        Color::TriLeft,
        Color::TriRight,
    ];

    /// Short display glyph.
    pub fn glyph(&self, names: &Names) -> String {
        match *self {
            Color::Blank0 => "·".into(),
            Color::ArrowRight => "→".into(),
            Color::ArrowUp => "↑".into(),
            Color::ArrowLeft => "←".into(),
            Color::ArrowDown => "↓".into(),
            Color::ArrowDiag => "↙".into(),
            Color::TriLeft => "◁".into(),
            Color::TriRight => "▷".into(),
            Color::State(q) => names.state(q).into(),
            Color::Letter(a) => names.symbol(a).into(),
            Color::Head(q, a) => format!("{}{}", names.state(q), names.symbol(a)),
        }
    }
}

/// A unit square with coloured sides. Equality ignores the label.
#[derive(Clone, Debug)]
pub struct Tile {
    pub north: Color,
    pub east: Color,
    pub south: Color,
    pub west: Color,
    pub label: Option<String>,
}

impl Tile {
    pub fn new(north: Color, east: Color, south: Color, west: Color) -> Self {
        Tile {
            north,
            east,
            south,
            west,
            label: None,
        }
    }

    pub fn labeled(mut self, label: &str) -> Self {
        self.label = Some(label.into());
        self
    }

    fn key(&self) -> (Color, Color, Color, Color) {
        (self.north, self.east, self.south, self.west)
    }

    pub fn colors(&self) -> [Color; 4] {
        [self.north, self.east, self.south, self.west]
    }
}

impl PartialEq for Tile {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

impl Eq for Tile {}

impl Ord for Tile {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl PartialOrd for Tile {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Hash for Tile {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.key().hash(state)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum TilingError {
    #[error("tile uses colour {0:?} which is not in the colour set")]
    ColorNotInSet(Color),
    #[error("the distinguished colour is missing from the colour set")]
    MissingBlank0,
    #[error("input word is empty")]
    EmptyInput,
    #[error("symbol {0:?} is not an input symbol")]
    BadInput(SymbolId),
}

/// A finite tile set over a finite colour set with `Blank0` distinguished.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TilingSystem {
    names: Names,
    colors: BTreeSet<Color>,
    tiles: Vec<Tile>,
}

impl TilingSystem {
    pub fn new(
        names: Names,
        colors: BTreeSet<Color>,
        tiles: Vec<Tile>,
    ) -> Result<Self, TilingError> {
        if !colors.contains(&Color::Blank0) {
            return Err(TilingError::MissingBlank0);
        }
        for t in &tiles {
            if let Some(c) = t.colors().into_iter().find(|c| !colors.contains(c)) {
                return Err(TilingError::ColorNotInSet(c));
            }
        }
        let mut seen = BTreeSet::new();
        let tiles = tiles
            .into_iter()
            .filter(|t| seen.insert(t.clone()))
            .collect();
        Ok(TilingSystem {
            names,
            colors,
            tiles,
        })
    }

    pub fn names(&self) -> &Names {
        &self.names
    }

    pub fn colors(&self) -> &BTreeSet<Color> {
        &self.colors
    }

    /// Colours in canonical order, as used for module coordinates.
    pub fn color_index(&self) -> Vec<Color> {
        self.colors.iter().copied().collect()
    }

    pub fn tiles(&self) -> &[Tile] {
        &self.tiles
    }

    pub fn distinguished(&self) -> Color {
        Color::Blank0
    }

    pub fn contains(&self, t: &Tile) -> bool {
        self.tiles.iter().any(|u| u == t)
    }

    pub fn position(&self, t: &Tile) -> Option<usize> {
        self.tiles.iter().position(|u| u == t)
    }

    pub fn boundary(&self, label: &str) -> Option<&Tile> {
        self.tiles
            .iter()
            .find(|t| t.label.as_deref() == Some(label))
    }
}

pub fn alphabet_right(a: SymbolId) -> Tile {
    Tile::new(
        Color::Letter(a),
        Color::TriRight,
        Color::Letter(a),
        Color::TriRight,
    )
}

pub fn alphabet_left(a: SymbolId) -> Tile {
    Tile::new(
        Color::Letter(a),
        Color::TriLeft,
        Color::Letter(a),
        Color::TriLeft,
    )
}

/// Receives the head from the west: the left move arrives from the east neighbour's
/// west side, so this tile sits right of an R-action.
pub fn merge_from_west(p: StateId, a: SymbolId) -> Tile {
    Tile::new(
        Color::Head(p, a),
        Color::TriRight,
        Color::Letter(a),
        Color::State(p),
    )
}

/// Receives the head from the east; sits left of an L-action.
pub fn merge_from_east(p: StateId, a: SymbolId) -> Tile {
    Tile::new(
        Color::Head(p, a),
        Color::State(p),
        Color::Letter(a),
        Color::TriLeft,
    )
}

/// The action tile for `delta(q, a) = (p, b, dir)`.
pub fn action(q: StateId, a: SymbolId, p: StateId, b: SymbolId, dir: Move) -> Tile {
    match dir {
        Move::L => Tile::new(
            Color::Letter(b),
            Color::TriRight,
            Color::Head(q, a),
            Color::State(p),
        ),
        Move::R => Tile::new(
            Color::Letter(b),
            Color::State(p),
            Color::Head(q, a),
            Color::TriLeft,
        ),
    }
}

/// The eight boundary tiles `b0..b7` for the given blank and accepting state.
pub fn boundary_tiles(blank: SymbolId, accepting: StateId) -> [Tile; 8] {
    use Color::*;
    [
        Tile::new(Letter(blank), ArrowRight, Blank0, ArrowRight).labeled("b0"),
        Tile::new(ArrowUp, Blank0, Blank0, ArrowRight).labeled("b1"),
        Tile::new(ArrowUp, Blank0, ArrowUp, TriRight).labeled("b2"),
        Tile::new(Blank0, Blank0, ArrowUp, ArrowLeft).labeled("b3"),
        Tile::new(Blank0, ArrowLeft, Letter(blank), ArrowLeft).labeled("b4"),
        Tile::new(Blank0, ArrowLeft, Head(accepting, blank), ArrowDiag).labeled("b5"),
        Tile::new(Blank0, ArrowDiag, ArrowDown, Blank0).labeled("b6"),
        Tile::new(ArrowDown, TriLeft, ArrowDown, Blank0).labeled("b7"),
    ]
}

/// Compiles a (normalized) machine into its tiling system.
///
/// Colours are every state, symbol and state-symbol pair plus the eight
/// special colours. Tiles, in this order: alphabet tiles, merging tiles,
/// one action tile per transition, and the boundary tiles `b0..b7`.
pub fn compile_tiles(tm: &TuringMachine) -> TilingSystem {
    let mut colors: BTreeSet<Color> = Color::SPECIALS.into_iter().collect();
    for q in tm.states() {
        colors.insert(Color::State(q));
        for a in tm.tape_alphabet() {
            colors.insert(Color::Head(q, a));
        }
    }
    for a in tm.tape_alphabet() {
        colors.insert(Color::Letter(a));
    }

    let mut tiles = Vec::new();
    for a in tm.tape_alphabet() {
        tiles.push(alphabet_right(a));
        tiles.push(alphabet_left(a));
    }
    for a in tm.tape_alphabet() {
        for p in tm.states() {
            tiles.push(merge_from_west(p, a));
            tiles.push(merge_from_east(p, a));
        }
    }
    for ((q, a), act) in tm.transitions() {
        tiles.push(action(q, a, act.next, act.write, act.dir));
    }
    tiles.extend(boundary_tiles(tm.blank(), tm.accepting()));

    TilingSystem::new(tm.names().clone(), colors, tiles)
        .expect("compiled tiles only use compiled colours")
}

/// The initial map `f_w`: the top of the input row plus the arrow that
/// starts the bottom boundary.
pub fn initial_map(tm: &TuringMachine, w: &[SymbolId], ring: Ring) -> Result<EdgeMap, TilingError> {
    let (&first, rest) = w.split_first().ok_or(TilingError::EmptyInput)?;
    if let Some(&bad) = w.iter().find(|a| !tm.input_alphabet().contains(a)) {
        return Err(TilingError::BadInput(bad));
    }
    let one = BigInt::from(1);
    let mut f = EdgeMap::zero(ring);
    f.add_at(EdgeId::h(0, 1), Color::ArrowDown, one.clone());
    f.add_at(
        EdgeId::h(1, 1),
        Color::Head(tm.initial(), first),
        one.clone(),
    );
    for (i, &a) in rest.iter().enumerate() {
        f.add_at(EdgeId::h(i as i64 + 2, 1), Color::Letter(a), one.clone());
    }
    f.add_at(EdgeId::v(w.len() as i64 + 1, 0), Color::ArrowRight, one);
    Ok(f)
}
