//! Turing machines, tiling sums and the group algebra of `Z x Z`.
//!
//! This crate compiles a deterministic, left-bounded Turing machine into a
//! finite set of edge-coloured tiles together with an initial map `f_w`, such
//! that the machine accepts `w` exactly when some sum of translated tiles
//! cancels `f_w`. From there the same data is transported into
//!
//! * subsemimodule membership in free `R[Z x Z]`-modules ([`semimodule`]),
//! * submonoid membership in `Z wr (Z x Z)` and the free metabelian group of
//!   rank two ([`group`]),
//! * subset sums and rational subsets of `Z/n wr (Z x Z)` ([`rational`]).
//!
//! Every search in here is bounded: a negative answer only ever means
//! "nothing within the given bounds".
//!
//! The crate is `no_std` and only needs `alloc`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod edge;
pub mod engine;
pub mod group;
pub mod ids;
pub mod lattice;
pub mod rational;
pub mod ring;
pub mod samples;
pub mod semimodule;
pub mod tiling;
pub mod tm;

pub use edge::EdgeMap;
pub use ids::{Names, StateId, SymbolId};
pub use lattice::{EdgeId, Orient, Point, Window};
pub use ring::{Ring, Sparse};
pub use tiling::{Color, Tile, TilingSystem};
pub use tm::{Configuration, Move, RunOutcome, RunTrace, TuringMachine};
