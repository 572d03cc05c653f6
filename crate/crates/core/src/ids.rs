//! Interned state and symbol ids with their name table.

use alloc::string::String;
use alloc::vec::Vec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StateId(pub u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SymbolId(pub u32);

/// Names of states and tape symbols, indexed by id.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Names {
    states: Vec<String>,
    symbols: Vec<String>,
}

impl Names {
    pub fn new() -> Self {
        Names::default()
    }

    pub fn state(&self, id: StateId) -> &str {
        self.states.get(id.0 as usize).map_or("?", |s| s.as_str())
    }

    pub fn symbol(&self, id: SymbolId) -> &str {
        self.symbols.get(id.0 as usize).map_or("?", |s| s.as_str())
    }

    pub fn find_state(&self, name: &str) -> Option<StateId> {
        self.states
            .iter()
            .position(|s| s == name)
            .map(|i| StateId(i as u32))
    }

    pub fn find_symbol(&self, name: &str) -> Option<SymbolId> {
        self.symbols
            .iter()
            .position(|s| s == name)
            .map(|i| SymbolId(i as u32))
    }

    /// Returns the existing id or appends a new one.
    pub fn intern_state(&mut self, name: &str) -> StateId {
        if let Some(id) = self.find_state(name) {
            return id;
        }
        self.states.push(name.into());
        StateId(self.states.len() as u32 - 1)
    }

    pub fn intern_symbol(&mut self, name: &str) -> SymbolId {
        if let Some(id) = self.find_symbol(name) {
            return id;
        }
        self.symbols.push(name.into());
        SymbolId(self.symbols.len() as u32 - 1)
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn symbol_count(&self) -> usize {
        self.symbols.len()
    }

    pub fn state_ids(&self) -> impl Iterator<Item = StateId> {
        (0..self.states.len() as u32).map(StateId)
    }

    pub fn symbol_ids(&self) -> impl Iterator<Item = SymbolId> {
        (0..self.symbols.len() as u32).map(SymbolId)
    }
}
