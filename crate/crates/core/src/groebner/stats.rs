//! Per-thread engine counters, reported by the command-line front end.

use std::cell::Cell;

thread_local! {
    static S_PAIRS: Cell<u64> = const { Cell::new(0) };
    static ZERO_REDUCTIONS: Cell<u64> = const { Cell::new(0) };
    static BASES: Cell<u64> = const { Cell::new(0) };
    static MAX_BASIS: Cell<u64> = const { Cell::new(0) };
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EngineStats {
    pub s_pairs: u64,
    pub zero_reductions: u64,
    pub bases_computed: u64,
    pub max_basis_size: u64,
}

pub fn reset() {
    S_PAIRS.with(|c| c.set(0));
    ZERO_REDUCTIONS.with(|c| c.set(0));
    BASES.with(|c| c.set(0));
    MAX_BASIS.with(|c| c.set(0));
}

pub fn snapshot() -> EngineStats {
    EngineStats {
        s_pairs: S_PAIRS.with(Cell::get),
        zero_reductions: ZERO_REDUCTIONS.with(Cell::get),
        bases_computed: BASES.with(Cell::get),
        max_basis_size: MAX_BASIS.with(Cell::get),
    }
}

pub(crate) fn count_pair(zero: bool) {
    S_PAIRS.with(|c| c.set(c.get() + 1));
    if zero {
        ZERO_REDUCTIONS.with(|c| c.set(c.get() + 1));
    }
}

pub(crate) fn count_basis(size: usize) {
    BASES.with(|c| c.set(c.get() + 1));
    MAX_BASIS.with(|c| c.set(c.get().max(size as u64)));
}
