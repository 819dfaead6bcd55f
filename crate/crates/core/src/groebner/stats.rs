use std::cell::Cell;

use serde::Serialize;

/// Deterministic work counters for Gröbner computations on the current thread.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct EngineStats {
    pub groebner_runs: u64,
    pub spairs_reduced: u64,
    pub zero_reductions: u64,
    pub max_degree: i64,
}

impl EngineStats {
    pub fn merge(&mut self, other: &EngineStats) {
        self.groebner_runs += other.groebner_runs;
        self.spairs_reduced += other.spairs_reduced;
        self.zero_reductions += other.zero_reductions;
        self.max_degree = self.max_degree.max(other.max_degree);
    }
}

thread_local! {
    static STATS: Cell<EngineStats> = Cell::new(EngineStats::default());
}

pub(crate) fn record(f: impl FnOnce(&mut EngineStats)) {
    STATS.with(|s| {
        let mut v = s.get();
        f(&mut v);
        s.set(v);
    });
}

/// Runs `f` and returns its result with the counters it accumulated.
/// Counters collected inside are also added to the enclosing scope.
pub fn with_stats<R>(f: impl FnOnce() -> R) -> (R, EngineStats) {
    let saved = STATS.with(|s| s.replace(EngineStats::default()));
    let r = f();
    let inner = STATS.with(|s| s.get());
    let mut outer = saved;
    outer.merge(&inner);
    STATS.with(|s| s.set(outer));
    (r, inner)
}

/// Adds counters gathered elsewhere (e.g. on a worker thread) to this thread.
pub fn merge_stats(other: &EngineStats) {
    record(|s| s.merge(other));
}

pub fn current_stats() -> EngineStats {
    STATS.with(|s| s.get())
}
