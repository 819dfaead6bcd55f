//! Optional data parallelism, capped by the `LOGCHERN_THREADS` environment variable.

use std::cell::Cell;

use rayon::prelude::*;

use crate::groebner::{merge_stats, with_stats};

thread_local! {
    static OVERRIDE: Cell<Option<usize>> = const { Cell::new(None) };
}

/// Worker count from `LOGCHERN_THREADS`; `0` means serial, unset means rayon's default.
pub fn thread_count() -> Option<usize> {
    if let Some(n) = OVERRIDE.with(Cell::get) {
        return Some(n);
    }
    std::env::var("LOGCHERN_THREADS").ok().and_then(|v| v.trim().parse().ok())
}

/// Runs `f` with the worker count fixed to `n` on this thread.
pub fn with_threads<R>(n: usize, f: impl FnOnce() -> R) -> R {
    let prev = OVERRIDE.with(|c| c.replace(Some(n)));
    let out = f();
    OVERRIDE.with(|c| c.set(prev));
    out
}

/// Maps `f` over `items`, in parallel unless the thread count is zero.
/// Output order matches input order; engine counters from workers are merged
/// into the calling thread.
pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    let run = |pool: Option<rayon::ThreadPool>| -> Vec<R> {
        let work = || items.par_iter().map(|x| with_stats(|| f(x))).collect::<Vec<_>>();
        let out = match pool {
            Some(p) => p.install(work),
            None => work(),
        };
        out.into_iter()
            .map(|(r, s)| {
                merge_stats(&s);
                r
            })
            .collect()
    };
    match thread_count() {
        Some(0) => items.iter().map(&f).collect(),
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(p) => run(Some(p)),
            Err(_) => items.iter().map(&f).collect(),
        },
        None => run(None),
    }
}
