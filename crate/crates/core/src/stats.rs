//! Per-thread node-visit counters.
//!
//! Every wavelet-tree and parentheses-tree traversal bumps a thread-local
//! counter once per node it processes. Counters never influence results;
//! they exist so tests and the CLI `--stats` flag can observe the work done
//! by a query.

use std::cell::Cell;

thread_local! {
    static NODE_VISITS: Cell<u64> = const { Cell::new(0) };
}

#[inline]
pub(crate) fn visit() {
    NODE_VISITS.with(|c| c.set(c.get() + 1));
}

/// Node visits recorded on this thread since the last [`reset`].
pub fn node_visits() -> u64 {
    NODE_VISITS.with(Cell::get)
}

pub fn reset() {
    NODE_VISITS.with(|c| c.set(0));
}

/// Runs `f` and returns its result together with the node visits it caused.
///
/// Lazy iterators only do their work when consumed, so collect inside `f`.
pub fn measure<R>(f: impl FnOnce() -> R) -> (R, u64) {
    let before = node_visits();
    let out = f();
    (out, node_visits() - before)
}
