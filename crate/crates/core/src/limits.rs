//! Process-wide work caps for the exhaustive enumerations.
//!
//! The defaults are sized for desk-scale instances. A front end can lower or
//! raise all of them at once with [`set_work_cap`].

use std::sync::atomic::{AtomicU64, Ordering};

pub const DEFAULT_VERTEX_SUBSETS: u64 = 10_000_000;
pub const DEFAULT_COMBINATORIAL_NODES: u64 = 10_000_000;
pub const DEFAULT_EXTENSIONS: u64 = 1_000_000;

static VERTEX_SUBSETS: AtomicU64 = AtomicU64::new(DEFAULT_VERTEX_SUBSETS);
static COMBINATORIAL_NODES: AtomicU64 = AtomicU64::new(DEFAULT_COMBINATORIAL_NODES);
static EXTENSIONS: AtomicU64 = AtomicU64::new(DEFAULT_EXTENSIONS);

/// Maximum number of constraint subsets explored by vertex enumeration.
pub fn vertex_subset_cap() -> u64 {
    VERTEX_SUBSETS.load(Ordering::Relaxed)
}

/// Maximum number of search nodes in the combinatorial vertex search.
pub fn combinatorial_node_cap() -> u64 {
    COMBINATORIAL_NODES.load(Ordering::Relaxed)
}

/// Maximum number of linear extensions summed by the Ehrhart formula.
pub fn extension_cap() -> u64 {
    EXTENSIONS.load(Ordering::Relaxed)
}

/// Override every cap with the same value.
pub fn set_work_cap(cap: u64) {
    VERTEX_SUBSETS.store(cap, Ordering::Relaxed);
    COMBINATORIAL_NODES.store(cap, Ordering::Relaxed);
    EXTENSIONS.store(cap, Ordering::Relaxed);
}

/// Restore the default caps.
pub fn reset_work_caps() {
    VERTEX_SUBSETS.store(DEFAULT_VERTEX_SUBSETS, Ordering::Relaxed);
    COMBINATORIAL_NODES.store(DEFAULT_COMBINATORIAL_NODES, Ordering::Relaxed);
    EXTENSIONS.store(DEFAULT_EXTENSIONS, Ordering::Relaxed);
}
