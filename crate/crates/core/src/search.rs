//! Resource limits shared by every exhaustive search in the crate.

use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};

pub const DEFAULT_NODE_BUDGET: u64 = 1_000_000_000;

/// Knobs for the exhaustive searches.
///
/// Results never depend on `threads`; only wall time does.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    /// Maximum number of search nodes a single computation may expand.
    pub node_budget: u64,
    /// Worker threads for searches that fan out their top-level branches.
    pub threads: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            node_budget: DEFAULT_NODE_BUDGET,
            threads: std::thread::available_parallelism().map_or(1, |n| n.get()),
        }
    }
}

impl SearchConfig {
    pub fn single_threaded() -> Self {
        SearchConfig {
            threads: 1,
            ..Self::default()
        }
    }

    pub fn with_budget(mut self, node_budget: u64) -> Self {
        self.node_budget = node_budget;
        self
    }

    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = threads.max(1);
        self
    }

    pub(crate) fn meter(&self) -> NodeMeter {
        NodeMeter::new(self.node_budget)
    }
}

/// Counts expanded nodes; shareable across worker threads.
#[derive(Debug)]
pub(crate) struct NodeMeter {
    used: AtomicU64,
    limit: u64,
}

impl NodeMeter {
    pub(crate) fn new(limit: u64) -> Self {
        NodeMeter {
            used: AtomicU64::new(0),
            limit,
        }
    }

    #[inline]
    pub(crate) fn tick(&self) -> Result<()> {
        let used = self.used.fetch_add(1, Ordering::Relaxed) + 1;
        if used > self.limit {
            Err(Error::BudgetExceeded { budget: self.limit })
        } else {
            Ok(())
        }
    }

    #[allow(dead_code)]
    pub(crate) fn used(&self) -> u64 {
        self.used.load(Ordering::Relaxed)
    }
}

/// Multiplicative hash for packed bitmask keys.
#[derive(Default)]
pub(crate) struct MaskHasher(u64);

impl std::hash::Hasher for MaskHasher {
    fn finish(&self) -> u64 {
        self.0
    }

    fn write(&mut self, bytes: &[u8]) {
        for &b in bytes {
            self.write_u64(b as u64);
        }
    }

    fn write_u64(&mut self, x: u64) {
        self.0 = (self.0.rotate_left(5) ^ x).wrapping_mul(0x9e37_79b9_7f4a_7c15);
    }

    fn write_u128(&mut self, x: u128) {
        self.write_u64(x as u64);
        self.write_u64((x >> 64) as u64);
    }

    fn write_usize(&mut self, x: usize) {
        self.write_u64(x as u64);
    }
}

pub(crate) type FastMap<K, V> =
    std::collections::HashMap<K, V, std::hash::BuildHasherDefault<MaskHasher>>;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn meter_trips_after_limit() {
        let m = NodeMeter::new(3);
        assert!(m.tick().is_ok());
        assert!(m.tick().is_ok());
        assert!(m.tick().is_ok());
        assert_eq!(m.tick(), Err(Error::BudgetExceeded { budget: 3 }));
    }

    #[test]
    fn threads_clamped() {
        assert_eq!(SearchConfig::default().with_threads(0).threads, 1);
    }
}
