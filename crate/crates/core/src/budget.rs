use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

/// Node and wall-clock caps for exhaustive searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Budget {
    pub max_nodes: Option<u64>,
    pub max_time: Option<Duration>,
}

impl Budget {
    pub const UNLIMITED: Budget = Budget { max_nodes: None, max_time: None };

    pub fn nodes(max_nodes: u64) -> Self {
        Budget { max_nodes: Some(max_nodes), max_time: None }
    }

    pub fn with_time(mut self, max_time: Duration) -> Self {
        self.max_time = Some(max_time);
        self
    }

    pub(crate) fn meter(&self) -> Meter {
        Meter { budget: *self, start: Instant::now(), nodes: AtomicU64::new(0), tripped: AtomicBool::new(false) }
    }
}

/// Shared counter charged by search workers. Once tripped it stays tripped.
#[derive(Debug)]
pub(crate) struct Meter {
    budget: Budget,
    start: Instant,
    nodes: AtomicU64,
    tripped: AtomicBool,
}

impl Meter {
    /// Charges one node; returns false once the budget is exhausted.
    pub(crate) fn tick(&self) -> bool {
        if self.tripped.load(Ordering::Relaxed) {
            return false;
        }
        let n = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if let Some(max) = self.budget.max_nodes {
            if n > max {
                self.tripped.store(true, Ordering::Relaxed);
                return false;
            }
        }
        if n.is_multiple_of(1024) {
            if let Some(limit) = self.budget.max_time {
                if self.start.elapsed() > limit {
                    self.tripped.store(true, Ordering::Relaxed);
                    return false;
                }
            }
        }
        true
    }

    pub(crate) fn tripped(&self) -> bool {
        self.tripped.load(Ordering::Relaxed)
    }

    pub(crate) fn nodes(&self) -> u64 {
        self.nodes.load(Ordering::Relaxed)
    }

    pub(crate) fn elapsed(&self) -> Duration {
        self.start.elapsed()
    }
}

/// Counters reported alongside search results.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: u64,
    pub wall_time: Duration,
}
