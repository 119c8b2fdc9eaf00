//! Longest event-avoiding sequence search over nondecreasing rank sequences.

use rayon::prelude::*;

use crate::budget::Meter;
use crate::group::{Element, Group};

/// A zero-sum event checked incrementally as terms are appended.
pub(crate) trait Event: Sync {
    type State: Clone + Send + Sync;

    fn root(&self) -> Self::State;

    /// State after appending `term`, or `None` once the event occurs.
    fn extend(&self, state: &Self::State, term: Element) -> Option<Self::State>;
}

pub(crate) struct Outcome {
    /// Lexicographically least among the longest avoiding sequences found.
    pub best: Vec<Element>,
    /// False when the meter tripped before the search space was exhausted.
    pub complete: bool,
}

/// Prefix depth at which the search fans out to worker threads.
const SPLIT_DEPTH: usize = 2;

/// Searches sequences whose first (minimal) term lies in `first_terms`.
pub(crate) fn longest_avoiding<E: Event>(group: &Group, event: &E, first_terms: &[Element], meter: &Meter, parallel: bool) -> Outcome {
    let order = group.order();
    let root = event.root();
    let mut best = Vec::new();
    let mut frontier = Vec::new();
    let mut prefix = Vec::new();
    for &x in first_terms {
        if !meter.tick() {
            return Outcome { best, complete: false };
        }
        let Some(st) = event.extend(&root, x) else { continue };
        prefix.push(x);
        collect_frontier(event, order, &mut prefix, st, &mut best, &mut frontier, meter);
        prefix.pop();
    }
    let run = |(p, st): &(Vec<Element>, E::State)| {
        let mut local = p.clone();
        let mut prefix = p.clone();
        dfs(event, order, &mut prefix, st, &mut local, meter);
        local
    };
    let results: Vec<Vec<Element>> = if parallel { frontier.par_iter().map(run).collect() } else { frontier.iter().map(run).collect() };
    for r in results {
        if better(&r, &best) {
            best = r;
        }
    }
    Outcome { best, complete: !meter.tripped() }
}

fn better(a: &[Element], b: &[Element]) -> bool {
    a.len() > b.len() || (a.len() == b.len() && a < b)
}

fn collect_frontier<E: Event>(
    event: &E,
    order: usize,
    prefix: &mut Vec<Element>,
    state: E::State,
    best: &mut Vec<Element>,
    frontier: &mut Vec<(Vec<Element>, E::State)>,
    meter: &Meter,
) {
    if better(prefix, best) {
        *best = prefix.clone();
    }
    if prefix.len() >= SPLIT_DEPTH {
        frontier.push((prefix.clone(), state));
        return;
    }
    let last = prefix.last().map_or(0, |e| e.rank());
    for r in last..order {
        if !meter.tick() {
            return;
        }
        let x = Element::from_rank(r);
        if let Some(st) = event.extend(&state, x) {
            prefix.push(x);
            collect_frontier(event, order, prefix, st, best, frontier, meter);
            prefix.pop();
        }
    }
}

fn dfs<E: Event>(event: &E, order: usize, prefix: &mut Vec<Element>, state: &E::State, best: &mut Vec<Element>, meter: &Meter) {
    let last = prefix.last().map_or(0, |e| e.rank());
    for r in last..order {
        if !meter.tick() {
            return;
        }
        let x = Element::from_rank(r);
        if let Some(st) = event.extend(state, x) {
            prefix.push(x);
            if prefix.len() > best.len() {
                *best = prefix.clone();
            }
            dfs(event, order, prefix, &st, best, meter);
            prefix.pop();
        }
    }
}
