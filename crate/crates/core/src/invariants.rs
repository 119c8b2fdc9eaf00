//! Exact values of `D(G)`, `D_A(G)` and `E_A(G)` by exhaustive search.
//!
//! Each value is `1 + ` the length of a longest sequence avoiding the
//! defining zero-sum event; that sequence is returned as the certificate.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use crate::budget::{Budget, SearchStats};
use crate::elemset::ElementSet;
use crate::error::{invalid, Error, Result};
use crate::group::{gcd, Element, Group};
use crate::search::{longest_avoiding, Event};
use crate::sequence::GroupSequence;
use crate::subgroup::{all_subgroups, torsion_subgroup, Subgroup};
use crate::sums::{sigma, sigma_exact_n, weight_orbit};
use crate::symmetry::{automorphisms, AffineOrbits};
use crate::weights::WeightSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InvariantKind {
    DavenportClassical,
    DavenportWeighted,
    EgzWeighted,
}

impl InvariantKind {
    pub fn as_str(self) -> &'static str {
        match self {
            InvariantKind::DavenportClassical => "davenport_classical",
            InvariantKind::DavenportWeighted => "davenport_weighted",
            InvariantKind::EgzWeighted => "egz_weighted",
        }
    }
}

impl fmt::Display for InvariantKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for InvariantKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "davenport_classical" => Ok(InvariantKind::DavenportClassical),
            "davenport_weighted" | "davenport" => Ok(InvariantKind::DavenportWeighted),
            "egz_weighted" | "egz" => Ok(InvariantKind::EgzWeighted),
            _ => invalid(format!("unknown invariant kind '{s}'")),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SearchOptions {
    pub budget: Budget,
    pub orbit_pruning: bool,
    pub parallel: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { budget: Budget::UNLIMITED, orbit_pruning: true, parallel: true }
    }
}

impl SearchOptions {
    pub fn with_budget(budget: Budget) -> Self {
        SearchOptions { budget, ..Default::default() }
    }

    pub fn unpruned(mut self) -> Self {
        self.orbit_pruning = false;
        self
    }

    pub fn sequential(mut self) -> Self {
        self.parallel = false;
        self
    }
}

#[derive(Clone, Debug)]
pub struct InvariantResult {
    pub group: Group,
    pub weights: WeightSet,
    pub kind: InvariantKind,
    /// Subsequence length for `E_A`; `None` for the Davenport kinds.
    pub n: Option<usize>,
    pub value: u64,
    /// An avoiding sequence of length `value - 1`.
    pub certificate: GroupSequence,
    pub stats: SearchStats,
}

impl InvariantResult {
    /// Re-checks that the certificate has length `value - 1` and avoids the event.
    pub fn certificate_is_valid(&self) -> bool {
        if self.certificate.group() != &self.group || self.certificate.len() as u64 + 1 != self.value {
            return false;
        }
        match self.kind {
            InvariantKind::DavenportClassical => avoids_davenport_event(&WeightSet::ones(), &self.certificate),
            InvariantKind::DavenportWeighted => avoids_davenport_event(&self.weights, &self.certificate),
            InvariantKind::EgzWeighted => match self.n {
                Some(n) => avoids_egz_event(&self.weights, &self.certificate, n),
                None => false,
            },
        }
    }
}

/// No nontrivial subsequence has a weighted sum equal to 0.
pub fn avoids_davenport_event(weights: &WeightSet, seq: &GroupSequence) -> bool {
    !sigma(weights, seq).contains(seq.group().zero())
}

/// No length-`n` subsequence has a weighted sum equal to 0.
pub fn avoids_egz_event(weights: &WeightSet, seq: &GroupSequence, n: usize) -> bool {
    if n == 0 {
        return false;
    }
    seq.len() < n || !sigma_exact_n(weights, seq, n).expect("n in range").contains(seq.group().zero())
}

struct DavenportEvent {
    orbits: Vec<ElementSet>,
    group: Group,
}

impl Event for DavenportEvent {
    /// Sums reachable by nonempty subsequences.
    type State = ElementSet;

    fn root(&self) -> ElementSet {
        ElementSet::empty(self.group.order())
    }

    fn extend(&self, reach: &ElementSet, term: Element) -> Option<ElementSet> {
        let orbit = &self.orbits[term.rank()];
        if orbit.contains(self.group.zero()) || reach.intersects(&orbit.negated(&self.group)) {
            return None;
        }
        let mut next = reach.clone();
        next.union_with(orbit);
        for a in orbit.iter() {
            reach.translate_into(&self.group, a, &mut next);
        }
        Some(next)
    }
}

struct EgzEvent {
    orbits: Vec<ElementSet>,
    group: Group,
    n: usize,
}

impl Event for EgzEvent {
    /// `(len, rows)` with `rows[c]` the sums of exactly `c` terms, `c ≤ n`.
    type State = (usize, Vec<ElementSet>);

    fn root(&self) -> Self::State {
        let mut rows = vec![ElementSet::empty(self.group.order()); self.n + 1];
        rows[0].insert(self.group.zero());
        (0, rows)
    }

    fn extend(&self, (len, rows): &Self::State, term: Element) -> Option<Self::State> {
        let orbit = &self.orbits[term.rank()];
        let top = (len + 1).min(self.n);
        if top == self.n {
            let hit = orbit.iter().any(|a| rows[self.n - 1].contains(self.group.sub(self.group.zero(), a)));
            if hit {
                return None;
            }
        }
        let mut next = rows.clone();
        for c in (1..=top).rev() {
            for a in orbit.iter() {
                rows[c - 1].translate_into(&self.group, a, &mut next[c]);
            }
        }
        Some((len + 1, next))
    }
}

fn orbit_table(weights: &WeightSet, group: &Group) -> Vec<ElementSet> {
    group.elements().map(|g| weight_orbit(weights, group, g)).collect()
}

fn first_terms(group: &Group, orbits: Option<AffineOrbits>) -> Vec<Element> {
    match orbits {
        Some(o) => o.representatives(),
        None => group.elements().collect(),
    }
}

/// `D_A(G)`.
pub fn davenport_weighted(group: &Group, weights: &WeightSet, opts: &SearchOptions) -> Result<InvariantResult> {
    davenport_impl(group, weights, InvariantKind::DavenportWeighted, opts)
}

/// `D(G)`, the case `A = {1}`.
pub fn davenport_classical(group: &Group, opts: &SearchOptions) -> Result<InvariantResult> {
    davenport_impl(group, &WeightSet::ones(), InvariantKind::DavenportClassical, opts)
}

fn davenport_impl(group: &Group, weights: &WeightSet, kind: InvariantKind, opts: &SearchOptions) -> Result<InvariantResult> {
    let event = DavenportEvent { orbits: orbit_table(weights, group), group: group.clone() };
    // automorphisms only: translations do not preserve the event here
    let orbits =
        if opts.orbit_pruning { automorphisms(group).map(|maps| AffineOrbits::new(group, maps, &Subgroup::zero(group))) } else { None };
    let meter = opts.budget.meter();
    let out = longest_avoiding(group, &event, &first_terms(group, orbits), &meter, opts.parallel);
    let stats = SearchStats { nodes: meter.nodes(), wall_time: meter.elapsed() };
    if !out.complete {
        return Err(Error::ResourceLimit {
            what: format!("{kind} search for {group}, A = {weights}"),
            bounds: Some((out.best.len() as u64 + 1, group.order() as u64)),
        });
    }
    Ok(InvariantResult {
        group: group.clone(),
        weights: weights.clone(),
        kind,
        n: None,
        value: out.best.len() as u64 + 1,
        certificate: GroupSequence::from_terms(group, out.best),
        stats,
    })
}

/// `E_A(G)` for subsequence length `n` (default `|G|`).
///
/// Finite exactly when every `g` has some `a ∈ A` with `n·a·g = 0`; otherwise
/// `g^k` avoids the event for every `k` and an error names such a `g`.
pub fn egz_weighted(group: &Group, weights: &WeightSet, n: Option<usize>, opts: &SearchOptions) -> Result<InvariantResult> {
    let n = n.unwrap_or(group.order());
    if n < group.order() {
        return invalid(format!("n = {n} is smaller than |G| = {}", group.order()));
    }
    if let Some(g) = group.elements().find(|&g| weights.raw().iter().all(|&a| group.scale(n as i64 * a, g) != group.zero())) {
        return Err(Error::PreconditionViolation(format!(
            "E_A(G) is infinite for G = {group}, A = {weights}, n = {n}: every power of {} avoids the event",
            group.format_element(g)
        )));
    }
    let event = EgzEvent { orbits: orbit_table(weights, group), group: group.clone(), n };
    let orbits = if opts.orbit_pruning {
        // x ↦ σ(x) + t with t ∈ G[d], n·a_0·t = 0 preserves Σ_n
        let d = weights.d(group.exponent());
        let shift = gcd(d, (n as u64).wrapping_mul(weights.a0().unsigned_abs()));
        let translations = torsion_subgroup(group, if shift == 0 { d } else { shift });
        let maps = automorphisms(group).unwrap_or_default();
        Some(AffineOrbits::new(group, maps, &translations))
    } else {
        None
    };
    let meter = opts.budget.meter();
    let out = longest_avoiding(group, &event, &first_terms(group, orbits), &meter, opts.parallel);
    let stats = SearchStats { nodes: meter.nodes(), wall_time: meter.elapsed() };
    if !out.complete {
        return Err(Error::ResourceLimit {
            what: format!("egz_weighted search for {group}, A = {weights}, n = {n}"),
            bounds: Some((out.best.len() as u64 + 1, ((n - 1) * group.order() + 1) as u64)),
        });
    }
    Ok(InvariantResult {
        group: group.clone(),
        weights: weights.clone(),
        kind: InvariantKind::EgzWeighted,
        n: Some(n),
        value: out.best.len() as u64 + 1,
        certificate: GroupSequence::from_terms(group, out.best),
        stats,
    })
}

/// The `D_A` certificate followed by `0^{|G|-1}`: a sequence of length
/// `|G| + D_A(G) - 2` with no zero weighted sum of exactly `|G|` terms.
pub fn lower_bound_sequence(davenport: &InvariantResult) -> Result<GroupSequence> {
    if davenport.kind == InvariantKind::EgzWeighted {
        return invalid("lower_bound_sequence needs a Davenport result");
    }
    let group = &davenport.group;
    let mut seq = davenport.certificate.clone();
    seq.push_many(group.zero(), group.order() as u32 - 1);
    Ok(seq)
}

/// One subgroup row of a [`BoundsReport`].
#[derive(Clone, Debug, Serialize)]
pub struct SuperadditivityRow {
    pub subgroup: Vec<usize>,
    pub subgroup_type: Group,
    pub quotient_type: Group,
    pub davenport_subgroup: u64,
    pub davenport_quotient: u64,
    /// `D_A(G) - (D_A(H) + D_A(G/H) - 1)`.
    pub margin: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundsReport {
    pub group: Group,
    pub weights: WeightSet,
    pub davenport: u64,
    pub davenport_weighted: u64,
    /// `D(G) - D_A(G)`.
    pub weighted_margin: i64,
    pub rows: Vec<SuperadditivityRow>,
    pub holds: bool,
}

/// Looks up a value by kind, group type and weights.
pub type Lookup<'a> = dyn Fn(InvariantKind, &Group, &WeightSet) -> Option<u64> + 'a;

/// Checks `D_A(G) ≤ D(G)` and `D_A(G) ≥ D_A(H) + D_A(G/H) - 1` for every `H ≤ G`.
pub fn check_bounds(group: &Group, weights: &WeightSet, lookup: &Lookup<'_>) -> Result<BoundsReport> {
    let get = |kind: InvariantKind, g: &Group| {
        lookup(kind, g, weights).ok_or_else(|| Error::DependencyMissing(format!("{kind} for {g}, A = {weights}")))
    };
    let d = get(InvariantKind::DavenportClassical, group)?;
    let da = get(InvariantKind::DavenportWeighted, group)?;
    let mut rows = Vec::new();
    for h in all_subgroups(group)? {
        let ht = h.isomorphism_type();
        let qt = Subgroup::whole(group).quotient_type(&h)?;
        let dh = get(InvariantKind::DavenportWeighted, &ht)?;
        let dq = get(InvariantKind::DavenportWeighted, &qt)?;
        rows.push(SuperadditivityRow {
            subgroup: h.ranks(),
            subgroup_type: ht,
            quotient_type: qt,
            davenport_subgroup: dh,
            davenport_quotient: dq,
            margin: da as i64 - (dh as i64 + dq as i64 - 1),
        });
    }
    let holds = da <= d && rows.iter().all(|r| r.margin >= 0 && da >= r.davenport_quotient);
    Ok(BoundsReport {
        group: group.clone(),
        weights: weights.clone(),
        davenport: d,
        davenport_weighted: da,
        weighted_margin: d as i64 - da as i64,
        rows,
        holds,
    })
}

type TableKey = (InvariantKind, Group, WeightSet, Option<usize>);

/// Thread-safe memo of computed invariants, keyed by kind, group, weights and `n`.
#[derive(Default)]
pub struct InvariantTable {
    entries: Mutex<HashMap<TableKey, InvariantResult>>,
}

impl InvariantTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&self, result: InvariantResult) {
        let key = (result.kind, result.group.clone(), key_weights(result.kind, &result.weights), result.n);
        self.entries.lock().expect("table lock").insert(key, result);
    }

    pub fn get(&self, kind: InvariantKind, group: &Group, weights: &WeightSet, n: Option<usize>) -> Option<InvariantResult> {
        let key = (kind, group.clone(), key_weights(kind, weights), n);
        self.entries.lock().expect("table lock").get(&key).cloned()
    }

    pub fn len(&self) -> usize {
        self.entries.lock().expect("table lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Every stored result, ordered by kind, group, weights and `n`.
    pub fn entries(&self) -> Vec<InvariantResult> {
        let map = self.entries.lock().expect("table lock");
        let mut keys: Vec<&TableKey> = map.keys().collect();
        keys.sort();
        keys.into_iter().map(|k| map[k].clone()).collect()
    }

    pub fn get_or_compute(
        &self,
        kind: InvariantKind,
        group: &Group,
        weights: &WeightSet,
        n: Option<usize>,
        opts: &SearchOptions,
    ) -> Result<InvariantResult> {
        let n = match kind {
            InvariantKind::EgzWeighted => Some(n.unwrap_or(group.order())),
            _ => None,
        };
        if let Some(hit) = self.get(kind, group, weights, n) {
            return Ok(hit);
        }
        let result = match kind {
            InvariantKind::DavenportClassical => davenport_classical(group, opts)?,
            InvariantKind::DavenportWeighted => davenport_weighted(group, weights, opts)?,
            InvariantKind::EgzWeighted => egz_weighted(group, weights, n, opts)?,
        };
        self.insert(result.clone());
        Ok(result)
    }

    /// `D_A` of `group`, computing it on a miss.
    pub fn davenport(&self, group: &Group, weights: &WeightSet, opts: &SearchOptions) -> Result<u64> {
        Ok(self.get_or_compute(InvariantKind::DavenportWeighted, group, weights, None, opts)?.value)
    }

    /// Lookup view without computation, for [`check_bounds`].
    pub fn lookup(&self) -> impl Fn(InvariantKind, &Group, &WeightSet) -> Option<u64> + '_ {
        move |kind, group, weights| {
            let n = (kind == InvariantKind::EgzWeighted).then_some(group.order());
            self.get(kind, group, weights, n).map(|r| r.value)
        }
    }
}

fn key_weights(kind: InvariantKind, weights: &WeightSet) -> WeightSet {
    match kind {
        InvariantKind::DavenportClassical => WeightSet::ones(),
        _ => weights.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(spec: &str) -> Group {
        spec.parse().unwrap()
    }

    fn w(lit: &str) -> WeightSet {
        lit.parse().unwrap()
    }

    fn opts() -> SearchOptions {
        SearchOptions::default()
    }

    #[test]
    fn davenport_examples() {
        assert_eq!(davenport_weighted(&Group::trivial(), &w("1"), &opts()).unwrap().value, 1);
        let r = davenport_weighted(&g("C3"), &w("1"), &opts()).unwrap();
        assert_eq!(r.value, 3);
        assert!(r.certificate_is_valid());
        assert_eq!(davenport_weighted(&g("C3"), &w("1,2"), &opts()).unwrap().value, 2);
        assert_eq!(davenport_weighted(&g("C5"), &w("1,-1"), &opts()).unwrap().value, 3);
        assert_eq!(davenport_classical(&g("C2xC2"), &opts()).unwrap().value, 3);
        for n in 2..=9 {
            let r = davenport_classical(&Group::cyclic(n), &opts()).unwrap();
            assert_eq!(r.value, n);
            assert!(r.certificate_is_valid());
        }
    }

    #[test]
    fn egz_examples() {
        assert_eq!(egz_weighted(&g("C2"), &w("1"), None, &opts()).unwrap().value, 3);
        assert_eq!(egz_weighted(&g("C3"), &w("1,2"), None, &opts()).unwrap().value, 4);
        let r = egz_weighted(&g("C3"), &w("1"), None, &opts()).unwrap();
        assert_eq!(r.value, 5);
        assert!(r.certificate_is_valid());
        assert!(egz_weighted(&g("C3"), &w("1"), Some(2), &opts()).is_err());
        assert!(matches!(egz_weighted(&g("C2"), &w("1"), Some(3), &opts()), Err(Error::PreconditionViolation(_))));
    }

    #[test]
    fn budget_overflow_brackets() {
        let err = egz_weighted(&g("C7"), &w("1"), None, &SearchOptions::with_budget(Budget::nodes(50))).unwrap_err();
        match err {
            Error::ResourceLimit { bounds: Some((lower, upper)), .. } => assert!(lower <= 13 && 13 <= upper),
            e => panic!("unexpected {e}"),
        }
    }

    #[test]
    fn lower_bound_examples() {
        let d = davenport_classical(&g("C3"), &opts()).unwrap();
        let s = lower_bound_sequence(&d).unwrap();
        assert_eq!(s.canonical_string(), "0:2,1:2");
        assert!(avoids_egz_event(&WeightSet::ones(), &s, 3));
        let d = davenport_classical(&g("C2"), &opts()).unwrap();
        assert_eq!(lower_bound_sequence(&d).unwrap().len(), 2);
        let d = davenport_classical(&Group::trivial(), &opts()).unwrap();
        assert!(lower_bound_sequence(&d).unwrap().is_empty());
    }

    #[test]
    fn bounds_examples() {
        let table = InvariantTable::new();
        let c4 = g("C4");
        let a = w("1,-1");
        for grp in ["C1", "C2", "C4"] {
            let grp = g(grp);
            table.get_or_compute(InvariantKind::DavenportClassical, &grp, &a, None, &opts()).unwrap();
            table.get_or_compute(InvariantKind::DavenportWeighted, &grp, &a, None, &opts()).unwrap();
        }
        let report = check_bounds(&c4, &a, &table.lookup()).unwrap();
        assert_eq!((report.davenport_weighted, report.davenport), (3, 4));
        assert!(report.holds);
        assert_eq!(report.rows[0].margin, 0);

        let missing = InvariantTable::new();
        assert!(matches!(check_bounds(&c4, &a, &missing.lookup()), Err(Error::DependencyMissing(_))));
    }
}
