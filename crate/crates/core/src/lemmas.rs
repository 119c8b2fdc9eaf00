//! Statement-level checkers and constructive searches for the supporting lemmas.
//!
//! Inequality checkers return a [`LemmaReport`] whose verdict is `Holds` or
//! `Violation`; constructive searches return `WitnessFound` or fail with
//! [`Error::TheoremViolation`].

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::budget::Budget;
use crate::elemset::ElementSet;
use crate::error::{invalid, Error, Result};
use crate::group::{Element, Group};
use crate::sequence::GroupSequence;
use crate::setpartition::{full_sumset, sp_exact_n_union, SetPartition};
use crate::subgroup::{is_periodic_under, quotient, stabilizer, subgroups_within, Subgroup};
use crate::sums::weight_orbit;
use crate::theorem::Lab;
use crate::weights::WeightSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LemmaId {
    Kneser,
    Dgm,
    Ccd,
    CosetLemma,
    ConfusingLemma,
    Keylemma,
    CorollaryStructure,
}

impl LemmaId {
    pub const ALL: [LemmaId; 7] = [
        LemmaId::Kneser,
        LemmaId::Dgm,
        LemmaId::Ccd,
        LemmaId::CosetLemma,
        LemmaId::ConfusingLemma,
        LemmaId::Keylemma,
        LemmaId::CorollaryStructure,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            LemmaId::Kneser => "kneser",
            LemmaId::Dgm => "dgm",
            LemmaId::Ccd => "ccd",
            LemmaId::CosetLemma => "coset",
            LemmaId::ConfusingLemma => "confusing",
            LemmaId::Keylemma => "keylemma",
            LemmaId::CorollaryStructure => "corollary-structure",
        }
    }
}

impl fmt::Display for LemmaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for LemmaId {
    type Err = Error;

    fn from_str(s: &str) -> Result<LemmaId> {
        LemmaId::ALL.into_iter().find(|l| l.as_str() == s).ok_or_else(|| Error::InvalidInput(format!("unknown lemma '{s}'")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    WitnessFound,
    Holds,
    Violation,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LemmaReport {
    pub lemma: LemmaId,
    /// Enough of the input to replay the check.
    pub instance: Value,
    pub verdict: Verdict,
    pub witness: Value,
}

impl LemmaReport {
    pub fn is_violation(&self) -> bool {
        self.verdict == Verdict::Violation
    }
}

fn set_json(set: &ElementSet) -> Value {
    json!(set.ranks())
}

fn blocks_json(blocks: &[ElementSet]) -> Value {
    Value::Array(blocks.iter().map(set_json).collect())
}

/// `|Σ φ_H(A_i)| ≥ Σ |φ_H(A_i)| - n + 1` with `H` the stabilizer of `Σ A_i`.
pub fn check_kneser(group: &Group, sets: &[ElementSet]) -> Result<LemmaReport> {
    if sets.is_empty() || sets.iter().any(|s| s.is_empty() || s.universe() != group.order()) {
        return invalid("Kneser check needs at least one nonempty set in the group");
    }
    let sum = full_sumset(group, sets);
    let h = stabilizer(group, &sum)?;
    let phi = quotient(group, &h)?;
    let images: Vec<ElementSet> = sets.iter().map(|s| phi.apply_set(s)).collect();
    let lhs = full_sumset(phi.target(), &images).len() as i64;
    let rhs = images.iter().map(|s| s.len() as i64).sum::<i64>() - sets.len() as i64 + 1;
    Ok(LemmaReport {
        lemma: LemmaId::Kneser,
        instance: json!({ "group": group, "sets": blocks_json(sets) }),
        verdict: if lhs >= rhs { Verdict::Holds } else { Verdict::Violation },
        witness: json!({ "stabilizer": h.ranks(), "lhs": lhs, "rhs": rhs }),
    })
}

/// `|Σ_n^∪(𝒜)| ≥ (Σ_{g ∈ G/H} min{n, v_g(S(φ_H(𝒜)))} - n + 1)·|H|` with `H` the stabilizer of `Σ_n^∪(𝒜)`.
pub fn check_dgm_bound(partition: &SetPartition, n: usize) -> Result<LemmaReport> {
    let group = partition.group();
    let sigma = sp_exact_n_union(partition, n)?;
    let h = stabilizer(group, &sigma)?;
    let phi = quotient(group, &h)?;
    let mut v = vec![0usize; phi.target().order()];
    for b in partition.blocks() {
        for q in phi.apply_set(b).iter() {
            v[q.rank()] += 1;
        }
    }
    let lhs = sigma.len() as i64;
    let rhs = (v.iter().map(|&c| c.min(n) as i64).sum::<i64>() - n as i64 + 1) * h.order() as i64;
    Ok(LemmaReport {
        lemma: LemmaId::Dgm,
        instance: json!({ "group": group, "blocks": blocks_json(partition.blocks()), "n": n }),
        verdict: if lhs >= rhs { Verdict::Holds } else { Verdict::Violation },
        witness: json!({ "sigma": set_json(&sigma), "stabilizer": h.ranks(), "lhs": lhs, "rhs": rhs }),
    })
}

/// Largest instance the exhaustive CCD search accepts.
pub const CCD_MAX_GROUP: usize = 6;
pub const CCD_MAX_LENGTH: usize = 8;

/// Searches `S'' | S` with `|S''| = |S'|` and an `n`-setpartition of `S''`
/// meeting branch (i) or (ii) of the partition statement.
pub fn check_ccd_statement(seq: &GroupSequence, s_prime: &GroupSequence, n: usize, budget: Budget) -> Result<LemmaReport> {
    let group = seq.group();
    if s_prime.group() != group || !s_prime.divides(seq) {
        return invalid("S' must divide S");
    }
    if (n as u64) < group.d_star() || (s_prime.max_multiplicity() as usize) > n || n > s_prime.len() || n == 0 {
        return invalid(format!(
            "need d*(G) = {} <= n, h(S') = {} <= n = {n} <= |S'| = {}",
            group.d_star(),
            s_prime.max_multiplicity(),
            s_prime.len()
        ));
    }
    if group.order() > CCD_MAX_GROUP || seq.len() > CCD_MAX_LENGTH {
        return Err(Error::ResourceLimit {
            what: format!("CCD search is limited to |G| <= {CCD_MAX_GROUP}, |S| <= {CCD_MAX_LENGTH}"),
            bounds: None,
        });
    }
    let instance = json!({ "group": group, "s": seq.canonical_string(), "s_prime": s_prime.canonical_string(), "n": n });
    let proper: Vec<Subgroup> =
        subgroups_within(&Subgroup::whole(group)).into_iter().filter(|h| !h.is_trivial() && !h.is_whole()).collect();
    let meter = budget.meter();
    let target_i = group.order().min(s_prime.len() + 1 - n);
    let mut found: Option<Value> = None;
    seq.for_each_subsequence(s_prime.len(), |s2| {
        if s2.max_multiplicity() as usize > n {
            return true;
        }
        let terms: Vec<Element> = s2.terms().collect();
        let mut blocks = Vec::with_capacity(n);
        for_each_n_setpartition(group, &terms, n, &mut blocks, &meter, &mut |blocks| {
            let sum = full_sumset(group, blocks);
            if sum.len() >= target_i {
                found = Some(json!({
                    "s_dprime": s2.canonical_string(), "blocks": blocks_json(blocks),
                    "branch": "i", "sumset": set_json(&sum),
                }));
                return false;
            }
            for h in &proper {
                if !is_periodic_under(&sum, h) {
                    continue;
                }
                let index = group.order() / h.order();
                for alpha in h.coset_table().into_iter().collect::<std::collections::BTreeSet<_>>() {
                    let inside = seq.restrict_to(&h.coset(alpha)).len();
                    let e = seq.len() - inside;
                    if e + 2 <= index && sum.len() >= (e + 1) * h.order() {
                        found = Some(json!({
                            "s_dprime": s2.canonical_string(), "blocks": blocks_json(blocks),
                            "branch": "ii", "sumset": set_json(&sum),
                            "subgroup": h.ranks(), "alpha": alpha, "e": e,
                        }));
                        return false;
                    }
                }
            }
            true
        });
        found.is_none() && !meter.tripped()
    });
    match found {
        Some(w) => Ok(LemmaReport { lemma: LemmaId::Ccd, instance, verdict: Verdict::WitnessFound, witness: w }),
        None if meter.tripped() => Err(Error::ResourceLimit { what: "CCD search budget".into(), bounds: None }),
        None => Err(Error::TheoremViolation(format!("no CCD witness for {instance}"))),
    }
}

/// Enumerates setpartitions of `terms` into exactly `n` blocks (blocks are
/// sets, so equal terms go to distinct blocks). Block labels are opened in
/// order, so each unordered partition of positions is visited once.
fn for_each_n_setpartition(
    group: &Group,
    terms: &[Element],
    n: usize,
    blocks: &mut Vec<ElementSet>,
    meter: &crate::budget::Meter,
    f: &mut dyn FnMut(&[ElementSet]) -> bool,
) -> bool {
    if !meter.tick() {
        return false;
    }
    let Some((&x, rest)) = terms.split_first() else {
        return blocks.len() < n || f(blocks);
    };
    if blocks.len() + terms.len() < n {
        return true;
    }
    for i in 0..blocks.len() {
        if blocks[i].contains(x) {
            continue;
        }
        blocks[i].insert(x);
        let go = for_each_n_setpartition(group, rest, n, blocks, meter, f);
        blocks[i].remove(x);
        if !go {
            return false;
        }
    }
    if blocks.len() < n {
        blocks.push(ElementSet::singleton(group.order(), x));
        let go = for_each_n_setpartition(group, rest, n, blocks, meter, f);
        blocks.pop();
        if !go {
            return false;
        }
    }
    true
}

/// Given `A·g_i ⊆ β + K`, checks `d·g_1, d·g_2 ∈ K` and `g_1 - g_2 ∈ K`.
///
/// Requires `gcd(A ∪ {m}) = 1`, which is weaker than `gcd(A) = 1`.
pub fn check_coset_lemma(weights: &WeightSet, k: &Subgroup, beta: Element, g1: Element, g2: Element) -> Result<LemmaReport> {
    let group = k.ambient();
    let m = group.exponent();
    if weights.gcd_with(m) != 1 {
        return invalid(format!("gcd(A ∪ {{{m}}}) != 1 for A = {weights}"));
    }
    let target = k.coset(beta);
    for g in [g1, g2] {
        if !weight_orbit(weights, group, g).is_subset(&target) {
            return invalid(format!("A·{} is not inside β + K", group.format_element(g)));
        }
    }
    let d = weights.d(m);
    let dg1 = k.contains(group.scale(d as i64, g1));
    let dg2 = k.contains(group.scale(d as i64, g2));
    let same = k.contains(group.sub(g1, g2));
    Ok(LemmaReport {
        lemma: LemmaId::CosetLemma,
        instance: json!({ "group": group, "weights": weights, "k": k.ranks(), "beta": beta, "g1": g1, "g2": g2 }),
        verdict: if dg1 && dg2 && same { Verdict::Holds } else { Verdict::Violation },
        witness: json!({ "d": d, "d_g1_in_k": dg1, "d_g2_in_k": dg2, "difference_in_k": same }),
    })
}

/// Finds a nontrivial `s_1⋯s_r | S` and weights with `Σ w_i s_i ∈ rβ + H`.
///
/// `h` and `g` are subgroups of the common ambient group `G_0`.
#[allow(clippy::too_many_arguments)]
pub fn check_confusing_lemma(
    lab: &Lab,
    h: &Subgroup,
    g: &Subgroup,
    alpha: Element,
    beta: Element,
    weights: &WeightSet,
    seq: &GroupSequence,
) -> Result<LemmaReport> {
    let g0 = g.ambient();
    if h.ambient() != g0 || seq.group() != g0 || !h.is_subgroup_of(g) {
        return invalid("need H <= G <= G0 with S over G0");
    }
    if seq.support().any(|s| !g.contains(g0.sub(s, alpha))) {
        return invalid("S must lie in α + G");
    }
    if !weight_orbit(weights, g0, alpha).is_subset(&h.coset(beta)) {
        return invalid("A·α is not inside β + H");
    }
    let dq = lab.davenport(&g.quotient_type(h)?, weights)?;
    if (seq.len() as u64) < dq {
        return invalid(format!("|S| = {} < D_A(G/H) = {dq}", seq.len()));
    }
    let instance = json!({
        "g0": g0, "h": h.ranks(), "g": g.ranks(), "alpha": alpha, "beta": beta,
        "weights": weights, "s": seq.canonical_string(),
    });
    let phi = quotient(g0, h)?;
    let reduced = weights.reduced(g0.exponent());
    // quotient value of Σ (w_i s_i - β) → one choice list reaching it
    let mut reach: BTreeMap<Element, Vec<(Element, i64)>> = BTreeMap::new();
    let mut witness = None;
    'terms: for s in seq.terms() {
        let mut next = reach.clone();
        let mut add = |key: Element, choice: Vec<(Element, i64)>| {
            next.entry(key).or_insert(choice);
        };
        for &w in &reduced {
            let step = phi.apply(g0.sub(g0.scale(w, s), beta));
            add(step, vec![(s, w)]);
            for (q, choice) in &reach {
                let mut c = choice.clone();
                c.push((s, w));
                add(phi.target().add(*q, step), c);
            }
        }
        reach = next;
        if let Some(c) = reach.get(&phi.target().zero()) {
            witness = Some(c.clone());
            break 'terms;
        }
    }
    let Some(choice) = witness else {
        return Err(Error::TheoremViolation(format!("confusing lemma: no witness for {instance}")));
    };
    let r = choice.len();
    let total = choice.iter().fold(g0.zero(), |acc, &(s, w)| g0.add(acc, g0.scale(w, s)));
    let ok = h.coset(g0.scale(r as i64, beta)).contains(total);
    if !ok {
        return Err(Error::TheoremViolation(format!("confusing lemma: witness fails recheck for {instance}")));
    }
    Ok(LemmaReport {
        lemma: LemmaId::ConfusingLemma,
        instance,
        verdict: Verdict::WitnessFound,
        witness: json!({
            "terms": choice.iter().map(|c| c.0).collect::<Vec<_>>(),
            "weights": choice.iter().map(|c| c.1).collect::<Vec<_>>(),
            "r": r, "sum": total,
        }),
    })
}

/// Result of [`keylemma_search`], also used by the report payload.
#[derive(Clone, Debug)]
pub struct KeylemmaWitness {
    pub h: Subgroup,
    /// Block indices of `𝒜'`.
    pub a_prime: Vec<usize>,
    /// Block indices of `𝒜''`, a subset of `a_prime`.
    pub a_dprime: Vec<usize>,
}

/// Finds `H ≤ K` nontrivial and `𝒜'' | 𝒜' | 𝒜` with `|𝒜''| = |H| - 1`,
/// `|σ(𝒜'')| = |H|`, `|𝒜'| ≥ min{|𝒜|, |𝒜| - |K/H| + 2}` and every block of
/// `𝒜'` inside a single `H`-coset.
pub fn keylemma_search(partition: &SetPartition, k: &Subgroup, budget: Budget) -> Result<LemmaReport> {
    let group = partition.group();
    if k.ambient() != group || k.is_trivial() {
        return invalid("K must be a nontrivial subgroup of the setpartition's group");
    }
    for (i, b) in partition.blocks().iter().enumerate() {
        let first = b.first().expect("blocks are nonempty");
        if b.len() < 2 || !b.is_subset(&k.coset(first)) {
            return invalid(format!("block {i} must have >= 2 elements inside one K-coset"));
        }
    }
    if partition.len() + 1 < k.order() {
        return invalid(format!("need |𝒜| = {} >= |K| - 1 = {}", partition.len(), k.order() - 1));
    }
    let instance = json!({ "group": group, "blocks": blocks_json(partition.blocks()), "k": k.ranks() });
    let meter = budget.meter();
    let all: Vec<usize> = (0..partition.len()).collect();
    let w = keylemma_rec(partition, &all, k, &meter)?;
    if meter.tripped() {
        return Err(Error::ResourceLimit { what: "keylemma search budget".into(), bounds: None });
    }
    // independent recheck
    let blocks = partition.blocks();
    let dprime: Vec<ElementSet> = w.a_dprime.iter().map(|&i| blocks[i].clone()).collect();
    let sigma = full_sumset(group, &dprime);
    let index = (k.order() / w.h.order()) as i64;
    let r = partition.len() as i64;
    let ok = !w.h.is_trivial()
        && w.h.is_subgroup_of(k)
        && w.a_dprime.len() + 1 == w.h.order()
        && w.a_dprime.iter().all(|i| w.a_prime.contains(i))
        && w.a_prime.len() as i64 >= r.min(r - index + 2)
        && sigma.len() == w.h.order()
        && w.a_prime.iter().all(|&i| {
            let b = &blocks[i];
            b.is_subset(&w.h.coset(b.first().expect("nonempty")))
        });
    if !ok {
        return Err(Error::TheoremViolation(format!("keylemma witness fails recheck for {instance}")));
    }
    Ok(LemmaReport {
        lemma: LemmaId::Keylemma,
        instance,
        verdict: Verdict::WitnessFound,
        witness: json!({ "h": w.h.ranks(), "a_prime": w.a_prime, "a_dprime": w.a_dprime, "sigma": set_json(&sigma) }),
    })
}

fn keylemma_rec(partition: &SetPartition, idx: &[usize], k: &Subgroup, meter: &crate::budget::Meter) -> Result<KeylemmaWitness> {
    let group = partition.group();
    let blocks = partition.blocks();
    let chosen: Vec<ElementSet> = idx.iter().map(|&i| blocks[i].clone()).collect();
    let sigma = full_sumset(group, &chosen);
    if sigma.len() == k.order() {
        // greedy: keep any block that strictly enlarges the running sumset
        let mut acc = ElementSet::singleton(group.order(), group.zero());
        let mut picked: Vec<usize> = Vec::new();
        let mut progress = true;
        while acc.len() < k.order() && progress {
            progress = false;
            for &i in idx {
                meter.tick();
                if picked.contains(&i) {
                    continue;
                }
                let next = acc.sumset(group, &blocks[i]);
                if next.len() > acc.len() {
                    acc = next;
                    picked.push(i);
                    progress = true;
                    if acc.len() == k.order() {
                        break;
                    }
                }
            }
        }
        if acc.len() < k.order() || picked.len() + 1 > k.order() {
            return Err(Error::TheoremViolation(format!("keylemma greedy step stalled at K = {:?}", k.ranks())));
        }
        for &i in idx {
            if picked.len() + 1 == k.order() {
                break;
            }
            if !picked.contains(&i) {
                picked.push(i);
            }
        }
        picked.sort_unstable();
        return Ok(KeylemmaWitness { h: k.clone(), a_prime: idx.to_vec(), a_dprime: picked });
    }
    let h = stabilizer(group, &sigma)?;
    if h.is_trivial() || !h.is_subgroup_of(k) || h.order() == k.order() {
        return Err(Error::TheoremViolation(format!(
            "keylemma: stabilizer of σ(𝒜) is not a proper nontrivial subgroup of K = {:?}",
            k.ranks()
        )));
    }
    let inner: Vec<usize> = idx
        .iter()
        .copied()
        .filter(|&i| {
            let b = &blocks[i];
            b.is_subset(&h.coset(b.first().expect("nonempty")))
        })
        .collect();
    keylemma_rec(partition, &inner, &h, meter)
}
