//! Sequences over a group: finite multisets written multiplicatively.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::elemset::ElementSet;
use crate::error::{invalid, Error, Result};
use crate::group::{Element, Group};
use crate::subgroup::QuotientMap;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupSequence {
    group: Group,
    mult: BTreeMap<Element, u32>,
    length: usize,
}

/// Length, support and maximal multiplicity `h(S)` of a sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceStats {
    pub length: usize,
    pub support: Vec<Element>,
    pub max_multiplicity: u32,
}

impl GroupSequence {
    pub fn empty(group: &Group) -> Self {
        GroupSequence { group: group.clone(), mult: BTreeMap::new(), length: 0 }
    }

    pub fn from_terms(group: &Group, terms: impl IntoIterator<Item = Element>) -> Self {
        let mut s = Self::empty(group);
        for t in terms {
            s.push(t);
        }
        s
    }

    /// `g^k`.
    pub fn power(group: &Group, g: Element, k: u32) -> Self {
        let mut s = Self::empty(group);
        s.push_many(g, k);
        s
    }

    pub fn from_ranks(group: &Group, ranks: &[usize]) -> Result<Self> {
        let mut s = Self::empty(group);
        for &r in ranks {
            s.push(group.element_at(r)?);
        }
        Ok(s)
    }

    pub fn push(&mut self, g: Element) {
        self.push_many(g, 1);
    }

    pub fn push_many(&mut self, g: Element, k: u32) {
        debug_assert!(self.group.contains(g));
        if k == 0 {
            return;
        }
        *self.mult.entry(g).or_insert(0) += k;
        self.length += k as usize;
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.length
    }

    pub fn is_empty(&self) -> bool {
        self.length == 0
    }

    /// `v_g(S)`.
    pub fn multiplicity(&self, g: Element) -> u32 {
        self.mult.get(&g).copied().unwrap_or(0)
    }

    /// `h(S)`; zero for the empty sequence.
    pub fn max_multiplicity(&self) -> u32 {
        self.mult.values().copied().max().unwrap_or(0)
    }

    pub fn support(&self) -> impl Iterator<Item = Element> + '_ {
        self.mult.keys().copied()
    }

    pub fn support_set(&self) -> ElementSet {
        ElementSet::from_elements(self.group.order(), self.support())
    }

    /// `(element, multiplicity)` pairs in rank order.
    pub fn counts(&self) -> impl Iterator<Item = (Element, u32)> + '_ {
        self.mult.iter().map(|(&g, &k)| (g, k))
    }

    /// Terms with repetition, in nondecreasing rank order.
    pub fn terms(&self) -> impl Iterator<Item = Element> + '_ {
        self.mult.iter().flat_map(|(&g, &k)| std::iter::repeat_n(g, k as usize))
    }

    pub fn stats(&self) -> SequenceStats {
        SequenceStats { length: self.length, support: self.support().collect(), max_multiplicity: self.max_multiplicity() }
    }

    /// `σ(S)`; the empty sequence sums to 0.
    pub fn sum(&self) -> Element {
        self.mult.iter().fold(self.group.zero(), |acc, (&g, &k)| self.group.add(acc, self.group.scale(k as i64, g)))
    }

    /// `T | S`.
    pub fn divides(&self, other: &GroupSequence) -> bool {
        self.group == other.group && self.mult.iter().all(|(g, &k)| other.multiplicity(*g) >= k)
    }

    /// `S T^{-1}`: remove the terms of `t` from `self`.
    pub fn without(&self, t: &GroupSequence) -> Result<GroupSequence> {
        if !t.divides(self) {
            return invalid("sequence is not a subsequence");
        }
        let mut out = self.clone();
        for (&g, &k) in &t.mult {
            let e = out.mult.get_mut(&g).expect("checked divisibility");
            *e -= k;
            if *e == 0 {
                out.mult.remove(&g);
            }
        }
        out.length -= t.length;
        Ok(out)
    }

    /// Concatenation `S T`.
    pub fn concat(&self, t: &GroupSequence) -> GroupSequence {
        debug_assert_eq!(self.group, t.group);
        let mut out = self.clone();
        for (&g, &k) in &t.mult {
            out.push_many(g, k);
        }
        out
    }

    /// Termwise image under a quotient map.
    pub fn map(&self, phi: &QuotientMap) -> Result<GroupSequence> {
        if phi.source() != &self.group {
            return invalid(format!("map source {} does not match sequence group {}", phi.source(), self.group));
        }
        let mut out = GroupSequence::empty(phi.target());
        for (&g, &k) in &self.mult {
            out.push_many(phi.apply(g), k);
        }
        Ok(out)
    }

    /// Termwise image under an arbitrary element map on the same group.
    pub fn map_elements(&self, f: impl Fn(Element) -> Element) -> GroupSequence {
        let mut out = GroupSequence::empty(&self.group);
        for (&g, &k) in &self.mult {
            out.push_many(f(g), k);
        }
        out
    }

    /// `g + S`.
    pub fn translate(&self, g: Element) -> GroupSequence {
        self.map_elements(|x| self.group.add(x, g))
    }

    /// `w * S`.
    pub fn scale(&self, w: i64) -> GroupSequence {
        self.map_elements(|x| self.group.scale(w, x))
    }

    /// Terms lying in `set`, with multiplicity.
    pub fn restrict_to(&self, set: &ElementSet) -> GroupSequence {
        let mut out = GroupSequence::empty(&self.group);
        for (&g, &k) in &self.mult {
            if set.contains(g) {
                out.push_many(g, k);
            }
        }
        out
    }

    /// First `k` terms in rank order.
    pub fn prefix(&self, k: usize) -> GroupSequence {
        GroupSequence::from_terms(&self.group, self.terms().take(k))
    }

    /// Calls `f` on every subsequence of length `k`, in lexicographic order of
    /// the multiplicity vectors (largest counts on smallest ranks first).
    /// Stops early when `f` returns `false`.
    pub fn for_each_subsequence(&self, k: usize, mut f: impl FnMut(&GroupSequence) -> bool) {
        let items: Vec<(Element, u32)> = self.counts().collect();
        let mut suffix_cap = vec![0usize; items.len() + 1];
        for i in (0..items.len()).rev() {
            suffix_cap[i] = suffix_cap[i + 1] + items[i].1 as usize;
        }
        let mut cur = GroupSequence::empty(&self.group);
        fn rec(
            i: usize,
            need: usize,
            items: &[(Element, u32)],
            cap: &[usize],
            cur: &mut GroupSequence,
            f: &mut dyn FnMut(&GroupSequence) -> bool,
        ) -> bool {
            if need == 0 {
                return f(cur);
            }
            if i == items.len() || cap[i] < need {
                return true;
            }
            let (g, k) = items[i];
            let hi = (k as usize).min(need);
            let lo = need.saturating_sub(cap[i + 1]);
            for take in (lo..=hi).rev() {
                cur.push_many(g, take as u32);
                let go_on = rec(i + 1, need - take, items, cap, cur, f);
                if take > 0 {
                    let e = cur.mult.get_mut(&g).unwrap();
                    *e -= take as u32;
                    if *e == 0 {
                        cur.mult.remove(&g);
                    }
                    cur.length -= take;
                }
                if !go_on {
                    return false;
                }
            }
            true
        }
        if k <= self.length {
            rec(0, k, &items, &suffix_cap, &mut cur, &mut f);
        }
    }

    /// Canonical serialisation: sorted `rank:multiplicity` pairs, comma separated.
    pub fn canonical_string(&self) -> String {
        self.mult.iter().map(|(g, k)| format!("{}:{k}", g.rank())).collect::<Vec<_>>().join(",")
    }

    pub fn from_canonical_string(group: &Group, s: &str) -> Result<GroupSequence> {
        let mut out = GroupSequence::empty(group);
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (r, k) = part.split_once(':').ok_or_else(|| Error::InvalidInput(format!("bad sequence entry '{part}'")))?;
            let r: usize = r.trim().parse().map_err(|_| Error::InvalidInput(format!("bad rank in '{part}'")))?;
            let k: u32 = k.trim().parse().map_err(|_| Error::InvalidInput(format!("bad multiplicity in '{part}'")))?;
            out.push_many(group.element_at(r)?, k);
        }
        Ok(out)
    }

    /// Parses `[0,0,1]` (ranks, `r^k` allowed) or `(0,1)^2;(1,0)` (coordinates).
    pub fn parse(group: &Group, literal: &str) -> Result<GroupSequence> {
        let lit = literal.trim();
        let mut out = GroupSequence::empty(group);
        let bad = |what: &str| Error::InvalidInput(format!("bad sequence literal '{literal}': {what}"));
        if let Some(inner) = lit.strip_prefix('[') {
            let inner = inner.strip_suffix(']').ok_or_else(|| bad("missing ']'"))?;
            for item in inner.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                let (r, k) = split_power(item).ok_or_else(|| bad(item))?;
                let r: usize = r.parse().map_err(|_| bad(item))?;
                out.push_many(group.element_at(r)?, k);
            }
            return Ok(out);
        }
        for item in lit.split(';').map(str::trim).filter(|s| !s.is_empty()) {
            let (tuple, k) = split_power(item).ok_or_else(|| bad(item))?;
            let body = tuple
                .strip_prefix('(')
                .and_then(|t| t.strip_suffix(')'))
                .ok_or_else(|| bad("expected a parenthesised coordinate tuple"))?;
            let coords: Vec<i64> =
                body.split(',').map(|c| c.trim().parse::<i64>()).collect::<std::result::Result<_, _>>().map_err(|_| bad(item))?;
            out.push_many(group.element(&coords)?, k);
        }
        Ok(out)
    }
}

fn split_power(item: &str) -> Option<(&str, u32)> {
    match item.rsplit_once('^') {
        Some((base, exp)) => Some((base.trim(), exp.trim().parse().ok()?)),
        None => Some((item, 1)),
    }
}

impl fmt::Debug for GroupSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for GroupSequence {
    /// Multiplicative notation, e.g. `0^2·1` (coordinates for non-cyclic groups).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("1_F");
        }
        let parts: Vec<String> = self
            .mult
            .iter()
            .map(|(&g, &k)| {
                let e = self.group.format_element(g);
                if k == 1 {
                    e
                } else {
                    format!("{e}^{k}")
                }
            })
            .collect();
        f.write_str(&parts.join("·"))
    }
}

/// Calls `f` on every sequence of length `len` over `group`, as nondecreasing
/// rank tuples in lexicographic order. Stops early when `f` returns `false`.
pub fn for_each_multiset(group: &Group, len: usize, mut f: impl FnMut(&GroupSequence) -> bool) {
    fn rec(group: &Group, from: usize, left: usize, cur: &mut Vec<Element>, f: &mut dyn FnMut(&GroupSequence) -> bool) -> bool {
        if left == 0 {
            return f(&GroupSequence::from_terms(group, cur.iter().copied()));
        }
        for r in from..group.order() {
            cur.push(Element::from_rank(r));
            let go = rec(group, r, left - 1, cur, f);
            cur.pop();
            if !go {
                return false;
            }
        }
        true
    }
    rec(group, 0, len, &mut Vec::with_capacity(len), &mut f);
}

#[derive(Serialize, Deserialize)]
struct SequenceRepr {
    group: Group,
    terms: String,
}

impl Serialize for GroupSequence {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        SequenceRepr { group: self.group.clone(), terms: self.canonical_string() }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for GroupSequence {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = SequenceRepr::deserialize(deserializer)?;
        GroupSequence::from_canonical_string(&repr.group, &repr.terms).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subgroup::{quotient, Subgroup};

    fn g(spec: &str) -> Group {
        spec.parse().unwrap()
    }

    #[test]
    fn stats_examples() {
        let c2 = g("C2");
        let s = GroupSequence::parse(&c2, "[0,0,1]").unwrap();
        let st = s.stats();
        assert_eq!(st.length, 3);
        assert_eq!(st.support.iter().map(|e| e.rank()).collect::<Vec<_>>(), vec![0, 1]);
        assert_eq!(st.max_multiplicity, 2);

        let empty = GroupSequence::empty(&c2).stats();
        assert_eq!((empty.length, empty.support.len(), empty.max_multiplicity), (0, 0, 0));

        let c5 = g("C5");
        assert_eq!(GroupSequence::power(&c5, Element::from_rank(3), 4).max_multiplicity(), 4);
    }

    #[test]
    fn sum_examples() {
        let c3 = g("C3");
        assert_eq!(GroupSequence::parse(&c3, "[1^3]").unwrap().sum(), Element::ZERO);
        assert_eq!(GroupSequence::empty(&c3).sum(), Element::ZERO);
        let c4 = g("C4");
        assert_eq!(GroupSequence::parse(&c4, "[1,2]").unwrap().sum().rank(), 3);
    }

    #[test]
    fn map_translate_scale() {
        let c4 = g("C4");
        let h = Subgroup::generated(&c4, &[Element::from_rank(2)]);
        let phi = quotient(&c4, &h).unwrap();
        let s = GroupSequence::parse(&c4, "[1,3]").unwrap();
        let img = s.map(&phi).unwrap();
        assert_eq!(img.group().factors(), &[2]);
        assert_eq!(img.canonical_string(), "1:2");

        assert_eq!(s.translate(Element::ZERO), s);
        assert_eq!(s.scale(1), s);
        assert_eq!(s.scale(-1).canonical_string(), "1:1,3:1");
        assert_eq!(s.translate(Element::from_rank(1)).canonical_string(), "0:1,2:1");
    }

    #[test]
    fn coordinate_literals() {
        let grp = g("C2xC2");
        let s = GroupSequence::parse(&grp, "(0,1)^2;(1,0)").unwrap();
        assert_eq!(s.len(), 3);
        assert_eq!(s.canonical_string(), "1:2,2:1");
        assert_eq!(GroupSequence::from_canonical_string(&grp, &s.canonical_string()).unwrap(), s);
        assert!(GroupSequence::parse(&grp, "(0,1,1)").is_err());
        assert!(GroupSequence::parse(&grp, "[7]").is_err());
        assert!(GroupSequence::parse(&grp, "[0").is_err());
    }

    #[test]
    fn divides_and_without() {
        let c4 = g("C4");
        let s = GroupSequence::parse(&c4, "[0,0,1,3]").unwrap();
        let t = GroupSequence::parse(&c4, "[0,3]").unwrap();
        assert!(t.divides(&s));
        assert_eq!(s.without(&t).unwrap().canonical_string(), "0:1,1:1");
        assert!(s.without(&GroupSequence::parse(&c4, "[2]").unwrap()).is_err());
    }

    #[test]
    fn subsequence_enumeration_counts() {
        let c4 = g("C4");
        let s = GroupSequence::parse(&c4, "[0^2,1,3^3]").unwrap();
        let mut seen = Vec::new();
        s.for_each_subsequence(3, |t| {
            assert_eq!(t.len(), 3);
            assert!(t.divides(&s));
            seen.push(t.canonical_string());
            true
        });
        // coefficient of x^3 in (1+x+x^2)(1+x)(1+x+x^2+x^3)
        assert_eq!(seen.len(), 6);
        assert_eq!(seen[0], "0:2,1:1");
        let mut sorted = seen.clone();
        sorted.dedup();
        assert_eq!(sorted.len(), seen.len());
    }
}
