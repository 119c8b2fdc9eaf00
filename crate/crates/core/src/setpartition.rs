//! Setpartitions: sequences of nonempty finite subsets of a group.

use crate::elemset::ElementSet;
use crate::error::{invalid, Result};
use crate::group::{Element, Group};
use crate::sequence::GroupSequence;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SetPartition {
    group: Group,
    blocks: Vec<ElementSet>,
}

impl SetPartition {
    pub fn new(group: &Group, blocks: Vec<ElementSet>) -> Result<SetPartition> {
        for (i, b) in blocks.iter().enumerate() {
            if b.universe() != group.order() {
                return invalid(format!("block {i} does not live in {group}"));
            }
            if b.is_empty() {
                return invalid(format!("block {i} is empty"));
            }
        }
        Ok(SetPartition { group: group.clone(), blocks })
    }

    /// Parses blocks given as rank lists, e.g. `&[&[0, 1], &[0, 1]]`.
    pub fn from_ranks(group: &Group, blocks: &[&[usize]]) -> Result<SetPartition> {
        let mut out = Vec::with_capacity(blocks.len());
        for b in blocks {
            let elems = b.iter().map(|&r| group.element_at(r)).collect::<Result<Vec<_>>>()?;
            out.push(ElementSet::from_elements(group.order(), elems));
        }
        SetPartition::new(group, out)
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn blocks(&self) -> &[ElementSet] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// `S(𝒜)`: the sequence of all block elements.
    pub fn sequence(&self) -> GroupSequence {
        GroupSequence::from_terms(&self.group, self.blocks.iter().flat_map(ElementSet::iter))
    }

    /// `σ(𝒜) = A_1 + … + A_n`; `{0}` for the empty setpartition.
    pub fn sigma(&self) -> ElementSet {
        full_sumset(&self.group, &self.blocks)
    }

    /// Sub-setpartition made of the blocks at `indices`.
    pub fn select(&self, indices: &[usize]) -> SetPartition {
        SetPartition { group: self.group.clone(), blocks: indices.iter().map(|&i| self.blocks[i].clone()).collect() }
    }

    /// `g + 𝒜`.
    pub fn translate(&self, g: Element) -> SetPartition {
        SetPartition { group: self.group.clone(), blocks: self.blocks.iter().map(|b| b.translate(&self.group, g)).collect() }
    }
}

/// `A_1 + … + A_n`, with the empty sum `{0}`.
pub fn full_sumset(group: &Group, sets: &[ElementSet]) -> ElementSet {
    let mut acc = ElementSet::singleton(group.order(), group.zero());
    for s in sets {
        acc = acc.sumset(group, s);
    }
    acc
}

/// Builds an `n`-setpartition of `S` when `h(S) ≤ n ≤ |S|`.
///
/// Terms are laid out by descending multiplicity (ties by ascending rank) and
/// dealt round-robin into `n` blocks, so equal terms land in distinct blocks.
pub fn n_setpartition(seq: &GroupSequence, n: usize) -> Option<SetPartition> {
    if n == 0 || n > seq.len() || seq.max_multiplicity() as usize > n {
        return None;
    }
    let mut counts: Vec<(Element, u32)> = seq.counts().collect();
    counts.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
    let order = seq.group().order();
    let mut blocks = vec![ElementSet::empty(order); n];
    let mut slot = 0;
    for (g, k) in counts {
        for _ in 0..k {
            debug_assert!(!blocks[slot].contains(g));
            blocks[slot].insert(g);
            slot = (slot + 1) % n;
        }
    }
    Some(SetPartition { group: seq.group().clone(), blocks })
}

/// Exact-count sum table: row `c` holds every sum of `c` elements drawn from
/// `c` distinct blocks, for `c = 0..=max_count`.
pub fn exact_count_table<'a>(group: &Group, blocks: impl IntoIterator<Item = &'a ElementSet>, max_count: usize) -> Vec<ElementSet> {
    let mut rows = vec![ElementSet::empty(group.order()); max_count + 1];
    rows[0].insert(group.zero());
    let mut used = 0usize;
    for block in blocks {
        used += 1;
        for c in (1..=used.min(max_count)).rev() {
            if rows[c - 1].is_empty() {
                continue;
            }
            let (lo, hi) = rows.split_at_mut(c);
            let prev = &lo[c - 1];
            for a in block.iter() {
                prev.translate_into(group, a, &mut hi[0]);
            }
        }
    }
    rows
}

/// `Σ_n^∪(𝒜)`: union over all length-`n` sub-setpartitions of their sumsets.
pub fn sp_exact_n_union(partition: &SetPartition, n: usize) -> Result<ElementSet> {
    if n == 0 || n > partition.len() {
        return invalid(format!("n = {n} outside [1, {}]", partition.len()));
    }
    let rows = exact_count_table(&partition.group, &partition.blocks, n);
    Ok(rows.into_iter().nth(n).expect("table has n+1 rows"))
}

/// `Σ^∪(𝒜)`: sums over all nonempty sub-setpartitions.
pub fn sp_union(partition: &SetPartition) -> ElementSet {
    let rows = exact_count_table(&partition.group, &partition.blocks, partition.len());
    let mut out = ElementSet::empty(partition.group.order());
    for r in &rows[1..] {
        out.union_with(r);
    }
    out
}
