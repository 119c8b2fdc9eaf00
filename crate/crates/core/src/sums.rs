//! Weighted subsequence sums `Σ_n(W^n, S)` and friends.
//!
//! Every weighted sum set is computed through the setpartition
//! `A·s_1 ⋯ A·s_{|S|}`: picking `n` terms with weights is the same as picking
//! `n` blocks and one element from each.

use crate::elemset::ElementSet;
use crate::error::{invalid, Error, Result};
use crate::group::{Element, Group};
use crate::sequence::GroupSequence;
use crate::setpartition::{exact_count_table, SetPartition};
use crate::subgroup::torsion_subgroup;
use crate::weights::WeightSet;

/// `A·g = {ag : a ∈ A}`.
pub fn weight_orbit(weights: &WeightSet, group: &Group, g: Element) -> ElementSet {
    let m = group.exponent();
    ElementSet::from_elements(group.order(), weights.reduced(m).into_iter().map(|a| group.scale(a, g)))
}

/// The setpartition `(A·s_1)⋯(A·s_{|S|})`.
pub fn weighted_setpartition(weights: &WeightSet, seq: &GroupSequence) -> SetPartition {
    let group = seq.group();
    let blocks = seq.terms().map(|s| weight_orbit(weights, group, s)).collect();
    SetPartition::new(group, blocks).expect("weight orbits are nonempty")
}

/// Rows `Σ_0, Σ_1, …, Σ_max` (row 0 is `{0}`).
pub fn sigma_table(weights: &WeightSet, seq: &GroupSequence, max_count: usize) -> Vec<ElementSet> {
    let group = seq.group();
    let blocks: Vec<ElementSet> = seq.terms().map(|s| weight_orbit(weights, group, s)).collect();
    exact_count_table(group, &blocks, max_count.min(seq.len()))
}

/// `Σ_n(W^n, S)`: weighted sums over subsequences of length exactly `n`.
pub fn sigma_exact_n(weights: &WeightSet, seq: &GroupSequence, n: usize) -> Result<ElementSet> {
    if n == 0 || n > seq.len() {
        return invalid(format!("n = {n} outside [1, {}]", seq.len()));
    }
    Ok(sigma_table(weights, seq, n).swap_remove(n))
}

/// Union of `Σ_i` for `lo ≤ i ≤ hi`.
pub fn sigma_range(weights: &WeightSet, seq: &GroupSequence, lo: usize, hi: usize) -> Result<ElementSet> {
    if lo == 0 || lo > hi || hi > seq.len() {
        return invalid(format!("index range [{lo}, {hi}] is empty or outside [1, {}]", seq.len()));
    }
    let rows = sigma_table(weights, seq, hi);
    let mut out = ElementSet::empty(seq.group().order());
    for r in &rows[lo..=hi] {
        out.union_with(r);
    }
    Ok(out)
}

/// `Σ_{≤n}(W, S)`.
pub fn sigma_at_most(weights: &WeightSet, seq: &GroupSequence, n: usize) -> Result<ElementSet> {
    sigma_range(weights, seq, 1, n)
}

/// `Σ_{≥n}(W, S)`.
pub fn sigma_at_least(weights: &WeightSet, seq: &GroupSequence, n: usize) -> Result<ElementSet> {
    sigma_range(weights, seq, n, seq.len())
}

/// `Σ(W, S)`: weighted sums over nontrivial subsequences. Empty for the empty sequence.
pub fn sigma(weights: &WeightSet, seq: &GroupSequence) -> ElementSet {
    if seq.is_empty() {
        return ElementSet::empty(seq.group().order());
    }
    sigma_range(weights, seq, 1, seq.len()).expect("nonempty range")
}

/// Checks `Σ_n(W^n, g + S) = n a_0 g + Σ_n(W^n, S)` for `g ∈ G[d]`.
pub fn check_translation_identity(weights: &WeightSet, seq: &GroupSequence, n: usize, g: Element) -> Result<bool> {
    let group = seq.group();
    let d = weights.d(group.exponent());
    if !torsion_subgroup(group, d).contains(g) {
        return Err(Error::PreconditionViolation(format!("{} is not in G[{d}] for G = {group}", group.format_element(g))));
    }
    let lhs = sigma_exact_n(weights, &seq.translate(g), n)?;
    let shift = group.scale(n as i64 * weights.a0(), g);
    let rhs = sigma_exact_n(weights, seq, n)?.translate(group, shift);
    Ok(lhs == rhs)
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

    fn seq(grp: &Group, lit: &str) -> GroupSequence {
        GroupSequence::parse(grp, lit).unwrap()
    }

    #[test]
    fn weight_orbit_examples() {
        let c5 = g("C5");
        assert_eq!(weight_orbit(&w("1,-1"), &c5, Element::from_rank(1)).ranks(), vec![1, 4]);
        let c4 = g("C4");
        assert_eq!(weight_orbit(&w("1,3"), &c4, Element::from_rank(2)).ranks(), vec![2]);
        for x in c4.elements() {
            assert_eq!(weight_orbit(&WeightSet::ones(), &c4, x).ranks(), vec![x.rank()]);
        }
    }

    #[test]
    fn sigma_exact_examples() {
        let c3 = g("C3");
        assert_eq!(sigma_exact_n(&w("1,2"), &seq(&c3, "[1,1]"), 2).unwrap().ranks(), vec![0, 1, 2]);
        let c4 = g("C4");
        assert_eq!(sigma_exact_n(&w("1,3"), &seq(&c4, "[0^3]"), 3).unwrap().ranks(), vec![0]);
        let s = seq(&c4, "[1,2,3,3]");
        assert_eq!(sigma_exact_n(&WeightSet::ones(), &s, 4).unwrap().ranks(), vec![s.sum().rank()]);
        assert!(sigma_exact_n(&WeightSet::ones(), &s, 0).is_err());
        assert!(sigma_exact_n(&WeightSet::ones(), &s, 5).is_err());
    }

    #[test]
    fn sigma_range_examples() {
        let c2 = g("C2");
        let one = WeightSet::ones();
        assert_eq!(sigma(&one, &seq(&c2, "[1]")).ranks(), vec![1]);
        let s = seq(&c2, "[1,1]");
        assert!(sigma(&one, &s).contains(Element::ZERO));
        let c5 = g("C5");
        let s = seq(&c5, "[1,2,4]");
        assert_eq!(sigma_at_least(&w("1,2"), &s, 3).unwrap(), sigma_exact_n(&w("1,2"), &s, 3).unwrap());
        assert!(sigma_range(&one, &s, 2, 1).is_err());
        assert!(sigma(&one, &GroupSequence::empty(&c5)).is_empty());
    }

    #[test]
    fn translation_identity_examples() {
        let c4 = g("C4");
        let s = seq(&c4, "[1,3]");
        assert!(check_translation_identity(&w("1,3"), &s, 1, Element::ZERO).unwrap());
        assert!(check_translation_identity(&w("1,3"), &s, 1, Element::from_rank(2)).unwrap());
        // d(4) = 2 for A = {1,3}; 1 ∉ C4[2].
        assert!(matches!(check_translation_identity(&w("1,3"), &s, 1, Element::from_rank(1)), Err(Error::PreconditionViolation(_))));
    }
}
