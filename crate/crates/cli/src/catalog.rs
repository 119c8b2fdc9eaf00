//! Default sweep catalog and group enumeration.

use zerosum::{Group, WeightSet};

/// Catalog groups, in report order.
pub const CATALOG_GROUPS: [&str; 12] = ["C2", "C3", "C4", "C5", "C6", "C7", "C8", "C9", "C2xC2", "C2xC2xC2", "C2xC4", "C3xC3"];

pub fn catalog_groups(max_order: usize) -> Vec<Group> {
    CATALOG_GROUPS.iter().map(|s| s.parse::<Group>().expect("catalog spec")).filter(|g| g.order() <= max_order).collect()
}

/// `{1}, {1,-1}, {1,2}, {2,3}, {1,…,exp-1}`, keeping the first of any sets
/// with equal residues modulo the exponent.
pub fn catalog_weight_sets(group: &Group) -> Vec<WeightSet> {
    let m = group.exponent();
    let mut candidates: Vec<WeightSet> = ["1", "1,-1", "1,2", "2,3"].iter().map(|s| s.parse().expect("literal")).collect();
    if m > 1 {
        candidates.push(WeightSet::new(1..m as i64).expect("nonempty"));
    }
    dedup_by_residues(group, candidates)
}

pub fn dedup_by_residues(group: &Group, sets: Vec<WeightSet>) -> Vec<WeightSet> {
    let m = group.exponent();
    let mut seen = Vec::new();
    let mut out = Vec::new();
    for w in sets {
        let key = w.reduced(m);
        if !seen.contains(&key) {
            seen.push(key);
            out.push(w);
        }
    }
    out
}

/// Every abelian group of order at most `max_order`, by order then factors.
pub fn abelian_groups(max_order: usize) -> Vec<Group> {
    fn chains(rest: u64, last: u64, acc: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if rest == 1 {
            out.push(acc.clone());
            return;
        }
        let mut f = last;
        while f <= rest {
            if rest.is_multiple_of(f) {
                acc.push(f);
                chains(rest / f, f, acc, out);
                acc.pop();
            }
            f += last;
        }
    }
    let mut groups = vec![Group::trivial()];
    for n in 2..=max_order as u64 {
        let mut found = Vec::new();
        let mut f = 2;
        while f <= n {
            if n % f == 0 {
                chains(n / f, f, &mut vec![f], &mut found);
            }
            f += 1;
        }
        let mut gs: Vec<Group> = found
            .into_iter()
            .filter_map(|c| Group::new(&c.iter().map(|&x| x as i64).collect::<Vec<_>>()).ok())
            .filter(|g| g.order() as u64 == n)
            .collect();
        gs.sort();
        gs.dedup();
        groups.extend(gs);
    }
    groups
}
