//! Subgroups, quotients, torsion and image subgroups, stabilizers.

use std::cmp::Ordering;
use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::{Serialize, Serializer};

use crate::elemset::ElementSet;
use crate::error::{invalid, Error, Result};
use crate::group::{Element, Group};
use crate::snf::smith_normal_form;

/// Default cap on `|G|` for subgroup enumeration.
pub const SUBGROUP_BUDGET: usize = 64;

/// A subgroup of an ambient group, stored as its element set.
#[derive(Clone)]
pub struct Subgroup {
    ambient: Group,
    elements: ElementSet,
    generators: Vec<Element>,
}

impl Subgroup {
    /// Subgroup generated by `gens`.
    pub fn generated(ambient: &Group, gens: &[Element]) -> Subgroup {
        let mut sub = Subgroup::zero(ambient);
        for &g in gens {
            sub = sub.join_element(g);
        }
        sub
    }

    pub fn zero(ambient: &Group) -> Subgroup {
        Subgroup { ambient: ambient.clone(), elements: ElementSet::singleton(ambient.order(), ambient.zero()), generators: Vec::new() }
    }

    pub fn whole(ambient: &Group) -> Subgroup {
        let gens = (0..ambient.rank_count()).map(|i| ambient.basis_element(i)).collect();
        Subgroup { ambient: ambient.clone(), elements: ElementSet::full(ambient.order()), generators: gens }
    }

    /// Validates that `elements` is closed under addition and contains 0.
    pub fn from_elements(ambient: &Group, elements: ElementSet) -> Result<Subgroup> {
        if elements.universe() != ambient.order() {
            return invalid("element set does not live in the ambient group");
        }
        if !elements.contains(ambient.zero()) {
            return invalid("subset does not contain 0");
        }
        for a in elements.iter() {
            for b in elements.iter() {
                if !elements.contains(ambient.add(a, b)) {
                    return invalid(format!("subset not closed: {} + {} escapes", ambient.format_element(a), ambient.format_element(b)));
                }
            }
        }
        // Reduce to a small generating set for reporting.
        let mut sub = Subgroup::zero(ambient);
        for a in elements.iter() {
            if !sub.contains(a) {
                sub = sub.join_element(a);
            }
        }
        debug_assert_eq!(sub.elements, elements);
        Ok(sub)
    }

    fn join_element(&self, g: Element) -> Subgroup {
        if self.contains(g) {
            return self.clone();
        }
        let grp = &self.ambient;
        let mut cyc = ElementSet::empty(grp.order());
        let mut x = grp.zero();
        loop {
            cyc.insert(x);
            x = grp.add(x, g);
            if x == grp.zero() {
                break;
            }
        }
        let mut generators = self.generators.clone();
        generators.push(g);
        Subgroup { ambient: grp.clone(), elements: self.elements.sumset(grp, &cyc), generators }
    }

    /// `self + other`, the subgroup they generate.
    pub fn join(&self, other: &Subgroup) -> Subgroup {
        let mut out = self.clone();
        for &g in &other.generators {
            out = out.join_element(g);
        }
        out
    }

    pub fn ambient(&self) -> &Group {
        &self.ambient
    }

    pub fn elements(&self) -> &ElementSet {
        &self.elements
    }

    pub fn generators(&self) -> &[Element] {
        &self.generators
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// `[G : H]` in the ambient group.
    pub fn index(&self) -> usize {
        self.ambient.order() / self.order()
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.order() == self.ambient.order()
    }

    #[inline]
    pub fn contains(&self, g: Element) -> bool {
        self.elements.contains(g)
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.elements.is_subset(&other.elements)
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.elements.ranks()
    }

    /// The coset `x + H`.
    pub fn coset(&self, x: Element) -> ElementSet {
        self.elements.translate(&self.ambient, x)
    }

    /// Minimal-rank representative of `x + H`.
    pub fn coset_rep(&self, x: Element) -> Element {
        self.coset(x).first().expect("cosets are nonempty")
    }

    /// `rank(x) → rank(coset_rep(x))` for every element of the ambient group.
    pub fn coset_table(&self) -> Vec<Element> {
        let grp = &self.ambient;
        let mut table = vec![None; grp.order()];
        for x in grp.elements() {
            if table[x.rank()].is_some() {
                continue;
            }
            // x is minimal in its coset since smaller ranks were already assigned.
            for y in self.coset(x).iter() {
                table[y.rank()] = Some(x);
            }
        }
        table.into_iter().map(|t| t.expect("every element lies in a coset")).collect()
    }

    /// Whether `a - b ∈ H`.
    pub fn same_coset(&self, a: Element, b: Element) -> bool {
        self.contains(self.ambient.sub(a, b))
    }

    /// Isomorphism type of this subgroup as an abstract group.
    pub fn isomorphism_type(&self) -> Group {
        let grp = &self.ambient;
        let elems: Vec<Element> = self.elements.iter().collect();
        abelian_type(self.order() as u64, |k| elems.iter().filter(|&&x| grp.scale(k as i64, x) == grp.zero()).count() as u64)
    }

    /// Isomorphism type of `self / sub` for `sub ≤ self`.
    pub fn quotient_type(&self, sub: &Subgroup) -> Result<Group> {
        if !sub.is_subgroup_of(self) {
            return invalid("quotient by a subgroup that is not contained in the group");
        }
        let grp = &self.ambient;
        let elems: Vec<Element> = self.elements.iter().collect();
        let h = sub.order() as u64;
        Ok(abelian_type(self.order() as u64 / h, |k| elems.iter().filter(|&&x| sub.contains(grp.scale(k as i64, x))).count() as u64 / h))
    }

    /// Canonical order: by order, then lexicographic on sorted element ranks.
    pub fn canonical_cmp(&self, other: &Subgroup) -> Ordering {
        self.order().cmp(&other.order()).then_with(|| self.ranks().cmp(&other.ranks()))
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.elements == other.elements
    }
}

impl Eq for Subgroup {}

impl std::hash::Hash for Subgroup {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.elements.hash(state);
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators.iter().map(|&g| self.ambient.format_element(g)).collect();
        write!(f, "<{}> (order {}) in {}", gens.join(", "), self.order(), self.ambient)
    }
}

impl Serialize for Subgroup {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("Subgroup", 3)?;
        s.serialize_field("order", &self.order())?;
        s.serialize_field("elements", &self.ranks())?;
        s.serialize_field("generators", &self.generators.iter().map(|g| g.rank()).collect::<Vec<_>>())?;
        s.end()
    }
}

/// Recovers the invariant factors of an abelian group of the given order
/// from `torsion(k) = |{x : kx = 0}|`.
fn abelian_type(order: u64, torsion: impl Fn(u64) -> u64) -> Group {
    let mut prime_powers: Vec<i64> = Vec::new();
    let mut rest = order;
    let mut p = 2;
    while rest > 1 {
        if !rest.is_multiple_of(p) {
            p += 1;
            continue;
        }
        let mut full = 0u32;
        while rest.is_multiple_of(p) {
            rest /= p;
            full += 1;
        }
        // t_j = log_p |G[p^j]| = Σ_i min(e_i, j); its increments count e_i ≥ j.
        let mut at_least = Vec::new();
        let mut prev = 0u32;
        let mut j = 1u32;
        while prev < full {
            let t = torsion(p.pow(j)).ilog(p);
            at_least.push(t - prev);
            prev = t;
            j += 1;
        }
        // Conjugate partition: exponent of the i-th cyclic p-factor.
        let count = at_least[0];
        for i in 0..count {
            let e = at_least.iter().filter(|&&c| c > i).count() as u32;
            prime_powers.push(p.pow(e) as i64);
        }
        p += 1;
    }
    if prime_powers.is_empty() {
        return Group::trivial();
    }
    Group::new(&prime_powers).expect("prime powers are positive")
}

/// `G[d] = {g : dg = 0}`.
pub fn torsion_subgroup(group: &Group, d: u64) -> Subgroup {
    let set = ElementSet::from_elements(group.order(), group.elements().filter(|&g| group.scale(d as i64, g) == group.zero()));
    Subgroup::from_elements(group, set).expect("kernel of a homomorphism")
}

/// `d·G = {dg : g ∈ G}`.
pub fn image_subgroup(group: &Group, d: u64) -> Subgroup {
    let set = ElementSet::from_elements(group.order(), group.elements().map(|g| group.scale(d as i64, g)));
    Subgroup::from_elements(group, set).expect("image of a homomorphism")
}

/// Every subgroup of `group`, in canonical order.
pub fn all_subgroups(group: &Group) -> Result<Vec<Subgroup>> {
    all_subgroups_with_budget(group, SUBGROUP_BUDGET)
}

pub fn all_subgroups_with_budget(group: &Group, max_order: usize) -> Result<Vec<Subgroup>> {
    if group.order() > max_order {
        return Err(Error::ResourceLimit {
            what: format!("subgroup enumeration of {group} (order {} > {max_order})", group.order()),
            bounds: None,
        });
    }
    Ok(subgroups_within(&Subgroup::whole(group)))
}

/// Every subgroup of `outer` (as subgroups of its ambient group), in canonical order.
///
/// Breadth-first closure: start from `{0}` and join cyclic subgroups until no
/// new subgroup appears, deduplicating by element set.
pub fn subgroups_within(outer: &Subgroup) -> Vec<Subgroup> {
    let grp = outer.ambient();
    let zero = Subgroup::zero(grp);
    let mut seen: HashSet<ElementSet> = HashSet::new();
    let mut cyclics: Vec<Subgroup> = Vec::new();
    for g in outer.elements().iter() {
        let c = Subgroup::generated(grp, &[g]);
        if seen.insert(c.elements.clone()) {
            cyclics.push(c);
        }
    }
    seen.clear();
    seen.insert(zero.elements.clone());
    let mut out = vec![zero.clone()];
    let mut queue = VecDeque::from([zero]);
    while let Some(h) = queue.pop_front() {
        for c in &cyclics {
            if c.is_subgroup_of(&h) {
                continue;
            }
            let j = h.join(c);
            if seen.insert(j.elements.clone()) {
                out.push(j.clone());
                queue.push_back(j);
            }
        }
    }
    out.sort_by(Subgroup::canonical_cmp);
    out
}

/// `H(A) = {g : g + A = A}`.
pub fn stabilizer(group: &Group, set: &ElementSet) -> Result<Subgroup> {
    let Some(a0) = set.first() else {
        return invalid("stabilizer of the empty set");
    };
    let mut stab = ElementSet::empty(group.order());
    for x in set.iter() {
        let g = group.sub(x, a0);
        if set.iter().all(|a| set.contains(group.add(a, g))) {
            stab.insert(g);
        }
    }
    Subgroup::from_elements(group, stab)
}

/// Whether `set` is a union of `H`-cosets.
pub fn is_periodic_under(set: &ElementSet, h: &Subgroup) -> bool {
    let grp = h.ambient();
    h.generators().iter().all(|&g| set.iter().all(|a| set.contains(grp.add(a, g))))
}

/// The natural map `G → G/H` with `G/H` in invariant-factor form.
#[derive(Clone)]
pub struct QuotientMap {
    source: Group,
    kernel: Subgroup,
    target: Group,
    table: Vec<Element>,
    reps: Vec<Element>,
}

/// Builds `φ_H : G → G/H`. Coset representatives are minimal-rank elements.
pub fn quotient(group: &Group, kernel: &Subgroup) -> Result<QuotientMap> {
    if kernel.ambient() != group {
        return invalid(format!("subgroup lives in {}, not {group}", kernel.ambient()));
    }
    let r = group.rank_count();
    if r == 0 {
        return Ok(QuotientMap {
            source: group.clone(),
            kernel: kernel.clone(),
            target: Group::trivial(),
            table: vec![Element::ZERO],
            reps: vec![Element::ZERO],
        });
    }
    // Relations: n_i e_i and the kernel generators, as columns.
    let gens: Vec<Vec<u64>> = kernel.generators().iter().map(|&g| group.coords(g)).collect();
    let matrix: Vec<Vec<i128>> = (0..r)
        .map(|i| {
            let mut row: Vec<i128> = (0..r).map(|j| if i == j { group.factors()[i] as i128 } else { 0 }).collect();
            row.extend(gens.iter().map(|c| c[i] as i128));
            row
        })
        .collect();
    let snf = smith_normal_form(&matrix);
    let kept: Vec<usize> = (0..r).filter(|&i| snf.diag[i] > 1).collect();
    let target = Group::from_chain(kept.iter().map(|&i| snf.diag[i] as u64).collect());

    let mut table = Vec::with_capacity(group.order());
    for g in group.elements() {
        let x = group.coords(g);
        let y: Vec<i64> = kept
            .iter()
            .map(|&i| {
                let v: i128 = snf.left[i].iter().zip(&x).map(|(u, &c)| u * c as i128).sum();
                v.rem_euclid(snf.diag[i]) as i64
            })
            .collect();
        table.push(if y.is_empty() { Element::ZERO } else { target.element(&y)? });
    }
    let mut reps = vec![None; target.order()];
    for g in group.elements() {
        let t = table[g.rank()].rank();
        if reps[t].is_none() {
            reps[t] = Some(g);
        }
    }
    let reps = reps.into_iter().map(|r| r.expect("quotient map is onto")).collect();
    Ok(QuotientMap { source: group.clone(), kernel: kernel.clone(), target, table, reps })
}

impl QuotientMap {
    pub fn source(&self) -> &Group {
        &self.source
    }

    pub fn kernel(&self) -> &Subgroup {
        &self.kernel
    }

    pub fn target(&self) -> &Group {
        &self.target
    }

    #[inline]
    pub fn apply(&self, g: Element) -> Element {
        self.table[g.rank()]
    }

    pub fn apply_set(&self, set: &ElementSet) -> ElementSet {
        ElementSet::from_elements(self.target.order(), set.iter().map(|g| self.apply(g)))
    }

    /// Minimal-rank preimage of a target element.
    pub fn representative(&self, q: Element) -> Element {
        self.reps[q.rank()]
    }
}
