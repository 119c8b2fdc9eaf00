//! Automorphisms, affine element orbits and canonical forms for sequences.

use crate::group::{Element, Group};
use crate::sequence::GroupSequence;
use crate::subgroup::Subgroup;

/// Automorphism groups are enumerated only up to this order.
pub const AUTOMORPHISM_LIMIT: usize = 16;

/// An automorphism as a rank → rank table.
pub type Automorphism = Vec<Element>;

/// All automorphisms of `group`, identity first, or `None` above [`AUTOMORPHISM_LIMIT`].
///
/// An automorphism is fixed by the images `x_i` of the basis generators; any
/// choice with `n_i x_i = 0` extends to an endomorphism, and it is bijective
/// exactly when it is onto.
pub fn automorphisms(group: &Group) -> Option<Vec<Automorphism>> {
    if group.order() > AUTOMORPHISM_LIMIT {
        return None;
    }
    let r = group.rank_count();
    let candidates: Vec<Vec<Element>> =
        group.factors().iter().map(|&n| group.elements().filter(|&x| group.scale(n as i64, x) == group.zero()).collect()).collect();
    let coords: Vec<Vec<u64>> = group.elements().map(|e| group.coords(e)).collect();
    let mut out = Vec::new();
    let mut choice = vec![0usize; r];
    loop {
        let images: Vec<Element> = (0..r).map(|i| candidates[i][choice[i]]).collect();
        let table: Vec<Element> = coords
            .iter()
            .map(|c| c.iter().zip(&images).fold(group.zero(), |acc, (&ci, &x)| group.add(acc, group.scale(ci as i64, x))))
            .collect();
        let mut hit = vec![false; group.order()];
        table.iter().for_each(|e| hit[e.rank()] = true);
        if hit.iter().all(|&h| h) {
            out.push(table);
        }
        // odometer
        let mut i = r;
        loop {
            if i == 0 {
                out.sort();
                return Some(out);
            }
            i -= 1;
            choice[i] += 1;
            if choice[i] < candidates[i].len() {
                break;
            }
            choice[i] = 0;
        }
    }
}

/// Orbits of elements under `x ↦ σ(x) + t` with `σ` from a set of
/// automorphisms and `t` from a characteristic subgroup.
#[derive(Clone, Debug)]
pub struct AffineOrbits {
    min_of: Vec<Element>,
    maps: Vec<Automorphism>,
    translations: Vec<Element>,
}

impl AffineOrbits {
    pub fn new(group: &Group, maps: Vec<Automorphism>, translations: &Subgroup) -> AffineOrbits {
        let maps = if maps.is_empty() { vec![group.elements().collect()] } else { maps };
        let translations: Vec<Element> = translations.elements().iter().collect();
        let min_of = group
            .elements()
            .map(|x| {
                maps.iter().flat_map(|m| translations.iter().map(move |&t| group.add(m[x.rank()], t))).min().expect("identity map present")
            })
            .collect();
        AffineOrbits { min_of, maps, translations }
    }

    /// Orbits under the identity only.
    pub fn trivial(group: &Group) -> AffineOrbits {
        AffineOrbits::new(group, Vec::new(), &Subgroup::zero(group))
    }

    /// Minimal-rank element of the orbit of `x`.
    pub fn orbit_min(&self, x: Element) -> Element {
        self.min_of[x.rank()]
    }

    /// Orbit representatives (minimal ranks), ascending.
    pub fn representatives(&self) -> Vec<Element> {
        let mut reps: Vec<Element> = self.min_of.clone();
        reps.sort();
        reps.dedup();
        reps
    }

    pub fn group_size(&self) -> usize {
        self.maps.len() * self.translations.len()
    }

    /// Lexicographically least sorted term list over the orbit of `seq`.
    pub fn canonical_form(&self, seq: &GroupSequence) -> GroupSequence {
        let group = seq.group();
        let terms: Vec<Element> = seq.terms().collect();
        let mut best: Option<Vec<Element>> = None;
        for m in &self.maps {
            for &t in &self.translations {
                let mut img: Vec<Element> = terms.iter().map(|&x| group.add(m[x.rank()], t)).collect();
                img.sort();
                if best.as_ref().is_none_or(|b| img < *b) {
                    best = Some(img);
                }
            }
        }
        GroupSequence::from_terms(group, best.unwrap_or_default())
    }

    pub fn is_canonical(&self, seq: &GroupSequence) -> bool {
        self.canonical_form(seq) == *seq
    }
}
