#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use zerosum::{Element, ElementSet, Group, GroupSequence, WeightSet};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn group(spec: &str) -> Group {
    spec.parse().unwrap()
}

/// Every abelian group of order at most `max`, as factor lists.
pub fn groups_up_to(max: usize) -> Vec<Group> {
    let all: [&[i64]; 13] = [&[1], &[2], &[3], &[4], &[2, 2], &[5], &[6], &[7], &[8], &[2, 4], &[2, 2, 2], &[9], &[3, 3]];
    all.iter().map(|f| Group::new(f).unwrap()).filter(|g| g.order() <= max).collect()
}

pub fn random_group(rng: &mut ChaCha8Rng, max: usize, nontrivial: bool) -> Group {
    let pool: Vec<Group> = groups_up_to(max).into_iter().filter(|g| !nontrivial || !g.is_trivial()).collect();
    pool.choose(rng).unwrap().clone()
}

pub fn random_element(rng: &mut ChaCha8Rng, g: &Group) -> Element {
    Element::from_rank(rng.gen_range(0..g.order()))
}

pub fn random_sequence(rng: &mut ChaCha8Rng, g: &Group, len: usize) -> GroupSequence {
    GroupSequence::from_terms(g, (0..len).map(|_| random_element(rng, g)))
}

/// Between 1 and `max_k` distinct raw weights from `[-lim, lim]`, zero allowed.
pub fn random_weights(rng: &mut ChaCha8Rng, max_k: usize, lim: i64) -> WeightSet {
    let k = rng.gen_range(1..=max_k);
    let mut ws = Vec::new();
    while ws.len() < k {
        let w = rng.gen_range(-lim..=lim);
        if !ws.contains(&w) {
            ws.push(w);
        }
    }
    WeightSet::new(ws).unwrap()
}

pub fn random_nonempty_set(rng: &mut ChaCha8Rng, g: &Group, max_len: usize) -> ElementSet {
    let k = rng.gen_range(1..=max_len.min(g.order()));
    let mut ranks: Vec<usize> = (0..g.order()).collect();
    ranks.shuffle(rng);
    ElementSet::from_elements(g.order(), ranks[..k].iter().map(|&r| Element::from_rank(r)))
}

/// Coordinate-level addition, independent of the rank encoding.
pub fn coord_add(g: &Group, a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).zip(g.factors()).map(|((x, y), &n)| (x + y).rem_euclid(n as i64)).collect()
}

pub fn coord_scale(g: &Group, k: i64, a: &[i64]) -> Vec<i64> {
    a.iter().zip(g.factors()).map(|(x, &n)| (k * x).rem_euclid(n as i64)).collect()
}

pub fn coords(g: &Group, e: Element) -> Vec<i64> {
    g.coords(e).into_iter().map(|c| c as i64).collect()
}

pub fn from_coords(g: &Group, c: &[i64]) -> Element {
    g.element(c).unwrap()
}
