//! Seeded randomized suites for the lemma checkers.
//!
//! Each suite runs a few fixed instances first, then `trials` random ones
//! drawn from a ChaCha stream derived from the global seed and the lemma.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::Value;
use zerosum::lemmas::{check_ccd_statement, check_confusing_lemma, check_coset_lemma, check_dgm_bound, check_kneser, keylemma_search};
use zerosum::subgroup::{all_subgroups, subgroups_within, torsion_subgroup};
use zerosum::sums::weight_orbit;
use zerosum::theorem::verify_corollary_structure;
use zerosum::{
    Budget, Element, ElementSet, Error, Group, GroupSequence, Lab, LemmaId, LemmaReport, Result, SetPartition, Subgroup, WeightSet,
};

use crate::catalog::abelian_groups;

pub fn default_trials(lemma: LemmaId) -> usize {
    match lemma {
        LemmaId::Kneser | LemmaId::Dgm => 500,
        LemmaId::Ccd => 50,
        _ => 200,
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SuiteReport {
    pub lemma: String,
    pub fixed: usize,
    pub fixed_passed: usize,
    pub trials: usize,
    pub passed: usize,
    /// Violation reports, or the message of a theorem-violation error.
    pub violations: Vec<Value>,
    /// Checker errors other than violations (generator or input bugs).
    pub errors: Vec<String>,
}

impl SuiteReport {
    pub fn clean(&self) -> bool {
        self.violations.is_empty() && self.errors.is_empty() && self.passed == self.trials && self.fixed_passed == self.fixed
    }
}

type Check = Box<dyn FnOnce(&Lab) -> Result<LemmaReport>>;

fn record(rep: &mut SuiteReport, out: Result<LemmaReport>) -> bool {
    match out {
        Ok(r) if r.is_violation() => {
            rep.violations.push(serde_json::to_value(&r).unwrap_or(Value::Null));
            false
        }
        Ok(_) => true,
        Err(Error::TheoremViolation(m)) => {
            rep.violations.push(Value::String(m));
            false
        }
        Err(e) => {
            rep.errors.push(e.to_string());
            false
        }
    }
}

pub fn run_suite(lemma: LemmaId, trials: usize, seed: u64, lab: &Lab) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(LemmaId::ALL.iter().position(|&l| l == lemma).unwrap_or(0) as u64 + 1);
    let mut rep = SuiteReport { lemma: lemma.to_string(), trials, ..Default::default() };
    for check in fixed_cases(lemma) {
        rep.fixed += 1;
        if record(&mut rep, check(lab)) {
            rep.fixed_passed += 1;
        }
    }
    for _ in 0..trials {
        let check = random_case(lemma, &mut rng, lab);
        if record(&mut rep, check(lab)) {
            rep.passed += 1;
        }
    }
    rep
}

fn g(spec: &str) -> Group {
    spec.parse().expect("literal group")
}

fn w(spec: &str) -> WeightSet {
    spec.parse().expect("literal weights")
}

fn set(group: &Group, ranks: &[usize]) -> ElementSet {
    ElementSet::from_elements(group.order(), ranks.iter().map(|&r| Element::from_rank(r)))
}

fn fixed_cases(lemma: LemmaId) -> Vec<Check> {
    match lemma {
        LemmaId::Kneser => vec![
            Box::new(|_: &Lab| {
                let c4 = g("C4");
                check_kneser(&c4, &[set(&c4, &[0, 1]), set(&c4, &[0, 1])])
            }),
            Box::new(|_: &Lab| {
                let c4 = g("C4");
                check_kneser(&c4, &[set(&c4, &[1]), set(&c4, &[2]), set(&c4, &[3])])
            }),
        ],
        LemmaId::Dgm => vec![Box::new(|_: &Lab| {
            let c4 = g("C4");
            check_dgm_bound(&SetPartition::from_ranks(&c4, &[&[0, 1], &[0, 1]])?, 2)
        })],
        LemmaId::Ccd => vec![
            Box::new(|_: &Lab| {
                let v = g("C2xC2");
                check_ccd_statement(
                    &GroupSequence::parse(&v, "[0,1,2,3,1]")?,
                    &GroupSequence::parse(&v, "[0,1,2,3]")?,
                    2,
                    Budget::UNLIMITED,
                )
            }),
            Box::new(|_: &Lab| {
                let c3 = g("C3");
                let s = GroupSequence::parse(&c3, "[0^4]")?;
                check_ccd_statement(&s, &s.prefix(3), 3, Budget::UNLIMITED)
            }),
        ],
        LemmaId::CosetLemma => {
            // every valid (K, β, g1, g2) over C4 with A = {1,3}
            let c4 = g("C4");
            let a = w("1,3");
            let mut out: Vec<Check> = Vec::new();
            for k in subgroups_within(&Subgroup::whole(&c4)) {
                for beta in c4.elements() {
                    let fits: Vec<Element> = c4.elements().filter(|&x| weight_orbit(&a, &c4, x).is_subset(&k.coset(beta))).collect();
                    for &g1 in &fits {
                        for &g2 in &fits {
                            let (a, k) = (a.clone(), k.clone());
                            out.push(Box::new(move |_: &Lab| check_coset_lemma(&a, &k, beta, g1, g2)));
                        }
                    }
                }
            }
            out
        }
        LemmaId::ConfusingLemma => vec![Box::new(|lab: &Lab| {
            let c4 = g("C4");
            let one = Element::from_rank(1);
            let s = GroupSequence::parse(&c4, "[1,3]")?;
            check_confusing_lemma(lab, &torsion_subgroup(&c4, 2), &Subgroup::whole(&c4), one, one, &WeightSet::ones(), &s)
        })],
        LemmaId::Keylemma => vec![
            Box::new(|_: &Lab| {
                let c2 = g("C2");
                keylemma_search(&SetPartition::from_ranks(&c2, &[&[0, 1]])?, &Subgroup::whole(&c2), Budget::UNLIMITED)
            }),
            Box::new(|_: &Lab| {
                let c4 = g("C4");
                keylemma_search(&SetPartition::from_ranks(&c4, &[&[0, 2], &[0, 2], &[0, 2]])?, &Subgroup::whole(&c4), Budget::UNLIMITED)
            }),
        ],
        LemmaId::CorollaryStructure => vec![
            Box::new(|lab: &Lab| {
                let c3 = g("C3");
                verify_corollary_structure(&c3, &w("1,2"), 3, &GroupSequence::parse(&c3, "[1^5]")?, lab)
            }),
            Box::new(|lab: &Lab| {
                let c4 = g("C4");
                verify_corollary_structure(&c4, &WeightSet::ones(), 4, &GroupSequence::parse(&c4, "[0^7]")?, lab)
            }),
        ],
    }
}

fn pick_group(rng: &mut ChaCha8Rng, max: usize) -> Group {
    let pool: Vec<Group> = abelian_groups(max).into_iter().filter(|g| !g.is_trivial()).collect();
    pool.choose(rng).expect("nonempty pool").clone()
}

fn pick_element(rng: &mut ChaCha8Rng, group: &Group) -> Element {
    Element::from_rank(rng.gen_range(0..group.order()))
}

fn pick_set(rng: &mut ChaCha8Rng, group: &Group, max_len: usize) -> ElementSet {
    let k = rng.gen_range(1..=max_len.min(group.order()));
    let ranks: Vec<usize> = (0..group.order()).collect();
    ElementSet::from_elements(group.order(), ranks.choose_multiple(rng, k).map(|&r| Element::from_rank(r)))
}

fn pick_weights(rng: &mut ChaCha8Rng, max_k: usize, lim: i64) -> WeightSet {
    let k = rng.gen_range(1..=max_k);
    let pool: Vec<i64> = (-lim..=lim).collect();
    WeightSet::new(pool.choose_multiple(rng, k).copied()).expect("nonempty")
}

fn pick_sequence(rng: &mut ChaCha8Rng, group: &Group, len: usize) -> GroupSequence {
    GroupSequence::from_terms(group, (0..len).map(|_| pick_element(rng, group)))
}

/// Draws one valid instance; rejection sampling stays inside `rng`.
fn random_case(lemma: LemmaId, rng: &mut ChaCha8Rng, lab: &Lab) -> Check {
    match lemma {
        LemmaId::Kneser => {
            let grp = pick_group(rng, 9);
            let k = rng.gen_range(1..=4);
            let sets: Vec<ElementSet> = (0..k).map(|_| pick_set(rng, &grp, grp.order())).collect();
            Box::new(move |_: &Lab| check_kneser(&grp, &sets))
        }
        LemmaId::Dgm => {
            let grp = pick_group(rng, 9);
            let k = rng.gen_range(1..=6);
            let blocks: Vec<ElementSet> = (0..k).map(|_| pick_set(rng, &grp, 4)).collect();
            let n = rng.gen_range(1..=k);
            Box::new(move |_: &Lab| check_dgm_bound(&SetPartition::new(&grp, blocks)?, n))
        }
        LemmaId::Ccd => loop {
            let grp = pick_group(rng, 6);
            let len = rng.gen_range(2..=8);
            let s = pick_sequence(rng, &grp, len);
            let mut terms: Vec<Element> = s.terms().collect();
            terms.shuffle(rng);
            let k = rng.gen_range(1..=len);
            let sp = GroupSequence::from_terms(&grp, terms[..k].iter().copied());
            let lo = (grp.d_star() as usize).max(sp.max_multiplicity() as usize).max(1);
            if lo > sp.len() {
                continue;
            }
            let n = rng.gen_range(lo..=sp.len());
            return Box::new(move |_: &Lab| check_ccd_statement(&s, &sp, n, Budget::UNLIMITED));
        },
        LemmaId::CosetLemma => loop {
            let grp = pick_group(rng, 9);
            let a = pick_weights(rng, 3, 9);
            if a.gcd_with(grp.exponent()) != 1 {
                continue;
            }
            let subs = all_subgroups(&grp).expect("small group");
            let k = subs.choose(rng).expect("nonempty").clone();
            let g1 = pick_element(rng, &grp);
            let beta = grp.scale(a.a0(), g1);
            let fits: Vec<Element> = grp.elements().filter(|&x| weight_orbit(&a, &grp, x).is_subset(&k.coset(beta))).collect();
            if !fits.contains(&g1) {
                continue;
            }
            let g2 = *fits.choose(rng).expect("g1 fits");
            return Box::new(move |_: &Lab| check_coset_lemma(&a, &k, beta, g1, g2));
        },
        LemmaId::ConfusingLemma => loop {
            let g0 = pick_group(rng, 9);
            let a = pick_weights(rng, 3, 6);
            let gsub = all_subgroups(&g0).expect("small group").choose(rng).expect("nonempty").clone();
            let h = subgroups_within(&gsub).choose(rng).expect("nonempty").clone();
            let alpha = pick_element(rng, &g0);
            let beta = g0.scale(a.a0(), alpha);
            if !weight_orbit(&a, &g0, alpha).is_subset(&h.coset(beta)) {
                continue;
            }
            let Ok(quot) = gsub.quotient_type(&h) else { continue };
            let Ok(dq) = lab.davenport(&quot, &a) else { continue };
            let len = dq as usize + rng.gen_range(0..=2);
            let members: Vec<Element> = gsub.elements().iter().collect();
            let s = GroupSequence::from_terms(&g0, (0..len).map(|_| g0.add(alpha, *members.choose(rng).expect("nonempty"))));
            return Box::new(move |lab: &Lab| check_confusing_lemma(lab, &h, &gsub, alpha, beta, &a, &s));
        },
        LemmaId::Keylemma => loop {
            let grp = pick_group(rng, 9);
            let subs: Vec<Subgroup> =
                all_subgroups(&grp).expect("small group").into_iter().filter(|k| !k.is_trivial() && k.order() <= 8).collect();
            let Some(k) = subs.choose(rng).cloned() else { continue };
            let count = k.order() - 1 + rng.gen_range(0..=2);
            let blocks: Vec<ElementSet> = (0..count)
                .map(|_| {
                    let coset: Vec<Element> = k.coset(pick_element(rng, &grp)).iter().collect();
                    let size = rng.gen_range(2..=coset.len());
                    ElementSet::from_elements(grp.order(), coset.choose_multiple(rng, size).copied())
                })
                .collect();
            return Box::new(move |_: &Lab| keylemma_search(&SetPartition::new(&grp, blocks)?, &k, Budget::UNLIMITED));
        },
        LemmaId::CorollaryStructure => loop {
            let grp = pick_group(rng, 6);
            let a = pick_weights(rng, 3, 6);
            if a.gcd() != 1 {
                continue;
            }
            let n = grp.order() + rng.gen_range(0..=2);
            let Ok(da) = lab.davenport(&grp, &a) else { continue };
            let s = pick_sequence(rng, &grp, n + da as usize - 1);
            return Box::new(move |lab: &Lab| verify_corollary_structure(&grp, &a, n, &s, lab));
        },
    }
}
