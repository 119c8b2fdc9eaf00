//! Acceptance criteria 1-9. Each test prints one PASS/FAIL line to the
//! process stdout (bypassing capture) and then asserts the outcome.

use std::collections::BTreeSet;
use std::io::Write;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use zerosum::invariants::{check_bounds, davenport_classical, lower_bound_sequence};
use zerosum::subgroup::{all_subgroups, is_periodic_under, torsion_subgroup};
use zerosum::sums::{check_translation_identity, sigma_exact_n};
use zerosum::theorem::{find_decomposition, multiplicity_hypothesis, verify_witness};
use zerosum::{Budget, Element, Group, GroupSequence, InvariantKind, InvariantTable, Lab, LemmaId, SearchOptions, Subgroup, WeightSet};
use zerosum_cli::args::{IdentityArgs, SweepArgs};
use zerosum_cli::catalog::{abelian_groups, catalog_groups, catalog_weight_sets};
use zerosum_cli::identity::{self, RowStatus, Value};
use zerosum_cli::suites::{default_trials, run_suite};
use zerosum_cli::sweep::{self, Mode};
use zerosum_cli::{identity_pairs, sweep_families};

const SEED: u64 = 7;

fn report(n: u32, title: &str, ok: bool, detail: &str) {
    let line = format!("criterion {n} [PRIMARY] {title}: {} ({detail})\n", if ok { "PASS" } else { "FAIL" });
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(line.as_bytes());
    let _ = out.flush();
    assert!(ok, "criterion {n} failed: {detail}");
}

fn catalog_args() -> IdentityArgs {
    IdentityArgs { groups: vec![], weights: vec![], max_order: 9 }
}

fn catalog_pairs() -> Vec<(Group, WeightSet)> {
    identity_pairs(&catalog_args())
}

#[test]
fn criterion_1_identity_sweep() {
    let start = Instant::now();
    let table = InvariantTable::new();
    let rows = identity::sweep(&catalog_pairs(), &table, &SearchOptions::default()).unwrap();
    let bad: Vec<String> =
        rows.iter().filter(|r| r.status != RowStatus::Ok).map(|r| format!("{} {} {}", r.group, r.weights, r.status)).collect();
    let groups: BTreeSet<String> = rows.iter().map(|r| r.group.spec_string()).collect();
    let find = |g: &str, w: &str| rows.iter().find(|r| r.group.spec_string() == g && r.weights.to_string() == w).cloned();
    let mut anchors = true;
    for (g, d, e) in [("C3", 3, 5), ("C2xC2", 3, 6), ("C2", 2, 3)] {
        let r = find(g, "{1}").unwrap();
        anchors &= r.davenport == Value::Exact(d) && r.egz == Value::Exact(e) && r.predicted == Value::Exact(e);
    }
    let elapsed = start.elapsed();
    let ok = bad.is_empty() && groups.len() == 12 && anchors && elapsed < Duration::from_secs(15 * 60);
    report(
        1,
        "identity sweep E_A = |G| + D_A - 1",
        ok,
        &format!("{} pairs, {} groups, mismatches {bad:?}, {elapsed:.2?}", rows.len(), groups.len()),
    );
}

fn coords(g: &Group, e: Element) -> Vec<i64> {
    g.coords(e).into_iter().map(|c| c as i64).collect()
}

/// Sums over every n-subset of positions and every weight assignment.
fn naive_sigma(g: &Group, w: &WeightSet, terms: &[Element], n: usize) -> BTreeSet<Vec<i64>> {
    let f = g.factors().to_vec();
    let cs: Vec<Vec<i64>> = terms.iter().map(|&t| coords(g, t)).collect();
    let mut out = BTreeSet::new();
    let k = cs.len();
    for mask in 0u32..(1 << k) {
        if mask.count_ones() as usize != n {
            continue;
        }
        let idx: Vec<usize> = (0..k).filter(|i| mask >> i & 1 == 1).collect();
        let total = w.len().pow(n as u32);
        for mut code in 0..total {
            let mut acc = vec![0i64; f.len()];
            for &i in &idx {
                let a = w.raw()[code % w.len()];
                code /= w.len();
                for (j, m) in f.iter().enumerate() {
                    acc[j] = (acc[j] + a * cs[i][j]).rem_euclid(*m as i64);
                }
            }
            out.insert(acc);
        }
    }
    out
}

#[test]
fn criterion_2_oracle_cross_check() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let pool: Vec<Group> = abelian_groups(8);
    let mut mismatches = 0;
    for _ in 0..200 {
        let g = pool[rng.gen_range(0..pool.len())].clone();
        let len = rng.gen_range(1..=10);
        let terms: Vec<Element> = (0..len).map(|_| Element::from_rank(rng.gen_range(0..g.order()))).collect();
        let k = rng.gen_range(1..=3);
        let mut ws = BTreeSet::new();
        while ws.len() < k {
            ws.insert(rng.gen_range(-8i64..=8));
        }
        let w = WeightSet::new(ws).unwrap();
        let n = rng.gen_range(1..=len);
        let seq = GroupSequence::from_terms(&g, terms.iter().copied());
        let fast: BTreeSet<Vec<i64>> = sigma_exact_n(&w, &seq, n).unwrap().iter().map(|e| coords(&g, e)).collect();
        if fast != naive_sigma(&g, &w, &terms, n) {
            mismatches += 1;
        }
    }
    let elapsed = start.elapsed();
    let ok = mismatches == 0 && elapsed < Duration::from_secs(60);
    report(2, "sigma_exact_n oracle cross-check", ok, &format!("200 instances, {mismatches} mismatches, {elapsed:.2?}"));
}

/// Least length at which every multiset over `g` has a nonempty zero-sum subsequence.
fn plain_davenport(g: &Group) -> u64 {
    fn avoids(g: &Group, terms: &[Element]) -> bool {
        let mut reach = BTreeSet::new();
        for &t in terms {
            let mut next = reach.clone();
            next.insert(coords(g, t));
            for r in &reach {
                let s: Vec<i64> = r.iter().zip(coords(g, t)).zip(g.factors()).map(|((a, b), &m)| (a + b).rem_euclid(m as i64)).collect();
                next.insert(s);
            }
            reach = next;
        }
        !reach.contains(&vec![0; g.rank_count()])
    }
    let mut len = 0;
    loop {
        let mut found = false;
        zerosum::sequence::for_each_multiset(g, len, |s| {
            let terms: Vec<Element> = s.terms().collect();
            found = avoids(g, &terms);
            !found
        });
        if !found {
            return len as u64;
        }
        len += 1;
    }
}

#[test]
fn criterion_3_classical_anchors() {
    let opts = SearchOptions::default();
    let mut wrong = Vec::new();
    let mut expected: Vec<(Group, u64)> = (2..=9).map(|n| (Group::cyclic(n), n)).collect();
    expected.push(("C2xC2".parse().unwrap(), 3));
    expected.push(("C2xC2xC2".parse().unwrap(), 4));
    for (g, v) in &expected {
        let got = davenport_classical(g, &opts).unwrap().value;
        let oracle = plain_davenport(g);
        if got != *v || oracle != *v {
            wrong.push(format!("{g}: search {got}, oracle {oracle}, expected {v}"));
        }
    }
    let mut bound_fail = Vec::new();
    for g in catalog_groups(9) {
        let d = davenport_classical(&g, &opts).unwrap().value;
        if !(g.d_star() < d && d <= g.order() as u64) {
            bound_fail.push(g.spec_string());
        }
    }
    let ok = wrong.is_empty() && bound_fail.is_empty();
    report(
        3,
        "classical Davenport anchors and d* < D <= |G|",
        ok,
        &format!("{} anchors, wrong {wrong:?}, bound failures {bound_fail:?}", expected.len()),
    );
}

#[test]
fn criterion_4_lower_bound_construction() {
    let table = InvariantTable::new();
    let opts = SearchOptions::default();
    let mut bad = Vec::new();
    let pairs = catalog_pairs();
    for (g, w) in &pairs {
        let d = table.get_or_compute(InvariantKind::DavenportWeighted, g, w, None, &opts).unwrap();
        let s = lower_bound_sequence(&d).unwrap();
        let len_ok = s.len() as u64 == g.order() as u64 + d.value - 2;
        let hits = s.len() >= g.order() && sigma_exact_n(w, &s, g.order()).unwrap().contains(g.zero());
        if !len_ok || hits {
            bad.push(format!("{g} {w}"));
        }
    }
    report(4, "lower-bound sequences avoid 0 in Sigma_|G|", bad.is_empty(), &format!("{} pairs, failures {bad:?}", pairs.len()));
}

fn criterion_5_args() -> SweepArgs {
    SweepArgs {
        groups: vec![],
        weights: vec![],
        max_order: 6,
        n: None,
        exhaustive: true,
        trials: 0,
        glue: vec![],
        replay: None,
        failures: "unused.jsonl".into(),
    }
}

#[test]
fn criterion_5_theorem_witness_exhaustion() {
    let start = Instant::now();
    let lab = Lab::default();
    let families = sweep_families(&criterion_5_args()).unwrap();
    let (rep, failures) = sweep::sweep(&families, &Mode::Exhaustive, &lab, Budget::UNLIMITED).unwrap();
    let elapsed = start.elapsed();
    let ok = rep.failures == 0
        && failures.is_empty()
        && rep.resource_limited == 0
        && rep.instances > 0
        && rep.families.iter().all(|f| f.witnesses == f.instances)
        && elapsed < Duration::from_secs(30 * 60);
    report(
        5,
        "decomposition witnesses for |G| <= 6, n = |G|",
        ok,
        &format!("{} families, {} instances, {} failures, {elapsed:.2?}", rep.families.len(), rep.instances, rep.failures),
    );
}

#[test]
fn criterion_6_multiplicity_consequence() {
    let lab = Lab::default();
    let mut covered = 0;
    let mut bad = Vec::new();
    for fam in sweep_families(&criterion_5_args()).unwrap() {
        for inst in fam.setting.exhaustive_instances(&fam.weights, fam.n, &lab, true).unwrap() {
            if !multiplicity_hypothesis(&inst) || !(inst.n as u64).is_multiple_of(inst.g_type().exponent()) {
                continue;
            }
            covered += 1;
            let w = find_decomposition(&inst, &lab, Budget::UNLIMITED).unwrap();
            let checks = verify_witness(&inst, &w, &lab).unwrap();
            let big = sigma_exact_n(&inst.weights, &inst.seq, inst.n).unwrap();
            if !checks.all() || w.h.is_trivial() || !is_periodic_under(&big, &w.h) {
                bad.push(inst.seq.canonical_string());
            }
        }
    }
    let ok = bad.is_empty() && covered > 0;
    report(6, "multiplicity hypothesis forces nontrivial H and periodic Sigma_n", ok, &format!("{covered} instances, failures {bad:?}"));
}

#[test]
fn criterion_7_inequality_suites() {
    let lab = Lab::default();
    let kneser = run_suite(LemmaId::Kneser, 500, SEED, &lab);
    let dgm = run_suite(LemmaId::Dgm, 500, SEED, &lab);

    let table = InvariantTable::new();
    let opts = SearchOptions::default();
    let mut bounds_fail = Vec::new();
    let mut subgroup_rows = 0;
    for g in catalog_groups(9) {
        for w in catalog_weight_sets(&g) {
            table.get_or_compute(InvariantKind::DavenportClassical, &g, &w, None, &opts).unwrap();
            table.davenport(&g, &w, &opts).unwrap();
            for h in all_subgroups(&g).unwrap() {
                table.davenport(&h.isomorphism_type(), &w, &opts).unwrap();
                table.davenport(&Subgroup::whole(&g).quotient_type(&h).unwrap(), &w, &opts).unwrap();
            }
            let rep = check_bounds(&g, &w, &table.lookup()).unwrap();
            subgroup_rows += rep.rows.len();
            if !rep.holds {
                bounds_fail.push(format!("{g} {w}"));
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let pool = abelian_groups(9);
    let mut translation_fail = 0;
    for _ in 0..200 {
        let g = pool[rng.gen_range(0..pool.len())].clone();
        let w = WeightSet::new((0..rng.gen_range(1..=3)).map(|_| rng.gen_range(-9i64..=9))).unwrap();
        let gd: Vec<Element> = torsion_subgroup(&g, w.d(g.exponent())).elements().iter().collect();
        let t = gd[rng.gen_range(0..gd.len())];
        let len = rng.gen_range(1..=8);
        let s = GroupSequence::from_terms(&g, (0..len).map(|_| Element::from_rank(rng.gen_range(0..g.order()))));
        let n = rng.gen_range(1..=len);
        if !check_translation_identity(&w, &s, n, t).unwrap() {
            translation_fail += 1;
        }
    }
    let ok = kneser.clean() && dgm.clean() && bounds_fail.is_empty() && translation_fail == 0;
    report(
        7,
        "Kneser, DGM, superadditivity and translation identity",
        ok,
        &format!(
            "kneser {}/{}, dgm {}/{}, {subgroup_rows} subgroup rows with failures {bounds_fail:?}, translation 200 with {translation_fail} failures",
            kneser.passed, kneser.trials, dgm.passed, dgm.trials
        ),
    );
}

#[test]
fn criterion_8_constructive_lemma_suites() {
    let lab = Lab::default();
    let mut parts = Vec::new();
    let mut ok = true;
    for l in [LemmaId::Keylemma, LemmaId::ConfusingLemma, LemmaId::CosetLemma, LemmaId::Ccd] {
        let rep = run_suite(l, default_trials(l), SEED, &lab);
        ok &= rep.clean();
        parts.push(format!(
            "{} fixed {}/{} random {}/{} violations {}",
            rep.lemma,
            rep.fixed_passed,
            rep.fixed,
            rep.passed,
            rep.trials,
            rep.violations.len()
        ));
    }
    report(8, "keylemma, confusing, coset and CCD suites", ok, &parts.join("; "));
}

fn zerosum(dir: &Path, args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_zerosum")).current_dir(dir).args(args).env_remove("ZS_CACHE").output().unwrap();
    (out.status.code().unwrap_or(-1), out.stdout)
}

#[test]
fn criterion_9_determinism_and_cache() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let mut notes = Vec::new();
    let mut ok = true;

    let runs: [&[&str]; 3] = [
        &["lemma-suite", "--seed", "7", "--out", "lemma.json"],
        &["theorem-sweep", "--max-order", "5", "--trials", "40", "--seed", "7", "--glue", "2", "--out", "sweep.json"],
        &["verify-identity", "--max-order", "6", "--out", "identity.csv"],
    ];
    for args in runs {
        let (c1, o1) = zerosum(d, args);
        let f1 = std::fs::read(d.join(args[args.len() - 1])).unwrap();
        let (c2, o2) = zerosum(d, args);
        let f2 = std::fs::read(d.join(args[args.len() - 1])).unwrap();
        let same = c1 == 0 && c2 == 0 && o1 == o2 && f1 == f2;
        ok &= same;
        notes.push(format!("{} rerun identical: {same}", args[0]));
    }

    let cache = d.join("cache.jsonl");
    let cache_s = cache.to_str().unwrap();
    let (cold_code, cold_out) = zerosum(d, &["verify-identity", "--cache", cache_s, "--out", "cold.csv"]);
    let lines_cold = std::fs::read_to_string(&cache).unwrap().lines().count();
    let start = Instant::now();
    let (warm_code, warm_out) = zerosum(d, &["verify-identity", "--cache", cache_s, "--out", "warm.csv"]);
    let warm = start.elapsed();
    let lines_warm = std::fs::read_to_string(&cache).unwrap().lines().count();
    let same = std::fs::read(d.join("cold.csv")).unwrap() == std::fs::read(d.join("warm.csv")).unwrap() && cold_out == warm_out;
    let cache_ok = cold_code == 0 && warm_code == 0 && same && lines_cold == lines_warm && lines_cold > 0 && warm < Duration::from_secs(5);
    ok &= cache_ok;
    notes.push(format!("warm identity sweep {warm:.2?}, identical {same}, cache records {lines_cold} -> {lines_warm}"));
    report(9, "determinism and warm cache", ok, &notes.join("; "));
}
