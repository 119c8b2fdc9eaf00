//! Decomposition-witness sweeps over instance families.

use std::collections::BTreeMap;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use zerosum::sums::sigma_exact_n;
use zerosum::theorem::{
    check_multiplicity_consequence, find_decomposition, multiplicity_hypothesis, verify_corollary_nonempty, verify_corollary_structure,
    verify_witness, InstanceRecord, Setting,
};
use zerosum::{Budget, Element, Error, Group, GroupSequence, Lab, TheoremInstance, WeightSet};

use crate::exit::{CliError, CliResult, Status};

/// A setting plus the weights and `n` of one family.
#[derive(Clone, Debug)]
pub struct Family {
    pub setting: Setting,
    pub glue: Option<u64>,
    pub weights: WeightSet,
    pub n: usize,
}

impl Family {
    pub fn plain(group: &Group, weights: &WeightSet, n: Option<usize>) -> Family {
        Family { setting: Setting::plain(group), glue: None, weights: weights.clone(), n: n.unwrap_or(group.order()) }
    }

    fn is_plain(&self) -> bool {
        let s = &self.setting;
        s.g.is_whole() && s.gamma == s.g0.zero() && s.delta == s.g0.zero()
    }
}

/// Per-family counters.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct FamilyReport {
    pub g0: String,
    pub g: String,
    pub glue: Option<u64>,
    pub weights: String,
    pub n: usize,
    pub instances: usize,
    pub witnesses: usize,
    pub failures: usize,
    pub resource_limited: usize,
    /// Witness `|H|` → count.
    pub witness_h_orders: BTreeMap<usize, usize>,
    /// Instances whose `Σ_n` is a full coset of `G`.
    pub sigma_full: usize,
    pub multiplicity_hypothesis: usize,
    pub multiplicity_consequence: usize,
    pub corollary_checks: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    pub mode: String,
    pub seed: u64,
    pub families: Vec<FamilyReport>,
    pub instances: usize,
    pub failures: usize,
    pub resource_limited: usize,
}

impl SweepReport {
    pub fn status(&self) -> Status {
        if self.failures > 0 {
            Status::Violation
        } else if self.resource_limited > 0 {
            Status::ResourceLimit
        } else {
            Status::Ok
        }
    }
}

/// One line of a replay file.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Failure {
    pub instance: InstanceRecord,
    pub reason: String,
}

enum Outcome {
    Pass { h_order: usize, sigma_full: bool, hyp: bool, corollaries: bool },
    Limited,
    Fail(String),
}

fn check(inst: &TheoremInstance, plain: bool, lab: &Lab, budget: Budget) -> Result<Outcome, Error> {
    inst.validate(lab)?;
    let w = match find_decomposition(inst, lab, budget) {
        Ok(w) => w,
        Err(Error::ResourceLimit { .. }) => return Ok(Outcome::Limited),
        Err(Error::TheoremViolation(m)) => return Ok(Outcome::Fail(m)),
        Err(e) => return Err(e),
    };
    let checks = verify_witness(inst, &w, lab)?;
    if !checks.all() {
        return Ok(Outcome::Fail(format!("witness fails {:?}: {}", checks.failed(), w.to_json())));
    }
    if !check_multiplicity_consequence(inst, &w)? {
        return Ok(Outcome::Fail(format!("multiplicity consequence fails: {}", w.to_json())));
    }
    let big = sigma_exact_n(&inst.weights, &inst.seq, inst.n)?;
    let mut corollaries = false;
    if plain {
        let g = &inst.g0;
        if !verify_corollary_nonempty(g, &inst.weights, inst.n, &inst.seq, lab)? {
            return Ok(Outcome::Fail("n·G ∩ Σ_n(S) is empty".into()));
        }
        match verify_corollary_structure(g, &inst.weights, inst.n, &inst.seq, lab) {
            Ok(_) => {}
            Err(Error::TheoremViolation(m)) => return Ok(Outcome::Fail(m)),
            Err(e) => return Err(e),
        }
        corollaries = true;
    }
    Ok(Outcome::Pass { h_order: w.h.order(), sigma_full: big.len() == inst.g.order(), hyp: multiplicity_hypothesis(inst), corollaries })
}

fn random_instances(family: &Family, lab: &Lab, trials: usize, rng: &mut ChaCha8Rng) -> CliResult<Vec<TheoremInstance>> {
    let s = &family.setting;
    let da = lab.davenport(&s.g.isomorphism_type(), &family.weights)? as usize;
    let len = family.n + da - 1;
    let members: Vec<Element> = s.g.elements().iter().collect();
    Ok((0..trials)
        .map(|_| {
            let terms = (0..len).map(|_| s.g0.add(s.gamma, *members.choose(rng).expect("nonempty")));
            TheoremInstance {
                g0: s.g0.clone(),
                g: s.g.clone(),
                gamma: s.gamma,
                delta: s.delta,
                n: family.n,
                weights: family.weights.clone(),
                seq: GroupSequence::from_terms(&s.g0, terms),
            }
        })
        .collect())
}

/// Runs one family; failing instances are pushed onto `failures`.
pub fn run_family(
    family: &Family,
    instances: &[TheoremInstance],
    lab: &Lab,
    budget: Budget,
    failures: &mut Vec<Failure>,
) -> CliResult<FamilyReport> {
    let outcomes: Vec<Result<Outcome, Error>> = instances.par_iter().map(|inst| check(inst, family.is_plain(), lab, budget)).collect();
    let mut rep = FamilyReport {
        g0: family.setting.g0.spec_string(),
        g: family.setting.g.isomorphism_type().spec_string(),
        glue: family.glue,
        weights: family.weights.to_string(),
        n: family.n,
        instances: instances.len(),
        ..Default::default()
    };
    for (inst, out) in instances.iter().zip(outcomes) {
        match out? {
            Outcome::Pass { h_order, sigma_full, hyp, corollaries } => {
                rep.witnesses += 1;
                *rep.witness_h_orders.entry(h_order).or_default() += 1;
                rep.sigma_full += sigma_full as usize;
                if hyp {
                    rep.multiplicity_hypothesis += 1;
                    rep.multiplicity_consequence += 1;
                }
                rep.corollary_checks += corollaries as usize;
            }
            Outcome::Limited => rep.resource_limited += 1,
            Outcome::Fail(reason) => {
                rep.failures += 1;
                failures.push(Failure { instance: inst.to_record(), reason });
            }
        }
    }
    Ok(rep)
}

pub enum Mode {
    Exhaustive,
    Sampled { trials: usize, seed: u64 },
}

pub fn sweep(families: &[Family], mode: &Mode, lab: &Lab, budget: Budget) -> CliResult<(SweepReport, Vec<Failure>)> {
    let mut failures = Vec::new();
    let mut reports = Vec::new();
    for (i, fam) in families.iter().enumerate() {
        let instances = match mode {
            Mode::Exhaustive => fam.setting.exhaustive_instances(&fam.weights, fam.n, lab, true)?,
            Mode::Sampled { trials, seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                rng.set_stream(i as u64);
                random_instances(fam, lab, *trials, &mut rng)?
            }
        };
        reports.push(run_family(fam, &instances, lab, budget, &mut failures)?);
    }
    let (mode, seed) = match mode {
        Mode::Exhaustive => ("exhaustive", 0),
        Mode::Sampled { seed, .. } => ("sampled", *seed),
    };
    Ok((summarize(mode, seed, reports), failures))
}

fn summarize(mode: &str, seed: u64, families: Vec<FamilyReport>) -> SweepReport {
    SweepReport {
        mode: mode.to_string(),
        seed,
        instances: families.iter().map(|f| f.instances).sum(),
        failures: families.iter().map(|f| f.failures).sum(),
        resource_limited: families.iter().map(|f| f.resource_limited).sum(),
        families,
    }
}

/// Reruns every instance of a replay file, one family per line.
pub fn replay(path: &Path, lab: &Lab, budget: Budget) -> CliResult<(SweepReport, Vec<Failure>)> {
    let file = std::fs::File::open(path).map_err(|e| CliError::io(path.display(), e))?;
    let mut failures = Vec::new();
    let mut reports = Vec::new();
    for line in BufReader::new(file).lines() {
        let line = line.map_err(|e| CliError::io(path.display(), e))?;
        if line.trim().is_empty() {
            continue;
        }
        let rec = match serde_json::from_str::<Failure>(&line) {
            Ok(f) => f.instance,
            Err(_) => serde_json::from_str::<InstanceRecord>(&line)?,
        };
        let inst = TheoremInstance::from_record(&rec)?;
        let family = Family {
            setting: Setting { g0: inst.g0.clone(), g: inst.g.clone(), gamma: inst.gamma, delta: inst.delta },
            glue: None,
            weights: inst.weights.clone(),
            n: inst.n,
        };
        reports.push(run_family(&family, &[inst], lab, budget, &mut failures)?);
    }
    Ok((summarize("replay", 0, reports), failures))
}

pub fn write_failures(path: &Path, failures: &[Failure]) -> CliResult<()> {
    let mut buf = String::new();
    for f in failures {
        buf.push_str(&serde_json::to_string(f)?);
        buf.push('\n');
    }
    std::fs::write(path, buf).map_err(|e| CliError::io(path.display(), e))
}

pub fn write_summary(rep: &SweepReport, out: &mut dyn Write) -> std::io::Result<()> {
    writeln!(
        out,
        "{:<10} {:<8} {:<10} {:>3} {:>9} {:>9} {:>6}  |H| distribution",
        "G0", "G", "A", "n", "instances", "witnesses", "failed"
    )?;
    for f in &rep.families {
        let dist = f.witness_h_orders.iter().map(|(h, c)| format!("{h}:{c}")).collect::<Vec<_>>().join(" ");
        writeln!(
            out,
            "{:<10} {:<8} {:<10} {:>3} {:>9} {:>9} {:>6}  {dist}",
            f.g0, f.g, f.weights, f.n, f.instances, f.witnesses, f.failures
        )?;
    }
    writeln!(out, "total: {} instances, {} failures, {} resource-limited", rep.instances, rep.failures, rep.resource_limited)
}
