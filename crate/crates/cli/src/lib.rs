//! Command-line harness for `zerosum`: invariant computation, identity and
//! theorem sweeps, lemma suites, and a JSON-lines result cache.
//!
//! Exit codes: 0 ok, 1 I/O or internal error, 2 usage error, 3 invalid input,
//! 4 resource limit (bounds only), 5 mismatch or violation.

pub mod args;
pub mod cache;
pub mod catalog;
pub mod exit;
pub mod identity;
pub mod suites;
pub mod sweep;

use std::ffi::OsString;
use std::io::Write;
use std::path::Path;
use std::time::Duration;

use clap::Parser;
use zerosum::{Budget, Group, GroupSequence, InvariantKind, InvariantTable, Lab, LemmaId, SearchOptions, WeightSet};

use args::{CacheAction, Cli, Command, ComputeArgs, GlobalArgs, IdentityArgs, LemmaArgs, SweepArgs};
use cache::Cache;
pub use exit::{CliError, CliResult, Status};

/// Parses `args` and runs the command, writing reports to `out`.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { Status::Usage.code() } else { Status::Ok.code() };
        }
    };
    match run(&cli, out) {
        Ok(status) => status.code(),
        Err(e) => {
            eprintln!("error: {e}");
            e.status().code()
        }
    }
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> CliResult<Status> {
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(w) = cli.global.workers {
        if w == 0 {
            return Err(CliError::Usage("--workers must be at least 1".into()));
        }
        pool = pool.num_threads(w);
    }
    let pool = pool.build().map_err(|e| CliError::Usage(format!("worker pool: {e}")))?;
    let mut buf: Vec<u8> = Vec::new();
    let status = pool.install(|| dispatch(cli, &mut buf));
    out.write_all(&buf).map_err(io)?;
    out.flush().map_err(io)?;
    status
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> CliResult<Status> {
    let g = &cli.global;
    match &cli.command {
        Command::Compute(a) => compute(g, a, out),
        Command::VerifyIdentity(a) => verify_identity(g, a, out),
        Command::TheoremSweep(a) => theorem_sweep(g, a, out),
        Command::LemmaSuite(a) => lemma_suite(g, a, out),
        Command::Cache { action } => cache_command(g, action, out),
    }
}

pub fn search_options(g: &GlobalArgs) -> CliResult<SearchOptions> {
    let mut budget = Budget::UNLIMITED;
    budget.max_nodes = g.budget_nodes;
    if let Some(s) = g.budget_seconds {
        if !(s.is_finite() && s >= 0.0) {
            return Err(CliError::Usage(format!("--budget-seconds must be a nonnegative number, got {s}")));
        }
        budget.max_time = Some(Duration::from_secs_f64(s));
    }
    Ok(SearchOptions::with_budget(budget))
}

fn io(e: std::io::Error) -> CliError {
    CliError::io("output", e)
}

/// Opens the cache (if any) and preloads its records into `table`.
fn open_cache(g: &GlobalArgs, table: &InvariantTable) -> CliResult<Option<Cache>> {
    let Some(path) = &g.cache else { return Ok(None) };
    let (cache, loaded) = Cache::open(path)?;
    for (line, why) in &loaded.rejected {
        eprintln!("warning: {}:{line}: skipped cache record: {why}", path.display());
    }
    for (_, r) in loaded.records {
        table.insert(r);
    }
    Ok(Some(cache))
}

fn flush_cache(cache: Option<Cache>, table: &InvariantTable) -> CliResult<()> {
    if let Some(mut c) = cache {
        c.append_new(table)?;
    }
    Ok(())
}

/// Terms as a bracketed list, elements in coordinate form.
pub fn format_sequence(seq: &GroupSequence) -> String {
    let g = seq.group();
    format!("[{}]", seq.terms().map(|e| g.format_element(e)).collect::<Vec<_>>().join(","))
}

fn compute(g: &GlobalArgs, a: &ComputeArgs, out: &mut dyn Write) -> CliResult<Status> {
    let opts = search_options(g)?;
    let table = InvariantTable::new();
    let cache = open_cache(g, &table)?;
    let weights = if a.kind == InvariantKind::DavenportClassical { WeightSet::ones() } else { a.weights.clone() };
    if a.n.is_some() && a.kind != InvariantKind::EgzWeighted {
        return Err(CliError::Usage("--n only applies to egz".into()));
    }
    let n = match a.kind {
        InvariantKind::EgzWeighted => Some(a.n.unwrap_or(a.group.order())),
        _ => None,
    };
    let hit = table.get(a.kind, &a.group, &weights, n).is_some();
    let result = table.get_or_compute(a.kind, &a.group, &weights, n, &opts);
    flush_cache(cache, &table)?;
    let r = match result {
        Ok(r) => r,
        Err(zerosum::Error::ResourceLimit { what, bounds }) => {
            writeln!(out, "kind         {}", a.kind).map_err(io)?;
            writeln!(out, "group        {}", a.group).map_err(io)?;
            writeln!(out, "weights      {weights}").map_err(io)?;
            match bounds {
                Some((lo, hi)) => writeln!(out, "value        {lo}..{hi} (bounds only)").map_err(io)?,
                None => writeln!(out, "value        unknown").map_err(io)?,
            }
            eprintln!("resource limit reached: {what}");
            return Ok(Status::ResourceLimit);
        }
        Err(e) => return Err(e.into()),
    };
    let mut lines = vec![format!("kind         {}", r.kind), format!("group        {}", r.group), format!("weights      {}", r.weights)];
    if let Some(n) = r.n {
        lines.push(format!("n            {n}"));
    }
    lines.push(format!("value        {}", r.value));
    lines.push(format!("certificate  {}", format_sequence(&r.certificate)));
    lines.push(format!("nodes        {}", r.stats.nodes));
    lines.push(format!("source       {}", if hit { "cache" } else { "search" }));
    for l in lines {
        writeln!(out, "{l}").map_err(io)?;
    }
    Ok(Status::Ok)
}

/// `(G, A)` pairs for an identity sweep.
pub fn identity_pairs(a: &IdentityArgs) -> Vec<(Group, WeightSet)> {
    let groups = if a.groups.is_empty() { catalog::catalog_groups(a.max_order) } else { a.groups.clone() };
    let mut pairs = Vec::new();
    for grp in groups {
        let sets =
            if a.weights.is_empty() { catalog::catalog_weight_sets(&grp) } else { catalog::dedup_by_residues(&grp, a.weights.clone()) };
        pairs.extend(sets.into_iter().map(|w| (grp.clone(), w)));
    }
    pairs
}

fn verify_identity(g: &GlobalArgs, a: &IdentityArgs, out: &mut dyn Write) -> CliResult<Status> {
    let opts = search_options(g)?;
    let table = InvariantTable::new();
    let cache = open_cache(g, &table)?;
    let pairs = identity_pairs(a);
    let rows = identity::sweep(&pairs, &table, &opts);
    flush_cache(cache, &table)?;
    let rows = rows?;
    identity::write_table(&rows, out).map_err(io)?;
    if let Some(path) = &g.out {
        let file = std::fs::File::create(path).map_err(|e| CliError::io(path.display(), e))?;
        identity::write_csv(&rows, file)?;
    }
    Ok(rows.iter().map(|r| r.exit_status()).fold(Status::Ok, Status::worst))
}

/// Families for a theorem sweep, in report order.
pub fn sweep_families(a: &SweepArgs) -> CliResult<Vec<sweep::Family>> {
    let groups = if a.groups.is_empty() { catalog::abelian_groups(a.max_order) } else { a.groups.clone() };
    let weights: Vec<WeightSet> =
        if a.weights.is_empty() { ["1", "1,-1", "1,2"].iter().map(|s| s.parse().expect("literal")).collect() } else { a.weights.clone() };
    let mut out = Vec::new();
    for grp in &groups {
        for w in catalog::dedup_by_residues(grp, weights.clone()) {
            out.push(sweep::Family::plain(grp, &w, a.n));
            for &k in &a.glue {
                let Some(setting) = zerosum::theorem::Setting::glued(grp, &w, k) else { continue };
                let n = a.n.unwrap_or(setting.g.order());
                out.push(sweep::Family { setting, glue: Some(k), weights: w.clone(), n });
            }
        }
    }
    Ok(out)
}

fn theorem_sweep(g: &GlobalArgs, a: &SweepArgs, out: &mut dyn Write) -> CliResult<Status> {
    let opts = search_options(g)?;
    let lab = Lab::new(opts);
    let cache = open_cache(g, lab.table())?;
    let result = match &a.replay {
        Some(path) => sweep::replay(path, &lab, opts.budget),
        None => {
            let mode = if a.exhaustive { sweep::Mode::Exhaustive } else { sweep::Mode::Sampled { trials: a.trials, seed: g.seed } };
            sweep::sweep(&sweep_families(a)?, &mode, &lab, opts.budget)
        }
    };
    flush_cache(cache, lab.table())?;
    let (report, failures) = result?;
    sweep::write_summary(&report, out).map_err(io)?;
    if let Some(path) = &g.out {
        write_json(path, &report)?;
    }
    if !failures.is_empty() {
        sweep::write_failures(&a.failures, &failures)?;
        writeln!(out, "replay file: {}", a.failures.display()).map_err(io)?;
    }
    Ok(report.status())
}

fn write_json<T: serde::Serialize>(path: &Path, value: &T) -> CliResult<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    std::fs::write(path, text).map_err(|e| CliError::io(path.display(), e))
}

fn lemma_suite(g: &GlobalArgs, a: &LemmaArgs, out: &mut dyn Write) -> CliResult<Status> {
    let lab = Lab::new(search_options(g)?);
    let cache = open_cache(g, lab.table())?;
    let lemmas: Vec<LemmaId> = match a.lemma {
        Some(l) => vec![l],
        None => LemmaId::ALL.to_vec(),
    };
    let mut reports = Vec::new();
    let mut status = Status::Ok;
    for l in lemmas {
        let trials = a.trials.unwrap_or_else(|| suites::default_trials(l));
        let rep = suites::run_suite(l, trials, g.seed, &lab);
        let verdict = if !rep.violations.is_empty() {
            status = status.worst(Status::Violation);
            "VIOLATION"
        } else if !rep.errors.is_empty() {
            status = status.worst(Status::Internal);
            "ERROR"
        } else {
            "ok"
        };
        writeln!(out, "{:<20} fixed {}/{}  random {}/{}  {verdict}", rep.lemma, rep.fixed_passed, rep.fixed, rep.passed, rep.trials)
            .map_err(io)?;
        for e in &rep.errors {
            eprintln!("{}: {e}", rep.lemma);
        }
        reports.push(rep);
    }
    flush_cache(cache, lab.table())?;
    if let Some(path) = &g.out {
        write_json(path, &serde_json::json!({ "seed": g.seed, "suites": reports }))?;
    }
    Ok(status)
}

fn cache_command(g: &GlobalArgs, action: &CacheAction, out: &mut dyn Write) -> CliResult<Status> {
    let Some(path) = &g.cache else {
        return Err(CliError::Usage("cache commands need --cache PATH (or ZS_CACHE)".into()));
    };
    match action {
        CacheAction::List => {
            let loaded = cache::read(path)?;
            for (rec, _) in &loaded.records {
                let n = rec.n.map(|n| format!(" n={n}")).unwrap_or_default();
                writeln!(out, "{} {} {{{}}}{n} = {}", rec.kind, rec.group, rec.weights, rec.value).map_err(io)?;
            }
            Ok(Status::Ok)
        }
        CacheAction::Validate => {
            let loaded = cache::read(path)?;
            for (line, why) in &loaded.rejected {
                writeln!(out, "line {line}: {why}").map_err(io)?;
            }
            writeln!(out, "{} valid, {} rejected", loaded.records.len(), loaded.rejected.len()).map_err(io)?;
            Ok(if loaded.rejected.is_empty() { Status::Ok } else { Status::Internal })
        }
        CacheAction::Clear => {
            let removed = cache::clear(path)?;
            writeln!(out, "{}", if removed { "cache cleared" } else { "no cache file" }).map_err(io)?;
            Ok(Status::Ok)
        }
    }
}
