//! JSON-lines result cache.
//!
//! One record per line with a fixed field order. Certificates are re-checked
//! on load and records that fail are skipped.

use std::collections::HashSet;
use std::fs::{self, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use zerosum::{Group, GroupSequence, InvariantKind, InvariantResult, InvariantTable, SearchStats, WeightSet};

use crate::exit::{CliError, CliResult};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheRecord {
    pub kind: InvariantKind,
    pub group: String,
    pub weights: String,
    pub n: Option<usize>,
    pub value: u64,
    pub certificate: String,
    pub nodes: u64,
    pub tool_version: String,
    pub timestamp: u64,
}

type Key = (InvariantKind, String, String, Option<usize>);

impl CacheRecord {
    pub fn from_result(r: &InvariantResult, timestamp: u64) -> CacheRecord {
        CacheRecord {
            kind: r.kind,
            group: r.group.spec_string(),
            weights: r.weights.canonical_string(),
            n: r.n,
            value: r.value,
            certificate: r.certificate.canonical_string(),
            nodes: r.stats.nodes,
            tool_version: TOOL_VERSION.to_string(),
            timestamp,
        }
    }

    fn key(&self) -> Key {
        (self.kind, self.group.clone(), self.weights.clone(), self.n)
    }

    /// Rebuilds the result and re-checks its certificate.
    pub fn to_result(&self) -> Result<InvariantResult, String> {
        let group: Group = self.group.parse().map_err(|e| format!("{e}"))?;
        let weights: WeightSet = self.weights.parse().map_err(|e| format!("{e}"))?;
        let certificate = GroupSequence::from_canonical_string(&group, &self.certificate).map_err(|e| format!("{e}"))?;
        let n_ok = match self.kind {
            InvariantKind::EgzWeighted => self.n.is_some(),
            _ => self.n.is_none(),
        };
        if !n_ok {
            return Err(format!("n = {:?} does not fit kind {}", self.n, self.kind));
        }
        let result = InvariantResult {
            group,
            weights,
            kind: self.kind,
            n: self.n,
            value: self.value,
            certificate,
            stats: SearchStats { nodes: self.nodes, ..Default::default() },
        };
        if !result.certificate_is_valid() {
            return Err("certificate does not avoid the event or has the wrong length".into());
        }
        Ok(result)
    }
}

fn key_of(r: &InvariantResult) -> Key {
    (r.kind, r.group.spec_string(), r.weights.canonical_string(), r.n)
}

/// Outcome of reading a cache file.
#[derive(Debug, Default)]
pub struct Loaded {
    pub records: Vec<(CacheRecord, InvariantResult)>,
    /// `(line number, reason)` for skipped lines.
    pub rejected: Vec<(usize, String)>,
}

pub struct Cache {
    path: PathBuf,
    known: HashSet<Key>,
}

impl Cache {
    /// Reads `path` if it exists; a missing file is an empty cache.
    pub fn open(path: &Path) -> CliResult<(Cache, Loaded)> {
        let loaded = read(path)?;
        let known = loaded.records.iter().map(|(r, _)| r.key()).collect();
        Ok((Cache { path: path.to_path_buf(), known }, loaded))
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    /// Appends every table entry not yet on disk, in table order.
    pub fn append_new(&mut self, table: &InvariantTable) -> CliResult<usize> {
        let fresh: Vec<InvariantResult> = table.entries().into_iter().filter(|r| !self.known.contains(&key_of(r))).collect();
        if fresh.is_empty() {
            return Ok(0);
        }
        let ts = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
        let mut file = OpenOptions::new().create(true).append(true).open(&self.path).map_err(|e| CliError::io(self.path.display(), e))?;
        let mut buf = String::new();
        for r in &fresh {
            buf.push_str(&serde_json::to_string(&CacheRecord::from_result(r, ts))?);
            buf.push('\n');
            self.known.insert(key_of(r));
        }
        file.write_all(buf.as_bytes()).map_err(|e| CliError::io(self.path.display(), e))?;
        Ok(fresh.len())
    }
}

pub fn read(path: &Path) -> CliResult<Loaded> {
    let mut out = Loaded::default();
    let file = match fs::File::open(path) {
        Ok(f) => f,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(out),
        Err(e) => return Err(CliError::io(path.display(), e)),
    };
    let mut seen = HashSet::new();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|e| CliError::io(path.display(), e))?;
        if line.trim().is_empty() {
            continue;
        }
        let rec: CacheRecord = match serde_json::from_str(&line) {
            Ok(r) => r,
            Err(e) => {
                out.rejected.push((i + 1, format!("unparsable record: {e}")));
                continue;
            }
        };
        match rec.to_result() {
            Ok(res) => {
                if seen.insert(rec.key()) {
                    out.records.push((rec, res));
                }
            }
            Err(why) => out.rejected.push((i + 1, why)),
        }
    }
    Ok(out)
}

pub fn clear(path: &Path) -> CliResult<bool> {
    match fs::remove_file(path) {
        Ok(()) => Ok(true),
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(false),
        Err(e) => Err(CliError::io(path.display(), e)),
    }
}
