//! The `E_A(G) = |G| + D_A(G) - 1` sweep.

use std::fmt;
use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;
use zerosum::{Error, Group, InvariantKind, InvariantTable, SearchOptions, WeightSet};

use crate::exit::{CliError, CliResult, Status};

/// An exact value or the bracket left by an exhausted budget.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Value {
    Exact(u64),
    Bounds(u64, u64),
}

impl Value {
    fn range(self) -> (u64, u64) {
        match self {
            Value::Exact(v) => (v, v),
            Value::Bounds(lo, hi) => (lo, hi),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Exact(v) => write!(f, "{v}"),
            Value::Bounds(lo, hi) => write!(f, "{lo}..{hi}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RowStatus {
    Ok,
    Mismatch,
    BoundsOnly,
}

impl fmt::Display for RowStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RowStatus::Ok => "OK",
            RowStatus::Mismatch => "MISMATCH",
            RowStatus::BoundsOnly => "bounds-only",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityRow {
    pub group: Group,
    pub weights: WeightSet,
    pub order: usize,
    pub davenport: Value,
    pub egz: Value,
    pub predicted: Value,
    pub status: RowStatus,
}

impl IdentityRow {
    pub fn exit_status(&self) -> Status {
        match self.status {
            RowStatus::Ok => Status::Ok,
            RowStatus::Mismatch => Status::Violation,
            RowStatus::BoundsOnly => Status::ResourceLimit,
        }
    }
}

fn value_of(table: &InvariantTable, kind: InvariantKind, group: &Group, weights: &WeightSet, opts: &SearchOptions) -> CliResult<Value> {
    match table.get_or_compute(kind, group, weights, None, opts) {
        Ok(r) => Ok(Value::Exact(r.value)),
        Err(Error::ResourceLimit { bounds: Some((lo, hi)), .. }) => Ok(Value::Bounds(lo, hi)),
        Err(e) => Err(CliError::Core(e)),
    }
}

pub fn check_pair(table: &InvariantTable, group: &Group, weights: &WeightSet, opts: &SearchOptions) -> CliResult<IdentityRow> {
    let order = group.order() as u64;
    let davenport = value_of(table, InvariantKind::DavenportWeighted, group, weights, opts)?;
    let egz = value_of(table, InvariantKind::EgzWeighted, group, weights, opts)?;
    let (dlo, dhi) = davenport.range();
    let predicted = match davenport {
        Value::Exact(d) => Value::Exact(order + d - 1),
        Value::Bounds(..) => Value::Bounds(order + dlo - 1, order + dhi - 1),
    };
    let (plo, phi) = predicted.range();
    let (elo, ehi) = egz.range();
    let status = if ehi < plo || phi < elo {
        RowStatus::Mismatch
    } else if let (Value::Exact(p), Value::Exact(e)) = (predicted, egz) {
        if p == e {
            RowStatus::Ok
        } else {
            RowStatus::Mismatch
        }
    } else {
        RowStatus::BoundsOnly
    };
    Ok(IdentityRow { group: group.clone(), weights: weights.clone(), order: group.order(), davenport, egz, predicted, status })
}

/// Checks every pair in parallel; rows come back in input order.
pub fn sweep(pairs: &[(Group, WeightSet)], table: &InvariantTable, opts: &SearchOptions) -> CliResult<Vec<IdentityRow>> {
    pairs.par_iter().map(|(g, w)| check_pair(table, g, w, opts)).collect()
}

const HEADER: [&str; 7] = ["group", "weights", "order", "D_A", "E_A", "order+D_A-1", "status"];

fn cells(r: &IdentityRow) -> [String; 7] {
    [
        r.group.spec_string(),
        r.weights.to_string(),
        r.order.to_string(),
        r.davenport.to_string(),
        r.egz.to_string(),
        r.predicted.to_string(),
        r.status.to_string(),
    ]
}

pub fn write_csv(rows: &[IdentityRow], out: impl Write) -> CliResult<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(HEADER)?;
    for r in rows {
        w.write_record(cells(r))?;
    }
    w.flush().map_err(|e| CliError::io("csv output", e))?;
    Ok(())
}

pub fn write_table(rows: &[IdentityRow], out: &mut dyn Write) -> std::io::Result<()> {
    let body: Vec<[String; 7]> = rows.iter().map(cells).collect();
    let mut widths: Vec<usize> = HEADER.iter().map(|h| h.len()).collect();
    for row in &body {
        for (w, c) in widths.iter_mut().zip(row) {
            *w = (*w).max(c.len());
        }
    }
    let line = |cols: Vec<&str>| -> String {
        cols.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect::<Vec<_>>().join("  ").trim_end().to_string()
    };
    writeln!(out, "{}", line(HEADER.to_vec()))?;
    for row in &body {
        writeln!(out, "{}", line(row.iter().map(String::as_str).collect()))?;
    }
    Ok(())
}
