//! Weight sets `A ⊂ ℤ`.
//!
//! A weight sequence `W` with `supp(W) = A` and ample multiplicity enters
//! every computation only through `A`, so `W` is never materialised.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{invalid, Error, Result};
use crate::group::{gcd, gcd_i64};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightSet {
    raw: Vec<i64>,
}

impl WeightSet {
    pub fn new(weights: impl IntoIterator<Item = i64>) -> Result<WeightSet> {
        let raw: BTreeSet<i64> = weights.into_iter().collect();
        if raw.is_empty() {
            return invalid("weight set must be nonempty");
        }
        Ok(WeightSet { raw: raw.into_iter().collect() })
    }

    /// `{1}`, the unweighted case.
    pub fn ones() -> WeightSet {
        WeightSet { raw: vec![1] }
    }

    /// Sorted raw integers.
    pub fn raw(&self) -> &[i64] {
        &self.raw
    }

    pub fn len(&self) -> usize {
        self.raw.len()
    }

    pub fn is_empty(&self) -> bool {
        self.raw.is_empty()
    }

    /// The designated `a_0`: minimal absolute value, ties to the positive one.
    pub fn a0(&self) -> i64 {
        *self.raw.iter().min_by_key(|&&a| (a.unsigned_abs(), a < 0)).expect("nonempty")
    }

    /// `gcd(A)`; zero only for `A = {0}`.
    pub fn gcd(&self) -> u64 {
        self.raw.iter().fold(0, |acc, &a| gcd(acc, a.unsigned_abs()))
    }

    /// `gcd(A ∪ {m})`.
    pub fn gcd_with(&self, m: u64) -> u64 {
        gcd(self.gcd(), m)
    }

    /// `d = gcd((A − a_0) ∪ {m})` for the designated `a_0`.
    pub fn d(&self, m: u64) -> u64 {
        self.d_with_base(m, self.a0())
    }

    /// `gcd((A − a) ∪ {m})` for an arbitrary base point `a ∈ A`.
    pub fn d_with_base(&self, m: u64, base: i64) -> u64 {
        self.raw.iter().fold(m as i64, |acc, &a| gcd_i64(acc, a - base)) as u64
    }

    /// Residues of `A` modulo `m`, deduplicated and sorted.
    pub fn reduced(&self, m: u64) -> Vec<i64> {
        let set: BTreeSet<i64> = self.raw.iter().map(|a| a.rem_euclid(m as i64)).collect();
        set.into_iter().collect()
    }

    /// `A` with every element reduced into `[0, m)`.
    pub fn reduced_set(&self, m: u64) -> WeightSet {
        WeightSet { raw: self.reduced(m) }
    }

    /// `A / d'` for a common divisor `d'` of every weight.
    pub fn divided_by(&self, d: i64) -> Result<WeightSet> {
        if d == 0 || self.raw.iter().any(|a| a % d != 0) {
            return invalid(format!("{d} does not divide every weight of {self}"));
        }
        WeightSet::new(self.raw.iter().map(|a| a / d))
    }

    /// Serialised form: sorted raw integers, comma separated.
    pub fn canonical_string(&self) -> String {
        self.raw.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
    }
}

impl fmt::Display for WeightSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.canonical_string())
    }
}

impl fmt::Debug for WeightSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeightSet{self}")
    }
}

impl FromStr for WeightSet {
    type Err = Error;

    /// Parses `1,-1` or `1,2,3` (braces optional).
    fn from_str(s: &str) -> Result<WeightSet> {
        let body = s.trim().trim_start_matches('{').trim_end_matches('}');
        let weights = body
            .split(',')
            .map(str::trim)
            .filter(|p| !p.is_empty())
            .map(|p| p.parse::<i64>().map_err(|_| Error::InvalidInput(format!("bad weight '{p}' in '{s}'"))))
            .collect::<Result<Vec<_>>>()?;
        WeightSet::new(weights)
    }
}

impl Serialize for WeightSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.raw.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for WeightSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw: Vec<i64> = Vec::deserialize(deserializer)?;
        WeightSet::new(raw).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a0_choice() {
        assert_eq!("1,-1".parse::<WeightSet>().unwrap().a0(), 1);
        assert_eq!("-2,3,5".parse::<WeightSet>().unwrap().a0(), -2);
        assert_eq!("2,3".parse::<WeightSet>().unwrap().a0(), 2);
        assert_eq!("0,4".parse::<WeightSet>().unwrap().a0(), 0);
    }

    #[test]
    fn derived_quantities() {
        let a: WeightSet = "1,3".parse().unwrap();
        assert_eq!(a.gcd(), 1);
        assert_eq!(a.d(4), 2);
        assert_eq!(a.reduced(4), vec![1, 3]);
        let b: WeightSet = "1,-1".parse().unwrap();
        assert_eq!(b.reduced(5), vec![1, 4]);
        assert_eq!(b.d(5), 1);
        assert_eq!(b.d(4), 2);
        assert_eq!(WeightSet::ones().d(6), 6);
        let c: WeightSet = "4,6".parse().unwrap();
        assert_eq!(c.gcd(), 2);
        assert_eq!(c.divided_by(2).unwrap().raw(), &[2, 3]);
        assert!(c.divided_by(4).is_err());
    }

    #[test]
    fn d_is_independent_of_base_point() {
        for lit in ["1,3", "1,-1", "2,3,7", "5", "0,6,9"] {
            let a: WeightSet = lit.parse().unwrap();
            for m in 1..=12 {
                let d = a.d(m);
                assert_eq!(m % d, 0);
                for &base in a.raw() {
                    assert_eq!(a.d_with_base(m, base), d, "A = {a}, m = {m}, base = {base}");
                }
            }
        }
    }

    #[test]
    fn parse_errors() {
        assert!("".parse::<WeightSet>().is_err());
        assert!("1,x".parse::<WeightSet>().is_err());
        assert_eq!("{3, 1, 3}".parse::<WeightSet>().unwrap().canonical_string(), "1,3");
    }
}
