//! Finite abelian groups in invariant-factor form.
//!
//! A group `C_{n_1} ⊕ … ⊕ C_{n_r}` with `n_1 | … | n_r` is stored by its
//! factor chain (factors equal to 1 are dropped, so the trivial group has an
//! empty chain). Elements are identified with their mixed-radix rank, first
//! coordinate most significant, so tuple order and rank order agree.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{invalid, Error, Result};
use crate::snf::smith_normal_form;

/// A group element, identified by its rank in `[0, |G|)`.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Element(u32);

impl Element {
    pub const ZERO: Element = Element(0);

    #[inline]
    pub fn from_rank(rank: usize) -> Self {
        Element(rank as u32)
    }

    #[inline]
    pub fn rank(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Group {
    factors: Vec<u64>,
    order: usize,
}

impl Group {
    /// Builds a group from arbitrary cyclic factors, normalising to the
    /// invariant-factor chain.
    pub fn new(factors: &[i64]) -> Result<Group> {
        if factors.is_empty() {
            return invalid("empty factor list");
        }
        if let Some(f) = factors.iter().find(|&&f| f <= 0) {
            return invalid(format!("group factors must be positive, got {f}"));
        }
        let r = factors.len();
        let diag: Vec<Vec<i128>> = (0..r).map(|i| (0..r).map(|j| if i == j { i128::from(factors[i]) } else { 0 }).collect()).collect();
        let snf = smith_normal_form(&diag);
        let chain: Vec<u64> = snf.diag.iter().filter(|&&d| d > 1).map(|&d| d as u64).collect();
        Ok(Group::from_chain(chain))
    }

    /// Cyclic group `C_n`.
    pub fn cyclic(n: u64) -> Group {
        Group::from_chain(if n > 1 { vec![n] } else { vec![] })
    }

    pub fn trivial() -> Group {
        Group::from_chain(vec![])
    }

    /// Caller guarantees `chain` is a divisibility chain of factors > 1.
    pub(crate) fn from_chain(chain: Vec<u64>) -> Group {
        debug_assert!(chain.iter().all(|&f| f > 1));
        debug_assert!(chain.windows(2).all(|w| w[1] % w[0] == 0));
        let order = chain.iter().product::<u64>() as usize;
        assert!(order <= u32::MAX as usize, "group too large");
        Group { factors: chain, order }
    }

    /// Invariant factors `n_1 | … | n_r`; empty for the trivial group.
    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn rank_count(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn exponent(&self) -> u64 {
        self.factors.last().copied().unwrap_or(1)
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn is_cyclic(&self) -> bool {
        self.factors.len() <= 1
    }

    /// `d*(G) = Σ (n_i − 1)`.
    pub fn d_star(&self) -> u64 {
        self.factors.iter().map(|n| n - 1).sum()
    }

    pub fn zero(&self) -> Element {
        Element::ZERO
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> + Clone {
        (0..self.order).map(Element::from_rank)
    }

    pub fn contains(&self, e: Element) -> bool {
        e.rank() < self.order
    }

    pub fn coords(&self, e: Element) -> Vec<u64> {
        let mut rest = e.rank() as u64;
        let mut out = vec![0; self.factors.len()];
        for (i, &n) in self.factors.iter().enumerate().rev() {
            out[i] = rest % n;
            rest /= n;
        }
        out
    }

    /// Element with the given coordinates, each reduced modulo its factor.
    pub fn element(&self, coords: &[i64]) -> Result<Element> {
        if coords.len() != self.factors.len() {
            return invalid(format!("element has {} coordinates, group {self} needs {}", coords.len(), self.factors.len()));
        }
        let mut rank = 0u64;
        for (&c, &n) in coords.iter().zip(&self.factors) {
            rank = rank * n + c.rem_euclid(n as i64) as u64;
        }
        Ok(Element::from_rank(rank as usize))
    }

    /// Element from a rank, checked against the order.
    pub fn element_at(&self, rank: usize) -> Result<Element> {
        if rank >= self.order {
            return invalid(format!("rank {rank} out of range for {self} (order {})", self.order));
        }
        Ok(Element::from_rank(rank))
    }

    #[inline]
    pub fn add(&self, a: Element, b: Element) -> Element {
        if let [n] = self.factors[..] {
            let s = a.0 as u64 + b.0 as u64;
            return Element((if s >= n { s - n } else { s }) as u32);
        }
        let (mut ra, mut rb) = (a.0 as u64, b.0 as u64);
        let mut out = 0u64;
        let mut stride = 1u64;
        for &n in self.factors.iter().rev() {
            let mut s = ra % n + rb % n;
            if s >= n {
                s -= n;
            }
            out += s * stride;
            stride *= n;
            ra /= n;
            rb /= n;
        }
        Element(out as u32)
    }

    #[inline]
    pub fn neg(&self, a: Element) -> Element {
        self.scale(-1, a)
    }

    #[inline]
    pub fn sub(&self, a: Element, b: Element) -> Element {
        self.add(a, self.neg(b))
    }

    /// `k · a` for any integer `k`.
    pub fn scale(&self, k: i64, a: Element) -> Element {
        let mut ra = a.0 as u64;
        let mut out = 0u64;
        let mut stride = 1u64;
        for &n in self.factors.iter().rev() {
            let km = k.rem_euclid(n as i64) as u64;
            out += (km * (ra % n) % n) * stride;
            stride *= n;
            ra /= n;
        }
        Element(out as u32)
    }

    /// Additive order of `a`.
    pub fn order_of(&self, a: Element) -> u64 {
        let mut ord = 1u64;
        for (c, &n) in self.coords(a).into_iter().zip(&self.factors) {
            let o = n / gcd(c, n);
            ord = lcm(ord, o);
        }
        ord
    }

    /// The generator of the `i`-th cyclic factor.
    pub fn basis_element(&self, i: usize) -> Element {
        let stride: u64 = self.factors[i + 1..].iter().product();
        Element::from_rank(stride as usize)
    }

    /// Canonical spec string, e.g. `C2xC4`; the trivial group is `C1`.
    pub fn spec_string(&self) -> String {
        if self.factors.is_empty() {
            return "C1".to_string();
        }
        self.factors.iter().map(|n| format!("C{n}")).collect::<Vec<_>>().join("x")
    }

    /// Coordinates rendered as `(a,b)`, or the bare residue for cyclic groups.
    pub fn format_element(&self, e: Element) -> String {
        let c = self.coords(e);
        if c.len() == 1 {
            return c[0].to_string();
        }
        format!("({})", c.iter().map(u64::to_string).collect::<Vec<_>>().join(","))
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.spec_string())
    }
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Group({})", self.spec_string())
    }
}

impl FromStr for Group {
    type Err = Error;

    /// Parses `C2`, `c2xC4`, `C3xC3` (case-insensitive, `x` separated).
    fn from_str(s: &str) -> Result<Group> {
        let s = s.trim();
        if s.is_empty() {
            return invalid("empty group spec");
        }
        let mut factors = Vec::new();
        for part in s.split(['x', 'X']) {
            let part = part.trim();
            let digits = part
                .strip_prefix('C')
                .or_else(|| part.strip_prefix('c'))
                .ok_or_else(|| Error::InvalidInput(format!("bad cyclic factor '{part}' in '{s}'")))?;
            let n: i64 = digits.parse().map_err(|_| Error::InvalidInput(format!("bad cyclic factor '{part}' in '{s}'")))?;
            factors.push(n);
        }
        Group::new(&factors)
    }
}

impl Serialize for Group {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.factors.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Group {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let factors: Vec<i64> = Vec::deserialize(deserializer)?;
        if factors.is_empty() {
            return Ok(Group::trivial());
        }
        Group::new(&factors).map_err(serde::de::Error::custom)
    }
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

pub(crate) fn gcd_i64(a: i64, b: i64) -> i64 {
    gcd(a.unsigned_abs(), b.unsigned_abs()) as i64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(spec: &str) -> Group {
        spec.parse().unwrap()
    }

    #[test]
    fn make_group_examples() {
        let c2c4 = Group::new(&[2, 4]).unwrap();
        assert_eq!((c2c4.order(), c2c4.exponent()), (8, 4));
        assert_eq!(Group::new(&[4, 2]).unwrap().factors(), &[2, 4]);
        let t = Group::new(&[1]).unwrap();
        assert_eq!(t.order(), 1);
        assert!(t.is_trivial());
        assert_eq!(Group::new(&[2, 3]).unwrap().factors(), &[6]);
        assert_eq!(Group::new(&[6, 4]).unwrap().factors(), &[2, 12]);
        assert_eq!(Group::new(&[1, 5, 1]).unwrap().factors(), &[5]);
    }

    #[test]
    fn make_group_rejects_bad_factors() {
        assert!(matches!(Group::new(&[0]), Err(Error::InvalidInput(_))));
        assert!(matches!(Group::new(&[3, -2]), Err(Error::InvalidInput(_))));
        assert!(matches!(Group::new(&[]), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn element_arithmetic_examples() {
        let c2c4 = g("C2xC4");
        let a = c2c4.element(&[1, 3]).unwrap();
        let b = c2c4.element(&[1, 2]).unwrap();
        assert_eq!(c2c4.coords(c2c4.add(a, b)), vec![0, 1]);

        let c5 = g("C5");
        let three = c5.element(&[3]).unwrap();
        assert_eq!(c5.coords(c5.scale(-1, three)), vec![2]);

        let c4 = g("C4");
        let one = c4.element(&[1]).unwrap();
        assert_eq!(c4.coords(c4.scale(6, one)), vec![2]);

        assert!(matches!(c2c4.element(&[1]), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn rank_is_a_bijection() {
        let grp = g("C2xC2xC4");
        for e in grp.elements() {
            let c: Vec<i64> = grp.coords(e).into_iter().map(|x| x as i64).collect();
            assert_eq!(grp.element(&c).unwrap(), e);
        }
    }

    #[test]
    fn parse_spec_strings() {
        assert_eq!(g("c2xc4").factors(), &[2, 4]);
        assert_eq!(g("C3xC3").spec_string(), "C3xC3");
        assert_eq!(g("C1").spec_string(), "C1");
        assert_eq!(g("C4xC2").spec_string(), "C2xC4");
        assert!("D4".parse::<Group>().is_err());
        assert!("C0".parse::<Group>().is_err());
        assert!("".parse::<Group>().is_err());
    }

    #[test]
    fn d_star_examples() {
        assert_eq!(g("C2xC4").d_star(), 4);
        assert_eq!(Group::trivial().d_star(), 0);
        assert_eq!(g("C7").d_star(), 6);
    }

    #[test]
    fn element_orders() {
        let grp = g("C2xC4");
        assert_eq!(grp.order_of(grp.element(&[1, 2]).unwrap()), 2);
        assert_eq!(grp.order_of(grp.element(&[1, 1]).unwrap()), 4);
        assert_eq!(grp.order_of(grp.zero()), 1);
    }
}
