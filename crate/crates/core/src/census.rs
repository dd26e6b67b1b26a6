//! Face censuses and the feasibility test.
//!
//! A census records, for each `k >= 1`, how many pieces of the dissected
//! sphere have exactly `k` boundary circuits. A piece with `k` boundary
//! circuits is a planar surface of Euler characteristic `2 - k`, so the
//! weighted sum `sum (2 - k) * a_k` is the Euler characteristic of the
//! complement of the multiplicity graph. That sum must equal `2 + 6n` where
//! `2n` is the number of triple points, and when `n = 0` the number of
//! pieces must be odd.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Largest count a census entry may hold.
pub const MAX_COUNT: u64 = i64::MAX as u64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CensusError {
    #[error("invalid census text {text:?}: {reason}")]
    Parse { text: String, reason: String },
    #[error("boundary index must be at least 1")]
    ZeroIndex,
    #[error("count a_{k} would become negative")]
    NegativeCount { k: usize },
    #[error("count overflow at a_{k}")]
    Overflow { k: usize },
}

/// Sparse sequence `a_1, a_2, ...` of piece counts. Zero entries are never
/// stored, so structural equality is census equality.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Census {
    entries: BTreeMap<usize, u64>,
}

/// Signed per-index change to a census.
pub type CensusDelta = BTreeMap<usize, i64>;

impl Census {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a census from `(k, a_k)` pairs. Repeated indices accumulate.
    pub fn from_pairs<I>(pairs: I) -> Result<Self, CensusError>
    where
        I: IntoIterator<Item = (usize, u64)>,
    {
        let mut census = Census::new();
        for (k, count) in pairs {
            census = census.add(k, count)?;
        }
        Ok(census)
    }

    /// Builds a census from dense counts, `counts[0]` being `a_1`.
    pub fn from_counts(counts: &[u64]) -> Result<Self, CensusError> {
        Self::from_pairs(counts.iter().enumerate().map(|(i, &c)| (i + 1, c)))
    }

    /// `a_k`, zero when absent.
    pub fn get(&self, k: usize) -> u64 {
        self.entries.get(&k).copied().unwrap_or(0)
    }

    /// Non-zero entries in increasing `k`.
    pub fn iter(&self) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.entries.iter().map(|(&k, &c)| (k, c))
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Largest `k` with `a_k != 0`.
    pub fn max_index(&self) -> Option<usize> {
        self.entries.keys().next_back().copied()
    }

    /// Total number of pieces.
    pub fn total(&self) -> u64 {
        // bounded by construction, see `add`
        self.entries.values().sum()
    }

    /// Dense counts `a_1..a_m` with trailing zeros trimmed.
    pub fn to_counts(&self) -> Vec<u64> {
        let Some(m) = self.max_index() else {
            return Vec::new();
        };
        (1..=m).map(|k| self.get(k)).collect()
    }

    pub fn add(&self, k: usize, delta: u64) -> Result<Self, CensusError> {
        if k == 0 {
            return Err(CensusError::ZeroIndex);
        }
        if delta == 0 {
            return Ok(self.clone());
        }
        let next = self
            .get(k)
            .checked_add(delta)
            .filter(|&c| c <= MAX_COUNT)
            .ok_or(CensusError::Overflow { k })?;
        // the total must stay representable as well
        self.total()
            .checked_add(delta)
            .ok_or(CensusError::Overflow { k })?;
        let mut out = self.clone();
        out.entries.insert(k, next);
        Ok(out)
    }

    pub fn sub(&self, k: usize, delta: u64) -> Result<Self, CensusError> {
        if k == 0 {
            return Err(CensusError::ZeroIndex);
        }
        let next = self
            .get(k)
            .checked_sub(delta)
            .ok_or(CensusError::NegativeCount { k })?;
        let mut out = self.clone();
        if next == 0 {
            out.entries.remove(&k);
        } else {
            out.entries.insert(k, next);
        }
        Ok(out)
    }

    /// Adds a signed change at one index.
    pub fn adjust(&self, k: usize, delta: i64) -> Result<Self, CensusError> {
        if delta >= 0 {
            self.add(k, delta.unsigned_abs())
        } else {
            self.sub(k, delta.unsigned_abs())
        }
    }

    /// Applies every entry of `delta`. Decrements are applied first so that
    /// a valid delta never trips the overflow bound on the way.
    pub fn apply_delta(&self, delta: &CensusDelta) -> Result<Self, CensusError> {
        let mut out = self.clone();
        for (&k, &d) in delta.iter().filter(|(_, &d)| d < 0) {
            out = out.adjust(k, d)?;
        }
        for (&k, &d) in delta.iter().filter(|(_, &d)| d > 0) {
            out = out.adjust(k, d)?;
        }
        Ok(out)
    }

    /// Per-index difference `self - before`.
    pub fn difference(&self, before: &Census) -> CensusDelta {
        let mut delta = CensusDelta::new();
        for k in self.entries.keys().chain(before.entries.keys()) {
            let d = self.get(*k) as i128 - before.get(*k) as i128;
            if d != 0 {
                delta.insert(*k, d as i64);
            }
        }
        delta
    }
}

/// `sum_k (2 - k) * a_k`. Evaluated in 128-bit arithmetic, which cannot
/// overflow for censuses whose total fits in 64 bits.
pub fn euler_sum(census: &Census) -> i128 {
    census
        .iter()
        .map(|(k, c)| (2 - k as i128) * c as i128)
        .sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum InfeasibleReason {
    /// The Euler sum is not `2 + 6n` for any `n >= 0`.
    EViolation,
    /// `n = 0` but the number of pieces is even.
    PViolation,
}

impl InfeasibleReason {
    pub fn short(self) -> &'static str {
        match self {
            InfeasibleReason::EViolation => "E",
            InfeasibleReason::PViolation => "P",
        }
    }
}

impl fmt::Display for InfeasibleReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FeasibilityVerdict {
    Feasible { n: u64 },
    Infeasible { reason: InfeasibleReason },
}

impl FeasibilityVerdict {
    pub fn is_feasible(&self) -> bool {
        matches!(self, FeasibilityVerdict::Feasible { .. })
    }

    pub fn n(&self) -> Option<u64> {
        match *self {
            FeasibilityVerdict::Feasible { n } => Some(n),
            FeasibilityVerdict::Infeasible { .. } => None,
        }
    }
}

/// Decides whether a census can arise from an immersion with `2n` triple
/// points, and derives `n`.
pub fn check_feasibility(census: &Census) -> FeasibilityVerdict {
    let excess = euler_sum(census) - 2;
    if excess < 0 || excess % 6 != 0 {
        return FeasibilityVerdict::Infeasible {
            reason: InfeasibleReason::EViolation,
        };
    }
    let n = (excess / 6) as u64;
    if n == 0 && census.total() % 2 == 0 {
        return FeasibilityVerdict::Infeasible {
            reason: InfeasibleReason::PViolation,
        };
    }
    FeasibilityVerdict::Feasible { n }
}

impl fmt::Display for Census {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let counts = self.to_counts();
        for (i, c) in counts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for Census {
    type Err = CensusError;

    /// Parses `"a1,a2,..."`. Whitespace around entries is ignored; the empty
    /// string is the empty census.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let parse_err = |reason: String| CensusError::Parse {
            text: text.to_string(),
            reason,
        };
        if text.trim().is_empty() {
            return Ok(Census::new());
        }
        let mut counts = Vec::new();
        for (i, field) in text.split(',').enumerate() {
            let field = field.trim();
            if field.is_empty() || !field.bytes().all(|b| b.is_ascii_digit()) {
                return Err(parse_err(format!(
                    "entry {} ({field:?}) is not a non-negative integer",
                    i + 1
                )));
            }
            let c: u64 = field
                .parse()
                .map_err(|_| parse_err(format!("entry {} is out of range", i + 1)))?;
            counts.push(c);
        }
        Census::from_counts(&counts).map_err(|e| parse_err(e.to_string()))
    }
}

// JSON form is the dense count array, e.g. `[8, 1]`.
impl Serialize for Census {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_counts().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Census {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let counts = Vec::<u64>::deserialize(deserializer)?;
        Census::from_counts(&counts).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(text: &str) -> Census {
        text.parse().unwrap()
    }

    #[test]
    fn euler_sum_examples() {
        assert_eq!(euler_sum(&c("2,1")), 2);
        assert_eq!(euler_sum(&Census::new()), 0);
        assert_eq!(euler_sum(&c("11,0,1,1")), 8);
    }

    #[test]
    fn feasibility_examples() {
        assert_eq!(check_feasibility(&c("8")), FeasibilityVerdict::Feasible { n: 1 });
        assert_eq!(
            check_feasibility(&c("2")),
            FeasibilityVerdict::Infeasible {
                reason: InfeasibleReason::PViolation
            }
        );
        assert_eq!(
            check_feasibility(&c("3")),
            FeasibilityVerdict::Infeasible {
                reason: InfeasibleReason::EViolation
            }
        );
        assert_eq!(
            check_feasibility(&c("11,0,1,1")),
            FeasibilityVerdict::Feasible { n: 1 }
        );
        assert_eq!(check_feasibility(&c("2,1")), FeasibilityVerdict::Feasible { n: 0 });
        // negative Euler sum
        assert!(!check_feasibility(&c("0,0,5")).is_feasible());
        assert!(!check_feasibility(&Census::new()).is_feasible());
    }

    #[test]
    fn add_and_sub() {
        assert_eq!(c("2").add(1, 2).unwrap(), c("4"));
        assert_eq!(c("2,1").sub(2, 1).unwrap(), c("2"));
        assert_eq!(c("2").sub(3, 1), Err(CensusError::NegativeCount { k: 3 }));
        assert_eq!(c("2").add(0, 1), Err(CensusError::ZeroIndex));
        assert_eq!(
            c("1").add(1, MAX_COUNT),
            Err(CensusError::Overflow { k: 1 })
        );
    }

    #[test]
    fn total_overflow_is_rejected() {
        let big = Census::from_pairs([(1, MAX_COUNT), (2, MAX_COUNT)]).unwrap();
        assert_eq!(big.add(3, 2), Err(CensusError::Overflow { k: 3 }));
    }

    #[test]
    fn text_format() {
        assert_eq!(c("8,1").to_string(), "8,1");
        assert_eq!(c("2,0,0").to_string(), "2");
        assert_eq!(c("0,0,3").to_string(), "0,0,3");
        assert_eq!(c(" 8 , 1 "), c("8,1"));
        assert!(c("0").is_empty());
        for bad in ["x", "-1", "1.5", "1,,2", "1,", "+3", "99999999999999999999"] {
            assert!(bad.parse::<Census>().is_err(), "{bad}");
        }
    }

    #[test]
    fn json_is_dense_array() {
        let census = c("11,0,1,1");
        let json = serde_json::to_string(&census).unwrap();
        assert_eq!(json, "[11,0,1,1]");
        assert_eq!(serde_json::from_str::<Census>(&json).unwrap(), census);
    }

    #[test]
    fn difference_round_trips() {
        let a = c("11,0,1,1");
        let b = c("8,1");
        let d = a.difference(&b);
        assert_eq!(d, CensusDelta::from([(1, 3), (2, -1), (3, 1), (4, 1)]));
        assert_eq!(b.apply_delta(&d).unwrap(), a);
    }
}
