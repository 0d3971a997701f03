//! The triangle `op_{n,k}(p)`, one exact count per cell plus the method that produced it.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::ExactInt;
use crate::error::{Error, Result};
use crate::patterns::Permutation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MethodTag {
    Oracle,
    InclusionExclusion,
    DoubleSum,
    Recurrence,
    Gf,
    Diagonal,
}

impl MethodTag {
    pub const ALL: [MethodTag; 6] = [
        MethodTag::Oracle,
        MethodTag::InclusionExclusion,
        MethodTag::DoubleSum,
        MethodTag::Recurrence,
        MethodTag::Gf,
        MethodTag::Diagonal,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            MethodTag::Oracle => "oracle",
            MethodTag::InclusionExclusion => "inclusion-exclusion",
            MethodTag::DoubleSum => "double-sum",
            MethodTag::Recurrence => "recurrence",
            MethodTag::Gf => "gf",
            MethodTag::Diagonal => "diagonal",
        }
    }
}

impl fmt::Display for MethodTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MethodTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| Error::Unknown {
                kind: "method",
                name: s.to_string(),
                available: Self::ALL.map(MethodTag::as_str).join(", "),
            })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub count: ExactInt,
    pub method: MethodTag,
}

/// Cells `(n, k)` with `0 <= k <= n`; anything else is answered by the boundary
/// conventions in [`OpTable::value`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpTable {
    pattern: Permutation,
    entries: BTreeMap<(u32, u32), Entry>,
}

impl OpTable {
    pub fn new(pattern: Permutation) -> Self {
        Self {
            pattern,
            entries: BTreeMap::new(),
        }
    }

    pub fn pattern(&self) -> &Permutation {
        &self.pattern
    }

    pub fn insert(&mut self, n: u32, k: u32, count: ExactInt, method: MethodTag) {
        self.entries.insert((n, k), Entry { count, method });
    }

    pub fn get(&self, n: u32, k: u32) -> Option<&Entry> {
        self.entries.get(&(n, k))
    }

    pub fn count(&self, n: u32, k: u32) -> Option<&ExactInt> {
        self.get(n, k).map(|e| &e.count)
    }

    /// `op_{n,k}` for any integers: 0 when `n < k`, `k < 0` or `n < 0`;
    /// `δ_{n,0}` when `k = 0`; otherwise the stored cell.
    pub fn value(&self, n: i64, k: i64) -> Result<ExactInt> {
        if let Some(v) = boundary_value(n, k) {
            return Ok(v);
        }
        self.count(n as u32, k as u32).cloned().ok_or(Error::MissingValue {
            n,
            k,
            needed_by: "table lookup".into(),
        })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = ((u32, u32), &Entry)> {
        self.entries.iter().map(|(&key, e)| (key, e))
    }

    pub fn max_n(&self) -> u32 {
        self.entries.keys().map(|&(n, _)| n).max().unwrap_or(0)
    }

    /// Keeps only the cells `1 <= k <= n <= n_max`.
    pub fn restricted_to_triangle(&self, n_max: u32) -> Self {
        Self {
            pattern: self.pattern.clone(),
            entries: self
                .entries
                .iter()
                .filter(|(&(n, k), _)| k >= 1 && k <= n && n <= n_max)
                .map(|(&key, e)| (key, e.clone()))
                .collect(),
        }
    }

    /// Same counts cell for cell, ignoring method tags.
    pub fn same_counts(&self, other: &Self) -> bool {
        self.entries.len() == other.entries.len()
            && self
                .entries
                .iter()
                .all(|(key, e)| other.entries.get(key).is_some_and(|o| o.count == e.count))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&TableWire::from(self)).expect("table serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let wire: TableWire = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        wire.try_into()
    }
}

/// Value forced by the triangle's boundary conventions, if any.
pub fn boundary_value(n: i64, k: i64) -> Option<ExactInt> {
    if n < k || k < 0 || n < 0 {
        Some(BigInt::zero())
    } else if k == 0 {
        Some(if n == 0 { BigInt::one() } else { BigInt::zero() })
    } else {
        None
    }
}

#[derive(Serialize, Deserialize)]
struct TableWire {
    pattern: String,
    entries: Vec<EntryWire>,
}

#[derive(Serialize, Deserialize)]
struct EntryWire {
    n: u32,
    k: u32,
    count: String,
    method: MethodTag,
}

impl From<&OpTable> for TableWire {
    fn from(t: &OpTable) -> Self {
        Self {
            pattern: t.pattern.to_string(),
            entries: t
                .entries
                .iter()
                .map(|(&(n, k), e)| EntryWire {
                    n,
                    k,
                    count: e.count.to_string(),
                    method: e.method,
                })
                .collect(),
        }
    }
}

impl TryFrom<TableWire> for OpTable {
    type Error = Error;

    fn try_from(w: TableWire) -> Result<Self> {
        let mut table = OpTable::new(w.pattern.parse()?);
        for e in w.entries {
            let count: BigInt = e
                .count
                .parse()
                .map_err(|_| Error::Parse(format!("count `{}` is not a decimal integer", e.count)))?;
            table.insert(e.n, e.k, count, e.method);
        }
        Ok(table)
    }
}
