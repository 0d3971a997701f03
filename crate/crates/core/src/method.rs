//! Counting strategies behind one trait, looked up by name.
//!
//! Every method answers `op_{n,k}(p)`; the boundary conventions (`n < k`,
//! `k = 0`) are applied before a method is consulted, so implementations only
//! see `1 <= k <= n`.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::arith::ExactInt;
use crate::bridge::op_via_inclusion_exclusion;
use crate::error::{Error, Result};
use crate::formulas::{diagonal_count, fill_table_by_double_recurrence, op321_double_sum};
use crate::oracle::{count_partitions_avoiding, count_words_avoiding};
use crate::patterns::Permutation;
use crate::series::op_gf_coefficients;
use crate::table::{boundary_value, MethodTag, OpTable};

/// Default oracle ceiling on `n`: 10 for patterns of length 3, 8 otherwise.
pub fn default_oracle_budget(p: &Permutation) -> u32 {
    if p.len() == 3 {
        10
    } else {
        8
    }
}

pub trait CountMethod: Send + Sync {
    fn tag(&self) -> MethodTag;

    fn name(&self) -> &'static str {
        self.tag().as_str()
    }

    fn supports(&self, p: &Permutation) -> bool;

    /// `op_{n,k}(p)` for `1 <= k <= n`.
    fn count_in_triangle(&self, n: u32, k: u32, p: &Permutation) -> Result<ExactInt>;

    /// Largest `n` this method will attempt for `p`, if limited.
    fn budget(&self, _p: &Permutation) -> Option<u32> {
        None
    }

    fn check(&self, n: u32, p: &Permutation) -> Result<()> {
        if !self.supports(p) {
            return Err(Error::UnsupportedPattern {
                method: self.name().into(),
                pattern: p.to_string(),
            });
        }
        match self.budget(p) {
            Some(budget) if n > budget => Err(Error::BudgetExceeded {
                method: self.name().into(),
                budget,
                n,
            }),
            _ => Ok(()),
        }
    }

    fn count(&self, n: u32, k: u32, p: &Permutation) -> Result<ExactInt> {
        self.check(n, p)?;
        match boundary_value(n as i64, k as i64) {
            Some(v) => Ok(v),
            None => self.count_in_triangle(n, k, p),
        }
    }

    /// Triangle `1 <= k <= n <= n_max`; cells are independent by default.
    fn table(&self, n_max: u32, p: &Permutation) -> Result<OpTable> {
        self.check(n_max, p)?;
        let cells: Vec<(u32, u32)> = (1..=n_max).flat_map(|n| (1..=n).map(move |k| (n, k))).collect();
        let counts = cells
            .par_iter()
            .map(|&(n, k)| self.count_in_triangle(n, k, p))
            .collect::<Result<Vec<_>>>()?;
        let mut table = OpTable::new(p.clone());
        for ((n, k), c) in cells.into_iter().zip(counts) {
            table.insert(n, k, c, self.tag());
        }
        Ok(table)
    }
}

/// Pruned backtracking over ordered partitions.
pub struct Oracle {
    pub budget_override: Option<u32>,
}

impl CountMethod for Oracle {
    fn tag(&self) -> MethodTag {
        MethodTag::Oracle
    }

    fn supports(&self, _p: &Permutation) -> bool {
        true
    }

    fn budget(&self, p: &Permutation) -> Option<u32> {
        Some(self.budget_override.unwrap_or_else(|| default_oracle_budget(p)))
    }

    fn count_in_triangle(&self, n: u32, k: u32, p: &Permutation) -> Result<ExactInt> {
        Ok(count_partitions_avoiding(n, k, p))
    }
}

/// Alternating sum of avoiding-word counts over sub-alphabets; the word
/// counts come from the word oracle, so the oracle budget applies.
pub struct InclusionExclusion {
    pub budget_override: Option<u32>,
}

impl CountMethod for InclusionExclusion {
    fn tag(&self) -> MethodTag {
        MethodTag::InclusionExclusion
    }

    fn supports(&self, _p: &Permutation) -> bool {
        true
    }

    fn budget(&self, p: &Permutation) -> Option<u32> {
        Some(self.budget_override.unwrap_or_else(|| default_oracle_budget(p)))
    }

    fn count_in_triangle(&self, n: u32, k: u32, p: &Permutation) -> Result<ExactInt> {
        op_via_inclusion_exclusion(n, k, p, |n, j, q| Ok(count_words_avoiding(n, j, q)))
    }
}

/// Closed-form double sum; valid for all of S3 by Wilf equivalence.
pub struct DoubleSum;

impl CountMethod for DoubleSum {
    fn tag(&self) -> MethodTag {
        MethodTag::DoubleSum
    }

    fn supports(&self, p: &Permutation) -> bool {
        p.is_length_three()
    }

    fn count_in_triangle(&self, n: u32, k: u32, _p: &Permutation) -> Result<ExactInt> {
        op321_double_sum(n, k)
    }
}

/// Triangle filled from its boundary by the two double recurrences.
pub struct Recurrence;

impl CountMethod for Recurrence {
    fn tag(&self) -> MethodTag {
        MethodTag::Recurrence
    }

    fn supports(&self, p: &Permutation) -> bool {
        p.is_length_three()
    }

    fn count_in_triangle(&self, n: u32, k: u32, _p: &Permutation) -> Result<ExactInt> {
        let table = fill_table_by_double_recurrence(n)?;
        table.value(n as i64, k as i64)
    }

    fn table(&self, n_max: u32, p: &Permutation) -> Result<OpTable> {
        self.check(n_max, p)?;
        let filled = fill_table_by_double_recurrence(n_max.max(1))?.restricted_to_triangle(n_max);
        let mut table = OpTable::new(p.clone());
        for ((n, k), e) in filled.iter() {
            table.insert(n, k, e.count.clone(), MethodTag::Recurrence);
        }
        Ok(table)
    }
}

/// Coefficient extraction from the bivariate generating function.
pub struct GeneratingFunction;

impl CountMethod for GeneratingFunction {
    fn tag(&self) -> MethodTag {
        MethodTag::Gf
    }

    fn supports(&self, p: &Permutation) -> bool {
        p.is_length_three()
    }

    fn count_in_triangle(&self, n: u32, k: u32, _p: &Permutation) -> Result<ExactInt> {
        op_gf_coefficients(k as usize, n as usize)?.coeff_int(k as usize, n as usize)
    }

    fn table(&self, n_max: u32, p: &Permutation) -> Result<OpTable> {
        self.check(n_max, p)?;
        let w = n_max as usize;
        let series = op_gf_coefficients(w, w)?;
        let mut table = OpTable::new(p.clone());
        for n in 1..=n_max {
            for k in 1..=n {
                table.insert(n, k, series.coeff_int(k as usize, n as usize)?, MethodTag::Gf);
            }
        }
        Ok(table)
    }
}

/// `op_{k+r,k} = (2k)!/(k!(k+r+1)!) Q_r(k)` with `r = n - k`.
pub struct Diagonal;

impl CountMethod for Diagonal {
    fn tag(&self) -> MethodTag {
        MethodTag::Diagonal
    }

    fn supports(&self, p: &Permutation) -> bool {
        p.is_length_three()
    }

    fn count_in_triangle(&self, n: u32, k: u32, _p: &Permutation) -> Result<ExactInt> {
        diagonal_count(k, (n - k) as i64)
    }
}

/// Methods keyed by their command-line name.
pub struct MethodRegistry {
    methods: BTreeMap<&'static str, Box<dyn CountMethod>>,
}

impl MethodRegistry {
    pub fn empty() -> Self {
        Self { methods: BTreeMap::new() }
    }

    /// All built-in methods; `oracle_budget` replaces the default oracle ceiling.
    pub fn with_defaults(oracle_budget: Option<u32>) -> Self {
        let mut r = Self::empty();
        r.register(Box::new(Oracle { budget_override: oracle_budget }));
        r.register(Box::new(InclusionExclusion { budget_override: oracle_budget }));
        r.register(Box::new(DoubleSum));
        r.register(Box::new(Recurrence));
        r.register(Box::new(GeneratingFunction));
        r.register(Box::new(Diagonal));
        r
    }

    /// Adds or replaces a method under its own name.
    pub fn register(&mut self, method: Box<dyn CountMethod>) {
        self.methods.insert(method.name(), method);
    }

    pub fn get(&self, name: &str) -> Result<&dyn CountMethod> {
        self.methods.get(name).map(|m| m.as_ref()).ok_or_else(|| Error::Unknown {
            kind: "method",
            name: name.to_string(),
            available: self.names().join(", "),
        })
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.methods.keys().copied().collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &dyn CountMethod> {
        self.methods.values().map(|m| m.as_ref())
    }
}

impl Default for MethodRegistry {
    fn default() -> Self {
        Self::with_defaults(None)
    }
}
