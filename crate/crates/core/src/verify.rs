//! Named invariant suites. Each suite runs a family of exact checks at
//! caller-chosen bounds and reports every identity it checked.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{binomial, catalan, factorial, ExactInt};
use crate::bridge::monotonicity_check;
use crate::error::{Error, Result};
use crate::formulas::{
    appendix_final_identity_check, diagonal_count, fill_table_by_double_recurrence, gosper_certificate_check,
    linear_recurrence_column, op321_double_recurrences, op321_double_sum, pk_polynomial, qr_polynomial,
    sum_identity_check, words_321_double_sum, words_321_single_sum, yr_recurrence_residual,
};
use crate::formulas::closed::op321_from_pk;
use crate::oracle::{count_partitions_avoiding, count_surjective_words_avoiding};
use crate::patterns::{partition_contains, partition_of_word, word_contains, word_of_partition, Permutation, Word};
use crate::series::{op_gf_coefficients, pde_residual_check, substitution_identity_check, word_gf_coefficients};
use crate::table::OpTable;

/// Optional size parameters; each suite falls back to its own defaults.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Bounds {
    /// Largest `n`.
    pub n: Option<u32>,
    /// Series window in `x` (block count).
    pub k_window: Option<usize>,
    /// Series window in `y` (length).
    pub n_window: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub label: String,
    pub cases: usize,
    /// First failing case, if any.
    pub failure: Option<String>,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl Report {
    fn new(suite: &str) -> Self {
        Self {
            suite: suite.to_string(),
            checks: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    /// Runs `body`, which feeds cases to a [`Tally`], and records the outcome.
    fn check(&mut self, label: impl Into<String>, body: impl FnOnce(&mut Tally) -> Result<()>) -> Result<()> {
        let mut t = Tally::default();
        body(&mut t)?;
        self.checks.push(Check {
            label: label.into(),
            cases: t.cases,
            failure: t.failure,
        });
        Ok(())
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            match &c.failure {
                None => writeln!(f, "PASS  {} ({} cases)", c.label, c.cases)?,
                Some(why) => writeln!(f, "FAIL  {} (first failure: {why})", c.label)?,
            }
        }
        let verdict = if self.passed() { "pass" } else { "FAIL" };
        write!(f, "{}: {verdict}", self.suite)
    }
}

#[derive(Default)]
struct Tally {
    cases: usize,
    failure: Option<String>,
}

impl Tally {
    fn case(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(describe());
        }
    }
}

pub trait VerifySuite: Send + Sync {
    fn name(&self) -> &'static str;
    fn summary(&self) -> &'static str;
    fn run(&self, bounds: &Bounds) -> Result<Report>;
}

fn s3_and_s4() -> Vec<Permutation> {
    let mut v = Permutation::all(3);
    v.extend(Permutation::all(4));
    v
}

/// Every word of length `n` over `[k]`, in lexicographic order.
fn all_words(n: u32, k: u8) -> impl Iterator<Item = Vec<u8>> {
    let total = (k as u64).pow(n);
    (0..total).map(move |mut idx| {
        let mut letters = vec![1u8; n as usize];
        for slot in letters.iter_mut().rev() {
            *slot = (idx % k as u64) as u8 + 1;
            idx /= k as u64;
        }
        letters
    })
}

struct Bijection;

impl VerifySuite for Bijection {
    fn name(&self) -> &'static str {
        "bijection"
    }

    fn summary(&self) -> &'static str {
        "partition <-> surjective word round trip and containment transport"
    }

    fn run(&self, bounds: &Bounds) -> Result<Report> {
        let n_max = bounds.n.unwrap_or(6);
        let patterns = s3_and_s4();
        let mut r = Report::new(self.name());
        let mut surjective = Vec::new();
        r.check("partition(word(pi)) = pi and word(partition(w)) = w", |t| {
            for n in 1..=n_max {
                for k in 1..=n as u8 {
                    for letters in all_words(n, k) {
                        let w = Word::new(letters, k)?;
                        if !w.is_surjective() {
                            continue;
                        }
                        let pi = partition_of_word(&w)?;
                        t.case(word_of_partition(&pi) == w && partition_of_word(&word_of_partition(&pi))? == pi, || {
                            format!("word {w}")
                        });
                        surjective.push((w, pi));
                    }
                }
            }
            Ok(())
        })?;
        r.check("pi contains p iff w(pi) contains p^-1, p in S3 and S4", |t| {
            for (w, pi) in &surjective {
                for p in &patterns {
                    t.case(partition_contains(pi, p) == word_contains(w, &p.inverse()), || {
                        format!("pi = {pi}, p = {p}")
                    });
                }
            }
            Ok(())
        })?;
        r.check("op(n,k,p) = surjective words avoiding p^-1", |t| {
            for p in &patterns {
                for n in 1..=n_max {
                    for k in 1..=n {
                        t.case(
                            count_partitions_avoiding(n, k, p) == count_surjective_words_avoiding(n, k, &p.inverse()),
                            || format!("n = {n}, k = {k}, p = {p}"),
                        );
                    }
                }
            }
            Ok(())
        })?;
        Ok(r)
    }
}

struct WilfS3;

impl VerifySuite for WilfS3 {
    fn name(&self) -> &'static str {
        "wilf-s3"
    }

    fn summary(&self) -> &'static str {
        "all six patterns of length three have the same triangle"
    }

    fn run(&self, bounds: &Bounds) -> Result<Report> {
        let n_max = bounds.n.unwrap_or(8);
        let mut r = Report::new(self.name());
        let patterns = Permutation::all(3);
        let cells: Vec<(u32, u32)> = (1..=n_max).flat_map(|n| (1..=n).map(move |k| (n, k))).collect();
        let reference: Vec<ExactInt> = cells.iter().map(|&(n, k)| count_partitions_avoiding(n, k, &patterns[0])).collect();
        for p in &patterns[1..] {
            r.check(format!("oracle triangle for {p} equals that of {}", patterns[0]), |t| {
                for (&(n, k), want) in cells.iter().zip(&reference) {
                    t.case(&count_partitions_avoiding(n, k, p) == want, || format!("n = {n}, k = {k}"));
                }
                Ok(())
            })?;
        }
        r.check("oracle triangle equals the double sum", |t| {
            for (&(n, k), got) in cells.iter().zip(&reference) {
                t.case(*got == op321_double_sum(n, k)?, || format!("n = {n}, k = {k}"));
            }
            Ok(())
        })?;
        Ok(r)
    }
}

struct Formulas;

impl VerifySuite for Formulas {
    fn name(&self) -> &'static str {
        "formulas"
    }

    fn summary(&self) -> &'static str {
        "closed forms, P_k polynomials and word-count sums against the double sum"
    }

    fn run(&self, bounds: &Bounds) -> Result<Report> {
        let n_max = bounds.n.unwrap_or(40);
        let mut r = Report::new(self.name());
        let two = BigInt::from(2);
        r.check("op(n,1) = 1", |t| {
            for n in 1..=n_max {
                t.case(op321_double_sum(n, 1)?.is_one(), || format!("n = {n}"));
            }
            Ok(())
        })?;
        r.check("op(n,2) = 2^n - 2", |t| {
            for n in 2..=n_max {
                t.case(op321_double_sum(n, 2)? == two.pow(n) - 2, || format!("n = {n}"));
            }
            Ok(())
        })?;
        r.check("op(n,3) = (n^2+3n-16) 2^(n-3) + 3", |t| {
            for n in 3..=n_max {
                let ni = n as i64;
                let want = BigInt::from(ni * ni + 3 * ni - 16) * two.pow(n - 3) + 3;
                t.case(op321_double_sum(n, 3)? == want, || format!("n = {n}"));
            }
            Ok(())
        })?;
        r.check("op(n,n) = Catalan(n)", |t| {
            for n in 1..=n_max {
                t.case(op321_double_sum(n, n)? == catalan(n as i64)?, || format!("n = {n}"));
            }
            Ok(())
        })?;
        r.check("op(n,n-1) = 3(n-1)^2/(n(n+1)) C(2n-2,n-1)", |t| {
            for n in 2..=n_max {
                let ni = n as i64;
                let num = binomial(2 * ni - 2, ni - 1) * (3 * (ni - 1) * (ni - 1));
                let want = num / (ni * (ni + 1));
                t.case(op321_double_sum(n, n - 1)? == want, || format!("n = {n}"));
            }
            Ok(())
        })?;
        r.check("op(n,k) = P_k(n) 2^n + (-1)^(k-1) k", |t| {
            for k in 2..=n_max.min(12) {
                let pk = pk_polynomial(k)?;
                for n in k..=n_max {
                    t.case(op321_from_pk(&pk, n, k)? == op321_double_sum(n, k)?, || format!("n = {n}, k = {k}"));
                }
            }
            Ok(())
        })?;
        r.check("word count: double sum = single sum", |t| {
            for k in 2..=n_max.min(15) {
                for n in 0..=n_max {
                    t.case(words_321_double_sum(n, k)? == words_321_single_sum(n, k)?, || {
                        format!("n = {n}, k = {k}")
                    });
                }
            }
            Ok(())
        })?;
        r.check("partial sum of Catalan-times-central-binomial products", |t| {
            for k in 0..=n_max {
                for j in 0..=k {
                    t.case(sum_identity_check(k, j)?, || format!("k = {k}, j = {j}"));
                }
            }
            Ok(())
        })?;
        Ok(r)
    }
}

struct Recurrences;

impl VerifySuite for Recurrences {
    fn name(&self) -> &'static str {
        "recurrences"
    }

    fn summary(&self) -> &'static str {
        "column recurrences and the two double recurrences"
    }

    fn run(&self, bounds: &Bounds) -> Result<Report> {
        let n_max = bounds.n.unwrap_or(40);
        let mut r = Report::new(self.name());
        r.check("order-(2k-3) column recurrence reproduces the double sum", |t| {
            for k in 2..=n_max.min(8) {
                let col = linear_recurrence_column(k, n_max)?;
                for n in k..=n_max {
                    t.case(col[n as usize] == op321_double_sum(n, k)?, || format!("n = {n}, k = {k}"));
                }
            }
            Ok(())
        })?;
        let mut reference = OpTable::new("321".parse()?);
        for n in 1..=n_max {
            for k in 1..=n {
                reference.insert(n, k, op321_double_sum(n, k)?, crate::table::MethodTag::DoubleSum);
            }
        }
        r.check("both double recurrences vanish on the double-sum triangle", |t| {
            for n in -4..=n_max as i64 - 3 {
                for k in 0..=(n + 2).max(0) {
                    let (a, b) = op321_double_recurrences(&reference, n, k)?;
                    t.case(a.is_zero() && b.is_zero(), || format!("n = {n}, k = {k}"));
                }
            }
            Ok(())
        })?;
        let fill_to = n_max.min(30);
        r.check(format!("double-recurrence fill equals the double sum for n <= {fill_to}"), |t| {
            let filled = fill_table_by_double_recurrence(fill_to.max(1))?;
            for n in 1..=fill_to {
                for k in 1..=n {
                    t.case(filled.count(n, k) == reference.count(n, k), || format!("n = {n}, k = {k}"));
                }
            }
            Ok(())
        })?;
        Ok(r)
    }
}

struct Diagonals;

impl VerifySuite for Diagonals {
    fn name(&self) -> &'static str {
        "diagonals"
    }

    fn summary(&self) -> &'static str {
        "Q_r polynomials, diagonal counts and the diagonal recurrence"
    }

    fn run(&self, bounds: &Bounds) -> Result<Report> {
        let n_max = bounds.n.unwrap_or(25);
        let r_max = 5i64;
        let mut r = Report::new(self.name());
        r.check("deg Q_r = 2r", |t| {
            for rr in 0..=r_max {
                let d = qr_polynomial(rr)?.degree();
                t.case(d == Some(2 * rr as usize), || format!("r = {rr}, degree {d:?}"));
            }
            Ok(())
        })?;
        r.check("op(n+r,n) = (2n)!/(n!(n+r+1)!) Q_r(n) matches the double sum", |t| {
            for rr in 0..=r_max {
                for n in 1..=n_max {
                    t.case(diagonal_count(n, rr)? == op321_double_sum(n + rr as u32, n)?, || {
                        format!("n = {n}, r = {rr}")
                    });
                }
            }
            Ok(())
        })?;
        let mut table = OpTable::new("321".parse()?);
        let span = n_max + r_max as u32 + 2;
        for n in 1..=span {
            for k in 1..=n {
                table.insert(n, k, op321_double_sum(n, k)?, crate::table::MethodTag::DoubleSum);
            }
        }
        r.check("three-term diagonal recurrence vanishes", |t| {
            for rr in 0..=r_max {
                for m in 0..=(n_max as i64 - 2).max(0) {
                    t.case(yr_recurrence_residual(&table, m, rr)?.is_zero(), || format!("m = {m}, r = {rr}"));
                }
            }
            Ok(())
        })?;
        Ok(r)
    }
}

struct GeneratingFunctions;

impl VerifySuite for GeneratingFunctions {
    fn name(&self) -> &'static str {
        "gf"
    }

    fn summary(&self) -> &'static str {
        "generating-function coefficients, substitution identity and PDEs"
    }

    fn run(&self, bounds: &Bounds) -> Result<Report> {
        let kk = bounds.k_window.unwrap_or(8);
        let nn = bounds.n_window.unwrap_or(14);
        let mut r = Report::new(self.name());
        r.check("word series coefficients equal the single-sum word counts", |t| {
            let w = word_gf_coefficients(kk, nn)?;
            for k in 0..=kk {
                for n in 0..=nn {
                    let want = match k {
                        0 => BigInt::from((n == 0) as u8),
                        1 => BigInt::one(),
                        _ => words_321_single_sum(n as u32, k as u32)?,
                    };
                    t.case(w.coeff_int(k, n)? == want, || format!("x^{k} y^{n}"));
                }
            }
            Ok(())
        })?;
        r.check("partition series coefficients equal the double sum", |t| {
            let a = op_gf_coefficients(kk, nn)?;
            for k in 0..=kk {
                for n in 0..=nn {
                    let want = match (n, k) {
                        (0, 0) => BigInt::one(),
                        _ if k == 0 || n < k => BigInt::zero(),
                        _ => op321_double_sum(n as u32, k as u32)?,
                    };
                    t.case(a.coeff_int(k, n)? == want, || format!("x^{k} y^{n}"));
                }
            }
            Ok(())
        })?;
        r.check("partition series = 1/(1+x) W(x/(1+x), y)", |t| {
            t.case(substitution_identity_check(kk, nn)?, || format!("window ({kk}, {nn})"));
            Ok(())
        })?;
        if kk > 3 && nn > 3 {
            r.check("both first-order PDE residuals vanish", |t| {
                t.case(pde_residual_check(kk, nn)?, || format!("window ({}, {})", kk - 3, nn - 3));
                Ok(())
            })?;
        }
        Ok(r)
    }
}

struct Appendix;

impl VerifySuite for Appendix {
    fn name(&self) -> &'static str {
        "appendix"
    }

    fn summary(&self) -> &'static str {
        "Gosper certificate and the op(n+1,n) hypergeometric evaluation"
    }

    fn run(&self, bounds: &Bounds) -> Result<Report> {
        let n_max = bounds.n.unwrap_or(40);
        let mut r = Report::new(self.name());
        r.check("summand = G(j+1) - G(j) for the Gosper antidifference", |t| {
            for n in 2..=n_max as i64 {
                for i in 0..=n - 2 {
                    for j in 0..=n - i - 2 {
                        t.case(gosper_certificate_check(n, i, j)?, || format!("n = {n}, i = {i}, j = {j}"));
                    }
                }
            }
            Ok(())
        })?;
        r.check("op(n+1,n) = 3n^2 (2n)!/(n!(n+2)!)", |t| {
            for n in 1..=n_max {
                t.case(appendix_final_identity_check(n)?, || format!("n = {n}"));
            }
            Ok(())
        })?;
        r.check("3n^2 (2n)!/(n!(n+2)!) is an integer", |t| {
            for n in 1..=n_max as u64 {
                let num = factorial(2 * n) * (3 * n * n);
                let den = factorial(n) * factorial(n + 2);
                t.case((num % den).is_zero(), || format!("n = {n}"));
            }
            Ok(())
        })?;
        Ok(r)
    }
}

struct Monotonicity;

impl VerifySuite for Monotonicity {
    fn name(&self) -> &'static str {
        "monotonicity"
    }

    fn summary(&self) -> &'static str {
        "op(n,k+1) > ... > op(n,3) for 321 once n is large enough"
    }

    fn run(&self, bounds: &Bounds) -> Result<Report> {
        let n_max = bounds.n.unwrap_or(40);
        let k = 6;
        let p: Permutation = "321".parse()?;
        let counter = |n: u32, k: u32| op321_double_sum(n, k);
        let mut r = Report::new(self.name());
        r.check(format!("chain op(n,{}) > ... > op(n,3) for 12 <= n", k + 1), |t| {
            for n in 12..=n_max {
                t.case(monotonicity_check(n, k, &p, counter)?, || format!("n = {n}"));
            }
            Ok(())
        })?;
        r.check("checker rejects n = 4, k = 3 (op(4,4) < op(4,3))", |t| {
            t.case(!monotonicity_check(4, 3, &p, counter)?, || "chain reported as holding".into());
            Ok(())
        })?;
        Ok(r)
    }
}

/// Suites keyed by name.
pub struct SuiteRegistry {
    suites: BTreeMap<&'static str, Box<dyn VerifySuite>>,
}

impl SuiteRegistry {
    pub fn empty() -> Self {
        Self { suites: BTreeMap::new() }
    }

    pub fn register(&mut self, suite: Box<dyn VerifySuite>) {
        self.suites.insert(suite.name(), suite);
    }

    pub fn get(&self, name: &str) -> Result<&dyn VerifySuite> {
        self.suites.get(name).map(|s| s.as_ref()).ok_or_else(|| Error::Unknown {
            kind: "suite",
            name: name.to_string(),
            available: self.names().join(", "),
        })
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.suites.keys().copied().collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &dyn VerifySuite> {
        self.suites.values().map(|s| s.as_ref())
    }
}

impl Default for SuiteRegistry {
    fn default() -> Self {
        let mut r = Self::empty();
        r.register(Box::new(Bijection));
        r.register(Box::new(WilfS3));
        r.register(Box::new(Formulas));
        r.register(Box::new(Recurrences));
        r.register(Box::new(Diagonals));
        r.register(Box::new(GeneratingFunctions));
        r.register(Box::new(Appendix));
        r.register(Box::new(Monotonicity));
        r
    }
}
