//! Identities that hold for every pattern: inclusion-exclusion over
//! alphabets, the small-`k` Stirling formula, and numeric evidence for the
//! growth-rate and monotonicity statements.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::{binomial, factorial, rat_from_int, sign, stirling2, to_f64, ExactInt, ExactRational};
use crate::error::{Error, Result};
use crate::patterns::Permutation;

/// `op_{n,k}(p) = sum_{j=1}^{k} C(k,j) (-1)^{k-j} |[j]^n(p^-1)|`.
///
/// `word_counter(n, j, q)` must return `|[j]^n(q)|`; it is called with `q = p^-1`.
pub fn op_via_inclusion_exclusion<F>(n: u32, k: u32, p: &Permutation, word_counter: F) -> Result<ExactInt>
where
    F: Fn(u32, u32, &Permutation) -> Result<ExactInt>,
{
    if k == 0 {
        return Ok(if n == 0 { BigInt::one() } else { BigInt::zero() });
    }
    let q = p.inverse();
    let mut total = BigInt::zero();
    for j in 1..=k {
        let words = word_counter(n, j, &q)?;
        total += binomial(k as i64, j as i64) * sign((k - j) as i64) * words;
    }
    Ok(total)
}

/// `op_{n,k}(p) = k! S(n, k)` when `k < |p|`: too few blocks to host an occurrence.
pub fn op_small_k(n: u32, k: u32, p: &Permutation) -> Result<ExactInt> {
    if k < 1 || k as usize >= p.len() {
        return Err(Error::Domain(format!(
            "small-k formula needs 1 <= k < |p| = {}, got k = {k}",
            p.len()
        )));
    }
    Ok(factorial(k as u64) * stirling2(n as i64, k as i64))
}

#[derive(Clone, Debug, PartialEq)]
pub struct RatioPoint {
    pub n: u32,
    /// `op_{n+1,k} / op_{n,k}`.
    pub ratio: ExactRational,
}

impl RatioPoint {
    pub fn ratio_f64(&self) -> f64 {
        to_f64(&self.ratio)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GrowthProbe {
    /// The exponential growth rate `min(k, |p| - 1)` the ratios should approach.
    pub limit: u32,
    pub points: Vec<RatioPoint>,
}

impl GrowthProbe {
    pub fn at(&self, n: u32) -> Option<&RatioPoint> {
        self.points.iter().find(|pt| pt.n == n)
    }

    /// `|ratio - limit|` at `n`, exact.
    pub fn deviation(&self, n: u32) -> Option<ExactRational> {
        let limit = rat_from_int(self.limit.into());
        self.at(n).map(|pt| {
            let d = &pt.ratio - &limit;
            if d < BigRational::zero() {
                -d
            } else {
                d
            }
        })
    }

    /// Whether `|ratio - limit|` never increases along the probed `n`.
    pub fn deviation_non_increasing(&self) -> bool {
        let devs: Vec<ExactRational> = self.points.iter().filter_map(|pt| self.deviation(pt.n)).collect();
        devs.windows(2).all(|w| w[1] <= w[0])
    }
}

/// Consecutive ratios `op_{n+1,k} / op_{n,k}` for `n` in `n_range`; cells with a
/// zero denominator are skipped. `counter(n, k)` supplies `op_{n,k}(p)`.
pub fn growth_rate_probe<F>(
    k: u32,
    p: &Permutation,
    counter: F,
    n_range: std::ops::RangeInclusive<u32>,
) -> Result<GrowthProbe>
where
    F: Fn(u32, u32) -> Result<ExactInt>,
{
    let mut points = Vec::new();
    let mut prev: Option<(u32, ExactInt)> = None;
    for n in *n_range.start()..=*n_range.end() + 1 {
        let c = counter(n, k)?;
        if let Some((pn, pc)) = prev.take() {
            if !pc.is_zero() {
                points.push(RatioPoint {
                    n: pn,
                    ratio: BigRational::new(c.clone(), pc),
                });
            }
        }
        prev = Some((n, c));
    }
    Ok(GrowthProbe {
        limit: k.min(p.len() as u32 - 1),
        points,
    })
}

/// `op_{n,k+1}(p) > op_{n,k}(p) > ... > op_{n,|p|}(p)`.
///
/// Requires `|p| <= k < n`, so the chain always has at least one comparison.
pub fn monotonicity_check<F>(n: u32, k: u32, p: &Permutation, counter: F) -> Result<bool>
where
    F: Fn(u32, u32) -> Result<ExactInt>,
{
    let m = p.len() as u32;
    if !(m <= k && k < n) {
        return Err(Error::Domain(format!(
            "monotonicity chain needs |p| <= k < n, got |p| = {m}, k = {k}, n = {n}"
        )));
    }
    let chain = (m..=k + 1).map(|j| counter(n, j)).collect::<Result<Vec<_>>>()?;
    Ok(chain.windows(2).all(|w| w[1] > w[0]))
}

/// `a_n = sum_{j=1}^{d} c_j a_{n-j} + c_0` with exact rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearRecurrence {
    pub coeffs: Vec<ExactRational>,
    pub constant: ExactRational,
}

impl LinearRecurrence {
    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    /// Next term from `history`, most recent last.
    pub fn predict(&self, history: &[ExactInt]) -> ExactRational {
        let d = self.order();
        let tail = &history[history.len() - d..];
        self.coeffs
            .iter()
            .zip(tail.iter().rev())
            .fold(self.constant.clone(), |acc, (c, a)| acc + c * rat_from_int(a.clone()))
    }

    /// Whether every term from index `order` onward is reproduced exactly.
    pub fn reproduces(&self, terms: &[ExactInt]) -> bool {
        (self.order()..terms.len()).all(|i| self.predict(&terms[..i]) == rat_from_int(terms[i].clone()))
    }
}

enum Solution {
    Unique(Vec<ExactRational>),
    Underdetermined,
    Inconsistent,
}

/// Gauss-Jordan elimination over the rationals on an augmented matrix.
fn solve_exact(mut rows: Vec<Vec<ExactRational>>, unknowns: usize) -> Solution {
    let mut pivot_row = 0;
    let mut pivots = Vec::new();
    for col in 0..unknowns {
        let Some(found) = (pivot_row..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(pivot_row, found);
        let inv = rows[pivot_row][col].recip();
        for v in rows[pivot_row].iter_mut() {
            *v *= &inv;
        }
        let pivot = rows[pivot_row].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != pivot_row && !row[col].is_zero() {
                let factor = row[col].clone();
                for (v, pv) in row.iter_mut().zip(&pivot) {
                    *v -= &factor * pv;
                }
            }
        }
        pivots.push(col);
        pivot_row += 1;
    }
    if rows[pivot_row..].iter().any(|row| !row[unknowns].is_zero()) {
        return Solution::Inconsistent;
    }
    if pivots.len() < unknowns {
        return Solution::Underdetermined;
    }
    Solution::Unique((0..unknowns).map(|i| rows[i][unknowns].clone()).collect())
}

/// The unique recurrence of the given order (plus a constant term when
/// `with_constant`) satisfied by every term of `terms`, if there is exactly one.
pub fn fit_linear_recurrence(terms: &[ExactInt], order: usize, with_constant: bool) -> Option<LinearRecurrence> {
    let unknowns = order + usize::from(with_constant);
    if terms.len() <= order {
        return None;
    }
    let rows: Vec<Vec<ExactRational>> = (order..terms.len())
        .map(|i| {
            let mut row: Vec<ExactRational> = (1..=order).map(|j| rat_from_int(terms[i - j].clone())).collect();
            if with_constant {
                row.push(BigRational::one());
            }
            row.push(rat_from_int(terms[i].clone()));
            row
        })
        .collect();
    if unknowns == 0 {
        return rows
            .iter()
            .all(|r| r[0].is_zero())
            .then(|| LinearRecurrence {
                coeffs: Vec::new(),
                constant: BigRational::zero(),
            });
    }
    match solve_exact(rows, unknowns) {
        Solution::Unique(sol) => {
            let (coeffs, constant) = if with_constant {
                (sol[..order].to_vec(), sol[order].clone())
            } else {
                (sol, BigRational::zero())
            };
            Some(LinearRecurrence { coeffs, constant })
        }
        Solution::Underdetermined | Solution::Inconsistent => None,
    }
}

/// Smallest-order recurrence (orders `0..=max_order`, with constant term)
/// fitted uniquely on `terms[..fit_len]` that reproduces all of `terms`.
pub fn find_rational_recurrence(terms: &[ExactInt], fit_len: usize, max_order: usize) -> Option<LinearRecurrence> {
    let fit = &terms[..fit_len.min(terms.len())];
    (0..=max_order)
        .filter_map(|d| fit_linear_recurrence(fit, d, true))
        .find(|rec| rec.reproduces(terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;
    use crate::formulas::op321_double_sum;
    use crate::oracle::{count_partitions_avoiding, count_words_avoiding};

    fn perm(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn oracle_words(n: u32, j: u32, q: &Permutation) -> Result<ExactInt> {
        Ok(count_words_avoiding(n, j, q))
    }

    fn op321(n: u32, k: u32) -> Result<ExactInt> {
        if n < k {
            Ok(int(0))
        } else {
            op321_double_sum(n, k)
        }
    }

    #[test]
    fn inclusion_exclusion_examples() {
        assert_eq!(op_via_inclusion_exclusion(4, 2, &perm("321"), oracle_words).unwrap(), int(14));
        assert_eq!(op_via_inclusion_exclusion(5, 4, &perm("321"), oracle_words).unwrap(), int(112));
        for n in 1..=6 {
            assert_eq!(op_via_inclusion_exclusion(n, 1, &perm("2413"), oracle_words).unwrap(), int(1));
        }
        assert_eq!(op_via_inclusion_exclusion(0, 0, &perm("21"), oracle_words).unwrap(), int(1));
    }

    #[test]
    fn inclusion_exclusion_propagates_counter_errors() {
        let failing = |_: u32, _: u32, _: &Permutation| -> Result<ExactInt> { Err(Error::Domain("boom".into())) };
        assert!(op_via_inclusion_exclusion(4, 2, &perm("321"), failing).is_err());
    }

    #[test]
    fn small_k_examples() {
        assert_eq!(op_small_k(4, 2, &perm("321")).unwrap(), int(14));
        assert_eq!(op_small_k(4, 3, &perm("1234")).unwrap(), int(36));
        assert_eq!(count_partitions_avoiding(4, 3, &perm("1234")), int(36));
        assert_eq!(op_small_k(2, 3, &perm("1234")).unwrap(), int(0));
        assert!(op_small_k(4, 3, &perm("321")).is_err());
        assert!(op_small_k(4, 0, &perm("321")).is_err());
    }

    #[test]
    fn small_k_matches_oracle() {
        for p in ["321", "1234", "2413", "12"] {
            let p = perm(p);
            for k in 1..p.len() as u32 {
                for n in 0..=8 {
                    assert_eq!(op_small_k(n, k, &p).unwrap(), count_partitions_avoiding(n, k, &p));
                }
            }
        }
    }

    #[test]
    fn probe_k2_and_k1() {
        let probe = growth_rate_probe(2, &perm("321"), op321, 1..=20).unwrap();
        assert_eq!(probe.limit, 2);
        assert!(to_f64(&probe.deviation(20).unwrap()) < 1e-3);
        // n = 1 has op_{1,2} = 0, so the first ratio starts at n = 2
        assert_eq!(probe.points[0].n, 2);
        let ones = growth_rate_probe(1, &perm("321"), op321, 1..=10).unwrap();
        assert_eq!(ones.limit, 1);
        assert!(ones.points.iter().all(|pt| pt.ratio == BigRational::one()));
    }

    #[test]
    fn probe_limit_for_long_patterns() {
        let p = perm("1234");
        let counter = |n: u32, k: u32| Ok(count_partitions_avoiding(n, k, &p));
        assert_eq!(growth_rate_probe(2, &p, counter, 2..=3).unwrap().limit, 2);
        assert_eq!(growth_rate_probe(5, &p, counter, 5..=5).unwrap().limit, 3);
    }

    #[test]
    fn monotonicity_examples() {
        assert!(monotonicity_check(10, 6, &perm("321"), op321).unwrap());
        // op_{4,4} = 14 < op_{4,3} = 27
        assert!(!monotonicity_check(4, 3, &perm("321"), op321).unwrap());
        assert!(monotonicity_check(6, 1, &perm("321"), op321).is_err());
        assert!(monotonicity_check(4, 4, &perm("321"), op321).is_err());
        assert!(monotonicity_check(9, 2, &perm("321"), op321).is_err());
    }

    #[test]
    fn fitter_recovers_known_recurrences() {
        // a_n = 2^n - 2: order 1 with constant
        let terms: Vec<ExactInt> = (1..=12).map(|n| (int(1) << n) - 2).collect();
        let rec = find_rational_recurrence(&terms, 5, 3).unwrap();
        assert_eq!(rec.order(), 1);
        assert_eq!(rec.coeffs[0], rat_from_int(int(2)));
        assert_eq!(rec.constant, rat_from_int(int(2)));
        // Fibonacci: order 2, no constant term needed
        let mut fib = vec![int(0), int(1)];
        for i in 2..30 {
            let next = &fib[i - 1] + &fib[i - 2];
            fib.push(next);
        }
        let rec = find_rational_recurrence(&fib, 8, 4).unwrap();
        assert_eq!(rec.order(), 2);
        assert!(rec.constant.is_zero());
    }

    #[test]
    fn fitter_rejects_non_rational_data() {
        // Catalan numbers satisfy no constant-coefficient recurrence
        let cat: Vec<ExactInt> = (0..30).map(|n| crate::arith::catalan(n).unwrap()).collect();
        assert!(find_rational_recurrence(&cat, 12, 4).is_none());
    }

    #[test]
    fn underdetermined_fit_is_refused() {
        let terms = vec![int(1), int(2), int(3)];
        assert!(fit_linear_recurrence(&terms, 2, true).is_none());
    }
}
