//! Recurrences for the 321 triangle: the constant-coefficient recurrence in
//! `n` for fixed `k`, and the two double recurrences in `(n, k)` that fill
//! the whole triangle from its boundary.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::arith::{binomial, sign, ExactInt};
use crate::error::{Error, Result};
use crate::formulas::closed::op321_double_sum;
use crate::patterns::Permutation;
use crate::table::{MethodTag, OpTable};

fn pattern_321() -> Permutation {
    Permutation::new(vec![3, 2, 1]).expect("321 is a permutation")
}

/// Order of the constant-coefficient recurrence for fixed `k`.
pub fn linear_recurrence_order(k: u32) -> u32 {
    2 * k - 3
}

/// One step of `op_{n,k} = (-1)^k k - sum_{j=1}^{2k-3} (-2)^j C(2k-3, j) op_{n-j,k}`,
/// valid for `n >= 2k - 2`. `previous[j - 1]` holds `op_{n-j,k}`.
pub fn linear_recurrence_step(k: u32, previous: &[ExactInt]) -> Result<ExactInt> {
    if k < 2 {
        return Err(Error::Domain(format!("linear recurrence needs k >= 2, got {k}")));
    }
    let order = linear_recurrence_order(k) as usize;
    if previous.len() < order {
        return Err(Error::Domain(format!(
            "linear recurrence for k = {k} needs {order} previous terms, got {}",
            previous.len()
        )));
    }
    let k = k as i64;
    let mut next = BigInt::from(sign(k) * k);
    for (j, prev) in previous.iter().take(order).enumerate() {
        let j = j as i64 + 1;
        let coeff = binomial(order as i64, j) * sign(j) * (BigInt::from(1) << j as usize);
        next -= coeff * prev;
    }
    Ok(next)
}

/// Extends column `k` of `table` up to `n_max` with the linear recurrence.
///
/// Cells already present are kept. Each new cell `n >= 2k-2` reads
/// `op_{m,k}` for `m` in `[n-2k+3, n-1]`; those below the diagonal come from
/// the boundary conventions, the others must already be in the table.
pub fn op321_linear_recurrence(k: u32, table: &mut OpTable, n_max: u32) -> Result<()> {
    let order = linear_recurrence_order(k);
    for n in (2 * k - 2).max(1)..=n_max {
        if table.get(n, k).is_some() {
            continue;
        }
        let previous = (1..=order)
            .map(|j| {
                let m = n as i64 - j as i64;
                table.value(m, k as i64).map_err(|_| Error::MissingValue {
                    n: m,
                    k: k as i64,
                    needed_by: format!("linear recurrence at n = {n}"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let next = linear_recurrence_step(k, &previous)?;
        table.insert(n, k, next, MethodTag::Recurrence);
    }
    Ok(())
}

/// Column `k` for `n` in `[0, n_max]`: seeds `k <= n <= 2k-3` from the
/// double sum, everything after from the linear recurrence.
pub fn linear_recurrence_column(k: u32, n_max: u32) -> Result<Vec<ExactInt>> {
    let mut table = OpTable::new(pattern_321());
    for n in k..=(2 * k).saturating_sub(3).min(n_max) {
        table.insert(n, k, op321_double_sum(n, k)?, MethodTag::DoubleSum);
    }
    op321_linear_recurrence(k, &mut table, n_max)?;
    (0..=n_max as i64).map(|n| table.value(n, k as i64)).collect()
}

/// Right-hand side of the first double recurrence, which determines
/// `(n+4) op_{n+3,k+1}`.
fn first_rhs(a: &impl Fn(i64, i64) -> Result<ExactInt>, n: i64, k: i64) -> Result<ExactInt> {
    Ok(a(n + 2, k + 1)? * (5 * n + 14) + a(n + 2, k)? * (4 * n + 10)
        - (a(n + 1, k + 1)? + a(n + 1, k)?) * (8 * n + 14)
        + (a(n, k + 1)? + a(n, k)?) * (4 * n + 4))
}

/// Right-hand side of the second double recurrence, which determines
/// `(k+1) op_{n+2,k+2}`.
fn second_rhs(a: &impl Fn(i64, i64) -> Result<ExactInt>, n: i64, k: i64) -> Result<ExactInt> {
    Ok((a(n + 1, k + 2)? - a(n, k + 2)?) * (4 * k + 4) - a(n + 2, k + 1)? * (k + 2)
        + (a(n + 1, k + 1)? - a(n, k + 1)?) * (8 * k + 6)
        + (a(n + 1, k)? - a(n, k)?) * (4 * k + 2))
}

/// Residuals `(n+4) op_{n+3,k+1} - RHS_1` and `(k+1) op_{n+2,k+2} - RHS_2` of
/// the two double recurrences at `(n, k)`, any integer `n`, `k >= 0`.
pub fn op321_double_recurrences(table: &OpTable, n: i64, k: i64) -> Result<(ExactInt, ExactInt)> {
    if k < 0 {
        return Err(Error::Domain(format!("double recurrences need k >= 0, got {k}")));
    }
    let a = |n: i64, k: i64| table.value(n, k);
    let first = a(n + 3, k + 1)? * (n + 4) - first_rhs(&a, n, k)?;
    let second = a(n + 2, k + 2)? * (k + 1) - second_rhs(&a, n, k)?;
    Ok((first, second))
}

/// Fills `{op_{n,k}(321) : 1 <= k <= n <= n_max}` from the boundary
/// conventions and the double recurrences alone, in order of increasing `n`
/// then `k`. Each cell `(N, K)` is solved from the first recurrence at
/// `(N-3, K-1)`; if its leading coefficient cannot divide the right-hand
/// side, the second recurrence at `(N-2, K-2)` is tried instead.
pub fn fill_table_by_double_recurrence(n_max: u32) -> Result<OpTable> {
    if n_max < 1 {
        return Err(Error::Domain("fill needs n_max >= 1".into()));
    }
    let mut table = OpTable::new(pattern_321());
    for big_n in 1..=n_max as i64 {
        for big_k in 1..=big_n {
            let value = {
                let a = |n: i64, k: i64| table.value(n, k);
                solve_cell(&a, big_n, big_k)?
            };
            table.insert(big_n as u32, big_k as u32, value, MethodTag::Recurrence);
        }
    }
    Ok(table)
}

fn solve_cell(a: &impl Fn(i64, i64) -> Result<ExactInt>, big_n: i64, big_k: i64) -> Result<ExactInt> {
    let exact_div = |num: ExactInt, den: i64| -> Option<ExactInt> {
        if den == 0 {
            return None;
        }
        let (q, r) = num.div_rem(&BigInt::from(den));
        r.is_zero().then_some(q)
    };
    let (n, k) = (big_n - 3, big_k - 1);
    if let Some(v) = exact_div(first_rhs(a, n, k)?, n + 4) {
        return Ok(v);
    }
    if big_k >= 2 {
        let (n, k) = (big_n - 2, big_k - 2);
        if let Some(v) = exact_div(second_rhs(a, n, k)?, k + 1) {
            return Ok(v);
        }
    }
    Err(Error::Recurrence {
        n: big_n,
        k: big_k,
        reason: "neither double recurrence divides exactly".into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{catalan, int};

    const TABLE_1: [&[i64]; 10] = [
        &[1],
        &[1, 2],
        &[1, 6, 5],
        &[1, 14, 27, 14],
        &[1, 30, 99, 112, 42],
        &[1, 62, 307, 564, 450, 132],
        &[1, 126, 867, 2284, 2895, 1782, 429],
        &[1, 254, 2307, 8124, 14485, 13992, 7007, 1430],
        &[1, 510, 5891, 26492, 62085, 83446, 65065, 27456, 4862],
        &[1, 1022, 14595, 81148, 239269, 418578, 450905, 294632, 107406, 16796],
    ];

    fn published_table() -> OpTable {
        let mut t = OpTable::new(pattern_321());
        for (row, values) in TABLE_1.iter().enumerate() {
            for (col, &v) in values.iter().enumerate() {
                t.insert(row as u32 + 1, col as u32 + 1, int(v), MethodTag::DoubleSum);
            }
        }
        t
    }

    #[test]
    fn linear_step_examples() {
        // k = 3, n = 6 from op_{5,3}, op_{4,3}, op_{3,3}
        assert_eq!(linear_recurrence_step(3, &[int(99), int(27), int(5)]).unwrap(), int(307));
        // k = 2, n = 3 from op_{2,2}
        assert_eq!(linear_recurrence_step(2, &[int(2)]).unwrap(), int(6));
        assert!(linear_recurrence_step(3, &[int(99)]).is_err());
    }

    #[test]
    fn linear_column_reaches_table() {
        assert_eq!(linear_recurrence_column(4, 10).unwrap()[10], int(81148));
        let col = linear_recurrence_column(2, 10).unwrap();
        assert_eq!(col[1], int(0));
        for n in 2..=10 {
            assert_eq!(col[n], int(TABLE_1[n - 1][1]));
        }
    }

    #[test]
    fn linear_recurrence_reports_missing_seed() {
        let mut t = OpTable::new(pattern_321());
        let err = op321_linear_recurrence(4, &mut t, 8).unwrap_err();
        assert!(matches!(err, Error::MissingValue { .. }));
    }

    #[test]
    fn linear_recurrence_agrees_with_double_sum() {
        for k in 2..=6u32 {
            let col = linear_recurrence_column(k, 60).unwrap();
            for n in k..=60 {
                assert_eq!(col[n as usize], op321_double_sum(n, k).unwrap(), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn double_recurrence_residuals_vanish_on_table() {
        let t = published_table();
        for (n, k) in [(2, 2), (-1, 0), (6, 5), (0, 0), (-3, 0), (3, 1)] {
            assert_eq!(op321_double_recurrences(&t, n, k).unwrap(), (int(0), int(0)), "({n},{k})");
        }
        for n in -4..=5 {
            for k in 0..=6 {
                assert_eq!(op321_double_recurrences(&t, n, k).unwrap(), (int(0), int(0)), "({n},{k})");
            }
        }
    }

    #[test]
    fn residuals_detect_a_corrupted_cell() {
        let mut t = published_table();
        t.insert(5, 3, int(100), MethodTag::DoubleSum);
        let (a, b) = op321_double_recurrences(&t, 2, 2).unwrap();
        assert!(!a.is_zero() || !b.is_zero());
    }

    #[test]
    fn fill_reproduces_table() {
        let filled = fill_table_by_double_recurrence(10).unwrap();
        assert_eq!(filled.len(), 55);
        assert!(filled.same_counts(&published_table()));
        let single = fill_table_by_double_recurrence(1).unwrap();
        assert_eq!(single.len(), 1);
        assert_eq!(single.count(1, 1), Some(&int(1)));
        let twelve = fill_table_by_double_recurrence(12).unwrap();
        assert_eq!(twelve.count(12, 12), Some(&catalan(12).unwrap()));
        assert_eq!(catalan(12).unwrap(), int(208012));
        assert!(fill_table_by_double_recurrence(0).is_err());
    }
}
