//! Diagonals `Y_r(m) = op_{m+r,m}(321)` and their polynomials `Q_r`, with
//! `Y_r(n) = (2n)! / (n! (n+r+1)!) Q_r(n)`.

use std::sync::RwLock;

use num_bigint::BigInt;
use once_cell::sync::Lazy;

use crate::arith::{factorial, rat_from_int, to_integer, ExactInt};
use crate::error::{Error, Result};
use crate::poly::UniPoly;
use crate::table::OpTable;

/// `Q_0, Q_1, ...`, grown bottom-up under the write lock and only read afterwards.
static QR_CACHE: Lazy<RwLock<Vec<UniPoly>>> = Lazy::new(|| RwLock::new(vec![UniPoly::one()]));

fn lin(a: i64, b: i64) -> UniPoly {
    UniPoly::linear(a, b)
}

fn quad(a: i64, b: i64, c: i64) -> UniPoly {
    UniPoly::from_ints(&[c, b, a])
}

/// `(a n + b)_m` as a polynomial in `n`.
fn rising_lin(a: i64, b: i64, m: i64) -> UniPoly {
    (0..m).fold(UniPoly::one(), |acc, t| &acc * &lin(a, b + t))
}

fn prod(factors: &[&UniPoly]) -> UniPoly {
    factors.iter().fold(UniPoly::one(), |acc, f| &acc * f)
}

/// One step of the `Q_r` recurrence (`r >= 1`), given `Q_{r-1}, Q_{r-2}, Q_{r-3}`.
fn qr_step(r: i64, q1: &UniPoly, q2: &UniPoly, q3: &UniPoly) -> Result<UniPoly> {
    let two_n_1_3 = rising_lin(2, 1, 3);
    let terms = [
        prod(&[&two_n_1_3, &q1.shift(2)]).scale(&rat_from_int((-2).into())),
        prod(&[&quad(3, 3 * r + 8, -4 * r + 4), &lin(2, 1), &q1.shift(1)]).scale(&rat_from_int(2.into())),
        prod(&[&quad(4, 4 * (r + 1), 14 * r - 8), &lin(1, r + 1), q1]),
        prod(&[&lin(1, r + 2), &two_n_1_3, &q2.shift(2)]).scale(&rat_from_int(8.into())),
        prod(&[&lin(8, -10 * r + 16), &lin(1, r + 1), &lin(2, 1), &q2.shift(1)])
            .scale(&rat_from_int((-2).into())),
        prod(&[&lin(1, 2), &rising_lin(1, r - 1, 3), q2]).scale(&rat_from_int((-4).into())),
        prod(&[&rising_lin(1, r + 1, 2), &two_n_1_3, &q3.shift(2)]).scale(&rat_from_int((-8).into())),
        prod(&[&lin(1, 2), &rising_lin(1, r - 1, 3), &lin(2, 1), &q3.shift(1)])
            .scale(&rat_from_int((-8).into())),
    ];
    let sum = terms.iter().fold(UniPoly::zero(), |acc, t| &acc + t);
    let q = sum.scale(&num_rational::BigRational::new(1.into(), (6 * r).into()));
    match q.degree() {
        Some(d) if d as i64 > 2 * r => Err(Error::Recurrence {
            n: 0,
            k: r,
            reason: format!("Q_{r} came out with degree {d} > {}", 2 * r),
        }),
        _ => Ok(q),
    }
}

/// `Q_r` from its three-term recurrence with `Q_0 = 1` and `Q_j = 0` for `j < 0`.
pub fn qr_polynomial(r: i64) -> Result<UniPoly> {
    if r < 0 {
        return Ok(UniPoly::zero());
    }
    let r = r as usize;
    if let Some(q) = QR_CACHE.read().expect("Q_r cache poisoned").get(r) {
        return Ok(q.clone());
    }
    let mut cache = QR_CACHE.write().expect("Q_r cache poisoned");
    while cache.len() <= r {
        let next = cache.len() as i64;
        let at = |j: i64| -> UniPoly {
            if j < 0 {
                UniPoly::zero()
            } else {
                cache[j as usize].clone()
            }
        };
        let q = qr_step(next, &at(next - 1), &at(next - 2), &at(next - 3))?;
        cache.push(q);
    }
    Ok(cache[r].clone())
}

/// `(2n)! / (n! a!)` with `a! = 1` for negative `a`.
fn diagonal_prefactor(n: u32, a: i64) -> num_rational::BigRational {
    let a_fact = if a < 0 { BigInt::from(1) } else { factorial(a as u64) };
    num_rational::BigRational::new(factorial(2 * n as u64), factorial(n as u64) * a_fact)
}

/// `op_{n+r,n}(321) = (2n)! / (n! (n+r+1)!) Q_r(n)`.
pub fn diagonal_count(n: u32, r: i64) -> Result<ExactInt> {
    let q = qr_polynomial(r)?;
    let value = diagonal_prefactor(n, n as i64 + r + 1) * q.eval_int(n as i64);
    to_integer(&value, "diagonal count")
}

/// Residual of the diagonal recurrence
///
/// `6r Y_r(m) = -(m+1)(m+r+2) Y_{r-1}(m+2) + (3m^2+(3r+8)m-4r+4) Y_{r-1}(m+1)
///   + (4m^2+4m(r+1)+14r-8) Y_{r-1}(m) + 4(m+1)(m+r+2) Y_{r-2}(m+2)
///   - (8m-10r+16) Y_{r-2}(m+1) - 4(m+2)(m+r-1) Y_{r-2}(m)
///   - 4(m+1)(m+r+2) Y_{r-3}(m+2) - 4(m+2)(m+r-1) Y_{r-3}(m+1)`.
///
/// At `r = 0` that relation is empty, so the first-order relation
/// `(m+2) Y_0(m+1) - (4m+2) Y_0(m) = 0` is checked instead.
pub fn yr_recurrence_residual(table: &OpTable, m: i64, r: i64) -> Result<ExactInt> {
    if m < 0 {
        return Err(Error::Domain(format!("diagonal recurrence needs m >= 0, got {m}")));
    }
    let y = |r: i64, m: i64| table.value(m + r, m);
    if r == 0 {
        return Ok(y(0, m + 1)? * (m + 2) - y(0, m)? * (4 * m + 2));
    }
    let rhs = -y(r - 1, m + 2)? * ((m + 1) * (m + r + 2))
        + y(r - 1, m + 1)? * (3 * m * m + (3 * r + 8) * m - 4 * r + 4)
        + y(r - 1, m)? * (4 * m * m + 4 * m * (r + 1) + 14 * r - 8)
        + y(r - 2, m + 2)? * (4 * (m + 1) * (m + r + 2))
        - y(r - 2, m + 1)? * (8 * m - 10 * r + 16)
        - y(r - 2, m)? * (4 * (m + 2) * (m + r - 1))
        - y(r - 3, m + 2)? * (4 * (m + 1) * (m + r + 2))
        - y(r - 3, m + 1)? * (4 * (m + 2) * (m + r - 1));
    Ok(y(r, m)? * (6 * r) - rhs)
}
