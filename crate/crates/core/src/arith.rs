//! Exact integer and rational primitives shared by every formula in the crate.
//!
//! Counts are [`BigInt`]s and every intermediate that can go non-integral
//! (alternating sums with fractional prefactors, Pochhammer products at
//! half-integers, negative powers of two) is carried as a [`BigRational`].

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision signed count.
pub type ExactInt = BigInt;

/// Arbitrary-precision rational, always in lowest terms with a positive denominator.
pub type ExactRational = BigRational;

pub fn int(v: i64) -> ExactInt {
    BigInt::from(v)
}

pub fn rat(num: i64, den: i64) -> ExactRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_from_int(v: ExactInt) -> ExactRational {
    BigRational::from_integer(v)
}

/// Converts a rational that must be integral, reporting `context` otherwise.
pub fn to_integer(value: &ExactRational, context: &str) -> Result<ExactInt> {
    if value.is_integer() {
        Ok(value.to_integer())
    } else {
        Err(Error::NonIntegral {
            context: context.to_string(),
            value: value.to_string(),
        })
    }
}

/// Binomial coefficient, total over the integers.
///
/// Zero when `k < 0` or `0 <= n < k`. Negative `n` uses the polynomial
/// extension `n(n-1)...(n-k+1)/k!`.
pub fn binomial(n: i64, k: i64) -> ExactInt {
    if k < 0 || (n >= 0 && k > n) {
        return BigInt::zero();
    }
    let k = if n >= 0 { k.min(n - k) } else { k };
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

pub fn factorial(n: u64) -> ExactInt {
    (2..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// `1/a!`, with the reciprocal-Gamma convention `1/a! = 0` for negative `a`.
pub fn reciprocal_factorial(a: i64) -> ExactRational {
    if a < 0 {
        BigRational::zero()
    } else {
        BigRational::new(BigInt::one(), factorial(a as u64))
    }
}

/// The `n`-th Catalan number `C(2n, n) / (n + 1)`.
pub fn catalan(n: i64) -> Result<ExactInt> {
    if n < 0 {
        return Err(Error::Domain(format!("catalan index must be nonnegative, got {n}")));
    }
    Ok(binomial(2 * n, n) / (n + 1))
}

/// Stirling numbers of the second kind from the triangular recurrence
/// `S(n, k) = k S(n-1, k) + S(n-1, k-1)`.
pub fn stirling2(n: i64, k: i64) -> ExactInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let (n, k) = (n as usize, k as usize);
    // row[j] holds S(i, j) for the current i
    let mut row = vec![BigInt::zero(); k + 1];
    row[0] = BigInt::one();
    for i in 1..=n {
        for j in (1..=k.min(i)).rev() {
            let prev = std::mem::take(&mut row[j]);
            row[j] = prev * j + &row[j - 1];
        }
        row[0] = BigInt::zero();
    }
    std::mem::take(&mut row[k])
}

/// Rising factorial `(x)_n = x (x+1) ... (x+n-1)`; `(x)_0 = 1`.
pub fn pochhammer(x: &ExactRational, n: u64) -> ExactRational {
    let mut acc = BigRational::one();
    let mut term = x.clone();
    for _ in 0..n {
        acc *= &term;
        term += BigInt::one();
    }
    acc
}

/// Rising factorial extended to negative length: `(x)_{-m} = 1 / ((x-1)(x-2)...(x-m))`.
///
/// Errors if a factor of the denominator vanishes.
pub fn pochhammer_signed(x: &ExactRational, n: i64) -> Result<ExactRational> {
    if n >= 0 {
        return Ok(pochhammer(x, n as u64));
    }
    let mut denom = BigRational::one();
    for t in 1..=(-n) {
        denom *= x - BigRational::from_integer(BigInt::from(t));
    }
    if denom.is_zero() {
        return Err(Error::Domain(format!("pochhammer ({x})_{n} has a pole")));
    }
    Ok(denom.recip())
}

/// `2^e` for any integer exponent.
pub fn pow2(e: i64) -> ExactRational {
    let mag = BigInt::one() << e.unsigned_abs() as usize;
    if e >= 0 {
        BigRational::from_integer(mag)
    } else {
        BigRational::new(BigInt::one(), mag)
    }
}

/// `(-1)^e` as a small signed integer.
pub fn sign(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

pub fn lcm_of_denominators<'a>(values: impl IntoIterator<Item = &'a ExactRational>) -> ExactInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// Nearest `f64` to a rational; only used at reporting boundaries.
pub fn to_f64(value: &ExactRational) -> f64 {
    value.to_f64().unwrap_or_else(|| {
        // Fall back through a scaled integer quotient when the direct path overflows.
        let scale = BigInt::one() << 64usize;
        let q = (value.numer() * &scale) / value.denom();
        q.to_f64().unwrap_or(f64::NAN) / 2f64.powi(64)
    })
}
