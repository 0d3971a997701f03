//! Exact checks of the hypergeometric evaluation that takes the double sum
//! to the closed form for `op_{n+1,n}(321)`.

use num_rational::BigRational;

use crate::arith::{factorial, pochhammer_signed, pow2, rat, rat_from_int, reciprocal_factorial, sign, ExactRational};
use crate::error::{Error, Result};
use crate::formulas::closed::op321_double_sum;

/// `op321_double_sum(n+1, n) == 3n^2 (2n)! / (n! (n+2)!)`.
pub fn appendix_final_identity_check(n: u32) -> Result<bool> {
    if n < 1 {
        return Err(Error::Domain("final identity needs n >= 1".into()));
    }
    let lhs = rat_from_int(op321_double_sum(n + 1, n)?);
    let n64 = n as u64;
    let rhs = BigRational::new(
        factorial(2 * n64) * (3 * n64 * n64),
        factorial(n64) * factorial(n64 + 2),
    );
    Ok(lhs == rhs)
}

fn three_halves() -> ExactRational {
    rat(3, 2)
}

/// Summand `(-1)^j 2^{n-2i+1} n (n-j-i-1) (3/2+i)_{j-i} (3/2)_{n-j-2} / (i! (n-2i)!)`.
///
/// `j - i` may be negative (rising factorial of negative length) and so may
/// `n - 2i` (where `1/(n-2i)! = 0`).
pub fn gosper_summand(n: i64, i: i64, j: i64) -> Result<ExactRational> {
    let shifted = three_halves() + rat_from_int(i.into());
    Ok(rat_from_int((sign(j) * n * (n - j - i - 1)).into())
        * pow2(n - 2 * i + 1)
        * pochhammer_signed(&shifted, j - i)?
        * pochhammer_signed(&three_halves(), n - j - 2)?
        * reciprocal_factorial(i)
        * reciprocal_factorial(n - 2 * i))
}

/// Antidifference `G(n, i; j)` of [`gosper_summand`] in `j`:
///
/// `(-1)^{j+1} 2^{n-2i} n (3/2+i)_{j-i} (3/2)_{n-j-1} (2n^2+2n-2in-4i-2jn-2j-1)
///   / ((n+1)(n+2) i! (n-2i)!)`.
pub fn gosper_certificate(n: i64, i: i64, j: i64) -> Result<ExactRational> {
    let shifted = three_halves() + rat_from_int(i.into());
    let poly = 2 * n * n + 2 * n - 2 * i * n - 4 * i - 2 * j * n - 2 * j - 1;
    Ok(rat_from_int((sign(j + 1) * n * poly).into())
        * pow2(n - 2 * i)
        * pochhammer_signed(&shifted, j - i)?
        * pochhammer_signed(&three_halves(), n - j - 1)?
        * reciprocal_factorial(i)
        * reciprocal_factorial(n - 2 * i)
        / rat_from_int(((n + 1) * (n + 2)).into()))
}

/// Whether `summand(n, i, j) == G(n, i; j+1) - G(n, i; j)` exactly, for
/// `0 <= i <= n-2`, `0 <= j <= n-i-2`.
pub fn gosper_certificate_check(n: i64, i: i64, j: i64) -> Result<bool> {
    if !(0 <= i && i <= n - 2 && 0 <= j && j <= n - i - 2) {
        return Err(Error::Domain(format!(
            "certificate check needs 0 <= i <= n-2 and 0 <= j <= n-i-2, got n={n} i={i} j={j}"
        )));
    }
    Ok(gosper_summand(n, i, j)? == gosper_certificate(n, i, j + 1)? - gosper_certificate(n, i, j)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn final_identity_small() {
        assert!(appendix_final_identity_check(1).unwrap());
        assert!(appendix_final_identity_check(4).unwrap());
        assert!(appendix_final_identity_check(0).is_err());
    }

    #[test]
    fn certificate_examples() {
        assert!(gosper_certificate_check(4, 0, 0).unwrap());
        assert!(gosper_certificate_check(5, 1, 1).unwrap());
        assert!(gosper_certificate_check(3, 2, 0).is_err());
    }

    #[test]
    fn certificate_sweep_small() {
        for n in 2..=15 {
            for i in 0..=n - 2 {
                for j in 0..=n - i - 2 {
                    assert!(gosper_certificate_check(n, i, j).unwrap(), "n={n} i={i} j={j}");
                }
            }
        }
    }

    #[test]
    fn certificate_detects_a_wrong_antidifference() {
        // dropping the polynomial factor's constant breaks telescoping
        let n = 6;
        let (i, j) = (1, 2);
        let s = gosper_summand(n, i, j).unwrap();
        let g = |j: i64| gosper_certificate(n, i, j).unwrap() * rat(2, 1);
        assert!(!s.is_zero());
        assert_ne!(s, g(j + 1) - g(j));
    }

    #[test]
    fn summand_with_negative_pochhammer_is_nonzero() {
        // j < i exercises rising factorials of negative length
        assert!(!gosper_summand(4, 1, 0).unwrap().is_zero());
    }
}
