//! Counts of words over `[k]` avoiding a pattern of length three.

use num_rational::BigRational;
use num_traits::Zero;

use crate::arith::{binomial, pow2, rat_from_int, to_integer, ExactInt, ExactRational};
use crate::error::{Error, Result};

fn require_k(k: u32) -> Result<()> {
    if k < 2 {
        return Err(Error::Domain(format!("word count formulas need k >= 2, got {k}")));
    }
    Ok(())
}

/// `C(2i, i) / (i + 1)` times `C(2(t - i), t - i)`: the Catalan-times-central-binomial
/// product that both word-count sums are built from.
fn catalan_central(i: i64, t: i64) -> ExactRational {
    BigRational::new(binomial(2 * i, i) * binomial(2 * (t - i), t - i), (i + 1).into())
}

/// `|[k]^n(p)|` for `p` in S3 as the double sum
/// `2^{n-2(k-2)} sum_{j<=i<=k-2} C(2i,i)/(i+1) C(2(k-2-i),k-2-i) C(n+2j,2j)`.
pub fn words_321_double_sum(n: u32, k: u32) -> Result<ExactInt> {
    require_k(k)?;
    let (n, t) = (n as i64, k as i64 - 2);
    let mut sum = BigRational::zero();
    for j in 0..=t {
        let inner: ExactRational = (j..=t).map(|i| catalan_central(i, t)).sum();
        sum += inner * rat_from_int(binomial(n + 2 * j, 2 * j));
    }
    to_integer(&(sum * pow2(n - 2 * t)), "words double sum")
}

/// The same count collapsed to a single sum:
/// `2^{n-2(k-2)}/(k-1) sum_j (2k-2j-3) C(2j,j) C(2(k-2-j),k-2-j) C(n+2j,2j)`.
pub fn words_321_single_sum(n: u32, k: u32) -> Result<ExactInt> {
    require_k(k)?;
    let (n, k) = (n as i64, k as i64);
    let t = k - 2;
    let sum: ExactInt = (0..=t)
        .map(|j| {
            binomial(2 * j, j) * binomial(2 * (t - j), t - j) * binomial(n + 2 * j, 2 * j) * (2 * k - 2 * j - 3)
        })
        .sum();
    let value = rat_from_int(sum) * pow2(n - 2 * t) / rat_from_int((k - 1).into());
    to_integer(&value, "words single sum")
}

/// Checks `sum_{i=j}^{k} C(2i,i)/(i+1) C(2(k-i),k-i) = (2k+1-2j)/(k+1) C(2j,j) C(2(k-j),k-j)`
/// exactly; this is what turns the double sum into the single sum.
pub fn sum_identity_check(k: u32, j: u32) -> Result<bool> {
    if j > k {
        return Err(Error::Domain(format!("need 0 <= j <= k, got j = {j}, k = {k}")));
    }
    let (k, j) = (k as i64, j as i64);
    let lhs: ExactRational = (j..=k).map(|i| catalan_central(i, k)).sum();
    let rhs = BigRational::new(
        binomial(2 * j, j) * binomial(2 * (k - j), k - j) * (2 * k + 1 - 2 * j),
        (k + 1).into(),
    );
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;
    use crate::oracle::count_words_avoiding;

    #[test]
    fn double_sum_examples() {
        assert_eq!(words_321_double_sum(3, 3).unwrap(), int(26));
        assert_eq!(words_321_double_sum(5, 2).unwrap(), int(32));
        // 81 words of length 4 over [3], nine of which contain 321
        assert_eq!(words_321_double_sum(4, 3).unwrap(), int(72));
        assert!(words_321_double_sum(4, 1).is_err());
    }

    #[test]
    fn single_sum_examples() {
        assert_eq!(words_321_single_sum(3, 2).unwrap(), int(8));
        assert_eq!(words_321_single_sum(3, 3).unwrap(), int(26));
        assert!(words_321_single_sum(3, 0).is_err());
    }

    #[test]
    fn sums_match_oracle() {
        let p = "321".parse().unwrap();
        for k in 2..=6 {
            for n in 0..=7 {
                let oracle = count_words_avoiding(n, k, &p);
                assert_eq!(words_321_double_sum(n, k).unwrap(), oracle, "n={n} k={k}");
                assert_eq!(words_321_single_sum(n, k).unwrap(), oracle, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn single_equals_double() {
        for k in 2..=12 {
            for n in 0..=40 {
                assert_eq!(words_321_single_sum(n, k).unwrap(), words_321_double_sum(n, k).unwrap());
            }
        }
    }

    #[test]
    fn sum_identity_cases() {
        // k = 1, j = 0: 1*2 + 1*1 = 3 on both sides
        assert!(sum_identity_check(1, 0).unwrap());
        for k in 0..=10 {
            assert!(sum_identity_check(k, k).unwrap());
        }
        assert!(sum_identity_check(2, 3).is_err());
    }
}
