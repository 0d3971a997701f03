//! Closed forms for `op_{n,k}(321)`.

use num_rational::BigRational;
use num_traits::Zero;

use crate::arith::{binomial, factorial, pow2, rat_from_int, sign, to_integer, ExactInt, ExactRational};
use crate::error::{Error, Result};
use crate::poly::UniPoly;

/// `(2j-2i+1)/(j+1) C(2i,i) C(2(j-i),j-i)`, the weight shared by the
/// double sum and the `P_k` coefficients.
fn weight(i: i64, j: i64) -> ExactRational {
    BigRational::new(
        binomial(2 * i, i) * binomial(2 * (j - i), j - i) * (2 * j - 2 * i + 1),
        (j + 1).into(),
    )
}

/// `op_{n,k}(321)` for `n >= k >= 1`:
///
/// `(-1)^{k-1} k + sum_{j=0}^{k-2} (-1)^{k-j} C(k,j+2) 2^{n-2j}
///   sum_{i=0}^{j} (2j-2i+1)/(j+1) C(2i,i) C(2(j-i),j-i) C(n+2i,2i)`.
///
/// The sum is accumulated over rationals; a fractional result is a bug.
pub fn op321_double_sum(n: u32, k: u32) -> Result<ExactInt> {
    if k < 1 || n < k {
        return Err(Error::Domain(format!("double sum needs n >= k >= 1, got n = {n}, k = {k}")));
    }
    let (n, k) = (n as i64, k as i64);
    let mut total = rat_from_int((sign(k - 1) * k).into());
    for j in 0..=k - 2 {
        let inner: ExactRational = (0..=j)
            .map(|i| weight(i, j) * rat_from_int(binomial(n + 2 * i, 2 * i)))
            .sum();
        total += inner * rat_from_int(binomial(k, j + 2) * sign(k - j)) * pow2(n - 2 * j);
    }
    to_integer(&total, "op321 double sum")
}

/// `P_k` with `op_{n,k}(321) = P_k(n) 2^n + (-1)^{k-1} k` for `n >= 1`:
///
/// `P_k(n) = sum_{i=0}^{k-2} (n+1)_{2i}/i!^2 sum_{j=i}^{k-2} (-1)^{k-j} 4^{-j} C(k,j+2)
///   (2j-2i+1)/(j+1) C(2(j-i),j-i)`.
pub fn pk_polynomial(k: u32) -> Result<UniPoly> {
    if k < 2 {
        return Err(Error::Domain(format!("P_k needs k >= 2, got {k}")));
    }
    let k = k as i64;
    let mut p = UniPoly::zero();
    for i in 0..=k - 2 {
        let mut c = BigRational::zero();
        for j in i..=k - 2 {
            // weight() carries C(2i,i), which the i!^2 normalization below does not want
            c += weight(i, j) / rat_from_int(binomial(2 * i, i))
                * rat_from_int(binomial(k, j + 2) * sign(k - j))
                * pow2(-2 * j);
        }
        let i_fact = rat_from_int(factorial(i as u64));
        let term = UniPoly::rising(1, 2 * i as u32).scale(&(c / (&i_fact * &i_fact)));
        p = &p + &term;
    }
    Ok(p)
}

/// `P_k(n) 2^n + (-1)^{k-1} k`, exact.
pub fn op321_from_pk(pk: &UniPoly, n: u32, k: u32) -> Result<ExactInt> {
    let v = pk.eval_int(n as i64) * pow2(n as i64) + rat_from_int((sign(k as i64 - 1) * k as i64).into());
    to_integer(&v, "P_k evaluation")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{catalan, int};

    #[test]
    fn double_sum_examples() {
        assert_eq!(op321_double_sum(8, 4).unwrap(), int(8124));
        assert_eq!(op321_double_sum(6, 1).unwrap(), int(1));
        assert_eq!(op321_double_sum(10, 10).unwrap(), int(16796));
        assert!(op321_double_sum(3, 5).is_err());
        assert!(op321_double_sum(3, 0).is_err());
    }

    #[test]
    fn small_k_closed_forms() {
        for n in 2..=40u32 {
            assert_eq!(op321_double_sum(n, 2).unwrap(), (int(1) << n as usize) - 2);
            assert_eq!(op321_double_sum(n, n).unwrap(), catalan(n as i64).unwrap());
        }
    }

    #[test]
    fn pk_examples() {
        assert_eq!(pk_polynomial(2).unwrap(), UniPoly::one());
        assert_eq!(pk_polynomial(3).unwrap(), UniPoly::from_ints_over(&[-16, 3, 1], 8));
        assert_eq!(pk_polynomial(4).unwrap(), UniPoly::from_ints_over(&[576, -166, -37, 10, 1], 192));
        assert!(pk_polynomial(1).is_err());
    }

    #[test]
    fn pk_degree_is_2k_minus_4() {
        for k in 2..=10u32 {
            assert_eq!(pk_polynomial(k).unwrap().degree(), Some(2 * k as usize - 4));
        }
    }

    #[test]
    fn pk_reproduces_double_sum() {
        for k in 2..=8 {
            let pk = pk_polynomial(k).unwrap();
            for n in 1..=40 {
                let expected = if n < k { int(0) } else { op321_double_sum(n, k).unwrap() };
                assert_eq!(op321_from_pk(&pk, n, k).unwrap(), expected, "n={n} k={k}");
            }
        }
    }
}
