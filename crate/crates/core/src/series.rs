//! Truncated bivariate power series in `(x, y)` with exact rational
//! coefficients, and the generating functions for words and ordered
//! partitions avoiding a pattern of length three.
//!
//! `x` marks the alphabet size / number of blocks `k` and `y` the length `n`.
//! A series with window `(K, N)` stores every coefficient `x^k y^n` with
//! `k <= K`, `n <= N`; ring operations are exact inside the window and never
//! look outside it.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::{catalan, rat, to_integer, ExactInt, ExactRational};
use crate::error::{Error, Result};

/// Dense grid `c[k][n]`, `0 <= k <= K`, `0 <= n <= N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiSeries {
    k_max: usize,
    n_max: usize,
    coeffs: Vec<Vec<ExactRational>>,
}

impl BiSeries {
    pub fn zero(k_max: usize, n_max: usize) -> Self {
        Self {
            k_max,
            n_max,
            coeffs: vec![vec![BigRational::zero(); n_max + 1]; k_max + 1],
        }
    }

    pub fn constant(c: ExactRational, k_max: usize, n_max: usize) -> Self {
        let mut s = Self::zero(k_max, n_max);
        s.coeffs[0][0] = c;
        s
    }

    pub fn one(k_max: usize, n_max: usize) -> Self {
        Self::constant(BigRational::one(), k_max, n_max)
    }

    /// Truncation orders `(K, N)`.
    pub fn window(&self) -> (usize, usize) {
        (self.k_max, self.n_max)
    }

    /// Coefficient of `x^k y^n`; zero outside the window.
    pub fn coeff(&self, k: usize, n: usize) -> ExactRational {
        self.coeffs
            .get(k)
            .and_then(|row| row.get(n))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn coeff_int(&self, k: usize, n: usize) -> Result<ExactInt> {
        to_integer(&self.coeff(k, n), "series coefficient")
    }

    pub fn set(&mut self, k: usize, n: usize, c: ExactRational) {
        self.coeffs[k][n] = c;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().flatten().all(Zero::is_zero)
    }

    /// Whether every coefficient with `k <= k_lim`, `n <= n_lim` vanishes.
    pub fn is_zero_within(&self, k_lim: usize, n_lim: usize) -> bool {
        (0..=k_lim.min(self.k_max)).all(|k| (0..=n_lim.min(self.n_max)).all(|n| self.coeffs[k][n].is_zero()))
    }

    fn check_window(&self, other: &Self) -> Result<()> {
        if self.window() != other.window() {
            return Err(Error::WindowMismatch {
                left: self.window(),
                right: other.window(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_window(other)?;
        let mut out = self.clone();
        for (row, orow) in out.coeffs.iter_mut().zip(&other.coeffs) {
            for (c, o) in row.iter_mut().zip(orow) {
                *c += o;
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, c: &ExactRational) -> Self {
        Self {
            k_max: self.k_max,
            n_max: self.n_max,
            coeffs: self.coeffs.iter().map(|row| row.iter().map(|a| a * c).collect()).collect(),
        }
    }

    /// Truncated product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_window(other)?;
        let mut out = Self::zero(self.k_max, self.n_max);
        for (k1, row) in self.coeffs.iter().enumerate() {
            for (n1, a) in row.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for k2 in 0..=self.k_max - k1 {
                    for n2 in 0..=self.n_max - n1 {
                        let b = &other.coeffs[k2][n2];
                        if !b.is_zero() {
                            out.coeffs[k1 + k2][n1 + n2] += a * b;
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Multiplicative inverse; the constant term must be nonzero.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = &self.coeffs[0][0];
        if c0.is_zero() {
            return Err(Error::Domain("series inverse needs a nonzero constant term".into()));
        }
        let inv_c0 = c0.recip();
        let mut g = Self::zero(self.k_max, self.n_max);
        for k in 0..=self.k_max {
            for n in 0..=self.n_max {
                if k == 0 && n == 0 {
                    g.coeffs[0][0] = inv_c0.clone();
                    continue;
                }
                let mut acc = BigRational::zero();
                for a in 0..=k {
                    for b in 0..=n {
                        if (a, b) == (0, 0) {
                            continue;
                        }
                        let d = &self.coeffs[a][b];
                        if !d.is_zero() {
                            acc += d * &g.coeffs[k - a][n - b];
                        }
                    }
                }
                g.coeffs[k][n] = -acc * &inv_c0;
            }
        }
        Ok(g)
    }

    /// Formal `∂/∂x`; the top row `k = K` becomes undetermined and is left zero.
    pub fn d_dx(&self) -> Self {
        let mut out = Self::zero(self.k_max, self.n_max);
        for k in 1..=self.k_max {
            for n in 0..=self.n_max {
                out.coeffs[k - 1][n] = &self.coeffs[k][n] * BigInt::from(k);
            }
        }
        out
    }

    /// Formal `∂/∂y`; the last column `n = N` is left zero.
    pub fn d_dy(&self) -> Self {
        let mut out = Self::zero(self.k_max, self.n_max);
        for k in 0..=self.k_max {
            for n in 1..=self.n_max {
                out.coeffs[k][n - 1] = &self.coeffs[k][n] * BigInt::from(n);
            }
        }
        out
    }

    /// `S(s(x), y)` for a univariate `s(x)` with zero constant term, given as
    /// its coefficients `s[0..]` (so `s[0]` must be zero). Row by row in `y`.
    pub fn substitute_x(&self, s: &[ExactRational]) -> Result<Self> {
        if s.first().is_some_and(|c| !c.is_zero()) {
            return Err(Error::Domain("substituted series must have zero constant term".into()));
        }
        let kk = self.k_max;
        let s_trunc: Vec<ExactRational> = (0..=kk).map(|i| s.get(i).cloned().unwrap_or_else(BigRational::zero)).collect();
        // powers[m][i]: coefficient of x^i in s(x)^m
        let mut powers = vec![vec![BigRational::zero(); kk + 1]];
        powers[0][0] = BigRational::one();
        for m in 1..=kk {
            let prev = &powers[m - 1];
            let mut next = vec![BigRational::zero(); kk + 1];
            for (i, a) in prev.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (j, b) in s_trunc.iter().enumerate().take(kk + 1 - i) {
                    if !b.is_zero() {
                        next[i + j] += a * b;
                    }
                }
            }
            powers.push(next);
        }
        let mut out = Self::zero(self.k_max, self.n_max);
        for n in 0..=self.n_max {
            for (m, power) in powers.iter().enumerate() {
                let w = &self.coeffs[m][n];
                if w.is_zero() {
                    continue;
                }
                for (i, c) in power.iter().enumerate() {
                    if !c.is_zero() {
                        out.coeffs[i][n] += w * c;
                    }
                }
            }
        }
        Ok(out)
    }
}

/// Sparse bivariate polynomial, used to state numerators and denominators.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BiPoly {
    terms: BTreeMap<(usize, usize), ExactRational>,
}

impl BiPoly {
    /// From `(x-degree, y-degree, coefficient)` triples; repeated monomials add up.
    pub fn from_terms(terms: &[(usize, usize, i64)]) -> Self {
        let mut p = Self::default();
        for &(k, n, c) in terms {
            *p.terms.entry((k, n)).or_insert_with(BigRational::zero) += BigRational::from_integer(c.into());
        }
        p.terms.retain(|_, c| !c.is_zero());
        p
    }

    pub fn constant_term(&self) -> ExactRational {
        self.terms.get(&(0, 0)).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn to_series(&self, k_max: usize, n_max: usize) -> BiSeries {
        let mut s = BiSeries::zero(k_max, n_max);
        for (&(k, n), c) in &self.terms {
            if k <= k_max && n <= n_max {
                s.coeffs[k][n] = c.clone();
            }
        }
        s
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::default();
        for (&(k1, n1), a) in &self.terms {
            for (&(k2, n2), b) in &other.terms {
                *out.terms.entry((k1 + k2, n1 + n2)).or_insert_with(BigRational::zero) += a * b;
            }
        }
        out.terms.retain(|_, c| !c.is_zero());
        out
    }
}

/// `numerator / denominator` expanded to window `(K, N)`.
pub fn expand_rational(numerator: &BiPoly, denominator: &BiPoly, k_max: usize, n_max: usize) -> Result<BiSeries> {
    if denominator.constant_term().is_zero() {
        return Err(Error::Domain("denominator has zero constant term".into()));
    }
    numerator
        .to_series(k_max, n_max)
        .mul(&denominator.to_series(k_max, n_max).inverse()?)
}

/// `C(z) = sum_m C_m z^m` for a series `z` divisible by `x`; terms with
/// `m > K` fall outside the window, so the sum is finite.
pub fn catalan_compose(z: &BiSeries) -> Result<BiSeries> {
    let (k_max, n_max) = z.window();
    if (0..=n_max).any(|n| !z.coeff(0, n).is_zero()) {
        return Err(Error::Domain(
            "catalan composition needs every term of z to carry a factor of x".into(),
        ));
    }
    // Horner from the top: C_K, C_K z + C_{K-1}, ...
    let mut acc = BiSeries::constant(BigRational::from_integer(catalan(k_max as i64)?), k_max, n_max);
    for m in (0..k_max).rev() {
        acc = acc
            .mul(z)?
            .add(&BiSeries::constant(BigRational::from_integer(catalan(m as i64)?), k_max, n_max))?;
    }
    Ok(acc)
}

fn poly(terms: &[(usize, usize, i64)]) -> BiPoly {
    BiPoly::from_terms(terms)
}

/// `1 - 2y`
fn one_minus_2y() -> BiPoly {
    poly(&[(0, 0, 1), (0, 1, -2)])
}

/// `sum_{n,k >= 0} |[k]^n(321)| x^k y^n =
///  1 + x/(1-y) + x^2/((1-x)(1-2y)) C(xy(1-y)/((1-x)(1-2y)^2))`.
pub fn word_gf_coefficients(k_max: usize, n_max: usize) -> Result<BiSeries> {
    let one_minus_x = poly(&[(0, 0, 1), (1, 0, -1)]);
    let one_minus_y = poly(&[(0, 0, 1), (0, 1, -1)]);
    let z = expand_rational(
        &poly(&[(1, 1, 1), (1, 2, -1)]),
        &one_minus_x.mul(&one_minus_2y()).mul(&one_minus_2y()),
        k_max,
        n_max,
    )?;
    let outer = expand_rational(&poly(&[(2, 0, 1)]), &one_minus_x.mul(&one_minus_2y()), k_max, n_max)?;
    let unary = expand_rational(&poly(&[(1, 0, 1)]), &one_minus_y, k_max, n_max)?;
    BiSeries::one(k_max, n_max)
        .add(&unary)?
        .add(&outer.mul(&catalan_compose(&z)?)?)
}

/// `sum_{n >= k >= 0} op_{n,k}(321) x^k y^n = 1/(1+x) + x/((1+x)^2(1-y))
///  + x^2/((1+x)^2(1-2y)) C(xy(1-y)/(1-2y)^2)`.
pub fn op_gf_coefficients(k_max: usize, n_max: usize) -> Result<BiSeries> {
    let one_plus_x = poly(&[(0, 0, 1), (1, 0, 1)]);
    let one_plus_x_sq = one_plus_x.mul(&one_plus_x);
    let one_minus_y = poly(&[(0, 0, 1), (0, 1, -1)]);
    let z = expand_rational(
        &poly(&[(1, 1, 1), (1, 2, -1)]),
        &one_minus_2y().mul(&one_minus_2y()),
        k_max,
        n_max,
    )?;
    let first = expand_rational(&poly(&[(0, 0, 1)]), &one_plus_x, k_max, n_max)?;
    let second = expand_rational(&poly(&[(1, 0, 1)]), &one_plus_x_sq.mul(&one_minus_y), k_max, n_max)?;
    let third = expand_rational(&poly(&[(2, 0, 1)]), &one_plus_x_sq.mul(&one_minus_2y()), k_max, n_max)?;
    first.add(&second)?.add(&third.mul(&catalan_compose(&z)?)?)
}

/// `(1/(1+x)) W(x/(1+x), y)` computed from the word series, compared cell by
/// cell with the ordered-partition series on the same window.
pub fn substitution_identity_check(k_max: usize, n_max: usize) -> Result<bool> {
    let words = word_gf_coefficients(k_max, n_max)?;
    // x/(1+x) = x - x^2 + x^3 - ...
    let s: Vec<ExactRational> = (0..=k_max)
        .map(|i| if i == 0 { BigRational::zero() } else { rat(if i % 2 == 1 { 1 } else { -1 }, 1) })
        .collect();
    let inv_one_plus_x = expand_rational(&poly(&[(0, 0, 1)]), &poly(&[(0, 0, 1), (1, 0, 1)]), k_max, n_max)?;
    let lhs = inv_one_plus_x.mul(&words.substitute_x(&s)?)?;
    Ok(lhs == op_gf_coefficients(k_max, n_max)?)
}

/// Left-hand sides of the two first-order PDEs satisfied by the
/// ordered-partition series `A(x, y)`:
///
/// `y(1-(5+4x)y+8(1+x)y^2-4(1+x)y^3) A_y + (1-2(2+x)y+6(1+x)y^2-4(1+x)y^3) A - (1-4y+6y^2-4y^3)`
///
/// `x((1-2y)^2+(1-8y+8y^2)x-4y(1-y)x^2) A_x - ((1-2y)^2-(1-2y^2+2y)x+2y(1-y)x^2) A
///  + ((1-2y)^2-(1-2y^2+2y)x)`
pub fn pde_residuals(a: &BiSeries) -> Result<(BiSeries, BiSeries)> {
    let (kk, nn) = a.window();
    let s = |terms: &[(usize, usize, i64)]| poly(terms).to_series(kk, nn);

    let c1 = s(&[(0, 1, 1), (0, 2, -5), (1, 2, -4), (0, 3, 8), (1, 3, 8), (0, 4, -4), (1, 4, -4)]);
    let c0 = s(&[(0, 0, 1), (0, 1, -4), (1, 1, -2), (0, 2, 6), (1, 2, 6), (0, 3, -4), (1, 3, -4)]);
    let inhom = s(&[(0, 0, 1), (0, 1, -4), (0, 2, 6), (0, 3, -4)]);
    let first = c1.mul(&a.d_dy())?.add(&c0.mul(a)?)?.sub(&inhom)?;

    // (1-2y)^2 = 1 - 4y + 4y^2
    let d1 = s(&[
        (1, 0, 1), (1, 1, -4), (1, 2, 4),
        (2, 0, 1), (2, 1, -8), (2, 2, 8),
        (3, 1, -4), (3, 2, 4),
    ]);
    let d0 = s(&[
        (0, 0, 1), (0, 1, -4), (0, 2, 4),
        (1, 0, -1), (1, 2, 2), (1, 1, -2),
        (2, 1, 2), (2, 2, -2),
    ]);
    let d_inhom = s(&[(0, 0, 1), (0, 1, -4), (0, 2, 4), (1, 0, -1), (1, 2, 2), (1, 1, -2)]);
    let second = d1.mul(&a.d_dx())?.sub(&d0.mul(a)?)?.add(&d_inhom)?;
    Ok((first, second))
}

/// Both PDE residuals of the ordered-partition series vanish on the reduced
/// window `(K-3, N-3)`.
pub fn pde_residual_check(k_max: usize, n_max: usize) -> Result<bool> {
    if k_max <= 3 || n_max <= 3 {
        return Err(Error::Domain(format!(
            "PDE check needs K > 3 and N > 3 to leave a nonempty window, got ({k_max}, {n_max})"
        )));
    }
    let a = op_gf_coefficients(k_max, n_max)?;
    let (first, second) = pde_residuals(&a)?;
    Ok(first.is_zero_within(k_max - 3, n_max - 3) && second.is_zero_within(k_max - 3, n_max - 3))
}
