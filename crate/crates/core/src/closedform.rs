//! Closed-form counting formulas used to cross-check the path enumerators
//! and Riordan triangles: binomial coefficients, Fuss-Catalan numbers, the
//! ballot-style count for bounded k-Dyck paths, and the generating function
//! for generalized Fine numbers.

use crate::series::{self, Series, SeriesError};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ClosedFormError {
    #[error("{0}")]
    BadParams(&'static str),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// Binomial coefficient `C(n, k)`; zero when `k < 0` or `k > n`.
pub fn binomial(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Fuss-Catalan number `C(kn+1, n) / (kn+1)`, the number of k-ary trees with
/// n internal vertices.
pub fn fuss_catalan_number(k: u64, n: u64) -> Result<BigInt, ClosedFormError> {
    if k < 2 {
        return Err(ClosedFormError::BadParams("fuss_catalan_number requires k >= 2"));
    }
    Ok(exact_div(binomial(k * n + 1, n as i64), &BigInt::from(k * n + 1)))
}

/// Number of k-Dyck paths of semilength n from the origin to height 0 that
/// stay weakly above depth -a: `(a+1)/(kn+a+1) * C(kn+a+1, n)`.
pub fn prodinger_count(k: u64, a: u64, n: u64) -> Result<BigInt, ClosedFormError> {
    if k < 2 {
        return Err(ClosedFormError::BadParams("prodinger_count requires k >= 2"));
    }
    if a >= k {
        return Err(ClosedFormError::BadParams("prodinger_count requires 0 <= a <= k-1"));
    }
    let c = binomial(k * n + a + 1, n as i64) * BigInt::from(a + 1);
    Ok(exact_div(c, &BigInt::from(k * n + a + 1)))
}

/// Generating function of the (k, r)-Fine numbers at depth 0:
/// `C_k / (1 + t * C_k^(k-r))`, truncated after `t^order`.
pub fn fine_series(k: usize, r: usize, order: usize) -> Result<Series, ClosedFormError> {
    if k < 2 {
        return Err(ClosedFormError::BadParams("fine_series requires k >= 2"));
    }
    if r == 0 || r >= k {
        return Err(ClosedFormError::BadParams("fine_series requires 1 <= r <= k-1"));
    }
    let c = series::fuss_catalan(k, order)?;
    let denom = c.pow(k - r).shift_up().add(&Series::one(order));
    Ok(c.div(&denom)?)
}

fn exact_div(num: BigInt, den: &BigInt) -> BigInt {
    let (q, r) = num_integer::Integer::div_rem(&num, den);
    assert!(r.is_zero(), "{num} is not divisible by {den}");
    assert!(!q.is_negative());
    q
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_small_values() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(0, 0), BigInt::from(1));
        assert_eq!(binomial(4, -1), BigInt::from(0));
        assert_eq!(binomial(4, 5), BigInt::from(0));
    }

    #[test]
    fn binomial_row_sums_are_powers_of_two() {
        let total: BigInt = (0..=20).map(|k| binomial(20, k)).sum();
        assert_eq!(total, BigInt::from(1u64 << 20));
    }

    #[test]
    fn fuss_catalan_k2_is_catalan() {
        let cats: Vec<BigInt> = (0..8).map(|n| fuss_catalan_number(2, n).unwrap()).collect();
        let expect: Vec<BigInt> =
            [1, 1, 2, 5, 14, 42, 132, 429].iter().map(|&c| BigInt::from(c)).collect();
        assert_eq!(cats, expect);
    }

    #[test]
    fn fuss_catalan_k3_n2() {
        assert_eq!(fuss_catalan_number(3, 2).unwrap(), BigInt::from(3));
    }

    #[test]
    fn fuss_catalan_matches_series() {
        for k in 2..=5 {
            let series = series::fuss_catalan(k, 9).unwrap();
            for n in 0..=9u64 {
                assert_eq!(
                    *series.coeff(n as usize),
                    fuss_catalan_number(k as u64, n).unwrap(),
                    "k={k} n={n}"
                );
            }
        }
    }

    #[test]
    fn prodinger_at_depth_zero_is_fuss_catalan() {
        for k in 2..=4u64 {
            for n in 0..=6 {
                assert_eq!(prodinger_count(k, 0, n).unwrap(), fuss_catalan_number(k, n).unwrap());
            }
        }
    }

    #[test]
    fn prodinger_bounded_ternary() {
        // 3-Dyck paths of semilength 2 above depth -1: 7 of them.
        assert_eq!(prodinger_count(3, 1, 2).unwrap(), BigInt::from(7));
    }

    #[test]
    fn prodinger_rejects_bad_depth() {
        assert!(prodinger_count(3, 3, 1).is_err());
    }

    #[test]
    fn fine_series_k2_gives_fine_numbers() {
        let f = fine_series(2, 1, 5).unwrap();
        assert_eq!(f, Series::from_i64s(&[1, 0, 1, 2, 6, 18]));
    }

    #[test]
    fn fine_series_rejects_bad_r() {
        assert!(fine_series(3, 0, 4).is_err());
        assert!(fine_series(3, 3, 4).is_err());
    }
}
