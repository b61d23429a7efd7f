//! Truncated formal power series over arbitrary-precision integers.
//!
//! A [`Series`] stores the coefficients of `t^0 ..= t^order` and represents a
//! power series known modulo `t^(order+1)`. All arithmetic is exact integer
//! arithmetic; operations that mix truncation orders return a result at the
//! smaller order, since nothing beyond it is determined by the inputs.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SeriesError {
    /// Composition `f(g)` requires `g(0) = 0`, otherwise every coefficient of
    /// the result would be an infinite sum.
    #[error("inner series has nonzero constant term {0}")]
    NonzeroInnerConstant(BigInt),
    /// Division stays in integer coefficients only when the divisor's
    /// constant term is a unit of Z.
    #[error("divisor constant term {0} is not 1 or -1")]
    NonUnitConstant(BigInt),
    /// The step polynomial handed to the fixed-point solver must have a
    /// nonzero constant term, or `h'(0)` would vanish.
    #[error("step polynomial has zero constant term")]
    ZeroConstantTerm,
    #[error("{0}")]
    BadParams(&'static str),
}

/// Integer power series truncated after `t^order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Series {
    coeffs: Vec<BigInt>,
}

impl Series {
    /// Builds a series from explicit coefficients; `coeffs[i]` is `[t^i]`.
    ///
    /// The vector must be nonempty: an empty coefficient list would leave the
    /// truncation order undefined.
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        assert!(!coeffs.is_empty(), "series needs at least the t^0 coefficient");
        Series { coeffs }
    }

    /// Convenience constructor from machine integers.
    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Series::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// The zero series truncated after `t^order`.
    pub fn zero(order: usize) -> Self {
        Series { coeffs: vec![BigInt::zero(); order + 1] }
    }

    /// The constant series 1 truncated after `t^order`.
    pub fn one(order: usize) -> Self {
        let mut s = Series::zero(order);
        s.coeffs[0] = BigInt::one();
        s
    }

    /// Largest exponent with a stored coefficient.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `t^i`. Panics past the truncation order, where the
    /// coefficient is unknown rather than zero.
    pub fn coeff(&self, i: usize) -> &BigInt {
        assert!(i <= self.order(), "coefficient {i} beyond truncation order {}", self.order());
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Same series truncated after `t^order` (must not exceed the current order).
    pub fn truncated(&self, order: usize) -> Series {
        assert!(order <= self.order(), "cannot extend a series by truncation");
        Series { coeffs: self.coeffs[..=order].to_vec() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Series) -> Series {
        let n = self.order().min(other.order());
        let coeffs = (0..=n).map(|i| &self.coeffs[i] + &other.coeffs[i]).collect();
        Series { coeffs }
    }

    pub fn sub(&self, other: &Series) -> Series {
        let n = self.order().min(other.order());
        let coeffs = (0..=n).map(|i| &self.coeffs[i] - &other.coeffs[i]).collect();
        Series { coeffs }
    }

    /// Cauchy product modulo `t^(n+1)` where `n` is the smaller input order.
    pub fn mul(&self, other: &Series) -> Series {
        let n = self.order().min(other.order());
        let mut coeffs = vec![BigInt::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        Series { coeffs }
    }

    /// Multiplies by the scalar `c`.
    pub fn scale(&self, c: &BigInt) -> Series {
        Series { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Multiplies by `t`, keeping the truncation order.
    pub fn shift_up(&self) -> Series {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        coeffs.push(BigInt::zero());
        coeffs.extend_from_slice(&self.coeffs[..self.order()]);
        Series { coeffs }
    }

    /// `self^e` by repeated multiplication.
    pub fn pow(&self, e: usize) -> Series {
        let mut acc = Series::one(self.order());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Composition `self(inner)`, defined when `inner(0) = 0`. The result is
    /// truncated at the smaller of the two orders.
    pub fn compose(&self, inner: &Series) -> Result<Series, SeriesError> {
        if !inner.coeffs[0].is_zero() {
            return Err(SeriesError::NonzeroInnerConstant(inner.coeffs[0].clone()));
        }
        let n = self.order().min(inner.order());
        Ok(eval_polynomial(&self.coeffs[..=n], &inner.truncated(n)))
    }

    /// Exact quotient `self / divisor` modulo `t^(n+1)`; the divisor's
    /// constant term must be 1 or -1 so the quotient stays integral.
    pub fn div(&self, divisor: &Series) -> Result<Series, SeriesError> {
        let d0 = &divisor.coeffs[0];
        if !d0.abs().is_one() {
            return Err(SeriesError::NonUnitConstant(d0.clone()));
        }
        let n = self.order().min(divisor.order());
        let mut q = vec![BigInt::zero(); n + 1];
        for i in 0..=n {
            let mut acc = self.coeffs[i].clone();
            for j in 1..=i {
                acc -= &divisor.coeffs[j] * &q[i - j];
            }
            // d0 is its own inverse: exact division by construction.
            q[i] = acc * d0;
        }
        Ok(Series { coeffs: q })
    }

    /// Renders coefficients as comma-separated decimals, lowest degree first.
    pub fn render(&self) -> String {
        self.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
    }
}

/// Evaluates the exact polynomial `poly` (coefficient `i` is `[t^i]`) at the
/// series `arg` by Horner's rule. Unlike [`Series::compose`] the polynomial is
/// not truncated data, so the result keeps `arg`'s order.
pub fn eval_polynomial(poly: &[BigInt], arg: &Series) -> Series {
    let mut acc = Series::zero(arg.order());
    for c in poly.iter().rev() {
        acc = acc.mul(arg);
        acc.coeffs[0] += c;
    }
    acc
}

/// Solves `h = t * A(h)` for the unique series with `h(0) = 0`, truncated
/// after `t^order`. `a_poly` is the exact polynomial `A`; its constant term
/// must be nonzero so that `h'(0) = A(0) != 0`.
///
/// Successive substitution settles one further coefficient per pass, because
/// `[t^n] (t * A(h))` only reads coefficients of `h` below `n`; the loop stops
/// as soon as a pass is a fixed point.
pub fn solve_h(a_poly: &[BigInt], order: usize) -> Result<Series, SeriesError> {
    let a0 = a_poly.first().ok_or(SeriesError::BadParams("empty polynomial"))?;
    if a0.is_zero() {
        return Err(SeriesError::ZeroConstantTerm);
    }
    let mut h = Series::zero(order);
    for _ in 0..=order {
        let next = eval_polynomial(a_poly, &h).shift_up();
        if next == h {
            break;
        }
        h = next;
    }
    Ok(h)
}

/// The Fuss-Catalan series `C_k` with `C_k = 1 + t * C_k^k`, truncated after
/// `t^order`; `[t^n] C_k` is the Fuss-Catalan number `C(kn+1, n) / (kn+1)`.
pub fn fuss_catalan(k: usize, order: usize) -> Result<Series, SeriesError> {
    if k < 2 {
        return Err(SeriesError::BadParams("fuss_catalan requires k >= 2"));
    }
    let mut c = Series::one(order);
    loop {
        let next = {
            let mut s = c.pow(k).shift_up();
            s.coeffs[0] += 1;
            s
        };
        if next == c {
            return Ok(c);
        }
        c = next;
    }
}
