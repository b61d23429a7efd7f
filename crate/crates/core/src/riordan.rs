//! Proper Riordan arrays: triangles built from A/Z-sequence recurrences or
//! from a generating-function pair (d, h), conversions between the two
//! presentations, row sums, binomial transforms, and the specific arrays
//! that count colored Motzkin paths, k-Dyck paths, and (k, r)-Fine paths.
//!
//! A proper Riordan array R(d, h) has entries `d_{i,j} = [t^i] d(t) h(t)^j`.
//! Equivalently the triangle satisfies, for sequences `a` and `z`,
//!
//! ```text
//! d_{i,j} = sum_s a_s * d_{i-1, j-1+s}   (j >= 1)
//! d_{i,0} = sum_s z_s * d_{i-1, s}
//! ```
//!
//! with `h = t * A(h)` and `d = d(0) / (1 - t * Z(h))` linking the two. The
//! triangles here always normalize `d_{0,0} = d(0) = 1`.

use crate::closedform::binomial;
use crate::paths::ColorScheme;
use crate::series::{eval_polynomial, solve_h, Series, SeriesError};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RiordanError {
    #[error("invalid A-sequence: {0}")]
    BadA(&'static str),
    #[error("invalid generating pair: {0}")]
    BadDH(&'static str),
    #[error("{0}")]
    BadParams(&'static str),
    #[error(
        "entry ({row},{col}) would be negative ({value}); counting triangles must be nonnegative"
    )]
    NegativeEntry { row: usize, col: usize, value: BigInt },
    #[error("series order {have} cannot fill {needed} triangle rows")]
    InsufficientOrder { needed: usize, have: usize },
    #[error("color count at index {index} would be {value}, which is negative")]
    NegativeColorCount { index: usize, value: BigInt },
    #[error("sequence recovery failed: {0}")]
    Underdetermined(String),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// How a triangle was produced; carried through to exports.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    AzRecurrence,
    GeneratingPair,
    Oracle,
}

impl Provenance {
    pub fn label(self) -> &'static str {
        match self {
            Provenance::AzRecurrence => "az-recurrence",
            Provenance::GeneratingPair => "generating-pair",
            Provenance::Oracle => "oracle",
        }
    }
}

/// An A/Z-sequence pair, stored as polynomial coefficient series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AzSpec {
    pub a: Series,
    pub z: Series,
}

/// A (d, h) generating-function pair truncated to a common order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DhSpec {
    pub d: Series,
    pub h: Series,
}

/// A finite lower-triangular counting array; row `n` holds the entries
/// `d_{n,0} ..= d_{n,n}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triangle {
    rows: Vec<Vec<BigInt>>,
    provenance: Provenance,
}

impl Triangle {
    /// Wraps pre-computed rows, enforcing the triangle shape, a top entry
    /// of 1, and nonnegativity.
    pub fn from_rows(rows: Vec<Vec<BigInt>>, provenance: Provenance) -> Result<Self, RiordanError> {
        if rows.is_empty() {
            return Err(RiordanError::BadParams("a triangle needs at least one row"));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != i + 1 {
                return Err(RiordanError::BadParams("row n must hold exactly n+1 entries"));
            }
            for (j, value) in row.iter().enumerate() {
                if value.is_negative() {
                    return Err(RiordanError::NegativeEntry {
                        row: i,
                        col: j,
                        value: value.clone(),
                    });
                }
            }
        }
        if !rows[0][0].is_one() {
            return Err(RiordanError::BadParams("the (0,0) entry must be 1"));
        }
        Ok(Triangle { rows, provenance })
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    /// Entry (i, j), with zeros outside the triangle.
    pub fn entry(&self, i: usize, j: usize) -> BigInt {
        self.rows.get(i).and_then(|row| row.get(j)).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Column `j` read downward from row 0, so the `j` entries above the
    /// diagonal appear as zeros. This matches the coefficient sequence of
    /// the column generating function.
    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows.len()).map(|i| self.entry(i, j)).collect()
    }

    /// One comma-separated line per row.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(BigInt::to_string).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }

    /// Rows with entries right-aligned into equal-width cells.
    pub fn to_aligned_text(&self) -> String {
        let width = self.rows.iter().flatten().map(|v| v.to_string().len()).max().unwrap_or(1);
        let mut out = String::new();
        for row in &self.rows {
            let mut line = String::new();
            for (j, value) in row.iter().enumerate() {
                if j > 0 {
                    line.push(' ');
                }
                let _ = write!(line, "{:>width$}", value.to_string());
            }
            out.push_str(line.trim_end());
            out.push('\n');
        }
        out
    }

    /// JSON object with decimal-string entries (values may exceed f64).
    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<Vec<String>> =
            self.rows.iter().map(|row| row.iter().map(BigInt::to_string).collect()).collect();
        serde_json::json!({
            "provenance": self.provenance.label(),
            "rows": rows,
        })
    }
}

/// Renders a sequence the same way triangles render rows: comma-separated
/// decimal values.
pub fn sequence_to_string(seq: &[BigInt]) -> String {
    let parts: Vec<String> = seq.iter().map(BigInt::to_string).collect();
    parts.join(", ")
}

/// Fills `rows` triangle rows from the A/Z recurrence, starting at
/// `d_{0,0} = 1`.
pub fn triangle_from_az(spec: &AzSpec, rows: usize) -> Result<Triangle, RiordanError> {
    if rows == 0 {
        return Err(RiordanError::BadParams("at least one row must be requested"));
    }
    if spec.a.coeff(0).is_zero() {
        return Err(RiordanError::BadA("A(0) must be nonzero"));
    }
    let a = spec.a.coeffs();
    let z = spec.z.coeffs();
    let mut out: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
    for i in 1..rows {
        let prev = &out[i - 1];
        let mut row = Vec::with_capacity(i + 1);
        let mut head = BigInt::zero();
        for (s, zs) in z.iter().enumerate().take(prev.len()) {
            head += zs * &prev[s];
        }
        row.push(head);
        for j in 1..=i {
            let mut entry = BigInt::zero();
            for (s, a_s) in a.iter().enumerate() {
                if let Some(source) = prev.get(j - 1 + s) {
                    entry += a_s * source;
                }
            }
            row.push(entry);
        }
        for (j, value) in row.iter().enumerate() {
            if value.is_negative() {
                return Err(RiordanError::NegativeEntry { row: i, col: j, value: value.clone() });
            }
        }
        out.push(row);
    }
    Ok(Triangle { rows: out, provenance: Provenance::AzRecurrence })
}

/// The A/Z pair of the colored Motzkin triangle for a scheme of order l:
/// `A = 1 + beta_0 t + ... + beta_{l-1} t^l + t^{l+1}` and
/// `Z = alpha_0 + ... + alpha_{l-1} t^{l-1} + t^l`.
pub fn motzkin_az(scheme: &ColorScheme) -> AzSpec {
    let mut a = Vec::with_capacity(scheme.order() + 2);
    a.push(BigInt::one());
    a.extend(scheme.beta().iter().map(|&b| BigInt::from(b)));
    a.push(BigInt::one());
    let mut z: Vec<BigInt> = scheme.alpha().iter().map(|&x| BigInt::from(x)).collect();
    z.push(BigInt::one());
    AzSpec { a: Series::from_coeffs(a), z: Series::from_coeffs(z) }
}

fn binomial_u64(n: u64, k: i64) -> Result<u64, RiordanError> {
    binomial(n, k)
        .to_u64()
        .ok_or(RiordanError::BadParams("binomial coefficient exceeds u64 color counts"))
}

/// Color tuples under which colored Motzkin paths of order k-1 count k-Dyck
/// paths of depth `a`: `alpha_i = C(k,i+1) - C(k-a-1,i+1)`,
/// `beta_i = C(k,i+1)`.
pub fn dyck_scheme(k: usize, depth: usize) -> Result<ColorScheme, RiordanError> {
    if k < 2 || depth >= k {
        return Err(RiordanError::BadParams("need k >= 2 and 0 <= a <= k-1"));
    }
    let mut alpha = Vec::with_capacity(k - 1);
    let mut beta = Vec::with_capacity(k - 1);
    for i in 0..k - 1 {
        let full = binomial_u64(k as u64, i as i64 + 1)?;
        let excluded = binomial_u64((k - depth - 1) as u64, i as i64 + 1)?;
        alpha.push(full - excluded);
        beta.push(full);
    }
    Ok(ColorScheme::new(alpha, beta).expect("tuples have equal positive length"))
}

/// Color tuples for (k, r)-Fine paths of depth `a`:
/// `alpha_i = C(k,i+1) - C(k-a-1,i+1) - C(k-r-1,i)`, `beta_i = C(k,i+1)`.
pub fn fine_scheme(k: usize, depth: usize, r: usize) -> Result<ColorScheme, RiordanError> {
    if k < 2 || depth >= k {
        return Err(RiordanError::BadParams("need k >= 2 and 0 <= a <= k-1"));
    }
    if r == 0 || r >= k {
        return Err(RiordanError::BadParams("need 1 <= r <= k-1"));
    }
    let base = dyck_scheme(k, depth)?;
    let mut alpha = Vec::with_capacity(k - 1);
    for (i, &upper) in base.alpha().iter().enumerate() {
        let hills = binomial((k - r - 1) as u64, i as i64);
        let value = BigInt::from(upper) - &hills;
        if value.is_negative() {
            return Err(RiordanError::NegativeColorCount { index: i, value });
        }
        alpha.push(value.to_u64().ok_or(RiordanError::BadParams("color count exceeds u64"))?);
    }
    let beta = base.beta().to_vec();
    Ok(ColorScheme::new(alpha, beta).expect("tuples have equal positive length"))
}

/// `(1+t)^e` as a series truncated at `t^order`, computed by repeated
/// multiplication.
fn one_plus_t_power(e: usize, order: usize) -> Series {
    let mut coeffs = vec![BigInt::zero(); order + 1];
    coeffs[0] = BigInt::one();
    if order >= 1 {
        coeffs[1] = BigInt::one();
    }
    Series::from_coeffs(coeffs).pow(e)
}

/// A/Z pair of the depth-`a` k-Dyck triangle: `A = (1+t)^k` and
/// `Z = ((1+t)^k - (1+t)^{k-a-1}) / t`, the division being an exact
/// polynomial quotient.
pub fn dyck_az(k: usize, depth: usize) -> Result<AzSpec, RiordanError> {
    if k < 2 || depth >= k {
        return Err(RiordanError::BadParams("need k >= 2 and 0 <= a <= k-1"));
    }
    let a = one_plus_t_power(k, k);
    let numerator = a.sub(&one_plus_t_power(k - depth - 1, k));
    debug_assert!(numerator.coeff(0).is_zero());
    let z = Series::from_coeffs(numerator.coeffs()[1..].to_vec());
    Ok(AzSpec { a, z })
}

/// A/Z pair of the depth-`a` (k, r)-Fine triangle:
/// `Z = ((1+t)^k - (1+t)^{k-a-1}) / t - (1+t)^{k-r-1}`.
pub fn fine_az(k: usize, depth: usize, r: usize) -> Result<AzSpec, RiordanError> {
    if r == 0 || r >= k {
        return Err(RiordanError::BadParams("need 1 <= r <= k-1"));
    }
    let dyck = dyck_az(k, depth)?;
    let z = dyck.z.sub(&one_plus_t_power(k - r - 1, k - 1));
    for (index, coeff) in z.coeffs().iter().enumerate() {
        if coeff.is_negative() {
            return Err(RiordanError::NegativeColorCount { index, value: coeff.clone() });
        }
    }
    Ok(AzSpec { a: dyck.a, z })
}

/// Converts an A/Z pair to its generating pair, truncated at `t^order`:
/// `h` solves `h = t * A(h)` and `d = 1 / (1 - t * Z(h))`.
pub fn dh_from_az(spec: &AzSpec, order: usize) -> Result<DhSpec, RiordanError> {
    if spec.a.coeff(0).is_zero() {
        return Err(RiordanError::BadA("A(0) must be nonzero"));
    }
    let h = solve_h(spec.a.coeffs(), order)?;
    let z_of_h = eval_polynomial(spec.z.coeffs(), &h);
    let denominator = Series::one(order).sub(&z_of_h.shift_up());
    let d = Series::one(order).div(&denominator)?;
    Ok(DhSpec { d, h })
}

/// Reads `rows` triangle rows off a generating pair via
/// `d_{i,j} = [t^i] d(t) h(t)^j`. Requires `d(0) = 1`, `h(0) = 0`, and a
/// nonzero linear term in `h`.
pub fn triangle_from_dh(spec: &DhSpec, rows: usize) -> Result<Triangle, RiordanError> {
    if rows == 0 {
        return Err(RiordanError::BadParams("at least one row must be requested"));
    }
    if !spec.d.coeff(0).is_one() {
        return Err(RiordanError::BadDH("d(0) must be 1"));
    }
    if !spec.h.coeff(0).is_zero() {
        return Err(RiordanError::BadDH("h(0) must be 0"));
    }
    if spec.h.order() < 1 || spec.h.coeff(1).is_zero() {
        return Err(RiordanError::BadDH("h must have a nonzero linear term"));
    }
    let have = spec.d.order().min(spec.h.order());
    if have < rows - 1 {
        return Err(RiordanError::InsufficientOrder { needed: rows - 1, have });
    }
    let mut out: Vec<Vec<BigInt>> = vec![Vec::new(); rows];
    let mut column = spec.d.clone();
    for j in 0..rows {
        for (i, row) in out.iter_mut().enumerate().take(rows).skip(j) {
            let value = column.coeff(i).clone();
            if value.is_negative() {
                return Err(RiordanError::NegativeEntry { row: i, col: j, value });
            }
            row.push(value);
        }
        if j + 1 < rows {
            column = column.mul(&spec.h);
        }
    }
    Ok(Triangle { rows: out, provenance: Provenance::GeneratingPair })
}

/// Row sums of a triangle.
pub fn row_sums(triangle: &Triangle) -> Vec<BigInt> {
    triangle.rows().iter().map(|row| row.iter().sum()).collect()
}

/// The binomial transform `b_n = sum_i C(n,i) a_i`, same length as the
/// input.
pub fn binomial_transform(seq: &[BigInt]) -> Vec<BigInt> {
    (0..seq.len())
        .map(|n| {
            seq.iter().take(n + 1).enumerate().map(|(i, a)| binomial(n as u64, i as i64) * a).sum()
        })
        .collect()
}

/// Recovers the A/Z pair of a triangle by solving the recurrence equations,
/// then regenerating the triangle as verification. Intended for round-trip
/// testing; triangles that do not pin down integer sequences are reported
/// as underdetermined.
pub fn az_from_triangle(triangle: &Triangle) -> Result<AzSpec, RiordanError> {
    let rows = triangle.rows();
    if rows.len() < 2 {
        return Err(RiordanError::Underdetermined(
            "at least two rows are needed to recover any coefficients".into(),
        ));
    }
    let a = solve_recurrence(rows, 1)?;
    let z = solve_recurrence(rows, 0)?;
    let spec = AzSpec {
        a: Series::from_coeffs(trim_polynomial(a)),
        z: Series::from_coeffs(trim_polynomial(z)),
    };
    if spec.a.coeff(0).is_zero() {
        return Err(RiordanError::Underdetermined("recovered A-sequence has A(0) = 0".into()));
    }
    let regenerated = triangle_from_az(&spec, rows.len())?;
    if regenerated.rows() != rows {
        return Err(RiordanError::Underdetermined(
            "recovered sequences do not regenerate the triangle; more rows are needed".into(),
        ));
    }
    Ok(spec)
}

/// Solves the lower-triangular system `d_{i,col} = sum_s x_s d_{i-1, col-1+s}`
/// (with `col-1+s` clamped to `s` for the column-0 system) for `x`.
fn solve_recurrence(rows: &[Vec<BigInt>], col: usize) -> Result<Vec<BigInt>, RiordanError> {
    let mut x: Vec<BigInt> = Vec::new();
    for i in 1..rows.len() {
        if rows[i].len() <= col {
            continue;
        }
        let prev = &rows[i - 1];
        let target = &rows[i][col];
        let offset = if col == 0 { 0 } else { col - 1 };
        let mut acc = BigInt::zero();
        for (s, xs) in x.iter().enumerate() {
            if let Some(source) = prev.get(offset + s) {
                acc += xs * source;
            }
        }
        let s_new = x.len();
        let pivot = match prev.get(offset + s_new) {
            Some(p) if !p.is_zero() => p,
            _ => {
                return Err(RiordanError::Underdetermined(format!(
                "zero pivot while solving for coefficient {s_new} of the column-{col} recurrence"
            )))
            }
        };
        let residue = target - &acc;
        let (quotient, remainder) = num_integer::div_rem(residue.clone(), pivot.clone());
        if !remainder.is_zero() {
            return Err(RiordanError::Underdetermined(format!(
                "no integer coefficient {s_new} satisfies the column-{col} recurrence"
            )));
        }
        x.push(quotient);
    }
    Ok(x)
}

fn trim_polynomial(mut coeffs: Vec<BigInt>) -> Vec<BigInt> {
    while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
        coeffs.pop();
    }
    if coeffs.is_empty() {
        coeffs.push(BigInt::zero());
    }
    coeffs
}
