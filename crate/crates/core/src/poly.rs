//! Univariate polynomials with exact integer coefficients.

use std::fmt;

use num_complex::Complex64;

use crate::{Error, Result};

/// Degree limit for exact polynomials.
pub const MAX_DEGREE: usize = 64;

/// Polynomial with `i128` coefficients in ascending degree order.
///
/// Trailing zeros are trimmed, so the zero polynomial has no coefficients and
/// every other polynomial has a nonzero leading coefficient. Arithmetic is
/// checked and reports [`Error::Overflow`] instead of wrapping.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<i128>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<i128>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i128) -> Self {
        Self::new(vec![c])
    }

    /// `λ - root`.
    pub fn linear(root: i128) -> Self {
        Self::new(vec![-root, 1])
    }

    pub fn coeffs(&self) -> &[i128] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> i128 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    pub fn coeff(&self, power: usize) -> i128 {
        self.coeffs.get(power).copied().unwrap_or(0)
    }

    pub fn checked_add(&self, other: &IntPoly) -> Result<IntPoly> {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| self.coeff(i).checked_add(other.coeff(i)).ok_or(Error::Overflow("polynomial sum")))
            .collect::<Result<Vec<_>>>()?;
        Ok(IntPoly::new(coeffs))
    }

    pub fn checked_sub(&self, other: &IntPoly) -> Result<IntPoly> {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| {
                self.coeff(i)
                    .checked_sub(other.coeff(i))
                    .ok_or(Error::Overflow("polynomial difference"))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(IntPoly::new(coeffs))
    }

    pub fn checked_mul(&self, other: &IntPoly) -> Result<IntPoly> {
        if self.is_zero() || other.is_zero() {
            return Ok(IntPoly::zero());
        }
        let degree = self.coeffs.len() + other.coeffs.len() - 2;
        if degree > MAX_DEGREE {
            return Err(Error::ResourceLimit(format!(
                "product of degree {degree} exceeds {MAX_DEGREE}"
            )));
        }
        let mut out = vec![0i128; degree + 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                let term = a.checked_mul(b).ok_or(Error::Overflow("polynomial product"))?;
                out[i + j] = out[i + j].checked_add(term).ok_or(Error::Overflow("polynomial product"))?;
            }
        }
        Ok(IntPoly::new(out))
    }

    /// `self^exp` by repeated exact convolution.
    pub fn checked_pow(&self, exp: usize) -> Result<IntPoly> {
        if let Some(d) = self.degree() {
            if d.saturating_mul(exp) > MAX_DEGREE {
                return Err(Error::ResourceLimit(format!(
                    "power of degree {} exceeds {MAX_DEGREE}",
                    d.saturating_mul(exp)
                )));
            }
        }
        let mut acc = IntPoly::one();
        for _ in 0..exp {
            acc = acc.checked_mul(self)?;
        }
        Ok(acc)
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c as f64)
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c as f64)
    }

    pub fn to_complex(&self) -> Vec<Complex64> {
        self.coeffs.iter().map(|&c| Complex64::new(c as f64, 0.0)).collect()
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.coeffs.iter().map(|&c| c as f64).collect()
    }
}

impl fmt::Display for IntPoly {
    /// Descending powers of `λ`, e.g. `λ^2 - 3λ + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (power, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let mag = c.unsigned_abs();
            match (power, mag) {
                (0, _) => write!(f, "{mag}")?,
                (1, 1) => f.write_str("λ")?,
                (1, _) => write!(f, "{mag}λ")?,
                (_, 1) => write!(f, "λ^{power}")?,
                _ => write!(f, "{mag}λ^{power}")?,
            }
            first = false;
        }
        Ok(())
    }
}

/// Modified Chebyshev polynomial of the second kind:
/// `Z_0 = 1`, `Z_1 = λ - 1`, `Z_k = (λ - 2) Z_{k-1} - Z_{k-2}`.
pub fn chebyshev_z(k: usize) -> Result<IntPoly> {
    if k > MAX_DEGREE {
        return Err(Error::ResourceLimit(format!("Z_{k} exceeds degree {MAX_DEGREE}")));
    }
    let shift = IntPoly::linear(2);
    let mut prev = IntPoly::one();
    let mut cur = IntPoly::linear(1);
    if k == 0 {
        return Ok(prev);
    }
    for _ in 1..k {
        let next = shift.checked_mul(&cur)?.checked_sub(&prev)?;
        prev = std::mem::replace(&mut cur, next);
    }
    Ok(cur)
}
