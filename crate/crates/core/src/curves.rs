//! The algebraic curve `f(x, y) = 0` carrying the spectra of every replication
//! of a macro-vertex.
//!
//! With `λ = x + jy` and `P(x + jy) = R(x, y) + j I(x, y)`, every eigenvalue
//! satisfies `|P(λ)| = 1`, so it lies on `f = R² + I² - 1 = 0`, a curve of
//! order `2 deg P` with integer coefficients.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::charpoly::solve_level;
use crate::poly::IntPoly;
use crate::{ComplexPoint, Error, Result};

/// Polynomial in `x` and `y` with exact integer coefficients, keyed by the
/// exponent pair `(i, j)` of `x^i y^j`. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BivariatePoly {
    terms: BTreeMap<(u32, u32), i128>,
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl BivariatePoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: i128) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: i128, i: u32, j: u32) -> Self {
        let mut p = Self::zero();
        if c != 0 {
            p.terms.insert((i, j), c);
        }
        p
    }

    pub fn x() -> Self {
        Self::monomial(1, 1, 0)
    }

    pub fn y() -> Self {
        Self::monomial(1, 0, 1)
    }

    pub fn from_terms<I: IntoIterator<Item = (u32, u32, i128)>>(terms: I) -> Result<Self> {
        let mut p = Self::zero();
        for (i, j, c) in terms {
            p.add_term(i, j, c)?;
        }
        Ok(p)
    }

    fn add_term(&mut self, i: u32, j: u32, c: i128) -> Result<()> {
        if c == 0 {
            return Ok(());
        }
        let entry = self.terms.entry((i, j)).or_insert(0);
        *entry = entry.checked_add(c).ok_or(Error::Overflow("bivariate sum"))?;
        if *entry == 0 {
            self.terms.remove(&(i, j));
        }
        Ok(())
    }

    pub fn coeff(&self, i: u32, j: u32) -> i128 {
        self.terms.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `(i, j, coefficient)` in lexicographic order of `(i, j)`.
    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, i128)> + '_ {
        self.terms.iter().map(|(&(i, j), &c)| (i, j, c))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|(i, j)| i + j).max()
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        for (i, j, c) in other.terms() {
            out.add_term(i, j, c)?;
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        for (i, j, c) in other.terms() {
            out.add_term(i, j, c.checked_neg().ok_or(Error::Overflow("bivariate negation"))?)?;
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let mut out = Self::zero();
        for (i1, j1, c1) in self.terms() {
            for (i2, j2, c2) in other.terms() {
                let c = c1.checked_mul(c2).ok_or(Error::Overflow("bivariate product"))?;
                out.add_term(i1 + i2, j1 + j2, c)?;
            }
        }
        Ok(out)
    }

    pub fn checked_scale(&self, factor: i128) -> Result<Self> {
        let mut out = Self::zero();
        for (i, j, c) in self.terms() {
            out.add_term(i, j, c.checked_mul(factor).ok_or(Error::Overflow("bivariate scaling"))?)?;
        }
        Ok(out)
    }

    pub fn checked_pow(&self, exp: u32) -> Result<Self> {
        (0..exp).try_fold(Self::constant(1), |acc, _| acc.checked_mul(self))
    }

    /// `f(x_sub(x, y), y_sub(x, y))`, e.g. the shift `x̃ = x - 2`.
    pub fn compose(&self, x_sub: &Self, y_sub: &Self) -> Result<Self> {
        let mut out = Self::zero();
        for (i, j, c) in self.terms() {
            let term = x_sub.checked_pow(i)?.checked_mul(&y_sub.checked_pow(j)?)?.checked_scale(c)?;
            out = out.checked_add(&term)?;
        }
        Ok(out)
    }

    /// Divides out the integer content and makes the coefficient of the
    /// lexicographically highest monomial positive.
    pub fn canonical(&self) -> Self {
        let content = self.terms.values().fold(0u128, |g, &c| gcd(g, c.unsigned_abs()));
        if content == 0 {
            return Self::zero();
        }
        let lead_negative = self.terms.values().next_back().is_some_and(|&c| c < 0);
        let divisor = content as i128 * if lead_negative { -1 } else { 1 };
        Self {
            terms: self.terms.iter().map(|(&k, &c)| (k, c / divisor)).collect(),
        }
    }

    /// True when no monomial has an odd power of `y`, i.e. `f(x, y) = f(x, -y)`.
    pub fn is_even_in_y(&self) -> bool {
        self.terms.keys().all(|(_, j)| j % 2 == 0)
    }

    /// Floating-point evaluation with Neumaier-compensated summation.
    pub fn eval(&self, x: f64, y: f64) -> f64 {
        let mut sum = 0.0_f64;
        let mut comp = 0.0_f64;
        for (i, j, c) in self.terms() {
            let term = c as f64 * x.powi(i as i32) * y.powi(j as i32);
            let t = sum + term;
            if sum.abs() >= term.abs() {
                comp += (sum - t) + term;
            } else {
                comp += (term - t) + sum;
            }
            sum = t;
        }
        sum + comp
    }

    /// `coeff i j` triples, one per line, in lexicographic order.
    pub fn to_triples(&self) -> String {
        let mut out = String::new();
        for (i, j, c) in self.terms() {
            out.push_str(&format!("{c} {i} {j}\n"));
        }
        out
    }
}

impl fmt::Display for BivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, j, c) in self.terms().collect::<Vec<_>>().into_iter().rev() {
            if first {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c < 0 { " - " } else { " + " })?;
            }
            first = false;
            let mag = c.unsigned_abs();
            let mut factors = Vec::new();
            if mag != 1 || (i == 0 && j == 0) {
                factors.push(mag.to_string());
            }
            match i {
                0 => {}
                1 => factors.push("x".into()),
                _ => factors.push(format!("x^{i}")),
            }
            match j {
                0 => {}
                1 => factors.push("y".into()),
                _ => factors.push(format!("y^{j}")),
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

/// Real and imaginary parts of `p(x + jy)` as bivariate polynomials.
pub fn split_real_imag(p: &IntPoly) -> Result<(BivariatePoly, BivariatePoly)> {
    // Horner in Gaussian form: (R + jI)(x + jy) + c.
    let mut re = BivariatePoly::zero();
    let mut im = BivariatePoly::zero();
    let (x, y) = (BivariatePoly::x(), BivariatePoly::y());
    for &c in p.coeffs().iter().rev() {
        let next_re = re.checked_mul(&x)?.checked_sub(&im.checked_mul(&y)?)?;
        let next_im = re.checked_mul(&y)?.checked_add(&im.checked_mul(&x)?)?;
        re = next_re.checked_add(&BivariatePoly::constant(c))?;
        im = next_im;
    }
    Ok((re, im))
}

/// The canonical curve `R² + I² - 1` of a polynomial of degree `n >= 1`.
pub fn derive_curve(p: &IntPoly) -> Result<BivariatePoly> {
    match p.degree() {
        None | Some(0) => return Err(Error::Domain("curve needs a polynomial of degree >= 1".into())),
        Some(_) => {}
    }
    let (re, im) = split_real_imag(p)?;
    let f = re
        .checked_mul(&re)?
        .checked_add(&im.checked_mul(&im)?)?
        .checked_sub(&BivariatePoly::constant(1))?;
    Ok(f.canonical())
}

/// `f(p.re, p.im)`; zero on the curve.
pub fn curve_residual(f: &BivariatePoly, p: ComplexPoint) -> f64 {
    f.eval(p.re, p.im)
}

/// Radius `h` with `|λ| > h => |P(λ)| > 1`, so no locus point lies outside
/// the disc of radius `h`. For `|λ| >= 1`,
/// `|P(λ)| >= |λ|^{n-1} (|p_n| |λ| - Σ_{k<n} |p_k|)`.
pub fn locus_bound(p: &IntPoly) -> f64 {
    let n = p.degree().unwrap_or(0);
    let lead = p.leading().unsigned_abs() as f64;
    let tail: f64 = p.coeffs()[..n].iter().map(|c| c.unsigned_abs() as f64).sum();
    ((tail + 1.0) / lead).max(1.0)
}

/// Dense sampling of the curve: all roots of `P(λ) = e^{jθ}` for `θ` on a
/// uniform grid over `[0, 2π)`, ordered by `θ` and then by `(re, im)`.
pub fn trace_curve(p: &IntPoly, samples: usize) -> Result<Vec<ComplexPoint>> {
    if samples == 0 {
        return Err(Error::InvalidSize("samples must be at least 1".into()));
    }
    let levels = (0..samples)
        .into_par_iter()
        .map(|k| {
            let theta = 2.0 * PI * k as f64 / samples as f64;
            let mut pts = solve_level(p, Complex64::from_polar(1.0, theta))?;
            pts.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
            Ok(pts)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(levels.into_iter().flatten().collect())
}
