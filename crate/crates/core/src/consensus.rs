//! Consensus regions of high-order agents.
//!
//! An agent with open-loop polynomial `a(s)` and coupling polynomial `b(s)`
//! has the generalized frequency variable `φ(s) = a(s) / b(s)`. Its consensus
//! region is `Ω = {λ : a(s) - λ b(s) has no root with Re s >= 0}`, and a
//! network with Laplacian `L` and gain `r` reaches consensus iff every nonzero
//! eigenvalue of `-r L` lies in `Ω`.
//!
//! All tests here take Laplacian-side points and map them through
//! [`to_omega_plane`] exactly once.

use log::warn;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::charpoly::ring_spectrum;
use crate::curves::trace_curve;
use crate::poly::IntPoly;
use crate::roots::{poly_roots, real_poly_roots};
use crate::topology::RingTopology;
use crate::{ComplexPoint, Error, Result};

/// Default half-width of the band around `Re s = 0` counted as boundary.
pub const DEFAULT_EPS: f64 = 1e-9;
/// Default radius around the origin for the exempt zero eigenvalue.
pub const DEFAULT_ZERO_TOL: f64 = 1e-8;
/// Default number of levels `θ` used when tracing a locus curve.
pub const DEFAULT_CURVE_SAMPLES: usize = 720;

const COEFF_TRIM: f64 = 0.0;

/// `φ(s) = a(s) / b(s)` with `a` monic, `deg a > deg b`, coefficients
/// ascending.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawFrequencyVariable", into = "RawFrequencyVariable")]
pub struct FrequencyVariable {
    a: Vec<f64>,
    b: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct RawFrequencyVariable {
    a: Vec<f64>,
    b: Vec<f64>,
}

impl TryFrom<RawFrequencyVariable> for FrequencyVariable {
    type Error = Error;

    fn try_from(raw: RawFrequencyVariable) -> Result<Self> {
        FrequencyVariable::new(raw.a, raw.b)
    }
}

impl From<FrequencyVariable> for RawFrequencyVariable {
    fn from(fv: FrequencyVariable) -> Self {
        RawFrequencyVariable { a: fv.a, b: fv.b }
    }
}

fn trim(mut coeffs: Vec<f64>) -> Vec<f64> {
    while coeffs.last().is_some_and(|c| c.abs() <= COEFF_TRIM) {
        coeffs.pop();
    }
    coeffs
}

impl FrequencyVariable {
    pub fn new(a: Vec<f64>, b: Vec<f64>) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidFrequencyVariable(msg));
        if a.iter().chain(&b).any(|c| !c.is_finite()) {
            return bad("coefficients must be finite".into());
        }
        let a = trim(a);
        let b = trim(b);
        if a.len() < 2 {
            return bad("a(s) must have degree at least 1".into());
        }
        if a[a.len() - 1] != 1.0 {
            return bad(format!("a(s) must be monic, leading coefficient is {}", a[a.len() - 1]));
        }
        if b.is_empty() {
            return bad("b(s) must be nonzero".into());
        }
        if b.len() >= a.len() {
            return bad(format!(
                "deg b = {} must be below deg a = {}",
                b.len() - 1,
                a.len() - 1
            ));
        }
        let fv = Self { a, b };
        if let Some(root) = fv.common_root()? {
            return bad(format!("a(s) and b(s) share the root {root}"));
        }
        Ok(fv)
    }

    /// First-order agents, `φ(s) = s`; `Ω` is the open left half-plane.
    pub fn first_order() -> Self {
        Self { a: vec![0.0, 1.0], b: vec![1.0] }
    }

    /// Double integrator with absolute velocity feedback, `φ(s) = s² + γs`.
    pub fn absolute_velocity(gamma: f64) -> Result<Self> {
        Self::new(vec![0.0, gamma, 1.0], vec![1.0])
    }

    /// Double integrator with relative velocity feedback, `φ(s) = s² / (1 + γs)`.
    pub fn relative_velocity(gamma: f64) -> Result<Self> {
        Self::new(vec![0.0, 0.0, 1.0], vec![1.0, gamma])
    }

    /// `φ(s) = (s + γs²) / (1 - γs)`, scaled so that `a` is monic:
    /// `a = s² + s/γ`, `b = 1/γ - s`. The agents obey
    /// `ẍ = -(r/γ) L x + (r L - I/γ) ẋ`.
    pub fn lagging(gamma: f64) -> Result<Self> {
        if gamma == 0.0 {
            return Err(Error::InvalidFrequencyVariable("γ must be nonzero".into()));
        }
        Self::new(vec![0.0, 1.0 / gamma, 1.0], vec![1.0 / gamma, -1.0])
    }

    pub fn a(&self) -> &[f64] {
        &self.a
    }

    pub fn b(&self) -> &[f64] {
        &self.b
    }

    /// `deg a`, the state dimension of one agent.
    pub fn order(&self) -> usize {
        self.a.len() - 1
    }

    pub fn phi(&self, s: Complex64) -> Option<Complex64> {
        let den = horner(&self.b, s);
        (den.norm() > 0.0).then(|| horner(&self.a, s) / den)
    }

    /// Coefficients of `a(s) - λ b(s)`.
    pub fn closed_loop_poly(&self, lambda: Complex64) -> Vec<Complex64> {
        let mut c: Vec<Complex64> = self.a.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        for (k, &bk) in self.b.iter().enumerate() {
            c[k] -= lambda * bk;
        }
        c
    }

    fn common_root(&self) -> Result<Option<Complex64>> {
        if self.b.len() < 2 {
            return Ok(None);
        }
        let scale: f64 = self.a.iter().map(|c| c.abs()).sum();
        for z in real_poly_roots(&self.b)? {
            let mag: f64 = self
                .a
                .iter()
                .enumerate()
                .map(|(k, c)| c.abs() * z.norm().powi(k as i32))
                .sum::<f64>()
                .max(scale);
            if horner(&self.a, z).norm() <= 1e-10 * mag {
                return Ok(Some(z));
            }
        }
        Ok(None)
    }
}

fn horner(coeffs: &[f64], s: Complex64) -> Complex64 {
    coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * s + c)
}

/// Tolerances shared by the membership tests.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Roots with `Re s >= -eps` count as closed right half-plane.
    pub eps: f64,
    /// Points with `|λ| <= zero_tol` are the exempt zero eigenvalue.
    pub zero_tol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { eps: DEFAULT_EPS, zero_tol: DEFAULT_ZERO_TOL }
    }
}

/// Outcome of an `Ω` membership test.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OmegaVerdict {
    pub point: ComplexPoint,
    pub inside: bool,
    /// Largest real part among the roots of `a(s) - λ b(s)`.
    pub max_root_real_part: f64,
}

impl OmegaVerdict {
    /// Neither inside nor clearly outside.
    pub fn on_boundary(&self, eps: f64) -> bool {
        self.max_root_real_part.abs() <= eps
    }
}

/// The map `λ ↦ -r λ` from Laplacian eigenvalues to `Ω`-plane points.
pub fn to_omega_plane(lambda: ComplexPoint, r: f64) -> ComplexPoint {
    -lambda * r
}

pub fn in_omega(fv: &FrequencyVariable, lambda: ComplexPoint, eps: f64) -> Result<OmegaVerdict> {
    let roots = poly_roots(&fv.closed_loop_poly(lambda))?;
    let max_re = roots.iter().map(|z| z.re).fold(f64::NEG_INFINITY, f64::max);
    Ok(OmegaVerdict { point: lambda, inside: max_re < -eps, max_root_real_part: max_re })
}

/// `φ(jω)` for each grid frequency; poles of `φ` on the axis are skipped.
pub fn omega_boundary(fv: &FrequencyVariable, omega_grid: &[f64]) -> Vec<ComplexPoint> {
    omega_grid
        .iter()
        .filter_map(|&w| {
            let value = fv.phi(Complex64::new(0.0, w));
            if value.is_none() {
                warn!("φ has a pole at ω = {w}; skipped");
            }
            value
        })
        .collect()
}

/// Every point except the exempt origin lies in `Ω`. Points must already be
/// in the `Ω` plane (see [`to_omega_plane`]).
pub fn criterion_points(fv: &FrequencyVariable, points: &[ComplexPoint], tol: Tolerances) -> Result<bool> {
    let verdicts = points
        .par_iter()
        .filter(|p| p.norm() > tol.zero_tol)
        .map(|&p| in_omega(fv, p, tol.eps).map(|v| v.inside))
        .collect::<Result<Vec<bool>>>()?;
    Ok(verdicts.into_iter().all(|inside| inside))
}

/// Consensus test on a finite spectrum of `-r L`, including the zero
/// eigenvalue. More than one eigenvalue at the origin means the digraph has
/// no spanning converging tree.
pub fn criterion_spectrum(fv: &FrequencyVariable, eigenvalues: &[ComplexPoint], tol: Tolerances) -> Result<bool> {
    let zeros = eigenvalues.iter().filter(|p| p.norm() <= tol.zero_tol).count();
    if zeros > 1 {
        return Err(Error::NoSpanningTree(zeros));
    }
    criterion_points(fv, eigenvalues, tol)
}

/// Largest real part over the closed-loop modes of the nonzero points: the
/// decay (negative) or growth (positive) rate of disagreement.
pub fn disagreement_rate(fv: &FrequencyVariable, points: &[ComplexPoint], tol: Tolerances) -> Result<f64> {
    let rates = points
        .iter()
        .filter(|p| p.norm() > tol.zero_tol)
        .map(|&p| in_omega(fv, p, tol.eps).map(|v| v.max_root_real_part))
        .collect::<Result<Vec<f64>>>()?;
    Ok(rates.into_iter().fold(f64::NEG_INFINITY, f64::max))
}

/// [`criterion_spectrum`] for a ring with gain `r`.
pub fn criterion_ring(fv: &FrequencyVariable, ring: &RingTopology, r: f64, tol: Tolerances) -> Result<bool> {
    criterion_spectrum(fv, &omega_spectrum(ring, r)?, tol)
}

/// The spectrum of `-r L` for a ring.
pub fn omega_spectrum(ring: &RingTopology, r: f64) -> Result<Vec<ComplexPoint>> {
    check_gain(r)?;
    Ok(ring_spectrum(ring)?.into_iter().map(|l| to_omega_plane(l, r)).collect())
}

fn check_gain(r: f64) -> Result<()> {
    if r > 0.0 && r.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("gain r must be positive, got {r}")))
    }
}

/// Samples of the locus `|P(λ)| = 1` on a uniform grid of `samples` levels.
///
/// Points very close to the origin are within the `eps` band of `∂Ω` for any
/// region that passes through the origin, so refining there only adds
/// boundary verdicts; the grid is kept uniform.
pub fn curve_samples(p: &IntPoly, samples: usize) -> Result<Vec<ComplexPoint>> {
    if samples < 360 {
        return Err(Error::InvalidSize(format!("need at least 360 curve samples, got {samples}")));
    }
    trace_curve(p, samples)
}

/// Consensus for every replication `m` at once: all sampled locus points,
/// mapped by `λ ↦ -r λ`, lie in `Ω` apart from the origin.
pub fn criterion_curve(fv: &FrequencyVariable, p: &IntPoly, r: f64, samples: usize, tol: Tolerances) -> Result<bool> {
    check_gain(r)?;
    let pts: Vec<ComplexPoint> = curve_samples(p, samples)?.into_iter().map(|l| to_omega_plane(l, r)).collect();
    criterion_points(fv, &pts, tol)
}

/// Bisection for the gain where `predicate` flips inside `[lo, hi]`, to an
/// absolute width of `tol`.
pub fn bisect_gain<F>(predicate: F, lo: f64, hi: f64, tol: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<bool>,
{
    if !(lo < hi) || tol <= 0.0 {
        return Err(Error::Domain(format!("bad bracket [{lo}, {hi}] or tolerance {tol}")));
    }
    let at_lo = predicate(lo)?;
    if predicate(hi)? == at_lo {
        return Err(Error::Bracket { lo, hi });
    }
    let (mut lo, mut hi) = (lo, hi);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if predicate(mid)? == at_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// The gain `r*` at which [`criterion_curve`] flips, within `1e-4`.
pub fn critical_gain(
    fv: &FrequencyVariable,
    p: &IntPoly,
    bracket: (f64, f64),
    samples: usize,
    tol: Tolerances,
) -> Result<f64> {
    bisect_gain(|r| criterion_curve(fv, p, r, samples, tol), bracket.0, bracket.1, 1e-5)
}

/// Consensus verdicts of pure pursuit for `N = 2..=n_max`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SizeSweep {
    pub verdicts: Vec<(usize, bool)>,
}

impl SizeSweep {
    /// Largest `N` that reaches consensus.
    pub fn max_consensus(&self) -> Option<usize> {
        self.verdicts.iter().rev().find(|(_, ok)| *ok).map(|(n, _)| *n)
    }

    /// Consensus holds exactly for an initial run of sizes.
    pub fn is_monotone(&self) -> bool {
        self.verdicts.windows(2).all(|w| w[0].1 || !w[1].1)
    }
}

pub fn pursuit_size_sweep(fv: &FrequencyVariable, r: f64, n_max: usize, tol: Tolerances) -> Result<SizeSweep> {
    let verdicts = (2..=n_max)
        .into_par_iter()
        .map(|n| Ok((n, criterion_ring(fv, &RingTopology::pursuit(n)?, r, tol)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(SizeSweep { verdicts })
}

/// Largest pure-pursuit size `N <= n_max` that reaches consensus. A warning
/// is logged if failures are not confined to the sizes above it.
pub fn max_consensus_n(fv: &FrequencyVariable, r: f64, n_max: usize, tol: Tolerances) -> Result<Option<usize>> {
    let sweep = pursuit_size_sweep(fv, r, n_max, tol)?;
    if !sweep.is_monotone() {
        warn!("consensus is not monotone in N for r = {r}");
    }
    Ok(sweep.max_consensus())
}
