//! The weighted two-cycle ring: a Hamiltonian cycle with unit weights plus
//! the reverse cycle with weight `c ∈ [0, 1]`.
//!
//! Its Laplacian `(1 + c) I - P - c P^{N-1}` is circulant, so the spectrum is
//! `λ_k = (1 + c) - ω^k - c ω^{-k}` with `ω = e^{2πj/N}`. These points lie on
//! the ellipse centred at `(1 + c, 0)` with semi-axes `1 + c` and `1 - c`;
//! the union over `c` is a drop-shaped region.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::linalg::Matrix;
use crate::{ComplexPoint, Error, Result};

/// Abscissa where the two pieces of the drop boundary meet.
pub const DROP_JUNCTION: f64 = 1.5;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightedRing {
    nodes: usize,
    weight: f64,
}

impl WeightedRing {
    pub fn new(nodes: usize, weight: f64) -> Result<Self> {
        if nodes < 2 {
            return Err(Error::InvalidSize(format!("weighted ring needs N >= 2, got {nodes}")));
        }
        if !(0.0..=1.0).contains(&weight) {
            return Err(Error::Domain(format!("reverse weight c = {weight} is outside [0, 1]")));
        }
        Ok(Self { nodes, weight })
    }

    pub fn nodes(&self) -> usize {
        self.nodes
    }

    pub fn weight(&self) -> f64 {
        self.weight
    }

    /// Dense Laplacian, rows as in the circulant form.
    pub fn laplacian(&self) -> Matrix {
        let n = self.nodes;
        let c = self.weight;
        let mut l = Matrix::zeros(n, n);
        for i in 0..n {
            l[(i, i)] += 1.0 + c;
            l[(i, (i + n - 1) % n)] -= 1.0;
            l[(i, (i + 1) % n)] -= c;
        }
        l
    }
}

/// Closed-form spectrum, `k = 0..N`.
pub fn weighted_spectrum(ring: &WeightedRing) -> Vec<ComplexPoint> {
    let n = ring.nodes as f64;
    let c = ring.weight;
    (0..ring.nodes)
        .map(|k| {
            let angle = 2.0 * PI * k as f64 / n;
            let w = Complex64::from_polar(1.0, angle);
            Complex64::new(1.0 + c, 0.0) - w - c * w.conj()
        })
        .collect()
}

/// Left-hand side minus one of `(x - (1+c))²/(1+c)² + y²/(1-c)² = 1`.
///
/// `c = 1` collapses the ellipse onto the segment `[0, 4]` of the real axis;
/// use [`on_degenerate_segment`] there.
pub fn ellipse_residual(c: f64, p: ComplexPoint) -> Result<f64> {
    if !(0.0..=1.0).contains(&c) {
        return Err(Error::Domain(format!("c = {c} is outside [0, 1]")));
    }
    if c == 1.0 {
        return Err(Error::Degenerate("c = 1: the ellipse is the segment [0, 4]".into()));
    }
    let a = 1.0 + c;
    let b = 1.0 - c;
    Ok((p.re - a).powi(2) / (a * a) + p.im.powi(2) / (b * b) - 1.0)
}

/// Membership in the `c = 1` limit, the segment `{(x, 0) : 0 <= x <= 4}`.
pub fn on_degenerate_segment(p: ComplexPoint, tol: f64) -> bool {
    p.im.abs() <= tol && p.re >= -tol && p.re <= 4.0 + tol
}

/// Point of the upper half of ellipse `c` at parameter `t ∈ [0, π]`; `t = 0`
/// is the right tip `(2 + 2c, 0)`, `t = π` the origin.
pub fn ellipse_point(c: f64, t: f64) -> ComplexPoint {
    let a = 1.0 + c;
    Complex64::new(a + a * t.cos(), (1.0 - c) * t.sin())
}

/// Upper boundary `|f_1(x)|` of the drop region on `[0, 4]`.
pub fn drop_boundary(x: f64) -> Result<f64> {
    if !(0.0..=4.0).contains(&x) {
        return Err(Error::Domain(format!("x = {x} is outside [0, 4]")));
    }
    if x <= DROP_JUNCTION {
        Ok((1.0 - (x - 1.0).powi(2)).max(0.0).sqrt())
    } else {
        let s = (1.0 + 2.0 * x).sqrt();
        Ok(((3.0 - s) * (s - x + 1.0).max(0.0).sqrt() / 2.0_f64.sqrt()).max(0.0))
    }
}

/// Closed outline of the drop region: the upper boundary at `samples`
/// abscissae evenly spaced on `[0, 4]`, then the lower boundary back.
pub fn drop_outline(samples: usize) -> Result<Vec<ComplexPoint>> {
    if samples < 2 {
        return Err(Error::InvalidSize(format!("need at least 2 samples, got {samples}")));
    }
    let upper = (0..samples)
        .map(|k| {
            let x = 4.0 * k as f64 / (samples - 1) as f64;
            Ok(Complex64::new(x, drop_boundary(x)?))
        })
        .collect::<Result<Vec<_>>>()?;
    let lower: Vec<ComplexPoint> = upper.iter().rev().skip(1).map(|p| p.conj()).collect();
    Ok(upper.into_iter().chain(lower).collect())
}

/// `x_c = (1 + c)(3 + c) / 2`, where ellipse `c` touches the drop boundary.
pub fn tangency_abscissa(c: f64) -> f64 {
    (1.0 + c) * (3.0 + c) / 2.0
}

/// `f_c(x_c) = ½ (1 - c) √((1 - c)(3 + c))`.
pub fn tangency_height(c: f64) -> f64 {
    0.5 * (1.0 - c) * ((1.0 - c) * (3.0 + c)).sqrt()
}

/// Positive abscissa where the ellipses for weights `c` and `z` cross.
pub fn intersection_x(c: f64, z: f64) -> Result<f64> {
    let open = |v: f64| v > 0.0 && v < 1.0;
    if !open(c) || !open(z) {
        return Err(Error::Domain(format!("weights must lie in (0, 1), got c = {c}, z = {z}")));
    }
    if c == z {
        return Err(Error::Degenerate(
            "identical ellipses; the limit is the tangency abscissa".into(),
        ));
    }
    let rz = (1.0 - z) / (1.0 + z);
    let rc = (1.0 - c) / (1.0 + c);
    let num = (1.0 - z).powi(2) / (1.0 + z) - (1.0 - c).powi(2) / (1.0 + c);
    Ok(2.0 * num / (rz * rz - rc * rc))
}

/// Height of ellipse `c` above abscissa `x`, or `None` outside `[0, 2 + 2c]`.
pub fn ellipse_height(c: f64, x: f64) -> Option<f64> {
    let a = 1.0 + c;
    let u = (x - a) / a;
    (u.abs() <= 1.0).then(|| (1.0 - c) * (1.0 - u * u).max(0.0).sqrt())
}

/// Whether `p` lies in the closed drop region, widened by `tol`.
pub fn in_drop_region(p: ComplexPoint, tol: f64) -> bool {
    if p.re < -tol || p.re > 4.0 + tol {
        return false;
    }
    let x = p.re.clamp(0.0, 4.0);
    let bound = drop_boundary(x).expect("clamped into the domain");
    p.im.abs() <= bound + tol
}

/// Maximum of `f` on `[lo, hi]` by golden-section search; returns `(x, f(x))`.
pub fn golden_section_max<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, tol: f64) -> (f64, f64) {
    let inv_phi = (5.0_f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (lo, hi);
    let mut x1 = b - inv_phi * (b - a);
    let mut x2 = a + inv_phi * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while (b - a).abs() > tol {
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        }
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}

/// Where ellipse `c` comes closest to the drop boundary, away from the
/// origin (which every ellipse shares with it).
///
/// The gap `|y| - drop_boundary(x)` is scanned over the upper half ellipse
/// for `x >= min_x`, then refined by golden-section search. Returns the
/// abscissa and the gap there.
pub fn ellipse_contact(c: f64, min_x: f64) -> Result<(f64, f64)> {
    if !(0.0..=1.0).contains(&c) {
        return Err(Error::Domain(format!("c = {c} is outside [0, 1]")));
    }
    let gap = |t: f64| {
        let p = ellipse_point(c, t);
        if p.re < min_x {
            return f64::NEG_INFINITY;
        }
        p.im.abs() - drop_boundary(p.re.clamp(0.0, 4.0)).expect("clamped")
    };
    const GRID: usize = 4000;
    let step = PI / GRID as f64;
    let best = (0..=GRID)
        .map(|i| i as f64 * step)
        .max_by(|&s, &t| gap(s).total_cmp(&gap(t)))
        .expect("grid is not empty");
    let lo = (best - step).max(0.0);
    let hi = (best + step).min(PI);
    let (t, value) = golden_section_max(gap, lo, hi, 1e-12);
    let t = if gap(best) > value { best } else { t };
    Ok((ellipse_point(c, t).re, gap(t)))
}
