//! Characteristic polynomials of ring Laplacians and sampling of the spectrum.
//!
//! For a ring built from `m` copies of a macro-vertex, the Laplacian
//! characteristic polynomial is `Δ(λ) = P(λ)^m - (-1)^N`, where the
//! macro-vertex polynomial `P` is a product of modified Chebyshev factors
//! `Z_k`, one per segment of the pursuit cycle between consecutive nodes of
//! out-degree one. Every eigenvalue therefore solves `P(λ) = σ` for an
//! `m`-th root `σ` of `(-1)^N`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::poly::{chebyshev_z, IntPoly, MAX_DEGREE};
use crate::roots::poly_roots;
use crate::topology::{NecklaceVector, RingTopology};
use crate::{ComplexPoint, Error, Result};

/// Parity of the total node count `N`, which fixes the sign in `σ^m = (-1)^N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(nodes: usize) -> Self {
        if nodes % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// `(-1)^N`.
    pub fn sign(self) -> i128 {
        match self {
            Parity::Even => 1,
            Parity::Odd => -1,
        }
    }
}

/// Out-degrees (Laplacian diagonal) of the nodes of the single-copy ring.
fn macro_degrees(necklace: &NecklaceVector) -> Vec<u32> {
    let n = necklace.len();
    let e = necklace.entries();
    (0..n)
        .map(|k| {
            // Node 0 carries the ring arc, every other node its main arc.
            let reverse = k + 1 < n && e[k] == 2;
            1 + u32::from(reverse)
        })
        .collect()
}

/// Lengths of the pieces of the pursuit cycle `0 -> n-1 -> ... -> 1 -> 0`
/// cut at nodes of out-degree one. The lengths sum to `n`.
pub fn segment_lengths(necklace: &NecklaceVector) -> Result<Vec<usize>> {
    check_simple_necklace(necklace)?;
    let n = necklace.len();
    if n == 1 {
        return Ok(vec![1]);
    }
    // Position of node k along the cycle.
    let pos = |k: usize| if k == 0 { 0 } else { n - k };
    let mut cuts: Vec<usize> = macro_degrees(necklace)
        .iter()
        .enumerate()
        .filter(|(_, &d)| d == 1)
        .map(|(k, _)| pos(k))
        .collect();
    cuts.sort_unstable();
    // Node n-1 always has out-degree one.
    debug_assert!(!cuts.is_empty());
    let mut lengths: Vec<usize> = cuts.windows(2).map(|w| w[1] - w[0]).collect();
    lengths.push(cuts[0] + n - cuts[cuts.len() - 1]);
    Ok(lengths)
}

fn check_simple_necklace(necklace: &NecklaceVector) -> Result<()> {
    let n = necklace.len();
    if n >= 2 && necklace.entries()[n - 1] != 1 {
        return Err(Error::InvalidNecklace(format!(
            "last entry of {necklace} must be 1 for a ring digraph"
        )));
    }
    Ok(())
}

/// The macro-vertex polynomial `P = Π Z_{i_k}` over the segment lengths.
pub fn macro_polynomial(necklace: &NecklaceVector) -> Result<IntPoly> {
    segment_lengths(necklace)?
        .into_iter()
        .try_fold(IntPoly::one(), |acc, len| acc.checked_mul(&chebyshev_z(len)?))
}

/// `Δ(λ) = P(λ)^m - (-1)^N`, exactly.
pub fn char_poly(ring: &RingTopology) -> Result<IntPoly> {
    if ring.has_reverse_ring_arcs() && ring.replication() > 1 {
        return Err(Error::InvalidNecklace(
            "the bidirectional single-node ring has no product-form characteristic polynomial".into(),
        ));
    }
    let nodes = ring.nodes();
    if nodes > MAX_DEGREE {
        return Err(Error::ResourceLimit(format!(
            "characteristic polynomial of degree {nodes} exceeds {MAX_DEGREE}"
        )));
    }
    let p = macro_polynomial(ring.necklace())?;
    let sign = IntPoly::constant(Parity::of(nodes).sign());
    p.checked_pow(ring.replication())?.checked_sub(&sign)
}

/// The `m` roots of `σ^m = (-1)^N`.
pub fn unit_roots(m: usize, parity: Parity) -> Vec<Complex64> {
    let offset = match parity {
        Parity::Even => 0.0,
        Parity::Odd => PI,
    };
    (0..m)
        .map(|k| Complex64::from_polar(1.0, (2.0 * PI * k as f64 + offset) / m as f64))
        .collect()
}

/// Roots of `P(λ) = σ`.
pub fn solve_level(p: &IntPoly, sigma: Complex64) -> Result<Vec<ComplexPoint>> {
    let mut coeffs = p.to_complex();
    if coeffs.is_empty() {
        return Ok(Vec::new());
    }
    coeffs[0] -= sigma;
    poly_roots(&coeffs)
}

/// All `n m` solutions of `P(λ) = σ_k` over the roots `σ_k` of
/// `σ^m = (-1)^N`: the Laplacian spectrum of the `m`-fold replication.
///
/// Points are grouped by `k`, in increasing angle of `σ_k`.
pub fn locus_points(p: &IntPoly, m: usize, parity: Parity) -> Result<Vec<ComplexPoint>> {
    if m == 0 {
        return Err(Error::InvalidSize("m must be at least 1".into()));
    }
    let per_root = unit_roots(m, parity)
        .into_par_iter()
        .map(|sigma| solve_level(p, sigma))
        .collect::<Result<Vec<_>>>()?;
    Ok(per_root.into_iter().flatten().collect())
}

/// The spectrum of a ring via [`locus_points`].
pub fn ring_spectrum(ring: &RingTopology) -> Result<Vec<ComplexPoint>> {
    if ring.has_reverse_ring_arcs() && ring.replication() > 1 {
        return Err(Error::InvalidNecklace(
            "the bidirectional single-node ring is not covered by the product form".into(),
        ));
    }
    let p = macro_polynomial(ring.necklace())?;
    locus_points(&p, ring.replication(), Parity::of(ring.nodes()))
}
