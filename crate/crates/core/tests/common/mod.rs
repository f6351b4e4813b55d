//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use nalgebra::{DMatrix, Schur};
use num_complex::Complex64;
use rings_core::curves::BivariatePoly;
use rings_core::linalg::{IntMatrix, Matrix};

/// Number of non-isomorphic simple rings on N = 1..=20 nodes.
pub const SIMPLE_RING_COUNTS: [u128; 20] = [
    2, 1, 2, 3, 6, 9, 18, 30, 56, 99, 186, 335, 630, 1161, 2182, 4080, 7710, 14532, 27594, 52377,
];

/// Coefficients (ascending) of `det(λI - A)` by the Faddeev-LeVerrier
/// recurrence in exact integer arithmetic.
pub fn faddeev_leverrier(a: &IntMatrix) -> Vec<i128> {
    let n = a.size();
    let get = |m: &Vec<Vec<i128>>, i: usize, j: usize| m[i][j];
    let a: Vec<Vec<i128>> = (0..n).map(|i| a.row(i).iter().map(|&v| v as i128).collect()).collect();
    let mut coeffs = vec![0i128; n + 1];
    coeffs[n] = 1;
    let mut m: Vec<Vec<i128>> = vec![vec![0; n]; n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = vec![vec![0i128; n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut s = 0i128;
                for l in 0..n {
                    s += a[i][l] * get(&m, l, j);
                }
                next[i][j] = s;
            }
            next[i][i] += coeffs[n - k + 1];
        }
        m = next;
        let mut trace = 0i128;
        for i in 0..n {
            for l in 0..n {
                trace += a[i][l] * m[l][i];
            }
        }
        assert_eq!(trace % k as i128, 0, "Faddeev-LeVerrier division must be exact");
        coeffs[n - k] = -trace / k as i128;
    }
    coeffs
}

/// All length-`n` vectors over {1, 2} that are not periodic, one per
/// rotation class (the largest rotation), by exhaustive search.
pub fn brute_force_classes(n: usize) -> BTreeSet<Vec<u8>> {
    let mut classes = BTreeSet::new();
    for bits in 0u32..(1 << n) {
        let v: Vec<u8> = (0..n).map(|i| if bits >> i & 1 == 1 { 2 } else { 1 }).collect();
        let rotations: Vec<Vec<u8>> = (0..n).map(|s| [&v[s..], &v[..s]].concat()).collect();
        let distinct: BTreeSet<&Vec<u8>> = rotations.iter().collect();
        if distinct.len() < n {
            continue;
        }
        classes.insert(rotations.into_iter().max().unwrap());
    }
    classes
}

/// Eigenvalues of a dense real matrix from nalgebra's Schur decomposition.
pub fn dense_eigenvalues(m: &Matrix) -> Vec<Complex64> {
    let n = m.rows();
    let d = DMatrix::from_row_slice(n, m.cols(), m.as_slice());
    let schur = Schur::try_new(d.clone(), f64::EPSILON, 10_000).or_else(|| {
        // QR stalls on some circulant-like matrices; a fixed orthogonal
        // similarity breaks the structure without changing the spectrum.
        let q = DMatrix::from_fn(n, n, |i, j| ((7 * i + 13 * j + 1) as f64).sin()).qr().q();
        Schur::try_new(q.transpose() * d * q, f64::EPSILON, 10_000)
    });
    let schur = schur.expect("Schur decomposition did not converge");
    schur.complex_eigenvalues().iter().map(|z| Complex64::new(z.re, z.im)).collect()
}

pub fn int_dense_eigenvalues(m: &IntMatrix) -> Vec<Complex64> {
    dense_eigenvalues(&m.to_real())
}

/// Largest distance in a greedy nearest-neighbour pairing of two multisets,
/// or `None` if their sizes differ.
pub fn multiset_distance(a: &[Complex64], b: &[Complex64]) -> Option<f64> {
    if a.len() != b.len() {
        return None;
    }
    let mut used = vec![false; b.len()];
    let mut worst = 0.0f64;
    for p in a {
        let (idx, dist) = b
            .iter()
            .enumerate()
            .filter(|(i, _)| !used[*i])
            .map(|(i, q)| (i, (p - q).norm()))
            .min_by(|x, y| x.1.total_cmp(&y.1))
            .unwrap();
        used[idx] = true;
        worst = worst.max(dist);
    }
    Some(worst)
}

fn poly(terms: &[(u32, u32, i128)]) -> BivariatePoly {
    BivariatePoly::from_terms(terms.iter().copied()).unwrap()
}

/// `(x - 1)² + y² - 1`.
pub fn reference_circle() -> BivariatePoly {
    poly(&[(2, 0, 1), (1, 0, -2), (0, 0, 1), (0, 2, 1), (0, 0, -1)])
}

/// `[(x̃ - √5)² + ỹ²][(x̃ + √5)² + ỹ²] - 2⁴` with `x̃ = 2x - 3`, `ỹ = 2y`.
///
/// The product is `(x̃² + ỹ² + 5)² - (2√5 x̃)²`, so only `√5² = 5` appears.
pub fn reference_cassini() -> BivariatePoly {
    let xt = poly(&[(1, 0, 2), (0, 0, -3)]);
    let yt = poly(&[(0, 1, 2)]);
    let s = xt.checked_pow(2).unwrap().checked_add(&yt.checked_pow(2).unwrap()).unwrap();
    let sum = s.checked_add(&BivariatePoly::constant(5)).unwrap();
    sum.checked_pow(2)
        .unwrap()
        .checked_sub(&xt.checked_pow(2).unwrap().checked_scale(20).unwrap())
        .unwrap()
        .checked_sub(&BivariatePoly::constant(16))
        .unwrap()
}

/// `(x̃²+ỹ²)³ + (4+4x̃)(x̃²+ỹ²)² - 2x̃³ - 4x̃² + 6x̃ỹ² + 4ỹ²` with `x̃ = x - 2`.
pub fn reference_sextic_1() -> BivariatePoly {
    let form = {
        let r2 = poly(&[(2, 0, 1), (0, 2, 1)]);
        r2.checked_pow(3)
            .unwrap()
            .checked_add(&poly(&[(0, 0, 4), (1, 0, 4)]).checked_mul(&r2.checked_pow(2).unwrap()).unwrap())
            .unwrap()
            .checked_add(&poly(&[(3, 0, -2), (2, 0, -4), (1, 2, 6), (0, 2, 4)]))
            .unwrap()
    };
    shift_x(&form, 2)
}

/// `(x̃²+ỹ²)³ + 2x̃(x̃²+ỹ²)² - 3x̃⁴ - 6x̃³ + 2x̃²ỹ² + 2x̃² + 2x̃ỹ² + 4x̃ + 5ỹ⁴ + 6ỹ²`
/// with `x̃ = x - 2`.
pub fn reference_sextic_2() -> BivariatePoly {
    let form = {
        let r2 = poly(&[(2, 0, 1), (0, 2, 1)]);
        r2.checked_pow(3)
            .unwrap()
            .checked_add(&poly(&[(1, 0, 2)]).checked_mul(&r2.checked_pow(2).unwrap()).unwrap())
            .unwrap()
            .checked_add(&poly(&[
                (4, 0, -3),
                (3, 0, -6),
                (2, 2, 2),
                (2, 0, 2),
                (1, 2, 2),
                (1, 0, 4),
                (0, 4, 5),
                (0, 2, 6),
            ]))
            .unwrap()
    };
    shift_x(&form, 2)
}

/// Substitutes `x̃ = x - shift`.
fn shift_x(form: &BivariatePoly, shift: i128) -> BivariatePoly {
    let xt = poly(&[(1, 0, 1), (0, 0, -shift)]);
    form.compose(&xt, &BivariatePoly::y()).unwrap()
}

/// Closed-form interior of the parabola region of `φ(s) = s² + γs`.
pub fn inside_parabola(gamma: f64, p: Complex64) -> bool {
    p.re < 0.0 && p.im * p.im < -gamma * gamma * p.re
}
