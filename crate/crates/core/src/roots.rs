//! Polynomial roots as eigenvalues of a balanced companion matrix.
//!
//! The companion matrix is already upper Hessenberg, so the eigenvalues come
//! from complex single-shift QR iterations with Wilkinson shifts and
//! deflation. Each root is then polished with a few Newton steps on the
//! original coefficients.

use num_complex::Complex64;

use crate::{Error, Result};

const MAX_SWEEPS_PER_ROOT: usize = 60;
const NEWTON_STEPS: usize = 4;
/// Relative residual a root must reach to be accepted.
const ACCEPT_RESIDUAL: f64 = 1e-8;
const POLISH_RESIDUAL: f64 = 1e-12;

type C = Complex64;

/// All roots of `Σ coeffs[k] z^k`, with multiplicity.
///
/// Leading zeros (trailing entries of `coeffs`) are ignored. A constant
/// polynomial has no roots.
pub fn poly_roots(coeffs: &[C]) -> Result<Vec<C>> {
    let mut len = coeffs.len();
    while len > 0 && coeffs[len - 1] == C::new(0.0, 0.0) {
        len -= 1;
    }
    if len <= 1 {
        return Ok(Vec::new());
    }
    let coeffs = &coeffs[..len];
    let degree = len - 1;

    // Zero roots are exact; strip them to keep the companion matrix regular.
    let zeros = coeffs.iter().take_while(|c| c.norm() == 0.0).count();
    let reduced = &coeffs[zeros..];
    let mut roots = vec![C::new(0.0, 0.0); zeros];

    let lead = reduced[reduced.len() - 1];
    let monic: Vec<C> = reduced.iter().map(|c| c / lead).collect();
    let found = match monic.len() - 1 {
        0 => Vec::new(),
        1 => vec![-monic[0]],
        _ => {
            let mut h = companion(&monic);
            balance(&mut h);
            hessenberg_eigenvalues(&mut h)?
        }
    };
    for z in found {
        roots.push(polish(coeffs, z)?);
    }
    debug_assert_eq!(roots.len(), degree);
    Ok(roots)
}

/// Roots of a real-coefficient polynomial.
pub fn real_poly_roots(coeffs: &[f64]) -> Result<Vec<C>> {
    let c: Vec<C> = coeffs.iter().map(|&v| C::new(v, 0.0)).collect();
    poly_roots(&c)
}

/// `|p(z)| / Σ |c_k| |z|^k`, the backward-error style residual.
pub fn relative_residual(coeffs: &[C], z: C) -> f64 {
    let (value, scale) = eval_with_scale(coeffs, z);
    if scale == 0.0 {
        0.0
    } else {
        value.norm() / scale
    }
}

pub fn eval(coeffs: &[C], z: C) -> C {
    coeffs.iter().rev().fold(C::new(0.0, 0.0), |acc, &c| acc * z + c)
}

fn eval_with_scale(coeffs: &[C], z: C) -> (C, f64) {
    let r = z.norm();
    let mut value = C::new(0.0, 0.0);
    let mut scale = 0.0;
    for &c in coeffs.iter().rev() {
        value = value * z + c;
        scale = scale * r + c.norm();
    }
    (value, scale)
}

fn polish(coeffs: &[C], start: C) -> Result<C> {
    let mut z = start;
    let mut best = relative_residual(coeffs, z);
    for _ in 0..NEWTON_STEPS {
        if best <= POLISH_RESIDUAL * 1e-3 {
            break;
        }
        let mut p = C::new(0.0, 0.0);
        let mut dp = C::new(0.0, 0.0);
        for &c in coeffs.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
        }
        if dp.norm() == 0.0 {
            break;
        }
        let next = z - p / dp;
        let res = relative_residual(coeffs, next);
        if !res.is_finite() || res >= best {
            break;
        }
        z = next;
        best = res;
    }
    if best > ACCEPT_RESIDUAL {
        return Err(Error::NumericFailure { context: "polynomial root", residual: best });
    }
    Ok(z)
}

/// Companion matrix of a monic polynomial, first-row form.
fn companion(monic: &[C]) -> Vec<Vec<C>> {
    let n = monic.len() - 1;
    let mut h = vec![vec![C::new(0.0, 0.0); n]; n];
    for j in 0..n {
        h[0][j] = -monic[n - 1 - j];
    }
    for i in 1..n {
        h[i][i - 1] = C::new(1.0, 0.0);
    }
    h
}

/// Parlett–Reinsch balancing by powers of two.
fn balance(a: &mut [Vec<C>]) {
    let n = a.len();
    let radix = 2.0_f64;
    let sq = radix * radix;
    let mut done = false;
    while !done {
        done = true;
        for i in 0..n {
            let mut r = 0.0;
            let mut c = 0.0;
            for j in 0..n {
                if j != i {
                    c += a[j][i].l1_norm();
                    r += a[i][j].l1_norm();
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut g = r / radix;
            let mut f = 1.0;
            while c < g {
                f *= radix;
                c *= sq;
            }
            g = r * radix;
            while c > g {
                f /= radix;
                c /= sq;
            }
            if (c + r) / f < 0.95 * s {
                done = false;
                let inv = 1.0 / f;
                for j in 0..n {
                    a[i][j] *= inv;
                }
                for row in a.iter_mut() {
                    row[i] *= f;
                }
            }
        }
    }
}

/// Eigenvalues of an upper Hessenberg matrix; `h` is overwritten.
pub(crate) fn hessenberg_eigenvalues(h: &mut [Vec<C>]) -> Result<Vec<C>> {
    let n = h.len();
    let mut eig = vec![C::new(0.0, 0.0); n];
    if n == 0 {
        return Ok(eig);
    }
    let eps = f64::EPSILON;
    let mut hi = n - 1;
    let mut iter = 0usize;
    let mut total = 0usize;
    let mut rot: Vec<(C, C)> = Vec::with_capacity(n);
    loop {
        if hi == 0 {
            eig[0] = h[0][0];
            break;
        }
        // Deflate at the first negligible subdiagonal entry from the bottom.
        let mut lo = hi;
        while lo > 0 {
            let sub = h[lo][lo - 1].l1_norm();
            let mut diag = h[lo][lo].l1_norm() + h[lo - 1][lo - 1].l1_norm();
            if diag == 0.0 {
                diag = norm_block(h, lo - 1, hi);
            }
            if sub <= eps * diag {
                h[lo][lo - 1] = C::new(0.0, 0.0);
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            eig[hi] = h[hi][hi];
            hi -= 1;
            iter = 0;
            continue;
        }

        iter += 1;
        total += 1;
        if total > MAX_SWEEPS_PER_ROOT * n {
            let residual = h[hi][hi - 1].norm() / norm_block(h, lo, hi).max(f64::MIN_POSITIVE);
            return Err(Error::NumericFailure { context: "Hessenberg QR", residual });
        }

        let shift = if iter % 10 == 0 {
            // Exceptional shift to break cycles.
            let t = h[hi][hi - 1].l1_norm() + if hi >= 2 { h[hi - 1][hi - 2].l1_norm() } else { 0.0 };
            h[hi][hi] + C::new(0.75 * t, -0.4375 * t)
        } else {
            wilkinson(h[hi - 1][hi - 1], h[hi - 1][hi], h[hi][hi - 1], h[hi][hi])
        };

        for i in lo..=hi {
            h[i][i] -= shift;
        }
        rot.clear();
        for k in lo..hi {
            let a = h[k][k];
            let b = h[k + 1][k];
            let r = (a.norm_sqr() + b.norm_sqr()).sqrt();
            let (c, s) = if r == 0.0 {
                (C::new(1.0, 0.0), C::new(0.0, 0.0))
            } else {
                (a / r, b / r)
            };
            for j in k..=hi {
                let x = h[k][j];
                let y = h[k + 1][j];
                h[k][j] = c.conj() * x + s.conj() * y;
                h[k + 1][j] = -s * x + c * y;
            }
            rot.push((c, s));
        }
        for (offset, &(c, s)) in rot.iter().enumerate() {
            let k = lo + offset;
            let last = (k + 2).min(hi);
            for i in lo..=last {
                let x = h[i][k];
                let y = h[i][k + 1];
                h[i][k] = x * c + y * s;
                h[i][k + 1] = -x * s.conj() + y * c.conj();
            }
        }
        for i in lo..=hi {
            h[i][i] += shift;
        }
    }
    Ok(eig)
}

fn norm_block(h: &[Vec<C>], lo: usize, hi: usize) -> f64 {
    let mut s = 0.0;
    for row in h.iter().take(hi + 1).skip(lo) {
        for v in row.iter().take(hi + 1).skip(lo) {
            s += v.l1_norm();
        }
    }
    s
}

/// Eigenvalue of `[[a, b], [c, d]]` closer to `d`.
fn wilkinson(a: C, b: C, c: C, d: C) -> C {
    let half = (a - d) * 0.5;
    let disc = (half * half + b * c).sqrt();
    let e1 = d + half + disc;
    let e2 = d + half - disc;
    if (e1 - d).norm() <= (e2 - d).norm() {
        e1
    } else {
        e2
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    fn sorted(mut v: Vec<C>) -> Vec<C> {
        v.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap().then(a.im.partial_cmp(&b.im).unwrap()));
        v
    }

    #[test]
    fn quadratic_roots() {
        // λ² - 3λ = λ (λ - 3)
        let r = sorted(real_poly_roots(&[0.0, -3.0, 1.0]).unwrap());
        assert!(r[0].norm() < 1e-14);
        assert!((r[1] - c(3.0, 0.0)).norm() < 1e-13);
    }

    #[test]
    fn roots_of_unity() {
        // z^8 - 1
        let mut coeffs = vec![c(0.0, 0.0); 9];
        coeffs[0] = c(-1.0, 0.0);
        coeffs[8] = c(1.0, 0.0);
        let r = poly_roots(&coeffs).unwrap();
        assert_eq!(r.len(), 8);
        for z in &r {
            assert!((z.norm() - 1.0).abs() < 1e-13);
            assert!(relative_residual(&coeffs, *z) < 1e-13);
        }
    }

    #[test]
    fn complex_coefficients() {
        // (z - i)(z + 2) = z² + (2 - i) z - 2i
        let r = sorted(poly_roots(&[c(0.0, -2.0), c(2.0, -1.0), c(1.0, 0.0)]).unwrap());
        assert!((r[0] - c(-2.0, 0.0)).norm() < 1e-13);
        assert!((r[1] - c(0.0, 1.0)).norm() < 1e-13);
    }

    #[test]
    fn wilkinson_polynomial_degree_12() {
        let mut p = vec![c(1.0, 0.0)];
        for k in 1..=12 {
            let mut next = vec![c(0.0, 0.0); p.len() + 1];
            for (i, &a) in p.iter().enumerate() {
                next[i + 1] += a;
                next[i] -= a * k as f64;
            }
            p = next;
        }
        let r = sorted(poly_roots(&p).unwrap());
        for (k, z) in r.iter().enumerate() {
            assert!((z - c(k as f64 + 1.0, 0.0)).norm() < 1e-6, "{z}");
        }
    }

    #[test]
    fn zero_roots_and_degenerate_input() {
        let r = real_poly_roots(&[0.0, 0.0, 1.0]).unwrap();
        assert_eq!(r, vec![c(0.0, 0.0), c(0.0, 0.0)]);
        assert!(real_poly_roots(&[5.0]).unwrap().is_empty());
        assert!(real_poly_roots(&[2.0, 0.0]).unwrap().is_empty());
        assert_eq!(real_poly_roots(&[2.0, 4.0]).unwrap(), vec![c(-0.5, 0.0)]);
    }

    #[test]
    fn double_root_is_accepted() {
        // (z - 1)^2
        let r = real_poly_roots(&[1.0, -2.0, 1.0]).unwrap();
        for z in r {
            assert!((z - c(1.0, 0.0)).norm() < 1e-7);
        }
    }
}
