use std::f64::consts::PI;

use crate::error::{Error, Result};

use super::special::norm_pdf;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadratureKind {
    /// Weight function is the standard normal density on the real line.
    GaussHermite,
    /// Weight function is 1 on `[-1, 1]`.
    GaussLegendre,
}

/// Nodes in increasing order with strictly positive weights.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub kind: QuadratureKind,
}

impl QuadratureRule {
    /// Probabilists' Gauss–Hermite rule: `Σ w_k f(x_k) ≈ E f(Z)` for `Z ~ N(0,1)`.
    /// Weights sum to one.
    pub fn gauss_hermite(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("Gauss-Hermite rule needs at least one node"));
        }
        // Nodes from the eigenvalues of the Jacobi matrix (off-diagonal √k),
        // then a Newton polish on orthonormal physicists' Hermite functions at
        // z = x/√2, which also yields the weights.
        let mut diag = vec![0.0; n];
        let mut off: Vec<f64> = (1..=n).map(|k| if k < n { (k as f64).sqrt() } else { 0.0 }).collect();
        symmetric_tridiagonal_eigenvalues(&mut diag, &mut off);
        diag.sort_by(|a, b| b.total_cmp(a));

        let pim4 = PI.powf(-0.25);
        let mut x = vec![0.0; n];
        let mut w = vec![0.0; n];
        let m = n.div_ceil(2);
        let nf = n as f64;
        for i in 0..m {
            let mut z = diag[i] / 2f64.sqrt();
            let mut pp = 0.0;
            for _ in 0..8 {
                // Hermite functions (polynomial times e^{-z²/2}) stay in range
                // for large n where the bare polynomials overflow.
                let mut p1 = pim4 * (-0.5 * z * z).exp();
                let mut p2 = 0.0;
                for j in 0..n {
                    let p3 = p2;
                    p2 = p1;
                    let jf = j as f64;
                    p1 = z * (2.0 / (jf + 1.0)).sqrt() * p2 - (jf / (jf + 1.0)).sqrt() * p3;
                }
                pp = (2.0 * nf).sqrt() * p2;
                let dz = p1 / pp;
                z -= dz;
                if dz.abs() <= 1e-15 * z.abs().max(1.0) {
                    break;
                }
            }
            x[i] = z;
            w[i] = 2.0 * (-z * z).exp() / (pp * pp);
        }
        let mut nodes = Vec::with_capacity(n);
        let mut weights = Vec::with_capacity(n);
        let scale = 2f64.sqrt();
        let wscale = 1.0 / PI.sqrt();
        for i in 0..m {
            nodes.push(-x[i] * scale);
            weights.push(w[i] * wscale);
        }
        for i in (0..n - m).rev() {
            nodes.push(x[i] * scale);
            weights.push(w[i] * wscale);
        }
        if n % 2 == 1 {
            // middle node is exactly zero
            nodes[m - 1] = 0.0;
        }
        Ok(Self { nodes, weights, kind: QuadratureKind::GaussHermite })
    }

    /// Gauss–Legendre rule on `[-1, 1]`; weights sum to 2.
    pub fn gauss_legendre(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("Gauss-Legendre rule needs at least one node"));
        }
        let nf = n as f64;
        let m = n.div_ceil(2);
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        for i in 0..m {
            let mut z = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut pp = 0.0;
            for _ in 0..100 {
                let mut p1 = 1.0;
                let mut p2 = 0.0;
                for j in 0..n {
                    let p3 = p2;
                    p2 = p1;
                    let jf = j as f64;
                    p1 = ((2.0 * jf + 1.0) * z * p2 - jf * p3) / (jf + 1.0);
                }
                pp = nf * (z * p1 - p2) / (z * z - 1.0);
                let dz = p1 / pp;
                z -= dz;
                if dz.abs() <= 1e-16 {
                    break;
                }
            }
            nodes[i] = -z;
            nodes[n - 1 - i] = z;
            let wi = 2.0 / ((1.0 - z * z) * pp * pp);
            weights[i] = wi;
            weights[n - 1 - i] = wi;
        }
        if n % 2 == 1 {
            nodes[m - 1] = 0.0;
        }
        Ok(Self { nodes, weights, kind: QuadratureKind::GaussLegendre })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

/// `E g(Y)` for `Y ~ N(m, s²)` by an `n`-node probabilists' Gauss–Hermite rule.
pub fn gauss_hermite_expectation<F>(g: F, m: f64, s: f64, n: usize) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    if s < 0.0 {
        return Err(Error::domain(format!("standard deviation must be >= 0, got {s}")));
    }
    let rule = QuadratureRule::gauss_hermite(n)?;
    let mut acc = 0.0;
    for (&x, &w) in rule.nodes.iter().zip(&rule.weights) {
        let y = m + s * x;
        let v = g(y);
        if !v.is_finite() {
            return Err(Error::NonFinite { at: y, value: v });
        }
        acc += w * v;
    }
    Ok(acc)
}

/// Eigenvalues of a symmetric tridiagonal matrix by implicit QL, in place.
/// `diag` holds the diagonal, `off[i]` couples rows `i` and `i + 1`
/// (`off[n-1]` is ignored).
fn symmetric_tridiagonal_eigenvalues(diag: &mut [f64], off: &mut [f64]) {
    let n = diag.len();
    if n < 2 {
        return;
    }
    off[n - 1] = 0.0;
    for l in 0..n {
        for _ in 0..100 {
            let mut m = l;
            while m < n - 1 {
                let dd = diag[m].abs() + diag[m + 1].abs();
                if off[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            let mut g = (diag[l + 1] - diag[l]) / (2.0 * off[l]);
            let mut r = g.hypot(1.0);
            g = diag[m] - diag[l] + off[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut underflow = false;
            for i in (l..m).rev() {
                let f = s * off[i];
                let b = c * off[i];
                r = f.hypot(g);
                off[i + 1] = r;
                if r == 0.0 {
                    diag[i + 1] -= p;
                    off[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = diag[i + 1] - p;
                r = (diag[i] - g) * s + 2.0 * c * b;
                p = s * r;
                diag[i + 1] = g + p;
                g = c * r - b;
            }
            if underflow {
                continue;
            }
            diag[l] -= p;
            off[l] = g;
            off[m] = 0.0;
        }
    }
}

const PANEL_WIDTH: f64 = 2.0;

/// `∫_lo^hi f(t) φ(t) dt` in standardized units, with `φ` the standard normal
/// density, by Gauss–Legendre panels.
///
/// Panel boundaries include every point of `breaks` inside `(lo, hi)`, and no
/// panel is wider than two units, so `f` only needs to be smooth between
/// consecutive breaks. `rule` must be a Gauss–Legendre rule.
pub fn gaussian_expectation_panels<F>(
    f: F,
    lo: f64,
    hi: f64,
    breaks: &[f64],
    rule: &QuadratureRule,
) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    debug_assert_eq!(rule.kind, QuadratureKind::GaussLegendre);
    if !(lo < hi) {
        return Ok(0.0);
    }
    let mut cuts: Vec<f64> = Vec::with_capacity(breaks.len() + 2);
    cuts.push(lo);
    cuts.extend(breaks.iter().copied().filter(|b| *b > lo && *b < hi));
    cuts.push(hi);
    cuts.sort_by(|a, b| a.total_cmp(b));
    cuts.dedup();

    let mut acc = 0.0;
    for seg in cuts.windows(2) {
        let (a, b) = (seg[0], seg[1]);
        let pieces = ((b - a) / PANEL_WIDTH).ceil().max(1.0) as usize;
        let h = (b - a) / pieces as f64;
        for k in 0..pieces {
            let pa = a + h * k as f64;
            let half = 0.5 * h;
            let mid = pa + half;
            let mut part = 0.0;
            for (&x, &w) in rule.nodes.iter().zip(&rule.weights) {
                let t = mid + half * x;
                let v = f(t);
                if !v.is_finite() {
                    return Err(Error::NonFinite { at: t, value: v });
                }
                part += w * v * norm_pdf(t);
            }
            acc += half * part;
        }
    }
    Ok(acc)
}
