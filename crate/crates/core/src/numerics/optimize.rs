use crate::error::{Error, Result};

/// Outcome of a bracketed scalar search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptResult {
    pub argopt: f64,
    pub value: f64,
    pub evaluations: usize,
    /// Final bracket width is within the requested tolerance.
    pub converged: bool,
}

const INV_PHI: f64 = 0.618_033_988_749_894_9;
const MAX_EVALUATIONS: usize = 500;

/// Golden-section search for a maximum of `f` on `[lo, hi]`.
///
/// The bracket ends are evaluated as well, so the returned value is never
/// below `f(lo)` or `f(hi)`.
pub fn maximize_scalar<F>(f: F, lo: f64, hi: f64, tol: f64) -> Result<OptResult>
where
    F: FnMut(f64) -> f64,
{
    golden(f, lo, hi, tol, 1.0)
}

/// Golden-section search for a minimum of `f` on `[lo, hi]`.
pub fn minimize_scalar<F>(f: F, lo: f64, hi: f64, tol: f64) -> Result<OptResult>
where
    F: FnMut(f64) -> f64,
{
    golden(f, lo, hi, tol, -1.0)
}

fn golden<F>(mut f: F, lo: f64, hi: f64, tol: f64, sign: f64) -> Result<OptResult>
where
    F: FnMut(f64) -> f64,
{
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::domain(format!("invalid bracket [{lo}, {hi}]")));
    }
    if !(tol > 0.0) {
        return Err(Error::domain(format!("tolerance must be > 0, got {tol}")));
    }
    let evaluations = std::cell::Cell::new(0usize);
    let mut eval = |x: f64| -> Result<f64> {
        evaluations.set(evaluations.get() + 1);
        let v = f(x);
        if v.is_finite() {
            Ok(sign * v)
        } else {
            Err(Error::NonFinite { at: x, value: v })
        }
    };

    let (mut a, mut b) = (lo, hi);
    let mut best = (a, eval(a)?);
    let fb = eval(b)?;
    if fb > best.1 {
        best = (b, fb);
    }
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = eval(c)?;
    let mut fd = eval(d)?;
    while b - a > tol && evaluations.get() < MAX_EVALUATIONS {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = eval(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = eval(d)?;
        }
    }
    for (x, v) in [(c, fc), (d, fd)] {
        if v > best.1 {
            best = (x, v);
        }
    }
    Ok(OptResult {
        argopt: best.0,
        value: sign * best.1,
        evaluations: evaluations.get(),
        converged: b - a <= tol,
    })
}
