//! One-dimensional bracketing root finder and golden-section minimizer.

use crate::error::{Error, Result};

pub const BISECT_TOL: f64 = 1e-10;
pub const BISECT_MAX_ITER: usize = 200;
pub const GOLDEN_TOL: f64 = 1e-4;

/// Root of `f` on `[lo, hi]`; `f(lo)` and `f(hi)` must differ in sign.
/// Stops when the bracket is narrower than `tol`.
pub fn bisect<F>(f: F, mut lo: f64, mut hi: f64, tol: f64, max_iter: usize) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    let mut flo = f(lo);
    let fhi = f(hi);
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.is_nan() || fhi.is_nan() || flo.signum() == fhi.signum() {
        return Err(Error::NotBracketed { lo, hi });
    }
    for _ in 0..max_iter {
        let mid = 0.5 * (lo + hi);
        if (hi - lo).abs() < tol || mid == lo || mid == hi {
            return Ok(mid);
        }
        let fmid = f(mid);
        if fmid == 0.0 {
            return Ok(mid);
        }
        if fmid.signum() == flo.signum() {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Grows `[lo, hi]` by doubling `hi` until `f` changes sign or `hi` passes
/// `limit`.
pub fn expand_bracket<F>(f: F, lo: f64, mut hi: f64, limit: f64) -> Result<(f64, f64)>
where
    F: Fn(f64) -> f64,
{
    let flo = f(lo);
    let mut inner = lo;
    loop {
        let fhi = f(hi);
        if fhi == 0.0 || (fhi.signum() != flo.signum() && !fhi.is_nan()) {
            return Ok((inner, hi));
        }
        if hi >= limit {
            return Err(Error::NotBracketed { lo, hi });
        }
        inner = hi;
        hi = (2.0 * hi).min(limit);
    }
}

/// Sign-change predicate root: finds the boundary between `pred == false`
/// at `lo` and `pred == true` at `hi`.
pub fn bisect_predicate<P>(pred: P, mut lo: f64, mut hi: f64, tol: f64) -> Result<f64>
where
    P: Fn(f64) -> bool,
{
    if pred(lo) || !pred(hi) {
        return Err(Error::NotBracketed { lo, hi });
    }
    for _ in 0..BISECT_MAX_ITER {
        if hi - lo < tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if pred(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Minimizer of a unimodal `f` on `[lo, hi]` to within `tol` in the argument.
/// Returns `(x, f(x))`.
pub fn golden_section_min<F>(f: F, mut lo: f64, mut hi: f64, tol: f64) -> (f64, f64)
where
    F: Fn(f64) -> f64,
{
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while hi - lo > tol {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        }
    }
    let x = 0.5 * (lo + hi);
    (x, f(x))
}
