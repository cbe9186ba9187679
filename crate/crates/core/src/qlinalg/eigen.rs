//! Cyclic Jacobi diagonalization of complex Hermitian matrices.
//!
//! Each rotation first removes the phase of the pivot entry and then applies
//! a real Givens rotation, so every step is a unitary similarity. Sweeps stop
//! once the off-diagonal Frobenius norm drops below [`OFF_DIAGONAL_TOL`]
//! (scaled by the matrix norm when that exceeds one).

use num_complex::Complex64 as C64;

use super::ComplexMatrix;
use crate::error::{Error, Result};

pub const HERMITIAN_TOL: f64 = 1e-12;
pub const PSD_TOL: f64 = 1e-10;
pub const OFF_DIAGONAL_TOL: f64 = 1e-13;
const MAX_SWEEPS: usize = 100;

/// Eigenvalues (descending) and, optionally, the unitary whose columns are
/// the matching eigenvectors.
pub(crate) struct Eigh {
    pub values: Vec<f64>,
    pub vectors: Option<ComplexMatrix>,
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.dim();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

pub(crate) fn check_hermitian(h: &ComplexMatrix) -> Result<()> {
    if !h.is_finite() {
        return Err(Error::NonFinite);
    }
    let dev = h.hermiticity_deviation();
    if dev > HERMITIAN_TOL {
        return Err(Error::NotHermitian(dev));
    }
    Ok(())
}

pub(crate) fn jacobi_eigh(h: &ComplexMatrix, want_vectors: bool) -> Result<Eigh> {
    check_hermitian(h)?;
    let n = h.dim();
    let mut a = h.clone();
    // symmetrize so rounding in the input cannot leak into the iteration
    for i in 0..n {
        a[(i, i)] = C64::new(a[(i, i)].re, 0.0);
        for j in (i + 1)..n {
            let m = 0.5 * (a[(i, j)] + a[(j, i)].conj());
            a[(i, j)] = m;
            a[(j, i)] = m.conj();
        }
    }
    let mut v = want_vectors.then(|| ComplexMatrix::identity(n));
    let threshold = OFF_DIAGONAL_TOL * h.frobenius_norm().max(1.0);

    let mut sweeps = 0;
    while off_diagonal_norm(&a) >= threshold {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence(MAX_SWEEPS));
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, v.as_mut(), p, q);
            }
        }
    }

    let mut pairs: Vec<(f64, usize)> = (0..n).map(|i| (a[(i, i)].re, i)).collect();
    pairs.sort_by(|x, y| y.0.total_cmp(&x.0));
    let values = pairs.iter().map(|&(e, _)| e).collect();
    let vectors = v.map(|v| {
        let mut sorted = ComplexMatrix::zeros(n);
        for (col, &(_, src)) in pairs.iter().enumerate() {
            for row in 0..n {
                sorted[(row, col)] = v[(row, src)];
            }
        }
        sorted
    });
    Ok(Eigh { values, vectors })
}

/// Annihilates a[p][q] with A <- G^dagger A G, where
/// G = [[c, s], [-s e^{-i phi}, c e^{-i phi}]] on the (p, q) plane.
fn rotate(a: &mut ComplexMatrix, v: Option<&mut ComplexMatrix>, p: usize, q: usize) {
    let apq = a[(p, q)];
    let mag = apq.norm();
    if mag == 0.0 {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    // pivot below the resolution of the diagonal: zero it directly
    if mag < f64::EPSILON * 1e-3 * (app.abs() + aqq.abs()) {
        a[(p, q)] = C64::new(0.0, 0.0);
        a[(q, p)] = C64::new(0.0, 0.0);
        return;
    }
    let phase = apq / mag; // e^{i phi}
    let theta = (aqq - app) / (2.0 * mag);
    let t = if theta >= 0.0 {
        1.0 / (theta + (theta * theta + 1.0).sqrt())
    } else {
        -1.0 / (-theta + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    let ph_conj = phase.conj();
    let n = a.dim();

    // columns: B = A G
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * c - akq * ph_conj * s;
        a[(k, q)] = akp * s + akq * ph_conj * c;
    }
    // rows: A' = G^dagger B
    for k in 0..n {
        let bpk = a[(p, k)];
        let bqk = a[(q, k)];
        a[(p, k)] = bpk * c - bqk * phase * s;
        a[(q, k)] = bpk * s + bqk * phase * c;
    }
    a[(p, q)] = C64::new(0.0, 0.0);
    a[(q, p)] = C64::new(0.0, 0.0);
    a[(p, p)] = C64::new(app - t * mag, 0.0);
    a[(q, q)] = C64::new(aqq + t * mag, 0.0);

    if let Some(v) = v {
        for k in 0..n {
            let vkp = v[(k, p)];
            let vkq = v[(k, q)];
            v[(k, p)] = vkp * c - vkq * ph_conj * s;
            v[(k, q)] = vkp * s + vkq * ph_conj * c;
        }
    }
}
