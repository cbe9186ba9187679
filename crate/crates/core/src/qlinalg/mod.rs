//! Dense complex linear algebra for registers of at most seven qubits.

mod eigen;
mod layout;
mod matrix;
mod state;

use num_complex::Complex64 as C64;

pub use eigen::{HERMITIAN_TOL, OFF_DIAGONAL_TOL, PSD_TOL};
pub use layout::{Qubit, SystemLayout};
pub use matrix::ComplexMatrix;
pub use state::{DensityMatrix, PureState, NORM_TOL, TRACE_TOL};

pub(crate) use state::reduce_amplitudes;

use crate::error::{Error, Result};

/// Operands that combine with `⊗`. Layouts concatenate in argument order.
pub trait TensorProduct: Sized {
    fn tensor_product(&self, rhs: &Self) -> Result<Self>;
}

impl TensorProduct for PureState {
    fn tensor_product(&self, rhs: &Self) -> Result<Self> {
        self.tensor(rhs)
    }
}

impl TensorProduct for DensityMatrix {
    fn tensor_product(&self, rhs: &Self) -> Result<Self> {
        self.tensor(rhs)
    }
}

impl TensorProduct for ComplexMatrix {
    fn tensor_product(&self, rhs: &Self) -> Result<Self> {
        if !self.is_finite() || !rhs.is_finite() {
            return Err(Error::NonFinite);
        }
        Ok(self.kron(rhs))
    }
}

pub fn tensor_product<T: TensorProduct>(a: &T, b: &T) -> Result<T> {
    a.tensor_product(b)
}

/// Partial trace keeping `keep`, ordered as given.
pub fn partial_trace(rho: &DensityMatrix, keep: &[Qubit]) -> Result<DensityMatrix> {
    let layout = rho.layout();
    let keep_pos = layout.positions_of(keep)?;
    let n = layout.len();
    let rest: Vec<usize> = (0..n).filter(|p| !keep_pos.contains(p)).collect();
    let dk = 1usize << keep_pos.len();
    let dr = 1usize << rest.len();

    let index = |kept: usize, traced: usize| -> usize {
        let mut idx = 0usize;
        for (k, &p) in keep_pos.iter().enumerate() {
            idx |= ((kept >> (keep_pos.len() - 1 - k)) & 1) << layout.shift(p);
        }
        for (k, &p) in rest.iter().enumerate() {
            idx |= ((traced >> (rest.len() - 1 - k)) & 1) << layout.shift(p);
        }
        idx
    };

    let m = rho.matrix();
    let mut out = ComplexMatrix::zeros(dk);
    for i in 0..dk {
        for j in 0..dk {
            let s: C64 = (0..dr).map(|t| m[(index(i, t), index(j, t))]).sum();
            out[(i, j)] = s;
        }
    }
    Ok(DensityMatrix::from_parts_unchecked(
        SystemLayout::new(keep)?,
        out,
    ))
}

/// Transpose on the indices of `subsystem`. The subsystem must be a
/// nonempty proper subset of the layout.
pub fn partial_transpose(rho: &DensityMatrix, subsystem: &[Qubit]) -> Result<ComplexMatrix> {
    partial_transpose_matrix(rho.matrix(), rho.layout(), subsystem)
}

/// [`partial_transpose`] on a bare operator laid out as `layout`.
pub fn partial_transpose_matrix(
    m: &ComplexMatrix,
    layout: &SystemLayout,
    subsystem: &[Qubit],
) -> Result<ComplexMatrix> {
    if m.dim() != layout.dim() {
        return Err(Error::Dimension {
            expected: layout.dim(),
            found: m.dim(),
        });
    }
    let pos = layout.positions_of(subsystem)?;
    if pos.len() == layout.len() {
        return Err(Error::InvalidSubsystem(
            "partial transpose needs a proper subset",
        ));
    }
    let mask = pos.iter().fold(0usize, |m, &p| m | (1 << layout.shift(p)));
    Ok(transpose_bits(m, mask))
}

/// Swaps the bits selected by `mask` between row and column index.
pub(crate) fn transpose_bits(m: &ComplexMatrix, mask: usize) -> ComplexMatrix {
    let n = m.dim();
    let mut out = ComplexMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            let ii = (i & !mask) | (j & mask);
            let jj = (j & !mask) | (i & mask);
            out[(ii, jj)] = m[(i, j)];
        }
    }
    out
}

/// Real spectrum of a Hermitian matrix, sorted descending.
pub fn hermitian_eigenvalues(h: &ComplexMatrix) -> Result<Vec<f64>> {
    Ok(eigen::jacobi_eigh(h, false)?.values)
}

/// Trace norm `Tr sqrt(M^dagger M)`. Hermitian input uses the absolute
/// eigenvalue sum; otherwise the singular values come from the spectrum of
/// the Hermitian dilation [[0, M], [M^dagger, 0]].
pub fn trace_norm(m: &ComplexMatrix) -> Result<f64> {
    if !m.is_finite() {
        return Err(Error::NonFinite);
    }
    if m.hermiticity_deviation() <= HERMITIAN_TOL {
        return Ok(hermitian_eigenvalues(m)?.iter().map(|e| e.abs()).sum());
    }
    Ok(singular_values(m)?.iter().sum())
}

/// Singular values (descending) via the Hermitian dilation. Accuracy is
/// absolute in the matrix scale; nothing is squared.
pub fn singular_values(m: &ComplexMatrix) -> Result<Vec<f64>> {
    let n = m.dim();
    let mut d = ComplexMatrix::zeros(2 * n);
    for i in 0..n {
        for j in 0..n {
            d[(i, n + j)] = m[(i, j)];
            d[(n + j, i)] = m[(i, j)].conj();
        }
    }
    let ev = hermitian_eigenvalues(&d)?;
    Ok(ev[..n].iter().map(|&s| s.max(0.0)).collect())
}

/// Principal square root of a positive semidefinite matrix. Eigenvalues at
/// the rounding floor of the solver are treated as exact zeros.
pub fn psd_sqrt(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    let e = eigen::jacobi_eigh(m, true)?;
    let min = *e.values.last().expect("nonempty spectrum");
    if min < -PSD_TOL {
        return Err(Error::NotPositive(min));
    }
    let floor = 64.0 * f64::EPSILON * e.values[0].abs().max(1.0);
    let roots: Vec<f64> = e
        .values
        .iter()
        .map(|&x| if x <= floor { 0.0 } else { x.sqrt() })
        .collect();
    let v = e.vectors.expect("vectors requested");
    let n = m.dim();
    let mut out = ComplexMatrix::zeros(n);
    for i in 0..n {
        for j in i..n {
            let s: C64 = (0..n)
                .filter(|&k| roots[k] != 0.0)
                .map(|k| v[(i, k)] * v[(j, k)].conj() * roots[k])
                .sum();
            out[(i, j)] = s;
            out[(j, i)] = s.conj();
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn q(l: &[Qubit]) -> SystemLayout {
        SystemLayout::new(l).unwrap()
    }

    fn bell() -> PureState {
        PureState::from_real(
            q(&[Qubit::C1, Qubit::C2]),
            &[FRAC_1_SQRT_2, 0.0, 0.0, FRAC_1_SQRT_2],
        )
        .unwrap()
    }

    #[test]
    fn tensor_of_basis_states() {
        let zero = PureState::basis(&[Qubit::C1], &[0]).unwrap();
        let one = PureState::basis(&[Qubit::C2], &[1]).unwrap();
        let zz = tensor_product(&zero, &PureState::basis(&[Qubit::C2], &[0]).unwrap()).unwrap();
        assert_eq!(zz.amplitudes()[0], C64::new(1.0, 0.0));
        let s = tensor_product(&zero, &one).unwrap();
        let re: Vec<f64> = s.amplitudes().iter().map(|z| z.re).collect();
        assert_eq!(re, vec![0.0, 1.0, 0.0, 0.0]);
        assert_eq!(s.layout().qubits(), &[Qubit::C1, Qubit::C2]);
    }

    #[test]
    fn tensor_rejects_shared_labels() {
        let zero = PureState::basis(&[Qubit::C1], &[0]).unwrap();
        assert_eq!(
            tensor_product(&zero, &zero),
            Err(Error::DuplicateLabel(Qubit::C1))
        );
    }

    #[test]
    fn trace_out_product_state() {
        let s = PureState::basis(&[Qubit::C1, Qubit::C2], &[0, 0]).unwrap();
        let r = partial_trace(&s.density(), &[Qubit::C1]).unwrap();
        let expect = ComplexMatrix::from_diagonal(&[1.0, 0.0]);
        assert_eq!(r.matrix(), &expect);
    }

    #[test]
    fn partial_trace_rejects_bad_keep() {
        let s = bell().density();
        assert!(partial_trace(&s, &[]).is_err());
        assert!(partial_trace(&s, &[Qubit::Z]).is_err());
    }

    #[test]
    fn pure_reduce_matches_density_trace() {
        let s = bell();
        let a = s.reduce(&[Qubit::C2]).unwrap();
        let b = partial_trace(&s.density(), &[Qubit::C2]).unwrap();
        assert!(a.max_abs_diff(&b) < 1e-15);
    }

    #[test]
    fn bell_partial_transpose() {
        let pt = partial_transpose(&bell().density(), &[Qubit::C1]).unwrap();
        let ev = hermitian_eigenvalues(&pt).unwrap();
        assert!((ev[3] + 0.5).abs() < 1e-14);
        assert!((trace_norm(&pt).unwrap() - 2.0).abs() < 1e-14);
        assert!(partial_transpose(&bell().density(), &[Qubit::C1, Qubit::C2]).is_err());
    }

    #[test]
    fn product_diagonal_is_transpose_invariant() {
        let s = PureState::basis(&[Qubit::C1, Qubit::C2], &[0, 0])
            .unwrap()
            .density();
        let pt = partial_transpose(&s, &[Qubit::C1]).unwrap();
        assert_eq!(&pt, s.matrix());
    }

    #[test]
    fn simple_spectra() {
        assert_eq!(
            hermitian_eigenvalues(&ComplexMatrix::identity(2)).unwrap(),
            vec![1.0, 1.0]
        );
        let d =
            hermitian_eigenvalues(&ComplexMatrix::from_diagonal(&[1.0 / 3.0, 2.0 / 3.0])).unwrap();
        assert_eq!(d, vec![2.0 / 3.0, 1.0 / 3.0]);
        assert_eq!(
            trace_norm(&ComplexMatrix::from_diagonal(&[1.0, -1.0])).unwrap(),
            2.0
        );
    }

    #[test]
    fn non_hermitian_trace_norm() {
        // [[0, 2], [0, 0]] has singular values 2, 0
        let m = ComplexMatrix::from_real_rows(&[&[0.0, 2.0], &[0.0, 0.0]]).unwrap();
        assert!((trace_norm(&m).unwrap() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn sqrt_of_diagonal() {
        let s = psd_sqrt(&ComplexMatrix::from_diagonal(&[4.0, 9.0])).unwrap();
        assert!(s.max_abs_diff(&ComplexMatrix::from_diagonal(&[2.0, 3.0])) < 1e-14);
        let i = psd_sqrt(&ComplexMatrix::identity(4)).unwrap();
        assert!(i.max_abs_diff(&ComplexMatrix::identity(4)) < 1e-15);
        assert!(matches!(
            psd_sqrt(&ComplexMatrix::from_diagonal(&[1.0, -0.5])),
            Err(Error::NotPositive(_))
        ));
    }

    #[test]
    fn density_validation() {
        let l = q(&[Qubit::C1]);
        assert!(DensityMatrix::new(l.clone(), ComplexMatrix::from_diagonal(&[0.5, 0.5])).is_ok());
        assert!(matches!(
            DensityMatrix::new(l.clone(), ComplexMatrix::from_diagonal(&[1.5, -0.5])),
            Err(Error::NotPositive(_))
        ));
        assert!(matches!(
            DensityMatrix::new(l, ComplexMatrix::from_diagonal(&[0.5, 0.4])),
            Err(Error::NotUnitTrace(_))
        ));
    }

    #[test]
    fn permutation_roundtrip() {
        let s = PureState::basis(&[Qubit::C1, Qubit::Z, Qubit::R1], &[1, 0, 0]).unwrap();
        let t = s.permuted(&q(&[Qubit::R1, Qubit::C1, Qubit::Z])).unwrap();
        // |1>_c1 sits at bit 1 of the new index
        assert_eq!(t.amplitudes()[0b010], C64::new(1.0, 0.0));
        assert_eq!(t.permuted(s.layout()).unwrap(), s);
    }
}
