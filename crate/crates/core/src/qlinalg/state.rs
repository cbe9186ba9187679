use num_complex::Complex64 as C64;

use super::{ComplexMatrix, Qubit, SystemLayout};
use crate::error::{Error, Result};

pub const NORM_TOL: f64 = 1e-12;
pub const TRACE_TOL: f64 = 1e-10;

/// Unit-norm amplitude vector over a [`SystemLayout`].
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    layout: SystemLayout,
    amplitudes: Vec<C64>,
}

impl PureState {
    pub fn new(layout: SystemLayout, amplitudes: Vec<C64>) -> Result<Self> {
        if amplitudes.len() != layout.dim() {
            return Err(Error::Dimension {
                expected: layout.dim(),
                found: amplitudes.len(),
            });
        }
        if amplitudes
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::NonFinite);
        }
        let norm = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized(norm));
        }
        Ok(Self { layout, amplitudes })
    }

    pub fn from_real(layout: SystemLayout, amplitudes: &[f64]) -> Result<Self> {
        Self::new(
            layout,
            amplitudes.iter().map(|&x| C64::new(x, 0.0)).collect(),
        )
    }

    /// Computational basis state; `bits[i]` is the value of `qubits[i]`.
    pub fn basis(qubits: &[Qubit], bits: &[u8]) -> Result<Self> {
        let layout = SystemLayout::new(qubits)?;
        if bits.len() != qubits.len() || bits.iter().any(|&b| b > 1) {
            return Err(Error::InvalidSubsystem(
                "basis bits must be 0/1, one per qubit",
            ));
        }
        let idx = bits.iter().fold(0usize, |acc, &b| (acc << 1) | b as usize);
        let mut amps = vec![C64::new(0.0, 0.0); layout.dim()];
        amps[idx] = C64::new(1.0, 0.0);
        Ok(Self {
            layout,
            amplitudes: amps,
        })
    }

    /// Normalized sum of weighted states sharing one layout.
    pub fn superpose(terms: &[(f64, &PureState)]) -> Result<Self> {
        let (_, first) = terms
            .first()
            .ok_or(Error::InvalidSubsystem("empty superposition"))?;
        let layout = first.layout.clone();
        let mut amps = vec![C64::new(0.0, 0.0); layout.dim()];
        for (w, s) in terms {
            if s.layout != layout {
                return Err(Error::InvalidSubsystem(
                    "superposed states use different layouts",
                ));
            }
            for (a, b) in amps.iter_mut().zip(&s.amplitudes) {
                *a += b * *w;
            }
        }
        Self::new(layout, amps)
    }

    pub fn layout(&self) -> &SystemLayout {
        &self.layout
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn tensor(&self, other: &PureState) -> Result<PureState> {
        let layout = self.layout.concat(&other.layout)?;
        let mut amps = Vec::with_capacity(layout.dim());
        for a in &self.amplitudes {
            for b in &other.amplitudes {
                amps.push(a * b);
            }
        }
        Ok(Self {
            layout,
            amplitudes: amps,
        })
    }

    /// Same state expressed in a different ordering of the same qubits.
    pub fn permuted(&self, target: &SystemLayout) -> Result<PureState> {
        if target.len() != self.layout.len() {
            return Err(Error::InvalidSubsystem("permutation must keep every qubit"));
        }
        let src_pos = self.layout.positions_of(target.qubits())?;
        let n = target.len();
        let mut amps = vec![C64::new(0.0, 0.0); target.dim()];
        for (dst_idx, amp) in amps.iter_mut().enumerate() {
            let mut src_idx = 0usize;
            for (k, &sp) in src_pos.iter().enumerate() {
                let bit = (dst_idx >> (n - 1 - k)) & 1;
                src_idx |= bit << self.layout.shift(sp);
            }
            *amp = self.amplitudes[src_idx];
        }
        Ok(Self {
            layout: target.clone(),
            amplitudes: amps,
        })
    }

    /// Reduced density matrix on `keep` (result ordered as `keep`).
    pub fn reduce(&self, keep: &[Qubit]) -> Result<DensityMatrix> {
        let pos = self.layout.positions_of(keep)?;
        let layout = SystemLayout::new(keep)?;
        let matrix = reduce_amplitudes(&self.amplitudes, self.layout.len(), &pos);
        Ok(DensityMatrix { layout, matrix })
    }

    pub fn density(&self) -> DensityMatrix {
        DensityMatrix {
            layout: self.layout.clone(),
            matrix: ComplexMatrix::outer(&self.amplitudes),
        }
    }
}

/// `Tr_rest |psi><psi|` for an `n`-qubit amplitude vector, keeping the
/// qubits at `keep` (big-endian positions) in that order.
pub(crate) fn reduce_amplitudes(amps: &[C64], n: usize, keep: &[usize]) -> ComplexMatrix {
    let k = keep.len();
    let rest: Vec<usize> = (0..n).filter(|p| !keep.contains(p)).collect();
    let dk = 1usize << k;
    let dr = 1usize << rest.len();
    let shift = |p: usize| n - 1 - p;
    // amps reshaped as a dk x dr matrix
    let mut m = vec![C64::new(0.0, 0.0); dk * dr];
    for (idx, &a) in amps.iter().enumerate() {
        let row = keep
            .iter()
            .fold(0usize, |acc, &p| (acc << 1) | ((idx >> shift(p)) & 1));
        let col = rest
            .iter()
            .fold(0usize, |acc, &p| (acc << 1) | ((idx >> shift(p)) & 1));
        m[row * dr + col] = a;
    }
    let mut out = ComplexMatrix::zeros(dk);
    for i in 0..dk {
        for j in i..dk {
            let s: C64 = (0..dr).map(|c| m[i * dr + c] * m[j * dr + c].conj()).sum();
            out[(i, j)] = s;
            out[(j, i)] = s.conj();
        }
    }
    out
}

/// Hermitian, positive semidefinite, unit-trace matrix over a layout.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    layout: SystemLayout,
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    /// Validates Hermiticity (1e-12), unit trace (1e-10) and positivity
    /// (min eigenvalue >= -1e-10).
    pub fn new(layout: SystemLayout, matrix: ComplexMatrix) -> Result<Self> {
        if matrix.dim() != layout.dim() {
            return Err(Error::Dimension {
                expected: layout.dim(),
                found: matrix.dim(),
            });
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > TRACE_TOL || tr.im.abs() > TRACE_TOL {
            return Err(Error::NotUnitTrace(tr.re));
        }
        let ev = super::hermitian_eigenvalues(&matrix)?;
        let min = *ev.last().expect("nonempty spectrum");
        if min < -super::eigen::PSD_TOL {
            return Err(Error::NotPositive(min));
        }
        Ok(Self { layout, matrix })
    }

    /// Convex mixture `sum w_i |psi_i><psi_i|`; weights must sum to one.
    pub fn mixture(terms: &[(f64, &PureState)]) -> Result<Self> {
        let (_, first) = terms
            .first()
            .ok_or(Error::InvalidSubsystem("empty mixture"))?;
        let layout = first.layout().clone();
        let mut m = ComplexMatrix::zeros(layout.dim());
        for (w, s) in terms {
            if *w < 0.0 {
                return Err(Error::Domain {
                    name: "weight",
                    value: *w,
                    domain: "[0, 1]",
                });
            }
            if s.layout() != &layout {
                return Err(Error::InvalidSubsystem(
                    "mixed states use different layouts",
                ));
            }
            m = m.add(&ComplexMatrix::outer(s.amplitudes()).scale(C64::new(*w, 0.0)))?;
        }
        let tr = m.trace().re;
        if (tr - 1.0).abs() > TRACE_TOL {
            return Err(Error::NotUnitTrace(tr));
        }
        Ok(Self { layout, matrix: m })
    }

    pub fn layout(&self) -> &SystemLayout {
        &self.layout
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn tensor(&self, other: &DensityMatrix) -> Result<DensityMatrix> {
        Ok(Self {
            layout: self.layout.concat(&other.layout)?,
            matrix: self.matrix.kron(&other.matrix),
        })
    }

    pub fn max_abs_diff(&self, other: &DensityMatrix) -> f64 {
        if self.layout != other.layout {
            return f64::INFINITY;
        }
        self.matrix.max_abs_diff(&other.matrix)
    }

    pub(crate) fn from_parts_unchecked(layout: SystemLayout, matrix: ComplexMatrix) -> Self {
        Self { layout, matrix }
    }
}
