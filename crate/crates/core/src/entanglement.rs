//! Negativity, concurrences, closed-form partial-transpose spectra and the
//! monogamy chain of the cavity-reservoir register.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{check_kt, check_unit, Error, Result};
use crate::qlinalg::{
    hermitian_eigenvalues, partial_transpose, psd_sqrt, reduce_amplitudes, singular_values,
    trace_norm, ComplexMatrix, DensityMatrix, PureState, Qubit, SystemLayout,
};
use crate::states::{gghz_output_state, global_output_state, purified_initial};

/// Negativities below this count as zero entanglement.
pub const ZERO_ENTANGLEMENT: f64 = 1e-10;
/// Rounding band below zero that is reported as zero negativity.
pub const NEGATIVITY_CLAMP: f64 = 1e-12;

/// `||rho^{T_A}||_1 - 1` for the bipartition `part_a | rest`.
pub fn negativity(rho: &DensityMatrix, part_a: &[Qubit]) -> Result<f64> {
    let pt = partial_transpose(rho, part_a)?;
    Ok(clamp_negativity(trace_norm(&pt)? - 1.0))
}

fn clamp_negativity(n: f64) -> f64 {
    if n > -NEGATIVITY_CLAMP {
        n.max(0.0)
    } else {
        // only reachable for inputs that are not unit-trace
        n
    }
}

/// Numeric negativity `c1 | c2 c3` of the cavities of the mixed family.
pub fn cavity_negativity(p: f64, kt: f64) -> Result<f64> {
    let rho = global_output_state(p, kt)?.reduce(&Qubit::CAVITIES)?;
    negativity(&rho, &[Qubit::C1])
}

/// Numeric negativity `r1 | r2 r3` of the reservoirs of the mixed family.
pub fn reservoir_negativity(p: f64, kt: f64) -> Result<f64> {
    let rho = global_output_state(p, kt)?.reduce(&Qubit::RESERVOIRS)?;
    negativity(&rho, &[Qubit::R1])
}

/// Numeric negativity `c1 | c2 c3` of the generalized-GHZ cavities.
pub fn gghz_cavity_negativity(a: f64, kt: f64) -> Result<f64> {
    let rho = gghz_output_state(a, kt)?.reduce(&Qubit::CAVITIES)?;
    negativity(&rho, &[Qubit::C1])
}

/// Numeric spectrum of `rho_{c1c2c3}(t)^{T_{c1}}`, descending.
pub fn numeric_pt_eigenvalues(p: f64, kt: f64) -> Result<Vec<f64>> {
    let rho = global_output_state(p, kt)?.reduce(&Qubit::CAVITIES)?;
    hermitian_eigenvalues(&partial_transpose(&rho, &[Qubit::C1])?)
}

/// The eight partial-transpose eigenvalues of the cavity state, in the
/// closed-form ordering (`lambdas[4]` and `lambdas[6]` are the two that can
/// turn negative).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PtSpectrum {
    pub lambdas: [f64; 8],
    pub p: f64,
    pub kt: f64,
}

impl PtSpectrum {
    pub fn lambda5(&self) -> f64 {
        self.lambdas[4]
    }

    pub fn lambda7(&self) -> f64 {
        self.lambdas[6]
    }

    /// Eigenvalues that are nonnegative for every `(p, kt)`.
    pub fn always_nonnegative(&self) -> [f64; 6] {
        let l = &self.lambdas;
        [l[0], l[1], l[2], l[3], l[5], l[7]]
    }

    pub fn sorted_descending(&self) -> [f64; 8] {
        let mut s = self.lambdas;
        s.sort_by(|a, b| b.total_cmp(a));
        s
    }

    pub fn negativity(&self) -> f64 {
        negativity_from_spectrum(&self.lambdas)
    }
}

/// Closed-form partial-transpose spectrum of the cavity state.
///
/// The exponentials are written in terms of `u = exp(-kt)` after dividing
/// the square-root arguments by `exp(4 kt)`; this is the same expression
/// and stays finite for any `kt`.
pub fn closed_form_pt_eigenvalues(p: f64, kt: f64) -> Result<PtSpectrum> {
    let p = check_unit("p", p)?;
    let kt = check_kt(kt)?;
    let u = (-kt).exp();
    let q = -(-kt).exp_m1(); // 1 - u
    let u3 = u * u * u;

    let a1 = u * (2.0 - 2.0 * p + 3.0 * q * p);
    // A2 e^{-4kt}
    let a2 = 18.0 * u * p * (p - 2.0) + 36.0 * p * p * u.powi(4) - 108.0 * u3 * p * p
        + (p + 2.0).powi(2)
        + 3.0 * u * u * p * (8.0 + 31.0 * p);
    let b1 = 3.0 * (p + q.powi(3) * p + q * (2.0 - 2.0 * p + u * u * p));
    // B2 e^{-4kt}
    let b2 = 36.0 * (1.0 + p * p * u.powi(4) - u * (p + 2.0) - u3 * p * (p + 2.0))
        + u * u * (68.0 + 44.0 * p + 41.0 * p * p);

    let sa = u * a2.max(0.0).sqrt(); // e^{-3kt} sqrt(A2)
    let sb = b2.max(0.0).sqrt(); // e^{-2kt} sqrt(B2)
    let lambdas = [
        0.5 * u3 * p,
        0.5 * u * u * q * p, // e^{-3kt}(e^{kt}-1) p / 2
        0.5 * u * q * q * p, // e^{-3kt}(e^{kt}-1)^2 p / 2
        u / 6.0 * (4.0 - 4.0 * p + 3.0 * q * q * p),
        (a1 - sa) / 12.0,
        (a1 + sa) / 12.0,
        (b1 - sb) / 12.0,
        (b1 + sb) / 12.0,
    ];
    Ok(PtSpectrum { lambdas, p, kt })
}

/// `sum |lambda_i| - 1`, with rounding-level negatives reported as zero.
pub fn negativity_from_spectrum(lambdas: &[f64]) -> f64 {
    clamp_negativity(lambdas.iter().map(|l| l.abs()).sum::<f64>() - 1.0)
}

/// Squared concurrence of `part_a | rest` for a global pure state:
/// `4 det rho_A` for one qubit, `2 (1 - Tr rho_A^2)` for larger parts.
pub fn pure_bipartite_concurrence_sq(state: &PureState, part_a: &[Qubit]) -> Result<f64> {
    if part_a.len() >= state.layout().len() {
        return Err(Error::InvalidSubsystem(
            "bipartition needs a nonempty complement",
        ));
    }
    let rho = state.reduce(part_a)?;
    let m = rho.matrix();
    let c2 = if part_a.len() == 1 {
        4.0 * (m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)]).re
    } else {
        let purity: f64 = m.as_slice().iter().map(|z| z.norm_sqr()).sum();
        2.0 * (1.0 - purity)
    };
    Ok(c2.max(0.0))
}

/// `sigma_y ⊗ sigma_y`
fn spin_flip() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[
        &[0.0, 0.0, 0.0, -1.0],
        &[0.0, 0.0, 1.0, 0.0],
        &[0.0, 1.0, 0.0, 0.0],
        &[-1.0, 0.0, 0.0, 0.0],
    ])
    .expect("static matrix")
}

/// Two-qubit concurrence `max(0, s1 - s2 - s3 - s4)`.
///
/// The `s_i` are the square roots of the eigenvalues of
/// `rho (σy⊗σy) rho* (σy⊗σy)`. They equal the square roots of the spectrum
/// of the Hermitian `sqrt(rho) rho~ sqrt(rho)`, which in turn are the
/// singular values of `sqrt(rho) (σy⊗σy) sqrt(rho)*`; the latter are taken
/// directly so no small eigenvalue passes through a square root.
pub fn wootters_concurrence(rho: &ComplexMatrix) -> Result<f64> {
    if rho.dim() != 4 {
        return Err(Error::Dimension {
            expected: 4,
            found: rho.dim(),
        });
    }
    let root = psd_sqrt(rho)?;
    let t = root.matmul(&spin_flip())?.matmul(&root.conj())?;
    let s = singular_values(&t)?;
    Ok((s[0] - s[1] - s[2] - s[3]).max(0.0))
}

/// Closed-form negativity of the generalized-GHZ cavities,
/// `max{ b e^{-3kt} [sqrt(F) - b e^{kt}(e^{kt} - 1)], 0 }` with
/// `F = 4 a^2 e^{3kt} + b^2 (2 - 3 e^{kt} + e^{2kt})^2`.
///
/// Evaluated as `b u [sqrt(4 a^2 u + b^2 (1-u)^2 (1-2u)^2) - b (1-u)]`,
/// `u = e^{-kt}`.
pub fn gghz_negativity_closed(a: f64, kt: f64) -> Result<f64> {
    let a = check_unit("a", a)?;
    let kt = check_kt(kt)?;
    let b = (1.0 - a * a).sqrt();
    let u = (-kt).exp();
    let q = -(-kt).exp_m1();
    let f = 4.0 * a * a * u + (b * q * (1.0 - 2.0 * u)).powi(2);
    Ok((b * u * (f.sqrt() - b * q)).max(0.0))
}

/// Pure state of (`first`, `second`, X) where X is the remainder of the
/// register compressed onto the at most two-dimensional support of its
/// reduced state. Amplitudes are big-endian in that order.
pub fn logical_qubit_view(state: &PureState, first: Qubit, second: Qubit) -> Result<[C64; 8]> {
    let mut order = vec![first, second];
    order.extend(state.layout().complement(&[first, second]));
    let s = state.permuted(&SystemLayout::new(&order)?)?;
    let rest = s.layout().dim() / 4;
    let rows: Vec<&[C64]> = s.amplitudes().chunks(rest).collect();

    // orthonormal basis of span{rows}
    let mut basis: Vec<Vec<C64>> = Vec::new();
    for row in &rows {
        let mut v = row.to_vec();
        for e in &basis {
            let ov: C64 = e.iter().zip(&v).map(|(x, y)| x.conj() * y).sum();
            for (vi, ei) in v.iter_mut().zip(e) {
                *vi -= ov * ei;
            }
        }
        let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if n > 1e-12 {
            v.iter_mut().for_each(|z| *z /= n);
            basis.push(v);
        }
    }
    if basis.len() > 2 {
        return Err(Error::NotLogicalQubit(basis.len()));
    }
    let mut out = [C64::new(0.0, 0.0); 8];
    for (k, row) in rows.iter().enumerate() {
        for (j, e) in basis.iter().enumerate() {
            out[2 * k + j] = e.iter().zip(row.iter()).map(|(x, y)| x.conj() * y).sum();
        }
    }
    Ok(out)
}

/// One link of the monogamy chain.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum LinkStatus {
    Holds,
    Violated,
    /// Involves a mixed-state concurrence that needs a minimization over
    /// decompositions; never counted as satisfied.
    NotEvaluated,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChainLink {
    pub name: &'static str,
    /// Left side minus right side (negated deviation for the equality).
    pub slack: Option<f64>,
    pub status: LinkStatus,
}

/// Squared concurrences and negativities along the monogamy chain at one
/// `(p, kt)`. `X` below is `c2 r2 c3 r3 z`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MonogamyChainRecord {
    pub p: f64,
    pub kt: f64,
    /// `C^2(c1 | c2 c3 z)` at time zero.
    pub c_init_sq: f64,
    /// `C^2(c1 r1 | X)` at `kt`.
    pub c_pair_sq: f64,
    /// `C^2(c1 | X)` at `kt`.
    pub c_c1_sq: f64,
    /// `C^2(r1 | X)` at `kt`.
    pub c_r1_sq: f64,
    /// `N^2(c1 | c2 c3)`.
    pub n_cav_sq: f64,
    /// `N^2(r1 | r2 r3)`.
    pub n_res_sq: f64,
}

impl MonogamyChainRecord {
    pub fn links(&self, tol: f64) -> [ChainLink; 4] {
        let judge = |slack: f64| {
            if slack >= -tol {
                LinkStatus::Holds
            } else {
                LinkStatus::Violated
            }
        };
        let eq = -(self.c_init_sq - self.c_pair_sq).abs();
        let split = self.c_pair_sq - (self.c_c1_sq + self.c_r1_sq);
        let tail = self.c_c1_sq + self.c_r1_sq - (self.n_cav_sq + self.n_res_sq);
        [
            ChainLink {
                name: "initial_equals_pair",
                slack: Some(eq),
                status: judge(eq),
            },
            ChainLink {
                name: "pair_bounds_split",
                slack: Some(split),
                status: judge(split),
            },
            ChainLink {
                name: "split_bounds_reduced_concurrences",
                slack: None,
                status: LinkStatus::NotEvaluated,
            },
            ChainLink {
                name: "split_bounds_negativities",
                slack: Some(tail),
                status: judge(tail),
            },
        ]
    }

    /// True when every evaluated link holds within `tol`.
    pub fn holds(&self, tol: f64) -> bool {
        self.links(tol)
            .iter()
            .all(|l| l.status != LinkStatus::Violated)
    }
}

pub fn monogamy_chain(p: f64, kt: f64) -> Result<MonogamyChainRecord> {
    let c_init_sq = pure_bipartite_concurrence_sq(&purified_initial(p)?, &[Qubit::C1])?;
    let g = global_output_state(p, kt)?;
    let c_pair_sq = pure_bipartite_concurrence_sq(&g, &[Qubit::C1, Qubit::R1])?;

    let view = logical_qubit_view(&g, Qubit::C1, Qubit::R1)?;
    let c1_x = reduce_amplitudes(&view, 3, &[0, 2]);
    let r1_x = reduce_amplitudes(&view, 3, &[1, 2]);
    let c_c1_sq = wootters_concurrence(&c1_x)?.powi(2);
    let c_r1_sq = wootters_concurrence(&r1_x)?.powi(2);

    let n_cav = negativity(&g.reduce(&Qubit::CAVITIES)?, &[Qubit::C1])?;
    let n_res = negativity(&g.reduce(&Qubit::RESERVOIRS)?, &[Qubit::R1])?;
    Ok(MonogamyChainRecord {
        p,
        kt,
        c_init_sq,
        c_pair_sq,
        c_c1_sq,
        c_r1_sq,
        n_cav_sq: n_cav * n_cav,
        n_res_sq: n_res * n_res,
    })
}
