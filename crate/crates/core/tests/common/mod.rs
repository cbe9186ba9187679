//! Seeded random inputs and the property checks used by more than one
//! test target.
#![allow(dead_code)]

use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tricav_core::entanglement::{negativity, wootters_concurrence};
use tricav_core::qlinalg::{hermitian_eigenvalues, partial_trace, partial_transpose_matrix};
use tricav_core::states::global_output_state;
use tricav_core::states::reduce;
use tricav_core::{ComplexMatrix, DensityMatrix, PureState, Qubit, SystemLayout};

pub const CAVITIES: [Qubit; 3] = Qubit::CAVITIES;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Pure state with normal-ish components (sum of uniforms), normalized.
pub fn random_pure(rng: &mut impl Rng, qubits: &[Qubit]) -> PureState {
    let layout = SystemLayout::new(qubits).unwrap();
    let mut amps: Vec<C64> = (0..layout.dim())
        .map(|_| C64::new(gaussish(rng), gaussish(rng)))
        .collect();
    let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    amps.iter_mut().for_each(|a| *a /= norm);
    PureState::new(layout, amps).unwrap()
}

fn gaussish(rng: &mut impl Rng) -> f64 {
    (0..4).map(|_| rng.gen_range(-1.0..1.0)).sum::<f64>()
}

pub fn random_density(rng: &mut impl Rng, qubits: &[Qubit], rank: usize) -> DensityMatrix {
    let states: Vec<PureState> = (0..rank).map(|_| random_pure(rng, qubits)).collect();
    let mut w: Vec<f64> = (0..rank).map(|_| rng.gen_range(0.05..1.0)).collect();
    let total: f64 = w.iter().sum();
    w.iter_mut().for_each(|x| *x /= total);
    let terms: Vec<(f64, &PureState)> = w.iter().copied().zip(states.iter()).collect();
    DensityMatrix::mixture(&terms).unwrap()
}

/// Haar-agnostic single-qubit unitary from Euler angles and a global phase.
pub fn random_qubit_unitary(rng: &mut impl Rng) -> ComplexMatrix {
    let tau = std::f64::consts::TAU;
    let (a, b, g) = (
        rng.gen_range(0.0..tau),
        rng.gen_range(0.0..tau),
        rng.gen_range(0.0..tau),
    );
    let th: f64 = rng.gen_range(0.0..std::f64::consts::FRAC_PI_2);
    let ph = C64::from_polar(1.0, a);
    let (c, s) = (th.cos(), th.sin());
    ComplexMatrix::from_row_major(vec![
        ph * C64::from_polar(c, b),
        ph * C64::from_polar(s, g),
        -ph * C64::from_polar(s, -g),
        ph * C64::from_polar(c, -b),
    ])
    .unwrap()
}

/// Largest |N(U rho U^dagger) - N(rho)| for the c1 | c2 c3 cut over `trials`
/// random local unitaries applied to evolved cavity states.
pub fn local_unitary_negativity_drift(seed: u64, trials: usize) -> f64 {
    let mut r = rng(seed);
    let mut worst = 0.0f64;
    for _ in 0..trials {
        let p: f64 = r.gen_range(0.0..1.0);
        let kt: f64 = r.gen_range(0.0..1.5);
        let rho = reduce(&global_output_state(p, kt).unwrap(), &CAVITIES).unwrap();
        let u = random_qubit_unitary(&mut r)
            .kron(&random_qubit_unitary(&mut r))
            .kron(&random_qubit_unitary(&mut r));
        let rotated = u
            .matmul(rho.matrix())
            .unwrap()
            .matmul(&u.adjoint())
            .unwrap();
        let rotated = DensityMatrix::new(rho.layout().clone(), rotated).unwrap();
        let before = negativity(&rho, &[Qubit::C1]).unwrap();
        let after = negativity(&rotated, &[Qubit::C1]).unwrap();
        worst = worst.max((before - after).abs());
    }
    worst
}

/// Largest |C_wootters - 2|ad - bc|| over random two-qubit pure states.
pub fn wootters_pure_drift(seed: u64, trials: usize) -> f64 {
    let mut r = rng(seed);
    let mut worst = 0.0f64;
    for _ in 0..trials {
        let psi = random_pure(&mut r, &[Qubit::C1, Qubit::C2]);
        let a = psi.amplitudes();
        let pure = 2.0 * (a[0] * a[3] - a[1] * a[2]).norm();
        let rho_a = partial_trace(&psi.density(), &[Qubit::C1]).unwrap();
        let m = rho_a.matrix();
        let det = (m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)]).re;
        let via_reduced = (4.0 * det).max(0.0).sqrt();
        let w = wootters_concurrence(psi.density().matrix()).unwrap();
        worst = worst.max((w - pure).abs()).max((via_reduced - pure).abs());
    }
    worst
}

/// Worst Hermiticity, trace and positivity figures of partial traces of
/// random three-qubit mixed states: `(herm_dev, trace_dev, min_eig)`.
pub fn reduced_state_invariants(seed: u64, trials: usize) -> (f64, f64, f64) {
    let mut r = rng(seed);
    let (mut herm, mut tr, mut min_eig) = (0.0f64, 0.0f64, f64::INFINITY);
    for _ in 0..trials {
        let rho = random_density(&mut r, &CAVITIES, 3);
        for keep in [&[Qubit::C1][..], &[Qubit::C3, Qubit::C1][..]] {
            let red = partial_trace(&rho, keep).unwrap();
            let m = red.matrix();
            herm = herm.max(m.hermiticity_deviation());
            tr = tr.max((m.trace().re - 1.0).abs()).max(m.trace().im.abs());
            let ev = hermitian_eigenvalues(m).unwrap();
            min_eig = min_eig.min(*ev.last().unwrap());
        }
    }
    (herm, tr, min_eig)
}

/// Largest entry of `(rho^{T_A})^{T_A} - rho` over random mixed states.
pub fn partial_transpose_involution_drift(seed: u64, trials: usize) -> f64 {
    let mut r = rng(seed);
    let mut worst = 0.0f64;
    for _ in 0..trials {
        let rho = random_density(&mut r, &CAVITIES, 2);
        for sub in [&[Qubit::C2][..], &[Qubit::C1, Qubit::C3][..]] {
            let once = partial_transpose_matrix(rho.matrix(), rho.layout(), sub).unwrap();
            let twice = partial_transpose_matrix(&once, rho.layout(), sub).unwrap();
            worst = worst.max(twice.max_abs_diff(rho.matrix()));
        }
    }
    worst
}
