mod common;

use num_complex::Complex64 as C64;
use proptest::prelude::*;

use tricav_core::entanglement::{
    closed_form_pt_eigenvalues, negativity, pure_bipartite_concurrence_sq,
};
use tricav_core::qlinalg::{
    partial_trace, partial_transpose, partial_transpose_matrix, trace_norm,
};
use tricav_core::states::{
    global_output_state, global_output_state_with, mixed_ghz_w, purified_initial, reduce,
    GLOBAL_LAYOUT, INITIAL_LAYOUT,
};
use tricav_core::sweep::linspace;
use tricav_core::{DensityMatrix, PureState, Qubit, SystemLayout};

use common::CAVITIES;

fn pure_from(raw: &[f64]) -> Option<PureState> {
    let amps: Vec<C64> = raw.chunks(2).map(|c| C64::new(c[0], c[1])).collect();
    let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    if norm < 1e-3 {
        return None;
    }
    let amps = amps.into_iter().map(|a| a / norm).collect();
    Some(PureState::new(SystemLayout::new(&CAVITIES).unwrap(), amps).unwrap())
}

fn mixed_from(a: &[f64], b: &[f64], w: f64) -> Option<DensityMatrix> {
    let (x, y) = (pure_from(a)?, pure_from(b)?);
    Some(DensityMatrix::mixture(&[(w, &x), (1.0 - w, &y)]).unwrap())
}

fn raw() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1.0f64..1.0, 16)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn partial_trace_keeps_trace_and_hermiticity(a in raw(), b in raw(), w in 0.0f64..1.0) {
        let Some(rho) = mixed_from(&a, &b, w) else { return Ok(()) };
        for keep in [&[Qubit::C1][..], &[Qubit::C2, Qubit::C3][..], &[Qubit::C3, Qubit::C1][..]] {
            let red = partial_trace(&rho, keep).unwrap();
            prop_assert!((red.matrix().trace().re - 1.0).abs() < 1e-12);
            prop_assert!(red.matrix().hermiticity_deviation() < 1e-14);
        }
    }

    #[test]
    fn partial_transpose_is_an_involution(a in raw(), b in raw(), w in 0.0f64..1.0) {
        let Some(rho) = mixed_from(&a, &b, w) else { return Ok(()) };
        let once = partial_transpose(&rho, &[Qubit::C2]).unwrap();
        let twice = partial_transpose_matrix(&once, rho.layout(), &[Qubit::C2]).unwrap();
        prop_assert_eq!(twice.max_abs_diff(rho.matrix()), 0.0);
        prop_assert!((once.trace().re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn density_has_unit_trace_norm(a in raw(), b in raw(), w in 0.0f64..1.0) {
        let Some(rho) = mixed_from(&a, &b, w) else { return Ok(()) };
        prop_assert!((trace_norm(rho.matrix()).unwrap() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn pure_concurrence_is_symmetric_across_the_cut(a in raw()) {
        let Some(psi) = pure_from(&a) else { return Ok(()) };
        let one = pure_bipartite_concurrence_sq(&psi, &[Qubit::C1]).unwrap();
        let two = pure_bipartite_concurrence_sq(&psi, &[Qubit::C2, Qubit::C3]).unwrap();
        prop_assert!((one - two).abs() < 1e-12);
    }

    #[test]
    fn negativity_of_pure_cut_is_symmetric(a in raw()) {
        let Some(psi) = pure_from(&a) else { return Ok(()) };
        let rho = psi.density();
        let n1 = negativity(&rho, &[Qubit::C1]).unwrap();
        let n2 = negativity(&rho, &[Qubit::C2, Qubit::C3]).unwrap();
        prop_assert!((n1 - n2).abs() < 1e-10);
    }
}

#[test]
fn reduced_states_are_valid_densities() {
    let (herm, tr, min_eig) = common::reduced_state_invariants(7, 40);
    assert!(herm < 1e-14, "{herm}");
    assert!(tr < 1e-12, "{tr}");
    assert!(min_eig > -1e-12, "{min_eig}");
}

#[test]
fn involution_on_seeded_states() {
    assert_eq!(common::partial_transpose_involution_drift(11, 20), 0.0);
}

#[test]
fn negativity_survives_local_unitaries() {
    let d = common::local_unitary_negativity_drift(2024, 20);
    assert!(d < 1e-10, "{d}");
}

#[test]
fn wootters_agrees_with_pure_formula() {
    let d = common::wootters_pure_drift(99, 50);
    assert!(d < 1e-10, "{d}");
}

#[test]
fn global_state_stays_normalized() {
    for p in linspace(0.0, 1.0, 50) {
        for kt in linspace(0.0, 5.0, 50) {
            let psi = global_output_state(p, kt).unwrap();
            assert!((psi.norm() - 1.0).abs() < 1e-12, "p={p} kt={kt}");
        }
    }
}

#[test]
fn purification_reproduces_mixture() {
    for p in linspace(0.0, 1.0, 11) {
        let rho = reduce(&purified_initial(p).unwrap(), &CAVITIES).unwrap();
        let target = mixed_ghz_w(p).unwrap();
        assert!(rho.max_abs_diff(&target) < 1e-14, "p={p}");
    }
}

#[test]
fn zero_time_output_is_the_initial_state() {
    for p in [0.0, 0.3, 0.7, 1.0] {
        let out = global_output_state(p, 0.0).unwrap();
        let init = purified_initial(p)
            .unwrap()
            .permuted(&SystemLayout::new(&GLOBAL_LAYOUT).unwrap())
            .unwrap();
        assert_eq!(init.layout().qubits(), &GLOBAL_LAYOUT);
        let dev = out
            .amplitudes()
            .iter()
            .zip(init.amplitudes())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        assert!(dev < 1e-15, "p={p}");
        let cav = reduce(&out, &CAVITIES).unwrap();
        assert!(cav.max_abs_diff(&mixed_ghz_w(p).unwrap()) < 1e-14);
    }
    assert_eq!(INITIAL_LAYOUT.len(), 7);
}

#[test]
fn exchanging_amplitudes_swaps_cavities_and_reservoirs() {
    for p in [0.2, 0.5, 0.9] {
        for kt in [0.3f64, 1.0, 2.0] {
            let xi = (-0.5 * kt).exp();
            let chi = (1.0 - xi * xi).sqrt();
            let a = global_output_state_with(p, xi, chi).unwrap();
            let b = global_output_state_with(p, chi, xi).unwrap();
            let res = reduce(&a, &Qubit::RESERVOIRS).unwrap();
            let cav = reduce(&b, &CAVITIES).unwrap();
            assert!(res.matrix().max_abs_diff(cav.matrix()) < 1e-14);
        }
    }
}

#[test]
fn six_closed_form_eigenvalues_never_go_negative() {
    for p in linspace(0.0, 1.0, 30) {
        for kt in linspace(0.0, 6.0, 30) {
            let s = closed_form_pt_eigenvalues(p, kt).unwrap();
            for l in s.always_nonnegative() {
                assert!(l >= -1e-12, "p={p} kt={kt} l={l}");
            }
        }
    }
}
