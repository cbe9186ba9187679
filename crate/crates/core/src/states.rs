//! Constructors for the GHZ/W family, the purified initial register and the
//! exact time-evolved global states.
//!
//! Each cavity-reservoir pair evolves as `|10> -> xi |10> + chi |01>` with
//! `xi = exp(-kt/2)` and `chi = sqrt(1 - exp(-kt))`, while `|00>` is
//! stationary. Mixture weights are `p` and `1 - p`.

use serde::{Deserialize, Serialize};

use crate::error::{check_kt, check_unit, Result};
use crate::qlinalg::{DensityMatrix, PureState, Qubit, SystemLayout};

pub const GLOBAL_LAYOUT: [Qubit; 7] = [
    Qubit::C1,
    Qubit::R1,
    Qubit::C2,
    Qubit::R2,
    Qubit::C3,
    Qubit::R3,
    Qubit::Z,
];

pub const INITIAL_LAYOUT: [Qubit; 7] = [
    Qubit::C1,
    Qubit::C2,
    Qubit::C3,
    Qubit::Z,
    Qubit::R1,
    Qubit::R2,
    Qubit::R3,
];

pub const PAIR_LAYOUT: [Qubit; 6] = [
    Qubit::C1,
    Qubit::R1,
    Qubit::C2,
    Qubit::R2,
    Qubit::C3,
    Qubit::R3,
];

/// Which one-parameter family a point belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Family {
    /// `p |GHZ><GHZ| + (1-p) |W><W|`
    Mixed { p: f64 },
    /// `a |000> + b |111>`, `b = sqrt(1 - a^2)`
    GeneralizedGhz { a: f64, b: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvolutionPoint {
    pub family: Family,
    pub kt: f64,
    pub xi: f64,
    pub chi: f64,
}

impl EvolutionPoint {
    pub fn mixed(p: f64, kt: f64) -> Result<Self> {
        let p = check_unit("p", p)?;
        let (xi, chi) = amplitudes(kt)?;
        Ok(Self {
            family: Family::Mixed { p },
            kt,
            xi,
            chi,
        })
    }

    pub fn generalized_ghz(a: f64, kt: f64) -> Result<Self> {
        let a = check_unit("a", a)?;
        let (xi, chi) = amplitudes(kt)?;
        Ok(Self {
            family: Family::GeneralizedGhz {
                a,
                b: (1.0 - a * a).sqrt(),
            },
            kt,
            xi,
            chi,
        })
    }
}

/// `(xi, chi)` at dimensionless time `kt`.
pub fn amplitudes(kt: f64) -> Result<(f64, f64)> {
    let kt = check_kt(kt)?;
    // 1 - e^{-kt} without cancellation at small kt
    Ok(((-0.5 * kt).exp(), (-(-kt).exp_m1()).sqrt()))
}

fn three(bits: [u8; 3]) -> PureState {
    PureState::basis(&Qubit::CAVITIES, &bits).expect("static basis state")
}

pub fn ghz() -> PureState {
    PureState::superpose(&[
        (std::f64::consts::FRAC_1_SQRT_2, &three([0, 0, 0])),
        (std::f64::consts::FRAC_1_SQRT_2, &three([1, 1, 1])),
    ])
    .expect("GHZ is normalized")
}

pub fn w() -> PureState {
    let w = 1.0 / 3f64.sqrt();
    PureState::superpose(&[
        (w, &three([0, 0, 1])),
        (w, &three([0, 1, 0])),
        (w, &three([1, 0, 0])),
    ])
    .expect("W is normalized")
}

pub fn generalized_ghz(a: f64) -> Result<PureState> {
    let a = check_unit("a", a)?;
    let b = (1.0 - a * a).sqrt();
    PureState::superpose(&[(a, &three([0, 0, 0])), (b, &three([1, 1, 1]))])
}

pub fn mixed_ghz_w(p: f64) -> Result<DensityMatrix> {
    let p = check_unit("p", p)?;
    DensityMatrix::mixture(&[(p, &ghz()), (1.0 - p, &w())])
}

/// `sqrt(p)|GHZ>|0>_z + sqrt(1-p)|W>|1>_z`, reservoirs in vacuum; layout
/// [`INITIAL_LAYOUT`].
pub fn purified_initial(p: f64) -> Result<PureState> {
    let p = check_unit("p", p)?;
    let z0 = PureState::basis(&[Qubit::Z], &[0])?;
    let z1 = PureState::basis(&[Qubit::Z], &[1])?;
    let vac = PureState::basis(&Qubit::RESERVOIRS, &[0, 0, 0])?;
    let ghz_branch = ghz().tensor(&z0)?.tensor(&vac)?;
    let w_branch = w().tensor(&z1)?.tensor(&vac)?;
    PureState::superpose(&[(p.sqrt(), &ghz_branch), ((1.0 - p).sqrt(), &w_branch)])
}

/// Pair state `|0>_c|0>_r`.
fn pair_vacuum(c: Qubit, r: Qubit) -> PureState {
    PureState::basis(&[c, r], &[0, 0]).expect("static basis state")
}

/// Pair state `xi |10> + chi |01>` on (c, r).
fn pair_excited(c: Qubit, r: Qubit, xi: f64, chi: f64) -> PureState {
    let layout = SystemLayout::new(&[c, r]).expect("distinct labels");
    PureState::from_real(layout, &[0.0, chi, xi, 0.0]).expect("xi^2 + chi^2 = 1")
}

/// Product over the three pairs, pair i excited iff `excited[i]`.
fn pairs(excited: [bool; 3], xi: f64, chi: f64) -> Result<PureState> {
    let mut acc: Option<PureState> = None;
    for (i, &e) in excited.iter().enumerate() {
        let (c, r) = (Qubit::CAVITIES[i], Qubit::RESERVOIRS[i]);
        let s = if e {
            pair_excited(c, r, xi, chi)
        } else {
            pair_vacuum(c, r)
        };
        acc = Some(match acc {
            None => s,
            Some(a) => a.tensor(&s)?,
        });
    }
    Ok(acc.expect("three pairs"))
}

/// Global seven-qubit state at `kt`; layout [`GLOBAL_LAYOUT`].
pub fn global_output_state(p: f64, kt: f64) -> Result<PureState> {
    let (xi, chi) = amplitudes(kt)?;
    global_output_state_with(p, xi, chi)
}

/// Global state with explicit pair amplitudes. `xi^2 + chi^2` must be one;
/// swapping the two arguments exchanges the roles of cavity and reservoir.
pub fn global_output_state_with(p: f64, xi: f64, chi: f64) -> Result<PureState> {
    let p = check_unit("p", p)?;
    check_pair_amplitudes(xi, chi)?;
    let z0 = PureState::basis(&[Qubit::Z], &[0])?;
    let z1 = PureState::basis(&[Qubit::Z], &[1])?;
    let g = (p / 2.0).sqrt();
    let wt = ((1.0 - p) / 3.0).sqrt();
    let terms = [
        (g, pairs([false, false, false], xi, chi)?.tensor(&z0)?),
        (g, pairs([true, true, true], xi, chi)?.tensor(&z0)?),
        (wt, pairs([false, false, true], xi, chi)?.tensor(&z1)?),
        (wt, pairs([false, true, false], xi, chi)?.tensor(&z1)?),
        (wt, pairs([true, false, false], xi, chi)?.tensor(&z1)?),
    ];
    let refs: Vec<(f64, &PureState)> = terms.iter().map(|(w, s)| (*w, s)).collect();
    PureState::superpose(&refs)
}

/// `a|000000> + b|phi_t phi_t phi_t>`; layout [`PAIR_LAYOUT`].
pub fn gghz_output_state(a: f64, kt: f64) -> Result<PureState> {
    let (xi, chi) = amplitudes(kt)?;
    gghz_output_state_with(a, xi, chi)
}

pub fn gghz_output_state_with(a: f64, xi: f64, chi: f64) -> Result<PureState> {
    let a = check_unit("a", a)?;
    check_pair_amplitudes(xi, chi)?;
    let b = (1.0 - a * a).sqrt();
    PureState::superpose(&[
        (a, &pairs([false, false, false], xi, chi)?),
        (b, &pairs([true, true, true], xi, chi)?),
    ])
}

fn check_pair_amplitudes(xi: f64, chi: f64) -> Result<()> {
    check_unit("xi", xi)?;
    check_unit("chi", chi)?;
    let s = xi * xi + chi * chi;
    if (s - 1.0).abs() > 1e-14 {
        return Err(crate::error::Error::Domain {
            name: "xi^2 + chi^2",
            value: s,
            domain: "{1}",
        });
    }
    Ok(())
}

/// Partial trace of `|state><state|` onto `keep`.
pub fn reduce(state: &PureState, keep: &[Qubit]) -> Result<DensityMatrix> {
    state.reduce(keep)
}
