//! Sudden-death boundaries, region classification, ESD/ESB times and the
//! cavity/reservoir exchange relation.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::entanglement::{
    cavity_negativity, closed_form_pt_eigenvalues, gghz_negativity_closed, negativity,
    reservoir_negativity, ZERO_ENTANGLEMENT,
};
use crate::error::{check_positive_kt, check_unit, Error, Result};
use crate::qlinalg::Qubit;
use crate::roots::{
    bisect, bisect_predicate, expand_bracket, golden_section_min, BISECT_MAX_ITER, BISECT_TOL,
    GOLDEN_TOL,
};
use crate::states::{amplitudes, global_output_state_with, mixed_ghz_w};

/// Eigenvalues within this band of zero count as nonnegative.
pub const REGION_TOL: f64 = 1e-12;
/// Entrywise tolerance of the cavity/reservoir exchange identity.
pub const SWAP_TOL: f64 = 1e-12;
/// Upper end of every bracket search in `kt`.
pub const KT_SEARCH_LIMIT: f64 = 150.0;
/// Probes after a candidate ESD time at which the negativity must vanish.
pub const ESD_PROBES: [f64; 2] = [0.01, 1.0];

/// Sign pattern of (lambda5, lambda7).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RegionClass {
    /// both negative
    I,
    /// lambda5 negative only
    II,
    /// lambda7 negative only
    III,
    /// both nonnegative: cavities separable across c1 | c2 c3
    IV,
}

impl fmt::Display for RegionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RegionClass::I => "I",
            RegionClass::II => "II",
            RegionClass::III => "III",
            RegionClass::IV => "IV",
        };
        f.write_str(s)
    }
}

pub fn classify_region(p: f64, kt: f64) -> Result<RegionClass> {
    let s = closed_form_pt_eigenvalues(p, kt)?;
    let neg5 = s.lambda5() < -REGION_TOL;
    let neg7 = s.lambda7() < -REGION_TOL;
    Ok(match (neg5, neg7) {
        (true, true) => RegionClass::I,
        (true, false) => RegionClass::II,
        (false, true) => RegionClass::III,
        (false, false) => RegionClass::IV,
    })
}

/// `p` on the curve where lambda5 vanishes.
pub fn lambda5_boundary(kt: f64) -> Result<f64> {
    let kt = check_positive_kt(kt)?;
    // 2 e^{2kt}(e^{kt} - 1) / (3 - 9e^{kt} + 7e^{2kt} + 2e^{3kt}), divided through by e^{3kt}
    let u = (-kt).exp();
    let q = -(-kt).exp_m1();
    Ok(2.0 * q / (3.0 * u * u * u - 9.0 * u * u + 7.0 * u + 2.0))
}

/// Large-`kt` limit of [`lambda7_boundary`].
pub const LAMBDA7_LIMIT: f64 = 0.25;

/// `p` on the curve where lambda7 vanishes:
/// `(9 - 18x + 17x^2 - 3 sqrt(D)) / (8x^2 - 9x^{-2}(1 - 4x + 4x^2 - x^3))`,
/// `D = 17 - 68x + 102x^2 - 76x^3 + 25x^4`, `x = e^{kt}`. For `kt >= 100`
/// numerator and denominator are divided by `x^2` to stay finite.
pub fn lambda7_boundary(kt: f64) -> Result<f64> {
    let kt = check_positive_kt(kt)?;
    let p = if kt < 100.0 {
        let x = kt.exp();
        let d = 17.0 - 68.0 * x + 102.0 * x.powi(2) - 76.0 * x.powi(3) + 25.0 * x.powi(4);
        let num = 9.0 - 18.0 * x + 17.0 * x * x - 3.0 * d.max(0.0).sqrt();
        let den = 8.0 * x * x - 9.0 * (-2.0 * kt).exp() * (1.0 - 4.0 * x + 4.0 * x * x - x.powi(3));
        num / den
    } else {
        let u = (-kt).exp();
        let d = 17.0 * u.powi(4) - 68.0 * u.powi(3) + 102.0 * u * u - 76.0 * u + 25.0;
        let num = 9.0 * u * u - 18.0 * u + 17.0 - 3.0 * d.sqrt();
        let den = 8.0 - 9.0 * (u.powi(4) - 4.0 * u.powi(3) + 4.0 * u * u - u);
        num / den
    };
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Domain {
            name: "lambda7 boundary p",
            value: p,
            domain: "[0, 1]",
        });
    }
    Ok(p)
}

/// Amplitude `a` below which the generalized-GHZ cavities are separable at `kt`.
pub fn gghz_esd_boundary(kt: f64) -> Result<f64> {
    let kt = check_positive_kt(kt)?;
    // (e^{kt}-1)^3 / ((e^{kt}-1)^3 + e^{3kt}) = q^3 / (q^3 + 1), q = 1 - e^{-kt}
    let q3 = (-(-kt).exp_m1()).powi(3);
    Ok((q3 / (q3 + 1.0)).sqrt())
}

/// Time after which the generalized-GHZ cavities stay separable; `None`
/// when the state starts unentangled (`a = 0`) or decays asymptotically
/// (`a >= sqrt(2)/2`).
pub fn gghz_esd_time(a: f64) -> Result<Option<f64>> {
    let a = check_unit("a", a)?;
    let b2 = 1.0 - a * a;
    if a == 0.0 || a * a >= b2 {
        return Ok(None);
    }
    // invert a^2 = q^3 / (q^3 + 1)
    let q = (a * a / b2).cbrt();
    Ok(Some(-(-q).ln_1p()))
}

fn crossing_time<F>(boundary: F, p: f64) -> Result<Option<f64>>
where
    F: Fn(f64) -> Result<f64> + Copy,
{
    let g = |kt: f64| boundary(kt).map(|b| b - p).unwrap_or(f64::NAN);
    match expand_bracket(g, 1e-9, 1.0, KT_SEARCH_LIMIT) {
        Ok((lo, hi)) => Ok(Some(bisect(g, lo, hi, BISECT_TOL, BISECT_MAX_ITER)?)),
        Err(Error::NotBracketed { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Smallest `kt` after which the cavity negativity stays zero, or `None`
/// for asymptotic decay. The candidate is the later of the lambda5 and
/// lambda7 zero crossings, confirmed by the numeric negativity at the
/// [`ESD_PROBES`] offsets.
pub fn esd_time(p: f64) -> Result<Option<f64>> {
    let p = check_unit("p", p)?;
    if p == 1.0 {
        // lambda5 < 0 for every finite kt
        return Ok(None);
    }
    // lambda5 vanishes identically at p = 0
    let t5 = if p == 0.0 {
        Some(0.0)
    } else {
        crossing_time(lambda5_boundary, p)?
    };
    // the lambda7 curve decreases to 1/4 without reaching it
    if p <= LAMBDA7_LIMIT {
        return Ok(None);
    }
    let t7 = crossing_time(lambda7_boundary, p)?;
    let (Some(t5), Some(t7)) = (t5, t7) else {
        return Ok(None);
    };
    let t = t5.max(t7);
    for dt in ESD_PROBES {
        let n = cavity_negativity(p, t + dt)?;
        if n >= ZERO_ENTANGLEMENT {
            return Err(Error::Domain {
                name: "negativity after candidate ESD time",
                value: n,
                domain: "[0, 1e-10)",
            });
        }
    }
    Ok(Some(t))
}

/// `(p, kt)` of the earliest sudden death over the mixed family.
pub fn min_esd_point() -> Result<(f64, f64)> {
    let f = |p: f64| esd_time(p).ok().flatten().unwrap_or(f64::INFINITY);
    let (p, kt) = golden_section_min(f, 0.25 + 1e-6, 1.0 - 1e-6, GOLDEN_TOL);
    if !kt.is_finite() {
        return Err(Error::NotBracketed { lo: 0.25, hi: 1.0 });
    }
    Ok((p, kt))
}

/// Smallest `p` whose cavity entanglement dies in finite time.
pub fn esd_onset_threshold() -> Result<f64> {
    let dies = |p: f64| matches!(esd_time(p), Ok(Some(_)));
    bisect_predicate(dies, 0.05, 0.5, 1e-7)
}

/// `(p, N)` minimizing the initial negativity of the mixture.
pub fn min_initial_negativity() -> Result<(f64, f64)> {
    let f = |p: f64| {
        mixed_ghz_w(p)
            .and_then(|r| negativity(&r, &[Qubit::C1]))
            .unwrap_or(f64::INFINITY)
    };
    Ok(golden_section_min(f, 0.0, 1.0, GOLDEN_TOL))
}

/// Mixing probabilities bounding the window where the mixture is entangled
/// without concurrence or three-tangle.
pub fn p_c() -> f64 {
    7.0 - 45f64.sqrt()
}

pub fn p_0() -> f64 {
    let c = 4.0 * 2f64.cbrt();
    c / (3.0 + c)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EqualEntanglementRange {
    pub p_c: f64,
    pub p_0: f64,
    pub n_at_p_c: f64,
    pub n_at_p_0: f64,
    pub a_low: f64,
    pub a_high: f64,
    pub max_gghz_esd_kt: f64,
}

/// Amplitude `a <= sqrt(2)/2` with `2ab = n`.
pub fn gghz_amplitude_for_negativity(n: f64) -> Result<f64> {
    let n = check_unit("negativity", n)?;
    Ok(((1.0 - (1.0 - n * n).sqrt()) / 2.0).sqrt())
}

/// Generalized-GHZ amplitudes with the same initial negativity as the
/// mixture at `p_c` and `p_0`, and the latest gGHZ sudden death over that
/// amplitude interval.
pub fn equal_entanglement_range() -> Result<EqualEntanglementRange> {
    let (pc, p0) = (p_c(), p_0());
    let n_at = |p: f64| mixed_ghz_w(p).and_then(|r| negativity(&r, &[Qubit::C1]));
    let (nc, n0) = (n_at(pc)?, n_at(p0)?);
    let (ac, a0) = (
        gghz_amplitude_for_negativity(nc)?,
        gghz_amplitude_for_negativity(n0)?,
    );
    let (a_low, a_high) = (ac.min(a0), ac.max(a0));
    // the gGHZ ESD time increases with a
    let t_high = gghz_esd_time(a_high)?.unwrap_or(f64::INFINITY);
    let t_low = gghz_esd_time(a_low)?.unwrap_or(f64::INFINITY);
    Ok(EqualEntanglementRange {
        p_c: pc,
        p_0: p0,
        n_at_p_c: nc,
        n_at_p_0: n0,
        a_low,
        a_high,
        max_gghz_esd_kt: t_high.max(t_low),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SwapCheck {
    pub passed: bool,
    pub max_deviation: f64,
}

/// Compares `rho_{r1r2r3}` at `(xi, chi)` with `rho_{c1c2c3}` at `(chi, xi)`.
pub fn swap_check(p: f64, kt: f64) -> Result<SwapCheck> {
    let (xi, chi) = amplitudes(kt)?;
    let res = global_output_state_with(p, xi, chi)?.reduce(&Qubit::RESERVOIRS)?;
    let cav = global_output_state_with(p, chi, xi)?.reduce(&Qubit::CAVITIES)?;
    let dev = res.matrix().max_abs_diff(cav.matrix());
    Ok(SwapCheck {
        passed: dev < SWAP_TOL,
        max_deviation: dev,
    })
}

/// Reservoir birth time `-ln(1 - exp(-kt_esd))` for a cavity death at
/// `kt_esd` (both in units of `1/kappa`).
pub fn esb_time(t_esd: f64) -> Result<f64> {
    if t_esd.is_nan() || t_esd <= 0.0 {
        return Err(Error::Domain {
            name: "t_esd",
            value: t_esd,
            domain: "(0, inf]",
        });
    }
    Ok(-(-(-t_esd).exp()).ln_1p())
}

/// Locates the first `kt` at which the reservoir negativity `r1 | r2 r3`
/// exceeds [`ZERO_ENTANGLEMENT`], by bisection on the numeric state.
pub fn reservoir_birth_time(p: f64, tol: f64) -> Result<f64> {
    let born = |kt: f64| reservoir_negativity(p, kt).is_ok_and(|n| n > ZERO_ENTANGLEMENT);
    let lo = 1e-6;
    let mut hi = 1.0;
    while !born(hi) {
        if hi >= KT_SEARCH_LIMIT {
            return Err(Error::NotBracketed { lo, hi });
        }
        hi *= 2.0;
    }
    bisect_predicate(born, lo, hi, tol)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BoundaryKind {
    Lambda5,
    Lambda7,
    Gghz,
}

impl BoundaryKind {
    pub fn name(self) -> &'static str {
        match self {
            BoundaryKind::Lambda5 => "lambda5",
            BoundaryKind::Lambda7 => "lambda7",
            BoundaryKind::Gghz => "gghz",
        }
    }

    pub fn eval(self, kt: f64) -> Result<f64> {
        match self {
            BoundaryKind::Lambda5 => lambda5_boundary(kt),
            BoundaryKind::Lambda7 => lambda7_boundary(kt),
            BoundaryKind::Gghz => gghz_esd_boundary(kt),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundaryCurve {
    pub kind: BoundaryKind,
    /// `(kt, parameter)` with `kt` strictly increasing.
    pub samples: Vec<(f64, f64)>,
}

/// Samples a boundary on `steps` evenly spaced points of `[kt_min, kt_max]`,
/// `kt_min > 0`.
pub fn boundary_curve(
    kind: BoundaryKind,
    kt_min: f64,
    kt_max: f64,
    steps: usize,
) -> Result<BoundaryCurve> {
    check_positive_kt(kt_min)?;
    check_positive_kt(kt_max)?;
    if kt_max <= kt_min || steps < 2 {
        return Err(Error::InvalidConfig(
            "boundary range needs kt_min < kt_max and steps >= 2",
        ));
    }
    let samples = crate::sweep::linspace(kt_min, kt_max, steps)
        .into_iter()
        .map(|kt| kind.eval(kt).map(|v| (kt, v)))
        .collect::<Result<Vec<_>>>()?;
    Ok(BoundaryCurve { kind, samples })
}

/// Closed-form generalized-GHZ negativity sampled on the boundary; zero
/// within rounding by construction.
pub fn gghz_boundary_residual(kt: f64) -> Result<f64> {
    gghz_negativity_closed(gghz_esd_boundary(kt)?, kt)
}
