//! Grid verification suites shared by the CLI and the acceptance tests.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::entanglement::{
    cavity_negativity, closed_form_pt_eigenvalues, gghz_cavity_negativity, gghz_negativity_closed,
    monogamy_chain, numeric_pt_eigenvalues, LinkStatus, ZERO_ENTANGLEMENT,
};
use crate::error::Result;
use crate::esd::{
    classify_region, equal_entanglement_range, esb_time, esd_onset_threshold, esd_time,
    gghz_esd_boundary, lambda5_boundary, lambda7_boundary, min_esd_point, min_initial_negativity,
    reservoir_birth_time, swap_check, RegionClass, SWAP_TOL,
};
use crate::roots::bisect;
use crate::sweep::{linspace, par_grid};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    ClosedForm,
    Monogamy,
    Swap,
    Esb,
    Regions,
    Gghz,
    Boundaries,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::ClosedForm,
        Suite::Monogamy,
        Suite::Swap,
        Suite::Esb,
        Suite::Regions,
        Suite::Gghz,
        Suite::Boundaries,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::ClosedForm => "closedform",
            Suite::Monogamy => "monogamy",
            Suite::Swap => "swap",
            Suite::Esb => "esb",
            Suite::Regions => "regions",
            Suite::Gghz => "gghz",
            Suite::Boundaries => "boundaries",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| format!("unknown suite '{s}'"))
    }
}

/// How a check's aggregate value is judged against its tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Comparison {
    /// largest deviation must be `<= tol`
    AtMost,
    /// smallest slack must be `>= -tol`
    SlackAtLeast,
    /// smallest value must be `> tol`
    Above,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Outcome {
    Pass,
    Fail,
    NotEvaluated,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub comparison: Comparison,
    /// worst value over the grid (max for `AtMost`, min otherwise)
    pub value: f64,
    pub tolerance: f64,
    /// grid point where `value` occurs
    pub at: Option<(f64, f64)>,
    pub outcome: Outcome,
}

impl CheckResult {
    fn not_evaluated(name: &str) -> Self {
        Self {
            name: name.to_string(),
            comparison: Comparison::SlackAtLeast,
            value: f64::NAN,
            tolerance: f64::NAN,
            at: None,
            outcome: Outcome::NotEvaluated,
        }
    }
}

/// Running worst case of one check.
struct Worst {
    name: &'static str,
    comparison: Comparison,
    tolerance: f64,
    value: f64,
    at: Option<(f64, f64)>,
}

impl Worst {
    fn new(name: &'static str, comparison: Comparison, tolerance: f64) -> Self {
        let value = match comparison {
            Comparison::AtMost => f64::NEG_INFINITY,
            _ => f64::INFINITY,
        };
        Self {
            name,
            comparison,
            tolerance,
            value,
            at: None,
        }
    }

    fn push(&mut self, v: f64, at: (f64, f64)) {
        let worse = match self.comparison {
            Comparison::AtMost => v > self.value || v.is_nan(),
            _ => v < self.value || v.is_nan(),
        };
        if worse && !self.value.is_nan() {
            self.value = v;
            self.at = Some(at);
        }
    }

    fn finish(self) -> CheckResult {
        let ok = match self.comparison {
            Comparison::AtMost => self.value <= self.tolerance,
            Comparison::SlackAtLeast => self.value >= -self.tolerance,
            Comparison::Above => self.value > self.tolerance,
        };
        CheckResult {
            name: self.name.to_string(),
            comparison: self.comparison,
            value: self.value,
            tolerance: self.tolerance,
            at: self.at,
            outcome: if ok { Outcome::Pass } else { Outcome::Fail },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: Vec<CheckResult>,
}

impl SuiteReport {
    /// Every evaluated check passed.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.outcome != Outcome::Fail)
    }
}

/// Default grids: `(p or a) in [0, 1]`, `kt in [0, 3]`.
pub const GRID_KT_MAX: f64 = 3.0;

fn grid(n: usize) -> (Vec<f64>, Vec<f64>) {
    (linspace(0.0, 1.0, n), linspace(0.0, GRID_KT_MAX, n))
}

/// `p` values with finite-time cavity death used by the ESB check.
pub fn esb_sample_ps() -> Vec<f64> {
    linspace(0.3, 0.95, 10)
}

/// `kt` samples in `(0, 4]` for the boundary checks.
pub fn boundary_sample_kts() -> Vec<f64> {
    linspace(4.0 / 30.0, 4.0, 30)
}

/// Oracle for the lambda7 boundary: bisection in `p` on the closed-form
/// lambda7 at fixed `kt`.
pub fn lambda7_zero_by_bisection(kt: f64) -> Result<f64> {
    let l7 = |p: f64| {
        closed_form_pt_eigenvalues(p, kt)
            .map(|s| s.lambda7())
            .unwrap_or(f64::NAN)
    };
    bisect(l7, 0.0, 1.0, 1e-14, 200)
}

pub fn lambda5_zero_by_bisection(kt: f64) -> Result<f64> {
    let l5 = |p: f64| {
        closed_form_pt_eigenvalues(p, kt)
            .map(|s| s.lambda5())
            .unwrap_or(f64::NAN)
    };
    bisect(l5, 1e-12, 1.0, 1e-14, 200)
}

pub fn run_suite(
    suite: Suite,
    tolerance: Option<f64>,
    workers: Option<usize>,
) -> Result<SuiteReport> {
    let tol = |default: f64| tolerance.unwrap_or(default);
    let checks = match suite {
        Suite::ClosedForm => {
            let (ps, kts) = grid(25);
            let cells = par_grid(&ps, &kts, workers, |p, kt| {
                let cf = closed_form_pt_eigenvalues(p, kt)?;
                let num = numeric_pt_eigenvalues(p, kt)?;
                let dev = cf
                    .sorted_descending()
                    .iter()
                    .zip(&num)
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0, f64::max);
                let min_nonneg = cf
                    .always_nonnegative()
                    .into_iter()
                    .fold(f64::INFINITY, f64::min);
                let trace = (cf.lambdas.iter().sum::<f64>() - 1.0).abs();
                Ok((p, kt, dev, min_nonneg, trace))
            })?;
            let mut multiset =
                Worst::new("spectrum_matches_numeric", Comparison::AtMost, tol(1e-10));
            let mut nonneg = Worst::new(
                "six_eigenvalues_nonnegative",
                Comparison::SlackAtLeast,
                tol(1e-12),
            );
            let mut trace = Worst::new("spectrum_sums_to_one", Comparison::AtMost, tol(1e-10));
            for (p, kt, d, m, t) in cells {
                multiset.push(d, (p, kt));
                nonneg.push(m, (p, kt));
                trace.push(t, (p, kt));
            }
            vec![multiset.finish(), nonneg.finish(), trace.finish()]
        }
        Suite::Monogamy => {
            let (ps, kts) = grid(25);
            let t = tol(1e-10);
            let records = par_grid(&ps, &kts, workers, monogamy_chain)?;
            let mut eq = Worst::new("initial_equals_pair", Comparison::AtMost, t);
            let mut split = Worst::new("pair_bounds_split", Comparison::SlackAtLeast, t);
            let mut tail = Worst::new("split_bounds_negativities", Comparison::SlackAtLeast, t);
            for r in &records {
                let links = r.links(t);
                debug_assert_eq!(links[2].status, LinkStatus::NotEvaluated);
                eq.push((r.c_init_sq - r.c_pair_sq).abs(), (r.p, r.kt));
                split.push(links[1].slack.unwrap_or(f64::NAN), (r.p, r.kt));
                tail.push(links[3].slack.unwrap_or(f64::NAN), (r.p, r.kt));
            }
            vec![
                eq.finish(),
                split.finish(),
                CheckResult::not_evaluated("split_bounds_reduced_concurrences"),
                tail.finish(),
            ]
        }
        Suite::Swap => {
            let (ps, kts) = grid(20);
            let devs = par_grid(&ps, &kts, workers, |p, kt| {
                Ok((p, kt, swap_check(p, kt)?.max_deviation))
            })?;
            let mut w = Worst::new(
                "reservoir_equals_swapped_cavity",
                Comparison::AtMost,
                tol(SWAP_TOL),
            );
            for (p, kt, d) in devs {
                w.push(d, (p, kt));
            }
            vec![w.finish()]
        }
        Suite::Esb => {
            let ps = esb_sample_ps();
            let rows = par_grid(&ps, &[0.0], workers, |p, _| {
                let t_esd = esd_time(p)?.unwrap_or(f64::NAN);
                let predicted = esb_time(t_esd).unwrap_or(f64::NAN);
                let located = reservoir_birth_time(p, 1e-7)?;
                Ok((p, t_esd, (predicted - located).abs()))
            })?;
            let mut w = Worst::new(
                "birth_time_matches_bisection",
                Comparison::AtMost,
                tol(1e-3),
            );
            for (p, t_esd, d) in rows {
                w.push(d, (p, t_esd));
            }
            vec![w.finish()]
        }
        Suite::Regions => {
            let (ps, kts) = grid(40);
            let t = tol(ZERO_ENTANGLEMENT);
            let cells = par_grid(&ps, &kts, workers, |p, kt| {
                Ok((p, kt, classify_region(p, kt)?, cavity_negativity(p, kt)?))
            })?;
            let mut sep = Worst::new("region_iv_has_zero_negativity", Comparison::AtMost, t);
            let mut ent = Worst::new("regions_i_to_iii_have_negativity", Comparison::Above, t);
            for (p, kt, region, n) in cells {
                if region == RegionClass::IV {
                    sep.push(n, (p, kt));
                } else {
                    ent.push(n, (p, kt));
                }
            }
            vec![sep.finish(), ent.finish()]
        }
        Suite::Gghz => {
            let (as_, kts) = grid(25);
            let cells = par_grid(&as_, &kts, workers, |a, kt| {
                Ok((
                    a,
                    kt,
                    (gghz_negativity_closed(a, kt)? - gghz_cavity_negativity(a, kt)?).abs(),
                ))
            })?;
            let mut w = Worst::new(
                "closed_form_matches_numeric",
                Comparison::AtMost,
                tol(1e-10),
            );
            for (a, kt, d) in cells {
                w.push(d, (a, kt));
            }
            let mut resid = Worst::new(
                "negativity_vanishes_on_boundary",
                Comparison::AtMost,
                tol(1e-10),
            );
            let mut mono = Worst::new("boundary_increasing", Comparison::Above, 0.0);
            let kts = boundary_sample_kts();
            for pair in kts.windows(2) {
                let (a0, a1) = (gghz_esd_boundary(pair[0])?, gghz_esd_boundary(pair[1])?);
                resid.push(gghz_negativity_closed(a0, pair[0])?, (a0, pair[0]));
                mono.push(a1 - a0, (a1, pair[1]));
            }
            vec![w.finish(), resid.finish(), mono.finish()]
        }
        Suite::Boundaries => {
            let t = tol(1e-8);
            let mut l5 = Worst::new("lambda5_vanishes_on_curve", Comparison::AtMost, t);
            let mut l7 = Worst::new("lambda7_vanishes_on_curve", Comparison::AtMost, t);
            let mut audit5 = Worst::new("lambda5_curve_matches_bisection", Comparison::AtMost, t);
            let mut audit7 = Worst::new("lambda7_curve_matches_bisection", Comparison::AtMost, t);
            for kt in boundary_sample_kts() {
                let p5 = lambda5_boundary(kt)?;
                let p7 = lambda7_boundary(kt)?;
                l5.push(
                    closed_form_pt_eigenvalues(p5, kt)?.lambda5().abs(),
                    (p5, kt),
                );
                l7.push(
                    closed_form_pt_eigenvalues(p7, kt)?.lambda7().abs(),
                    (p7, kt),
                );
                audit5.push((p5 - lambda5_zero_by_bisection(kt)?).abs(), (p5, kt));
                audit7.push((p7 - lambda7_zero_by_bisection(kt)?).abs(), (p7, kt));
            }
            vec![l5.finish(), l7.finish(), audit5.finish(), audit7.finish()]
        }
    };
    Ok(SuiteReport { suite, checks })
}

/// A computed landmark against its reference value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Landmark {
    pub name: &'static str,
    pub value: f64,
    pub reference: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl Landmark {
    fn new(name: &'static str, value: f64, reference: f64, tolerance: f64) -> Self {
        Self {
            name,
            value,
            reference,
            tolerance,
            passed: (value - reference).abs() <= tolerance,
        }
    }
}

/// Sudden-death and equal-entanglement landmarks of the two families.
pub fn landmarks() -> Result<Vec<Landmark>> {
    let (p_esd, kt_esd) = min_esd_point()?;
    let (p_n, n_min) = min_initial_negativity()?;
    let range = equal_entanglement_range()?;
    Ok(vec![
        Landmark::new("min_esd_p", p_esd, 0.385, 0.005),
        Landmark::new("min_esd_kt", kt_esd, 1.091, 0.005),
        Landmark::new("min_initial_negativity_p", p_n, 0.465, 0.005),
        Landmark::new("min_initial_negativity", n_min, 0.643, 0.002),
        Landmark::new("gghz_a_low", range.a_low, 0.319, 0.003),
        Landmark::new("gghz_a_high", range.a_high, 0.363, 0.003),
        Landmark::new("gghz_max_esd_kt", range.max_gghz_esd_kt, 0.763, 0.005),
        Landmark::new("esd_onset_p", esd_onset_threshold()?, 0.25, 0.005),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_roundtrip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn swap_suite_passes() {
        let r = run_suite(Suite::Swap, None, None).unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn absurd_tolerance_fails_monogamy() {
        let r = run_suite(Suite::Monogamy, Some(1e-30), None).unwrap();
        assert!(!r.passed());
        assert_eq!(r.checks[2].outcome, Outcome::NotEvaluated);
    }

    #[test]
    fn landmark_table_is_complete() {
        let l = landmarks().unwrap();
        assert_eq!(l.len(), 8);
        let low = l.iter().find(|x| x.name == "gghz_a_low").unwrap();
        // equal negativity forces a >= 0.34, far above the reference bound
        assert!(!low.passed && low.value > 0.34);
        assert!(l
            .iter()
            .filter(|x| x.name != "gghz_a_low")
            .all(|x| x.passed));
    }
}
