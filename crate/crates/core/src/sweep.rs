//! Parameter grids evaluated in parallel and assembled in parameter-major,
//! then `kt`-ascending order regardless of worker count.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::entanglement::{cavity_negativity, gghz_cavity_negativity, gghz_negativity_closed};
use crate::error::{check_kt, check_unit, Error, Result};

/// `steps` evenly spaced points from `lo` to `hi` inclusive.
pub fn linspace(lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    match steps {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..steps)
            .map(|i| {
                if i == steps - 1 {
                    hi
                } else {
                    lo + (hi - lo) * i as f64 / (steps - 1) as f64
                }
            })
            .collect(),
    }
}

/// Evaluates `f(param, kt)` on the grid; output index is
/// `i_param * kts.len() + i_kt`. `workers = None` uses every core.
pub fn par_grid<T, F>(params: &[f64], kts: &[f64], workers: Option<usize>, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(f64, f64) -> Result<T> + Sync,
{
    let cells: Vec<(f64, f64)> = params
        .iter()
        .flat_map(|&p| kts.iter().map(move |&k| (p, k)))
        .collect();
    let run = || {
        cells
            .par_iter()
            .map(|&(p, k)| f(p, k))
            .collect::<Result<Vec<T>>>()
    };
    match workers {
        None => run(),
        Some(n) => match rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
        {
            Ok(pool) => pool.install(run),
            Err(_) => cells.iter().map(|&(p, k)| f(p, k)).collect(),
        },
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepFamily {
    /// GHZ/W mixture, parameter `p`
    Mixed,
    /// generalized GHZ, parameter `a`
    Gghz,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub family: SweepFamily,
    pub param_min: f64,
    pub param_max: f64,
    pub param_steps: usize,
    pub kt_min: f64,
    pub kt_max: f64,
    pub kt_steps: usize,
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        check_unit("param_min", self.param_min)?;
        check_unit("param_max", self.param_max)?;
        check_kt(self.kt_min)?;
        check_kt(self.kt_max)?;
        if self.param_min >= self.param_max || self.kt_min >= self.kt_max {
            return Err(Error::InvalidConfig("sweep ranges need min < max"));
        }
        if self.param_steps < 2 || self.kt_steps < 2 {
            return Err(Error::InvalidConfig(
                "sweep needs at least two steps per axis",
            ));
        }
        Ok(())
    }

    pub fn params(&self) -> Vec<f64> {
        linspace(self.param_min, self.param_max, self.param_steps)
    }

    pub fn kts(&self) -> Vec<f64> {
        linspace(self.kt_min, self.kt_max, self.kt_steps)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SurfaceRow {
    pub param: f64,
    pub kt: f64,
    pub negativity: f64,
}

/// Closed-form cavity negativity over the configured grid.
pub fn surface(cfg: &SweepConfig, workers: Option<usize>) -> Result<Vec<SurfaceRow>> {
    cfg.validate()?;
    let family = cfg.family;
    par_grid(&cfg.params(), &cfg.kts(), workers, |param, kt| {
        let negativity = match family {
            SweepFamily::Mixed => {
                crate::entanglement::closed_form_pt_eigenvalues(param, kt)?.negativity()
            }
            SweepFamily::Gghz => gghz_negativity_closed(param, kt)?,
        };
        Ok(SurfaceRow {
            param,
            kt,
            negativity,
        })
    })
}

/// Same grid recomputed from the explicit global state.
pub fn surface_oracle(cfg: &SweepConfig, workers: Option<usize>) -> Result<Vec<SurfaceRow>> {
    cfg.validate()?;
    let family = cfg.family;
    par_grid(&cfg.params(), &cfg.kts(), workers, |param, kt| {
        let negativity = match family {
            SweepFamily::Mixed => cavity_negativity(param, kt)?,
            SweepFamily::Gghz => gghz_cavity_negativity(param, kt)?,
        };
        Ok(SurfaceRow {
            param,
            kt,
            negativity,
        })
    })
}
