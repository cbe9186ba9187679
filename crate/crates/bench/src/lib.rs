//! Fixed inputs shared by the benchmarks.

use tricav_core::states::global_output_state;
use tricav_core::{DensityMatrix, Result};

/// Representative `(p, kt)` points: GHZ-heavy, near the ESD minimum, W-heavy.
pub const POINTS: [(f64, f64); 3] = [(0.9, 0.4), (0.385, 1.09), (0.1, 2.5)];

/// Three-cavity reduced state at `(p, kt)`.
pub fn cavity_state(p: f64, kt: f64) -> Result<DensityMatrix> {
    let psi = global_output_state(p, kt)?;
    tricav_core::states::reduce(&psi, &tricav_core::Qubit::CAVITIES)
}
