use thiserror::Error;

use crate::qlinalg::Qubit;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("{name} = {value} is outside its domain {domain}")]
    Domain {
        name: &'static str,
        value: f64,
        domain: &'static str,
    },

    #[error("duplicate qubit label {0}")]
    DuplicateLabel(Qubit),

    #[error("qubit {0} is not part of the layout")]
    UnknownLabel(Qubit),

    #[error("invalid subsystem: {0}")]
    InvalidSubsystem(&'static str),

    #[error("invalid configuration: {0}")]
    InvalidConfig(&'static str),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("non-finite entry in matrix or vector")]
    NonFinite,

    #[error("state norm {0} differs from one")]
    NotNormalized(f64),

    #[error("matrix is not Hermitian (max |H - H^dagger| = {0:e})")]
    NotHermitian(f64),

    #[error("matrix is not positive semidefinite (min eigenvalue {0:e})")]
    NotPositive(f64),

    #[error("trace {0} differs from one")]
    NotUnitTrace(f64),

    #[error("eigensolver did not converge after {0} sweeps")]
    NoConvergence(usize),

    #[error("root not bracketed on [{lo}, {hi}]")]
    NotBracketed { lo: f64, hi: f64 },

    #[error("reduced state has rank {0}; cannot be treated as a logical qubit")]
    NotLogicalQubit(usize),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Checks `lo <= value <= hi` (and finiteness), naming the parameter on failure.
pub(crate) fn check_range(
    name: &'static str,
    value: f64,
    lo: f64,
    hi: f64,
    domain: &'static str,
) -> Result<f64> {
    if value.is_finite() && value >= lo && value <= hi {
        Ok(value)
    } else {
        Err(Error::Domain {
            name,
            value,
            domain,
        })
    }
}

pub(crate) fn check_kt(kt: f64) -> Result<f64> {
    check_range("kt", kt, 0.0, f64::INFINITY, "[0, inf)")
}

pub(crate) fn check_positive_kt(kt: f64) -> Result<f64> {
    if kt.is_finite() && kt > 0.0 {
        Ok(kt)
    } else {
        Err(Error::Domain {
            name: "kt",
            value: kt,
            domain: "(0, inf)",
        })
    }
}

pub(crate) fn check_unit(name: &'static str, value: f64) -> Result<f64> {
    check_range(name, value, 0.0, 1.0, "[0, 1]")
}
