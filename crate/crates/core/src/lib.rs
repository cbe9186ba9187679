//! Exact entanglement dynamics of three cavity qubits, each leaking into its
//! own zero-temperature reservoir, for initial GHZ/W mixtures and
//! generalized GHZ states.

pub mod entanglement;
pub mod error;
pub mod esd;
pub mod qlinalg;
pub mod roots;
pub mod states;
pub mod sweep;
pub mod verify;

pub use entanglement::{MonogamyChainRecord, PtSpectrum};
pub use error::{Error, Result};
pub use esd::{BoundaryCurve, BoundaryKind, RegionClass};
pub use qlinalg::{ComplexMatrix, DensityMatrix, PureState, Qubit, SystemLayout};
pub use states::EvolutionPoint;
