use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A named two-level subsystem of the cavity-reservoir register.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Qubit {
    C1,
    C2,
    C3,
    R1,
    R2,
    R3,
    /// Ancilla purifying the GHZ/W mixture.
    Z,
}

impl Qubit {
    pub const CAVITIES: [Qubit; 3] = [Qubit::C1, Qubit::C2, Qubit::C3];
    pub const RESERVOIRS: [Qubit; 3] = [Qubit::R1, Qubit::R2, Qubit::R3];

    pub fn label(self) -> &'static str {
        match self {
            Qubit::C1 => "c1",
            Qubit::C2 => "c2",
            Qubit::C3 => "c3",
            Qubit::R1 => "r1",
            Qubit::R2 => "r2",
            Qubit::R3 => "r3",
            Qubit::Z => "z",
        }
    }
}

impl fmt::Display for Qubit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Ordered register of distinct qubits. The first label is the most
/// significant bit of a basis index.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SystemLayout {
    qubits: Vec<Qubit>,
}

impl SystemLayout {
    pub fn new(qubits: &[Qubit]) -> Result<Self> {
        if qubits.is_empty() {
            return Err(Error::InvalidSubsystem(
                "layout must contain at least one qubit",
            ));
        }
        for (i, q) in qubits.iter().enumerate() {
            if qubits[..i].contains(q) {
                return Err(Error::DuplicateLabel(*q));
            }
        }
        Ok(Self {
            qubits: qubits.to_vec(),
        })
    }

    pub fn qubits(&self) -> &[Qubit] {
        &self.qubits
    }

    pub fn len(&self) -> usize {
        self.qubits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.qubits.is_empty()
    }

    pub fn dim(&self) -> usize {
        1 << self.qubits.len()
    }

    pub fn position(&self, q: Qubit) -> Option<usize> {
        self.qubits.iter().position(|&x| x == q)
    }

    pub fn contains(&self, q: Qubit) -> bool {
        self.position(q).is_some()
    }

    /// Bit shift of qubit position `pos` inside a basis index.
    pub(crate) fn shift(&self, pos: usize) -> usize {
        self.qubits.len() - 1 - pos
    }

    /// Positions of `subset` in this layout, in the order given. Rejects
    /// empty subsets, unknown labels and repeats.
    pub(crate) fn positions_of(&self, subset: &[Qubit]) -> Result<Vec<usize>> {
        if subset.is_empty() {
            return Err(Error::InvalidSubsystem("empty subsystem"));
        }
        let mut out = Vec::with_capacity(subset.len());
        for (i, q) in subset.iter().enumerate() {
            if subset[..i].contains(q) {
                return Err(Error::DuplicateLabel(*q));
            }
            out.push(self.position(*q).ok_or(Error::UnknownLabel(*q))?);
        }
        Ok(out)
    }

    pub fn concat(&self, other: &SystemLayout) -> Result<SystemLayout> {
        let mut q = self.qubits.clone();
        q.extend_from_slice(&other.qubits);
        SystemLayout::new(&q)
    }

    /// Labels not in `subset`, in layout order.
    pub fn complement(&self, subset: &[Qubit]) -> Vec<Qubit> {
        self.qubits
            .iter()
            .copied()
            .filter(|q| !subset.contains(q))
            .collect()
    }
}

impl fmt::Display for SystemLayout {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for q in &self.qubits {
            f.write_str(q.label())?;
        }
        Ok(())
    }
}
