//! Simulators and end-to-end checks for the synthesized circuits.

mod affine;
mod statevector;
mod verify;

pub use affine::AffineState;
pub use statevector::{StateVector, MAX_SV_WIDTH};
pub use verify::*;

/// Bit flips on `x`, phase flips on `z` (qubit indices).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PauliError {
    pub x: Vec<usize>,
    pub z: Vec<usize>,
}

impl PauliError {
    pub fn bit_flips(qubits: &[usize]) -> Self {
        PauliError {
            x: qubits.to_vec(),
            z: Vec::new(),
        }
    }

    pub fn phase_flips(qubits: &[usize]) -> Self {
        PauliError {
            x: Vec::new(),
            z: qubits.to_vec(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.x.is_empty() && self.z.is_empty()
    }

    pub fn max_index(&self) -> Option<usize> {
        self.x.iter().chain(&self.z).copied().max()
    }
}
