use crate::gate::{GateKind, Qubit};

/// Pending Pauli corrections, one `(x, z)` pair per qubit, global phase ignored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PauliFrame {
    x: Vec<bool>,
    z: Vec<bool>,
}

impl PauliFrame {
    pub fn identity(n: usize) -> Self {
        PauliFrame { x: vec![false; n], z: vec![false; n] }
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    pub fn x(&self, q: Qubit) -> bool {
        self.x[q]
    }

    pub fn z(&self, q: Qubit) -> bool {
        self.z[q]
    }

    pub fn is_identity(&self) -> bool {
        !self.x.iter().chain(&self.z).any(|&b| b)
    }

    pub fn flip_x(&mut self, q: Qubit) {
        self.x[q] ^= true;
    }

    pub fn flip_z(&mut self, q: Qubit) {
        self.z[q] ^= true;
    }

    pub fn clear(&mut self, q: Qubit) {
        self.x[q] = false;
        self.z[q] = false;
    }

    /// Product of two frames (XOR of their bits).
    pub fn compose(&self, other: &PauliFrame) -> PauliFrame {
        let xor = |a: &[bool], b: &[bool]| a.iter().zip(b).map(|(p, q)| p ^ q).collect();
        PauliFrame { x: xor(&self.x, &other.x), z: xor(&self.z, &other.z) }
    }

    /// Conjugate the frame through a Clifford gate. Returns false if the kind
    /// is not a Clifford this frame can propagate through.
    pub fn propagate(&mut self, kind: &GateKind, qubits: &[Qubit]) -> bool {
        match kind {
            GateKind::X | GateKind::Y | GateKind::Z => {}
            GateKind::H => {
                let q = qubits[0];
                std::mem::swap(&mut self.x[q], &mut self.z[q]);
            }
            GateKind::S | GateKind::Sdg => {
                let q = qubits[0];
                self.z[q] ^= self.x[q];
            }
            GateKind::Cnot => {
                let (c, t) = (qubits[0], qubits[1]);
                self.x[t] ^= self.x[c];
                self.z[c] ^= self.z[t];
            }
            _ => return false,
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn self_composition_is_identity() {
        let mut f = PauliFrame::identity(3);
        f.flip_x(0);
        f.flip_z(2);
        assert!(f.compose(&f).is_identity());
    }

    #[test]
    fn cnot_propagation() {
        let mut f = PauliFrame::identity(2);
        f.flip_x(0);
        f.flip_z(1);
        assert!(f.propagate(&GateKind::Cnot, &[0, 1]));
        assert!(f.x(0) && f.x(1) && f.z(0) && f.z(1));
        assert!(!f.propagate(&GateKind::T, &[0]));
    }
}
