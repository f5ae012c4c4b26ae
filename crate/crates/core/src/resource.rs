use serde::{Deserialize, Serialize};

/// Depth, T-count, gate count and width of a circuit or cost model.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResourceProfile {
    pub depth: u64,
    pub t_count: u64,
    pub total_gates: u64,
    pub qubits: u64,
}

impl ResourceProfile {
    pub const ZERO: ResourceProfile = ResourceProfile { depth: 0, t_count: 0, total_gates: 0, qubits: 0 };

    /// Run `self` and then `next`, sharing qubits.
    pub fn then(self, next: ResourceProfile) -> ResourceProfile {
        ResourceProfile {
            depth: self.depth + next.depth,
            t_count: self.t_count + next.t_count,
            total_gates: self.total_gates + next.total_gates,
            qubits: self.qubits.max(next.qubits),
        }
    }

    /// Run on disjoint qubits at the same time.
    pub fn beside(self, other: ResourceProfile) -> ResourceProfile {
        ResourceProfile {
            depth: self.depth.max(other.depth),
            t_count: self.t_count + other.t_count,
            total_gates: self.total_gates + other.total_gates,
            qubits: self.qubits + other.qubits,
        }
    }

    /// `k` sequential repetitions.
    pub fn repeated(self, k: u64) -> ResourceProfile {
        if k == 0 {
            return ResourceProfile::ZERO;
        }
        ResourceProfile {
            depth: self.depth * k,
            t_count: self.t_count * k,
            total_gates: self.total_gates * k,
            qubits: self.qubits,
        }
    }

    /// `k` concurrent copies on disjoint registers.
    pub fn parallel(self, k: u64) -> ResourceProfile {
        if k == 0 {
            return ResourceProfile::ZERO;
        }
        ResourceProfile {
            depth: self.depth,
            t_count: self.t_count * k,
            total_gates: self.total_gates * k,
            qubits: self.qubits * k,
        }
    }

    pub fn with_qubits(self, qubits: u64) -> ResourceProfile {
        ResourceProfile { qubits, ..self }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const A: ResourceProfile = ResourceProfile { depth: 3, t_count: 1, total_gates: 5, qubits: 2 };
    const B: ResourceProfile = ResourceProfile { depth: 4, t_count: 2, total_gates: 6, qubits: 3 };

    #[test]
    fn composition() {
        assert_eq!(A.then(B), ResourceProfile { depth: 7, t_count: 3, total_gates: 11, qubits: 3 });
        assert_eq!(A.beside(B), ResourceProfile { depth: 4, t_count: 3, total_gates: 11, qubits: 5 });
        assert_eq!(A.repeated(3).depth, 9);
        assert_eq!(A.repeated(0), ResourceProfile::ZERO);
        assert_eq!(B.parallel(2).qubits, 6);
    }
}
