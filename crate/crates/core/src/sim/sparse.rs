use std::f64::consts::FRAC_1_SQRT_2;

use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::gate::{Gate, GateKind};
use crate::unitary::{cis, C64};

/// Widest register the sparse simulator addresses.
pub const SPARSE_QUBIT_CAP: usize = 64;

const PRUNE: f64 = 1e-30;

/// Sparse state: `(basis index, amplitude)` pairs with distinct indices.
///
/// Permutation and diagonal gates update entries in place and only `H` branches,
/// so arithmetic on a few superposed qubits stays cheap at large widths.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseState {
    n: usize,
    entries: Vec<(u64, C64)>,
}

impl SparseState {
    pub fn basis(n: usize, index: u64) -> Result<Self> {
        if n > SPARSE_QUBIT_CAP {
            return Err(Error::QubitCap { requested: n, cap: SPARSE_QUBIT_CAP });
        }
        Ok(SparseState { n, entries: vec![(index, C64::new(1.0, 0.0))] })
    }

    /// Build from entries; duplicate indices are summed.
    pub fn from_entries(n: usize, entries: impl IntoIterator<Item = (u64, C64)>) -> Result<Self> {
        if n > SPARSE_QUBIT_CAP {
            return Err(Error::QubitCap { requested: n, cap: SPARSE_QUBIT_CAP });
        }
        let mut s = SparseState { n, entries: entries.into_iter().collect() };
        s.merge();
        Ok(s)
    }

    /// `self ⊗ high` with `self` on the low qubits.
    pub fn tensor(&self, high: &SparseState) -> Result<SparseState> {
        let n = self.n + high.n;
        if n > SPARSE_QUBIT_CAP {
            return Err(Error::QubitCap { requested: n, cap: SPARSE_QUBIT_CAP });
        }
        let mut entries = Vec::with_capacity(self.entries.len() * high.entries.len());
        for &(hk, ha) in &high.entries {
            for &(lk, la) in &self.entries {
                entries.push((lk | (hk << self.n), la * ha));
            }
        }
        Ok(SparseState { n, entries })
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[(u64, C64)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.entries.iter().map(|(_, a)| a.norm_sqr()).sum()
    }

    /// Sort by index, sum duplicates, drop negligible entries.
    fn merge(&mut self) {
        self.entries.sort_unstable_by_key(|e| e.0);
        let mut out: Vec<(u64, C64)> = Vec::with_capacity(self.entries.len());
        for &(k, a) in &self.entries {
            match out.last_mut() {
                Some(last) if last.0 == k => last.1 += a,
                _ => out.push((k, a)),
            }
        }
        out.retain(|(_, a)| a.norm_sqr() > PRUNE);
        self.entries = out;
    }

    fn phase_where(&mut self, mask: u64, phase: C64) {
        for (k, a) in &mut self.entries {
            if *k & mask == mask {
                *a *= phase;
            }
        }
    }

    fn flip_where(&mut self, controls: u64, target: u64) {
        for (k, _) in &mut self.entries {
            if *k & controls == controls {
                *k ^= target;
            }
        }
    }

    pub fn apply_gate(&mut self, g: &Gate) -> Result<()> {
        let q = g.qubits();
        if let Some(&b) = q.iter().find(|&&b| b >= self.n) {
            return Err(Error::IndexOutOfRange(format!("qubit {b} of {}", self.n)));
        }
        let bit = |i: usize| 1u64 << q[i];
        let i = C64::new(0.0, 1.0);
        match g.kind() {
            GateKind::X => self.flip_where(0, bit(0)),
            GateKind::Y => {
                let m = bit(0);
                for (k, a) in &mut self.entries {
                    // Y|0⟩ = i|1⟩, Y|1⟩ = -i|0⟩
                    *a *= if *k & m == 0 { i } else { -i };
                    *k ^= m;
                }
            }
            GateKind::Z => self.phase_where(bit(0), C64::new(-1.0, 0.0)),
            GateKind::S => self.phase_where(bit(0), i),
            GateKind::Sdg => self.phase_where(bit(0), -i),
            GateKind::T => self.phase_where(bit(0), cis(std::f64::consts::FRAC_PI_4)),
            GateKind::Tdg => self.phase_where(bit(0), cis(-std::f64::consts::FRAC_PI_4)),
            GateKind::Rz(a) => self.phase_where(bit(0), cis(*a)),
            GateKind::Crz(a) => self.phase_where(bit(0) | bit(1), cis(*a)),
            GateKind::Cnot => self.flip_where(bit(0), bit(1)),
            GateKind::Toffoli => self.flip_where(bit(0) | bit(1), bit(2)),
            GateKind::H => {
                let m = bit(0);
                let h = FRAC_1_SQRT_2;
                let mut next = Vec::with_capacity(self.entries.len() * 2);
                for &(k, a) in &self.entries {
                    let low = k & !m;
                    next.push((low, a * h));
                    next.push((low | m, if k & m == 0 { a * h } else { -a * h }));
                }
                self.entries = next;
                self.merge();
            }
            GateKind::MeasureZ { .. } | GateKind::FrameUpdate { .. } => return Err(Error::NonUnitary),
        }
        Ok(())
    }

    pub fn apply_circuit(&mut self, c: &Circuit) -> Result<()> {
        if c.n_qubits() > self.n {
            return Err(Error::DimensionMismatch(c.n_qubits(), self.n));
        }
        c.gates().try_for_each(|g| self.apply_gate(g))
    }

    /// Amplitude of basis index `k`.
    pub fn amplitude(&self, k: u64) -> C64 {
        let mut sorted = self.entries.clone();
        sorted.sort_unstable_by_key(|e| e.0);
        sorted.binary_search_by_key(&k, |e| e.0).map(|i| sorted[i].1).unwrap_or_default()
    }

    /// Entries sorted by index.
    pub fn sorted_entries(&self) -> Vec<(u64, C64)> {
        let mut s = self.entries.clone();
        s.sort_unstable_by_key(|e| e.0);
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::dense::StateVector;

    #[test]
    fn matches_dense_on_mixed_circuit() {
        let mut c = Circuit::new(4);
        c.push_all([
            Gate::h(0),
            Gate::h(1),
            Gate::t(1),
            Gate::cnot(0, 2),
            Gate::toffoli(0, 1, 3),
            Gate::single(GateKind::Y, 2),
            Gate::crz(3, 2, 0.7),
            Gate::h(1),
            Gate::s(0),
            Gate::rz(3, -0.3),
        ])
        .unwrap();
        let mut dense = StateVector::zero(4).unwrap();
        for g in c.gates() {
            dense.apply_gate(g).unwrap();
        }
        let mut sparse = SparseState::basis(4, 0).unwrap();
        sparse.apply_circuit(&c).unwrap();
        for k in 0..16 {
            assert!((dense.amplitude(k) - sparse.amplitude(k as u64)).norm() < 1e-12);
        }
    }

    #[test]
    fn hadamard_pair_collapses() {
        let mut s = SparseState::basis(1, 0).unwrap();
        s.apply_gate(&Gate::h(0)).unwrap();
        assert_eq!(s.len(), 2);
        s.apply_gate(&Gate::h(0)).unwrap();
        assert_eq!(s.len(), 1);
        assert!((s.amplitude(0).re - 1.0).abs() < 1e-12);
    }
}
