use std::collections::VecDeque;
use std::f64::consts::FRAC_1_SQRT_2;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::frame::PauliFrame;
use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::gate::{Gate, GateKind, Qubit};
use crate::unitary::{cis, C64};

/// Largest register the dense simulator accepts.
pub const SIM_QUBIT_CAP: usize = 22;

const NORM_TOL: f64 = 1e-9;

/// Dense state vector; basis index bit `q` is the value of qubit `q`.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    n: usize,
    amps: Vec<C64>,
}

fn check_cap(n: usize) -> Result<()> {
    if n > SIM_QUBIT_CAP {
        return Err(Error::QubitCap { requested: n, cap: SIM_QUBIT_CAP });
    }
    Ok(())
}

impl StateVector {
    pub fn zero(n: usize) -> Result<Self> {
        Self::basis(n, 0)
    }

    pub fn basis(n: usize, index: usize) -> Result<Self> {
        check_cap(n)?;
        if index >= 1 << n {
            return Err(Error::IndexOutOfRange(format!("basis index {index} for {n} qubits")));
        }
        let mut amps = vec![C64::new(0.0, 0.0); 1 << n];
        amps[index] = C64::new(1.0, 0.0);
        Ok(StateVector { n, amps })
    }

    pub fn from_amplitudes(n: usize, amps: Vec<C64>) -> Result<Self> {
        check_cap(n)?;
        if amps.len() != 1 << n {
            return Err(Error::DimensionMismatch(amps.len(), 1 << n));
        }
        let s = StateVector { n, amps };
        let norm = s.norm_sqr();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized(norm));
        }
        Ok(s)
    }

    /// Gaussian-sampled state, normalized.
    pub fn random<R: Rng>(n: usize, rng: &mut R) -> Result<Self> {
        check_cap(n)?;
        let mut amps: Vec<C64> = (0..1usize << n)
            .map(|_| C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        amps.iter_mut().for_each(|a| *a /= norm);
        Ok(StateVector { n, amps })
    }

    /// `(|0⟩ + e^{iφ}|1⟩)/√2`.
    pub fn phased_plus(phi: f64) -> Self {
        StateVector { n: 1, amps: vec![C64::new(FRAC_1_SQRT_2, 0.0), cis(phi) * FRAC_1_SQRT_2] }
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub fn amplitude(&self, index: usize) -> C64 {
        self.amps[index]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Result<C64> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(self.n, other.n));
        }
        Ok(self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum())
    }

    /// `self ⊗ high`, with `self` on the low qubits.
    pub fn tensor(&self, high: &StateVector) -> Result<StateVector> {
        let n = self.n + high.n;
        check_cap(n)?;
        let mut amps = Vec::with_capacity(1 << n);
        for h in &high.amps {
            for l in &self.amps {
                amps.push(l * h);
            }
        }
        Ok(StateVector { n, amps })
    }

    fn check_qubits(&self, qubits: &[Qubit]) -> Result<()> {
        match qubits.iter().find(|&&q| q >= self.n) {
            Some(q) => Err(Error::IndexOutOfRange(format!("qubit {q} of {}", self.n))),
            None => Ok(()),
        }
    }

    /// Apply a 2×2 matrix `[m00, m01, m10, m11]` to qubit `q`.
    pub fn apply_single(&mut self, q: Qubit, m: [C64; 4]) {
        let mask = 1usize << q;
        for base in (0..self.amps.len()).step_by(mask << 1) {
            for i in base..base + mask {
                let (a, b) = (self.amps[i], self.amps[i | mask]);
                self.amps[i] = m[0] * a + m[1] * b;
                self.amps[i | mask] = m[2] * a + m[3] * b;
            }
        }
    }

    fn apply_phase(&mut self, q: Qubit, phase: C64) {
        let mask = 1usize << q;
        for (i, a) in self.amps.iter_mut().enumerate() {
            if i & mask != 0 {
                *a *= phase;
            }
        }
    }

    fn apply_controlled_x(&mut self, controls: usize, target: Qubit) {
        let t = 1usize << target;
        for i in 0..self.amps.len() {
            if i & controls == controls && i & t == 0 {
                self.amps.swap(i, i | t);
            }
        }
    }

    pub fn apply_x(&mut self, q: Qubit) {
        self.apply_controlled_x(0, q);
    }

    pub fn apply_z(&mut self, q: Qubit) {
        self.apply_phase(q, C64::new(-1.0, 0.0));
    }

    /// Apply a unitary gate. Measurements and frame updates are rejected.
    pub fn apply_gate(&mut self, g: &Gate) -> Result<()> {
        let q = g.qubits();
        self.check_qubits(q)?;
        let i = C64::new(0.0, 1.0);
        let h = C64::new(FRAC_1_SQRT_2, 0.0);
        let o = C64::new(0.0, 0.0);
        match g.kind() {
            GateKind::X => self.apply_x(q[0]),
            GateKind::Y => self.apply_single(q[0], [o, -i, i, o]),
            GateKind::Z => self.apply_z(q[0]),
            GateKind::H => self.apply_single(q[0], [h, h, h, -h]),
            GateKind::S => self.apply_phase(q[0], i),
            GateKind::Sdg => self.apply_phase(q[0], -i),
            GateKind::T => self.apply_phase(q[0], cis(std::f64::consts::FRAC_PI_4)),
            GateKind::Tdg => self.apply_phase(q[0], cis(-std::f64::consts::FRAC_PI_4)),
            GateKind::Rz(a) => self.apply_phase(q[0], cis(*a)),
            GateKind::Cnot => self.apply_controlled_x(1 << q[0], q[1]),
            GateKind::Toffoli => self.apply_controlled_x((1 << q[0]) | (1 << q[1]), q[2]),
            GateKind::Crz(a) => {
                let mask = (1usize << q[0]) | (1usize << q[1]);
                let p = cis(*a);
                for (k, amp) in self.amps.iter_mut().enumerate() {
                    if k & mask == mask {
                        *amp *= p;
                    }
                }
            }
            GateKind::MeasureZ { .. } | GateKind::FrameUpdate { .. } => {
                return Err(Error::NonUnitary)
            }
        }
        Ok(())
    }

    pub fn probability_one(&self, q: Qubit) -> f64 {
        let mask = 1usize << q;
        self.amps.iter().enumerate().filter(|(i, _)| i & mask != 0).map(|(_, a)| a.norm_sqr()).sum()
    }

    /// Project qubit `q` onto `bit` and renormalize; returns the outcome probability.
    pub fn project(&mut self, q: Qubit, bit: bool) -> Result<f64> {
        self.check_qubits(&[q])?;
        let mask = 1usize << q;
        let p = if bit { self.probability_one(q) } else { 1.0 - self.probability_one(q) };
        if p <= 0.0 {
            return Err(Error::InvalidArgument(format!("outcome {} on qubit {q} has zero probability", bit as u8)));
        }
        let scale = 1.0 / p.sqrt();
        for (i, a) in self.amps.iter_mut().enumerate() {
            if ((i & mask) != 0) == bit {
                *a *= scale;
            } else {
                *a = C64::new(0.0, 0.0);
            }
        }
        Ok(p)
    }

    /// Drop qubit `q`, which must be in the basis state `bit`; higher qubits shift down.
    pub fn discard(&self, q: Qubit, bit: bool) -> Result<StateVector> {
        self.check_qubits(&[q])?;
        let mask = 1usize << q;
        let low = mask - 1;
        let mut amps = vec![C64::new(0.0, 0.0); self.amps.len() / 2];
        let mut leaked = 0.0;
        for (i, a) in self.amps.iter().enumerate() {
            if ((i & mask) != 0) == bit {
                amps[(i & low) | ((i >> 1) & !low)] = *a;
            } else {
                leaked += a.norm_sqr();
            }
        }
        if leaked > 1e-12 {
            return Err(Error::AncillaNotRestored(leaked));
        }
        Ok(StateVector { n: self.n - 1, amps })
    }
}

/// True iff `|⟨a|b⟩| ≥ 1 − tol`.
pub fn states_equal_up_to_phase(a: &StateVector, b: &StateVector, tol: f64) -> bool {
    a.inner(b).map(|o| o.norm() >= 1.0 - tol).unwrap_or(false)
}

/// How frame updates are handled during a run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum FrameMode {
    /// Record corrections classically, flushing them only before non-Clifford gates.
    #[default]
    Tracked,
    /// Apply every correction as a physical Pauli gate immediately.
    Explicit,
}

/// Result of one simulated run.
#[derive(Clone, Debug)]
pub struct RunOutput {
    pub state: StateVector,
    /// Logical measurement outcomes by slot; unmeasured slots read `false`.
    pub record: Vec<bool>,
    pub frame: PauliFrame,
}

impl RunOutput {
    /// State with the pending frame applied physically.
    pub fn corrected_state(&self) -> StateVector {
        let mut s = self.state.clone();
        for q in 0..self.frame.len() {
            if self.frame.z(q) {
                s.apply_z(q);
            }
            if self.frame.x(q) {
                s.apply_x(q);
            }
        }
        s
    }
}

/// Circuit runner holding the seeded measurement randomness.
pub struct Simulator {
    rng: ChaCha8Rng,
    forced: VecDeque<bool>,
    mode: FrameMode,
}

impl Simulator {
    pub fn new(seed: u64) -> Self {
        Simulator { rng: ChaCha8Rng::seed_from_u64(seed), forced: VecDeque::new(), mode: FrameMode::Tracked }
    }

    pub fn with_mode(mut self, mode: FrameMode) -> Self {
        self.mode = mode;
        self
    }

    /// Outcomes consumed, in order, by the next measurements instead of sampling.
    pub fn with_forced_outcomes(mut self, outcomes: &[bool]) -> Self {
        self.forced = outcomes.iter().copied().collect();
        self
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// Measure `q` in the Z basis, sampling by inverse CDF on the marginal.
    pub fn measure(&mut self, state: &mut StateVector, q: Qubit) -> Result<bool> {
        let p1 = state.probability_one(q);
        let bit = match self.forced.pop_front() {
            Some(b) => b,
            None => self.rng.random::<f64>() >= 1.0 - p1,
        };
        state.project(q, bit)?;
        Ok(bit)
    }

    pub fn run(&mut self, c: &Circuit, initial: &StateVector) -> Result<RunOutput> {
        if c.n_qubits() != initial.n_qubits() {
            return Err(Error::DimensionMismatch(c.n_qubits(), initial.n_qubits()));
        }
        check_cap(c.n_qubits())?;
        let norm = initial.norm_sqr();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized(norm));
        }
        let mut state = initial.clone();
        let mut frame = PauliFrame::identity(c.n_qubits());
        let mut record: Vec<bool> = Vec::new();
        for g in c.gates() {
            let q = g.qubits();
            match g.kind() {
                GateKind::MeasureZ { slot } => {
                    let flip = frame.x(q[0]);
                    if flip {
                        state.apply_x(q[0]);
                    }
                    let bit = self.measure(&mut state, q[0])?;
                    if flip {
                        state.apply_x(q[0]);
                    }
                    if record.len() <= *slot {
                        record.resize(slot + 1, false);
                    }
                    record[*slot] = bit;
                }
                GateKind::FrameUpdate { x_parity, z_parity } => {
                    let parity = |s: &[usize]| s.iter().fold(false, |acc, &i| acc ^ record.get(i).copied().unwrap_or(false));
                    let (px, pz) = (parity(x_parity), parity(z_parity));
                    match self.mode {
                        FrameMode::Tracked => {
                            if px {
                                frame.flip_x(q[0]);
                            }
                            if pz {
                                frame.flip_z(q[0]);
                            }
                        }
                        FrameMode::Explicit => {
                            if pz {
                                state.apply_z(q[0]);
                            }
                            if px {
                                state.apply_x(q[0]);
                            }
                        }
                    }
                }
                kind => {
                    if !frame.propagate(kind, q) {
                        for &b in q {
                            if frame.z(b) {
                                state.apply_z(b);
                            }
                            if frame.x(b) {
                                state.apply_x(b);
                            }
                            frame.clear(b);
                        }
                    }
                    state.apply_gate(g)?;
                }
            }
        }
        Ok(RunOutput { state, record, frame })
    }
}

/// Run `c` on `initial` with a fresh seeded simulator.
pub fn run(c: &Circuit, initial: &StateVector, seed: u64) -> Result<RunOutput> {
    Simulator::new(seed).run(c, initial)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hadamard_on_zero() {
        let mut c = Circuit::new(1);
        c.push(Gate::h(0)).unwrap();
        let out = run(&c, &StateVector::zero(1).unwrap(), 1).unwrap();
        assert!(states_equal_up_to_phase(&out.state, &StateVector::phased_plus(0.0), 1e-12));
    }

    #[test]
    fn cnot_makes_bell_state() {
        let plus = StateVector::phased_plus(0.0);
        let input = plus.tensor(&StateVector::zero(1).unwrap()).unwrap();
        let mut c = Circuit::new(2);
        c.push(Gate::cnot(0, 1)).unwrap();
        let out = run(&c, &input, 0).unwrap();
        let h = FRAC_1_SQRT_2;
        let bell = StateVector::from_amplitudes(
            2,
            vec![C64::new(h, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 0.0), C64::new(h, 0.0)],
        )
        .unwrap();
        assert!(states_equal_up_to_phase(&out.state, &bell, 1e-12));
    }

    #[test]
    fn equality_up_to_phase() {
        let a = StateVector::phased_plus(0.4);
        let mut b = a.clone();
        b.apply_single(0, [cis(1.1), C64::new(0.0, 0.0), C64::new(0.0, 0.0), cis(1.1)]);
        assert!(states_equal_up_to_phase(&a, &b, 1e-12));
        let zero = StateVector::zero(1).unwrap();
        let one = StateVector::basis(1, 1).unwrap();
        assert!(!states_equal_up_to_phase(&zero, &one, 1e-3));
    }

    #[test]
    fn cap_and_normalization_errors() {
        assert!(matches!(StateVector::zero(23), Err(Error::QubitCap { .. })));
        let bad = StateVector::from_amplitudes(1, vec![C64::new(1.0, 0.0), C64::new(1.0, 0.0)]);
        assert!(matches!(bad, Err(Error::NotNormalized(_))));
    }

    #[test]
    fn discard_and_tensor_inverse() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = StateVector::random(2, &mut rng).unwrap();
        let full = a.tensor(&StateVector::basis(1, 1).unwrap()).unwrap();
        let back = full.discard(2, true).unwrap();
        assert!(states_equal_up_to_phase(&a, &back, 1e-12));
        assert!(full.discard(2, false).is_err());
    }

    #[test]
    fn measurement_is_seeded() {
        let mut c = Circuit::new(1);
        c.push(Gate::h(0)).unwrap();
        c.push(Gate::measure(0, 0)).unwrap();
        let zero = StateVector::zero(1).unwrap();
        let a: Vec<bool> = (0..20).map(|s| run(&c, &zero, s).unwrap().record[0]).collect();
        let b: Vec<bool> = (0..20).map(|s| run(&c, &zero, s).unwrap().record[0]).collect();
        assert_eq!(a, b);
    }
}
