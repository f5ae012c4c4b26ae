//! Programmable ancilla rotations: a cascade of teleported rotations driven by
//! pre-built phase ancillas, with a deterministic fallback.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::gate::{Gate, GateKind, Qubit};
use crate::kickback::{bits_for_accuracy, kickback_phase, solve_mod, GammaRegister};
use crate::resource::ResourceProfile;
use crate::sim::{Simulator, StateVector};
use crate::synth::{self, DEFAULT_SEARCH_LEN};
use crate::unitary::wrap_angle;

/// How ancilla rotations (and the fallback) are realized.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PrepMethod {
    Exact,
    /// Phase kickback; simulated as the exact rotation by the register-quantized angle.
    Kickback,
    Sequence,
}

/// Realize `RZ(angle)` (or `CRZ` when `control` is given) on a small local circuit.
#[derive(Clone, Copy, Debug)]
struct RotationRecipe {
    method: PrepMethod,
    epsilon: f64,
}

impl RotationRecipe {
    fn quantized(&self, angle: f64) -> f64 {
        let n = bits_for_accuracy(self.epsilon);
        let reg = GammaRegister::new(1, n).expect("k = 1 is odd");
        let u = solve_mod(1, n, angle).expect("k = 1 is invertible");
        kickback_phase(reg, u)
    }

    /// Circuit on `n` qubits rotating `target`, controlled by `control` if set.
    fn circuit(&self, n: usize, target: Qubit, control: Option<Qubit>, angle: f64) -> Result<Circuit> {
        let angle = wrap_angle(angle);
        let mut c = Circuit::new(n);
        match (self.method, control) {
            (PrepMethod::Exact, None) => c.push(Gate::rz(target, angle))?,
            (PrepMethod::Exact, Some(ctl)) => c.push(Gate::crz(ctl, target, angle))?,
            (PrepMethod::Kickback, None) => c.push(Gate::rz(target, self.quantized(angle)))?,
            (PrepMethod::Kickback, Some(ctl)) => c.push(Gate::crz(ctl, target, self.quantized(angle)))?,
            (PrepMethod::Sequence, _) => {
                let mut raw = Circuit::new(n);
                match control {
                    None => raw.push(Gate::rz(target, angle))?,
                    Some(ctl) => raw.push(Gate::crz(ctl, target, angle))?,
                }
                let raw = synth::lower_crz(&raw)?;
                let budget = if control.is_some() { self.epsilon / 3.0 } else { self.epsilon };
                c = synth::synthesize_rotations(&raw, budget, DEFAULT_SEARCH_LEN)?.0;
            }
        }
        Ok(c)
    }
}

/// Ancillas `(|0⟩ + e^{i 2^{j−1} φ}|1⟩)/√2` for `j = 1..=count`.
#[derive(Clone, Debug)]
pub struct ParAncillaSet {
    base_angle: f64,
    angles: Vec<f64>,
    method: PrepMethod,
    epsilon: f64,
    controlled: bool,
}

impl ParAncillaSet {
    pub fn base_angle(&self) -> f64 {
        self.base_angle
    }

    pub fn count(&self) -> usize {
        self.angles.len()
    }

    pub fn method(&self) -> PrepMethod {
        self.method
    }

    pub fn is_controlled(&self) -> bool {
        self.controlled
    }

    /// Nominal phase of ancilla `j` (1-based), reduced to `[0, 2π)`.
    pub fn phase(&self, j: usize) -> f64 {
        self.angles[j - 1]
    }

    pub fn phases(&self) -> &[f64] {
        &self.angles
    }

    fn recipe(&self) -> RotationRecipe {
        RotationRecipe { method: self.method, epsilon: self.epsilon }
    }

    /// Preparation circuit for ancilla `j`: qubit 0 is the ancilla, qubit 1 the control.
    pub fn prep_circuit(&self, j: usize) -> Result<Circuit> {
        if j == 0 || j > self.count() {
            return Err(Error::IndexOutOfRange(format!("ancilla {j} of {}", self.count())));
        }
        let n = 1 + self.controlled as usize;
        let mut c = Circuit::new(n);
        c.push(Gate::h(0))?;
        c.append(&self.recipe().circuit(n, 0, self.controlled.then_some(1), self.phase(j))?)?;
        Ok(c)
    }

    /// The prepared single-qubit state of an uncontrolled ancilla.
    pub fn ancilla_state(&self, j: usize) -> Result<StateVector> {
        if self.controlled {
            return Err(Error::InvalidArgument("controlled ancillas are entangled with the control".into()));
        }
        let c = self.prep_circuit(j)?;
        Ok(crate::sim::run(&c, &StateVector::zero(1)?, 0)?.state)
    }
}

/// Prepare `count` doubling-phase ancillas for `phi`, each to accuracy `epsilon_each`.
pub fn prepare_ancillas(phi: f64, count: usize, method: PrepMethod, epsilon_each: f64, controlled: bool) -> Result<ParAncillaSet> {
    if count == 0 {
        return Err(Error::InvalidArgument("at least one ancilla is required".into()));
    }
    if method != PrepMethod::Exact && !(epsilon_each > 0.0) {
        return Err(Error::InvalidArgument(format!("epsilon must be positive, got {epsilon_each}")));
    }
    let mut angles = Vec::with_capacity(count);
    let mut a = wrap_angle(phi);
    for _ in 0..count {
        angles.push(a);
        a = wrap_angle(2.0 * a);
    }
    Ok(ParAncillaSet { base_angle: wrap_angle(phi), angles, method, epsilon: epsilon_each, controlled })
}

/// Outcome of one cascade.
#[derive(Clone, Debug)]
pub struct ParOutcome {
    pub state: StateVector,
    pub rounds_used: usize,
    pub fallback_used: bool,
    pub outcomes: Vec<bool>,
}

/// Apply a PAR of `set` to `target` (controlled by `control` when the set is controlled).
///
/// Each round borrows a fresh ancilla qubit, entangles it with a CNOT from the target
/// and measures it. Outcome 0 is success. Outcome 1 leaves `R_Z(−θ)` and doubles the
/// remaining angle, which the next ancilla provides.
pub fn execute_par(
    state: &StateVector,
    target: Qubit,
    control: Option<Qubit>,
    set: &ParAncillaSet,
    sim: &mut Simulator,
) -> Result<ParOutcome> {
    if control.is_some() != set.controlled {
        return Err(Error::InvalidArgument("control qubit must be given exactly for controlled sets".into()));
    }
    let n = state.n_qubits();
    let anc = n;
    let mut s = state.clone();
    let mut outcomes = Vec::new();
    let mut success = None;
    for j in 1..=set.count() {
        let mut wide = s.tensor(&StateVector::zero(1)?)?;
        let prep = set.prep_circuit(j)?;
        let map: Vec<Qubit> = std::iter::once(anc).chain(control).collect();
        let mut local = Circuit::new(n + 1);
        local.append_mapped(&prep, &map)?;
        local.push(Gate::cnot(target, anc))?;
        for g in local.gates() {
            wide.apply_gate(g)?;
        }
        let bit = sim.measure(&mut wide, anc)?;
        outcomes.push(bit);
        s = wide.discard(anc, bit)?;
        if !bit {
            success = Some(j);
            break;
        }
    }
    let rounds = success.unwrap_or(set.count());
    let recipe = set.recipe();
    let phi = set.base_angle;
    if success.is_none() {
        let residual = 2f64.powi(set.count() as i32) * phi;
        for g in recipe.circuit(n, target, control, residual)?.gates() {
            s.apply_gate(g)?;
        }
    }
    if let Some(ctl) = control {
        // failed rounds each left e^{iθ} on the control-one branch
        let failed: f64 = set.angles[..rounds - success.is_some() as usize].iter().sum();
        for g in recipe.circuit(n, ctl, None, -failed)?.gates() {
            s.apply_gate(g)?;
        }
    }
    Ok(ParOutcome { state: s, rounds_used: rounds, fallback_used: success.is_none(), outcomes })
}

/// `Σ_{m=1}^{M} m 2^{−m} + M 2^{−M}`; unbounded `M` gives 2.
pub fn expected_rounds(m: Option<usize>) -> f64 {
    match m {
        None => 2.0,
        Some(m) => (1..=m).map(|k| k as f64 / 2f64.powi(k as i32)).sum::<f64>() + m as f64 / 2f64.powi(m as i32),
    }
}

/// Seeded Monte Carlo summary.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParStats {
    pub trials: usize,
    pub mean_rounds: f64,
    pub fallback_rate: f64,
    /// Round count to number of trials.
    pub histogram: BTreeMap<usize, usize>,
}

/// Run `trials` cascades of `RZ(phi)` on `|+⟩` with exact ancillas.
pub fn simulate_statistics(phi: f64, count: usize, trials: usize, seed: u64) -> Result<ParStats> {
    if trials == 0 {
        return Err(Error::InvalidArgument("at least one trial is required".into()));
    }
    let set = prepare_ancillas(phi, count, PrepMethod::Exact, 0.0, false)?;
    let input = StateVector::phased_plus(0.0);
    let mut sim = Simulator::new(seed);
    let mut histogram = BTreeMap::new();
    let (mut total, mut fallbacks) = (0usize, 0usize);
    for _ in 0..trials {
        let out = execute_par(&input, 0, None, &set, &mut sim)?;
        total += out.rounds_used;
        fallbacks += out.fallback_used as usize;
        *histogram.entry(out.rounds_used).or_insert(0) += 1;
    }
    Ok(ParStats {
        trials,
        mean_rounds: total as f64 / trials as f64,
        fallback_rate: fallbacks as f64 / trials as f64,
        histogram,
    })
}

/// Expected online cost of one PAR: two gates per round, rounds per `expected_rounds`.
pub fn par_online_profile(count: Option<usize>) -> ResourceProfile {
    let rounds = expected_rounds(count);
    let depth = (2.0 * rounds).round() as u64;
    ResourceProfile { depth, t_count: 0, total_gates: depth, qubits: 2 }
}

/// Offline cost of preparing `set` (summed over ancillas, which may run in parallel).
pub fn preparation_profile(set: &ParAncillaSet) -> Result<ResourceProfile> {
    let mut p = ResourceProfile::ZERO;
    for j in 1..=set.count() {
        let c = set.prep_circuit(j)?;
        let is_rz = |g: &Gate| matches!(g.kind(), GateKind::Rz(_) | GateKind::Crz(_));
        let placeholders = c.gates().filter(|g| is_rz(g)).count() as u64;
        p = p.beside(c.profile()).with_qubits(p.qubits + c.n_qubits() as u64);
        if placeholders > 0 && set.method == PrepMethod::Kickback {
            let bits = bits_for_accuracy(set.epsilon);
            let reg = GammaRegister::new(1, bits)?;
            let spec = crate::kickback::AdderSpec::ripple(bits, true);
            let k = crate::kickback::kickback_profile(set.phase(j), reg, set.controlled, spec)?;
            p = ResourceProfile { t_count: p.t_count + k.t_count, ..p };
        }
    }
    Ok(p)
}
