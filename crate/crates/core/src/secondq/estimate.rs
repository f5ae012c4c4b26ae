//! Resource estimates for phase estimation over Trotter steps of a term table.

use serde::{Deserialize, Serialize};

use super::excitation::table_terms;
use super::integrals::IntegralTable;
use super::ladder::{build_jw_ladder, LadderMode};
use super::pauli::Pauli;
use crate::circuit::{toffoli_network, Circuit};
use crate::cost::{CostModel, RotationCost, RotationMethod};
use crate::error::{Error, Result};
use crate::resource::ResourceProfile;

/// Phase-estimation run: `2^n − 1` controlled Trotter steps for `n` readout bits.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrotterPlan {
    pub dt: f64,
    pub readout_bits: u32,
    pub method: RotationMethod,
    /// Accuracy of each rotation.
    pub epsilon: f64,
    pub seconds_per_gate: f64,
    pub ladder: LadderMode,
}

impl TrotterPlan {
    pub fn new(dt: f64, readout_bits: u32, method: RotationMethod, epsilon: f64) -> TrotterPlan {
        TrotterPlan { dt, readout_bits, method, epsilon, seconds_per_gate: 1e-3, ladder: LadderMode::Teleported }
    }

    pub fn steps(&self) -> u64 {
        (1u64 << self.readout_bits) - 1
    }

    fn validate(&self) -> Result<()> {
        if self.readout_bits == 0 || self.readout_bits > 62 {
            return Err(Error::InvalidArgument(format!("readout bits {} outside 1..=62", self.readout_bits)));
        }
        if !self.dt.is_finite() || !(self.seconds_per_gate >= 0.0) {
            return Err(Error::InvalidArgument("dt and seconds per gate must be finite and non-negative".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SecondQuantEstimate {
    pub method: RotationMethod,
    pub epsilon: f64,
    pub steps: u64,
    pub terms: usize,
    pub rotations_per_step: u64,
    pub per_step: ResourceProfile,
    pub total: ResourceProfile,
    /// Depth spent inside phase rotations, over the whole run.
    pub rotation_depth: u64,
    /// Everything else: basis changes, ladders, Toffoli networks.
    pub clifford_depth: u64,
    /// T gates spent producing PAR ancillas ahead of time.
    pub offline_t_count: u64,
    pub wall_clock_seconds: f64,
    /// Some rotation cost came from the fitted lines rather than a search.
    pub fit_used: bool,
}

#[derive(Default)]
struct Tally {
    rotation: ResourceProfile,
    other: ResourceProfile,
    rotations: u64,
    offline_t: u64,
    ancillas: u64,
    fit_used: bool,
}

impl Tally {
    fn rotate(&mut self, c: RotationCost) {
        self.rotation = self.rotation.then(c.profile);
        self.rotations += 1;
        self.offline_t += c.offline.t_count;
        self.ancillas = self.ancillas.max(c.profile.qubits);
        self.fit_used |= c.from_fit;
    }

    fn clifford(&mut self, depth: u64, t_count: u64, gates: u64) {
        self.other = self.other.then(ResourceProfile { depth, t_count, total_gates: gates, qubits: 0 });
    }
}

fn circuit_counts(c: &Circuit) -> (u64, u64, u64) {
    let p = c.profile();
    (p.depth, p.t_count, p.total_gates)
}

/// Compose per-term costs into one controlled step and scale by the step count.
///
/// Controlled rotations use a Toffoli pair around one rotation on an ancilla, except
/// for sequence-based methods, which use two CNOTs and two rotations at `ε/2`.
pub fn estimate_second_quantized(table: &IntegralTable, plan: &TrotterPlan) -> Result<SecondQuantEstimate> {
    plan.validate()?;
    let steps = plan.steps();
    let merged = plan.method.is_sequence_based();
    let model = CostModel::new(plan.method, if merged { plan.epsilon / 2.0 } else { plan.epsilon })?;
    let control_model = CostModel::new(plan.method, plan.epsilon)?;
    let mut toffoli = Circuit::new(3);
    toffoli.push_all(toffoli_network(0, 1, 2))?;
    let (tof_depth, tof_t, tof_gates) = circuit_counts(&toffoli);

    let terms = table_terms(table);
    let mut tally = Tally::default();
    let mut widest = 0usize;
    for term in &terms {
        if term.max_index() >= table.n_orbitals {
            return Err(Error::IndexOutOfRange(format!("orbital {} of {}", term.max_index(), table.n_orbitals)));
        }
        let mut control_phase = 0.0;
        for (p, coeff) in term.pauli_terms()? {
            let theta = coeff * plan.dt;
            if theta == 0.0 {
                continue;
            }
            if p.is_identity() {
                control_phase -= theta;
                continue;
            }
            if !merged {
                control_phase -= theta;
            }
            let support = p.support();
            widest = widest.max(support.len());
            let basis = support.iter().map(|&q| match p.get(q) {
                Pauli::Y => 2u64,
                Pauli::X => 1,
                _ => 0,
            });
            let basis_depth = basis.clone().max().unwrap_or(0);
            let basis_gates: u64 = basis.sum();
            tally.clifford(2 * basis_depth, 0, 2 * basis_gates);
            if support.len() >= 2 {
                let (d, t, g) = circuit_counts(&build_jw_ladder(support.len(), plan.ladder)?);
                tally.clifford(2 * d, 2 * t, 2 * g);
            }
            if merged {
                tally.clifford(2, 0, 2);
                tally.rotate(model.rotation(theta)?);
                tally.rotate(model.rotation(-theta)?);
            } else {
                tally.clifford(2 * tof_depth, 2 * tof_t, 2 * tof_gates);
                tally.rotate(model.rotation(2.0 * theta)?);
            }
        }
        if control_phase != 0.0 {
            tally.rotate(control_model.rotation(control_phase)?);
        }
    }

    let ladder_ancillas = match plan.ladder {
        LadderMode::Teleported if widest >= 3 => 2 * (widest as u64 - 2),
        _ => 0,
    };
    let qubits = if terms.is_empty() {
        0
    } else {
        table.n_orbitals as u64 + 1 + (!merged) as u64 + ladder_ancillas + tally.ancillas
    };
    let per_step = tally.other.then(tally.rotation).with_qubits(qubits);
    let total = per_step.repeated(steps).with_qubits(qubits);
    Ok(SecondQuantEstimate {
        method: plan.method,
        epsilon: plan.epsilon,
        steps,
        terms: terms.len(),
        rotations_per_step: tally.rotations,
        per_step,
        total,
        rotation_depth: tally.rotation.depth * steps,
        clifford_depth: tally.other.depth * steps,
        offline_t_count: tally.offline_t * steps,
        wall_clock_seconds: total.depth as f64 * plan.seconds_per_gate,
        fit_used: tally.fit_used,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::secondq::integrals::parse_integrals;

    fn toy() -> IntegralTable {
        parse_integrals("orbitals 5\n1 1 -1.2\n1 3 0.3\n2 5 0.1\n1 2 3 4 0.05\n2 2 2 2 0.4\n").unwrap()
    }

    #[test]
    fn empty_table_is_free() {
        let e = estimate_second_quantized(&IntegralTable::default(), &TrotterPlan::new(0.1, 4, RotationMethod::Par, 1e-3))
            .unwrap();
        assert_eq!(e.total, ResourceProfile::ZERO);
    }

    #[test]
    fn par_rotations_cost_four_each() {
        let e = estimate_second_quantized(&toy(), &TrotterPlan::new(0.1, 3, RotationMethod::Par, 1e-3)).unwrap();
        assert_eq!(e.rotation_depth, 4 * e.rotations_per_step * e.steps);
    }

    #[test]
    fn steps_scale_with_readout_bits() {
        let t = toy();
        let a = estimate_second_quantized(&t, &TrotterPlan::new(0.1, 4, RotationMethod::Kickback, 1e-3)).unwrap();
        let b = estimate_second_quantized(&t, &TrotterPlan::new(0.1, 5, RotationMethod::Kickback, 1e-3)).unwrap();
        assert_eq!(a.steps, 15);
        assert_eq!(b.total.depth * 15, a.total.depth * 31);
    }

    #[test]
    fn teleported_depth_ignores_register_width() {
        let narrow = parse_integrals("orbitals 4\n1 4 0.3\n").unwrap();
        let wide = parse_integrals("orbitals 9\n1 9 0.3\n").unwrap();
        let plan = TrotterPlan::new(0.2, 2, RotationMethod::Par, 1e-3);
        let a = estimate_second_quantized(&narrow, &plan).unwrap();
        let b = estimate_second_quantized(&wide, &plan).unwrap();
        assert_eq!(a.total.depth, b.total.depth);
        let direct = TrotterPlan { ladder: LadderMode::Direct, ..plan };
        assert!(
            estimate_second_quantized(&wide, &direct).unwrap().total.depth
                > estimate_second_quantized(&narrow, &direct).unwrap().total.depth
        );
    }

    #[test]
    fn wall_clock_uses_gate_time() {
        let mut plan = TrotterPlan::new(0.1, 2, RotationMethod::Par, 1e-3);
        plan.seconds_per_gate = 2.0;
        let e = estimate_second_quantized(&toy(), &plan).unwrap();
        assert_eq!(e.wall_clock_seconds, 2.0 * e.total.depth as f64);
    }
}
