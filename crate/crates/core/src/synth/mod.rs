//! Gate-approximation sequences: exhaustive minimal search and Solovay-Kitaev.

pub mod gates;
pub mod net;
pub mod sk;

pub use gates::{compose, Mat2, SqGate};
pub use net::{build_net, min_sequence, GateSequence, SequenceDb, DEFAULT_SEARCH_LEN, MAX_NET_LEN};
pub use sk::solovay_kitaev;

use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::gate::{Gate, GateKind};
use crate::unitary::{rz_matrix, Unitary};

/// Deepest Solovay-Kitaev recursion tried by `approximate`.
pub const MAX_SK_LEVEL: usize = 6;

/// Minimal sequence within `max_len` if one reaches `epsilon`, otherwise the
/// shallowest Solovay-Kitaev level that does (seeded from the same net).
pub fn approximate(target: &Unitary, epsilon: f64, max_len: usize) -> Result<GateSequence> {
    let db = SequenceDb::shared(max_len)?;
    let best = net::min_sequence_in(&db, target, epsilon, max_len)?;
    if best.satisfied {
        return Ok(best);
    }
    let mut seq = best;
    for level in 1..=MAX_SK_LEVEL {
        seq = solovay_kitaev(target, level, &db)?;
        if seq.achieved_distance <= epsilon {
            break;
        }
    }
    seq.satisfied = seq.achieved_distance <= epsilon;
    Ok(seq)
}

/// Rewrite each `CRZ(θ)` as `RZ(θ/2)` on both wires around a CNOT-conjugated `RZ(−θ/2)`.
pub fn lower_crz(c: &Circuit) -> Result<Circuit> {
    let mut out = Circuit::new(c.n_qubits());
    if let Some(l) = c.output_layout() {
        out.set_output_layout(l.to_vec())?;
    }
    for g in c.gates() {
        match (g.kind(), g.qubits()) {
            (GateKind::Crz(theta), &[ctl, t]) => out.push_all([
                Gate::rz(ctl, theta / 2.0),
                Gate::rz(t, theta / 2.0),
                Gate::cnot(ctl, t),
                Gate::rz(t, -theta / 2.0),
                Gate::cnot(ctl, t),
            ])?,
            _ => out.push(g.clone())?,
        }
    }
    Ok(out)
}

/// Replace every `RZ` placeholder with a sequence at accuracy `epsilon` (see `approximate`).
///
/// Returns the rewritten circuit and the largest per-rotation distance achieved.
/// `CRZ` placeholders must be lowered beforehand.
pub fn synthesize_rotations(c: &Circuit, epsilon: f64, max_len: usize) -> Result<(Circuit, f64)> {
    let mut out = Circuit::new(c.n_qubits());
    if let Some(l) = c.output_layout() {
        out.set_output_layout(l.to_vec())?;
    }
    let mut worst: f64 = 0.0;
    for g in c.gates() {
        match g.kind() {
            GateKind::Rz(phi) => {
                let s = approximate(&rz_matrix(*phi), epsilon, max_len)?;
                worst = worst.max(s.achieved_distance);
                out.push_all(s.to_gates(g.qubits()[0]))?;
            }
            GateKind::Crz(_) => {
                return Err(Error::InvalidGate("CRZ must be lowered before synthesis".into()))
            }
            _ => out.push(g.clone())?,
        }
    }
    out.mark_fault_tolerant()?;
    Ok((out, worst))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::circuit_unitary;
    use crate::unitary::{crz_matrix, dist};

    #[test]
    fn lowered_crz_is_exact() {
        let mut c = Circuit::new(2);
        c.push(Gate::crz(1, 0, 0.7)).unwrap();
        let u = circuit_unitary(&lower_crz(&c).unwrap()).unwrap();
        assert!(dist(&u, &crz_matrix(0.7)).unwrap() < 1e-7);
    }

    #[test]
    fn approximate_falls_back_to_recursion() {
        let target = rz_matrix(0.123);
        let s = approximate(&target, 1e-3, 10).unwrap();
        assert!(s.satisfied);
        assert!(s.achieved_distance <= 1e-3);
    }
}
