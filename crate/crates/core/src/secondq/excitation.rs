//! Circuits for `exp(−i h (T + T†) δt)` of single integral terms.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::integrals::IntegralTable;
use super::pauli::{fermion_product, Pauli, PauliString};
use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::gate::{Gate, Qubit};
use crate::synth::{self, DEFAULT_SEARCH_LEN};
use crate::unitary::{wrap_angle, C64};

/// A fermionic term and the coefficient multiplying `T + T†` (or `T` when self-adjoint).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Term {
    /// `a_{i0}† a_{i1}` or `a_{i0}† a_{i1}† a_{i2} a_{i3}`.
    pub indices: Vec<usize>,
    pub coefficient: f64,
}

impl Term {
    fn conjugate_indices(&self) -> Vec<usize> {
        self.indices.iter().rev().copied().collect()
    }

    pub fn is_self_adjoint(&self) -> bool {
        self.indices == self.conjugate_indices()
    }

    fn ladder_ops(indices: &[usize]) -> Vec<(usize, bool)> {
        let half = indices.len() / 2;
        indices.iter().enumerate().map(|(i, &p)| (p, i < half)).collect()
    }

    /// Real Pauli coefficients of the hermitian term, identity included.
    pub fn pauli_terms(&self) -> Result<Vec<(PauliString, f64)>> {
        let t = fermion_product(&Self::ladder_ops(&self.indices))?;
        let op = if self.is_self_adjoint() { t } else { t.add(&t.adjoint()) };
        op.scale(C64::new(self.coefficient, 0.0)).pruned(1e-15).real_terms(1e-12)
    }

    pub fn max_index(&self) -> usize {
        self.indices.iter().copied().max().unwrap_or(0)
    }
}

/// One term per entry, merging an entry with its listed conjugate, sorted by
/// `|h|` descending then indices.
pub fn table_terms(table: &IntegralTable) -> Vec<Term> {
    let entries = table
        .one_body
        .iter()
        .map(|e| (vec![e.p, e.q], e.value))
        .chain(table.two_body.iter().map(|e| (e.idx.to_vec(), e.value)));
    let mut seen = HashSet::new();
    let mut terms = Vec::new();
    for (indices, value) in entries {
        let conj: Vec<usize> = indices.iter().rev().copied().collect();
        let key = indices.clone().min(conj);
        if seen.insert(key) {
            terms.push(Term { indices, coefficient: value });
        }
    }
    terms.sort_by(|a, b| b.coefficient.abs().total_cmp(&a.coefficient.abs()).then_with(|| a.indices.cmp(&b.indices)));
    terms
}

/// How the phase rotations in a built circuit are left.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum Synthesis {
    Placeholder,
    /// Approximate each rotation by `synth::approximate` at this accuracy.
    Sequence(f64),
}

/// Wires of a term circuit: orbitals `0..n`, then the control and its rotation ancilla.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TermLayout {
    pub orbitals: usize,
    pub control: Option<Qubit>,
    pub ancilla: Option<Qubit>,
}

impl TermLayout {
    pub fn new(orbitals: usize, controlled: bool) -> TermLayout {
        TermLayout {
            orbitals,
            control: controlled.then_some(orbitals),
            ancilla: controlled.then_some(orbitals + 1),
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.orbitals + 2 * self.control.is_some() as usize
    }
}

fn basis_in(q: Qubit, p: Pauli) -> Vec<Gate> {
    match p {
        Pauli::X => vec![Gate::h(q)],
        Pauli::Y => vec![Gate::sdg(q), Gate::h(q)],
        _ => vec![],
    }
}

fn basis_out(q: Qubit, p: Pauli) -> Vec<Gate> {
    match p {
        Pauli::X => vec![Gate::h(q)],
        Pauli::Y => vec![Gate::h(q), Gate::s(q)],
        _ => vec![],
    }
}

/// Append `exp(−iθP)` for every `(P, c)` with `θ = c δt`; returns the control phase owed.
fn emit_strings(c: &mut Circuit, strings: &[(PauliString, f64)], dt: f64, layout: TermLayout) -> Result<f64> {
    let mut control_phase = 0.0;
    for &(p, coeff) in strings {
        let theta = coeff * dt;
        if theta == 0.0 {
            continue;
        }
        // exp(−iθZ) = e^{−iθ} RZ(2θ)
        control_phase -= theta;
        if p.is_identity() {
            continue;
        }
        let support = p.support();
        let last = *support.last().expect("non-identity string");
        for &q in &support {
            c.push_all(basis_in(q, p.get(q)))?;
        }
        let ladder: Vec<Gate> = support.windows(2).map(|w| Gate::cnot(w[0], w[1])).collect();
        c.push_all(ladder.iter().cloned())?;
        match (layout.control, layout.ancilla) {
            (Some(t), Some(anc)) => {
                c.push(Gate::toffoli(t, last, anc))?;
                c.push(Gate::rz(anc, wrap_angle(2.0 * theta)))?;
                c.push(Gate::toffoli(t, last, anc))?;
            }
            _ => c.push(Gate::rz(last, wrap_angle(2.0 * theta)))?,
        }
        c.push_all(ladder.into_iter().rev())?;
        for &q in &support {
            c.push_all(basis_out(q, p.get(q)))?;
        }
    }
    Ok(control_phase)
}

fn finish(mut c: Circuit, control_phase: f64, layout: TermLayout, synthesis: Synthesis) -> Result<Circuit> {
    if let Some(t) = layout.control {
        let a = wrap_angle(control_phase);
        if a != 0.0 {
            c.push(Gate::rz(t, a))?;
        }
    }
    match synthesis {
        Synthesis::Placeholder => Ok(c),
        Synthesis::Sequence(eps) => Ok(synth::synthesize_rotations(&c, eps, DEFAULT_SEARCH_LEN)?.0),
    }
}

/// `exp(−i h (T + T†) δt)` on `n_orbitals` Jordan-Wigner qubits, optionally
/// controlled (rotations on a restored ancilla between two Toffolis).
pub fn build_excitation(term: &Term, n_orbitals: usize, dt: f64, controlled: bool, synthesis: Synthesis) -> Result<Circuit> {
    if term.max_index() >= n_orbitals {
        return Err(Error::IndexOutOfRange(format!("orbital {} of {n_orbitals}", term.max_index())));
    }
    let layout = TermLayout::new(n_orbitals, controlled);
    let mut c = Circuit::new(layout.n_qubits());
    let phase = emit_strings(&mut c, &term.pauli_terms()?, dt, layout)?;
    finish(c, phase, layout, synthesis)
}

/// One first-order Trotter step over every term of `table`, in `table_terms` order.
pub fn build_trotter_step(table: &IntegralTable, dt: f64, controlled: bool, synthesis: Synthesis) -> Result<Circuit> {
    let layout = TermLayout::new(table.n_orbitals, controlled);
    let mut c = Circuit::new(layout.n_qubits());
    let mut phase = 0.0;
    for term in table_terms(table) {
        if term.max_index() >= table.n_orbitals {
            return Err(Error::IndexOutOfRange(format!("orbital {} of {}", term.max_index(), table.n_orbitals)));
        }
        phase += emit_strings(&mut c, &term.pauli_terms()?, dt, layout)?;
    }
    finish(c, phase, layout, synthesis)
}

/// One-bit phase estimation: `H`, controlled step, `H`, measure the control into slot 0.
pub fn phase_estimation_bit(table: &IntegralTable, dt: f64, repetitions: usize) -> Result<Circuit> {
    let layout = TermLayout::new(table.n_orbitals, true);
    let control = layout.control.expect("controlled layout");
    let step = build_trotter_step(table, dt, true, Synthesis::Placeholder)?;
    let mut c = Circuit::new(layout.n_qubits());
    c.push(Gate::h(control))?;
    for _ in 0..repetitions {
        c.append(&step)?;
    }
    c.push(Gate::h(control))?;
    c.push(Gate::measure(control, 0))?;
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::secondq::integrals::parse_integrals;
    use crate::sim::{circuit_unitary, subspace_unitary, SparseState};
    use crate::unitary::{dist, Unitary};

    #[test]
    fn conjugate_entries_merge() {
        let t = parse_integrals("1 2 0.5\n2 1 0.5\n1 1 -1.0\n1 2 2 1 0.25\n").unwrap();
        let terms = table_terms(&t);
        assert_eq!(terms.len(), 3);
        assert_eq!(terms[0].indices, vec![0, 0]);
        assert!(terms[0].is_self_adjoint() && terms[2].is_self_adjoint());
        assert!(!terms[1].is_self_adjoint());
    }

    #[test]
    fn zero_term_is_identity() {
        let term = Term { indices: vec![0, 1], coefficient: 0.0 };
        let c = build_excitation(&term, 2, 0.3, false, Synthesis::Placeholder).unwrap();
        assert!(dist(&circuit_unitary(&c).unwrap(), &Unitary::identity(4)).unwrap() < 1e-7);
    }

    #[test]
    fn index_out_of_range() {
        let term = Term { indices: vec![0, 3], coefficient: 1.0 };
        assert!(matches!(build_excitation(&term, 3, 0.1, false, Synthesis::Placeholder), Err(Error::IndexOutOfRange(_))));
    }

    #[test]
    fn controlled_off_is_identity() {
        let term = Term { indices: vec![0, 1], coefficient: 0.7 };
        let c = build_excitation(&term, 2, 0.4, true, Synthesis::Placeholder).unwrap();
        // data: orbitals and the control; the ancilla must come back to zero
        let data = [0, 1, 2];
        let u = subspace_unitary(&c, &data, &SparseState::basis(4, 0).unwrap()).unwrap();
        for x in 0..4 {
            for y in 0..4 {
                let want = if x == y { 1.0 } else { 0.0 };
                assert!((u.get(y, x) - C64::new(want, 0.0)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn controlled_matches_uncontrolled_block() {
        let term = Term { indices: vec![0, 2, 1, 0], coefficient: -0.37 };
        let plain = circuit_unitary(&build_excitation(&term, 3, 0.9, false, Synthesis::Placeholder).unwrap()).unwrap();
        let c = build_excitation(&term, 3, 0.9, true, Synthesis::Placeholder).unwrap();
        let u = subspace_unitary(&c, &[0, 1, 2, 3], &SparseState::basis(5, 0).unwrap()).unwrap();
        // control is data bit 3, so its one-block is the lower-right 8×8
        let block: Vec<C64> = (0..64).map(|i| u.get(8 + i / 8, 8 + i % 8)).collect();
        let block = Unitary::from_row_slice(8, &block);
        assert!(dist(&block, &plain).unwrap() < 1e-7);
    }
}
