use std::sync::OnceLock;

use crate::circuit::{toffoli_network, Circuit};
use crate::error::{Error, Result};
use crate::gate::{Gate, Qubit};
use crate::resource::ResourceProfile;

/// One bit of an addend: folded in as a constant or read from a qubit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AddendBit {
    Const(bool),
    Qubit(Qubit),
}

impl AddendBit {
    fn is_zero(self) -> bool {
        self == AddendBit::Const(false)
    }
}

/// Little-endian constant addend bits.
pub fn const_bits(value: u64, width: usize) -> Vec<AddendBit> {
    (0..width).map(|i| AddendBit::Const(i < 64 && (value >> i) & 1 == 1)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AdderKind {
    RippleCarry,
    /// Counts-only model of a logarithmic-depth carry-lookahead adder.
    LookaheadModel,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AdderSpec {
    pub kind: AdderKind,
    pub width: usize,
    pub controlled: bool,
}

impl AdderSpec {
    pub fn ripple(width: usize, controlled: bool) -> Self {
        AdderSpec { kind: AdderKind::RippleCarry, width, controlled }
    }
}

/// A constant adder built on the layout: target `0..n`, carries `n..2n-1`,
/// then the control qubit when the spec is controlled.
#[derive(Clone, Debug)]
pub struct AdderCircuit {
    pub circuit: Circuit,
    pub target: Vec<Qubit>,
    pub carries: Vec<Qubit>,
    pub control: Option<Qubit>,
}

#[derive(Clone, Debug)]
pub enum AdderOutput {
    Circuit(AdderCircuit),
    Profile(ResourceProfile),
}

/// Carry ancillas needed to add into `width` target bits.
pub fn carry_count(width: usize) -> usize {
    width.saturating_sub(1)
}

fn carry_gates(a: AddendBit, b: Qubit, carry_in: Option<Qubit>, carry_out: Qubit) -> Vec<Gate> {
    match (a, carry_in) {
        (AddendBit::Const(false), None) => Vec::new(),
        (AddendBit::Const(false), Some(c)) => vec![Gate::toffoli(b, c, carry_out)],
        (AddendBit::Const(true), None) => vec![Gate::cnot(b, carry_out)],
        (AddendBit::Const(true), Some(c)) => vec![
            Gate::x(b),
            Gate::x(c),
            Gate::toffoli(b, c, carry_out),
            Gate::x(carry_out),
            Gate::x(b),
            Gate::x(c),
        ],
        (AddendBit::Qubit(q), None) => vec![Gate::toffoli(q, b, carry_out)],
        // MAJ(a, b, c) = (a ⊕ c)(b ⊕ c) ⊕ c
        (AddendBit::Qubit(q), Some(c)) => vec![
            Gate::cnot(c, q),
            Gate::cnot(c, b),
            Gate::toffoli(q, b, carry_out),
            Gate::cnot(c, carry_out),
            Gate::cnot(c, q),
            Gate::cnot(c, b),
        ],
    }
}

fn xor_into(src: Option<Qubit>, constant: bool, b: Qubit, control: Option<Qubit>, out: &mut Vec<Gate>) {
    match (src, constant, control) {
        (Some(q), _, None) => out.push(Gate::cnot(q, b)),
        (Some(q), _, Some(k)) => out.push(Gate::toffoli(k, q, b)),
        (None, true, None) => out.push(Gate::x(b)),
        (None, true, Some(k)) => out.push(Gate::cnot(k, b)),
        (None, false, _) => {}
    }
}

/// Emit `target += addend (mod 2^len)` as a ripple-carry network, optionally
/// controlled. Low bits whose addend is a constant zero are skipped while no
/// carry exists, so an all-zero constant emits nothing. Carries start and end at zero.
pub fn emit_add(
    c: &mut Circuit,
    target: &[Qubit],
    addend: &[AddendBit],
    carries: &[Qubit],
    control: Option<Qubit>,
) -> Result<()> {
    if addend.len() != target.len() {
        return Err(Error::DimensionMismatch(addend.len(), target.len()));
    }
    let Some(start) = addend.iter().position(|a| !a.is_zero()) else {
        return Ok(());
    };
    let b = &target[start..];
    let a = &addend[start..];
    let w = b.len();
    if carries.len() < carry_count(w) {
        return Err(Error::DimensionMismatch(carries.len(), carry_count(w)));
    }
    // carry into bit i lives on carries[i - 1]; None while provably zero
    let mut carry_in: Vec<Option<Qubit>> = vec![None; w];
    let mut steps: Vec<Vec<Gate>> = Vec::with_capacity(w);
    for i in 0..w.saturating_sub(1) {
        let g = carry_gates(a[i], b[i], carry_in[i], carries[i]);
        if !g.is_empty() {
            carry_in[i + 1] = Some(carries[i]);
        }
        c.push_all(g.iter().cloned())?;
        steps.push(g);
    }
    let sum = |i: usize, c: &mut Circuit| -> Result<()> {
        let mut g = Vec::new();
        match a[i] {
            AddendBit::Qubit(q) => xor_into(Some(q), false, b[i], control, &mut g),
            AddendBit::Const(v) => xor_into(None, v, b[i], control, &mut g),
        }
        if let Some(ci) = carry_in[i] {
            xor_into(Some(ci), false, b[i], control, &mut g);
        }
        c.push_all(g)
    };
    sum(w - 1, c)?;
    for i in (0..w - 1).rev() {
        c.push_all(steps[i].iter().rev().cloned())?;
        sum(i, c)?;
    }
    Ok(())
}

/// Build a constant adder for `addend`, or a count profile for the lookahead model.
pub fn build_adder(spec: AdderSpec, addend: u64) -> Result<AdderOutput> {
    let n = spec.width;
    if n == 0 || n > 63 || addend >> n != 0 {
        return Err(Error::AddendOutOfRange { addend, width: n });
    }
    match spec.kind {
        AdderKind::LookaheadModel => Ok(AdderOutput::Profile(lookahead_profile(n, spec.controlled))),
        AdderKind::RippleCarry => {
            let target: Vec<Qubit> = (0..n).collect();
            let carries: Vec<Qubit> = (n..n + carry_count(n)).collect();
            let control = spec.controlled.then_some(n + carry_count(n));
            let mut circuit = Circuit::new(n + carry_count(n) + spec.controlled as usize);
            emit_add(&mut circuit, &target, &const_bits(addend, n), &carries, control)?;
            Ok(AdderOutput::Circuit(AdderCircuit { circuit, target, carries, control }))
        }
    }
}

fn toffoli_depth() -> u64 {
    static DEPTH: OnceLock<u64> = OnceLock::new();
    *DEPTH.get_or_init(|| {
        let mut c = Circuit::new(3);
        c.push_all(toffoli_network(0, 1, 2)).expect("three qubits");
        c.depth() as u64
    })
}

/// Out-of-place carry-lookahead counts: `4⌊log₂ n⌋ + 3` Toffoli layers and
/// `10n − 3w(n) − 3⌊log₂ n⌋ − 7` Toffolis, `w` the Hamming weight of `n`.
pub fn lookahead_profile(width: usize, controlled: bool) -> ResourceProfile {
    let n = width.max(1) as u64;
    let log = 63 - n.leading_zeros() as u64;
    let weight = n.count_ones() as u64;
    let toffolis = (10 * n).saturating_sub(3 * weight + 3 * log + 7).max(1) + if controlled { n } else { 0 };
    let layers = 4 * log + 3 + controlled as u64;
    ResourceProfile {
        depth: layers * toffoli_depth() + 2,
        t_count: 7 * toffolis,
        total_gates: 15 * toffolis + 2 * n,
        qubits: 2 * n + (n - weight - log) + controlled as u64,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::SparseState;

    fn add_classically(c: &Circuit, input: u64) -> u64 {
        let mut s = SparseState::basis(c.n_qubits(), input).unwrap();
        s.apply_circuit(c).unwrap();
        assert_eq!(s.len(), 1);
        s.entries()[0].0
    }

    #[test]
    fn zero_addend_is_empty() {
        let AdderOutput::Circuit(a) = build_adder(AdderSpec::ripple(5, false), 0).unwrap() else { panic!() };
        assert!(a.circuit.is_empty());
    }

    #[test]
    fn six_plus_three_mod_eight() {
        let AdderOutput::Circuit(a) = build_adder(AdderSpec::ripple(3, false), 3).unwrap() else { panic!() };
        assert_eq!(add_classically(&a.circuit, 6), 1);
    }

    #[test]
    fn exhaustive_width_six() {
        let n = 6;
        for addend in 0..64u64 {
            for ctrl in [false, true] {
                let AdderOutput::Circuit(a) = build_adder(AdderSpec::ripple(n, ctrl), addend).unwrap() else {
                    panic!()
                };
                for x in 0..64u64 {
                    let input = x | if ctrl { 1 << a.control.unwrap() } else { 0 };
                    let out = add_classically(&a.circuit, input);
                    let expect = if ctrl { ((x + addend) % 64) | (1 << a.control.unwrap()) } else { (x + addend) % 64 };
                    assert_eq!(out, expect, "x={x} addend={addend} ctrl={ctrl}");
                }
                if ctrl {
                    assert_eq!(add_classically(&a.circuit, 5), 5);
                }
            }
        }
    }

    #[test]
    fn quantum_addend_exhaustive() {
        let n = 4;
        for ctrl in [false, true] {
            let width = 2 * n + carry_count(n) + ctrl as usize;
            let mut c = Circuit::new(width);
            let target: Vec<Qubit> = (0..n).collect();
            let addend: Vec<AddendBit> = (n..2 * n).map(AddendBit::Qubit).collect();
            let carries: Vec<Qubit> = (2 * n..2 * n + carry_count(n)).collect();
            let control = ctrl.then_some(width - 1);
            emit_add(&mut c, &target, &addend, &carries, control).unwrap();
            for x in 0..16u64 {
                for y in 0..16u64 {
                    let on = if ctrl { 1u64 << (width - 1) } else { 0 };
                    let out = add_classically(&c, x | (y << n) | on);
                    assert_eq!(out, ((x + y) % 16) | (y << n) | on);
                }
            }
        }
    }

    #[test]
    fn lookahead_is_logarithmic() {
        let a = lookahead_profile(16, false).depth;
        let b = lookahead_profile(256, false).depth;
        assert!(b < 3 * a);
        assert!(build_adder(AdderSpec { kind: AdderKind::LookaheadModel, width: 8, controlled: false }, 3)
            .is_ok());
        assert!(build_adder(AdderSpec::ripple(3, false), 8).is_err());
    }
}
