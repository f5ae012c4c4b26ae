use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;

use crate::error::{Error, Result};
use crate::unitary::{cis, crz_matrix, rz_matrix, Unitary, C64};

pub type Qubit = usize;

/// Operation kinds of the fault-tolerant gate set plus logical rotation placeholders.
#[derive(Clone, Debug, PartialEq)]
pub enum GateKind {
    X,
    Y,
    Z,
    H,
    S,
    Sdg,
    T,
    Tdg,
    Cnot,
    Toffoli,
    /// Z-basis measurement whose outcome is written to classical slot `slot`.
    MeasureZ { slot: usize },
    /// Pauli correction `X^a Z^b`, where `a` (`b`) is the parity of the listed slots.
    FrameUpdate { x_parity: Vec<usize>, z_parity: Vec<usize> },
    /// `diag(1, e^{iφ})`; placeholder, never present in fault-tolerant circuits.
    Rz(f64),
    /// `diag(1, 1, 1, e^{iφ})`; placeholder.
    Crz(f64),
}

impl GateKind {
    pub fn arity(&self) -> usize {
        match self {
            GateKind::Cnot | GateKind::Crz(_) => 2,
            GateKind::Toffoli => 3,
            _ => 1,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            GateKind::X => "X",
            GateKind::Y => "Y",
            GateKind::Z => "Z",
            GateKind::H => "H",
            GateKind::S => "S",
            GateKind::Sdg => "SDG",
            GateKind::T => "T",
            GateKind::Tdg => "TDG",
            GateKind::Cnot => "CNOT",
            GateKind::Toffoli => "TOFFOLI",
            GateKind::MeasureZ { .. } => "MEASURE",
            GateKind::FrameUpdate { .. } => "FRAME",
            GateKind::Rz(_) => "RZ",
            GateKind::Crz(_) => "CRZ",
        }
    }

    pub fn is_t(&self) -> bool {
        matches!(self, GateKind::T | GateKind::Tdg)
    }

    pub fn is_placeholder(&self) -> bool {
        matches!(self, GateKind::Rz(_) | GateKind::Crz(_))
    }

    pub fn is_unitary(&self) -> bool {
        !matches!(self, GateKind::MeasureZ { .. } | GateKind::FrameUpdate { .. })
    }

    pub fn is_clifford(&self) -> bool {
        matches!(
            self,
            GateKind::X
                | GateKind::Y
                | GateKind::Z
                | GateKind::H
                | GateKind::S
                | GateKind::Sdg
                | GateKind::Cnot
        )
    }

    /// Inverse kind, `None` for measurements and frame updates.
    pub fn inverse(&self) -> Option<GateKind> {
        Some(match self {
            GateKind::S => GateKind::Sdg,
            GateKind::Sdg => GateKind::S,
            GateKind::T => GateKind::Tdg,
            GateKind::Tdg => GateKind::T,
            GateKind::Rz(a) => GateKind::Rz(-a),
            GateKind::Crz(a) => GateKind::Crz(-a),
            GateKind::MeasureZ { .. } | GateKind::FrameUpdate { .. } => return None,
            k => k.clone(),
        })
    }

    /// Matrix of a unitary kind; `None` for measurements and frame updates.
    pub fn matrix(&self) -> Option<Unitary> {
        let o = C64::new(0.0, 0.0);
        let l = C64::new(1.0, 0.0);
        let i = C64::new(0.0, 1.0);
        let h = C64::new(FRAC_1_SQRT_2, 0.0);
        Some(match self {
            GateKind::X => Unitary::from_row_slice(2, &[o, l, l, o]),
            GateKind::Y => Unitary::from_row_slice(2, &[o, -i, i, o]),
            GateKind::Z => Unitary::diagonal(&[l, -l]),
            GateKind::H => Unitary::from_row_slice(2, &[h, h, h, -h]),
            GateKind::S => Unitary::diagonal(&[l, i]),
            GateKind::Sdg => Unitary::diagonal(&[l, -i]),
            GateKind::T => Unitary::diagonal(&[l, cis(std::f64::consts::FRAC_PI_4)]),
            GateKind::Tdg => Unitary::diagonal(&[l, cis(-std::f64::consts::FRAC_PI_4)]),
            GateKind::Cnot => {
                let mut e = vec![o; 16];
                e[0] = l;
                e[5] = l;
                e[11] = l;
                e[14] = l;
                Unitary::from_row_slice(4, &e)
            }
            GateKind::Toffoli => {
                let mut e = vec![o; 64];
                for r in 0..6 {
                    e[r * 8 + r] = l;
                }
                e[6 * 8 + 7] = l;
                e[7 * 8 + 6] = l;
                Unitary::from_row_slice(8, &e)
            }
            GateKind::Rz(a) => rz_matrix(*a),
            GateKind::Crz(a) => crz_matrix(*a),
            GateKind::MeasureZ { .. } | GateKind::FrameUpdate { .. } => return None,
        })
    }
}

/// A gate kind applied to specific qubits. For controlled kinds the controls come first.
#[derive(Clone, Debug, PartialEq)]
pub struct Gate {
    kind: GateKind,
    qubits: Vec<Qubit>,
}

impl Gate {
    pub fn new(kind: GateKind, qubits: Vec<Qubit>) -> Result<Self> {
        if qubits.len() != kind.arity() {
            return Err(Error::InvalidGate(format!(
                "{} expects {} qubits, got {}",
                kind.name(),
                kind.arity(),
                qubits.len()
            )));
        }
        for (i, q) in qubits.iter().enumerate() {
            if qubits[..i].contains(q) {
                return Err(Error::InvalidGate(format!(
                    "{} repeats qubit {q}",
                    kind.name()
                )));
            }
        }
        Ok(Gate { kind, qubits })
    }

    fn unchecked(kind: GateKind, qubits: Vec<Qubit>) -> Self {
        Gate::new(kind, qubits).expect("valid gate")
    }

    pub fn single(kind: GateKind, q: Qubit) -> Self {
        Gate::unchecked(kind, vec![q])
    }
    pub fn x(q: Qubit) -> Self {
        Gate::single(GateKind::X, q)
    }
    pub fn z(q: Qubit) -> Self {
        Gate::single(GateKind::Z, q)
    }
    pub fn h(q: Qubit) -> Self {
        Gate::single(GateKind::H, q)
    }
    pub fn s(q: Qubit) -> Self {
        Gate::single(GateKind::S, q)
    }
    pub fn sdg(q: Qubit) -> Self {
        Gate::single(GateKind::Sdg, q)
    }
    pub fn t(q: Qubit) -> Self {
        Gate::single(GateKind::T, q)
    }
    pub fn tdg(q: Qubit) -> Self {
        Gate::single(GateKind::Tdg, q)
    }
    pub fn rz(q: Qubit, phi: f64) -> Self {
        Gate::single(GateKind::Rz(phi), q)
    }

    /// Panics if `control == target`.
    pub fn cnot(control: Qubit, target: Qubit) -> Self {
        Gate::unchecked(GateKind::Cnot, vec![control, target])
    }

    /// Panics on repeated qubits.
    pub fn toffoli(a: Qubit, b: Qubit, target: Qubit) -> Self {
        Gate::unchecked(GateKind::Toffoli, vec![a, b, target])
    }

    pub fn crz(control: Qubit, target: Qubit, phi: f64) -> Self {
        Gate::unchecked(GateKind::Crz(phi), vec![control, target])
    }

    pub fn measure(q: Qubit, slot: usize) -> Self {
        Gate::single(GateKind::MeasureZ { slot }, q)
    }

    pub fn frame(q: Qubit, x_parity: Vec<usize>, z_parity: Vec<usize>) -> Self {
        Gate::single(GateKind::FrameUpdate { x_parity, z_parity }, q)
    }

    pub fn kind(&self) -> &GateKind {
        &self.kind
    }

    pub fn qubits(&self) -> &[Qubit] {
        &self.qubits
    }

    pub fn inverse(&self) -> Option<Gate> {
        self.kind.inverse().map(|k| Gate { kind: k, qubits: self.qubits.clone() })
    }

    /// Same gate with qubits renamed through `map`.
    pub fn remapped(&self, map: impl Fn(Qubit) -> Qubit) -> Gate {
        Gate { kind: self.kind.clone(), qubits: self.qubits.iter().map(|&q| map(q)).collect() }
    }
}

fn join(v: &[usize]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.kind.name(), join(&self.qubits))?;
        match &self.kind {
            GateKind::Rz(a) | GateKind::Crz(a) => write!(f, "@{a:.16e}"),
            GateKind::MeasureZ { slot } => write!(f, " m{slot}"),
            GateKind::FrameUpdate { x_parity, z_parity } => {
                write!(f, " x={} z={}", join(x_parity), join(z_parity))
            }
            _ => Ok(()),
        }
    }
}
