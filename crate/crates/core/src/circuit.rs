use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::gate::{Gate, GateKind, Qubit};
use crate::resource::ResourceProfile;

/// Layered circuit. Gates are scheduled as early as their qubits (and the
/// measurement slots they read) allow, so layer count is the parallel depth.
#[derive(Clone, Debug, PartialEq)]
pub struct Circuit {
    n_qubits: usize,
    layers: Vec<Vec<Gate>>,
    fault_tolerant: bool,
    output_layout: Option<Vec<Qubit>>,
    next_free: Vec<usize>,
    slot_ready: HashMap<usize, usize>,
}

impl Circuit {
    pub fn new(n_qubits: usize) -> Self {
        Circuit {
            n_qubits,
            layers: Vec::new(),
            fault_tolerant: false,
            output_layout: None,
            next_free: vec![0; n_qubits],
            slot_ready: HashMap::new(),
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn layers(&self) -> &[Vec<Gate>] {
        &self.layers
    }

    pub fn depth(&self) -> usize {
        self.layers.len()
    }

    pub fn gates(&self) -> impl Iterator<Item = &Gate> {
        self.layers.iter().flatten()
    }

    pub fn gate_count(&self) -> usize {
        self.layers.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.layers.is_empty()
    }

    pub fn is_fault_tolerant(&self) -> bool {
        self.fault_tolerant
    }

    pub fn has_placeholders(&self) -> bool {
        self.gates().any(|g| g.kind().is_placeholder())
    }

    pub fn is_unitary(&self) -> bool {
        self.gates().all(|g| g.kind().is_unitary())
    }

    /// Flag the circuit as fault-tolerant; fails if any rotation placeholder remains.
    pub fn mark_fault_tolerant(&mut self) -> Result<()> {
        if self.has_placeholders() {
            return Err(Error::InvalidGate(
                "fault-tolerant circuit contains RZ/CRZ placeholders".into(),
            ));
        }
        self.fault_tolerant = true;
        Ok(())
    }

    /// Physical qubit holding logical wire `i` at the end of the circuit.
    pub fn output_qubit(&self, wire: usize) -> Qubit {
        self.output_layout.as_ref().map_or(wire, |l| l[wire])
    }

    pub fn output_layout(&self) -> Option<&[Qubit]> {
        self.output_layout.as_deref()
    }

    pub fn set_output_layout(&mut self, layout: Vec<Qubit>) -> Result<()> {
        if let Some(&q) = layout.iter().find(|&&q| q >= self.n_qubits) {
            return Err(Error::IndexOutOfRange(format!("layout qubit {q}")));
        }
        self.output_layout = Some(layout);
        Ok(())
    }

    fn check_gate(&self, gate: &Gate) -> Result<()> {
        if let Some(&q) = gate.qubits().iter().find(|&&q| q >= self.n_qubits) {
            return Err(Error::IndexOutOfRange(format!(
                "qubit {q} in a {}-qubit circuit",
                self.n_qubits
            )));
        }
        if self.fault_tolerant && gate.kind().is_placeholder() {
            return Err(Error::InvalidGate("placeholder in fault-tolerant circuit".into()));
        }
        Ok(())
    }

    /// Schedule `gate` into the earliest layer it fits.
    pub fn push(&mut self, gate: Gate) -> Result<()> {
        self.check_gate(&gate)?;
        let mut layer = gate.qubits().iter().map(|&q| self.next_free[q]).max().unwrap_or(0);
        if let GateKind::FrameUpdate { x_parity, z_parity } = gate.kind() {
            for s in x_parity.iter().chain(z_parity) {
                let ready = self.slot_ready.get(s).copied().ok_or_else(|| {
                    Error::InvalidGate(format!("frame update reads unmeasured slot {s}"))
                })?;
                layer = layer.max(ready);
            }
        }
        if let GateKind::MeasureZ { slot } = gate.kind() {
            self.slot_ready.insert(*slot, layer + 1);
        }
        for &q in gate.qubits() {
            self.next_free[q] = layer + 1;
        }
        if self.layers.len() <= layer {
            self.layers.resize_with(layer + 1, Vec::new);
        }
        self.layers[layer].push(gate);
        Ok(())
    }

    /// Hold later gates on `qubits` until all of them are free, aligning their next layer.
    pub fn barrier(&mut self, qubits: impl IntoIterator<Item = Qubit>) -> Result<()> {
        let qubits: Vec<Qubit> = qubits.into_iter().collect();
        if let Some(&q) = qubits.iter().find(|&&q| q >= self.n_qubits) {
            return Err(Error::IndexOutOfRange(format!("qubit {q} in a {}-qubit circuit", self.n_qubits)));
        }
        let sync = qubits.iter().map(|&q| self.next_free[q]).max().unwrap_or(0);
        for q in qubits {
            self.next_free[q] = sync;
        }
        Ok(())
    }

    pub fn push_all(&mut self, gates: impl IntoIterator<Item = Gate>) -> Result<()> {
        gates.into_iter().try_for_each(|g| self.push(g))
    }

    /// Append a layer verbatim, without rescheduling; used by the text parser.
    fn push_layer(&mut self, layer: Vec<Gate>) -> Result<()> {
        let mut seen = vec![false; self.n_qubits];
        for g in &layer {
            self.check_gate(g)?;
            for &q in g.qubits() {
                if std::mem::replace(&mut seen[q], true) {
                    return Err(Error::InvalidGate(format!("qubit {q} used twice in a layer")));
                }
            }
        }
        let index = self.layers.len();
        for g in &layer {
            for &q in g.qubits() {
                self.next_free[q] = index + 1;
            }
            if let GateKind::MeasureZ { slot } = g.kind() {
                self.slot_ready.insert(*slot, index + 1);
            }
        }
        self.layers.push(layer);
        Ok(())
    }

    /// Append every gate of `other`, renaming its qubit `i` to `map[i]`.
    pub fn append_mapped(&mut self, other: &Circuit, map: &[Qubit]) -> Result<()> {
        if map.len() < other.n_qubits {
            return Err(Error::DimensionMismatch(map.len(), other.n_qubits));
        }
        for g in other.gates() {
            self.push(g.remapped(|q| map[q]))?;
        }
        Ok(())
    }

    /// Append `other` on the same qubit indices.
    pub fn append(&mut self, other: &Circuit) -> Result<()> {
        let map: Vec<Qubit> = (0..other.n_qubits).collect();
        self.append_mapped(other, &map)
    }

    /// Reversed circuit of inverted gates. Fails on measurements and frame updates.
    pub fn inverse(&self) -> Result<Circuit> {
        let mut out = Circuit::new(self.n_qubits);
        for layer in self.layers.iter().rev() {
            for g in layer.iter().rev() {
                out.push(g.inverse().ok_or(Error::NonUnitary)?)?;
            }
        }
        out.fault_tolerant = self.fault_tolerant;
        Ok(out)
    }

    /// Replace every Toffoli by the standard seven-T Clifford+T network.
    pub fn expand_toffoli(&self) -> Circuit {
        let mut out = Circuit::new(self.n_qubits);
        out.output_layout = self.output_layout.clone();
        for g in self.gates() {
            if let GateKind::Toffoli = g.kind() {
                let q = g.qubits();
                for e in toffoli_network(q[0], q[1], q[2]) {
                    out.push(e).expect("expansion stays in range");
                }
            } else {
                out.push(g.clone()).expect("gate already validated");
            }
        }
        out.fault_tolerant = self.fault_tolerant;
        out
    }

    pub fn profile(&self) -> ResourceProfile {
        ResourceProfile {
            depth: self.depth() as u64,
            t_count: self.gates().filter(|g| g.kind().is_t()).count() as u64,
            total_gates: self.gate_count() as u64,
            qubits: self.n_qubits as u64,
        }
    }

    /// Profile after Toffoli expansion, the form used for T accounting.
    pub fn ft_profile(&self) -> ResourceProfile {
        self.expand_toffoli().profile()
    }
}

/// Clifford+T Toffoli with controls `a`, `b` and target `c`; seven T/T† gates.
pub fn toffoli_network(a: Qubit, b: Qubit, c: Qubit) -> Vec<Gate> {
    vec![
        Gate::h(c),
        Gate::cnot(b, c),
        Gate::tdg(c),
        Gate::cnot(a, c),
        Gate::t(c),
        Gate::cnot(b, c),
        Gate::tdg(c),
        Gate::cnot(a, c),
        Gate::t(b),
        Gate::t(c),
        Gate::h(c),
        Gate::cnot(a, b),
        Gate::t(a),
        Gate::tdg(b),
        Gate::cnot(a, b),
    ]
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QUBITS {}", self.n_qubits)?;
        if self.fault_tolerant {
            write!(f, " FT")?;
        }
        writeln!(f)?;
        if let Some(layout) = &self.output_layout {
            let s: Vec<String> = layout.iter().map(|q| q.to_string()).collect();
            writeln!(f, "OUTPUT {}", s.join(","))?;
        }
        for layer in &self.layers {
            let s: Vec<String> = layer.iter().map(|g| g.to_string()).collect();
            writeln!(f, "{}", s.join("; "))?;
        }
        Ok(())
    }
}

fn parse_list(s: &str, line: usize) -> Result<Vec<usize>> {
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| {
            t.trim().parse().map_err(|_| Error::Parse { line, message: format!("bad index `{t}`") })
        })
        .collect()
}

fn parse_gate(text: &str, line: usize) -> Result<Gate> {
    let err = |m: String| Error::Parse { line, message: m };
    let mut parts = text.split_whitespace();
    let name = parts.next().ok_or_else(|| err("empty gate".into()))?;
    let operands = parts.next().ok_or_else(|| err(format!("{name} has no qubits")))?;
    let (qubit_text, angle) = match operands.split_once('@') {
        Some((q, a)) => {
            let v: f64 = a.parse().map_err(|_| err(format!("bad angle `{a}`")))?;
            (q, Some(v))
        }
        None => (operands, None),
    };
    let qubits = parse_list(qubit_text, line)?;
    let rest: Vec<&str> = parts.collect();
    let need_angle = || angle.ok_or_else(|| err(format!("{name} needs an angle")));
    let kind = match name {
        "X" => GateKind::X,
        "Y" => GateKind::Y,
        "Z" => GateKind::Z,
        "H" => GateKind::H,
        "S" => GateKind::S,
        "SDG" => GateKind::Sdg,
        "T" => GateKind::T,
        "TDG" => GateKind::Tdg,
        "CNOT" => GateKind::Cnot,
        "TOFFOLI" => GateKind::Toffoli,
        "RZ" => GateKind::Rz(need_angle()?),
        "CRZ" => GateKind::Crz(need_angle()?),
        "MEASURE" => {
            let slot = rest
                .first()
                .and_then(|s| s.strip_prefix('m'))
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| err("MEASURE needs a slot `mN`".into()))?;
            GateKind::MeasureZ { slot }
        }
        "FRAME" => {
            let mut x_parity = Vec::new();
            let mut z_parity = Vec::new();
            for r in &rest {
                if let Some(v) = r.strip_prefix("x=") {
                    x_parity = parse_list(v, line)?;
                } else if let Some(v) = r.strip_prefix("z=") {
                    z_parity = parse_list(v, line)?;
                } else {
                    return Err(err(format!("unexpected `{r}` in FRAME")));
                }
            }
            GateKind::FrameUpdate { x_parity, z_parity }
        }
        other => return Err(err(format!("unknown gate `{other}`"))),
    };
    Gate::new(kind, qubits).map_err(|e| err(e.to_string()))
}

impl FromStr for Circuit {
    type Err = Error;

    fn from_str(s: &str) -> Result<Circuit> {
        let mut lines = s.lines().enumerate();
        let (_, header) = lines.next().ok_or(Error::Parse { line: 1, message: "missing header".into() })?;
        let mut words = header.split_whitespace();
        if words.next() != Some("QUBITS") {
            return Err(Error::Parse { line: 1, message: "expected `QUBITS n`".into() });
        }
        let n: usize = words
            .next()
            .and_then(|w| w.parse().ok())
            .ok_or(Error::Parse { line: 1, message: "bad qubit count".into() })?;
        let ft = words.next() == Some("FT");
        let mut c = Circuit::new(n);
        c.fault_tolerant = ft;
        for (i, text) in lines {
            let line = i + 1;
            if let Some(rest) = text.strip_prefix("OUTPUT ") {
                let layout = parse_list(rest.trim(), line)?;
                c.set_output_layout(layout).map_err(|e| Error::Parse { line, message: e.to_string() })?;
                continue;
            }
            if text.trim().is_empty() {
                continue;
            }
            let layer = text
                .split(';')
                .map(|g| parse_gate(g.trim(), line))
                .collect::<Result<Vec<_>>>()?;
            c.push_layer(layer).map_err(|e| match e {
                Error::Parse { .. } => e,
                other => Error::Parse { line, message: other.to_string() },
            })?;
        }
        Ok(c)
    }
}
