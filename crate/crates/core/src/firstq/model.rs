//! Counts-level model of the split-operator step.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use super::newton::worst_iterations;
use super::schedule::pair_schedule;
use super::vstep::r2_width;
use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::gate::Qubit;
use crate::kickback::{carry_count, emit_add, AddendBit, AdderSpec};
use crate::qvr::{build_qft_via_qvr, build_qvr_kickback, QvrParams, DEFAULT_XI_BITS};
use crate::resource::ResourceProfile;

/// Arithmetic width used when none is given.
pub const DEFAULT_ARITH_BITS: u32 = 32;

/// Exponent span of the Newton sweep that fixes the iteration count.
const NEWTON_SPAN: i32 = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridSpec {
    /// Qubits per spatial dimension.
    pub p: usize,
    /// Particle count.
    pub b: usize,
}

impl GridSpec {
    pub fn new(p: usize, b: usize) -> Result<Self> {
        if p == 0 || b < 2 {
            return Err(Error::InvalidArgument(format!("grid needs p ≥ 1 and b ≥ 2, got p = {p}, b = {b}")));
        }
        Ok(GridSpec { p, b })
    }

    /// Qubits of one particle register.
    pub fn register_width(&self) -> usize {
        3 * self.p
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhysicalConstants {
    pub hbar: f64,
    pub epsilon0: f64,
    /// Grid spacing, the length unit of the position registers.
    pub spacing: f64,
    pub dt: f64,
    pub charges: Vec<f64>,
    pub masses: Vec<f64>,
}

impl PhysicalConstants {
    /// Atomic units (`ħ = 1`, `4πε₀ = 1`) with `b` electrons.
    pub fn electrons(b: usize, dt: f64) -> Self {
        PhysicalConstants {
            hbar: 1.0,
            epsilon0: 1.0 / (4.0 * PI),
            spacing: 1.0,
            dt,
            charges: vec![-1.0; b],
            masses: vec![1.0; b],
        }
    }

    pub fn validate(&self, g: &GridSpec) -> Result<()> {
        if self.charges.len() != g.b || self.masses.len() != g.b {
            return Err(Error::DimensionMismatch(self.charges.len().min(self.masses.len()), g.b));
        }
        if self.masses.iter().any(|&m| !(m > 0.0)) || !(self.dt > 0.0) {
            return Err(Error::InvalidArgument("masses and the time step must be positive".into()));
        }
        if !(self.hbar > 0.0 && self.epsilon0 > 0.0 && self.spacing > 0.0) {
            return Err(Error::InvalidArgument("ħ, ε₀ and the spacing must be positive".into()));
        }
        Ok(())
    }

    /// Potential QVR scale `q_i q_j δt / (8π² ε₀ ħ)` per unit of `1/r` in grid units.
    pub fn pair_xi(&self, i: usize, j: usize, dt: f64) -> f64 {
        -self.charges[i] * self.charges[j] * dt / (8.0 * PI * PI * self.epsilon0 * self.hbar * self.spacing)
    }

    /// Kinetic QVR scale `ħ δt / (4π m)` per unit of `|k|²` in grid units.
    pub fn kinetic_xi(&self, j: usize, dt: f64, p: usize) -> f64 {
        let dk = 2.0 * PI / (2f64.powi(p as i32) * self.spacing);
        -self.hbar * dt * dk * dk / (4.0 * PI * self.masses[j])
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StepMode {
    InPlace,
    FullyParallel,
}

impl std::str::FromStr for StepMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "inplace" | "in-place" => Ok(StepMode::InPlace),
            "parallel" | "fully-parallel" => Ok(StepMode::FullyParallel),
            _ => Err(Error::InvalidArgument(format!("unknown mode {s:?}"))),
        }
    }
}

/// Cost of one operator step.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StepModel {
    pub mode: StepMode,
    pub arith_bits: u32,
    /// One pair (potential) or one particle (kinetic), workspace and γ qubits only.
    pub unit: ResourceProfile,
    pub schedule: Vec<Vec<(usize, usize)>>,
    pub newton_iterations: u32,
    /// Copy fan-out depth, zero without copies.
    pub copy_depth: u64,
    /// Fan-out depth on hardware with one-control many-target gates.
    pub one_to_many_copy_depth: u64,
    pub profile: ResourceProfile,
    /// Distinct `(k, n)` γ registers the step needs.
    pub gamma_registers: Vec<(u64, usize)>,
}

fn adder_cache() -> &'static Mutex<HashMap<(usize, bool), ResourceProfile>> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, bool), ResourceProfile>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Quantum-quantum ripple adder `b += a` on `width` bits, Toffolis expanded.
pub fn adder_profile(width: usize, controlled: bool) -> ResourceProfile {
    if let Some(p) = adder_cache().lock().expect("cache lock").get(&(width, controlled)) {
        return *p;
    }
    let target: Vec<Qubit> = (0..width).collect();
    let addend: Vec<AddendBit> = (width..2 * width).map(AddendBit::Qubit).collect();
    let carries: Vec<Qubit> = (2 * width..2 * width + carry_count(width)).collect();
    let control = controlled.then_some(2 * width + carry_count(width));
    let mut c = Circuit::new(2 * width + carry_count(width) + controlled as usize);
    emit_add(&mut c, &target, &addend, &carries, control).expect("layout fits");
    let p = c.ft_profile();
    adder_cache().lock().expect("cache lock").insert((width, controlled), p);
    p
}

/// Shift-add multiply: one controlled adder of `out_bits` per multiplier bit.
pub fn multiply_profile(in_bits: usize, out_bits: usize) -> ResourceProfile {
    let add = adder_profile(out_bits, true);
    add.repeated(in_bits as u64).with_qubits((2 * in_bits + out_bits + carry_count(out_bits)) as u64)
}

fn cnot_layer(width: usize) -> ResourceProfile {
    ResourceProfile { depth: 1, t_count: 0, total_gates: width as u64, qubits: 2 * width as u64 }
}

/// `r² = Σ (x_d − y_d)²`: per dimension a difference, a copy, a square-accumulate
/// and the mirror of the first two.
fn r2_profile(p: usize) -> ResourceProfile {
    let w = r2_width(p);
    let diff = adder_profile(w, false).repeated(2).then(cnot_layer(w));
    let unit = diff.then(multiply_profile(w, w)).then(diff);
    unit.repeated(3).with_qubits((3 * w + carry_count(w)) as u64)
}

/// Newton-Raphson on `bits`-bit registers; every iterate is kept for uncomputation.
fn newton_profile(bits: usize, iterations: u32) -> ResourceProfile {
    let per_iter = multiply_profile(bits, bits).repeated(3).then(adder_profile(bits, false));
    per_iter
        .repeated(iterations as u64)
        .with_qubits(((iterations as usize + 1) * bits + 2 * bits + carry_count(bits)) as u64)
}

fn qvr_profile(xi: f64, bits: usize) -> Result<(ResourceProfile, Option<(u64, usize)>)> {
    let frac = DEFAULT_XI_BITS.min(63u32.saturating_sub(bits as u32));
    let params = QvrParams::with_precision(xi, bits, frac)?;
    let Some(reg) = params.register()? else {
        return Ok((ResourceProfile::ZERO, None));
    };
    let qvr = build_qvr_kickback(&params, false, AdderSpec::ripple(reg.n(), false))?;
    // the rotated register is counted by the caller
    let p = qvr.circuit.ft_profile();
    Ok((p.with_qubits(p.qubits - bits as u64), Some((reg.k(), reg.n()))))
}

fn push_register(regs: &mut Vec<(u64, usize)>, r: Option<(u64, usize)>) {
    if let Some(r) = r {
        if !regs.contains(&r) {
            regs.push(r);
        }
    }
}

/// Potential step `e^{−iVδt}` over all pairs.
pub fn build_potential_step(g: &GridSpec, c: &PhysicalConstants, mode: StepMode, arith_bits: u32) -> Result<StepModel> {
    potential_step(g, c, mode, arith_bits, c.dt)
}

fn potential_step(g: &GridSpec, c: &PhysicalConstants, mode: StepMode, arith_bits: u32, dt: f64) -> Result<StepModel> {
    c.validate(g)?;
    if !(2..=40).contains(&arith_bits) {
        return Err(Error::InvalidArgument(format!("arithmetic width {arith_bits} outside 2..=40")));
    }
    let bits = arith_bits as usize;
    let iterations = worst_iterations(arith_bits, NEWTON_SPAN.min(arith_bits as i32 / 2))?;
    let arith = r2_profile(g.p).then(newton_profile(bits, iterations));
    let schedule = pair_schedule(g.b);
    let mut gamma_registers = Vec::new();
    let mut unit = ResourceProfile::ZERO;
    for &(i, j) in schedule.iter().flatten() {
        // 1/r ≤ 1 in grid units: one integer bit
        let (qvr, reg) = qvr_profile(c.pair_xi(i, j, dt) * 2.0, bits)?;
        push_register(&mut gamma_registers, reg);
        let pair = arith.then(qvr).then(arith).with_qubits(arith.qubits + bits as u64 + qvr.qubits);
        if pair.depth >= unit.depth {
            unit = pair;
        }
    }
    let reg = g.register_width() as u64;
    let b = g.b as u64;
    let pairs = b * (b - 1) / 2;
    let (profile, copy_depth) = match mode {
        StepMode::InPlace => {
            let rounds = schedule.len() as u64;
            let depth = rounds * unit.depth;
            let per_round = (g.b / 2) as u64;
            (
                ResourceProfile {
                    depth,
                    t_count: unit.t_count * pairs,
                    total_gates: unit.total_gates * pairs,
                    qubits: reg * b + per_round * unit.qubits,
                },
                0,
            )
        }
        StepMode::FullyParallel => {
            let holders = g.b - 1;
            let copy = (holders as f64).log2().ceil() as u64;
            let copies = b * (holders as u64 - 1) * reg;
            (
                ResourceProfile {
                    depth: 2 * copy + unit.depth,
                    t_count: unit.t_count * pairs,
                    total_gates: unit.total_gates * pairs + 2 * copies,
                    qubits: b * (b - 1) * reg + pairs * unit.qubits,
                },
                copy,
            )
        }
    };
    Ok(StepModel {
        mode,
        arith_bits,
        unit,
        schedule,
        newton_iterations: iterations,
        copy_depth,
        one_to_many_copy_depth: (copy_depth > 0) as u64,
        profile,
        gamma_registers,
    })
}

/// Kinetic step `e^{−iTδt}`: Fourier transforms, `|k|²`, one QVR and the mirror,
/// every particle at once.
pub fn build_kinetic_step(g: &GridSpec, c: &PhysicalConstants, arith_bits: u32) -> Result<StepModel> {
    kinetic_step(g, c, arith_bits, c.dt)
}

fn kinetic_step(g: &GridSpec, c: &PhysicalConstants, arith_bits: u32, dt: f64) -> Result<StepModel> {
    c.validate(g)?;
    let p = g.p;
    let qft = build_qft_via_qvr(p, 0)?.circuit.ft_profile();
    let qft = qft.with_qubits(qft.qubits - p as u64).beside(qft).beside(qft);
    let k2_bits = r2_width(p);
    let square = multiply_profile(k2_bits, k2_bits);
    let k2 = square.repeated(3).with_qubits((2 * k2_bits) as u64 + square.qubits);
    let mut gamma_registers = Vec::new();
    let mut unit = ResourceProfile::ZERO;
    let mut t_count = 0;
    let mut total_gates = 0;
    let mut qubits = 0;
    for j in 0..g.b {
        let (qvr, reg) = qvr_profile(c.kinetic_xi(j, dt, p), k2_bits)?;
        push_register(&mut gamma_registers, reg);
        let particle = qft
            .then(k2)
            .then(qvr)
            .then(k2)
            .then(qft)
            .with_qubits(qft.qubits.max(k2.qubits + k2_bits as u64 + qvr.qubits));
        t_count += particle.t_count;
        total_gates += particle.total_gates;
        qubits += particle.qubits + g.register_width() as u64;
        if particle.depth >= unit.depth {
            unit = particle;
        }
    }
    Ok(StepModel {
        mode: StepMode::InPlace,
        arith_bits,
        unit,
        schedule: Vec::new(),
        newton_iterations: 0,
        copy_depth: 0,
        one_to_many_copy_depth: 0,
        profile: ResourceProfile { depth: unit.depth, t_count, total_gates, qubits },
        gamma_registers,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FirstQuantEstimate {
    pub grid: GridSpec,
    pub mode: StepMode,
    pub steps: u64,
    pub kinetic_half: StepModel,
    pub potential: StepModel,
    pub per_step: ResourceProfile,
    pub total: ResourceProfile,
    /// `r² = 0` is mapped to the largest `1/r`.
    pub coulomb_capped: bool,
}

/// `steps` repetitions of `T/2 · V · T/2`.
pub fn estimate_first_quantized(
    g: &GridSpec,
    c: &PhysicalConstants,
    steps: u64,
    mode: StepMode,
    arith_bits: u32,
) -> Result<FirstQuantEstimate> {
    let half = kinetic_step(g, c, arith_bits, c.dt / 2.0)?;
    let potential = potential_step(g, c, mode, arith_bits, c.dt)?;
    let per_step = half.profile.then(potential.profile).then(half.profile);
    Ok(FirstQuantEstimate {
        grid: *g,
        mode,
        steps,
        per_step,
        total: per_step.repeated(steps),
        kinetic_half: half,
        potential,
        coulomb_capped: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn consts(b: usize) -> PhysicalConstants {
        PhysicalConstants::electrons(b, 0.01)
    }

    #[test]
    fn validation() {
        assert!(GridSpec::new(0, 2).is_err());
        assert!(GridSpec::new(2, 1).is_err());
        let g = GridSpec::new(2, 2).unwrap();
        let mut c = consts(2);
        c.masses[0] = 0.0;
        assert!(build_kinetic_step(&g, &c, 16).is_err());
    }

    #[test]
    fn one_pair_modes_agree() {
        let g = GridSpec::new(3, 2).unwrap();
        let a = build_potential_step(&g, &consts(2), StepMode::InPlace, 16).unwrap();
        let b = build_potential_step(&g, &consts(2), StepMode::FullyParallel, 16).unwrap();
        assert_eq!(b.copy_depth, 0);
        assert_eq!(a.profile, b.profile);
    }

    #[test]
    fn in_place_depth_follows_rounds() {
        let d = |b| build_potential_step(&GridSpec::new(4, b).unwrap(), &consts(b), StepMode::InPlace, 16).unwrap();
        let ratio = d(8).profile.depth as f64 / d(4).profile.depth as f64;
        assert!((ratio - 7.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn parallel_qubits_scale_with_pairings() {
        let q = |b| {
            build_potential_step(&GridSpec::new(4, b).unwrap(), &consts(b), StepMode::FullyParallel, 16)
                .unwrap()
                .profile
                .qubits as f64
        };
        assert!((q(6) / q(3) - 5.0).abs() < 1e-12);
    }

    #[test]
    fn kinetic_step_properties() {
        let g1 = GridSpec::new(1, 2).unwrap();
        let k = build_kinetic_step(&g1, &consts(2), 16).unwrap();
        assert_eq!(k.gamma_registers.len(), 1);
        let d = |b| build_kinetic_step(&GridSpec::new(3, b).unwrap(), &consts(b), 16).unwrap().profile.depth;
        assert_eq!(d(2), d(7));
        let qft = build_qft_via_qvr(1, 0).unwrap().circuit;
        assert_eq!(qft.gate_count(), 1);
    }

    #[test]
    fn split_step_composition() {
        let g = GridSpec::new(3, 3).unwrap();
        let e0 = estimate_first_quantized(&g, &consts(3), 0, StepMode::InPlace, 16).unwrap();
        assert_eq!(e0.total, ResourceProfile::ZERO);
        let e1 = estimate_first_quantized(&g, &consts(3), 1023, StepMode::InPlace, 16).unwrap();
        let e2 = estimate_first_quantized(&g, &consts(3), 2046, StepMode::InPlace, 16).unwrap();
        assert_eq!(e2.total.depth, 2 * e1.total.depth);
        assert_eq!(e1.per_step.depth, 2 * e1.kinetic_half.profile.depth + e1.potential.profile.depth);
    }
}
