//! Quantum variable rotations `|θ⟩ ↦ e^{2πiξθ/2^q}|θ⟩`, built bitwise or as a single
//! shifted kickback addition, and the Fourier transform assembled from them.
//!
//! Register convention: qubit `j` of a `q`-qubit `θ` register holds bit `j` of the
//! integer `θ` (weight `2^{−(q−j)}` in `φ = θ/2^q`).

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::gate::{Gate, Qubit};
use crate::kickback::{carry_count, emit_add, AddendBit, AdderKind, AdderSpec, GammaRegister};
use crate::par::{prepare_ancillas, ParAncillaSet, PrepMethod};
use crate::sim::{factor_out, SparseState, StateVector};
use crate::synth::{self, DEFAULT_SEARCH_LEN};
use crate::unitary::{wrap_angle, C64};

/// Fractional bits kept when truncating `ξ` to binary.
pub const DEFAULT_XI_BITS: u32 = 32;

/// Binary approximation of `ξ` and the alignment it implies.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QvrParams {
    pub xi: f64,
    pub frac_bits: u32,
    /// `[|ξ|]` as a fixed-point integer with `frac_bits` fractional bits.
    pub raw: u128,
    /// Bits from the leading one through the last one.
    pub significant_bits: u32,
    /// `⌊log₂ [ξ]⌋`.
    pub exponent: i32,
    /// Alignment shift `(m − 1) − w`.
    pub shift: i32,
    /// Width of the rotated register.
    pub q: usize,
    /// Odd multiplier of the γ register, reduced mod `2^n` (negated for negative `ξ`).
    pub k: u64,
    pub negative: bool,
}

impl QvrParams {
    pub fn new(xi: f64, q: usize) -> Result<Self> {
        Self::with_precision(xi, q, DEFAULT_XI_BITS)
    }

    /// Truncate `|ξ|` toward zero at `frac_bits` fractional bits.
    pub fn with_precision(xi: f64, q: usize, frac_bits: u32) -> Result<Self> {
        if !xi.is_finite() || xi.abs() >= 2f64.powi(60) {
            return Err(Error::InvalidArgument(format!("xi = {xi} is not representable")));
        }
        if q == 0 || frac_bits > 64 {
            return Err(Error::InvalidArgument(format!("q = {q}, frac_bits = {frac_bits}")));
        }
        let raw = (xi.abs() * 2f64.powi(frac_bits as i32)).floor() as u128;
        let mut p = QvrParams {
            xi,
            frac_bits,
            raw,
            significant_bits: 0,
            exponent: 0,
            shift: 0,
            q,
            k: 0,
            negative: xi < 0.0,
        };
        if raw == 0 {
            return Ok(p);
        }
        let tz = raw.trailing_zeros();
        let odd = raw >> tz;
        p.significant_bits = 128 - odd.leading_zeros();
        p.exponent = (128 - raw.leading_zeros()) as i32 - 1 - frac_bits as i32;
        p.shift = frac_bits as i32 - tz as i32;
        let n = p.width();
        if n > 0 {
            if n > 63 {
                return Err(Error::InvalidArgument(format!("register width {n} exceeds 63")));
            }
            let modulus = 1u128 << n;
            let k = odd % modulus;
            p.k = if p.negative { ((modulus - k) % modulus) as u64 } else { k as u64 };
        }
        Ok(p)
    }

    /// γ-register width `n = p + q`; at most zero means the rotation is trivial.
    pub fn width(&self) -> i64 {
        if self.raw == 0 {
            return 0;
        }
        self.shift as i64 + self.q as i64
    }

    pub fn is_empty(&self) -> bool {
        self.width() <= 0
    }

    /// The truncated `[ξ]` with sign.
    pub fn approx_xi(&self) -> f64 {
        let v = self.raw as f64 / 2f64.powi(self.frac_bits as i32);
        if self.negative {
            -v
        } else {
            v
        }
    }

    pub fn register(&self) -> Result<Option<GammaRegister>> {
        if self.is_empty() {
            return Ok(None);
        }
        GammaRegister::new(self.k, self.width() as usize).map(Some)
    }
}

/// A QVR circuit and its wires.
#[derive(Clone, Debug)]
pub struct QvrCircuit {
    pub circuit: Circuit,
    pub theta: Vec<Qubit>,
    pub control: Option<Qubit>,
    pub gamma: Vec<Qubit>,
    pub register: Option<GammaRegister>,
}

impl QvrCircuit {
    /// Data wires: `θ` then the control.
    pub fn data(&self) -> Vec<Qubit> {
        self.theta.iter().copied().chain(self.control).collect()
    }

    /// Every non-data qubit at zero except the γ register.
    pub fn background(&self) -> Result<SparseState> {
        match self.register {
            Some(r) => r.sparse_on(&self.gamma, self.circuit.n_qubits()),
            None => SparseState::basis(self.circuit.n_qubits(), 0),
        }
    }
}

/// Rotation realization for the bitwise construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BitwiseMethod {
    Exact,
    Sequence,
}

/// One `RZ` per `θ` bit (`CRZ` when controlled, control on qubit `q`), each to `ε_total/q`.
pub fn build_qvr_bitwise(q: usize, xi: f64, epsilon_total: f64, controlled: bool, method: BitwiseMethod) -> Result<Circuit> {
    if q == 0 {
        return Err(Error::InvalidArgument("q must be at least 1".into()));
    }
    let mut c = Circuit::new(q + controlled as usize);
    for j in 0..q {
        let angle = wrap_angle(2.0 * PI * xi / 2f64.powi((q - j) as i32));
        if angle == 0.0 {
            continue;
        }
        c.push(if controlled { Gate::crz(q, j, angle) } else { Gate::rz(j, angle) })?;
    }
    match method {
        BitwiseMethod::Exact => Ok(c),
        BitwiseMethod::Sequence => {
            if !(epsilon_total > 0.0) {
                return Err(Error::InvalidArgument(format!("epsilon must be positive, got {epsilon_total}")));
            }
            let per = epsilon_total / (q * if controlled { 3 } else { 1 }) as f64;
            Ok(synth::synthesize_rotations(&synth::lower_crz(&c)?, per, DEFAULT_SEARCH_LEN)?.0)
        }
    }
}

/// Kickback QVR: add the aligned `θ` into `|γ^(k)⟩` of width `n = p + q`.
///
/// Layout: `θ` on `0..q`, the control next when `controlled`, then γ and carries.
/// With `p ≥ 0` the addend is `θ` zero-padded to `n` bits; with `p < 0` only the
/// low `n` bits of `θ` enter, the rest contribute whole turns.
pub fn build_qvr_kickback(params: &QvrParams, controlled: bool, spec: AdderSpec) -> Result<QvrCircuit> {
    if spec.kind != AdderKind::RippleCarry {
        return Err(Error::InvalidArgument("the lookahead adder is a count model only".into()));
    }
    let q = params.q;
    let theta: Vec<Qubit> = (0..q).collect();
    let control = controlled.then_some(q);
    let base = q + controlled as usize;
    let Some(register) = params.register()? else {
        return Ok(QvrCircuit { circuit: Circuit::new(base), theta, control, gamma: Vec::new(), register: None });
    };
    let n = register.n();
    let gamma: Vec<Qubit> = (base..base + n).collect();
    let carries: Vec<Qubit> = (base + n..base + n + carry_count(n)).collect();
    let addend: Vec<AddendBit> =
        (0..n).map(|i| if i < q { AddendBit::Qubit(theta[i]) } else { AddendBit::Const(false) }).collect();
    let mut c = Circuit::new(base + n + carry_count(n));
    emit_add(&mut c, &gamma, &addend, &carries, control)?;
    c.mark_fault_tolerant()?;
    Ok(QvrCircuit { circuit: c, theta, control, gamma, register: Some(register) })
}

/// Exact diagonal of the ideal QVR, indexed by `θ`.
pub fn qvr_diagonal(q: usize, xi: f64) -> Vec<C64> {
    (0..1u64 << q).map(|t| crate::unitary::cis(2.0 * PI * xi * t as f64 / 2f64.powi(q as i32))).collect()
}

/// Fourier transform on `q` qubits from controlled kickback QVRs on one `|γ^(1)⟩`.
///
/// Layout: data `0..q`, γ on the next `q − approx_drop` qubits, then carries. Output
/// bit `l` of the transform is left on qubit `q − 1 − l` (recorded as the output
/// layout). `approx_drop` truncates the γ register, dropping the smallest angles.
pub fn build_qft_via_qvr(q: usize, approx_drop: usize) -> Result<QvrCircuit> {
    if q == 0 || approx_drop >= q {
        return Err(Error::InvalidArgument(format!("q = {q}, approx_drop = {approx_drop}")));
    }
    let width = q - approx_drop;
    let gamma: Vec<Qubit> = (q..q + width).collect();
    let carries: Vec<Qubit> = (q + width..q + width + carry_count(width)).collect();
    let register = GammaRegister::new(1, width)?;
    let mut c = Circuit::new(q + width + carry_count(width));
    for j in (0..q).rev() {
        c.push(Gate::h(j))?;
        // bits x_i, i < j, rotate x_j by 2π x_i 2^{i−j−1}: add them into the top w γ bits
        let w = (j + 1).min(width);
        if w < 2 {
            continue;
        }
        let low = j + 1 - w;
        let addend: Vec<AddendBit> = (low..j).map(AddendBit::Qubit).chain([AddendBit::Const(false)]).collect();
        emit_add(&mut c, &gamma[width - w..], &addend, &carries, Some(j))?;
    }
    c.set_output_layout((0..q).map(|l| q - 1 - l).collect())?;
    Ok(QvrCircuit { circuit: c, theta: (0..q).collect(), control: None, gamma, register: Some(register) })
}

/// Sum of the controlled-phase angles removed by `approx_drop`.
pub fn dropped_angle_sum(q: usize, approx_drop: usize) -> f64 {
    let width = q - approx_drop;
    (0..q)
        .flat_map(|j| (0..j).map(move |i| (i, j)))
        .filter(|&(i, j)| i + width < j + 1)
        .map(|(i, j)| 2.0 * PI / 2f64.powi((j - i + 1) as i32))
        .sum()
}

/// Doubling-phase ancillas produced from `|+⟩^M` by one QVR, one state per ancilla.
#[derive(Clone, Debug)]
pub struct QvrAncillas {
    pub set: ParAncillaSet,
    pub states: Vec<StateVector>,
}

fn split_product(state: &StateVector, m: usize) -> Result<Vec<StateVector>> {
    (0..m)
        .map(|j| factor_out(state, &[j], 1e-9).ok_or(Error::InvalidArgument(format!("ancilla {j} is entangled"))))
        .collect()
}

/// Exact bitwise QVR with `ξ = 2^M φ / 2π` applied to `M` plus states.
pub fn par_ancillas_via_qvr(phi: f64, m: usize) -> Result<QvrAncillas> {
    let set = prepare_ancillas(phi, m, PrepMethod::Exact, 0.0, false)?;
    let xi = 2f64.powi(m as i32) * phi / (2.0 * PI);
    let mut c = Circuit::new(m);
    for j in 0..m {
        c.push(Gate::h(j))?;
    }
    c.append(&build_qvr_bitwise(m, xi, 0.0, false, BitwiseMethod::Exact)?)?;
    let out = crate::sim::run(&c, &StateVector::zero(m)?, 0)?.state;
    Ok(QvrAncillas { set, states: split_product(&out, m)? })
}

/// Kickback form of `par_ancillas_via_qvr` with `ξ` truncated to `frac_bits`.
pub fn par_ancillas_via_qvr_kickback(phi: f64, m: usize, frac_bits: u32) -> Result<QvrAncillas> {
    let set = prepare_ancillas(phi, m, PrepMethod::Exact, 0.0, false)?;
    let xi = 2f64.powi(m as i32) * wrap_angle(phi) / (2.0 * PI);
    let params = QvrParams::with_precision(xi, m, frac_bits)?;
    let qvr = build_qvr_kickback(&params, false, AdderSpec::ripple(params.width().max(1) as usize, true))?;
    let amp = C64::new(2f64.powi(-(m as i32)).sqrt(), 0.0);
    let Some(register) = qvr.register else {
        return Ok(QvrAncillas { states: vec![StateVector::phased_plus(0.0); m], set });
    };
    let n = qvr.circuit.n_qubits();
    let bg = register.sparse_on(&qvr.gamma, n)?;
    let mut s = SparseState::from_entries(
        n,
        (0..1u64 << m).flat_map(|t| bg.entries().iter().map(move |&(g, b)| (t | g, amp * b))),
    )?;
    s.apply_circuit(&qvr.circuit)?;
    let lookup: std::collections::HashMap<u64, C64> = bg.entries().iter().copied().collect();
    let data_mask = (1u64 << m) - 1;
    let mut amps = vec![C64::new(0.0, 0.0); 1 << m];
    for &(key, a) in s.entries() {
        if let Some(b) = lookup.get(&(key & !data_mask)) {
            amps[(key & data_mask) as usize] += b.conj() * a;
        }
    }
    let out = StateVector::from_amplitudes(m, amps)?;
    Ok(QvrAncillas { set, states: split_product(&out, m)? })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::{circuit_unitary, states_equal_up_to_phase, subspace_unitary};
    use crate::unitary::{dist, Unitary};

    fn kickback_unitary(xi: f64, q: usize, controlled: bool) -> Unitary {
        let p = QvrParams::new(xi, q).unwrap();
        let c = build_qvr_kickback(&p, controlled, AdderSpec::ripple(p.width().max(1) as usize, true)).unwrap();
        subspace_unitary(&c.circuit, &c.data(), &c.background().unwrap()).unwrap()
    }

    #[test]
    fn params_examples() {
        let p = QvrParams::new(1.0, 3).unwrap();
        assert_eq!((p.significant_bits, p.exponent, p.shift, p.k), (1, 0, 0, 1));
        let p = QvrParams::new(0.75, 3).unwrap();
        assert_eq!((p.significant_bits, p.exponent, p.shift, p.k), (2, -1, 2, 3));
        assert_eq!(p.width(), 5);
        let p = QvrParams::new(6.0, 4).unwrap();
        assert_eq!((p.significant_bits, p.exponent, p.shift, p.k), (2, 2, -1, 3));
        assert!(QvrParams::new(0.0, 3).unwrap().is_empty());
        assert!(QvrParams::new(16.0, 3).unwrap().is_empty());
    }

    #[test]
    fn bitwise_exact_is_diagonal() {
        for (q, xi) in [(1, 3.0), (3, 1.0), (3, 0.75), (4, -2.5)] {
            let u = circuit_unitary(&build_qvr_bitwise(q, xi, 0.0, false, BitwiseMethod::Exact).unwrap()).unwrap();
            assert!(dist(&u, &Unitary::diagonal(&qvr_diagonal(q, xi))).unwrap() < 1e-7);
        }
    }

    #[test]
    fn bitwise_sequence_within_budget() {
        let c = build_qvr_bitwise(4, 0.3, 1e-3, false, BitwiseMethod::Sequence).unwrap();
        assert!(c.is_fault_tolerant());
        let d = dist(&circuit_unitary(&c).unwrap(), &Unitary::diagonal(&qvr_diagonal(4, 0.3))).unwrap();
        assert!(d <= 1e-3, "d = {d}");
    }

    #[test]
    fn kickback_matches_diagonal() {
        for (xi, q) in [(1.0, 3), (0.75, 3), (6.0, 4), (0.8125, 2), (-0.75, 3)] {
            let u = kickback_unitary(xi, q, false);
            assert!(dist(&u, &Unitary::diagonal(&qvr_diagonal(q, xi))).unwrap() < 1e-7, "xi={xi} q={q}");
        }
    }

    #[test]
    fn controlled_kickback_matches_bitwise() {
        let u = kickback_unitary(0.75, 3, true);
        let v = circuit_unitary(&build_qvr_bitwise(3, 0.75, 0.0, true, BitwiseMethod::Exact).unwrap()).unwrap();
        assert!(dist(&u, &v).unwrap() < 1e-7);
    }

    #[test]
    fn empty_when_width_nonpositive() {
        let p = QvrParams::new(8.0, 2).unwrap();
        let c = build_qvr_kickback(&p, false, AdderSpec::ripple(1, true)).unwrap();
        assert!(c.circuit.is_empty() && c.register.is_none());
    }

    fn dft(q: usize) -> Unitary {
        let n = 1usize << q;
        let s = 1.0 / (n as f64).sqrt();
        let entries: Vec<C64> = (0..n * n)
            .map(|i| crate::unitary::cis(2.0 * PI * ((i / n) * (i % n)) as f64 / n as f64) * s)
            .collect();
        Unitary::from_row_slice(n, &entries)
    }

    #[test]
    fn qft_small() {
        let c = build_qft_via_qvr(1, 0).unwrap();
        assert_eq!(c.circuit.gate_count(), 1);
        for q in 1..=3 {
            let c = build_qft_via_qvr(q, 0).unwrap();
            let u = subspace_unitary(&c.circuit, &c.theta, &c.background().unwrap()).unwrap();
            assert!(dist(&u, &dft(q)).unwrap() < 1e-7, "q = {q}");
        }
    }

    #[test]
    fn approximate_qft_bound() {
        let c = build_qft_via_qvr(3, 1).unwrap();
        let u = subspace_unitary(&c.circuit, &c.theta, &c.background().unwrap()).unwrap();
        let d = dist(&u, &dft(3)).unwrap();
        assert!(d > 1e-6);
        assert!(d <= dropped_angle_sum(3, 1));
    }

    #[test]
    fn ancillas_from_qvr() {
        let z = par_ancillas_via_qvr(0.0, 3).unwrap();
        for s in &z.states {
            assert!(states_equal_up_to_phase(s, &StateVector::phased_plus(0.0), 1e-12));
        }
        let a = par_ancillas_via_qvr(PI / 2.0, 2).unwrap();
        assert!(states_equal_up_to_phase(&a.states[0], &StateVector::phased_plus(PI / 2.0), 1e-12));
        assert!(states_equal_up_to_phase(&a.states[1], &StateVector::phased_plus(PI), 1e-12));
        let b = par_ancillas_via_qvr(0.9, 4).unwrap();
        let k = par_ancillas_via_qvr_kickback(2.0 * PI * 5.0 / 64.0, 4, 6).unwrap();
        for j in 0..4 {
            let want = b.set.ancilla_state(j + 1).unwrap();
            assert!(states_equal_up_to_phase(&b.states[j], &want, 1e-12));
            let want = k.set.ancilla_state(j + 1).unwrap();
            assert!(states_equal_up_to_phase(&k.states[j], &want, 1e-10));
        }
    }

    #[test]
    fn kickback_cheaper_than_bitwise() {
        // a 4-bit ξ keeps the adder narrow
        let p = QvrParams::new(0.8125, 4).unwrap();
        let kick = build_qvr_kickback(&p, false, AdderSpec::ripple(p.width() as usize, true)).unwrap();
        let bit = build_qvr_bitwise(4, 0.8125, 1e-3, false, BitwiseMethod::Sequence).unwrap();
        assert!(kick.circuit.ft_profile().t_count < bit.profile().t_count);
    }
}
