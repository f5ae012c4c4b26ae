//! Phase kickback: Fourier-basis ancilla registers, the modular equation and
//! controlled constant addition as an approximate phase rotation.

pub mod adder;

pub use adder::{build_adder, carry_count, const_bits, emit_add, AddendBit, AdderCircuit, AdderKind, AdderOutput, AdderSpec};

use std::f64::consts::PI;

use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::gate::{Gate, Qubit};
use crate::resource::ResourceProfile;
use crate::sim::{SparseState, StateVector};
use crate::unitary::{cis, wrap_angle, wrap_signed, C64};

/// The eigenstate `|γ^(k)⟩ = N^{-1/2} Σ_y e^{-2πiky/N} |y⟩` of adding into an
/// `n`-bit register, `N = 2^n`, `k` odd.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GammaRegister {
    k: u64,
    n: usize,
}

impl GammaRegister {
    pub fn new(k: u64, n: usize) -> Result<Self> {
        if n == 0 || n > 63 {
            return Err(Error::InvalidArgument(format!("register width {n} outside 1..=63")));
        }
        if k % 2 == 0 {
            return Err(Error::EvenMultiplier(k));
        }
        if k >= 1 << n {
            return Err(Error::InvalidArgument(format!("k = {k} must be below 2^{n}")));
        }
        Ok(GammaRegister { k, n })
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn modulus(&self) -> u64 {
        1 << self.n
    }

    /// Phase on `|1⟩` of register bit `b` in the product form.
    pub fn bit_phase(&self, b: usize) -> f64 {
        let m = self.n - b;
        -2.0 * PI * (self.k % (1u64 << m.min(63))) as f64 / 2f64.powi(m as i32)
    }

    /// Amplitudes as `(y, amplitude)` pairs, `y` little-endian.
    pub fn amplitudes(&self) -> impl Iterator<Item = (u64, C64)> + '_ {
        let norm = 1.0 / (self.modulus() as f64).sqrt();
        let n = self.modulus();
        (0..n).map(move |y| {
            let turns = ((self.k as u128 * y as u128) % n as u128) as f64 / n as f64;
            (y, cis(-2.0 * PI * turns) * norm)
        })
    }

    /// The register placed on `positions` of an otherwise zero `total`-qubit register.
    pub fn sparse_on(&self, positions: &[Qubit], total: usize) -> Result<SparseState> {
        if positions.len() != self.n {
            return Err(Error::DimensionMismatch(positions.len(), self.n));
        }
        SparseState::from_entries(
            total,
            self.amplitudes().map(|(y, a)| {
                let key = positions.iter().enumerate().fold(0u64, |acc, (i, &q)| acc | (((y >> i) & 1) << q));
                (key, a)
            }),
        )
    }
}

/// Dense `|γ^(k)⟩`.
pub fn gamma_state(reg: GammaRegister) -> Result<StateVector> {
    StateVector::from_amplitudes(reg.n, reg.amplitudes().map(|(_, a)| a).collect())
}

/// Inverse of an odd `k` modulo `2^n`.
pub fn inverse_mod_pow2(k: u64, n: usize) -> Result<u64> {
    if k % 2 == 0 {
        return Err(Error::EvenMultiplier(k));
    }
    let mut x = k;
    for _ in 0..6 {
        x = x.wrapping_mul(2u64.wrapping_sub(k.wrapping_mul(x)));
    }
    Ok(x & mask(n))
}

fn mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Addend `u` with `k u ≡ round(N φ / 2π) (mod N)`, halves rounded up.
pub fn solve_mod(k: u64, n: usize, phi: f64) -> Result<u64> {
    let inv = inverse_mod_pow2(k, n)?;
    let modulus = 2f64.powi(n as i32);
    let t = ((modulus * wrap_angle(phi) / (2.0 * PI)) + 0.5).floor() as u64 & mask(n);
    Ok(((t as u128 * inv as u128) as u64) & mask(n))
}

/// Phase imparted by adding `u` into `reg`.
pub fn kickback_phase(reg: GammaRegister, u: u64) -> f64 {
    let n = reg.modulus() as u128;
    2.0 * PI * ((reg.k as u128 * u as u128) % n) as f64 / n as f64
}

/// Worst-case phase error `2π / 2^{n+1}` of an `n`-bit register.
pub fn phase_error_bound(n: usize) -> f64 {
    2.0 * PI / 2f64.powi(n as i32 + 1)
}

/// Smallest register width whose worst-case rotation distance is at most `epsilon`.
pub fn bits_for_accuracy(epsilon: f64) -> usize {
    (1..63)
        .find(|&n| (1.0 - (phase_error_bound(n) / 2.0).cos()).max(0.0).sqrt() <= epsilon)
        .unwrap_or(63)
}

/// A kickback rotation and where its registers live.
#[derive(Clone, Debug)]
pub struct KickbackCircuit {
    pub circuit: Circuit,
    pub target: Qubit,
    pub control: Option<Qubit>,
    pub gamma: Vec<Qubit>,
    pub register: GammaRegister,
    pub addend: u64,
}

impl KickbackCircuit {
    /// Data wires in the order `[target]` or `[target, control]`.
    pub fn data(&self) -> Vec<Qubit> {
        std::iter::once(self.target).chain(self.control).collect()
    }

    /// γ register on its qubits, every other qubit zero.
    pub fn background(&self) -> Result<SparseState> {
        self.register.sparse_on(&self.gamma, self.circuit.n_qubits())
    }
}

/// Rotation `diag(1, e^{2πiku/N})` on qubit 0 by addition controlled on it.
///
/// Layout: target 0, then the extra control and its flag ancilla when `controlled`,
/// then the γ register and the carries. Returns the circuit and the predicted
/// phase error `φ − 2πku/N` wrapped to `(−π, π]`.
pub fn kickback_rotation(
    phi: f64,
    reg: GammaRegister,
    controlled: bool,
    spec: AdderSpec,
) -> Result<(KickbackCircuit, f64)> {
    if spec.kind != AdderKind::RippleCarry {
        return Err(Error::InvalidArgument("the lookahead adder is a count model only".into()));
    }
    let n = reg.n();
    let u = solve_mod(reg.k(), n, phi)?;
    let delta = wrap_signed(phi - kickback_phase(reg, u));
    let extra = if controlled { 2 } else { 0 };
    let gamma: Vec<Qubit> = (1 + extra..1 + extra + n).collect();
    let carries: Vec<Qubit> = (1 + extra + n..1 + extra + n + carry_count(n)).collect();
    let total = 1 + extra + n + carry_count(n);
    let mut c = Circuit::new(total);
    let (control, driver) = if controlled {
        c.push(Gate::toffoli(0, 1, 2))?;
        (Some(1), 2)
    } else {
        (None, 0)
    };
    emit_add(&mut c, &gamma, &const_bits(u, n), &carries, Some(driver))?;
    if controlled {
        c.push(Gate::toffoli(0, 1, 2))?;
    }
    Ok((KickbackCircuit { circuit: c, target: 0, control, gamma, register: reg, addend: u }, delta))
}

/// Counts for a kickback rotation, including the lookahead model.
pub fn kickback_profile(phi: f64, reg: GammaRegister, controlled: bool, spec: AdderSpec) -> Result<ResourceProfile> {
    match spec.kind {
        AdderKind::RippleCarry => Ok(kickback_rotation(phi, reg, controlled, spec)?.0.circuit.ft_profile()),
        AdderKind::LookaheadModel => {
            let p = adder::lookahead_profile(reg.n(), true);
            let wrap = if controlled { ResourceProfile { depth: 24, t_count: 14, total_gates: 30, qubits: 2 } } else { ResourceProfile::ZERO };
            Ok(wrap.then(p).with_qubits(p.qubits + 1 + 2 * controlled as u64))
        }
    }
}

fn check_odd(k: u64, l: u64) -> Result<()> {
    for v in [k, l] {
        if v % 2 == 0 {
            return Err(Error::EvenMultiplier(v));
        }
    }
    Ok(())
}

/// Map `|γ^(k)⟩` to `|γ^(l)⟩` on an `n`-bit register with exact `RZ` placeholders:
/// bit `n − m` is corrected by `RZ(2π(k − l)/2^m)` for `m = 2..=n`.
pub fn transform_gamma(k: u64, l: u64, n: usize) -> Result<Circuit> {
    check_odd(k, l)?;
    let mut c = Circuit::new(n);
    for m in 2..=n {
        let diff = (k as i128 - l as i128).rem_euclid(1i128 << m) as f64;
        let angle = wrap_angle(2.0 * PI * diff / 2f64.powi(m as i32));
        if angle != 0.0 {
            c.push(Gate::rz(n - m, angle))?;
        }
    }
    Ok(c)
}

/// Fault-tolerant form of `transform_gamma`: each correction is an exact kickback
/// of `u` (with `l u ≡ (k − l)/2 mod 2^{m−1}`) into the already-transformed top
/// `m − 1` bits, controlled by bit `n − m`. Carries occupy qubits `n..2n−2`.
pub fn transform_gamma_ft(k: u64, l: u64, n: usize) -> Result<Circuit> {
    check_odd(k, l)?;
    let carries: Vec<Qubit> = (n..n + n.saturating_sub(2)).collect();
    let mut c = Circuit::new(n + carries.len());
    for m in 2..=n {
        let width = m - 1;
        let half = ((k as i128 - l as i128) / 2).rem_euclid(1i128 << width) as u64;
        let u = ((half as u128 * inverse_mod_pow2(l, width)? as u128) as u64) & mask(width);
        let top: Vec<Qubit> = (n - width..n).collect();
        emit_add(&mut c, &top, &const_bits(u, width), &carries, Some(n - m))?;
    }
    c.mark_fault_tolerant()?;
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::{states_equal_up_to_phase, subspace_unitary};
    use crate::unitary::{dist, rz_matrix};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn amp(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn gamma_small_cases() {
        let g = gamma_state(GammaRegister::new(1, 1).unwrap()).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((g.amplitude(0) - amp(h, 0.0)).norm() < 1e-15);
        assert!((g.amplitude(1) - amp(-h, 0.0)).norm() < 1e-15);
        let g = gamma_state(GammaRegister::new(1, 2).unwrap()).unwrap();
        let expect = [amp(0.5, 0.0), amp(0.0, -0.5), amp(-0.5, 0.0), amp(0.0, 0.5)];
        for (y, e) in expect.iter().enumerate() {
            assert!((g.amplitude(y) - e).norm() < 1e-15);
        }
    }

    #[test]
    fn gamma_factorizes_per_bit() {
        let reg = GammaRegister::new(3, 2).unwrap();
        let mut product = StateVector::phased_plus(reg.bit_phase(0));
        product = product.tensor(&StateVector::phased_plus(reg.bit_phase(1))).unwrap();
        assert!(states_equal_up_to_phase(&gamma_state(reg).unwrap(), &product, 1e-14));
    }

    #[test]
    fn even_k_rejected() {
        assert_eq!(GammaRegister::new(2, 3), Err(Error::EvenMultiplier(2)));
        assert_eq!(solve_mod(4, 3, 1.0), Err(Error::EvenMultiplier(4)));
    }

    #[test]
    fn modular_examples() {
        assert_eq!(solve_mod(1, 3, PI).unwrap(), 4);
        assert_eq!(solve_mod(3, 3, PI / 2.0).unwrap(), 6);
        // brute force over u
        for k in [1u64, 3, 5, 7] {
            for phi in [0.1, 1.0, 2.5, 6.0] {
                let u = solve_mod(k, 3, phi).unwrap();
                let t = ((8.0 * phi / (2.0 * PI)) + 0.5).floor() as u64 % 8;
                assert_eq!((k * u) % 8, t);
            }
        }
    }

    #[test]
    fn precision_bound_holds() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in [3usize, 6, 10] {
            for _ in 0..200 {
                let phi: f64 = rng.random_range(0.0..2.0 * PI);
                let k = rng.random_range(0..(1u64 << (n - 1))) * 2 + 1;
                let u = solve_mod(k, n, phi).unwrap();
                let err = wrap_signed(phi - kickback_phase(GammaRegister::new(k, n).unwrap(), u));
                assert!(err.abs() <= phase_error_bound(n) + 1e-12);
            }
        }
    }

    #[test]
    fn rotation_matches_prediction() {
        for (phi, k, n) in [(0.0, 1, 3), (PI / 4.0, 1, 4), (1.0, 5, 6)] {
            let reg = GammaRegister::new(k, n).unwrap();
            let (kc, delta) = kickback_rotation(phi, reg, false, AdderSpec::ripple(n, true)).unwrap();
            let u = subspace_unitary(&kc.circuit, &kc.data(), &kc.background().unwrap()).unwrap();
            let d = dist(&u, &rz_matrix(phi)).unwrap();
            assert!(d <= delta.abs() / 2.0 + 1e-12, "phi={phi} d={d} delta={delta}");
            if phi == PI / 4.0 {
                assert!(delta.abs() < 1e-12);
            }
        }
    }

    #[test]
    fn controlled_rotation_is_crz() {
        let reg = GammaRegister::new(3, 5).unwrap();
        let phi = 2.0 * PI * 7.0 / 32.0;
        let (kc, delta) = kickback_rotation(phi, reg, true, AdderSpec::ripple(5, true)).unwrap();
        assert!(delta.abs() < 1e-12);
        let u = subspace_unitary(&kc.circuit, &kc.data(), &kc.background().unwrap()).unwrap();
        assert!(dist(&u, &crate::unitary::crz_matrix(phi)).unwrap() < 1e-7);
    }

    #[test]
    fn bits_for_accuracy_meets_target() {
        for eps in [1e-2, 1e-4, 1e-6] {
            let n = bits_for_accuracy(eps);
            let worst = (1.0 - (phase_error_bound(n) / 2.0).cos()).sqrt();
            assert!(worst <= eps);
            let looser = (1.0 - (phase_error_bound(n - 1) / 2.0).cos()).sqrt();
            assert!(looser > eps);
        }
    }

    fn transform_fidelity(c: &Circuit, k: u64, l: u64, n: usize) -> f64 {
        let gamma: Vec<Qubit> = (0..n).collect();
        let mut s = GammaRegister::new(k, n).unwrap().sparse_on(&gamma, c.n_qubits()).unwrap();
        s.apply_circuit(c).unwrap();
        let want = GammaRegister::new(l, n).unwrap().sparse_on(&gamma, c.n_qubits()).unwrap();
        let have: std::collections::HashMap<u64, C64> = s.entries().iter().copied().collect();
        want.entries().iter().map(|(key, a)| a.conj() * have.get(key).copied().unwrap_or_default()).sum::<C64>().norm()
    }

    #[test]
    fn transform_identity_and_examples() {
        assert!(transform_gamma(5, 5, 4).unwrap().is_empty());
        let c = transform_gamma(3, 1, 2).unwrap();
        let gates: Vec<_> = c.gates().collect();
        assert_eq!(gates.len(), 1);
        assert_eq!(gates[0].qubits(), &[0]);
        assert!(matches!(gates[0].kind(), crate::gate::GateKind::Rz(a) if (a - PI).abs() < 1e-12));
        assert!(transform_fidelity(&c, 3, 1, 2) > 1.0 - 1e-12);
        assert!(transform_fidelity(&transform_gamma(5, 3, 4).unwrap(), 5, 3, 4) > 1.0 - 1e-8);
    }

    #[test]
    fn transform_fault_tolerant_form() {
        for (k, l, n) in [(3, 1, 2), (5, 3, 4), (7, 1, 5), (1, 13, 5), (11, 9, 6)] {
            let c = transform_gamma_ft(k, l, n).unwrap();
            assert!(c.is_fault_tolerant());
            assert!(transform_fidelity(&c, k, l, n) > 1.0 - 1e-8, "k={k} l={l} n={n}");
        }
    }

    #[test]
    fn eigenstate_property_small() {
        let n = 4;
        for k in (1..16u64).step_by(2) {
            for u in 0..16u64 {
                let AdderOutput::Circuit(a) = build_adder(AdderSpec::ripple(n, false), u).unwrap() else { panic!() };
                let reg = GammaRegister::new(k, n).unwrap();
                let mut s = reg.sparse_on(&a.target, a.circuit.n_qubits()).unwrap();
                let before = s.clone();
                s.apply_circuit(&a.circuit).unwrap();
                let phase = crate::unitary::cis(kickback_phase(reg, u));
                let b: std::collections::HashMap<u64, C64> = before.entries().iter().copied().collect();
                for &(key, amp) in s.entries() {
                    assert!((amp - b[&key] * phase).norm() < 1e-10);
                }
            }
        }
    }
}
