//! Exact simulation used as the verification oracle.

pub mod dense;
pub mod frame;
pub mod sparse;

pub use dense::{run, states_equal_up_to_phase, FrameMode, RunOutput, Simulator, StateVector, SIM_QUBIT_CAP};
pub use frame::PauliFrame;
pub use sparse::SparseState;

use std::collections::HashMap;

use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::gate::Qubit;
use crate::unitary::{Unitary, C64};

fn gather(key: u64, positions: &[Qubit]) -> usize {
    positions.iter().enumerate().fold(0, |acc, (i, &q)| acc | ((((key >> q) & 1) as usize) << i))
}

fn scatter(value: usize, positions: &[Qubit]) -> u64 {
    positions.iter().enumerate().fold(0, |acc, (i, &q)| acc | ((((value >> i) & 1) as u64) << q))
}

fn clear_bits(key: u64, positions: &[Qubit]) -> u64 {
    positions.iter().fold(key, |k, &q| k & !(1u64 << q))
}

/// Full unitary of a measurement-free circuit on at most 12 qubits.
pub fn circuit_unitary(c: &Circuit) -> Result<Unitary> {
    if c.n_qubits() > 12 {
        return Err(Error::QubitCap { requested: c.n_qubits(), cap: 12 });
    }
    let all: Vec<Qubit> = (0..c.n_qubits()).collect();
    subspace_unitary(c, &all, &SparseState::basis(c.n_qubits(), 0)?)
}

/// Action of `c` on the data wires with every other qubit prepared in `background`.
///
/// `background` spans the whole register with the data qubits at zero. Data wire `i`
/// enters on `data[i]` and leaves on `c.output_qubit(i)` when a layout is set. The
/// non-data qubits must return to `background` up to a phase shared by all inputs;
/// otherwise `AncillaNotRestored` reports the weight that stayed.
pub fn subspace_unitary(c: &Circuit, data: &[Qubit], background: &SparseState) -> Result<Unitary> {
    if background.n_qubits() != c.n_qubits() {
        return Err(Error::DimensionMismatch(background.n_qubits(), c.n_qubits()));
    }
    let outputs: Vec<Qubit> = match c.output_layout() {
        Some(_) => (0..data.len()).map(|i| c.output_qubit(i)).collect(),
        None => data.to_vec(),
    };
    let bg: HashMap<u64, C64> = background.entries().iter().copied().collect();
    let dim = 1usize << data.len();
    let mut m = DMatrix::zeros(dim, dim);
    for x in 0..dim {
        let offset = scatter(x, data);
        let mut s = SparseState::from_entries(
            c.n_qubits(),
            background.entries().iter().map(|&(k, a)| (k | offset, a)),
        )?;
        s.apply_circuit(c)?;
        let mut col = vec![C64::new(0.0, 0.0); dim];
        for &(k, a) in s.entries() {
            if let Some(b) = bg.get(&clear_bits(k, &outputs)) {
                col[gather(k, &outputs)] += b.conj() * a;
            }
        }
        let kept: f64 = col.iter().map(|a| a.norm_sqr()).sum();
        if (kept - 1.0).abs() > 1e-9 {
            return Err(Error::AncillaNotRestored(kept));
        }
        for (y, a) in col.into_iter().enumerate() {
            m[(y, x)] = a;
        }
    }
    Unitary::from_matrix(m)
}

/// Place `data` on qubits `positions` of an `n`-qubit register, others zero.
pub fn embed(data: &StateVector, positions: &[Qubit], n: usize) -> Result<StateVector> {
    let mut amps = vec![C64::new(0.0, 0.0); 1 << n];
    for (x, a) in data.amplitudes().iter().enumerate() {
        amps[scatter(x, positions) as usize] = *a;
    }
    StateVector::from_amplitudes(n, amps)
}

/// Reduced state of `positions` when it factors from the rest at tolerance `tol`.
pub fn factor_out(state: &StateVector, positions: &[Qubit], tol: f64) -> Option<StateVector> {
    let dim = 1usize << positions.len();
    let mut columns: HashMap<u64, Vec<C64>> = HashMap::new();
    for (k, a) in state.amplitudes().iter().enumerate() {
        if a.norm_sqr() == 0.0 {
            continue;
        }
        let rest = clear_bits(k as u64, positions);
        columns.entry(rest).or_insert_with(|| vec![C64::new(0.0, 0.0); dim])[gather(k as u64, positions)] = *a;
    }
    let norm = |v: &[C64]| v.iter().map(|a| a.norm_sqr()).sum::<f64>();
    let mut keys: Vec<u64> = columns.keys().copied().collect();
    keys.sort_unstable();
    let best = keys.iter().copied().max_by(|a, b| norm(&columns[a]).total_cmp(&norm(&columns[b])))?;
    let scale = norm(&columns[&best]).sqrt();
    let v: Vec<C64> = columns[&best].iter().map(|a| a / scale).collect();
    let mut residual = 0.0;
    for col in columns.values() {
        let overlap: C64 = v.iter().zip(col).map(|(p, q)| p.conj() * q).sum();
        residual += col.iter().zip(&v).map(|(q, p)| (q - p * overlap).norm_sqr()).sum::<f64>();
    }
    if residual > tol {
        return None;
    }
    StateVector::from_amplitudes(positions.len(), v).ok()
}

/// Compare two circuits on `trials` random data states after frame correction.
///
/// Both circuits take data on wires `0..n_data` with all other qubits in `|0⟩`, and
/// may use measurements and frame updates internally.
pub fn channel_equal(a: &Circuit, b: &Circuit, n_data: usize, trials: usize, seed: u64) -> Result<bool> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let wires: Vec<Qubit> = (0..n_data).collect();
    for trial in 0..trials {
        let psi = StateVector::random(n_data, &mut rng)?;
        let mut outs = Vec::with_capacity(2);
        for (i, c) in [a, b].into_iter().enumerate() {
            let input = embed(&psi, &wires, c.n_qubits())?;
            let run_seed = seed ^ ((trial as u64) << 8) ^ (i as u64 + 1);
            let out = Simulator::new(run_seed).run(c, &input)?.corrected_state();
            let positions: Vec<Qubit> = (0..n_data).map(|w| c.output_qubit(w)).collect();
            match factor_out(&out, &positions, 1e-10) {
                Some(v) => outs.push(v),
                None => return Ok(false),
            }
        }
        if !states_equal_up_to_phase(&outs[0], &outs[1], 1e-8) {
            return Ok(false);
        }
    }
    Ok(true)
}
