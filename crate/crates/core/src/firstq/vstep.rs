//! Gate-level potential step for one particle pair at tiny widths.

use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::gate::{Gate, Qubit};
use crate::kickback::{carry_count, emit_add, AddendBit, AdderSpec, GammaRegister};
use crate::qvr::{build_qvr_kickback, QvrParams};
use crate::sim::SparseState;

/// Wires of [`build_pair_potential`].
#[derive(Clone, Debug)]
pub struct PairLayout {
    pub bits_per_dim: usize,
    pub frac_bits: u32,
    /// Particle registers, dimension-major with `bits_per_dim` bits each.
    pub particles: [Vec<Qubit>; 2],
    pub diff: Vec<Qubit>,
    pub diff_copy: Vec<Qubit>,
    pub r2: Vec<Qubit>,
    pub carries: Vec<Qubit>,
    pub and_chain: Vec<Qubit>,
    pub inv_r: Vec<Qubit>,
    pub gamma: Vec<Qubit>,
    pub n_qubits: usize,
}

impl PairLayout {
    /// Both particle registers, first then second.
    pub fn data(&self) -> Vec<Qubit> {
        self.particles.iter().flatten().copied().collect()
    }
}

#[derive(Clone, Debug)]
pub struct PairPotential {
    pub circuit: Circuit,
    pub layout: PairLayout,
    pub params: QvrParams,
    pub register: Option<GammaRegister>,
}

impl PairPotential {
    /// Workspace at zero with the γ register in place.
    pub fn background(&self) -> Result<SparseState> {
        match self.register {
            Some(r) => r.sparse_on(&self.layout.gamma, self.layout.n_qubits),
            None => SparseState::basis(self.layout.n_qubits, 0),
        }
    }
}

/// Bits holding `3(2^p − 1)²`, the largest squared separation.
pub fn r2_width(bits_per_dim: usize) -> usize {
    let max = 3 * ((1u64 << bits_per_dim) - 1).pow(2);
    (64 - max.leading_zeros()) as usize
}

/// `round(2^F / √s)` on `F + 1` bits, saturating; `s = 0` maps to the cap.
pub fn inv_r_table(r2_bits: usize, frac_bits: u32) -> Vec<u64> {
    let cap = (1u64 << (frac_bits + 1)) - 1;
    (0..1u64 << r2_bits)
        .map(|s| if s == 0 { cap } else { ((2f64.powi(frac_bits as i32) / (s as f64).sqrt()).round() as u64).min(cap) })
        .collect()
}

fn add(c: &mut Circuit, target: &[Qubit], addend: &[AddendBit], carries: &[Qubit], control: Option<Qubit>) -> Result<()> {
    emit_add(c, target, addend, carries, control)
}

fn sub(c: &mut Circuit, target: &[Qubit], addend: &[AddendBit], carries: &[Qubit]) -> Result<()> {
    let mut tmp = Circuit::new(c.n_qubits());
    emit_add(&mut tmp, target, addend, carries, None)?;
    c.append(&tmp.inverse()?)
}

/// `r² += Σ_d (x_d − y_d)²`; difference and copy registers are restored.
fn accumulate_r2(c: &mut Circuit, l: &PairLayout) -> Result<()> {
    let p = l.bits_per_dim;
    let w = l.r2.len();
    let pad = |reg: &[Qubit]| -> Vec<AddendBit> {
        (0..w).map(|i| if i < reg.len() { AddendBit::Qubit(reg[i]) } else { AddendBit::Const(false) }).collect()
    };
    for dim in 0..3 {
        let x = &l.particles[0][dim * p..(dim + 1) * p];
        let y = &l.particles[1][dim * p..(dim + 1) * p];
        let mut diff = Circuit::new(c.n_qubits());
        add(&mut diff, &l.diff, &pad(x), &l.carries, None)?;
        sub(&mut diff, &l.diff, &pad(y), &l.carries)?;
        for (&a, &b) in l.diff.iter().zip(&l.diff_copy) {
            diff.push(Gate::cnot(a, b))?;
        }
        c.append(&diff)?;
        // two's complement square mod 2^w by shift-and-add
        for i in 0..w {
            let shifted: Vec<AddendBit> =
                (0..w).map(|j| if j < i { AddendBit::Const(false) } else { AddendBit::Qubit(l.diff_copy[j - i]) }).collect();
            add(c, &l.r2, &shifted, &l.carries, Some(l.diff[i]))?;
        }
        c.append(&diff.inverse()?)?;
    }
    Ok(())
}

/// XOR `table[r²]` into the `1/r` register, one multi-controlled pattern per entry.
fn lookup(c: &mut Circuit, l: &PairLayout, table: &[u64]) -> Result<()> {
    let w = l.r2.len();
    for (s, &v) in table.iter().enumerate() {
        if v == 0 {
            continue;
        }
        let flips: Vec<Qubit> = (0..w).filter(|&i| (s >> i) & 1 == 0).map(|i| l.r2[i]).collect();
        let mut select = Circuit::new(c.n_qubits());
        select.push_all(flips.iter().map(|&q| Gate::x(q)))?;
        if w == 1 {
            select.push(Gate::cnot(l.r2[0], l.and_chain[0]))?;
        } else {
            select.push(Gate::toffoli(l.r2[0], l.r2[1], l.and_chain[0]))?;
            for i in 2..w {
                select.push(Gate::toffoli(l.and_chain[i - 2], l.r2[i], l.and_chain[i - 1]))?;
            }
        }
        let all = *l.and_chain.last().expect("chain is non-empty");
        c.append(&select)?;
        for (i, &q) in l.inv_r.iter().enumerate() {
            if (v >> i) & 1 == 1 {
                c.push(Gate::cnot(all, q))?;
            }
        }
        c.append(&select.inverse()?)?;
    }
    Ok(())
}

/// Pair potential phase `e^{2πi ξ v(r²) / 2^F}` on two 3D particle registers, with
/// `v` the quantized inverse distance of [`inv_r_table`].
///
/// Computes `r²` by difference, copy and shift-add squaring, looks up `1/r`, applies
/// a kickback QVR and uncomputes everything but the γ register.
pub fn build_pair_potential(bits_per_dim: usize, frac_bits: u32, xi: f64) -> Result<PairPotential> {
    if bits_per_dim == 0 || frac_bits == 0 {
        return Err(Error::InvalidArgument("bits per dimension and fractional bits must be positive".into()));
    }
    let p = bits_per_dim;
    let w = r2_width(p);
    let vw = frac_bits as usize + 1;
    // phase 2πξ v/2^F is a QVR on the v register with ξ·2^{vw − F}
    let params = QvrParams::new(xi * 2f64.powi(vw as i32 - frac_bits as i32), vw)?;
    let n_gamma = params.width().max(0) as usize;
    let mut next = 0;
    let mut take = |k: usize| -> Vec<Qubit> {
        let r: Vec<Qubit> = (next..next + k).collect();
        next += k;
        r
    };
    let particles = [take(3 * p), take(3 * p)];
    let diff = take(w);
    let diff_copy = take(w);
    let r2 = take(w);
    let carries = take(carry_count(w.max(n_gamma)));
    let and_chain = take(w.saturating_sub(1).max(1));
    let inv_r = take(vw);
    let gamma = take(n_gamma);
    let layout = PairLayout {
        bits_per_dim: p,
        frac_bits,
        particles,
        diff,
        diff_copy,
        r2,
        carries,
        and_chain,
        inv_r,
        gamma,
        n_qubits: next,
    };
    let mut compute = Circuit::new(layout.n_qubits);
    accumulate_r2(&mut compute, &layout)?;
    lookup(&mut compute, &layout, &inv_r_table(w, frac_bits))?;
    let mut c = compute.clone();
    let qvr = build_qvr_kickback(&params, false, AdderSpec::ripple(n_gamma.max(1), false))?;
    let mut map: Vec<Qubit> = layout.inv_r.clone();
    map.extend(&layout.gamma);
    map.extend(&layout.carries[..carry_count(n_gamma)]);
    c.append_mapped(&qvr.circuit, &map)?;
    c.append(&compute.inverse()?)?;
    Ok(PairPotential { register: params.register()?, circuit: c, layout, params })
}

/// Fan a `width`-qubit register out to `holders` registers (the original included)
/// by doubling CNOT rounds; depth `⌈log₂ holders⌉`. Holder `h` sits on `h·width..`.
pub fn build_copy_tree(width: usize, holders: usize) -> Result<Circuit> {
    if width == 0 || holders == 0 {
        return Err(Error::InvalidArgument("copy tree needs a register and a holder".into()));
    }
    let mut c = Circuit::new(width * holders);
    let mut filled = 1;
    while filled < holders {
        let batch = filled.min(holders - filled);
        for h in 0..batch {
            for i in 0..width {
                c.push(Gate::cnot(h * width + i, (filled + h) * width + i))?;
            }
        }
        filled += batch;
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn widths_and_table() {
        assert_eq!(r2_width(1), 2);
        assert_eq!(r2_width(2), 5);
        let t = inv_r_table(5, 4);
        assert_eq!((t[0], t[1], t[4], t[27]), (31, 16, 8, 3));
    }

    #[test]
    fn copy_tree_depth() {
        for holders in 1..=9usize {
            let c = build_copy_tree(2, holders).unwrap();
            let expect = (holders as f64).log2().ceil() as usize;
            assert_eq!(c.depth(), expect, "holders {holders}");
        }
    }

    #[test]
    fn r2_arithmetic_on_basis_inputs() {
        let pot = build_pair_potential(1, 2, 0.0).unwrap();
        let l = &pot.layout;
        let mut c = Circuit::new(l.n_qubits);
        accumulate_r2(&mut c, l).unwrap();
        let data = l.data();
        for x in 0..1u64 << data.len() {
            let key = data.iter().enumerate().fold(0u64, |k, (i, &q)| k | (((x >> i) & 1) << q));
            let mut s = SparseState::basis(l.n_qubits, key).unwrap();
            s.apply_circuit(&c).unwrap();
            let (k, _) = s.entries()[0];
            let r2: u64 = l.r2.iter().enumerate().map(|(i, &q)| ((k >> q) & 1) << i).sum();
            let expect: u64 = (0..3).map(|d| (((x >> d) & 1) as i64 - ((x >> (3 + d)) & 1) as i64).pow(2) as u64).sum();
            assert_eq!(r2, expect, "input {x:06b}");
            let others = k & !l.r2.iter().chain(&data).fold(0u64, |m, &q| m | 1 << q);
            assert_eq!(others, 0);
        }
    }
}
