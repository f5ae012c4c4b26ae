//! CNOT ladders accumulating Jordan-Wigner parities, direct or via teleportation.

use serde::{Deserialize, Serialize};

use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::gate::{Gate, Qubit};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LadderMode {
    Direct,
    Teleported,
}

/// Prefix-parity ladder over `span` wires (`0..span`): wire `k` ends holding
/// `x_0 ⊕ … ⊕ x_k`.
///
/// Teleported mode adds a Bell pair per middle wire on qubits `span..3·span−4`,
/// fires every CNOT at once, then teleports each middle wire into its pair through
/// a Bell measurement. The outputs of middle wires move to the pair's second
/// qubit and carry frame corrections from the measurement record.
pub fn build_jw_ladder(span: usize, mode: LadderMode) -> Result<Circuit> {
    if span < 2 {
        return Err(Error::SpanTooShort(span));
    }
    if mode == LadderMode::Direct || span == 2 {
        let mut c = Circuit::new(span);
        c.push_all((1..span).map(|i| Gate::cnot(i - 1, i)))?;
        return Ok(c);
    }
    let middle = span - 2;
    let a = |i: usize| -> Qubit { span + 2 * (i - 1) };
    let b = |i: usize| -> Qubit { span + 2 * (i - 1) + 1 };
    let mut c = Circuit::new(span + 2 * middle);
    for i in 1..=middle {
        c.push(Gate::h(a(i)))?;
        c.push(Gate::cnot(a(i), b(i)))?;
    }
    // every ladder CNOT fires in the same layer, once the pairs exist
    c.barrier(0..c.n_qubits())?;
    for i in 1..span {
        let src = if i == 1 { 0 } else { b(i - 1) };
        c.push(Gate::cnot(src, i))?;
    }
    // slots: a_i → 2(i−1), b_i → 2(i−1)+1
    for i in 1..=middle {
        c.push(Gate::cnot(i, a(i)))?;
        c.push(Gate::h(i))?;
        c.push(Gate::measure(i, 2 * (i - 1) + 1))?;
        c.push(Gate::measure(a(i), 2 * (i - 1)))?;
    }
    for k in 1..span {
        let x: Vec<usize> = (1..=k.min(middle)).map(|i| 2 * (i - 1)).collect();
        let z: Vec<usize> = if k <= middle { vec![2 * (k - 1) + 1] } else { vec![] };
        let out = if k <= middle { b(k) } else { k };
        c.push(Gate::frame(out, x, z))?;
    }
    let layout: Vec<Qubit> = (0..span).map(|k| if k == 0 || k == span - 1 { k } else { b(k) }).collect();
    c.set_output_layout(layout)?;
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::channel_equal;

    #[test]
    fn span_two_is_one_cnot() {
        for mode in [LadderMode::Direct, LadderMode::Teleported] {
            let c = build_jw_ladder(2, mode).unwrap();
            assert_eq!(c.gate_count(), 1);
        }
        assert_eq!(build_jw_ladder(1, LadderMode::Direct).unwrap_err(), Error::SpanTooShort(1));
    }

    #[test]
    fn direct_depth_is_linear() {
        for span in 2..8 {
            assert_eq!(build_jw_ladder(span, LadderMode::Direct).unwrap().depth(), span - 1);
        }
    }

    #[test]
    fn teleported_is_equivalent_and_flat() {
        let depths: Vec<usize> =
            (3..=6).map(|s| build_jw_ladder(s, LadderMode::Teleported).unwrap().depth()).collect();
        assert!(depths.windows(2).all(|w| w[0] == w[1]), "{depths:?}");
        for span in 3..=5 {
            let d = build_jw_ladder(span, LadderMode::Direct).unwrap();
            let t = build_jw_ladder(span, LadderMode::Teleported).unwrap();
            assert!(t.n_qubits() <= 3 * span - 4);
            assert!(channel_equal(&d, &t, span, 10, 5).unwrap(), "span {span}");
        }
    }
}
