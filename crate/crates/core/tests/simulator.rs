use std::f64::consts::PI;

use ftqc_core::circuit::toffoli_network;
use ftqc_core::secondq::{build_jw_ladder, LadderMode};
use ftqc_core::sim::{circuit_unitary, states_equal_up_to_phase, FrameMode, Simulator, StateVector};
use ftqc_core::{dist, Circuit, Gate};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn norm_is_stable_over_ten_thousand_gates() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let n = 6;
    let mut s = StateVector::random(n, &mut rng).unwrap();
    let mut wires: Vec<usize> = (0..n).collect();
    for _ in 0..10_000 {
        wires.shuffle(&mut rng);
        let [a, b, c] = [wires[0], wires[1], wires[2]];
        let g = match rng.random_range(0..6) {
            0 => Gate::h(a),
            1 => Gate::t(a),
            2 => Gate::rz(a, rng.random_range(0.0..2.0 * PI)),
            3 => Gate::cnot(a, b),
            4 => Gate::s(a),
            _ => Gate::toffoli(a, b, c),
        };
        s.apply_gate(&g).unwrap();
    }
    assert!((s.norm_sqr() - 1.0).abs() < 1e-10);
}

#[test]
fn plus_state_measures_evenly() {
    let mut c = Circuit::new(1);
    c.push(Gate::h(0)).unwrap();
    c.push(Gate::measure(0, 0)).unwrap();
    let trials = 20_000;
    let mut sim = Simulator::new(11);
    let ones = (0..trials).filter(|_| sim.run(&c, &StateVector::zero(1).unwrap()).unwrap().record[0]).count();
    let sigma = (0.25 / trials as f64).sqrt();
    assert!((ones as f64 / trials as f64 - 0.5).abs() < 4.0 * sigma);
}

#[test]
fn tracked_and_explicit_frames_agree() {
    let c = build_jw_ladder(4, LadderMode::Teleported).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for seed in 0..20 {
        let data = StateVector::random(4, &mut rng).unwrap();
        let input = ftqc_core::sim::embed(&data, &[0, 1, 2, 3], c.n_qubits()).unwrap();
        let tracked = Simulator::new(seed).run(&c, &input).unwrap();
        let explicit = Simulator::new(seed).with_mode(FrameMode::Explicit).run(&c, &input).unwrap();
        assert_eq!(tracked.record, explicit.record);
        assert!(states_equal_up_to_phase(&tracked.corrected_state(), &explicit.corrected_state(), 1e-10));
    }
}

#[test]
fn toffoli_network_matches_toffoli() {
    let mut c = Circuit::new(3);
    c.push_all(toffoli_network(0, 1, 2)).unwrap();
    assert_eq!(c.gates().filter(|g| g.kind().is_t()).count(), 7);
    let mut reference = Circuit::new(3);
    reference.push(Gate::toffoli(0, 1, 2)).unwrap();
    let u = circuit_unitary(&c).unwrap();
    assert!(dist(&u, &circuit_unitary(&reference).unwrap()).unwrap() < 1e-12);
    for x in 0..8usize {
        let y = if x & 3 == 3 { x ^ 4 } else { x };
        assert!((u.get(y, x).norm() - 1.0).abs() < 1e-12);
    }
}
