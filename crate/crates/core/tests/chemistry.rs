use std::f64::consts::PI;

use ftqc_core::secondq::{apply_cutoff, parse_integrals, phase_estimation_bit, table_terms};
use ftqc_core::sim::{embed, Simulator, StateVector};
use ftqc_core::verify::SYNTHETIC_TABLE;
use ftqc_core::C64;

#[test]
fn synthetic_fixture_cutoff() {
    let table = parse_integrals(SYNTHETIC_TABLE).unwrap();
    assert_eq!((table.n_orbitals, table.len()), (12, 231));
    let (kept, report) = apply_cutoff(&table, 1e-10).unwrap();
    assert_eq!(kept.len(), 99);
    assert_eq!(report.dropped, 132);
    assert_eq!(table_terms(&kept).len(), 99);
}

/// Two orbitals at energy `e` coupled by hopping `t`; the symmetric one-electron
/// state has energy `e + t` and the Trotter step is exact because the terms commute
/// within the one-electron sector.
#[test]
fn one_bit_phase_estimation() {
    let (e, t) = (1.0, 0.5);
    let table = parse_integrals(&format!("1 1 {e}\n2 2 {e}\n1 2 {t}\n")).unwrap();
    let dt = PI / (e + t);
    let c = phase_estimation_bit(&table, dt, 1).unwrap();
    let h = 0.5f64.sqrt();
    let symmetric = StateVector::from_amplitudes(
        2,
        vec![C64::new(0.0, 0.0), C64::new(h, 0.0), C64::new(h, 0.0), C64::new(0.0, 0.0)],
    )
    .unwrap();
    let vacuum = StateVector::zero(2).unwrap();
    for (state, bit) in [(symmetric, true), (vacuum, false)] {
        let input = embed(&state, &[0, 1], c.n_qubits()).unwrap();
        for seed in 0..16 {
            let out = Simulator::new(seed).run(&c, &input).unwrap();
            assert_eq!(out.record[0], bit, "seed {seed}");
        }
    }
}
