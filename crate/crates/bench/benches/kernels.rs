use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use ftqc_core::firstq::{estimate_first_quantized, GridSpec, PhysicalConstants, StepMode, DEFAULT_ARITH_BITS};
use ftqc_core::kickback::{build_adder, kickback_rotation, AdderSpec, GammaRegister};
use ftqc_core::secondq::{estimate_second_quantized, parse_integrals, TrotterPlan};
use ftqc_core::cost::RotationMethod;
use ftqc_core::synth::{build_net, min_sequence, SequenceDb};
use ftqc_core::{rz_matrix, verify};

fn adders(c: &mut Criterion) {
    let mut g = c.benchmark_group("adder");
    for n in [8usize, 16, 32] {
        g.bench_with_input(BenchmarkId::new("ripple", n), &n, |b, &n| {
            b.iter(|| build_adder(AdderSpec::ripple(n, true), black_box(0x5a5a_5a5a & ((1 << n.min(31)) - 1))).unwrap())
        });
    }
    g.bench_function("kickback_rotation_16", |b| {
        let reg = GammaRegister::new(1, 16).unwrap();
        b.iter(|| kickback_rotation(black_box(0.7), reg, true, AdderSpec::ripple(16, true)).unwrap())
    });
    g.finish();
}

fn nets(c: &mut Criterion) {
    let mut g = c.benchmark_group("net");
    g.sample_size(10);
    g.bench_function("build_10", |b| b.iter(|| build_net(black_box(10)).unwrap()));
    SequenceDb::shared(12).unwrap();
    g.bench_function("min_sequence_12", |b| b.iter(|| min_sequence(&rz_matrix(black_box(0.3)), 0.15, 12).unwrap()));
    g.finish();
}

fn simulator(c: &mut Criterion) {
    let mut g = c.benchmark_group("sparse");
    for n in [6usize, 10, 14] {
        let reg = GammaRegister::new(1, n).unwrap();
        let (kc, _) = kickback_rotation(0.9, reg, false, AdderSpec::ripple(n, true)).unwrap();
        let start = kc.background().unwrap();
        g.bench_with_input(BenchmarkId::new("kickback_circuit", n), &n, |b, _| {
            b.iter(|| {
                let mut s = start.clone();
                s.apply_circuit(&kc.circuit).unwrap();
                s
            })
        });
    }
    g.finish();
}

fn estimators(c: &mut Criterion) {
    let mut g = c.benchmark_group("estimator");
    let table = parse_integrals(verify::SYNTHETIC_TABLE).unwrap();
    for method in RotationMethod::ALL {
        let plan = TrotterPlan::new(0.1, 10, method, 1e-3);
        g.bench_function(BenchmarkId::new("second_quantized", method.name()), |b| {
            b.iter(|| estimate_second_quantized(black_box(&table), &plan).unwrap())
        });
    }
    for b_count in [4usize, 16] {
        let grid = GridSpec::new(10, b_count).unwrap();
        let consts = PhysicalConstants::electrons(b_count, 0.01);
        g.bench_with_input(BenchmarkId::new("first_quantized", b_count), &b_count, |b, _| {
            b.iter(|| estimate_first_quantized(&grid, &consts, 1023, StepMode::FullyParallel, DEFAULT_ARITH_BITS).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, adders, nets, simulator, estimators);
criterion_main!(benches);
