use std::collections::BTreeMap;
use std::path::Path;

use ftqc_core::cost::RotationMethod;
use ftqc_core::firstq::{estimate_first_quantized, GridSpec, PhysicalConstants, StepMode};
use ftqc_core::frontier::{efficient_frontier, optimize_cost, CostFunction, FrontierPoint};
use ftqc_core::kickback::{bits_for_accuracy, kickback_profile, kickback_rotation, phase_error_bound, AdderKind, AdderSpec, GammaRegister};
use ftqc_core::par::simulate_statistics;
use ftqc_core::qvr::{build_qvr_bitwise, build_qvr_kickback, BitwiseMethod, QvrParams};
use ftqc_core::secondq::{apply_cutoff, estimate_second_quantized, load_integrals, LadderMode, TrotterPlan};
use ftqc_core::synth::{min_sequence, solovay_kitaev, GateSequence, SequenceDb};
use ftqc_core::{rz_matrix, verify};
use serde_json::{json, Value};

use crate::args::*;
use crate::error::CliError;
use crate::output::{read_json, write_csv};

pub type Outcome = Result<Value, CliError>;

fn sequence_json(s: &GateSequence) -> Value {
    json!({
        "sequence": s.gates.iter().map(|g| g.name()).collect::<Vec<_>>(),
        "length": s.len(),
        "t_count": s.t_count(),
        "distance": s.achieved_distance,
        "satisfied": s.satisfied,
    })
}

pub fn synth(a: &SynthArgs) -> Outcome {
    let target = rz_matrix(a.angle);
    let seq = match a.method {
        SynthMethod::Min => min_sequence(&target, a.epsilon, a.max_len)?,
        SynthMethod::Sk => {
            let db = SequenceDb::shared(a.max_len)?;
            let mut s = solovay_kitaev(&target, a.level, &db)?;
            s.satisfied = s.achieved_distance <= a.epsilon;
            s
        }
    };
    let mut v = sequence_json(&seq);
    v["angle"] = json!(a.angle);
    v["epsilon"] = json!(a.epsilon);
    v["method"] = json!(match a.method {
        SynthMethod::Min => "min",
        SynthMethod::Sk => "sk",
    });
    Ok(v)
}

pub fn kickback(a: &KickbackArgs) -> Outcome {
    let n = match (a.bits, a.epsilon) {
        (Some(n), _) => n,
        (None, Some(eps)) => bits_for_accuracy(eps),
        (None, None) => return Err(CliError::Usage("kickback needs --bits or --epsilon".into())),
    };
    let reg = GammaRegister::new(a.k, n)?;
    let spec = AdderSpec::ripple(n, true);
    let (circuit, delta) = kickback_rotation(a.phi, reg, a.controlled, spec)?;
    let lookahead = kickback_profile(a.phi, reg, a.controlled, AdderSpec { kind: AdderKind::LookaheadModel, ..spec })?;
    Ok(json!({
        "phi": a.phi,
        "bits": n,
        "k": a.k,
        "controlled": a.controlled,
        "addend": circuit.addend,
        "phase_error": delta,
        "error_bound": phase_error_bound(n),
        "ripple": circuit.circuit.ft_profile(),
        "lookahead_model": lookahead,
    }))
}

pub fn qvr(a: &QvrArgs) -> Outcome {
    let params = QvrParams::new(a.xi, a.bits)?;
    let (profile, register) = match a.method {
        QvrMethod::Kickback => {
            let c = build_qvr_kickback(&params, a.controlled, AdderSpec::ripple(params.width().max(1) as usize, true))?;
            (c.circuit.ft_profile(), c.register.map(|r| json!({"k": r.k(), "n": r.n()})))
        }
        QvrMethod::Bitwise => {
            let c = build_qvr_bitwise(a.bits, a.xi, a.epsilon, a.controlled, BitwiseMethod::Sequence)?;
            (c.profile(), None)
        }
    };
    Ok(json!({
        "xi": a.xi,
        "bits": a.bits,
        "method": match a.method { QvrMethod::Kickback => "kickback", QvrMethod::Bitwise => "bitwise" },
        "controlled": a.controlled,
        "params": params,
        "gamma_register": register,
        "profile": profile,
    }))
}

pub fn par_sim(a: &ParSimArgs, seed: u64) -> Outcome {
    let stats = simulate_statistics(a.phi, a.ancillas, a.trials, seed)?;
    Ok(json!({
        "phi": a.phi,
        "ancillas": a.ancillas,
        "seed": seed,
        "trials": stats.trials,
        "mean_rounds": stats.mean_rounds,
        "fallback_rate": stats.fallback_rate,
        "histogram": stats.histogram.iter().map(|(rounds, count)| json!({"rounds": rounds, "count": count})).collect::<Vec<_>>(),
    }))
}

fn methods(arg: &str) -> Result<Vec<RotationMethod>, CliError> {
    if arg == "all" {
        return Ok(RotationMethod::ALL.to_vec());
    }
    arg.split(',').map(|m| m.trim().parse::<RotationMethod>().map_err(CliError::from)).collect()
}

pub fn estimate_2q(a: &Estimate2qArgs) -> Outcome {
    let table = load_integrals(&a.integrals)?;
    let (table, report) = apply_cutoff(&table, a.cutoff)?;
    let mut estimates = Vec::new();
    let mut points = Vec::new();
    for method in methods(&a.method)? {
        let mut plan = TrotterPlan::new(a.dt, a.readout_bits, method, a.epsilon);
        plan.seconds_per_gate = a.seconds_per_gate;
        plan.ladder = match a.ladder {
            LadderArg::Direct => LadderMode::Direct,
            LadderArg::Teleported => LadderMode::Teleported,
        };
        let e = estimate_second_quantized(&table, &plan)?;
        let mut point = FrontierPoint::new(e.total.qubits, e.total.depth, method.name());
        point.params.insert("epsilon".into(), a.epsilon);
        point.params.insert("readout_bits".into(), a.readout_bits as f64);
        points.push(point);
        estimates.push(e);
    }
    if let Some(path) = &a.csv {
        let rows = report.curve.iter().map(|(t, n)| vec![format!("{t:e}"), n.to_string()]);
        write_csv(path, &["threshold", "retained"], rows)?;
    }
    Ok(json!({
        "integrals": a.integrals.display().to_string(),
        "orbitals": table.n_orbitals,
        "cutoff": report,
        "estimates": estimates,
        "points": points,
    }))
}

fn mode_of(m: ModeArg) -> StepMode {
    match m {
        ModeArg::Inplace => StepMode::InPlace,
        ModeArg::Parallel => StepMode::FullyParallel,
    }
}

fn mode_name(m: StepMode) -> &'static str {
    match m {
        StepMode::InPlace => "inplace",
        StepMode::FullyParallel => "parallel",
    }
}

pub fn estimate_1q(a: &Estimate1qArgs) -> Outcome {
    let grid = GridSpec::new(a.grid_bits, a.particles)?;
    let consts = PhysicalConstants::electrons(a.particles, a.dt);
    let mode = mode_of(a.mode);
    let e = estimate_first_quantized(&grid, &consts, a.steps, mode, a.width)?;
    if let Some(path) = &a.csv {
        let mut rows = Vec::new();
        for b in 2..=a.particles {
            let g = GridSpec::new(a.grid_bits, b)?;
            let c = PhysicalConstants::electrons(b, a.dt);
            for m in [StepMode::InPlace, StepMode::FullyParallel] {
                let t = estimate_first_quantized(&g, &c, a.steps, m, a.width)?.total;
                rows.push(vec![
                    b.to_string(),
                    mode_name(m).to_string(),
                    t.depth.to_string(),
                    t.t_count.to_string(),
                    t.qubits.to_string(),
                ]);
            }
        }
        write_csv(path, &["particles", "mode", "depth", "t_count", "qubits"], rows)?;
    }
    let mut point = FrontierPoint::new(e.total.qubits, e.total.depth, format!("firstq-{}", mode_name(mode)));
    point.params.insert("particles".into(), a.particles as f64);
    point.params.insert("grid_bits".into(), a.grid_bits as f64);
    point.params.insert("width".into(), a.width as f64);
    Ok(json!({
        "particles": a.particles,
        "grid_bits": a.grid_bits,
        "steps": a.steps,
        "mode": mode_name(mode),
        "width": a.width,
        "newton_iterations": e.potential.newton_iterations,
        "copy_depth": e.potential.copy_depth,
        "one_to_many_copy_depth": e.potential.one_to_many_copy_depth,
        "coulomb_capped": e.coulomb_capped,
        "kinetic_half": e.kinetic_half.profile,
        "potential": e.potential.profile,
        "per_step": e.per_step,
        "total": e.total,
        "points": [point],
    }))
}

fn points_in(path: &Path) -> Result<Vec<FrontierPoint>, CliError> {
    let v = read_json(path)?;
    let list = match &v {
        Value::Array(_) => v,
        Value::Object(o) => o.get("points").cloned().ok_or_else(|| {
            CliError::Usage(format!("{}: no `points` array", path.display()))
        })?,
        _ => return Err(CliError::Usage(format!("{}: expected an object or an array", path.display()))),
    };
    Ok(serde_json::from_value(list)?)
}

pub fn frontier(a: &FrontierArgs) -> Outcome {
    let cost: CostFunction = a.cost.parse()?;
    let mut by_method: BTreeMap<String, Vec<FrontierPoint>> = BTreeMap::new();
    for path in &a.inputs {
        for p in points_in(path)? {
            by_method.entry(p.method.clone()).or_default().push(p);
        }
    }
    if by_method.is_empty() {
        return Err(ftqc_core::Error::Empty("frontier points").into());
    }
    let frontiers: BTreeMap<String, Vec<FrontierPoint>> =
        by_method.iter().map(|(m, pts)| Ok((m.clone(), efficient_frontier(pts)?))).collect::<Result<_, CliError>>()?;
    let best = optimize_cost(&frontiers, cost)?;
    if let Some(path) = &a.csv {
        let rows = frontiers
            .iter()
            .flat_map(|(m, pts)| pts.iter().map(move |p| vec![m.clone(), p.qubits.to_string(), p.depth.to_string()]));
        write_csv(path, &["method", "qubits", "depth"], rows)?;
    }
    Ok(json!({ "cost": a.cost, "frontiers": frontiers, "optimum": best }))
}

pub fn run_verify(a: &VerifyArgs) -> Outcome {
    let reports = match a.criterion {
        Some(id) => vec![verify::run_criterion(id)?],
        None => verify::run_all(),
    };
    for r in &reports {
        eprintln!("{r}");
    }
    let failed = reports.iter().filter(|r| !r.passed).count();
    if failed > 0 {
        return Err(CliError::Verification(failed));
    }
    Ok(json!({ "criteria": reports.iter().map(|r| json!({"id": r.id, "name": r.name, "passed": r.passed, "detail": r.detail})).collect::<Vec<_>>() }))
}
