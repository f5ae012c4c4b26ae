//! Second-quantized simulation: integral tables, Jordan-Wigner term circuits,
//! teleported parity ladders and phase-estimation resource estimates.

pub mod estimate;
pub mod excitation;
pub mod integrals;
pub mod ladder;
pub mod pauli;

pub use estimate::{estimate_second_quantized, SecondQuantEstimate, TrotterPlan};
pub use excitation::{build_excitation, build_trotter_step, phase_estimation_bit, table_terms, Synthesis, Term};
pub use integrals::{apply_cutoff, load_integrals, parse_integrals, CutoffReport, IntegralTable};
pub use ladder::{build_jw_ladder, LadderMode};
