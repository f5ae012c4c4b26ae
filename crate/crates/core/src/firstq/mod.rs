//! First-quantized split-operator simulation on a position grid.

pub mod model;
pub mod newton;
pub mod schedule;
pub mod vstep;

pub use model::{
    adder_profile, build_kinetic_step, build_potential_step, estimate_first_quantized, multiply_profile,
    FirstQuantEstimate, GridSpec, PhysicalConstants, StepMode, StepModel, DEFAULT_ARITH_BITS,
};
pub use newton::{newton_invsqrt, worst_iterations, InitialGuess, NewtonResult, DEFAULT_FRAC_BITS};
pub use schedule::pair_schedule;
pub use vstep::{build_copy_tree, build_pair_potential, inv_r_table, r2_width, PairLayout, PairPotential};
