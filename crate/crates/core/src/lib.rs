//! Fault-tolerant phase-rotation compilation, chemistry-simulation circuits and
//! resource estimation, with an exact simulator to check every construction.

pub mod circuit;
pub mod cost;
pub mod error;
pub mod firstq;
pub mod frontier;
pub mod gate;
pub mod kickback;
pub mod par;
pub mod qvr;
pub mod resource;
pub mod secondq;
pub mod sim;
pub mod synth;
pub mod unitary;
pub mod verify;

pub use circuit::Circuit;
pub use error::{Error, Result};
pub use gate::{Gate, GateKind, Qubit};
pub use resource::ResourceProfile;
pub use unitary::{crz_matrix, dist, rz_matrix, Unitary, C64};
