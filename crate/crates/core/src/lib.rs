//! Construction and certification of task-oriented maximally entangled
//! multi-qubit states.
//!
//! The crate is organised bottom-up:
//!
//! * [`state`]: dense pure states, local operators, partial traces, Schmidt
//!   spectra, entropy and negativity;
//! * [`catalog`]: named resource states;
//! * [`operators`]: named unitaries, the two-qubit table and its recursive
//!   lift to more qubits, linear-independence rank;
//! * [`capacity`]: teleportation and superdense-coding capacities, exact
//!   protocol simulation and the maximality verdict;
//! * [`lu`]: local-unitary invariants and conversion obstructions;
//! * [`io`]: JSON documents shared with the command-line tool.

pub mod capacity;
pub mod catalog;
pub mod clique;
pub mod error;
pub mod io;
pub mod linalg;
pub mod lu;
pub mod operators;
pub mod partition;
pub mod pauli;
pub mod random;
pub mod state;
pub mod tol;

pub use catalog::{make_state, BellKind, StateSpec};
pub use error::{Error, Result};
pub use partition::Partition;
pub use state::{DensityMatrix, LocalOperator, PureState, SchmidtSpectrum};
