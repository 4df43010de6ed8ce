//! Few-qubit quantum simulation for the classic entanglement arguments.
//!
//! The crate is organized bottom-up:
//!
//! - [`linalg`]: dense complex vectors and matrices (dimension ≤ 16 in practice).
//! - [`states`]: spin kets, the singlet, photon polarization states, GHZ and box states.
//! - [`density`]: density operators, partial trace, and the no-signaling experiment.
//! - [`correlations`]: EPR joint probabilities, collapse, photon amplitudes, P(â, b̂).
//! - [`bell`]: Bell and CHSH evaluators plus a seeded local-hidden-variable harness.
//! - [`ghz`]: the three-qubit operator algebra and the realism enumeration.
//! - [`mz`]: mode-labelled amplitude propagation through Mach-Zehnder interferometers.

pub mod bell;
pub mod correlations;
pub mod density;
pub mod error;
pub mod ghz;
pub mod linalg;
pub mod mz;
pub mod states;

pub use error::{Error, Result};
pub use linalg::{Matrix, StateVector, C64, EPS_EQ, EPS_NORM};
