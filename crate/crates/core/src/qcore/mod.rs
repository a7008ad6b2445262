//! Value-semantic complex linear algebra: states, density matrices,
//! channels, measurement and information measures.

pub mod channel;
pub mod cjson;
pub mod density;
pub mod info;
pub mod linalg;
pub mod measure;
pub mod random;
pub mod register;
pub mod state;

pub use channel::KrausChannel;
pub use density::DensityMatrix;
pub use info::{entanglement_entropy, fidelity, von_neumann_entropy};
pub use linalg::{CMatrix, CVector, C64};
pub use measure::{measure_projective, Measurement, MeasurementBranch, MeasurementMode};
pub use register::{Owner, Register, SubsystemLabel};
pub use state::PureState;

use crate::error::Result;

/// Tolerance for construction invariants (normalization, Hermiticity, trace).
pub const CONSTRUCTION_TOL: f64 = 1e-12;
/// Tolerance for derived equalities (unitarity, fidelity, completeness).
pub const DERIVED_TOL: f64 = 1e-10;
/// Branches below this probability are dropped rather than renormalized.
pub const PRUNE_TOL: f64 = 1e-14;

pub fn tensor(a: &PureState, b: &PureState) -> Result<PureState> {
    a.tensor(b)
}

pub fn apply_unitary(state: &PureState, u: &CMatrix, targets: &[&str]) -> Result<PureState> {
    state.apply_unitary(u, targets)
}

pub fn partial_trace(rho: &DensityMatrix, keep: &[&str]) -> Result<DensityMatrix> {
    rho.partial_trace(keep)
}
