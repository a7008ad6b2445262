//! Dephasing noise on the remote rotation, χ-matrix process representation,
//! process tomography from four probe states, and average fidelities.

pub mod chi;
pub mod fidelity;
pub mod optical;
pub mod qpt;

use serde::{Deserialize, Serialize};

pub use chi::{chi_from_channel, channel_from_chi, pauli_basis, ChiMatrix};
pub use fidelity::{average_fidelity, dephasing_average_fidelity, FidelityMethod, DEFAULT_SAMPLES};
pub use optical::{
    entangled_source, optical_experiment_sim, optical_output, optical_process_tomography, ExperimentBranch,
    ExperimentReport,
};
pub use qpt::{probe_states, qpt_reconstruct, PROBE_NAMES};

use crate::error::{Error, Result};
use crate::gates::{pauli_z, u_com};
use crate::qcore::linalg::{phase, real, CMatrix, C64};
use crate::qcore::KrausChannel;

/// Source visibility `p`, interferometer visibility `eta` and rotation
/// angle `phi` (radians).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DephasingParams {
    pub p: f64,
    pub eta: f64,
    pub phi: f64,
}

impl DephasingParams {
    pub fn new(p: f64, eta: f64, phi: f64) -> Result<Self> {
        for (name, v) in [("p", p), ("eta", eta)] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::InvalidArgument(format!("visibility {name} = {v} is outside [0, 1]")));
            }
        }
        if !phi.is_finite() {
            return Err(Error::InvalidArgument(format!("rotation angle {phi} is not finite")));
        }
        let params = Self { p, eta, phi };
        params.validate()?;
        Ok(params)
    }

    pub fn p_eta(&self) -> f64 {
        self.p * self.eta
    }

    pub fn validate(&self) -> Result<()> {
        let pe = self.p_eta();
        if !(0.0..=1.0).contains(&pe) || pe.is_nan() {
            return Err(Error::InvalidVisibility(pe));
        }
        Ok(())
    }
}

/// Kraus operators `√((1+pη)/2)·u_com(φ)` and `√((1−pη)/2)·u_com(φ)σ_z`.
pub fn dephasing_channel(params: &DephasingParams) -> Result<KrausChannel> {
    params.validate()?;
    let pe = params.p_eta();
    let u = u_com(params.phi);
    let k0 = &u * real(((1.0 + pe) / 2.0).sqrt());
    let k1 = &u * pauli_z() * real(((1.0 - pe) / 2.0).sqrt());
    KrausChannel::new(vec![k0, k1])
}

/// Output of the dephased rotation on `α|0⟩ + β|1⟩`:
/// `[[|α|², pη·αβ*·e^{iφ}], [pη·α*β·e^{−iφ}, |β|²]]`.
pub fn rho_d_closed_form(params: &DephasingParams, alpha: C64, beta: C64) -> CMatrix {
    let pe = params.p_eta();
    let off = alpha * beta.conj() * phase(params.phi) * pe;
    CMatrix::from_row_slice(2, 2, &[real(alpha.norm_sqr()), off, off.conj(), real(beta.norm_sqr())])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::linalg::{c, max_abs_diff};
    use crate::qcore::{Owner, PureState};

    #[test]
    fn params_validation() {
        assert!(DephasingParams::new(0.85, 0.92, 1.0).is_ok());
        assert!(DephasingParams::new(1.2, 0.5, 1.0).is_err());
        assert!(DephasingParams::new(0.5, -0.1, 1.0).is_err());
        let raw = DephasingParams { p: 2.0, eta: 0.9, phi: 0.0 };
        assert!(matches!(raw.validate(), Err(Error::InvalidVisibility(_))));
        assert!(dephasing_channel(&raw).is_err());
    }

    #[test]
    fn full_visibility_is_unitary() {
        let ch = dephasing_channel(&DephasingParams::new(1.0, 1.0, 0.8).unwrap()).unwrap();
        assert!(ch.operators()[1].norm() < 1e-15);
        assert!(max_abs_diff(&ch.operators()[0], &u_com(0.8)) < 1e-15);
    }

    #[test]
    fn channel_output_matches_closed_form() {
        let params = DephasingParams::new(0.85, 0.92, 2.0 * std::f64::consts::PI / 3.0).unwrap();
        let (a, b) = (c(0.6, 0.0), c(0.0, 0.8));
        let psi = PureState::qubit("q", Owner::Bob, a, b).unwrap();
        let out = dephasing_channel(&params).unwrap().apply(&psi.density()).unwrap();
        assert!(max_abs_diff(out.matrix(), &rho_d_closed_form(&params, a, b)) < 1e-15);
    }
}
