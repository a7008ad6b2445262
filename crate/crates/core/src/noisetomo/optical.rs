//! The photonic implementation of the remote rotation.
//!
//! Register: `pol1` (Alice's photon polarization), `path2` (Bob's photon
//! path, `u = 0`, `d = 1`), `pol3` (Bob's photon polarization, which carries
//! the input qubit). Noise enters as dephasing of Alice's photon in the
//! entangled source, unravelled into pure trajectories.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::chi::{chi_from_channel, ChiMatrix};
use super::qpt::{probe_states, qpt_reconstruct};
use super::{dephasing_channel, rho_d_closed_form, DephasingParams};
use crate::error::{Error, Result};
use crate::gates::optics::path_conditional;
use crate::gates::{hwp, pbs_cnot, rotation_sandwich, u_com};
use crate::protocols::{BranchRunner, Direction, Party, ProtocolResult};
use crate::qcore::linalg::{self, real, CMatrix, CVector};
use crate::qcore::measure::{computational_basis, plus_minus_basis};
use crate::qcore::{DensityMatrix, Owner, PureState, Register, SubsystemLabel};

fn register() -> Register {
    Register::new(vec![
        SubsystemLabel::qubit("pol1", Owner::Alice),
        SubsystemLabel::qubit("path2", Owner::Bob),
        SubsystemLabel::qubit("pol3", Owner::Bob),
    ])
    .expect("distinct labels")
}

/// `(|H⟩₁|u⟩₂ + |V⟩₁|d⟩₂)|H⟩₃/√2`, built from the polarization state
/// `(|HV⟩ + |VH⟩)/√2` with Bob's photon entering in path `d`, a PBS and a
/// HWP at 45° in path `u`.
pub fn entangled_source() -> Result<PureState> {
    let s = real(std::f64::consts::FRAC_1_SQRT_2);
    let mut amps = CVector::zeros(8);
    // |H⟩₁|d⟩₂|V⟩₃ and |V⟩₁|d⟩₂|H⟩₃
    amps[0b011] = s;
    amps[0b110] = s;
    PureState::new(register(), amps)?
        .apply_unitary(&pbs_cnot(), &["pol3", "path2"])?
        .apply_unitary(&path_conditional(&hwp(45.0), &linalg::identity(2)), &["path2", "pol3"])
}

/// `[[α, −β*], [β, α*]]`, taking `|H⟩` to `α|H⟩ + β|V⟩`.
fn preparation(psi: &PureState) -> CMatrix {
    let (a, b) = (psi.amplitudes()[0], psi.amplitudes()[1]);
    CMatrix::from_row_slice(2, 2, &[a, -b.conj(), b, a.conj()])
}

/// Runs encoding, the waveplate rotation and decoding on one source trajectory.
fn run_pipeline(source: &PureState, psi: &PureState, phi: f64) -> Result<ProtocolResult> {
    let target = psi.apply_unitary(&u_com(phi), &[psi.register().names()[0]])?;
    let target = target.relabel(Register::new(vec![SubsystemLabel::qubit("pol3", Owner::Bob)])?)?;
    BranchRunner::new(source.clone())
        .local(Party::Bob, "prepare", &preparation(psi), &["pol3"])?
        .local(Party::Bob, "pbs", &pbs_cnot(), &["pol3", "path2"])?
        .measure(Party::Bob, "path", &computational_basis(2), &["path2"])?
        .send(Direction::BobToAlice, 2)?
        .conditional(Party::Alice, &["pol1"], |o| (o.last() == Some(&1)).then(|| ("hwp45".to_string(), hwp(45.0))))?
        .local(Party::Alice, "qwp45.hwp.qwp45", &rotation_sandwich(phi), &["pol1"])?
        .measure(Party::Alice, "D/C", &plus_minus_basis(), &["pol1"])?
        .send(Direction::AliceToBob, 2)?
        .conditional(Party::Bob, &["pol3"], |o| (o.last() == Some(&1)).then(|| ("hwp0".to_string(), hwp(0.0))))?
        .finish("optical-remote-rotation", &["pol3"], vec![source.clone()], target)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentBranch {
    /// Path outcome (`u = 0`, `d = 1`) then Alice's outcome (`D = 0`, `C = 1`).
    pub outcomes: Vec<usize>,
    pub probability: f64,
    pub output: DensityMatrix,
    /// Largest entry-wise deviation from the closed-form output.
    pub deviation: f64,
}

/// Output of Bob's photon averaged over dephasing trajectories, overall and
/// per measurement branch.
pub fn optical_output(params: &DephasingParams, psi: &PureState) -> Result<(DensityMatrix, Vec<ExperimentBranch>)> {
    if psi.register().dims() != [2] {
        return Err(Error::InvalidArgument("input must be a single qubit".into()));
    }
    let noise = dephasing_channel(&DephasingParams { phi: 0.0, ..*params })?;
    let closed = rho_d_closed_form(params, psi.amplitudes()[0], psi.amplitudes()[1]);
    let out_register = Register::new(vec![SubsystemLabel::qubit("pol3", Owner::Bob)])?;

    let mut total = CMatrix::zeros(2, 2);
    let mut by_branch: BTreeMap<Vec<usize>, (f64, CMatrix)> = BTreeMap::new();
    for (weight, source) in noise.unravel(&entangled_source()?, &["pol1"])? {
        for b in run_pipeline(&source, psi, params.phi)?.branches {
            let p = weight * b.branch_probability;
            let v = b.final_state.amplitudes();
            let rho = linalg::outer(v, v) * real(p);
            total += &rho;
            let entry = by_branch.entry(b.outcomes).or_insert((0.0, CMatrix::zeros(2, 2)));
            entry.0 += p;
            entry.1 += rho;
        }
    }
    let output = DensityMatrix::new(out_register.clone(), linalg::hermitize(&total))?;
    let branches = by_branch
        .into_iter()
        .map(|(outcomes, (p, m))| {
            let rho = DensityMatrix::new(out_register.clone(), linalg::hermitize(&(m * real(1.0 / p))))?;
            let deviation = linalg::max_abs_diff(rho.matrix(), &closed);
            Ok(ExperimentBranch { outcomes, probability: p, output: rho, deviation })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((output, branches))
}

/// χ of the photonic rotation, reconstructed from the four probe outputs.
pub fn optical_process_tomography(params: &DephasingParams) -> Result<ChiMatrix> {
    let pairs = probe_states()
        .iter()
        .map(|p| Ok((p.density(), optical_output(params, p)?.0)))
        .collect::<Result<Vec<_>>>()?;
    qpt_reconstruct(&pairs)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentReport {
    pub params: DephasingParams,
    pub output: DensityMatrix,
    #[serde(with = "crate::qcore::cjson::matrix")]
    pub closed_form: CMatrix,
    /// Largest entry-wise deviation from the closed form, over the mixed
    /// output and every branch.
    pub max_deviation: f64,
    pub branches: Vec<ExperimentBranch>,
    /// Reconstructed from the photonic pipeline.
    pub chi: ChiMatrix,
    /// Exact χ of the dephasing channel.
    pub chi_model: ChiMatrix,
    pub chi_distance: f64,
}

pub fn optical_experiment_sim(params: &DephasingParams, psi: &PureState) -> Result<ExperimentReport> {
    let (output, branches) = optical_output(params, psi)?;
    let closed_form = rho_d_closed_form(params, psi.amplitudes()[0], psi.amplitudes()[1]);
    let max_deviation = branches
        .iter()
        .map(|b| b.deviation)
        .fold(linalg::max_abs_diff(output.matrix(), &closed_form), f64::max);
    let chi = optical_process_tomography(params)?;
    let chi_model = chi_from_channel(&dephasing_channel(params)?)?;
    let chi_distance = chi.distance(&chi_model);
    Ok(ExperimentReport { params: *params, output, closed_form, max_deviation, branches, chi, chi_model, chi_distance })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::linalg::c;
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    #[test]
    fn source_state() {
        let es = entangled_source().unwrap();
        let v = es.amplitudes();
        assert!((v[0] - real(FRAC_1_SQRT_2)).norm() < 1e-15);
        assert!((v[0b110] - real(FRAC_1_SQRT_2)).norm() < 1e-15);
    }

    #[test]
    fn noiseless_limit_is_pure_rotation() {
        let psi = PureState::qubit("s", Owner::Bob, c(0.6, 0.0), c(0.0, 0.8)).unwrap();
        let params = DephasingParams::new(1.0, 1.0, 0.9).unwrap();
        let (out, branches) = optical_output(&params, &psi).unwrap();
        assert_eq!(branches.len(), 4);
        assert!((out.purity() - 1.0).abs() < 1e-12);
        let ideal = psi.apply_unitary(&u_com(0.9), &["s"]).unwrap();
        assert!(linalg::max_abs_diff(out.matrix(), ideal.density().matrix()) < 1e-12);
    }

    #[test]
    fn diagonal_input_off_diagonal_magnitude() {
        let d = PureState::qubit("s", Owner::Bob, real(FRAC_1_SQRT_2), real(FRAC_1_SQRT_2)).unwrap();
        let params = DephasingParams::new(0.85, 0.92, 2.0 * PI / 3.0).unwrap();
        let report = optical_experiment_sim(&params, &d).unwrap();
        assert!((report.output.entry(0, 1).norm() - 0.391).abs() < 1e-12);
        assert!(report.max_deviation < 1e-10);
        assert!(report.chi_distance < 1e-10);
    }
}
