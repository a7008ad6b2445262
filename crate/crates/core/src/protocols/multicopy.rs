//! The same z rotation applied remotely to two copies of a qubit, using a
//! telecloning resource of log₂3 ebits and one trit in each direction.
//!
//! Register layout: Alice's pair `A1 A2`, Bob's half of the resource
//! `B1 B2`, Bob's input pair `Q1 Q2`. Pairs are read as qutrits in the
//! tilde basis.

use serde::{Deserialize, Serialize};

use super::{single_as, BranchRunner, Direction, Party, ProtocolResult};
use crate::error::{Error, Result};
use crate::gates::{embed_tilde, embedded_controlled_ut, pauli_z, qutrit_fourier, qutrit_t, tilde_phase, TildeBasis};
use crate::protocols::verify::verify_branch_determinism;
use crate::qcore::linalg::{self, c, real, CMatrix, CVector};
use crate::qcore::{Owner, PureState, Register, SubsystemLabel, DERIVED_TOL};

/// Bob's correction after learning Alice's outcome `s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum StepFiveCorrection {
    /// `diag(1, ω̄^s, ω̄^{2s})` in the tilde basis.
    TildePhase,
    /// `ℱ^s` taken literally.
    LiteralFourier,
}

impl StepFiveCorrection {
    pub fn name(self) -> &'static str {
        match self {
            StepFiveCorrection::TildePhase => "tilde-phase",
            StepFiveCorrection::LiteralFourier => "literal-fourier",
        }
    }

    fn operator(self, s: usize) -> CMatrix {
        let op3 = match self {
            StepFiveCorrection::TildePhase => tilde_phase(s),
            StepFiveCorrection::LiteralFourier => linalg::matrix_power(&qutrit_fourier(), s),
        };
        embed_tilde(&op3).expect("3x3 unitary")
    }
}

fn qubits(names: &[&str], owner: Owner) -> Vec<SubsystemLabel> {
    names.iter().map(|n| SubsystemLabel::qubit(*n, owner)).collect()
}

/// `Σ_k |k̃⟩_A |k̃⟩_B / √3` on `A1 A2 B1 B2`.
pub fn telecloning_state() -> PureState {
    let mut labels = qubits(&["A1", "A2"], Owner::Alice);
    labels.extend(qubits(&["B1", "B2"], Owner::Bob));
    let basis = TildeBasis::vectors();
    let s = real(1.0 / 3f64.sqrt());
    let amps = basis.iter().fold(CVector::zeros(16), |acc, v| acc + v.kronecker(v) * s);
    PureState::new(Register::new(labels).expect("distinct labels"), amps).expect("normalized")
}

/// Runs the protocol with `U = e^{iθσ_z}` on `ψ ⊗ ψ` and the tilde-phase correction.
pub fn multicopy_remote_rotation(theta: f64, psi: &PureState) -> Result<ProtocolResult> {
    multicopy_with_correction(theta, psi, StepFiveCorrection::TildePhase)
}

pub fn multicopy_with_correction(theta: f64, psi: &PureState, correction: StepFiveCorrection) -> Result<ProtocolResult> {
    let one = single_as(psi, "q", Owner::Bob)?;
    if one.dimension() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, actual: one.dimension() });
    }
    let pair = one.tensor(&single_as(psi, "q2", Owner::Bob)?)?;
    multicopy_on_pair(theta, &pair, correction)
}

/// Runs the protocol on any two-qubit input supported on the symmetric
/// subspace; `(U ⊗ U)` of the input is the target.
pub fn multicopy_on_pair(theta: f64, pair: &PureState, correction: StepFiveCorrection) -> Result<ProtocolResult> {
    if pair.register().dims() != [2, 2] {
        return Err(Error::InvalidArgument("input must be a pair of qubits".into()));
    }
    let v = pair.amplitudes();
    let outside = (v - TildeBasis::symmetric_projector() * v).norm_squared();
    if outside > DERIVED_TOL {
        return Err(Error::NotSymmetric(outside));
    }
    let input = pair.relabel(Register::new(qubits(&["Q1", "Q2"], Owner::Bob))?)?;
    let u = rotation(theta);
    let uu = linalg::kron(&u, &u);
    let target = input.apply_unitary(&uu, &["Q1", "Q2"])?;
    let resource = telecloning_state();
    let tilde = TildeBasis::vectors();

    BranchRunner::new(resource.tensor(&input)?)
        .local(Party::Bob, "U_T(Q->B)", &embedded_controlled_ut(), &["Q1", "Q2", "B1", "B2"])?
        .measure(Party::Bob, "tilde", &tilde, &["B1", "B2"])?
        .send(Direction::BobToAlice, 3)?
        .conditional(Party::Alice, &["A1", "A2"], |o| {
            let r = *o.last()?;
            (r != 0).then(|| (format!("T^{r}"), embed_tilde(&qutrit_t(r)).expect("T is unitary")))
        })?
        .local(Party::Alice, "U(x)U", &uu, &["A1", "A2"])?
        .local(Party::Alice, "F", &embed_tilde(&qutrit_fourier())?, &["A1", "A2"])?
        .measure(Party::Alice, "tilde", &tilde, &["A1", "A2"])?
        .send(Direction::AliceToBob, 3)?
        .conditional(Party::Bob, &["Q1", "Q2"], |o| {
            let s = *o.last()?;
            (s != 0).then(|| (format!("{}^{s}", correction.name()), correction.operator(s)))
        })?
        .finish("multicopy-remote-rotation", &["Q1", "Q2"], vec![resource], target)
}

/// `e^{iθσ_z}`
fn rotation(theta: f64) -> CMatrix {
    let z = pauli_z();
    linalg::identity(2) * real(theta.cos()) + z * c(0.0, theta.sin())
}

/// Outcome of one step-five variant on one input.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorrectionReport {
    pub correction: StepFiveCorrection,
    pub passed_branches: usize,
    pub total_branches: usize,
    pub deterministic: bool,
    pub max_infidelity: f64,
}

/// Runs both step-five variants on `ψ ⊗ ψ`.
pub fn step_five_report(theta: f64, psi: &PureState) -> Result<Vec<CorrectionReport>> {
    [StepFiveCorrection::TildePhase, StepFiveCorrection::LiteralFourier]
        .into_iter()
        .map(|correction| {
            let r = multicopy_with_correction(theta, psi, correction)?;
            let v = verify_branch_determinism(&r);
            Ok(CorrectionReport {
                correction,
                passed_branches: r.branches.len() - v.failing_branches.len(),
                total_branches: r.branches.len(),
                deterministic: v.deterministic,
                max_infidelity: v.max_infidelity,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::entanglement_entropy;
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    #[test]
    fn resource_carries_log3_ebits() {
        let e = entanglement_entropy(&telecloning_state(), &["A1", "A2"]).unwrap();
        assert!((e - 3f64.log2()).abs() < 1e-12);
    }

    #[test]
    fn plus_state_at_quarter_pi() {
        let plus = PureState::qubit("p", Owner::Bob, real(FRAC_1_SQRT_2), real(FRAC_1_SQRT_2)).unwrap();
        let r = multicopy_remote_rotation(PI / 4.0, &plus).unwrap();
        assert_eq!(r.branches.len(), 9);
        // (e^{iπ/4}|0⟩ + e^{−iπ/4}|1⟩)^{⊗2}/2
        let (a, b) = (linalg::phase(PI / 4.0) * FRAC_1_SQRT_2, linalg::phase(-PI / 4.0) * FRAC_1_SQRT_2);
        let expect = CVector::from_vec(vec![a * a, a * b, b * a, b * b]);
        for br in &r.branches {
            assert!((br.branch_probability - 1.0 / 9.0).abs() < 1e-12);
            assert!((br.final_state.amplitudes().dotc(&expect).norm_sqr() - 1.0).abs() < 1e-12);
        }
        let l = r.ledger();
        assert!((l.ebits_consumed - 3f64.log2()).abs() < 1e-12);
        assert!((l.cbits_a_to_b - 3f64.log2()).abs() < 1e-12 && (l.cbits_b_to_a - 3f64.log2()).abs() < 1e-12);
    }

    #[test]
    fn literal_fourier_correction_only_fixes_s_zero() {
        let psi = PureState::qubit("p", Owner::Bob, c(0.6, 0.0), c(0.0, 0.8)).unwrap();
        let reports = step_five_report(0.7, &psi).unwrap();
        assert!(reports[0].deterministic && reports[0].passed_branches == 9);
        assert!(!reports[1].deterministic);
        assert_eq!(reports[1].passed_branches, 3);
    }

    #[test]
    fn rejects_antisymmetric_input() {
        let singlet = PureState::new(
            Register::new(qubits(&["x", "y"], Owner::Bob)).unwrap(),
            TildeBasis::antisymmetric(),
        )
        .unwrap();
        assert!(matches!(
            multicopy_on_pair(0.3, &singlet, StepFiveCorrection::TildePhase),
            Err(Error::NotSymmetric(_))
        ));
    }
}
