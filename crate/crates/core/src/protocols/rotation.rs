//! Remote rotation of Bob's qubit about the z axis with one ebit and one
//! bit in each direction.
//!
//! Bob's CNOT and computational measurement copy the coefficients of his
//! qubit onto Alice's half of the pair (`α|00⟩ + β|11⟩` after her σ_x
//! correction). Alice rotates, measures in `{|D⟩, |C⟩}` and Bob fixes the
//! relative sign with σ_z. This only works for operators that commute or
//! anticommute with σ_z.

use std::f64::consts::PI;

use super::teleport::phi_plus;
use super::{check_resource, single_as, BranchRunner, Direction, Party, ProtocolResult};
use crate::error::{Error, Result};
use crate::gates::{cnot, pauli_x, pauli_z, u_com, RotationClass, RotationKind};
use crate::qcore::measure::{computational_basis, plus_minus_basis};
use crate::qcore::{CMatrix, Owner, PureState, Register, SubsystemLabel};

/// The configurable parts of the rotation circuit.
#[derive(Debug, Clone)]
pub struct RotationCircuit {
    pub alice_op_name: String,
    /// Applied by Alice between the two measurements.
    pub alice_op: CMatrix,
    /// Final operation on Bob's qubit, if any.
    pub bob_final: Option<(String, CMatrix)>,
    /// Whether Bob applies σ_z after Alice reports `|C⟩`.
    pub apply_g2_correction: bool,
}

impl RotationCircuit {
    /// The circuit realizing `rc`. The anticommuting class runs the
    /// commuting circuit at `φ + π` followed by σ_x on Bob's side.
    pub fn for_class(rc: &RotationClass) -> Self {
        match rc.kind {
            RotationKind::Commuting => Self::with_alice_op("u_com", u_com(rc.angle)),
            RotationKind::Anticommuting => Self {
                bob_final: Some(("sigma_x".into(), pauli_x())),
                ..Self::with_alice_op("u_com(phi+pi)", u_com(rc.angle + PI))
            },
        }
    }

    /// Alice applies `op` and nothing else changes.
    pub fn with_alice_op(name: &str, op: CMatrix) -> Self {
        Self { alice_op_name: name.to_string(), alice_op: op, bob_final: None, apply_g2_correction: true }
    }
}

fn default_resource() -> PureState {
    phi_plus(SubsystemLabel::qubit("A", Owner::Alice), SubsystemLabel::qubit("B", Owner::Bob))
        .expect("qubit Bell pair")
}

/// Remote application of `rc.unitary()` to Bob's qubit `psi`.
pub fn remote_rotation(rc: &RotationClass, psi: &PureState) -> Result<ProtocolResult> {
    run_rotation_circuit(&RotationCircuit::for_class(rc), psi, &default_resource(), &rc.unitary())
}

/// Runs `circuit` on `psi` with the two-qubit `resource` (Alice's half
/// first) and reports `target_op|ψ⟩` as the intended output.
pub fn run_rotation_circuit(
    circuit: &RotationCircuit,
    psi: &PureState,
    resource: &PureState,
    target_op: &CMatrix,
) -> Result<ProtocolResult> {
    let labels = resource.register().labels();
    if labels.len() != 2 || labels.iter().any(|l| l.dimension() != 2) {
        return Err(Error::InvalidArgument("resource must be a pair of qubits".into()));
    }
    let (a, b) = (labels[0].clone(), labels[1].clone());
    if a.owner() != Owner::Alice || b.owner() != Owner::Bob {
        return Err(Error::InvalidArgument("resource must list Alice's qubit first and Bob's second".into()));
    }
    check_resource(resource, &phi_plus(a.clone(), b.clone())?, 1.0)?;
    let (a, b) = (a.name(), b.name());
    let q = "psi";
    if a == q || b == q {
        return Err(Error::DuplicateSubsystem(q.into()));
    }
    let input = single_as(psi, q, Owner::Bob)?;
    if input.dimension() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, actual: input.dimension() });
    }
    let target = input.apply_unitary(target_op, &[q])?;
    let target = target.relabel(Register::new(vec![SubsystemLabel::qubit(q, Owner::Bob)])?)?;

    let mut run = BranchRunner::new(resource.tensor(&input)?)
        .local(Party::Bob, "cnot(psi->B)", &cnot(), &[q, b])?
        .measure(Party::Bob, "computational", &computational_basis(2), &[b])?
        .send(Direction::BobToAlice, 2)?
        .conditional(Party::Alice, &[a], |o| (o.last() == Some(&1)).then(|| ("sigma_x".to_string(), pauli_x())))?
        .local(Party::Alice, &circuit.alice_op_name, &circuit.alice_op, &[a])?
        .measure(Party::Alice, "D/C", &plus_minus_basis(), &[a])?
        .send(Direction::AliceToBob, 2)?;
    if circuit.apply_g2_correction {
        run = run.conditional(Party::Bob, &[q], |o| (o.last() == Some(&1)).then(|| ("sigma_z".to_string(), pauli_z())))?;
    }
    if let Some((name, op)) = &circuit.bob_final {
        run = run.local(Party::Bob, name, op, &[q])?;
    }
    run.finish("remote-rotation", &[q], vec![resource.clone()], target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gates::hadamard;
    use crate::protocols::{verify_branch_determinism, Step};
    use crate::qcore::linalg::{c, real};

    fn psi(a: f64, b: f64) -> PureState {
        PureState::qubit("q", Owner::Bob, real(a), real(b)).unwrap()
    }

    #[test]
    fn coefficients_are_copied_after_g1() {
        // Stop after Alice's correction and inspect the shared state.
        let (alpha, beta) = (c(0.6, 0.0), c(0.0, 0.8));
        let input = PureState::qubit("psi", Owner::Bob, alpha, beta).unwrap();
        let run = BranchRunner::new(default_resource().tensor(&input).unwrap())
            .local(Party::Bob, "cnot", &cnot(), &["psi", "B"])
            .unwrap()
            .measure(Party::Bob, "computational", &computational_basis(2), &["B"])
            .unwrap()
            .conditional(Party::Alice, &["A"], |o| (o.last() == Some(&1)).then(|| ("x".into(), pauli_x())))
            .unwrap();
        for br in &run.branches {
            let ab = br.state.reduced(&["A", "psi"]).unwrap();
            let expect = PureState::new(
                Register::new(vec![SubsystemLabel::qubit("A", Owner::Alice), SubsystemLabel::qubit("psi", Owner::Bob)])
                    .unwrap(),
                crate::qcore::CVector::from_vec(vec![alpha, real(0.0), real(0.0), beta]),
            )
            .unwrap();
            assert!((ab.expectation(&expect).unwrap() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn zero_state_is_invariant() {
        for phi in [0.3, 2.0, 5.5] {
            let r = remote_rotation(&RotationClass::commuting(phi), &psi(1.0, 0.0)).unwrap();
            assert_eq!(r.branches.len(), 4);
            assert!(verify_branch_determinism(&r).deterministic);
        }
    }

    #[test]
    fn both_classes_are_deterministic() {
        let input = PureState::qubit("q", Owner::Bob, c(0.3, 0.4), c(0.5, -std::f64::consts::FRAC_1_SQRT_2)).unwrap();
        for rc in [RotationClass::commuting(1.2), RotationClass::anticommuting(-0.4)] {
            let r = remote_rotation(&rc, &input).unwrap();
            assert_eq!(r.branches.len(), 4);
            let v = verify_branch_determinism(&r);
            assert!(v.deterministic, "{rc:?}: {}", v.max_infidelity);
            let msgs: Vec<_> = r.branches[0].steps.iter().filter(|s| matches!(s, Step::Message(_))).collect();
            assert_eq!(msgs.len(), 2);
        }
    }

    #[test]
    fn hadamard_is_not_remotely_implementable() {
        let circuit = RotationCircuit::with_alice_op("hadamard", hadamard());
        let r = run_rotation_circuit(&circuit, &psi(1.0, 0.0), &default_resource(), &hadamard()).unwrap();
        let v = verify_branch_determinism(&r);
        assert!(!v.deterministic);
        assert!((v.max_infidelity - 0.5).abs() < 1e-12);
    }

    #[test]
    fn omitted_sigma_z_breaks_half_the_branches() {
        let rc = RotationClass::commuting(0.9);
        let circuit = RotationCircuit { apply_g2_correction: false, ..RotationCircuit::for_class(&rc) };
        let input = PureState::qubit("q", Owner::Bob, c(0.6, 0.0), c(0.0, 0.8)).unwrap();
        let r = run_rotation_circuit(&circuit, &input, &default_resource(), &rc.unitary()).unwrap();
        assert_eq!(verify_branch_determinism(&r).failing_branches.len(), 2);
    }

    #[test]
    fn rejects_wrong_resource() {
        let rc = RotationClass::commuting(0.9);
        let prod = PureState::qubit("A", Owner::Alice, real(1.0), real(0.0))
            .unwrap()
            .tensor(&PureState::qubit("B", Owner::Bob, real(1.0), real(0.0)).unwrap())
            .unwrap();
        let circuit = RotationCircuit::for_class(&rc);
        assert!(matches!(
            run_rotation_circuit(&circuit, &psi(1.0, 0.0), &prod, &rc.unitary()),
            Err(Error::NotMaximallyEntangled { .. })
        ));
        // maximally entangled but not |Φ⁺⟩
        let psi_minus = PureState::new(
            default_resource().register().clone(),
            crate::qcore::CVector::from_vec(vec![real(0.0), real(0.5f64.sqrt()), real(-(0.5f64.sqrt())), real(0.0)]),
        )
        .unwrap();
        assert!(matches!(
            run_rotation_circuit(&circuit, &psi(1.0, 0.0), &psi_minus, &rc.unitary()),
            Err(Error::ResourceMismatch(_))
        ));
    }
}
