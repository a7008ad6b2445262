//! LOCC protocol engines.
//!
//! Every measurement is enumerated, so a [`ProtocolResult`] holds one
//! transcript per outcome sequence, ordered lexicographically by outcome.

pub mod multicopy;
pub mod rotation;
pub mod signaling;
pub mod teleport;
pub mod verify;

use serde::{Deserialize, Serialize};

pub use multicopy::{
    multicopy_on_pair, multicopy_remote_rotation, multicopy_with_correction, step_five_report,
    telecloning_state, CorrectionReport, StepFiveCorrection,
};
pub use rotation::{remote_rotation, run_rotation_circuit, RotationCircuit};
pub use signaling::{nonlocal_cnot_signaling_check, SignalingCase, SignalingReport};
pub use teleport::{bidirectional_u_teleport, generalized_bell_basis, phi_plus, teleport, weyl_x, weyl_z};
pub use verify::{verify_branch_determinism, DeterminismReport};

use crate::error::{Error, Result};
use crate::qcore::linalg::{self, CMatrix, CVector};
use crate::qcore::{measure_projective, MeasurementMode, Owner, PureState};
use crate::resources::{self, ResourceLedger};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Party {
    Alice,
    Bob,
}

impl Party {
    pub fn other(self) -> Party {
        match self {
            Party::Alice => Party::Bob,
            Party::Bob => Party::Alice,
        }
    }

    pub fn owner(self) -> Owner {
        match self {
            Party::Alice => Owner::Alice,
            Party::Bob => Owner::Bob,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Direction {
    AliceToBob,
    BobToAlice,
}

impl Direction {
    pub fn from_sender(sender: Party) -> Direction {
        match sender {
            Party::Alice => Direction::AliceToBob,
            Party::Bob => Direction::BobToAlice,
        }
    }

    pub fn sender(self) -> Party {
        match self {
            Direction::AliceToBob => Party::Alice,
            Direction::BobToAlice => Party::Bob,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassicalMessage {
    pub direction: Direction,
    pub alphabet_size: usize,
    pub value: usize,
}

impl ClassicalMessage {
    pub fn new(direction: Direction, alphabet_size: usize, value: usize) -> Result<Self> {
        if alphabet_size < 2 || value >= alphabet_size {
            return Err(Error::InvalidArgument(format!(
                "message value {value} is not in an alphabet of size {alphabet_size} (size must be at least 2)"
            )));
        }
        Ok(Self { direction, alphabet_size, value })
    }

    /// Information content, `log₂(alphabet_size)`.
    pub fn bits(&self) -> f64 {
        (self.alphabet_size as f64).log2()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Step {
    Local { party: Party, operation: String, targets: Vec<String> },
    Measurement { party: Party, basis: String, targets: Vec<String>, outcome: usize },
    Message(ClassicalMessage),
}

/// One branch of a protocol run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProtocolTranscript {
    pub steps: Vec<Step>,
    /// Measurement outcomes in execution order.
    pub outcomes: Vec<usize>,
    pub branch_probability: f64,
    /// The receiver's output subsystems; global phase is arbitrary.
    pub final_state: PureState,
    /// Entangled resource states consumed by the run.
    pub resources: Vec<PureState>,
    pub ledger: ResourceLedger,
}

impl ProtocolTranscript {
    pub fn messages(&self) -> impl Iterator<Item = &ClassicalMessage> {
        self.steps.iter().filter_map(|s| match s {
            Step::Message(m) => Some(m),
            _ => None,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProtocolResult {
    pub protocol: String,
    pub branches: Vec<ProtocolTranscript>,
    pub target_state: PureState,
    /// Number of outcomes dropped for negligible probability.
    pub pruned: usize,
}

impl ProtocolResult {
    pub fn total_probability(&self) -> f64 {
        self.branches.iter().map(|b| b.branch_probability).sum()
    }

    /// The common ledger of all branches (they agree by construction).
    pub fn ledger(&self) -> ResourceLedger {
        self.branches.first().map(|b| b.ledger).unwrap_or_default()
    }
}

#[derive(Debug, Clone)]
struct Branch {
    state: PureState,
    probability: f64,
    steps: Vec<Step>,
    outcomes: Vec<usize>,
}

fn names(targets: &[&str]) -> Vec<String> {
    targets.iter().map(|s| s.to_string()).collect()
}

/// Runs a protocol over every measurement branch at once.
pub(crate) struct BranchRunner {
    branches: Vec<Branch>,
    pruned: usize,
}

impl BranchRunner {
    pub(crate) fn new(state: PureState) -> Self {
        Self {
            branches: vec![Branch { state, probability: 1.0, steps: Vec::new(), outcomes: Vec::new() }],
            pruned: 0,
        }
    }

    pub(crate) fn local(mut self, party: Party, operation: &str, op: &CMatrix, targets: &[&str]) -> Result<Self> {
        for b in &mut self.branches {
            b.state = b.state.apply_unitary(op, targets)?;
            b.steps.push(Step::Local { party, operation: operation.to_string(), targets: names(targets) });
        }
        Ok(self)
    }

    /// Applies the operation chosen from the outcomes so far; `None` means
    /// nothing is done in that branch.
    pub(crate) fn conditional<F>(mut self, party: Party, targets: &[&str], choose: F) -> Result<Self>
    where
        F: Fn(&[usize]) -> Option<(String, CMatrix)>,
    {
        for b in &mut self.branches {
            if let Some((operation, op)) = choose(&b.outcomes) {
                b.state = b.state.apply_unitary(&op, targets)?;
                b.steps.push(Step::Local { party, operation, targets: names(targets) });
            }
        }
        Ok(self)
    }

    pub(crate) fn measure(self, party: Party, basis_name: &str, basis: &[CVector], targets: &[&str]) -> Result<Self> {
        let mut next = Vec::with_capacity(self.branches.len() * basis.len());
        let mut pruned = self.pruned;
        for b in self.branches {
            let m = measure_projective(&b.state, basis, targets, MeasurementMode::Enumerate)?;
            pruned += m.pruned.len();
            for mb in m.branches {
                let mut steps = b.steps.clone();
                steps.push(Step::Measurement {
                    party,
                    basis: basis_name.to_string(),
                    targets: names(targets),
                    outcome: mb.outcome,
                });
                let mut outcomes = b.outcomes.clone();
                outcomes.push(mb.outcome);
                next.push(Branch { state: mb.post_state, probability: b.probability * mb.probability, steps, outcomes });
            }
        }
        Ok(Self { branches: next, pruned })
    }

    /// Sends the most recent outcome over an alphabet of `alphabet_size`.
    pub(crate) fn send(mut self, direction: Direction, alphabet_size: usize) -> Result<Self> {
        for b in &mut self.branches {
            let value = *b
                .outcomes
                .last()
                .ok_or_else(|| Error::InvalidArgument("no measurement outcome to send".into()))?;
            b.steps.push(Step::Message(ClassicalMessage::new(direction, alphabet_size, value)?));
        }
        Ok(self)
    }

    /// Extracts the output subsystems `keep` from every branch.
    pub(crate) fn finish(
        self,
        protocol: &str,
        keep: &[&str],
        resources: Vec<PureState>,
        target_state: PureState,
    ) -> Result<ProtocolResult> {
        let mut branches = Vec::with_capacity(self.branches.len());
        for b in self.branches {
            let mut t = ProtocolTranscript {
                steps: b.steps,
                outcomes: b.outcomes,
                branch_probability: b.probability,
                final_state: b.state.extract(keep)?,
                resources: resources.clone(),
                ledger: ResourceLedger::zero(),
            };
            t.ledger = resources::ledger_from_transcript(&t)?;
            branches.push(t);
        }
        Ok(ProtocolResult { protocol: protocol.to_string(), branches, target_state, pruned: self.pruned })
    }
}

/// Rejects a resource whose entropy across the Alice|Bob cut is below
/// `required` ebits, or which differs from `expected` beyond a global phase.
pub(crate) fn check_resource(resource: &PureState, expected: &PureState, required: f64) -> Result<()> {
    let alice = resource.register().owned_by(Owner::Alice);
    let entropy = if alice.is_empty() || alice.len() == resource.register().len() {
        0.0
    } else {
        crate::qcore::entanglement_entropy(resource, &alice)?
    };
    if entropy < required - 1e-9 {
        return Err(Error::NotMaximallyEntangled { entropy, required });
    }
    let overlap = expected.fidelity(resource)?;
    if overlap < 1.0 - crate::qcore::DERIVED_TOL {
        return Err(Error::ResourceMismatch(overlap));
    }
    Ok(())
}

/// A single-subsystem state moved onto a label called `name` owned by `owner`.
pub(crate) fn single_as(psi: &PureState, name: &str, owner: Owner) -> Result<PureState> {
    if psi.register().len() != 1 {
        return Err(Error::InvalidArgument(format!(
            "expected a single-subsystem input state, got {} subsystems",
            psi.register().len()
        )));
    }
    let d = psi.register().dims()[0];
    let label = crate::qcore::SubsystemLabel::new(name, d, owner)?;
    psi.relabel(crate::qcore::Register::new(vec![label])?)
}

pub(crate) fn is_identity(op: &CMatrix) -> bool {
    linalg::max_abs_diff(op, &linalg::identity(op.nrows())) < 1e-15
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn message_bits() {
        assert_eq!(ClassicalMessage::new(Direction::AliceToBob, 2, 1).unwrap().bits(), 1.0);
        assert!((ClassicalMessage::new(Direction::BobToAlice, 3, 2).unwrap().bits() - 3f64.log2()).abs() < 1e-15);
        assert!(ClassicalMessage::new(Direction::AliceToBob, 1, 0).is_err());
        assert!(ClassicalMessage::new(Direction::AliceToBob, 2, 2).is_err());
    }

    #[test]
    fn directions() {
        assert_eq!(Direction::from_sender(Party::Bob), Direction::BobToAlice);
        assert_eq!(Direction::AliceToBob.sender(), Party::Alice);
        assert_eq!(Party::Alice.other(), Party::Bob);
    }
}
