use serde::{Deserialize, Serialize};

use super::ProtocolResult;
use crate::qcore::DERIVED_TOL;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeterminismReport {
    pub deterministic: bool,
    pub max_infidelity: f64,
    /// Indices into `ProtocolResult::branches`.
    pub failing_branches: Vec<usize>,
    pub total_probability: f64,
}

/// Checks that every branch ends in the target state up to a global phase
/// (infidelity below 1e-10).
pub fn verify_branch_determinism(result: &ProtocolResult) -> DeterminismReport {
    let mut max_infidelity: f64 = 0.0;
    let mut failing_branches = Vec::new();
    for (i, b) in result.branches.iter().enumerate() {
        let infidelity = b.final_state.fidelity(&result.target_state).map_or(1.0, |f| (1.0 - f).max(0.0));
        max_infidelity = max_infidelity.max(infidelity);
        if infidelity >= DERIVED_TOL {
            failing_branches.push(i);
        }
    }
    DeterminismReport {
        deterministic: failing_branches.is_empty() && !result.branches.is_empty(),
        max_infidelity,
        failing_branches,
        total_probability: result.total_probability(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::protocols::{BranchRunner, Party};
    use crate::gates::pauli_x;
    use crate::qcore::linalg::real;
    use crate::qcore::{Owner, PureState};

    #[test]
    fn single_branch_without_measurement() {
        let psi = PureState::qubit("q", Owner::Bob, real(1.0), real(0.0)).unwrap();
        let target = PureState::qubit("q", Owner::Bob, real(0.0), real(1.0)).unwrap();
        let r = BranchRunner::new(psi)
            .local(Party::Bob, "x", &pauli_x(), &["q"])
            .unwrap()
            .finish("trivial", &["q"], vec![], target)
            .unwrap();
        let v = verify_branch_determinism(&r);
        assert!(v.deterministic && v.max_infidelity < 1e-15);
        assert_eq!(r.ledger().components(), [0.0, 0.0, 0.0]);
    }
}
