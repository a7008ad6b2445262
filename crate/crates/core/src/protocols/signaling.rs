//! A nonlocal CNOT would let Bob signal: with Alice's control in `|+⟩`, a
//! target in `|±⟩` kicks its sign back onto the control.

use std::f64::consts::FRAC_1_SQRT_2;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::gates::cnot;
use crate::qcore::linalg::real;
use crate::qcore::measure::plus_minus_basis;
use crate::qcore::{measure_projective, MeasurementMode, Owner, PureState};

/// Slack for "probability exactly 1" in floating point.
pub const MACHINE_TOL: f64 = 1e-14;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SignalingCase {
    pub bob_input: String,
    /// Probability that Alice finds `|+⟩`.
    pub alice_plus: f64,
    /// Probability that Alice finds `|−⟩`.
    pub alice_minus: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SignalingReport {
    pub cases: Vec<SignalingCase>,
    /// Largest deviation from the ideal 1/0 outcome for Bob's `|±⟩` inputs.
    pub max_deviation: f64,
    pub distinguishes: bool,
}

fn case(name: &str, beta: f64) -> Result<SignalingCase> {
    let control = PureState::qubit("c", Owner::Alice, real(FRAC_1_SQRT_2), real(FRAC_1_SQRT_2))?;
    let target = match name {
        "0" => PureState::qubit("B", Owner::Bob, real(1.0), real(0.0))?,
        _ => PureState::qubit("B", Owner::Bob, real(FRAC_1_SQRT_2), real(beta))?,
    };
    let state = control.tensor(&target)?.apply_unitary(&cnot(), &["c", "B"])?;
    let m = measure_projective(&state, &plus_minus_basis(), &["c"], MeasurementMode::Enumerate)?;
    let p = |k| m.branches.iter().find(|b| b.outcome == k).map_or(0.0, |b| b.probability);
    Ok(SignalingCase { bob_input: name.to_string(), alice_plus: p(0), alice_minus: p(1) })
}

/// Alice's outcome statistics for Bob's inputs `|+⟩`, `|−⟩` and `|0⟩`.
pub fn nonlocal_cnot_signaling_check() -> Result<SignalingReport> {
    let cases = vec![case("+", FRAC_1_SQRT_2)?, case("-", -FRAC_1_SQRT_2)?, case("0", 0.0)?];
    let max_deviation = [
        (1.0 - cases[0].alice_plus).abs(),
        cases[0].alice_minus,
        (1.0 - cases[1].alice_minus).abs(),
        cases[1].alice_plus,
    ]
    .into_iter()
    .fold(0.0, f64::max);
    Ok(SignalingReport { cases, max_deviation, distinguishes: max_deviation <= MACHINE_TOL })
}
