//! Parsing of angle, state and unitary literals given on the command line.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;
use std::str::FromStr;

use locc_core::gates::{hadamard, pauli_x, pauli_y, pauli_z, qutrit_fourier};
use locc_core::protocols::{weyl_x, weyl_z};
use locc_core::qcore::linalg::{self, c, real, CVector, C64};
use locc_core::qcore::random::{haar_state, haar_unitary};
use locc_core::qcore::{CMatrix, Owner, PureState, Register, SubsystemLabel};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::CliError;

/// Parses `"120deg"`, `"120°"` or `"2.0944rad"` into radians. A unit is required.
pub fn parse_angle(s: &str) -> Result<f64, CliError> {
    let t = s.trim();
    let (num, to_rad) = if let Some(n) = t.strip_suffix("deg").or_else(|| t.strip_suffix('°')) {
        (n, true)
    } else if let Some(n) = t.strip_suffix("rad") {
        (n, false)
    } else {
        return Err(CliError::invalid(format!("angle `{s}` needs a unit suffix (deg or rad)")));
    };
    let v: f64 = num
        .trim()
        .parse()
        .map_err(|_| CliError::invalid(format!("angle `{s}` is not a number")))?;
    if !v.is_finite() {
        return Err(CliError::invalid(format!("angle `{s}` is not finite")));
    }
    Ok(if to_rad { v.to_radians() } else { v })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum NamedState {
    H,
    V,
    D,
    C,
    R,
}

/// A single-system input state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum StateSpec {
    Named(NamedState),
    /// Drawn from the run's seeded generator (Haar measure).
    Random,
    /// Explicit amplitudes, normalized on parse.
    Amplitudes(Vec<(f64, f64)>),
}

impl StateSpec {
    pub fn dimension(&self) -> Option<usize> {
        match self {
            StateSpec::Named(_) => Some(2),
            StateSpec::Random => None,
            StateSpec::Amplitudes(a) => Some(a.len()),
        }
    }

    /// Builds the state on a subsystem `name` of dimension `d`.
    pub fn build<R: Rng>(&self, name: &str, owner: Owner, d: usize, rng: &mut R) -> Result<PureState, CliError> {
        if let Some(have) = self.dimension() {
            if have != d {
                return Err(CliError::invalid(format!("state `{self}` has dimension {have}, expected {d}")));
            }
        }
        let s = FRAC_1_SQRT_2;
        let amps: Vec<C64> = match self {
            StateSpec::Named(NamedState::H) => vec![real(1.0), real(0.0)],
            StateSpec::Named(NamedState::V) => vec![real(0.0), real(1.0)],
            StateSpec::Named(NamedState::D) => vec![real(s), real(s)],
            StateSpec::Named(NamedState::C) => vec![real(s), real(-s)],
            StateSpec::Named(NamedState::R) => vec![real(s), c(0.0, -s)],
            StateSpec::Random => {
                let reg = Register::new(vec![SubsystemLabel::new(name, d, owner)?])?;
                return Ok(haar_state(rng, reg)?);
            }
            StateSpec::Amplitudes(a) => a.iter().map(|&(re, im)| c(re, im)).collect(),
        };
        Ok(PureState::single(name, owner, &amps)?)
    }
}

impl FromStr for StateSpec {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        let t = s.trim();
        match t {
            "H" => return Ok(StateSpec::Named(NamedState::H)),
            "V" => return Ok(StateSpec::Named(NamedState::V)),
            "D" => return Ok(StateSpec::Named(NamedState::D)),
            "C" => return Ok(StateSpec::Named(NamedState::C)),
            "R" => return Ok(StateSpec::Named(NamedState::R)),
            "random" => return Ok(StateSpec::Random),
            _ => {}
        }
        let bad = || CliError::invalid(format!("state `{s}` is not H, V, D, C, R, random or \"(re,im),(re,im)\""));
        let inner = t.strip_prefix('(').and_then(|r| r.strip_suffix(')')).ok_or_else(bad)?;
        let mut amps = Vec::new();
        for pair in inner.split("),") {
            let pair = pair.trim().trim_start_matches('(');
            let (re, im) = pair.split_once(',').ok_or_else(bad)?;
            let re: f64 = re.trim().parse().map_err(|_| bad())?;
            let im: f64 = im.trim().parse().map_err(|_| bad())?;
            if !re.is_finite() || !im.is_finite() {
                return Err(bad());
            }
            amps.push((re, im));
        }
        if !(2..=3).contains(&amps.len()) {
            return Err(CliError::invalid(format!("state `{s}` must have 2 or 3 amplitudes")));
        }
        let norm = amps.iter().map(|(re, im)| re * re + im * im).sum::<f64>().sqrt();
        if norm < 1e-12 {
            return Err(CliError::invalid(format!("state `{s}` has zero norm")));
        }
        Ok(StateSpec::Amplitudes(amps.into_iter().map(|(re, im)| (re / norm, im / norm)).collect()))
    }
}

impl fmt::Display for StateSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StateSpec::Named(n) => write!(f, "{n:?}"),
            StateSpec::Random => f.write_str("random"),
            StateSpec::Amplitudes(a) => {
                let parts: Vec<String> = a.iter().map(|(re, im)| format!("({re},{im})")).collect();
                f.write_str(&parts.join(","))
            }
        }
    }
}

impl TryFrom<String> for StateSpec {
    type Error = CliError;

    fn try_from(s: String) -> Result<Self, CliError> {
        s.parse()
    }
}

impl From<StateSpec> for String {
    fn from(s: StateSpec) -> String {
        s.to_string()
    }
}

/// A named unitary. `X` and `Z` are the generalized Pauli operators in
/// dimension 3; `F` is the Fourier transform (the Hadamard for qubits).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum UnitarySpec {
    I,
    X,
    Y,
    Z,
    H,
    F,
    #[serde(rename = "random")]
    Random,
}

impl UnitarySpec {
    pub fn build<R: Rng>(self, d: usize, rng: &mut R) -> Result<CMatrix, CliError> {
        let qubit_only = |m: CMatrix| {
            if d == 2 {
                Ok(m)
            } else {
                Err(CliError::invalid(format!("unitary {self:?} is only defined for qubits")))
            }
        };
        match self {
            UnitarySpec::I => Ok(linalg::identity(d)),
            UnitarySpec::X if d == 2 => Ok(pauli_x()),
            UnitarySpec::X => Ok(weyl_x(d, 1)),
            UnitarySpec::Z if d == 2 => Ok(pauli_z()),
            UnitarySpec::Z => Ok(weyl_z(d, 1)),
            UnitarySpec::Y => qubit_only(pauli_y()),
            UnitarySpec::H => qubit_only(hadamard()),
            UnitarySpec::F if d == 2 => Ok(hadamard()),
            UnitarySpec::F if d == 3 => Ok(qutrit_fourier()),
            UnitarySpec::F => Err(CliError::invalid(format!("no Fourier transform for dimension {d}"))),
            UnitarySpec::Random => Ok(haar_unitary(rng, d)),
        }
    }
}

impl FromStr for UnitarySpec {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s.trim() {
            "I" => Ok(UnitarySpec::I),
            "X" => Ok(UnitarySpec::X),
            "Y" => Ok(UnitarySpec::Y),
            "Z" => Ok(UnitarySpec::Z),
            "H" => Ok(UnitarySpec::H),
            "F" => Ok(UnitarySpec::F),
            "random" => Ok(UnitarySpec::Random),
            _ => Err(CliError::invalid(format!("unitary `{s}` is not one of I, X, Y, Z, H, F, random"))),
        }
    }
}

/// Amplitudes of a state as plain `(re, im)` pairs.
pub fn amplitude_pairs(v: &CVector) -> Vec<(f64, f64)> {
    v.iter().map(|z| (z.re, z.im)).collect()
}
