//! Jones matrices for wave plates and the polarizing-beam-splitter CNOT.
//!
//! Polarization qubits use `|H⟩ = |0⟩`, `|V⟩ = |1⟩`; path qubits use
//! `|u⟩ = |0⟩`, `|d⟩ = |1⟩`.

use serde::{Deserialize, Serialize};

use crate::qcore::linalg::{c, from_rows, real, CMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum WaveplateKind {
    Hwp,
    Qwp,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WaveplateSpec {
    pub kind: WaveplateKind,
    /// Fast-axis angle from horizontal, in degrees.
    pub axis_angle: f64,
}

impl WaveplateSpec {
    pub fn hwp(axis_angle: f64) -> Self {
        Self { kind: WaveplateKind::Hwp, axis_angle }
    }

    pub fn qwp(axis_angle: f64) -> Self {
        Self { kind: WaveplateKind::Qwp, axis_angle }
    }
}

fn rotation(theta: f64) -> CMatrix {
    let (s, co) = theta.sin_cos();
    from_rows(&[&[real(co), real(-s)], &[real(s), real(co)]])
}

/// Half-wave plate at `deg`: `[[cos 2θ, sin 2θ], [sin 2θ, −cos 2θ]]`.
pub fn hwp(deg: f64) -> CMatrix {
    let (s, co) = (2.0 * deg.to_radians()).sin_cos();
    from_rows(&[&[real(co), real(s)], &[real(s), real(-co)]])
}

/// Quarter-wave plate at `deg`: `R(θ) diag(1, i) R(−θ)`.
pub fn qwp(deg: f64) -> CMatrix {
    let theta = deg.to_radians();
    let retarder = from_rows(&[&[real(1.0), real(0.0)], &[real(0.0), c(0.0, 1.0)]]);
    rotation(theta) * retarder * rotation(-theta)
}

pub fn waveplate(spec: WaveplateSpec) -> CMatrix {
    match spec.kind {
        WaveplateKind::Hwp => hwp(spec.axis_angle),
        WaveplateKind::Qwp => qwp(spec.axis_angle),
    }
}

/// Polarizing beam splitter as a CNOT on (polarization, path): `H` keeps the
/// path, `V` switches it.
pub fn pbs_cnot() -> CMatrix {
    super::cnot()
}

/// HWP angle (degrees) for the sandwich `QWP(45°)·HWP(·)·QWP(45°)` to
/// realize `u_com(φ)` up to a global phase.
pub fn sandwich_hwp_angle(phi: f64) -> f64 {
    45.0 - phi.to_degrees() / 4.0
}

/// `QWP(45°)·HWP(45° − φ/4)·QWP(45°)`, equal to `u_com(φ)` up to a global phase.
pub fn rotation_sandwich(phi: f64) -> CMatrix {
    qwp(45.0) * hwp(sandwich_hwp_angle(phi)) * qwp(45.0)
}

/// Operator on (path, polarization) applying `on_u` in path `u` and `on_d`
/// in path `d`.
pub fn path_conditional(on_u: &CMatrix, on_d: &CMatrix) -> CMatrix {
    let mut m = CMatrix::zeros(4, 4);
    m.view_mut((0, 0), (2, 2)).copy_from(on_u);
    m.view_mut((2, 2), (2, 2)).copy_from(on_d);
    m
}
