//! Operator constructors: Pauli and rotation-class qubit gates, qutrit
//! operators on the symmetric two-qubit subspace, and linear-optics gates.

pub mod optics;
pub mod tilde;

use serde::{Deserialize, Serialize};

pub use optics::{hwp, pbs_cnot, qwp, rotation_sandwich, waveplate, WaveplateKind, WaveplateSpec};
pub use tilde::{
    controlled_ut, embed_tilde, embedded_controlled_ut, qutrit_fourier, qutrit_t, tilde_phase,
    TildeBasis,
};

use crate::qcore::linalg::{c, from_rows, phase, real, CMatrix};

pub fn pauli_i() -> CMatrix {
    CMatrix::identity(2, 2)
}

pub fn pauli_x() -> CMatrix {
    from_rows(&[&[real(0.0), real(1.0)], &[real(1.0), real(0.0)]])
}

pub fn pauli_y() -> CMatrix {
    from_rows(&[&[real(0.0), c(0.0, -1.0)], &[c(0.0, 1.0), real(0.0)]])
}

pub fn pauli_z() -> CMatrix {
    from_rows(&[&[real(1.0), real(0.0)], &[real(0.0), real(-1.0)]])
}

pub fn hadamard() -> CMatrix {
    let h = real(std::f64::consts::FRAC_1_SQRT_2);
    from_rows(&[&[h, h], &[h, -h]])
}

/// Controlled-NOT on (control, target), control most significant.
pub fn cnot() -> CMatrix {
    let (o, l) = (real(0.0), real(1.0));
    from_rows(&[&[l, o, o, o], &[o, l, o, o], &[o, o, o, l], &[o, o, l, o]])
}

/// Rotation about z: `e^{i(φ/2)σ_z} = diag(e^{iφ/2}, e^{−iφ/2})`.
pub fn u_com(phi: f64) -> CMatrix {
    from_rows(&[&[phase(phi / 2.0), real(0.0)], &[real(0.0), phase(-phi / 2.0)]])
}

/// Operator anticommuting with σ_z: `σ_x · u_com(φ + π)`.
pub fn u_anticom(phi: f64) -> CMatrix {
    pauli_x() * u_com(phi + std::f64::consts::PI)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RotationKind {
    Commuting,
    Anticommuting,
}

/// A member of one of the two σ_z rotation classes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RotationClass {
    pub kind: RotationKind,
    /// Radians.
    pub angle: f64,
}

impl RotationClass {
    pub fn commuting(angle: f64) -> Self {
        Self { kind: RotationKind::Commuting, angle }
    }

    pub fn anticommuting(angle: f64) -> Self {
        Self { kind: RotationKind::Anticommuting, angle }
    }

    pub fn unitary(&self) -> CMatrix {
        match self.kind {
            RotationKind::Commuting => u_com(self.angle),
            RotationKind::Anticommuting => u_anticom(self.angle),
        }
    }
}
