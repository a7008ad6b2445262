//! Qutrit operators realized on the symmetric subspace of two qubits.
//!
//! The tilde basis is `|0̃⟩ = |00⟩`, `|1̃⟩ = (|01⟩ + |10⟩)/√2`, `|2̃⟩ = |11⟩`.
//! Embedded operators act as the identity on the antisymmetric vector
//! `(|01⟩ − |10⟩)/√2`.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use crate::error::{Error, Result};
use crate::qcore::linalg::{self, phase, real, CMatrix, CVector};
use crate::qcore::DERIVED_TOL;

/// The symmetric-subspace basis of a qubit pair.
#[derive(Debug, Clone, Copy, Default)]
pub struct TildeBasis;

impl TildeBasis {
    /// `|0̃⟩, |1̃⟩, |2̃⟩` as 4-dimensional vectors.
    pub fn vectors() -> Vec<CVector> {
        let (o, l, h) = (real(0.0), real(1.0), real(FRAC_1_SQRT_2));
        vec![
            CVector::from_vec(vec![l, o, o, o]),
            CVector::from_vec(vec![o, h, h, o]),
            CVector::from_vec(vec![o, o, o, l]),
        ]
    }

    pub fn antisymmetric() -> CVector {
        let (o, h) = (real(0.0), real(FRAC_1_SQRT_2));
        CVector::from_vec(vec![o, h, -h, o])
    }

    /// Unitary whose columns are `|0̃⟩, |1̃⟩, |2̃⟩` and the antisymmetric vector.
    pub fn change_of_basis() -> CMatrix {
        let mut cols = Self::vectors();
        cols.push(Self::antisymmetric());
        CMatrix::from_columns(&cols)
    }

    /// Projector onto the symmetric subspace.
    pub fn symmetric_projector() -> CMatrix {
        Self::vectors().iter().fold(CMatrix::zeros(4, 4), |acc, v| acc + linalg::outer(v, v))
    }
}

fn shift() -> CMatrix {
    // T = |0̃⟩⟨1̃| + |1̃⟩⟨2̃| + |2̃⟩⟨0̃|
    let mut t = CMatrix::zeros(3, 3);
    t[(0, 1)] = real(1.0);
    t[(1, 2)] = real(1.0);
    t[(2, 0)] = real(1.0);
    t
}

/// `T^power`, with `T|m̃⟩ = |(m − 1) mod 3⟩`. Powers are taken mod 3.
pub fn qutrit_t(power: usize) -> CMatrix {
    linalg::matrix_power(&shift(), power % 3)
}

/// `U_T = Σ_k |k̃⟩⟨k̃| ⊗ T^k` on (control, target) qutrits.
pub fn controlled_ut() -> CMatrix {
    let mut u = CMatrix::zeros(9, 9);
    for k in 0..3 {
        u.view_mut((3 * k, 3 * k), (3, 3)).copy_from(&qutrit_t(k));
    }
    u
}

/// `ℱ_{jk} = e^{2πi jk/3}/√3`.
pub fn qutrit_fourier() -> CMatrix {
    let s = 1.0 / 3f64.sqrt();
    CMatrix::from_fn(3, 3, |j, k| phase(2.0 * PI * (j * k) as f64 / 3.0) * s)
}

/// `diag(1, ω̄^k, ω̄^{2k})` with `ω̄ = e^{−2πi/3}`; removes the phase
/// `e^{2πi km/3}` from `|m̃⟩`.
pub fn tilde_phase(k: usize) -> CMatrix {
    CMatrix::from_fn(3, 3, |i, j| {
        if i == j {
            phase(-2.0 * PI * ((k * i) % 3) as f64 / 3.0)
        } else {
            real(0.0)
        }
    })
}

/// Lifts a 3×3 unitary to a two-qubit unitary acting on the symmetric
/// subspace and trivially on the antisymmetric vector.
pub fn embed_tilde(op3: &CMatrix) -> Result<CMatrix> {
    if op3.shape() != (3, 3) {
        return Err(Error::DimensionMismatch { expected: 3, actual: op3.nrows() });
    }
    let dev = linalg::unitarity_deviation(op3);
    if dev > DERIVED_TOL {
        return Err(Error::NotUnitary(dev));
    }
    let mut block = CMatrix::identity(4, 4);
    block.view_mut((0, 0), (3, 3)).copy_from(op3);
    let w = TildeBasis::change_of_basis();
    Ok(&w * block * w.adjoint())
}

/// `U_T` on two qubit pairs (control pair first): `Σ_k P_k ⊗ embed(T^k)`
/// plus the identity on the target when the control pair is antisymmetric.
pub fn embedded_controlled_ut() -> CMatrix {
    let basis = TildeBasis::vectors();
    let mut u = CMatrix::zeros(16, 16);
    for (k, v) in basis.iter().enumerate() {
        let block = embed_tilde(&qutrit_t(k)).expect("T^k is unitary");
        u += linalg::kron(&linalg::outer(v, v), &block);
    }
    let a = TildeBasis::antisymmetric();
    u += linalg::kron(&linalg::outer(&a, &a), &CMatrix::identity(4, 4));
    u
}

/// Two qubit-wise controlled-NOTs on (c1, c2, t1, t2): `c1 → t1`, `c2 → t2`.
pub fn qubitwise_cnot_pair() -> CMatrix {
    CMatrix::from_fn(16, 16, |row, col| {
        let (c1, c2, t1, t2) = ((col >> 3) & 1, (col >> 2) & 1, (col >> 1) & 1, col & 1);
        let out = (c1 << 3) | (c2 << 2) | ((t1 ^ c1) << 1) | (t2 ^ c2);
        if out == row {
            real(1.0)
        } else {
            real(0.0)
        }
    })
}
