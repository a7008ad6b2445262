//! Linear-inversion process tomography from the probes `|H⟩, |V⟩, |D⟩, |R⟩`.

use std::f64::consts::FRAC_1_SQRT_2;

use super::chi::{pauli_basis, ChiMatrix};
use crate::error::{Error, Result};
use crate::qcore::linalg::{self, c, real, CMatrix, CVector};
use crate::qcore::{DensityMatrix, Owner, PureState, DERIVED_TOL};

pub const PROBE_NAMES: [&str; 4] = ["H", "V", "D", "R"];

/// `|H⟩ = |0⟩`, `|V⟩ = |1⟩`, `|D⟩ = (|H⟩ + |V⟩)/√2`, `|R⟩ = (|H⟩ − i|V⟩)/√2`.
pub fn probe_states() -> Vec<PureState> {
    let h = real(FRAC_1_SQRT_2);
    [
        (real(1.0), real(0.0)),
        (real(0.0), real(1.0)),
        (h, h),
        (h, c(0.0, -FRAC_1_SQRT_2)),
    ]
    .into_iter()
    .map(|(a, b)| PureState::qubit("q", Owner::Bob, a, b).expect("normalized probe"))
    .collect()
}

/// Reconstructs χ from the outputs of the four probes. Pairs may come in any
/// order, but the inputs must be exactly the canonical probes.
pub fn qpt_reconstruct(pairs: &[(DensityMatrix, DensityMatrix)]) -> Result<ChiMatrix> {
    if pairs.len() != 4 {
        return Err(Error::InvalidProbeSet);
    }
    let probes: Vec<CMatrix> = probe_states().iter().map(|p| p.density().matrix().clone()).collect();
    let mut seen = [false; 4];
    for (input, output) in pairs {
        if input.dimension() != 2 || output.dimension() != 2 {
            return Err(Error::InvalidProbeSet);
        }
        let idx = probes
            .iter()
            .position(|p| linalg::max_abs_diff(p, input.matrix()) < DERIVED_TOL)
            .ok_or(Error::InvalidProbeSet)?;
        if seen[idx] {
            return Err(Error::InvalidProbeSet);
        }
        seen[idx] = true;
    }

    // Row (j, r, s), column (m, n): (E_m ρ_j E_n†)[r, s].
    let e = pauli_basis();
    let mut a = CMatrix::zeros(16, 16);
    let mut b = CVector::zeros(16);
    for (j, (input, output)) in pairs.iter().enumerate() {
        for m in 0..4 {
            for n in 0..4 {
                let block = &e[m] * input.matrix() * e[n].adjoint();
                for r in 0..2 {
                    for s in 0..2 {
                        a[(j * 4 + r * 2 + s, m * 4 + n)] = block[(r, s)];
                    }
                }
            }
        }
        for r in 0..2 {
            for s in 0..2 {
                b[j * 4 + r * 2 + s] = output.matrix()[(r, s)];
            }
        }
    }
    let x = a.lu().solve(&b).ok_or(Error::Singular)?;
    let chi = CMatrix::from_fn(4, 4, |m, n| x[m * 4 + n]);
    ChiMatrix::new(linalg::hermitize(&chi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::noisetomo::chi::chi_from_channel;
    use crate::qcore::KrausChannel;

    fn outputs(ch: &KrausChannel) -> Vec<(DensityMatrix, DensityMatrix)> {
        probe_states().iter().map(|p| (p.density(), ch.apply(&p.density()).unwrap())).collect()
    }

    #[test]
    fn identity_outputs_give_identity_chi() {
        let pairs: Vec<_> = probe_states().iter().map(|p| (p.density(), p.density())).collect();
        let chi = qpt_reconstruct(&pairs).unwrap();
        let mut expect = CMatrix::zeros(4, 4);
        expect[(0, 0)] = real(1.0);
        assert!(linalg::max_abs_diff(chi.entries(), &expect) < 1e-12);
    }

    #[test]
    fn order_does_not_matter() {
        let ch = KrausChannel::unitary(crate::gates::hadamard()).unwrap();
        let mut pairs = outputs(&ch);
        pairs.reverse();
        let chi = qpt_reconstruct(&pairs).unwrap();
        assert!(chi.distance(&chi_from_channel(&ch).unwrap()) < 1e-12);
    }

    #[test]
    fn rejects_other_probe_sets() {
        let ch = KrausChannel::unitary(linalg::identity(2)).unwrap();
        let mut pairs = outputs(&ch);
        assert!(qpt_reconstruct(&pairs[..3]).is_err());
        pairs[3] = pairs[2].clone();
        assert!(matches!(qpt_reconstruct(&pairs), Err(Error::InvalidProbeSet)));
        // |L⟩ instead of |R⟩
        let l = PureState::qubit("q", Owner::Bob, real(FRAC_1_SQRT_2), c(0.0, FRAC_1_SQRT_2)).unwrap();
        let mut pairs = outputs(&ch);
        pairs[3] = (l.density(), l.density());
        assert!(matches!(qpt_reconstruct(&pairs), Err(Error::InvalidProbeSet)));
    }
}
