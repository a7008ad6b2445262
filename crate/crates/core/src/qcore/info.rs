//! Fidelity and entanglement entropy.

use super::density::DensityMatrix;
use super::linalg;
use super::state::PureState;
use super::DERIVED_TOL;
use crate::error::{Error, Result};

/// Uhlmann fidelity `F(ρ, ρ′) = (Tr √(√ρ′ ρ √ρ′))²`, clamped to `[0, 1]`.
pub fn fidelity(rho: &DensityMatrix, rho_prime: &DensityMatrix) -> Result<f64> {
    if rho.register() != rho_prime.register() {
        return Err(Error::RegisterMismatch);
    }
    let s = linalg::sqrt_psd(rho_prime.matrix());
    let inner = &s * rho.matrix() * &s;
    let (vals, _) = linalg::hermitian_eigen(&inner);
    let tr: f64 = vals.iter().map(|&v| linalg::clamped_sqrt(v)).sum();
    Ok((tr * tr).clamp(0.0, 1.0))
}

/// Base-2 von Neumann entropy; eigenvalues below 1e-15 contribute nothing.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    rho.eigenvalues()
        .into_iter()
        .filter(|&v| v > 1e-15)
        .map(|v| -v * v.log2())
        .sum::<f64>()
        .max(0.0)
}

/// Entanglement entropy (in ebits) of a pure state across the cut that puts
/// `side` on one side and the rest of the register on the other.
pub fn entanglement_entropy(state: &PureState, side: &[&str]) -> Result<f64> {
    let names = state.register().names();
    if side.is_empty() || side.len() >= names.len() {
        return Err(Error::NotAPartition(format!(
            "side {side:?} must be a non-empty proper subset of {names:?}"
        )));
    }
    state.register().positions(side)?;
    let other: Vec<&str> = names.iter().copied().filter(|n| !side.contains(n)).collect();
    let left = von_neumann_entropy(&state.reduced(side)?);
    let right = von_neumann_entropy(&state.reduced(&other)?);
    if (left - right).abs() > DERIVED_TOL {
        return Err(Error::InvalidArgument(format!(
            "entropies across the cut disagree: {left} vs {right}"
        )));
    }
    Ok(left)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::linalg::{c, real};
    use crate::qcore::register::Owner;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn q(a: f64, b: f64) -> PureState {
        PureState::qubit("q", Owner::Bob, real(a), real(b)).unwrap()
    }

    #[test]
    fn fidelity_cases() {
        let zero = q(1.0, 0.0).density();
        let one = q(0.0, 1.0).density();
        let plus = q(FRAC_1_SQRT_2, FRAC_1_SQRT_2).density();
        assert!((fidelity(&zero, &zero).unwrap() - 1.0).abs() < 1e-12);
        assert!(fidelity(&zero, &one).unwrap().abs() < 1e-12);
        assert!((fidelity(&zero, &plus).unwrap() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn fidelity_mixed_is_symmetric() {
        let a = DensityMatrix::mixture(&[(0.3, q(1.0, 0.0).density()), (0.7, q(0.6, 0.8).density())])
            .unwrap();
        let b = PureState::qubit("q", Owner::Bob, c(0.1, 0.2), c(0.9, -0.3)).unwrap().density();
        let ab = fidelity(&a, &b).unwrap();
        let ba = fidelity(&b, &a).unwrap();
        assert!((ab - ba).abs() < 1e-10);
        // pure second argument reduces to an expectation value
        assert!((ab - a.expectation(&PureState::qubit("q", Owner::Bob, c(0.1, 0.2), c(0.9, -0.3)).unwrap()).unwrap()).abs() < 1e-10);
    }

    #[test]
    fn fidelity_rejects_mismatched_registers() {
        let a = q(1.0, 0.0).density();
        let b = PureState::qubit("other", Owner::Bob, real(1.0), real(0.0)).unwrap().density();
        assert!(matches!(fidelity(&a, &b), Err(Error::RegisterMismatch)));
    }

    #[test]
    fn entropy_rejects_bad_cuts() {
        let s = q(1.0, 0.0).tensor(&PureState::qubit("r", Owner::Alice, real(1.0), real(0.0)).unwrap()).unwrap();
        assert!(entanglement_entropy(&s, &[]).is_err());
        assert!(entanglement_entropy(&s, &["q", "r"]).is_err());
        assert!(entanglement_entropy(&s, &["zz"]).is_err());
        assert!(entanglement_entropy(&s, &["q"]).unwrap().abs() < 1e-12);
    }
}
