//! Projective measurements with exhaustive branch enumeration.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::linalg::{self, CMatrix, CVector};
use super::state::PureState;
use super::{DERIVED_TOL, PRUNE_TOL};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MeasurementMode {
    /// Return every branch with non-negligible probability.
    Enumerate,
    /// Return one branch drawn from the Born distribution by a seeded generator.
    Sample { seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeasurementBranch {
    pub outcome: usize,
    pub probability: f64,
    pub post_state: PureState,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Measurement {
    pub branches: Vec<MeasurementBranch>,
    /// Outcomes dropped because their probability fell below 1e-14.
    pub pruned: Vec<usize>,
}

impl Measurement {
    pub fn total_probability(&self) -> f64 {
        self.branches.iter().map(|b| b.probability).sum()
    }
}

/// Checks that `basis` is an orthonormal set of vectors of dimension `dim`.
pub fn check_orthonormal(basis: &[CVector], dim: usize) -> Result<()> {
    if basis.is_empty() || basis.len() > dim {
        return Err(Error::InvalidArgument(format!(
            "measurement basis must have between 1 and {dim} vectors, got {}",
            basis.len()
        )));
    }
    if let Some(v) = basis.iter().find(|v| v.len() != dim) {
        return Err(Error::DimensionMismatch { expected: dim, actual: v.len() });
    }
    let mut worst: f64 = 0.0;
    for (i, a) in basis.iter().enumerate() {
        for (j, b) in basis.iter().enumerate() {
            let expect = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((a.dotc(b) - linalg::real(expect)).norm());
        }
    }
    if worst > DERIVED_TOL {
        return Err(Error::NotOrthonormal(worst));
    }
    Ok(())
}

/// Measures `targets` (in the order given) in an orthonormal set of vectors.
///
/// When the set does not span the target space, the projector onto its
/// orthogonal complement is an extra outcome with index `basis.len()`.
/// Outcomes are ordered by index; branches with probability below 1e-14 are
/// pruned in both modes.
pub fn measure_projective(
    state: &PureState,
    basis: &[CVector],
    targets: &[&str],
    mode: MeasurementMode,
) -> Result<Measurement> {
    let positions = state.register().positions(targets)?;
    let dims = state.register().dims();
    let tdim: usize = positions.iter().map(|&p| dims[p]).product();
    check_orthonormal(basis, tdim)?;

    let mut projectors: Vec<CMatrix> = basis.iter().map(|b| linalg::outer(b, b)).collect();
    if basis.len() < tdim {
        let covered = projectors.iter().fold(CMatrix::zeros(tdim, tdim), |acc, p| acc + p);
        projectors.push(linalg::identity(tdim) - covered);
    }

    let mut branches = Vec::with_capacity(projectors.len());
    let mut pruned = Vec::new();
    for (outcome, proj) in projectors.iter().enumerate() {
        match state.apply_and_renormalize(proj, targets)? {
            Some((p, post)) if p >= PRUNE_TOL => {
                branches.push(MeasurementBranch { outcome, probability: p, post_state: post })
            }
            _ => pruned.push(outcome),
        }
    }

    match mode {
        MeasurementMode::Enumerate => Ok(Measurement { branches, pruned }),
        MeasurementMode::Sample { seed } => {
            let total: f64 = branches.iter().map(|b| b.probability).sum();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let r = rng.random::<f64>() * total;
            let mut acc = 0.0;
            let mut chosen = branches.len() - 1;
            for (i, b) in branches.iter().enumerate() {
                acc += b.probability;
                if r < acc {
                    chosen = i;
                    break;
                }
            }
            let pick = branches.swap_remove(chosen);
            Ok(Measurement { branches: vec![pick], pruned })
        }
    }
}

/// Computational basis of dimension `d`.
pub fn computational_basis(d: usize) -> Vec<CVector> {
    (0..d)
        .map(|i| {
            let mut v = CVector::zeros(d);
            v[i] = linalg::real(1.0);
            v
        })
        .collect()
}

/// `{|+⟩, |−⟩}`; in polarization language `{|D⟩, |C⟩}`.
pub fn plus_minus_basis() -> Vec<CVector> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    vec![
        CVector::from_vec(vec![linalg::real(h), linalg::real(h)]),
        CVector::from_vec(vec![linalg::real(h), linalg::real(-h)]),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::linalg::real;
    use crate::qcore::register::{Owner, Register, SubsystemLabel};
    use std::f64::consts::FRAC_1_SQRT_2;

    fn bell() -> PureState {
        let reg = Register::new(vec![
            SubsystemLabel::qubit("A", Owner::Alice),
            SubsystemLabel::qubit("B", Owner::Bob),
        ])
        .unwrap();
        let h = real(FRAC_1_SQRT_2);
        PureState::new(reg, CVector::from_vec(vec![h, real(0.0), real(0.0), h])).unwrap()
    }

    #[test]
    fn bell_first_qubit() {
        let m = measure_projective(&bell(), &computational_basis(2), &["A"], MeasurementMode::Enumerate)
            .unwrap();
        assert_eq!(m.branches.len(), 2);
        for (b, idx) in m.branches.iter().zip([0usize, 3]) {
            assert!((b.probability - 0.5).abs() < 1e-15);
            assert!((b.post_state.amplitudes()[idx] - real(1.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn eigenstate_single_branch() {
        let s = PureState::qubit("q", Owner::Bob, real(1.0), real(0.0)).unwrap();
        let m = measure_projective(&s, &computational_basis(2), &["q"], MeasurementMode::Enumerate)
            .unwrap();
        assert_eq!(m.branches.len(), 1);
        assert_eq!(m.pruned, vec![1]);
        assert!((m.branches[0].probability - 1.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_non_orthonormal() {
        let s = PureState::qubit("q", Owner::Bob, real(1.0), real(0.0)).unwrap();
        let basis = vec![
            CVector::from_vec(vec![real(1.0), real(0.0)]),
            CVector::from_vec(vec![real(FRAC_1_SQRT_2), real(FRAC_1_SQRT_2)]),
        ];
        assert!(matches!(
            measure_projective(&s, &basis, &["q"], MeasurementMode::Enumerate),
            Err(Error::NotOrthonormal(_))
        ));
    }

    #[test]
    fn sampling_is_seeded_and_skips_pruned() {
        let s = PureState::qubit("q", Owner::Bob, real(1.0), real(0.0)).unwrap();
        for seed in 0..50 {
            let m = measure_projective(&s, &computational_basis(2), &["q"], MeasurementMode::Sample { seed })
                .unwrap();
            assert_eq!(m.branches[0].outcome, 0);
        }
        let a = measure_projective(&bell(), &computational_basis(2), &["A"], MeasurementMode::Sample { seed: 9 })
            .unwrap();
        let b = measure_projective(&bell(), &computational_basis(2), &["A"], MeasurementMode::Sample { seed: 9 })
            .unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn incomplete_basis_adds_complement() {
        let m = measure_projective(
            &bell(),
            &computational_basis(4)[..1],
            &["A", "B"],
            MeasurementMode::Enumerate,
        )
        .unwrap();
        assert_eq!(m.branches.len(), 2);
        assert_eq!(m.branches[1].outcome, 1);
        assert!((m.total_probability() - 1.0).abs() < 1e-15);
    }
}
