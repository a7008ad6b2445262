use serde::{Deserialize, Serialize};

use super::channel::KrausChannel;
use super::linalg::{self, CMatrix, C64};
use super::register::{IndexTable, Register};
use super::state::PureState;
use super::CONSTRUCTION_TOL;
use crate::error::{Error, Result};

/// Smallest eigenvalue tolerated before a matrix is rejected as non-positive.
pub const EIGENVALUE_FLOOR: f64 = -1e-10;

/// Positive, unit-trace Hermitian matrix over a labeled register.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawDensity")]
pub struct DensityMatrix {
    register: Register,
    #[serde(with = "super::cjson::matrix")]
    matrix: CMatrix,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDensity {
    register: Register,
    #[serde(with = "super::cjson::matrix")]
    matrix: CMatrix,
}

impl TryFrom<RawDensity> for DensityMatrix {
    type Error = Error;

    fn try_from(raw: RawDensity) -> Result<Self> {
        DensityMatrix::new(raw.register, raw.matrix)
    }
}

impl DensityMatrix {
    pub fn new(register: Register, matrix: CMatrix) -> Result<Self> {
        let d = register.dimension();
        if matrix.nrows() != d || matrix.ncols() != d {
            return Err(Error::DimensionMismatch { expected: d, actual: matrix.nrows() });
        }
        let herm = linalg::hermiticity_deviation(&matrix);
        if herm > CONSTRUCTION_TOL {
            return Err(Error::NotHermitian(herm));
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > CONSTRUCTION_TOL || tr.im.abs() > CONSTRUCTION_TOL {
            return Err(Error::InvalidTrace(tr.re));
        }
        let (vals, _) = linalg::hermitian_eigen(&matrix);
        let min = vals.iter().copied().fold(f64::INFINITY, f64::min);
        if min < EIGENVALUE_FLOOR {
            return Err(Error::NotPositive(min));
        }
        Ok(Self { register, matrix })
    }

    pub fn from_pure(state: &PureState) -> Self {
        let v = state.amplitudes();
        Self { register: state.register().clone(), matrix: linalg::outer(v, v) }
    }

    /// Convex combination `Σ w_k ρ_k` of states on the same register.
    pub fn mixture(parts: &[(f64, DensityMatrix)]) -> Result<Self> {
        let (_, first) = parts
            .first()
            .ok_or_else(|| Error::InvalidArgument("empty mixture".into()))?;
        let mut m = CMatrix::zeros(first.matrix.nrows(), first.matrix.ncols());
        for (w, rho) in parts {
            if !rho.register.same_shape(&first.register) {
                return Err(Error::RegisterMismatch);
            }
            m += &rho.matrix * linalg::real(*w);
        }
        Self::new(first.register.clone(), linalg::hermitize(&m))
    }

    pub fn register(&self) -> &Register {
        &self.register
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn dimension(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        linalg::hermitian_eigen(&self.matrix).0
    }

    pub fn purity(&self) -> f64 {
        (&self.matrix * &self.matrix).trace().re
    }

    /// Reduced state on `keep` (in the order given).
    pub fn partial_trace(&self, keep: &[&str]) -> Result<DensityMatrix> {
        let positions = self.register.positions(keep)?;
        let table = IndexTable::new(&self.register.dims(), &positions);
        let k = table.selected_dim;
        let mut out = CMatrix::zeros(k, k);
        for r in 0..table.rest_dim {
            for i in 0..k {
                for j in 0..k {
                    out[(i, j)] += self.matrix[(table.at(r, i), table.at(r, j))];
                }
            }
        }
        DensityMatrix::new(self.register.subset(&positions), linalg::hermitize(&out))
    }

    /// Lifts an operator on `targets` to the full register.
    pub(crate) fn lift(&self, op: &CMatrix, targets: &[&str]) -> Result<CMatrix> {
        let positions = self.register.positions(targets)?;
        let table = IndexTable::new(&self.register.dims(), &positions);
        let k = table.selected_dim;
        if op.nrows() != k || op.ncols() != k {
            return Err(Error::DimensionMismatch { expected: k, actual: op.nrows() });
        }
        let d = self.dimension();
        let mut full = CMatrix::zeros(d, d);
        for r in 0..table.rest_dim {
            for i in 0..k {
                for j in 0..k {
                    full[(table.at(r, i), table.at(r, j))] = op[(i, j)];
                }
            }
        }
        Ok(full)
    }

    pub fn apply_unitary(&self, u: &CMatrix, targets: &[&str]) -> Result<DensityMatrix> {
        let dev = linalg::unitarity_deviation(u);
        if dev > super::DERIVED_TOL {
            return Err(Error::NotUnitary(dev));
        }
        let full = self.lift(u, targets)?;
        let m = &full * &self.matrix * full.adjoint();
        DensityMatrix::new(self.register.clone(), linalg::hermitize(&m))
    }

    /// `Σ_k K_k ρ K_k†` with the Kraus operators acting on `targets`.
    pub fn apply_channel(&self, channel: &KrausChannel, targets: &[&str]) -> Result<DensityMatrix> {
        let d = self.dimension();
        let mut acc = CMatrix::zeros(d, d);
        for k in channel.operators() {
            let full = self.lift(k, targets)?;
            acc += &full * &self.matrix * full.adjoint();
        }
        DensityMatrix::new(self.register.clone(), linalg::hermitize(&acc))
    }

    /// `⟨ψ|ρ|ψ⟩`
    pub fn expectation(&self, state: &PureState) -> Result<f64> {
        if !self.register.same_shape(state.register()) {
            return Err(Error::RegisterMismatch);
        }
        let v = state.amplitudes();
        Ok(v.dotc(&(&self.matrix * v)).re)
    }

    pub fn entry(&self, i: usize, j: usize) -> C64 {
        self.matrix[(i, j)]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::linalg::{c, real};
    use crate::qcore::register::{Owner, SubsystemLabel};
    use crate::qcore::CVector;
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
    fn bell_reduces_to_maximally_mixed() {
        let rho = bell().density().partial_trace(&["A"]).unwrap();
        assert!(linalg::max_abs_diff(rho.matrix(), &(linalg::identity(2) * real(0.5))) < 1e-15);
    }

    #[test]
    fn product_reduces_to_factor() {
        let a = PureState::qubit("a", Owner::Alice, c(0.6, 0.0), c(0.0, 0.8)).unwrap();
        let b = PureState::qubit("b", Owner::Bob, real(1.0), real(1.0)).unwrap();
        let rho = a.tensor(&b).unwrap().density();
        let ra = rho.partial_trace(&["a"]).unwrap();
        assert!(linalg::max_abs_diff(ra.matrix(), a.density().matrix()) < 1e-15);
        let rb = rho.partial_trace(&["b"]).unwrap();
        assert!(linalg::max_abs_diff(rb.matrix(), b.density().matrix()) < 1e-15);
    }

    #[test]
    fn partial_trace_matches_pure_reduction() {
        let s = bell();
        let via_rho = s.density().partial_trace(&["B"]).unwrap();
        let via_psi = s.reduced(&["B"]).unwrap();
        assert!(linalg::max_abs_diff(via_rho.matrix(), via_psi.matrix()) < 1e-15);
    }

    #[test]
    fn rejects_empty_keep() {
        assert!(bell().density().partial_trace(&[]).is_err());
    }

    #[test]
    fn rejects_invalid_matrices() {
        let reg = Register::new(vec![SubsystemLabel::qubit("a", Owner::Alice)]).unwrap();
        let non_herm = linalg::from_rows(&[&[real(0.5), real(0.3)], &[real(0.0), real(0.5)]]);
        assert!(matches!(DensityMatrix::new(reg.clone(), non_herm), Err(Error::NotHermitian(_))));
        let bad_trace = linalg::identity(2);
        assert!(matches!(DensityMatrix::new(reg.clone(), bad_trace), Err(Error::InvalidTrace(_))));
        let negative = linalg::from_rows(&[&[real(1.5), real(0.0)], &[real(0.0), real(-0.5)]]);
        assert!(matches!(DensityMatrix::new(reg, negative), Err(Error::NotPositive(_))));
    }
}
