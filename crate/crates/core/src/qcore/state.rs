use serde::{Deserialize, Serialize};

use super::density::DensityMatrix;
use super::linalg::{self, real, CMatrix, CVector, C64};
use super::register::{IndexTable, Owner, Register, SubsystemLabel};
use super::{CONSTRUCTION_TOL, DERIVED_TOL};
use crate::error::{Error, Result};

/// Normalized state vector over a labeled register.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawPureState")]
pub struct PureState {
    register: Register,
    #[serde(with = "super::cjson::vector")]
    amplitudes: CVector,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPureState {
    register: Register,
    #[serde(with = "super::cjson::vector")]
    amplitudes: CVector,
}

impl TryFrom<RawPureState> for PureState {
    type Error = Error;

    fn try_from(raw: RawPureState) -> Result<Self> {
        PureState::new(raw.register, raw.amplitudes)
    }
}

impl PureState {
    pub fn new(register: Register, amplitudes: CVector) -> Result<Self> {
        if amplitudes.len() != register.dimension() {
            return Err(Error::DimensionMismatch {
                expected: register.dimension(),
                actual: amplitudes.len(),
            });
        }
        let norm = amplitudes.norm();
        if (norm - 1.0).abs() > CONSTRUCTION_TOL {
            return Err(Error::NotNormalized(norm));
        }
        Ok(Self { register, amplitudes })
    }

    /// Rescales `amplitudes` to unit norm. Rejects the zero vector.
    pub fn normalized(register: Register, amplitudes: CVector) -> Result<Self> {
        let norm = amplitudes.norm();
        if !norm.is_finite() || norm < 1e-300 {
            return Err(Error::NotNormalized(norm));
        }
        Self::new(register, amplitudes.unscale(norm))
    }

    pub fn basis(register: Register, index: usize) -> Result<Self> {
        let d = register.dimension();
        if index >= d {
            return Err(Error::InvalidArgument(format!("basis index {index} out of range {d}")));
        }
        let mut v = CVector::zeros(d);
        v[index] = real(1.0);
        Self::new(register, v)
    }

    /// Single qubit `α|0⟩ + β|1⟩`, normalized.
    pub fn qubit(name: &str, owner: Owner, alpha: C64, beta: C64) -> Result<Self> {
        let reg = Register::new(vec![SubsystemLabel::qubit(name, owner)])?;
        Self::normalized(reg, CVector::from_vec(vec![alpha, beta]))
    }

    /// Single subsystem of dimension `amps.len()`, normalized.
    pub fn single(name: &str, owner: Owner, amps: &[C64]) -> Result<Self> {
        let reg = Register::new(vec![SubsystemLabel::new(name, amps.len(), owner)?])?;
        Self::normalized(reg, CVector::from_column_slice(amps))
    }

    pub fn register(&self) -> &Register {
        &self.register
    }

    pub fn amplitudes(&self) -> &CVector {
        &self.amplitudes
    }

    pub fn dimension(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.norm()
    }

    /// Kronecker product; the register is the concatenation `self ++ other`.
    pub fn tensor(&self, other: &PureState) -> Result<PureState> {
        let register = self.register.concat(&other.register)?;
        let amplitudes = self.amplitudes.kronecker(&other.amplitudes);
        Ok(PureState { register, amplitudes })
    }

    /// Applies `u` to `targets` (in the order given) and identity elsewhere.
    pub fn apply_unitary(&self, u: &CMatrix, targets: &[&str]) -> Result<PureState> {
        let dev = linalg::unitarity_deviation(u);
        if dev > DERIVED_TOL {
            return Err(Error::NotUnitary(dev));
        }
        let amplitudes = self.apply_operator(u, targets)?;
        Ok(PureState { register: self.register.clone(), amplitudes })
    }

    /// Applies an arbitrary operator to `targets`; the result is not renormalized.
    pub(crate) fn apply_operator(&self, op: &CMatrix, targets: &[&str]) -> Result<CVector> {
        let positions = self.register.positions(targets)?;
        let dims = self.register.dims();
        let tdim: usize = positions.iter().map(|&p| dims[p]).product();
        if op.nrows() != tdim || op.ncols() != tdim {
            return Err(Error::DimensionMismatch { expected: tdim, actual: op.nrows() });
        }
        let table = IndexTable::new(&dims, &positions);
        let mut out = CVector::zeros(self.amplitudes.len());
        let mut local = CVector::zeros(tdim);
        for r in 0..table.rest_dim {
            for s in 0..tdim {
                local[s] = self.amplitudes[table.at(r, s)];
            }
            let mapped = op * &local;
            for s in 0..tdim {
                out[table.at(r, s)] = mapped[s];
            }
        }
        Ok(out)
    }

    /// Applies `op` to `targets` and renormalizes; returns the squared norm
    /// before renormalization, or `None` when it vanishes.
    pub(crate) fn apply_and_renormalize(
        &self,
        op: &CMatrix,
        targets: &[&str],
    ) -> Result<Option<(f64, PureState)>> {
        let v = self.apply_operator(op, targets)?;
        let weight = v.norm_squared();
        if weight <= 0.0 {
            return Ok(None);
        }
        let state = PureState { register: self.register.clone(), amplitudes: v.unscale(weight.sqrt()) };
        Ok(Some((weight, state)))
    }

    /// `⟨self|other⟩`; both states must have the same register shape.
    pub fn inner(&self, other: &PureState) -> Result<C64> {
        if !self.register.same_shape(&other.register) {
            return Err(Error::RegisterMismatch);
        }
        Ok(self.amplitudes.dotc(&other.amplitudes))
    }

    /// `|⟨self|other⟩|²`
    pub fn fidelity(&self, other: &PureState) -> Result<f64> {
        Ok(self.inner(other)?.norm_sqr())
    }

    /// Equality up to a global phase: `|⟨a|b⟩|² ≥ 1 − 1e-10`.
    pub fn matches_up_to_phase(&self, other: &PureState) -> bool {
        self.fidelity(other).map(|f| f >= 1.0 - DERIVED_TOL).unwrap_or(false)
    }

    pub fn density(&self) -> DensityMatrix {
        DensityMatrix::from_pure(self)
    }

    /// Reduced density matrix on `keep` (in the order given).
    pub fn reduced(&self, keep: &[&str]) -> Result<DensityMatrix> {
        let positions = self.register.positions(keep)?;
        let table = IndexTable::new(&self.register.dims(), &positions);
        let k = table.selected_dim;
        let mut rho = CMatrix::zeros(k, k);
        for r in 0..table.rest_dim {
            for i in 0..k {
                let a = self.amplitudes[table.at(r, i)];
                if a == C64::default() {
                    continue;
                }
                for j in 0..k {
                    rho[(i, j)] += a * self.amplitudes[table.at(r, j)].conj();
                }
            }
        }
        DensityMatrix::new(self.register.subset(&positions), linalg::hermitize(&rho))
    }

    /// Splits off the state of `keep`, which must be in a product state with
    /// the rest of the register (purity ≥ 1 − 1e-10). The global phase of the
    /// result is arbitrary.
    pub fn extract(&self, keep: &[&str]) -> Result<PureState> {
        let rho = self.reduced(keep)?;
        let (vals, vecs) = linalg::hermitian_eigen(rho.matrix());
        let (best, &top) = vals
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .expect("non-empty spectrum");
        if top < 1.0 - DERIVED_TOL {
            return Err(Error::NotSeparable(top));
        }
        PureState::normalized(rho.register().clone(), vecs.column(best).into_owned())
    }

    /// Same amplitudes under a different register of identical shape.
    pub fn relabel(&self, register: Register) -> Result<PureState> {
        if !self.register.same_shape(&register) {
            return Err(Error::RegisterMismatch);
        }
        Ok(PureState { register, amplitudes: self.amplitudes.clone() })
    }
}
