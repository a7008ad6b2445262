use serde::{Deserialize, Serialize};

use super::density::DensityMatrix;
use super::linalg::{self, CMatrix};
use super::state::PureState;
use super::{DERIVED_TOL, PRUNE_TOL};
use crate::error::{Error, Result};

/// Completely positive trace-preserving map given by Kraus operators.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawChannel")]
pub struct KrausChannel {
    #[serde(serialize_with = "ser_ops")]
    operators: Vec<CMatrix>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawChannel {
    operators: Vec<Vec<Vec<super::cjson::ComplexJson>>>,
}

fn ser_ops<S: serde::Serializer>(ops: &[CMatrix], s: S) -> std::result::Result<S::Ok, S::Error> {
    let rows: Vec<_> = ops.iter().map(super::cjson::matrix_rows).collect();
    rows.serialize(s)
}

impl TryFrom<RawChannel> for KrausChannel {
    type Error = Error;

    fn try_from(raw: RawChannel) -> Result<Self> {
        let ops = raw
            .operators
            .iter()
            .map(|m| super::cjson::matrix_from_rows(m).map_err(Error::InvalidArgument))
            .collect::<Result<Vec<_>>>()?;
        KrausChannel::new(ops)
    }
}

impl KrausChannel {
    pub fn new(operators: Vec<CMatrix>) -> Result<Self> {
        let first = operators
            .first()
            .ok_or_else(|| Error::InvalidArgument("channel needs at least one Kraus operator".into()))?;
        let d = first.nrows();
        if !first.is_square() {
            return Err(Error::DimensionMismatch { expected: d, actual: first.ncols() });
        }
        if let Some(bad) = operators.iter().find(|k| k.shape() != (d, d)) {
            return Err(Error::DimensionMismatch { expected: d, actual: bad.nrows() });
        }
        let sum = operators.iter().fold(CMatrix::zeros(d, d), |acc, k| acc + k.adjoint() * k);
        let dev = linalg::max_abs_diff(&sum, &linalg::identity(d));
        if dev > DERIVED_TOL {
            return Err(Error::NotTracePreserving(dev));
        }
        Ok(Self { operators })
    }

    pub fn unitary(u: CMatrix) -> Result<Self> {
        let dev = linalg::unitarity_deviation(&u);
        if dev > DERIVED_TOL {
            return Err(Error::NotUnitary(dev));
        }
        Self::new(vec![u])
    }

    pub fn operators(&self) -> &[CMatrix] {
        &self.operators
    }

    pub fn dimension(&self) -> usize {
        self.operators[0].nrows()
    }

    /// Applies the channel to a bare matrix on the channel's own space.
    pub fn apply_matrix(&self, rho: &CMatrix) -> CMatrix {
        let out = self
            .operators
            .iter()
            .fold(CMatrix::zeros(rho.nrows(), rho.ncols()), |acc, k| acc + k * rho * k.adjoint());
        linalg::hermitize(&out)
    }

    /// Channel acting on the whole register of `rho`.
    pub fn apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        if rho.dimension() != self.dimension() {
            return Err(Error::DimensionMismatch { expected: self.dimension(), actual: rho.dimension() });
        }
        DensityMatrix::new(rho.register().clone(), self.apply_matrix(rho.matrix()))
    }

    /// Unravels the channel on a pure state into weighted pure trajectories
    /// `K_k|ψ⟩/‖K_k|ψ⟩‖` with weights `‖K_k|ψ⟩‖²`. Trajectories with weight
    /// below the pruning threshold are dropped.
    pub fn unravel(&self, state: &PureState, targets: &[&str]) -> Result<Vec<(f64, PureState)>> {
        let mut out = Vec::with_capacity(self.operators.len());
        for k in &self.operators {
            if let Some((w, s)) = state.apply_and_renormalize(k, targets)? {
                if w >= PRUNE_TOL {
                    out.push((w, s));
                }
            }
        }
        Ok(out)
    }

    /// Sequential composition: `self` first, then `next`.
    pub fn then(&self, next: &KrausChannel) -> Result<KrausChannel> {
        let mut ops = Vec::with_capacity(self.operators.len() * next.operators.len());
        for b in &next.operators {
            for a in &self.operators {
                ops.push(b * a);
            }
        }
        KrausChannel::new(ops)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::linalg::real;

    #[test]
    fn rejects_non_trace_preserving() {
        let k = linalg::identity(2) * real(0.9);
        assert!(matches!(KrausChannel::new(vec![k]), Err(Error::NotTracePreserving(_))));
        assert!(KrausChannel::new(vec![]).is_err());
    }

    #[test]
    fn rejects_shape_mismatch() {
        let ops = vec![linalg::identity(2), linalg::identity(3)];
        assert!(matches!(KrausChannel::new(ops), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn json_round_trip() {
        let ch = KrausChannel::unitary(crate::gates::pauli_x()).unwrap();
        let json = serde_json::to_string(&ch).unwrap();
        let back: KrausChannel = serde_json::from_str(&json).unwrap();
        assert_eq!(back, ch);
    }
}
