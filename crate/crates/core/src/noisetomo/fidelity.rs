//! Average output fidelity of a qubit channel against a target unitary over
//! pure inputs drawn uniformly from the Bloch sphere.

use serde::{Deserialize, Serialize};

use super::DephasingParams;
use crate::error::{Error, Result};
use crate::qcore::linalg::{self, CMatrix, C64};
use crate::qcore::random::{bloch_amplitudes, stream_rng};
use crate::qcore::{KrausChannel, DERIVED_TOL};

pub const DEFAULT_SAMPLES: usize = 100_000;
pub const MIN_SAMPLES: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FidelityMethod {
    /// `(2F_e + 1)/3` with entanglement fidelity `F_e = Σ_k |Tr(U†K_k)/2|²`.
    ClosedForm,
    /// Mean of `⟨Uψ|ε(ψ)|Uψ⟩` over `n` inputs; input `i` uses its own
    /// random stream derived from `seed`.
    Sampled { n: usize, seed: u64 },
}

pub fn average_fidelity(ch: &KrausChannel, u: &CMatrix, method: FidelityMethod) -> Result<f64> {
    if ch.dimension() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, actual: ch.dimension() });
    }
    if u.shape() != (2, 2) {
        return Err(Error::DimensionMismatch { expected: 2, actual: u.nrows() });
    }
    let dev = linalg::unitarity_deviation(u);
    if dev > DERIVED_TOL {
        return Err(Error::NotUnitary(dev));
    }
    // M_k = U†K_k, so that ⟨Uψ|K_k|ψ⟩ = ⟨ψ|M_k|ψ⟩.
    let ms: Vec<[[C64; 2]; 2]> = ch
        .operators()
        .iter()
        .map(|k| {
            let m = u.adjoint() * k;
            [[m[(0, 0)], m[(0, 1)]], [m[(1, 0)], m[(1, 1)]]]
        })
        .collect();
    match method {
        FidelityMethod::ClosedForm => {
            let fe: f64 = ms.iter().map(|m| ((m[0][0] + m[1][1]) * 0.5).norm_sqr()).sum();
            Ok((2.0 * fe + 1.0) / 3.0)
        }
        FidelityMethod::Sampled { n, seed } => {
            if n < MIN_SAMPLES {
                return Err(Error::TooFewSamples(n));
            }
            let mut total = 0.0;
            for i in 0..n {
                let (a, b) = bloch_amplitudes(&mut stream_rng(seed, i as u64));
                total += ms
                    .iter()
                    .map(|m| {
                        let v0 = m[0][0] * a + m[0][1] * b;
                        let v1 = m[1][0] * a + m[1][1] * b;
                        (a.conj() * v0 + b.conj() * v1).norm_sqr()
                    })
                    .sum::<f64>();
            }
            Ok(total / n as f64)
        }
    }
}

/// `(2 + pη)/3`, independent of the rotation angle.
pub fn dephasing_average_fidelity(params: &DephasingParams) -> f64 {
    (2.0 + params.p_eta()) / 3.0
}
