//! Process matrices of single-qubit channels in the Pauli basis
//! `{I, σ_x, σ_y, σ_z}`: `ε(ρ) = Σ_mn χ_mn E_m ρ E_n†`.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gates::{pauli_i, pauli_x, pauli_y, pauli_z};
use crate::qcore::linalg::{self, real, CMatrix, CVector};
use crate::qcore::{KrausChannel, DERIVED_TOL};

pub fn pauli_basis() -> [CMatrix; 4] {
    [pauli_i(), pauli_x(), pauli_y(), pauli_z()]
}

/// A validated process matrix: Hermitian, positive and trace preserving,
/// each within 1e-10.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawChi")]
pub struct ChiMatrix {
    #[serde(with = "crate::qcore::cjson::matrix")]
    entries: CMatrix,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawChi {
    #[serde(with = "crate::qcore::cjson::matrix")]
    entries: CMatrix,
}

impl TryFrom<RawChi> for ChiMatrix {
    type Error = Error;

    fn try_from(raw: RawChi) -> Result<Self> {
        ChiMatrix::new(raw.entries)
    }
}

impl ChiMatrix {
    pub fn new(entries: CMatrix) -> Result<Self> {
        if entries.shape() != (4, 4) {
            return Err(Error::DimensionMismatch { expected: 4, actual: entries.nrows() });
        }
        let herm = linalg::hermiticity_deviation(&entries);
        if herm > DERIVED_TOL {
            return Err(Error::NotHermitian(herm));
        }
        let entries = linalg::hermitize(&entries);
        let (vals, _) = linalg::hermitian_eigen(&entries);
        let min = vals.iter().copied().fold(f64::INFINITY, f64::min);
        if min < -DERIVED_TOL {
            return Err(Error::NotPositive(min));
        }
        let chi = Self { entries };
        let dev = linalg::max_abs_diff(&chi.trace_preservation_sum(), &linalg::identity(2));
        if dev > DERIVED_TOL {
            return Err(Error::NotTracePreserving(dev));
        }
        Ok(chi)
    }

    pub fn entries(&self) -> &CMatrix {
        &self.entries
    }

    /// `Σ_mn χ_mn E_n† E_m`, the identity for a trace-preserving map.
    pub fn trace_preservation_sum(&self) -> CMatrix {
        let e = pauli_basis();
        let mut sum = CMatrix::zeros(2, 2);
        for m in 0..4 {
            for n in 0..4 {
                sum += e[n].adjoint() * &e[m] * self.entries[(m, n)];
            }
        }
        sum
    }

    /// `Σ_mn χ_mn E_m ρ E_n†`
    pub fn apply(&self, rho: &CMatrix) -> CMatrix {
        let e = pauli_basis();
        let mut out = CMatrix::zeros(2, 2);
        for m in 0..4 {
            for n in 0..4 {
                out += &e[m] * rho * e[n].adjoint() * self.entries[(m, n)];
            }
        }
        out
    }

    /// Frobenius distance between the two matrices.
    pub fn distance(&self, other: &ChiMatrix) -> f64 {
        linalg::frobenius_distance(&self.entries, &other.entries)
    }

    /// Header `part,row,I,X,Y,Z`, then the four rows of the real part and
    /// the four rows of the imaginary part.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("part,row,I,X,Y,Z\n");
        for (part, get) in [("re", (|z: crate::qcore::C64| z.re) as fn(_) -> f64), ("im", |z| z.im)] {
            for r in 0..4 {
                let cells: Vec<String> = (0..4).map(|c| format!("{}", get(self.entries[(r, c)]))).collect();
                let _ = writeln!(s, "{part},{r},{}", cells.join(","));
            }
        }
        s
    }

    /// Long format, one entry per line: `row,col,re,im`.
    pub fn to_long_csv(&self) -> String {
        let mut s = String::from("row,col,re,im\n");
        for r in 0..4 {
            for c in 0..4 {
                let z = self.entries[(r, c)];
                let _ = writeln!(s, "{r},{c},{},{}", z.re, z.im);
            }
        }
        s
    }
}

/// Exact χ of a single-qubit channel from the Pauli expansion of its Kraus
/// operators, `K = Σ_m c_m E_m` with `c_m = Tr(E_m K)/2`.
pub fn chi_from_channel(ch: &KrausChannel) -> Result<ChiMatrix> {
    if ch.dimension() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, actual: ch.dimension() });
    }
    let e = pauli_basis();
    let mut chi = CMatrix::zeros(4, 4);
    for k in ch.operators() {
        let coeffs = CVector::from_fn(4, |m, _| (e[m].adjoint() * k).trace() * real(0.5));
        chi += &coeffs * coeffs.adjoint();
    }
    ChiMatrix::new(chi)
}

/// Kraus operators `√λ_k Σ_m v_k[m] E_m` from the eigen-decomposition of χ.
pub fn channel_from_chi(chi: &ChiMatrix) -> Result<KrausChannel> {
    let e = pauli_basis();
    let (vals, vecs) = linalg::hermitian_eigen(chi.entries());
    let mut ops = Vec::new();
    for (k, &lambda) in vals.iter().enumerate() {
        let w = linalg::clamped_sqrt(lambda);
        if w == 0.0 {
            continue;
        }
        let op = (0..4).fold(CMatrix::zeros(2, 2), |acc, m| acc + &e[m] * vecs[(m, k)]);
        ops.push(op * real(w));
    }
    KrausChannel::new(ops)
}
