//! Small dense complex linear-algebra helpers over `nalgebra`.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

pub type C64 = Complex64;
pub type CMatrix = DMatrix<C64>;
pub type CVector = DVector<C64>;

#[inline]
pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

#[inline]
pub fn real(re: f64) -> C64 {
    C64::new(re, 0.0)
}

/// `e^{iθ}`
#[inline]
pub fn phase(theta: f64) -> C64 {
    C64::from_polar(1.0, theta)
}

pub fn identity(d: usize) -> CMatrix {
    CMatrix::identity(d, d)
}

/// Builds a matrix from row-major rows.
pub fn from_rows(rows: &[&[C64]]) -> CMatrix {
    let n = rows.len();
    let m = rows.first().map_or(0, |r| r.len());
    CMatrix::from_fn(n, m, |i, j| rows[i][j])
}

pub fn dagger(m: &CMatrix) -> CMatrix {
    m.adjoint()
}

pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    assert_eq!(a.shape(), b.shape(), "shape mismatch");
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// Frobenius norm of `a - b`.
pub fn frobenius_distance(a: &CMatrix, b: &CMatrix) -> f64 {
    (a - b).norm()
}

/// `max |U†U - I|` entry-wise; `f64::INFINITY` for non-square input.
pub fn unitarity_deviation(u: &CMatrix) -> f64 {
    if !u.is_square() {
        return f64::INFINITY;
    }
    max_abs_diff(&(u.adjoint() * u), &identity(u.nrows()))
}

pub fn is_unitary(u: &CMatrix, tol: f64) -> bool {
    unitarity_deviation(u) <= tol
}

pub fn hermiticity_deviation(m: &CMatrix) -> f64 {
    if !m.is_square() {
        return f64::INFINITY;
    }
    max_abs_diff(m, &m.adjoint())
}

/// `(M + M†) / 2`
pub fn hermitize(m: &CMatrix) -> CMatrix {
    (m + m.adjoint()) * real(0.5)
}

/// Eigen-decomposition of a Hermitian matrix: real eigenvalues and the
/// unitary whose columns are the eigenvectors.
pub fn hermitian_eigen(m: &CMatrix) -> (Vec<f64>, CMatrix) {
    let eig = SymmetricEigen::new(hermitize(m));
    (eig.eigenvalues.iter().copied().collect(), eig.eigenvectors)
}

/// Eigenvalues below this are treated as round-off when taking square roots.
pub const EIGEN_NOISE_FLOOR: f64 = 1e-14;

/// `√max(v, 0)`, with round-off eigenvalues mapped to zero.
#[inline]
pub fn clamped_sqrt(v: f64) -> f64 {
    if v < EIGEN_NOISE_FLOOR {
        0.0
    } else {
        v.sqrt()
    }
}

/// Square root of a positive semidefinite Hermitian matrix. Negative and
/// round-off eigenvalues are clamped to zero.
pub fn sqrt_psd(m: &CMatrix) -> CMatrix {
    let (vals, vecs) = hermitian_eigen(m);
    let d = CMatrix::from_diagonal(&CVector::from_iterator(
        vals.len(),
        vals.iter().map(|&v| real(clamped_sqrt(v))),
    ));
    &vecs * d * vecs.adjoint()
}

/// `|⟨a|b⟩|²` for unit vectors.
pub fn overlap_sq(a: &CVector, b: &CVector) -> f64 {
    a.dotc(b).norm_sqr()
}

pub fn outer(a: &CVector, b: &CVector) -> CMatrix {
    a * b.adjoint()
}

pub fn trace(m: &CMatrix) -> C64 {
    m.trace()
}

/// Integer matrix power; `power == 0` gives the identity.
pub fn matrix_power(m: &CMatrix, power: usize) -> CMatrix {
    let mut out = identity(m.nrows());
    for _ in 0..power {
        out = &out * m;
    }
    out
}

/// True when `a = e^{iγ} b` for some global phase, within `tol` entry-wise.
pub fn equal_up_to_phase(a: &CMatrix, b: &CMatrix, tol: f64) -> bool {
    if a.shape() != b.shape() {
        return false;
    }
    // Pick the phase from the largest entry of b.
    let (idx, pivot) = b
        .iter()
        .enumerate()
        .max_by(|x, y| x.1.norm().total_cmp(&y.1.norm()))
        .map(|(i, z)| (i, *z))
        .unwrap_or((0, real(0.0)));
    if pivot.norm() == 0.0 {
        return a.iter().all(|z| z.norm() <= tol);
    }
    let ratio = a.iter().nth(idx).copied().unwrap_or_default() / pivot;
    if (ratio.norm() - 1.0).abs() > tol {
        return false;
    }
    let g = ratio / ratio.norm();
    max_abs_diff(a, &(b * g)) <= tol
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_squares_back() {
        let m = from_rows(&[&[real(0.75), c(0.1, -0.2)], &[c(0.1, 0.2), real(0.25)]]);
        let s = sqrt_psd(&m);
        assert!(max_abs_diff(&(&s * &s), &m) < 1e-12);
    }

    #[test]
    fn phase_equality() {
        let x = from_rows(&[&[real(0.0), real(1.0)], &[real(1.0), real(0.0)]]);
        assert!(equal_up_to_phase(&(&x * phase(0.7)), &x, 1e-12));
        assert!(!equal_up_to_phase(&identity(2), &x, 1e-12));
    }
}
