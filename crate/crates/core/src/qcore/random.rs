//! Seeded random states and unitaries.
//!
//! All generators take an explicit RNG; `stream_rng` derives an independent
//! ChaCha stream per sample index so that results never depend on how the
//! work is scheduled.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::linalg::{self, c, real, CMatrix, CVector, C64};
use super::register::{Owner, Register};
use super::state::PureState;
use crate::error::Result;

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Generator for sample `index` of a run seeded with `seed`.
pub fn stream_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn gaussian_complex<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    c(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Uniform point on the Bloch sphere as `(α, β)`: `cos θ` uniform on
/// `[−1, 1]`, azimuth uniform on `[0, 2π)`.
pub fn bloch_amplitudes<R: Rng + ?Sized>(rng: &mut R) -> (C64, C64) {
    let cos_theta: f64 = rng.random_range(-1.0..=1.0);
    let azimuth: f64 = rng.random_range(0.0..2.0 * PI);
    let half = cos_theta.clamp(-1.0, 1.0).acos() / 2.0;
    (real(half.cos()), linalg::phase(azimuth) * half.sin())
}

pub fn bloch_qubit<R: Rng + ?Sized>(rng: &mut R, name: &str, owner: Owner) -> PureState {
    let (a, b) = bloch_amplitudes(rng);
    PureState::qubit(name, owner, a, b).expect("Bloch amplitudes are normalized")
}

/// Haar-random pure state on `register`.
pub fn haar_state<R: Rng + ?Sized>(rng: &mut R, register: Register) -> Result<PureState> {
    let d = register.dimension();
    let v = CVector::from_fn(d, |_, _| gaussian_complex(rng));
    PureState::normalized(register, v)
}

/// Haar-random `d × d` unitary (QR of a complex Ginibre matrix with the
/// phases of `R`'s diagonal absorbed).
pub fn haar_unitary<R: Rng + ?Sized>(rng: &mut R, d: usize) -> CMatrix {
    let z = CMatrix::from_fn(d, d, |_, _| gaussian_complex(rng));
    let qr = z.qr();
    let (q, r) = (qr.q(), qr.r());
    let fix = CVector::from_fn(d, |i, _| {
        let x = r[(i, i)];
        if x.norm() > 0.0 {
            x / x.norm()
        } else {
            real(1.0)
        }
    });
    q * CMatrix::from_diagonal(&fix)
}

/// Uniformly random element of SU(2).
pub fn random_su2<R: Rng + ?Sized>(rng: &mut R) -> CMatrix {
    let mut v = [0.0f64; 4];
    loop {
        for x in &mut v {
            *x = rng.sample(StandardNormal);
        }
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 1e-12 {
            v.iter_mut().for_each(|x| *x /= n);
            break;
        }
    }
    let a = c(v[0], v[1]);
    let b = c(v[2], v[3]);
    linalg::from_rows(&[&[a, -b.conj()], &[b, a.conj()]])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unitaries_are_unitary() {
        let mut rng = seeded(1);
        for d in 2..=4 {
            assert!(linalg::is_unitary(&haar_unitary(&mut rng, d), 1e-12));
        }
        let u = random_su2(&mut rng);
        assert!(linalg::is_unitary(&u, 1e-12));
        assert!((u.determinant() - real(1.0)).norm() < 1e-12);
    }

    #[test]
    fn streams_are_reproducible() {
        let a: f64 = stream_rng(5, 17).random();
        let b: f64 = stream_rng(5, 17).random();
        let other: f64 = stream_rng(5, 18).random();
        assert_eq!(a, b);
        assert_ne!(a, other);
    }

    #[test]
    fn bloch_z_mean_is_near_zero() {
        let mut rng = seeded(3);
        let n = 20_000;
        let mean_z: f64 = (0..n)
            .map(|_| {
                let (a, b) = bloch_amplitudes(&mut rng);
                a.norm_sqr() - b.norm_sqr()
            })
            .sum::<f64>()
            / n as f64;
        // σ(z) = 1/√3, so 5σ of the mean is ~0.02
        assert!(mean_z.abs() < 0.02);
    }
}
