//! Qudit teleportation and bidirectional teleportation of a unitary.

use std::f64::consts::PI;

use super::{check_resource, is_identity, single_as, BranchRunner, Direction, Party, ProtocolResult};
use crate::error::{Error, Result};
use crate::qcore::linalg::{self, phase, real, CMatrix, CVector};
use crate::qcore::{Owner, PureState, Register, SubsystemLabel};

/// `Σ_k |k⟩|k⟩/√d` on two labels of equal dimension.
pub fn phi_plus(a: SubsystemLabel, b: SubsystemLabel) -> Result<PureState> {
    let d = a.dimension();
    if b.dimension() != d {
        return Err(Error::DimensionMismatch { expected: d, actual: b.dimension() });
    }
    let s = 1.0 / (d as f64).sqrt();
    let amps = CVector::from_fn(d * d, |i, _| if i / d == i % d { real(s) } else { real(0.0) });
    PureState::new(Register::new(vec![a, b])?, amps)
}

/// `X^power` with `X|x⟩ = |x + 1 mod d⟩`.
pub fn weyl_x(d: usize, power: usize) -> CMatrix {
    CMatrix::from_fn(d, d, |row, col| if row == (col + power) % d { real(1.0) } else { real(0.0) })
}

/// `Z^power` with `Z|x⟩ = ω^x|x⟩`, `ω = e^{2πi/d}`.
pub fn weyl_z(d: usize, power: usize) -> CMatrix {
    CMatrix::from_fn(d, d, |row, col| {
        if row == col {
            phase(2.0 * PI * ((row * power) % d) as f64 / d as f64)
        } else {
            real(0.0)
        }
    })
}

/// `|β_{m,n}⟩ = Σ_x ω^{mx}|x⟩|x + n⟩/√d`, listed at index `m·d + n`.
pub fn generalized_bell_basis(d: usize) -> Vec<CVector> {
    let s = 1.0 / (d as f64).sqrt();
    let mut out = Vec::with_capacity(d * d);
    for m in 0..d {
        for n in 0..d {
            let mut v = CVector::zeros(d * d);
            for x in 0..d {
                v[x * d + (x + n) % d] = phase(2.0 * PI * ((m * x) % d) as f64 / d as f64) * s;
            }
            out.push(v);
        }
    }
    out
}

/// Bell measurement of (`src`, `send_half`) by `sender`, the outcome sent as
/// one symbol of a `d²` alphabet, and the receiver's correction
/// `Z^m X^{−n}` on `recv_half`.
pub(crate) fn teleport_leg(
    run: BranchRunner,
    sender: Party,
    src: &str,
    send_half: &str,
    recv_half: &str,
    d: usize,
) -> Result<BranchRunner> {
    run.measure(sender, "bell", &generalized_bell_basis(d), &[src, send_half])?
        .send(Direction::from_sender(sender), d * d)?
        .conditional(sender.other(), &[recv_half], |outcomes| {
            let k = *outcomes.last().expect("bell outcome recorded");
            let (m, n) = (k / d, k % d);
            let op = weyl_z(d, m) * weyl_x(d, (d - n) % d);
            (!is_identity(&op)).then(|| (format!("Z^{m}X^-{n}"), op))
        })
}

fn label_of(state: &PureState, i: usize) -> SubsystemLabel {
    state.register().labels()[i].clone()
}

/// Teleports the single-subsystem state `psi` (held by `from`) through the
/// maximally entangled `resource`, whose two subsystems are owned by `from`
/// and `to`.
pub fn teleport(psi: &PureState, resource: &PureState, from: Party, to: Party) -> Result<ProtocolResult> {
    if from == to {
        return Err(Error::InvalidArgument("sender and receiver must differ".into()));
    }
    if resource.register().len() != 2 {
        return Err(Error::InvalidArgument("resource must have exactly two subsystems".into()));
    }
    let (r0, r1) = (label_of(resource, 0), label_of(resource, 1));
    let (send_half, recv_half) = if r0.owner() == from.owner() && r1.owner() == to.owner() {
        (r0.clone(), r1.clone())
    } else if r1.owner() == from.owner() && r0.owner() == to.owner() {
        (r1.clone(), r0.clone())
    } else {
        return Err(Error::InvalidArgument("resource halves must be owned by the sender and the receiver".into()));
    };
    let d = send_half.dimension();
    let expected = phi_plus(r0, r1)?;
    check_resource(resource, &expected, (d as f64).log2())?;

    let src_name = "psi";
    if [send_half.name(), recv_half.name()].contains(&src_name) {
        return Err(Error::DuplicateSubsystem(src_name.into()));
    }
    let src = single_as(psi, src_name, from.owner())?;
    if src.dimension() != d {
        return Err(Error::DimensionMismatch { expected: d, actual: src.dimension() });
    }
    let target = src.relabel(Register::new(vec![recv_half.clone()])?)?;
    let run = BranchRunner::new(resource.tensor(&src)?);
    let run = teleport_leg(run, from, src_name, send_half.name(), recv_half.name(), d)?;
    run.finish("teleport", &[recv_half.name()], vec![resource.clone()], target)
}

/// Bob teleports `psi` to Alice, Alice applies `u`, and teleports the result
/// back. Supports qubits and qutrits.
pub fn bidirectional_u_teleport(u: &CMatrix, psi: &PureState, d: usize) -> Result<ProtocolResult> {
    if !(2..=3).contains(&d) {
        return Err(Error::UnsupportedDimension(d));
    }
    if u.shape() != (d, d) {
        return Err(Error::DimensionMismatch { expected: d, actual: u.nrows() });
    }
    let dev = linalg::unitarity_deviation(u);
    if dev > crate::qcore::DERIVED_TOL {
        return Err(Error::NotUnitary(dev));
    }
    let src = single_as(psi, "psi", Owner::Bob)?;
    if src.dimension() != d {
        return Err(Error::DimensionMismatch { expected: d, actual: src.dimension() });
    }
    let label = |name: &str, owner| SubsystemLabel::new(name, d, owner);
    let pair1 = phi_plus(label("A1", Owner::Alice)?, label("B1", Owner::Bob)?)?;
    let pair2 = phi_plus(label("A2", Owner::Alice)?, label("B2", Owner::Bob)?)?;
    let target = src.apply_unitary(u, &["psi"])?.relabel(Register::new(vec![label("B2", Owner::Bob)?])?)?;

    let run = BranchRunner::new(pair1.tensor(&pair2)?.tensor(&src)?);
    let run = teleport_leg(run, Party::Bob, "psi", "B1", "A1", d)?;
    let run = run.local(Party::Alice, "U", u, &["A1"])?;
    let run = teleport_leg(run, Party::Alice, "A1", "A2", "B2", d)?;
    run.finish("bidirectional-u-teleport", &["B2"], vec![pair1, pair2], target)
}
