use std::f64::consts::PI;

use locc_core::gates::optics::sandwich_hwp_angle;
use locc_core::gates::tilde::qubitwise_cnot_pair;
use locc_core::gates::{
    controlled_ut, embed_tilde, embedded_controlled_ut, hwp, pauli_z, qutrit_t, qwp, rotation_sandwich, u_anticom,
    u_com, TildeBasis,
};
use locc_core::qcore::linalg::{self, equal_up_to_phase, max_abs_diff, CMatrix};

#[test]
fn commutation_classes_over_many_angles() {
    let z = pauli_z();
    for i in 0..1000 {
        let phi = -2.0 * PI + 4.0 * PI * i as f64 / 999.0;
        let (uc, ua) = (u_com(phi), u_anticom(phi));
        assert!(max_abs_diff(&(&uc * &z), &(&z * &uc)) < 1e-12);
        assert!(max_abs_diff(&(&ua * &z), &(-(&z * &ua))) < 1e-12);
        assert!(linalg::is_unitary(&uc, 1e-12) && linalg::is_unitary(&ua, 1e-12));
    }
}

#[test]
fn sandwich_on_dense_grid() {
    for i in 0..=720 {
        let phi = (i as f64 - 360.0).to_radians();
        let m = qwp(45.0) * hwp(sandwich_hwp_angle(phi)) * qwp(45.0);
        assert!(max_abs_diff(&m, &rotation_sandwich(phi)) < 1e-15);
        assert!(equal_up_to_phase(&m, &u_com(phi), 1e-12), "phi = {phi}");
    }
}

#[test]
fn embedded_ut_matches_qutrit_ut_on_symmetric_pairs() {
    // W ⊗ W maps qutrit pairs into the symmetric subspaces of two qubit pairs.
    let basis = TildeBasis::vectors();
    let w = CMatrix::from_columns(&basis);
    let ww = linalg::kron(&w, &w);
    let lhs = embedded_controlled_ut() * &ww;
    let rhs = &ww * controlled_ut();
    assert!(max_abs_diff(&lhs, &rhs) < 1e-14);
}

#[test]
fn qubitwise_cnots_do_not_realize_ut() {
    let basis = TildeBasis::vectors();
    let w = CMatrix::from_columns(&basis);
    let ww = linalg::kron(&w, &w);
    let via_cnots = qubitwise_cnot_pair() * &ww;
    let via_ut = embedded_controlled_ut() * &ww;
    assert!(max_abs_diff(&via_cnots, &via_ut) > 0.1);
    // The CNOT pair even leaves the symmetric subspace: |1̃⟩|0̃⟩ → entangled mixture.
    let p = TildeBasis::symmetric_projector();
    let pp = linalg::kron(&p, &p);
    let leak = (&via_cnots - &pp * &via_cnots).norm();
    assert!(leak > 0.1);
}

#[test]
fn t_powers_embed_consistently() {
    for k in 0..3 {
        let e = embed_tilde(&qutrit_t(k)).unwrap();
        let e1 = embed_tilde(&qutrit_t(1)).unwrap();
        assert!(max_abs_diff(&e, &linalg::matrix_power(&e1, k)) < 1e-14);
    }
}
