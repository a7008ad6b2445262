use locc_core::qcore::linalg::{self, c, real, CMatrix, CVector};
use locc_core::qcore::measure::{computational_basis, plus_minus_basis};
use locc_core::qcore::random::{bloch_qubit, haar_state, haar_unitary, seeded};
use locc_core::qcore::{
    entanglement_entropy, fidelity, measure_projective, DensityMatrix, KrausChannel, MeasurementMode, Owner, PureState,
    Register, SubsystemLabel,
};
use proptest::prelude::*;

fn register(dims: &[usize]) -> Register {
    Register::new(
        dims.iter()
            .enumerate()
            .map(|(i, &d)| SubsystemLabel::new(format!("s{i}"), d, if i % 2 == 0 { Owner::Alice } else { Owner::Bob }).unwrap())
            .collect(),
    )
    .unwrap()
}

fn dims_strategy() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(2usize..=3, 2..=4)
}

fn random_channel(seed: u64) -> KrausChannel {
    // Two Kraus operators from the first two columns-blocks of a 4x4 unitary.
    let w = haar_unitary(&mut seeded(seed), 4);
    let k0 = w.view((0, 0), (2, 2)).into_owned();
    let k1 = w.view((2, 0), (2, 2)).into_owned();
    KrausChannel::new(vec![k0, k1]).unwrap()
}

#[test]
fn bell_pair_tensor_qubit_oracle() {
    let (alpha, beta) = (c(0.6, 0.0), c(0.0, 0.8));
    let s = real(std::f64::consts::FRAC_1_SQRT_2);
    let phi = PureState::new(register(&[2, 2]), CVector::from_vec(vec![s, real(0.0), real(0.0), s])).unwrap();
    let psi = PureState::qubit("beta", Owner::Bob, alpha, beta).unwrap();
    let joint = phi.tensor(&psi).unwrap();
    let z = real(0.0);
    let expect: Vec<_> = [alpha, beta, z, z, z, z, alpha, beta].iter().map(|x| x * s).collect();
    for (got, want) in joint.amplitudes().iter().zip(expect) {
        assert!((got - want).norm() < 1e-15);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn unitaries_preserve_norm(dims in dims_strategy(), seed in any::<u64>(), pick in 0usize..4) {
        let reg = register(&dims);
        let mut rng = seeded(seed);
        let psi = haar_state(&mut rng, reg.clone()).unwrap();
        let names = reg.names();
        let t = names[pick % names.len()];
        let d = reg.get(t).unwrap().dimension();
        let out = psi.apply_unitary(&haar_unitary(&mut rng, d), &[t]).unwrap();
        prop_assert!((out.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn measurement_is_complete(dims in dims_strategy(), seed in any::<u64>()) {
        let reg = register(&dims);
        let psi = haar_state(&mut seeded(seed), reg.clone()).unwrap();
        let t = reg.names()[0];
        let d = reg.get(t).unwrap().dimension();
        let m = measure_projective(&psi, &computational_basis(d), &[t], MeasurementMode::Enumerate).unwrap();
        prop_assert!((m.total_probability() - 1.0).abs() < 1e-10);
        for b in &m.branches {
            prop_assert!((b.post_state.norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn sampled_measurement_picks_an_enumerated_branch(seed in any::<u64>()) {
        let psi = bloch_qubit(&mut seeded(seed), "q", Owner::Bob);
        let all = measure_projective(&psi, &plus_minus_basis(), &["q"], MeasurementMode::Enumerate).unwrap();
        let one = measure_projective(&psi, &plus_minus_basis(), &["q"], MeasurementMode::Sample { seed }).unwrap();
        prop_assert_eq!(one.branches.len(), 1);
        prop_assert!(all.branches.iter().any(|b| b.outcome == one.branches[0].outcome));
    }

    #[test]
    fn channels_preserve_trace(seed in any::<u64>()) {
        let ch = random_channel(seed);
        let psi = bloch_qubit(&mut seeded(seed ^ 1), "q", Owner::Bob);
        let out = ch.apply(&psi.density()).unwrap();
        prop_assert!((out.matrix().trace().re - 1.0).abs() < 1e-12);
        prop_assert!(out.eigenvalues().iter().all(|&v| v > -1e-12));
    }

    #[test]
    fn fidelity_is_bounded_symmetric_and_unitarily_invariant(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let ch = random_channel(seed);
        let a = ch.apply(&bloch_qubit(&mut rng, "q", Owner::Bob).density()).unwrap();
        let b = ch.apply(&bloch_qubit(&mut rng, "q", Owner::Bob).density()).unwrap();
        let f = fidelity(&a, &b).unwrap();
        prop_assert!((0.0..=1.0).contains(&f));
        prop_assert!((f - fidelity(&b, &a).unwrap()).abs() < 1e-10);
        let u = haar_unitary(&mut rng, 2);
        let (ua, ub) = (a.apply_unitary(&u, &["q"]).unwrap(), b.apply_unitary(&u, &["q"]).unwrap());
        prop_assert!((f - fidelity(&ua, &ub).unwrap()).abs() < 1e-10);
        prop_assert!((fidelity(&a, &a).unwrap() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn entropy_agrees_across_the_cut(dims in dims_strategy(), seed in any::<u64>()) {
        let reg = register(&dims);
        let psi = haar_state(&mut seeded(seed), reg.clone()).unwrap();
        let names = reg.names();
        let e = entanglement_entropy(&psi, &names[..1]).unwrap();
        let e_other = entanglement_entropy(&psi, &names[1..]).unwrap();
        prop_assert!((e - e_other).abs() < 1e-10);
        prop_assert!(e >= 0.0 && e <= (dims[0] as f64).log2() + 1e-12);
    }

    #[test]
    fn partial_trace_matches_reduced(dims in dims_strategy(), seed in any::<u64>()) {
        let reg = register(&dims);
        let psi = haar_state(&mut seeded(seed), reg.clone()).unwrap();
        let keep = [reg.names()[1]];
        let a = psi.reduced(&keep).unwrap();
        let b = psi.density().partial_trace(&keep).unwrap();
        prop_assert!(linalg::max_abs_diff(a.matrix(), b.matrix()) < 1e-12);
    }
}

#[test]
fn invalid_inputs_are_rejected() {
    let reg = register(&[2, 2]);
    assert!(PureState::new(reg.clone(), CVector::from_element(4, real(1.0))).is_err());
    let not_hermitian = CMatrix::from_row_slice(2, 2, &[real(1.0), real(0.5), real(0.0), real(0.0)]);
    assert!(DensityMatrix::new(register(&[2]), not_hermitian).is_err());
    let psi = haar_state(&mut seeded(1), reg).unwrap();
    assert!(psi.apply_unitary(&(linalg::identity(2) * real(2.0)), &["s0"]).is_err());
    assert!(psi.apply_unitary(&linalg::identity(2), &["missing"]).is_err());
    assert!(SubsystemLabel::new("x", 4, Owner::Bob).is_err());
}
