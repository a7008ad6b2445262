//! Executes a configuration and collects the self-checks that decide the
//! exit status.

use std::fs;
use std::time::Instant;

use locc_core::gates::{u_com, RotationClass, RotationKind};
use locc_core::noisetomo::{
    average_fidelity, channel_from_chi, chi_from_channel, dephasing_average_fidelity, dephasing_channel,
    optical_experiment_sim, optical_process_tomography, probe_states, qpt_reconstruct, DephasingParams,
    FidelityMethod, DEFAULT_SAMPLES,
};
use locc_core::protocols::{
    bidirectional_u_teleport, multicopy_with_correction, nonlocal_cnot_signaling_check, phi_plus, remote_rotation,
    run_rotation_circuit, step_five_report, teleport, verify_branch_determinism, Party, ProtocolResult,
    RotationCircuit, StepFiveCorrection,
};
use locc_core::qcore::random::{bloch_qubit, random_su2, stream_rng};
use locc_core::qcore::{CMatrix, KrausChannel, Owner, SubsystemLabel, DERIVED_TOL};
use locc_core::resources::{check_bounds, ProtocolKind, ResourceLedger};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::config::{ChannelConfig, CommandConfig, ProtocolConfig, RotationSpec, RunConfig};
use crate::params::StateSpec;
use crate::report::{
    plot_points, BoundsRow, BoundsTable, Check, ExperimentResults, FidelitySummary, ProtocolReport, Report, Results,
    Timing, TomographyReport,
};
use crate::{CliError, EXIT_CHECK_FAILED, EXIT_OK};

/// Sampled average fidelity must land this close to the closed form at
/// the default sample count; the band widens as `1/√n` below it.
pub const SAMPLED_FIDELITY_TOL: f64 = 2e-3;

/// Independent generators for the run's random inputs and for branch sampling.
fn input_rng(seed: u64) -> ChaCha8Rng {
    stream_rng(seed, 0)
}

fn selection_rng(seed: u64) -> ChaCha8Rng {
    stream_rng(seed, 1)
}

pub fn run(config: &RunConfig) -> Result<Report, CliError> {
    config.validate()?;
    let start = Instant::now();
    let (results, checks) = match &config.command {
        CommandConfig::RunProtocol { protocol, sample } => run_protocol(protocol, *sample, config.seed)?,
        CommandConfig::Tomography { channel, samples, plot_data } => {
            tomography(channel, *samples, *plot_data, config.seed)?
        }
        CommandConfig::Experiment { dephasing, state, samples } => experiment(dephasing, state, *samples, config.seed)?,
        CommandConfig::BoundsReport => bounds_report(config.seed)?,
    };
    let timing = config.timing.then(|| Timing { elapsed_ms: start.elapsed().as_secs_f64() * 1e3 });
    Ok(Report { version: crate::REPORT_VERSION.to_string(), config: config.clone(), results, checks, timing })
}

/// Runs `config`, writes the report and returns the exit status.
pub fn execute(config: &RunConfig) -> Result<i32, CliError> {
    let report = run(config)?;
    let text = report.render(config.format)?;
    match &config.output_path {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    for c in report.checks.iter().filter(|c| !c.passed) {
        eprintln!("check failed: {} ({})", c.name, c.detail);
    }
    Ok(if report.passed() { EXIT_OK } else { EXIT_CHECK_FAILED })
}

fn protocol_checks(result: &ProtocolResult, checks: &mut Vec<Check>) -> locc_core::protocols::DeterminismReport {
    let det = verify_branch_determinism(result);
    checks.push(Check::new(
        "branch-determinism",
        det.deterministic,
        format!("max infidelity {:e}, {} failing branches", det.max_infidelity, det.failing_branches.len()),
    ));
    checks.push(Check::below("total-probability", (det.total_probability - 1.0).abs(), DERIVED_TOL));
    let n = result.branches.len() as f64;
    let spread = result.branches.iter().map(|b| (b.branch_probability - 1.0 / n).abs()).fold(0.0, f64::max);
    checks.push(Check::below("uniform-branches", spread, DERIVED_TOL));
    det
}

fn ledger_check(ledger: &ResourceLedger, expected: [f64; 3]) -> Check {
    let want = ResourceLedger::new(expected[0], expected[1], expected[2]).expect("nonnegative");
    Check::new("ledger", ledger.approx_eq(&want, DERIVED_TOL), format!("{ledger}, expected {want}"))
}

fn run_protocol(p: &ProtocolConfig, sample: bool, seed: u64) -> Result<(Results, Vec<Check>), CliError> {
    let mut rng = input_rng(seed);
    let mut checks = Vec::new();
    let mut step_five = None;
    let (input, result, kind) = match p {
        ProtocolConfig::Signaling => {
            let s = nonlocal_cnot_signaling_check()?;
            checks.push(Check::new(
                "signaling",
                s.distinguishes,
                format!("max deviation from certainty {:e}", s.max_deviation),
            ));
            return Ok((Results::Signaling(s), checks));
        }
        ProtocolConfig::Teleport { state, dim } => {
            let psi = state.build("psi", Owner::Alice, *dim, &mut rng)?;
            let pair = phi_plus(SubsystemLabel::new("A", *dim, Owner::Alice)?, SubsystemLabel::new("B", *dim, Owner::Bob)?)?;
            let r = teleport(&psi, &pair, Party::Alice, Party::Bob)?;
            let log_d = (*dim as f64).log2();
            checks.push(ledger_check(&r.ledger(), [log_d, 2.0 * log_d, 0.0]));
            (psi, r, (*dim == 2).then_some(ProtocolKind::Teleport))
        }
        ProtocolConfig::Bidirectional { unitary, state, dim } => {
            let psi = state.build("psi", Owner::Bob, *dim, &mut rng)?;
            let u = unitary.build(*dim, &mut rng)?;
            let r = bidirectional_u_teleport(&u, &psi, *dim)?;
            let two_log_d = 2.0 * (*dim as f64).log2();
            checks.push(ledger_check(&r.ledger(), [two_log_d; 3]));
            (psi, r, (*dim == 2).then_some(ProtocolKind::ArbitraryU))
        }
        ProtocolConfig::RemoteRotation { rotation, state } => {
            let psi = state.build("q", Owner::Bob, 2, &mut rng)?;
            let r = match rotation {
                RotationSpec::Class { class, phi } => {
                    remote_rotation(&RotationClass { kind: *class, angle: *phi }, &psi)?
                }
                RotationSpec::Custom { unitary } => {
                    let u = unitary.build(2, &mut rng)?;
                    let pair = phi_plus(SubsystemLabel::qubit("A", Owner::Alice), SubsystemLabel::qubit("B", Owner::Bob))?;
                    run_rotation_circuit(&RotationCircuit::with_alice_op(&format!("{unitary:?}"), u.clone()), &psi, &pair, &u)?
                }
            };
            checks.push(ledger_check(&r.ledger(), [1.0; 3]));
            (psi, r, Some(ProtocolKind::RestrictedRotation))
        }
        ProtocolConfig::Multicopy { theta, state, step5 } => {
            let psi = state.build("q", Owner::Bob, 2, &mut rng)?;
            let r = multicopy_with_correction(*theta, &psi, *step5)?;
            let report = step_five_report(*theta, &psi)?;
            checks.push(Check::new(
                "step-five-correction",
                report.iter().any(|c| c.correction == *step5 && c.deterministic),
                report
                    .iter()
                    .map(|c| format!("{}: {}/{} branches", c.correction.name(), c.passed_branches, c.total_branches))
                    .collect::<Vec<_>>()
                    .join("; "),
            ));
            step_five = Some(report);
            (psi, r, Some(ProtocolKind::MultiCopy))
        }
    };
    let determinism = protocol_checks(&result, &mut checks);
    let fidelities = result
        .branches
        .iter()
        .map(|b| b.final_state.fidelity(&result.target_state))
        .collect::<Result<Vec<_>, _>>()?;
    let ledger = result.ledger();
    let bounds = kind.map(|k| check_bounds(&ledger, k));
    if let Some(v) = &bounds {
        checks.push(Check::new("resource-bounds", v.passed, format!("{} against {}", v.ledger, v.bounds.protocol_kind)));
    }
    let sampled_branch = sample.then(|| pick_branch(&result, &mut selection_rng(seed)));
    let report = ProtocolReport { input_state: input, result, determinism, fidelities, ledger, bounds, step_five, sampled_branch };
    Ok((Results::Protocol(Box::new(report)), checks))
}

/// Index of a branch drawn with the Born probabilities.
fn pick_branch<R: Rng>(result: &ProtocolResult, rng: &mut R) -> usize {
    let total = result.total_probability();
    let mut u: f64 = rng.random::<f64>() * total;
    for (i, b) in result.branches.iter().enumerate() {
        u -= b.branch_probability;
        if u < 0.0 {
            return i;
        }
    }
    result.branches.len() - 1
}

fn sampled_tol(samples: usize) -> f64 {
    SAMPLED_FIDELITY_TOL * (DEFAULT_SAMPLES as f64 / samples as f64).sqrt().max(1.0)
}

fn fidelity_summary(
    ch: &KrausChannel,
    u: &CMatrix,
    samples: usize,
    seed: u64,
    model: Option<f64>,
    checks: &mut Vec<Check>,
) -> Result<FidelitySummary, CliError> {
    let closed_form = average_fidelity(ch, u, FidelityMethod::ClosedForm)?;
    let sampled = average_fidelity(ch, u, FidelityMethod::Sampled { n: samples, seed })?;
    checks.push(Check::below("sampled-fidelity", (sampled - closed_form).abs(), sampled_tol(samples)));
    if let Some(m) = model {
        checks.push(Check::below("fidelity-model", (closed_form - m).abs(), DERIVED_TOL));
    }
    Ok(FidelitySummary { closed_form, sampled, samples, model })
}

fn tomography(
    channel: &ChannelConfig,
    samples: usize,
    plot_data: bool,
    seed: u64,
) -> Result<(Results, Vec<Check>), CliError> {
    let mut checks = Vec::new();
    let (chi, model_channel, target, model) = match channel {
        ChannelConfig::Dephasing { params } => {
            let ch = dephasing_channel(params)?;
            let pairs = probe_states()
                .iter()
                .map(|p| Ok((p.density(), ch.apply(&p.density())?)))
                .collect::<Result<Vec<_>, locc_core::Error>>()?;
            (qpt_reconstruct(&pairs)?, ch, u_com(params.phi), Some(dephasing_average_fidelity(params)))
        }
        ChannelConfig::Unitary { unitary } => {
            let u = unitary.build(2, &mut input_rng(seed))?;
            let ch = KrausChannel::unitary(u.clone())?;
            let pairs = probe_states()
                .iter()
                .map(|p| Ok((p.density(), ch.apply(&p.density())?)))
                .collect::<Result<Vec<_>, locc_core::Error>>()?;
            (qpt_reconstruct(&pairs)?, ch, u, Some(1.0))
        }
        ChannelConfig::Experiment { params } => {
            let chi = optical_process_tomography(params)?;
            (chi, dephasing_channel(params)?, u_com(params.phi), Some(dephasing_average_fidelity(params)))
        }
    };
    let chi_model = chi_from_channel(&model_channel)?;
    let chi_distance = chi.distance(&chi_model);
    checks.push(Check::below("chi-reconstruction", chi_distance, DERIVED_TOL));
    let tp = locc_core::qcore::linalg::max_abs_diff(&chi.trace_preservation_sum(), &locc_core::qcore::linalg::identity(2));
    checks.push(Check::below("chi-trace-preserving", tp, DERIVED_TOL));
    let reconstructed = channel_from_chi(&chi)?;
    let average_fidelity = fidelity_summary(&reconstructed, &target, samples, seed, model, &mut checks)?;
    let plot_data = plot_data.then(|| plot_points(&chi));
    let report = TomographyReport { chi, chi_model, chi_distance, target_unitary: target, average_fidelity, plot_data };
    Ok((Results::Tomography(Box::new(report)), checks))
}

fn experiment(
    params: &DephasingParams,
    state: &StateSpec,
    samples: usize,
    seed: u64,
) -> Result<(Results, Vec<Check>), CliError> {
    let mut checks = Vec::new();
    let psi = state.build("s", Owner::Bob, 2, &mut input_rng(seed))?;
    let experiment = optical_experiment_sim(params, &psi)?;
    checks.push(Check::below("closed-form-output", experiment.max_deviation, DERIVED_TOL));
    checks.push(Check::below("chi-reconstruction", experiment.chi_distance, DERIVED_TOL));
    let reconstructed = channel_from_chi(&experiment.chi)?;
    let model = Some(dephasing_average_fidelity(params));
    let average_fidelity = fidelity_summary(&reconstructed, &u_com(params.phi), samples, seed, model, &mut checks)?;
    let results = ExperimentResults { input_state: psi, experiment, average_fidelity };
    Ok((Results::Experiment(Box::new(results)), checks))
}

fn bounds_report(seed: u64) -> Result<(Results, Vec<Check>), CliError> {
    let mut rng = input_rng(seed);
    let mut checks = Vec::new();
    let mut rows = Vec::new();
    for kind in ProtocolKind::ALL {
        let (protocol, result) = match kind {
            ProtocolKind::ArbitraryU => {
                let u = random_su2(&mut rng);
                ("bidirectional", bidirectional_u_teleport(&u, &bloch_qubit(&mut rng, "psi", Owner::Bob), 2)?)
            }
            ProtocolKind::RestrictedRotation => {
                let kind = if rng.random::<bool>() { RotationKind::Commuting } else { RotationKind::Anticommuting };
                let rc = RotationClass { kind, angle: rng.random_range(-std::f64::consts::PI..std::f64::consts::PI) };
                ("remote-rotation", remote_rotation(&rc, &bloch_qubit(&mut rng, "q", Owner::Bob))?)
            }
            ProtocolKind::MultiCopy => {
                let theta = rng.random_range(-std::f64::consts::PI..std::f64::consts::PI);
                let psi = bloch_qubit(&mut rng, "q", Owner::Bob);
                ("multicopy", multicopy_with_correction(theta, &psi, StepFiveCorrection::TildePhase)?)
            }
            ProtocolKind::Teleport => {
                let pair = phi_plus(SubsystemLabel::qubit("A", Owner::Alice), SubsystemLabel::qubit("B", Owner::Bob))?;
                ("teleport", teleport(&bloch_qubit(&mut rng, "psi", Owner::Alice), &pair, Party::Alice, Party::Bob)?)
            }
        };
        let deterministic = verify_branch_determinism(&result).deterministic;
        let verdict = check_bounds(&result.ledger(), kind);
        checks.push(Check::new(
            &format!("bounds-{kind}"),
            verdict.passed && deterministic,
            format!("{} via {protocol}", verdict.ledger),
        ));
        rows.push(BoundsRow { kind, protocol: protocol.to_string(), deterministic, verdict });
    }
    Ok((Results::Bounds(BoundsTable { rows }), checks))
}
