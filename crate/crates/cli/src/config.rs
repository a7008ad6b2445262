//! Command-line arguments and the validated run configuration they map to.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use locc_core::gates::RotationKind;
use locc_core::noisetomo::{DephasingParams, DEFAULT_SAMPLES};
use locc_core::protocols::StepFiveCorrection;
use serde::{Deserialize, Serialize};

use crate::params::{parse_angle, NamedState, StateSpec, UnitarySpec};
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub command: CommandConfig,
    pub seed: u64,
    pub format: Format,
    /// Not echoed in the report, so the same run written to two places
    /// produces identical files.
    #[serde(skip)]
    pub output_path: Option<PathBuf>,
    /// Adds wall-clock timing to the report, which makes it non-reproducible.
    #[serde(default)]
    pub timing: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "kebab-case", deny_unknown_fields)]
pub enum CommandConfig {
    RunProtocol {
        protocol: ProtocolConfig,
        /// Also pick one branch at random, as a single experimental run would.
        sample: bool,
    },
    Tomography {
        channel: ChannelConfig,
        samples: usize,
        plot_data: bool,
    },
    Experiment {
        dephasing: DephasingParams,
        state: StateSpec,
        samples: usize,
    },
    BoundsReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ProtocolConfig {
    Teleport { state: StateSpec, dim: usize },
    Bidirectional { unitary: UnitarySpec, state: StateSpec, dim: usize },
    RemoteRotation { rotation: RotationSpec, state: StateSpec },
    Multicopy { theta: f64, state: StateSpec, step5: StepFiveCorrection },
    Signaling,
}

/// What the remote-rotation circuit is asked to implement.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case", deny_unknown_fields)]
pub enum RotationSpec {
    Class { class: RotationKind, phi: f64 },
    /// Alice applies this operator in place of the rotation. Outside the two
    /// classes the circuit is expected to fail.
    Custom { unitary: UnitarySpec },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ChannelConfig {
    Dephasing { params: DephasingParams },
    Unitary { unitary: UnitarySpec },
    Experiment { params: DephasingParams },
}

#[derive(Debug, Parser)]
#[command(name = "locc", version, about = "Simulate LOCC protocols for remote quantum operations")]
pub struct Cli {
    /// Seed for every random choice in the run.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Include wall-clock timing in the report.
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: CliCommand,
}

#[derive(Debug, Subcommand)]
pub enum CliCommand {
    /// Run one protocol over all measurement branches and verify it.
    RunProtocol(RunProtocolArgs),
    /// Reconstruct the χ matrix of a channel from the four probe states.
    Tomography(TomographyArgs),
    /// Simulate the photonic remote rotation with dephasing noise.
    Experiment(ExperimentArgs),
    /// Compare each protocol family's resource use with its bounds.
    BoundsReport,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ProtocolName {
    Teleport,
    Bidirectional,
    RemoteRotation,
    Multicopy,
    Signaling,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ClassArg {
    Com,
    Anticom,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StepFiveArg {
    TildePhase,
    LiteralFourier,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ChannelArg {
    Dephasing,
    Unitary,
    Experiment,
}

#[derive(Debug, Args)]
pub struct RunProtocolArgs {
    #[arg(value_enum)]
    pub protocol: ProtocolName,
    /// Rotation angle for remote-rotation, with unit (e.g. 120deg).
    #[arg(long)]
    pub phi: Option<String>,
    /// Rotation angle for multicopy, with unit.
    #[arg(long)]
    pub theta: Option<String>,
    #[arg(long, value_enum)]
    pub class: Option<ClassArg>,
    /// H, V, D, C, R, random or "(re,im),(re,im)".
    #[arg(long)]
    pub state: Option<String>,
    /// I, X, Y, Z, H, F or random.
    #[arg(long)]
    pub unitary: Option<String>,
    #[arg(long, default_value_t = 2)]
    pub dim: usize,
    #[arg(long)]
    pub sample: bool,
    #[arg(long, value_enum)]
    pub step5: Option<StepFiveArg>,
}

#[derive(Debug, Args)]
pub struct DephasingArgs {
    #[arg(long, default_value_t = 0.85)]
    pub p: f64,
    #[arg(long, default_value_t = 0.92)]
    pub eta: f64,
    /// Rotation angle with unit.
    #[arg(long, default_value = "60deg")]
    pub phi: String,
}

#[derive(Debug, Args)]
pub struct TomographyArgs {
    #[arg(long, value_enum)]
    pub channel: ChannelArg,
    #[command(flatten)]
    pub dephasing: DephasingArgs,
    /// Unitary for `--channel unitary`.
    #[arg(long)]
    pub unitary: Option<String>,
    /// Monte Carlo samples for the average-fidelity estimate.
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    pub samples: usize,
    /// Emit χ in long form (row, col, re, im) for plotting.
    #[arg(long)]
    pub plot_data: bool,
}

#[derive(Debug, Args)]
pub struct ExperimentArgs {
    #[command(flatten)]
    pub dephasing: DephasingArgs,
    #[arg(long, default_value = "D")]
    pub state: String,
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    pub samples: usize,
}

fn dephasing(args: &DephasingArgs) -> Result<DephasingParams, CliError> {
    let params = DephasingParams::new(args.p, args.eta, parse_angle(&args.phi)?)?;
    params.validate()?;
    Ok(params)
}

fn unused(flag: &str, value: bool, protocol: &str) -> Result<(), CliError> {
    if value {
        return Err(CliError::invalid(format!("--{flag} does not apply to {protocol}")));
    }
    Ok(())
}

fn protocol_config(a: &RunProtocolArgs) -> Result<ProtocolConfig, CliError> {
    let state = |default: StateSpec| a.state.as_deref().map_or(Ok(default), str::parse);
    let h = if a.dim == 2 { StateSpec::Named(NamedState::H) } else { StateSpec::Random };
    let name = format!("{:?}", a.protocol).to_lowercase();
    let not_qubit = a.dim != 2;
    match a.protocol {
        ProtocolName::Teleport => {
            unused("phi", a.phi.is_some(), &name)?;
            unused("theta", a.theta.is_some(), &name)?;
            unused("unitary", a.unitary.is_some(), &name)?;
            Ok(ProtocolConfig::Teleport { state: state(h)?, dim: a.dim })
        }
        ProtocolName::Bidirectional => {
            unused("phi", a.phi.is_some(), &name)?;
            unused("theta", a.theta.is_some(), &name)?;
            let unitary = a.unitary.as_deref().map_or(Ok(UnitarySpec::Random), str::parse)?;
            Ok(ProtocolConfig::Bidirectional { unitary, state: state(h)?, dim: a.dim })
        }
        ProtocolName::RemoteRotation => {
            unused("dim", not_qubit, &name)?;
            unused("theta", a.theta.is_some(), &name)?;
            let rotation = match (&a.unitary, &a.phi) {
                (Some(_), Some(_)) => return Err(CliError::invalid("give either --phi or --unitary, not both")),
                (Some(u), None) => {
                    unused("class", a.class.is_some(), "a custom unitary")?;
                    RotationSpec::Custom { unitary: u.parse()? }
                }
                (None, Some(phi)) => {
                    let class = match a.class.unwrap_or(ClassArg::Com) {
                        ClassArg::Com => RotationKind::Commuting,
                        ClassArg::Anticom => RotationKind::Anticommuting,
                    };
                    RotationSpec::Class { class, phi: parse_angle(phi)? }
                }
                (None, None) => return Err(CliError::invalid("remote-rotation needs --phi (or --unitary)")),
            };
            Ok(ProtocolConfig::RemoteRotation { rotation, state: state(h)? })
        }
        ProtocolName::Multicopy => {
            unused("dim", not_qubit, &name)?;
            unused("phi", a.phi.is_some(), &name)?;
            let theta = a.theta.as_deref().ok_or_else(|| CliError::invalid("multicopy needs --theta"))?;
            let step5 = match a.step5.unwrap_or(StepFiveArg::TildePhase) {
                StepFiveArg::TildePhase => StepFiveCorrection::TildePhase,
                StepFiveArg::LiteralFourier => StepFiveCorrection::LiteralFourier,
            };
            Ok(ProtocolConfig::Multicopy { theta: parse_angle(theta)?, state: state(h)?, step5 })
        }
        ProtocolName::Signaling => {
            for (flag, set) in [
                ("phi", a.phi.is_some()),
                ("theta", a.theta.is_some()),
                ("state", a.state.is_some()),
                ("unitary", a.unitary.is_some()),
                ("dim", not_qubit),
            ] {
                unused(flag, set, &name)?;
            }
            Ok(ProtocolConfig::Signaling)
        }
    }
    .and_then(|p| {
        if !matches!(a.protocol, ProtocolName::Multicopy) && a.step5.is_some() {
            return Err(CliError::invalid(format!("--step5 does not apply to {name}")));
        }
        if !matches!(a.protocol, ProtocolName::RemoteRotation) && a.class.is_some() {
            return Err(CliError::invalid(format!("--class does not apply to {name}")));
        }
        Ok(p)
    })
}

impl TryFrom<Cli> for RunConfig {
    type Error = CliError;

    fn try_from(cli: Cli) -> Result<Self, CliError> {
        let command = match &cli.command {
            CliCommand::RunProtocol(a) => CommandConfig::RunProtocol { protocol: protocol_config(a)?, sample: a.sample },
            CliCommand::Tomography(a) => {
                let channel = match a.channel {
                    ChannelArg::Dephasing => ChannelConfig::Dephasing { params: dephasing(&a.dephasing)? },
                    ChannelArg::Experiment => ChannelConfig::Experiment { params: dephasing(&a.dephasing)? },
                    ChannelArg::Unitary => {
                        let u = a.unitary.as_deref().ok_or_else(|| CliError::invalid("--channel unitary needs --unitary"))?;
                        ChannelConfig::Unitary { unitary: u.parse()? }
                    }
                };
                if a.unitary.is_some() && a.channel != ChannelArg::Unitary {
                    return Err(CliError::invalid("--unitary only applies to --channel unitary"));
                }
                CommandConfig::Tomography { channel, samples: a.samples, plot_data: a.plot_data }
            }
            CliCommand::Experiment(a) => {
                CommandConfig::Experiment { dephasing: dephasing(&a.dephasing)?, state: a.state.parse()?, samples: a.samples }
            }
            CliCommand::BoundsReport => CommandConfig::BoundsReport,
        };
        let config = RunConfig { command, seed: cli.seed, format: cli.format, output_path: cli.out, timing: cli.timing };
        config.validate()?;
        Ok(config)
    }
}

impl RunConfig {
    /// Checks the preconditions that do not depend on running anything.
    pub fn validate(&self) -> Result<(), CliError> {
        let check_samples = |n: usize| {
            if n < locc_core::noisetomo::fidelity::MIN_SAMPLES {
                Err(CliError::Core(locc_core::Error::TooFewSamples(n)))
            } else {
                Ok(())
            }
        };
        match &self.command {
            CommandConfig::RunProtocol { protocol, .. } => match protocol {
                ProtocolConfig::Teleport { dim, .. } | ProtocolConfig::Bidirectional { dim, .. } => {
                    if !(2..=3).contains(dim) {
                        return Err(CliError::Core(locc_core::Error::UnsupportedDimension(*dim)));
                    }
                }
                ProtocolConfig::RemoteRotation { rotation: RotationSpec::Class { phi, .. }, .. }
                | ProtocolConfig::Multicopy { theta: phi, .. }
                    if !phi.is_finite() =>
                {
                    return Err(CliError::invalid("rotation angle must be finite"));
                }
                _ => {}
            },
            CommandConfig::Tomography { channel, samples, .. } => {
                check_samples(*samples)?;
                if let ChannelConfig::Dephasing { params } | ChannelConfig::Experiment { params } = channel {
                    params.validate()?;
                }
            }
            CommandConfig::Experiment { dephasing, state, samples } => {
                check_samples(*samples)?;
                dephasing.validate()?;
                if state.dimension().is_some_and(|d| d != 2) {
                    return Err(CliError::invalid("the experiment input must be a qubit"));
                }
            }
            CommandConfig::BoundsReport => {}
        }
        Ok(())
    }
}
