//! The versioned report and its JSON and CSV renderings.

use std::fmt::Write as _;

use locc_core::noisetomo::{ChiMatrix, ExperimentReport};
use locc_core::protocols::{CorrectionReport, DeterminismReport, ProtocolResult, SignalingReport};
use locc_core::qcore::{CMatrix, PureState};
use locc_core::resources::{BoundVerdict, ProtocolKind, ResourceLedger};
use serde::{Deserialize, Serialize};

use crate::config::{Format, RunConfig};
use crate::CliError;

pub const REPORT_VERSION: &str = "1.0.0";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub version: String,
    pub config: RunConfig,
    pub results: Results,
    pub checks: Vec<Check>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing: Option<Timing>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn render(&self, format: Format) -> Result<String, CliError> {
        match format {
            Format::Json => Ok(serde_json::to_string_pretty(self)? + "\n"),
            Format::Csv => Ok(self.results.to_csv()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        Check { name: name.to_string(), passed, detail: detail.into() }
    }

    /// Passes when `value < tol`.
    pub fn below(name: &str, value: f64, tol: f64) -> Self {
        Check::new(name, value < tol, format!("{value:e} < {tol:e}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Timing {
    pub elapsed_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Results {
    Protocol(Box<ProtocolReport>),
    Signaling(SignalingReport),
    Tomography(Box<TomographyReport>),
    Experiment(Box<ExperimentResults>),
    Bounds(BoundsTable),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProtocolReport {
    pub input_state: PureState,
    pub result: ProtocolResult,
    pub determinism: DeterminismReport,
    /// Fidelity of each branch's output with the target state.
    pub fidelities: Vec<f64>,
    pub ledger: ResourceLedger,
    pub bounds: Option<BoundVerdict>,
    /// Both step-five corrections of the multicopy protocol on this input.
    pub step_five: Option<Vec<CorrectionReport>>,
    /// Branch picked by the seeded generator when sampling was requested.
    pub sampled_branch: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlotPoint {
    pub row: usize,
    pub col: usize,
    pub re: f64,
    pub im: f64,
}

pub fn plot_points(chi: &ChiMatrix) -> Vec<PlotPoint> {
    let m = chi.entries();
    (0..4)
        .flat_map(|row| (0..4).map(move |col| (row, col)))
        .map(|(row, col)| PlotPoint { row, col, re: m[(row, col)].re, im: m[(row, col)].im })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FidelitySummary {
    pub closed_form: f64,
    pub sampled: f64,
    pub samples: usize,
    /// `(2 + pη)/3` where a dephasing model applies.
    pub model: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TomographyReport {
    /// Reconstructed from the four probe outputs.
    pub chi: ChiMatrix,
    /// χ of the model channel.
    pub chi_model: ChiMatrix,
    pub chi_distance: f64,
    #[serde(with = "locc_core::qcore::cjson::matrix")]
    pub target_unitary: CMatrix,
    pub average_fidelity: FidelitySummary,
    pub plot_data: Option<Vec<PlotPoint>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentResults {
    pub input_state: PureState,
    pub experiment: ExperimentReport,
    /// Average fidelity of the reconstructed process with the ideal rotation.
    pub average_fidelity: FidelitySummary,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundsTable {
    pub rows: Vec<BoundsRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundsRow {
    pub kind: ProtocolKind,
    /// The protocol run to measure the ledger.
    pub protocol: String,
    pub deterministic: bool,
    pub verdict: BoundVerdict,
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

impl Results {
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        match self {
            Results::Protocol(r) => {
                out.push_str("branch,outcomes,probability,fidelity,ebits,cbits_a_to_b,cbits_b_to_a\n");
                for (i, (b, f)) in r.result.branches.iter().zip(&r.fidelities).enumerate() {
                    let outcomes = b.outcomes.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
                    let l = b.ledger;
                    let _ = writeln!(
                        out,
                        "{}",
                        join([
                            i.to_string(),
                            outcomes,
                            b.branch_probability.to_string(),
                            f.to_string(),
                            l.ebits_consumed.to_string(),
                            l.cbits_a_to_b.to_string(),
                            l.cbits_b_to_a.to_string(),
                        ])
                    );
                }
            }
            Results::Signaling(s) => {
                out.push_str("bob_input,alice_plus,alice_minus\n");
                for c in &s.cases {
                    let _ = writeln!(out, "{},{},{}", c.bob_input, c.alice_plus, c.alice_minus);
                }
            }
            Results::Tomography(t) => {
                out = if t.plot_data.is_some() { t.chi.to_long_csv() } else { t.chi.to_csv() };
            }
            Results::Experiment(e) => out = e.experiment.chi.to_csv(),
            Results::Bounds(table) => {
                out.push_str(
                    "kind,protocol,min_ebits,min_cbits_a_to_b,min_cbits_b_to_a,achieved_ebits,achieved_cbits_a_to_b,\
                     achieved_cbits_b_to_a,ebits,cbits_a_to_b,cbits_b_to_a,deterministic,passed\n",
                );
                for r in &table.rows {
                    let v = &r.verdict;
                    let mut fields = vec![r.kind.to_string(), r.protocol.clone()];
                    fields.extend(v.bounds.minimum().components().iter().map(f64::to_string));
                    fields.extend(v.bounds.achieved.components().iter().map(f64::to_string));
                    fields.extend(v.ledger.components().iter().map(f64::to_string));
                    fields.push(r.deterministic.to_string());
                    fields.push(v.passed.to_string());
                    let _ = writeln!(out, "{}", join(fields));
                }
            }
        }
        out
    }
}
