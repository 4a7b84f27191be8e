//! End-to-end analyses built on saturation: non-expansivity, monotonicity with start-vector
//! selection, strength annotations, certificate transfer to the dual network and greedy
//! growth of monotone networks.

mod analyze;
mod grow;
mod json;
mod transfer;

pub use analyze::{
    analyze_monotone, analyze_nonexpansive, default_nonexpansive_start, pick_starting_vector,
    StartChoice,
};
pub use grow::{grow_candidates, grow_each, grow_search, grow_with_candidates, GrowStep};
pub use json::{report_json, verify_report, ConfigJson, NetworkJson, ReportJson, RunJson};
pub use transfer::{dual_transfer, DualTransfer};

use crate::builder::{Certificate, Figure, Mode, Saturation, SaturationConfig};
use crate::exactgeom::{in_span, RationalVector};
use crate::netmodel::{r_graph, ReactionNetwork};
use crate::regions::DEFAULT_SIGN_PATTERN_CAP;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Question {
    NonExpansive,
    Monotone,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Yes,
    No,
    NoForConesContainingV,
    Inconclusive,
}

impl Verdict {
    pub fn is_determinate(self) -> bool {
        self != Verdict::Inconclusive
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Annotation {
    StronglyConnectedRGraph,
    StronglyMonotone,
    WeaklyContractive,
    Concordant,
}

macro_rules! kebab_display {
    ($($t:ty),*) => {$(
        impl fmt::Display for $t {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let v = serde_json::to_value(self).map_err(|_| fmt::Error)?;
                f.write_str(v.as_str().ok_or(fmt::Error)?)
            }
        }
    )*};
}
kebab_display!(Question, Verdict, Annotation);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnalysisConfig {
    pub saturation: SaturationConfig,
    pub start_override: Option<RationalVector>,
    /// Also try proper subnetworks of full rank as the outer network when picking a start.
    pub subnetwork_search: bool,
    /// Pass cap for the non-expansivity runs on candidate inner subnetworks.
    pub inner_max_iterations: usize,
    pub sign_pattern_cap: usize,
    pub grow_candidate_cap: usize,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        AnalysisConfig {
            saturation: SaturationConfig::default(),
            start_override: None,
            subnetwork_search: false,
            inner_max_iterations: 10,
            sign_pattern_cap: DEFAULT_SIGN_PATTERN_CAP,
            grow_candidate_cap: 10_000,
        }
    }
}

/// One saturation run. Reaction indices inside `saturation` refer to the analyzed network;
/// `reactions` lists the reactions the run used.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SaturationRun {
    pub label: String,
    pub start: RationalVector,
    pub mode: Mode,
    pub reactions: Vec<usize>,
    pub saturation: Saturation,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnalysisReport {
    pub question: Question,
    pub verdict: Verdict,
    pub certificate: Certificate,
    /// Index into `runs` of the run whose state `certificate` refers to.
    pub certificate_run: Option<usize>,
    pub start_vector: Option<RationalVector>,
    pub start_provenance: Option<String>,
    pub runs: Vec<SaturationRun>,
    pub annotations: BTreeSet<Annotation>,
    pub config: AnalysisConfig,
}

impl AnalysisReport {
    pub fn figure(&self) -> Option<&Figure> {
        match &self.certificate {
            Certificate::FigureFound(f) => Some(f),
            _ => None,
        }
    }

    pub fn certificate_state(&self) -> Option<&crate::builder::SaturationState> {
        self.certificate_run.map(|i| &self.runs[i].saturation.state)
    }
}

/// Adds the strength flags that follow from a positive verdict on a network whose R-graph is
/// strongly connected.
pub fn annotate_strength(mut report: AnalysisReport, net: &ReactionNetwork) -> AnalysisReport {
    if !r_graph(net).strongly_connected() {
        return report;
    }
    report
        .annotations
        .insert(Annotation::StronglyConnectedRGraph);
    if report.verdict != Verdict::Yes {
        return report;
    }
    match (report.question, report.figure()) {
        (Question::Monotone, Some(Figure::Cone(c))) => {
            let image = net.vectors();
            if c.generators.iter().all(|g| in_span(&image, g)) {
                report.annotations.insert(Annotation::StronglyMonotone);
            }
        }
        (Question::NonExpansive, Some(Figure::Ball(_))) => {
            report.annotations.insert(Annotation::WeaklyContractive);
            report.annotations.insert(Annotation::Concordant);
        }
        _ => {}
    }
    report
}
