use super::{AnalysisReport, Annotation, Question, Verdict};
use crate::builder::{certificate_json, kind_slug, verify_certificate, CertificateJson};
use crate::exactgeom::{rational_json, Rational, RationalVector};
use crate::netmodel::{parse_network, ReactionNetwork};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigJson {
    pub max_iterations: usize,
    pub snap_max_denominator: u64,
    #[serde(with = "rational_json")]
    pub snap_max_distance: Rational,
    pub max_figure_size: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub start_override: Option<RationalVector>,
}

/// Species in column order and one reaction per entry, in the network grammar.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NetworkJson {
    pub species: Vec<String>,
    pub reactions: Vec<String>,
}

impl NetworkJson {
    pub fn from_network(net: &ReactionNetwork) -> Self {
        NetworkJson {
            species: net.species_names(),
            reactions: (0..net.n_reactions())
                .map(|j| net.render_reaction(j))
                .collect(),
        }
    }

    pub fn to_network(&self) -> crate::Result<ReactionNetwork> {
        let mut text = format!("@species {}\n", self.species.join(" "));
        for r in &self.reactions {
            text.push_str(r);
            text.push('\n');
        }
        parse_network(&text)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunJson {
    pub label: String,
    pub start: RationalVector,
    pub reactions: Vec<usize>,
    pub kind: String,
    pub iterations: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportJson {
    pub question: Question,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub start_vector: Option<RationalVector>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub start_provenance: Option<String>,
    pub certificate: CertificateJson,
    pub annotations: Vec<Annotation>,
    pub config: ConfigJson,
    pub network: NetworkJson,
    pub runs: Vec<RunJson>,
}

pub fn report_json(report: &AnalysisReport, net: &ReactionNetwork) -> ReportJson {
    let s = &report.config.saturation;
    ReportJson {
        question: report.question,
        verdict: report.verdict,
        start_vector: report.start_vector.clone(),
        start_provenance: report.start_provenance.clone(),
        certificate: certificate_json(&report.certificate, report.certificate_state()),
        annotations: report.annotations.iter().copied().collect(),
        config: ConfigJson {
            max_iterations: s.max_iterations,
            snap_max_denominator: s.snap_max_denominator,
            snap_max_distance: s.snap_max_distance.clone(),
            max_figure_size: s.max_figure_size,
            start_override: report.config.start_override.clone(),
        },
        network: NetworkJson::from_network(net),
        runs: report
            .runs
            .iter()
            .map(|r| RunJson {
                label: r.label.clone(),
                start: r.start.clone(),
                reactions: r.reactions.clone(),
                kind: kind_slug(&r.saturation.certificate).to_string(),
                iterations: r.saturation.state.iterations,
            })
            .collect(),
    }
}

/// Rebuilds the embedded network and re-verifies the certificate, and checks that the verdict
/// is one the certificate kind can support.
pub fn verify_report(report: &ReportJson) -> Result<(), String> {
    let net = report
        .network
        .to_network()
        .map_err(|e| format!("embedded network: {e}"))?;
    verify_certificate(&report.certificate, &net)?;
    let kind = report.certificate.kind.as_str();
    let consistent = match report.verdict {
        Verdict::Yes => kind == "figure-found",
        Verdict::No | Verdict::NoForConesContainingV => {
            matches!(
                kind,
                "unbounded-ray" | "reaction-absorbed" | "contains-line"
            )
        }
        Verdict::Inconclusive => true,
    };
    if !consistent {
        return Err(format!(
            "verdict {} with a {kind} certificate",
            report.verdict
        ));
    }
    Ok(())
}
