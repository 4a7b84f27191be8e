//! JSON form of figures and certificates, and exact re-verification of the parsed form.
//!
//! A certificate serializes as `{kind, figure?, trace?, witness?, reason?}`. `trace` lists the
//! derivation steps behind a negative certificate, roots first, with `parent_index` pointing
//! into the same list.

use super::ops::{apply_operation, OpTag};
use super::saturate::{closure_check, Certificate, Figure, Mode, SaturationState};
use crate::exactgeom::{conic_combination, rank_of, rational_json, Rational, RationalVector};
use crate::netmodel::ReactionNetwork;
use num::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum ModeJson {
    Cone,
    Ball,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct FigureJson {
    mode: ModeJson,
    dim: usize,
    points: Vec<RationalVector>,
}

impl From<Figure> for FigureJson {
    fn from(f: Figure) -> Self {
        let mode = match f.mode() {
            Mode::Cone => ModeJson::Cone,
            Mode::Ball => ModeJson::Ball,
        };
        FigureJson {
            mode,
            dim: f.ambient_dim(),
            points: f.points().to_vec(),
        }
    }
}

impl TryFrom<FigureJson> for Figure {
    type Error = String;

    fn try_from(j: FigureJson) -> Result<Self, String> {
        if let Some(p) = j.points.iter().find(|p| p.dim() != j.dim) {
            return Err(format!("point {p} does not have dimension {}", j.dim));
        }
        let mode = match j.mode {
            ModeJson::Cone => Mode::Cone,
            ModeJson::Ball => Mode::Ball,
        };
        Ok(Figure::from_points(mode, j.dim, j.points))
    }
}

impl Serialize for Figure {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        FigureJson::from(self.clone()).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Figure {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Figure::try_from(FigureJson::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub vector: RationalVector,
    pub parent_index: Option<usize>,
    pub reaction: Option<usize>,
    pub op: Option<OpTag>,
    #[serde(with = "rational_json::option", default)]
    pub alpha: Option<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub generator: RationalVector,
    #[serde(with = "rational_json")]
    pub coefficient: Rational,
}

/// Fields present depend on the certificate kind.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub ancestor: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub descendant: Option<usize>,
    #[serde(
        skip_serializing_if = "Option::is_none",
        with = "rational_json::option",
        default
    )]
    pub alpha: Option<Rational>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub reaction: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub sign: Option<i8>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub vector: Option<RationalVector>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub combination: Option<Vec<Term>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub figure: Option<Figure>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub trace: Option<Vec<TraceStep>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub reason: Option<String>,
}

pub fn kind_slug(c: &Certificate) -> &'static str {
    match c {
        Certificate::FigureFound(_) => "figure-found",
        Certificate::UnboundedRay(_) => "unbounded-ray",
        Certificate::ReactionAbsorbed(_) => "reaction-absorbed",
        Certificate::ContainsLine { .. } => "contains-line",
        Certificate::Inconclusive { .. } => "inconclusive",
    }
}

/// Steps for the union of the chains ending at `ends`, ordered by node index. Returns the
/// steps and the node-to-step map.
fn trace_of(state: &SaturationState, ends: &[usize]) -> (Vec<TraceStep>, BTreeMap<usize, usize>) {
    let mut keep: Vec<usize> = ends.iter().flat_map(|&e| state.chain(e)).collect();
    keep.sort_unstable();
    keep.dedup();
    let index: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(k, &n)| (n, k)).collect();
    let steps = keep
        .iter()
        .map(|&n| {
            let node = &state.nodes[n];
            TraceStep {
                vector: node.vector.clone(),
                parent_index: node.parent.map(|p| index[&p]),
                reaction: node.via_reaction,
                op: node.via_operation,
                alpha: node.alpha.clone(),
            }
        })
        .collect();
    (steps, index)
}

fn terms(witness: &[(RationalVector, Rational)]) -> Vec<Term> {
    witness
        .iter()
        .map(|(g, c)| Term {
            generator: g.clone(),
            coefficient: c.clone(),
        })
        .collect()
}

/// Figure nodes whose vectors occur among `gens`.
fn nodes_for(state: &SaturationState, gens: &[Term]) -> Vec<usize> {
    state
        .figure_nodes
        .iter()
        .copied()
        .filter(|&i| gens.iter().any(|t| t.generator == state.nodes[i].vector))
        .collect()
}

/// `state` is the run the certificate came from; it supplies the derivation trace.
pub fn certificate_json(cert: &Certificate, state: Option<&SaturationState>) -> CertificateJson {
    let mut out = CertificateJson {
        kind: kind_slug(cert).to_string(),
        figure: None,
        trace: None,
        witness: None,
        reason: None,
    };
    match cert {
        Certificate::FigureFound(f) => out.figure = Some(f.clone()),
        Certificate::Inconclusive { reason } => out.reason = Some(reason.clone()),
        Certificate::UnboundedRay(u) => {
            let mut w = Witness {
                alpha: Some(u.alpha.clone()),
                ..Witness::default()
            };
            if let Some(state) = state {
                let (steps, index) = trace_of(state, &[u.descendant]);
                w.ancestor = Some(index[&u.ancestor]);
                w.descendant = Some(index[&u.descendant]);
                out.trace = Some(steps);
            }
            out.witness = Some(w);
        }
        Certificate::ReactionAbsorbed(a) => {
            let combination = terms(&a.witness);
            if let Some(state) = state {
                out.trace = Some(trace_of(state, &nodes_for(state, &combination)).0);
                out.figure = Some(state.figure.clone());
            }
            out.witness = Some(Witness {
                reaction: Some(a.reaction),
                sign: Some(a.sign),
                vector: Some(a.vector.clone()),
                combination: Some(combination),
                ..Witness::default()
            });
        }
        Certificate::ContainsLine { vector, witness } => {
            let combination = terms(witness);
            if let Some(state) = state {
                out.trace = Some(trace_of(state, &nodes_for(state, &combination)).0);
                out.figure = Some(state.figure.clone());
            }
            out.witness = Some(Witness {
                vector: Some(vector.clone()),
                combination: Some(combination),
                ..Witness::default()
            });
        }
    }
    out
}

fn replay(trace: &[TraceStep], net: &ReactionNetwork) -> Result<(), String> {
    for (k, step) in trace.iter().enumerate() {
        if step.vector.dim() != net.n_species() {
            return Err(format!(
                "trace step {k} has dimension {}",
                step.vector.dim()
            ));
        }
        let Some(p) = step.parent_index else { continue };
        if p >= k {
            return Err(format!("trace step {k} has parent {p} not before it"));
        }
        let parent = &trace[p].vector;
        let ok = match (step.op, step.reaction) {
            (Some(OpTag::Op4), None) => step.vector == -parent && step.alpha.is_none(),
            (Some(op), Some(r)) if r < net.n_reactions() => {
                apply_operation(parent, net.reaction(r)).iter().any(|o| {
                    o.op == op && o.vector == step.vector && Some(&o.alpha) == step.alpha.as_ref()
                })
            }
            _ => false,
        };
        if !ok {
            return Err(format!(
                "trace step {k} ({}) is not an operation output of step {p}",
                step.vector
            ));
        }
    }
    Ok(())
}

fn check_combination(
    combination: &[Term],
    target: &RationalVector,
    trace: Option<&[TraceStep]>,
) -> Result<(), String> {
    if combination.is_empty() {
        return Err("empty combination".into());
    }
    let mut sum = RationalVector::zeros(target.dim());
    for t in combination {
        if t.coefficient <= Rational::zero() {
            return Err(format!(
                "coefficient {} of {} is not positive",
                t.coefficient, t.generator
            ));
        }
        if t.generator.dim() != target.dim() {
            return Err(format!("generator {} has the wrong dimension", t.generator));
        }
        if let Some(trace) = trace {
            if !trace.iter().any(|s| s.vector == t.generator) {
                return Err(format!(
                    "generator {} is not derived in the trace",
                    t.generator
                ));
            }
        }
        sum = sum.add_scaled(&t.coefficient, &t.generator);
    }
    if &sum != target {
        return Err(format!("combination sums to {sum}, expected {target}"));
    }
    Ok(())
}

/// Re-checks a parsed certificate against `net` in exact arithmetic. Inconclusive
/// certificates claim nothing and always pass.
pub fn verify_certificate(cert: &CertificateJson, net: &ReactionNetwork) -> Result<(), String> {
    if let Some(trace) = &cert.trace {
        replay(trace, net)?;
    }
    let witness = || {
        cert.witness
            .as_ref()
            .ok_or_else(|| format!("{} certificate without witness", cert.kind))
    };
    match cert.kind.as_str() {
        "figure-found" => {
            let figure = cert
                .figure
                .as_ref()
                .ok_or("figure-found certificate without figure")?;
            if figure.ambient_dim() != net.n_species() {
                return Err(format!(
                    "figure dimension {} for {} species",
                    figure.ambient_dim(),
                    net.n_species()
                ));
            }
            let violations = closure_check(figure, net);
            if let Some(v) = violations.first() {
                return Err(format!(
                    "{} closure violation(s), first {} -> {}",
                    violations.len(),
                    v.source,
                    v.output
                ));
            }
            match figure {
                Figure::Cone(c) if !c.is_pointed() => Err("cone is not pointed".into()),
                Figure::Ball(b) if rank_of(&b.vertices) != net.rank() => {
                    Err("ball does not span Im(Γ)".into())
                }
                _ => Ok(()),
            }
        }
        "unbounded-ray" => {
            let w = witness()?;
            let trace = cert
                .trace
                .as_ref()
                .ok_or("unbounded-ray certificate without trace")?;
            let (a, d) = w
                .ancestor
                .zip(w.descendant)
                .ok_or("witness lacks ancestor or descendant")?;
            let alpha = w.alpha.as_ref().ok_or("witness lacks alpha")?;
            if a >= trace.len() || d >= trace.len() {
                return Err("witness index outside the trace".into());
            }
            let mut cur = trace[d].parent_index;
            while cur.is_some_and(|c| c != a) {
                cur = cur.and_then(|c| trace[c].parent_index);
            }
            if cur != Some(a) {
                return Err(format!("step {a} is not an ancestor of step {d}"));
            }
            if *alpha <= Rational::one() || trace[d].vector != trace[a].vector.scale(alpha) {
                return Err(format!(
                    "{} is not {alpha} times {} with alpha > 1",
                    trace[d].vector, trace[a].vector
                ));
            }
            Ok(())
        }
        "reaction-absorbed" => {
            let w = witness()?;
            let (r, sign) = w
                .reaction
                .zip(w.sign)
                .ok_or("witness lacks reaction or sign")?;
            if r >= net.n_reactions() {
                return Err(format!("reaction index {r} out of range"));
            }
            let reaction = net.reaction(r);
            let target = match sign {
                1 => reaction.vector(),
                -1 if reaction.reversible => -reaction.vector(),
                _ => return Err(format!("sign {sign} not admissible for reaction {r}")),
            };
            if w.vector.as_ref().is_some_and(|v| v != &target) {
                return Err("witness vector is not the signed reaction vector".into());
            }
            let combination = w.combination.as_ref().ok_or("witness lacks combination")?;
            if combination.iter().any(|t| t.generator.same_ray(&target)) {
                return Err("reaction vector is itself a generator".into());
            }
            check_combination(combination, &target, cert.trace.as_deref())
        }
        "contains-line" => {
            let w = witness()?;
            let vector = w.vector.as_ref().ok_or("witness lacks vector")?;
            if vector.is_zero() {
                return Err("line direction is zero".into());
            }
            let combination = w.combination.as_ref().ok_or("witness lacks combination")?;
            check_combination(
                combination,
                &RationalVector::zeros(vector.dim()),
                cert.trace.as_deref(),
            )?;
            let gens: Vec<RationalVector> =
                combination.iter().map(|t| t.generator.clone()).collect();
            if conic_combination(&gens, vector).is_none()
                || conic_combination(&gens, &-vector).is_none()
            {
                return Err(format!(
                    "±{vector} are not both in the cone of the combination"
                ));
            }
            Ok(())
        }
        "inconclusive" => Ok(()),
        other => Err(format!("unknown certificate kind {other:?}")),
    }
}
