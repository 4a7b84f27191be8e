use super::{AnalysisConfig, AnalysisReport, Question, SaturationRun, Verdict};
use crate::builder::{closure_check, saturate, Certificate, Figure, Mode, Saturation};
use crate::error::{Error, Result};
use crate::exactgeom::{
    extreme_filter, image_kernel_basis, rank_of, BallRep, HullMode, Rational, RationalVector,
};
use crate::netmodel::{enumerate_subnetworks, r_graph, ReactionNetwork};
use crate::regions::{concordance_witness, find_start_candidates, orient, projection_start};
use num::{BigInt, Zero};
use std::collections::BTreeSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StartChoice {
    pub vector: RationalVector,
    pub provenance: String,
}

fn report(question: Question, config: &AnalysisConfig) -> AnalysisReport {
    AnalysisReport {
        question,
        verdict: Verdict::Inconclusive,
        certificate: Certificate::Inconclusive {
            reason: String::new(),
        },
        certificate_run: None,
        start_vector: None,
        start_provenance: None,
        runs: Vec::new(),
        annotations: BTreeSet::new(),
        config: config.clone(),
    }
}

/// Rewrites reaction indices of a run on `net.subnetwork(idx)` into indices of `net`.
fn remap(mut s: Saturation, idx: &[usize]) -> Saturation {
    for n in &mut s.state.nodes {
        n.via_reaction = n.via_reaction.map(|r| idx[r]);
    }
    if let Certificate::ReactionAbsorbed(a) = &mut s.certificate {
        a.reaction = idx[a.reaction];
    }
    s
}

fn run_on(
    net: &ReactionNetwork,
    idx: &[usize],
    label: String,
    start: &RationalVector,
    mode: Mode,
    config: &AnalysisConfig,
) -> Result<SaturationRun> {
    let sub = net.subnetwork(idx);
    let saturation = remap(saturate(&sub, start, mode, &config.saturation)?, idx);
    Ok(SaturationRun {
        label,
        start: start.clone(),
        mode,
        reactions: idx.to_vec(),
        saturation,
    })
}

/// Primitive column sum when it is nonzero on a kinetic coordinate of every reaction,
/// otherwise `Σ tᵏ bₖ` over an image basis for the least `t ≥ 2` whose support is the
/// support of the whole image.
pub fn default_nonexpansive_start(net: &ReactionNetwork) -> RationalVector {
    let n = net.n_species();
    let sum = net
        .vectors()
        .iter()
        .fold(RationalVector::zeros(n), |acc, v| &acc + v);
    let reaches_all = net
        .reactions()
        .iter()
        .all(|r| r.kinetic_coords().iter().any(|&j| !sum[j].is_zero()));
    if !sum.is_zero() && reaches_all {
        return sum.primitive();
    }
    let (basis, _) = image_kernel_basis(&net.stoichiometric_matrix());
    let target: BTreeSet<usize> = basis.iter().flat_map(|b| b.support()).collect();
    let mut t = 2i64;
    loop {
        let mut v = RationalVector::zeros(n);
        let mut w = Rational::from_integer(BigInt::from(1));
        for b in &basis {
            v = v.add_scaled(&w, b);
            w *= Rational::from_integer(BigInt::from(t));
        }
        if v.support().into_iter().collect::<BTreeSet<_>>() == target {
            return v.primitive();
        }
        t += 1;
    }
}

/// Decides non-expansivity by growing a ball from one start vector per weakly connected
/// component of the R-graph (or from the override, on the whole network).
pub fn analyze_nonexpansive(
    net: &ReactionNetwork,
    config: &AnalysisConfig,
) -> Result<AnalysisReport> {
    let mut out = report(Question::NonExpansive, config);
    let all: Vec<usize> = (0..net.n_reactions()).collect();
    if let Some(start) = &config.start_override {
        out.runs.push(run_on(
            net,
            &all,
            "override".into(),
            start,
            Mode::Ball,
            config,
        )?);
        out.start_vector = Some(start.clone());
        out.start_provenance = Some("override".into());
    } else {
        let graph = r_graph(net);
        let parts = if graph.connected {
            vec![all]
        } else {
            graph.components.clone()
        };
        let single = parts.len() == 1;
        for (k, part) in parts.iter().enumerate() {
            let start = default_nonexpansive_start(&net.subnetwork(part));
            let label = if single {
                "start".to_string()
            } else {
                format!("component {}", k + 1)
            };
            out.runs
                .push(run_on(net, part, label, &start, Mode::Ball, config)?);
            if single {
                out.start_vector = Some(start);
                out.start_provenance = Some("default".into());
            }
        }
    }
    if let Some(i) = out
        .runs
        .iter()
        .position(|r| r.saturation.certificate.is_negative())
    {
        out.verdict = Verdict::No;
        out.certificate = out.runs[i].saturation.certificate.clone();
        out.certificate_run = Some(i);
        return Ok(out);
    }
    if let Some(i) = out
        .runs
        .iter()
        .position(|r| !matches!(r.saturation.certificate, Certificate::FigureFound(_)))
    {
        out.certificate = out.runs[i].saturation.certificate.clone();
        out.certificate_run = Some(i);
        return Ok(out);
    }
    if out.runs.len() == 1 {
        out.verdict = Verdict::Yes;
        out.certificate = out.runs[0].saturation.certificate.clone();
        out.certificate_run = Some(0);
        return Ok(out);
    }
    // Per-component balls: the hull of their union is closed, since a component's vectors
    // vanish on every other component's kinetic coordinates.
    let points: Vec<RationalVector> = out
        .runs
        .iter()
        .flat_map(|r| r.saturation.state.figure.points().to_vec())
        .collect();
    let ball = Figure::Ball(BallRep::new(
        net.n_species(),
        extreme_filter(&points, HullMode::Convex),
    ));
    let violations = closure_check(&ball, net);
    if !violations.is_empty() {
        return Err(Error::Internal(format!(
            "union of component balls has {} closure violation(s)",
            violations.len()
        )));
    }
    if rank_of(ball.points()) != net.rank() {
        out.certificate = Certificate::Inconclusive {
            reason: "component balls do not span the stoichiometric subspace".into(),
        };
        return Ok(out);
    }
    out.verdict = Verdict::Yes;
    out.certificate = Certificate::FigureFound(ball);
    Ok(out)
}

/// A vector `v` such that every cone `K ⊆ Im(Γ)` making the network monotone contains `v` or
/// `−v`.
///
/// Searches inner subnetworks of rank one less than the outer network (the full network, plus
/// full-rank proper subnetworks that are not non-expansive when `subnetwork_search` is set)
/// that are concordant and non-expansive, and returns the first vector of
/// `Z_inner ∩ Im(outer) \ Im(inner)`. All-reversible networks fall back to
/// [`projection_start`]. Rank-one networks use their image direction.
pub fn pick_starting_vector(
    net: &ReactionNetwork,
    config: &AnalysisConfig,
) -> Result<Option<StartChoice>> {
    let rank = net.rank();
    if rank == 1 {
        let (basis, _) = image_kernel_basis(&net.stoichiometric_matrix());
        return Ok(Some(StartChoice {
            vector: orient(&basis[0]),
            provenance: "one-dimensional image".into(),
        }));
    }
    let mut inner_config = config.clone();
    inner_config.saturation.max_iterations = config.inner_max_iterations;
    inner_config.start_override = None;

    let mut outers: Vec<(Vec<usize>, ReactionNetwork)> =
        vec![((0..net.n_reactions()).collect(), net.clone())];
    if config.subnetwork_search {
        for (idx, sub) in enumerate_subnetworks(net, rank) {
            if idx.len() < net.n_reactions()
                && analyze_nonexpansive(&sub, &inner_config)?.verdict == Verdict::No
            {
                outers.push((idx, sub));
            }
        }
    }
    for (outer_idx, outer) in &outers {
        for (inner_idx, inner) in enumerate_subnetworks(outer, rank - 1) {
            if concordance_witness(&inner, config.sign_pattern_cap)?.is_some() {
                continue;
            }
            if analyze_nonexpansive(&inner, &inner_config)?.verdict != Verdict::Yes {
                continue;
            }
            if let Some(v) = find_start_candidates(outer, &inner)?.into_iter().next() {
                let names: Vec<String> = inner_idx
                    .iter()
                    .map(|&k| (outer_idx[k] + 1).to_string())
                    .collect();
                let provenance = format!("zero set of reactions {{{}}}", names.join(","));
                return Ok(Some(StartChoice {
                    vector: v,
                    provenance,
                }));
            }
        }
    }
    if net.all_reversible() {
        if let Some(v) = projection_start(net) {
            return Ok(Some(StartChoice {
                vector: v,
                provenance: "projection onto reaction hyperplanes".into(),
            }));
        }
    }
    Ok(None)
}

/// Negating every vector of a run from `v` gives a valid run from `−v` whose certificate is
/// negative again: an absorbed reversible reaction stays absorbed, and a line stays a line.
fn mirrors(cert: &Certificate, net: &ReactionNetwork) -> bool {
    match cert {
        Certificate::ReactionAbsorbed(a) => net.reaction(a.reaction).reversible,
        Certificate::ContainsLine { .. } => true,
        _ => false,
    }
}

/// Grows a cone from a forced start vector `v` and, unless the first run already settles
/// both signs, from `−v`.
pub fn analyze_monotone(net: &ReactionNetwork, config: &AnalysisConfig) -> Result<AnalysisReport> {
    let mut out = report(Question::Monotone, config);
    let (start, forced) = match &config.start_override {
        Some(v) => {
            out.start_provenance = Some("override".into());
            (v.clone(), false)
        }
        None => match pick_starting_vector(net, config)? {
            Some(choice) => {
                out.start_provenance = Some(choice.provenance);
                (choice.vector, true)
            }
            None => {
                out.certificate = Certificate::Inconclusive {
                    reason: "no forced starting vector found".into(),
                };
                return Ok(out);
            }
        },
    };
    out.start_vector = Some(start.clone());
    let all: Vec<usize> = (0..net.n_reactions()).collect();
    out.runs
        .push(run_on(net, &all, "+v".into(), &start, Mode::Cone, config)?);
    let plus = out.runs[0].saturation.certificate.clone();
    if matches!(plus, Certificate::FigureFound(_)) {
        out.verdict = Verdict::Yes;
        out.certificate = plus;
        out.certificate_run = Some(0);
        return Ok(out);
    }
    let mirrored = plus.is_negative() && mirrors(&plus, net);
    let minus_negative = if mirrored {
        true
    } else {
        out.runs.push(run_on(
            net,
            &all,
            "-v".into(),
            &-&start,
            Mode::Cone,
            config,
        )?);
        let minus = out.runs[1].saturation.certificate.clone();
        if matches!(minus, Certificate::FigureFound(_)) {
            out.verdict = Verdict::Yes;
            out.certificate = minus;
            out.certificate_run = Some(1);
            return Ok(out);
        }
        minus.is_negative()
    };
    let plus_negative = plus.is_negative();
    out.verdict = match (plus_negative, minus_negative) {
        (true, true) if forced => Verdict::No,
        (false, false) => Verdict::Inconclusive,
        _ => Verdict::NoForConesContainingV,
    };
    let which = if plus_negative || !minus_negative {
        0
    } else {
        1
    };
    out.certificate = out.runs[which].saturation.certificate.clone();
    out.certificate_run = Some(which);
    Ok(out)
}
