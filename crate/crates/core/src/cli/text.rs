use super::mode_name;
use crate::builder::{Certificate, Figure, SaturationState, Violation};
use crate::exactgeom::{fmt_rational, Rational, RationalVector};
use crate::netmodel::ReactionNetwork;
use crate::orchestrate::{AnalysisReport, DualTransfer, GrowStep, Question, Verdict};

pub fn network_header(net: &ReactionNetwork) -> String {
    format!(
        "network: {} species ({}), {} reaction(s), rank {}\n",
        net.n_species(),
        net.species_names().join(", "),
        net.n_reactions(),
        net.rank()
    )
}

pub fn figure_noun(f: &Figure) -> &'static str {
    mode_name(f.mode())
}

fn points(ps: &[RationalVector]) -> String {
    ps.iter()
        .map(|p| p.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn reaction_label(net: &ReactionNetwork, r: usize) -> String {
    format!("reaction {} ({})", r + 1, net.render_reaction(r))
}

pub fn violation(v: &Violation, net: &ReactionNetwork) -> String {
    let via = match v.reaction {
        Some(r) => reaction_label(net, r),
        None => "negation".to_string(),
    };
    let alpha = v
        .alpha
        .as_ref()
        .map(|a| format!(", α={}", fmt_rational(a)))
        .unwrap_or_default();
    format!(
        "{} -> {} via {via}, op {}{alpha}, outside the figure",
        v.source, v.output, v.op
    )
}

fn combination(terms: &[(RationalVector, Rational)]) -> String {
    terms
        .iter()
        .map(|(g, c)| format!("{}·{g}", fmt_rational(c)))
        .collect::<Vec<_>>()
        .join(" + ")
}

fn chain(state: &SaturationState, node: usize, net: &ReactionNetwork) -> String {
    let mut ids = state.chain(node);
    ids.reverse();
    let mut s = state.nodes[ids[0]].vector.to_string();
    for &i in &ids[1..] {
        let n = &state.nodes[i];
        let via = match n.via_reaction {
            Some(r) => format!("reaction {}", r + 1),
            None => "negation".to_string(),
        };
        let op = n
            .via_operation
            .map(|o| format!(" op {o}"))
            .unwrap_or_default();
        let alpha = n
            .alpha
            .as_ref()
            .map(|a| format!(" α={}", fmt_rational(a)))
            .unwrap_or_default();
        s.push_str(&format!(" -[{via}{op}{alpha}]-> {}", n.vector));
    }
    let _ = net;
    s
}

fn summary(c: &Certificate, net: &ReactionNetwork) -> String {
    match c {
        Certificate::FigureFound(f) => format!(
            "{} with {} extreme point(s)",
            figure_noun(f),
            f.points().len()
        ),
        Certificate::UnboundedRay(u) => format!("unbounded ray, α={}", fmt_rational(&u.alpha)),
        Certificate::ReactionAbsorbed(a) => {
            format!("reaction {} absorbed", net.reaction(a.reaction).vector())
        }
        Certificate::ContainsLine { vector, .. } => {
            format!("cone contains the line through {vector}")
        }
        Certificate::Inconclusive { reason } => reason.clone(),
    }
}

fn verdict_word(v: Verdict) -> &'static str {
    match v {
        Verdict::Yes => "YES",
        Verdict::No => "NO",
        Verdict::NoForConesContainingV => "NO for cones containing ±v",
        Verdict::Inconclusive => "INCONCLUSIVE",
    }
}

pub fn report(r: &AnalysisReport, net: &ReactionNetwork) -> String {
    let q = match r.question {
        Question::NonExpansive => "non-expansive",
        Question::Monotone => "monotone",
    };
    let mut s = format!(
        "{q}: {} ({})\n",
        verdict_word(r.verdict),
        summary(&r.certificate, net)
    );
    if let Some(v) = &r.start_vector {
        let prov = r.start_provenance.as_deref().unwrap_or("given");
        s.push_str(&format!("  start: {v} ({prov})\n"));
    }
    let state = r.certificate_state();
    match &r.certificate {
        Certificate::FigureFound(f) => {
            let label = if f.mode() == crate::builder::Mode::Cone {
                "generators"
            } else {
                "vertices"
            };
            s.push_str(&format!("  {label}: {}\n", points(f.points())));
        }
        Certificate::UnboundedRay(u) => {
            if let Some(st) = state {
                s.push_str(&format!("  trace: {}\n", chain(st, u.descendant, net)));
                s.push_str(&format!(
                    "  {} = {}·{}\n",
                    st.nodes[u.descendant].vector,
                    fmt_rational(&u.alpha),
                    st.nodes[u.ancestor].vector
                ));
            }
        }
        Certificate::ReactionAbsorbed(a) => {
            let sign = if a.sign > 0 { "+" } else { "-" };
            s.push_str(&format!(
                "  {sign}Γ{} = {} = {}\n",
                a.reaction + 1,
                a.vector,
                combination(&a.witness)
            ));
            if let Some(st) = state {
                s.push_str(&format!("  cone: {}\n", points(st.figure.points())));
            }
        }
        Certificate::ContainsLine { vector, witness } => {
            s.push_str(&format!("  0 = {} (line {vector})\n", combination(witness)));
        }
        Certificate::Inconclusive { .. } => {}
    }
    for run in &r.runs {
        let st = &run.saturation.state;
        s.push_str(&format!(
            "  run {}: {} from {}, {} pass(es), {} node(s), {} extreme point(s){}\n",
            run.label,
            run.saturation.certificate.kind(),
            run.start,
            st.iterations,
            st.nodes.len(),
            st.figure.points().len(),
            if st.closed { ", closed" } else { "" }
        ));
    }
    if !r.annotations.is_empty() {
        let a: Vec<String> = r.annotations.iter().map(|a| a.to_string()).collect();
        s.push_str(&format!("  annotations: {}\n", a.join(", ")));
    }
    s
}

pub fn dualize(t: &DualTransfer) -> String {
    let mut s = format!("dual network ({} reaction(s)):\n", t.dual.n_reactions());
    for j in 0..t.dual.n_reactions() {
        s.push_str(&format!(
            "  {}  {}\n",
            t.dual.render_reaction(j),
            t.dual.reaction(j).vector()
        ));
    }
    let (fig, img) = match t.dual_figure {
        Figure::Cone(_) => ("K* generators", "ΓᵀK* generators"),
        Figure::Ball(_) => ("B* vertices", "ΓᵀB* vertices"),
    };
    s.push_str(&format!("{fig}: {}\n", points(t.dual_figure.points())));
    s.push_str(&format!("{img}: {}\n", points(t.transferred.points())));
    s.push_str(&format!(
        "verification: {} closure violation(s) under the dual network\n",
        t.verification.len()
    ));
    s
}

pub fn grow_step(step: &GrowStep, violations: usize) -> String {
    let head = match &step.added {
        None => "seed".to_string(),
        Some(_) => format!(
            "added {}",
            step.network.render_reaction(step.network.n_reactions() - 1)
        ),
    };
    format!(
        "{head}: {} reaction(s), cone {} ({} violation(s))\n",
        step.network.n_reactions(),
        points(&step.cone.generators),
        violations
    )
}
