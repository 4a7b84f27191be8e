use super::ops::{apply_operation, OpOutput, OpTag};
use super::snap::rational_snap;
use crate::error::{Error, Result};
use crate::exactgeom::{
    conic_member, convex_combination, extreme_filter, in_span, rank_of, ratio, BallRep, ConeRep,
    HullMode, Rational, RationalVector,
};
use crate::netmodel::ReactionNetwork;
use num::{One, Signed, Zero};
use std::cmp::Ordering;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Cone,
    Ball,
}

impl Mode {
    fn hull(self) -> HullMode {
        match self {
            Mode::Cone => HullMode::Conic,
            Mode::Ball => HullMode::Convex,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Figure {
    Cone(ConeRep),
    Ball(BallRep),
}

impl Figure {
    pub fn from_points(mode: Mode, dim: usize, points: Vec<RationalVector>) -> Figure {
        match mode {
            Mode::Cone => Figure::Cone(ConeRep::new(dim, points)),
            Mode::Ball => Figure::Ball(BallRep::new(dim, points)),
        }
    }

    pub fn mode(&self) -> Mode {
        match self {
            Figure::Cone(_) => Mode::Cone,
            Figure::Ball(_) => Mode::Ball,
        }
    }

    /// Generators of a cone or vertices of a ball.
    pub fn points(&self) -> &[RationalVector] {
        match self {
            Figure::Cone(c) => &c.generators,
            Figure::Ball(b) => &b.vertices,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        match self {
            Figure::Cone(c) => c.ambient_dim,
            Figure::Ball(b) => b.ambient_dim,
        }
    }

    pub fn contains(&self, v: &RationalVector) -> bool {
        match self {
            Figure::Cone(c) => c.contains(v),
            Figure::Ball(b) => b.contains(v),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationNode {
    pub vector: RationalVector,
    pub parent: Option<usize>,
    pub via_reaction: Option<usize>,
    pub via_operation: Option<OpTag>,
    pub alpha: Option<Rational>,
}

impl DerivationNode {
    fn root(vector: RationalVector) -> Self {
        DerivationNode {
            vector,
            parent: None,
            via_reaction: None,
            via_operation: None,
            alpha: None,
        }
    }
}

/// `figure_nodes[k]` is the node whose vector is `figure.points()[k]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SaturationState {
    pub figure: Figure,
    pub figure_nodes: Vec<usize>,
    pub nodes: Vec<DerivationNode>,
    pub iterations: usize,
    pub closed: bool,
}

impl SaturationState {
    /// Node indices from `node` back to its root, `node` first.
    pub fn chain(&self, node: usize) -> Vec<usize> {
        let mut out = vec![node];
        let mut cur = node;
        while let Some(p) = self.nodes[cur].parent {
            out.push(p);
            cur = p;
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Unbounded {
    pub ancestor: usize,
    pub descendant: usize,
    pub alpha: Rational,
}

/// `vector = sign·Γ_reaction = Σ cᵢ gᵢ` with every `cᵢ > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Absorbed {
    pub reaction: usize,
    pub sign: i8,
    pub vector: RationalVector,
    pub witness: Vec<(RationalVector, Rational)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    FigureFound(Figure),
    UnboundedRay(Unbounded),
    ReactionAbsorbed(Absorbed),
    /// `vector` and `−vector` are both in the cone; `witness` is `Σ cᵢ gᵢ = 0` with `vector = c₀g₀`.
    ContainsLine {
        vector: RationalVector,
        witness: Vec<(RationalVector, Rational)>,
    },
    Inconclusive {
        reason: String,
    },
}

impl Certificate {
    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::FigureFound(_) => "FigureFound",
            Certificate::UnboundedRay(_) => "UnboundedRay",
            Certificate::ReactionAbsorbed(_) => "ReactionAbsorbed",
            Certificate::ContainsLine { .. } => "ContainsLine",
            Certificate::Inconclusive { .. } => "Inconclusive",
        }
    }

    pub fn is_negative(&self) -> bool {
        matches!(
            self,
            Certificate::UnboundedRay(_)
                | Certificate::ReactionAbsorbed(_)
                | Certificate::ContainsLine { .. }
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Saturation {
    pub certificate: Certificate,
    pub state: SaturationState,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SaturationConfig {
    pub max_iterations: usize,
    pub snap_max_denominator: u64,
    pub snap_max_distance: Rational,
    /// Abandon a run once the pruned figure has more points than this.
    pub max_figure_size: usize,
}

impl Default for SaturationConfig {
    fn default() -> Self {
        SaturationConfig {
            max_iterations: 50,
            snap_max_denominator: 12,
            snap_max_distance: ratio(1, 1_000_000),
            max_figure_size: 256,
        }
    }
}

/// One operation output that leaves the figure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub source: RationalVector,
    pub reaction: Option<usize>,
    pub op: OpTag,
    pub alpha: Option<Rational>,
    pub output: RationalVector,
}

type Produced = (RationalVector, Option<usize>, OpTag, Option<Rational>);

/// Outputs of every operation on `v`: reactions in network order, then negation in ball mode.
fn produce(net: &ReactionNetwork, v: &RationalVector, mode: Mode) -> Vec<Produced> {
    let mut out = Vec::new();
    for (i, r) in net.reactions().iter().enumerate() {
        let mut outs = apply_operation(v, r);
        outs.sort_by(mirror_order);
        for o in outs {
            out.push((o.vector, Some(i), o.op, Some(o.alpha)));
        }
    }
    if mode == Mode::Ball {
        out.push((-v, None, OpTag::Op4, None));
    }
    out
}

/// Smaller `α` first, then the output whose sign-normalized form (leading nonzero entry
/// negative) is lexicographically smaller. Invariant under negating the source, so a run from
/// `−v` inserts exactly the negations of a run from `v`.
pub fn mirror_order(a: &OpOutput, b: &OpOutput) -> Ordering {
    fn normalized(v: &RationalVector) -> RationalVector {
        match v.iter().find(|x| !x.is_zero()) {
            Some(x) if x.is_positive() => -v,
            _ => v.clone(),
        }
    }
    a.alpha.cmp(&b.alpha).then_with(|| {
        normalized(&a.vector)
            .entries()
            .cmp(normalized(&b.vector).entries())
    })
}

fn inside(points: &[RationalVector], v: &RationalVector, mode: Mode) -> bool {
    match mode {
        Mode::Cone => v.is_zero() || crate::exactgeom::conic_combination(points, v).is_some(),
        Mode::Ball => convex_combination(points, v).is_some(),
    }
}

/// Every operation output from an extreme point of `figure` that is not in `figure`.
/// Empty iff the figure is closed, by the extreme-point reduction.
pub fn closure_check(figure: &Figure, net: &ReactionNetwork) -> Vec<Violation> {
    let mode = figure.mode();
    let extremes = extreme_filter(figure.points(), mode.hull());
    let mut out = Vec::new();
    for v in &extremes {
        if v.is_zero() {
            continue;
        }
        for (output, reaction, op, alpha) in produce(net, v, mode) {
            if !inside(&extremes, &output, mode) {
                out.push(Violation {
                    source: v.clone(),
                    reaction,
                    op,
                    alpha,
                    output,
                });
            }
        }
    }
    out
}

/// First node of `new` (in order) equal to `α·ancestor` for some ancestor on its parent chain
/// and `α > 1`; nearer ancestors are tried first.
pub fn detect_unbounded(nodes: &[DerivationNode], new: &[usize]) -> Option<Unbounded> {
    for &d in new {
        let mut cur = nodes[d].parent;
        while let Some(a) = cur {
            if let Some(alpha) = nodes[d].vector.ratio_to(&nodes[a].vector) {
                if alpha > Rational::one() {
                    return Some(Unbounded {
                        ancestor: a,
                        descendant: d,
                        alpha,
                    });
                }
            }
            cur = nodes[a].parent;
        }
    }
    None
}

/// First reaction (network order, `+Γ` before `−Γ`, `−Γ` only if reversible) lying in the cone
/// without being on an extreme ray of it.
pub fn detect_absorbed(cone: &ConeRep, net: &ReactionNetwork) -> Option<Absorbed> {
    for (i, r) in net.reactions().iter().enumerate() {
        let gamma = r.vector();
        let signs: &[i8] = if r.reversible { &[1, -1] } else { &[1] };
        for &s in signs {
            let target = if s > 0 { gamma.clone() } else { -&gamma };
            if cone.generators.iter().any(|g| g.same_ray(&target)) {
                continue;
            }
            if let Some(coeffs) = conic_member(cone, &target) {
                let witness = cone
                    .generators
                    .iter()
                    .zip(coeffs)
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(g, c)| (g.clone(), c))
                    .collect();
                return Some(Absorbed {
                    reaction: i,
                    sign: s,
                    vector: target,
                    witness,
                });
            }
        }
    }
    None
}

fn check_start(net: &ReactionNetwork, start: &RationalVector, mode: Mode) -> Result<()> {
    if start.dim() != net.n_species() {
        return Err(Error::Dimension {
            expected: net.n_species(),
            got: start.dim(),
        });
    }
    if start.is_zero() {
        return Err(Error::InvalidInput("starting vector is zero".into()));
    }
    if mode == Mode::Ball && !in_span(&net.vectors(), start) {
        return Err(Error::InvalidInput(format!(
            "starting vector {start} is not in the stoichiometric subspace"
        )));
    }
    Ok(())
}

struct Run<'a> {
    net: &'a ReactionNetwork,
    mode: Mode,
    nodes: Vec<DerivationNode>,
    figure_nodes: Vec<usize>,
    iterations: usize,
}

impl Run<'_> {
    fn points(&self) -> Vec<RationalVector> {
        self.figure_nodes
            .iter()
            .map(|&i| self.nodes[i].vector.clone())
            .collect()
    }

    fn prune(&mut self) {
        let kept = extreme_filter(&self.points(), self.mode.hull());
        let nodes = &self.nodes;
        self.figure_nodes = kept
            .iter()
            .map(|v| {
                *self
                    .figure_nodes
                    .iter()
                    .find(|&&i| &nodes[i].vector == v)
                    .expect("kept point is a figure node")
            })
            .collect();
    }

    fn figure(&self) -> Figure {
        Figure::from_points(self.mode, self.net.n_species(), self.points())
    }

    fn finish(self, certificate: Certificate, closed: bool) -> Saturation {
        let state = SaturationState {
            figure: self.figure(),
            figure_nodes: self.figure_nodes,
            nodes: self.nodes,
            iterations: self.iterations,
            closed,
        };
        Saturation { certificate, state }
    }

    /// Negative certificates that end a pass early.
    fn terminal(&self, new: &[usize]) -> Option<Certificate> {
        match self.mode {
            Mode::Ball => detect_unbounded(&self.nodes, new).map(Certificate::UnboundedRay),
            Mode::Cone => {
                let Figure::Cone(cone) = self.figure() else {
                    unreachable!()
                };
                if let Some(a) = detect_absorbed(&cone, self.net) {
                    return Some(Certificate::ReactionAbsorbed(a));
                }
                cone.line_witness()
                    .map(|(coeffs, vector)| Certificate::ContainsLine {
                        vector,
                        witness: cone
                            .generators
                            .iter()
                            .zip(coeffs)
                            .filter(|(_, c)| !c.is_zero())
                            .map(|(g, c)| (g.clone(), c))
                            .collect(),
                    })
            }
        }
    }

    /// Closed figure: audit, then require a pointed cone or a full-dimensional ball.
    fn accept(self) -> Result<Saturation> {
        let figure = self.figure();
        let violations = closure_check(&figure, self.net);
        if !violations.is_empty() {
            return Err(Error::Internal(format!(
                "closed figure fails its audit: {} violation(s), first from {}",
                violations.len(),
                violations[0].source
            )));
        }
        if self.mode == Mode::Ball && rank_of(figure.points()) != self.net.rank() {
            let reason = "closed ball does not span the stoichiometric subspace".to_string();
            return Ok(self.finish(Certificate::Inconclusive { reason }, true));
        }
        let figure = match figure {
            Figure::Cone(c) => Figure::from_points(
                Mode::Cone,
                c.ambient_dim,
                c.generators.iter().map(|g| g.primitive()).collect(),
            ),
            ball => ball,
        };
        Ok(self.finish(Certificate::FigureFound(figure), true))
    }
}

/// Grows a cone or ball from `start` under the operations, breadth-first.
///
/// Each pass applies every operation to the extreme points added in the previous pass
/// (insertion order, reactions in network order, the two outputs of a mixed region in
/// [`mirror_order`]). Outputs outside the current figure become new nodes. After a pass the
/// figure is pruned to its extremes and checked for an unbounded ray (balls), an absorbed
/// reaction or a line (cones). A pass that adds nothing closes the figure. After
/// `max_iterations` passes the figure is snapped once and checked once more.
pub fn saturate(
    net: &ReactionNetwork,
    start: &RationalVector,
    mode: Mode,
    config: &SaturationConfig,
) -> Result<Saturation> {
    check_start(net, start, mode)?;
    let mut run = Run {
        net,
        mode,
        nodes: vec![DerivationNode::root(start.clone())],
        figure_nodes: vec![0],
        iterations: 0,
    };
    let mut worklist = vec![0usize];
    while run.iterations < config.max_iterations {
        run.iterations += 1;
        let mut new = Vec::new();
        for &w in &worklist {
            let v = run.nodes[w].vector.clone();
            for (output, reaction, op, alpha) in produce(net, &v, mode) {
                if output.is_zero() || inside(&run.points(), &output, mode) {
                    continue;
                }
                run.nodes.push(DerivationNode {
                    vector: output,
                    parent: Some(w),
                    via_reaction: reaction,
                    via_operation: Some(op),
                    alpha,
                });
                let idx = run.nodes.len() - 1;
                run.figure_nodes.push(idx);
                new.push(idx);
            }
        }
        if new.is_empty() {
            return run.accept();
        }
        run.prune();
        if let Some(cert) = run.terminal(&new) {
            return Ok(run.finish(cert, false));
        }
        if run.figure_nodes.len() > config.max_figure_size {
            let reason = format!(
                "figure exceeded {} points after {} passes",
                config.max_figure_size, run.iterations
            );
            return Ok(run.finish(Certificate::Inconclusive { reason }, false));
        }
        worklist = new
            .into_iter()
            .filter(|i| run.figure_nodes.contains(i))
            .collect();
    }
    snap_and_check(run, config)
}

fn snap_and_check(mut run: Run<'_>, config: &SaturationConfig) -> Result<Saturation> {
    let mut points = run.points();
    if run.mode == Mode::Cone {
        points = points
            .iter()
            .map(|p| p.scale(&(Rational::one() / p.max_abs())))
            .collect();
    }
    let mut snapped = rational_snap(
        &points,
        config.snap_max_denominator,
        &config.snap_max_distance,
    );
    if run.mode == Mode::Ball {
        let negs: Vec<RationalVector> = snapped.iter().map(|p| -p).collect();
        snapped.extend(negs);
    }
    let snapped = extreme_filter(&snapped, run.mode.hull());
    let unsnapped_reason = format!(
        "no closed figure after {} passes, snapping did not close it",
        run.iterations
    );
    if run.mode == Mode::Ball && !snapped.iter().all(|p| in_span(&run.net.vectors(), p)) {
        return Ok(run.finish(
            Certificate::Inconclusive {
                reason: unsnapped_reason,
            },
            false,
        ));
    }
    let figure = Figure::from_points(run.mode, run.net.n_species(), snapped.clone());
    let closes = closure_check(&figure, run.net).is_empty()
        && match &figure {
            Figure::Cone(c) => c.is_pointed(),
            Figure::Ball(b) => rank_of(&b.vertices) == run.net.rank(),
        };
    if !closes {
        return Ok(run.finish(
            Certificate::Inconclusive {
                reason: unsnapped_reason,
            },
            false,
        ));
    }
    run.figure_nodes.clear();
    for p in snapped {
        run.nodes.push(DerivationNode::root(p));
        run.figure_nodes.push(run.nodes.len() - 1);
    }
    let figure = run.figure();
    Ok(run.finish(Certificate::FigureFound(figure), true))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactgeom::rat;
    use crate::netmodel::parse_network;

    fn v(xs: &[i64]) -> RationalVector {
        RationalVector::from_ints(xs)
    }

    fn ex1() -> ReactionNetwork {
        parse_network("A + B <=> C\nA <=> B\n2A <=> C").unwrap()
    }

    fn ex2() -> ReactionNetwork {
        parse_network("@species A B C D\nA <=> B + D\nB <=> C\nC <=> D\nC <=> 0").unwrap()
    }

    fn ex3() -> ReactionNetwork {
        parse_network("A + B <=> 2C\nA <=> C\nB <=> C").unwrap()
    }

    #[test]
    fn example_one_ball_is_unbounded() {
        let s = saturate(
            &ex1(),
            &v(&[-2, 0, 1]),
            Mode::Ball,
            &SaturationConfig::default(),
        )
        .unwrap();
        let Certificate::UnboundedRay(u) = &s.certificate else {
            panic!("{:?}", s.certificate)
        };
        assert_eq!(u.alpha, rat(2));
        let chain: Vec<RationalVector> = s
            .state
            .chain(u.descendant)
            .iter()
            .map(|&i| s.state.nodes[i].vector.clone())
            .collect();
        assert_eq!(
            chain,
            vec![
                v(&[-4, 0, 2]),
                v(&[-2, 2, 0]),
                v(&[0, 2, -1]),
                v(&[-2, 0, 1])
            ]
        );
        assert_eq!(s.state.nodes[u.ancestor].vector, v(&[-2, 0, 1]));
    }

    #[test]
    fn example_one_cone_absorbs_reaction() {
        let s = saturate(
            &ex1(),
            &v(&[-1, 3, -1]),
            Mode::Cone,
            &SaturationConfig::default(),
        )
        .unwrap();
        let Certificate::ReactionAbsorbed(a) = &s.certificate else {
            panic!("{:?}", s.certificate)
        };
        assert_eq!(a.reaction, 0);
        assert_eq!(a.vector, v(&[1, 1, -1]));
        let mut rays: Vec<RationalVector> = a.witness.iter().map(|(g, _)| g.primitive()).collect();
        rays.sort();
        assert_eq!(rays, vec![v(&[0, 2, -1]), v(&[2, 0, -1])]);
        let sum = a
            .witness
            .iter()
            .fold(RationalVector::zeros(3), |acc, (g, c)| acc.add_scaled(c, g));
        assert_eq!(sum, a.vector);
    }

    #[test]
    fn example_two_ball_is_unbounded() {
        let s = saturate(
            &ex2(),
            &v(&[0, 0, 1, 0]),
            Mode::Ball,
            &SaturationConfig::default(),
        )
        .unwrap();
        let Certificate::UnboundedRay(u) = &s.certificate else {
            panic!("{:?}", s.certificate)
        };
        assert_eq!(u.alpha, rat(2));
        assert_eq!(s.state.nodes[u.descendant].vector, v(&[0, 0, 2, 0]));
    }

    #[test]
    fn example_three_cone() {
        let s = saturate(
            &ex3(),
            &v(&[-2, 1, 1]),
            Mode::Cone,
            &SaturationConfig::default(),
        )
        .unwrap();
        let Certificate::FigureFound(Figure::Cone(c)) = &s.certificate else {
            panic!("{:?}", s.certificate)
        };
        assert!(c.same_cone(&ConeRep::from_ints(3, &[&[0, 1, -1], &[-1, 0, 1]])));
        assert!(s.state.closed);
    }

    #[test]
    fn example_two_seven_generator_cone_misses_a_ray() {
        let cone = ConeRep::from_ints(
            4,
            &[
                &[0, 2, 0, 0],
                &[0, 0, 2, 0],
                &[0, 0, 0, 2],
                &[1, 0, 0, 0],
                &[2, -2, 0, 0],
                &[2, 0, -2, 0],
                &[2, 0, 0, -2],
            ],
        );
        let viol = closure_check(&Figure::Cone(cone.clone()), &ex2());
        assert_eq!(viol.len(), 1);
        assert_eq!(
            (viol[0].source.clone(), viol[0].output.clone()),
            (v(&[2, 0, -2, 0]), v(&[0, 2, -2, 2]))
        );
        let s = saturate(
            &ex2(),
            &v(&[1, 0, 0, 0]),
            Mode::Cone,
            &SaturationConfig::default(),
        )
        .unwrap();
        let Certificate::FigureFound(Figure::Cone(found)) = &s.certificate else {
            panic!("{:?}", s.certificate)
        };
        let mut with_ray = cone.generators.clone();
        with_ray.push(v(&[0, 1, -1, 1]));
        assert!(found.same_cone(&ConeRep::new(4, with_ray)));
    }

    #[test]
    fn single_ray_violation() {
        let cone = ConeRep::from_ints(3, &[&[-2, 0, 1]]);
        let viol = closure_check(&Figure::Cone(cone), &ex1());
        assert_eq!(viol[0].output, v(&[0, 2, -1]));
        assert_eq!(viol[0].reaction, Some(0));
    }

    #[test]
    fn absorbed_rules() {
        let c = ConeRep::from_ints(3, &[&[0, 1, -1], &[-1, 0, 1]]);
        assert!(detect_absorbed(&c, &ex3()).is_none());
        let c = ConeRep::from_ints(2, &[&[1, 0], &[0, 1]]);
        let net = ReactionNetwork::from_columns(2, &[vec![-1, 0]], &[false]).unwrap();
        assert!(detect_absorbed(&c, &net).is_none());
    }

    #[test]
    fn unbounded_needs_ancestry_and_growth() {
        let node = |x: &[i64], parent| DerivationNode {
            parent,
            ..DerivationNode::root(v(x))
        };
        let nodes = vec![
            node(&[1, 0], None),
            node(&[0, 1], None),
            node(&[0, 2], Some(0)),
            node(&[1, 0], Some(2)),
        ];
        assert!(detect_unbounded(&nodes, &[2, 3]).is_none());
        let nodes = vec![
            node(&[1, 0], None),
            node(&[0, 1], Some(0)),
            node(&[3, 0], Some(1)),
        ];
        assert_eq!(detect_unbounded(&nodes, &[2]).unwrap().alpha, rat(3));
    }

    #[test]
    fn ball_start_outside_image_is_rejected() {
        let net = parse_network("A <=> B").unwrap();
        assert!(saturate(&net, &v(&[1, 1]), Mode::Ball, &SaturationConfig::default()).is_err());
    }

    #[test]
    fn deterministic() {
        let a = saturate(
            &ex2(),
            &v(&[1, 0, 0, 0]),
            Mode::Cone,
            &SaturationConfig::default(),
        )
        .unwrap();
        let b = saturate(
            &ex2(),
            &v(&[1, 0, 0, 0]),
            Mode::Cone,
            &SaturationConfig::default(),
        )
        .unwrap();
        assert_eq!(a, b);
    }
}
