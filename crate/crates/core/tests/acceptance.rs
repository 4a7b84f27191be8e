//! Acceptance criteria 1–8. Prints one PASS/FAIL line per criterion and exits 1 if any fails.

use conekit::builder::{
    apply_operation, closure_check, saturate, Certificate, Figure, Mode, OpTag, SaturationConfig,
};
use conekit::exactgeom::{
    dual_cone, left_kernel, rank_of, rat, ratio, BallRep, ConeRep, Rational, RationalVector,
};
use conekit::netmodel::{parse_network, transfer_dual, Reaction, ReactionNetwork};
use conekit::orchestrate::{
    analyze_monotone, analyze_nonexpansive, annotate_strength, dual_transfer, pick_starting_vector,
    AnalysisConfig, AnalysisReport, Annotation, Verdict,
};
use conekit::regions::{classify, is_concordant, EpsilonOracle, RegionClass};
use num::{Signed, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
use std::collections::{BTreeSet, HashMap, HashSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::time::{Duration, Instant};

const ONE_SECOND: Duration = Duration::from_secs(1);
const FIVE_SECONDS: Duration = Duration::from_secs(5);
const FIVE_MINUTES: Duration = Duration::from_secs(300);

const SCALE_PAIRS: u32 = 1000;
const INTERIOR_SAMPLES: u32 = 100;
const DUAL_CONES: u32 = 100;
const DUAL_MAX_DIM: usize = 4;
const DUAL_MAX_GENERATORS: usize = 8;
const GRID_BOUND: i64 = 2;
const GRID_MAX_SPECIES: usize = 3;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn fixture(name: &str) -> ReactionNetwork {
    let text =
        std::fs::read_to_string(fixture_path(name)).unwrap_or_else(|e| panic!("{name}: {e}"));
    parse_network(&text).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn v(xs: &[i64]) -> RationalVector {
    RationalVector::from_ints(xs)
}

fn cone(dim: usize, gens: &[&[i64]]) -> ConeRep {
    ConeRep::from_ints(dim, gens)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(label: &str, elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed < limit, || {
        format!("{label} took {elapsed:.2?}, limit {limit:?}")
    })
}

fn points(ps: &[RationalVector]) -> String {
    ps.iter()
        .map(|p| p.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn chain_vectors(r: &AnalysisReport, node: usize) -> Vec<RationalVector> {
    let st = r.certificate_state().expect("certificate run");
    let mut ids = st.chain(node);
    ids.reverse();
    ids.into_iter()
        .map(|i| st.nodes[i].vector.clone())
        .collect()
}

fn cfg_with_start(start: &[i64]) -> AnalysisConfig {
    AnalysisConfig {
        start_override: Some(v(start)),
        ..AnalysisConfig::default()
    }
}

fn rays(ps: &[RationalVector]) -> BTreeSet<String> {
    ps.iter().map(|p| p.primitive().to_string()).collect()
}

fn criterion_1() -> Check {
    let net = fixture("ex1.crn");
    let cfg = AnalysisConfig::default();
    let t = Instant::now();
    let ne = analyze_nonexpansive(&net, &cfg).map_err(|e| e.to_string())?;
    let mono = analyze_monotone(&net, &cfg).map_err(|e| e.to_string())?;
    within("both analyses", t.elapsed(), ONE_SECOND)?;

    ensure(ne.verdict == Verdict::No, || {
        format!("non-expansive verdict {}", ne.verdict)
    })?;
    let Certificate::UnboundedRay(u) = &ne.certificate else {
        return Err(format!(
            "non-expansive certificate {}",
            ne.certificate.kind()
        ));
    };
    ensure(u.alpha == rat(2), || format!("α = {}", u.alpha))?;
    let chain = chain_vectors(&ne, u.descendant);
    let want = vec![
        v(&[-2, 0, 1]),
        v(&[0, 2, -1]),
        v(&[-2, 2, 0]),
        v(&[-4, 0, 2]),
    ];
    ensure(chain == want, || format!("chain {}", points(&chain)))?;
    let st = ne.certificate_state().unwrap();
    ensure(st.nodes[u.ancestor].vector == want[0], || {
        "ancestor is not the chain head".into()
    })?;

    ensure(mono.verdict == Verdict::No, || {
        format!("monotone verdict {}", mono.verdict)
    })?;
    let Certificate::ReactionAbsorbed(a) = &mono.certificate else {
        return Err(format!("monotone certificate {}", mono.certificate.kind()));
    };
    let gamma = net.reaction(a.reaction).vector();
    ensure(gamma == v(&[-1, -1, 1]), || {
        format!("absorbed reaction {gamma}")
    })?;
    ensure(a.vector == gamma.scale(&rat(a.sign.into())), || {
        "absorbed vector is not ±Γ".into()
    })?;
    let mut sum = RationalVector::zeros(3);
    for (g, c) in &a.witness {
        ensure(c.is_positive(), || format!("coefficient {c}"))?;
        sum = sum.add_scaled(c, g);
    }
    ensure(sum == a.vector, || format!("combination sums to {sum}"))?;
    let gens: Vec<RationalVector> = a.witness.iter().map(|(g, _)| g.clone()).collect();
    let want_gens = [v(&[4, 0, -2]), v(&[0, 4, -2])];
    ensure(rays(&gens) == rays(&want_gens), || {
        format!("witness generators {}", points(&gens))
    })?;
    let displayed = want_gens[0]
        .scale(&ratio(1, 4))
        .add_scaled(&ratio(1, 4), &want_gens[1]);
    ensure(
        displayed == v(&[1, 1, -1]) && a.vector.same_ray(&displayed),
        || "displayed identity".into(),
    )?;
    Ok(format!(
        "α=2 chain {}; {} = {}",
        points(&chain),
        a.vector,
        points(&gens)
    ))
}

fn criterion_2() -> Check {
    let net = fixture("ex2.crn");
    let t = Instant::now();
    let ne_default =
        analyze_nonexpansive(&net, &AnalysisConfig::default()).map_err(|e| e.to_string())?;
    let ne =
        analyze_nonexpansive(&net, &cfg_with_start(&[0, 0, 1, 0])).map_err(|e| e.to_string())?;
    let mono = analyze_monotone(&net, &AnalysisConfig::default()).map_err(|e| e.to_string())?;
    within("analyses", t.elapsed(), FIVE_SECONDS)?;

    ensure(ne_default.verdict == Verdict::No, || {
        format!("default-start verdict {}", ne_default.verdict)
    })?;
    ensure(ne.verdict == Verdict::No, || {
        format!("non-expansive verdict {}", ne.verdict)
    })?;
    let Certificate::UnboundedRay(u) = &ne.certificate else {
        return Err(format!(
            "non-expansive certificate {}",
            ne.certificate.kind()
        ));
    };
    ensure(u.alpha == rat(2), || format!("α = {}", u.alpha))?;
    let end = ne.certificate_state().unwrap().nodes[u.descendant]
        .vector
        .clone();
    ensure(end == v(&[0, 0, 2, 0]), || format!("ray ends at {end}"))?;

    ensure(mono.verdict == Verdict::Yes, || {
        format!("monotone verdict {}", mono.verdict)
    })?;
    let Some(Figure::Cone(k)) = mono.figure() else {
        return Err("no cone".into());
    };
    let displayed = cone(
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
    if !k.same_cone(&displayed) {
        let violations = closure_check(&Figure::Cone(displayed.clone()), &net);
        let extra: Vec<RationalVector> = k
            .generators
            .iter()
            .filter(|g| !displayed.contains(g))
            .cloned()
            .collect();
        return Err(format!(
            "cone {} differs from the displayed cone; found generators outside it: {}; displayed cone has {} closure violation(s), first {}",
            points(&k.generators),
            points(&extra),
            violations.len(),
            violations.first().map(|x| format!("{} -> {}", x.source, x.output)).unwrap_or_default()
        ));
    }
    Ok(format!(
        "ray α=2 ending {end}; cone {}",
        points(&k.generators)
    ))
}

fn criterion_3() -> Check {
    let net = fixture("ex3.crn");
    let t = Instant::now();
    let mono = analyze_monotone(&net, &AnalysisConfig::default()).map_err(|e| e.to_string())?;
    within("analysis", t.elapsed(), ONE_SECOND)?;
    ensure(mono.verdict == Verdict::Yes, || {
        format!("verdict {}", mono.verdict)
    })?;
    let Some(Figure::Cone(k)) = mono.figure() else {
        return Err("no cone".into());
    };
    ensure(k.same_cone(&cone(3, &[&[0, 1, -1], &[-1, 0, 1]])), || {
        format!("cone {}", points(&k.generators))
    })?;
    let start = mono.start_vector.clone().ok_or("no start vector")?;
    let on_ray = start
        .ratio_to(&v(&[-2, 1, 1]))
        .is_some_and(|c| c.is_positive());
    ensure(on_ray, || format!("start {start}"))?;
    Ok(format!("start {start}; cone {}", points(&k.generators)))
}

fn octahedron() -> BallRep {
    BallRep::from_ints(
        3,
        &[
            &[-1, 0, 0],
            &[1, 0, 0],
            &[0, 1, 0],
            &[0, -1, 0],
            &[0, 0, -1],
            &[0, 0, 1],
        ],
    )
}

fn criterion_4() -> Check {
    let net = fixture("duality.crn");
    let default =
        analyze_nonexpansive(&net, &AnalysisConfig::default()).map_err(|e| e.to_string())?;
    ensure(default.verdict == Verdict::Yes, || {
        format!("default-start verdict {}", default.verdict)
    })?;
    let ne = analyze_nonexpansive(&net, &cfg_with_start(&[-1, 0, 0])).map_err(|e| e.to_string())?;
    ensure(ne.verdict == Verdict::Yes, || {
        format!("verdict {}", ne.verdict)
    })?;
    let Some(Figure::Ball(b)) = ne.figure() else {
        return Err("no ball".into());
    };
    ensure(b.same_hull(&octahedron()), || {
        format!("ball {}", points(&b.vertices))
    })?;

    let report = tempfile_path("duality_report.json");
    let mut out = Vec::new();
    let mut err = Vec::new();
    let net_path = fixture_path("duality.crn").to_string_lossy().into_owned();
    let code = conekit::cli::run(
        [
            "conekit",
            "analyze",
            &net_path,
            "--non-expansive",
            "--start",
            "[-1,0,0]",
            "--output",
            "json",
        ],
        &mut out,
        &mut err,
    );
    ensure(code == 0, || {
        format!("analyze exit {code}: {}", String::from_utf8_lossy(&err))
    })?;
    std::fs::write(&report, &out).map_err(|e| e.to_string())?;
    let mut out = Vec::new();
    let code = conekit::cli::run(
        [
            "conekit",
            "dualize",
            &net_path,
            "--cone",
            &report.to_string_lossy(),
            "--output",
            "json",
        ],
        &mut out,
        &mut err,
    );
    let _ = std::fs::remove_file(&report);
    ensure(code == 0, || {
        format!("dualize exit {code}: {}", String::from_utf8_lossy(&err))
    })?;
    let json: serde_json::Value = serde_json::from_slice(&out).map_err(|e| e.to_string())?;
    let transferred: Figure =
        serde_json::from_value(json["transferred"].clone()).map_err(|e| e.to_string())?;
    let got: BTreeSet<String> = transferred.points().iter().map(|p| p.to_string()).collect();
    let displayed = [
        [0, -2, 0, 0],
        [-2, 0, 0, 2],
        [2, 0, 2, 0],
        [0, 2, 2, 2],
        [0, -2, -2, -2],
        [-2, 0, -2, 0],
        [2, 0, 0, -2],
        [0, 2, 0, 0],
    ];
    let want: BTreeSet<String> = displayed.iter().map(|c| v(c).to_string()).collect();
    ensure(got == want, || {
        format!("ΓᵀB* columns {}", points(transferred.points()))
    })?;
    ensure(json["violations"] == 0, || {
        format!("verification: {} violation(s)", json["violations"])
    })?;

    let t = dual_transfer(&net, &Figure::Ball(b.clone())).map_err(|e| e.to_string())?;
    ensure(t.verification.is_empty(), || {
        "library verification failed".into()
    })?;
    ensure(closure_check(&transferred, &t.dual).is_empty(), || {
        "transferred figure is not closed".into()
    })?;
    Ok(format!(
        "octahedron; ΓᵀB* = {}",
        points(transferred.points())
    ))
}

fn tempfile_path(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("conekit_acceptance_{}_{name}", std::process::id()))
}

fn criterion_5() -> Check {
    let add1 = fixture("additional1.crn");
    let (add1_dual, _) = transfer_dual(&add1).map_err(|e| e.to_string())?;
    let cases: Vec<(&str, ReactionNetwork, ConeRep)> = vec![
        (
            "additional 1 K",
            add1.clone(),
            cone(3, &[&[-3, 0, 5], &[0, 11, 7], &[1, 0, 0], &[4, -5, 0]]),
        ),
        (
            "additional 1 alternative",
            add1_dual.clone(),
            cone(
                4,
                &[
                    &[-539, 539, 0, -157],
                    &[0, 0, 1, 0],
                    &[0, 0, -49, -12],
                    &[11, -11, 0, 1],
                    &[6, -6, -7, 0],
                ],
            ),
        ),
        (
            "additional 1 ΓᵀK*",
            add1_dual.clone(),
            cone(
                4,
                &[
                    &[7, -7, 0, 2],
                    &[0, 0, 63, 15],
                    &[-715, 715, 574, -65],
                    &[0, 0, -1, 0],
                ],
            ),
        ),
        (
            "additional 2",
            fixture("additional2.crn"),
            cone(
                4,
                &[
                    &[-2, 1, 1, 0],
                    &[-1, 0, 0, -2],
                    &[-1, 0, 1, 1],
                    &[-1, 1, 0, 1],
                    &[0, -1, 0, -1],
                    &[0, 0, -1, -1],
                    &[0, 0, 0, 2],
                    &[1, -1, -1, 0],
                ],
            ),
        ),
        (
            "additional 3",
            fixture("additional3.crn"),
            cone(3, &[&[-1, 0, 0], &[0, -1, 0], &[0, 1, -1], &[1, 0, -1]]),
        ),
        (
            "additional 4",
            fixture("additional4.crn"),
            cone(3, &[&[-1, 0, 0], &[0, -2, 1], &[0, 1, -1], &[2, 0, -1]]),
        ),
    ];
    let mut slowest = Duration::ZERO;
    for (label, net, k) in &cases {
        let t = Instant::now();
        let violations = closure_check(&Figure::Cone(k.clone()), net);
        let elapsed = t.elapsed();
        within(label, elapsed, FIVE_SECONDS)?;
        slowest = slowest.max(elapsed);
        ensure(violations.is_empty(), || {
            let x = &violations[0];
            format!(
                "{label}: {} violation(s), first {} -> {}",
                violations.len(),
                x.source,
                x.output
            )
        })?;
    }
    let t = dual_transfer(&add1, &Figure::Cone(cases[0].2.clone())).map_err(|e| e.to_string())?;
    let Figure::Cone(ours) = &t.transferred else {
        return Err("transfer produced a ball".into());
    };
    ensure(
        rays(&ours.generators) == rays(&cases[2].2.generators),
        || format!("transferred ΓᵀK* {}", points(&ours.generators)),
    )?;
    Ok(format!(
        "{} cones closed, slowest {slowest:.2?}",
        cases.len()
    ))
}

fn runner(cases: u32) -> TestRunner {
    TestRunner::new_with_rng(
        Config {
            cases,
            failure_persistence: None,
            ..Config::default()
        },
        TestRng::deterministic_rng(RngAlgorithm::ChaCha),
    )
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(p, q)| ratio(p, q))
}

fn random_reaction(n: usize) -> impl Strategy<Value = Reaction> {
    (prop::collection::vec(-2i64..=2, n), any::<bool>())
        .prop_filter("nonzero reaction vector", |(g, _)| {
            g.iter().any(|&x| x != 0)
        })
        .prop_map(|(g, rev)| Reaction::from_vector(&g, rev))
}

fn random_pair() -> impl Strategy<Value = (RationalVector, Reaction, Rational)> {
    (1usize..=4).prop_flat_map(|n| {
        (
            prop::collection::vec(small_rational(), n).prop_map(RationalVector::new),
            random_reaction(n),
            (1i64..=9, 1i64..=5).prop_map(|(p, q)| ratio(p, q)),
        )
    })
}

fn has_zero_kinetic(out: &RationalVector, r: &Reaction) -> bool {
    r.kinetic_coords().iter().any(|&j| out[j].is_zero())
}

fn property_scale_equivariance() -> Result<(), String> {
    runner(SCALE_PAIRS)
        .run(&random_pair(), |(x, r, c)| {
            let base = apply_operation(&x, &r);
            let scaled = apply_operation(&x.scale(&c), &r);
            prop_assert_eq!(base.len(), scaled.len());
            for (a, b) in base.iter().zip(&scaled) {
                prop_assert_eq!(a.op, b.op);
                prop_assert_eq!(&a.vector.scale(&c), &b.vector);
                prop_assert_eq!(&(&a.alpha * &c), &b.alpha);
            }
            prop_assert_eq!(classify(&x, &r), classify(&x.scale(&c), &r));
            Ok(())
        })
        .map_err(|e| format!("scale equivariance: {e}"))
}

fn property_minimality(
    runs: &[(String, ReactionNetwork, AnalysisReport)],
) -> Result<usize, String> {
    runner(SCALE_PAIRS)
        .run(&random_pair(), |(x, r, _)| {
            for o in apply_operation(&x, &r) {
                prop_assert!(
                    has_zero_kinetic(&o.vector, &r),
                    "{} from {} has no zero kinetic coordinate",
                    o.vector,
                    x
                );
            }
            Ok(())
        })
        .map_err(|e| format!("minimality: {e}"))?;
    let mut checked = 0;
    for (name, net, report) in runs {
        for run in &report.runs {
            for node in &run.saturation.state.nodes {
                let (Some(r), Some(op)) = (node.via_reaction, node.via_operation) else {
                    continue;
                };
                if op == OpTag::Op4 {
                    continue;
                }
                ensure(has_zero_kinetic(&node.vector, net.reaction(r)), || {
                    format!(
                        "minimality: {name} node {} via reaction {} has no zero kinetic coordinate",
                        node.vector,
                        r + 1
                    )
                })?;
                checked += 1;
            }
        }
    }
    Ok(checked)
}

fn interior_point(points: &[RationalVector], mode: Mode, weights: &[i64]) -> RationalVector {
    let total: i64 = weights.iter().sum();
    let mut p = RationalVector::zeros(points[0].dim());
    for (g, &w) in points.iter().zip(weights) {
        let c = match mode {
            Mode::Cone => rat(w),
            Mode::Ball => ratio(w, total),
        };
        p = p.add_scaled(&c, g);
    }
    p
}

fn property_closure(runs: &[(String, ReactionNetwork, AnalysisReport)]) -> Result<usize, String> {
    let mut figures = 0;
    for (name, net, report) in runs {
        let Some(figure) = report.figure() else {
            continue;
        };
        figures += 1;
        let pts = figure.points().to_vec();
        let mode = figure.mode();
        runner(INTERIOR_SAMPLES)
            .run(&prop::collection::vec(1i64..=20, pts.len()), |w| {
                let p = interior_point(&pts, mode, &w);
                for r in net.reactions() {
                    for o in apply_operation(&p, r) {
                        prop_assert!(
                            figure.contains(&o.vector),
                            "{} -> {} (op {}) leaves the figure",
                            p,
                            o.vector,
                            o.op
                        );
                    }
                }
                if mode == Mode::Ball {
                    prop_assert!(figure.contains(&-&p), "-{} leaves the ball", p);
                }
                Ok(())
            })
            .map_err(|e| format!("closure on {name}: {e}"))?;
    }
    Ok(figures)
}

fn random_pointed_cone() -> impl Strategy<Value = ConeRep> {
    (1usize..=DUAL_MAX_DIM)
        .prop_flat_map(|n| {
            (
                Just(n),
                prop::collection::vec(prop::collection::vec(-3i64..=3, n), n..=DUAL_MAX_GENERATORS),
            )
        })
        .prop_map(|(n, gens)| {
            let gens = gens
                .into_iter()
                .map(|g| {
                    let s: i64 = g.iter().sum();
                    if s < 0 {
                        g.iter().map(|x| -x).collect()
                    } else {
                        g
                    }
                })
                .filter(|g| g.iter().sum::<i64>() > 0)
                .map(|g| v(&g))
                .collect();
            ConeRep::new(n, gens)
        })
        .prop_filter("full-dimensional", |k| {
            !k.generators.is_empty() && rank_of(&k.generators) == k.ambient_dim
        })
}

fn property_double_dual() -> Result<(), String> {
    runner(DUAL_CONES)
        .run(&random_pointed_cone(), |k| {
            prop_assert!(k.is_pointed());
            let back = dual_cone(&dual_cone(&k));
            prop_assert!(
                back.same_cone(&k),
                "{} vs {}",
                points(&back.generators),
                points(&k.generators)
            );
            Ok(())
        })
        .map_err(|e| format!("double dual: {e}"))
}

fn mirrored(op: OpTag) -> OpTag {
    match op {
        OpTag::Op1 => OpTag::Op2,
        OpTag::Op2 => OpTag::Op1,
        OpTag::Op3a => OpTag::Op3b,
        OpTag::Op3b => OpTag::Op3a,
        OpTag::Op4 => OpTag::Op4,
    }
}

type NodeKey = (
    String,
    Option<String>,
    Option<usize>,
    Option<String>,
    Option<String>,
);

fn node_keys(s: &conekit::builder::SaturationState, negate: bool) -> Vec<NodeKey> {
    let sign = |x: &RationalVector| {
        if negate {
            (-x).to_string()
        } else {
            x.to_string()
        }
    };
    let mut keys: Vec<NodeKey> = s
        .nodes
        .iter()
        .map(|n| {
            (
                sign(&n.vector),
                n.parent.map(|p| sign(&s.nodes[p].vector)),
                n.via_reaction,
                n.via_operation
                    .map(|o| if negate { mirrored(o) } else { o }.to_string()),
                n.alpha.as_ref().map(|a| a.to_string()),
            )
        })
        .collect();
    keys.sort();
    keys
}

fn property_mirror() -> Result<usize, String> {
    let config = SaturationConfig::default();
    let mut compared = 0;
    for name in [
        "ex1.crn",
        "ex2.crn",
        "ex3.crn",
        "additional1.crn",
        "additional3.crn",
        "additional4.crn",
        "disconnected.crn",
    ] {
        let net = fixture(name);
        let Some(choice) =
            pick_starting_vector(&net, &AnalysisConfig::default()).map_err(|e| e.to_string())?
        else {
            continue;
        };
        let plus =
            saturate(&net, &choice.vector, Mode::Cone, &config).map_err(|e| e.to_string())?;
        let minus =
            saturate(&net, &-&choice.vector, Mode::Cone, &config).map_err(|e| e.to_string())?;
        ensure(
            node_keys(&plus.state, true) == node_keys(&minus.state, false),
            || format!("mirror: {name} −v trace differs from the negated +v trace"),
        )?;
        ensure(plus.state.iterations == minus.state.iterations, || {
            format!("mirror: {name} pass counts differ")
        })?;
        compared += 1;
    }
    Ok(compared)
}

fn fixture_runs() -> Result<Vec<(String, ReactionNetwork, AnalysisReport)>, String> {
    let cfg = AnalysisConfig::default();
    let mut out = Vec::new();
    for name in [
        "ex1.crn",
        "ex2.crn",
        "ex3.crn",
        "duality.crn",
        "additional1.crn",
        "additional3.crn",
        "additional4.crn",
        "disconnected.crn",
    ] {
        let net = fixture(name);
        for r in [
            analyze_nonexpansive(&net, &cfg),
            analyze_monotone(&net, &cfg),
        ] {
            let r = r.map_err(|e| format!("{name}: {e}"))?;
            out.push((name.to_string(), net.clone(), r));
        }
    }
    Ok(out)
}

fn criterion_6() -> Check {
    property_scale_equivariance()?;
    let runs = fixture_runs()?;
    let nodes = property_minimality(&runs)?;
    let figures = property_closure(&runs)?;
    property_double_dual()?;
    let mirrors = property_mirror()?;
    Ok(format!(
        "{SCALE_PAIRS} scaled pairs; {nodes} fixture nodes minimal; {figures} figures closed on {INTERIOR_SAMPLES} interior points; {DUAL_CONES} double duals; {mirrors} mirrored traces"
    ))
}

fn annotations(
    net: &ReactionNetwork,
    r: conekit::Result<AnalysisReport>,
) -> Result<BTreeSet<Annotation>, String> {
    Ok(annotate_strength(r.map_err(|e| e.to_string())?, net).annotations)
}

fn criterion_7() -> Check {
    let cfg = AnalysisConfig::default();
    for name in ["ex2.crn", "ex3.crn"] {
        let net = fixture(name);
        let a = annotations(&net, analyze_monotone(&net, &cfg))?;
        ensure(a.contains(&Annotation::StronglyMonotone), || {
            format!("{name} monotone annotations {a:?}")
        })?;
    }
    let net = fixture("duality.crn");
    let a = annotations(&net, analyze_nonexpansive(&net, &cfg))?;
    ensure(
        a.contains(&Annotation::WeaklyContractive) && a.contains(&Annotation::Concordant),
        || format!("duality non-expansive annotations {a:?}"),
    )?;
    let net = parse_network("A <=> B\nC <=> D").map_err(|e| e.to_string())?;
    for r in [
        analyze_nonexpansive(&net, &cfg),
        analyze_monotone(&net, &cfg),
    ] {
        let a = annotations(&net, r)?;
        ensure(a.is_empty(), || format!("A⇔B, C⇔D annotations {a:?}"))?;
    }
    Ok("strongly-monotone on examples 2 and 3; weakly-contractive and concordant on the duality example; none on A⇔B, C⇔D".into())
}

/// Nonzero reaction vectors in `{−b..b}ⁿ`, each irreversible and, oriented with a negative
/// leading entry, reversible.
fn reaction_types(n: usize) -> Vec<(Vec<i64>, bool)> {
    let side = (2 * GRID_BOUND + 1) as usize;
    let mut out = Vec::new();
    for k in 0..side.pow(n as u32) {
        let g = grid_point(n, k);
        if let Some(&lead) = g.iter().find(|&&x| x != 0) {
            out.push((g.clone(), false));
            if lead < 0 {
                out.push((g, true));
            }
        }
    }
    out
}

fn grid_point(n: usize, mut k: usize) -> Vec<i64> {
    let side = (2 * GRID_BOUND + 1) as usize;
    (0..n)
        .map(|_| {
            let x = (k % side) as i64 - GRID_BOUND;
            k /= side;
            x
        })
        .collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

fn combinations(m: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            cur.push(i);
            rec(i + 1, m, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, m, k, &mut Vec::new(), &mut out);
    out
}

/// One reaction set per orbit of species relabelling.
fn canonical_sets(types: &[(Vec<i64>, bool)], n: usize, k: usize) -> Vec<Vec<usize>> {
    let index: HashMap<&(Vec<i64>, bool), usize> =
        types.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let perms = permutations(n);
    let relabel: Vec<Vec<usize>> = perms
        .iter()
        .map(|p| {
            types
                .iter()
                .map(|(g, rev)| {
                    let mut h: Vec<i64> = p.iter().map(|&j| g[j]).collect();
                    if *rev && h.iter().find(|&&x| x != 0).is_some_and(|&x| x > 0) {
                        h.iter_mut().for_each(|x| *x = -*x);
                    }
                    index[&(h, *rev)]
                })
                .collect()
        })
        .collect();
    combinations(types.len(), k)
        .into_iter()
        .filter(|set| {
            relabel.iter().all(|map| {
                let mut image: Vec<usize> = set.iter().map(|&i| map[i]).collect();
                image.sort_unstable();
                image >= *set
            })
        })
        .collect()
}

/// A nonzero integer `v ∈ {−b..b}ⁿ ∩ Im(Γ)` in `Z_Γ`, trying one `v` per class vector.
fn grid_witness(net: &ReactionNetwork) -> Option<RationalVector> {
    let n = net.n_species();
    let cokernel = left_kernel(&net.stoichiometric_matrix());
    let mut oracle = EpsilonOracle::new(net);
    let mut seen: HashSet<Vec<RegionClass>> = HashSet::new();
    let side = (2 * GRID_BOUND + 1) as usize;
    for k in 0..side.pow(n as u32) {
        let g = grid_point(n, k);
        if g.iter().all(|&x| x == 0) {
            continue;
        }
        let x = v(&g);
        if !cokernel.iter().all(|c| c.dot(&x).is_zero()) {
            continue;
        }
        let tags: Vec<RegionClass> = net.reactions().iter().map(|r| classify(&x, r)).collect();
        if seen.insert(tags) && oracle.membership(&x).is_some() {
            return Some(x);
        }
    }
    None
}

fn criterion_8() -> Check {
    let t = Instant::now();
    let (mut networks, mut discordant, mut grid_found) = (0usize, 0usize, 0usize);
    for n in 1..=GRID_MAX_SPECIES {
        let types = reaction_types(n);
        for k in 2..=3 {
            for set in canonical_sets(&types, n, k) {
                let reactions = set
                    .iter()
                    .map(|&i| Reaction::from_vector(&types[i].0, types[i].1))
                    .collect();
                let Ok(net) =
                    ReactionNetwork::new(conekit::netmodel::default_species_names(n), reactions)
                else {
                    continue;
                };
                networks += 1;
                let concordant = is_concordant(&net).map_err(|e| e.to_string())?;
                if !concordant {
                    discordant += 1;
                }
                if let Some(w) = grid_witness(&net) {
                    grid_found += 1;
                    ensure(!concordant, || {
                        format!(
                            "{} is reported concordant but {w} ∈ Z_Γ ∩ Im(Γ)",
                            net.render()
                        )
                    })?;
                }
            }
        }
    }
    within("sweep", t.elapsed(), FIVE_MINUTES)?;
    Ok(format!(
        "{networks} networks, {discordant} discordant, {grid_found} grid witnesses all confirmed, {:.1?}",
        t.elapsed()
    ))
}

fn main() {
    let criteria: [Criterion; 8] = [
        (
            "example 1 non-expansive and monotone certificates",
            criterion_1,
        ),
        ("example 2 ray and cone", criterion_2),
        ("example 3 cone and start vector", criterion_3),
        ("duality octahedron and transferred ball", criterion_4),
        ("additional example cones closed", criterion_5),
        ("property suite", criterion_6),
        ("strength annotations", criterion_7),
        ("concordance grid oracle agreement", criterion_8),
    ];
    let only: Option<usize> = std::env::args().skip(1).find_map(|a| a.parse().ok());
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        if only.is_some_and(|o| o != i + 1) {
            continue;
        }
        let t = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let elapsed = t.elapsed();
        match outcome {
            Ok(detail) => println!("PASS {}: {name} ({elapsed:.2?}): {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {}: {name} ({elapsed:.2?}): {detail}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
