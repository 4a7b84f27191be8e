//! Command-line front end. [`run`] takes the argument list and output streams so it can be
//! driven from tests; the binary only forwards `std::env::args`.
//!
//! Exit status: 0 when every requested verdict is determinate, 2 when one is inconclusive,
//! 1 on input errors.

mod suite;
mod text;

use crate::builder::{closure_check, Figure, Mode, SaturationConfig};
use crate::exactgeom::{parse_rational, parse_vector, ConeRep, Rational, RationalVector};
use crate::netmodel::{parse_network, ReactionNetwork};
use crate::orchestrate::{
    analyze_monotone, analyze_nonexpansive, annotate_strength, dual_transfer, grow_candidates,
    grow_each, report_json, AnalysisConfig, AnalysisReport, NetworkJson, Question, ReportJson,
    Verdict,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num::Zero;
use serde::Serialize;
use std::io::Write;
use std::path::{Path, PathBuf};

pub const EXIT_DETERMINATE: i32 = 0;
pub const EXIT_INPUT_ERROR: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "conekit",
    version,
    about = "Monotonicity and non-expansivity of reaction networks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide non-expansivity and/or monotonicity of a network file.
    Analyze(AnalyzeArgs),
    /// Move a certified cone or ball to the dual network.
    Dualize(DualizeArgs),
    /// Greedily add reactions to a monotone seed network while it stays monotone.
    Grow(GrowArgs),
    /// Check every `.crn` file in a directory against its `# expect` lines.
    Suite(SuiteArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Output {
    Text,
    Json,
}

#[derive(Args, Debug, Clone)]
struct SaturationFlags {
    /// Saturation passes before snapping.
    #[arg(long, default_value_t = 50)]
    max_iterations: usize,
    /// Largest denominator tried when snapping.
    #[arg(long, default_value_t = 12)]
    snap_denominator: u64,
    /// Snapping distance as p/q.
    #[arg(long, default_value = "1/1000000")]
    snap_distance: String,
    /// Abandon a run once its figure has more extreme points than this.
    #[arg(long, default_value_t = 256)]
    max_figure_size: usize,
}

#[derive(Args, Debug)]
#[group(multiple = false)]
struct QuestionFlags {
    #[arg(long)]
    monotone: bool,
    #[arg(long)]
    non_expansive: bool,
    /// Both questions (the default).
    #[arg(long)]
    both: bool,
}

#[derive(Args, Debug)]
struct AnalyzeArgs {
    path: PathBuf,
    #[command(flatten)]
    questions: QuestionFlags,
    #[arg(long, value_enum, default_value_t = Output::Text)]
    output: Output,
    #[command(flatten)]
    saturation: SaturationFlags,
    /// Starting vector `[p/q,...]` replacing the automatic choice.
    #[arg(long, allow_hyphen_values = true)]
    start: Option<String>,
    /// Also search full-rank subnetworks when picking a monotonicity start.
    #[arg(long)]
    subnetwork_search: bool,
}

#[derive(Args, Debug)]
struct DualizeArgs {
    path: PathBuf,
    /// JSON file holding the cone or ball: a figure object, a bare array of generator columns
    /// (read as a cone) or the output of `analyze --output json`.
    #[arg(long)]
    cone: PathBuf,
    #[arg(long, value_enum, default_value_t = Output::Text)]
    output: Output,
}

#[derive(Args, Debug)]
struct GrowArgs {
    path: PathBuf,
    /// Coefficient range `a..b` for candidate reaction vectors.
    #[arg(long, allow_hyphen_values = true)]
    range: String,
    /// Stop after this many accepted extensions.
    #[arg(long)]
    limit: Option<usize>,
    #[arg(long, value_enum, default_value_t = Output::Text)]
    output: Output,
    #[command(flatten)]
    saturation: SaturationFlags,
}

#[derive(Args, Debug)]
struct SuiteArgs {
    dir: PathBuf,
    #[command(flatten)]
    saturation: SaturationFlags,
}

/// Runs the command line `args` (program name first).
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INPUT_ERROR
            } else {
                EXIT_DETERMINATE
            };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let result = match cli.command {
        Command::Analyze(a) => cmd_analyze(&a, out),
        Command::Dualize(a) => cmd_dualize(&a, out),
        Command::Grow(a) => cmd_grow(&a, out, err),
        Command::Suite(a) => suite::cmd_suite(&a.dir, &a.saturation, out),
    };
    match result {
        Ok(code) => code,
        Err(message) => {
            let _ = writeln!(err, "error: {message}");
            EXIT_INPUT_ERROR
        }
    }
}

type CmdResult = std::result::Result<i32, String>;

fn read_file(path: &Path) -> std::result::Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| match e.kind() {
        std::io::ErrorKind::NotFound => format!("no such file: {}", path.display()),
        _ => format!("{}: {e}", path.display()),
    })
}

pub(crate) fn load_network(path: &Path) -> std::result::Result<ReactionNetwork, String> {
    let text = read_file(path)?;
    parse_network(&text).map_err(|e| format!("{}: {e}", path.display()))
}

impl SaturationFlags {
    fn config(&self) -> std::result::Result<SaturationConfig, String> {
        let snap_max_distance: Rational = parse_rational(&self.snap_distance)
            .ok_or_else(|| format!("invalid --snap-distance {:?}", self.snap_distance))?;
        if snap_max_distance <= Rational::zero() {
            return Err("--snap-distance must be positive".into());
        }
        if self.max_iterations == 0 || self.snap_denominator == 0 || self.max_figure_size == 0 {
            return Err(
                "--max-iterations, --snap-denominator and --max-figure-size must be positive"
                    .into(),
            );
        }
        Ok(SaturationConfig {
            max_iterations: self.max_iterations,
            snap_max_denominator: self.snap_denominator,
            snap_max_distance,
            max_figure_size: self.max_figure_size,
        })
    }
}

fn exit_for(verdicts: impl IntoIterator<Item = Verdict>) -> i32 {
    if verdicts.into_iter().all(Verdict::is_determinate) {
        EXIT_DETERMINATE
    } else {
        EXIT_INCONCLUSIVE
    }
}

pub(crate) fn analyze_question(
    net: &ReactionNetwork,
    question: Question,
    config: &AnalysisConfig,
) -> crate::Result<AnalysisReport> {
    let report = match question {
        Question::NonExpansive => analyze_nonexpansive(net, config)?,
        Question::Monotone => analyze_monotone(net, config)?,
    };
    Ok(annotate_strength(report, net))
}

fn cmd_analyze(a: &AnalyzeArgs, out: &mut dyn Write) -> CmdResult {
    let net = load_network(&a.path)?;
    let mut config = AnalysisConfig {
        saturation: a.saturation.config()?,
        ..AnalysisConfig::default()
    };
    config.subnetwork_search = a.subnetwork_search;
    if let Some(s) = &a.start {
        let v = parse_vector(s).ok_or_else(|| format!("invalid --start {s:?}"))?;
        if v.dim() != net.n_species() {
            return Err(format!(
                "--start has {} entries, the network has {} species",
                v.dim(),
                net.n_species()
            ));
        }
        config.start_override = Some(v);
    }
    let q = &a.questions;
    let questions: Vec<Question> = match (q.monotone, q.non_expansive) {
        (true, _) => vec![Question::Monotone],
        (_, true) => vec![Question::NonExpansive],
        _ => vec![Question::NonExpansive, Question::Monotone],
    };
    // Independent questions run concurrently; output keeps question order.
    let results: Vec<crate::Result<AnalysisReport>> = std::thread::scope(|scope| {
        let handles: Vec<_> = questions
            .iter()
            .map(|&qn| {
                let (net, config) = (&net, &config);
                scope.spawn(move || analyze_question(net, qn, config))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("analysis thread panicked"))
            .collect()
    });
    let mut reports = Vec::new();
    for r in results {
        match r {
            Ok(r) => reports.push(r),
            Err(e) => return Err(e.to_string()),
        }
    }
    match a.output {
        Output::Text => {
            let mut s = text::network_header(&net);
            for r in &reports {
                s.push_str(&text::report(r, &net));
            }
            write_out(out, &s)?;
        }
        Output::Json => {
            let json: Vec<ReportJson> = reports.iter().map(|r| report_json(r, &net)).collect();
            write_json(out, &json)?;
        }
    }
    Ok(exit_for(reports.iter().map(|r| r.verdict)))
}

fn write_out(out: &mut dyn Write, s: &str) -> std::result::Result<(), String> {
    out.write_all(s.as_bytes()).map_err(|e| e.to_string())
}

fn write_json<T: Serialize>(out: &mut dyn Write, value: &T) -> std::result::Result<(), String> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| e.to_string())?;
    s.push('\n');
    write_out(out, &s)
}

/// Figure object, bare generator array (a cone), a report, or a report array.
fn load_figure(path: &Path, dim: usize) -> std::result::Result<Figure, String> {
    let text = read_file(path)?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    let bad = |e: serde_json::Error| format!("{}: {e}", path.display());
    // A report array from `analyze --output json`: first report carrying a figure.
    let value = match value {
        serde_json::Value::Array(items) if items.first().is_some_and(|v| v.is_object()) => items
            .into_iter()
            .find(|r| r.get("certificate").and_then(|c| c.get("figure")).is_some())
            .ok_or_else(|| format!("{}: no report in the file carries a figure", path.display()))?,
        v => v,
    };
    if value.is_array() {
        let gens: Vec<RationalVector> = serde_json::from_value(value).map_err(bad)?;
        if let Some(g) = gens.iter().find(|g| g.dim() != dim) {
            return Err(format!(
                "{}: generator {g} has {} entries, expected {dim}",
                path.display(),
                g.dim()
            ));
        }
        return Ok(Figure::Cone(ConeRep::new(dim, gens)));
    }
    let figure_value = match value.get("certificate").and_then(|c| c.get("figure")) {
        Some(f) => f.clone(),
        None => value,
    };
    let figure: Figure = serde_json::from_value(figure_value).map_err(bad)?;
    if figure.ambient_dim() != dim {
        return Err(format!(
            "{}: figure has dimension {}, expected {dim}",
            path.display(),
            figure.ambient_dim()
        ));
    }
    Ok(figure)
}

#[derive(Serialize)]
struct DualizeJson {
    dual: NetworkJson,
    gamma: crate::exactgeom::RationalMatrix,
    dual_figure: Figure,
    transferred: Figure,
    violations: usize,
}

fn cmd_dualize(a: &DualizeArgs, out: &mut dyn Write) -> CmdResult {
    let net = load_network(&a.path)?;
    let figure = load_figure(&a.cone, net.n_species())?;
    let violations = closure_check(&figure, &net);
    if !violations.is_empty() {
        let mut msg = format!(
            "refusing uncertified {}: {} closure violation(s)",
            text::figure_noun(&figure),
            violations.len()
        );
        for v in &violations {
            msg.push_str(&format!("\n  {}", text::violation(v, &net)));
        }
        return Err(msg);
    }
    let t = dual_transfer(&net, &figure).map_err(|e| e.to_string())?;
    match a.output {
        Output::Text => write_out(out, &text::dualize(&t))?,
        Output::Json => write_json(
            out,
            &DualizeJson {
                dual: NetworkJson::from_network(&t.dual),
                gamma: t.gamma.clone(),
                dual_figure: t.dual_figure.clone(),
                transferred: t.transferred.clone(),
                violations: t.verification.len(),
            },
        )?,
    }
    Ok(EXIT_DETERMINATE)
}

fn parse_range(s: &str) -> std::result::Result<(i64, i64), String> {
    let (lo, hi) = s
        .split_once("..")
        .ok_or_else(|| format!("invalid --range {s:?}, expected a..b"))?;
    let lo: i64 = lo
        .trim()
        .parse()
        .map_err(|_| format!("invalid range start {lo:?}"))?;
    let hi: i64 = hi
        .trim()
        .parse()
        .map_err(|_| format!("invalid range end {hi:?}"))?;
    if lo > hi {
        return Err(format!("empty range {lo}..{hi}"));
    }
    Ok((lo, hi))
}

#[derive(Serialize)]
struct GrowStepJson {
    added: Option<String>,
    network: NetworkJson,
    cone: Figure,
    violations: usize,
}

fn cmd_grow(a: &GrowArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let seed = load_network(&a.path)?;
    let (lo, hi) = parse_range(&a.range)?;
    let config = AnalysisConfig {
        saturation: a.saturation.config()?,
        ..AnalysisConfig::default()
    };
    let seed_report =
        analyze_question(&seed, Question::Monotone, &config).map_err(|e| e.to_string())?;
    if seed_report.verdict != Verdict::Yes {
        let _ = write!(
            err,
            "seed network rejected, it is not certified monotone\n{}",
            text::report(&seed_report, &seed)
        );
        return Ok(if seed_report.verdict.is_determinate() {
            EXIT_INPUT_ERROR
        } else {
            EXIT_INCONCLUSIVE
        });
    }
    let candidates = grow_candidates(seed.n_species(), lo, hi, config.grow_candidate_cap)
        .map_err(|e| e.to_string())?;
    let limit = a.limit.unwrap_or(usize::MAX);
    let mut accepted = 0usize;
    let mut json_steps = Vec::new();
    let mut io_error = None;
    grow_each(&seed, &candidates, &config, |step| {
        let figure = Figure::Cone(step.cone.clone());
        let violations = closure_check(&figure, &step.network).len();
        let added = step
            .added
            .as_ref()
            .map(|_| step.network.render_reaction(step.network.n_reactions() - 1));
        if step.added.is_some() {
            accepted += 1;
        }
        match a.output {
            Output::Text => {
                let line = text::grow_step(step, violations);
                if let Err(e) = out.write_all(line.as_bytes()).and_then(|_| out.flush()) {
                    io_error = Some(e.to_string());
                    return false;
                }
            }
            Output::Json => json_steps.push(GrowStepJson {
                added,
                network: NetworkJson::from_network(&step.network),
                cone: figure,
                violations,
            }),
        }
        accepted < limit
    })
    .map_err(|e| e.to_string())?;
    if let Some(e) = io_error {
        return Err(e);
    }
    match a.output {
        Output::Text => write_out(
            out,
            &format!(
                "accepted {accepted} extension(s) of {} candidate(s)\n",
                candidates.len()
            ),
        )?,
        Output::Json => write_json(out, &json_steps)?,
    }
    Ok(EXIT_DETERMINATE)
}

pub(crate) fn mode_name(m: Mode) -> &'static str {
    match m {
        Mode::Cone => "cone",
        Mode::Ball => "ball",
    }
}
