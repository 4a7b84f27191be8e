//! Fixture suite: every `*.crn` file in a directory may carry lines
//! `# expect non-expansive: no` or `# expect monotone: yes`; each is checked in file order.
//! Exit 0 when all expectations hold, 1 otherwise.

use super::{
    analyze_question, load_network, write_out, CmdResult, SaturationFlags, EXIT_DETERMINATE,
    EXIT_INPUT_ERROR,
};
use crate::orchestrate::{AnalysisConfig, Question, Verdict};
use std::io::Write;
use std::path::Path;

fn parse_question(s: &str) -> Option<Question> {
    serde_json::from_value(serde_json::Value::String(s.trim().to_string())).ok()
}

fn parse_verdict(s: &str) -> Option<Verdict> {
    serde_json::from_value(serde_json::Value::String(s.trim().to_string())).ok()
}

/// `(question, verdict)` pairs from `# expect q: v` lines.
pub fn expectations(text: &str) -> Result<Vec<(Question, Verdict)>, String> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let Some(rest) = line
            .trim()
            .strip_prefix('#')
            .map(str::trim)
            .and_then(|l| l.strip_prefix("expect "))
        else {
            continue;
        };
        let (q, v) = rest
            .split_once(':')
            .ok_or_else(|| format!("line {}: expected `# expect question: verdict`", i + 1))?;
        let q =
            parse_question(q).ok_or_else(|| format!("line {}: unknown question {q:?}", i + 1))?;
        let v = parse_verdict(v).ok_or_else(|| format!("line {}: unknown verdict {v:?}", i + 1))?;
        out.push((q, v));
    }
    Ok(out)
}

pub fn cmd_suite(dir: &Path, flags: &SaturationFlags, out: &mut dyn Write) -> CmdResult {
    let config = AnalysisConfig {
        saturation: flags.config()?,
        ..AnalysisConfig::default()
    };
    let entries = std::fs::read_dir(dir).map_err(|e| format!("{}: {e}", dir.display()))?;
    let mut files: Vec<_> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "crn"))
        .collect();
    files.sort();
    let (mut passed, mut failed) = (0usize, 0usize);
    for path in &files {
        let name = path
            .file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_default();
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        let expected = expectations(&text).map_err(|e| format!("{}: {e}", path.display()))?;
        if expected.is_empty() {
            continue;
        }
        let net = load_network(path)?;
        for (q, want) in expected {
            let line = match analyze_question(&net, q, &config) {
                Ok(r) if r.verdict == want => {
                    passed += 1;
                    format!("PASS {name} {q}: {want}\n")
                }
                Ok(r) => {
                    failed += 1;
                    format!(
                        "FAIL {name} {q}: expected {want}, got {} ({})\n",
                        r.verdict,
                        r.certificate.kind()
                    )
                }
                Err(e) => {
                    failed += 1;
                    format!("FAIL {name} {q}: {e}\n")
                }
            };
            write_out(out, &line)?;
        }
    }
    write_out(out, &format!("{passed} passed, {failed} failed\n"))?;
    Ok(if failed == 0 {
        EXIT_DETERMINATE
    } else {
        EXIT_INPUT_ERROR
    })
}
