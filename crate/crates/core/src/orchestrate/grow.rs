use super::{analyze_monotone, AnalysisConfig, Verdict};
use crate::builder::Figure;
use crate::error::{Error, Result};
use crate::exactgeom::ConeRep;
use crate::netmodel::{Reaction, ReactionNetwork};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrowStep {
    pub network: ReactionNetwork,
    pub cone: ConeRep,
    /// `None` for the seed.
    pub added: Option<Reaction>,
}

fn already_present(net: &ReactionNetwork, r: &Reaction) -> bool {
    net.reactions()
        .iter()
        .any(|q| q == r || (q.reversible && r.reversible && q == &r.reversed()))
}

/// Reactions over `n` species whose reaction vector has entries in `lo..=hi`.
///
/// Vectors run in lexicographic order (first species slowest). Each nonzero vector yields its
/// irreversible reaction and, when its first nonzero entry is negative, its reversible one.
pub fn grow_candidates(n: usize, lo: i64, hi: i64, cap: usize) -> Result<Vec<Reaction>> {
    if lo > hi {
        return Err(Error::InvalidInput(format!(
            "empty coefficient range {lo}..{hi}"
        )));
    }
    let width = (hi - lo + 1) as u128;
    let total = width.checked_pow(n as u32).unwrap_or(u128::MAX);
    // Upper bound: two reactions per vector.
    if total.saturating_mul(2) > cap as u128 {
        return Err(Error::EnumerationCap {
            what: "growth candidates",
            needed: total.min(usize::MAX as u128) as usize,
            cap,
        });
    }
    let mut out = Vec::new();
    let mut v = vec![lo; n];
    loop {
        if let Some(&first) = v.iter().find(|&&x| x != 0) {
            out.push(Reaction::from_vector(&v, false));
            if first < 0 {
                out.push(Reaction::from_vector(&v, true));
            }
        }
        let mut k = n;
        loop {
            if k == 0 {
                return Ok(out);
            }
            k -= 1;
            if v[k] < hi {
                v[k] += 1;
                break;
            }
            v[k] = lo;
        }
    }
}

fn monotone_cone(net: &ReactionNetwork, config: &AnalysisConfig) -> Result<Option<ConeRep>> {
    let report = analyze_monotone(net, config)?;
    Ok(match (report.verdict, report.figure()) {
        (Verdict::Yes, Some(Figure::Cone(c))) => Some(c.clone()),
        _ => None,
    })
}

/// Greedy first-fit: appends each candidate in turn when the extended network is still
/// monotone. The seed itself must be monotone.
pub fn grow_with_candidates(
    seed: &ReactionNetwork,
    candidates: &[Reaction],
    config: &AnalysisConfig,
) -> Result<Vec<GrowStep>> {
    let mut steps = Vec::new();
    grow_each(seed, candidates, config, |s| {
        steps.push(s.clone());
        true
    })?;
    Ok(steps)
}

/// [`grow_with_candidates`] reporting each step (the seed first) as it is accepted. Stops
/// early when `on_step` returns `false`.
pub fn grow_each(
    seed: &ReactionNetwork,
    candidates: &[Reaction],
    config: &AnalysisConfig,
    mut on_step: impl FnMut(&GrowStep) -> bool,
) -> Result<()> {
    let seed_report = analyze_monotone(seed, config)?;
    let Some(Figure::Cone(cone)) = seed_report
        .figure()
        .filter(|_| seed_report.verdict == Verdict::Yes)
    else {
        return Err(Error::InvalidInput(format!(
            "seed network is not certified monotone (verdict {}, certificate {})",
            seed_report.verdict,
            seed_report.certificate.kind()
        )));
    };
    if !on_step(&GrowStep {
        network: seed.clone(),
        cone: cone.clone(),
        added: None,
    }) {
        return Ok(());
    }
    let mut current = seed.clone();
    for c in candidates {
        if c.dim() != current.n_species() {
            return Err(Error::Dimension {
                expected: current.n_species(),
                got: c.dim(),
            });
        }
        if already_present(&current, c) {
            continue;
        }
        let extended = current.with_reaction(c.clone())?;
        if let Some(cone) = monotone_cone(&extended, config)? {
            current = extended;
            if !on_step(&GrowStep {
                network: current.clone(),
                cone,
                added: Some(c.clone()),
            }) {
                break;
            }
        }
    }
    Ok(())
}

/// [`grow_with_candidates`] over [`grow_candidates`] for the seed's species.
pub fn grow_search(
    seed: &ReactionNetwork,
    lo: i64,
    hi: i64,
    config: &AnalysisConfig,
) -> Result<Vec<GrowStep>> {
    let candidates = grow_candidates(seed.n_species(), lo, hi, config.grow_candidate_cap)?;
    grow_with_candidates(seed, &candidates, config)
}
