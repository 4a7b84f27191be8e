use crate::exactgeom::{Rational, RationalVector};
use crate::netmodel::Reaction;
use crate::regions::{classify, RegionClass};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Operation producing a vector from its parent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OpTag {
    #[serde(rename = "1")]
    Op1,
    #[serde(rename = "2")]
    Op2,
    #[serde(rename = "3a")]
    Op3a,
    #[serde(rename = "3b")]
    Op3b,
    #[serde(rename = "4")]
    Op4,
}

impl fmt::Display for OpTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            OpTag::Op1 => "1",
            OpTag::Op2 => "2",
            OpTag::Op3a => "3a",
            OpTag::Op3b => "3b",
            OpTag::Op4 => "4",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpOutput {
    pub vector: RationalVector,
    pub op: OpTag,
    pub alpha: Rational,
}

/// `max_j v_j / Γ_j` over kinetic coordinates (all have `Γ_j ≠ 0`).
fn max_ratio(
    v: &RationalVector,
    gamma: &RationalVector,
    kinetic: &[usize],
    negate: bool,
) -> Rational {
    kinetic
        .iter()
        .map(|&j| {
            let r = &v[j] / &gamma[j];
            if negate {
                -r
            } else {
                r
            }
        })
        .max()
        .expect("a reaction has at least one kinetic coordinate")
}

/// Outputs of operations 1–3 for `v` against one reaction.
///
/// Q1Plus gives `v − αΓ` with the least `α` putting it in `Q₁(−Γ)`; Q1Minus gives `v + αΓ`
/// with the least `α` putting it in `Q₁(Γ)`; Mixed gives both (3a is `+`, 3b is `−`); Q2
/// gives nothing. Each output vanishes on some kinetic coordinate. Zero outputs are kept.
pub fn apply_operation(v: &RationalVector, reaction: &Reaction) -> Vec<OpOutput> {
    let gamma = reaction.vector();
    let kinetic = reaction.kinetic_coords();
    let plus = || {
        let alpha = max_ratio(v, &gamma, &kinetic, true);
        (v.add_scaled(&alpha, &gamma), alpha)
    };
    let minus = || {
        let alpha = max_ratio(v, &gamma, &kinetic, false);
        (v.add_scaled(&-alpha.clone(), &gamma), alpha)
    };
    match classify(v, reaction) {
        RegionClass::Q2 => Vec::new(),
        RegionClass::Q1Plus => {
            let (vector, alpha) = minus();
            vec![OpOutput {
                vector,
                op: OpTag::Op1,
                alpha,
            }]
        }
        RegionClass::Q1Minus => {
            let (vector, alpha) = plus();
            vec![OpOutput {
                vector,
                op: OpTag::Op2,
                alpha,
            }]
        }
        RegionClass::Mixed => {
            let (a, alpha_a) = plus();
            let (b, alpha_b) = minus();
            vec![
                OpOutput {
                    vector: a,
                    op: OpTag::Op3a,
                    alpha: alpha_a,
                },
                OpOutput {
                    vector: b,
                    op: OpTag::Op3b,
                    alpha: alpha_b,
                },
            ]
        }
    }
}
