//! Kinetic sign regions of vectors relative to reactions, the set `Z_Γ`, concordance and
//! starting-vector candidates.
//!
//! Every question here depends on a vector only through its sign pattern, so the searches
//! enumerate sign patterns of `v` and reduce each to two small exact feasibility problems:
//! one in `v` (subspace and sign rows) and one in `ε` (kernel and sign rows).

use crate::error::{Error, Result};
use crate::exactgeom::{
    feasible, kernel_basis, left_kernel, rat, LinearSystem, Rational, RationalMatrix,
    RationalVector,
};
use crate::netmodel::{Reaction, ReactionNetwork};
use num::{Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RegionClass {
    Q1Plus,
    Q1Minus,
    Mixed,
    Q2,
}

/// Admissible sign of `εᵢ = ∂Rᵢ·v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SignConstraint {
    NegativeOnly,
    PositiveOnly,
    ZeroOnly,
    Any,
}

impl RegionClass {
    pub fn sign_constraint(self) -> SignConstraint {
        match self {
            RegionClass::Q1Plus => SignConstraint::NegativeOnly,
            RegionClass::Q1Minus => SignConstraint::PositiveOnly,
            RegionClass::Q2 => SignConstraint::ZeroOnly,
            RegionClass::Mixed => SignConstraint::Any,
        }
    }

    pub fn negated(self) -> RegionClass {
        match self {
            RegionClass::Q1Plus => RegionClass::Q1Minus,
            RegionClass::Q1Minus => RegionClass::Q1Plus,
            other => other,
        }
    }

    /// Whether `ε = 0` is admissible.
    pub fn allows_zero(self) -> bool {
        matches!(self, RegionClass::Mixed | RegionClass::Q2)
    }
}

/// Class from the signs of `v` alone; `signs[j] ∈ {−1, 0, 1}`.
pub fn classify_signs(signs: &[i8], reaction: &Reaction) -> RegionClass {
    let gamma = reaction.int_vector();
    let mut in_q1 = true;
    let mut in_q1_neg = true;
    for j in reaction.kinetic_coords() {
        let s = signs[j] as i64 * gamma[j].signum();
        if s < 0 {
            in_q1 = false;
        }
        if s > 0 {
            in_q1_neg = false;
        }
    }
    match (in_q1, in_q1_neg) {
        (true, true) => RegionClass::Q2,
        (true, false) => RegionClass::Q1Plus,
        (false, true) => RegionClass::Q1Minus,
        (false, false) => RegionClass::Mixed,
    }
}

pub fn classify(v: &RationalVector, reaction: &Reaction) -> RegionClass {
    assert_eq!(v.dim(), reaction.dim(), "dimension mismatch");
    classify_signs(&v.signs(), reaction)
}

/// `{Γε = 0} ∪ {sign rows}` for the given classes, one per reaction.
pub fn z_system(net: &ReactionNetwork, tags: &[RegionClass]) -> LinearSystem {
    let m = net.n_reactions();
    let gamma = net.stoichiometric_matrix();
    let mut sys = LinearSystem::new(m);
    for row in gamma.rows() {
        if !row.is_zero() {
            sys.eq(row, Rational::zero());
        }
    }
    for (i, tag) in tags.iter().enumerate() {
        let e = RationalVector::unit(m, i);
        match tag.sign_constraint() {
            SignConstraint::NegativeOnly => {
                sys.lt(e, Rational::zero());
            }
            SignConstraint::PositiveOnly => {
                sys.gt(e, Rational::zero());
            }
            SignConstraint::ZeroOnly => {
                sys.eq(e, Rational::zero());
            }
            SignConstraint::Any => {}
        }
    }
    sys
}

/// Decides `ε` feasibility per class vector, with exact shortcuts and a cache.
pub struct EpsilonOracle<'a> {
    net: &'a ReactionNetwork,
    kernel: Vec<RationalVector>,
    cache: HashMap<Vec<RegionClass>, Option<RationalVector>>,
}

impl<'a> EpsilonOracle<'a> {
    pub fn new(net: &'a ReactionNetwork) -> Self {
        let kernel = kernel_basis(&net.stoichiometric_matrix());
        EpsilonOracle {
            net,
            kernel,
            cache: HashMap::new(),
        }
    }

    pub fn solve(&mut self, tags: &[RegionClass]) -> Option<RationalVector> {
        if let Some(hit) = self.cache.get(tags) {
            return hit.clone();
        }
        let m = tags.len();
        let result = if tags.iter().all(|t| t.allows_zero()) {
            Some(RationalVector::zeros(m))
        } else if self.kernel.is_empty() {
            None
        } else {
            feasible(&z_system(self.net, tags))
        };
        self.cache.insert(tags.to_vec(), result.clone());
        result
    }

    /// Same answer as [`z_membership`], cached by class vector.
    pub fn membership(&mut self, v: &RationalVector) -> Option<RationalVector> {
        let tags: Vec<RegionClass> = self
            .net
            .reactions()
            .iter()
            .map(|r| classify(v, r))
            .collect();
        self.solve(&tags)
    }
}

/// An `ε` witnessing `v ∈ Z_Γ`, if any.
pub fn z_membership(net: &ReactionNetwork, v: &RationalVector) -> Option<RationalVector> {
    let tags: Vec<RegionClass> = net.reactions().iter().map(|r| classify(v, r)).collect();
    if tags.iter().all(|t| t.allows_zero()) {
        return Some(RationalVector::zeros(tags.len()));
    }
    feasible(&z_system(net, &tags))
}

/// Default cap on the number of species for sign-pattern enumeration.
pub const DEFAULT_SIGN_PATTERN_CAP: usize = 12;

/// Nonzero `v ∈ Im(Γ) ∩ Z_Γ` together with its `ε`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConcordanceWitness {
    pub v: RationalVector,
    pub epsilon: RationalVector,
}

/// Sign-pattern search over `v` restricted by `base` (rows in `v`), depth-first with signs
/// tried in the order `+, −, 0` and infeasible prefixes pruned.
struct PatternSearch<'a> {
    n: usize,
    base: &'a LinearSystem,
    prune: bool,
}

impl PatternSearch<'_> {
    fn system_for(&self, signs: &[i8]) -> LinearSystem {
        let mut sys = self.base.clone();
        for (j, &s) in signs.iter().enumerate() {
            let e = RationalVector::unit(self.n, j);
            match s {
                1 => sys.ge(e, rat(1)),
                -1 => sys.le(e, rat(-1)),
                _ => sys.eq(e, Rational::zero()),
            };
        }
        sys
    }

    /// Calls `visit` on each nonzero full pattern whose `v` system is feasible, in order,
    /// until it returns `true`.
    fn run(&self, visit: &mut dyn FnMut(&[i8], RationalVector) -> bool) {
        let mut signs = Vec::with_capacity(self.n);
        self.rec(&mut signs, visit);
    }

    fn rec(
        &self,
        signs: &mut Vec<i8>,
        visit: &mut dyn FnMut(&[i8], RationalVector) -> bool,
    ) -> bool {
        if signs.len() == self.n {
            if signs.iter().all(|&s| s == 0) {
                return false;
            }
            if self.base.is_empty() {
                let v = RationalVector::new(signs.iter().map(|&s| rat(s.into())).collect());
                return visit(signs, v);
            }
            return match feasible(&self.system_for(signs)) {
                Some(v) => visit(signs, v),
                None => false,
            };
        }
        for s in [1i8, -1, 0] {
            signs.push(s);
            let alive =
                !self.prune || signs.len() == self.n || feasible(&self.system_for(signs)).is_some();
            if alive && self.rec(signs, visit) {
                signs.pop();
                return true;
            }
            signs.pop();
        }
        false
    }
}

fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        return Err(Error::EnumerationCap {
            what: "sign patterns over species",
            needed: n,
            cap,
        });
    }
    Ok(())
}

/// Rows `c·v = 0` for a basis of the left kernel of `gamma`, i.e. `v ∈ Im(gamma)`.
fn image_rows(gamma: &RationalMatrix, sys: &mut LinearSystem) {
    for c in left_kernel(gamma) {
        sys.eq(c, Rational::zero());
    }
}

/// A nonzero `v ∈ Im(Γ) ∩ Z_Γ`, or `None` when the network is concordant.
pub fn concordance_witness(
    net: &ReactionNetwork,
    cap: usize,
) -> Result<Option<ConcordanceWitness>> {
    let n = net.n_species();
    check_cap(n, cap)?;
    let gamma = net.stoichiometric_matrix();
    let mut base = LinearSystem::new(n);
    image_rows(&gamma, &mut base);
    let full = base.equalities.is_empty();
    let mut eps = EpsilonOracle::new(net);
    let mut found = None;
    let search = PatternSearch {
        n,
        base: &base,
        prune: !full,
    };
    search.run(&mut |signs, v| {
        let tags: Vec<RegionClass> = net
            .reactions()
            .iter()
            .map(|r| classify_signs(signs, r))
            .collect();
        match eps.solve(&tags) {
            Some(epsilon) => {
                found = Some(ConcordanceWitness { v, epsilon });
                true
            }
            None => false,
        }
    });
    Ok(found)
}

pub fn is_concordant(net: &ReactionNetwork) -> Result<bool> {
    Ok(concordance_witness(net, DEFAULT_SIGN_PATTERN_CAP)?.is_none())
}

/// Positive multiple with coprime integer entries, signed so the entry sum is positive, or
/// when the sum is zero, the last nonzero entry is positive.
pub fn orient(v: &RationalVector) -> RationalVector {
    let p = v.primitive();
    let sum: Rational = p.iter().sum();
    let flip = if sum.is_zero() {
        p.iter()
            .rev()
            .find(|x| !x.is_zero())
            .is_some_and(|x| x.is_negative())
    } else {
        sum.is_negative()
    };
    if flip {
        -p
    } else {
        p
    }
}

/// Vectors in `Z_inner ∩ Im(outer) \ Im(inner)`, one per feasible sign pattern.
///
/// The exclusion row is `c·v ≥ 1` for the first left-kernel basis vector `c` of `inner`
/// that does not vanish on `Im(outer)`; `Z` and both subspaces are symmetric, so this keeps
/// one of `±v`. Each witness is then passed through [`orient`]. Duplicated rays are dropped.
pub fn find_start_candidates(
    outer: &ReactionNetwork,
    inner: &ReactionNetwork,
) -> Result<Vec<RationalVector>> {
    let n = outer.n_species();
    check_cap(n, DEFAULT_SIGN_PATTERN_CAP)?;
    let outer_gamma = outer.stoichiometric_matrix();
    let inner_gamma = inner.stoichiometric_matrix();
    let outer_cols = outer_gamma.columns().to_vec();
    let Some(c) = left_kernel(&inner_gamma)
        .into_iter()
        .find(|c| outer_cols.iter().any(|g| !c.dot(g).is_zero()))
    else {
        return Ok(Vec::new());
    };
    let mut base = LinearSystem::new(n);
    image_rows(&outer_gamma, &mut base);
    base.ge(c, rat(1));
    let mut eps = EpsilonOracle::new(inner);
    let mut out: Vec<RationalVector> = Vec::new();
    let search = PatternSearch {
        n,
        base: &base,
        prune: true,
    };
    search.run(&mut |signs, v| {
        let tags: Vec<RegionClass> = inner
            .reactions()
            .iter()
            .map(|r| classify_signs(signs, r))
            .collect();
        if eps.solve(&tags).is_some() {
            let w = orient(&v);
            if !out.iter().any(|u| u == &w || u == &-&w) {
                out.push(w);
            }
        }
        false
    });
    Ok(out)
}

/// Integer generator of the first line `Im(Γ) ∩ ⋂_{i∈A} Γᵢ^⊥` over nonempty subsets `A`,
/// smaller subsets first, lexicographic within a size.
pub fn projection_start(net: &ReactionNetwork) -> Option<RationalVector> {
    let gamma = net.stoichiometric_matrix();
    let n = net.n_species();
    let (image, _) = crate::exactgeom::image_kernel_basis(&gamma);
    let r = image.len();
    if r < 2 {
        return None;
    }
    let m = net.n_reactions();
    let vectors = net.vectors();
    for size in 1..=m {
        for subset in ascending_combinations(m, size) {
            // Coordinates w with Γᵢ·(Bw) = 0 for i ∈ A.
            let rows: Vec<RationalVector> = subset
                .iter()
                .map(|&i| RationalVector::new(image.iter().map(|b| vectors[i].dot(b)).collect()))
                .collect();
            let kernel = kernel_basis(&RationalMatrix::from_rows(&rows));
            if kernel.len() == 1 {
                let mut z = RationalVector::zeros(n);
                for (b, w) in image.iter().zip(kernel[0].iter()) {
                    z = z.add_scaled(w, b);
                }
                return Some(orient(&z));
            }
        }
    }
    None
}

fn ascending_combinations(m: usize, size: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, m: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            cur.push(i);
            rec(i + 1, m, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, m, size, &mut Vec::new(), &mut out);
    out
}
