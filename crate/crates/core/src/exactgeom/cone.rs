use super::linalg::{orthogonal_complement, rank_of};
use super::lp::{feasible, LinearSystem};
use super::vector::{Rational, RationalVector};
use num::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// Finitely generated cone `{Σ αᵢ gᵢ : αᵢ ≥ 0}`. No generators means the zero cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeRep {
    pub generators: Vec<RationalVector>,
    pub ambient_dim: usize,
}

/// Convex hull of a symmetric vertex set, read as the unit ball of a norm on its span.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BallRep {
    pub vertices: Vec<RationalVector>,
    pub ambient_dim: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HullMode {
    Conic,
    Convex,
}

impl ConeRep {
    pub fn new(ambient_dim: usize, generators: Vec<RationalVector>) -> Self {
        assert!(
            generators.iter().all(|g| g.dim() == ambient_dim),
            "generator dimension mismatch"
        );
        ConeRep {
            generators,
            ambient_dim,
        }
    }

    pub fn from_ints(ambient_dim: usize, gens: &[&[i64]]) -> Self {
        Self::new(
            ambient_dim,
            gens.iter().map(|g| RationalVector::from_ints(g)).collect(),
        )
    }

    pub fn contains(&self, v: &RationalVector) -> bool {
        conic_member(self, v).is_some()
    }

    /// Mutual membership of generators.
    pub fn same_cone(&self, other: &ConeRep) -> bool {
        self.ambient_dim == other.ambient_dim
            && self.generators.iter().all(|g| other.contains(g))
            && other.generators.iter().all(|g| self.contains(g))
    }

    pub fn filtered(&self) -> ConeRep {
        ConeRep::new(
            self.ambient_dim,
            extreme_filter(&self.generators, HullMode::Conic),
        )
    }

    /// A nonzero `x` with `x` and `−x` both in the cone, if the cone contains a line.
    pub fn line_witness(&self) -> Option<(Vec<Rational>, RationalVector)> {
        let k = self.generators.len();
        if k == 0 {
            return None;
        }
        // Σ αᵢ gᵢ = 0, α ≥ 0, Σ α = 1: some generator's negation lies in the cone.
        let mut sys = LinearSystem::new(k);
        for i in 0..self.ambient_dim {
            let row: Vec<Rational> = self.generators.iter().map(|g| g[i].clone()).collect();
            sys.eq(RationalVector::new(row), Rational::zero());
        }
        sys.eq(
            RationalVector::new(vec![Rational::one(); k]),
            Rational::one(),
        );
        for j in 0..k {
            sys.nonneg(j);
        }
        let alpha = feasible(&sys)?;
        let j = (0..k).find(|&j| alpha[j].is_positive())?;
        Some((alpha.into_entries(), self.generators[j].clone()))
    }

    pub fn is_pointed(&self) -> bool {
        self.line_witness().is_none()
    }
}

impl BallRep {
    pub fn new(ambient_dim: usize, vertices: Vec<RationalVector>) -> Self {
        assert!(
            vertices.iter().all(|g| g.dim() == ambient_dim),
            "vertex dimension mismatch"
        );
        BallRep {
            vertices,
            ambient_dim,
        }
    }

    pub fn from_ints(ambient_dim: usize, verts: &[&[i64]]) -> Self {
        Self::new(
            ambient_dim,
            verts.iter().map(|g| RationalVector::from_ints(g)).collect(),
        )
    }

    pub fn contains(&self, v: &RationalVector) -> bool {
        hull_member(self, v).is_some()
    }

    pub fn same_hull(&self, other: &BallRep) -> bool {
        self.ambient_dim == other.ambient_dim
            && self.vertices.iter().all(|g| other.contains(g))
            && other.vertices.iter().all(|g| self.contains(g))
    }

    pub fn is_symmetric(&self) -> bool {
        self.vertices.iter().all(|v| self.vertices.contains(&-v))
    }

    pub fn filtered(&self) -> BallRep {
        BallRep::new(
            self.ambient_dim,
            extreme_filter(&self.vertices, HullMode::Convex),
        )
    }
}

fn combination_system(gens: &[RationalVector], v: &RationalVector, convex: bool) -> LinearSystem {
    let k = gens.len();
    let mut sys = LinearSystem::new(k);
    for i in 0..v.dim() {
        let row: Vec<Rational> = gens.iter().map(|g| g[i].clone()).collect();
        sys.eq(RationalVector::new(row), v[i].clone());
    }
    if convex {
        sys.eq(
            RationalVector::new(vec![Rational::one(); k]),
            Rational::one(),
        );
    }
    for j in 0..k {
        sys.nonneg(j);
    }
    sys
}

/// Nonnegative coefficients `α` with `Σ αᵢ gᵢ = v`, if `v` is in the cone.
pub fn conic_member(cone: &ConeRep, v: &RationalVector) -> Option<Vec<Rational>> {
    assert_eq!(cone.ambient_dim, v.dim(), "dimension mismatch");
    conic_combination(&cone.generators, v)
}

pub fn conic_combination(gens: &[RationalVector], v: &RationalVector) -> Option<Vec<Rational>> {
    if v.is_zero() {
        return Some(vec![Rational::zero(); gens.len()]);
    }
    if gens.is_empty() {
        return None;
    }
    // Fast path: a positive multiple of a single generator.
    for (j, g) in gens.iter().enumerate() {
        if let Some(r) = v.ratio_to(g) {
            if r.is_positive() {
                let mut alpha = vec![Rational::zero(); gens.len()];
                alpha[j] = r;
                return Some(alpha);
            }
        }
    }
    feasible(&combination_system(gens, v, false)).map(RationalVector::into_entries)
}

/// Convex coefficients `λ` with `Σ λᵢ vᵢ = v`, if `v` is in the hull.
pub fn hull_member(ball: &BallRep, v: &RationalVector) -> Option<Vec<Rational>> {
    assert_eq!(ball.ambient_dim, v.dim(), "dimension mismatch");
    convex_combination(&ball.vertices, v)
}

pub fn convex_combination(points: &[RationalVector], v: &RationalVector) -> Option<Vec<Rational>> {
    if points.is_empty() {
        return None;
    }
    if let Some(j) = points.iter().position(|p| p == v) {
        let mut lambda = vec![Rational::zero(); points.len()];
        lambda[j] = Rational::one();
        return Some(lambda);
    }
    feasible(&combination_system(points, v, true)).map(RationalVector::into_entries)
}

/// Drops redundant generators while keeping the generated cone or hull unchanged.
///
/// Conic mode drops zero vectors and later positive multiples, then every vector that is a
/// nonnegative combination of the remaining ones. Convex mode drops duplicates, then every
/// point in the hull of the remaining ones. Survivors keep their input order.
pub fn extreme_filter(points: &[RationalVector], mode: HullMode) -> Vec<RationalVector> {
    let mut kept: Vec<RationalVector> = Vec::new();
    for p in points {
        let dup = match mode {
            HullMode::Conic => p.is_zero() || kept.iter().any(|q| p.same_ray(q)),
            HullMode::Convex => kept.contains(p),
        };
        if !dup {
            kept.push(p.clone());
        }
    }
    let mut i = 0;
    while i < kept.len() {
        let others: Vec<RationalVector> = kept
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, q)| q.clone())
            .collect();
        let redundant = match mode {
            HullMode::Conic => conic_combination(&others, &kept[i]).is_some(),
            HullMode::Convex => convex_combination(&others, &kept[i]).is_some(),
        };
        if redundant {
            kept.remove(i);
        } else {
            i += 1;
        }
    }
    kept
}

/// Generators of `{x : gᵀx ≥ 0 for every generator g}` by double description.
pub fn dual_cone(cone: &ConeRep) -> ConeRep {
    let n = cone.ambient_dim;
    let mut halfspaces: Vec<RationalVector> = cone
        .generators
        .iter()
        .filter(|g| !g.is_zero())
        .map(RationalVector::primitive)
        .collect();
    halfspaces.sort();
    halfspaces.dedup();

    let mut lineality: Vec<RationalVector> = (0..n).map(|i| RationalVector::unit(n, i)).collect();
    let mut rays: Vec<RationalVector> = Vec::new();
    let mut processed: Vec<RationalVector> = Vec::new();

    for h in &halfspaces {
        if let Some(p) = lineality.iter().position(|l| !h.dot(l).is_zero()) {
            let mut l = lineality.remove(p);
            if h.dot(&l).is_negative() {
                l = -l;
            }
            let hl = h.dot(&l);
            let project = |x: &RationalVector| {
                let hx = h.dot(x);
                if hx.is_zero() {
                    x.clone()
                } else {
                    x.add_scaled(&(-(hx / &hl)), &l)
                }
            };
            lineality = lineality.iter().map(project).collect();
            rays = rays.iter().map(project).map(|r| r.primitive()).collect();
            rays.push(l.primitive());
        } else {
            let vals: Vec<Rational> = rays.iter().map(|r| h.dot(r)).collect();
            let tight: Vec<Vec<bool>> = rays
                .iter()
                .map(|r| processed.iter().map(|q| q.dot(r).is_zero()).collect())
                .collect();
            let mut next: Vec<RationalVector> = Vec::new();
            for (r, val) in rays.iter().zip(&vals) {
                if !val.is_negative() {
                    next.push(r.clone());
                }
            }
            for (i, vi) in vals.iter().enumerate() {
                if !vi.is_positive() {
                    continue;
                }
                for (j, vj) in vals.iter().enumerate() {
                    if !vj.is_negative() {
                        continue;
                    }
                    let common: Vec<bool> = tight[i]
                        .iter()
                        .zip(&tight[j])
                        .map(|(a, b)| *a && *b)
                        .collect();
                    let adjacent = (0..rays.len())
                        .filter(|&k| k != i && k != j)
                        .all(|k| !common.iter().zip(&tight[k]).all(|(c, t)| !*c || *t));
                    if adjacent {
                        // vi > 0 > vj: vi·r_j − vj·r_i vanishes on h and is nonnegative elsewhere.
                        let combo = rays[j].scale(vi).add_scaled(&(-vj.clone()), &rays[i]);
                        next.push(combo.primitive());
                    }
                }
            }
            rays = Vec::new();
            for r in next {
                if !rays.iter().any(|q: &RationalVector| q.same_ray(&r)) {
                    rays.push(r);
                }
            }
        }
        processed.push(h.clone());
    }

    let mut gens = rays;
    for l in &lineality {
        let l = l.primitive();
        gens.push(l.clone());
        gens.push(-l);
    }
    ConeRep::new(n, extreme_filter(&gens, HullMode::Conic))
}

/// Vertices of the polar `{z ∈ span(basis) : vᵀz ≤ 1 for every vertex v}`.
///
/// `basis` spans a subspace containing the ball, and the ball must be full-dimensional in it
/// so the polar is bounded.
pub fn polar_ball(ball: &BallRep, basis: &[RationalVector]) -> BallRep {
    let n = ball.ambient_dim;
    let r = basis.len();
    // Homogenize in coordinates w ∈ ℝʳ, s ≥ 0: the polar is the s = 1 slice of
    // {(w, s) : −(Bᵀv)·w + s ≥ 0 for every vertex v, s ≥ 0}.
    let mut halfspaces: Vec<RationalVector> = Vec::new();
    for v in &ball.vertices {
        let mut h: Vec<Rational> = basis.iter().map(|b| -b.dot(v)).collect();
        h.push(Rational::one());
        halfspaces.push(RationalVector::new(h));
    }
    halfspaces.push(RationalVector::unit(r + 1, r));
    let cone = dual_cone(&ConeRep::new(r + 1, halfspaces));
    let mut vertices = Vec::new();
    for g in &cone.generators {
        let s = &g[r];
        assert!(
            s.is_positive(),
            "polar is unbounded: ball is not full-dimensional in the subspace"
        );
        let mut z = RationalVector::zeros(n);
        for (b, w) in basis.iter().zip(g.iter()) {
            z = z.add_scaled(&(w / s), b);
        }
        vertices.push(z);
    }
    BallRep::new(n, extreme_filter(&vertices, HullMode::Convex))
}

/// True iff the points span a subspace of dimension `rank`.
pub fn spans_rank(points: &[RationalVector], rank: usize) -> bool {
    rank_of(points) == rank
}

/// Basis of the subspace orthogonal to every generator.
pub fn orthogonal_space(cone: &ConeRep) -> Vec<RationalVector> {
    orthogonal_complement(&cone.generators, cone.ambient_dim)
}
