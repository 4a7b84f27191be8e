use crate::error::{Error, Result};
use crate::exactgeom::{rank, rat, RationalMatrix, RationalVector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Species {
    pub name: String,
    pub index: usize,
}

/// `Σ aᵢ Xᵢ → Σ bᵢ Xᵢ` with `aᵢ bᵢ = 0` for every species.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Reaction {
    pub reactant: Vec<u64>,
    pub product: Vec<u64>,
    pub reversible: bool,
}

impl Reaction {
    /// Splits an integer reaction vector into reactant (negative part) and product (positive part).
    pub fn from_vector(v: &[i64], reversible: bool) -> Reaction {
        Reaction {
            reactant: v
                .iter()
                .map(|&x| if x < 0 { x.unsigned_abs() } else { 0 })
                .collect(),
            product: v
                .iter()
                .map(|&x| if x > 0 { x as u64 } else { 0 })
                .collect(),
            reversible,
        }
    }

    pub fn dim(&self) -> usize {
        self.reactant.len()
    }

    /// `product − reactant`.
    pub fn vector(&self) -> RationalVector {
        RationalVector::new(
            self.reactant
                .iter()
                .zip(&self.product)
                .map(|(&a, &b)| rat(b as i64 - a as i64))
                .collect(),
        )
    }

    pub fn int_vector(&self) -> Vec<i64> {
        self.reactant
            .iter()
            .zip(&self.product)
            .map(|(&a, &b)| b as i64 - a as i64)
            .collect()
    }

    pub fn reactant_indices(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.reactant[i] > 0).collect()
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.dim())
            .filter(|&i| self.reactant[i] > 0 || self.product[i] > 0)
            .collect()
    }

    /// Coordinates whose concentrations can affect the rate: the full support when reversible,
    /// the reactants otherwise.
    pub fn kinetic_coords(&self) -> Vec<usize> {
        if self.reversible {
            self.support()
        } else {
            self.reactant_indices()
        }
    }

    pub fn reversed(&self) -> Reaction {
        Reaction {
            reactant: self.product.clone(),
            product: self.reactant.clone(),
            reversible: self.reversible,
        }
    }

    fn catalytic_species(&self) -> Option<usize> {
        (0..self.dim()).find(|&i| self.reactant[i] > 0 && self.product[i] > 0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReactionNetwork {
    species: Vec<Species>,
    reactions: Vec<Reaction>,
}

/// `S1`..`Sn`.
pub fn default_species_name_list(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("S{}", i + 1)).collect()
}

/// `A`..`Z` for small networks, `S1`.. otherwise.
pub fn default_species_names(n: usize) -> Vec<String> {
    if n <= 26 {
        (0..n)
            .map(|i| ((b'A' + i as u8) as char).to_string())
            .collect()
    } else {
        (0..n).map(|i| format!("S{}", i + 1)).collect()
    }
}

impl ReactionNetwork {
    /// Checks dimensions, non-catalytic complexes and nonzero reaction vectors.
    pub fn new(species_names: Vec<String>, reactions: Vec<Reaction>) -> Result<Self> {
        let n = species_names.len();
        for (j, r) in reactions.iter().enumerate() {
            if r.reactant.len() != n || r.product.len() != n {
                return Err(Error::Dimension {
                    expected: n,
                    got: r.reactant.len().max(r.product.len()),
                });
            }
            if let Some(i) = r.catalytic_species() {
                return Err(Error::Catalytic {
                    line: j + 1,
                    species: species_names[i].clone(),
                });
            }
            if r.reactant == r.product {
                return Err(Error::InvalidNetwork(format!(
                    "reaction {} has a zero reaction vector",
                    j + 1
                )));
            }
        }
        for (i, a) in species_names.iter().enumerate() {
            if species_names[..i].contains(a) {
                return Err(Error::InvalidNetwork(format!("duplicate species name {a}")));
            }
        }
        let species = species_names
            .into_iter()
            .enumerate()
            .map(|(index, name)| Species { name, index })
            .collect();
        Ok(ReactionNetwork { species, reactions })
    }

    /// Network with integer reaction vectors as columns and default species names.
    pub fn from_columns(n: usize, cols: &[Vec<i64>], reversible: &[bool]) -> Result<Self> {
        assert_eq!(cols.len(), reversible.len());
        let reactions = cols
            .iter()
            .zip(reversible)
            .map(|(c, &r)| Reaction::from_vector(c, r))
            .collect();
        Self::new(default_species_names(n), reactions)
    }

    /// Network whose stoichiometric matrix is given row by row (one row per species).
    pub fn from_matrix_rows(rows: &[&[i64]], reversible: &[bool]) -> Result<Self> {
        let n = rows.len();
        let m = reversible.len();
        let cols: Vec<Vec<i64>> = (0..m)
            .map(|j| rows.iter().map(|r| r[j]).collect())
            .collect();
        Self::from_columns(n, &cols, reversible)
    }

    pub fn species(&self) -> &[Species] {
        &self.species
    }

    pub fn species_names(&self) -> Vec<String> {
        self.species.iter().map(|s| s.name.clone()).collect()
    }

    pub fn reactions(&self) -> &[Reaction] {
        &self.reactions
    }

    pub fn reaction(&self, j: usize) -> &Reaction {
        &self.reactions[j]
    }

    pub fn n_species(&self) -> usize {
        self.species.len()
    }

    pub fn n_reactions(&self) -> usize {
        self.reactions.len()
    }

    pub fn vectors(&self) -> Vec<RationalVector> {
        self.reactions.iter().map(Reaction::vector).collect()
    }

    pub fn stoichiometric_matrix(&self) -> RationalMatrix {
        RationalMatrix::from_columns(self.n_species(), self.vectors())
    }

    pub fn rank(&self) -> usize {
        rank(&self.stoichiometric_matrix())
    }

    pub fn all_reversible(&self) -> bool {
        self.reactions.iter().all(|r| r.reversible)
    }

    /// Species that occur in no reaction.
    pub fn orphan_species(&self) -> Vec<usize> {
        (0..self.n_species())
            .filter(|&i| {
                self.reactions
                    .iter()
                    .all(|r| r.reactant[i] == 0 && r.product[i] == 0)
            })
            .collect()
    }

    /// The reactions at `idx`, in that order, over the same species.
    pub fn subnetwork(&self, idx: &[usize]) -> ReactionNetwork {
        ReactionNetwork {
            species: self.species.clone(),
            reactions: idx.iter().map(|&j| self.reactions[j].clone()).collect(),
        }
    }

    pub fn with_reaction(&self, r: Reaction) -> Result<ReactionNetwork> {
        let mut reactions = self.reactions.clone();
        reactions.push(r);
        Self::new(self.species_names(), reactions)
    }

    fn render_complex(&self, coeffs: &[u64]) -> String {
        let terms: Vec<String> = coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(i, &c)| {
                if c == 1 {
                    self.species[i].name.clone()
                } else {
                    format!("{c}{}", self.species[i].name)
                }
            })
            .collect();
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        }
    }

    /// One reaction per line in the input grammar.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for r in &self.reactions {
            let arrow = if r.reversible { "<=>" } else { "=>" };
            out.push_str(&format!(
                "{} {arrow} {}\n",
                self.render_complex(&r.reactant),
                self.render_complex(&r.product)
            ));
        }
        out
    }

    pub fn render_reaction(&self, j: usize) -> String {
        let r = &self.reactions[j];
        let arrow = if r.reversible { "<=>" } else { "=>" };
        format!(
            "{} {arrow} {}",
            self.render_complex(&r.reactant),
            self.render_complex(&r.product)
        )
    }
}

/// Each reversible reaction becomes a forward and a backward irreversible reaction, in place.
pub fn to_irreversible(net: &ReactionNetwork) -> ReactionNetwork {
    let mut reactions = Vec::new();
    for r in net.reactions() {
        if r.reversible {
            let fwd = Reaction {
                reversible: false,
                ..r.clone()
            };
            reactions.push(fwd.clone());
            reactions.push(fwd.reversed());
        } else {
            reactions.push(r.clone());
        }
    }
    ReactionNetwork {
        species: net.species.clone(),
        reactions,
    }
}

/// Subsets of reactions whose columns have rank `target_rank`.
///
/// Larger subsets first; within a size, index tuples in descending lexicographic order of
/// their reversed (largest-first) form, so later reactions are preferred.
pub fn enumerate_subnetworks(
    net: &ReactionNetwork,
    target_rank: usize,
) -> Vec<(Vec<usize>, ReactionNetwork)> {
    let m = net.n_reactions();
    let vectors = net.vectors();
    let mut out = Vec::new();
    for size in (target_rank..=m).rev() {
        for idx in descending_combinations(m, size) {
            let cols: Vec<RationalVector> = idx.iter().map(|&j| vectors[j].clone()).collect();
            if crate::exactgeom::rank_of(&cols) == target_rank {
                out.push((idx.clone(), net.subnetwork(&idx)));
            }
        }
    }
    out
}

/// `size`-subsets of `0..m` as ascending index lists, ordered so that `{m−size..m}` is first.
fn descending_combinations(m: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = Vec::with_capacity(size);
    fn rec(next_max: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            let mut v = cur.clone();
            v.reverse();
            out.push(v);
            return;
        }
        for top in (left - 1..next_max).rev() {
            cur.push(top);
            rec(top, left - 1, cur, out);
            cur.pop();
        }
    }
    rec(m, size, &mut cur, &mut out);
    out
}
