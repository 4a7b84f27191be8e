use super::network::{default_species_name_list, to_irreversible, Reaction, ReactionNetwork};
use crate::error::{Error, Result};
use crate::exactgeom::RationalMatrix;
use num::ToPrimitive;

/// Row `i` of `Γ` becomes reaction `i`; an orphan species would give a zero reaction.
fn transpose_network(net: &ReactionNetwork, reversible: bool) -> Result<ReactionNetwork> {
    if let Some(&i) = net.orphan_species().first() {
        return Err(Error::InvalidNetwork(format!(
            "species {} takes part in no reaction, so the dual has a zero reaction",
            net.species()[i].name
        )));
    }
    let gamma = net.stoichiometric_matrix();
    let m = net.n_reactions();
    let reactions = (0..net.n_species())
        .map(|i| {
            let row: Vec<i64> = (0..m)
                .map(|j| {
                    gamma
                        .get(i, j)
                        .to_integer()
                        .to_i64()
                        .expect("integer stoichiometry")
                })
                .collect();
            Reaction::from_vector(&row, reversible)
        })
        .collect();
    ReactionNetwork::new(default_species_name_list(m), reactions)
}

/// Irreversible network with stoichiometric matrix `Γᵀ` of the irreversible expansion.
/// Species `S1..Sm` stand for the expanded reactions; row `i` of `Γ` becomes reaction `i`.
pub fn dual_network(net: &ReactionNetwork) -> Result<ReactionNetwork> {
    transpose_network(&to_irreversible(net), false)
}

/// Reversible network with stoichiometric matrix `Γᵀ`, for networks whose reactions are all
/// reversible.
pub fn reversible_dual(net: &ReactionNetwork) -> Result<ReactionNetwork> {
    if !net.all_reversible() {
        return Err(Error::InvalidInput(
            "reversible dual needs an all-reversible network".into(),
        ));
    }
    transpose_network(net, true)
}

/// The dual used for certificate transfer together with the matrix `Γ` it transposes.
pub fn transfer_dual(net: &ReactionNetwork) -> Result<(ReactionNetwork, RationalMatrix)> {
    if net.all_reversible() {
        Ok((reversible_dual(net)?, net.stoichiometric_matrix()))
    } else {
        let irr = to_irreversible(net);
        Ok((transpose_network(&irr, false)?, irr.stoichiometric_matrix()))
    }
}
