//! Reaction networks: parsing, stoichiometry, irreversible expansion, duals and the R-graph.

mod dual;
mod network;
mod parse;
mod rgraph;

pub use dual::{dual_network, reversible_dual, transfer_dual};
pub use network::{
    default_species_name_list, default_species_names, enumerate_subnetworks, to_irreversible,
    Reaction, ReactionNetwork, Species,
};
pub use parse::{parse_network, parse_network_with_warnings, ParseWarning};
pub use rgraph::{r_graph, RGraph};
