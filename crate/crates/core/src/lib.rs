//! Decide whether a chemical reaction network under general kinetics is monotone with
//! respect to a polyhedral cone or non-expansive for a polyhedral norm, with exact
//! certificates either way.

pub mod builder;
pub mod cli;
pub mod error;
pub mod exactgeom;
pub mod netmodel;
pub mod orchestrate;
pub mod regions;

pub use error::{Error, Result};
