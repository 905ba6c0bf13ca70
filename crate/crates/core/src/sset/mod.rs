//! Finite simplicial sets in normal form, maps between them, limits and
//! colimits, homology, Kan probes, map search and equivalence certificates.

mod finsset;
pub mod certify;
pub mod homology;
pub mod kan;
mod map;
pub mod ops;
pub mod search;
mod simplex;
mod validate;

pub use finsset::{build, extend_coskeletal, simplex_map, standard_built, Built, CellData, FinSSet, SelfModel, SimplicialModel};
pub use map::SMap;
pub use simplex::{surjection_count, Cell, Mono, Simplex, MAX_DIM};
pub use validate::{check_identities_exhaustive, validate};
