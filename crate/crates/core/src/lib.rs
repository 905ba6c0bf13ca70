//! Finite simplicial sets, simplicial spaces and internal categories in
//! simplicial sets, with exact algorithms for nerves, the free internal
//! category on a simplicial space, cell attachments, Segal and
//! completeness diagnostics, Dwyer–Kan checks and internal presheaves.
//!
//! Everything is truncated: a [`sset::FinSSet`] knows its simplices up to
//! a fixed dimension and every result states the bound it was computed at.

pub mod cells;
pub mod error;
pub mod icat;
pub mod presheaf;
pub mod report;
pub mod simpcat;
pub mod sset;
pub mod sspace;
pub mod unionfind;

pub use error::{Error, Result};
