//! Exact computations with double Poisson brackets on cobar constructions of
//! cyclic DG coalgebras: the necklace Lie bracket on commutator quotients,
//! cyclic homology, and the induced Poisson brackets on representation
//! algebras through trace maps.

pub mod error;
pub mod exactla;
pub mod graded_core;

pub use error::{Error, Result};
pub mod cobar_bracket;
pub mod cyclic_coalgebra;
pub mod natural_quotient;
pub mod cyclic_homology;
pub mod rep_poisson;
