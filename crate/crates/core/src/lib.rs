//! Exact computations for the McKay correspondence in dimension three:
//! G-Hilbert schemes of abelian subgroups of SL(3,C), their tautological
//! bundles and the chamber structure of the space of stability conditions.

pub mod arith;
pub mod chambers;
pub mod cli;
pub mod dd;
pub mod error;
pub mod fan;
pub mod ggraph;
pub mod grouplat;
pub mod ktheory;
pub mod lp;
pub mod quiver;
pub mod reidrecipe;
pub mod tautline;

pub use error::{Error, Result};
