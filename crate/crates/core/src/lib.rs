//! Exact symbolic verification of classical, infinitesimal and quantum
//! momentum maps.
//!
//! The crate is layered bottom-up:
//!
//! - [`symexpr`]: rational functions over `Q` with a parser and canonical printer
//! - [`starprod`]: truncated `h`-series and star products
//! - [`poissongeo`]: Poisson calculus, forms, Lie derivatives, action conditions
//! - [`liebialg`]: Lie algebras, cobrackets, bialgebra checks
//! - [`quantumgroup`]: PBW enveloping algebras, deformed coproducts, Gutt star
//! - [`momentum`]: classical, infinitesimal and quantum momentum-map checks
//! - [`scenario`]: JSON scenario documents and the check runner
//!
//! Every check returns a [`report::CheckReport`].

pub mod error;
pub mod hscalar;
pub mod liebialg;
pub mod momentum;
pub mod poissongeo;
pub mod quantumgroup;
pub mod report;
pub mod sample;
pub mod scenario;
pub mod starprod;
pub mod symexpr;

pub use error::{Error, Result};
