//! Lie algebras by structure constants, cobrackets, and Lie bialgebra checks.

mod algebra;
mod bialgebra;

pub use algebra::{LieAlgebra, LieElement};
pub(crate) use algebra::fmt_combination;
pub use bialgebra::{fmt_wedge, Cobracket, LieBialgebra, Tensor2, PAIRING_CONVENTION, WEDGE_CONVENTION};
