//! Poisson calculus with rational coefficients: brackets, Hamiltonian
//! fields, forms and multivectors up to degree 2, Lie derivatives, the Koszul
//! bracket on one-forms, and the canonical and Poisson action conditions.

mod actions;
mod fields;
mod structure;

pub use actions::{check_canonical_action, check_poisson_action, homomorphism_residual, wedge_image};
pub use fields::{Bivector, OneForm, TwoForm, VectorField};
pub use structure::PoissonStructure;
