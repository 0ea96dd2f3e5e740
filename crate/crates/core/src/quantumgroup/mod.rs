//! Enveloping algebras in PBW normal form over `h`-polynomials, deformed
//! coproducts and their Hopf checks, the tensor complex, semiclassical
//! cobrackets, and the Gutt star product.

mod coproduct;
mod gutt;
mod presentation;

pub use coproduct::{
    antipode_monomial, check_coassociativity, check_coproduct_welldefined, check_counit_antipode, check_square_zero,
    monomials_up_to, DeformedCoproduct, UTensor,
};
pub use gutt::{make_gutt_star, GuttStar};
pub use presentation::{Presentation, Terms, UElement};
