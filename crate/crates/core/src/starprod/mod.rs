//! Truncated `h`-series and star products.
//!
//! A star product is `f ⋆ g = fg + Σ_{n≥1} P_n(f, g) h^n`. Three families are
//! supported: Moyal products for a constant Poisson matrix, explicit
//! bidifferential families, and the Gutt product built in
//! [`crate::quantumgroup`].

mod checks;
mod product;
mod series;

pub use checks::{check_associativity, check_first_order};
pub use product::{BidiffOperator, BidiffTerm, DerivCache, StarKind, StarProduct};
pub use series::HbarSeries;
