//! Momentum-map checks: classical (Hamiltonian generation, equivariance,
//! Noether), infinitesimal (one-form bracket morphism and Maurer-Cartan),
//! and quantum (star-commutator actions, Hopf action identity, bracket
//! representation, tensor version).

mod classical;
mod fit;
mod infinitesimal;
mod quantum;

pub use classical::{check_classical_mm, check_equivariance, check_noether};
pub use infinitesimal::{check_infinitesimal_mm, maurer_cartan_residual};
pub use quantum::{
    check_bracket_representation, check_eq_br, check_hopf_action, check_qmm_equivariance, higher_action_apply,
    quantum_action_apply, semiclassical_limit, QuantumActionData, QuantumMomentumMap,
};
