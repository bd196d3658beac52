//! Independent brute-force routes to the spin-star equilibrium quantities.
//!
//! Two oracles, deliberately sharing no arithmetic with [`crate::analytic`]
//! or [`crate::cycle`]:
//!
//! * [`enumeration`]: the Hamiltonian is classical (diagonal), so every
//!   thermal expectation is a plain sum over the 2^(N+1) spin
//!   configurations;
//! * [`dense`]: full matrix representation with Gibbs states from an
//!   eigendecomposition, which also covers the isotropic-Heisenberg variant
//!   of the star where no closed form exists.
//!
//! Both index basis states with qubit 0 (the center) as the most
//! significant bit and bit value 0 meaning spin up (z = +1).

pub mod dense;
pub mod enumeration;

pub use dense::{
    build_hamiltonian, central_marginal, dense_cycle, gibbs_state, CentralMarginal, DenseOperator,
    DensityMatrix, InteractionKind, QubitMarginal,
};
pub use enumeration::{
    enumerate_ising, enumerated_cycle_work, product_state_interaction_energy, ConfigurationTable,
};
