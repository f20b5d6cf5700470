//! Entanglement entropy and spin squeezing of two two-level atoms coupled to
//! a single far-detuned cavity mode.
//!
//! In the dispersive regime the cavity only enters through the coupling
//! strength Delta0 = g^2 delta / (k^2 + delta^2), and the atoms evolve under
//! the effective Hamiltonian (hbar = 1)
//!
//! ```text
//! H = Delta0 (J^2 - Jz^2 + 2 nbar Jz)
//! ```
//!
//! acting on the pair state prepared as an atomic coherent state |theta, phi>.
//! The library computes the reduced single-atom state, its entanglement
//! entropy (in bits), concurrence and entanglement of formation, occupation
//! probabilities, and the spin squeezing parameters in the mean-spin frame,
//! each along two independent routes: a numeric operator pipeline and closed
//! forms, cross-validated against a brute-force oracle.
//!
//! Module map:
//! - [`numerics`]: dense complex vectors/matrices, Kronecker product, and a
//!   Jacobi eigensolver for Hermitian matrices.
//! - [`spin`]: spin operators, atomic coherent states, and the Dicke-to-product
//!   embedding for the two-atom pair.
//! - [`dynamics`]: cavity parameters, the effective Hamiltonian, and time
//!   evolution by spectral decomposition.
//! - [`bipartite`]: reduced density matrices and entanglement measures.
//! - [`squeezing`]: mean-spin frame and squeezing parameters.
//! - [`oracle`]: independent brute-force recomputation of every reported
//!   quantity, used for cross-validation.

pub mod bipartite;
pub mod dynamics;
pub mod figures;
pub mod numerics;
pub mod oracle;
pub mod spin;
pub mod squeezing;
pub mod verify;

pub use bipartite::{entanglement_report, EntanglementReport};
pub use dynamics::{effective_hamiltonian, evolve, CavityParams, EffectiveH};
pub use oracle::{oracle_full, oracle_state, OracleReport};
pub use spin::{coherent_pair_state, CoherentPrep, ProductState};
pub use squeezing::{squeezing_params, squeezing_scan, SqueezingReport};
