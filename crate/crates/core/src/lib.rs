//! Fermionic Fock-space states under the Spin group.
//!
//! States of `d` fermionic modes live in a dense `2^d` amplitude vector.
//! The crate provides the CAR operators, Bogoliubov (Spin-group)
//! transformations, the Mukai pairing and moment map with their invariants,
//! pure-spinor detection, orbit classification for `d <= 6`, and the
//! single/double-occupancy embeddings of two and three qubits.

pub mod classify;
pub mod clifford;
pub mod coords;
pub mod embed;
pub mod error;
pub mod fock;
pub mod invariants;
pub mod io;
pub mod linalg;
pub mod pfaffian;
pub mod selftest;
pub mod spin;

pub use classify::{
    annihilator_kernel, canonical_state, classify, is_pure_spinor, orbit_sample,
    pure_spinor_generate, CanonicalForm, ClassificationReport, OrbitLabel, Tolerances,
};
pub use clifford::{apply_vector, chain_to_vector_matrix, form, reflect, CliffordVector, VectorChain};
pub use embed::{
    cayley_hyperdeterminant, duality_check, embed_three_qubit_even, embed_three_qubit_odd,
    embed_two_qubit_d4, three_tangle, ThreeQubitState, TwoQubitState,
};
pub use error::{Error, Result};
pub use fock::{
    annihilate, create, hermitian_inner, random_state, top_coefficient, transpose, wedge,
    FockState, ParitySector,
};
pub use invariants::{
    invariant_report, moment_map, mukai_pairing, q_invariants, vector_covariant, InvariantReport,
    MomentMapMatrix,
};
pub use linalg::{CMatrix, CVector};
pub use num_complex::Complex64;
pub use spin::{
    closed_form_even_d6, compact_form_image, exp_spinor, exp_vector, is_unitary_generator,
    spinor_operator, vacuum_orbit_state, vector_matrix, SpinElement, SpinGenerator,
};
