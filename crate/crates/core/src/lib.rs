//! Multipartite pure-state toolkit.
//!
//! The crate covers four layers:
//!
//! * [`linalg`]: dense complex matrices, a cyclic Jacobi Hermitian
//!   eigensolver, a one-sided Jacobi SVD, Kronecker products and partial
//!   transposes.
//! * [`state`]: multipartite pure states with local unitaries, party
//!   regrouping and partial traces.
//! * [`schmidt`] and [`invariants`]: Schmidt decompositions, majorization,
//!   the bipartite LOCC convertibility test, local-unitary polynomial
//!   invariants and a sound certifier for multipartite LOCC
//!   incommensurability.
//! * [`catalog`] and [`secret_sharing`]: named states and the ((3,2))
//!   qutrit threshold scheme, including a single-party cheating attack.
//!
//! Basis states are indexed lexicographically with party 0 as the most
//! significant digit.

pub mod catalog;
pub mod error;
pub mod invariants;
pub mod linalg;
pub mod random;
pub mod report;
pub mod schmidt;
pub mod secret_sharing;
pub mod state;
pub mod state_file;
pub mod tol;

pub use error::{Error, Result};
pub use invariants::{
    certify_incommensurate, compute_invariants, hidden_from_single_party,
    hidden_param_lower_bound, purity_per_party, IncommensurabilityVerdict, InvariantSet,
    VerdictKind, Witness, WitnessQuantity,
};
pub use linalg::{ComplexMatrix, Spectrum};
pub use num_complex::Complex64;
pub use schmidt::{majorizes, min_pt_eigenvalue, nielsen_transformable, schmidt, SchmidtDecomposition};
pub use secret_sharing::{DecodePair, DecodeResult, SecretQutrit};
pub use state::{tensor_states, DensityMatrix, LocalUnitary, PureState};
