//! Entanglement measures for two-qubit states and a procedure that derives the
//! relative entropy of entanglement from an optimal entanglement-of-formation
//! decomposition.
//!
//! Layout:
//! - [`qcore`]: 4×4 complex matrices, Jacobi eigensolver, density matrices.
//! - [`measures`]: concurrence, entropies, relative entropy.
//! - [`schmidt`]: Schmidt decomposition and closest separable state of pure states.
//! - [`wootters`]: optimal pure-state decompositions.
//! - [`procedure`]: the four-step closest-separable-state construction.
//! - [`families`]: five parameterized state families with closed forms.
//! - [`oracle`]: numerical minimization of the relative entropy over separable states.
//! - [`sampling`]: seeded random states and family parameters.

pub mod error;
pub mod families;
pub mod measures;
pub mod oracle;
pub mod procedure;
pub mod qcore;
pub mod sampling;
pub mod schmidt;
pub mod wootters;

pub use error::{QreeError, Result};
pub use measures::PureState;
pub use qcore::{DensityMatrix, Mat4, C64};
