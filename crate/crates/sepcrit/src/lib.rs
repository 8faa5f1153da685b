//! Separability criteria for finite-dimensional quantum states.
//!
//! The crate evaluates a family of entanglement tests on dense density
//! matrices: the realignment (CCNR) criterion, nonlinear witnesses built
//! from local orthogonal observables, realignment and partial-transpose
//! tests applied to the correlation part `rho - rho_A ⊗ rho_B` with
//! purity-dependent bounds, the Bloch-representation (dV) bound, and
//! realignment tests on even-partite systems. On top of the criteria sit
//! threshold bisection, noise-robustness sweeps and randomized consistency
//! scans.

pub mod analysis;
pub mod criteria;
pub mod linalg;
pub mod states;

pub use criteria::{Criterion, CriterionError, CriterionResult};
pub use linalg::{CMatrix, CVector, LinalgError, Scalar};
pub use states::{DensityMatrix, StateError};
