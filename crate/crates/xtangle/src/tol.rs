//! Numerical tolerances used throughout the crate.
//!
//! Every comparison against zero or against a structural constraint goes
//! through one of these constants so the whole crate agrees on what counts
//! as negligible.

/// Largest allowed mismatch between an entry and its conjugate transpose.
pub const HERMITICITY: f64 = 1e-10;

/// Largest allowed deviation of the trace from one.
pub const TRACE: f64 = 1e-10;

/// Eigenvalues above `-PSD_FLOOR` count as nonnegative.
pub const PSD_FLOOR: f64 = 1e-10;

/// Eigenvalues below this threshold do not count toward the rank.
pub const RANK: f64 = 1e-9;

/// Largest magnitude tolerated in a matrix entry that the X pattern
/// requires to vanish.
pub const X_SHAPE: f64 = 1e-10;

/// How close the purity must be to one for a state to count as pure.
pub const PURITY_ONE: f64 = 2e-10;

/// Default tolerance for geometric classification (edge and vertex
/// proximity in the coherence rectangle).
pub const GEOMETRY: f64 = 1e-10;

/// Convergence threshold for the Jacobi eigensolver, relative to the
/// Frobenius norm of the input.
pub const JACOBI_OFF: f64 = 1e-14;

/// Tolerance on the population asymmetry invariant when deciding whether
/// the two reduced states carry equal entropy.
pub const DELTA_ENTROPY: f64 = 1e-12;
