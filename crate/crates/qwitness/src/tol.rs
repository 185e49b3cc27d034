//! Central table of numeric tolerances.
//!
//! Every predicate in the crate reads its default tolerance from here, so
//! the numerical policy can be audited in one place.

/// Default absolute tolerance for matrix predicates (Hermiticity, unitarity,
/// commutation checks).
pub const ATOL_PREDICATE: f64 = 1e-10;

/// Absolute tolerance on the trace of a density state.
pub const ATOL_TRACE: f64 = 1e-12;

/// A density state may have eigenvalues down to this floor and still count
/// as positive semidefinite (eigensolver noise floor).
pub const PSD_EIG_FLOOR: f64 = -1e-10;

/// Maximum trace-distance deviation a copy channel may show on its two
/// pinned basis inputs.
pub const CONTRACT_TOL: f64 = 1e-9;

/// Maximum residual outside the dephasing-invariant family for outputs of a
/// covariant channel acting on a family member.
pub const FAMILY_RESIDUAL_TOL: f64 = 1e-9;

/// Off-diagonal Frobenius mass at which the Jacobi eigensolver stops.
pub const EIGEN_OFFDIAG_TOL: f64 = 1e-14;

/// Required reconstruction accuracy of the eigendecomposition.
pub const EIGEN_RECON_TOL: f64 = 1e-9;

/// Largest imaginary part tolerated when an expectation value is reduced to
/// a real number.
pub const ATOL_IMAG: f64 = 1e-10;
