//! Numerical tolerances shared across the crate.

/// Matrix identities: orthogonality, homomorphism, projector algebra.
pub const MATRIX_EPS: f64 = 1e-9;

/// Agreement between independently computed eigenvalues.
pub const EIGEN_EPS: f64 = 1e-6;

/// Euclidean distance below which two orbit vectors are the same vector.
pub const VECTOR_MATCH: f64 = 1e-7;

/// `|⟨u|v⟩|` below which two orbit vectors count as orthogonal.
pub const ORTHOGONALITY_EPS: f64 = 1e-7;
