//! Numerical tolerances shared by every module.

/// Hermiticity check on entries.
pub const HERMITIAN: f64 = 1e-10;
/// Orthonormality of vector families and unitarity.
pub const ORTHONORMAL: f64 = 1e-9;
/// Reconstruction of matrices from spectral data.
pub const RECONSTRUCTION: f64 = 1e-9;
/// Trace preservation.
pub const TRACE: f64 = 1e-12;
/// Unit norm of state vectors.
pub const NORM: f64 = 1e-10;
/// Eigenvalue gaps at or below this are one degenerate eigenvalue.
pub const DEGENERACY: f64 = 1e-8;
/// Outcome probabilities at or below this are null.
pub const DETECTABLE: f64 = 1e-12;
/// Schmidt coefficients squared below this are dropped.
pub const SCHMIDT_CUTOFF: f64 = 1e-12;
/// Residual norm below which Gram-Schmidt skips a candidate vector.
pub const GRAM_SCHMIDT_SKIP: f64 = 1e-8;
/// Residual for the definite-value membership test `P v = v`.
pub const DEFINITE_VALUE: f64 = 1e-8;
/// Eigenvalues of a density operator may dip this far below zero.
pub const NEGATIVE_EIGENVALUE: f64 = 1e-10;
/// Entropy identities.
pub const ENTROPY: f64 = 1e-9;
/// Probability reproducibility and the transformer/dilation connection.
pub const PRC: f64 = 1e-10;
/// Commutator norms that should vanish.
pub const COMMUTATOR: f64 = 1e-10;
/// Repeatability criterion `A_k = P_k A_k`.
pub const REPEATABLE: f64 = 1e-9;
/// Renormalization window for parsed amplitudes.
pub const PARSE_RENORMALIZE: f64 = 1e-6;
