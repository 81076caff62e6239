//! Dense complex linear algebra for small quantum systems.

mod eig;
mod isometry;
mod matrix;
mod tensor;
mod vector;

pub use eig::{hermitian_eig, HermitianEigen};
pub use isometry::complete_isometry;
pub use matrix::{kron, ComplexMatrix};
pub use tensor::{partial_inner, partial_trace, TensorStructure, TensorVector};
pub use vector::ComplexVector;

pub type C64 = num_complex::Complex64;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LinalgError {
    #[error("matrix is not Hermitian (max asymmetry {0:.3e})")]
    NotHermitian(f64),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("input columns are not orthonormal (max deviation {0:.3e})")]
    NotOrthonormal(f64),
    #[error("Jacobi eigensolver did not converge after {0} sweeps")]
    NoConvergence(usize),
}

pub(crate) fn mismatch(msg: impl Into<String>) -> LinalgError {
    LinalgError::DimensionMismatch(msg.into())
}
