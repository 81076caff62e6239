use super::entropy::{matrix_entropy, spectral_entropy};
use crate::error::{check_dim, Result};
use crate::linalg::{hermitian_eig, ComplexMatrix, ComplexVector};
use crate::quantum::{luders_update, DensityOperator, Observable, QuantumState};

/// Entropy increase under the Lüders update, `S(Σ_k P_k ρ P_k) − S(ρ)`, in bits.
///
/// For a pure state `ψ` the updated state is `Σ_k |w_k⟩⟨w_k|` with
/// `w_k = P_k ψ`; its nonzero spectrum is that of the Gram matrix
/// `G_ij = ⟨w_i|w_j⟩`, which is used instead of the full operator.
pub fn incompatibility_entropy<S: QuantumState + ?Sized>(obs: &Observable, state: &S) -> Result<f64> {
    check_dim(state.dim(), obs.dim(), "state for observable")?;
    let value = match state.as_vector() {
        Some(psi) => {
            let branches: Vec<ComplexVector> = obs.terms().iter().map(|t| t.projector.apply(psi)).collect();
            let m = branches.len();
            let mut gram = ComplexMatrix::zeros(m, m);
            for i in 0..m {
                for j in 0..m {
                    gram[(i, j)] = branches[i].inner(&branches[j]);
                }
            }
            spectral_entropy(&hermitian_eig(&gram.hermitian_part())?.values)?
        }
        None => {
            let rho = state.density();
            let updated = luders_update(obs, &rho)?;
            matrix_entropy(updated.matrix())? - matrix_entropy(rho.matrix())?
        }
    };
    Ok(value)
}

/// `‖Aρ − ρA‖_F` with `A = Σ_k a_k P_k`.
pub fn commutator_norm(obs: &Observable, rho: &DensityOperator) -> Result<f64> {
    check_dim(rho.dim(), obs.dim(), "density operator for observable")?;
    Ok(obs.matrix().commutator(rho.matrix())?.frobenius_norm())
}
