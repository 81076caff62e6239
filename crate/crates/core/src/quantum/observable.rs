use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eig, ComplexMatrix, TensorStructure, C64};
use crate::tol;

/// One eigenvalue with its spectral projector.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralTerm {
    pub eigenvalue: f64,
    pub projector: ComplexMatrix,
}

/// Discrete observable in spectral form with distinct eigenvalues, ascending.
///
/// Projectors may have any rank. Which terms are detectable depends on the
/// state, see [`classify_outcomes`](super::classify_outcomes).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Observable {
    terms: Vec<SpectralTerm>,
    dim: usize,
}

impl Observable {
    /// Spectral form of a Hermitian matrix. Eigenvalues closer than the
    /// degeneracy tolerance are merged into one term at their mean.
    pub fn from_matrix(h: &ComplexMatrix) -> Result<Self> {
        let eig = hermitian_eig(h)?;
        let n = h.rows();
        let mut terms: Vec<SpectralTerm> = Vec::new();
        let mut cluster: Vec<usize> = Vec::new();
        let flush = |cluster: &mut Vec<usize>, terms: &mut Vec<SpectralTerm>| {
            if cluster.is_empty() {
                return;
            }
            let mean = cluster.iter().map(|&i| eig.values[i]).sum::<f64>() / cluster.len() as f64;
            let mut projector = ComplexMatrix::zeros(n, n);
            for &i in cluster.iter() {
                projector.add_assign(&eig.vectors.column(i).projector());
            }
            terms.push(SpectralTerm {
                eigenvalue: mean,
                projector,
            });
            cluster.clear();
        };
        for i in 0..n {
            if let Some(&last) = cluster.last() {
                if eig.values[i] - eig.values[last] > tol::DEGENERACY {
                    flush(&mut cluster, &mut terms);
                }
            }
            cluster.push(i);
        }
        flush(&mut cluster, &mut terms);
        let obs = Self { terms, dim: n };
        validate_observable(&obs)?;
        Ok(obs)
    }

    /// Builds from explicit spectral terms, sorted into ascending order and validated.
    pub fn from_terms(mut terms: Vec<SpectralTerm>) -> Result<Self> {
        let dim = terms
            .first()
            .map(|t| t.projector.rows())
            .ok_or_else(|| Error::InvalidObservable("no spectral terms".into()))?;
        terms.sort_by(|a, b| a.eigenvalue.total_cmp(&b.eigenvalue));
        let obs = Self { terms, dim };
        validate_observable(&obs)?;
        Ok(obs)
    }

    pub fn diag(values: &[f64]) -> Result<Self> {
        Self::from_matrix(&ComplexMatrix::from_diag(values))
    }

    pub fn pauli_x() -> Self {
        Self::from_matrix(&ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]])).expect("Pauli X")
    }

    pub fn pauli_y() -> Self {
        let mut y = ComplexMatrix::zeros(2, 2);
        y[(0, 1)] = C64::new(0.0, -1.0);
        y[(1, 0)] = C64::new(0.0, 1.0);
        Self::from_matrix(&y).expect("Pauli Y")
    }

    pub fn pauli_z() -> Self {
        Self::diag(&[1.0, -1.0]).expect("Pauli Z")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[SpectralTerm] {
        &self.terms
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        self.terms.iter().map(|t| t.eigenvalue).collect()
    }

    pub fn projector(&self, k: usize) -> &ComplexMatrix {
        &self.terms[k].projector
    }

    /// `Σ_k a_k P_k`
    pub fn matrix(&self) -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(self.dim, self.dim);
        for t in &self.terms {
            m.add_assign(&t.projector.scale_real(t.eigenvalue));
        }
        m
    }

    /// Same observable acting on `factor` of a composite space: each projector
    /// becomes `1 ⊗ … ⊗ P_k ⊗ … ⊗ 1`.
    pub fn lift(&self, structure: &TensorStructure, factor: usize) -> Result<Self> {
        if factor >= structure.factors() || structure.dim(factor) != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "observable of dimension {} on factor {factor} of {:?}",
                self.dim,
                structure.factor_dims()
            )));
        }
        let before: usize = structure.factor_dims()[..factor].iter().product();
        let after: usize = structure.factor_dims()[factor + 1..].iter().product();
        let left = ComplexMatrix::identity(before);
        let right = ComplexMatrix::identity(after);
        let terms = self
            .terms
            .iter()
            .map(|t| SpectralTerm {
                eigenvalue: t.eigenvalue,
                projector: left.kron(&t.projector).kron(&right),
            })
            .collect();
        Ok(Self {
            terms,
            dim: structure.total_dim(),
        })
    }
}

pub fn observable_from_matrix(h: &ComplexMatrix) -> Result<Observable> {
    Observable::from_matrix(h)
}

/// Checks distinct eigenvalues, Hermitian idempotent projectors, mutual
/// orthogonality and completeness.
pub fn validate_observable(obs: &Observable) -> Result<()> {
    let invalid = |msg: String| Err(Error::InvalidObservable(msg));
    if obs.terms.is_empty() {
        return invalid("no spectral terms".into());
    }
    let n = obs.dim;
    let mut sum = ComplexMatrix::zeros(n, n);
    for (i, t) in obs.terms.iter().enumerate() {
        if !t.eigenvalue.is_finite() {
            return invalid(format!("eigenvalue {i} is not finite"));
        }
        if t.projector.rows() != n || !t.projector.is_square() {
            return invalid(format!("projector {i} is not {n}x{n}"));
        }
        if !t.projector.is_hermitian(tol::ORTHONORMAL) {
            return invalid(format!("projector {i} is not Hermitian"));
        }
        let idem = t.projector.mul(&t.projector).distance(&t.projector);
        if idem > tol::ORTHONORMAL {
            return invalid(format!("projector {i} is not idempotent (defect {idem:.3e})"));
        }
        for (j, u) in obs.terms.iter().enumerate().skip(i + 1) {
            if (u.eigenvalue - t.eigenvalue).abs() <= tol::DEGENERACY {
                return invalid(format!("eigenvalues {i} and {j} are not distinct"));
            }
            let overlap = t.projector.mul(&u.projector).frobenius_norm();
            if overlap > tol::ORTHONORMAL {
                return invalid(format!("projectors {i} and {j} are not orthogonal ({overlap:.3e})"));
            }
        }
        sum.add_assign(&t.projector);
    }
    let completeness = sum.distance(&ComplexMatrix::identity(n));
    if completeness > tol::ORTHONORMAL {
        return invalid(format!(
            "projectors do not sum to the identity (defect {completeness:.3e})"
        ));
    }
    Ok(())
}
