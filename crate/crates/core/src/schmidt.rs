//! Schmidt canonical form of bipartite pure states, definite-value checks,
//! reduced states and twin reducees.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eig, partial_inner, ComplexMatrix, ComplexVector, TensorStructure, TensorVector, C64};
use crate::measurement::OutcomeLink;
use crate::quantum::{DensityOperator, Observable};
use crate::tol;

/// Squared coefficients closer than this are treated as one degenerate
/// cluster by [`SchmidtForm::align_to_observable`].
const ALIGN_CLUSTER: f64 = 1e-6;

/// `Σ_k c_k |u_k⟩ ⊗ |v_k⟩` with positive descending `c_k` and orthonormal
/// families `{u_k}` (first factor) and `{v_k}` (second factor).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SchmidtForm {
    coefficients: Vec<f64>,
    left: Vec<ComplexVector>,
    right: Vec<ComplexVector>,
    structure: TensorStructure,
}

impl SchmidtForm {
    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    /// Squared coefficients.
    pub fn weights(&self) -> Vec<f64> {
        self.coefficients.iter().map(|c| c * c).collect()
    }

    pub fn left_vectors(&self) -> &[ComplexVector] {
        &self.left
    }

    pub fn right_vectors(&self) -> &[ComplexVector] {
        &self.right
    }

    pub fn structure(&self) -> &TensorStructure {
        &self.structure
    }

    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// Inside every cluster of (nearly) equal coefficients, rotates the left
    /// vectors to diagonalize `obs` restricted to the cluster span and
    /// recomputes the partners. Non-degenerate terms are untouched.
    ///
    /// The decomposition is not unique within a degenerate cluster; this picks
    /// the basis in which the measured observable has definite values.
    pub fn align_to_observable(&self, obs: &Observable, psi: &ComplexVector) -> Result<Self> {
        if obs.dim() != self.structure.dim(0) {
            return Err(Error::DimensionMismatch(format!(
                "observable of dimension {} for first factor of dimension {}",
                obs.dim(),
                self.structure.dim(0)
            )));
        }
        let a = obs.matrix();
        let weights = self.weights();
        let mut left = self.left.clone();
        let mut start = 0;
        while start < left.len() {
            let mut end = start + 1;
            while end < left.len() && (weights[end - 1] - weights[end]).abs() <= ALIGN_CLUSTER {
                end += 1;
            }
            if end - start > 1 {
                let span = ComplexMatrix::from_columns(&left[start..end])?;
                let restricted = span.adjoint().mul(&a).mul(&span).hermitian_part();
                let eig = hermitian_eig(&restricted)?;
                let rotated = span.mul(&eig.vectors);
                for (slot, j) in (start..end).zip(0..) {
                    left[slot] = rotated.column(j);
                }
            }
            start = end;
        }
        let mut terms = Vec::with_capacity(left.len());
        for u in left {
            let u = fix_phase(u);
            let partner = partial_inner(&u, psi, &self.structure)?;
            let c = partner.norm();
            if c * c <= tol::SCHMIDT_CUTOFF {
                continue;
            }
            terms.push((c, u, partner.scale(C64::new(1.0 / c, 0.0))));
        }
        terms.sort_by(|x, y| y.0.total_cmp(&x.0));
        Ok(Self::from_terms(terms, self.structure.clone()))
    }

    fn from_terms(terms: Vec<(f64, ComplexVector, ComplexVector)>, structure: TensorStructure) -> Self {
        let mut sf = Self {
            coefficients: vec![],
            left: vec![],
            right: vec![],
            structure,
        };
        for (c, u, v) in terms {
            sf.coefficients.push(c);
            sf.left.push(u);
            sf.right.push(v);
        }
        sf
    }
}

/// Makes the first entry with modulus above `1e-8` real and positive.
fn fix_phase(u: ComplexVector) -> ComplexVector {
    match u.iter().find(|z| z.norm() > 1e-8) {
        Some(z) => {
            let phase = z.conj() / z.norm();
            u.scale(phase)
        }
        None => u,
    }
}

/// Schmidt form through the eigendecomposition of the first-factor marginal.
///
/// Coefficients are square roots of the marginal's eigenvalues above the
/// cutoff, descending. Each left vector is phase-fixed and its partner is the
/// normalized partial scalar product `⟨u_k|ψ⟩`.
pub fn schmidt_decompose(psi: &TensorVector) -> Result<SchmidtForm> {
    if psi.structure.factors() != 2 {
        return Err(Error::DimensionMismatch(
            "Schmidt form needs a bipartite structure".into(),
        ));
    }
    let norm = psi.vector.norm();
    if (norm - 1.0).abs() > tol::NORM {
        return Err(Error::NotNormalized(norm));
    }
    let rho1 = psi.reduced(&[0])?;
    let eig = hermitian_eig(&rho1)?;
    let mut order: Vec<usize> = (0..eig.values.len())
        .filter(|&i| eig.values[i] > tol::SCHMIDT_CUTOFF)
        .collect();
    // Stable: equal eigenvalues keep the eigensolver's order.
    order.sort_by(|&i, &j| eig.values[j].total_cmp(&eig.values[i]));

    let mut terms = Vec::with_capacity(order.len());
    for i in order {
        let u = fix_phase(eig.vectors.column(i));
        let partner = partial_inner(&u, &psi.vector, &psi.structure)?;
        let v = partner.normalized().ok_or(Error::NotNormalized(0.0))?;
        terms.push((eig.values[i].sqrt(), u, v));
    }
    Ok(SchmidtForm::from_terms(terms, psi.structure.clone()))
}

/// Schmidt form with degenerate clusters aligned to the measured observable.
pub fn schmidt_decompose_aligned(psi: &TensorVector, obs: &Observable) -> Result<SchmidtForm> {
    schmidt_decompose(psi)?.align_to_observable(obs, &psi.vector)
}

/// `Σ_k c_k u_k ⊗ v_k`
pub fn reconstruct(sf: &SchmidtForm) -> ComplexVector {
    let mut out = ComplexVector::zeros(sf.structure.total_dim());
    for ((c, u), v) in sf.coefficients.iter().zip(&sf.left).zip(&sf.right) {
        out = out.add(&u.kron(v).scale(C64::new(*c, 0.0)));
    }
    out
}

/// Which spectral terms a Schmidt term has definite values for.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TermAssignment {
    pub term: usize,
    pub object_term: usize,
    pub object_value: f64,
    pub pointer_term: usize,
    pub pointer_value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DefiniteValues {
    /// Worst `‖P v − v‖` over left vectors with their assigned projectors.
    pub max_left_violation: f64,
    /// Same for right vectors and pointer projectors.
    pub max_right_violation: f64,
    pub assignment: Vec<TermAssignment>,
}

impl DefiniteValues {
    /// No object term and no pointer term is used twice.
    pub fn is_bijection(&self) -> bool {
        let mut objects: Vec<_> = self.assignment.iter().map(|a| a.object_term).collect();
        let mut pointers: Vec<_> = self.assignment.iter().map(|a| a.pointer_term).collect();
        objects.sort_unstable();
        objects.dedup();
        pointers.sort_unstable();
        pointers.dedup();
        objects.len() == self.assignment.len() && pointers.len() == self.assignment.len()
    }
}

/// Best spectral term for `v`: `(index, ‖P v − v‖)`.
fn best_term(obs: &Observable, v: &ComplexVector) -> (usize, f64) {
    obs.terms()
        .iter()
        .enumerate()
        .map(|(k, t)| (k, t.projector.apply(v).sub(v).norm()))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("observable has terms")
}

/// Checks that every Schmidt term carries definite values: the right vector
/// lies in one pointer eigenspace (`Q v = v`), and the left vector lies in the
/// eigenspace of the object term that `links` ties to that pointer term
/// (`P u = u`). The residuals are `‖P u − u‖`, which vanish exactly when
/// `⟨u|P|u⟩ = 1`.
pub fn verify_definite_values(
    sf: &SchmidtForm,
    object_obs: &Observable,
    pointer_obs: &Observable,
    links: &[OutcomeLink],
) -> Result<DefiniteValues> {
    if object_obs.dim() != sf.structure.dim(0) || pointer_obs.dim() != sf.structure.dim(1) {
        return Err(Error::DimensionMismatch(format!(
            "observables of dimensions ({}, {}) for factors {:?}",
            object_obs.dim(),
            pointer_obs.dim(),
            sf.structure.factor_dims()
        )));
    }
    let mut out = DefiniteValues {
        max_left_violation: 0.0,
        max_right_violation: 0.0,
        assignment: vec![],
    };
    for (term, (u, v)) in sf.left.iter().zip(&sf.right).enumerate() {
        let (pointer_term, right_res) = best_term(pointer_obs, v);
        if right_res >= tol::DEFINITE_VALUE {
            return Err(Error::NoDefiniteValue {
                term,
                residual: right_res,
            });
        }
        let object_term = links
            .iter()
            .find(|l| l.pointer_term == pointer_term)
            .map(|l| l.outcome)
            .ok_or(Error::NoDefiniteValue {
                term,
                residual: f64::INFINITY,
            })?;
        let p = object_obs.projector(object_term);
        let left_res = p.apply(u).sub(u).norm();
        if left_res >= tol::DEFINITE_VALUE {
            return Err(Error::NoDefiniteValue {
                term,
                residual: left_res,
            });
        }
        out.max_left_violation = out.max_left_violation.max(left_res);
        out.max_right_violation = out.max_right_violation.max(right_res);
        out.assignment.push(TermAssignment {
            term,
            object_term,
            object_value: object_obs.terms()[object_term].eigenvalue,
            pointer_term,
            pointer_value: pointer_obs.terms()[pointer_term].eigenvalue,
        });
    }
    Ok(out)
}

/// First- and second-factor marginals of a bipartite pure state.
pub fn reduced_states(psi: &TensorVector) -> Result<(DensityOperator, DensityOperator)> {
    if psi.structure.factors() != 2 {
        return Err(Error::DimensionMismatch(
            "reduced states need a bipartite structure".into(),
        ));
    }
    let norm = psi.vector.norm();
    if (norm - 1.0).abs() > tol::NORM {
        return Err(Error::NotNormalized(norm));
    }
    let rho1 = psi.reduced(&[0])?.hermitian_part();
    let rho2 = psi.reduced(&[1])?.hermitian_part();
    Ok((
        DensityOperator::new_unchecked(rho1),
        DensityOperator::new_unchecked(rho2),
    ))
}

/// Rank-one spectral term of a reducee.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReduceeTerm {
    pub eigenvalue: f64,
    pub vector: ComplexVector,
}

/// Object and pointer observables restricted to the supports of the
/// marginals, diagonal in the respective Schmidt bases.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TwinPair {
    pub object_reducee: Vec<ReduceeTerm>,
    pub pointer_reducee: Vec<ReduceeTerm>,
    /// `(a_k, b_k)` per Schmidt term.
    pub correspondence: Vec<(f64, f64)>,
}

fn reducee_matrix(terms: &[ReduceeTerm], dim: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(dim, dim);
    for t in terms {
        m.add_assign(&t.vector.projector().scale_real(t.eigenvalue));
    }
    m
}

impl TwinPair {
    pub fn object_matrix(&self) -> ComplexMatrix {
        let dim = self.object_reducee.first().map_or(0, |t| t.vector.dim());
        reducee_matrix(&self.object_reducee, dim)
    }

    pub fn pointer_matrix(&self) -> ComplexMatrix {
        let dim = self.pointer_reducee.first().map_or(0, |t| t.vector.dim());
        reducee_matrix(&self.pointer_reducee, dim)
    }
}

/// `A′ = Σ_k a_k |u_k⟩⟨u_k|` and `B′ = Σ_k b_k |v_k⟩⟨v_k|`.
pub fn twin_reducees(sf: &SchmidtForm, values: &DefiniteValues) -> TwinPair {
    let mut pair = TwinPair {
        object_reducee: vec![],
        pointer_reducee: vec![],
        correspondence: vec![],
    };
    for a in &values.assignment {
        pair.object_reducee.push(ReduceeTerm {
            eigenvalue: a.object_value,
            vector: sf.left[a.term].clone(),
        });
        pair.pointer_reducee.push(ReduceeTerm {
            eigenvalue: a.pointer_value,
            vector: sf.right[a.term].clone(),
        });
        pair.correspondence.push((a.object_value, a.pointer_value));
    }
    pair
}
