use serde::Serialize;

use crate::error::{check_dim, Error, Result};
use crate::linalg::{hermitian_eig, ComplexMatrix, ComplexVector, C64};
use crate::quantum::{Observable, PureState};
use crate::random::{random_unitary, seeded_rng};
use crate::tol;

/// One state transformer `A_k` per spectral term of the measured observable,
/// in the observable's term order (the outcome label is the term index).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StateTransformerSet {
    operators: Vec<ComplexMatrix>,
    observable: Observable,
}

impl StateTransformerSet {
    /// Validates completeness `Σ A_k†A_k = 1` and the projector-valued
    /// condition `A_k†A_k = P_k`.
    pub fn new(observable: Observable, operators: Vec<ComplexMatrix>) -> Result<Self> {
        let invalid = |msg: String| Err(Error::InvalidTransformers(msg));
        if operators.len() != observable.len() {
            return invalid(format!(
                "{} transformers for an observable with {} spectral terms",
                operators.len(),
                observable.len()
            ));
        }
        let n = observable.dim();
        let mut sum = ComplexMatrix::zeros(n, n);
        for (k, a) in operators.iter().enumerate() {
            if a.rows() != n || a.cols() != n {
                return invalid(format!(
                    "transformer {k} is {}x{}, expected {n}x{n}",
                    a.rows(),
                    a.cols()
                ));
            }
            let ata = a.adjoint().mul(a);
            let pvm = ata.distance(observable.projector(k));
            if pvm > tol::ORTHONORMAL {
                return invalid(format!("A_{k}^dagger A_{k} differs from P_{k} by {pvm:.3e}"));
            }
            sum.add_assign(&ata);
        }
        let completeness = sum.distance(&ComplexMatrix::identity(n));
        if completeness > tol::ORTHONORMAL {
            return invalid(format!("transformers are not complete (defect {completeness:.3e})"));
        }
        Ok(Self { operators, observable })
    }

    pub fn observable(&self) -> &Observable {
        &self.observable
    }

    pub fn operators(&self) -> &[ComplexMatrix] {
        &self.operators
    }

    pub fn operator(&self, k: usize) -> &ComplexMatrix {
        &self.operators[k]
    }

    pub fn len(&self) -> usize {
        self.operators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.operators.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.observable.dim()
    }
}

/// Ideal (Lüders) measurement: `A_k = P_k`.
pub fn make_ideal_transformers(obs: &Observable) -> StateTransformerSet {
    StateTransformerSet {
        operators: obs.terms().iter().map(|t| t.projector.clone()).collect(),
        observable: obs.clone(),
    }
}

/// Repeatable transformers `A_k = W_k P_k` with `W_k` a seeded random unitary
/// on the range of `P_k` and zero on its complement.
pub fn make_repeatable_transformers(obs: &Observable, seed: u64) -> StateTransformerSet {
    let mut rng = seeded_rng(seed);
    let operators = obs
        .terms()
        .iter()
        .map(|t| {
            let basis = range_basis(&t.projector);
            let w = random_unitary(basis.len(), &mut rng);
            let e = ComplexMatrix::from_columns(&basis).expect("equal dimensions");
            e.mul(&w).mul(&e.adjoint())
        })
        .collect();
    StateTransformerSet {
        operators,
        observable: obs.clone(),
    }
}

/// Non-repeatable negative control for an observable with rank-one projectors:
/// `A_k = |v_{k+1}⟩⟨v_k|` (indices cyclic), so every outcome leaves the object
/// in the next eigenspace. Satisfies completeness and `A_k†A_k = P_k`.
pub fn make_shifted_transformers(obs: &Observable) -> Result<StateTransformerSet> {
    let vectors: Vec<ComplexVector> = obs
        .terms()
        .iter()
        .map(|t| {
            let basis = range_basis(&t.projector);
            if basis.len() == 1 {
                Ok(basis.into_iter().next().expect("one vector"))
            } else {
                Err(Error::InvalidTransformers(format!(
                    "shifted transformers need rank-one projectors, found rank {}",
                    basis.len()
                )))
            }
        })
        .collect::<Result<_>>()?;
    let n = vectors.len();
    let operators = (0..n).map(|k| vectors[(k + 1) % n].outer(&vectors[k])).collect();
    StateTransformerSet::new(obs.clone(), operators)
}

/// Orthonormal basis of the range of a projector.
fn range_basis(p: &ComplexMatrix) -> Vec<ComplexVector> {
    let eig = hermitian_eig(p).expect("projectors are Hermitian");
    eig.values
        .iter()
        .enumerate()
        .filter(|(_, &v)| v > 0.5)
        .map(|(i, _)| eig.vectors.column(i))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RepeatabilityCheck {
    pub repeatable: bool,
    /// `max_k ‖A_k − P_k A_k‖_F`
    pub max_violation: f64,
}

/// Repeatability criterion `A_k = P_k A_k` for every outcome.
pub fn is_repeatable(ts: &StateTransformerSet) -> RepeatabilityCheck {
    let max_violation = ts
        .operators
        .iter()
        .enumerate()
        .map(|(k, a)| a.distance(&ts.observable.projector(k).mul(a)))
        .fold(0.0, f64::max);
    RepeatabilityCheck {
        repeatable: max_violation < tol::REPEATABLE,
        max_violation,
    }
}

/// `p_k^{-1/2} A_k |ψ⟩`
pub fn post_state(ts: &StateTransformerSet, psi: &PureState, k: usize) -> Result<PureState> {
    check_dim(psi.vector().dim(), ts.dim(), "state for transformers")?;
    if k >= ts.len() {
        return Err(Error::DimensionMismatch(format!("outcome {k} of {}", ts.len())));
    }
    let image = ts.operators[k].apply(psi.vector());
    let probability = image.norm_sqr();
    if probability <= tol::DETECTABLE {
        return Err(Error::NullOutcome {
            outcome: k,
            probability,
        });
    }
    PureState::new(image.scale(C64::new(1.0 / probability.sqrt(), 0.0)))
}
