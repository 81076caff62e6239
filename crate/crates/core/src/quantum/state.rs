use serde::Serialize;

use super::Observable;
use crate::error::{check_dim, Error, Result};
use crate::linalg::{hermitian_eig, ComplexMatrix, ComplexVector, TensorStructure, TensorVector, C64};
use crate::tol;

/// Anything that assigns expectation values to operators.
pub trait QuantumState {
    fn dim(&self) -> usize;

    /// `⟨op⟩` in this state.
    fn expect(&self, op: &ComplexMatrix) -> Result<C64>;

    fn density(&self) -> DensityOperator;

    /// The state vector, for pure states.
    fn as_vector(&self) -> Option<&ComplexVector> {
        None
    }
}

/// Normalized state vector.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PureState {
    vector: ComplexVector,
}

impl PureState {
    pub fn new(vector: ComplexVector) -> Result<Self> {
        if vector.dim() == 0 || !vector.is_normalized(tol::NORM) {
            return Err(Error::NotNormalized(vector.norm()));
        }
        Ok(Self { vector })
    }

    /// Normalizes any nonzero vector.
    pub fn normalizing(vector: &ComplexVector) -> Result<Self> {
        vector
            .normalized()
            .map(|vector| Self { vector })
            .ok_or(Error::NotNormalized(0.0))
    }

    pub fn basis(dim: usize, index: usize) -> Self {
        Self {
            vector: ComplexVector::basis(dim, index),
        }
    }

    /// Equal-weight superposition of all basis vectors.
    pub fn uniform(dim: usize) -> Self {
        let a = 1.0 / (dim as f64).sqrt();
        Self {
            vector: ComplexVector::from_real(&vec![a; dim]),
        }
    }

    pub fn vector(&self) -> &ComplexVector {
        &self.vector
    }

    pub fn into_vector(self) -> ComplexVector {
        self.vector
    }
}

impl QuantumState for PureState {
    fn dim(&self) -> usize {
        self.vector.dim()
    }

    fn expect(&self, op: &ComplexMatrix) -> Result<C64> {
        check_dim(op.cols(), self.dim(), "operator on pure state")?;
        Ok(op.expectation(&self.vector)?)
    }

    fn density(&self) -> DensityOperator {
        DensityOperator {
            matrix: self.vector.projector(),
        }
    }

    fn as_vector(&self) -> Option<&ComplexVector> {
        Some(&self.vector)
    }
}

/// Hermitian, positive semidefinite, unit trace.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DensityOperator {
    matrix: ComplexMatrix,
}

impl DensityOperator {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        let defect = matrix.hermitian_defect();
        if defect > tol::HERMITIAN {
            return Err(Error::NotDensityOperator(format!(
                "not Hermitian (defect {defect:.3e})"
            )));
        }
        let tr = matrix.trace();
        if (tr - 1.0).norm() > tol::NORM {
            return Err(Error::NotDensityOperator(format!("trace {tr}")));
        }
        let eig = hermitian_eig(&matrix)?;
        if let Some(&low) = eig.values.first() {
            if low < -tol::NEGATIVE_EIGENVALUE {
                return Err(Error::NotDensityOperator(format!("negative eigenvalue {low:.3e}")));
            }
        }
        Ok(Self { matrix })
    }

    /// Wraps a matrix that is a density operator by construction.
    pub(crate) fn new_unchecked(matrix: ComplexMatrix) -> Self {
        Self { matrix }
    }

    pub fn from_pure(v: &ComplexVector) -> Result<Self> {
        Ok(PureState::new(v.clone())?.density())
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self {
            matrix: ComplexMatrix::identity(dim).scale_real(1.0 / dim as f64),
        }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    /// Ascending eigenvalues.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        Ok(hermitian_eig(&self.matrix)?.values)
    }
}

impl QuantumState for DensityOperator {
    fn dim(&self) -> usize {
        self.matrix.rows()
    }

    fn expect(&self, op: &ComplexMatrix) -> Result<C64> {
        check_dim(op.cols(), self.dim(), "operator on density operator")?;
        Ok(op.matmul(&self.matrix)?.trace())
    }

    fn density(&self) -> DensityOperator {
        self.clone()
    }
}

/// Indices of spectral terms split by whether the state gives them positive probability.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OutcomePartition {
    pub detectable: Vec<usize>,
    pub null: Vec<usize>,
}

/// `p_k = ⟨P_k⟩` for every spectral term, in the observable's ascending order.
pub fn probabilities<S: QuantumState + ?Sized>(obs: &Observable, state: &S) -> Result<Vec<f64>> {
    check_dim(state.dim(), obs.dim(), "state for observable")?;
    obs.terms().iter().map(|t| Ok(state.expect(&t.projector)?.re)).collect()
}

pub fn classify_outcomes<S: QuantumState + ?Sized>(obs: &Observable, state: &S) -> Result<OutcomePartition> {
    let p = probabilities(obs, state)?;
    let (detectable, null) = (0..p.len()).partition(|&k| p[k] > tol::DETECTABLE);
    Ok(OutcomePartition { detectable, null })
}

/// `Σ_k P_k ρ P_k` over every spectral term.
pub fn luders_update(obs: &Observable, rho: &DensityOperator) -> Result<DensityOperator> {
    check_dim(rho.dim(), obs.dim(), "density operator for observable")?;
    let n = obs.dim();
    let mut out = ComplexMatrix::zeros(n, n);
    for t in obs.terms() {
        out.add_assign(&t.projector.mul(rho.matrix()).mul(&t.projector));
    }
    Ok(DensityOperator::new_unchecked(out.hermitian_part()))
}

/// Pure state on `d ⊗ d` whose first-factor marginal is `rho`:
/// `Σ_i √λ_i |v_i⟩ ⊗ |e_i⟩` over eigenpairs with `λ_i` above the cutoff.
pub fn purify(rho: &DensityOperator) -> Result<TensorVector> {
    let d = rho.dim();
    let eig = hermitian_eig(rho.matrix())?;
    if eig.values.first().is_some_and(|&l| l < -tol::NEGATIVE_EIGENVALUE) {
        return Err(Error::NotDensityOperator("negative eigenvalue".into()));
    }
    let mut out = ComplexVector::zeros(d * d);
    for (i, &lambda) in eig.values.iter().enumerate() {
        if lambda < tol::DETECTABLE {
            continue;
        }
        let term = eig.vectors.column(i).kron(&ComplexVector::basis(d, i));
        out = out.add(&term.scale(C64::new(lambda.sqrt(), 0.0)));
    }
    Ok(TensorVector::new(out, TensorStructure::bipartite(d, d))?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::partial_trace;
    use crate::random::{random_density, random_state, seeded_rng};

    fn plus() -> PureState {
        PureState::uniform(2)
    }

    #[test]
    fn classify_eigenstate_and_superposition() {
        let z = Observable::pauli_z();
        let part = classify_outcomes(&z, &PureState::basis(2, 0)).unwrap();
        assert_eq!(
            part,
            OutcomePartition {
                detectable: vec![1],
                null: vec![0]
            }
        );
        let part = classify_outcomes(&z, &plus()).unwrap();
        assert_eq!(part.detectable, vec![0, 1]);
        assert!(part.null.is_empty());
    }

    #[test]
    fn classify_support_on_one_eigenspace() {
        // 4-dim observable with eigenspaces {0,1} -> a=0 and {2} -> a=1, {3} -> a=2.
        let obs = Observable::diag(&[0.0, 0.0, 1.0, 2.0]).unwrap();
        let mut rng = seeded_rng(9);
        let raw = random_state(2, &mut rng);
        let psi = PureState::new(ComplexVector::new(vec![
            raw[0],
            raw[1],
            C64::new(0.0, 0.0),
            C64::new(0.0, 0.0),
        ]))
        .unwrap();
        // Oracle: p_k as summed squared amplitudes over each eigenspace.
        let oracle = [raw[0].norm_sqr() + raw[1].norm_sqr(), 0.0, 0.0];
        let p = probabilities(&obs, &psi).unwrap();
        for (a, b) in p.iter().zip(oracle) {
            assert!((a - b).abs() < 1e-14);
        }
        assert_eq!(classify_outcomes(&obs, &psi).unwrap().detectable, vec![0]);
    }

    #[test]
    fn probabilities_examples() {
        let z = Observable::pauli_z();
        assert_eq!(probabilities(&z, &PureState::basis(2, 0)).unwrap(), vec![0.0, 1.0]);
        let p = probabilities(&z, &plus()).unwrap();
        assert!((p[0] - 0.5).abs() < 1e-15 && (p[1] - 0.5).abs() < 1e-15);
        let psi = PureState::new(ComplexVector::from_real(&[0.3f64.sqrt(), 0.7f64.sqrt()])).unwrap();
        let p = probabilities(&z, &psi).unwrap();
        assert!((p[0] - 0.7).abs() < 1e-15 && (p[1] - 0.3).abs() < 1e-15);
        let p_mixed = probabilities(&z, &psi.density()).unwrap();
        assert!((p_mixed[0] - 0.7).abs() < 1e-15);
        assert!(probabilities(&z, &PureState::basis(3, 0)).is_err());
    }

    #[test]
    fn luders_examples() {
        let z = Observable::pauli_z();
        let diag = DensityOperator::new(ComplexMatrix::from_diag(&[0.25, 0.75])).unwrap();
        assert_eq!(luders_update(&z, &diag).unwrap(), diag);
        let out = luders_update(&z, &plus().density()).unwrap();
        assert!(out.matrix().distance(DensityOperator::maximally_mixed(2).matrix()) < 1e-15);

        let rho = DensityOperator::new(random_density(2, &mut seeded_rng(2))).unwrap();
        let out = luders_update(&z, &rho).unwrap();
        // Oracle: off-diagonals vanish, diagonal kept.
        let m = rho.matrix();
        let mut expected = ComplexMatrix::zeros(2, 2);
        expected[(0, 0)] = m[(0, 0)];
        expected[(1, 1)] = m[(1, 1)];
        assert!(out.matrix().distance(&expected) < 1e-15);
        assert!(out.matrix().commutator(&z.matrix()).unwrap().frobenius_norm() < 1e-10);
    }

    #[test]
    fn density_operator_validation() {
        assert!(DensityOperator::new(ComplexMatrix::from_diag(&[0.5, 0.6])).is_err());
        assert!(DensityOperator::new(ComplexMatrix::from_diag(&[1.5, -0.5])).is_err());
        let mut nh = ComplexMatrix::from_diag(&[0.5, 0.5]);
        nh[(0, 1)] = C64::new(0.1, 0.0);
        assert!(DensityOperator::new(nh).is_err());
    }

    #[test]
    fn pure_state_validation() {
        assert!(PureState::new(ComplexVector::from_real(&[1.0, 1.0])).is_err());
        assert!(PureState::new(ComplexVector::zeros(0)).is_err());
        assert!(PureState::normalizing(&ComplexVector::zeros(2)).is_err());
    }

    #[test]
    fn purify_pure_input_is_product() {
        let rho = PureState::basis(2, 0).density();
        let p = purify(&rho).unwrap();
        // Jacobi on diag(0,1) orders eigenvalue 1 last, paired with ancilla e_1.
        let back = partial_trace(&p.density(), &p.structure, &[0]).unwrap();
        assert_eq!(&back, rho.matrix());
        let ent = partial_trace(&p.density(), &p.structure, &[1]).unwrap();
        assert!(ent.is_projector(1e-15));
    }

    #[test]
    fn purify_maximally_mixed_is_bell_like() {
        let p = purify(&DensityOperator::maximally_mixed(2)).unwrap();
        let back = partial_trace(&p.density(), &p.structure, &[0]).unwrap();
        assert!(back.distance(DensityOperator::maximally_mixed(2).matrix()) < 1e-15);
        let other = partial_trace(&p.density(), &p.structure, &[1]).unwrap();
        assert!(other.distance(DensityOperator::maximally_mixed(2).matrix()) < 1e-15);
    }

    #[test]
    fn purify_random_3dim() {
        let rho = DensityOperator::new(random_density(3, &mut seeded_rng(31))).unwrap();
        let p = purify(&rho).unwrap();
        assert!(p.vector.is_normalized(1e-12));
        let back = partial_trace(&p.density(), &p.structure, &[0]).unwrap();
        assert!(back.distance(rho.matrix()) < 1e-10);
    }
}
