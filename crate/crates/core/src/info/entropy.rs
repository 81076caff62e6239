use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eig, ComplexMatrix, TensorStructure, TensorVector};
use crate::quantum::DensityOperator;
use crate::schmidt::schmidt_decompose;
use crate::tol;

/// `−Σ p log₂ p` in bits; entries below the cutoff contribute nothing.
pub fn shannon_entropy(p: &[f64]) -> Result<f64> {
    if let Some(bad) = p.iter().find(|&&x| !x.is_finite() || x < -tol::DETECTABLE) {
        return Err(Error::NotADistribution(format!("entry {bad}")));
    }
    let total: f64 = p.iter().sum();
    if (total - 1.0).abs() > tol::ENTROPY {
        return Err(Error::NotADistribution(format!("entries sum to {total}")));
    }
    Ok(entropy_bits(p))
}

pub(crate) fn entropy_bits(p: &[f64]) -> f64 {
    0.0 - p
        .iter()
        .filter(|&&x| x >= tol::DETECTABLE)
        .map(|&x| x * x.log2())
        .sum::<f64>()
}

/// Entropy of a spectrum that should be nonnegative; small negative values
/// are roundoff and are clamped.
pub(crate) fn spectral_entropy(values: &[f64]) -> Result<f64> {
    if let Some(&low) = values.iter().find(|&&x| x < -tol::NEGATIVE_EIGENVALUE) {
        return Err(Error::NotDensityOperator(format!("negative eigenvalue {low:.3e}")));
    }
    let clamped: Vec<f64> = values.iter().map(|&x| x.max(0.0)).collect();
    Ok(entropy_bits(&clamped))
}

pub(crate) fn matrix_entropy(m: &ComplexMatrix) -> Result<f64> {
    spectral_entropy(&hermitian_eig(m)?.values)
}

/// `−Tr ρ log₂ ρ` in bits.
pub fn von_neumann_entropy(rho: &DensityOperator) -> Result<f64> {
    matrix_entropy(rho.matrix())
}

/// Entropy of the first-factor marginal of a bipartite pure state.
pub fn entanglement_of_pure_state(psi: &TensorVector) -> Result<f64> {
    let norm = psi.vector.norm();
    if (norm - 1.0).abs() > tol::NORM {
        return Err(Error::NotNormalized(norm));
    }
    if psi.structure.factors() != 2 {
        return Err(Error::DimensionMismatch(
            "entanglement needs a bipartite structure".into(),
        ));
    }
    matrix_entropy(&psi.reduced(&[0])?)
}

pub enum BipartiteInput<'a> {
    Pure(&'a TensorVector),
    Mixed(&'a DensityOperator, &'a TensorStructure),
}

/// Entropy bookkeeping of a bipartite state, in bits.
///
/// `entanglement`, `quasi_classical` and `shannon_pk` are only defined for
/// pure inputs; there both correlation halves equal the marginal entropy.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EntropyReport {
    pub s1: f64,
    pub s2: f64,
    pub s12: f64,
    pub mutual_information: f64,
    pub entanglement: Option<f64>,
    pub quasi_classical: Option<f64>,
    pub shannon_pk: Option<f64>,
}

pub fn mutual_information(input: BipartiteInput<'_>) -> Result<EntropyReport> {
    let (joint, structure) = match &input {
        BipartiteInput::Pure(psi) => {
            let norm = psi.vector.norm();
            if (norm - 1.0).abs() > tol::NORM {
                return Err(Error::NotNormalized(norm));
            }
            (psi.density(), &psi.structure)
        }
        BipartiteInput::Mixed(rho, structure) => (rho.matrix().clone(), *structure),
    };
    if structure.factors() != 2 || joint.rows() != structure.total_dim() {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} state for factors {:?}",
            joint.rows(),
            joint.cols(),
            structure.factor_dims()
        )));
    }
    let (r1, r2) = match &input {
        BipartiteInput::Pure(psi) => (psi.reduced(&[0])?, psi.reduced(&[1])?),
        BipartiteInput::Mixed(..) => (
            crate::linalg::partial_trace(&joint, structure, &[0])?,
            crate::linalg::partial_trace(&joint, structure, &[1])?,
        ),
    };
    let s1 = matrix_entropy(&r1)?;
    let s2 = matrix_entropy(&r2)?;
    let s12 = matrix_entropy(&joint)?;
    let mut report = EntropyReport {
        s1,
        s2,
        s12,
        mutual_information: s1 + s2 - s12,
        entanglement: None,
        quasi_classical: None,
        shannon_pk: None,
    };
    if let BipartiteInput::Pure(psi) = input {
        let h = entropy_bits(&schmidt_decompose(psi)?.weights());
        report.entanglement = Some(s1);
        report.quasi_classical = Some(s1);
        report.shannon_pk = Some(h);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ComplexVector;

    const H_03: f64 = 0.881_290_899_230_692_6;

    #[test]
    fn shannon_examples() {
        assert_eq!(shannon_entropy(&[1.0]).unwrap(), 0.0);
        assert_eq!(shannon_entropy(&[0.5, 0.5]).unwrap(), 1.0);
        // Oracle: −0.3·log₂0.3 − 0.7·log₂0.7 evaluated independently.
        let direct = -(0.3f64 * (0.3f64).ln() + 0.7 * (0.7f64).ln()) / std::f64::consts::LN_2;
        assert!((direct - H_03).abs() < 1e-14);
        assert!((shannon_entropy(&[0.3, 0.7]).unwrap() - 0.8812908992).abs() < 1e-10);
        assert!((shannon_entropy(&[0.3, 0.7, 0.0]).unwrap() - H_03).abs() < 1e-14);
    }

    #[test]
    fn shannon_rejects_bad_input() {
        assert!(matches!(shannon_entropy(&[0.5, 0.6]), Err(Error::NotADistribution(_))));
        assert!(shannon_entropy(&[1.1, -0.1]).is_err());
        assert!(shannon_entropy(&[f64::NAN]).is_err());
    }

    #[test]
    fn von_neumann_examples() {
        assert_eq!(
            von_neumann_entropy(&DensityOperator::new(ComplexMatrix::from_diag(&[1.0, 0.0])).unwrap()).unwrap(),
            0.0
        );
        assert!((von_neumann_entropy(&DensityOperator::maximally_mixed(2)).unwrap() - 1.0).abs() < 1e-15);
        let d = DensityOperator::new(ComplexMatrix::from_diag(&[0.3, 0.7])).unwrap();
        assert!((von_neumann_entropy(&d).unwrap() - H_03).abs() < 1e-12);
    }

    #[test]
    fn entanglement_examples() {
        let st = TensorStructure::bipartite(2, 2);
        let prod = TensorVector::new(ComplexVector::basis(4, 1), st.clone()).unwrap();
        assert_eq!(entanglement_of_pure_state(&prod).unwrap(), 0.0);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let bell = TensorVector::new(ComplexVector::from_real(&[h, 0.0, 0.0, h]), st.clone()).unwrap();
        assert!((entanglement_of_pure_state(&bell).unwrap() - 1.0).abs() < 1e-12);
        let bad = TensorVector::new(ComplexVector::from_real(&[1.0, 1.0, 0.0, 0.0]), st).unwrap();
        assert!(matches!(entanglement_of_pure_state(&bad), Err(Error::NotNormalized(_))));
    }

    #[test]
    fn mutual_information_examples() {
        let st = TensorStructure::bipartite(2, 2);
        let prod = TensorVector::new(ComplexVector::basis(4, 2), st.clone()).unwrap();
        let r = mutual_information(BipartiteInput::Pure(&prod)).unwrap();
        assert_eq!(r.mutual_information, 0.0);

        let h = std::f64::consts::FRAC_1_SQRT_2;
        let bell = TensorVector::new(ComplexVector::from_real(&[h, 0.0, 0.0, h]), st.clone()).unwrap();
        let r = mutual_information(BipartiteInput::Pure(&bell)).unwrap();
        assert!((r.mutual_information - 2.0).abs() < 1e-12);
        assert!((r.entanglement.unwrap() - 1.0).abs() < 1e-12);
        assert!((r.quasi_classical.unwrap() - 1.0).abs() < 1e-12);
        assert!((r.shannon_pk.unwrap() - 1.0).abs() < 1e-12);
        assert!(r.s12.abs() < 1e-12);

        // Classically correlated mixture ½(|00⟩⟨00| + |11⟩⟨11|): oracle by direct
        // eigen-decomposition of the diagonal joint state gives S12 = 1, S1 = S2 = 1.
        let mixed = DensityOperator::new(ComplexMatrix::from_diag(&[0.5, 0.0, 0.0, 0.5])).unwrap();
        let r = mutual_information(BipartiteInput::Mixed(&mixed, &st)).unwrap();
        assert!((r.mutual_information - 1.0).abs() < 1e-12);
        assert!(r.entanglement.is_none());

        let wrong = TensorStructure::bipartite(3, 2);
        assert!(mutual_information(BipartiteInput::Mixed(&mixed, &wrong)).is_err());
    }
}
