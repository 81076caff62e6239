use super::{mismatch, ComplexMatrix, ComplexVector, LinalgError};
use crate::tol;

/// Extends orthonormal `columns` to a `dim x dim` unitary.
///
/// The inputs become the leading columns. The rest come from Gram-Schmidt over
/// the standard basis in ascending index order; candidates whose residual norm
/// falls below the skip threshold are discarded.
pub fn complete_isometry(columns: &[ComplexVector], dim: usize) -> Result<ComplexMatrix, LinalgError> {
    if columns.len() > dim {
        return Err(mismatch(format!("{} columns exceed dimension {dim}", columns.len())));
    }
    for c in columns {
        c.check_dim(dim, "isometry column")?;
    }
    let mut worst = 0.0f64;
    for (i, a) in columns.iter().enumerate() {
        for (j, b) in columns.iter().enumerate().skip(i) {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((a.inner(b) - target).norm());
        }
    }
    if worst > tol::ORTHONORMAL {
        return Err(LinalgError::NotOrthonormal(worst));
    }

    let mut basis: Vec<ComplexVector> = columns.to_vec();
    for e in 0..dim {
        if basis.len() == dim {
            break;
        }
        let mut r = ComplexVector::basis(dim, e);
        // Two passes of modified Gram-Schmidt keep the completion orthonormal
        // to working precision.
        for _ in 0..2 {
            for b in &basis {
                let overlap = b.inner(&r);
                r.axpy_neg(overlap, b);
            }
        }
        if r.norm() < tol::GRAM_SCHMIDT_SKIP {
            continue;
        }
        basis.push(r.normalized().expect("nonzero residual"));
    }
    ComplexMatrix::from_columns(&basis)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{random_unitary, seeded_rng};

    #[test]
    fn full_standard_basis_gives_identity() {
        let cols: Vec<_> = (0..4).map(|i| ComplexVector::basis(4, i)).collect();
        assert_eq!(complete_isometry(&cols, 4).unwrap(), ComplexMatrix::identity(4));
    }

    #[test]
    fn single_e1_completes_with_e0() {
        let u = complete_isometry(&[ComplexVector::basis(2, 1)], 2).unwrap();
        assert_eq!(u.column(0), ComplexVector::basis(2, 1));
        assert_eq!(u.column(1), ComplexVector::basis(2, 0));
        assert!(u.is_unitary(1e-10));
    }

    #[test]
    fn random_isometry_three_in_eight() {
        let mut rng = seeded_rng(8);
        let w = random_unitary(8, &mut rng);
        let cols: Vec<_> = (0..3).map(|j| w.column(j)).collect();
        let u = complete_isometry(&cols, 8).unwrap();
        let g = u.adjoint().mul(&u);
        assert!(g.distance(&ComplexMatrix::identity(8)) < 1e-9);
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(&u.column(j), c);
        }
    }

    #[test]
    fn empty_input_gives_identity() {
        assert_eq!(complete_isometry(&[], 3).unwrap(), ComplexMatrix::identity(3));
    }

    #[test]
    fn rejects_non_orthonormal() {
        let a = ComplexVector::basis(3, 0);
        let b = ComplexVector::from_real(&[1.0, 1.0, 0.0]).normalized().unwrap();
        assert!(matches!(
            complete_isometry(&[a.clone(), b], 3),
            Err(LinalgError::NotOrthonormal(_))
        ));
        let long = ComplexVector::from_real(&[2.0, 0.0, 0.0]);
        assert!(matches!(
            complete_isometry(&[long], 3),
            Err(LinalgError::NotOrthonormal(_))
        ));
        assert!(complete_isometry(&[a.clone(), a.clone(), a.clone(), a], 3).is_err());
    }
}
