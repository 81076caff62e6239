use super::{ComplexMatrix, LinalgError, C64};
use crate::tol;

const MAX_SWEEPS: usize = 100;

/// Spectral data of a Hermitian matrix: ascending eigenvalues and the matching
/// orthonormal eigenvectors stored as columns.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl HermitianEigen {
    /// `V·diag(λ)·V†`
    pub fn reconstruct(&self) -> ComplexMatrix {
        let n = self.values.len();
        let mut scaled = self.vectors.clone();
        for j in 0..n {
            for i in 0..n {
                scaled[(i, j)] *= self.values[j];
            }
        }
        scaled.mul(&self.vectors.adjoint())
    }
}

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi rotations.
///
/// Eigenvalues come back ascending; equal eigenvalues keep the order in which
/// the rotations left them on the diagonal, so the result is deterministic.
pub fn hermitian_eig(m: &ComplexMatrix) -> Result<HermitianEigen, LinalgError> {
    let defect = m.hermitian_defect();
    if defect > tol::HERMITIAN {
        return Err(LinalgError::NotHermitian(defect));
    }
    let n = m.rows();
    let mut a = m.hermitian_part();
    let mut v = ComplexMatrix::identity(n);
    let scale = a.frobenius_norm().max(f64::MIN_POSITIVE);
    let stop = 0.1 * f64::EPSILON * scale;

    let mut converged = false;
    for sweep in 0..MAX_SWEEPS {
        let off = off_diagonal_norm(&a);
        if off <= stop {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                let b = apq.norm();
                if b == 0.0 {
                    continue;
                }
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                // Negligible against both diagonal entries: drop it.
                let g = 100.0 * b;
                if sweep > 3 && app.abs() + g == app.abs() && aqq.abs() + g == aqq.abs() {
                    a[(p, q)] = C64::new(0.0, 0.0);
                    a[(q, p)] = C64::new(0.0, 0.0);
                    continue;
                }
                rotate(&mut a, &mut v, p, q, apq, b);
            }
        }
    }
    if !converged && off_diagonal_norm(&a) > stop {
        return Err(LinalgError::NoConvergence(MAX_SWEEPS));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let mut vectors = ComplexMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        for i in 0..n {
            vectors[(i, dst)] = v[(i, src)];
        }
    }
    Ok(HermitianEigen { values, vectors })
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Applies `A ← J†AJ`, `V ← VJ` with the unitary `J` that annihilates `a[p,q]`.
///
/// Writing `a[p,q] = b·e^{iφ}`, the block is `D·M·D†` with `D = diag(1, e^{-iφ})`
/// and `M` real symmetric; `J = D·G` where `G` is the real Jacobi rotation of `M`.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize, apq: C64, b: f64) {
    let n = a.rows();
    let phase = apq / b;
    let theta = (a[(q, q)].re - a[(p, p)].re) / (2.0 * b);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    let j_pp = C64::new(c, 0.0);
    let j_pq = C64::new(s, 0.0);
    let j_qp = -phase.conj() * s;
    let j_qq = phase.conj() * c;

    for r in 0..n {
        let (x, y) = (a[(r, p)], a[(r, q)]);
        a[(r, p)] = x * j_pp + y * j_qp;
        a[(r, q)] = x * j_pq + y * j_qq;
        let (x, y) = (v[(r, p)], v[(r, q)]);
        v[(r, p)] = x * j_pp + y * j_qp;
        v[(r, q)] = x * j_pq + y * j_qq;
    }
    for col in 0..n {
        let (x, y) = (a[(p, col)], a[(q, col)]);
        a[(p, col)] = j_pp.conj() * x + j_qp.conj() * y;
        a[(q, col)] = j_pq.conj() * x + j_qq.conj() * y;
    }
    a[(p, q)] = C64::new(0.0, 0.0);
    a[(q, p)] = C64::new(0.0, 0.0);
    a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = C64::new(a[(q, q)].re, 0.0);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{random_hermitian, seeded_rng};

    fn assert_orthonormal_columns(v: &ComplexMatrix, tol: f64) {
        let g = v.adjoint().mul(v);
        assert!(g.distance(&ComplexMatrix::identity(v.cols())) < tol);
    }

    #[test]
    fn diagonal_input_permutes_basis() {
        let e = hermitian_eig(&ComplexMatrix::from_diag(&[3.0, 1.0, 2.0])).unwrap();
        assert_eq!(e.values, vec![1.0, 2.0, 3.0]);
        assert_eq!(e.vectors.column(0)[1].norm(), 1.0);
        assert_eq!(e.vectors.column(1)[2].norm(), 1.0);
        assert_eq!(e.vectors.column(2)[0].norm(), 1.0);
    }

    #[test]
    fn pauli_x_spectrum() {
        let x = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]);
        let e = hermitian_eig(&x).unwrap();
        assert!((e.values[0] + 1.0).abs() < 1e-15);
        assert!((e.values[1] - 1.0).abs() < 1e-15);
        assert_orthonormal_columns(&e.vectors, 1e-14);
    }

    #[test]
    fn pauli_y_spectrum() {
        let mut y = ComplexMatrix::zeros(2, 2);
        y[(0, 1)] = C64::new(0.0, -1.0);
        y[(1, 0)] = C64::new(0.0, 1.0);
        let e = hermitian_eig(&y).unwrap();
        assert!((e.values[0] + 1.0).abs() < 1e-15 && (e.values[1] - 1.0).abs() < 1e-15);
        assert!(e.reconstruct().distance(&y) < 1e-14);
    }

    #[test]
    fn random_hermitian_5x5_reconstructs() {
        let mut rng = seeded_rng(5);
        let h = random_hermitian(5, &mut rng);
        let e = hermitian_eig(&h).unwrap();
        assert!(e.reconstruct().distance(&h) < 1e-9);
        assert_orthonormal_columns(&e.vectors, 1e-9);
        assert!(e.values.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn rejects_non_hermitian() {
        let mut m = ComplexMatrix::zeros(2, 2);
        m[(0, 1)] = C64::new(1.0, 0.0);
        assert!(matches!(hermitian_eig(&m), Err(LinalgError::NotHermitian(_))));
    }

    #[test]
    fn zero_and_empty_matrices() {
        let e = hermitian_eig(&ComplexMatrix::zeros(3, 3)).unwrap();
        assert_eq!(e.values, vec![0.0; 3]);
        let e = hermitian_eig(&ComplexMatrix::zeros(0, 0)).unwrap();
        assert!(e.values.is_empty());
    }

    #[test]
    fn degenerate_ties_keep_index_order() {
        let e = hermitian_eig(&ComplexMatrix::from_diag(&[2.0, 1.0, 2.0])).unwrap();
        assert_eq!(e.values, vec![1.0, 2.0, 2.0]);
        assert_eq!(e.vectors.column(1)[0].norm(), 1.0);
        assert_eq!(e.vectors.column(2)[2].norm(), 1.0);
    }
}
