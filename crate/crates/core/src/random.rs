//! Seeded random matrices and states.
//!
//! Everything is driven by an explicit [`ChaCha8Rng`], so a seed fully
//! determines the output on every platform.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::linalg::{ComplexMatrix, ComplexVector, C64};

pub type SeededRng = ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gaussian_c64<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

pub fn random_matrix<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> ComplexMatrix {
    let data = (0..rows * cols).map(|_| gaussian_c64(rng)).collect();
    ComplexMatrix::from_row_major(rows, cols, data).expect("consistent shape")
}

/// Unitary obtained by orthonormalizing the columns of a complex Gaussian matrix.
pub fn random_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
    loop {
        let g = random_matrix(n, n, rng);
        let mut cols: Vec<ComplexVector> = Vec::with_capacity(n);
        for mut c in g.columns() {
            for _ in 0..2 {
                for b in &cols {
                    let overlap = b.inner(&c);
                    c.axpy_neg(overlap, b);
                }
            }
            match c.normalized() {
                Some(v) if c.norm() > 1e-6 => cols.push(v),
                _ => break,
            }
        }
        if cols.len() == n {
            return ComplexMatrix::from_columns(&cols).expect("equal dimensions");
        }
    }
}

/// Unit vector from normalized complex Gaussian amplitudes.
pub fn random_state<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexVector {
    loop {
        let v: ComplexVector = (0..n).map(|_| gaussian_c64(rng)).collect();
        if v.norm() > 1e-6 {
            return v.normalized().expect("nonzero");
        }
    }
}

pub fn random_hermitian<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
    random_matrix(n, n, rng).hermitian_part()
}

/// Density matrix `G G† / Tr(G G†)`, full rank with probability one.
pub fn random_density<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
    let g = random_matrix(n, n, rng);
    let m = g.mul(&g.adjoint()).hermitian_part();
    let tr = m.trace().re;
    m.scale_real(1.0 / tr)
}
