use serde::{Deserialize, Serialize};

use super::{mismatch, ComplexMatrix, ComplexVector, LinalgError, C64};

/// Subsystem dimensions of a tensor-product space, outermost factor first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TensorStructure {
    factor_dims: Vec<usize>,
}

impl TensorStructure {
    pub fn new(factor_dims: Vec<usize>) -> Result<Self, LinalgError> {
        if factor_dims.is_empty() || factor_dims.contains(&0) {
            return Err(mismatch(format!("invalid factor dimensions {factor_dims:?}")));
        }
        Ok(Self { factor_dims })
    }

    pub fn bipartite(d1: usize, d2: usize) -> Self {
        Self::new(vec![d1, d2]).expect("positive dimensions")
    }

    pub fn tripartite(d1: usize, d2: usize, d3: usize) -> Self {
        Self::new(vec![d1, d2, d3]).expect("positive dimensions")
    }

    pub fn factor_dims(&self) -> &[usize] {
        &self.factor_dims
    }

    pub fn factors(&self) -> usize {
        self.factor_dims.len()
    }

    pub fn dim(&self, factor: usize) -> usize {
        self.factor_dims[factor]
    }

    pub fn total_dim(&self) -> usize {
        self.factor_dims.iter().product()
    }

    /// Digits of a flat index, outermost factor first.
    fn digits(&self, mut index: usize, out: &mut [usize]) {
        for (slot, &d) in out.iter_mut().zip(&self.factor_dims).rev() {
            *slot = index % d;
            index /= d;
        }
    }

    fn flat(&self, digits: &[usize]) -> usize {
        digits
            .iter()
            .zip(&self.factor_dims)
            .fold(0, |acc, (&x, &d)| acc * d + x)
    }

    fn sub_structure(&self, which: &[usize]) -> Vec<usize> {
        which.iter().map(|&f| self.factor_dims[f]).collect()
    }
}

/// A vector together with its tensor-product structure.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TensorVector {
    pub vector: ComplexVector,
    pub structure: TensorStructure,
}

impl TensorVector {
    pub fn new(vector: ComplexVector, structure: TensorStructure) -> Result<Self, LinalgError> {
        vector.check_dim(structure.total_dim(), "tensor vector")?;
        Ok(Self { vector, structure })
    }

    /// `|v⟩⟨v|`
    pub fn density(&self) -> ComplexMatrix {
        self.vector.projector()
    }

    /// Reduced operator on the kept factors.
    pub fn reduced(&self, keep: &[usize]) -> Result<ComplexMatrix, LinalgError> {
        reduced_from_vector(&self.vector, &self.structure, keep)
    }
}

fn validate_keep(structure: &TensorStructure, keep: &[usize]) -> Result<(Vec<usize>, Vec<usize>), LinalgError> {
    if structure.factors() < 2 {
        return Err(mismatch("partial trace needs at least two factors"));
    }
    let mut kept: Vec<usize> = keep.to_vec();
    kept.sort_unstable();
    kept.dedup();
    if kept.is_empty() || kept.len() != keep.len() || kept.iter().any(|&f| f >= structure.factors()) {
        return Err(mismatch(format!("invalid kept factors {keep:?}")));
    }
    let traced = (0..structure.factors()).filter(|f| !kept.contains(f)).collect();
    Ok((kept, traced))
}

/// Traces out every factor not listed in `keep`; kept factors stay in their
/// original order.
pub fn partial_trace(
    m: &ComplexMatrix,
    structure: &TensorStructure,
    keep: &[usize],
) -> Result<ComplexMatrix, LinalgError> {
    let n = structure.total_dim();
    if !m.is_square() || m.rows() != n {
        return Err(mismatch(format!(
            "{}x{} operator on a space of dimension {n}",
            m.rows(),
            m.cols()
        )));
    }
    let (kept, traced) = validate_keep(structure, keep)?;
    let kept_dims = TensorStructure {
        factor_dims: structure.sub_structure(&kept),
    };
    let traced_dims = TensorStructure {
        factor_dims: structure.sub_structure(&traced),
    };
    let kd = kept_dims.total_dim();
    let td = traced_dims.total_dim();

    let f = structure.factors();
    let mut kd_row = vec![0; kept.len()];
    let mut kd_col = vec![0; kept.len()];
    let mut td_digits = vec![0; traced.len()];
    let mut full_row = vec![0; f];
    let mut full_col = vec![0; f];
    let mut out = ComplexMatrix::zeros(kd, kd);
    for r in 0..kd {
        kept_dims.digits(r, &mut kd_row);
        for c in 0..kd {
            kept_dims.digits(c, &mut kd_col);
            let mut acc = C64::new(0.0, 0.0);
            for t in 0..td {
                traced_dims.digits(t, &mut td_digits);
                for (slot, &factor) in kept.iter().enumerate() {
                    full_row[factor] = kd_row[slot];
                    full_col[factor] = kd_col[slot];
                }
                for (slot, &factor) in traced.iter().enumerate() {
                    full_row[factor] = td_digits[slot];
                    full_col[factor] = td_digits[slot];
                }
                acc += m[(structure.flat(&full_row), structure.flat(&full_col))];
            }
            out[(r, c)] = acc;
        }
    }
    Ok(out)
}

/// Reduced operator of a pure state without forming the full projector.
pub(crate) fn reduced_from_vector(
    psi: &ComplexVector,
    structure: &TensorStructure,
    keep: &[usize],
) -> Result<ComplexMatrix, LinalgError> {
    psi.check_dim(structure.total_dim(), "reduced state")?;
    let (kept, traced) = validate_keep(structure, keep)?;
    let kept_dims = TensorStructure {
        factor_dims: structure.sub_structure(&kept),
    };
    let traced_dims = TensorStructure {
        factor_dims: structure.sub_structure(&traced),
    };
    let kd = kept_dims.total_dim();
    let td = traced_dims.total_dim();

    // Reshape psi into a kd x td matrix M, then rho = M M†.
    let mut reshaped = ComplexMatrix::zeros(kd, td);
    let mut digits = vec![0; structure.factors()];
    let mut kd_digits = vec![0; kept.len()];
    let mut td_digits = vec![0; traced.len()];
    for (idx, amp) in psi.iter().enumerate() {
        structure.digits(idx, &mut digits);
        for (slot, &factor) in kept.iter().enumerate() {
            kd_digits[slot] = digits[factor];
        }
        for (slot, &factor) in traced.iter().enumerate() {
            td_digits[slot] = digits[factor];
        }
        reshaped[(kept_dims.flat(&kd_digits), traced_dims.flat(&td_digits))] = *amp;
    }
    Ok(reshaped.mul(&reshaped.adjoint()))
}

/// Partial scalar product `⟨a|_1 |psi⟩_{12}`, a vector on the second factor:
/// `result[j] = Σ_i conj(a[i])·psi[i·d₂ + j]`.
pub fn partial_inner(
    a: &ComplexVector,
    psi: &ComplexVector,
    structure: &TensorStructure,
) -> Result<ComplexVector, LinalgError> {
    if structure.factors() != 2 {
        return Err(mismatch("partial scalar product needs a bipartite structure"));
    }
    let (d1, d2) = (structure.dim(0), structure.dim(1));
    a.check_dim(d1, "partial scalar product, first factor")?;
    psi.check_dim(d1 * d2, "partial scalar product, composite vector")?;
    Ok((0..d2)
        .map(|j| (0..d1).map(|i| a[i].conj() * psi[i * d2 + j]).sum())
        .collect())
}
