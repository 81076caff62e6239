use serde::Serialize;

use super::entropy::{entropy_bits, matrix_entropy};
use super::{commutator_norm, incompatibility_entropy};
use crate::error::{Error, Result};
use crate::linalg::{ComplexVector, TensorStructure, TensorVector};
use crate::measurement::{make_ideal_transformers, MeasurementModel};
use crate::quantum::{DensityOperator, PureState};
use crate::tol;

/// Ideal measurement of the pointer observable on the final object-pointer
/// state, recorded on a second pointer with one basis vector per detectable
/// outcome: `Σ_k (1 ⊗ Q^k)|Ψ⟩ ⊗ |e_k⟩`.
///
/// Each branch `(1 ⊗ Q^k)|Ψ⟩` must factor into an object vector and a pointer
/// vector; otherwise the input did not come from a measurement with definite
/// pointer readings and [`Error::NonRepeatableInput`] is returned.
pub fn read_pointer_tripartite(fin: &TensorVector, model: &MeasurementModel) -> Result<TensorVector> {
    let expected = model.structure();
    if fin.structure != expected {
        return Err(Error::DimensionMismatch(format!(
            "final state with factors {:?}, instrument expects {:?}",
            fin.structure.factor_dims(),
            expected.factor_dims()
        )));
    }
    let norm = fin.vector.norm();
    if (norm - 1.0).abs() > tol::NORM {
        return Err(Error::NotNormalized(norm));
    }
    let reading = make_ideal_transformers(model.pointer_observable());
    let (d1, d2) = (model.object_dim(), model.pointer_dim());
    let identity = crate::linalg::ComplexMatrix::identity(d1);

    let mut branches = Vec::new();
    for (k, q) in reading.operators().iter().enumerate() {
        let branch = identity.kron(q).apply(&fin.vector);
        let weight = branch.norm_sqr();
        if weight <= tol::DETECTABLE {
            continue;
        }
        let conditioned = TensorVector::new(branch.clone(), expected.clone())?.reduced(&[0])?;
        let purity = conditioned.mul(&conditioned).trace().re / (weight * weight);
        if (1.0 - purity).abs() > tol::ENTROPY {
            return Err(Error::NonRepeatableInput(format!(
                "pointer value {k} is correlated with a mixed object state (purity {purity:.6})"
            )));
        }
        branches.push(branch);
    }
    let d3 = branches.len();
    let mut out = ComplexVector::zeros(d1 * d2 * d3);
    for (j, b) in branches.iter().enumerate() {
        out = out.add(&b.kron(&ComplexVector::basis(d3, j)));
    }
    Ok(TensorVector::new(out, TensorStructure::tripartite(d1, d2, d3))?)
}

/// Object-plus-pointer state after the reading: the third factor traced out.
pub fn post_reading_state(tri: &TensorVector) -> Result<DensityOperator> {
    if tri.structure.factors() != 3 {
        return Err(Error::DimensionMismatch(
            "post-reading state needs three factors".into(),
        ));
    }
    let norm = tri.vector.norm();
    if (norm - 1.0).abs() > tol::NORM {
        return Err(Error::NotNormalized(norm));
    }
    Ok(DensityOperator::new_unchecked(tri.reduced(&[0, 1])?.hermitian_part()))
}

/// Entropy and compatibility bookkeeping after reading the pointer.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointerReadingReport {
    /// Marginal entropies of the three factors, bits.
    pub marginal_entropies: [f64; 3],
    /// Shannon entropy of the branch weights, bits.
    pub shannon_pk: f64,
    /// `‖[A ⊗ 1, ρ₁₂]‖_F` on the post-reading state.
    pub object_commutator: f64,
    /// `‖[1 ⊗ B, ρ₁₂]‖_F` on the post-reading state.
    pub pointer_commutator: f64,
    /// Incompatibility entropy of `A ⊗ 1 ⊗ 1` in the tripartite state.
    pub tripartite_incompatibility: f64,
}

pub fn verify_pointer_reading(tri: &TensorVector, model: &MeasurementModel) -> Result<PointerReadingReport> {
    let st = &tri.structure;
    if st.factors() != 3 || st.dim(0) != model.object_dim() || st.dim(1) != model.pointer_dim() {
        return Err(Error::DimensionMismatch(format!(
            "tripartite factors {:?} for instrument ({}, {})",
            st.factor_dims(),
            model.object_dim(),
            model.pointer_dim()
        )));
    }
    let mut marginal_entropies = [0.0; 3];
    for (f, slot) in marginal_entropies.iter_mut().enumerate() {
        *slot = matrix_entropy(&tri.reduced(&[f])?)?;
    }
    // Branch weights straight from the third factor's diagonal.
    let third = tri.reduced(&[2])?;
    let weights: Vec<f64> = (0..st.dim(2)).map(|j| third[(j, j)].re).collect();

    let rho12 = post_reading_state(tri)?;
    let pair = model.structure();
    let object_commutator = commutator_norm(&model.measured().lift(&pair, 0)?, &rho12)?;
    let pointer_commutator = commutator_norm(&model.pointer_observable().lift(&pair, 1)?, &rho12)?;
    let lifted = model.measured().lift(st, 0)?;
    let tripartite_incompatibility = incompatibility_entropy(&lifted, &PureState::new(tri.vector.clone())?)?;
    Ok(PointerReadingReport {
        marginal_entropies,
        shannon_pk: entropy_bits(&weights),
        object_commutator,
        pointer_commutator,
        tripartite_incompatibility,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::info::shannon_entropy;
    use crate::linalg::{ComplexMatrix, C64};
    use crate::measurement::{dilate, evolve, make_repeatable_transformers};
    use crate::quantum::{probabilities, Observable};
    use crate::random::{random_state, seeded_rng};
    use crate::schmidt::schmidt_decompose_aligned;

    fn ideal_z_model() -> MeasurementModel {
        dilate(&make_ideal_transformers(&Observable::pauli_z())).unwrap()
    }

    #[test]
    fn bell_type_gives_ghz_type() {
        let m = ideal_z_model();
        let fin = evolve(&m, &PureState::uniform(2)).unwrap();
        let tri = read_pointer_tripartite(&fin, &m).unwrap();
        assert_eq!(tri.structure.factor_dims(), &[2, 2, 2]);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        // |1,e0,e0⟩ and |0,e1,e1⟩, weight ½ each.
        let mut expected = ComplexVector::zeros(8);
        expected[0b100] = C64::new(h, 0.0);
        expected[0b011] = C64::new(h, 0.0);
        assert!(tri.vector.max_abs_diff(&expected) < 1e-15);
        let r = verify_pointer_reading(&tri, &m).unwrap();
        for s in r.marginal_entropies {
            assert!((s - 1.0).abs() < 1e-12);
        }

        let rho12 = post_reading_state(&tri).unwrap();
        let mut want = ComplexMatrix::zeros(4, 4);
        want[(0b01, 0b01)] = C64::new(0.5, 0.0);
        want[(0b10, 0b10)] = C64::new(0.5, 0.0);
        assert!(rho12.matrix().distance(&want) < 1e-15);
    }

    #[test]
    fn eigenstate_gives_product() {
        let m = ideal_z_model();
        let fin = evolve(&m, &PureState::basis(2, 1)).unwrap();
        let tri = read_pointer_tripartite(&fin, &m).unwrap();
        assert_eq!(tri.structure.factor_dims(), &[2, 2, 1]);
        let r = verify_pointer_reading(&tri, &m).unwrap();
        assert!(r.marginal_entropies.iter().all(|s| s.abs() < 1e-12));
        assert!(post_reading_state(&tri).unwrap().matrix().is_projector(1e-12));
    }

    #[test]
    fn random_instance_marginals_and_explicit_sum() {
        let obs = Observable::diag(&[-1.0, 0.5, 0.5, 2.0, 3.0]).unwrap();
        let ts = make_repeatable_transformers(&obs, 31);
        let m = dilate(&ts).unwrap();
        let psi = PureState::new(random_state(5, &mut seeded_rng(31))).unwrap();
        let fin = evolve(&m, &psi).unwrap();
        let tri = read_pointer_tripartite(&fin, &m).unwrap();
        let h = shannon_entropy(&probabilities(&obs, &psi).unwrap()).unwrap();
        let r = verify_pointer_reading(&tri, &m).unwrap();
        for s in r.marginal_entropies {
            assert!((s - h).abs() < 1e-9);
        }
        assert!((r.tripartite_incompatibility - h).abs() < 1e-9);
        assert!(r.object_commutator < 1e-10 && r.pointer_commutator < 1e-10);

        // Oracle: Σ_k p_k |u_k⟩⟨u_k| ⊗ |v_k⟩⟨v_k| from the Schmidt form.
        let sf = schmidt_decompose_aligned(&fin, &obs).unwrap();
        let mut explicit = ComplexMatrix::zeros(5 * obs.len(), 5 * obs.len());
        for ((w, u), v) in sf.weights().iter().zip(sf.left_vectors()).zip(sf.right_vectors()) {
            explicit.add_assign(&u.projector().kron(&v.projector()).scale_real(*w));
        }
        assert!(post_reading_state(&tri).unwrap().matrix().distance(&explicit) < 1e-10);
    }

    #[test]
    fn mismatched_structure_is_rejected() {
        let m = ideal_z_model();
        let obs = Observable::diag(&[0.0, 0.0, 1.0]).unwrap();
        let m3 = dilate(&make_ideal_transformers(&obs)).unwrap();
        assert_eq!(m3.pointer_dim(), 2);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        // (|0⟩ + |1⟩)/√2 ⊗ e0 sits entirely in the first pointer branch.
        let mut ok = ComplexVector::zeros(6);
        ok[0] = C64::new(h, 0.0);
        ok[2] = C64::new(h, 0.0);
        let tv = TensorVector::new(ok, m3.structure()).unwrap();
        assert!(read_pointer_tripartite(&tv, &m3).is_ok());
        let wrong = TensorVector::new(ComplexVector::basis(6, 0), TensorStructure::bipartite(3, 2)).unwrap();
        assert!(read_pointer_tripartite(&wrong, &m).is_err());
    }
}
