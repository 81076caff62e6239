use serde::Serialize;

use super::{post_state, StateTransformerSet};
use crate::error::{check_dim, Error, Result};
use crate::linalg::{complete_isometry, ComplexMatrix, ComplexVector, LinalgError, TensorStructure, TensorVector};
use crate::quantum::{probabilities, Observable, PureState};
use crate::tol;

/// Pairs a transformer outcome with the pointer term that records it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OutcomeLink {
    pub outcome: usize,
    pub pointer_term: usize,
    pub pointer_value: f64,
}

/// Measuring instrument: initial pointer state, the object-pointer unitary,
/// and the pointer observable read at the end.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MeasurementModel {
    object_dim: usize,
    pointer_dim: usize,
    pointer_initial: PureState,
    unitary: ComplexMatrix,
    pointer_observable: Observable,
    measured: Observable,
    outcome_map: Vec<OutcomeLink>,
}

impl MeasurementModel {
    pub fn object_dim(&self) -> usize {
        self.object_dim
    }

    pub fn pointer_dim(&self) -> usize {
        self.pointer_dim
    }

    pub fn pointer_initial(&self) -> &PureState {
        &self.pointer_initial
    }

    pub fn unitary(&self) -> &ComplexMatrix {
        &self.unitary
    }

    pub fn pointer_observable(&self) -> &Observable {
        &self.pointer_observable
    }

    /// The observable this instrument measures.
    pub fn measured(&self) -> &Observable {
        &self.measured
    }

    pub fn outcome_map(&self) -> &[OutcomeLink] {
        &self.outcome_map
    }

    pub fn structure(&self) -> TensorStructure {
        TensorStructure::bipartite(self.object_dim, self.pointer_dim)
    }

    /// `1 ⊗ Q^k` for the pointer term linked to `outcome`.
    pub fn pointer_event(&self, outcome: usize) -> ComplexMatrix {
        let q = self
            .pointer_observable
            .projector(self.outcome_map[outcome].pointer_term);
        ComplexMatrix::identity(self.object_dim).kron(q)
    }

    /// Swaps in an arbitrary coupling without the unitarity check. Meant for
    /// negative controls that must make the verifiers fail.
    pub fn with_unitary_unchecked(mut self, unitary: ComplexMatrix) -> Self {
        self.unitary = unitary;
        self
    }

    /// Negative control: the coupling with its first column zeroed, rescaled
    /// to the Frobenius norm of a unitary. Pointer statistics no longer
    /// reproduce the object probabilities for states overlapping `e_0`.
    pub fn corrupted(&self) -> Self {
        let total = self.unitary.rows();
        let mut u = self.unitary.clone();
        u.set_column(0, &ComplexVector::zeros(total));
        let norm = u.frobenius_norm();
        if norm > 0.0 {
            u = u.scale_real((total as f64).sqrt() / norm);
        }
        self.clone().with_unitary_unchecked(u)
    }
}

/// Builds `U` with `U(|v⟩⊗|e_0⟩) = Σ_k A_k|v⟩ ⊗ |e_k⟩` on a pointer of one
/// basis vector per outcome, then completes it to a unitary.
///
/// The prescribed columns sit at indices `j·n` (object basis `j`, pointer `e_0`);
/// completion columns fill the remaining indices in ascending order.
pub fn dilate(ts: &StateTransformerSet) -> Result<MeasurementModel> {
    let d = ts.dim();
    let n = ts.len();
    if n == 0 {
        return Err(Error::InvalidTransformers("empty transformer set".into()));
    }
    let total = d * n;
    let pointer_basis: Vec<ComplexVector> = (0..n).map(|k| ComplexVector::basis(n, k)).collect();
    let prescribed: Vec<ComplexVector> = (0..d)
        .map(|j| {
            let e = ComplexVector::basis(d, j);
            let mut col = ComplexVector::zeros(total);
            for (k, a) in ts.operators().iter().enumerate() {
                col = col.add(&a.apply(&e).kron(&pointer_basis[k]));
            }
            col
        })
        .collect();
    let completed = complete_isometry(&prescribed, total).map_err(|e| match e {
        LinalgError::NotOrthonormal(dev) => {
            Error::InvalidTransformers(format!("transformers do not define an isometry ({dev:.3e})"))
        }
        other => other.into(),
    })?;

    let mut unitary = ComplexMatrix::zeros(total, total);
    let mut extra = d..total;
    for idx in 0..total {
        let src = if idx % n == 0 {
            idx / n
        } else {
            extra.next().expect("enough completion columns")
        };
        unitary.set_column(idx, &completed.column(src));
    }

    let values: Vec<f64> = (0..n).map(|k| k as f64).collect();
    let pointer_observable = Observable::diag(&values)?;
    let outcome_map = (0..n)
        .map(|k| OutcomeLink {
            outcome: k,
            pointer_term: k,
            pointer_value: k as f64,
        })
        .collect();
    Ok(MeasurementModel {
        object_dim: d,
        pointer_dim: n,
        pointer_initial: PureState::basis(n, 0),
        unitary,
        pointer_observable,
        measured: ts.observable().clone(),
        outcome_map,
    })
}

/// `U(ψ ⊗ φ⁰)` on the object-pointer space.
pub fn evolve(model: &MeasurementModel, psi: &PureState) -> Result<TensorVector> {
    check_dim(psi.vector().dim(), model.object_dim, "object state")?;
    let initial = psi.vector().kron(model.pointer_initial.vector());
    let fin = model.unitary.mul_vec(&initial)?;
    Ok(TensorVector::new(fin, model.structure())?)
}

/// `max_k |⟨ψ|P_k|ψ⟩ − ⟨Ψ^f|(1⊗Q^k)|Ψ^f⟩|`
pub fn verify_prc(model: &MeasurementModel, psi: &PureState) -> Result<f64> {
    let predicted = probabilities(&model.measured, psi)?;
    let fin = evolve(model, psi)?;
    let mut worst = 0.0f64;
    for (k, p) in predicted.iter().enumerate() {
        let read = model.pointer_event(k).expectation(&fin.vector)?.re;
        worst = worst.max((p - read).abs());
    }
    Ok(worst)
}

/// `max_k ‖A_k|ψ⟩⟨ψ|A_k† − Tr₂(Q^k|Ψ^f⟩⟨Ψ^f|Q^k)‖_F`
pub fn verify_kraus_connection(model: &MeasurementModel, ts: &StateTransformerSet, psi: &PureState) -> Result<f64> {
    check_dim(ts.len(), model.outcome_map.len(), "outcome count")?;
    let fin = evolve(model, psi)?;
    let mut worst = 0.0f64;
    for (k, a) in ts.operators().iter().enumerate() {
        let lhs = a.apply(psi.vector()).projector();
        let conditioned = TensorVector::new(model.pointer_event(k).apply(&fin.vector), fin.structure.clone())?;
        let rhs = conditioned.reduced(&[0])?;
        worst = worst.max(lhs.distance(&rhs));
    }
    Ok(worst)
}

/// Reads the pointer, then asks how likely an immediate repetition is to
/// confirm the recorded value. Returns the minimum over detectable outcomes.
pub fn repeat_measurement_check(model: &MeasurementModel, ts: &StateTransformerSet, psi: &PureState) -> Result<f64> {
    let fin = evolve(model, psi)?;
    let mut worst = f64::INFINITY;
    for k in 0..ts.len() {
        let read = model.pointer_event(k).expectation(&fin.vector)?.re;
        if read <= tol::DETECTABLE {
            continue;
        }
        let after = post_state(ts, psi, k)?;
        let confirm = probabilities(ts.observable(), &after)?[k];
        worst = worst.min(confirm);
    }
    if worst.is_infinite() {
        return Err(Error::NullOutcome {
            outcome: 0,
            probability: 0.0,
        });
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measurement::{make_ideal_transformers, make_repeatable_transformers, make_shifted_transformers};
    use crate::random::{random_state, seeded_rng};

    fn transformer_sum(ts: &StateTransformerSet, psi: &PureState) -> ComplexVector {
        let n = ts.len();
        let mut out = ComplexVector::zeros(ts.dim() * n);
        for (k, a) in ts.operators().iter().enumerate() {
            out = out.add(&a.apply(psi.vector()).kron(&ComplexVector::basis(n, k)));
        }
        out
    }

    #[test]
    fn ideal_z_is_controlled_shift() {
        let ts = make_ideal_transformers(&Observable::pauli_z());
        let m = dilate(&ts).unwrap();
        // Z terms: index 0 is a=-1 on |1>, index 1 is a=+1 on |0>.
        let u = m.unitary();
        let out0 = u.apply(&ComplexVector::basis(2, 0).kron(&ComplexVector::basis(2, 0)));
        assert_eq!(out0, ComplexVector::basis(2, 0).kron(&ComplexVector::basis(2, 1)));
        let out1 = u.apply(&ComplexVector::basis(2, 1).kron(&ComplexVector::basis(2, 0)));
        assert_eq!(out1, ComplexVector::basis(2, 1).kron(&ComplexVector::basis(2, 0)));
        assert!(u.is_unitary(1e-12));
        assert_eq!(m.pointer_dim(), 2);
        assert_eq!(m.pointer_observable().eigenvalues(), vec![0.0, 1.0]);
    }

    #[test]
    fn evolve_examples() {
        let ts = make_ideal_transformers(&Observable::pauli_z());
        let m = dilate(&ts).unwrap();
        let fin = evolve(&m, &PureState::basis(2, 0)).unwrap();
        assert_eq!(fin.vector, ComplexVector::basis(2, 0).kron(&ComplexVector::basis(2, 1)));
        let fin = evolve(&m, &PureState::uniform(2)).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let expected = ComplexVector::from_real(&[0.0, h, h, 0.0]);
        assert!(fin.vector.max_abs_diff(&expected) < 1e-15);
        assert!(evolve(&m, &PureState::basis(3, 0)).is_err());
    }

    #[test]
    fn evolve_matches_transformer_sum_for_random_instances() {
        let obs = Observable::diag(&[-2.0, 0.0, 0.0, 1.5, 3.0]).unwrap();
        let ts = make_repeatable_transformers(&obs, 21);
        let m = dilate(&ts).unwrap();
        assert!(m.unitary().is_unitary(1e-9));
        let mut rng = seeded_rng(21);
        for _ in 0..20 {
            let psi = PureState::new(random_state(5, &mut rng)).unwrap();
            let fin = evolve(&m, &psi).unwrap();
            assert!(fin.vector.sub(&transformer_sum(&ts, &psi)).norm() < 1e-10);
            assert!(fin.vector.is_normalized(1e-10));
        }
    }

    #[test]
    fn prc_holds_and_corruption_is_flagged() {
        let ts = make_ideal_transformers(&Observable::pauli_z());
        let m = dilate(&ts).unwrap();
        assert!(verify_prc(&m, &PureState::basis(2, 0)).unwrap() < 1e-12);

        let obs = Observable::diag(&[0.0, 1.0, 1.0, 2.0]).unwrap();
        let ts = make_repeatable_transformers(&obs, 5);
        let m = dilate(&ts).unwrap();
        let psi = PureState::new(random_state(4, &mut seeded_rng(5))).unwrap();
        assert!(verify_prc(&m, &psi).unwrap() < 1e-10);

        let corrupted = m.corrupted();
        assert!(verify_prc(&corrupted, &psi).unwrap() > 1e-6);
    }

    #[test]
    fn kraus_connection() {
        let ts = make_ideal_transformers(&Observable::pauli_z());
        let m = dilate(&ts).unwrap();
        assert!(verify_kraus_connection(&m, &ts, &PureState::uniform(2)).unwrap() < 1e-15);
        // Null outcome: both sides vanish.
        assert!(verify_kraus_connection(&m, &ts, &PureState::basis(2, 0)).unwrap() < 1e-15);

        let obs = Observable::diag(&[1.0, 2.0, 2.0]).unwrap();
        let ts = make_repeatable_transformers(&obs, 8);
        let m = dilate(&ts).unwrap();
        let psi = PureState::new(random_state(3, &mut seeded_rng(80))).unwrap();
        assert!(verify_kraus_connection(&m, &ts, &psi).unwrap() < 1e-10);
    }

    #[test]
    fn repeat_check() {
        let ts = make_ideal_transformers(&Observable::pauli_z());
        let m = dilate(&ts).unwrap();
        assert!((repeat_measurement_check(&m, &ts, &PureState::uniform(2)).unwrap() - 1.0).abs() < 1e-15);

        let obs = Observable::diag(&[1.0, 2.0, 2.0, 4.0]).unwrap();
        let ts = make_repeatable_transformers(&obs, 9);
        let m = dilate(&ts).unwrap();
        let psi = PureState::new(random_state(4, &mut seeded_rng(90))).unwrap();
        assert!(repeat_measurement_check(&m, &ts, &psi).unwrap() >= 1.0 - 1e-10);

        let swap = make_shifted_transformers(&Observable::pauli_z()).unwrap();
        let m = dilate(&swap).unwrap();
        assert_eq!(
            repeat_measurement_check(&m, &swap, &PureState::uniform(2)).unwrap(),
            0.0
        );
        assert!(verify_prc(&m, &PureState::uniform(2)).unwrap() < 1e-12);
    }
}
