use rand::seq::index::sample;
use rand::Rng;

use super::scenario::{InstrumentSpec, ObservableSpec, Scenario, ScenarioOptions, ScenarioSpec, StateSpec};
use crate::linalg::{ComplexMatrix, ComplexVector};
use crate::random::{gaussian_c64, random_unitary, seeded_rng};

/// Reproducible random repeatable-measurement scenario.
///
/// Draws `d1 ∈ [2, d1_max]`, `m ∈ [2, min(outcomes_max, d1)]` outcomes with
/// random multiplicities and eigenvalue gaps in `[1e-3, 2]`, the observable
/// `V Λ V†` for a random unitary `V`, and a random state. Half of the states
/// are supported on a random nonempty subset of the eigenspaces so that every
/// detectable-outcome count occurs.
///
/// # Panics
/// Unless `d1_max ≥ 2` and `2 ≤ outcomes_max ≤ d1_max`.
pub fn generate_random_instance(seed: u64, d1_max: usize, outcomes_max: usize) -> Scenario {
    assert!(d1_max >= 2, "d1_max must be at least 2");
    assert!(
        (2..=d1_max).contains(&outcomes_max),
        "outcomes_max must lie in 2..=d1_max"
    );
    let mut rng = seeded_rng(seed);
    let d = rng.random_range(2..=d1_max);
    let m = rng.random_range(2..=outcomes_max.min(d));

    // Multiplicities: m − 1 distinct cut points in 1..d.
    let mut cuts: Vec<usize> = sample(&mut rng, d - 1, m - 1).into_iter().map(|c| c + 1).collect();
    cuts.sort_unstable();
    cuts.insert(0, 0);
    cuts.push(d);

    let mut level = rng.random_range(-1.0..1.0);
    let mut diag = Vec::with_capacity(d);
    for k in 0..m {
        if k > 0 {
            level += rng.random_range(1e-3..=2.0);
        }
        diag.extend(std::iter::repeat_n(level, cuts[k + 1] - cuts[k]));
    }
    let v = random_unitary(d, &mut rng);
    let h = v
        .mul(&ComplexMatrix::from_diag(&diag))
        .mul(&v.adjoint())
        .hermitian_part();

    let support: Vec<usize> = if rng.random_bool(0.5) {
        (0..m).collect()
    } else {
        let size = rng.random_range(1..=m);
        sample(&mut rng, m, size).into_vec()
    };
    let mut amps = ComplexVector::zeros(d);
    for &k in &support {
        for col in cuts[k]..cuts[k + 1] {
            amps = amps.add(&v.column(col).scale(gaussian_c64(&mut rng)));
        }
    }
    let amps = amps.normalized().expect("Gaussian amplitudes are nonzero");
    let instrument_seed = rng.random();

    let spec = ScenarioSpec {
        object_dim: d,
        observable: ObservableSpec::Matrix {
            entries: (0..d).map(|i| h.row(i).to_vec()).collect(),
        },
        state: StateSpec::Amplitudes {
            values: amps.into_entries(),
        },
        instrument: InstrumentSpec::Repeatable { seed: instrument_seed },
        options: ScenarioOptions::default(),
    };
    Scenario::from_spec(spec).expect("generated scenarios are valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::{classify_outcomes, validate_observable};

    #[test]
    fn deterministic() {
        let a = generate_random_instance(0, 6, 4).to_json();
        let b = generate_random_instance(0, 6, 4).to_json();
        assert_eq!(a, b);
        assert_ne!(a, generate_random_instance(1, 6, 4).to_json());
    }

    #[test]
    fn respects_bounds_and_validates() {
        for seed in 0..200 {
            let sc = generate_random_instance(seed, 6, 4);
            assert!((2..=6).contains(&sc.spec.object_dim));
            assert!((2..=4).contains(&sc.observable.len()));
            validate_observable(&sc.observable).unwrap();
            let gaps = sc.observable.eigenvalues();
            assert!(gaps.windows(2).all(|w| w[1] - w[0] > 1e-3 - 1e-9));
        }
    }

    #[test]
    fn detectable_counts_cover_range() {
        let mut seen = [false; 5];
        for seed in 0..1000 {
            let sc = generate_random_instance(seed, 6, 4);
            seen[classify_outcomes(&sc.observable, &sc.state).unwrap().detectable.len()] = true;
        }
        assert_eq!(seen, [false, true, true, true, true]);
    }

    #[test]
    fn text_round_trip_is_exact() {
        let sc = generate_random_instance(7, 5, 3);
        let again = super::super::parse_scenario(&sc.to_json()).unwrap();
        assert_eq!(again.spec, sc.spec);
        assert_eq!(again.state, sc.state);
    }
}
