//! Numerical laboratory for repeatable measurements of discrete observables.
//!
//! An object in a pure state is coupled to a measuring instrument through a
//! unitary dilation of a set of state transformers. The resulting bipartite
//! state is decomposed in Schmidt form, and its entanglement is compared with
//! the incompatibility (coherence) entropy of the measured observable, both in
//! the final state and in the initial object state.
//!
//! Module map:
//!
//! * [`linalg`]: dense complex matrices, Hermitian eigensolver, partial traces.
//! * [`quantum`]: observables in spectral form, states, Lüders update, purification.
//! * [`measurement`]: state transformers, repeatability, dilation, probability reproducibility.
//! * [`schmidt`]: Schmidt canonical form, definite values, twin reducees.
//! * [`info`]: entropies, incompatibility entropy, identity verifiers, pointer reading.
//! * [`harness`]: scenario files, random instances, the end-to-end pipeline and reports.

pub mod error;
pub mod harness;
pub mod info;
pub mod linalg;
pub mod measurement;
pub mod quantum;
pub mod random;
pub mod schmidt;
pub mod tol;

pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, ComplexVector, LinalgError, TensorStructure, TensorVector, C64};
pub use quantum::{DensityOperator, Observable, PureState, QuantumState};
