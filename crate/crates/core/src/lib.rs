//! Correlation-tensor analysis of two-qubit states.
//!
//! The crate evaluates a ladder of sufficient conditions built on the
//! Hilbert–Schmidt scalar product of correlation functions over the two
//! Bloch spheres:
//!
//! | criterion      | detected when                  |
//! |----------------|--------------------------------|
//! | entanglement   | `T1 < ‖T‖²`                    |
//! | steering       | `T1 < (2/3)‖T‖²`               |
//! | Bell (LHV)     | `T1 < (4/9)‖T‖²`               |
//! | CHSH           | `T1² + T2² > 1`                |
//!
//! where `T1 ≥ T2 ≥ T3` are the singular values of the 3×3 correlation
//! tensor. The [`oracle`] module checks the integral identities and bounds
//! behind the steering condition numerically, using product Gauss–Legendre
//! quadrature on the sphere.

pub mod bloch;
pub mod criteria;
pub mod error;
pub mod families;
pub mod linalg;
pub mod oracle;
pub mod random;
pub mod state;
pub mod svd;
pub mod tensor;

pub use bloch::{BlochVector, Direction};
pub use criteria::{critical_noise, evaluate_all, Criterion, CriterionVerdict};
pub use error::{Error, Result};
pub use families::{NoiseFamily, NoisySchmidt, SweepRecord, Werner};
pub use state::{DensityMatrix4, Outcome};
pub use svd::{svd3, SchmidtForm};
pub use tensor::{pauli_expansion, CorrelationTensor};
