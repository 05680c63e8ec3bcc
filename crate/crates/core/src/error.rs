use std::fmt;

use thiserror::Error;

/// A single violated density-matrix invariant together with its magnitude.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Violation {
    /// Largest `|ρ_ij − conj(ρ_ji)|`.
    NotHermitian(f64),
    /// The offending trace.
    TraceNotOne(f64),
    /// Smallest eigenvalue.
    NotPositive(f64),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotHermitian(d) => write!(f, "not Hermitian (max deviation {d:.3e})"),
            Violation::TraceNotOne(t) => write!(f, "trace is {t} instead of 1"),
            Violation::NotPositive(e) => write!(f, "not positive semidefinite (smallest eigenvalue {e:.3e})"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid density matrix: {}", join(.0))]
    InvalidState(Vec<Violation>),

    #[error("Pauli component T[{mu}][{nu}] has imaginary part {imag:.3e}")]
    NonRealComponent { mu: usize, nu: usize, imag: f64 },

    #[error("outcome probability {probability:.3e} is too small to condition on")]
    ZeroProbabilityBranch { probability: f64 },

    #[error("vector ({x}, {y}, {z}) has norm {norm}, expected {expected}")]
    InvalidBlochVector { x: f64, y: f64, z: f64, norm: f64, expected: &'static str },

    #[error("Jacobi iteration did not converge within {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("parameter {name} = {value} outside [{min}, {max}]")]
    ParameterOutOfRange { name: &'static str, value: f64, min: f64, max: f64 },

    #[error("criterion {criterion} never detects on [0, 1]")]
    NoDetection { criterion: crate::criteria::Criterion },

    #[error("detection of {criterion} is not monotone along the family ({detail})")]
    NonMonotone { criterion: crate::criteria::Criterion, detail: String },

    #[error("correlation tensor is degenerate (T1 = {t1:.3e})")]
    DegenerateTensor { t1: f64 },

    #[error("invalid hidden-state model: {0}")]
    InvalidModel(String),

    #[error("invalid sweep grid: {0}")]
    InvalidGrid(String),
}

fn join(violations: &[Violation]) -> String {
    violations.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
