//! Finite-dimensional quantum strategies in double precision.
//!
//! - [`pvm`]: projective measurements and the maximally entangled trace formula.
//! - [`general`]: arbitrary density operators and POVMs on a tensor product.
//! - [`schmidt`](mod@schmidt): Schmidt decomposition and the block decomposition of a
//!   synchronous pure-state strategy.
//! - [`traces`]: ±1 observables, the Bell functionals through traces and the
//!   sum-of-squares certificate.

pub mod general;
pub mod pvm;
#[cfg(feature = "random")]
pub mod random;
pub mod schmidt;
pub mod traces;

use thiserror::Error;

use crate::correlation::CorrelationError;

pub use general::{correlation_general, maximally_entangled, partial_trace_a, partial_trace_b, pure_density, GeneralQuantumStrategy};
pub use pvm::{correlation_me, ket_projector, CMatrix, PvmFamily};
pub use schmidt::{decompose_me, schmidt, SchmidtBlock, SchmidtBlocks, SchmidtDecomposition};
pub use traces::{bell_from_traces, observable_traces, tsirelson_certificate, ObservableTraces, SignPattern, TsirelsonCertificate};

/// Coefficients closer than this are treated as one Schmidt eigenvalue.
pub const SCHMIDT_MERGE_GAP: f64 = 1e-5;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QuantumError {
    #[error("empty measurement family")]
    EmptyFamily,
    #[error("input {x} has {got} outcomes, expected {expected}")]
    OutcomeCountMismatch { x: usize, got: usize, expected: usize },
    #[error("operator dimension {got}, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("E^{x}_{y} is not Hermitian (deviation {maxdev:.3e})")]
    NotHermitian { x: usize, y: usize, maxdev: f64 },
    #[error("E^{x}_{y} is not idempotent (deviation {maxdev:.3e})")]
    NotIdempotent { x: usize, y: usize, maxdev: f64 },
    #[error("operators of input {x} do not sum to the identity (deviation {maxdev:.3e})")]
    NotComplete { x: usize, maxdev: f64 },
    #[error("POVM element for input {x}, outcome {y} is not positive semidefinite (eigenvalue {min_eigenvalue:.3e})")]
    NotPositive { x: usize, y: usize, min_eigenvalue: f64 },
    #[error("state is not a density operator: {0}")]
    InvalidState(&'static str),
    #[error("trace has imaginary residual {maxdev:.3e}")]
    ImaginaryResidual { maxdev: f64 },
    #[error("state vector has norm {norm}, expected 1")]
    NotNormalized { norm: f64 },
    #[error("induced correlation is not synchronous (defect {defect:.3e})")]
    NotSynchronous { defect: f64 },
    #[error("measurement operators fail to commute with the reduced state (deviation {maxdev:.3e})")]
    CommutationViolation { maxdev: f64 },
    #[error("Schmidt coefficients {left} and {right} are too close to split reliably")]
    DegenerateGap { left: f64, right: f64 },
    #[error("block recombination misses the input by {maxdev:.3e}")]
    RecombinationMismatch { maxdev: f64 },
    #[error("observables need two outcomes, got {0}")]
    OutcomeCountNotTwo(usize),
    #[error("Bell functionals need three inputs, got {0}")]
    InputCountNotThree(usize),
    #[error("trace certificate differs from the functional by {dev:.3e}")]
    CertificateMismatch { dev: f64 },
    #[error(transparent)]
    Correlation(#[from] CorrelationError),
}
