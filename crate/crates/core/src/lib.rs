//! Synchronous correlations for two-player nonlocal games.
//!
//! - [`correlation`]: tables p(yA,yB|xA,xB) and the synchronous, nonsignaling
//!   and symmetric predicates.
//! - [`classical`]: mixtures of function strategies and exact membership.
//! - [`polytope`]: exact double description, the 3x2 polytopes and Bell functionals.
//! - [`quantum`]: PVM strategies on the maximally entangled state, general
//!   strategies, Schmidt blocks and trace certificates.
//! - [`search`]: the qubit family and its slack minimizer.
//! - [`io`]: JSON formats.

pub mod classical;
pub mod correlation;
pub mod io;
pub mod lp;
pub mod polytope;
#[cfg(feature = "random")]
pub mod sampling;
pub mod quantum;
pub mod scalar;
pub mod search;

pub use classical::{
    classical_membership, correlation_from_distribution, enumerate_functions, two_input_decompose,
    ClassicalCertificate, ClassicalError, FunctionDistribution, FunctionStrategy, SeparatingFunctional,
};
pub use correlation::{Correlation, CorrelationError, GameShape, Marginal, Side};
pub use scalar::{rat, Rational, Scalar, ScalarMode, DEFAULT_TOL};
