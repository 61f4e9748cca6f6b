//! Exact convex geometry over rationals.
//!
//! [`HPolytope`] is `{x : a·x ≤ b for each inequality, c·x = e for each equation}`;
//! [`VPolytope`] is the convex hull of its (minimal, distinct) vertices. The
//! double description method converts between them.

pub mod brute;
pub mod dd;
pub mod definitional;
pub mod exact;
pub mod game32;
pub mod two_point;

use thiserror::Error;

use crate::scalar::Rational;

pub use dd::{affine_dimension, cone_generators, dd_enumerate, facet_enumerate, Cone};
pub use game32::{
    bell_values, classical_polytope_3_2, correlation_from_w, ns_vertex_classification, sync_ns_polytope_3_2,
    w_coordinates, BellFunctional, BellReport, NsClassification, WCoordinates,
};
pub use two_point::{two_point_classical, two_point_data, two_point_nonsignaling, TwoPointDomainData};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("polytope is unbounded along {0:?}")]
    Unbounded(Vec<Rational>),
    #[error("polytope is empty")]
    Infeasible,
    #[error("empty vertex set")]
    EmptyPolytope,
    #[error("coefficient vector has length {got}, expected {dim}")]
    DimensionMismatch { dim: usize, got: usize },
    #[error("trivially infeasible inequality 0 ≤ {bound}")]
    TriviallyInfeasible { bound: Rational },
    #[error("w-coordinates need a 3x2 correlation, got {0}")]
    NotThreeByTwo(crate::GameShape),
    #[error("condition {condition} violated at (xA,xB) = ({xa},{xb})")]
    ConditionViolated { condition: u8, xa: usize, xb: usize },
    #[error("u and v marginals disagree at y = {y} (condition {condition})")]
    MarginalMismatch { condition: u8, y: usize },
    #[error("{0} is not a probability table")]
    NotDistribution(&'static str),
}

/// One inequality `a·x ≤ b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Halfspace {
    pub a: Vec<Rational>,
    pub b: Rational,
}

/// One equation `c·x = e`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Hyperplane {
    pub c: Vec<Rational>,
    pub e: Rational,
}

#[derive(Clone, Debug, PartialEq)]
pub struct HPolytope {
    dim: usize,
    inequalities: Vec<Halfspace>,
    equations: Vec<Hyperplane>,
}

impl HPolytope {
    pub fn new(dim: usize, inequalities: Vec<Halfspace>, equations: Vec<Hyperplane>) -> Result<Self, GeometryError> {
        for h in &inequalities {
            if h.a.len() != dim {
                return Err(GeometryError::DimensionMismatch { dim, got: h.a.len() });
            }
            if h.a.iter().all(num_traits::Zero::is_zero) && h.b < Rational::from_integer(0.into()) {
                return Err(GeometryError::TriviallyInfeasible { bound: h.b.clone() });
            }
        }
        if let Some(h) = equations.iter().find(|h| h.c.len() != dim) {
            return Err(GeometryError::DimensionMismatch { dim, got: h.c.len() });
        }
        Ok(Self { dim, inequalities, equations })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn inequalities(&self) -> &[Halfspace] {
        &self.inequalities
    }

    pub fn equations(&self) -> &[Hyperplane] {
        &self.equations
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.inequalities.iter().all(|h| exact::dot(&h.a, x) <= h.b)
            && self.equations.iter().all(|h| exact::dot(&h.c, x) == h.e)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VPolytope {
    dim: usize,
    vertices: Vec<Vec<Rational>>,
}

impl VPolytope {
    /// Build from points. Duplicates are removed and the vertices sorted
    /// lexicographically; callers guarantee the points are extreme.
    pub fn from_vertices(dim: usize, mut vertices: Vec<Vec<Rational>>) -> Result<Self, GeometryError> {
        if let Some(v) = vertices.iter().find(|v| v.len() != dim) {
            return Err(GeometryError::DimensionMismatch { dim, got: v.len() });
        }
        vertices.sort();
        vertices.dedup();
        Ok(Self { dim, vertices })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vec<Rational>] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

#[cfg(test)]
pub(crate) fn rv(values: &[i64]) -> Vec<Rational> {
    values.iter().map(|&v| Rational::from_integer(v.into())).collect()
}
