//! The three-input, two-output game: w-coordinates, the synchronous
//! nonsignaling and classical polytopes, and the four Bell functionals.
//!
//! A synchronous nonsignaling correlation from {0,1,2} to {0,1} is determined
//! by the nine numbers `w[3xA + xB] = p(1,1|xA,xB)`:
//!
//! ```text
//! p(0,0|xA,xB) = 1 + w(xA,xB) − w(xA,xA) − w(xB,xB)
//! p(0,1|xA,xB) = w(xB,xB) − w(xA,xB)
//! p(1,0|xA,xB) = w(xA,xA) − w(xA,xB)
//! p(1,1|xA,xB) = w(xA,xB)
//! ```

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{dd_enumerate, GeometryError, HPolytope, Halfspace, Hyperplane, VPolytope};
use crate::correlation::{Correlation, GameShape};
use crate::scalar::{Rational, Scalar};

/// Number of inputs in this game.
const N: usize = 3;

#[derive(Clone, Debug, PartialEq)]
pub struct WCoordinates<T> {
    pub w: [T; 9],
}

impl<T: Scalar> WCoordinates<T> {
    pub fn new(w: [T; 9]) -> Self {
        Self { w }
    }

    pub fn from_slice(w: &[T]) -> Option<Self> {
        (w.len() == 9).then(|| Self { w: std::array::from_fn(|i| w[i].clone()) })
    }

    pub fn at(&self, xa: usize, xb: usize) -> &T {
        &self.w[N * xa + xb]
    }

    pub fn to_float(&self) -> WCoordinates<f64> {
        WCoordinates { w: std::array::from_fn(|i| self.w[i].to_f64()) }
    }
}

/// Read `w[3xA+xB] = p(1,1|xA,xB)` off a 3x2 correlation.
///
/// The map inverts [`correlation_from_w`] on synchronous nonsignaling inputs;
/// other inputs are read the same way without validation.
pub fn w_coordinates<T: Scalar>(p: &Correlation<T>) -> Result<WCoordinates<T>, GeometryError> {
    let s = p.shape();
    if (s.n(), s.m()) != (N, 2) {
        return Err(GeometryError::NotThreeByTwo(s));
    }
    Ok(WCoordinates { w: std::array::from_fn(|k| p.get(1, 1, k / N, k % N).clone()) })
}

/// Build the correlation of a w-vector after checking nonnegativity
/// (condition 0) and the three pairwise conditions:
/// 1. w(xA,xB) ≤ w(xA,xA), 2. w(xA,xB) ≤ w(xB,xB),
/// 3. w(xA,xA) + w(xB,xB) ≤ 1 + w(xA,xB).
pub fn correlation_from_w<T: Scalar>(w: &WCoordinates<T>, tol: f64) -> Result<Correlation<T>, GeometryError> {
    for xa in 0..N {
        for xb in 0..N {
            let wab = w.at(xa, xb).clone();
            let (waa, wbb) = (w.at(xa, xa).clone(), w.at(xb, xb).clone());
            let checks = [
                (0u8, wab.clone()),
                (1, waa.clone() - wab.clone()),
                (2, wbb.clone() - wab.clone()),
                (3, T::one() + wab.clone() - waa - wbb),
            ];
            if let Some((condition, _)) = checks.iter().find(|(_, slack)| slack.is_negative_tol(tol)) {
                return Err(GeometryError::ConditionViolated { condition: *condition, xa, xb });
            }
        }
    }
    let shape = GameShape::new(N, 2).expect("3x2");
    let mut entries = vec![T::zero(); 4 * N * N];
    for xa in 0..N {
        for xb in 0..N {
            let c = shape.col(xa, xb);
            let (wab, waa, wbb) = (w.at(xa, xb).clone(), w.at(xa, xa).clone(), w.at(xb, xb).clone());
            entries[c] = T::one() + wab.clone() - waa.clone() - wbb.clone();
            entries[9 + c] = wbb - wab.clone();
            entries[18 + c] = waa - wab.clone();
            entries[27 + c] = wab;
        }
    }
    // Conditions were checked above; float noise within tol is clipped by validation.
    Ok(Correlation::from_entries(shape, entries, tol).expect("conditions imply a stochastic table"))
}

/// The four Bell functionals of the 3x2 synchronous game.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BellFunctional {
    J0,
    J1,
    J2,
    J3,
}

impl BellFunctional {
    pub const ALL: [BellFunctional; 4] = [Self::J0, Self::J1, Self::J2, Self::J3];

    pub fn index(self) -> usize {
        self as usize
    }

    /// Integer coefficients on (w0, …, w8).
    pub fn coefficients(self) -> [i64; 9] {
        match self {
            Self::J0 => [1, 0, 0, -1, 1, 0, -1, -1, 1],
            Self::J1 => [1, 0, 0, -1, 0, 0, -1, 1, 0],
            Self::J2 => [0, 0, 0, -1, 1, 0, 1, -1, 0],
            Self::J3 => [0, 0, 0, 1, 0, 0, -1, -1, 1],
        }
    }

    /// Value of J on w.
    pub fn evaluate<T: Scalar>(self, w: &WCoordinates<T>) -> T {
        self.coefficients()
            .iter()
            .zip(&w.w)
            .fold(T::zero(), |acc, (&c, x)| acc + T::from_int(c) * x.clone())
    }

    /// Slack of the classical inequality: 1 − J0 for J0, J_k otherwise.
    /// Negative slack is a violation.
    pub fn slack_of<T: Scalar>(self, value: T) -> T {
        match self {
            Self::J0 => T::one() - value,
            _ => value,
        }
    }

    pub fn parse(label: &str) -> Option<Self> {
        match label.trim().to_ascii_uppercase().as_str() {
            "J0" => Some(Self::J0),
            "J1" => Some(Self::J1),
            "J2" => Some(Self::J2),
            "J3" => Some(Self::J3),
            _ => None,
        }
    }
}

impl std::fmt::Display for BellFunctional {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "J{}", self.index())
    }
}

/// Bell functional values and the (worst) violated inequality.
#[derive(Clone, Debug, PartialEq)]
pub struct BellReport<T> {
    /// (J0, J1, J2, J3).
    pub values: [T; 4],
    /// (1 − J0, J1, J2, J3); negative entries are violations.
    pub slacks: [T; 4],
    pub violated: Option<BellFunctional>,
    /// Amount by which `violated` is exceeded; zero when nothing is violated.
    pub magnitude: T,
    /// How many of the four inequalities are violated.
    pub violation_count: usize,
}

impl<T: Scalar> BellReport<T> {
    /// Build from (J0, J1, J2, J3). `tol` is the float-mode violation threshold.
    pub fn from_values(values: [T; 4], tol: f64) -> Self {
        let slacks: [T; 4] = std::array::from_fn(|i| BellFunctional::ALL[i].slack_of(values[i].clone()));
        let mut violated = None;
        let mut magnitude = T::zero();
        let mut violation_count = 0;
        for (j, s) in BellFunctional::ALL.iter().zip(&slacks) {
            if s.is_negative_tol(tol) {
                violation_count += 1;
                if -s.clone() > magnitude {
                    magnitude = -s.clone();
                    violated = Some(*j);
                }
            }
        }
        Self { values, slacks, violated, magnitude, violation_count }
    }

    pub fn value(&self, j: BellFunctional) -> &T {
        &self.values[j.index()]
    }

    pub fn slack(&self, j: BellFunctional) -> &T {
        &self.slacks[j.index()]
    }
}

pub fn bell_values<T: Scalar>(w: &WCoordinates<T>, tol: f64) -> BellReport<T> {
    BellReport::from_values(std::array::from_fn(|i| BellFunctional::ALL[i].evaluate(w)), tol)
}

/// `Σ coeff·w ≤ bound` from sparse integer coefficients.
fn le(terms: &[(usize, i64)], bound: i64) -> Halfspace {
    let mut a = vec![Rational::from_integer(0.into()); 9];
    for &(i, c) in terms {
        a[i] += Rational::from_integer(c.into());
    }
    Halfspace { a, b: Rational::from_integer(bound.into()) }
}

fn eq(i: usize, j: usize) -> Hyperplane {
    let mut c = vec![Rational::from_integer(0.into()); 9];
    c[i] = Rational::from_integer(1.into());
    c[j] = Rational::from_integer((-1).into());
    Hyperplane { c, e: Rational::from_integer(0.into()) }
}

/// The 24 inequalities of the synchronous nonsignaling polytope in w-space,
/// in their printed reading order (row by row across both columns).
pub fn sync_ns_polytope_3_2() -> HPolytope {
    let ineq = vec![
        le(&[(1, -1)], 0),                  // 0 ≤ w1
        le(&[(0, 1), (4, 1), (1, -1)], 1),  // w0 + w4 ≤ 1 + w1
        le(&[(2, -1)], 0),                  // 0 ≤ w2
        le(&[(0, 1), (4, 1), (3, -1)], 1),  // w0 + w4 ≤ 1 + w3
        le(&[(3, -1)], 0),                  // 0 ≤ w3
        le(&[(0, 1), (8, 1), (2, -1)], 1),  // w0 + w8 ≤ 1 + w2
        le(&[(5, -1)], 0),                  // 0 ≤ w5
        le(&[(0, 1), (8, 1), (6, -1)], 1),  // w0 + w8 ≤ 1 + w6
        le(&[(6, -1)], 0),                  // 0 ≤ w6
        le(&[(4, 1), (8, 1), (5, -1)], 1),  // w4 + w8 ≤ 1 + w5
        le(&[(7, -1)], 0),                  // 0 ≤ w7
        le(&[(4, 1), (8, 1), (7, -1)], 1),  // w4 + w8 ≤ 1 + w7
        le(&[(1, 1), (0, -1)], 0),          // w1 ≤ w0
        le(&[(1, 1), (4, -1)], 0),          // w1 ≤ w4
        le(&[(2, 1), (0, -1)], 0),          // w2 ≤ w0
        le(&[(7, 1), (4, -1)], 0),          // w7 ≤ w4
        le(&[(3, 1), (4, -1)], 0),          // w3 ≤ w4
        le(&[(2, 1), (8, -1)], 0),          // w2 ≤ w8
        le(&[(5, 1), (4, -1)], 0),          // w5 ≤ w4
        le(&[(5, 1), (8, -1)], 0),          // w5 ≤ w8
        le(&[(6, 1), (8, -1)], 0),          // w6 ≤ w8
        le(&[(3, 1), (0, -1)], 0),          // w3 ≤ w0
        le(&[(7, 1), (8, -1)], 0),          // w7 ≤ w8
        le(&[(6, 1), (0, -1)], 0),          // w6 ≤ w0
    ];
    HPolytope::new(9, ineq, vec![]).expect("well-formed")
}

/// The 12 reduced inequalities on the symmetric subspace.
pub fn reduced_inequalities_3_2() -> Vec<Halfspace> {
    vec![
        le(&[(3, -1)], 0),                 // 0 ≤ w3
        le(&[(0, 1), (4, 1), (3, -1)], 1), // w0 + w4 ≤ 1 + w3
        le(&[(6, -1)], 0),                 // 0 ≤ w6
        le(&[(0, 1), (8, 1), (6, -1)], 1), // w0 + w8 ≤ 1 + w6
        le(&[(7, -1)], 0),                 // 0 ≤ w7
        le(&[(4, 1), (8, 1), (7, -1)], 1), // w4 + w8 ≤ 1 + w7
        le(&[(3, 1), (0, -1)], 0),         // w3 ≤ w0
        le(&[(3, 1), (4, -1)], 0),         // w3 ≤ w4
        le(&[(6, 1), (0, -1)], 0),         // w6 ≤ w0
        le(&[(6, 1), (8, -1)], 0),         // w6 ≤ w8
        le(&[(7, 1), (4, -1)], 0),         // w7 ≤ w4
        le(&[(7, 1), (8, -1)], 0),         // w7 ≤ w8
    ]
}

/// The four Bell inequalities J0 ≤ 1 and J1, J2, J3 ≥ 0 as `a·w ≤ b`.
pub fn bell_inequalities_3_2() -> Vec<Halfspace> {
    BellFunctional::ALL
        .iter()
        .map(|j| {
            let c = j.coefficients();
            let terms: Vec<(usize, i64)> = match j {
                BellFunctional::J0 => c.iter().enumerate().map(|(i, &v)| (i, v)).collect(),
                _ => c.iter().enumerate().map(|(i, &v)| (i, -v)).collect(),
            };
            le(&terms, if *j == BellFunctional::J0 { 1 } else { 0 })
        })
        .collect()
}

/// Symmetry equations, 12 reduced inequalities and the 4 Bell inequalities.
pub fn classical_polytope_3_2() -> HPolytope {
    let mut ineq = reduced_inequalities_3_2();
    ineq.extend(bell_inequalities_3_2());
    HPolytope::new(9, ineq, vec![eq(1, 3), eq(2, 6), eq(5, 7)]).expect("well-formed")
}

/// Vertices of the synchronous nonsignaling polytope split by the Bell
/// inequality they violate.
#[derive(Clone, Debug)]
pub struct NsClassification {
    pub vertices: VPolytope,
    pub violating: BTreeMap<BellFunctional, Vec<WCoordinates<Rational>>>,
    pub non_violating: Vec<WCoordinates<Rational>>,
    pub reports: Vec<BellReport<Rational>>,
}

impl NsClassification {
    pub fn violating_count(&self) -> usize {
        self.violating.values().map(Vec::len).sum()
    }
}

pub fn ns_vertex_classification() -> NsClassification {
    let vertices = dd_enumerate(&sync_ns_polytope_3_2()).expect("the nonsignaling polytope is bounded and nonempty");
    let mut violating: BTreeMap<BellFunctional, Vec<WCoordinates<Rational>>> = BTreeMap::new();
    let mut non_violating = Vec::new();
    let mut reports = Vec::with_capacity(vertices.len());
    for v in vertices.vertices() {
        let w = WCoordinates::from_slice(v).expect("dimension 9");
        let report = bell_values(&w, 0.0);
        match report.violated {
            Some(j) => violating.entry(j).or_default().push(w),
            None => non_violating.push(w),
        }
        reports.push(report);
    }
    NsClassification { vertices, violating, non_violating, reports }
}
