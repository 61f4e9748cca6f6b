//! Correlation tables p(yA,yB|xA,xB) and the synchronous / nonsignaling /
//! symmetric predicates.
//!
//! Storage is a dense m²×n² column-stochastic array with row index `m·yA + yB`
//! and column index `n·xA + xB`. For (n,m) = (3,2) the column index is the
//! `3xA + xB` label used by the w-coordinates.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GameShape {
    n: usize,
    m: usize,
}

impl GameShape {
    pub fn new(n: usize, m: usize) -> Result<Self, CorrelationError> {
        if n == 0 || m == 0 {
            return Err(CorrelationError::EmptyShape { n, m });
        }
        Ok(Self { n, m })
    }

    /// |X|, the number of inputs.
    pub fn n(&self) -> usize {
        self.n
    }

    /// |Y|, the number of outputs.
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn rows(&self) -> usize {
        self.m * self.m
    }

    pub fn cols(&self) -> usize {
        self.n * self.n
    }

    pub fn row(&self, ya: usize, yb: usize) -> usize {
        self.m * ya + yb
    }

    pub fn col(&self, xa: usize, xb: usize) -> usize {
        self.n * xa + xb
    }
}

impl std::fmt::Display for GameShape {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}x{}", self.n, self.m)
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CorrelationError {
    #[error("game shape needs n ≥ 1 and m ≥ 1, got n={n}, m={m}")]
    EmptyShape { n: usize, m: usize },
    #[error("table is {rows}x{cols}, expected {expected_rows}x{expected_cols}")]
    DimensionMismatch {
        rows: usize,
        cols: usize,
        expected_rows: usize,
        expected_cols: usize,
    },
    #[error("negative entry at row {row}, column {col}")]
    NegativeEntry { row: usize, col: usize },
    #[error("column {column} sums to 1 {deviation:+e}")]
    ColumnSumViolation { column: usize, deviation: f64 },
    #[error("function value {value} at input {input} is outside 0..{m}")]
    ValueOutOfRange { input: usize, value: usize, m: usize },
    #[error("function has {len} values, expected {n}")]
    FunctionLength { len: usize, n: usize },
    #[error("mixture weights must be nonnegative and sum to 1 (deviation {deviation:e})")]
    WeightSumViolation { deviation: f64 },
    #[error("cannot combine correlations of shapes {0} and {1}")]
    ShapeMismatch(GameShape, GameShape),
    #[error("empty mixture")]
    EmptyMixture,
}

/// A validated correlation table.
#[derive(Clone, Debug, PartialEq)]
pub struct Correlation<T> {
    shape: GameShape,
    entries: Vec<T>,
}

/// Which player a marginal belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    A,
    B,
}

/// Well-defined single-player marginal of a nonsignaling correlation,
/// `values[y·n + x]` = Pr(y | x).
#[derive(Clone, Debug, PartialEq)]
pub struct Marginal<T> {
    pub side: Side,
    pub n: usize,
    pub m: usize,
    pub values: Vec<T>,
}

impl<T: Scalar> Marginal<T> {
    pub fn get(&self, y: usize, x: usize) -> &T {
        &self.values[y * self.n + x]
    }
}

impl<T: Scalar> Correlation<T> {
    /// Validate a raw m²×n² table. In float mode columns within `tol` of
    /// summing to one are renormalized.
    pub fn validate(table: Vec<Vec<T>>, shape: GameShape, tol: f64) -> Result<Self, CorrelationError> {
        let rows = table.len();
        let cols = table.first().map_or(0, Vec::len);
        if rows != shape.rows() || table.iter().any(|r| r.len() != shape.cols()) {
            return Err(CorrelationError::DimensionMismatch {
                rows,
                cols,
                expected_rows: shape.rows(),
                expected_cols: shape.cols(),
            });
        }
        let entries: Vec<T> = table.into_iter().flatten().collect();
        Self::from_entries(shape, entries, tol)
    }

    /// Validate a row-major entry vector.
    pub fn from_entries(shape: GameShape, mut entries: Vec<T>, tol: f64) -> Result<Self, CorrelationError> {
        let (rows, cols) = (shape.rows(), shape.cols());
        if entries.len() != rows * cols {
            return Err(CorrelationError::DimensionMismatch {
                rows: entries.len() / cols.max(1),
                cols,
                expected_rows: rows,
                expected_cols: cols,
            });
        }
        for (i, e) in entries.iter().enumerate() {
            if e.is_negative_tol(tol) {
                return Err(CorrelationError::NegativeEntry { row: i / cols, col: i % cols });
            }
        }
        for c in 0..cols {
            let sum = (0..rows).fold(T::zero(), |acc, r| acc + entries[r * cols + c].clone());
            if !sum.approx_eq(&T::one(), tol) {
                return Err(CorrelationError::ColumnSumViolation {
                    column: c,
                    deviation: (sum - T::one()).to_f64(),
                });
            }
            if T::MODE == crate::scalar::ScalarMode::Float {
                for r in 0..rows {
                    let e = &mut entries[r * cols + c];
                    if e.is_negative() {
                        *e = T::zero();
                    }
                    *e = e.clone() / sum.clone();
                }
            }
        }
        Ok(Self { shape, entries })
    }

    /// Deterministic strategy of a function f: X → Y.
    pub fn from_function(f: &[usize], shape: GameShape) -> Result<Self, CorrelationError> {
        if f.len() != shape.n() {
            return Err(CorrelationError::FunctionLength { len: f.len(), n: shape.n() });
        }
        if let Some((input, &value)) = f.iter().enumerate().find(|(_, &v)| v >= shape.m()) {
            return Err(CorrelationError::ValueOutOfRange { input, value, m: shape.m() });
        }
        let mut entries = vec![T::zero(); shape.rows() * shape.cols()];
        for xa in 0..shape.n() {
            for xb in 0..shape.n() {
                entries[shape.row(f[xa], f[xb]) * shape.cols() + shape.col(xa, xb)] = T::one();
            }
        }
        Ok(Self { shape, entries })
    }

    /// Entrywise convex combination. Weights must be nonnegative and sum to one
    /// (exactly for rationals, within [`crate::DEFAULT_TOL`] for floats).
    pub fn convex_combine(terms: &[(T, &Correlation<T>)]) -> Result<Self, CorrelationError> {
        let (_, first) = terms.first().ok_or(CorrelationError::EmptyMixture)?;
        let shape = first.shape;
        let mut total = T::zero();
        for (w, p) in terms {
            if p.shape != shape {
                return Err(CorrelationError::ShapeMismatch(shape, p.shape));
            }
            if w.is_negative_tol(crate::DEFAULT_TOL) {
                return Err(CorrelationError::WeightSumViolation { deviation: w.to_f64() });
            }
            total = total + w.clone();
        }
        if !total.approx_eq(&T::one(), crate::DEFAULT_TOL) {
            return Err(CorrelationError::WeightSumViolation {
                deviation: (total - T::one()).to_f64(),
            });
        }
        let mut entries = vec![T::zero(); first.entries.len()];
        for (w, p) in terms {
            for (acc, e) in entries.iter_mut().zip(&p.entries) {
                *acc = acc.clone() + w.clone() * e.clone();
            }
        }
        Ok(Self { shape, entries })
    }

    pub(crate) fn from_raw_unchecked(shape: GameShape, entries: Vec<T>) -> Self {
        debug_assert_eq!(entries.len(), shape.rows() * shape.cols());
        Self { shape, entries }
    }

    pub fn shape(&self) -> GameShape {
        self.shape
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn get(&self, ya: usize, yb: usize, xa: usize, xb: usize) -> &T {
        let s = self.shape;
        &self.entries[s.row(ya, yb) * s.cols() + s.col(xa, xb)]
    }

    pub fn rows(&self) -> Vec<Vec<T>> {
        self.entries.chunks(self.shape.cols()).map(<[T]>::to_vec).collect()
    }

    /// Offending (x, yA, yB) triples with p(yA,yB|x,x) ≠ 0, yA ≠ yB.
    pub fn synchronous_violations(&self, tol: f64) -> Vec<(usize, usize, usize)> {
        let (n, m) = (self.shape.n(), self.shape.m());
        let mut out = Vec::new();
        for x in 0..n {
            for ya in 0..m {
                for yb in 0..m {
                    if ya != yb && !self.get(ya, yb, x, x).is_zero_tol(tol) {
                        out.push((x, ya, yb));
                    }
                }
            }
        }
        out
    }

    pub fn is_synchronous(&self, tol: f64) -> bool {
        self.synchronous_violations(tol).is_empty()
    }

    /// Largest |p(yA,yB|x,x)| with yA ≠ yB.
    pub fn synchronous_defect(&self) -> f64 {
        let (n, m) = (self.shape.n(), self.shape.m());
        let mut worst = 0.0f64;
        for x in 0..n {
            for ya in 0..m {
                for yb in 0..m {
                    if ya != yb {
                        worst = worst.max(self.get(ya, yb, x, x).abs().to_f64());
                    }
                }
            }
        }
        worst
    }

    /// Player marginals if both nonsignaling conditions hold, `None` otherwise.
    pub fn nonsignaling_marginals(&self, tol: f64) -> Option<(Marginal<T>, Marginal<T>)> {
        let (n, m) = (self.shape.n(), self.shape.m());
        let alice = |ya: usize, xa: usize, xb: usize| {
            (0..m).fold(T::zero(), |acc, yb| acc + self.get(ya, yb, xa, xb).clone())
        };
        let bob = |yb: usize, xa: usize, xb: usize| {
            (0..m).fold(T::zero(), |acc, ya| acc + self.get(ya, yb, xa, xb).clone())
        };
        let mut ma = Vec::with_capacity(n * m);
        let mut mb = Vec::with_capacity(n * m);
        for y in 0..m {
            for x in 0..n {
                let a0 = alice(y, x, 0);
                if (1..n).any(|xb| !alice(y, x, xb).approx_eq(&a0, tol)) {
                    return None;
                }
                let b0 = bob(y, 0, x);
                if (1..n).any(|xa| !bob(y, xa, x).approx_eq(&b0, tol)) {
                    return None;
                }
                ma.push(a0);
                mb.push(b0);
            }
        }
        Some((
            Marginal { side: Side::A, n, m, values: ma },
            Marginal { side: Side::B, n, m, values: mb },
        ))
    }

    pub fn is_nonsignaling(&self, tol: f64) -> bool {
        self.nonsignaling_marginals(tol).is_some()
    }

    /// p(yA,yB|xA,xB) = p(yB,yA|xB,xA) for all indices.
    pub fn is_symmetric(&self, tol: f64) -> bool {
        let (n, m) = (self.shape.n(), self.shape.m());
        (0..m).all(|ya| {
            (0..m).all(|yb| {
                (0..n).all(|xa| (0..n).all(|xb| self.get(ya, yb, xa, xb).approx_eq(self.get(yb, ya, xb, xa), tol)))
            })
        })
    }

    pub fn to_float(&self) -> Correlation<f64> {
        Correlation {
            shape: self.shape,
            entries: self.entries.iter().map(Scalar::to_f64).collect(),
        }
    }

    /// Largest entrywise |self − other| as a float.
    pub fn max_abs_diff(&self, other: &Correlation<T>) -> f64 {
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.deviation(b))
            .fold(0.0, f64::max)
    }
}

impl Correlation<f64> {
    /// Largest entrywise deviation from a table in any scalar mode.
    pub fn max_abs_diff_from<S: Scalar>(&self, other: &Correlation<S>) -> f64 {
        self.entries
            .iter()
            .zip(other.entries())
            .map(|(a, b)| (a - b.to_f64()).abs())
            .fold(0.0, f64::max)
    }
}

impl<T: Scalar> std::fmt::Display for Correlation<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let cols = self.shape.cols();
        for row in self.entries.chunks(cols) {
            let cells: Vec<String> = row.iter().map(|e| format!("{e:>8}")).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}
