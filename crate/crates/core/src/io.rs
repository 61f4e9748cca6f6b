//! JSON file formats.
//!
//! Correlation: `{"n", "m", "mode": "rational"|"float", "entries": [[…]]}`
//! with m² rows of n² values; rationals are `"a/b"` strings, floats numbers.
//! Output is byte-deterministic: fixed field order, canonical rationals.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::classical::{ClassicalError, FunctionDistribution, SeparatingFunctional};
use crate::correlation::{Correlation, CorrelationError, GameShape};
use crate::polytope::{BellFunctional, BellReport, GeometryError, HPolytope, Halfspace, Hyperplane, VPolytope, WCoordinates};
use crate::quantum::{CMatrix, PvmFamily, QuantumError};
use crate::scalar::{Rational, Scalar, ScalarMode};
use crate::search::{SearchResult, SumDiffAngles};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Format(String),
    #[error("file is in {found:?} mode, expected {expected:?}")]
    ModeMismatch { expected: ScalarMode, found: ScalarMode },
    #[error(transparent)]
    Correlation(#[from] CorrelationError),
    #[error(transparent)]
    Classical(#[from] ClassicalError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Quantum(#[from] QuantumError),
}

fn pretty<S: Serialize>(v: &S) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("plain data serializes");
    s.push('\n');
    s
}

fn parse_all<T: Scalar>(values: &[Value]) -> Result<Vec<T>, IoError> {
    values.iter().map(|v| T::parse_json(v).map_err(IoError::Format)).collect()
}

#[derive(Serialize, Deserialize)]
struct CorrelationFile {
    n: usize,
    m: usize,
    mode: ScalarMode,
    entries: Vec<Vec<Value>>,
}

pub fn correlation_to_value<T: Scalar>(p: &Correlation<T>) -> Value {
    serde_json::to_value(correlation_file(p)).expect("plain data serializes")
}

fn correlation_file<T: Scalar>(p: &Correlation<T>) -> CorrelationFile {
    CorrelationFile {
        n: p.shape().n(),
        m: p.shape().m(),
        mode: T::MODE,
        entries: p.rows().iter().map(|r| r.iter().map(Scalar::to_json).collect()).collect(),
    }
}

pub fn correlation_to_json<T: Scalar>(p: &Correlation<T>) -> String {
    pretty(&correlation_file(p))
}

/// A correlation file in whichever mode it declares.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyCorrelation {
    Rational(Correlation<Rational>),
    Float(Correlation<f64>),
}

impl AnyCorrelation {
    pub fn shape(&self) -> GameShape {
        match self {
            Self::Rational(p) => p.shape(),
            Self::Float(p) => p.shape(),
        }
    }

    pub fn mode(&self) -> ScalarMode {
        match self {
            Self::Rational(_) => ScalarMode::Rational,
            Self::Float(_) => ScalarMode::Float,
        }
    }
}

fn validate_file<T: Scalar>(file: &CorrelationFile, tol: f64) -> Result<Correlation<T>, IoError> {
    let shape = GameShape::new(file.n, file.m)?;
    let table = file.entries.iter().map(|r| parse_all::<T>(r)).collect::<Result<Vec<_>, _>>()?;
    Ok(Correlation::validate(table, shape, tol)?)
}

pub fn correlation_from_value<T: Scalar>(v: Value, tol: f64) -> Result<Correlation<T>, IoError> {
    let file: CorrelationFile = serde_json::from_value(v)?;
    if file.mode != T::MODE {
        return Err(IoError::ModeMismatch { expected: T::MODE, found: file.mode });
    }
    validate_file(&file, tol)
}

pub fn correlation_from_json<T: Scalar>(s: &str, tol: f64) -> Result<Correlation<T>, IoError> {
    correlation_from_value(serde_json::from_str(s)?, tol)
}

pub fn any_correlation_from_json(s: &str, tol: f64) -> Result<AnyCorrelation, IoError> {
    let file: CorrelationFile = serde_json::from_str(s)?;
    Ok(match file.mode {
        ScalarMode::Rational => AnyCorrelation::Rational(validate_file(&file, tol)?),
        ScalarMode::Float => AnyCorrelation::Float(validate_file(&file, tol)?),
    })
}

#[derive(Serialize, Deserialize)]
struct WeightEntry {
    f: Vec<usize>,
    w: Value,
}

#[derive(Serialize, Deserialize)]
struct DistributionFile {
    n: usize,
    m: usize,
    weights: Vec<WeightEntry>,
}

pub fn distribution_to_value<T: Scalar>(mu: &FunctionDistribution<T>) -> Value {
    let file = DistributionFile {
        n: mu.shape().n(),
        m: mu.shape().m(),
        weights: mu.iter().map(|(f, w)| WeightEntry { f: f.to_vec(), w: w.to_json() }).collect(),
    };
    serde_json::to_value(file).expect("plain data serializes")
}

pub fn distribution_to_json<T: Scalar>(mu: &FunctionDistribution<T>) -> String {
    pretty(&distribution_to_value(mu))
}

pub fn distribution_from_json<T: Scalar>(s: &str) -> Result<FunctionDistribution<T>, IoError> {
    let file: DistributionFile = serde_json::from_str(s)?;
    let shape = GameShape::new(file.n, file.m)?;
    let terms = file
        .weights
        .into_iter()
        .map(|e| T::parse_json(&e.w).map(|w| (e.f, w)).map_err(IoError::Format))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(FunctionDistribution::new(shape, terms)?)
}

pub fn functional_to_value<T: Scalar>(g: &SeparatingFunctional<T>) -> Value {
    let cols = g.shape.cols();
    serde_json::json!({
        "n": g.shape.n(),
        "m": g.shape.m(),
        "coefficients": g.coefficients.chunks(cols).map(|r| r.iter().map(Scalar::to_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "bound": g.bound.to_json(),
    })
}

#[derive(Serialize, Deserialize)]
struct PvmFile {
    d: usize,
    n: usize,
    m: usize,
    projectors: Vec<Vec<Vec<[f64; 2]>>>,
}

fn matrix_rows(e: &CMatrix) -> Vec<Vec<[f64; 2]>> {
    (0..e.nrows()).map(|i| (0..e.ncols()).map(|j| [e[(i, j)].re, e[(i, j)].im]).collect()).collect()
}

/// `projectors` lists the n·m operators with E^x_y at index x·m + y.
pub fn pvm_to_json(f: &PvmFamily) -> String {
    let projectors = (0..f.n()).flat_map(|x| (0..f.m()).map(move |y| (x, y))).map(|(x, y)| matrix_rows(f.get(x, y))).collect();
    pretty(&PvmFile { d: f.d(), n: f.n(), m: f.m(), projectors })
}

pub fn pvm_from_json(s: &str, tol: f64) -> Result<PvmFamily, IoError> {
    let file: PvmFile = serde_json::from_str(s)?;
    if file.projectors.len() != file.n * file.m || file.n == 0 || file.m == 0 {
        return Err(IoError::Format(format!("expected {}·{} projectors, found {}", file.n, file.m, file.projectors.len())));
    }
    let mut mats = Vec::with_capacity(file.projectors.len());
    for rows in &file.projectors {
        if rows.len() != file.d || rows.iter().any(|r| r.len() != file.d) {
            return Err(IoError::Format(format!("every projector must be {0}x{0}", file.d)));
        }
        mats.push(DMatrix::from_fn(file.d, file.d, |i, j| Complex64::new(rows[i][j][0], rows[i][j][1])));
    }
    let ops = mats.chunks(file.m).map(<[CMatrix]>::to_vec).collect();
    Ok(PvmFamily::validate(ops, tol)?)
}

fn rationals(v: &[Rational]) -> Vec<Value> {
    v.iter().map(Scalar::to_json).collect()
}

pub fn hpolytope_to_value(h: &HPolytope) -> Value {
    serde_json::json!({
        "dim": h.dim(),
        "inequalities": h.inequalities().iter().map(|s| serde_json::json!({"a": rationals(&s.a), "b": s.b.to_json()})).collect::<Vec<_>>(),
        "equations": h.equations().iter().map(|s| serde_json::json!({"c": rationals(&s.c), "e": s.e.to_json()})).collect::<Vec<_>>(),
    })
}

pub fn hpolytope_from_json(s: &str) -> Result<HPolytope, IoError> {
    #[derive(Deserialize)]
    struct Ineq {
        a: Vec<Value>,
        b: Value,
    }
    #[derive(Deserialize)]
    struct Eq {
        c: Vec<Value>,
        e: Value,
    }
    #[derive(Deserialize)]
    struct File {
        dim: usize,
        inequalities: Vec<Ineq>,
        #[serde(default)]
        equations: Vec<Eq>,
    }
    let f: File = serde_json::from_str(s)?;
    let one = |v: &Value| Rational::parse_json(v).map_err(IoError::Format);
    let inequalities = f
        .inequalities
        .iter()
        .map(|i| Ok(Halfspace { a: parse_all(&i.a)?, b: one(&i.b)? }))
        .collect::<Result<Vec<_>, IoError>>()?;
    let equations = f
        .equations
        .iter()
        .map(|e| Ok(Hyperplane { c: parse_all(&e.c)?, e: one(&e.e)? }))
        .collect::<Result<Vec<_>, IoError>>()?;
    Ok(HPolytope::new(f.dim, inequalities, equations)?)
}

pub fn vpolytope_to_value(v: &VPolytope) -> Value {
    serde_json::json!({
        "dim": v.dim(),
        "count": v.len(),
        "vertices": v.vertices().iter().map(|x| rationals(x)).collect::<Vec<_>>(),
    })
}

pub fn vpolytope_from_json(s: &str) -> Result<VPolytope, IoError> {
    #[derive(Deserialize)]
    struct File {
        dim: usize,
        vertices: Vec<Vec<Value>>,
    }
    let f: File = serde_json::from_str(s)?;
    let vertices = f.vertices.iter().map(|v| parse_all(v)).collect::<Result<Vec<_>, _>>()?;
    Ok(VPolytope::from_vertices(f.dim, vertices)?)
}

pub fn w_to_value<T: Scalar>(w: &WCoordinates<T>) -> Value {
    Value::Array(w.w.iter().map(Scalar::to_json).collect())
}

pub fn bell_report_to_value<T: Scalar>(r: &BellReport<T>) -> Value {
    serde_json::json!({
        "values": r.values.iter().map(Scalar::to_json).collect::<Vec<_>>(),
        "slacks": r.slacks.iter().map(Scalar::to_json).collect::<Vec<_>>(),
        "violated": r.violated,
        "magnitude": r.magnitude.to_json(),
        "violation_count": r.violation_count,
    })
}

#[derive(Serialize, Deserialize)]
struct SearchFile {
    target: BellFunctional,
    min_value: f64,
    grid_min: f64,
    grid_steps: usize,
    refine_tol: f64,
    argmin: Vec<SumDiffAngles>,
    distinct_matrices: usize,
    canonical_matrix: CorrelationFile,
}

pub fn search_result_to_json(r: &SearchResult) -> String {
    pretty(&SearchFile {
        target: r.target,
        min_value: r.min_value,
        grid_min: r.grid_min,
        grid_steps: r.grid_steps,
        refine_tol: r.refine_tol,
        argmin: r.argmin.clone(),
        distinct_matrices: r.distinct_matrices,
        canonical_matrix: correlation_file(&r.canonical_matrix),
    })
}

pub fn search_result_from_json(s: &str) -> Result<SearchResult, IoError> {
    let f: SearchFile = serde_json::from_str(s)?;
    Ok(SearchResult {
        target: f.target,
        min_value: f.min_value,
        grid_min: f.grid_min,
        argmin: f.argmin,
        canonical_matrix: validate_file(&f.canonical_matrix, crate::DEFAULT_TOL)?,
        distinct_matrices: f.distinct_matrices,
        grid_steps: f.grid_steps,
        refine_tol: f.refine_tol,
    })
}
