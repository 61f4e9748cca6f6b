//! Classical (local hidden variable) synchronous strategies.
//!
//! A synchronous classical correlation is exactly a probability distribution
//! over the mⁿ functions X → Y: the players sample f and answer f(xA), f(xB).
//! Membership is decided by an exact linear feasibility problem over the
//! function vertex tables; rejections carry a separating functional read off
//! the Farkas witness.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::correlation::{Correlation, CorrelationError, GameShape};
use crate::lp::{solve_feasibility, Feasibility};
use crate::scalar::Scalar;

/// Default bound on mⁿ for explicit vertex enumeration.
pub const DEFAULT_FUNCTION_CAP: usize = 1 << 16;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ClassicalError {
    #[error("{count} functions exceed the enumeration cap {cap}")]
    CapExceeded { count: u128, cap: usize },
    #[error("correlation is not synchronous")]
    NotSynchronous,
    #[error("correlation is not symmetric")]
    NotSymmetric,
    #[error("correlation is not nonsignaling")]
    NotNonsignaling,
    #[error("two-input decomposition needs n = 2, got n = {0}")]
    NotTwoInputs(usize),
    #[error("certificate failed verification: {0}")]
    CertificateCheck(String),
    #[error(transparent)]
    Correlation(#[from] CorrelationError),
}

/// A deterministic strategy f: X → Y, stored as (f(0), …, f(n−1)).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FunctionStrategy {
    shape: GameShape,
    values: Vec<usize>,
}

impl FunctionStrategy {
    pub fn new(values: Vec<usize>, shape: GameShape) -> Result<Self, ClassicalError> {
        if values.len() != shape.n() {
            return Err(CorrelationError::FunctionLength { len: values.len(), n: shape.n() }.into());
        }
        if let Some((input, &value)) = values.iter().enumerate().find(|(_, &v)| v >= shape.m()) {
            return Err(CorrelationError::ValueOutOfRange { input, value, m: shape.m() }.into());
        }
        Ok(Self { shape, values })
    }

    pub fn shape(&self) -> GameShape {
        self.shape
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn correlation<T: Scalar>(&self) -> Correlation<T> {
        Correlation::from_function(&self.values, self.shape).expect("validated function")
    }
}

/// All mⁿ functions in lexicographic order of (f(0), …, f(n−1)).
pub fn enumerate_functions(shape: GameShape, cap: usize) -> Result<Vec<FunctionStrategy>, ClassicalError> {
    let count = (shape.m() as u128).checked_pow(shape.n() as u32).unwrap_or(u128::MAX);
    if count > cap as u128 {
        return Err(ClassicalError::CapExceeded { count, cap });
    }
    let (n, m) = (shape.n(), shape.m());
    let mut out = Vec::with_capacity(count as usize);
    let mut digits = vec![0usize; n];
    loop {
        out.push(FunctionStrategy { shape, values: digits.clone() });
        // increment as a base-m counter with f(n-1) least significant
        let mut pos = n;
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < m {
                break;
            }
            digits[pos] = 0;
        }
    }
}

/// Probability distribution over Y^X (sparse; absent functions have weight 0).
#[derive(Clone, Debug, PartialEq)]
pub struct FunctionDistribution<T> {
    shape: GameShape,
    weights: BTreeMap<Vec<usize>, T>,
}

impl<T: Scalar> FunctionDistribution<T> {
    /// Build from (f, weight) pairs; repeated functions are merged.
    pub fn new(shape: GameShape, terms: impl IntoIterator<Item = (Vec<usize>, T)>) -> Result<Self, ClassicalError> {
        let mut weights: BTreeMap<Vec<usize>, T> = BTreeMap::new();
        let mut total = T::zero();
        for (f, w) in terms {
            FunctionStrategy::new(f.clone(), shape)?;
            if w.is_negative_tol(crate::DEFAULT_TOL) {
                return Err(CorrelationError::WeightSumViolation { deviation: w.to_f64() }.into());
            }
            total = total + w.clone();
            let slot = weights.entry(f).or_insert_with(T::zero);
            *slot = slot.clone() + w;
        }
        if !total.approx_eq(&T::one(), crate::DEFAULT_TOL) {
            return Err(CorrelationError::WeightSumViolation { deviation: (total - T::one()).to_f64() }.into());
        }
        weights.retain(|_, w| !w.is_zero());
        Ok(Self { shape, weights })
    }

    pub fn point_mass(f: FunctionStrategy) -> Self {
        let shape = f.shape;
        Self { shape, weights: BTreeMap::from([(f.values, T::one())]) }
    }

    pub fn shape(&self) -> GameShape {
        self.shape
    }

    /// Support in lexicographic order of f.
    pub fn iter(&self) -> impl Iterator<Item = (&[usize], &T)> {
        self.weights.iter().map(|(f, w)| (f.as_slice(), w))
    }

    pub fn weight(&self, f: &[usize]) -> T {
        self.weights.get(f).cloned().unwrap_or_else(T::zero)
    }

    pub fn support_len(&self) -> usize {
        self.weights.len()
    }

    /// p = Σ_f μ(f)·C_f.
    pub fn correlation(&self) -> Correlation<T> {
        let tables: Vec<(T, Correlation<T>)> = self
            .weights
            .iter()
            .map(|(f, w)| (w.clone(), Correlation::from_function(f, self.shape).expect("validated")))
            .collect();
        let terms: Vec<(T, &Correlation<T>)> = tables.iter().map(|(w, c)| (w.clone(), c)).collect();
        Correlation::convex_combine(&terms).expect("weights validated at construction")
    }
}

/// Free-function form of [`FunctionDistribution::correlation`].
pub fn correlation_from_distribution<T: Scalar>(mu: &FunctionDistribution<T>) -> Correlation<T> {
    mu.correlation()
}

/// Linear functional Σ coeff·p ≤ bound, coefficients laid out like a
/// correlation table (row-major m²×n²).
#[derive(Clone, Debug, PartialEq)]
pub struct SeparatingFunctional<T> {
    pub shape: GameShape,
    pub coefficients: Vec<T>,
    pub bound: T,
}

impl<T: Scalar> SeparatingFunctional<T> {
    pub fn evaluate(&self, p: &Correlation<T>) -> T {
        self.coefficients
            .iter()
            .zip(p.entries())
            .fold(T::zero(), |acc, (c, e)| acc + c.clone() * e.clone())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ClassicalCertificate<T> {
    Classical(FunctionDistribution<T>),
    NotClassical(SeparatingFunctional<T>),
}

impl<T> ClassicalCertificate<T> {
    pub fn is_classical(&self) -> bool {
        matches!(self, Self::Classical(_))
    }
}

/// Decide whether a synchronous correlation is a mixture of function strategies.
///
/// Exact in rational mode. In float mode the reproduced table must match within
/// `tol`. The returned distribution is the basic feasible solution found by the
/// simplex; for n ≥ 3 it is generally not the only one.
pub fn classical_membership<T: Scalar>(
    p: &Correlation<T>,
    cap: usize,
    tol: f64,
) -> Result<ClassicalCertificate<T>, ClassicalError> {
    if !p.is_synchronous(tol) {
        return Err(ClassicalError::NotSynchronous);
    }
    let shape = p.shape();
    let functions = enumerate_functions(shape, cap)?;
    let tables: Vec<Correlation<T>> = functions.iter().map(FunctionStrategy::correlation).collect();

    let nentries = shape.rows() * shape.cols();
    let mut a: Vec<Vec<T>> = (0..nentries)
        .map(|k| tables.iter().map(|c| c.entries()[k].clone()).collect())
        .collect();
    a.push(vec![T::one(); tables.len()]);
    let mut b: Vec<T> = p.entries().to_vec();
    b.push(T::one());

    match solve_feasibility(&a, &b, tol) {
        Feasibility::Feasible(x) => {
            let terms = functions
                .into_iter()
                .zip(x)
                .filter(|(_, w)| w.is_positive_tol(0.0))
                .map(|(f, w)| (f.values, w));
            let terms: Vec<(Vec<usize>, T)> = terms.collect();
            // Float solutions can drift slightly off the simplex; renormalize.
            let total = terms.iter().fold(T::zero(), |acc, (_, w)| acc + w.clone());
            let mu = FunctionDistribution::new(shape, terms.into_iter().map(|(f, w)| (f, w / total.clone())))?;
            let dev = mu.correlation().max_abs_diff(p);
            if dev > tol {
                return Err(ClassicalError::CertificateCheck(format!("reproduction residual {dev:e}")));
            }
            Ok(ClassicalCertificate::Classical(mu))
        }
        Feasibility::Infeasible { mut dual, .. } => {
            let c = dual.pop().expect("normalization row");
            let mut coefficients = dual;
            let mut bound = -c;
            T::normalize_functional(&mut coefficients, &mut bound);
            let functional = SeparatingFunctional { shape, coefficients, bound };
            for (f, table) in functions.iter().zip(&tables) {
                let v = functional.evaluate(table);
                if (v.clone() - functional.bound.clone()).is_positive_tol(tol) {
                    return Err(ClassicalError::CertificateCheck(format!(
                        "functional exceeds bound on vertex {:?}",
                        f.values
                    )));
                }
            }
            let on_p = functional.evaluate(p);
            if !(on_p - functional.bound.clone()).is_positive_tol(tol) {
                return Err(ClassicalError::CertificateCheck("functional does not separate the input".into()));
            }
            Ok(ClassicalCertificate::NotClassical(functional))
        }
    }
}

/// For n = 2 a symmetric synchronous nonsignaling correlation is classical with
/// μ(f) = p(f(0), f(1) | 0, 1).
pub fn two_input_decompose<T: Scalar>(p: &Correlation<T>, tol: f64) -> Result<FunctionDistribution<T>, ClassicalError> {
    let shape = p.shape();
    if shape.n() != 2 {
        return Err(ClassicalError::NotTwoInputs(shape.n()));
    }
    if !p.is_synchronous(tol) {
        return Err(ClassicalError::NotSynchronous);
    }
    if !p.is_nonsignaling(tol) {
        return Err(ClassicalError::NotNonsignaling);
    }
    if !p.is_symmetric(tol) {
        return Err(ClassicalError::NotSymmetric);
    }
    let m = shape.m();
    let terms = (0..m).flat_map(|a| (0..m).map(move |b| (a, b))).map(|(a, b)| (vec![a, b], p.get(a, b, 0, 1).clone()));
    FunctionDistribution::new(shape, terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Rational};

    fn shape(n: usize, m: usize) -> GameShape {
        GameShape::new(n, m).unwrap()
    }

    #[test]
    fn function_enumeration_counts_and_order() {
        assert_eq!(enumerate_functions(shape(3, 2), DEFAULT_FUNCTION_CAP).unwrap().len(), 8);
        assert_eq!(enumerate_functions(shape(1, 3), DEFAULT_FUNCTION_CAP).unwrap().len(), 3);
        let fs: Vec<Vec<usize>> = enumerate_functions(shape(2, 2), DEFAULT_FUNCTION_CAP)
            .unwrap()
            .into_iter()
            .map(|f| f.values)
            .collect();
        assert_eq!(fs, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert!(matches!(
            enumerate_functions(shape(17, 2), DEFAULT_FUNCTION_CAP),
            Err(ClassicalError::CapExceeded { .. })
        ));
    }

    #[test]
    fn point_mass_reproduces_function() {
        let f = FunctionStrategy::new(vec![1, 0, 1], shape(3, 2)).unwrap();
        let mu = FunctionDistribution::<Rational>::point_mass(f.clone());
        assert_eq!(mu.correlation(), f.correlation());
    }

    #[test]
    fn constant_mixture_has_half_everywhere() {
        let s = shape(3, 2);
        let mu = FunctionDistribution::new(s, [(vec![0, 0, 0], rat(1, 2)), (vec![1, 1, 1], rat(1, 2))]).unwrap();
        let p = mu.correlation();
        for xa in 0..3 {
            for xb in 0..3 {
                assert_eq!(*p.get(1, 1, xa, xb), rat(1, 2));
            }
        }
    }

    #[test]
    fn distribution_rejects_bad_weights() {
        let s = shape(2, 2);
        assert!(FunctionDistribution::new(s, [(vec![0, 0], rat(1, 2))]).is_err());
        assert!(FunctionDistribution::new(s, [(vec![0, 0], rat(3, 2)), (vec![0, 1], rat(-1, 2))]).is_err());
        assert!(FunctionDistribution::new(s, [(vec![0, 2], rat(1, 1))]).is_err());
    }

    #[test]
    fn membership_rejects_non_synchronous() {
        let p = Correlation::validate(vec![vec![rat(1, 4); 4]; 4], shape(2, 2), 0.0).unwrap();
        assert_eq!(
            classical_membership(&p, DEFAULT_FUNCTION_CAP, 0.0),
            Err(ClassicalError::NotSynchronous)
        );
    }

    #[test]
    fn membership_round_trip_exact() {
        let s = shape(3, 2);
        let mu = FunctionDistribution::new(
            s,
            [(vec![0, 1, 1], rat(1, 3)), (vec![1, 0, 0], rat(1, 6)), (vec![1, 1, 0], rat(1, 2))],
        )
        .unwrap();
        let p = mu.correlation();
        let ClassicalCertificate::Classical(found) = classical_membership(&p, DEFAULT_FUNCTION_CAP, 0.0).unwrap() else {
            panic!("mixture must be classical");
        };
        assert_eq!(found.correlation(), p);
    }

    #[test]
    fn two_input_decompose_point_and_uniform() {
        let s = shape(2, 2);
        let f = Correlation::<Rational>::from_function(&[0, 1], s).unwrap();
        let mu = two_input_decompose(&f, 0.0).unwrap();
        assert_eq!(mu.support_len(), 1);
        assert_eq!(mu.weight(&[0, 1]), rat(1, 1));

        let uniform = FunctionDistribution::new(
            s,
            enumerate_functions(s, 16).unwrap().into_iter().map(|f| (f.values, rat(1, 4))),
        )
        .unwrap();
        let mu = two_input_decompose(&uniform.correlation(), 0.0).unwrap();
        assert_eq!(mu, uniform);
    }

    #[test]
    fn two_input_decompose_preconditions() {
        let p = Correlation::<Rational>::from_function(&[0, 1, 0], shape(3, 2)).unwrap();
        assert_eq!(two_input_decompose(&p, 0.0), Err(ClassicalError::NotTwoInputs(3)));
    }
}
