//! Two-input games X = {0,1}.
//!
//! Every synchronous nonsignaling correlation on two inputs is determined by
//! the off-diagonal blocks u = p(·,·|0,1) and v = p(·,·|1,0), subject to
//! row sums of u = column sums of v (θ) and column sums of u = row sums of v (φ).
//! It is classical exactly when v = uᵀ.

use super::GeometryError;
use crate::correlation::{Correlation, GameShape};
use crate::scalar::Scalar;

/// u, v as row-major m×m tables (`u[yA·m + yB]`) with their marginals.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoPointDomainData<T> {
    pub m: usize,
    pub u: Vec<T>,
    pub v: Vec<T>,
    /// θ(y) = Σ_y' u(y,y').
    pub theta: Vec<T>,
    /// φ(y) = Σ_y' u(y',y).
    pub phi: Vec<T>,
}

fn check_distribution<T: Scalar>(t: &[T], m: usize, name: &'static str, tol: f64) -> Result<(), GeometryError> {
    if t.len() != m * m || t.iter().any(|x| x.is_negative_tol(tol)) {
        return Err(GeometryError::NotDistribution(name));
    }
    let total = t.iter().fold(T::zero(), |acc, x| acc + x.clone());
    if !total.approx_eq(&T::one(), tol) {
        return Err(GeometryError::NotDistribution(name));
    }
    Ok(())
}

fn row_sums<T: Scalar>(t: &[T], m: usize) -> Vec<T> {
    (0..m).map(|y| (0..m).fold(T::zero(), |acc, y2| acc + t[y * m + y2].clone())).collect()
}

fn col_sums<T: Scalar>(t: &[T], m: usize) -> Vec<T> {
    (0..m).map(|y| (0..m).fold(T::zero(), |acc, y2| acc + t[y2 * m + y].clone())).collect()
}

pub fn transpose<T: Clone>(t: &[T], m: usize) -> Vec<T> {
    (0..m * m).map(|k| t[(k % m) * m + k / m].clone()).collect()
}

impl<T: Scalar> TwoPointDomainData<T> {
    /// Validate u, v and the two marginal-compatibility conditions.
    pub fn new(m: usize, u: Vec<T>, v: Vec<T>, tol: f64) -> Result<Self, GeometryError> {
        check_distribution(&u, m, "u", tol)?;
        check_distribution(&v, m, "v", tol)?;
        let theta = row_sums(&u, m);
        let phi = col_sums(&u, m);
        for (y, (a, b)) in theta.iter().zip(col_sums(&v, m)).enumerate() {
            if !a.approx_eq(&b, tol) {
                return Err(GeometryError::MarginalMismatch { condition: 1, y });
            }
        }
        for (y, (a, b)) in phi.iter().zip(row_sums(&v, m)).enumerate() {
            if !a.approx_eq(&b, tol) {
                return Err(GeometryError::MarginalMismatch { condition: 2, y });
            }
        }
        Ok(Self { m, u, v, theta, phi })
    }

    pub fn correlation(&self) -> Correlation<T> {
        let m = self.m;
        let shape = GameShape::new(2, m).expect("m ≥ 1");
        let cols = 4;
        let mut entries = vec![T::zero(); m * m * cols];
        for ya in 0..m {
            for yb in 0..m {
                let r = shape.row(ya, yb) * cols;
                if ya == yb {
                    entries[r + shape.col(0, 0)] = self.theta[ya].clone();
                    entries[r + shape.col(1, 1)] = self.phi[ya].clone();
                }
                entries[r + shape.col(0, 1)] = self.u[ya * m + yb].clone();
                entries[r + shape.col(1, 0)] = self.v[ya * m + yb].clone();
            }
        }
        Correlation::from_raw_unchecked(shape, entries)
    }
}

/// Synchronous nonsignaling correlation from compatible u, v.
pub fn two_point_nonsignaling<T: Scalar>(m: usize, u: Vec<T>, v: Vec<T>, tol: f64) -> Result<Correlation<T>, GeometryError> {
    Ok(TwoPointDomainData::new(m, u, v, tol)?.correlation())
}

/// Classical correlation from u alone (v = uᵀ).
pub fn two_point_classical<T: Scalar>(m: usize, u: Vec<T>, tol: f64) -> Result<Correlation<T>, GeometryError> {
    let v = transpose(&u, m);
    two_point_nonsignaling(m, u, v, tol)
}

/// Recover (u, v) from a two-input synchronous nonsignaling correlation.
pub fn two_point_data<T: Scalar>(p: &Correlation<T>, tol: f64) -> Result<TwoPointDomainData<T>, GeometryError> {
    let m = p.shape().m();
    let u = (0..m * m).map(|k| p.get(k / m, k % m, 0, 1).clone()).collect();
    let v = (0..m * m).map(|k| p.get(k / m, k % m, 1, 0).clone()).collect();
    TwoPointDomainData::new(m, u, v, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::{classical_membership, DEFAULT_FUNCTION_CAP};
    use crate::scalar::{rat, Rational};

    fn point(m: usize, a: usize, b: usize) -> Vec<Rational> {
        (0..m * m).map(|k| if k == a * m + b { rat(1, 1) } else { rat(0, 1) }).collect()
    }

    #[test]
    fn point_masses_at_origin_give_constant_function() {
        let p = two_point_nonsignaling(2, point(2, 0, 0), point(2, 0, 0), 0.0).unwrap();
        let f = Correlation::<Rational>::from_function(&[0, 0], GameShape::new(2, 2).unwrap()).unwrap();
        assert_eq!(p, f);
    }

    #[test]
    fn uniform_is_symmetric_and_classical() {
        let u = vec![rat(1, 4); 4];
        let p = two_point_nonsignaling(2, u.clone(), u, 0.0).unwrap();
        assert!(p.is_symmetric(0.0));
        assert!(classical_membership(&p, DEFAULT_FUNCTION_CAP, 0.0).unwrap().is_classical());
    }

    #[test]
    fn transposed_point_masses_are_the_identity_function() {
        let p = two_point_nonsignaling(2, point(2, 0, 1), point(2, 1, 0), 0.0).unwrap();
        let f = Correlation::<Rational>::from_function(&[0, 1], GameShape::new(2, 2).unwrap()).unwrap();
        assert_eq!(p, f);
        assert!(p.is_symmetric(0.0));
    }

    #[test]
    fn asymmetric_pair_is_nonsignaling_but_not_classical() {
        // θ = φ = (1/2, 1/2) for both; v is not uᵀ.
        let u = vec![rat(1, 2), rat(0, 1), rat(0, 1), rat(1, 2)];
        let v = vec![rat(0, 1), rat(1, 2), rat(1, 2), rat(0, 1)];
        let p = two_point_nonsignaling(2, u, v, 0.0).unwrap();
        assert!(p.is_synchronous(0.0));
        assert!(p.is_nonsignaling(0.0));
        assert!(!p.is_symmetric(0.0));
        assert!(!classical_membership(&p, DEFAULT_FUNCTION_CAP, 0.0).unwrap().is_classical());
    }

    #[test]
    fn marginal_mismatch_detected() {
        // u = δ(0,1): θ = (1,0), φ = (0,1). v = δ(0,0) matches θ but its row sums (1,0) miss φ.
        assert_eq!(
            two_point_nonsignaling(2, point(2, 0, 1), point(2, 0, 0), 0.0),
            Err(GeometryError::MarginalMismatch { condition: 2, y: 0 })
        );
        assert_eq!(
            two_point_nonsignaling(2, vec![rat(1, 2); 4], point(2, 0, 0), 0.0),
            Err(GeometryError::NotDistribution("u"))
        );
    }

    #[test]
    fn classical_form_round_trips() {
        let u = vec![rat(1, 6), rat(1, 3), rat(1, 12), rat(0, 1), rat(1, 4), rat(0, 1), rat(1, 12), rat(0, 1), rat(1, 12)];
        let p = two_point_classical(3, u.clone(), 0.0).unwrap();
        assert!(p.is_synchronous(0.0) && p.is_nonsignaling(0.0) && p.is_symmetric(0.0));
        let data = two_point_data(&p, 0.0).unwrap();
        assert_eq!(data.u, u);
        assert_eq!(data.v, transpose(&u, 3));
    }
}
