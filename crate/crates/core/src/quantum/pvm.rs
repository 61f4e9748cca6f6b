//! Projection-valued measures and the maximally entangled trace formula
//! p(yA,yB|xA,xB) = (1/d)·tr(E^{xA}_{yA} E^{xB}_{yB}).
//!
//! Bob's operators follow the fixed convention F = conj(E) in the standard
//! basis, under which ⟨Ω|E⊗F|Ω⟩ = (1/d)·tr(E·Eᵀ̄) = (1/d)·tr(E E).

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::QuantumError;
use crate::correlation::{Correlation, GameShape};

pub type CMatrix = DMatrix<Complex64>;

/// Largest entrywise modulus of a matrix.
pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// tr(A·B) without forming the product.
pub fn trace_product(a: &CMatrix, b: &CMatrix) -> Complex64 {
    let d = a.nrows();
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..d {
        for j in 0..d {
            acc += a[(i, j)] * b[(j, i)];
        }
    }
    acc
}

/// Rank-one projector |v⟩⟨v| of a (normalized) vector.
pub fn ket_projector(v: &[Complex64]) -> CMatrix {
    let d = v.len();
    DMatrix::from_fn(d, d, |i, j| v[i] * v[j].conj())
}

/// One PVM {E^x_y} per input x; `projectors[x·m + y]` = E^x_y.
#[derive(Clone, Debug, PartialEq)]
pub struct PvmFamily {
    d: usize,
    n: usize,
    m: usize,
    projectors: Vec<CMatrix>,
}

impl PvmFamily {
    /// Accepts `ops[x][y]` iff every operator is Hermitian, idempotent and each
    /// family sums to the identity, all within `tol`.
    pub fn validate(ops: Vec<Vec<CMatrix>>, tol: f64) -> Result<Self, QuantumError> {
        let n = ops.len();
        let m = ops.first().map_or(0, Vec::len);
        if n == 0 || m == 0 {
            return Err(QuantumError::EmptyFamily);
        }
        let d = ops[0][0].nrows();
        for (x, family) in ops.iter().enumerate() {
            if family.len() != m {
                return Err(QuantumError::OutcomeCountMismatch { x, got: family.len(), expected: m });
            }
            let mut sum = CMatrix::zeros(d, d);
            for (y, e) in family.iter().enumerate() {
                if e.nrows() != d || e.ncols() != d {
                    return Err(QuantumError::DimensionMismatch { expected: d, got: e.nrows().max(e.ncols()) });
                }
                let herm = max_abs(&(e - e.adjoint()));
                if herm > tol {
                    return Err(QuantumError::NotHermitian { x, y, maxdev: herm });
                }
                let idem = max_abs(&(e * e - e));
                if idem > tol {
                    return Err(QuantumError::NotIdempotent { x, y, maxdev: idem });
                }
                sum += e;
            }
            let comp = max_abs(&(sum - CMatrix::identity(d, d)));
            if comp > tol {
                return Err(QuantumError::NotComplete { x, maxdev: comp });
            }
        }
        Ok(Self { d, n, m, projectors: ops.into_iter().flatten().collect() })
    }

    /// Two-outcome PVMs {I − |φx⟩⟨φx|, |φx⟩⟨φx|} from one ket per input.
    pub fn from_kets(kets: &[Vec<Complex64>], tol: f64) -> Result<Self, QuantumError> {
        let ops = kets
            .iter()
            .map(|k| {
                let e1 = ket_projector(k);
                let d = k.len();
                vec![CMatrix::identity(d, d) - &e1, e1]
            })
            .collect();
        Self::validate(ops, tol)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn shape(&self) -> GameShape {
        GameShape::new(self.n, self.m).expect("validated nonempty")
    }

    pub fn get(&self, x: usize, y: usize) -> &CMatrix {
        &self.projectors[x * self.m + y]
    }

    pub fn family(&self, x: usize) -> &[CMatrix] {
        &self.projectors[x * self.m..(x + 1) * self.m]
    }

    /// Operators as `ops[x][y]`.
    pub fn to_nested(&self) -> Vec<Vec<CMatrix>> {
        (0..self.n).map(|x| self.family(x).to_vec()).collect()
    }

    /// Entrywise complex conjugate in the standard basis (Bob's side).
    pub fn conjugate(&self) -> Self {
        Self { projectors: self.projectors.iter().map(|e| e.map(|z| z.conj())).collect(), ..self.clone() }
    }

    /// Conjugate every operator by a unitary: E ↦ U† E U.
    pub fn conjugated_by(&self, u: &CMatrix) -> Self {
        let ud = u.adjoint();
        Self { projectors: self.projectors.iter().map(|e| &ud * e * u).collect(), ..self.clone() }
    }
}

/// Correlation of a PVM family with the maximally entangled state.
///
/// Traces of products of Hermitian projectors are real; any imaginary part
/// above `tol` is reported as an error rather than dropped.
pub fn correlation_me(pvms: &PvmFamily, tol: f64) -> Result<Correlation<f64>, QuantumError> {
    let shape = pvms.shape();
    let (n, m) = (pvms.n, pvms.m);
    let scale = 1.0 / pvms.d as f64;
    let mut entries = vec![0.0; shape.rows() * shape.cols()];
    let mut worst_imag = 0.0f64;
    for ya in 0..m {
        for yb in 0..m {
            for xa in 0..n {
                for xb in 0..n {
                    let t = trace_product(pvms.get(xa, ya), pvms.get(xb, yb)) * scale;
                    worst_imag = worst_imag.max(t.im.abs());
                    entries[shape.row(ya, yb) * shape.cols() + shape.col(xa, xb)] = t.re;
                }
            }
        }
    }
    if worst_imag > tol {
        return Err(QuantumError::ImaginaryResidual { maxdev: worst_imag });
    }
    Ok(Correlation::from_entries(shape, entries, tol)?)
}
