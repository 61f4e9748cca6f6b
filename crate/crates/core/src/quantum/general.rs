//! p(yA,yB|xA,xB) = tr(ρ (E^{xA}_{yA} ⊗ F^{xB}_{yB})) on C^dA ⊗ C^dB.
//!
//! Product basis ordering: |i⟩⊗|j⟩ has index i·dB + j (Kronecker order).

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::pvm::{max_abs, trace_product, CMatrix, PvmFamily};
use super::QuantumError;
use crate::correlation::{Correlation, GameShape};

fn min_eigenvalue(m: &CMatrix) -> f64 {
    let h = (m + m.adjoint()) * Complex64::new(0.5, 0.0);
    h.symmetric_eigenvalues().iter().copied().fold(f64::INFINITY, f64::min)
}

/// (1/√d) Σ_i |i⟩⊗|i⟩.
pub fn maximally_entangled(d: usize) -> DVector<Complex64> {
    let mut v = DVector::zeros(d * d);
    let s = 1.0 / (d as f64).sqrt();
    for i in 0..d {
        v[i * d + i] = Complex64::new(s, 0.0);
    }
    v
}

/// |ψ⟩⟨ψ|.
pub fn pure_density(psi: &DVector<Complex64>) -> CMatrix {
    psi * psi.adjoint()
}

/// tr_B of an operator on C^dA ⊗ C^dB.
pub fn partial_trace_b(rho: &CMatrix, da: usize, db: usize) -> CMatrix {
    DMatrix::from_fn(da, da, |i, k| (0..db).map(|j| rho[(i * db + j, k * db + j)]).sum())
}

/// tr_A of an operator on C^dA ⊗ C^dB.
pub fn partial_trace_a(rho: &CMatrix, da: usize, db: usize) -> CMatrix {
    DMatrix::from_fn(db, db, |j, l| (0..da).map(|i| rho[(i * db + j, i * db + l)]).sum())
}

/// A density operator with one POVM per input on each side, `povms_a[x][y]`.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneralQuantumStrategy {
    da: usize,
    db: usize,
    rho: CMatrix,
    povms_a: Vec<Vec<CMatrix>>,
    povms_b: Vec<Vec<CMatrix>>,
}

fn validate_povms(ops: &[Vec<CMatrix>], d: usize, tol: f64) -> Result<(), QuantumError> {
    let m = ops.first().map_or(0, Vec::len);
    if ops.is_empty() || m == 0 {
        return Err(QuantumError::EmptyFamily);
    }
    for (x, family) in ops.iter().enumerate() {
        if family.len() != m {
            return Err(QuantumError::OutcomeCountMismatch { x, got: family.len(), expected: m });
        }
        let mut sum = CMatrix::zeros(d, d);
        for (y, e) in family.iter().enumerate() {
            if e.shape() != (d, d) {
                return Err(QuantumError::DimensionMismatch { expected: d, got: e.nrows().max(e.ncols()) });
            }
            let herm = max_abs(&(e - e.adjoint()));
            if herm > tol {
                return Err(QuantumError::NotHermitian { x, y, maxdev: herm });
            }
            let lo = min_eigenvalue(e);
            if lo < -tol {
                return Err(QuantumError::NotPositive { x, y, min_eigenvalue: lo });
            }
            sum += e;
        }
        let comp = max_abs(&(sum - CMatrix::identity(d, d)));
        if comp > tol {
            return Err(QuantumError::NotComplete { x, maxdev: comp });
        }
    }
    Ok(())
}

impl GeneralQuantumStrategy {
    pub fn new(
        da: usize,
        db: usize,
        rho: CMatrix,
        povms_a: Vec<Vec<CMatrix>>,
        povms_b: Vec<Vec<CMatrix>>,
        tol: f64,
    ) -> Result<Self, QuantumError> {
        let dim = da * db;
        if rho.shape() != (dim, dim) {
            return Err(QuantumError::DimensionMismatch { expected: dim, got: rho.nrows().max(rho.ncols()) });
        }
        if max_abs(&(&rho - rho.adjoint())) > tol {
            return Err(QuantumError::InvalidState("not Hermitian"));
        }
        if (rho.trace() - Complex64::new(1.0, 0.0)).norm() > tol {
            return Err(QuantumError::InvalidState("trace is not 1"));
        }
        if min_eigenvalue(&rho) < -tol {
            return Err(QuantumError::InvalidState("not positive semidefinite"));
        }
        validate_povms(&povms_a, da, tol)?;
        validate_povms(&povms_b, db, tol)?;
        if povms_a.len() != povms_b.len() || povms_a[0].len() != povms_b[0].len() {
            return Err(QuantumError::OutcomeCountMismatch { x: 0, got: povms_b[0].len(), expected: povms_a[0].len() });
        }
        Ok(Self { da, db, rho, povms_a, povms_b })
    }

    /// Maximally entangled state with Alice's PVMs and Bob's F = conj(E).
    pub fn maximally_entangled(pvms: &PvmFamily, tol: f64) -> Result<Self, QuantumError> {
        let d = pvms.d();
        Self::new(
            d,
            d,
            pure_density(&maximally_entangled(d)),
            pvms.to_nested(),
            pvms.conjugate().to_nested(),
            tol,
        )
    }

    pub fn da(&self) -> usize {
        self.da
    }

    pub fn db(&self) -> usize {
        self.db
    }

    pub fn rho(&self) -> &CMatrix {
        &self.rho
    }

    pub fn povms_a(&self) -> &[Vec<CMatrix>] {
        &self.povms_a
    }

    pub fn povms_b(&self) -> &[Vec<CMatrix>] {
        &self.povms_b
    }

    pub fn shape(&self) -> GameShape {
        GameShape::new(self.povms_a.len(), self.povms_a[0].len()).expect("validated nonempty")
    }
}

pub fn correlation_general(s: &GeneralQuantumStrategy, tol: f64) -> Result<Correlation<f64>, QuantumError> {
    let shape = s.shape();
    let (n, m) = (shape.n(), shape.m());
    let mut entries = vec![0.0; shape.rows() * shape.cols()];
    let mut worst_imag = 0.0f64;
    for xa in 0..n {
        for ya in 0..m {
            for xb in 0..n {
                for yb in 0..m {
                    let op = s.povms_a[xa][ya].kronecker(&s.povms_b[xb][yb]);
                    let t = trace_product(&s.rho, &op);
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
