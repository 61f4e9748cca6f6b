//! Seeded Haar-random unitaries, states and projective measurements.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use super::pvm::{CMatrix, PvmFamily};

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Haar unitary via QR of a complex Ginibre matrix with the phase of R's diagonal removed.
pub fn haar_unitary<R: Rng + ?Sized>(d: usize, rng: &mut R) -> CMatrix {
    let g = DMatrix::from_fn(d, d, |_, _| gaussian(rng));
    let qr = g.qr();
    let (q, r) = (qr.q(), qr.r());
    let mut u = q;
    for k in 0..d {
        let rk = r[(k, k)];
        let phase = if rk.norm() > 0.0 { rk / rk.norm() } else { Complex64::new(1.0, 0.0) };
        let mut col = u.column_mut(k);
        col *= phase;
    }
    u
}

pub fn random_state<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> DVector<Complex64> {
    let v = DVector::from_fn(dim, |_, _| gaussian(rng));
    let n = v.norm();
    v / Complex64::new(n, 0.0)
}

/// One PVM from the columns of a Haar unitary, each column assigned to a
/// uniformly random outcome. Projectors may be zero.
pub fn random_pvm<R: Rng + ?Sized>(d: usize, m: usize, rng: &mut R) -> Vec<CMatrix> {
    let u = haar_unitary(d, rng);
    let mut ops = vec![CMatrix::zeros(d, d); m];
    for k in 0..d {
        let y = rng.random_range(0..m);
        let col = u.column(k);
        ops[y] += col * col.adjoint();
    }
    ops
}

pub fn random_pvm_family<R: Rng + ?Sized>(d: usize, n: usize, m: usize, rng: &mut R) -> PvmFamily {
    let ops = (0..n).map(|_| random_pvm(d, m, rng)).collect();
    PvmFamily::validate(ops, 1e-9).expect("Haar columns are orthonormal")
}
