//! Schmidt decomposition and the eigenblock decomposition of a pure-state
//! synchronous strategy into maximally entangled pieces.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::general::{correlation_general, maximally_entangled, partial_trace_a, partial_trace_b, pure_density, GeneralQuantumStrategy};
use super::pvm::{max_abs, CMatrix, PvmFamily};
use super::{QuantumError, SCHMIDT_MERGE_GAP};
use crate::correlation::Correlation;

/// |ψ⟩ = Σ_k s_k |u_k⟩⊗|v_k⟩ with s nonincreasing; coefficients ≤ tol are dropped.
#[derive(Clone, Debug)]
pub struct SchmidtDecomposition {
    pub coefficients: Vec<f64>,
    pub left: Vec<DVector<Complex64>>,
    pub right: Vec<DVector<Complex64>>,
}

pub fn schmidt(psi: &DVector<Complex64>, da: usize, db: usize, tol: f64) -> Result<SchmidtDecomposition, QuantumError> {
    if psi.len() != da * db {
        return Err(QuantumError::DimensionMismatch { expected: da * db, got: psi.len() });
    }
    let norm = psi.norm();
    if (norm - 1.0).abs() > tol {
        return Err(QuantumError::NotNormalized { norm });
    }
    let coeff = DMatrix::from_fn(da, db, |i, j| psi[i * db + j]);
    let svd = coeff.svd(true, true);
    let u = svd.u.expect("requested");
    let vt = svd.v_t.expect("requested");
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&a, &b| svd.singular_values[b].total_cmp(&svd.singular_values[a]));
    let mut out = SchmidtDecomposition { coefficients: vec![], left: vec![], right: vec![] };
    for k in order {
        let s = svd.singular_values[k];
        if s <= tol {
            continue;
        }
        out.coefficients.push(s);
        out.left.push(u.column(k).into_owned());
        out.right.push(vt.row(k).transpose());
    }
    Ok(out)
}

/// One eigenblock: Alice's and Bob's PVMs restricted to the block's Schmidt
/// bases, measured on the maximally entangled state of dimension `dim`.
#[derive(Clone, Debug)]
pub struct SchmidtBlock {
    pub weight: f64,
    pub dim: usize,
    pub alice: PvmFamily,
    pub bob: PvmFamily,
    pub correlation: Correlation<f64>,
}

#[derive(Clone, Debug)]
pub struct SchmidtBlocks {
    pub blocks: Vec<SchmidtBlock>,
    /// Entrywise distance between Σ weight·block and the input correlation.
    pub residual: f64,
}

impl SchmidtBlocks {
    pub fn recombine(&self) -> Result<Correlation<f64>, QuantumError> {
        let terms: Vec<(f64, &Correlation<f64>)> = self.blocks.iter().map(|b| (b.weight, &b.correlation)).collect();
        Ok(Correlation::convex_combine(&terms)?)
    }
}

/// Group indices of a nonincreasing sequence into runs of (near-)equal values.
/// A trailing virtual zero absorbs coefficients that are numerically absent.
fn group_coefficients(s: &[f64], split_gap: f64) -> Result<Vec<Vec<usize>>, QuantumError> {
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for (k, &v) in s.iter().enumerate() {
        let Some(prev) = k.checked_sub(1).map(|p| s[p]) else {
            groups.push(vec![k]);
            continue;
        };
        let gap = prev - v;
        if gap <= SCHMIDT_MERGE_GAP {
            groups.last_mut().expect("nonempty").push(k);
        } else if gap <= split_gap {
            return Err(QuantumError::DegenerateGap { left: prev, right: v });
        } else {
            groups.push(vec![k]);
        }
    }
    // The smallest group against zero.
    if let Some(last) = groups.last() {
        let v = s[last[0]];
        if v <= SCHMIDT_MERGE_GAP {
            groups.pop();
        } else if v <= split_gap {
            return Err(QuantumError::DegenerateGap { left: v, right: 0.0 });
        }
    }
    Ok(groups)
}

fn restrict(ops: &PvmFamily, basis: &CMatrix, tol: f64) -> Result<PvmFamily, QuantumError> {
    let bd = basis.adjoint();
    let nested = ops.to_nested().into_iter().map(|fam| fam.iter().map(|e| &bd * e * basis).collect()).collect();
    PvmFamily::validate(nested, tol)
}

/// Split a synchronous pure-state strategy into maximally entangled blocks.
///
/// Fails unless the induced correlation is synchronous and every operator
/// commutes with the corresponding reduced state, both within `tol`.
pub fn decompose_me(
    psi: &DVector<Complex64>,
    alice: &PvmFamily,
    bob: &PvmFamily,
    tol: f64,
) -> Result<SchmidtBlocks, QuantumError> {
    let (da, db) = (alice.d(), bob.d());
    let sd = schmidt(psi, da, db, tol)?;
    let rho = pure_density(psi);
    let strategy = GeneralQuantumStrategy::new(da, db, rho.clone(), alice.to_nested(), bob.to_nested(), tol)?;
    let p = correlation_general(&strategy, tol)?;
    if !p.is_synchronous(tol) {
        return Err(QuantumError::NotSynchronous { defect: p.synchronous_defect() });
    }

    let rho_a = partial_trace_b(&rho, da, db);
    let rho_b = partial_trace_a(&rho, da, db);
    let mut comm = 0.0f64;
    for x in 0..alice.n() {
        for y in 0..alice.m() {
            let e = alice.get(x, y);
            comm = comm.max(max_abs(&(e * &rho_a - &rho_a * e)));
            let f = bob.get(x, y);
            comm = comm.max(max_abs(&(f * &rho_b - &rho_b * f)));
        }
    }
    if comm > tol {
        return Err(QuantumError::CommutationViolation { maxdev: comm });
    }

    let groups = group_coefficients(&sd.coefficients, tol.sqrt().max(SCHMIDT_MERGE_GAP))?;
    let raw: Vec<f64> = groups.iter().map(|g| g.iter().map(|&k| sd.coefficients[k].powi(2)).sum()).collect();
    let total: f64 = raw.iter().sum();

    let mut blocks = Vec::with_capacity(groups.len());
    for (g, w) in groups.iter().zip(raw) {
        let l = g.len();
        let ub = DMatrix::from_fn(da, l, |i, c| sd.left[g[c]][i]);
        let vb = DMatrix::from_fn(db, l, |j, c| sd.right[g[c]][j]);
        let ea = restrict(alice, &ub, tol.sqrt())?;
        let fb = restrict(bob, &vb, tol.sqrt())?;
        let block = GeneralQuantumStrategy::new(l, l, pure_density(&maximally_entangled(l)), ea.to_nested(), fb.to_nested(), tol.sqrt())?;
        let correlation = correlation_general(&block, tol)?;
        blocks.push(SchmidtBlock { weight: w / total, dim: l, alice: ea, bob: fb, correlation });
    }
    let mut out = SchmidtBlocks { blocks, residual: 0.0 };
    out.residual = out.recombine()?.max_abs_diff(&p);
    if out.residual > tol {
        return Err(QuantumError::RecombinationMismatch { maxdev: out.residual });
    }
    Ok(out)
}
