//! The qubit strategy family E^0_1 = |1⟩⟨1|, E^x_1 = |φx⟩⟨φx| with
//! φ1 = (cos α, e^{iβ} sin α), φ2 = (cos γ, e^{iδ} sin γ), its closed-form
//! w-coordinates and Bell slacks, and a grid-then-refine global minimizer.

use std::collections::BTreeMap;
use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::correlation::{Correlation, GameShape};
use crate::polytope::{bell_values, BellFunctional, BellReport, WCoordinates};
use crate::quantum::{correlation_me, PvmFamily, QuantumError};
use crate::scalar::{rat, Rational};

pub const MIN_GRID_STEPS: usize = 64;
/// Argmins within this of the minimum are reported; matrices farther apart
/// than this (entrywise) count as distinct.
pub const ARGMIN_TOL: f64 = 1e-6;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SearchError {
    #[error("grid needs at least {MIN_GRID_STEPS} steps per axis, got {0}")]
    GridTooCoarse(usize),
    #[error("refinement tolerance must be positive, got {0}")]
    InvalidRefineTol(f64),
    #[error(transparent)]
    Quantum(#[from] QuantumError),
}

/// Reduce an angle to [0, 2π).
pub fn canonical_angle(t: f64) -> f64 {
    let r = t.rem_euclid(TAU);
    if r >= TAU {
        0.0
    } else {
        r
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlochAngles {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub delta: f64,
}

/// α = (ρ+σ)/2, γ = (ρ−σ)/2, with β = 0.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SumDiffAngles {
    pub rho_ang: f64,
    pub sigma_ang: f64,
    pub delta: f64,
}

impl BlochAngles {
    pub fn new(alpha: f64, beta: f64, gamma: f64, delta: f64) -> Self {
        Self { alpha, beta, gamma, delta }
    }

    pub fn canonical(self) -> Self {
        Self::new(canonical_angle(self.alpha), canonical_angle(self.beta), canonical_angle(self.gamma), canonical_angle(self.delta))
    }

    /// Drop β by shifting δ to δ − β; the correlation is unchanged.
    pub fn gauge_fixed(self) -> Self {
        Self::new(self.alpha, 0.0, self.gamma, self.delta - self.beta)
    }

    pub fn to_sum_diff(self) -> SumDiffAngles {
        let g = self.gauge_fixed();
        SumDiffAngles { rho_ang: g.alpha + g.gamma, sigma_ang: g.alpha - g.gamma, delta: g.delta }
    }
}

impl SumDiffAngles {
    pub fn new(rho_ang: f64, sigma_ang: f64, delta: f64) -> Self {
        Self { rho_ang, sigma_ang, delta }
    }

    pub fn canonical(self) -> Self {
        Self::new(canonical_angle(self.rho_ang), canonical_angle(self.sigma_ang), canonical_angle(self.delta))
    }

    pub fn to_bloch(self) -> BlochAngles {
        BlochAngles::new((self.rho_ang + self.sigma_ang) / 2.0, 0.0, (self.rho_ang - self.sigma_ang) / 2.0, self.delta)
    }

    fn as_array(self) -> [f64; 3] {
        [self.rho_ang, self.sigma_ang, self.delta]
    }

    fn from_array(a: [f64; 3]) -> Self {
        Self::new(a[0], a[1], a[2])
    }
}

/// φ0 = |1⟩, φ1, φ2.
pub fn qubit_kets(a: &BlochAngles) -> [Vec<Complex64>; 3] {
    let c = |x: f64| Complex64::new(x, 0.0);
    [
        vec![c(0.0), c(1.0)],
        vec![c(a.alpha.cos()), Complex64::from_polar(a.alpha.sin(), a.beta)],
        vec![c(a.gamma.cos()), Complex64::from_polar(a.gamma.sin(), a.delta)],
    ]
}

pub fn qubit_pvms(a: &BlochAngles) -> PvmFamily {
    PvmFamily::from_kets(&qubit_kets(a), 1e-9).expect("unit kets give projectors")
}

pub fn w_closed_form(a: &BlochAngles) -> WCoordinates<f64> {
    let (sa, ca) = a.alpha.sin_cos();
    let (sg, cg) = a.gamma.sin_cos();
    let w1 = sa * sa / 2.0;
    let w2 = sg * sg / 2.0;
    let w5 = (Complex64::new(ca * cg, 0.0) + Complex64::from_polar(sa * sg, a.delta - a.beta)).norm_sqr() / 2.0;
    WCoordinates::new([0.5, w1, w2, w1, 0.5, w5, w2, w5, 0.5])
}

/// Bell values from the trigonometric forms in (α, β, γ, δ).
pub fn j_closed_form(a: &BlochAngles, tol: f64) -> BellReport<f64> {
    let (sa, ca) = a.alpha.sin_cos();
    let (sg, cg) = a.gamma.sin_cos();
    let g = ca * cg * (a.delta - a.beta).cos() * sa * sg;
    let slacks = [g + sa * sa * sg * sg, g + ca * ca * cg * cg, -g + ca * ca * sg * sg, -g + sa * sa * cg * cg];
    report_from_slacks(slacks, tol)
}

/// The four slacks (1−J0, J1, J2, J3) in sum/difference coordinates.
pub fn sum_diff_slacks(s: &SumDiffAngles) -> [f64; 4] {
    let (sr, cr) = s.rho_ang.sin_cos();
    let (ss, cs) = s.sigma_ang.sin_cos();
    let cd = s.delta.cos() / 4.0;
    let (cr2, cs2) = (cr * cr, cs * cs);
    let even = cd * (cs2 - cr2) + (cs2 + cr2) / 4.0;
    let odd = cd * (cr2 - cs2) + (sr * sr + ss * ss) / 4.0;
    [even - cr * cs / 2.0, even + cr * cs / 2.0, odd - sr * ss / 2.0, odd + sr * ss / 2.0]
}

pub fn j_closed_form_sum_diff(s: &SumDiffAngles, tol: f64) -> BellReport<f64> {
    report_from_slacks(sum_diff_slacks(s), tol)
}

fn report_from_slacks(s: [f64; 4], tol: f64) -> BellReport<f64> {
    BellReport::from_values([1.0 - s[0], s[1], s[2], s[3]], tol)
}

/// The slack of `target` at `s`; −1/8 is the quantum floor.
pub fn target_slack(target: BellFunctional, s: &SumDiffAngles) -> f64 {
    sum_diff_slacks(s)[target.index()]
}

#[derive(Clone, Debug)]
pub struct SearchResult {
    pub target: BellFunctional,
    pub min_value: f64,
    /// Smallest value seen on the coarse grid.
    pub grid_min: f64,
    pub argmin: Vec<SumDiffAngles>,
    pub canonical_matrix: Correlation<f64>,
    pub distinct_matrices: usize,
    pub grid_steps: usize,
    pub refine_tol: f64,
}

#[cfg(feature = "parallel")]
fn par_map<T: Sync, U: Send>(items: &[T], f: impl Fn(&T) -> U + Sync + Send) -> Vec<U> {
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn par_map<T: Sync, U: Send>(items: &[T], f: impl Fn(&T) -> U + Sync + Send) -> Vec<U> {
    items.iter().map(f).collect()
}

fn coordinate_descent(f: &impl Fn([f64; 3]) -> f64, mut x: [f64; 3], mut step: f64, refine_tol: f64) -> [f64; 3] {
    let mut fx = f(x);
    while step > refine_tol {
        let mut moved = true;
        while moved {
            moved = false;
            for i in 0..3 {
                for dir in [1.0, -1.0] {
                    loop {
                        let mut y = x;
                        y[i] += dir * step;
                        let fy = f(y);
                        if fy < fx {
                            x = y;
                            fx = fy;
                            moved = true;
                        } else {
                            break;
                        }
                    }
                }
            }
        }
        step *= 0.1;
    }
    x
}

fn solve3(h: [[f64; 3]; 3], g: [f64; 3]) -> Option<[f64; 3]> {
    let det = |m: [[f64; 3]; 3]| {
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    };
    let d = det(h);
    if d.abs() < 1e-12 {
        return None;
    }
    Some(std::array::from_fn(|k| {
        let mut m = h;
        for (row, gi) in m.iter_mut().zip(g) {
            row[k] = gi;
        }
        det(m) / d
    }))
}

/// Newton steps with central-difference derivatives; a step is kept only
/// when it is small and does not increase f.
fn newton_polish(f: &impl Fn([f64; 3]) -> f64, mut x: [f64; 3]) -> [f64; 3] {
    let e = 1e-4;
    for _ in 0..4 {
        let at = |d: [f64; 3]| f([x[0] + d[0], x[1] + d[1], x[2] + d[2]]);
        let unit = |i: usize, s: f64| {
            let mut d = [0.0; 3];
            d[i] = s;
            d
        };
        let f0 = f(x);
        let grad: [f64; 3] = std::array::from_fn(|i| (at(unit(i, e)) - at(unit(i, -e))) / (2.0 * e));
        let mut hess = [[0.0; 3]; 3];
        for i in 0..3 {
            hess[i][i] = (at(unit(i, e)) - 2.0 * f0 + at(unit(i, -e))) / (e * e);
            for j in i + 1..3 {
                let pp = at(std::array::from_fn(|k| if k == i || k == j { e } else { 0.0 }));
                let mm = at(std::array::from_fn(|k| if k == i || k == j { -e } else { 0.0 }));
                let pm = at(std::array::from_fn(|k| if k == i { e } else if k == j { -e } else { 0.0 }));
                let mp = at(std::array::from_fn(|k| if k == i { -e } else if k == j { e } else { 0.0 }));
                hess[i][j] = (pp - pm - mp + mm) / (4.0 * e * e);
                hess[j][i] = hess[i][j];
            }
        }
        let Some(dx) = solve3(hess, grad) else { break };
        if dx.iter().map(|v| v.abs()).fold(0.0, f64::max) > 1e-3 {
            break;
        }
        let y = [x[0] - dx[0], x[1] - dx[1], x[2] - dx[2]];
        if f(y) > f0 + 1e-15 {
            break;
        }
        x = y;
    }
    x
}

fn periodic_distance(a: &SumDiffAngles, b: &SumDiffAngles) -> f64 {
    a.as_array()
        .iter()
        .zip(b.as_array())
        .map(|(x, y)| {
            let d = (x - y).rem_euclid(TAU);
            d.min(TAU - d)
        })
        .fold(0.0, f64::max)
}

/// Global minimum of `target`'s slack over (ρ, σ, δ) ∈ [0, 2π)³.
///
/// Grid local minima near the grid minimum are refined by coordinate descent
/// (step ×0.1 per round down to `refine_tol`) and a final Newton polish.
/// Deterministic: candidate order and tie-breaking follow grid index order.
pub fn minimize(target: BellFunctional, grid_steps: usize, refine_tol: f64) -> Result<SearchResult, SearchError> {
    if grid_steps < MIN_GRID_STEPS {
        return Err(SearchError::GridTooCoarse(grid_steps));
    }
    if !(refine_tol > 0.0) {
        return Err(SearchError::InvalidRefineTol(refine_tol));
    }
    let n = grid_steps;
    let h = TAU / n as f64;
    let f = move |x: [f64; 3]| target_slack(target, &SumDiffAngles::from_array(x));

    let planes: Vec<usize> = (0..n).collect();
    let grid: Vec<f64> = par_map(&planes, |&i| {
        let mut plane = Vec::with_capacity(n * n);
        for j in 0..n {
            for k in 0..n {
                plane.push(f([i as f64 * h, j as f64 * h, k as f64 * h]));
            }
        }
        plane
    })
    .concat();
    let at = |i: usize, j: usize, k: usize| grid[(i % n) * n * n + (j % n) * n + (k % n)];
    let grid_min = grid.iter().copied().fold(f64::INFINITY, f64::min);
    let slack = 2.0 * h * h;

    let mut candidates = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let v = at(i, j, k);
                if v > grid_min + slack {
                    continue;
                }
                let neighbours = [
                    at(i + 1, j, k),
                    at(i + n - 1, j, k),
                    at(i, j + 1, k),
                    at(i, j + n - 1, k),
                    at(i, j, k + 1),
                    at(i, j, k + n - 1),
                ];
                if neighbours.iter().all(|&u| v <= u) {
                    candidates.push([i as f64 * h, j as f64 * h, k as f64 * h]);
                }
            }
        }
    }

    let refined: Vec<([f64; 3], f64)> = par_map(&candidates, |&x0| {
        let x = newton_polish(&f, coordinate_descent(&f, x0, h, refine_tol));
        (x, f(x))
    });
    let min_value = refined.iter().map(|r| r.1).fold(f64::INFINITY, f64::min);

    let mut argmin: Vec<SumDiffAngles> = Vec::new();
    for (x, v) in &refined {
        if *v > min_value + ARGMIN_TOL {
            continue;
        }
        let s = SumDiffAngles::from_array(*x).canonical();
        if argmin.iter().all(|a| periodic_distance(a, &s) > ARGMIN_TOL) {
            argmin.push(s);
        }
    }
    argmin.sort_by(|a, b| a.as_array().partial_cmp(&b.as_array()).expect("finite angles"));

    let mut matrices: Vec<Correlation<f64>> = Vec::new();
    for s in &argmin {
        let p = correlation_me(&qubit_pvms(&s.to_bloch()), 1e-9)?;
        if matrices.iter().all(|q| q.max_abs_diff(&p) > ARGMIN_TOL) {
            matrices.push(p);
        }
    }
    Ok(SearchResult {
        target,
        min_value,
        grid_min,
        argmin,
        canonical_matrix: matrices[0].clone(),
        distinct_matrices: matrices.len(),
        grid_steps,
        refine_tol,
    })
}

/// A saturating correlation with a generating qubit strategy.
#[derive(Clone, Debug)]
pub struct Saturator {
    pub functional: BellFunctional,
    pub matrix: Correlation<Rational>,
    pub angles: BlochAngles,
}

impl Saturator {
    pub fn kets(&self) -> [Vec<Complex64>; 3] {
        qubit_kets(&self.angles)
    }
}

fn eighths(row00: [i64; 9], row01: [i64; 9]) -> Correlation<Rational> {
    let shape = GameShape::new(3, 2).expect("3x2");
    let row11: Vec<i64> = (0..9).map(|c| 8 - row00[c] - 2 * row01[c]).collect();
    let rows = [row00.to_vec(), row01.to_vec(), row01.to_vec(), row11];
    let entries = rows.iter().flatten().map(|&v| rat(v, 8)).collect();
    Correlation::from_entries(shape, entries, 0.0).expect("columns sum to 8/8")
}

/// P0–P3: the correlations attaining −1/8 on 1 − J0, J1, J2, J3.
pub fn reference_saturators() -> BTreeMap<BellFunctional, Saturator> {
    let (a, b) = (PI / 6.0, PI / 3.0);
    let table = [
        (BellFunctional::J0, [4, 1, 1, 1, 4, 1, 1, 1, 4], [0, 3, 3, 3, 0, 3, 3, 3, 0], (a, -a)),
        (BellFunctional::J1, [4, 3, 3, 3, 4, 1, 3, 1, 4], [0, 1, 1, 1, 0, 3, 1, 3, 0], (b, -b)),
        (BellFunctional::J2, [4, 3, 1, 3, 4, 3, 1, 3, 4], [0, 1, 3, 1, 0, 1, 3, 1, 0], (b, a)),
        (BellFunctional::J3, [4, 1, 3, 1, 4, 3, 3, 3, 4], [0, 3, 1, 3, 0, 1, 1, 1, 0], (a, b)),
    ];
    table
        .into_iter()
        .map(|(j, r0, r1, (alpha, gamma))| {
            (j, Saturator { functional: j, matrix: eighths(r0, r1), angles: BlochAngles::new(alpha, 0.0, gamma, 0.0) })
        })
        .collect()
}

/// Bell report of a qubit strategy computed through the correlation table.
pub fn bell_via_table(a: &BlochAngles, tol: f64) -> BellReport<f64> {
    let p = correlation_me(&qubit_pvms(a), tol).expect("qubit traces are real");
    bell_values(&crate::polytope::w_coordinates(&p).expect("3x2"), tol)
}
