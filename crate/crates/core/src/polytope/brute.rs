//! Brute-force vertex enumeration, independent of the double description code.
//!
//! The equations are solved once to parametrize the affine hull as
//! `x = x0 + N t`; every k-subset of the projected inequalities (k = dim t) is
//! then tried as an active set. Exponential, meant for small cross-checks.

use itertools::Itertools;
use num_traits::Zero;

use super::exact::{dot, null_space, rref, solve_unique};
use super::{HPolytope, VPolytope};
use crate::scalar::Rational;

/// Returns `None` when the equations are inconsistent.
fn affine_parametrization(h: &HPolytope) -> Option<(Vec<Rational>, Vec<Vec<Rational>>)> {
    let d = h.dim();
    let aug: Vec<Vec<Rational>> = h
        .equations()
        .iter()
        .map(|eq| eq.c.iter().cloned().chain(std::iter::once(eq.e.clone())).collect())
        .collect();
    let (red, pivots) = rref(aug);
    if pivots.contains(&d) {
        return None;
    }
    let mut x0 = vec![Rational::zero(); d];
    for (row, &p) in red.iter().zip(&pivots) {
        x0[p] = row[d].clone();
    }
    let coeffs: Vec<Vec<Rational>> = h.equations().iter().map(|eq| eq.c.clone()).collect();
    Some((x0, null_space(&coeffs, d)))
}

pub fn brute_force_vertices(h: &HPolytope) -> VPolytope {
    let d = h.dim();
    let Some((x0, basis)) = affine_parametrization(h) else {
        return VPolytope::from_vertices(d, vec![]).expect("dims agree");
    };
    let k = basis.len();
    // Projected inequalities g·t ≤ r.
    let mut projected: Vec<(Vec<Rational>, Rational)> = Vec::new();
    for ineq in h.inequalities() {
        let g: Vec<Rational> = basis.iter().map(|col| dot(&ineq.a, col)).collect();
        let r = &ineq.b - dot(&ineq.a, &x0);
        if g.iter().all(Zero::is_zero) {
            if r < Rational::zero() {
                return VPolytope::from_vertices(d, vec![]).expect("dims agree");
            }
            continue;
        }
        projected.push((g, r));
    }
    let lift = |t: &[Rational]| -> Vec<Rational> {
        let mut x = x0.clone();
        for (ti, col) in t.iter().zip(&basis) {
            for (xi, c) in x.iter_mut().zip(col) {
                *xi += ti * c;
            }
        }
        x
    };
    let feasible = |t: &[Rational]| projected.iter().all(|(g, r)| dot(g, t) <= *r);

    if k == 0 {
        let verts = if feasible(&[]) { vec![x0.clone()] } else { vec![] };
        return VPolytope::from_vertices(d, verts).expect("dims agree");
    }
    let mut verts = Vec::new();
    for subset in (0..projected.len()).combinations(k) {
        let m: Vec<Vec<Rational>> = subset.iter().map(|&i| projected[i].0.clone()).collect();
        let rhs: Vec<Rational> = subset.iter().map(|&i| projected[i].1.clone()).collect();
        if let Some(t) = solve_unique(&m, &rhs) {
            if feasible(&t) {
                verts.push(lift(&t));
            }
        }
    }
    VPolytope::from_vertices(d, verts).expect("dims agree")
}
