//! Seeded exact-rational samplers for the classical and nonsignaling sets.

use rand::Rng;

use crate::classical::FunctionDistribution;
use crate::correlation::{Correlation, GameShape};
use crate::polytope::two_point::transpose;
use crate::polytope::{bell_values, correlation_from_w, two_point_nonsignaling, NsClassification, WCoordinates};
use crate::scalar::{rat, Rational};

/// Positive integer weights normalized to a probability vector.
fn random_weights<R: Rng + ?Sized>(k: usize, rng: &mut R) -> Vec<Rational> {
    let raw: Vec<i64> = (0..k).map(|_| rng.random_range(1..=64)).collect();
    let total: i64 = raw.iter().sum();
    raw.into_iter().map(|w| rat(w, total)).collect()
}

/// A mixture of `support` uniformly drawn functions (repeats merge).
pub fn random_function_mixture<R: Rng + ?Sized>(shape: GameShape, support: usize, rng: &mut R) -> FunctionDistribution<Rational> {
    let weights = random_weights(support.max(1), rng);
    let terms: Vec<(Vec<usize>, Rational)> = weights
        .into_iter()
        .map(|w| ((0..shape.n()).map(|_| rng.random_range(0..shape.m())).collect(), w))
        .collect();
    FunctionDistribution::new(shape, terms).expect("weights sum to one")
}

/// Points of the 3x2 synchronous nonsignaling polytope that violate a Bell
/// inequality: one violating vertex with weight ≥ 1/2 mixed with random vertices.
pub struct ViolatingSampler {
    classes: NsClassification,
}

impl ViolatingSampler {
    pub fn new(classes: NsClassification) -> Self {
        Self { classes }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Correlation<Rational> {
        let violating: Vec<&WCoordinates<Rational>> = self.classes.violating.values().flatten().collect();
        let all = self.classes.vertices.vertices();
        loop {
            let anchor = violating[rng.random_range(0..violating.len())];
            let k = rng.random_range(1..=4);
            let lambda = rat(rng.random_range(32..=64), 64);
            let rest = random_weights(k, rng);
            let mut w: [Rational; 9] = std::array::from_fn(|i| &lambda * &anchor.w[i]);
            for r in rest {
                let v = &all[rng.random_range(0..all.len())];
                for (wi, vi) in w.iter_mut().zip(v) {
                    *wi += (rat(1, 1) - &lambda) * &r * vi;
                }
            }
            let w = WCoordinates::new(w);
            if bell_values(&w, 0.0).violated.is_some() {
                return correlation_from_w(&w, 0.0).expect("convex combination of vertices");
            }
        }
    }
}

fn random_table<R: Rng + ?Sized>(m: usize, rng: &mut R) -> Vec<Rational> {
    random_weights(m * m, rng)
}

/// Asymmetric two-input point: v = uᵀ + t·D with D = (e_a − e_b)(e_c − e_d)ᵀ,
/// which keeps all marginals and leaves v ≠ uᵀ.
pub fn random_asymmetric_two_input<R: Rng + ?Sized>(m: usize, rng: &mut R) -> Correlation<Rational> {
    assert!(m >= 2, "needs at least two outputs");
    let u = random_table(m, rng);
    let ut = transpose(&u, m);
    let pick_pair = |rng: &mut R| {
        let a = rng.random_range(0..m);
        let b = (a + rng.random_range(1..m)) % m;
        (a, b)
    };
    let (a, b) = pick_pair(rng);
    let (c, d) = pick_pair(rng);
    // Entries (a,d) and (b,c) decrease by t.
    let t_max = ut[a * m + d].clone().min(ut[b * m + c].clone());
    let t = t_max * rat(rng.random_range(1..=8), 8);
    let mut v = ut;
    v[a * m + c] += &t;
    v[b * m + d] += &t;
    v[a * m + d] -= &t;
    v[b * m + c] -= &t;
    two_point_nonsignaling(m, u, v, 0.0).expect("marginals preserved")
}

/// Symmetric two-input point: the symmetrization (u + vᵀ)/2 of an asymmetric one.
pub fn random_symmetric_two_input<R: Rng + ?Sized>(m: usize, rng: &mut R) -> Correlation<Rational> {
    let p = random_asymmetric_two_input(m, rng);
    let u: Vec<Rational> = (0..m * m).map(|k| p.get(k / m, k % m, 0, 1).clone()).collect();
    let v: Vec<Rational> = (0..m * m).map(|k| p.get(k / m, k % m, 1, 0).clone()).collect();
    let sym: Vec<Rational> = u.iter().zip(transpose(&v, m)).map(|(x, y)| (x + y) * rat(1, 2)).collect();
    let symt = transpose(&sym, m);
    two_point_nonsignaling(m, sym, symt, 0.0).expect("average of compatible tables")
}
