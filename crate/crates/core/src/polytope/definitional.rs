//! H-representations for general (n, m) built straight from the definitions,
//! in full table coordinates (index `row·n² + col`, matching
//! [`Correlation::entries`](crate::Correlation::entries)).
//!
//! No closed-form facet list is attempted here; these feed the
//! vertex-enumeration cross-checks.

use num_traits::{One, Zero};

use super::{HPolytope, Halfspace, Hyperplane};
use crate::correlation::GameShape;
use crate::scalar::Rational;

fn unit(dim: usize, idx: &[(usize, i64)]) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); dim];
    for &(i, c) in idx {
        v[i] += Rational::from_integer(c.into());
    }
    v
}

/// Column-stochastic tables with p(yA,yB|x,x) = 0 for yA ≠ yB.
pub fn sync_polytope(shape: GameShape) -> HPolytope {
    let (n, m) = (shape.n(), shape.m());
    let cols = shape.cols();
    let dim = shape.rows() * cols;
    let idx = |ya: usize, yb: usize, xa: usize, xb: usize| shape.row(ya, yb) * cols + shape.col(xa, xb);

    let inequalities = (0..dim).map(|k| Halfspace { a: unit(dim, &[(k, -1)]), b: Rational::zero() }).collect();
    let mut equations = Vec::new();
    for c in 0..cols {
        let terms: Vec<(usize, i64)> = (0..shape.rows()).map(|r| (r * cols + c, 1)).collect();
        equations.push(Hyperplane { c: unit(dim, &terms), e: Rational::one() });
    }
    for x in 0..n {
        for ya in 0..m {
            for yb in 0..m {
                if ya != yb {
                    equations.push(Hyperplane { c: unit(dim, &[(idx(ya, yb, x, x), 1)]), e: Rational::zero() });
                }
            }
        }
    }
    HPolytope::new(dim, inequalities, equations).expect("well-formed")
}

/// [`sync_polytope`] plus both nonsignaling conditions.
pub fn sync_ns_polytope(shape: GameShape) -> HPolytope {
    let base = sync_polytope(shape);
    let (n, m) = (shape.n(), shape.m());
    let cols = shape.cols();
    let dim = base.dim();
    let idx = |ya: usize, yb: usize, xa: usize, xb: usize| shape.row(ya, yb) * cols + shape.col(xa, xb);
    let mut equations = base.equations().to_vec();
    for y in 0..m {
        for x in 0..n {
            for other in 1..n {
                // Alice: Σ_yB p(y,yB|x,other) = Σ_yB p(y,yB|x,0).
                let mut t: Vec<(usize, i64)> = (0..m).map(|yb| (idx(y, yb, x, other), 1)).collect();
                t.extend((0..m).map(|yb| (idx(y, yb, x, 0), -1)));
                equations.push(Hyperplane { c: unit(dim, &t), e: Rational::zero() });
                // Bob: Σ_yA p(yA,y|other,x) = Σ_yA p(yA,y|0,x).
                let mut t: Vec<(usize, i64)> = (0..m).map(|ya| (idx(ya, y, other, x), 1)).collect();
                t.extend((0..m).map(|ya| (idx(ya, y, 0, x), -1)));
                equations.push(Hyperplane { c: unit(dim, &t), e: Rational::zero() });
            }
        }
    }
    HPolytope::new(dim, base.inequalities().to_vec(), equations).expect("well-formed")
}

/// Every deterministic synchronous table: each off-diagonal input column
/// picks one of m² output pairs, each diagonal column one of m agreeing pairs.
/// Count is m^(2n² − n).
pub fn deterministic_sync_tables(shape: GameShape) -> Vec<Vec<Rational>> {
    let (n, m) = (shape.n(), shape.m());
    let cols = shape.cols();
    let rows = shape.rows();
    let choices: Vec<Vec<usize>> = (0..cols)
        .map(|c| {
            if c / n == c % n {
                (0..m).map(|y| shape.row(y, y)).collect()
            } else {
                (0..rows).collect()
            }
        })
        .collect();
    let mut out = Vec::new();
    let mut pick = vec![0usize; cols];
    loop {
        let mut table = vec![Rational::zero(); rows * cols];
        for (c, &k) in pick.iter().enumerate() {
            table[choices[c][k] * cols + c] = Rational::one();
        }
        out.push(table);
        let mut pos = cols;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            pick[pos] += 1;
            if pick[pos] < choices[pos].len() {
                break;
            }
            pick[pos] = 0;
        }
    }
}
