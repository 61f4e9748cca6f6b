//! Phase-I simplex for the feasibility problem `A x = b, x ≥ 0`.
//!
//! Dense tableau with Bland's rule (smallest-index entering column, smallest
//! basic index on ratio ties), so the exact rational path always terminates.
//! When the problem is infeasible the final reduced costs of the artificial
//! columns give a Farkas witness `y` with `yᵀA ≤ 0` and `yᵀb > 0`.

use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub enum Feasibility<T> {
    /// A basic feasible solution.
    Feasible(Vec<T>),
    /// Farkas witness: `yᵀA_j ≤ 0` for every column and `yᵀb = gap > 0`.
    Infeasible { dual: Vec<T>, gap: T },
}

/// Pivot threshold used in float mode; ignored for rationals.
const PIVOT_EPS: f64 = 1e-12;

struct Tableau<T> {
    /// r rows of (ncols coefficients, rhs).
    rows: Vec<Vec<T>>,
    reduced: Vec<T>,
    basis: Vec<usize>,
    ncols: usize,
}

impl<T: Scalar> Tableau<T> {
    fn entering(&self) -> Option<usize> {
        (0..self.ncols).find(|&j| self.reduced[j].is_negative_tol(PIVOT_EPS))
    }

    fn leaving(&self, col: usize) -> Option<usize> {
        let mut best: Option<(usize, T)> = None;
        for (i, row) in self.rows.iter().enumerate() {
            if !row[col].is_positive_tol(PIVOT_EPS) {
                continue;
            }
            let ratio = row[self.ncols].clone() / row[col].clone();
            let better = match &best {
                None => true,
                Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
            };
            if better {
                best = Some((i, ratio));
            }
        }
        best.map(|(i, _)| i)
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let pivot = self.rows[r][c].clone();
        for v in self.rows[r].iter_mut() {
            *v = v.clone() / pivot.clone();
        }
        let prow = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (v, p) in row.iter_mut().zip(&prow) {
                *v = v.clone() - factor.clone() * p.clone();
            }
        }
        let factor = self.reduced[c].clone();
        if !factor.is_zero() {
            for (v, p) in self.reduced.iter_mut().zip(&prow[..self.ncols]) {
                *v = v.clone() - factor.clone() * p.clone();
            }
        }
        self.basis[r] = c;
    }
}

/// Decide feasibility of `A x = b, x ≥ 0`. `a` is row-major (one `Vec` per
/// constraint). `tol` is the float-mode threshold on the phase-I objective.
pub fn solve_feasibility<T: Scalar>(a: &[Vec<T>], b: &[T], tol: f64) -> Feasibility<T> {
    let r = a.len();
    let n = a.first().map_or(0, Vec::len);
    assert_eq!(b.len(), r, "rhs length must match the number of constraints");
    let ncols = n + r;

    let mut flipped = vec![false; r];
    let mut rows = Vec::with_capacity(r);
    for (i, (ai, bi)) in a.iter().zip(b).enumerate() {
        assert_eq!(ai.len(), n, "ragged constraint matrix");
        let flip = bi.is_negative();
        flipped[i] = flip;
        let sign = |v: &T| if flip { -v.clone() } else { v.clone() };
        let mut row: Vec<T> = ai.iter().map(sign).collect();
        row.extend((0..r).map(|k| if k == i { T::one() } else { T::zero() }));
        row.push(sign(bi));
        rows.push(row);
    }

    let mut reduced = vec![T::zero(); ncols];
    for (j, d) in reduced.iter_mut().enumerate().take(n) {
        *d = rows.iter().fold(T::zero(), |acc, row| acc - row[j].clone());
    }

    let mut tab = Tableau { rows, reduced, basis: (n..ncols).collect(), ncols };
    while let Some(c) = tab.entering() {
        // Phase I is bounded below by zero, so an entering column always has a pivot.
        let Some(r) = tab.leaving(c) else { break };
        tab.pivot(r, c);
    }

    let gap = tab
        .basis
        .iter()
        .zip(&tab.rows)
        .filter(|(&j, _)| j >= n)
        .fold(T::zero(), |acc, (_, row)| acc + row[ncols].clone());

    if gap.is_positive_tol(tol) {
        let dual = (0..r)
            .map(|i| {
                let y = T::one() - tab.reduced[n + i].clone();
                if flipped[i] {
                    -y
                } else {
                    y
                }
            })
            .collect();
        Feasibility::Infeasible { dual, gap }
    } else {
        let mut x = vec![T::zero(); n];
        for (row, &j) in tab.rows.iter().zip(&tab.basis) {
            if j < n {
                x[j] = row[ncols].clone();
            }
        }
        Feasibility::Feasible(x)
    }
}
