//! Double description method over exact rationals.
//!
//! [`cone_generators`] computes a minimal generating set (lineality basis plus
//! extreme rays) of `{x : h·x ≥ 0 for all h}`, inserting the constraints in the
//! given order. Adjacency of two rays is decided algebraically: they are
//! adjacent iff the constraints active on both have rank `D − k − 2`, where
//! `k` is the current lineality dimension.

use num_traits::{Signed, Zero};

use super::exact::{dot, primitive, primitive_unsigned, rank_of, rref};
use super::{GeometryError, HPolytope, Halfspace, Hyperplane, VPolytope};
use crate::scalar::Rational;

/// Generators of a polyhedral cone: `lineality` spans the largest contained
/// subspace, `rays` are the extreme rays modulo that subspace.
#[derive(Clone, Debug, Default)]
pub struct Cone {
    pub lineality: Vec<Vec<Rational>>,
    pub rays: Vec<Vec<Rational>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct BitSet(Vec<u64>);

impl BitSet {
    fn new(bits: usize) -> Self {
        Self(vec![0; bits.div_ceil(64).max(1)])
    }

    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn and(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(wi, &w)| (0..64).filter(move |b| w & (1 << b) != 0).map(move |b| wi * 64 + b))
    }
}

struct Ray {
    v: Vec<Rational>,
    zeros: BitSet,
}

/// Extreme rays and lineality of `{x ∈ R^dim : h·x ≥ 0 ∀h ∈ constraints}`.
pub fn cone_generators(dim: usize, constraints: &[Vec<Rational>]) -> Cone {
    let total = constraints.len();
    let mut lineality: Vec<Vec<Rational>> = (0..dim)
        .map(|i| (0..dim).map(|j| Rational::from_integer(((i == j) as i64).into())).collect())
        .collect();
    let mut rays: Vec<Ray> = Vec::new();

    for (ci, h) in constraints.iter().enumerate() {
        debug_assert_eq!(h.len(), dim);
        // A lineality direction not orthogonal to h becomes a ray.
        if let Some(li) = lineality.iter().position(|l| !dot(h, l).is_zero()) {
            let mut l = lineality.swap_remove(li);
            let mut hl = dot(h, &l);
            if hl.is_negative() {
                l.iter_mut().for_each(|x| *x = -x.clone());
                hl = -hl;
            }
            for other in lineality.iter_mut() {
                let f = dot(h, other) / &hl;
                if !f.is_zero() {
                    for (o, x) in other.iter_mut().zip(&l) {
                        *o -= &f * x;
                    }
                }
            }
            for r in rays.iter_mut() {
                let f = dot(h, &r.v) / &hl;
                if !f.is_zero() {
                    for (o, x) in r.v.iter_mut().zip(&l) {
                        *o -= &f * x;
                    }
                    r.v = primitive(&r.v);
                }
                r.zeros.insert(ci);
            }
            let mut zeros = BitSet::new(total);
            (0..ci).for_each(|j| zeros.insert(j));
            rays.push(Ray { v: primitive(&l), zeros });
            continue;
        }

        let values: Vec<Rational> = rays.iter().map(|r| dot(h, &r.v)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_negative()).collect();
        if neg.is_empty() {
            for (r, v) in rays.iter_mut().zip(&values) {
                if v.is_zero() {
                    r.zeros.insert(ci);
                }
            }
            continue;
        }

        let target_rank = (dim - lineality.len()).saturating_sub(2);
        let mut created = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let common = rays[p].zeros.and(&rays[q].zeros);
                if common.len() < target_rank {
                    continue;
                }
                let active: Vec<Vec<Rational>> = common.iter().map(|j| constraints[j].clone()).collect();
                if rank_of(active) != target_rank {
                    continue;
                }
                // s_p·q − s_q·p lies on h·x = 0 with positive weights.
                let (sp, sq) = (&values[p], &values[q]);
                let v: Vec<Rational> =
                    rays[q].v.iter().zip(&rays[p].v).map(|(xq, xp)| sp * xq - sq * xp).collect();
                let mut zeros = common;
                zeros.insert(ci);
                created.push(Ray { v: primitive(&v), zeros });
            }
        }
        let mut kept: Vec<Ray> = Vec::with_capacity(rays.len() + created.len());
        for (mut r, v) in rays.into_iter().zip(values) {
            if v.is_negative() {
                continue;
            }
            if v.is_zero() {
                r.zeros.insert(ci);
            }
            kept.push(r);
        }
        kept.extend(created);
        rays = kept;
    }

    Cone { lineality, rays: rays.into_iter().map(|r| r.v).collect() }
}

/// Homogenized constraints `(t, x)`: `t ≥ 0`, then equations as inequality
/// pairs, then the inequalities in their given order.
fn homogenize(h: &HPolytope) -> Vec<Vec<Rational>> {
    let d = h.dim();
    let mut rows = Vec::with_capacity(1 + 2 * h.equations().len() + h.inequalities().len());
    let mut t = vec![Rational::zero(); d + 1];
    t[0] = Rational::from_integer(1.into());
    rows.push(t);
    for eq in h.equations() {
        let row: Vec<Rational> = std::iter::once(eq.e.clone()).chain(eq.c.iter().map(|c| -c.clone())).collect();
        rows.push(row.iter().map(|x| -x.clone()).collect());
        rows.push(row);
    }
    for ineq in h.inequalities() {
        rows.push(std::iter::once(ineq.b.clone()).chain(ineq.a.iter().map(|a| -a.clone())).collect());
    }
    rows
}

/// Vertex set of a bounded H-polytope, sorted lexicographically.
pub fn dd_enumerate(h: &HPolytope) -> Result<VPolytope, GeometryError> {
    let cone = cone_generators(h.dim() + 1, &homogenize(h));
    let mut vertices = Vec::new();
    let mut recession = None;
    for r in &cone.rays {
        if r[0].is_positive() {
            vertices.push(r[1..].iter().map(|x| x / &r[0]).collect());
        } else if recession.is_none() {
            recession = Some(r[1..].to_vec());
        }
    }
    if vertices.is_empty() {
        return Err(GeometryError::Infeasible);
    }
    if let Some(l) = cone.lineality.first() {
        return Err(GeometryError::Unbounded(l[1..].to_vec()));
    }
    if let Some(r) = recession {
        return Err(GeometryError::Unbounded(r));
    }
    VPolytope::from_vertices(h.dim(), vertices)
}

/// Facets and affine hull of the convex hull of `v`.
///
/// Inequalities come out as primitive integer vectors reduced modulo the affine
/// hull, equations in reduced row echelon form; both sorted.
pub fn facet_enumerate(v: &VPolytope) -> Result<HPolytope, GeometryError> {
    if v.is_empty() {
        return Err(GeometryError::EmptyPolytope);
    }
    let d = v.dim();
    // (a, b) with b − a·x ≥ 0 at every vertex.
    let constraints: Vec<Vec<Rational>> = v
        .vertices()
        .iter()
        .map(|x| {
            x.iter()
                .map(|xi| -xi.clone())
                .chain(std::iter::once(Rational::from_integer(1.into())))
                .collect()
        })
        .collect();
    let cone = cone_generators(d + 1, &constraints);

    let (basis, _) = rref(cone.lineality.clone());
    let mut equations: Vec<Hyperplane> = basis
        .iter()
        .map(|row| {
            let p = primitive_unsigned(row);
            Hyperplane { c: p[..d].to_vec(), e: p[d].clone() }
        })
        .collect();
    equations.sort();

    // Canonical representative: eliminate the RREF pivot coordinates.
    let (red, pivots) = rref(cone.lineality);
    let mut inequalities: Vec<Halfspace> = cone
        .rays
        .iter()
        .map(|r| {
            let mut r = r.clone();
            for (row, &p) in red.iter().zip(&pivots) {
                let f = r[p].clone();
                if !f.is_zero() {
                    for (x, y) in r.iter_mut().zip(row) {
                        *x -= &f * y;
                    }
                }
            }
            let p = primitive(&r);
            Halfspace { a: p[..d].to_vec(), b: p[d].clone() }
        })
        .collect();
    inequalities.sort();
    inequalities.dedup();
    HPolytope::new(d, inequalities, equations)
}

/// Dimension of the affine hull.
pub fn affine_dimension(v: &VPolytope) -> Result<usize, GeometryError> {
    let (first, rest) = v.vertices().split_first().ok_or(GeometryError::EmptyPolytope)?;
    let diffs: Vec<Vec<Rational>> =
        rest.iter().map(|x| x.iter().zip(first).map(|(a, b)| a - b).collect()).collect();
    Ok(rank_of(diffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::rv;
    use crate::scalar::rat;

    fn cube(d: usize) -> HPolytope {
        let mut ineq = Vec::new();
        for i in 0..d {
            let mut a = vec![rat(0, 1); d];
            a[i] = rat(-1, 1);
            ineq.push(Halfspace { a: a.clone(), b: rat(0, 1) });
            a[i] = rat(1, 1);
            ineq.push(Halfspace { a, b: rat(1, 1) });
        }
        HPolytope::new(d, ineq, vec![]).unwrap()
    }

    #[test]
    fn unit_cube_has_eight_vertices() {
        let v = dd_enumerate(&cube(3)).unwrap();
        assert_eq!(v.len(), 8);
        assert_eq!(v.vertices()[0], rv(&[0, 0, 0]));
        assert_eq!(v.vertices()[7], rv(&[1, 1, 1]));
        assert_eq!(affine_dimension(&v).unwrap(), 3);
    }

    #[test]
    fn cube_facets_round_trip() {
        let v = dd_enumerate(&cube(3)).unwrap();
        let h = facet_enumerate(&v).unwrap();
        assert_eq!(h.inequalities().len(), 6);
        assert!(h.equations().is_empty());
        assert_eq!(dd_enumerate(&h).unwrap(), v);
    }

    #[test]
    fn unbounded_and_infeasible() {
        // x ≥ 0 alone is a ray.
        let h = HPolytope::new(1, vec![Halfspace { a: rv(&[-1]), b: rat(0, 1) }], vec![]).unwrap();
        assert!(matches!(dd_enumerate(&h), Err(GeometryError::Unbounded(_))));
        // x ≤ −1 and x ≥ 0.
        let h = HPolytope::new(
            1,
            vec![Halfspace { a: rv(&[1]), b: rat(-1, 1) }, Halfspace { a: rv(&[-1]), b: rat(0, 1) }],
            vec![],
        )
        .unwrap();
        assert_eq!(dd_enumerate(&h), Err(GeometryError::Infeasible));
        // No constraints: lineality survives.
        let h = HPolytope::new(2, vec![], vec![]).unwrap();
        assert!(matches!(dd_enumerate(&h), Err(GeometryError::Unbounded(_))));
    }

    #[test]
    fn equations_cut_a_face() {
        // Square with x0 = x1 is a segment.
        let mut h = cube(2);
        h.equations.push(Hyperplane { c: rv(&[1, -1]), e: rat(0, 1) });
        let v = dd_enumerate(&h).unwrap();
        assert_eq!(v.vertices(), &[rv(&[0, 0]), rv(&[1, 1])]);
        assert_eq!(affine_dimension(&v).unwrap(), 1);
        let f = facet_enumerate(&v).unwrap();
        assert_eq!(f.equations().len(), 1);
        assert_eq!(f.inequalities().len(), 2);
    }

    #[test]
    fn single_point_dimension_zero() {
        let v = VPolytope::from_vertices(2, vec![rv(&[1, 2])]).unwrap();
        assert_eq!(affine_dimension(&v).unwrap(), 0);
        let empty = VPolytope::from_vertices(2, vec![]).unwrap();
        assert_eq!(affine_dimension(&empty), Err(GeometryError::EmptyPolytope));
    }

    #[test]
    fn simplex_with_redundant_constraint() {
        // x, y ≥ 0, x + y ≤ 1, plus the redundant x ≤ 2.
        let h = HPolytope::new(
            2,
            vec![
                Halfspace { a: rv(&[-1, 0]), b: rat(0, 1) },
                Halfspace { a: rv(&[1, 0]), b: rat(2, 1) },
                Halfspace { a: rv(&[0, -1]), b: rat(0, 1) },
                Halfspace { a: rv(&[1, 1]), b: rat(1, 1) },
            ],
            vec![],
        )
        .unwrap();
        let v = dd_enumerate(&h).unwrap();
        assert_eq!(v.vertices(), &[rv(&[0, 0]), rv(&[0, 1]), rv(&[1, 0])]);
        assert_eq!(facet_enumerate(&v).unwrap().inequalities().len(), 3);
    }
}
