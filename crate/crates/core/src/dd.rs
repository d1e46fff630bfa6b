//! Double description method over an exact ordered field.
//!
//! Converts between the two representations of a polyhedral cone: the
//! generator form (lineality basis plus extreme rays) and the constraint form
//! (homogeneous inequalities and equations).  Facet enumeration of a
//! polyhedron `conv(points) + cone(rays)` goes through the polar of its
//! homogenization.
//!
//! Sizes here are desk scale (dimension ≤ 9, a few dozen generators), so the
//! implementation favors clarity: dense vectors, the combinatorial adjacency
//! test of Fukuda–Prodon, and canonical rescaling of every ray.

use crate::linalg::{dot, Scalar};

/// Scalar usable by the double description method: needs a canonical
/// positive rescale of ray vectors.  For rationals this is the reduction to a
/// primitive integer vector, which keeps coefficient growth at the size of
/// the true facet data instead of compounding through the combination steps.
pub trait DdScalar: Scalar {
    fn canonicalize_ray(v: &mut [Self]);
}

impl DdScalar for crate::Rat {
    fn canonicalize_ray(v: &mut [Self]) {
        use num_integer::Integer as _;
        use num_traits::Zero as _;
        let mut scale = crate::Int::from(1);
        for x in v.iter() {
            scale = scale.lcm(x.denom());
        }
        let mut content = crate::Int::zero();
        let ints: Vec<crate::Int> = v
            .iter()
            .map(|x| x.numer() * (&scale / x.denom()))
            .collect();
        for x in &ints {
            content = content.gcd(x);
        }
        if content.is_zero() {
            return;
        }
        for (slot, int) in v.iter_mut().zip(ints) {
            *slot = crate::Rat::from_integer(int / &content);
        }
    }
}

impl DdScalar for f64 {
    fn canonicalize_ray(v: &mut [Self]) {
        let scale = v.iter().fold(0.0f64, |a, &x| a.max(x.abs()));
        if scale > 0.0 {
            for x in v.iter_mut() {
                *x /= scale;
            }
        }
    }
}

/// Generator representation: `span(lines) + cone(rays)`.
#[derive(Debug, Clone)]
pub struct Generators<S> {
    pub lines: Vec<Vec<S>>,
    pub rays: Vec<Vec<S>>,
}

/// Constraint representation of a polyhedron: `⟨x,a⟩ ≤ b` and `⟨x,e⟩ = c`.
#[derive(Debug, Clone)]
pub struct HRep<S> {
    pub ineqs: Vec<(Vec<S>, S)>,
    pub eqs: Vec<(Vec<S>, S)>,
}

/// Zero-set bitmask over inequality indices.
#[derive(Debug, Clone, PartialEq)]
struct ZSet(Vec<u64>);

impl ZSet {
    fn new(capacity: usize) -> Self {
        ZSet(vec![0; capacity.div_ceil(64).max(1)])
    }
    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn intersection(&self, other: &ZSet) -> ZSet {
        ZSet(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }
    fn contains_all(&self, other: &ZSet) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & b == *b)
    }
}

#[derive(Debug, Clone)]
struct Ray<S> {
    v: Vec<S>,
    zero: ZSet,
}

fn canonicalize<S: DdScalar>(v: &mut [S]) {
    S::canonicalize_ray(v);
}

/// Extreme rays and lineality of `{x ∈ ℝ^dim : ⟨x,a⟩ ≤ 0 ∀a ∈ ineqs, ⟨x,e⟩ = 0 ∀e ∈ eqs}`.
pub fn extreme_rays<S: DdScalar>(dim: usize, ineqs: &[Vec<S>], eqs: &[Vec<S>]) -> Generators<S> {
    let cap = ineqs.len();
    let mut lines: Vec<Vec<S>> = (0..dim)
        .map(|i| {
            let mut e = vec![S::zero(); dim];
            e[i] = S::one();
            e
        })
        .collect();
    let mut rays: Vec<Ray<S>> = Vec::new();

    for e in eqs {
        step(&mut lines, &mut rays, e, None, cap);
    }
    for (i, a) in ineqs.iter().enumerate() {
        step(&mut lines, &mut rays, a, Some(i), cap);
    }

    Generators {
        lines,
        rays: rays.into_iter().map(|r| r.v).collect(),
    }
}

/// Process one constraint: an inequality `⟨x,a⟩ ≤ 0` when `index` is set, the
/// equation `⟨x,a⟩ = 0` otherwise.
fn step<S: DdScalar>(
    lines: &mut Vec<Vec<S>>,
    rays: &mut Vec<Ray<S>>,
    a: &[S],
    index: Option<usize>,
    cap: usize,
) {
    // A line not annihilated by the constraint absorbs it: all other
    // generators are shifted into the hyperplane ⟨x,a⟩ = 0, and the line
    // itself survives only as a ray on the feasible side (inequality case).
    if let Some(k) = lines.iter().position(|l| !dot(l, a).is_zero()) {
        let mut pivot = lines.swap_remove(k);
        let d0 = dot(&pivot, a);
        for l in lines.iter_mut() {
            let c = dot(l, a) / d0.clone();
            for (x, p) in l.iter_mut().zip(&pivot) {
                *x = x.clone() - c.clone() * p.clone();
            }
            canonicalize(l);
        }
        for r in rays.iter_mut() {
            let c = dot(&r.v, a) / d0.clone();
            if !c.is_zero() {
                for (x, p) in r.v.iter_mut().zip(&pivot) {
                    *x = x.clone() - c.clone() * p.clone();
                }
                canonicalize(&mut r.v);
            }
            if let Some(i) = index {
                r.zero.insert(i);
            }
        }
        if let Some(i) = index {
            if d0 > S::zero() {
                for x in pivot.iter_mut() {
                    *x = -x.clone();
                }
            }
            canonicalize(&mut pivot);
            // The consumed line was orthogonal to every earlier constraint.
            let mut zero = ZSet::new(cap);
            for j in 0..i {
                zero.insert(j);
            }
            rays.push(Ray { v: pivot, zero });
        }
        return;
    }

    let sign_of = |r: &Ray<S>| {
        let d = dot(&r.v, a);
        if d.is_zero() {
            0i8
        } else if d.is_positive() {
            1
        } else {
            -1
        }
    };
    let signs: Vec<i8> = rays.iter().map(sign_of).collect();
    // An inequality keeps its strictly feasible side; an equation keeps
    // neither open side.
    let keep_negative = index.is_some();
    let mut fresh: Vec<Ray<S>> = Vec::new();

    for (ip, p) in rays.iter().enumerate() {
        if signs[ip] <= 0 {
            continue;
        }
        for (iq, q) in rays.iter().enumerate() {
            if signs[iq] >= 0 {
                continue;
            }
            let meet = p.zero.intersection(&q.zero);
            let adjacent = rays
                .iter()
                .enumerate()
                .all(|(ir, r)| ir == ip || ir == iq || !r.zero.contains_all(&meet));
            if !adjacent {
                continue;
            }
            let dp = dot(&p.v, a);
            let dq = dot(&q.v, a);
            // dp·q − dq·p lands on the hyperplane with positive coefficients.
            let mut v: Vec<S> = p
                .v
                .iter()
                .zip(&q.v)
                .map(|(pv, qv)| dp.clone() * qv.clone() - dq.clone() * pv.clone())
                .collect();
            canonicalize(&mut v);
            if v.iter().all(|x| x.is_zero()) {
                continue;
            }
            let mut zero = meet;
            if let Some(i) = index {
                zero.insert(i);
            }
            fresh.push(Ray { v, zero });
        }
    }

    let mut kept: Vec<Ray<S>> = Vec::new();
    for (i, mut r) in std::mem::take(rays).into_iter().enumerate() {
        if signs[i] < 0 && keep_negative {
            kept.push(r);
        } else if signs[i] == 0 {
            if let Some(ix) = index {
                r.zero.insert(ix);
            }
            kept.push(r);
        }
    }
    for f in fresh {
        if !kept.iter().any(|r| r.v == f.v) {
            kept.push(f);
        }
    }
    *rays = kept;
}

/// Facet enumeration of `P = conv(points) + cone(rays)` via the polar of the
/// homogenization cone.  Returns the irredundant inequality system together
/// with the affine-hull equations when `P` is not full-dimensional.
pub fn facets_of_polyhedron<S: DdScalar>(
    dim: usize,
    points: &[Vec<S>],
    rays: &[Vec<S>],
) -> HRep<S> {
    assert!(!points.is_empty(), "facet enumeration needs a nonempty polyhedron");
    let mut polar_rows: Vec<Vec<S>> = Vec::with_capacity(points.len() + rays.len());
    for p in points {
        let mut row = p.clone();
        row.push(S::one());
        polar_rows.push(row);
    }
    for r in rays {
        let mut row = r.clone();
        row.push(S::zero());
        polar_rows.push(row);
    }

    let polar = extreme_rays(dim + 1, &polar_rows, &[]);
    let mut out = HRep {
        ineqs: Vec::new(),
        eqs: Vec::new(),
    };
    for w in polar.rays {
        let (s, last) = w.split_at(dim);
        if s.iter().all(|x| x.is_zero()) {
            continue; // the homogenization facet t ≥ 0
        }
        out.ineqs.push((s.to_vec(), -last[0].clone()));
    }
    for w in polar.lines {
        let (s, last) = w.split_at(dim);
        if s.iter().all(|x| x.is_zero()) {
            continue;
        }
        out.eqs.push((s.to_vec(), -last[0].clone()));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rat;
    use num_traits::Zero;

    fn q(n: i64) -> Rat {
        Rat::from_integer(n.into())
    }
    fn qv(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| q(x)).collect()
    }

    fn normalize_set(mut rays: Vec<Vec<Rat>>) -> Vec<Vec<Rat>> {
        rays.sort_by(|a, b| a.partial_cmp(b).unwrap());
        rays
    }

    #[test]
    fn negative_orthant_rays() {
        let ineqs = vec![qv(&[1, 0, 0]), qv(&[0, 1, 0]), qv(&[0, 0, 1])];
        let g = extreme_rays(3, &ineqs, &[]);
        assert!(g.lines.is_empty());
        let got = normalize_set(g.rays);
        let want = normalize_set(vec![qv(&[-1, 0, 0]), qv(&[0, -1, 0]), qv(&[0, 0, -1])]);
        assert_eq!(got, want);
    }

    #[test]
    fn halfspace_keeps_lineality() {
        let g = extreme_rays(2, &[qv(&[1, 0])], &[]);
        assert_eq!(g.lines.len(), 1);
        assert_eq!(g.rays.len(), 1);
        assert!(g.lines[0][0].is_zero());
        assert!(g.rays[0][0] < q(0));
    }

    #[test]
    fn line_cut_to_point() {
        // {x : x ≤ 0, -x ≤ 0} in 1d is the origin.
        let g = extreme_rays(1, &[qv(&[1]), qv(&[-1])], &[]);
        assert!(g.lines.is_empty() && g.rays.is_empty());
    }

    #[test]
    fn square_facets() {
        let pts = vec![qv(&[0, 0]), qv(&[1, 0]), qv(&[0, 1]), qv(&[1, 1])];
        let h = facets_of_polyhedron(2, &pts, &[]);
        assert!(h.eqs.is_empty());
        assert_eq!(h.ineqs.len(), 4);
        for (a, b) in &h.ineqs {
            for p in &pts {
                assert!(dot(a, p) <= *b);
            }
        }
    }

    #[test]
    fn segment_has_affine_hull_equation() {
        let pts = vec![qv(&[0, 0]), qv(&[1, 1])];
        let h = facets_of_polyhedron(2, &pts, &[]);
        assert_eq!(h.eqs.len(), 1);
        let (e, c) = &h.eqs[0];
        assert!(dot(e, &pts[0]) == *c && dot(e, &pts[1]) == *c);
        // Two endpoint facets within the line.
        assert_eq!(h.ineqs.len(), 2);
    }

    #[test]
    fn unbounded_quadrant_translate() {
        // {(0,0)} + cone{(-1,0),(0,-1)}: facets x ≤ 0 and y ≤ 0.
        let h = facets_of_polyhedron(2, &[qv(&[0, 0])], &[qv(&[-1, 0]), qv(&[0, -1])]);
        assert!(h.eqs.is_empty());
        let mut normals = normalize_set(h.ineqs.iter().map(|(a, _)| a.clone()).collect());
        normals.iter_mut().for_each(|v| canonicalize(v));
        assert_eq!(normals, normalize_set(vec![qv(&[0, 1]), qv(&[1, 0])]));
        assert!(h.ineqs.iter().all(|(_, b)| b.is_zero()));
    }

    #[test]
    fn round_trip_v_h_v() {
        // Simplex cone from generators -> facets -> generators.
        let rays = vec![qv(&[1, 0, 1]), qv(&[0, 1, 1]), qv(&[-1, -1, 1])];
        let h = facets_of_polyhedron(3, &[qv(&[0, 0, 0])], &rays);
        let ineq_rows: Vec<Vec<Rat>> = h
            .ineqs
            .iter()
            .map(|(a, b)| {
                assert!(b.is_zero());
                a.clone()
            })
            .collect();
        let g = extreme_rays(3, &ineq_rows, &[]);
        assert!(g.lines.is_empty());
        let mut got = g.rays;
        let mut want = rays;
        got.iter_mut().for_each(|v| canonicalize(v));
        want.iter_mut().for_each(|v| canonicalize(v));
        assert_eq!(normalize_set(got), normalize_set(want));
    }
}
