//! Integer lattices and rational subspaces.
//!
//! A torus inside the diagonal group of `GL(n, ℂ)` is encoded by the lattice
//! `Γ = t ∩ ℤⁿ` of integer points of its (rational) Lie-algebra subspace `t`.
//! The constructor saturates its input: the stored basis always generates all
//! integer points of the real span, so the torus is determined by the subspace
//! alone.  Conventions: `exp(ξ+iη)·v` acts componentwise as `e^{ξ_k+iη_k}v_k`
//! for `ξ, η ∈ span_ℝ(Γ)`; the compact torus is `{exp(iη)}` with period
//! lattice `2πΓ`.

use num_integer::Integer as _;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::linalg::{self, dot};
use crate::{rat_to_f64, Error, Int, Rat, Result};

// ---------------------------------------------------------------------------
// Integer matrix primitives
// ---------------------------------------------------------------------------

/// Row-style Hermite normal form: canonical basis of the row lattice.
/// Pivots are positive, entries above a pivot are reduced into `[0, pivot)`,
/// zero rows are dropped.
pub fn hermite_normal_form(rows: &[Vec<Int>]) -> Vec<Vec<Int>> {
    let mut m: Vec<Vec<Int>> = rows.iter().filter(|r| !r.iter().all(Int::is_zero)).cloned().collect();
    let cols = m.first().map_or(0, |r| r.len());
    let mut top = 0usize;
    for c in 0..cols {
        loop {
            let nonzero: Vec<usize> = (top..m.len()).filter(|&i| !m[i][c].is_zero()).collect();
            match nonzero.len() {
                0 => break,
                1 => {
                    m.swap(top, nonzero[0]);
                    break;
                }
                _ => {
                    let &best = nonzero
                        .iter()
                        .min_by_key(|&&i| m[i][c].abs())
                        .expect("nonempty");
                    for &i in &nonzero {
                        if i == best {
                            continue;
                        }
                        let q = m[i][c].div_floor(&m[best][c]);
                        if !q.is_zero() {
                            for j in 0..cols {
                                let d = &q * &m[best][j];
                                m[i][j] = &m[i][j] - d;
                            }
                        }
                    }
                }
            }
        }
        if top < m.len() && !m[top][c].is_zero() {
            if m[top][c].is_negative() {
                for v in m[top].iter_mut() {
                    *v = -v.clone();
                }
            }
            let (head, tail) = m.split_at_mut(top);
            let pivot_row = &tail[0];
            for r in head.iter_mut() {
                let q = r[c].div_floor(&pivot_row[c]);
                if !q.is_zero() {
                    for j in 0..cols {
                        let d = &q * &pivot_row[j];
                        r[j] = &r[j] - d;
                    }
                }
            }
            top += 1;
        }
    }
    m.truncate(top);
    m
}

/// Basis of `{x ∈ ℤ^cols : A x = 0}` for an integer matrix with the given
/// rows.  The result is saturated by construction and HNF-canonical.
pub fn integer_kernel(rows: &[Vec<Int>], cols: usize) -> Vec<Vec<Int>> {
    // Row-reduce [Aᵀ | I] over ℤ; rows whose Aᵀ-part vanishes carry kernel
    // vectors in the identity part.
    let m = rows.len();
    let mut aug: Vec<Vec<Int>> = (0..cols)
        .map(|j| {
            let mut row: Vec<Int> = rows.iter().map(|r| r[j].clone()).collect();
            for k in 0..cols {
                row.push(if k == j { Int::from(1) } else { Int::zero() });
            }
            row
        })
        .collect();

    let mut top = 0usize;
    for c in 0..m {
        loop {
            let nonzero: Vec<usize> = (top..aug.len()).filter(|&i| !aug[i][c].is_zero()).collect();
            match nonzero.len() {
                0 => break,
                1 => {
                    aug.swap(top, nonzero[0]);
                    break;
                }
                _ => {
                    let &best = nonzero
                        .iter()
                        .min_by_key(|&&i| aug[i][c].abs())
                        .expect("nonempty");
                    for &i in &nonzero {
                        if i == best {
                            continue;
                        }
                        let q = aug[i][c].div_floor(&aug[best][c]);
                        if !q.is_zero() {
                            for j in 0..m + cols {
                                let d = &q * &aug[best][j];
                                aug[i][j] = &aug[i][j] - d;
                            }
                        }
                    }
                }
            }
        }
        if top < aug.len() && !aug[top][c].is_zero() {
            top += 1;
        }
    }
    let kernel: Vec<Vec<Int>> = aug[top..]
        .iter()
        .map(|row| row[m..].to_vec())
        .collect();
    hermite_normal_form(&kernel)
}

/// Saturation: the lattice of all integer points in the rational span of the
/// input rows.  Two annihilator passes: `span ∩ ℤⁿ = ker_ℤ(ker_ℤ(rows))`.
pub fn saturate_rows(rows: &[Vec<Int>], cols: usize) -> Vec<Vec<Int>> {
    let ann = integer_kernel(rows, cols);
    integer_kernel(&ann, cols)
}

/// Positive rescale of a rational vector to a primitive integer vector.
pub fn primitive_integer(v: &[Rat]) -> Vec<Int> {
    let mut scale = Int::from(1);
    for x in v {
        scale = scale.lcm(x.denom());
    }
    let ints: Vec<Int> = v.iter().map(|x| x.numer() * (&scale / x.denom())).collect();
    let mut g = Int::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

// ---------------------------------------------------------------------------
// Rational subspaces
// ---------------------------------------------------------------------------

/// A rational linear subspace of ℝⁿ with cached projection data.
#[derive(Debug, Clone)]
pub struct RationalSubspace {
    n: usize,
    basis: Vec<Vec<Rat>>,
    projection: Vec<Vec<Rat>>,
    express: Vec<Vec<Rat>>, // (B Bᵀ)⁻¹ B, intrinsic coordinates of a point
    annihilator: Vec<Vec<Int>>,
    basis_f64: Vec<Vec<f64>>,
    projection_f64: Vec<Vec<f64>>,
    express_f64: Vec<Vec<f64>>,
}

impl RationalSubspace {
    /// Span of the given rational rows (dependent rows allowed).
    pub fn from_rows(n: usize, rows: &[Vec<Rat>]) -> Result<Self> {
        for r in rows {
            if r.len() != n {
                return Err(Error::Dimension(format!(
                    "subspace row has length {}, ambient dimension is {n}",
                    r.len()
                )));
            }
        }
        let basis = linalg::row_space_basis(rows);
        let d = basis.len();
        let (projection, express) = if d == 0 {
            (vec![vec![Rat::zero(); n]; n], Vec::new())
        } else {
            let bt = linalg::transpose(&basis, n);
            let gram = linalg::mat_mul(&basis, &bt);
            let gram_inv = linalg::invert(&gram).expect("independent basis has invertible Gram");
            let express = linalg::mat_mul(&gram_inv, &basis);
            (linalg::mat_mul(&bt, &express), express)
        };
        let int_rows: Vec<Vec<Int>> = basis.iter().map(|r| primitive_integer(r)).collect();
        let annihilator = integer_kernel(&int_rows, n);
        let to_f64 = |m: &Vec<Vec<Rat>>| -> Vec<Vec<f64>> {
            m.iter().map(|r| r.iter().map(rat_to_f64).collect()).collect()
        };
        Ok(RationalSubspace {
            n,
            basis_f64: to_f64(&basis),
            projection_f64: to_f64(&projection),
            express_f64: to_f64(&express),
            basis,
            projection,
            express,
            annihilator,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Canonical (reduced-echelon) basis rows.
    pub fn basis(&self) -> &[Vec<Rat>] {
        &self.basis
    }

    pub fn basis_f64(&self) -> &[Vec<f64>] {
        &self.basis_f64
    }

    /// Orthogonal projection matrix onto the subspace.
    pub fn projection(&self) -> &[Vec<Rat>] {
        &self.projection
    }

    /// Saturated integer basis of `{w ∈ ℤⁿ : ⟨x, w⟩ = 0 for all x in the subspace}`.
    pub fn integer_annihilator(&self) -> &[Vec<Int>] {
        &self.annihilator
    }

    /// Rows of `(B Bᵀ)⁻¹ B`: intrinsic coordinates are `express · x`, and the
    /// in-subspace representative of an intrinsic functional is `expressᵀ a`.
    pub fn express_rows(&self) -> &[Vec<Rat>] {
        &self.express
    }

    pub fn contains_exact(&self, x: &[Rat]) -> bool {
        assert_eq!(x.len(), self.n);
        let px = linalg::mat_vec(&self.projection, x);
        px.iter().zip(x).all(|(p, v)| p == v)
    }

    pub fn project_f64(&self, x: &[f64]) -> Vec<f64> {
        self.projection_f64
            .iter()
            .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Euclidean distance from `x` to the subspace.
    pub fn distance_f64(&self, x: &[f64]) -> f64 {
        let px = self.project_f64(x);
        x.iter()
            .zip(&px)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }

    /// True iff `x` lies within `tol·(1 + ‖x‖)` of the subspace; exact when
    /// `x` is given rationally (see [`Self::contains_exact`]).
    pub fn contains_f64(&self, x: &[f64], tol: f64) -> bool {
        let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        self.distance_f64(x) <= tol * (1.0 + norm)
    }

    /// Intrinsic coordinates of an ambient point (valid up to the distance to
    /// the subspace).
    pub fn express_f64(&self, x: &[f64]) -> Vec<f64> {
        self.express_f64
            .iter()
            .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn express_exact(&self, x: &[Rat]) -> Option<Vec<Rat>> {
        let y: Vec<Rat> = self.express.iter().map(|row| dot(row, x)).collect();
        let back = self.embed_exact(&y);
        (back == x).then_some(y)
    }

    /// Ambient point with the given intrinsic coordinates: `Bᵀ y`.
    pub fn embed_exact(&self, y: &[Rat]) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.n];
        for (c, row) in y.iter().zip(&self.basis) {
            for (o, b) in out.iter_mut().zip(row) {
                *o = o.clone() + c * b;
            }
        }
        out
    }

    pub fn embed_f64(&self, y: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.n];
        for (c, row) in y.iter().zip(&self.basis_f64) {
            for (o, b) in out.iter_mut().zip(row) {
                *o += c * b;
            }
        }
        out
    }

    /// The subspace `{x|_coords : x in self}` of `ℝ^{coords}`.
    pub fn restrict(&self, coords: &[usize]) -> RationalSubspace {
        let rows: Vec<Vec<Rat>> = self
            .basis
            .iter()
            .map(|r| coords.iter().map(|&k| r[k].clone()).collect())
            .collect();
        RationalSubspace::from_rows(coords.len(), &rows).expect("restriction is well formed")
    }

    /// Whether the coordinate permutation `k → images[k]` maps the subspace
    /// onto itself.
    pub fn invariant_under(&self, images: &[usize]) -> bool {
        self.basis.iter().all(|row| {
            let mut permuted = vec![Rat::zero(); self.n];
            for (k, &img) in images.iter().enumerate() {
                permuted[img] = row[k].clone();
            }
            self.contains_exact(&permuted)
        })
    }

    /// Angle-vector membership in the subtorus: decides `θ ∈ S + 2πℤⁿ`.
    ///
    /// Because the integer points of `S` are saturated, the subtorus
    /// `{e^{iη} : η ∈ S}` is exactly the joint kernel of the characters
    /// attached to the integer annihilator of `S`, so the test is: every
    /// annihilator pairing `⟨θ, w⟩` is an integer multiple of 2π.
    pub fn phase_contains(&self, theta: &[f64], tol: f64) -> bool {
        assert_eq!(theta.len(), self.n);
        self.annihilator.iter().all(|w| {
            let mut acc = 0.0;
            let mut scale = 1.0;
            for (t, wi) in theta.iter().zip(w) {
                let wf = wi.to_f64().expect("annihilator entry fits f64");
                acc += t * wf;
                scale += wf.abs();
            }
            let turns = acc / (2.0 * std::f64::consts::PI);
            (turns - turns.round()).abs() <= tol * scale
        })
    }
}

// ---------------------------------------------------------------------------
// Torus lattices
// ---------------------------------------------------------------------------

/// Saturated integer lattice `Γ = t ∩ ℤⁿ` encoding a subtorus of the diagonal
/// torus, together with its real span.
#[derive(Debug, Clone)]
pub struct TorusLattice {
    n: usize,
    basis: Vec<Vec<Int>>,
    space: RationalSubspace,
}

impl TorusLattice {
    /// Build the lattice spanned by the given integer rows, canonicalized to
    /// the saturation `span ∩ ℤⁿ` in Hermite normal form.  Empty input gives
    /// the trivial torus.
    pub fn saturate(n: usize, rows: &[Vec<Int>]) -> Result<Self> {
        for r in rows {
            if r.len() != n {
                return Err(Error::Dimension(format!(
                    "lattice row has length {}, ambient dimension is {n}",
                    r.len()
                )));
            }
        }
        let basis = saturate_rows(rows, n);
        let rat_rows: Vec<Vec<Rat>> = basis
            .iter()
            .map(|r| r.iter().map(|x| Rat::from_integer(x.clone())).collect())
            .collect();
        let space = RationalSubspace::from_rows(n, &rat_rows)?;
        Ok(TorusLattice { n, basis, space })
    }

    /// Lattice of integer points of a rational span.
    pub fn from_rational_span(n: usize, rows: &[Vec<Rat>]) -> Result<Self> {
        let int_rows: Vec<Vec<Int>> = rows.iter().map(|r| primitive_integer(r)).collect();
        Self::saturate(n, &int_rows)
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Int>] {
        &self.basis
    }

    pub fn basis_f64(&self) -> Vec<Vec<f64>> {
        self.basis
            .iter()
            .map(|r| r.iter().map(|x| x.to_f64().expect("basis entry fits f64")).collect())
            .collect()
    }

    pub fn subspace(&self) -> &RationalSubspace {
        &self.space
    }

    /// Whether the permutation `k → images[k]` normalizes the torus.
    pub fn invariant_under(&self, images: &[usize]) -> bool {
        self.space.invariant_under(images)
    }

    /// Angle vector `2π Σ u_i b_i` of the point of the compact torus with the
    /// given coordinates in the fundamental cell `[0,1)^d`.
    pub fn cell_angles(&self, u: &[f64]) -> Vec<f64> {
        assert_eq!(u.len(), self.dim());
        let mut theta = vec![0.0; self.n];
        for (c, row) in u.iter().zip(self.basis_f64()) {
            for (t, b) in theta.iter_mut().zip(row) {
                *t += 2.0 * std::f64::consts::PI * c * b;
            }
        }
        theta
    }
}

/// Decides whether an angle vector lies on the compact torus: `θ ∈ t + 2πℤⁿ`
/// within `tol`.
pub fn phase_in_torus(torus: &TorusLattice, theta: &[f64], tol: f64) -> bool {
    torus.subspace().phase_contains(theta, tol)
}

/// Membership of a real vector in a subspace with tolerance; exact for
/// rational data via [`RationalSubspace::contains_exact`].
pub fn subspace_contains(space: &RationalSubspace, x: &[f64], tol: f64) -> bool {
    space.contains_f64(x, tol)
}

// ---------------------------------------------------------------------------
// Serde wire format
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct LatticeWire {
    n: usize,
    basis: Vec<Vec<i64>>,
}

impl Serialize for TorusLattice {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let wire = LatticeWire {
            n: self.n,
            basis: self
                .basis
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|x| x.to_i64().expect("lattice entry fits i64 on the wire"))
                        .collect()
                })
                .collect(),
        };
        wire.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for TorusLattice {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let wire = LatticeWire::deserialize(de)?;
        let rows: Vec<Vec<Int>> = wire
            .basis
            .iter()
            .map(|r| r.iter().map(|&x| Int::from(x)).collect())
            .collect();
        TorusLattice::saturate(wire.n, &rows).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn iv(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| Int::from(x)).collect()
    }

    #[test]
    fn saturation_divides_content() {
        let t = TorusLattice::saturate(2, &[iv(&[2, 2])]).unwrap();
        assert_eq!(t.basis(), &[iv(&[1, 1])]);
    }

    #[test]
    fn saturation_identity_case() {
        let t = TorusLattice::saturate(2, &[iv(&[1, 0]), iv(&[0, 1])]).unwrap();
        assert_eq!(t.basis(), &[iv(&[1, 0]), iv(&[0, 1])]);
    }

    #[test]
    fn saturation_of_diagonal_multiples() {
        // Independent oracle: every small integer point of the span must lie in
        // the returned lattice, and the returned basis must lie in the span.
        let t = TorusLattice::saturate(2, &[iv(&[2, 0]), iv(&[0, 3])]).unwrap();
        assert_eq!(t.basis(), &[iv(&[1, 0]), iv(&[0, 1])]);
        for x in -4i64..=4 {
            for y in -4i64..=4 {
                // span is all of ℝ², so each point must be a ℤ-combination of
                // the basis; with the HNF identity basis that is immediate.
                let p = [Rat::from_integer(x.into()), Rat::from_integer(y.into())];
                assert!(t.subspace().contains_exact(&p));
            }
        }
    }

    #[test]
    fn saturate_is_idempotent() {
        for rows in [
            vec![iv(&[2, 4, 6])],
            vec![iv(&[3, 0, 1]), iv(&[0, 2, 2])],
            vec![iv(&[1, -1, 0]), iv(&[0, 2, -2])],
        ] {
            let once = TorusLattice::saturate(3, &rows).unwrap();
            let twice = TorusLattice::saturate(3, once.basis()).unwrap();
            assert_eq!(once.basis(), twice.basis());
        }
    }

    #[test]
    fn trivial_torus() {
        let t = TorusLattice::saturate(2, &[]).unwrap();
        assert_eq!(t.dim(), 0);
        assert!(!phase_in_torus(&t, &[0.1, 0.0], 1e-9));
        assert!(phase_in_torus(&t, &[2.0 * PI, 0.0], 1e-9));
    }

    #[test]
    fn subspace_membership() {
        let s = RationalSubspace::from_rows(
            2,
            &[vec![Rat::from_integer(1.into()), Rat::from_integer(1.into())]],
        )
        .unwrap();
        assert!(s.contains_exact(&[Rat::from_integer(3.into()), Rat::from_integer(3.into())]));
        assert!(!s.contains_f64(&[1.0, -1.0], 1e-9));
        let l2 = (2.0f64).ln();
        let anti = RationalSubspace::from_rows(
            2,
            &[vec![Rat::from_integer(1.into()), Rat::from_integer((-1).into())]],
        )
        .unwrap();
        assert!(anti.contains_f64(&[l2, -l2], 1e-12));
    }

    #[test]
    fn projection_is_idempotent_and_symmetric() {
        let s = RationalSubspace::from_rows(
            3,
            &[
                vec![Rat::new(1.into(), 2.into()), Rat::from_integer(1.into()), Rat::zero()],
                vec![Rat::zero(), Rat::from_integer(1.into()), Rat::from_integer(3.into())],
            ],
        )
        .unwrap();
        let p = s.projection().to_vec();
        let pp = linalg::mat_mul(&p, &p);
        assert_eq!(p, pp);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(p[i][j], p[j][i]);
            }
        }
    }

    #[test]
    fn phase_on_antidiagonal_torus() {
        // θ = (π, π) reaches span(1,-1) after subtracting 2π·(1,0):
        // (π−2π, π) = −π·(1,−1).
        let t = TorusLattice::saturate(2, &[iv(&[1, -1])]).unwrap();
        assert!(phase_in_torus(&t, &[PI, PI], 1e-9));
        assert!(!phase_in_torus(&t, &[PI, PI + 0.3], 1e-9));
        // Full torus accepts everything.
        let full = TorusLattice::saturate(2, &[iv(&[1, 0]), iv(&[0, 1])]).unwrap();
        assert!(phase_in_torus(&full, &[0.37, -2.1], 1e-9));
    }

    #[test]
    fn phase_respects_skewed_lattices() {
        // Γ = span(1,7): the nearest admissible integer offset can be far from
        // the origin, which the character test handles without any search.
        let t = TorusLattice::saturate(2, &[iv(&[1, 7])]).unwrap();
        let m = [0.0, 3.0];
        let p = t.subspace().project_f64(&m);
        let theta: Vec<f64> = m.iter().zip(&p).map(|(a, b)| 2.0 * PI * (a - b)).collect();
        assert!(phase_in_torus(&t, &theta, 1e-9));
        let mut off = theta.clone();
        off[0] += 0.05;
        assert!(!phase_in_torus(&t, &off, 1e-9));
    }

    #[test]
    fn integer_kernel_basics() {
        let k = integer_kernel(&[iv(&[2, 2])], 2);
        assert_eq!(k, vec![iv(&[1, -1])]);
        let k2 = integer_kernel(&[iv(&[1, 2, 3])], 3);
        assert_eq!(k2.len(), 2);
        for w in &k2 {
            assert!(w[0].clone() + w[1].clone() * 2 + w[2].clone() * 3 == Int::zero());
        }
    }

    #[test]
    fn lattice_json_round_trip() {
        let t = TorusLattice::saturate(3, &[iv(&[1, -1, 0]), iv(&[0, 1, -1])]).unwrap();
        let js = serde_json::to_string(&t).unwrap();
        let back: TorusLattice = serde_json::from_str(&js).unwrap();
        assert_eq!(t.basis(), back.basis());
    }
}
