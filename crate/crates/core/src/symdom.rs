//! Hulls of isotropy orbits of bounded symmetric domains at the level of the
//! computable invariants: products of the largest coordinate moduli on the
//! polydisc, products of the largest singular values on matrix domains,
//! operator norms of exterior powers, and the adjoint-representation
//! realization of those invariants on the product algebra sl(2,ℝ)ⁿ.

use nalgebra::{Complex, DMatrix};
use serde::Serialize;

use crate::hull::MembershipStatus;
use crate::{C64, Error, Result};

/// Default comparison tolerance for the singular-value inequalities.
pub const MU_TOL: f64 = 1e-9;

/// `μ_k`: product of the `k` largest coordinate moduli.
pub fn mu_polydisc(z: &[C64], k: usize) -> Result<f64> {
    if k == 0 || k > z.len() {
        return Err(Error::OutOfRange(format!(
            "k = {k} outside 1..={} for the polydisc invariant",
            z.len()
        )));
    }
    let mut mods: Vec<f64> = z.iter().map(|c| c.norm()).collect();
    mods.sort_by(|a, b| b.partial_cmp(a).expect("finite moduli"));
    Ok(mods[..k].iter().product())
}

/// `μ_k` on a matrix domain: product of the `k` largest singular values.
pub fn mu_matrix(rows: &[Vec<C64>], k: usize) -> Result<f64> {
    let (p, q) = matrix_shape(rows)?;
    let rank = p.min(q);
    if k == 0 || k > rank {
        return Err(Error::OutOfRange(format!(
            "k = {k} outside 1..={rank} for a {p}×{q} matrix"
        )));
    }
    let sv = singular_values(rows);
    Ok(sv[..k].iter().product())
}

/// All singular values, descending.
pub fn singular_values(rows: &[Vec<C64>]) -> Vec<f64> {
    let p = rows.len();
    let q = rows.first().map_or(0, |r| r.len());
    let m = DMatrix::from_fn(p, q, |i, j| Complex::new(rows[i][j].re, rows[i][j].im));
    let mut sv: Vec<f64> = m.svd(false, false).singular_values.iter().copied().collect();
    sv.sort_by(|a, b| b.partial_cmp(a).expect("finite singular values"));
    sv
}

fn matrix_shape(rows: &[Vec<C64>]) -> Result<(usize, usize)> {
    let p = rows.len();
    if p == 0 {
        return Err(Error::Dimension("empty matrix".into()));
    }
    let q = rows[0].len();
    if q == 0 || rows.iter().any(|r| r.len() != q) {
        return Err(Error::Dimension("ragged or empty matrix rows".into()));
    }
    Ok((p, q))
}

/// One `μ_k(z) vs μ_k(v)` comparison.
#[derive(Debug, Clone, Serialize)]
pub struct MuComparison {
    pub k: usize,
    pub mu_point: f64,
    pub mu_base: f64,
}

/// Verdict from the chain of singular-value-product inequalities.
#[derive(Debug, Clone, Serialize)]
pub struct SingularVerdict {
    pub status: MembershipStatus,
    pub comparisons: Vec<MuComparison>,
    /// Smallest violated index (1-based), for `Outside`.
    pub violated: Option<usize>,
    /// Indices tight within tolerance.
    pub tight: Vec<usize>,
    pub tol: f64,
}

fn verdict_from_mus(mus: Vec<MuComparison>, tol: f64) -> SingularVerdict {
    let mut violated = None;
    let mut tight = Vec::new();
    for c in &mus {
        let scale = 1.0 + c.mu_base.abs();
        if c.mu_point > c.mu_base + tol * scale {
            violated.get_or_insert(c.k);
        } else if (c.mu_point - c.mu_base).abs() <= tol * scale {
            tight.push(c.k);
        }
    }
    let status = if violated.is_some() {
        MembershipStatus::Outside
    } else if tight.is_empty() {
        MembershipStatus::Inside
    } else {
        MembershipStatus::Boundary
    };
    SingularVerdict {
        status,
        comparisons: mus,
        violated,
        tight,
        tol,
    }
}

/// Membership of `z` in the hull of the polydisc isotropy orbit of `v`:
/// `μ_k(z) ≤ μ_k(v)` for every `k`.
pub fn member_polydisc(z: &[C64], v: &[C64], tol: f64) -> Result<SingularVerdict> {
    if z.len() != v.len() {
        return Err(Error::Dimension("point and base point must have equal length".into()));
    }
    let n = z.len();
    let mus = (1..=n)
        .map(|k| {
            Ok(MuComparison {
                k,
                mu_point: mu_polydisc(z, k)?,
                mu_base: mu_polydisc(v, k)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(verdict_from_mus(mus, tol))
}

/// Membership for a matrix domain: the rank-many singular-value-product
/// inequalities.
pub fn member_symdom(z: &[Vec<C64>], v: &[Vec<C64>], tol: f64) -> Result<SingularVerdict> {
    let sz = matrix_shape(z)?;
    let sv = matrix_shape(v)?;
    if sz != sv {
        return Err(Error::Dimension(format!(
            "matrix shapes differ: {}×{} vs {}×{}",
            sz.0, sz.1, sv.0, sv.1
        )));
    }
    let rank = sz.0.min(sz.1);
    let mus = (1..=rank)
        .map(|k| {
            Ok(MuComparison {
                k,
                mu_point: mu_matrix(z, k)?,
                mu_base: mu_matrix(v, k)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(verdict_from_mus(mus, tol))
}

// ---------------------------------------------------------------------------
// Exterior powers
// ---------------------------------------------------------------------------

/// Operator norm of the `k`-th exterior power of a symmetric nonnegative
/// operator: the product of its `k` largest eigenvalues.  The input is
/// symmetrized internally; see [`symmetry_defect`] for the asymmetry measure.
pub fn exterior_power_norm(rows: &[Vec<f64>], k: usize) -> Result<f64> {
    let m = rows.len();
    if m == 0 || rows.iter().any(|r| r.len() != m) {
        return Err(Error::Dimension("expected a square matrix".into()));
    }
    if k == 0 || k > m {
        return Err(Error::OutOfRange(format!("k = {k} outside 1..={m}")));
    }
    let a = DMatrix::from_fn(m, m, |i, j| (rows[i][j] + rows[j][i]) / 2.0);
    let mut eig: Vec<f64> = a.symmetric_eigen().eigenvalues.iter().copied().collect();
    eig.sort_by(|a, b| b.partial_cmp(a).expect("finite eigenvalues"));
    Ok(eig[..k].iter().product())
}

/// Largest absolute entry difference `|a_ij − a_ji|`.
pub fn symmetry_defect(rows: &[Vec<f64>]) -> f64 {
    let m = rows.len();
    let mut worst: f64 = 0.0;
    for i in 0..m {
        for j in 0..m {
            worst = worst.max((rows[i][j] - rows[j][i]).abs());
        }
    }
    worst
}

/// Explicit `k`-th compound matrix: entries are the `k×k` minors over sorted
/// index subsets.  This is the independent route to the exterior-power norm
/// (its spectral norm).
pub fn compound_matrix(rows: &[Vec<f64>], k: usize) -> Result<Vec<Vec<f64>>> {
    let m = rows.len();
    if m == 0 || rows.iter().any(|r| r.len() != m) {
        return Err(Error::Dimension("expected a square matrix".into()));
    }
    if k == 0 || k > m {
        return Err(Error::OutOfRange(format!("k = {k} outside 1..={m}")));
    }
    let subsets = k_subsets(m, k);
    let dim = subsets.len();
    let mut out = vec![vec![0.0; dim]; dim];
    for (a, rows_idx) in subsets.iter().enumerate() {
        for (b, cols_idx) in subsets.iter().enumerate() {
            let minor = DMatrix::from_fn(k, k, |i, j| rows[rows_idx[i]][cols_idx[j]]);
            out[a][b] = minor.determinant();
        }
    }
    Ok(out)
}

/// Spectral norm (largest singular value) of a real matrix.
pub fn spectral_norm(rows: &[Vec<f64>]) -> f64 {
    let p = rows.len();
    let q = rows.first().map_or(0, |r| r.len());
    let m = DMatrix::from_fn(p, q, |i, j| rows[i][j]);
    m.svd(false, false)
        .singular_values
        .iter()
        .copied()
        .fold(0.0, f64::max)
}

fn k_subsets(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn rec(start: usize, m: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for i in start..m {
            current.push(i);
            rec(i + 1, m, k, current, out);
            current.pop();
        }
    }
    rec(0, m, k, &mut current, &mut out);
    out
}

// ---------------------------------------------------------------------------
// The product algebra sl(2,ℝ)ⁿ
// ---------------------------------------------------------------------------

/// `sl(2,ℝ)ⁿ` in the block basis `{h, u = e+f, w = e−f}` per factor, taken
/// orthonormal.  The distinguished element is `𝗄 = Σ w_b / 2`, whose adjoint
/// map has eigenvalues `0, ±i` and squares to `−1` on each block's `(h, u)`
/// plane, so it is the complex structure of the Cartan-type subspace
/// `span{u_b, h_b}`.
#[derive(Debug, Clone)]
pub struct Sl2Product {
    n: usize,
}

/// Result of the operator-norm invariant on the product algebra.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct PkValue {
    pub value: f64,
    /// Set when the base point was identically zero (the operator vanishes).
    pub degenerate: bool,
}

impl Sl2Product {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "at least one block");
        Sl2Product { n }
    }

    pub fn blocks(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        3 * self.n
    }

    /// Coefficients of `𝗄` in the block basis.
    pub fn k_element(&self) -> Vec<f64> {
        let mut k = vec![0.0; self.dim()];
        for b in 0..self.n {
            k[3 * b + 2] = 0.5;
        }
        k
    }

    /// Adjoint matrix of an element given by basis coefficients.
    ///
    /// Block brackets: `[h,u] = 2w`, `[h,w] = 2u`, `[u,w] = −2h`; distinct
    /// blocks commute.
    pub fn ad(&self, x: &[f64]) -> DMatrix<f64> {
        assert_eq!(x.len(), self.dim());
        let mut m = DMatrix::zeros(self.dim(), self.dim());
        for b in 0..self.n {
            let (ih, iu, iw) = (3 * b, 3 * b + 1, 3 * b + 2);
            let (xh, xu, xw) = (x[ih], x[iu], x[iw]);
            // column images of the basis vectors under [x, ·]
            m[(iu, ih)] = -2.0 * xw;
            m[(iw, ih)] = -2.0 * xu;
            m[(ih, iu)] = 2.0 * xw;
            m[(iw, iu)] = 2.0 * xh;
            m[(ih, iw)] = -2.0 * xu;
            m[(iu, iw)] = 2.0 * xh;
        }
        m
    }

    /// Embed `2n` Cartan-space coordinates, interleaved as
    /// `[u_0, h_0, u_1, h_1, …]`, into the algebra.  The pair `(u_b, h_b)` is
    /// the real/imaginary part of one complex block coordinate for the
    /// complex structure `ad(𝗄)`.
    pub fn embed_cartan(&self, v: &[f64]) -> Result<Vec<f64>> {
        if v.len() != 2 * self.n {
            return Err(Error::Dimension(format!(
                "expected {} Cartan coordinates, got {}",
                2 * self.n,
                v.len()
            )));
        }
        let mut x = vec![0.0; self.dim()];
        for b in 0..self.n {
            x[3 * b + 1] = v[2 * b];
            x[3 * b] = v[2 * b + 1];
        }
        Ok(x)
    }

    /// Moduli of the complex block coordinates.
    pub fn block_norms(&self, v: &[f64]) -> Result<Vec<f64>> {
        if v.len() != 2 * self.n {
            return Err(Error::Dimension("wrong Cartan coordinate count".into()));
        }
        Ok((0..self.n)
            .map(|b| (v[2 * b] * v[2 * b] + v[2 * b + 1] * v[2 * b + 1]).sqrt())
            .collect())
    }

    /// The operator `a(v) = ad([v,[v,𝗄]]) · π(v) · ad(𝗄)` with `π(v)` the
    /// spectral projection onto the kernel of `ad(v)`.
    pub fn a_operator(&self, v: &[f64]) -> Result<DMatrix<f64>> {
        let x = self.embed_cartan(v)?;
        let ad_v = self.ad(&x);
        let k = self.k_element();
        let ad_k = self.ad(&k);

        // π(v): ad(v) is symmetric on the orthonormal block basis for Cartan
        // elements, so the kernel projection comes from its eigendecomposition
        // with a relative threshold.
        let eig = ad_v.clone().symmetric_eigen();
        let scale: f64 = eig.eigenvalues.iter().fold(0.0f64, |a, &l| a.max(l.abs()));
        let threshold = 1e-8 * scale.max(1.0);
        let dim = self.dim();
        let mut projector = DMatrix::zeros(dim, dim);
        for (i, &lambda) in eig.eigenvalues.iter().enumerate() {
            if lambda.abs() <= threshold {
                let q = eig.eigenvectors.column(i);
                projector += q * q.transpose();
            }
        }

        // [v, [v, 𝗄]] through coefficient vectors.
        let k_vec = nalgebra::DVector::from_vec(k);
        let inner = &ad_v * k_vec;
        let outer = &ad_v * inner;
        let ad_bracket = self.ad(outer.as_slice());
        Ok(ad_bracket * projector * ad_k)
    }

    /// `p_k(v)`: product of the `k` largest singular values of `a(v)`.
    ///
    /// Requires distinct nonzero block norms (the projection is otherwise
    /// ill-conditioned); the zero point returns 0 with the degenerate flag.
    pub fn p_k(&self, v: &[f64], k: usize) -> Result<PkValue> {
        if k == 0 || k > self.n {
            return Err(Error::OutOfRange(format!("k = {k} outside 1..={}", self.n)));
        }
        let norms = self.block_norms(v)?;
        if norms.iter().all(|&x| x == 0.0) {
            return Ok(PkValue {
                value: 0.0,
                degenerate: true,
            });
        }
        let scale = norms.iter().fold(0.0f64, |a, &b| a.max(b));
        for (b, &nb) in norms.iter().enumerate() {
            if nb <= 1e-12 * scale {
                return Err(Error::Degenerate(format!("block {b} has zero norm")));
            }
            for (c, &nc) in norms.iter().enumerate().take(b) {
                if (nb - nc).abs() <= 1e-9 * scale {
                    return Err(Error::Degenerate(format!(
                        "blocks {c} and {b} collide at norm {nb}"
                    )));
                }
            }
        }
        let a = self.a_operator(v)?;
        let mut sv: Vec<f64> = a.svd(false, false).singular_values.iter().copied().collect();
        sv.sort_by(|x, y| y.partial_cmp(x).expect("finite"));
        Ok(PkValue {
            value: sv[..k].iter().product(),
            degenerate: false,
        })
    }
}
