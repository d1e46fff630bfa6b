//! Dense exact linear algebra over an ordered field, generic in the scalar.
//!
//! Everything here is textbook Gaussian elimination at desk scale (dimensions
//! below ten, row counts below a hundred).  The scalar is any ordered field
//! exposed through `num-traits`; the crate instantiates it at [`crate::Rat`]
//! for all lattice and cone work and at `f64` in a few numeric cross-checks.

use num_traits::Signed;

/// Ordered-field scalar.  `num_traits::Signed` bundles the ring and sign
/// operations; `PartialOrd` gives pivot comparisons.
pub trait Scalar: Clone + PartialOrd + Signed + std::fmt::Debug {}
impl<T: Clone + PartialOrd + Signed + std::fmt::Debug> Scalar for T {}

pub fn dot<S: Scalar>(a: &[S], b: &[S]) -> S {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = S::zero();
    for (x, y) in a.iter().zip(b) {
        acc = acc + x.clone() * y.clone();
    }
    acc
}

pub fn mat_vec<S: Scalar>(a: &[Vec<S>], x: &[S]) -> Vec<S> {
    a.iter().map(|row| dot(row, x)).collect()
}

pub fn transpose<S: Scalar>(a: &[Vec<S>], cols: usize) -> Vec<Vec<S>> {
    let mut out = vec![Vec::with_capacity(a.len()); cols];
    for row in a {
        debug_assert_eq!(row.len(), cols);
        for (j, v) in row.iter().enumerate() {
            out[j].push(v.clone());
        }
    }
    out
}

pub fn mat_mul<S: Scalar>(a: &[Vec<S>], b: &[Vec<S>]) -> Vec<Vec<S>> {
    let cols = if b.is_empty() { 0 } else { b[0].len() };
    let bt = transpose(b, cols);
    a.iter()
        .map(|row| bt.iter().map(|col| dot(row, col)).collect())
        .collect()
}

pub fn scale<S: Scalar>(v: &[S], c: &S) -> Vec<S> {
    v.iter().map(|x| x.clone() * c.clone()).collect()
}

pub fn add<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    a.iter().zip(b).map(|(x, y)| x.clone() + y.clone()).collect()
}

pub fn sub<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    a.iter().zip(b).map(|(x, y)| x.clone() - y.clone()).collect()
}

pub fn is_zero_vec<S: Scalar>(v: &[S]) -> bool {
    v.iter().all(|x| x.is_zero())
}

/// Reduced row echelon form.  Returns the echelon rows (zero rows dropped) and
/// the pivot column of each row.  Pivot choice is the first nonzero entry, so
/// the result is canonical for a given row span.
pub fn rref<S: Scalar>(rows: &[Vec<S>]) -> (Vec<Vec<S>>, Vec<usize>) {
    let mut work: Vec<Vec<S>> = rows.to_vec();
    let cols = work.first().map_or(0, |r| r.len());
    let mut pivots: Vec<usize> = Vec::new();
    let mut done: Vec<Vec<S>> = Vec::new();

    for col in 0..cols {
        let Some(pos) = work.iter().position(|r| !r[col].is_zero()) else {
            continue;
        };
        let mut pivot_row = work.swap_remove(pos);
        let inv = pivot_row[col].clone();
        for v in pivot_row.iter_mut() {
            *v = v.clone() / inv.clone();
        }
        for r in work.iter_mut() {
            if !r[col].is_zero() {
                let f = r[col].clone();
                for (x, p) in r.iter_mut().zip(&pivot_row) {
                    *x = x.clone() - f.clone() * p.clone();
                }
            }
        }
        for r in done.iter_mut() {
            if !r[col].is_zero() {
                let f = r[col].clone();
                for (x, p) in r.iter_mut().zip(&pivot_row) {
                    *x = x.clone() - f.clone() * p.clone();
                }
            }
        }
        done.push(pivot_row);
        pivots.push(col);
        if work.is_empty() {
            break;
        }
    }
    (done, pivots)
}

pub fn rank<S: Scalar>(rows: &[Vec<S>]) -> usize {
    rref(rows).0.len()
}

/// Canonical basis of the row space (RREF rows).
pub fn row_space_basis<S: Scalar>(rows: &[Vec<S>]) -> Vec<Vec<S>> {
    rref(rows).0
}

/// Basis of the right kernel `{x : A x = 0}`.
pub fn kernel_basis<S: Scalar>(a: &[Vec<S>], cols: usize) -> Vec<Vec<S>> {
    let (ech, pivots) = rref(a);
    let mut basis = Vec::new();
    let pivot_set: Vec<Option<usize>> = {
        let mut v = vec![None; cols];
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = Some(i);
        }
        v
    };
    for free in 0..cols {
        if pivot_set[free].is_some() {
            continue;
        }
        let mut x = vec![S::zero(); cols];
        x[free] = S::one();
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = -ech[i][free].clone();
        }
        basis.push(x);
    }
    basis
}

/// One solution of `A x = b`, when the system is consistent.
pub fn solve<S: Scalar>(a: &[Vec<S>], b: &[S]) -> Option<Vec<S>> {
    let cols = a.first().map_or(0, |r| r.len());
    let augmented: Vec<Vec<S>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let (ech, pivots) = rref(&augmented);
    let mut x = vec![S::zero(); cols];
    for (row, &p) in ech.iter().zip(&pivots) {
        if p == cols {
            return None; // pivot in the rhs column: inconsistent
        }
        x[p] = row[cols].clone();
    }
    Some(x)
}

/// Inverse of a square matrix, or `None` if singular.
pub fn invert<S: Scalar>(a: &[Vec<S>]) -> Option<Vec<Vec<S>>> {
    let n = a.len();
    let augmented: Vec<Vec<S>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            debug_assert_eq!(row.len(), n);
            let mut r = row.clone();
            for j in 0..n {
                r.push(if i == j { S::one() } else { S::zero() });
            }
            r
        })
        .collect();
    let (ech, pivots) = rref(&augmented);
    if ech.len() < n || pivots.iter().any(|&p| p >= n) {
        return None;
    }
    // RREF left block is the identity with pivots in column order.
    let mut inv = vec![vec![S::zero(); n]; n];
    for (row, &p) in ech.iter().zip(&pivots) {
        inv[p] = row[n..].to_vec();
    }
    Some(inv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rat;
    use num_traits::{One, Zero};

    fn q(n: i64, d: i64) -> Rat {
        Rat::new(n.into(), d.into())
    }

    fn qv(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| q(x, 1)).collect()
    }

    #[test]
    fn rank_and_kernel() {
        let a = vec![qv(&[1, 2, 3]), qv(&[2, 4, 6]), qv(&[0, 1, 1])];
        assert_eq!(rank(&a), 2);
        let k = kernel_basis(&a, 3);
        assert_eq!(k.len(), 1);
        for row in &a {
            assert!(dot(row, &k[0]).is_zero());
        }
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let a = vec![qv(&[1, 1]), qv(&[1, -1])];
        let x = solve(&a, &qv(&[3, 1])).unwrap();
        assert_eq!(x, vec![q(2, 1), q(1, 1)]);
        let bad = vec![qv(&[1, 1]), qv(&[2, 2])];
        assert!(solve(&bad, &qv(&[1, 3])).is_none());
    }

    #[test]
    fn invert_round_trip() {
        let a = vec![qv(&[2, 1]), qv(&[1, 1])];
        let inv = invert(&a).unwrap();
        let prod = mat_mul(&a, &inv);
        assert!(prod[0][0].is_one() && prod[1][1].is_one());
        assert!(prod[0][1].is_zero() && prod[1][0].is_zero());
        assert!(invert(&[qv(&[1, 2]), qv(&[2, 4])]).is_none());
    }
}
