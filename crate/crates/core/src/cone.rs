//! The recession cone of a torus and its limit idempotents.
//!
//! For a torus with log-space `t ⊆ ℝⁿ`, the directions `ξ ∈ t` along which
//! `exp(τξ)` stays bounded as `τ → +∞` form the polyhedral cone
//! `C = t ∩ clos(−ℝⁿ₊)`.  Each face of `C` produces a 0/1 diagonal projection
//! `lim exp(τξ)` (`ξ` in the relative interior), and these limits form a
//! finite abelian semigroup in bijection with the face lattice.

use num_traits::{Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::Serialize;

use crate::dd;
use crate::linalg;
use crate::ratlin::{primitive_integer, RationalSubspace, TorusLattice};
use crate::{Int, Rat};

/// Polyhedral cone inside a rational subspace, with both representations.
///
/// The cone is `{x ∈ ambient : ⟨x,h⟩ ≤ 0 ∀h ∈ halfspaces, ⟨x,e⟩ = 0 ∀e ∈ equations}`
/// and equals `cone(rays)`.  Normals are stored as primitive integer vectors
/// lying in the ambient subspace (the canonical representative of the
/// functional).
#[derive(Debug, Clone)]
pub struct PolyCone {
    ambient: RationalSubspace,
    rays: Vec<Vec<Int>>,
    halfspaces: Vec<Vec<Int>>,
    equations: Vec<Vec<Int>>,
}

/// A face of a polyhedral cone, as the set of extreme rays it contains.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub rays: Vec<usize>,
    pub dim: usize,
}

/// The limit projections `{lim_{τ→∞} exp(τξ) : ξ ∈ C}`, one per face of `C`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdempotentSet {
    /// Distinct 0/1 vectors, sorted descending so the identity comes first.
    pub elements: Vec<Vec<u8>>,
    /// `face_map[i]` is the index into `elements` for the `i`-th face.
    pub face_map: Vec<usize>,
}

impl PolyCone {
    pub fn ambient(&self) -> &RationalSubspace {
        &self.ambient
    }

    /// Extreme rays as primitive integer vectors in ambient coordinates.
    pub fn rays(&self) -> &[Vec<Int>] {
        &self.rays
    }

    pub fn halfspaces(&self) -> &[Vec<Int>] {
        &self.halfspaces
    }

    pub fn equations(&self) -> &[Vec<Int>] {
        &self.equations
    }

    pub fn is_zero(&self) -> bool {
        self.rays.is_empty()
    }

    pub fn dim(&self) -> usize {
        let rat_rays: Vec<Vec<Rat>> = self
            .rays
            .iter()
            .map(|r| r.iter().map(|x| Rat::from_integer(x.clone())).collect())
            .collect();
        linalg::rank(&rat_rays)
    }

    pub fn rays_f64(&self) -> Vec<Vec<f64>> {
        self.rays
            .iter()
            .map(|r| r.iter().map(|x| x.to_f64().expect("ray entry fits f64")).collect())
            .collect()
    }

    /// Intrinsic coordinates of the rays in the ambient subspace basis.
    pub fn rays_intrinsic(&self) -> Vec<Vec<Rat>> {
        self.rays
            .iter()
            .map(|r| {
                let ambient: Vec<Rat> = r.iter().map(|x| Rat::from_integer(x.clone())).collect();
                self.ambient
                    .express_exact(&ambient)
                    .expect("ray lies in the ambient subspace")
            })
            .collect()
    }
}

/// Recession cone `t ∩ clos(−ℝⁿ₊)` of the torus, extreme rays exact.
pub fn recession_cone(torus: &TorusLattice) -> PolyCone {
    let space = torus.subspace().clone();
    let n = space.ambient_dim();
    let d = space.dim();

    // In intrinsic coordinates x = Bᵀy the constraint x_k ≤ 0 reads
    // ⟨y, column_k(B)⟩ ≤ 0: the constraint normals are the weights of the
    // torus action, which is the duality between the recession cone and the
    // weight cone.
    let cols: Vec<Vec<Rat>> = (0..n)
        .map(|k| space.basis().iter().map(|row| row[k].clone()).collect())
        .collect();
    let gens = dd::extreme_rays(d, &cols, &[]);
    assert!(
        gens.lines.is_empty(),
        "recession cone sits inside a closed orthant, hence is pointed"
    );
    let mut rays: Vec<Vec<Int>> = gens
        .rays
        .iter()
        .map(|y| {
            let ambient = space.embed_exact(y);
            let prim = primitive_integer(&ambient);
            debug_assert!(prim.iter().all(|x| !x.is_positive()));
            prim
        })
        .collect();
    rays.sort();

    // H-representation within the subspace: polar of the ray set, computed in
    // intrinsic coordinates and lifted back to canonical ambient functionals.
    let ray_rows: Vec<Vec<Rat>> = rays
        .iter()
        .map(|r| {
            let ambient: Vec<Rat> = r.iter().map(|x| Rat::from_integer(x.clone())).collect();
            space.express_exact(&ambient).expect("ray lies in the subspace")
        })
        .collect();
    let polar = dd::extreme_rays(d, &ray_rows, &[]);
    let to_ambient = |a: &Vec<Rat>| -> Vec<Int> { primitive_integer(&functional_ambient(&space, a)) };
    let mut halfspaces: Vec<Vec<Int>> = polar.rays.iter().map(to_ambient).collect();
    let mut equations: Vec<Vec<Int>> = polar.lines.iter().map(to_ambient).collect();
    halfspaces.sort();
    equations.sort();

    PolyCone {
        ambient: space,
        rays,
        halfspaces,
        equations,
    }
}

/// In-subspace ambient representative of an intrinsic functional `a`:
/// the vector `s ∈ span` with `⟨Bᵀy, s⟩ = ⟨y, a⟩` for all `y`.
/// That is `s = expressᵀ a` with `express = (BBᵀ)⁻¹B`.
pub(crate) fn functional_ambient(space: &RationalSubspace, a: &[Rat]) -> Vec<Rat> {
    let n = space.ambient_dim();
    assert_eq!(a.len(), space.dim());
    let mut s = vec![Rat::zero(); n];
    for (coef, row) in a.iter().zip(space.express_rows()) {
        for (o, e) in s.iter_mut().zip(row) {
            *o = o.clone() + coef * e;
        }
    }
    s
}

/// All faces of a pointed cone, each as its set of extreme-ray indices,
/// ordered by dimension.  Faces are cut out by active subsets of the
/// coordinate constraints `x_k ≤ 0`, so subsets of `{1..n}` enumerate them
/// all; signatures deduplicate.
pub fn face_lattice(cone: &PolyCone) -> Vec<Face> {
    let n = cone.ambient.ambient_dim();
    assert!(n <= 16, "face enumeration by active sets is meant for small n");
    let rays = cone.rays();
    let mut seen: Vec<Vec<usize>> = Vec::new();
    for mask in 0u32..(1 << n) {
        let members: Vec<usize> = (0..rays.len())
            .filter(|&i| (0..n).all(|k| mask & (1 << k) == 0 || rays[i][k].is_zero()))
            .collect();
        if !seen.contains(&members) {
            seen.push(members);
        }
    }
    let mut faces: Vec<Face> = seen
        .into_iter()
        .map(|members| {
            let rat_rays: Vec<Vec<Rat>> = members
                .iter()
                .map(|&i| rays[i].iter().map(|x| Rat::from_integer(x.clone())).collect())
                .collect();
            Face {
                dim: linalg::rank(&rat_rays),
                rays: members,
            }
        })
        .collect();
    faces.sort_by(|a, b| a.dim.cmp(&b.dim).then_with(|| a.rays.cmp(&b.rays)));
    faces
}

/// The idempotent attached to a face: coordinate `k` survives the limit iff
/// every ray of the face vanishes there.
fn idempotent_of_face(cone: &PolyCone, face: &Face) -> Vec<u8> {
    let n = cone.ambient.ambient_dim();
    (0..n)
        .map(|k| {
            let all_zero = face.rays.iter().all(|&i| cone.rays[i][k].is_zero());
            u8::from(all_zero)
        })
        .collect()
}

/// The limit idempotents of the torus, one per face of its recession cone.
pub fn limit_idempotents(cone: &PolyCone) -> IdempotentSet {
    let faces = face_lattice(cone);
    let mut elements: Vec<Vec<u8>> = Vec::new();
    let mut face_map = Vec::with_capacity(faces.len());
    for f in &faces {
        let iota = idempotent_of_face(cone, f);
        let idx = match elements.iter().position(|e| e == &iota) {
            Some(i) => i,
            None => {
                elements.push(iota);
                elements.len() - 1
            }
        };
        face_map.push(idx);
    }
    debug_assert_eq!(
        elements.len(),
        faces.len(),
        "faces correspond one-to-one to idempotents"
    );
    // Canonical order: identity first, then descending.
    let mut order: Vec<usize> = (0..elements.len()).collect();
    order.sort_by(|&a, &b| elements[b].cmp(&elements[a]));
    let rank_of: Vec<usize> = {
        let mut r = vec![0; order.len()];
        for (new_idx, &old_idx) in order.iter().enumerate() {
            r[old_idx] = new_idx;
        }
        r
    };
    IdempotentSet {
        elements: order.iter().map(|&i| elements[i].clone()).collect(),
        face_map: face_map.into_iter().map(|i| rank_of[i]).collect(),
    }
}

impl IdempotentSet {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, iota: &[u8]) -> bool {
        self.elements.iter().any(|e| e == iota)
    }

    /// Supports of the idempotents as sorted coordinate lists.
    pub fn supports(&self) -> Vec<Vec<usize>> {
        self.elements
            .iter()
            .map(|e| e.iter().enumerate().filter(|(_, &v)| v == 1).map(|(k, _)| k).collect())
            .collect()
    }
}

impl Serialize for PolyCone {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        // Exact data on the wire: entries as fraction strings.
        let to_strings = |rows: &Vec<Vec<Int>>| -> Vec<Vec<String>> {
            rows.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect()
        };
        let basis_strings: Vec<Vec<String>> = self
            .ambient
            .basis()
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect())
            .collect();
        let mut st = ser.serialize_struct("PolyCone", 5)?;
        st.serialize_field("n", &self.ambient.ambient_dim())?;
        st.serialize_field("ambient_basis", &basis_strings)?;
        st.serialize_field("rays", &to_strings(&self.rays))?;
        st.serialize_field("halfspaces", &to_strings(&self.halfspaces))?;
        st.serialize_field("equations", &to_strings(&self.equations))?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratlin::TorusLattice;

    fn iv(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| Int::from(x)).collect()
    }

    fn lattice(n: usize, rows: &[&[i64]]) -> TorusLattice {
        let rows: Vec<Vec<Int>> = rows.iter().map(|r| iv(r)).collect();
        TorusLattice::saturate(n, &rows).unwrap()
    }

    #[test]
    fn full_torus_cone_is_negative_orthant() {
        let c = recession_cone(&lattice(2, &[&[1, 0], &[0, 1]]));
        let mut rays = c.rays().to_vec();
        rays.sort();
        assert_eq!(rays, vec![iv(&[-1, 0]), iv(&[0, -1])]);
    }

    #[test]
    fn antidiagonal_line_gives_zero_cone() {
        let c = recession_cone(&lattice(2, &[&[1, -1]]));
        assert!(c.is_zero());
        let ids = limit_idempotents(&c);
        assert_eq!(ids.elements, vec![vec![1, 1]]);
    }

    #[test]
    fn diagonal_line_gives_single_ray() {
        let c = recession_cone(&lattice(2, &[&[1, 1]]));
        assert_eq!(c.rays(), &[iv(&[-1, -1])]);
        let ids = limit_idempotents(&c);
        assert_eq!(ids.elements, vec![vec![1, 1], vec![0, 0]]);
        assert_eq!(face_lattice(&c).len(), 2);
    }

    #[test]
    fn quadrant_faces_and_idempotents() {
        let c = recession_cone(&lattice(2, &[&[1, 0], &[0, 1]]));
        let faces = face_lattice(&c);
        assert_eq!(faces.len(), 4);
        let ids = limit_idempotents(&c);
        let mut got = ids.elements.clone();
        got.sort();
        let mut want = vec![vec![1, 1], vec![0, 1], vec![1, 0], vec![0, 0]];
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn octant_has_eight_faces() {
        // Every subset of the three generators spans a face of the simplicial
        // cone, so the count is 2³.
        let c = recession_cone(&lattice(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]));
        let faces = face_lattice(&c);
        assert_eq!(faces.len(), 8);
        let ids = limit_idempotents(&c);
        assert_eq!(ids.len(), 8);
    }

    #[test]
    fn idempotents_closed_under_product() {
        for rows in [vec![vec![1i64, 1, 0], vec![0, 0, 1]], vec![vec![1, 2, 3]], vec![vec![1, 0, -1], vec![0, 1, 1]]] {
            let rows: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
            let c = recession_cone(&lattice(3, &rows));
            let ids = limit_idempotents(&c);
            assert!(ids.contains(&vec![1, 1, 1]));
            for a in &ids.elements {
                for b in &ids.elements {
                    let prod: Vec<u8> = a.iter().zip(b).map(|(x, y)| x * y).collect();
                    assert!(ids.contains(&prod), "product {prod:?} escaped {ids:?}");
                }
            }
        }
    }

    #[test]
    fn weight_duality_on_rays() {
        // Every extreme ray pairs nonpositively with every coordinate weight.
        let c = recession_cone(&lattice(3, &[&[1, 1, 0], &[0, 1, 1]]));
        for r in c.rays() {
            for k in 0..3 {
                assert!(!r[k].is_positive());
            }
        }
    }

    #[test]
    fn limit_law_on_relative_interiors() {
        let c = recession_cone(&lattice(3, &[&[1, 1, 0], &[0, 0, 1]]));
        let faces = face_lattice(&c);
        let ids = limit_idempotents(&c);
        for (f, &e_idx) in faces.iter().zip(&ids.face_map) {
            // ξ = sum of the face's rays lies in the relative interior.
            let mut xi = vec![0.0; 3];
            for &i in &f.rays {
                for (x, v) in xi.iter_mut().zip(&c.rays()[i]) {
                    *x += v.to_f64().unwrap();
                }
            }
            for k in 0..3 {
                let limit = (50.0 * xi[k]).exp();
                let expect = f64::from(ids.elements[e_idx][k]);
                assert!((limit - expect).abs() < 1e-12, "face {f:?} coord {k}");
            }
        }
    }

    #[test]
    fn v_h_round_trip() {
        let c = recession_cone(&lattice(3, &[&[1, 1, 0], &[0, 1, 1]]));
        // Points of the subspace satisfying the stored H-rep must equal the
        // cone; check both inclusions on the rays and on halfspace normals.
        for r in c.rays() {
            for h in c.halfspaces() {
                let dot: Int = r.iter().zip(h).map(|(a, b)| a * b).sum();
                assert!(!dot.is_positive());
            }
            for e in c.equations() {
                let dot: Int = r.iter().zip(e).map(|(a, b)| a * b).sum();
                assert!(dot.is_zero());
            }
        }
    }
}
