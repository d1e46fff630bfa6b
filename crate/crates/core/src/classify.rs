//! Structural classification of pairs (torus, finite group).
//!
//! The driving questions, all decidable exactly from the lattice and the
//! permutation action: does the finite extension keep generic complexified
//! orbits (connectedness)?  are generic orbits closed?  per orbit of the
//! group on coordinates, is the torus the full diagonal torus (type A) or its
//! trace-zero part (type B)?  and is the pair a product of full symmetric
//! groups acting on those factors — the rigid case where facet normals do not
//! depend on the base point.

use num_traits::Zero;
use rand::Rng as _;
use rand::SeedableRng as _;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cone;
use crate::dd;
use crate::group::{MonomialElement, MonomialGroup};
use crate::hull::{HullOptions, OrbitHull};
use crate::linalg;
use crate::ratlin::{hermite_normal_form, RationalSubspace, TorusLattice};
use crate::{C64, Error, Int, Rat, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OrbitType {
    A,
    B,
    ProductMixed,
    NotApplicable,
}

/// Classification report for a pair.
#[derive(Debug, Clone, Serialize)]
pub struct PairReport {
    pub generically_connected: bool,
    pub generically_closed: bool,
    pub orbit_partition: Vec<Vec<usize>>,
    /// Per-orbit labels ("A" or "B"), empty when not applicable.
    pub orbit_types: Vec<OrbitType>,
    pub r#type: OrbitType,
    pub standard_product: bool,
    /// Dimension of the fixed space of the centralizer: one per orbit.
    pub centralizer_dim: usize,
}

/// Indicator vectors of the group orbits: a basis of the centralizer's fixed
/// space.
pub fn orbit_indicators(group: &MonomialGroup) -> Vec<Vec<Rat>> {
    group
        .orbit_partition()
        .iter()
        .map(|orbit| {
            let mut row = vec![Rat::zero(); group.dim()];
            for &k in orbit {
                row[k] = Rat::from_integer(1.into());
            }
            row
        })
        .collect()
}

/// Generic complexified orbits stay connected under the finite extension iff
/// the log space plus the span of the orbit indicators is everything.
pub fn generically_connected(torus: &TorusLattice, group: &MonomialGroup) -> bool {
    let n = torus.ambient_dim();
    assert_eq!(group.dim(), n);
    let mut rows: Vec<Vec<Rat>> = torus.subspace().basis().to_vec();
    rows.extend(orbit_indicators(group));
    linalg::rank(&rows) == n
}

/// Generic complexified orbits are closed iff the recession cone is trivial.
/// The finite part is immaterial for closedness; it is kept in the signature
/// because the cross-check route (no nonzero invariant nonnegative direction
/// in the log space) runs through the group, see
/// [`closedness_cross_check`].
pub fn generically_closed(torus: &TorusLattice, _group: &MonomialGroup) -> bool {
    cone::recession_cone(torus).is_zero()
}

/// Independent closedness route: is there a nonzero nonnegative `F`-invariant
/// vector in the log space?  Averaging an element of the recession cone over
/// the group shows this is equivalent to the cone being nontrivial.
pub fn closedness_cross_check(torus: &TorusLattice, group: &MonomialGroup) -> bool {
    let n = torus.ambient_dim();
    // Intersection t ∩ Fix(F) via stacked annihilators.
    let mut ann_rows: Vec<Vec<Rat>> = torus
        .subspace()
        .integer_annihilator()
        .iter()
        .map(|w| w.iter().map(|x| Rat::from_integer(x.clone())).collect())
        .collect();
    let fix = RationalSubspace::from_rows(n, &orbit_indicators(group)).expect("indicator rows");
    ann_rows.extend(
        fix.integer_annihilator()
            .iter()
            .map(|w| w.iter().map(|x| Rat::from_integer(x.clone())).collect::<Vec<Rat>>()),
    );
    let meet = linalg::kernel_basis(&ann_rows, n);
    if meet.is_empty() {
        return true; // no invariant direction at all
    }
    // Nonnegative directions of the intersection: constraints −x_k ≤ 0 in the
    // intrinsic coordinates of the intersection.
    let space = RationalSubspace::from_rows(n, &meet).expect("intersection basis");
    let d = space.dim();
    let constraints: Vec<Vec<Rat>> = (0..n)
        .map(|k| space.basis().iter().map(|row| -row[k].clone()).collect())
        .collect();
    let gens = dd::extreme_rays(d, &constraints, &[]);
    gens.rays.is_empty() && gens.lines.is_empty()
}

/// Full classification.  Errors if the data is structurally inconsistent
/// (connected generic orbits require the torus to contain every trace-zero
/// block, so a violation means bad input).
pub fn classify_type(torus: &TorusLattice, group: &MonomialGroup) -> Result<PairReport> {
    let n = torus.ambient_dim();
    if group.dim() != n {
        return Err(Error::Dimension("torus and group dimensions differ".into()));
    }
    for (index, g) in group.generators().iter().enumerate() {
        if !torus.invariant_under(&g.perm) {
            return Err(Error::IncorViolation {
                index,
                detail: "generator permutation does not normalize the torus".into(),
            });
        }
    }
    let orbit_partition = group.orbit_partition();
    let connected = generically_connected(torus, group);
    let closed = generically_closed(torus, group);
    if !connected {
        return Ok(PairReport {
            generically_connected: false,
            generically_closed: closed,
            centralizer_dim: orbit_partition.len(),
            orbit_partition,
            orbit_types: Vec::new(),
            r#type: OrbitType::NotApplicable,
            standard_product: false,
        });
    }

    // Connectedness forces the torus to contain the trace-zero part of every
    // orbit block; verify, then each block is A (full) or B (trace-zero).
    let space = torus.subspace();
    let mut orbit_types = Vec::with_capacity(orbit_partition.len());
    for orbit in &orbit_partition {
        for pair in orbit.windows(2) {
            let mut diff = vec![Rat::zero(); n];
            diff[pair[0]] = Rat::from_integer(1.into());
            diff[pair[1]] = Rat::from_integer((-1).into());
            if !space.contains_exact(&diff) {
                return Err(Error::Inconsistent(format!(
                    "connected generic orbits, yet the log space misses the difference \
                     direction e_{} − e_{} of one orbit",
                    pair[0], pair[1]
                )));
            }
        }
        let restricted = space.restrict(orbit);
        let t = if restricted.dim() == orbit.len() {
            OrbitType::A
        } else if restricted.dim() + 1 == orbit.len() {
            OrbitType::B
        } else {
            return Err(Error::Inconsistent(
                "orbit restriction is neither full nor trace-zero".into(),
            ));
        };
        orbit_types.push(t);
    }
    let overall = if orbit_types.iter().all(|t| *t == OrbitType::A) {
        OrbitType::A
    } else if orbit_types.iter().all(|t| *t == OrbitType::B) {
        OrbitType::B
    } else {
        OrbitType::ProductMixed
    };
    let standard_product = group.full_symmetric_on_orbits();

    Ok(PairReport {
        generically_connected: true,
        generically_closed: closed,
        centralizer_dim: orbit_partition.len(),
        orbit_partition,
        orbit_types,
        r#type: overall,
        standard_product,
    })
}

/// The rigid configuration: every orbit block of type A or B with the full
/// symmetric group on it — exactly when facet normals do not depend on the
/// base point.
pub fn is_standard_product(torus: &TorusLattice, group: &MonomialGroup) -> Result<bool> {
    Ok(classify_type(torus, group)?.standard_product)
}

// ---------------------------------------------------------------------------
// Canonical construction from lattice data
// ---------------------------------------------------------------------------

/// Flexible rational on the wire: JSON number or `"p/q"` string.
#[derive(Debug, Clone, PartialEq)]
pub struct Q(pub Rat);

impl Serialize for Q {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for Q {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as DeError;
        let v = serde_json::Value::deserialize(de)?;
        match &v {
            serde_json::Value::Number(x) => {
                let f = x.as_f64().ok_or_else(|| DeError::custom("bad number"))?;
                Ok(Q(crate::f64_to_rat(f)))
            }
            serde_json::Value::String(s) => {
                let s = s.trim();
                let rat = if let Some((num, den)) = s.split_once('/') {
                    let n: Int = num.trim().parse().map_err(DeError::custom)?;
                    let d: Int = den.trim().parse().map_err(DeError::custom)?;
                    Rat::new(n, d)
                } else {
                    Rat::from_integer(s.parse().map_err(DeError::custom)?)
                };
                Ok(Q(rat))
            }
            other => Err(DeError::custom(format!("expected rational, got {other}"))),
        }
    }
}

/// Input of the canonical construction: a lattice `L` in a `d`-dimensional
/// space, a finite generating subset `K` of the dual lattice, and a finite
/// matrix group preserving `K`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MaicoInput {
    pub t_dim: usize,
    /// Rows are a basis of `L`.
    pub lattice_basis: Vec<Vec<Q>>,
    /// The points of `K`, in the same coordinates as `t`.
    pub points: Vec<Vec<Q>>,
    /// Matrix generators acting on the `d`-dimensional space, row-major.
    pub generators: Vec<Vec<Vec<Q>>>,
}

/// Realize the pair on `C(K)`: coordinates indexed by the points of `K`, the
/// torus embedded through the pairings with `L`, the group acting by its
/// permutation of `K`.  Returns the saturated lattice and the permutation
/// group.
pub fn construct_maico(input: &MaicoInput) -> Result<(TorusLattice, MonomialGroup)> {
    let d = input.t_dim;
    let basis: Vec<Vec<Rat>> = input
        .lattice_basis
        .iter()
        .map(|r| r.iter().map(|q| q.0.clone()).collect())
        .collect();
    if basis.len() != d || basis.iter().any(|r| r.len() != d) {
        return Err(Error::Dimension("lattice basis must be a d×d matrix".into()));
    }
    if linalg::rank(&basis) != d {
        return Err(Error::Invalid("lattice basis rows are dependent".into()));
    }
    let points: Vec<Vec<Rat>> = input
        .points
        .iter()
        .map(|r| r.iter().map(|q| q.0.clone()).collect())
        .collect();
    let n = points.len();
    if n == 0 {
        return Err(Error::Invalid("the dual set K is empty".into()));
    }
    if points.iter().any(|p| p.len() != d) {
        return Err(Error::Dimension("every point of K must have length d".into()));
    }

    // Pairings ⟨ℓ_i, q⟩ must be integers (K inside the dual lattice), and the
    // integer coordinate vectors must generate ℤ^d (K generates the dual).
    let mut coord_columns: Vec<Vec<Int>> = Vec::with_capacity(n);
    for q in &points {
        let mut col = Vec::with_capacity(d);
        for row in &basis {
            let pairing = linalg::dot(row, q);
            if !pairing.denom().eq(&Int::from(1)) {
                return Err(Error::Invalid(format!(
                    "point {q:?} pairs non-integrally with the lattice: {pairing}"
                )));
            }
            col.push(pairing.numer().clone());
        }
        coord_columns.push(col);
    }
    let hnf = hermite_normal_form(&coord_columns);
    let generates = hnf.len() == d
        && (0..d).all(|i| hnf[i][i] == Int::from(1))
        && hnf.iter().enumerate().all(|(i, row)| {
            row.iter().enumerate().all(|(j, x)| (i == j) == (*x == Int::from(1)) || x.is_zero())
        });
    if !generates {
        return Err(Error::Invalid("K does not generate the dual lattice".into()));
    }

    // The permutation each generator induces on K.
    let mut perms: Vec<Vec<usize>> = Vec::new();
    for m in &input.generators {
        let mat: Vec<Vec<Rat>> = m.iter().map(|r| r.iter().map(|q| q.0.clone()).collect()).collect();
        if mat.len() != d || mat.iter().any(|r| r.len() != d) {
            return Err(Error::Dimension("group generator must be a d×d matrix".into()));
        }
        let mut perm = vec![usize::MAX; n];
        for (j, q) in points.iter().enumerate() {
            let image = linalg::mat_vec(&mat, q);
            let target = points.iter().position(|p| *p == image).ok_or_else(|| {
                Error::Invalid(format!("generator moves the point {q:?} off K"))
            })?;
            perm[j] = target;
        }
        let mut seen = vec![false; n];
        for &p in &perm {
            if seen[p] {
                return Err(Error::Invalid("generator is not injective on K".into()));
            }
            seen[p] = true;
        }
        perms.push(perm);
    }

    // Torus rows: the k-th weight of the embedded torus is the k-th point.
    let gamma_rows: Vec<Vec<Int>> = coord_columns
        .iter()
        .fold(vec![Vec::new(); d], |mut acc, col| {
            for (i, x) in col.iter().enumerate() {
                acc[i].push(x.clone());
            }
            acc
        });
    let torus = TorusLattice::saturate(n, &gamma_rows)?;
    let elements: Vec<MonomialElement> = perms
        .into_iter()
        .map(MonomialElement::from_perm)
        .collect::<Result<_>>()?;
    let group = MonomialGroup::new(n, elements)?;
    Ok((torus, group))
}

/// Base-point validity for the canonical construction: all coordinates
/// nonzero and the point constant on the group orbits.
pub fn maico_point_valid(group: &MonomialGroup, v: &[C64]) -> bool {
    if v.len() != group.dim() || v.iter().any(|z| z.norm() == 0.0) {
        return false;
    }
    group.elements().iter().all(|g| {
        let gv_perm_only = {
            let inv = g.perm_inverse();
            (0..v.len()).map(|k| v[inv[k]]).collect::<Vec<C64>>()
        };
        gv_perm_only.iter().zip(v).all(|(a, b)| (a - b).norm() < 1e-12)
    })
}

// ---------------------------------------------------------------------------
// Rigidity probe
// ---------------------------------------------------------------------------

/// Build hulls at `trials` random generic base points and compare the
/// intrinsic facet-normal sets.  Empirical: agreement within `1e-7` on unit
/// normals counts as rigid.  Deterministic per seed; degenerate draws
/// (coinciding log points) are resampled up to five times.
pub fn normals_rigidity_probe(
    torus: &TorusLattice,
    group: &MonomialGroup,
    trials: usize,
    seed: u64,
) -> Result<bool> {
    let n = torus.ambient_dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let expected_points = group.perm_parts().len();
    let mut reference: Option<Vec<Vec<f64>>> = None;
    for _ in 0..trials.max(1) {
        let mut hull = None;
        for _attempt in 0..5 {
            let v: Vec<C64> = sample_generic_moduli(&mut rng, n)
                .into_iter()
                .map(|m| C64::new(m, 0.0))
                .collect();
            let candidate = OrbitHull::build(torus, group, &v, HullOptions::default())?;
            // A nondegenerate draw keeps all permutation images apart.
            if candidate.log_points().len() == expected_points.max(1) {
                hull = Some(candidate);
                break;
            }
        }
        let hull = hull.ok_or_else(|| {
            Error::Degenerate("could not draw a nondegenerate base point in five attempts".into())
        })?;
        let normals = hull.intrinsic_unit_normals();
        match &reference {
            None => reference = Some(normals),
            Some(prev) => {
                if !normal_sets_agree(prev, &normals, 1e-7) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Set equality of unit-normal families up to tolerance: greedy matching, so
/// last-bit float noise cannot flip an ordering-based comparison.
fn normal_sets_agree(a: &[Vec<f64>], b: &[Vec<f64>], tol: f64) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut used = vec![false; b.len()];
    for na in a {
        let found = b.iter().enumerate().find(|(j, nb)| {
            !used[*j]
                && na
                    .iter()
                    .zip(nb.iter())
                    .map(|(x, y)| (x - y).abs())
                    .fold(0.0f64, f64::max)
                    <= tol
        });
        match found {
            Some((j, _)) => used[j] = true,
            None => return false,
        }
    }
    true
}

/// Distinct moduli in `[1, 2]`, spaced away from collisions.
fn sample_generic_moduli(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..n).map(|_| rng.gen_range(1.0..2.0)).collect();
        let mut ok = true;
        for i in 0..n {
            for j in 0..i {
                if (v[i] - v[j]).abs() < 1e-3 {
                    ok = false;
                }
            }
        }
        if ok {
            return v;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic_group, symmetric_group};

    fn lattice(n: usize, rows: &[&[i64]]) -> TorusLattice {
        let rows: Vec<Vec<Int>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Int::from(x)).collect())
            .collect();
        TorusLattice::saturate(n, &rows).unwrap()
    }

    fn full_torus(n: usize) -> TorusLattice {
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect();
        let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
        lattice(n, &refs)
    }

    fn trace_zero_lattice(n: usize) -> TorusLattice {
        let rows: Vec<Vec<i64>> = (0..n - 1)
            .map(|i| {
                let mut r = vec![0i64; n];
                r[i] = 1;
                r[i + 1] = -1;
                r
            })
            .collect();
        let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
        lattice(n, &refs)
    }

    #[test]
    fn connectedness_cases() {
        assert!(generically_connected(&full_torus(3), &symmetric_group(3)));
        assert!(generically_connected(&lattice(2, &[&[1, -1]]), &symmetric_group(2)));
        assert!(!generically_connected(&lattice(2, &[&[1, 1]]), &symmetric_group(2)));
    }

    #[test]
    fn closedness_cases() {
        let s2 = symmetric_group(2);
        assert!(generically_closed(&lattice(2, &[&[1, -1]]), &s2));
        assert!(!generically_closed(&full_torus(2), &s2));
        assert!(!generically_closed(&lattice(2, &[&[1, 1]]), &s2));
    }

    #[test]
    fn closedness_agrees_with_invariant_route() {
        let cases: Vec<(TorusLattice, MonomialGroup)> = vec![
            (full_torus(3), symmetric_group(3)),
            (lattice(2, &[&[1, -1]]), symmetric_group(2)),
            (lattice(2, &[&[1, 1]]), symmetric_group(2)),
            (trace_zero_lattice(4), symmetric_group(4)),
            (lattice(3, &[&[1, -1, 0]]), cyclic_group(3)),
        ];
        for (t, f) in &cases {
            assert_eq!(
                generically_closed(t, f),
                closedness_cross_check(t, f),
                "mismatch for {:?}",
                t.basis()
            );
        }
    }

    #[test]
    fn type_a_and_b() {
        let a = classify_type(&full_torus(3), &symmetric_group(3)).unwrap();
        assert_eq!(a.r#type, OrbitType::A);
        assert!(a.standard_product);
        assert!(!a.generically_closed);

        let b = classify_type(&trace_zero_lattice(3), &symmetric_group(3)).unwrap();
        assert_eq!(b.r#type, OrbitType::B);
        assert!(b.standard_product);
        assert!(b.generically_closed);

        let cyc = classify_type(&full_torus(3), &cyclic_group(3)).unwrap();
        assert_eq!(cyc.r#type, OrbitType::A);
        assert!(!cyc.standard_product);

        let na = classify_type(&lattice(2, &[&[1, 1]]), &symmetric_group(2)).unwrap();
        assert_eq!(na.r#type, OrbitType::NotApplicable);
        assert!(!na.generically_connected);
    }

    #[test]
    fn mixed_product_type() {
        // Block 1: full torus on {0,1} (A); block 2: trace-zero on {2,3} (B).
        let t = lattice(4, &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, -1]]);
        let f = MonomialGroup::new(
            4,
            vec![
                MonomialElement::from_perm(vec![1, 0, 2, 3]).unwrap(),
                MonomialElement::from_perm(vec![0, 1, 3, 2]).unwrap(),
            ],
        )
        .unwrap();
        let report = classify_type(&t, &f).unwrap();
        assert_eq!(report.r#type, OrbitType::ProductMixed);
        assert_eq!(report.orbit_types, vec![OrbitType::A, OrbitType::B]);
        assert!(report.standard_product);
        assert_eq!(report.centralizer_dim, 2);
    }

    fn maico_json(json: &str) -> MaicoInput {
        serde_json::from_str(json).unwrap()
    }

    #[test]
    fn maico_type_b_pair() {
        // d=1, L=ℤ, K={1,−1}, F={±1}: the two-coordinate trace-zero pair.
        let input = maico_json(
            r#"{"t_dim":1,"lattice_basis":[["1"]],"points":[["1"],["-1"]],"generators":[[["-1"]]]}"#,
        );
        let (t, f) = construct_maico(&input).unwrap();
        assert_eq!(t.basis(), &[vec![Int::from(1), Int::from(-1)]]);
        assert_eq!(f.order(), 2);
        let report = classify_type(&t, &f).unwrap();
        assert_eq!(report.r#type, OrbitType::B);
        assert!(report.standard_product);
    }

    #[test]
    fn maico_type_a_pair() {
        // d=n with K the standard basis and F the permutation matrices of S₂.
        let input = maico_json(
            r#"{"t_dim":2,"lattice_basis":[["1","0"],["0","1"]],
                "points":[["1","0"],["0","1"]],
                "generators":[[["0","1"],["1","0"]]]}"#,
        );
        let (t, f) = construct_maico(&input).unwrap();
        assert_eq!(t.dim(), 2);
        let report = classify_type(&t, &f).unwrap();
        assert_eq!(report.r#type, OrbitType::A);
    }

    #[test]
    fn maico_weighted_scalar() {
        let input = maico_json(
            r#"{"t_dim":1,"lattice_basis":[["1"]],"points":[["1"],["2"]],"generators":[]}"#,
        );
        let (t, f) = construct_maico(&input).unwrap();
        assert_eq!(t.basis(), &[vec![Int::from(1), Int::from(2)]]);
        assert_eq!(f.order(), 1);
    }

    #[test]
    fn maico_rejects_nongenerating_k() {
        // K = {2} does not generate ℤ*.
        let input = maico_json(
            r#"{"t_dim":1,"lattice_basis":[["1"]],"points":[["2"]],"generators":[]}"#,
        );
        assert!(construct_maico(&input).is_err());
    }

    #[test]
    fn maico_rejects_group_moving_k() {
        let input = maico_json(
            r#"{"t_dim":1,"lattice_basis":[["1"]],"points":[["1"]],"generators":[[["-1"]]]}"#,
        );
        assert!(construct_maico(&input).is_err());
    }

    #[test]
    fn maico_point_validity() {
        let input = maico_json(
            r#"{"t_dim":1,"lattice_basis":[["1"]],"points":[["1"],["-1"]],"generators":[[["-1"]]]}"#,
        );
        let (_, f) = construct_maico(&input).unwrap();
        let good = vec![C64::new(2.0, 1.0), C64::new(2.0, 1.0)];
        assert!(maico_point_valid(&f, &good));
        let uneven = vec![C64::new(2.0, 0.0), C64::new(1.0, 0.0)];
        assert!(!maico_point_valid(&f, &uneven));
        let zero = vec![C64::new(0.0, 0.0), C64::new(0.0, 0.0)];
        assert!(!maico_point_valid(&f, &zero));
    }

    #[test]
    fn maico_classification_round_trip() {
        // The two standard constructions reproduce their declared types.
        let b_input = maico_json(
            r#"{"t_dim":1,"lattice_basis":[["1"]],"points":[["1"],["-1"]],"generators":[[["-1"]]]}"#,
        );
        let (t, f) = construct_maico(&b_input).unwrap();
        assert_eq!(classify_type(&t, &f).unwrap().r#type, OrbitType::B);

        let a_input = maico_json(
            r#"{"t_dim":3,
                "lattice_basis":[["1","0","0"],["0","1","0"],["0","0","1"]],
                "points":[["1","0","0"],["0","1","0"],["0","0","1"]],
                "generators":[[["0","1","0"],["1","0","0"],["0","0","1"]],
                              [["1","0","0"],["0","0","1"],["0","1","0"]]]}"#,
        );
        let (t, f) = construct_maico(&a_input).unwrap();
        let report = classify_type(&t, &f).unwrap();
        assert_eq!(report.r#type, OrbitType::A);
        assert!(report.standard_product);
    }

    #[test]
    fn rigidity_probe_cases() {
        assert!(normals_rigidity_probe(&full_torus(3), &symmetric_group(3), 5, 42).unwrap());
        assert!(!normals_rigidity_probe(&full_torus(3), &cyclic_group(3), 5, 42).unwrap());
        assert!(
            normals_rigidity_probe(&lattice(2, &[&[1, -1]]), &symmetric_group(2), 5, 42).unwrap()
        );
    }
}
