//! Finite groups of twisted coordinate permutations.
//!
//! An element acts on `ℂⁿ` by `(g z)_k = t_k · z_{σ⁻¹(k)}` where `σ` is a
//! permutation and `t` a unimodular diagonal.  Twist angles are kept as exact
//! rational turns whenever the input allows; angles produced from floating
//! data degrade to radians with a comparison tolerance.

use std::collections::HashMap;
use std::f64::consts::TAU;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::linalg;
use crate::ratlin::{RationalSubspace, TorusLattice};
use crate::{C64, Error, Rat, Result};

/// Comparison tolerance for inexact twist angles.
pub const ANGLE_TOL: f64 = 1e-10;

/// Default bound on the cached group order (10!).
pub const DEFAULT_ORDER_BOUND: usize = 3_628_800;

/// An angle, exact in turns when possible.
#[derive(Debug, Clone)]
pub enum Angle {
    /// Fraction of a full turn, normalized into `[0, 1)`.
    Turns(Rat),
    /// Radians, normalized into `[0, 2π)`.
    Radians(f64),
}

impl Angle {
    pub fn zero() -> Self {
        Angle::Turns(Rat::zero())
    }

    pub fn from_turns(t: Rat) -> Self {
        Angle::Turns(normalize_turns(t))
    }

    pub fn from_radians(r: f64) -> Self {
        if r == 0.0 {
            return Angle::zero();
        }
        Angle::Radians(r.rem_euclid(TAU))
    }

    pub fn radians(&self) -> f64 {
        match self {
            Angle::Turns(t) => crate::rat_to_f64(t) * TAU,
            Angle::Radians(r) => *r,
        }
    }

    pub fn turns_f64(&self) -> f64 {
        self.radians() / TAU
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Angle::Turns(_))
    }

    pub fn unit(&self) -> C64 {
        C64::from_polar(1.0, self.radians())
    }

    pub fn add(&self, other: &Angle) -> Angle {
        match (self, other) {
            (Angle::Turns(a), Angle::Turns(b)) => Angle::Turns(normalize_turns(a + b)),
            _ => Angle::from_radians(self.radians() + other.radians()),
        }
    }

    pub fn neg(&self) -> Angle {
        match self {
            Angle::Turns(t) => Angle::Turns(normalize_turns(-t)),
            Angle::Radians(r) => Angle::from_radians(-r),
        }
    }

    /// Circular comparison: equal modulo a full turn within `tol` radians.
    pub fn approx_eq(&self, other: &Angle, tol: f64) -> bool {
        if let (Angle::Turns(a), Angle::Turns(b)) = (self, other) {
            return a == b;
        }
        let d = (self.radians() - other.radians()).rem_euclid(TAU);
        d <= tol || TAU - d <= tol
    }
}

fn normalize_turns(t: Rat) -> Rat {
    let f = t.floor();
    t - f
}

/// One twisted coordinate permutation.
#[derive(Debug, Clone)]
pub struct MonomialElement {
    /// Image form: `perm[i]` is where coordinate `i` goes, zero-based.
    pub perm: Vec<usize>,
    /// Unimodular twist per output coordinate.
    pub twist: Vec<Angle>,
}

impl MonomialElement {
    pub fn identity(n: usize) -> Self {
        MonomialElement {
            perm: (0..n).collect(),
            twist: vec![Angle::zero(); n],
        }
    }

    pub fn new(perm: Vec<usize>, twist: Vec<Angle>) -> Result<Self> {
        let n = perm.len();
        if twist.len() != n {
            return Err(Error::Dimension("twist length differs from permutation length".into()));
        }
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || seen[p] {
                return Err(Error::Invalid(format!("not a permutation: {perm:?}")));
            }
            seen[p] = true;
        }
        Ok(MonomialElement { perm, twist })
    }

    /// Permutation-only element.
    pub fn from_perm(perm: Vec<usize>) -> Result<Self> {
        let n = perm.len();
        Self::new(perm, vec![Angle::zero(); n])
    }

    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    pub fn perm_inverse(&self) -> Vec<usize> {
        let mut inv = vec![0; self.perm.len()];
        for (i, &p) in self.perm.iter().enumerate() {
            inv[p] = i;
        }
        inv
    }

    /// `(g z)_k = twist_k · z_{σ⁻¹(k)}`.
    pub fn apply(&self, z: &[C64]) -> Vec<C64> {
        let inv = self.perm_inverse();
        (0..z.len()).map(|k| self.twist[k].unit() * z[inv[k]]).collect()
    }

    /// Induced coordinate permutation on real vectors (log space).
    pub fn apply_real(&self, x: &[f64]) -> Vec<f64> {
        let inv = self.perm_inverse();
        (0..x.len()).map(|k| x[inv[k]]).collect()
    }

    /// Group law: `(self ∘ other)(z) = self(other(z))`.
    pub fn compose(&self, other: &MonomialElement) -> MonomialElement {
        let n = self.dim();
        let perm: Vec<usize> = (0..n).map(|i| self.perm[other.perm[i]]).collect();
        let self_inv = self.perm_inverse();
        let twist: Vec<Angle> = (0..n)
            .map(|k| self.twist[k].add(&other.twist[self_inv[k]]))
            .collect();
        MonomialElement { perm, twist }
    }

    pub fn inverse(&self) -> MonomialElement {
        let inv = self.perm_inverse();
        let n = self.dim();
        let twist: Vec<Angle> = (0..n).map(|k| self.twist[self.perm[k]].neg()).collect();
        MonomialElement { perm: inv, twist }
    }

    pub fn approx_eq(&self, other: &MonomialElement, tol: f64) -> bool {
        self.perm == other.perm
            && self.twist.iter().zip(&other.twist).all(|(a, b)| a.approx_eq(b, tol))
    }

    fn exact_key(&self) -> Option<(Vec<usize>, Vec<Rat>)> {
        let mut turns = Vec::with_capacity(self.twist.len());
        for a in &self.twist {
            match a {
                Angle::Turns(t) => turns.push(t.clone()),
                Angle::Radians(_) => return None,
            }
        }
        Some((self.perm.clone(), turns))
    }

    pub fn is_identity(&self, tol: f64) -> bool {
        self.approx_eq(&MonomialElement::identity(self.dim()), tol)
    }
}

/// A finite group of twisted coordinate permutations with its element list
/// cached eagerly at construction.
#[derive(Debug, Clone)]
pub struct MonomialGroup {
    n: usize,
    generators: Vec<MonomialElement>,
    elements: Vec<MonomialElement>,
}

impl MonomialGroup {
    pub fn new(n: usize, generators: Vec<MonomialElement>) -> Result<Self> {
        Self::with_order_bound(n, generators, DEFAULT_ORDER_BOUND)
    }

    pub fn trivial(n: usize) -> Self {
        MonomialGroup {
            n,
            generators: Vec::new(),
            elements: vec![MonomialElement::identity(n)],
        }
    }

    /// Close the generators under composition, failing loudly past `bound`.
    pub fn with_order_bound(
        n: usize,
        generators: Vec<MonomialElement>,
        bound: usize,
    ) -> Result<Self> {
        for g in &generators {
            if g.dim() != n {
                return Err(Error::Dimension(format!(
                    "generator acts on {} coordinates, group dimension is {n}",
                    g.dim()
                )));
            }
        }
        let exact = generators.iter().all(|g| g.exact_key().is_some());
        let mut elements = vec![MonomialElement::identity(n)];
        let mut index: HashMap<(Vec<usize>, Vec<Rat>), usize> = HashMap::new();
        if exact {
            index.insert(elements[0].exact_key().expect("identity is exact"), 0);
        }
        let mut frontier = vec![0usize];
        while let Some(i) = frontier.pop() {
            for g in &generators {
                let h = g.compose(&elements[i]);
                let known = if exact {
                    index.contains_key(&h.exact_key().expect("closure of exact twists"))
                } else {
                    elements.iter().any(|e| e.approx_eq(&h, ANGLE_TOL))
                };
                if !known {
                    if elements.len() >= bound {
                        return Err(Error::GroupTooLarge { bound });
                    }
                    if exact {
                        index.insert(h.exact_key().expect("exact"), elements.len());
                    }
                    elements.push(h);
                    frontier.push(elements.len() - 1);
                }
            }
        }
        Ok(MonomialGroup {
            n,
            generators,
            elements,
        })
    }

    pub(crate) fn from_parts(
        n: usize,
        generators: Vec<MonomialElement>,
        elements: Vec<MonomialElement>,
    ) -> Self {
        let mut dedup: Vec<MonomialElement> = Vec::with_capacity(elements.len());
        for e in elements {
            if !dedup.iter().any(|d| d.approx_eq(&e, ANGLE_TOL)) {
                dedup.push(e);
            }
        }
        MonomialGroup {
            n,
            generators,
            elements: dedup,
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[MonomialElement] {
        &self.generators
    }

    pub fn elements(&self) -> &[MonomialElement] {
        &self.elements
    }

    pub fn is_twist_free(&self) -> bool {
        self.elements
            .iter()
            .all(|e| e.twist.iter().all(|a| a.approx_eq(&Angle::zero(), ANGLE_TOL)))
    }

    /// Orbits of the underlying permutations on coordinates, sorted.
    pub fn orbit_partition(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut orbits = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            let mut orbit = vec![start];
            seen[start] = true;
            let mut stack = vec![start];
            while let Some(k) = stack.pop() {
                for g in &self.generators {
                    for next in [g.perm[k], g.perm_inverse()[k]] {
                        if !seen[next] {
                            seen[next] = true;
                            orbit.push(next);
                            stack.push(next);
                        }
                    }
                }
            }
            orbit.sort_unstable();
            orbits.push(orbit);
        }
        orbits.sort();
        orbits
    }

    /// Distinct permutation parts of the cached elements.
    pub fn perm_parts(&self) -> Vec<Vec<usize>> {
        let mut parts: Vec<Vec<usize>> = Vec::new();
        for e in &self.elements {
            if !parts.contains(&e.perm) {
                parts.push(e.perm.clone());
            }
        }
        parts
    }

    /// Whether the permutation image equals the full product of symmetric
    /// groups on the orbits: the order matches `∏ |K|!` and every adjacent
    /// transposition inside an orbit is present.
    pub fn full_symmetric_on_orbits(&self) -> bool {
        let parts = self.perm_parts();
        let orbits = self.orbit_partition();
        let mut expected: u128 = 1;
        for orbit in &orbits {
            let mut f: u128 = 1;
            for i in 2..=orbit.len() as u128 {
                f *= i;
            }
            expected = expected.saturating_mul(f);
        }
        if parts.len() as u128 != expected {
            return false;
        }
        for orbit in &orbits {
            for pair in orbit.windows(2) {
                let mut t: Vec<usize> = (0..self.n).collect();
                t.swap(pair[0], pair[1]);
                if !parts.contains(&t) {
                    return false;
                }
            }
        }
        true
    }
}

/// Rank of `(I − f)` restricted to an invariant subspace; the value 1
/// identifies a reflection.  Twists are immaterial: the element acts on the
/// real log space through its permutation part.
pub fn reflection_rank(f: &MonomialElement, space: &RationalSubspace) -> Result<usize> {
    if !space.invariant_under(&f.perm) {
        return Err(Error::NotInvariant);
    }
    let n = space.ambient_dim();
    let inv = f.perm_inverse();
    let diffs: Vec<Vec<Rat>> = space
        .basis()
        .iter()
        .map(|b| {
            (0..n)
                .map(|k| b[k].clone() - b[inv[k]].clone())
                .collect()
        })
        .collect();
    Ok(linalg::rank(&diffs))
}

/// Log-ratio `log|g·v| − log|v|` of an element that keeps the complexified
/// torus orbit of `v`; rejects elements that move the orbit (in modulus or in
/// phase).
pub(crate) fn orbit_log_ratio(
    torus: &TorusLattice,
    g: &MonomialElement,
    v: &[C64],
    tol: f64,
) -> std::result::Result<Vec<f64>, String> {
    let gv = g.apply(v);
    let xi: Vec<f64> = gv.iter().zip(v).map(|(a, b)| a.norm().ln() - b.norm().ln()).collect();
    let dist = torus.subspace().distance_f64(&xi);
    if !torus.subspace().contains_f64(&xi, tol) {
        return Err(format!(
            "log-modulus ratio leaves the torus log-space by distance {dist:.3e}"
        ));
    }
    let theta: Vec<f64> = gv.iter().zip(v).map(|(a, b)| a.arg() - b.arg()).collect();
    if !torus.subspace().phase_contains(&theta, tol) {
        return Err("phase ratio arg(g·v / v) is not an angle vector of the torus".into());
    }
    Ok(xi)
}

/// Replace `F` by `F̃ = {t_f f}` fixing a point `u` of the radial orbit of
/// `v`, and return both.
///
/// The induced action of `F` on the log space is affine, `ξ ↦ σξ + ξ_f`, so
/// the average of the translation parts over the whole group is a fixed
/// point; `u = exp(fix)·v` is then fixed by each `t_f f` with
/// `t_f = u / (f·u)`, a torus element.
pub fn normalize_to_fixed_point(
    group: &MonomialGroup,
    torus: &TorusLattice,
    v: &[C64],
    tol: f64,
) -> Result<(MonomialGroup, Vec<C64>)> {
    let n = group.dim();
    if v.len() != n || torus.ambient_dim() != n {
        return Err(Error::Dimension("group, torus and point dimensions differ".into()));
    }
    if let Some(index) = v.iter().position(|z| z.norm() == 0.0) {
        return Err(Error::ZeroComponent { index });
    }
    for (index, g) in group.generators().iter().enumerate() {
        if !torus.invariant_under(&g.perm) {
            return Err(Error::IncorViolation {
                index,
                detail: "generator permutation does not normalize the torus".into(),
            });
        }
        orbit_log_ratio(torus, g, v, tol)
            .map_err(|detail| Error::IncorViolation { index, detail })?;
    }

    let mut bary = vec![0.0; n];
    for g in group.elements() {
        let xi = orbit_log_ratio(torus, g, v, tol).map_err(|detail| Error::IncorViolation {
            index: usize::MAX,
            detail,
        })?;
        for (b, x) in bary.iter_mut().zip(&xi) {
            *b += x;
        }
    }
    let order = group.order() as f64;
    bary.iter_mut().for_each(|b| *b /= order);
    // Clean the accumulated rounding by projecting back onto the log space.
    let bary = torus.subspace().project_f64(&bary);

    let u: Vec<C64> = v.iter().zip(&bary).map(|(z, b)| z * b.exp()).collect();
    let real_positive = v.iter().all(|z| z.im == 0.0 && z.re > 0.0);

    let adjust = |g: &MonomialElement| -> MonomialElement {
        let inv = g.perm_inverse();
        let twist: Vec<Angle> = (0..n)
            .map(|k| {
                // t_f f has twist arg(u_k) − arg(u_{σ⁻¹(k)}) regardless of the
                // original twist; exact zero for positive real base points.
                if real_positive {
                    Angle::zero()
                } else {
                    Angle::from_radians(v[k].arg() - v[inv[k]].arg())
                }
            })
            .collect();
        MonomialElement {
            perm: g.perm.clone(),
            twist,
        }
    };

    let generators: Vec<MonomialElement> = group.generators().iter().map(adjust).collect();
    let elements: Vec<MonomialElement> = group.elements().iter().map(adjust).collect();
    let normalized = MonomialGroup::from_parts(n, generators, elements);
    Ok((normalized, u))
}

// ---------------------------------------------------------------------------
// Wire format
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct GroupWire {
    n: usize,
    generators: Vec<ElementWire>,
}

#[derive(Serialize, Deserialize)]
struct ElementWire {
    /// One-based images: coordinate `i+1` goes to `perm[i]`.
    perm: Vec<usize>,
    #[serde(default)]
    twist_angles_over_2pi: Vec<serde_json::Value>,
}

impl Serialize for MonomialGroup {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let generators = self
            .generators
            .iter()
            .map(|g| ElementWire {
                perm: g.perm.iter().map(|&p| p + 1).collect(),
                twist_angles_over_2pi: g
                    .twist
                    .iter()
                    .map(|a| match a {
                        Angle::Turns(t) => serde_json::Value::String(t.to_string()),
                        Angle::Radians(_) => serde_json::json!(a.turns_f64()),
                    })
                    .collect(),
            })
            .collect();
        GroupWire {
            n: self.n,
            generators,
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for MonomialGroup {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as DeError;
        let wire = GroupWire::deserialize(de)?;
        let mut generators = Vec::with_capacity(wire.generators.len());
        for gw in &wire.generators {
            let perm: Vec<usize> = gw
                .perm
                .iter()
                .map(|&p| {
                    if p == 0 || p > wire.n {
                        Err(DeError::custom(format!("permutation image {p} out of range 1..={}", wire.n)))
                    } else {
                        Ok(p - 1)
                    }
                })
                .collect::<std::result::Result<_, D::Error>>()?;
            let mut twist = Vec::with_capacity(wire.n);
            if gw.twist_angles_over_2pi.is_empty() {
                twist = vec![Angle::zero(); wire.n];
            } else {
                for val in &gw.twist_angles_over_2pi {
                    let angle = parse_turns(val)
                        .ok_or_else(|| DeError::custom(format!("bad twist angle {val}")))?;
                    twist.push(angle);
                }
            }
            generators.push(MonomialElement::new(perm, twist).map_err(DeError::custom)?);
        }
        MonomialGroup::new(wire.n, generators).map_err(DeError::custom)
    }
}

/// Accepts `"p/q"`, `"p"`, or a JSON number of turns.  Numbers are binary
/// floats, hence exactly representable: they stay exact.
fn parse_turns(val: &serde_json::Value) -> Option<Angle> {
    match val {
        serde_json::Value::String(s) => {
            let s = s.trim();
            let rat = if let Some((num, den)) = s.split_once('/') {
                Rat::new(num.trim().parse().ok()?, den.trim().parse().ok()?)
            } else {
                Rat::from_integer(s.parse().ok()?)
            };
            Some(Angle::from_turns(rat))
        }
        serde_json::Value::Number(x) => {
            let f = x.as_f64()?;
            Some(Angle::from_turns(crate::f64_to_rat(f)))
        }
        _ => None,
    }
}

/// Convenience: the full symmetric group on `n` coordinates.
pub fn symmetric_group(n: usize) -> MonomialGroup {
    let mut gens = Vec::new();
    if n >= 2 {
        for k in 0..n - 1 {
            let mut p: Vec<usize> = (0..n).collect();
            p.swap(k, k + 1);
            gens.push(MonomialElement::from_perm(p).expect("valid transposition"));
        }
    }
    MonomialGroup::new(n, gens).expect("symmetric group closes")
}

/// Convenience: the cyclic group generated by `(1 2 … n)`.
pub fn cyclic_group(n: usize) -> MonomialGroup {
    let perm: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
    let gen = MonomialElement::from_perm(perm).expect("valid cycle");
    MonomialGroup::new(n, vec![gen]).expect("cyclic group closes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratlin::TorusLattice;
    use crate::Int;

    fn lattice(n: usize, rows: &[&[i64]]) -> TorusLattice {
        let rows: Vec<Vec<Int>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Int::from(x)).collect())
            .collect();
        TorusLattice::saturate(n, &rows).unwrap()
    }

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn closure_and_orbits() {
        let s3 = symmetric_group(3);
        assert_eq!(s3.order(), 6);
        assert_eq!(s3.orbit_partition(), vec![vec![0, 1, 2]]);

        let swap12 = MonomialElement::from_perm(vec![1, 0, 2]).unwrap();
        let g = MonomialGroup::new(3, vec![swap12]).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.orbit_partition(), vec![vec![0, 1], vec![2]]);

        // Double 3-cycle on six points.
        let p = MonomialElement::from_perm(vec![1, 2, 0, 4, 5, 3]).unwrap();
        let c2 = MonomialGroup::new(6, vec![p]).unwrap();
        assert_eq!(c2.order(), 3);
        assert_eq!(c2.orbit_partition(), vec![vec![0, 1, 2], vec![3, 4, 5]]);
    }

    #[test]
    fn closure_is_a_group() {
        let g = symmetric_group(4);
        for a in g.elements() {
            for b in g.elements() {
                let ab = a.compose(b);
                assert!(g.elements().iter().any(|e| e.approx_eq(&ab, ANGLE_TOL)));
            }
            let inv = a.inverse();
            assert!(g.elements().iter().any(|e| e.approx_eq(&inv, ANGLE_TOL)));
        }
    }

    #[test]
    fn order_bound_fails_loudly() {
        let cycle = MonomialElement::from_perm(vec![1, 2, 3, 0]).unwrap();
        let err = MonomialGroup::with_order_bound(4, vec![cycle], 3).unwrap_err();
        assert!(matches!(err, Error::GroupTooLarge { bound: 3 }));
    }

    #[test]
    fn full_symmetric_detection() {
        assert!(symmetric_group(4).full_symmetric_on_orbits());
        assert!(!cyclic_group(3).full_symmetric_on_orbits());
        let two_swaps = MonomialGroup::new(
            4,
            vec![
                MonomialElement::from_perm(vec![1, 0, 2, 3]).unwrap(),
                MonomialElement::from_perm(vec![0, 1, 3, 2]).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(two_swaps.order(), 4);
        assert!(two_swaps.full_symmetric_on_orbits());
    }

    #[test]
    fn reflection_ranks() {
        let full = RationalSubspace::from_rows(
            3,
            &(0..3)
                .map(|i| {
                    let mut r = vec![Rat::zero(); 3];
                    r[i] = Rat::from_integer(1.into());
                    r
                })
                .collect::<Vec<_>>(),
        )
        .unwrap();
        let swap = MonomialElement::from_perm(vec![1, 0, 2]).unwrap();
        assert_eq!(reflection_rank(&swap, &full).unwrap(), 1);
        let cycle = MonomialElement::from_perm(vec![1, 2, 0]).unwrap();
        assert_eq!(reflection_rank(&cycle, &full).unwrap(), 2);
        let id = MonomialElement::identity(3);
        assert_eq!(reflection_rank(&id, &full).unwrap(), 0);
        // A subspace not preserved by the swap.
        let skew = RationalSubspace::from_rows(
            3,
            &[vec![
                Rat::from_integer(1.into()),
                Rat::from_integer(2.into()),
                Rat::zero(),
            ]],
        )
        .unwrap();
        assert!(matches!(reflection_rank(&swap, &skew), Err(Error::NotInvariant)));
    }

    #[test]
    fn conjugation_preserves_reflection_rank() {
        let full = RationalSubspace::from_rows(
            4,
            &(0..4)
                .map(|i| {
                    let mut r = vec![Rat::zero(); 4];
                    r[i] = Rat::from_integer(1.into());
                    r
                })
                .collect::<Vec<_>>(),
        )
        .unwrap();
        let s4 = symmetric_group(4);
        let f = MonomialElement::from_perm(vec![1, 0, 3, 2]).unwrap();
        let base = reflection_rank(&f, &full).unwrap();
        for g in s4.elements() {
            let conj = g.compose(&f).compose(&g.inverse());
            assert_eq!(reflection_rank(&conj, &full).unwrap(), base);
        }
    }

    #[test]
    fn fixed_point_on_full_torus() {
        let t = lattice(2, &[&[1, 0], &[0, 1]]);
        let f = symmetric_group(2);
        let v = vec![c(2.0, 0.0), c(1.0, 0.0)];
        let (ft, u) = normalize_to_fixed_point(&f, &t, &v, 1e-9).unwrap();
        let s = 2.0f64.sqrt();
        assert!((u[0].norm() - s).abs() < 1e-12 && (u[1].norm() - s).abs() < 1e-12);
        for g in ft.generators() {
            let gu = g.apply(&u);
            for (a, b) in gu.iter().zip(&u) {
                assert!((a - b).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn fixed_point_trivial_group() {
        let t = lattice(2, &[&[1, 0], &[0, 1]]);
        let f = MonomialGroup::trivial(2);
        let v = vec![c(2.0, 1.0), c(0.5, -0.5)];
        let (_, u) = normalize_to_fixed_point(&f, &t, &v, 1e-9).unwrap();
        for (a, b) in u.iter().zip(&v) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn fixed_point_on_antidiagonal_torus() {
        // Γ = span(1,−1), swap, v = (2, 1/2): solving exp(c·(1,−1))·v fixed
        // gives c = −log 2 and u = (1,1).
        let t = lattice(2, &[&[1, -1]]);
        let f = symmetric_group(2);
        let v = vec![c(2.0, 0.0), c(0.5, 0.0)];
        let (ft, u) = normalize_to_fixed_point(&f, &t, &v, 1e-9).unwrap();
        assert!((u[0] - c(1.0, 0.0)).norm() < 1e-12);
        assert!((u[1] - c(1.0, 0.0)).norm() < 1e-12);
        for g in ft.generators() {
            let gu = g.apply(&u);
            for (a, b) in gu.iter().zip(&u) {
                assert!((a - b).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn incor_violation_names_generator() {
        // Scalar torus span(1,1) with a swap moves (1,2) off its complex orbit.
        let t = lattice(2, &[&[1, 1]]);
        let f = symmetric_group(2);
        let v = vec![c(1.0, 0.0), c(2.0, 0.0)];
        match normalize_to_fixed_point(&f, &t, &v, 1e-9) {
            Err(Error::IncorViolation { index: 0, .. }) => {}
            other => panic!("expected incor violation on generator 0, got {other:?}"),
        }
    }

    #[test]
    fn group_json_round_trip() {
        let js = r#"{"n":3,"generators":[{"perm":[2,1,3],"twist_angles_over_2pi":["1/2","0","1/4"]}]}"#;
        let g: MonomialGroup = serde_json::from_str(js).unwrap();
        assert_eq!(g.order(), 4); // the twist squares to a quarter-turn twist
        let back = serde_json::to_string(&g).unwrap();
        let g2: MonomialGroup = serde_json::from_str(&back).unwrap();
        assert_eq!(g2.order(), g.order());
    }
}
