//! Orbit hulls: the polyhedral description, membership queries with
//! certificates, and analytic strips.
//!
//! For `v` with no zero coordinate and a finite group `F` whose orbit stays in
//! the complexified torus orbit of `v`, the hull of `F·T·v` is described by
//! log-space data: the finite point set `X = {log|f·v| − log|v|}`, the
//! polytope `Q = conv X`, and the polyhedron `P = Q + C` with `C` the
//! recession cone.  Facet normals of `P`, lifted to nonnegative integer
//! vectors, give the monomial inequalities `|z^s| ≤ e^{c_s}|v^s|` that carve
//! the hull out of the closure of the torus orbit.  Degenerate points (zero
//! coordinates) are handled on the query side through the limit idempotents:
//! each admissible support carries the same structure projected to the
//! surviving coordinates.

use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::cone::{self, IdempotentSet, PolyCone};
use crate::dd;
use crate::group::{self, MonomialGroup};
use crate::linalg;
use crate::ratlin::{primitive_integer, RationalSubspace, TorusLattice};
use crate::{f64_to_rat, rat_to_f64, C64, Error, Int, Rat, Result};

pub const DEFAULT_TOL: f64 = 1e-9;
pub const DEFAULT_MAX_DENOMINATOR: u64 = 1_000_000;

#[derive(Debug, Clone, Copy)]
pub struct HullOptions {
    pub tol: f64,
    pub max_denominator: u64,
}

impl Default for HullOptions {
    fn default() -> Self {
        HullOptions {
            tol: DEFAULT_TOL,
            max_denominator: DEFAULT_MAX_DENOMINATOR,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum MembershipStatus {
    Inside,
    Boundary,
    Outside,
}

impl std::fmt::Display for MembershipStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            MembershipStatus::Inside => "Inside",
            MembershipStatus::Boundary => "Boundary",
            MembershipStatus::Outside => "Outside",
        };
        f.write_str(s)
    }
}

/// Evidence attached to an `Outside` verdict.
#[derive(Debug, Clone, Serialize)]
pub enum Certificate {
    /// A monomial `z^s` (nonnegative integer exponents, strictly positive on
    /// the point's support) whose modulus at the point strictly exceeds its
    /// supremum over the hull.
    Monomial {
        exponents: Vec<i64>,
        value_at_point: f64,
        hull_sup: f64,
        log_value_at_point: f64,
        log_hull_sup: f64,
    },
    /// The support pattern of the point is not realized by any limit
    /// idempotent, so no hull point shares it.
    SupportMismatch {
        support: Vec<usize>,
        admissible_supports: Vec<Vec<usize>>,
    },
    /// A Laurent monomial `z^w` (`w` an integer annihilator of the log
    /// space) is constant on the orbit closure stratum but differs at the
    /// point in modulus.
    ModulusEquation {
        exponents: Vec<i64>,
        value_at_point: f64,
        value_on_hull: f64,
    },
    /// Same monomial equation, violated in phase only.
    PhaseEquation {
        exponents: Vec<i64>,
        angle_defect: f64,
    },
}

#[derive(Debug, Clone, Serialize)]
pub struct MembershipVerdict {
    pub status: MembershipStatus,
    /// Scaled directions of the facets tight at the point (ambient, padded).
    pub tight_normals: Vec<Vec<f64>>,
    pub certificate: Option<Certificate>,
    /// Tolerance the verdict was computed with (boundary metric `tol·‖s‖₂`).
    pub tol: f64,
}

/// One facet inequality `⟨ξ, direction⟩ ≤ offset_rel` in log coordinates,
/// equivalently `|z^direction| ≤ exp(offset_abs)` on the hull.
///
/// The exact normal is a primitive nonnegative integer vector; it can be
/// large when the facet direction is irrational in origin, so all floating
/// work (and the wire format) uses the direction rescaled to max-entry 1.
#[derive(Debug, Clone)]
pub struct HullFacet {
    /// Exact primitive integer normal, nonnegative entries, on the stratum
    /// coordinates.
    pub normal: Vec<Int>,
    /// The normal rescaled so its largest entry is 1.
    pub normal_f64: Vec<f64>,
    pub norm: f64,
    /// `max_{x ∈ X} ⟨x, normal_f64⟩` (scaled direction).
    pub offset_rel: f64,
    /// `offset_rel + ⟨log|v|, normal_f64⟩ = log sup_hull |z^normal_f64|`.
    pub offset_abs: f64,
    /// Whether the facet is one side of an affine-hull equation.
    pub from_equality: bool,
}

/// Hull data restricted to one admissible support.
#[derive(Debug, Clone)]
struct Stratum {
    /// Indices into the active coordinate list.
    coords: Vec<usize>,
    space: RationalSubspace,
    /// Log points on the stratum coordinates (relative to the base point).
    points: Vec<Vec<f64>>,
    /// The same points in exact form (atoms of lifted float logs).
    points_exact: Vec<Vec<Rat>>,
    /// Indices of the extreme points of `conv(points)`.
    vertex_indices: Vec<usize>,
    /// Recession directions, exact, on the stratum coordinates.
    rays: Vec<Vec<Rat>>,
    facets: Vec<HullFacet>,
    log_base: Vec<f64>,
}

/// The complete hull description of an orbit `F·T·v`.
#[derive(Debug, Clone)]
pub struct OrbitHull {
    n: usize,
    /// Ambient indices of coordinates where the base point is nonzero.
    active: Vec<usize>,
    torus: TorusLattice,
    group: MonomialGroup,
    base: Vec<C64>,
    base_full: Vec<C64>,
    fixed_point: Vec<C64>,
    cone: PolyCone,
    idempotents: IdempotentSet,
    full: Stratum,
    pub tol: f64,
    pub max_denominator: u64,
}

/// Per-generator orbit condition: `f·v` stays on the complexified torus orbit
/// of `v` (log-modulus ratio in the log space, phase ratio on the torus).
pub fn check_incor(
    torus: &TorusLattice,
    group_: &MonomialGroup,
    v: &[C64],
    tol: f64,
) -> Result<Vec<bool>> {
    if let Some(index) = v.iter().position(|z| z.norm() == 0.0) {
        return Err(Error::ZeroComponent { index });
    }
    Ok(group_
        .generators()
        .iter()
        .map(|g| {
            torus.invariant_under(&g.perm) && group::orbit_log_ratio(torus, g, v, tol).is_ok()
        })
        .collect())
}

impl OrbitHull {
    /// Hull of `F·T·v` for `v` in the open torus.
    pub fn build(
        torus: &TorusLattice,
        group_: &MonomialGroup,
        v: &[C64],
        opts: HullOptions,
    ) -> Result<OrbitHull> {
        let n = torus.ambient_dim();
        if group_.dim() != n || v.len() != n {
            return Err(Error::Dimension(
                "torus, group and point must share one ambient dimension".into(),
            ));
        }
        if let Some(index) = v.iter().position(|z| z.norm() == 0.0) {
            return Err(Error::ZeroComponent { index });
        }
        for (index, g) in group_.generators().iter().enumerate() {
            if !torus.invariant_under(&g.perm) {
                return Err(Error::IncorViolation {
                    index,
                    detail: "generator permutation does not normalize the torus".into(),
                });
            }
            group::orbit_log_ratio(torus, g, v, opts.tol)
                .map_err(|detail| Error::IncorViolation { index, detail })?;
        }
        // With every coordinate of v nonzero and Γ saturated, the weights
        // generate the full character lattice, so the stabilizer of v in the
        // compact torus is automatically trivial.
        debug_assert_eq!(torus.subspace().dim(), torus.dim());

        let (normalized, fixed_point) = group::normalize_to_fixed_point(group_, torus, v, opts.tol)?;

        // Log points are built exactly from shared atoms: each log|v_k| is
        // lifted to an exact rational once and the differences are formed in
        // ℚ.  Twists are unimodular, so the moduli action is the permutation
        // alone, and relations between orbit points (equal sums, shared
        // difference directions) hold exactly instead of up to per-coordinate
        // rounding — which is what keeps non-simplicial facets in one piece.
        let atoms: Vec<Rat> = v.iter().map(|z| f64_to_rat(z.norm().ln())).collect();
        let mut points: Vec<Vec<Rat>> = Vec::new();
        for g in normalized.elements() {
            let inv = g.perm_inverse();
            let xi: Vec<Rat> = (0..n)
                .map(|k| atoms[inv[k]].clone() - atoms[k].clone())
                .collect();
            if !points.contains(&xi) {
                points.push(xi);
            }
        }

        let cone_ = cone::recession_cone(torus);
        let idempotents = cone::limit_idempotents(&cone_);
        let rays: Vec<Vec<Rat>> = cone_
            .rays()
            .iter()
            .map(|r| r.iter().map(|x| Rat::from_integer(x.clone())).collect())
            .collect();
        let log_base: Vec<f64> = v.iter().map(|z| z.norm().ln()).collect();
        let full = build_stratum(
            (0..n).collect(),
            torus.subspace().clone(),
            points,
            rays,
            log_base,
            opts.tol,
        )?;

        Ok(OrbitHull {
            n,
            active: (0..n).collect(),
            torus: torus.clone(),
            group: normalized,
            base: v.to_vec(),
            base_full: v.to_vec(),
            fixed_point,
            cone: cone_,
            idempotents,
            full,
            tol: opts.tol,
            max_denominator: opts.max_denominator,
        })
    }

    /// Hull of a single torus orbit `T·v`; zero coordinates of `v` are
    /// allowed and stay frozen at zero on the whole hull.
    pub fn for_torus_orbit(torus: &TorusLattice, v: &[C64], opts: HullOptions) -> Result<OrbitHull> {
        let n = torus.ambient_dim();
        if v.len() != n {
            return Err(Error::Dimension("point length differs from torus dimension".into()));
        }
        let active: Vec<usize> = (0..n).filter(|&k| v[k].norm() > 0.0).collect();
        let restricted = torus.subspace().restrict(&active);
        let sub_torus = TorusLattice::from_rational_span(active.len(), restricted.basis())?;
        let v_active: Vec<C64> = active.iter().map(|&k| v[k]).collect();
        let trivial = MonomialGroup::trivial(active.len());
        let mut hull = OrbitHull::build(&sub_torus, &trivial, &v_active, opts)?;
        hull.n = n;
        hull.active = active;
        hull.base_full = v.to_vec();
        Ok(hull)
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    /// Ambient coordinates frozen at zero (empty unless built from a base
    /// point with zeros).
    pub fn frozen_coords(&self) -> Vec<usize> {
        (0..self.n).filter(|k| !self.active.contains(k)).collect()
    }

    pub fn torus(&self) -> &TorusLattice {
        &self.torus
    }

    /// The fixed-point-normalized group.
    pub fn group(&self) -> &MonomialGroup {
        &self.group
    }

    pub fn base_point(&self) -> &[C64] {
        &self.base_full
    }

    /// The group-fixed point on the radial orbit (on active coordinates).
    pub fn fixed_point(&self) -> &[C64] {
        &self.fixed_point
    }

    pub fn recession_cone(&self) -> &PolyCone {
        &self.cone
    }

    pub fn idempotents(&self) -> &IdempotentSet {
        &self.idempotents
    }

    /// Orbit log points relative to the base point, on active coordinates.
    pub fn log_points(&self) -> &[Vec<f64>] {
        &self.full.points
    }

    /// Extreme points of the log polytope, on active coordinates.
    pub fn vertices_log(&self) -> Vec<Vec<f64>> {
        self.full
            .vertex_indices
            .iter()
            .map(|&i| self.full.points[i].clone())
            .collect()
    }

    /// Facets with normals padded to ambient integer exponent vectors.
    pub fn facets(&self) -> Vec<HullFacet> {
        self.full
            .facets
            .iter()
            .map(|f| self.pad_facet(&self.full, f))
            .collect()
    }

    fn pad_facet(&self, stratum: &Stratum, f: &HullFacet) -> HullFacet {
        let mut normal = vec![Int::zero(); self.n];
        let mut normal_f64 = vec![0.0; self.n];
        for (pos, &ci) in stratum.coords.iter().enumerate() {
            let amb = self.active[ci];
            normal[amb] = f.normal[pos].clone();
            normal_f64[amb] = f.normal_f64[pos];
        }
        HullFacet {
            normal,
            normal_f64,
            norm: f.norm,
            offset_rel: f.offset_rel,
            offset_abs: f.offset_abs,
            from_equality: f.from_equality,
        }
    }

    fn pad_exponents(&self, stratum: &Stratum, w: &[Int]) -> Vec<i64> {
        let mut out = vec![0i64; self.n];
        for (pos, &ci) in stratum.coords.iter().enumerate() {
            out[self.active[ci]] = w[pos].to_i64().expect("exponent fits i64");
        }
        out
    }

    fn pad_direction(&self, stratum: &Stratum, w: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.n];
        for (pos, &ci) in stratum.coords.iter().enumerate() {
            out[self.active[ci]] = w[pos];
        }
        out
    }

    /// Intrinsic facet normals of the full stratum: unit vectors in the log
    /// space (basis-independent), sorted.  Used for rigidity comparisons.
    pub fn intrinsic_unit_normals(&self) -> Vec<Vec<f64>> {
        let space = &self.full.space;
        let mut out: Vec<Vec<f64>> = self
            .full
            .facets
            .iter()
            .map(|f| {
                let p = space.project_f64(&f.normal_f64);
                let norm = p.iter().map(|x| x * x).sum::<f64>().sqrt();
                p.iter().map(|x| x / norm).collect()
            })
            .collect();
        out.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
        out
    }

    /// Membership of `z` in the hull, with certificate on `Outside`.
    pub fn membership(&self, z: &[C64], tol: f64) -> MembershipVerdict {
        assert_eq!(z.len(), self.n, "query point has wrong dimension");
        // Frozen coordinates admit no nonzero value anywhere on the hull: the
        // coordinate function itself separates.
        for (k, zk) in z.iter().enumerate() {
            if !self.active.contains(&k) && zk.norm() > 0.0 {
                let mut exponents = vec![0i64; self.n];
                exponents[k] = 1;
                return MembershipVerdict {
                    status: MembershipStatus::Outside,
                    tight_normals: Vec::new(),
                    certificate: Some(Certificate::Monomial {
                        exponents,
                        value_at_point: zk.norm(),
                        hull_sup: 0.0,
                        log_value_at_point: zk.norm().ln(),
                        log_hull_sup: f64::NEG_INFINITY,
                    }),
                    tol,
                };
            }
        }
        let z_active: Vec<C64> = self.active.iter().map(|&k| z[k]).collect();
        let support: Vec<usize> = (0..z_active.len()).filter(|&i| z_active[i].norm() > 0.0).collect();

        if support.len() == z_active.len() {
            return self.verdict_on_stratum(&self.full, &z_active, tol);
        }

        let supports = self.idempotents.supports();
        if !supports.iter().any(|s| s == &support) {
            let ambient_supports: Vec<Vec<usize>> = supports
                .iter()
                .map(|s| s.iter().map(|&i| self.active[i]).collect())
                .collect();
            return MembershipVerdict {
                status: MembershipStatus::Outside,
                tight_normals: Vec::new(),
                certificate: Some(Certificate::SupportMismatch {
                    support: support.iter().map(|&i| self.active[i]).collect(),
                    admissible_supports: ambient_supports,
                }),
                tol,
            };
        }

        match self.stratum_for(&support) {
            Ok(stratum) => {
                let z_s: Vec<C64> = support.iter().map(|&i| z_active[i]).collect();
                self.verdict_on_stratum(&stratum, &z_s, tol)
            }
            Err(_) => MembershipVerdict {
                status: MembershipStatus::Outside,
                tight_normals: Vec::new(),
                certificate: None,
                tol,
            },
        }
    }

    /// The hull data projected to one admissible support.  Projection of the
    /// generator representation is exact: vertices project coordinatewise and
    /// the recession cone of the stratum is the projected cone (the limit
    /// face directions absorb the dropped coordinates).
    fn stratum_for(&self, support: &[usize]) -> Result<Stratum> {
        let space = self.full.space.restrict(support);
        let points: Vec<Vec<Rat>> = self
            .full
            .points_exact
            .iter()
            .map(|p| support.iter().map(|&i| p[i].clone()).collect())
            .collect();
        let mut rays: Vec<Vec<Rat>> = Vec::new();
        for r in &self.full.rays {
            let pr: Vec<Rat> = support.iter().map(|&i| r[i].clone()).collect();
            if pr.iter().any(|x| !x.is_zero()) && !rays.contains(&pr) {
                rays.push(pr);
            }
        }
        let log_base: Vec<f64> = support.iter().map(|&i| self.full.log_base[i]).collect();
        build_stratum(
            support.to_vec(),
            space,
            points,
            rays,
            log_base,
            self.tol,
        )
    }

    fn verdict_on_stratum(&self, stratum: &Stratum, z: &[C64], tol: f64) -> MembershipVerdict {
        let xi: Vec<f64> = z
            .iter()
            .zip(&stratum.log_base)
            .map(|(zk, lb)| zk.norm().ln() - lb)
            .collect();

        if !stratum.space.contains_f64(&xi, tol) {
            let cert = self.modulus_equation_certificate(stratum, &xi);
            return MembershipVerdict {
                status: MembershipStatus::Outside,
                tight_normals: Vec::new(),
                certificate: cert,
                tol,
            };
        }

        let theta: Vec<f64> = z
            .iter()
            .enumerate()
            .map(|(i, zk)| {
                let base_idx = stratum.coords[i];
                zk.arg() - self.base[base_idx].arg()
            })
            .collect();
        if !stratum.space.phase_contains(&theta, tol) {
            let cert = self.phase_equation_certificate(stratum, &theta, tol);
            return MembershipVerdict {
                status: MembershipStatus::Outside,
                tight_normals: Vec::new(),
                certificate: cert,
                tol,
            };
        }

        let mut worst: f64 = f64::NEG_INFINITY;
        let mut tight = Vec::new();
        for f in &stratum.facets {
            let slack = dot_f64(&xi, &f.normal_f64) - f.offset_rel;
            let normalized = slack / f.norm;
            if normalized.abs() <= tol {
                tight.push(self.pad_direction(stratum, &f.normal_f64));
            }
            worst = worst.max(normalized);
        }
        if worst > tol {
            let certificate = self
                .monomial_certificate_on(stratum, &xi)
                .ok();
            MembershipVerdict {
                status: MembershipStatus::Outside,
                tight_normals: Vec::new(),
                certificate,
                tol,
            }
        } else if !tight.is_empty() {
            MembershipVerdict {
                status: MembershipStatus::Boundary,
                tight_normals: tight,
                certificate: None,
                tol,
            }
        } else {
            MembershipVerdict {
                status: MembershipStatus::Inside,
                tight_normals: Vec::new(),
                certificate: None,
                tol,
            }
        }
    }

    fn modulus_equation_certificate(&self, stratum: &Stratum, xi: &[f64]) -> Option<Certificate> {
        let ann = stratum.space.integer_annihilator();
        let best = ann.iter().max_by(|a, b| {
            let va = pairing(xi, a).abs() / int_norm(a);
            let vb = pairing(xi, b).abs() / int_norm(b);
            va.partial_cmp(&vb).expect("finite")
        })?;
        let value = pairing(xi, best);
        if value == 0.0 {
            return None;
        }
        let log_at_point: f64 = best
            .iter()
            .zip(xi.iter().zip(&stratum.log_base))
            .map(|(w, (x, lb))| w.to_f64().expect("fits") * (x + lb))
            .sum();
        let log_on_hull: f64 = best
            .iter()
            .zip(&stratum.log_base)
            .map(|(w, lb)| w.to_f64().expect("fits") * lb)
            .sum();
        Some(Certificate::ModulusEquation {
            exponents: self.pad_exponents(stratum, best),
            value_at_point: log_at_point.exp(),
            value_on_hull: log_on_hull.exp(),
        })
    }

    fn phase_equation_certificate(
        &self,
        stratum: &Stratum,
        theta: &[f64],
        tol: f64,
    ) -> Option<Certificate> {
        let tau = std::f64::consts::TAU;
        for w in stratum.space.integer_annihilator() {
            let turns = pairing(theta, w) / tau;
            let defect = (turns - turns.round()).abs();
            if defect > tol * (1.0 + int_norm(w)) {
                return Some(Certificate::PhaseEquation {
                    exponents: self.pad_exponents(stratum, w),
                    angle_defect: defect * tau,
                });
            }
        }
        None
    }

    /// Positive-integer separating monomial for a facet violation at log
    /// point `xi`.
    ///
    /// The violated facet direction separates but need not be rational;
    /// integer exponents come from rounding the scaled direction at a common
    /// denominator, sweeping denominators upward and re-verifying the margin
    /// each time.  Strict positivity is restored afterwards by mixing in the
    /// all-ones vector, which is harmless because the recession directions
    /// are coordinatewise nonpositive.
    fn monomial_certificate_on(&self, stratum: &Stratum, xi: &[f64]) -> Result<Certificate> {
        let f = stratum
            .facets
            .iter()
            .max_by(|a, b| {
                let ga = (dot_f64(xi, &a.normal_f64) - a.offset_rel) / a.norm;
                let gb = (dot_f64(xi, &b.normal_f64) - b.offset_rel) / b.norm;
                ga.partial_cmp(&gb).expect("finite")
            })
            .ok_or_else(|| Error::NoMonomialCertificate("no facets on this stratum".into()))?;

        let make = |s: &[Int]| -> (f64, f64, f64) {
            // gap data: (log value at point, log sup over hull, ‖s‖)
            let sf: Vec<f64> = s.iter().map(|x| x.to_f64().expect("fits")).collect();
            let log_at: f64 = sf
                .iter()
                .zip(xi.iter().zip(&stratum.log_base))
                .map(|(w, (x, lb))| w * (x + lb))
                .sum();
            let rel: f64 = stratum
                .points
                .iter()
                .map(|p| dot_f64(p, &sf))
                .fold(f64::NEG_INFINITY, f64::max);
            let log_sup = rel + dot_f64(&sf, &stratum.log_base);
            let norm = sf.iter().map(|x| x * x).sum::<f64>().sqrt();
            (log_at, log_sup, norm)
        };
        let tol = self.tol;
        let verified = |s: &[Int]| -> bool {
            if s.iter().any(|x| x.is_negative()) || s.iter().all(|x| x.is_zero()) {
                return false;
            }
            let (log_at, log_sup, norm) = make(s);
            log_at - log_sup > tol * norm
        };

        // Candidate common denominators: a small sweep plus the continued
        // fraction denominators of each direction entry.
        let mut denominators: Vec<u64> = (1..=64).collect();
        for &x in &f.normal_f64 {
            let mut q = 128u64;
            while q <= self.max_denominator {
                denominators.push(q);
                q *= 8;
            }
            if let Some((_, q)) = best_rational(x, self.max_denominator) {
                denominators.push(q);
            }
        }
        denominators.sort_unstable();
        denominators.dedup();
        denominators.retain(|&q| q <= self.max_denominator);

        let mut base: Option<Vec<Int>> = None;
        for &q in &denominators {
            let s: Vec<Int> = f
                .normal_f64
                .iter()
                .map(|&x| Int::from((x * q as f64).round() as i64))
                .collect();
            let mut s = s;
            if let Some(min) = s.iter().min() {
                if min.is_negative() {
                    continue;
                }
            }
            // Reduce to primitive form for small exponents.
            let rat: Vec<Rat> = s.iter().map(|x| Rat::from_integer(x.clone())).collect();
            s = primitive_integer(&rat);
            if verified(&s) {
                base = Some(s);
                break;
            }
        }
        let base = base.ok_or(Error::RationalizationFailed {
            bound: self.max_denominator,
        })?;

        let candidate = if base.iter().all(|x| x.is_positive()) {
            Some(base.clone())
        } else {
            let max_j = (self.max_denominator as f64).log2().floor() as u32;
            let mut found = None;
            for j in 1..=max_j {
                let scale = Int::from(2).pow(j);
                let s: Vec<Int> = base.iter().map(|x| x * &scale + 1).collect();
                if verified(&s) {
                    found = Some(s);
                    break;
                }
            }
            found
        };
        let s = candidate.ok_or(Error::RationalizationFailed {
            bound: self.max_denominator,
        })?;
        let (log_at, log_sup, _) = make(&s);
        Ok(Certificate::Monomial {
            exponents: self.pad_exponents(stratum, &s),
            value_at_point: log_at.exp(),
            hull_sup: log_sup.exp(),
            log_value_at_point: log_at,
            log_hull_sup: log_sup,
        })
    }

    /// Separating monomial for an `Outside` point: `z^s` with all exponents
    /// at least one on the point's support, strictly larger at `z` than
    /// anywhere on the hull.
    pub fn separating_certificate(&self, z: &[C64]) -> Result<Certificate> {
        let verdict = self.membership(z, self.tol);
        match verdict.status {
            MembershipStatus::Outside => match verdict.certificate {
                Some(c @ Certificate::Monomial { .. }) => Ok(c),
                Some(Certificate::SupportMismatch { .. }) => Err(Error::NoMonomialCertificate(
                    "support pattern mismatch: no admissible idempotent".into(),
                )),
                Some(Certificate::ModulusEquation { .. }) | Some(Certificate::PhaseEquation { .. }) => {
                    Err(Error::NoMonomialCertificate(
                        "point leaves the orbit closure; the separating polynomial is a \
                         monomial equation, not a bound"
                            .into(),
                    ))
                }
                None => Err(Error::RationalizationFailed {
                    bound: self.max_denominator,
                }),
            },
            status => Err(Error::NotOutside {
                verdict: status.to_string(),
            }),
        }
    }

    /// `log sup_hull |z^s|` for a nonnegative exponent vector supported on
    /// the active coordinates (the vertex formula: finite because the
    /// recession directions pair nonpositively with nonnegative exponents).
    pub fn monomial_log_bound(&self, exponents: &[i64]) -> f64 {
        let as_f64: Vec<f64> = exponents.iter().map(|&e| e as f64).collect();
        self.monomial_log_bound_f64(&as_f64)
    }

    /// Same bound for real nonnegative exponent vectors (facet directions).
    pub fn monomial_log_bound_f64(&self, exponents: &[f64]) -> f64 {
        let s_active: Vec<f64> = self.active.iter().map(|&k| exponents[k]).collect();
        let rel = self
            .full
            .points
            .iter()
            .map(|p| dot_f64(p, &s_active))
            .fold(f64::NEG_INFINITY, f64::max);
        rel + dot_f64(&s_active, &self.full.log_base)
    }

    /// Canonical JSON value of the hull description.
    pub fn to_json_value(&self) -> serde_json::Value {
        let facets: Vec<serde_json::Value> = self
            .facets()
            .iter()
            .map(|f| {
                serde_json::json!({
                    "s": f.normal_f64,
                    "s_exact": f.normal.iter().map(|x| x.to_string()).collect::<Vec<String>>(),
                    "c": f.offset_abs,
                    "c_rel": f.offset_rel,
                    "equality": f.from_equality,
                })
            })
            .collect();
        let pad_real = |p: &Vec<f64>| -> Vec<f64> {
            let mut out = vec![0.0; self.n];
            for (i, &k) in self.active.iter().enumerate() {
                out[k] = p[i];
            }
            out
        };
        let rays: Vec<Vec<i64>> = self
            .cone
            .rays()
            .iter()
            .map(|r| {
                let mut out = vec![0i64; self.n];
                for (i, &k) in self.active.iter().enumerate() {
                    out[k] = r[i].to_i64().expect("fits");
                }
                out
            })
            .collect();
        let idempotents: Vec<Vec<u8>> = self
            .idempotents
            .elements
            .iter()
            .map(|e| {
                let mut out = vec![0u8; self.n];
                for (i, &k) in self.active.iter().enumerate() {
                    out[k] = e[i];
                }
                out
            })
            .collect();
        serde_json::json!({
            "n": self.n,
            "frozen_zero_coords": self.frozen_coords(),
            "facets": facets,
            "vertices_log": self.vertices_log().iter().map(pad_real).collect::<Vec<_>>(),
            "rays": rays,
            "idempotents": idempotents,
            "tol": self.tol,
        })
    }

    /// Test hook: shift one facet offset (both scales) by `delta`.
    #[doc(hidden)]
    pub fn perturb_facet_offset(&mut self, index: usize, delta: f64) {
        let f = &mut self.full.facets[index];
        f.offset_rel += delta;
        f.offset_abs += delta;
    }

    pub fn facet_count(&self) -> usize {
        self.full.facets.len()
    }
}

fn build_stratum(
    coords: Vec<usize>,
    space: RationalSubspace,
    raw_points: Vec<Vec<Rat>>,
    rays: Vec<Vec<Rat>>,
    log_base: Vec<f64>,
    tol: f64,
) -> Result<Stratum> {
    let m = coords.len();
    assert!(m <= 16, "stratum lift enumeration is meant for small dimensions");
    let d = space.dim();

    let mut exact_points: Vec<Vec<Rat>> = Vec::new();
    for p in raw_points {
        if !exact_points.contains(&p) {
            exact_points.push(p);
        }
    }
    exact_points.sort();
    let points: Vec<Vec<f64>> = exact_points
        .iter()
        .map(|p| p.iter().map(rat_to_f64).collect())
        .collect();
    for p in &points {
        if !space.contains_f64(p, tol.max(1e-9) * 10.0) {
            return Err(Error::Invalid(format!(
                "orbit log point {p:?} is off the torus log space"
            )));
        }
    }

    // Exact intrinsic coordinates: apply (BBᵀ)⁻¹B in rational arithmetic.
    // The exact points sit only float-close to the span, so this is the
    // exact orthogonal projection expressed in the basis, which is linear
    // and therefore keeps every exact relation between the points.
    let intrinsic_points: Vec<Vec<Rat>> = exact_points
        .iter()
        .map(|p| {
            space
                .express_rows()
                .iter()
                .map(|row| linalg::dot(row, p))
                .collect()
        })
        .collect();
    let intrinsic_rays: Vec<Vec<Rat>> = rays
        .iter()
        .map(|r| space.express_exact(r).ok_or(Error::Invalid("ray off the subspace".into())))
        .collect::<Result<_>>()?;

    let hrep = dd::facets_of_polyhedron(d, &intrinsic_points, &intrinsic_rays);

    let mut facets: Vec<HullFacet> = Vec::new();
    let mut push_facet = |intr: &[Rat], from_equality: bool| -> Result<()> {
        let ambient = cone::functional_ambient(&space, intr);
        let lift = min_norm_nonneg_lift(&space, &ambient)?;
        let normal = primitive_integer(&lift);
        if normal.iter().all(|x| x.is_zero()) {
            return Ok(());
        }
        // Exact rescale to max-entry 1 before any float conversion: the raw
        // integer entries can exceed the double range.
        let max_entry = normal.iter().max().expect("nonempty").clone();
        let normal_f64: Vec<f64> = normal
            .iter()
            .map(|x| rat_to_f64(&Rat::new(x.clone(), max_entry.clone())))
            .collect();
        let offset_rel = points
            .iter()
            .map(|p| dot_f64(p, &normal_f64))
            .fold(f64::NEG_INFINITY, f64::max);
        let offset_abs = offset_rel + dot_f64(&normal_f64, &log_base);
        let norm = normal_f64.iter().map(|x| x * x).sum::<f64>().sqrt();
        if !facets.iter().any(|f| f.normal == normal) {
            facets.push(HullFacet {
                normal,
                normal_f64,
                norm,
                offset_rel,
                offset_abs,
                from_equality,
            });
        }
        Ok(())
    };
    for (a, _) in &hrep.ineqs {
        push_facet(a, false)?;
    }
    for (a, _) in &hrep.eqs {
        push_facet(a, true)?;
        let neg: Vec<Rat> = a.iter().map(|x| -x.clone()).collect();
        push_facet(&neg, true)?;
    }
    facets.sort_by(|a, b| a.normal.cmp(&b.normal));

    let vertex_indices = polytope_vertices(d, &intrinsic_points);

    Ok(Stratum {
        coords,
        space,
        points,
        points_exact: exact_points,
        vertex_indices,
        rays,
        facets,
        log_base,
    })
}

/// Indices of the extreme points of `conv(points)`: a point is a vertex iff
/// the facet and affine-hull normals active at it have full rank.
fn polytope_vertices(dim: usize, points: &[Vec<Rat>]) -> Vec<usize> {
    if points.len() <= 1 {
        return (0..points.len()).collect();
    }
    let hrep = dd::facets_of_polyhedron(dim, points, &[]);
    let mut out = Vec::new();
    for (i, p) in points.iter().enumerate() {
        let mut active: Vec<Vec<Rat>> = hrep
            .ineqs
            .iter()
            .filter(|(a, b)| &linalg::dot(a, p) == b)
            .map(|(a, _)| a.clone())
            .collect();
        active.extend(hrep.eqs.iter().map(|(a, _)| a.clone()));
        if linalg::rank(&active) == dim {
            out.push(i);
        }
    }
    out
}

/// Minimum-norm nonnegative ambient representative of a functional given by
/// its in-subspace vector: minimize `‖w‖²` over `{w ≥ 0 : π(w) = s}`.
///
/// Existence: a facet functional of `Q + C` is bounded above on the recession
/// cone `C = span ∩ clos(−ℝ₊^m)`, and the polar of `C` inside the span is
/// exactly the projection of the nonnegative orthant, so some nonnegative
/// lift exists.  The quadratic program is solved exactly by enumerating
/// active sets: for each zero pattern the equality-constrained minimizer is a
/// linear solve, and the best feasible one is the global optimum.
fn min_norm_nonneg_lift(space: &RationalSubspace, s_ambient: &[Rat]) -> Result<Vec<Rat>> {
    let m = space.ambient_dim();
    let basis = space.basis();
    let d = basis.len();
    if d == 0 {
        return Ok(vec![Rat::zero(); m]);
    }
    // Constraint B w = B s (same functional on the subspace).
    let target: Vec<Rat> = basis.iter().map(|row| linalg::dot(row, s_ambient)).collect();

    let mut best: Option<(Rat, Vec<Rat>)> = None;
    for mask in 0u32..(1 << m) {
        let free: Vec<usize> = (0..m).filter(|&k| mask & (1 << k) == 0).collect();
        if free.is_empty() {
            if target.iter().all(|t| t.is_zero()) {
                let w = vec![Rat::zero(); m];
                consider(&mut best, w);
            }
            continue;
        }
        // Gram system on the free coordinates: (B_F B_Fᵀ) μ = target,
        // w_F = B_Fᵀ μ.
        let bf: Vec<Vec<Rat>> = basis
            .iter()
            .map(|row| free.iter().map(|&k| row[k].clone()).collect())
            .collect();
        let gram: Vec<Vec<Rat>> = (0..d)
            .map(|i| (0..d).map(|j| linalg::dot(&bf[i], &bf[j])).collect())
            .collect();
        let Some(mu) = linalg::solve(&gram, &target) else {
            continue;
        };
        let mut w = vec![Rat::zero(); m];
        for (narrow, &k) in free.iter().enumerate() {
            let mut acc = Rat::zero();
            for (i, mi) in mu.iter().enumerate() {
                acc = acc + mi * &bf[i][narrow];
            }
            w[k] = acc;
        }
        if w.iter().any(|x| x.is_negative()) {
            continue;
        }
        consider(&mut best, w);
    }
    best.map(|(_, w)| w).ok_or_else(|| {
        Error::Invalid("functional admits no nonnegative lift (not bounded on the cone)".into())
    })
}

fn consider(best: &mut Option<(Rat, Vec<Rat>)>, w: Vec<Rat>) {
    let norm2: Rat = w.iter().map(|x| x * x).fold(Rat::zero(), |a, b| a + b);
    let better = match best {
        None => true,
        Some((bn, bw)) => norm2 < *bn || (norm2 == *bn && w < *bw),
    };
    if better {
        *best = Some((norm2, w));
    }
}

// ---------------------------------------------------------------------------
// Analytic strips
// ---------------------------------------------------------------------------

/// The holomorphic strip `λ(z) = exp(zξ)·v` on `0 ≤ Re z ≤ 1` joining the
/// radial-orbit points `v` and `u`; periodic in `Im z` exactly when `ξ` is a
/// real multiple of a lattice-rational direction.
#[derive(Debug, Clone, Serialize)]
pub struct StripDescriptor {
    pub xi: Vec<f64>,
    #[serde(serialize_with = "ser_complex_vec")]
    pub v: Vec<C64>,
    #[serde(serialize_with = "ser_complex_vec")]
    pub u: Vec<C64>,
    pub periodic: bool,
    pub period: Option<f64>,
    pub degenerate: bool,
}

fn ser_complex_vec<S: serde::Serializer>(v: &Vec<C64>, ser: S) -> std::result::Result<S::Ok, S::Error> {
    let pairs: Vec<[f64; 2]> = v.iter().map(|z| [z.re, z.im]).collect();
    serde::Serialize::serialize(&pairs, ser)
}

impl StripDescriptor {
    /// `λ(z) = exp(zξ)·v`, so `λ(0) = v` and `λ(1) = u`.
    pub fn eval(&self, z: C64) -> Vec<C64> {
        self.xi
            .iter()
            .zip(&self.v)
            .map(|(&x, vk)| (z * x).exp() * vk)
            .collect()
    }
}

/// Strip data for `u = exp(ξ)·v` with `ξ` in the log space.
pub fn analytic_strip(
    torus: &TorusLattice,
    v: &[C64],
    u: &[C64],
    tol: f64,
) -> Result<StripDescriptor> {
    let n = torus.ambient_dim();
    if v.len() != n || u.len() != n {
        return Err(Error::Dimension("strip endpoints must match the torus dimension".into()));
    }
    if let Some(index) = v.iter().position(|z| z.norm() == 0.0) {
        return Err(Error::ZeroComponent { index });
    }
    if let Some(index) = u.iter().position(|z| z.norm() == 0.0) {
        return Err(Error::ZeroComponent { index });
    }
    let xi_raw: Vec<f64> = u
        .iter()
        .zip(v)
        .map(|(uk, vk)| uk.norm().ln() - vk.norm().ln())
        .collect();
    if !torus.subspace().contains_f64(&xi_raw, tol) {
        return Err(Error::NotOnRadialOrbit(format!(
            "log-modulus ratio leaves the log space by {:.3e}",
            torus.subspace().distance_f64(&xi_raw)
        )));
    }
    for (k, (uk, vk)) in u.iter().zip(v).enumerate() {
        let d = (uk.arg() - vk.arg()).rem_euclid(std::f64::consts::TAU);
        if d.min(std::f64::consts::TAU - d) > tol {
            return Err(Error::NotOnRadialOrbit(format!(
                "phase mismatch at coordinate {k}: the radial orbit keeps phases"
            )));
        }
    }
    let xi = torus.subspace().project_f64(&xi_raw);

    let scale = xi.iter().map(|x| x.abs()).fold(0.0f64, f64::max);
    if scale <= tol {
        return Ok(StripDescriptor {
            xi: vec![0.0; n],
            v: v.to_vec(),
            u: u.to_vec(),
            periodic: false,
            period: None,
            degenerate: true,
        });
    }

    let (periodic, period) = match rational_direction(&xi, 1_000_000) {
        Some(rho) => {
            let rho_rat: Vec<Rat> = rho.iter().map(|x| Rat::from_integer(x.clone())).collect();
            if torus.subspace().contains_exact(&rho_rat) {
                let k = xi
                    .iter()
                    .enumerate()
                    .max_by(|a, b| a.1.abs().partial_cmp(&b.1.abs()).expect("finite"))
                    .map(|(i, _)| i)
                    .expect("nonzero direction");
                let c = xi[k] / rho[k].to_f64().expect("fits");
                (true, Some(std::f64::consts::TAU / c.abs()))
            } else {
                (false, None)
            }
        }
        None => (false, None),
    };

    Ok(StripDescriptor {
        xi,
        v: v.to_vec(),
        u: u.to_vec(),
        periodic,
        period,
        degenerate: false,
    })
}

/// Detect whether a float vector is (numerically) a real multiple of an
/// integer vector, returning the primitive integer direction.
///
/// Each component ratio is rationalized by continued fractions under the
/// denominator bound; a candidate `p/q` is accepted only within `1e-10/q`,
/// which passes float images of true rationals and rejects convergents of
/// irrationals (those only achieve error of order `1/q²`).
fn rational_direction(xi: &[f64], max_denominator: u64) -> Option<Vec<Int>> {
    let k = xi
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.abs().partial_cmp(&b.1.abs()).expect("finite"))
        .map(|(i, _)| i)?;
    let mut rats: Vec<Rat> = Vec::with_capacity(xi.len());
    for &x in xi {
        let r = x / xi[k];
        let (p, q) = best_rational(r, max_denominator)?;
        if (r - p as f64 / q as f64).abs() > 1e-10 / q as f64 {
            return None;
        }
        rats.push(Rat::new(p.into(), q.into()));
    }
    Some(primitive_integer(&rats))
}

/// Best rational approximation `p/q` with `q ≤ max_den` (continued fractions).
pub(crate) fn best_rational(x: f64, max_den: u64) -> Option<(i64, u64)> {
    if !x.is_finite() {
        return None;
    }
    let negative = x < 0.0;
    let mut x = x.abs();
    let (mut p0, mut q0, mut p1, mut q1) = (0i64, 1u64, 1i64, 0u64);
    for _ in 0..64 {
        let a = x.floor();
        if a > i64::MAX as f64 {
            return None;
        }
        let a_int = a as i64;
        let p2 = a_int.checked_mul(p1)?.checked_add(p0)?;
        let q2 = (a_int as u64).checked_mul(q1)?.checked_add(q0)?;
        if q2 > max_den {
            break;
        }
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        let frac = x - a;
        if frac < 1e-15 {
            break;
        }
        x = 1.0 / frac;
    }
    if q1 == 0 {
        return None;
    }
    Some((if negative { -p1 } else { p1 }, q1))
}

fn dot_f64(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

fn pairing(x: &[f64], w: &[Int]) -> f64 {
    x.iter()
        .zip(w)
        .map(|(a, b)| a * b.to_f64().expect("fits"))
        .sum()
}

fn int_norm(w: &[Int]) -> f64 {
    w.iter()
        .map(|x| {
            let f = x.to_f64().expect("fits");
            f * f
        })
        .sum::<f64>()
        .sqrt()
}
