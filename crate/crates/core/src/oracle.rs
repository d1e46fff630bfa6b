//! Independent brute-force verification of emitted hull descriptions.
//!
//! Four randomized checks, all derived from the defining property of the
//! hull rather than from the facet pipeline: orbit samples may never be
//! rejected; monomial suprema over samples must match the vertex formula;
//! points pushed just beyond each facet must be rejected with a sound
//! certificate; interior points must be accepted.  Failures are data, not
//! panics, so a tampered hull is reported rather than crashed on.

use num_traits::ToPrimitive as _;
use rand::Rng as _;
use rand::SeedableRng as _;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::group::{MonomialElement, MonomialGroup};
use crate::hull::{Certificate, MembershipStatus, OrbitHull};
use crate::ratlin::TorusLattice;
use crate::{classify, C64, Int, Result};

#[derive(Debug, Clone, Serialize)]
pub struct Violation {
    pub check: String,
    pub detail: String,
    /// Witness point, `[re, im]` per coordinate (empty for abstract checks).
    pub witness: Vec<[f64; 2]>,
    pub magnitude: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub checks_run: usize,
    pub failures: Vec<Violation>,
    pub max_violation: f64,
    pub seed: u64,
}

impl VerificationReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub n_points: usize,
    pub n_monomials: usize,
    pub seed: u64,
    pub tol: f64,
    /// Log-scale slack granted to sampled suprema against the exact bound.
    pub sampling_slack: f64,
    pub threads: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            n_points: 10_000,
            n_monomials: 50,
            seed: 42,
            tol: 1e-6,
            sampling_slack: 0.05,
            threads: 1,
        }
    }
}

/// `count` points `g · exp(iη) · v` with `g` uniform over the cached group
/// and `η` uniform over a fundamental cell of the angle lattice.
/// Deterministic per seed.
pub fn sample_orbit(
    torus: &TorusLattice,
    group: &MonomialGroup,
    v: &[C64],
    count: usize,
    seed: u64,
) -> Vec<Vec<C64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = torus.dim();
    (0..count)
        .map(|_| {
            let g = &group.elements()[rng.gen_range(0..group.order())];
            let cell: Vec<f64> = (0..d).map(|_| rng.gen_range(0.0..1.0)).collect();
            let theta = torus.cell_angles(&cell);
            let rotated: Vec<C64> = v
                .iter()
                .zip(&theta)
                .map(|(z, &t)| z * C64::from_polar(1.0, t))
                .collect();
            g.apply(&rotated)
        })
        .collect()
}

/// `max_points ∏ |z_k|^{s_k}`, accumulated in log scale.  Zero coordinates
/// demand nonnegative exponents (the monomial extends by continuity).
pub fn empirical_sup(points: &[Vec<C64>], exponents: &[i64]) -> f64 {
    empirical_sup_log(points, exponents).exp()
}

pub fn empirical_sup_log(points: &[Vec<C64>], exponents: &[i64]) -> f64 {
    let as_f64: Vec<f64> = exponents.iter().map(|&s| s as f64).collect();
    empirical_sup_log_f64(points, &as_f64)
}

/// Real-exponent variant, used against facet directions.
pub fn empirical_sup_log_f64(points: &[Vec<C64>], exponents: &[f64]) -> f64 {
    let mut best = f64::NEG_INFINITY;
    for z in points {
        let mut acc = 0.0;
        for (zk, &s) in z.iter().zip(exponents) {
            if s == 0.0 {
                continue;
            }
            let m = zk.norm();
            debug_assert!(s > 0.0 || m > 0.0, "negative exponent at a zero coordinate");
            acc += s * m.ln();
        }
        best = best.max(acc);
    }
    best
}

/// Cross-validate a hull description against orbit sampling.
pub fn verify_hull(hull: &OrbitHull, opts: &VerifyOptions) -> VerificationReport {
    let mut failures: Vec<Violation> = Vec::new();
    let mut checks_run = 0usize;
    let n = hull.ambient_dim();
    let v_full = hull.base_point().to_vec();
    let active: Vec<usize> = (0..n).filter(|k| !hull.frozen_coords().contains(k)).collect();

    // (a) Orbit samples are never rejected.
    let v_active: Vec<C64> = active.iter().map(|&k| v_full[k]).collect();
    let samples_active = sample_orbit(
        hull.torus(),
        hull.group(),
        &v_active,
        opts.n_points,
        opts.seed ^ 0xA5A5_5A5A_0000_0001,
    );
    let samples: Vec<Vec<C64>> = samples_active
        .iter()
        .map(|s| {
            let mut z = vec![C64::new(0.0, 0.0); n];
            for (i, &k) in active.iter().enumerate() {
                z[k] = s[i];
            }
            z
        })
        .collect();
    let sample_verdicts = membership_bulk(hull, &samples, opts);
    for (z, verdict) in samples.iter().zip(&sample_verdicts) {
        checks_run += 1;
        if *verdict == MembershipStatus::Outside {
            failures.push(Violation {
                check: "orbit_sample_rejected".into(),
                detail: "an orbit point was classified Outside".into(),
                witness: witness(z),
                magnitude: opts.tol,
            });
        }
    }

    // (b) Monomial suprema: sampled versus the vertex formula.
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0xA5A5_5A5A_0000_0002);
    for _ in 0..opts.n_monomials {
        checks_run += 1;
        let mut s = vec![0i64; n];
        for &k in &active {
            s[k] = rng.gen_range(0..=5);
        }
        let predicted = hull.monomial_log_bound(&s);
        let sampled = empirical_sup_log(&samples, &s);
        if predicted.is_infinite() && sampled.is_infinite() {
            continue; // the zero monomial on a trivial sample set
        }
        if sampled > predicted + 1e-7 {
            failures.push(Violation {
                check: "monomial_sup_exceeded".into(),
                detail: format!(
                    "monomial {s:?}: sampled log-sup {sampled:.9} exceeds the bound {predicted:.9}"
                ),
                witness: Vec::new(),
                magnitude: sampled - predicted,
            });
        }
        if sampled < predicted - opts.sampling_slack {
            failures.push(Violation {
                check: "monomial_sup_not_attained".into(),
                detail: format!(
                    "monomial {s:?}: sampled log-sup {sampled:.9} stays {:.3e} under the bound",
                    predicted - sampled
                ),
                witness: Vec::new(),
                magnitude: predicted - sampled,
            });
        }
    }

    // (c) Points pushed past each facet must be Outside with a sound
    // monomial certificate.  The push starts from a relative-interior point
    // of the facet (attaining points averaged, plus the facet's recession
    // directions), so no neighboring facet is violated by accident.
    let space = hull.torus().subspace();
    let log_points = hull.log_points().to_vec();
    for (idx, facet) in hull.facets().iter().enumerate() {
        checks_run += 1;
        let s_active: Vec<f64> = active.iter().map(|&k| facet.normal_f64[k]).collect();
        let sigma = space.project_f64(&s_active);
        let norm = sigma.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        let values: Vec<f64> = log_points
            .iter()
            .map(|p| p.iter().zip(&s_active).map(|(x, y)| x * y).sum())
            .collect();
        let best_val = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let attaining: Vec<&Vec<f64>> = log_points
            .iter()
            .zip(&values)
            .filter(|(_, &val)| val >= best_val - 1e-9)
            .map(|(p, _)| p)
            .collect();
        let mut base = vec![0.0; active.len()];
        for p in &attaining {
            for (b, x) in base.iter_mut().zip(p.iter()) {
                *b += x / attaining.len() as f64;
            }
        }
        let s_int_active: Vec<Int> = active.iter().map(|&k| facet.normal[k].clone()).collect();
        for ray in hull.recession_cone().rays() {
            let pairing: Int = ray.iter().zip(&s_int_active).map(|(a, b)| a * b).sum();
            if pairing == Int::from(0) {
                for (b, r) in base.iter_mut().zip(ray) {
                    *b += 0.5 * r.to_f64().expect("ray entry fits f64");
                }
            }
        }
        let push = 2.0 * opts.tol;
        let xi: Vec<f64> = base
            .iter()
            .zip(&sigma)
            .map(|(x, sg)| x + push * sg / norm)
            .collect();
        let mut z = vec![C64::new(0.0, 0.0); n];
        for (i, &k) in active.iter().enumerate() {
            z[k] = v_full[k] * xi[i].exp();
        }
        let verdict = hull.membership(&z, opts.tol);
        if verdict.status != MembershipStatus::Outside {
            failures.push(Violation {
                check: "facet_push_accepted".into(),
                detail: format!(
                    "point pushed 2·tol past facet {idx} came back {}",
                    verdict.status
                ),
                witness: witness(&z),
                magnitude: push,
            });
            continue;
        }
        if let Some(Certificate::Monomial {
            exponents,
            log_value_at_point,
            ..
        }) = verdict.certificate
        {
            // Soundness against the vertex formula, not the stored offsets.
            let bound = hull.monomial_log_bound(&exponents);
            if log_value_at_point <= bound {
                failures.push(Violation {
                    check: "certificate_unsound".into(),
                    detail: format!(
                        "certificate {exponents:?} does not dominate the vertex bound"
                    ),
                    witness: witness(&z),
                    magnitude: bound - log_value_at_point,
                });
            }
        }
    }

    // (e) Every facet bound is attained by the orbit: the sampled supremum
    // of the facet monomial must sit just under the stored offset.  An
    // inflated offset shows up here whatever the facet geometry.
    for (idx, facet) in hull.facets().iter().enumerate() {
        checks_run += 1;
        let sampled = empirical_sup_log_f64(&samples, &facet.normal_f64);
        if sampled > facet.offset_abs + 1e-7 {
            failures.push(Violation {
                check: "facet_bound_exceeded".into(),
                detail: format!("orbit samples exceed the bound of facet {idx}"),
                witness: Vec::new(),
                magnitude: sampled - facet.offset_abs,
            });
        }
        if sampled < facet.offset_abs - opts.sampling_slack {
            failures.push(Violation {
                check: "facet_bound_not_attained".into(),
                detail: format!(
                    "facet {idx} claims log-bound {:.9} but samples only reach {sampled:.9}",
                    facet.offset_abs
                ),
                witness: Vec::new(),
                magnitude: facet.offset_abs - sampled,
            });
        }
    }

    // (d) Relative-interior points are accepted: strictly inside for a
    // full-dimensional polyhedron, boundary when the polyhedron is flat.
    let has_equalities = hull.facets().iter().any(|f| f.from_equality);
    let rays: Vec<Vec<f64>> = hull.recession_cone().rays_f64();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0xA5A5_5A5A_0000_0004);
    for _ in 0..50 {
        checks_run += 1;
        let mut weights: Vec<f64> = (0..log_points.len())
            .map(|_| rng.gen_range(0.2..1.0))
            .collect();
        let total: f64 = weights.iter().sum();
        weights.iter_mut().for_each(|w| *w /= total);
        let mut xi = vec![0.0; active.len()];
        for (p, w) in log_points.iter().zip(&weights) {
            for (x, pv) in xi.iter_mut().zip(p) {
                *x += w * pv;
            }
        }
        for ray in &rays {
            let c = rng.gen_range(0.5..1.5);
            for (x, rv) in xi.iter_mut().zip(ray) {
                *x += c * rv;
            }
        }
        let mut z = vec![C64::new(0.0, 0.0); n];
        for (i, &k) in active.iter().enumerate() {
            z[k] = v_full[k] * xi[i].exp();
        }
        let verdict = hull.membership(&z, opts.tol);
        let expected = if has_equalities {
            MembershipStatus::Boundary
        } else {
            MembershipStatus::Inside
        };
        if verdict.status != expected {
            failures.push(Violation {
                check: "interior_point_misjudged".into(),
                detail: format!("expected {expected}, got {}", verdict.status),
                witness: witness(&z),
                magnitude: opts.tol,
            });
        }
    }

    let max_violation = failures.iter().map(|f| f.magnitude).fold(0.0f64, f64::max);
    VerificationReport {
        checks_run,
        failures,
        max_violation,
        seed: opts.seed,
    }
}

/// Membership of many points, chunked over threads when requested; results
/// come back in input order, so reports are identical however many threads
/// run.
fn membership_bulk(hull: &OrbitHull, points: &[Vec<C64>], opts: &VerifyOptions) -> Vec<MembershipStatus> {
    let threads = opts.threads.max(1);
    if threads == 1 || points.len() < 2 * threads {
        return points.iter().map(|z| hull.membership(z, opts.tol).status).collect();
    }
    let chunk = points.len().div_ceil(threads);
    let mut out: Vec<Vec<MembershipStatus>> = Vec::new();
    std::thread::scope(|scope| {
        let handles: Vec<_> = points
            .chunks(chunk)
            .map(|part| scope.spawn(move || part.iter().map(|z| hull.membership(z, opts.tol).status).collect::<Vec<_>>()))
            .collect();
        for h in handles {
            out.push(h.join().expect("verification worker panicked"));
        }
    });
    out.into_iter().flatten().collect()
}

fn witness(z: &[C64]) -> Vec<[f64; 2]> {
    z.iter().map(|c| [c.re, c.im]).collect()
}

// ---------------------------------------------------------------------------
// Random configurations
// ---------------------------------------------------------------------------

/// A random pair (saturated lattice, small permutation group) with connected
/// generic orbits; deterministic per seed.  The lattice span is generated by
/// group-orbit closures of random integer rows, so it is invariant by
/// construction.
pub fn random_connected_pair(seed: u64, max_n: usize) -> Result<(TorusLattice, MonomialGroup)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(2..=max_n.max(2));
    let group = random_group(&mut rng, n)?;
    for _ in 0..50 {
        let k = rng.gen_range(1..=n);
        let mut rows: Vec<Vec<Int>> = Vec::new();
        for _ in 0..k {
            let row: Vec<Int> = (0..n).map(|_| Int::from(rng.gen_range(-2i64..=2))).collect();
            for part in group.perm_parts() {
                let mut permuted = vec![Int::from(0); n];
                for (i, &img) in part.iter().enumerate() {
                    permuted[img] = row[i].clone();
                }
                rows.push(permuted);
            }
        }
        let torus = TorusLattice::saturate(n, &rows)?;
        if torus.dim() == 0 {
            continue;
        }
        if classify::generically_connected(&torus, &group) {
            return Ok((torus, group));
        }
    }
    // Dense draws nearly always succeed; the full torus is the safe fallback.
    let rows: Vec<Vec<Int>> = (0..n)
        .map(|i| (0..n).map(|j| Int::from(i64::from(i == j))).collect())
        .collect();
    Ok((TorusLattice::saturate(n, &rows)?, group))
}

fn random_group(rng: &mut ChaCha8Rng, n: usize) -> Result<MonomialGroup> {
    let mut candidates: Vec<Vec<Vec<usize>>> = vec![Vec::new()]; // trivial
    let adjacent: Vec<Vec<usize>> = (0..n - 1)
        .map(|k| {
            let mut p: Vec<usize> = (0..n).collect();
            p.swap(k, k + 1);
            p
        })
        .collect();
    candidates.push(vec![adjacent[0].clone()]); // one transposition
    candidates.push(adjacent.clone()); // full symmetric group
    let cycle: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
    candidates.push(vec![cycle]); // cyclic
    if n >= 4 {
        let mut p: Vec<usize> = (0..n).collect();
        p.swap(2, 3);
        candidates.push(vec![adjacent[0].clone(), p]); // S₂ × S₂ block pattern
    }
    let pick = rng.gen_range(0..candidates.len());
    let gens = candidates[pick]
        .iter()
        .cloned()
        .map(MonomialElement::from_perm)
        .collect::<Result<Vec<_>>>()?;
    MonomialGroup::new(n, gens)
}
