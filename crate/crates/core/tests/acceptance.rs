//! Acceptance suite: one test per release criterion, each printing a
//! PASS line (run with `--nocapture` to see them).  Tolerances and runtime
//! budgets are pinned here.

use std::time::Instant;

use num_traits::ToPrimitive as _;
use rand::Rng as _;
use rand::SeedableRng as _;
use rand_chacha::ChaCha8Rng;

use orbithull::classify;
use orbithull::group::{cyclic_group, symmetric_group};
use orbithull::hull::{analytic_strip, HullOptions, MembershipStatus, OrbitHull};
use orbithull::oracle::{self, VerifyOptions};
use orbithull::ratlin::TorusLattice;
use orbithull::symdom::{self, Sl2Product};
use orbithull::{C64, Int};

fn full_torus(n: usize) -> TorusLattice {
    let rows: Vec<Vec<Int>> = (0..n)
        .map(|i| (0..n).map(|j| Int::from(i64::from(i == j))).collect())
        .collect();
    TorusLattice::saturate(n, &rows).unwrap()
}

fn trace_zero_torus(n: usize) -> TorusLattice {
    let rows: Vec<Vec<Int>> = (0..n - 1)
        .map(|i| {
            let mut r = vec![Int::from(0); n];
            r[i] = Int::from(1);
            r[i + 1] = Int::from(-1);
            r
        })
        .collect();
    TorusLattice::saturate(n, &rows).unwrap()
}

fn real_point(v: &[f64]) -> Vec<C64> {
    v.iter().map(|&x| C64::new(x, 0.0)).collect()
}

fn sorted_normals(hull: &OrbitHull) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = hull
        .facets()
        .iter()
        .map(|f| f.normal.iter().map(|x| x.to_i64().unwrap()).collect())
        .collect();
    out.sort();
    out
}

/// Criterion 1: the two-coordinate swap example over the full torus emits
/// exactly the three facets max(|z1|,|z2|) ≤ 2 and |z1·z2| ≤ 2.
#[test]
fn acceptance_1_bidisc_regression() {
    let start = Instant::now();
    let hull = OrbitHull::build(
        &full_torus(2),
        &symmetric_group(2),
        &real_point(&[2.0, 1.0]),
        HullOptions::default(),
    )
    .unwrap();
    assert_eq!(
        sorted_normals(&hull),
        vec![vec![0, 1], vec![1, 0], vec![1, 1]],
        "facet normal set must be exactly {{(1,0),(0,1),(1,1)}}"
    );
    let l2 = 2.0f64.ln();
    for f in hull.facets() {
        assert!(
            (f.offset_abs - l2).abs() <= 1e-12,
            "offset {} differs from log 2 beyond 1e-12",
            f.offset_abs
        );
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs_f64() < 0.1,
        "bidisc hull took {elapsed:?}, budget is 0.1 s"
    );
    println!("acceptance 1 (bidisc regression): PASS ({elapsed:?})");
}

/// Criterion 2: for the full symmetric group on 3 and 4 coordinates the
/// facet normals are the permutation orbits of the prefix-sum vectors and
/// the offsets are the top-k log products.
#[test]
fn acceptance_2_symmetric_prefix_normals() {
    let mut timing_n4 = None;
    for n in [3usize, 4] {
        let start = Instant::now();
        let v: Vec<f64> = (0..n).map(|k| (n - k) as f64).collect(); // n, n-1, …, 1
        let hull = OrbitHull::build(
            &full_torus(n),
            &symmetric_group(n),
            &real_point(&v),
            HullOptions::default(),
        )
        .unwrap();

        // Expected: all 0/1 vectors with between 1 and n ones (the S_n orbits
        // of the prefix indicators).
        let mut want: Vec<Vec<i64>> = Vec::new();
        for mask in 1u32..(1 << n) {
            want.push((0..n).map(|k| i64::from(mask & (1 << k) != 0)).collect());
        }
        want.sort();
        assert_eq!(sorted_normals(&hull), want, "normal set at n = {n}");

        // Offsets: log of the product of the k largest coordinates.
        let vc = real_point(&v);
        for f in hull.facets() {
            let k = f
                .normal
                .iter()
                .filter(|x| !num_traits::Zero::is_zero(*x))
                .count();
            let mu = symdom::mu_polydisc(&vc, k).unwrap();
            assert!(
                (f.offset_abs - mu.ln()).abs() <= 1e-10,
                "offset of a weight-{k} facet at n = {n}"
            );
        }
        if n == 4 {
            timing_n4 = Some(start.elapsed());
        }
    }
    let elapsed = timing_n4.unwrap();
    assert!(
        elapsed.as_secs_f64() < 1.0,
        "n = 4 hull took {elapsed:?}, budget is 1 s"
    );
    println!("acceptance 2 (symmetric prefix normals): PASS (n=4 in {elapsed:?})");
}

/// Criterion 3: randomized cross-validation.  25 random connected
/// configurations verify clean at tol 1e-6, and a +0.1 facet perturbation is
/// detected in every single case.
#[test]
fn acceptance_3_oracle_cross_validation() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for seed in 0..25u64 {
        let (torus, group) = oracle::random_connected_pair(seed, 4).unwrap();
        assert!(group.order() <= 24);
        let n = torus.ambient_dim();
        let v: Vec<C64> = loop {
            let draw: Vec<f64> = (0..n).map(|_| rng.gen_range(1.0..2.0)).collect();
            let distinct = (0..n).all(|i| (0..i).all(|j| (draw[i] - draw[j]).abs() > 1e-3));
            if distinct {
                break real_point(&draw);
            }
        };
        let hull = OrbitHull::build(&torus, &group, &v, HullOptions::default()).unwrap();
        let opts = VerifyOptions {
            n_points: 10_000,
            n_monomials: 50,
            seed: seed ^ 0xdead_beef,
            tol: 1e-6,
            ..Default::default()
        };
        let report = oracle::verify_hull(&hull, &opts);
        assert!(
            report.ok(),
            "seed {seed}: clean hull reported failures {:?}",
            report.failures
        );

        let mut tampered = hull.clone();
        tampered.perturb_facet_offset(0, 0.1);
        let bad = oracle::verify_hull(&tampered, &opts);
        assert!(!bad.ok(), "seed {seed}: +0.1 facet perturbation went undetected");
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs_f64() < 60.0,
        "cross-validation took {elapsed:?}, budget is 60 s"
    );
    println!("acceptance 3 (oracle cross-validation, 25 configs): PASS ({elapsed:?})");
}

/// Criterion 4: closedness of generic orbits agrees exactly with triviality
/// of the recession cone on 50 random pairs; the trace-zero fixtures report
/// closed orbits, and the hull of the antidiagonal fixture admits no
/// interior points.
#[test]
fn acceptance_4_closedness_criterion() {
    for seed in 0..50u64 {
        let (torus, group) = oracle::random_connected_pair(seed.wrapping_mul(7919) + 3, 5).unwrap();
        let via_cone = classify::generically_closed(&torus, &group);
        let via_invariant_directions = classify::closedness_cross_check(&torus, &group);
        assert_eq!(
            via_cone,
            via_invariant_directions,
            "closedness routes disagree for basis {:?}",
            torus.basis()
        );
    }

    let b2 = trace_zero_torus(2); // span(1,-1)
    let b3 = trace_zero_torus(3);
    assert!(classify::classify_type(&b2, &symmetric_group(2)).unwrap().generically_closed);
    assert!(classify::classify_type(&b3, &symmetric_group(3)).unwrap().generically_closed);

    // Membership confirms the orbit is its own hull for the antidiagonal
    // fixture: orbit points come back Boundary, nothing comes back Inside.
    let hull = OrbitHull::for_torus_orbit(&b2, &real_point(&[1.0, 1.0]), HullOptions::default())
        .unwrap();
    let samples = oracle::sample_orbit(
        &b2,
        &orbithull::group::MonomialGroup::trivial(2),
        &real_point(&[1.0, 1.0]),
        200,
        7,
    );
    for z in &samples {
        let verdict = hull.membership(z, 1e-9);
        assert_eq!(verdict.status, MembershipStatus::Boundary);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..200 {
        let z = vec![
            C64::from_polar(rng.gen_range(0.2..2.0), rng.gen_range(0.0..6.28)),
            C64::from_polar(rng.gen_range(0.2..2.0), rng.gen_range(0.0..6.28)),
        ];
        let verdict = hull.membership(&z, 1e-9);
        assert_ne!(
            verdict.status,
            MembershipStatus::Inside,
            "no point may be strictly interior to a closed orbit"
        );
    }
    println!("acceptance 4 (closedness criterion): PASS");
}

/// Criterion 5: the adjoint-operator invariant equals 4^k times the squared
/// top-k modulus product on the product algebra, at relative error 1e-8.
#[test]
fn acceptance_5_adjoint_invariant_identity() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(55);
    for n in 1..=3usize {
        let alg = Sl2Product::new(n);
        let mut done = 0usize;
        while done < 50 {
            let v: Vec<f64> = (0..2 * n).map(|_| rng.gen_range(-2.0..2.0)).collect();
            let norms = alg.block_norms(&v).unwrap();
            let scale = norms.iter().fold(0.0f64, |a, &b| a.max(b));
            let degenerate = norms.iter().enumerate().any(|(i, &x)| {
                x <= 1e-2 || norms[..i].iter().any(|&y| (x - y).abs() <= 1e-2 * scale)
            });
            if degenerate {
                continue;
            }
            let mods: Vec<C64> = norms.iter().map(|&x| C64::new(x, 0.0)).collect();
            for k in 1..=n {
                let pk = alg.p_k(&v, k).unwrap().value;
                let mu = symdom::mu_polydisc(&mods, k).unwrap();
                let want = 4.0f64.powi(k as i32) * mu * mu;
                assert!(
                    (pk - want).abs() <= 1e-8 * want.max(1.0),
                    "n={n} k={k}: p_k {pk} vs 4^k μ_k² {want}"
                );
            }
            done += 1;
        }
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs_f64() < 5.0,
        "identity check took {elapsed:?}, budget is 5 s"
    );
    println!("acceptance 5 (adjoint invariant identity): PASS ({elapsed:?})");
}

/// Criterion 6: the exterior-power norm equals the spectral norm of the
/// explicit compound matrix, 100 random PSD matrices, tolerance 1e-9.
#[test]
fn acceptance_6_exterior_power_norm() {
    let mut rng = ChaCha8Rng::seed_from_u64(66);
    for trial in 0..100 {
        let m = rng.gen_range(2..=6usize);
        let g: Vec<Vec<f64>> = (0..m)
            .map(|_| (0..m).map(|_| rng.gen_range(-1.0..1.0)).collect())
            .collect();
        let a: Vec<Vec<f64>> = (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| (0..m).map(|t| g[t][i] * g[t][j]).sum())
                    .collect()
            })
            .collect();
        for k in 1..=3.min(m) {
            let fast = symdom::exterior_power_norm(&a, k).unwrap();
            let compound = symdom::compound_matrix(&a, k).unwrap();
            let explicit = symdom::spectral_norm(&compound);
            assert!(
                (fast - explicit).abs() <= 1e-9 * (1.0 + explicit),
                "trial {trial}, m={m}, k={k}: {fast} vs {explicit}"
            );
        }
    }
    println!("acceptance 6 (exterior power norm vs compound matrix): PASS");
}

/// Criterion 7: the rigidity dichotomy.  Full symmetric pairs (both torus
/// types) probe rigid up to n = 4; the 3-cycle does not; classification
/// labels agree.
#[test]
fn acceptance_7_rigidity_dichotomy() {
    for n in 2..=4usize {
        let full = full_torus(n);
        let sym = symmetric_group(n);
        assert!(
            classify::normals_rigidity_probe(&full, &sym, 5, 1000 + n as u64).unwrap(),
            "full torus with the symmetric group must probe rigid at n = {n}"
        );
        assert!(classify::is_standard_product(&full, &sym).unwrap());

        let tz = trace_zero_torus(n);
        assert!(
            classify::normals_rigidity_probe(&tz, &sym, 5, 2000 + n as u64).unwrap(),
            "trace-zero torus with the symmetric group must probe rigid at n = {n}"
        );
        assert!(classify::is_standard_product(&tz, &sym).unwrap());
    }
    let c3 = cyclic_group(3);
    assert!(
        !classify::normals_rigidity_probe(&full_torus(3), &c3, 5, 3000).unwrap(),
        "the 3-cycle must not probe rigid"
    );
    assert!(!classify::is_standard_product(&full_torus(3), &c3).unwrap());
    println!("acceptance 7 (rigidity dichotomy): PASS");
}

/// Criterion 8: the strip between (2,1) and (1,2) under the full torus is a
/// periodic annulus with ξ = (−log 2, log 2); its boundary lies on the two
/// compact orbits and its midline on the √2 torus.
#[test]
fn acceptance_8_strip_annulus() {
    let t2 = full_torus(2);
    let v = real_point(&[2.0, 1.0]);
    let u = real_point(&[1.0, 2.0]);
    let strip = analytic_strip(&t2, &v, &u, 1e-9).unwrap();
    let l2 = 2.0f64.ln();
    assert!((strip.xi[0] + l2).abs() <= 1e-12 && (strip.xi[1] - l2).abs() <= 1e-12);
    assert!(strip.periodic, "the direction (−1, 1) is a lattice direction");

    for k in 0..20 {
        let y = 0.37 * k as f64;
        let on_v = strip.eval(C64::new(0.0, y));
        for (a, b) in on_v.iter().zip(&v) {
            assert!(
                (a.norm() - b.norm()).abs() <= 1e-10,
                "boundary Re z = 0 stays on the orbit of v"
            );
        }
        let on_u = strip.eval(C64::new(1.0, y));
        for (a, b) in on_u.iter().zip(&u) {
            assert!(
                (a.norm() - b.norm()).abs() <= 1e-10,
                "boundary Re z = 1 stays on the orbit of u"
            );
        }
    }
    let mid = strip.eval(C64::new(0.5, 0.2));
    let s = 2.0f64.sqrt();
    assert!((mid[0].norm() - s).abs() <= 1e-10 && (mid[1].norm() - s).abs() <= 1e-10);
    println!("acceptance 8 (strip/annulus): PASS");
}
