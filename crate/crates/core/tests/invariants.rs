//! Cross-module invariants: the zonoid support-function cross-check, region
//! membership versus depth evaluation, left-continuity of the region map,
//! and the interval sandwich from the family-1 oscillation.

mod common;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use depth_core::counterexamples::build_family;
use depth_core::depths::{
    wm_region_support, zonoid_depth, DepthEvaluator, DepthKind, DepthMeasure, WeightFunction,
};
use depth_core::hausdorff::{hausdorff_intervals, sandwich_check, RegionValue};
use depth_core::regions::{region_1d_halfspace, region_2d, Region1D};

/// zonoid_depth(z) >= alpha implies p.z <= support(alpha, p) + tol on the
/// 360-direction grid, and a probed violation implies depth < alpha.
#[test]
fn zonoid_support_function_cross_check() {
    let mut rng = ChaCha8Rng::seed_from_u64(4242);
    let w = WeightFunction::zonoid();
    let dirs: Vec<[f64; 2]> = (0..360)
        .map(|j| {
            let th = 2.0 * std::f64::consts::PI * j as f64 / 360.0;
            [th.cos(), th.sin()]
        })
        .collect();
    let tol = 1e-9;
    for _ in 0..25 {
        let n = rng.random_range(4..=12);
        let e = common::random_cloud(&mut rng, n);
        let z = [rng.random_range(-1.2..1.2), rng.random_range(-1.2..1.2)];
        let depth = zonoid_depth(&z, &e, 1e-12).unwrap();
        for &alpha in &[0.1, 0.3, 0.6, 0.9] {
            let violated = dirs.iter().any(|u| {
                let h = wm_region_support(&e, alpha, &w, u);
                u[0] * z[0] + u[1] * z[1] > h + tol
            });
            if depth >= alpha + 1e-6 {
                assert!(
                    !violated,
                    "depth {depth} >= {alpha} but a support constraint is violated"
                );
            }
            if violated {
                assert!(
                    depth < alpha,
                    "support violation at alpha {alpha} but depth {depth}"
                );
            }
        }
    }
}

/// The family-1 oscillation sandwich: for odd m the region at 1/4 sits
/// inside (-1, 1), which sits inside the limit region [-2, 2].
#[test]
fn family1_interval_sandwich() {
    let p9 = build_family(1, 9).unwrap();
    let p0 = build_family(1, 0).unwrap();
    let inner = RegionValue::Interval(region_1d_halfspace(&p9, 0.25));
    let mid = RegionValue::Interval(Region1D::interval(-1.0, 1.0));
    let outer = RegionValue::Interval(region_1d_halfspace(&p0, 0.25));
    assert!(sandwich_check(&inner, &mid, &outer, 1e-12).unwrap());
    // and a violated middle is reported false
    let narrow = RegionValue::Interval(Region1D::interval(-0.1, 0.1));
    assert!(!sandwich_check(&inner, &narrow, &outer, 1e-12).unwrap());
}

/// Left-continuity of alpha -> D_alpha at the discontinuity level of the
/// family 1 limit: approaching 1/4 from below converges to the region at
/// 1/4, even though approaching from above does not.
#[test]
fn region_map_left_continuity() {
    let p0 = build_family(1, 0).unwrap();
    let at = region_1d_halfspace(&p0, 0.25);
    let mut prev = f64::INFINITY;
    for k in 1..=6 {
        let alpha = 0.25 - 10f64.powi(-k);
        let d = hausdorff_intervals(&region_1d_halfspace(&p0, alpha), &at)
            .distance()
            .unwrap();
        assert!(d <= prev, "not shrinking at k = {k}");
        assert!(d <= 4.0 * 10f64.powi(-k) + 1e-12, "k = {k}: distance {d}");
        prev = d;
    }
    // from above the distance stays near 1
    let d_above = hausdorff_intervals(&region_1d_halfspace(&p0, 0.25 + 1e-6), &at)
        .distance()
        .unwrap();
    assert!(d_above > 0.9);
}

/// Region membership agrees with depth evaluation away from a boundary band.
#[test]
fn region_membership_matches_depth() {
    // 1-D: the family-3 limit with its atoms
    let m = build_family(3, 0).unwrap();
    let ev = DepthEvaluator::new(DepthKind::Halfspace, DepthMeasure::Mixture(m.clone())).unwrap();
    for &alpha in &[0.1, 0.2, 0.35, 0.45] {
        let region = region_1d_halfspace(&m, alpha);
        for i in 0..=800 {
            let x = -2.5 + 5.0 * i as f64 / 800.0;
            let depth = ev.eval1(x);
            if depth >= alpha + 1e-9 {
                assert!(region.contains(x, 1e-12), "x = {x} depth {depth} alpha {alpha}");
            }
            if depth <= alpha - 1e-9 {
                assert!(!region.contains(x, -1e-12), "x = {x} depth {depth} alpha {alpha}");
            }
        }
    }

    // 2-D: the polygon contains every grid point of depth >= alpha + tol
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for kind in [DepthKind::Halfspace, DepthKind::Zonoid { tol: 1e-11 }] {
        let e = common::random_cloud(&mut rng, 10);
        let ev = DepthEvaluator::new(kind, DepthMeasure::Cloud(e)).unwrap();
        for &alpha in &[0.15, 0.3] {
            let region = region_2d(&ev, alpha, 180, 1e-9).unwrap();
            let poly = match region.polygon() {
                Some(p) => p,
                None => continue,
            };
            for i in 0..=40 {
                for j in 0..=40 {
                    let z = [-1.0 + 2.0 * i as f64 / 40.0, -1.0 + 2.0 * j as f64 / 40.0];
                    if ev.evaluate(&z) >= alpha + 0.01 {
                        assert!(
                            poly.contains(z, 0.01),
                            "{kind:?}: grid point {z:?} of depth >= {alpha} + 0.01 escaped"
                        );
                    }
                }
            }
        }
    }
}

/// The halfspace sweep and its exhaustive oracle agree bit for bit, and the
/// zonoid bisection matches the LP-enumeration oracle, on clouds with
/// non-uniform weights as well.
#[test]
fn weighted_cloud_cross_checks() {
    use depth_core::depths::{brute_halfspace_oracle, halfspace_depth_emp, zonoid_depth};
    let mut rng = ChaCha8Rng::seed_from_u64(2024_0608);
    for trial in 0..60 {
        let n = rng.random_range(2..=40);
        let e = common::random_weighted_cloud(&mut rng, n);
        let z = if rng.random_bool(0.5) {
            e.point(rng.random_range(0..n)).to_vec()
        } else {
            vec![rng.random_range(-1.4..1.4), rng.random_range(-1.4..1.4)]
        };
        let a = halfspace_depth_emp(&z, &e).unwrap();
        let b = brute_halfspace_oracle(&z, &e).unwrap();
        assert_eq!(a, b, "weighted halfspace trial {trial} at {z:?}");
    }
    for trial in 0..40 {
        let n = rng.random_range(3..=6);
        let e = common::random_weighted_cloud(&mut rng, n);
        let z = if trial % 2 == 0 {
            e.point(rng.random_range(0..n)).to_vec()
        } else {
            let c = e.moments().mean;
            let p = e.point(rng.random_range(0..n));
            let t: f64 = rng.random_range(0.0..1.3);
            vec![c[0] + t * (p[0] - c[0]), c[1] + t * (p[1] - c[1])]
        };
        let fast = zonoid_depth(&z, &e, 1e-9).unwrap();
        let slow = common::zonoid_lp_oracle(&z, &e);
        assert!(
            (fast - slow).abs() <= 1e-7,
            "weighted zonoid trial {trial}: {fast} vs {slow} at {z:?}"
        );
    }
}

/// Enlarging the sup grid never decreases the reported sup gap, and the
/// reported sup is a lower bound of a strictly finer grid's sup.
#[test]
fn sup_grid_is_a_lower_bound() {
    let p0 = build_family(4, 0).unwrap();
    let p5 = build_family(4, 5).unwrap();
    let gap = |grid: &[f64]| {
        grid.iter()
            .map(|&x| {
                (depth_core::depths::halfspace_depth_1d(x, &p5)
                    - depth_core::depths::halfspace_depth_1d(x, &p0))
                .abs()
            })
            .fold(0.0f64, f64::max)
    };
    let coarse: Vec<f64> = (0..=50).map(|i| -2.5 + 5.0 * i as f64 / 50.0).collect();
    let mut fine = coarse.clone();
    fine.extend((0..=500).map(|i| -2.5 + 5.0 * i as f64 / 500.0));
    fine.push(depth_core::counterexamples::sup_gap_witness(4, 5));
    assert!(gap(&fine) >= gap(&coarse));
    // with the witness injected the grid sup exceeds the uniform-grid sup
    assert!(gap(&fine) > 0.2);
}
