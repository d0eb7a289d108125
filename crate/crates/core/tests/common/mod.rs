//! Shared helpers for the integration suites: an independent small-LP
//! enumeration oracle for zonoid depth, random convex polygon generation and
//! boundary sampling, and random cloud generation.

// each test binary compiles this module; not every binary uses every helper
#![allow(dead_code)]

use depth_core::regions::ConvexPolygon;
use depth_core::EmpiricalMeasure;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Exact zonoid depth by brute-force vertex enumeration of the LP
///
///   maximize sum g_i  s.t.  sum g_i (x_i - z) = 0,  0 <= g_i <= w_i,
///
/// whose optimum equals the depth: rescaling g by its sum recovers the
/// capped mixture coefficients. Every vertex of the feasible polytope has at
/// most two variables strictly between their bounds (two equality rows), so
/// enumerating all bound patterns with up to two free variables and solving
/// the 2x2 systems visits every vertex. Intended for n <= 6.
pub fn zonoid_lp_oracle(z: &[f64], e: &EmpiricalMeasure) -> f64 {
    assert_eq!(e.dim(), 2, "oracle is two-dimensional");
    assert!(e.n() <= 6, "oracle is exponential in n");
    let n = e.n();
    let cols: Vec<[f64; 2]> = e
        .points()
        .map(|p| [p[0] - z[0], p[1] - z[1]])
        .collect();
    let ws: Vec<f64> = (0..n).map(|i| e.weight(i)).collect();
    let scale = cols
        .iter()
        .flat_map(|c| c.iter())
        .fold(1.0f64, |a, &b| a.max(b.abs()));
    let feas_tol = 1e-9 * scale;

    let mut best = 0.0f64;
    for free_mask in 0u32..(1 << n) {
        let free: Vec<usize> = (0..n).filter(|i| free_mask & (1 << i) != 0).collect();
        if free.len() > 2 {
            continue;
        }
        let fixed: Vec<usize> = (0..n).filter(|i| free_mask & (1 << i) == 0).collect();
        for upper_mask in 0u32..(1 << fixed.len()) {
            let mut g = vec![0.0f64; n];
            for (bit, &i) in fixed.iter().enumerate() {
                if upper_mask & (1 << bit) != 0 {
                    g[i] = ws[i];
                }
            }
            let mut r = [0.0f64; 2];
            for &i in &fixed {
                r[0] -= g[i] * cols[i][0];
                r[1] -= g[i] * cols[i][1];
            }
            let solved = match free.len() {
                0 => r[0].abs() <= feas_tol && r[1].abs() <= feas_tol,
                1 => {
                    let d = cols[free[0]];
                    let dd = d[0] * d[0] + d[1] * d[1];
                    if dd <= 1e-24 * scale * scale {
                        false
                    } else {
                        let gj = (r[0] * d[0] + r[1] * d[1]) / dd;
                        g[free[0]] = gj;
                        (gj * d[0] - r[0]).abs() <= feas_tol
                            && (gj * d[1] - r[1]).abs() <= feas_tol
                    }
                }
                _ => {
                    let (a, b) = (cols[free[0]], cols[free[1]]);
                    let det = a[0] * b[1] - a[1] * b[0];
                    if det.abs() <= 1e-14 * scale * scale {
                        false
                    } else {
                        let gj = (r[0] * b[1] - r[1] * b[0]) / det;
                        let gk = (a[0] * r[1] - a[1] * r[0]) / det;
                        g[free[0]] = gj;
                        g[free[1]] = gk;
                        true
                    }
                }
            };
            if !solved {
                continue;
            }
            if g.iter().zip(&ws).all(|(&gi, &wi)| gi >= -1e-12 && gi <= wi + 1e-12) {
                best = best.max(g.iter().sum());
            }
        }
    }
    best.min(1.0)
}

/// A strictly convex polygon: vertices on a random ellipse at sorted random
/// angles.
pub fn random_convex_polygon(rng: &mut ChaCha8Rng) -> ConvexPolygon {
    let k = rng.random_range(3..=9);
    let mut angles: Vec<f64> = (0..k)
        .map(|_| rng.random_range(0.0..std::f64::consts::TAU))
        .collect();
    angles.sort_by(|a, b| a.total_cmp(b));
    angles.dedup_by(|a, b| (*a - *b).abs() < 1e-3);
    while angles.len() < 3 {
        angles.push(angles.last().unwrap() + 1.0);
    }
    let (cx, cy) = (rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
    let (rx, ry) = (rng.random_range(0.5..2.5), rng.random_range(0.5..2.5));
    let vertices: Vec<[f64; 2]> = angles
        .iter()
        .map(|t| [cx + rx * t.cos(), cy + ry * t.sin()])
        .collect();
    ConvexPolygon::new(vertices).expect("ellipse samples are strictly convex")
}

/// Dense boundary sampling of a convex polygon at the given pitch.
pub fn sample_boundary(p: &ConvexPolygon, pitch: f64) -> Vec<Vec<f64>> {
    let mut out = Vec::new();
    let k = p.len();
    for i in 0..k {
        let a = p.vertices()[i];
        let b = p.vertices()[(i + 1) % k];
        let len = ((b[0] - a[0]).powi(2) + (b[1] - a[1]).powi(2)).sqrt();
        let steps = ((len / pitch).ceil() as usize).max(1);
        for s in 0..steps {
            let t = s as f64 / steps as f64;
            out.push(vec![a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])]);
        }
    }
    out
}

pub fn random_cloud(rng: &mut ChaCha8Rng, n: usize) -> EmpiricalMeasure {
    let pts: Vec<Vec<f64>> = (0..n)
        .map(|_| vec![rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)])
        .collect();
    EmpiricalMeasure::from_points(pts).expect("finite points")
}

/// Random cloud with non-uniform weights summing to one.
pub fn random_weighted_cloud(rng: &mut ChaCha8Rng, n: usize) -> EmpiricalMeasure {
    let pts: Vec<Vec<f64>> = (0..n)
        .map(|_| vec![rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)])
        .collect();
    let mut ws: Vec<f64> = (0..n).map(|_| rng.random_range(0.05..1.0)).collect();
    let total: f64 = ws.iter().sum();
    ws.iter_mut().for_each(|w| *w /= total);
    EmpiricalMeasure::new(pts, ws).expect("finite points and weights")
}
