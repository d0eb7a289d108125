//! Zonoid depth via bisection over membership feasibility.
//!
//! A point z lies in the zonoid region at level alpha iff there are
//! coefficients 0 <= lambda_i <= w_i/alpha with sum 1 and sum lambda_i x_i
//! = z. By LP duality this holds iff p.z <= h_alpha(p) for every direction
//! p, where h_alpha(p) is the mean of the upper-alpha tail of the projected
//! weights. For a point cloud the region is a polytope whose edge normals
//! are orthogonal to some difference x_i - x_j, so checking the support
//! inequality on that finite direction set (plus the pair directions and the
//! axes, which cover degenerate clouds) decides membership exactly.
//! Feasibility is monotone in alpha, which makes the bisection valid.

use super::DepthError;
use crate::measures::EmpiricalMeasure;

/// Largest alpha such that z is a capped mixture of the sample points, found
/// by bisection on membership to absolute tolerance `tol`. Returns 0 when z
/// lies outside the convex hull of the support.
pub fn zonoid_depth(z: &[f64], e: &EmpiricalMeasure, tol: f64) -> Result<f64, DepthError> {
    let dirs = critical_directions(e)?;
    if z.len() != e.dim() {
        return Err(DepthError::WrongPointDimension {
            expected: e.dim(),
            got: z.len(),
        });
    }
    Ok(zonoid_depth_with_dirs(z, e, &dirs, tol))
}

pub(crate) fn zonoid_depth_with_dirs(
    z: &[f64],
    e: &EmpiricalMeasure,
    dirs: &[Vec<f64>],
    tol: f64,
) -> f64 {
    assert!(tol > 0.0, "bisection tolerance must be positive");
    let floor = tol.min(1e-9);
    if !is_member(z, e, dirs, floor) {
        return 0.0;
    }
    if is_member(z, e, dirs, 1.0) {
        return 1.0;
    }
    let mut lo = floor;
    let mut hi = 1.0;
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if is_member(z, e, dirs, mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// z in ZD_alpha iff p.z <= tail mean of the projections for every critical
/// direction p. The comparison is done on the unscaled tail sum (no division
/// by alpha) with a relative slack, so points exactly on the region boundary
/// (hull vertices, the mean) are classified stably.
pub(crate) fn is_member(z: &[f64], e: &EmpiricalMeasure, dirs: &[Vec<f64>], alpha: f64) -> bool {
    dirs.iter().all(|p| {
        let pz: f64 = p.iter().zip(z).map(|(a, b)| a * b).sum();
        let tail_sum = upper_tail_sum(e, p, alpha);
        pz * alpha <= tail_sum + 1e-12 * (1.0 + tail_sum.abs())
    })
}

/// Integral of the projections over the upper-alpha probability mass:
/// alpha times the support function of the zonoid region in direction p.
fn upper_tail_sum(e: &EmpiricalMeasure, p: &[f64], alpha: f64) -> f64 {
    let mut vw = e.sorted_projection(p);
    vw.reverse();
    let mut acc = 0.0;
    let mut cum = 0.0;
    for &(v, w) in &vw {
        let take = w.min(alpha - cum).max(0.0);
        acc += take * v;
        cum += take;
        if cum >= alpha {
            break;
        }
    }
    acc
}

/// Directions that decide zonoid membership exactly: normals and parallels
/// of all point differences plus the coordinate axes. The normals are the
/// possible edge normals of the region; the parallels and axes pin down
/// clouds that are collinear or a single point.
pub(crate) fn critical_directions(e: &EmpiricalMeasure) -> Result<Vec<Vec<f64>>, DepthError> {
    match e.dim() {
        1 => Ok(vec![vec![1.0], vec![-1.0]]),
        2 => {
            let mut dirs: Vec<Vec<f64>> = vec![
                vec![1.0, 0.0],
                vec![-1.0, 0.0],
                vec![0.0, 1.0],
                vec![0.0, -1.0],
            ];
            let n = e.n();
            for i in 0..n {
                let a = e.point(i);
                for j in (i + 1)..n {
                    let b = e.point(j);
                    let dx = a[0] - b[0];
                    let dy = a[1] - b[1];
                    if dx == 0.0 && dy == 0.0 {
                        continue;
                    }
                    dirs.push(vec![-dy, dx]);
                    dirs.push(vec![dy, -dx]);
                    dirs.push(vec![dx, dy]);
                    dirs.push(vec![-dx, -dy]);
                }
            }
            Ok(dirs)
        }
        d => Err(DepthError::UnsupportedDimension {
            what: "zonoid depth",
            supported: "1 and 2",
            dim: d,
        }),
    }
}
