//! Exact empirical halfspace (Tukey) depth in 1-D and 2-D.
//!
//! The 2-D computation sweeps the unit normal of a directed boundary line
//! through `z` over the circle. The contained weight is piecewise constant
//! between critical normals (normals orthogonal to some `x_i - z`), so the
//! minimum over all closed halfplanes equals the minimum over the open arcs
//! between consecutive critical normals. All side decisions are sign tests
//! on dot and cross products, so the sweep and the quadratic oracle classify
//! points identically and agree bit for bit.

use super::DepthError;
use crate::measures::EmpiricalMeasure;

#[derive(Clone, Copy, Debug, PartialEq)]
struct V2 {
    x: f64,
    y: f64,
}

fn dot(a: V2, b: V2) -> f64 {
    a.x * b.x + a.y * b.y
}

fn cross(a: V2, b: V2) -> f64 {
    a.x * b.y - a.y * b.x
}

/// Rotate by +90 degrees.
fn rot_ccw(v: V2) -> V2 {
    V2 { x: -v.y, y: v.x }
}

/// Rotate by -90 degrees.
fn rot_cw(v: V2) -> V2 {
    V2 { x: v.y, y: -v.x }
}

/// Exact minimum, over all closed halfplanes with `z` on the boundary, of
/// the contained weight. 1-D reduces to min of left/right weights with ties
/// at `z` counted on both sides; 2-D runs the angular sweep in O(n log n).
pub fn halfspace_depth_emp(z: &[f64], e: &EmpiricalMeasure) -> Result<f64, DepthError> {
    match e.dim() {
        1 => {
            if z.len() != 1 {
                return Err(DepthError::WrongPointDimension {
                    expected: 1,
                    got: z.len(),
                });
            }
            Ok(halfspace_depth_1d_emp(z[0], e))
        }
        2 => {
            if z.len() != 2 {
                return Err(DepthError::WrongPointDimension {
                    expected: 2,
                    got: z.len(),
                });
            }
            Ok(sweep_depth(V2 { x: z[0], y: z[1] }, e))
        }
        d => Err(DepthError::UnsupportedDimension {
            what: "empirical halfspace depth",
            supported: "1 and 2",
            dim: d,
        }),
    }
}

pub(crate) fn halfspace_depth_1d_emp(z: f64, e: &EmpiricalMeasure) -> f64 {
    let mut left = 0.0;
    let mut right = 0.0;
    for (i, p) in e.points().enumerate() {
        let w = e.weight(i);
        if p[0] <= z {
            left += w;
        }
        if p[0] >= z {
            right += w;
        }
    }
    left.min(right).clamp(0.0, 1.0)
}

/// Weight contained in the closed halfplane with inward normal `d`, shifted
/// infinitesimally: `side > 0` evaluates just after `d` (counter-clockwise),
/// `side < 0` just before, `side == 0` exactly at `d` (boundary points
/// included). Summation is in point-index order, so equal containment sets
/// produce bit-identical sums.
fn arc_weight(d: V2, side: i8, w_at: f64, vs: &[(V2, f64)]) -> f64 {
    let mut acc = w_at;
    for &(v, w) in vs {
        let s = dot(d, v);
        let contained = if s > 0.0 {
            true
        } else if s < 0.0 {
            false
        } else {
            match side {
                0 => true,
                1 => cross(d, v) > 0.0,
                _ => cross(d, v) < 0.0,
            }
        };
        if contained {
            acc += w;
        }
    }
    acc
}

fn sweep_depth(z: V2, e: &EmpiricalMeasure) -> f64 {
    let mut w_at = 0.0;
    let mut vs: Vec<(V2, f64)> = Vec::with_capacity(e.n());
    for (i, p) in e.points().enumerate() {
        let v = V2 {
            x: p[0] - z.x,
            y: p[1] - z.y,
        };
        if v.x == 0.0 && v.y == 0.0 {
            w_at += e.weight(i);
        } else {
            vs.push((v, e.weight(i)));
        }
    }
    if vs.is_empty() {
        return w_at.clamp(0.0, 1.0);
    }

    // Containment arc of point v is [rot_cw(v), rot_ccw(v)] (closed): the
    // point enters the halfplane when the normal reaches rot_cw(v) and
    // leaves just after rot_ccw(v).
    #[derive(Clone, Copy)]
    struct Event {
        dir: V2,
        delta: f64,
    }
    let mut events: Vec<Event> = Vec::with_capacity(2 * vs.len());
    for &(v, w) in &vs {
        events.push(Event {
            dir: rot_cw(v),
            delta: w,
        });
        events.push(Event {
            dir: rot_ccw(v),
            delta: -w,
        });
    }

    // Polar order starting at the positive x axis.
    let half = |d: V2| -> u8 {
        if d.y > 0.0 || (d.y == 0.0 && d.x > 0.0) {
            0
        } else {
            1
        }
    };
    events.sort_by(|a, b| {
        half(a.dir).cmp(&half(b.dir)).then_with(|| {
            let c = cross(a.dir, b.dir);
            if c > 0.0 {
                std::cmp::Ordering::Less
            } else if c < 0.0 {
                std::cmp::Ordering::Greater
            } else {
                std::cmp::Ordering::Equal
            }
        })
    });
    let same_ray = |a: V2, b: V2| cross(a, b) == 0.0 && dot(a, b) > 0.0;

    // Group events that share a direction; record the weight on the open arc
    // that follows each unique direction.
    let first_dir = events[0].dir;
    let mut current = arc_weight(first_dir, 1, w_at, &vs);
    let mut arcs: Vec<(V2, f64)> = vec![(first_dir, current)];
    let mut i = 1;
    while i < events.len() {
        let d = events[i].dir;
        let mut delta = 0.0;
        let mut j = i;
        while j < events.len() && same_ray(events[j].dir, d) {
            delta += events[j].delta;
            j += 1;
        }
        if same_ray(d, first_dir) {
            // wrapped back to the start; the first arc was counted directly
            i = j;
            continue;
        }
        current += delta;
        arcs.push((d, current));
        i = j;
    }

    // The incremental sums identify candidate minima; re-count candidates in
    // index order so the result matches an exhaustive scan exactly even
    // though float addition is not associative.
    let min_approx = arcs.iter().map(|&(_, w)| w).fold(f64::INFINITY, f64::min);
    let margin = 1e-12 * (1.0 + vs.len() as f64);
    let mut best = f64::INFINITY;
    for &(d, w) in &arcs {
        if w <= min_approx + margin {
            best = best.min(arc_weight(d, 1, w_at, &vs));
        }
    }
    best.clamp(0.0, 1.0)
}

/// Exhaustive test oracle: scan the boundary lines through `z` and each
/// sample point in both orientations, counting points exactly on the line as
/// contained, and additionally evaluate each adjacent open arc. O(n^2).
pub fn brute_halfspace_oracle(z: &[f64], e: &EmpiricalMeasure) -> Result<f64, DepthError> {
    if e.dim() != 2 {
        return Err(DepthError::UnsupportedDimension {
            what: "brute halfspace oracle",
            supported: "2",
            dim: e.dim(),
        });
    }
    if z.len() != 2 {
        return Err(DepthError::WrongPointDimension {
            expected: 2,
            got: z.len(),
        });
    }
    let z = V2 { x: z[0], y: z[1] };
    let mut w_at = 0.0;
    let mut vs: Vec<(V2, f64)> = Vec::new();
    for (i, p) in e.points().enumerate() {
        let v = V2 {
            x: p[0] - z.x,
            y: p[1] - z.y,
        };
        if v.x == 0.0 && v.y == 0.0 {
            w_at += e.weight(i);
        } else {
            vs.push((v, e.weight(i)));
        }
    }
    if vs.is_empty() {
        return Ok(w_at.clamp(0.0, 1.0));
    }
    let mut best = f64::INFINITY;
    for &(v, _) in &vs {
        for d in [rot_cw(v), rot_ccw(v)] {
            best = best.min(arc_weight(d, 0, w_at, &vs));
            best = best.min(arc_weight(d, 1, w_at, &vs));
            best = best.min(arc_weight(d, -1, w_at, &vs));
        }
    }
    Ok(best.clamp(0.0, 1.0))
}
