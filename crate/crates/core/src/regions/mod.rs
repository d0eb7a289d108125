//! Depth-trimmed regions D_alpha(P) = {z : D(z|P) >= alpha}.
//!
//! In 1-D the regions of the shipped convex depths are computed exactly:
//! from the piecewise-linear CDF (halfspace on mixtures), from the sorted
//! sample (halfspace on clouds), or from closed forms (Mahalanobis,
//! asymmetric Mahalanobis, zonoid). A generic bisection fallback covers any
//! quasiconcave 1-D depth. In 2-D the region is an outer approximation by
//! the intersection of supporting halfplanes, one per probed direction.

mod polygon;

pub use polygon::{ConvexPolygon, VERTEX_DEDUP_TOL};

use serde::Serialize;
use thiserror::Error;

use crate::depths::{wm_region_support, DepthEvaluator, DepthKind, DepthMeasure, WeightFunction};
use crate::measures::{EmpiricalMeasure, Measure1D};

#[derive(Debug, Error)]
pub enum RegionError {
    #[error("bracket endpoints already reach depth {alpha}; enlarge the bracket")]
    BracketTooSmall { alpha: f64 },
    #[error("operation needs a {expected}-dimensional evaluator, got {got}")]
    WrongDimension { expected: usize, got: usize },
    #[error("polygon needs at least one vertex")]
    EmptyPolygon,
    #[error("polygon vertex {index} is non-finite")]
    NonFiniteVertex { index: usize },
    #[error("polygon vertices are not strictly convex in counter-clockwise order")]
    NotConvex,
}

/// A trimmed region on the real line: a closed interval or empty. Empty is a
/// first-class value, never an error, because the range condition reasons
/// about empty regions explicitly.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Region1D {
    Empty,
    NonEmpty { lo: f64, hi: f64 },
}

impl Region1D {
    pub fn interval(lo: f64, hi: f64) -> Self {
        assert!(lo <= hi, "interval needs lo <= hi, got [{lo}, {hi}]");
        Region1D::NonEmpty { lo, hi }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, Region1D::Empty)
    }

    pub fn endpoints(&self) -> Option<(f64, f64)> {
        match *self {
            Region1D::Empty => None,
            Region1D::NonEmpty { lo, hi } => Some((lo, hi)),
        }
    }

    pub fn contains(&self, x: f64, tol: f64) -> bool {
        match *self {
            Region1D::Empty => false,
            Region1D::NonEmpty { lo, hi } => x >= lo - tol && x <= hi + tol,
        }
    }

    pub fn length(&self) -> f64 {
        match *self {
            Region1D::Empty => 0.0,
            Region1D::NonEmpty { lo, hi } => hi - lo,
        }
    }
}

/// A trimmed region in the plane.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum Region2D {
    Empty,
    Polygon(ConvexPolygon),
}

impl Region2D {
    pub fn is_empty(&self) -> bool {
        matches!(self, Region2D::Empty)
    }

    pub fn polygon(&self) -> Option<&ConvexPolygon> {
        match self {
            Region2D::Empty => None,
            Region2D::Polygon(p) => Some(p),
        }
    }
}

/// Maximum attained depth and a witness point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegionProfile {
    pub alpha_max: f64,
    pub witness: Vec<f64>,
}

/// Where to look for the deepest point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SearchDomain {
    /// The convex hull of the support (sufficient for the shipped depths).
    Hull,
    /// An explicit 1-D bracket.
    Bracket(f64, f64),
}

/// Exact halfspace-depth region of a 1-D mixture: the interval
/// [min{x : cdf(x) >= alpha}, max{x : tail(x) >= alpha}], computed from the
/// piecewise-linear CDF with jump handling. Empty when alpha exceeds the
/// maximum depth.
pub fn region_1d_halfspace(m: &Measure1D, alpha: f64) -> Region1D {
    assert!(alpha > 0.0, "alpha must be positive");
    if alpha > 1.0 {
        return Region1D::Empty;
    }
    let bps = m.breakpoints();
    let lo = lower_cdf_crossing(m, &bps, alpha);
    let hi = upper_tail_crossing(m, &bps, alpha);
    match (lo, hi) {
        (Some(lo), Some(hi)) if lo <= hi => Region1D::interval(lo, hi),
        _ => Region1D::Empty,
    }
}

/// min{x : cdf(x) >= alpha}, exact on the piecewise-linear CDF.
fn lower_cdf_crossing(m: &Measure1D, bps: &[f64], alpha: f64) -> Option<f64> {
    let mut prev_b = bps[0];
    let mut prev_f = m.cdf(bps[0]);
    if prev_f >= alpha {
        return Some(prev_b);
    }
    for &b in &bps[1..] {
        let f_left = m.cdf(b) - m.atom_mass(b);
        if f_left >= alpha {
            let t = (alpha - prev_f) / (f_left - prev_f);
            return Some(prev_b + t * (b - prev_b));
        }
        let f = m.cdf(b);
        if f >= alpha {
            return Some(b);
        }
        prev_b = b;
        prev_f = f;
    }
    None
}

/// max{x : tail(x) >= alpha}, exact on the piecewise-linear tail.
fn upper_tail_crossing(m: &Measure1D, bps: &[f64], alpha: f64) -> Option<f64> {
    let last = *bps.last().expect("non-empty");
    let mut prev_b = last;
    let mut prev_g = m.tail(last);
    if prev_g >= alpha {
        return Some(last);
    }
    for &b in bps[..bps.len() - 1].iter().rev() {
        let g_right = m.tail(b) - m.atom_mass(b);
        if g_right >= alpha {
            let t = (g_right - alpha) / (g_right - prev_g);
            return Some(b + t * (prev_b - b));
        }
        let g = m.tail(b);
        if g >= alpha {
            return Some(b);
        }
        prev_b = b;
        prev_g = g;
    }
    None
}

/// Generic 1-D region of a quasiconcave depth function by bisection on the
/// indicator D(z) >= alpha. The bracket must strictly contain the region; a
/// 1024-interval scan of the bracket seeds the bisection, so regions
/// narrower than (hi - lo)/1024 may be reported empty.
pub fn region_1d_from_fn(
    f: impl Fn(f64) -> f64,
    alpha: f64,
    bracket: (f64, f64),
    tol: f64,
) -> Result<Region1D, RegionError> {
    let (lo, hi) = bracket;
    assert!(lo < hi, "bracket must be a proper interval");
    assert!(tol > 0.0, "tolerance must be positive");
    if f(lo) >= alpha || f(hi) >= alpha {
        return Err(RegionError::BracketTooSmall { alpha });
    }
    const GRID: usize = 1024;
    let mut seed = None;
    let mut best = f64::NEG_INFINITY;
    for i in 1..GRID {
        let x = lo + (hi - lo) * i as f64 / GRID as f64;
        let v = f(x);
        if v > best {
            best = v;
            if v >= alpha {
                seed = Some(x);
            }
        }
    }
    let Some(seed) = seed else {
        return Ok(Region1D::Empty);
    };
    let left = bisect_indicator(&f, alpha, lo, seed, tol);
    let right = bisect_indicator(&f, alpha, hi, seed, tol);
    Ok(Region1D::interval(left.min(right), left.max(right)))
}

/// Bisect between `outside` (depth < alpha) and `inside` (depth >= alpha).
fn bisect_indicator(f: &impl Fn(f64) -> f64, alpha: f64, outside: f64, inside: f64, tol: f64) -> f64 {
    let mut a = outside;
    let mut b = inside;
    while (b - a).abs() > tol {
        let mid = 0.5 * (a + b);
        if f(mid) >= alpha {
            b = mid;
        } else {
            a = mid;
        }
    }
    0.5 * (a + b)
}

/// Bisection fallback applied to a depth evaluator.
pub fn region_1d_from_depth(
    d: &DepthEvaluator,
    alpha: f64,
    bracket: (f64, f64),
    tol: f64,
) -> Result<Region1D, RegionError> {
    if d.dim() != 1 {
        return Err(RegionError::WrongDimension {
            expected: 1,
            got: d.dim(),
        });
    }
    region_1d_from_fn(|x| d.eval1(x), alpha, bracket, tol)
}

/// Exact 1-D trimmed region of a shipped depth evaluator.
pub fn region_1d(d: &DepthEvaluator, alpha: f64) -> Result<Region1D, RegionError> {
    assert!(alpha > 0.0, "alpha must be positive");
    if d.dim() != 1 {
        return Err(RegionError::WrongDimension {
            expected: 1,
            got: d.dim(),
        });
    }
    if alpha > 1.0 {
        return Ok(Region1D::Empty);
    }
    let region = match (d.kind(), d.measure()) {
        (DepthKind::Halfspace, DepthMeasure::Mixture(m)) => region_1d_halfspace(m, alpha),
        (DepthKind::Halfspace, DepthMeasure::Cloud(e)) => halfspace_cloud_region(e, alpha),
        (DepthKind::Mahalanobis, _) => {
            let m = d.moments();
            let r = (m.covariance[(0, 0)] * (1.0 / alpha - 1.0)).max(0.0).sqrt();
            Region1D::interval(m.mean[0] - r, m.mean[0] + r)
        }
        (DepthKind::AsymMahalanobis { .. }, DepthMeasure::Cloud(e)) => {
            let c = (1.0 / alpha - 1.0).max(0.0);
            let (mu, up) = crate::depths::upper_semivariance(e, &[1.0]);
            // the flipped projection's upper semi-variance is the lower one
            let (_, dn) = crate::depths::upper_semivariance(e, &[-1.0]);
            Region1D::interval(mu - (c * dn).sqrt(), mu + (c * up).sqrt())
        }
        (DepthKind::Zonoid { .. }, DepthMeasure::Cloud(e)) => {
            let w = WeightFunction::zonoid();
            let hi = wm_region_support(e, alpha, &w, &[1.0]);
            let lo = -wm_region_support(e, alpha, &w, &[-1.0]);
            Region1D::interval(lo, hi)
        }
        _ => unreachable!("evaluator construction rejects this combination"),
    };
    Ok(region)
}

/// Exact halfspace region of a 1-D cloud: between the smallest value whose
/// left weight reaches alpha and the largest value whose right weight does.
fn halfspace_cloud_region(e: &EmpiricalMeasure, alpha: f64) -> Region1D {
    let vw = e.sorted_projection(&[1.0]);
    let mut lo = None;
    let mut cum = 0.0;
    for &(v, w) in &vw {
        cum += w;
        if cum >= alpha {
            lo = Some(v);
            break;
        }
    }
    let mut hi = None;
    let mut cum = 0.0;
    for &(v, w) in vw.iter().rev() {
        cum += w;
        if cum >= alpha {
            hi = Some(v);
            break;
        }
    }
    match (lo, hi) {
        (Some(lo), Some(hi)) if lo <= hi => Region1D::interval(lo, hi),
        _ => Region1D::Empty,
    }
}

/// Maximum depth with a witness point.
///
/// Normed depths (Mahalanobis, asymmetric Mahalanobis, zonoid) attain depth
/// one at the mean. Halfspace depth on a mixture is maximized exactly over
/// CDF breakpoints and CDF/tail crossings; on clouds the maximum over data
/// values (1-D) or a grid-plus-refine scan of the hull box (2-D) is used,
/// the latter sound for quasiconcave depths and refined to 1e-6.
pub fn alpha_max(d: &DepthEvaluator, search: SearchDomain) -> RegionProfile {
    if d.kind().is_normed() {
        return RegionProfile {
            alpha_max: 1.0,
            witness: d.center(),
        };
    }
    match (d.measure(), search) {
        (DepthMeasure::Mixture(m), SearchDomain::Hull) => mixture_halfspace_max(m),
        (DepthMeasure::Cloud(e), SearchDomain::Hull) if e.dim() == 1 => {
            let mut best = (f64::NEG_INFINITY, 0.0);
            for p in e.points() {
                let v = d.eval1(p[0]);
                if v > best.0 {
                    best = (v, p[0]);
                }
            }
            RegionProfile {
                alpha_max: best.0,
                witness: vec![best.1],
            }
        }
        (DepthMeasure::Cloud(_), SearchDomain::Hull) => grid_refine_max(d),
        (_, SearchDomain::Bracket(lo, hi)) => {
            assert_eq!(d.dim(), 1, "brackets are one-dimensional");
            let mut best = (f64::NEG_INFINITY, lo);
            for i in 0..=2048 {
                let x = lo + (hi - lo) * i as f64 / 2048.0;
                let v = d.eval1(x);
                if v > best.0 {
                    best = (v, x);
                }
            }
            let mut step = (hi - lo) / 2048.0;
            let mut x = best.1;
            while step > 1e-9 * (hi - lo).max(1.0) {
                step *= 0.5;
                for cand in [x - step, x + step] {
                    let v = d.eval1(cand);
                    if v > best.0 {
                        best = (v, cand);
                        x = cand;
                    }
                }
            }
            RegionProfile {
                alpha_max: best.0,
                witness: vec![best.1],
            }
        }
        (DepthMeasure::Moments(_), SearchDomain::Hull) => {
            unreachable!("moment-only evaluators are normed")
        }
    }
}

/// Exact maximum of min(cdf, tail) over the line: checked at breakpoints and
/// at the cdf/tail crossing inside each linear piece.
fn mixture_halfspace_max(m: &Measure1D) -> RegionProfile {
    let bps = m.breakpoints();
    let mut best = (f64::NEG_INFINITY, bps[0]);
    let mut consider = |x: f64| {
        let v = m.cdf(x).min(m.tail(x));
        if v > best.0 {
            best = (v, x);
        }
    };
    for &b in &bps {
        consider(b);
    }
    for w in bps.windows(2) {
        let (a, b) = (w[0], w[1]);
        let f0 = m.cdf(a);
        let f1 = m.cdf(b) - m.atom_mass(b);
        let g0 = m.tail(a) - m.atom_mass(a);
        let g1 = m.tail(b);
        // F rises, G falls; min(F, G) peaks where they cross
        let denom = (f1 - f0) + (g0 - g1);
        if denom > 0.0 {
            let t = (g0 - f0) / denom;
            if t > 0.0 && t < 1.0 {
                consider(a + t * (b - a));
            }
        }
    }
    RegionProfile {
        alpha_max: best.0,
        witness: vec![best.1],
    }
}

fn grid_refine_max(d: &DepthEvaluator) -> RegionProfile {
    let (lo, hi) = d.support_bounds().expect("clouds have support");
    let mut center = [0.5 * (lo[0] + hi[0]), 0.5 * (lo[1] + hi[1])];
    let mut half = [
        0.5 * (hi[0] - lo[0]).max(1e-12),
        0.5 * (hi[1] - lo[1]).max(1e-12),
    ];
    let mut best = (f64::NEG_INFINITY, center);
    const K: i32 = 8;
    for _round in 0..40 {
        for i in -K..=K {
            for j in -K..=K {
                let p = [
                    center[0] + half[0] * i as f64 / K as f64,
                    center[1] + half[1] * j as f64 / K as f64,
                ];
                let v = d.evaluate(&p);
                if v > best.0 {
                    best = (v, p);
                }
            }
        }
        center = best.1;
        half = [half[0] * 0.55, half[1] * 0.55];
        if half[0].max(half[1]) < 1e-9 {
            break;
        }
    }
    RegionProfile {
        alpha_max: best.0,
        witness: best.1.to_vec(),
    }
}

/// 2-D trimmed region as the intersection of `n_directions` supporting
/// halfplanes {x : p.x <= h_alpha(p)}.
///
/// Every shipped depth admits an exact per-direction support bound, so the
/// polygon is a true outer approximation of the region that tightens as
/// `n_directions` grows: the weighted-mean support function for zonoid
/// depth, the upper-alpha projection quantile for halfspace depth (a point
/// belongs to the region iff no direction pushes it past that quantile),
/// and mean plus scaled (semi-)deviation for the Mahalanobis depths.
/// Returns Empty when alpha exceeds the maximum depth; a region whose
/// diameter collapses below `tol` is returned as a one-vertex polygon at
/// the deepest point.
pub fn region_2d(
    d: &DepthEvaluator,
    alpha: f64,
    n_directions: usize,
    tol: f64,
) -> Result<Region2D, RegionError> {
    assert!(alpha > 0.0 && alpha <= 1.0, "alpha must lie in (0, 1]");
    assert!(n_directions >= 3, "need at least three directions");
    assert!(tol > 0.0, "tolerance must be positive");
    if d.dim() != 2 {
        return Err(RegionError::WrongDimension {
            expected: 2,
            got: d.dim(),
        });
    }
    let profile = alpha_max(d, SearchDomain::Hull);
    if alpha > profile.alpha_max {
        return Ok(Region2D::Empty);
    }
    let witness = [profile.witness[0], profile.witness[1]];

    // a box certain to contain the region
    let (lo, hi) = match d.support_bounds() {
        Some((lo, hi)) => (lo, hi),
        None => (profile.witness.clone(), profile.witness.clone()),
    };
    let span = (hi[0] - lo[0]).max(hi[1] - lo[1]).max(1.0);
    let reach = match d.kind() {
        DepthKind::Mahalanobis => {
            let m = d.moments();
            let lmax = m
                .covariance
                .clone()
                .symmetric_eigen()
                .eigenvalues
                .iter()
                .fold(0.0f64, |a, &b| a.max(b));
            (lmax * (1.0 / alpha - 1.0)).max(0.0).sqrt()
        }
        _ => 0.0,
    };
    let margin = 4.0 * span + 2.0 * reach;
    let mut poly = vec![
        [lo[0] - margin, lo[1] - margin],
        [hi[0] + margin, lo[1] - margin],
        [hi[0] + margin, hi[1] + margin],
        [lo[0] - margin, hi[1] + margin],
    ];

    for j in 0..n_directions {
        let th = 2.0 * std::f64::consts::PI * j as f64 / n_directions as f64;
        let u = [th.cos(), th.sin()];
        let h = support_bound(d, alpha, u);
        poly = polygon::clip_halfplane(&poly, u, h);
        if poly.is_empty() {
            break;
        }
    }
    if poly.is_empty() {
        return Ok(Region2D::Polygon(ConvexPolygon::singleton(witness)));
    }
    match ConvexPolygon::from_loop(poly) {
        Ok(p) => {
            if p.diameter() <= tol {
                Ok(Region2D::Polygon(ConvexPolygon::singleton(witness)))
            } else {
                Ok(Region2D::Polygon(p))
            }
        }
        Err(_) => Ok(Region2D::Polygon(ConvexPolygon::singleton(witness))),
    }
}

/// Exact upper bound on the support function of D_alpha in direction `u`:
/// every point of the region satisfies u.x <= support_bound(u).
fn support_bound(d: &DepthEvaluator, alpha: f64, u: [f64; 2]) -> f64 {
    match (d.kind(), d.measure()) {
        (DepthKind::Zonoid { .. }, DepthMeasure::Cloud(e)) => {
            wm_region_support(e, alpha, &WeightFunction::zonoid(), &u)
        }
        (DepthKind::Halfspace, DepthMeasure::Cloud(e)) => {
            // z is in the region iff every closed halfplane containing z has
            // weight >= alpha; the binding constraint in direction u is the
            // largest q whose upper set {u.x >= q} still carries mass alpha
            let mut vw = e.sorted_projection(&u);
            vw.reverse();
            let mut cum = 0.0;
            for &(v, w) in &vw {
                cum += w;
                if cum >= alpha {
                    return v;
                }
            }
            vw.last().expect("non-empty").0
        }
        (DepthKind::Mahalanobis, _) => {
            let m = d.moments();
            let q = u[0] * (m.covariance[(0, 0)] * u[0] + m.covariance[(0, 1)] * u[1])
                + u[1] * (m.covariance[(1, 0)] * u[0] + m.covariance[(1, 1)] * u[1]);
            let c = (1.0 / alpha - 1.0).max(0.0);
            u[0] * m.mean[0] + u[1] * m.mean[1] + (c * q).max(0.0).sqrt()
        }
        (DepthKind::AsymMahalanobis { .. }, DepthMeasure::Cloud(e)) => {
            let (mu, sp2) = crate::depths::upper_semivariance(e, &u);
            let c = (1.0 / alpha - 1.0).max(0.0);
            mu + (c * sp2).sqrt()
        }
        _ => unreachable!("evaluator construction rejects this combination"),
    }
}
