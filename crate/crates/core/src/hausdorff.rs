//! Hausdorff distance between compact sets: intervals, convex polygons and
//! finite point sets.
//!
//! The distance is undefined whenever an operand is empty; that case is a
//! first-class status value because convergence reports must tabulate it.

use serde::Serialize;
use thiserror::Error;

use crate::regions::{ConvexPolygon, Region1D, Region2D};

#[derive(Debug, Error)]
pub enum HausdorffError {
    #[error("sandwich check needs regions of one kind, got an interval and a polygon")]
    KindMismatch,
}

/// Hausdorff distance together with its two directed components, or the
/// undefined status when an operand is empty.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum HausdorffResult {
    Defined {
        distance: f64,
        directed_ab: f64,
        directed_ba: f64,
    },
    UndefinedEmptyOperand,
}

impl HausdorffResult {
    fn defined(directed_ab: f64, directed_ba: f64) -> Self {
        HausdorffResult::Defined {
            distance: directed_ab.max(directed_ba),
            directed_ab,
            directed_ba,
        }
    }

    pub fn distance(&self) -> Option<f64> {
        match *self {
            HausdorffResult::Defined { distance, .. } => Some(distance),
            HausdorffResult::UndefinedEmptyOperand => None,
        }
    }

    pub fn is_defined(&self) -> bool {
        matches!(self, HausdorffResult::Defined { .. })
    }
}

fn point_interval_distance(x: f64, lo: f64, hi: f64) -> f64 {
    (lo - x).max(x - hi).max(0.0)
}

/// Hausdorff distance between two closed intervals. For non-empty operands
/// it equals max(|a_lo - b_lo|, |a_hi - b_hi|).
pub fn hausdorff_intervals(a: &Region1D, b: &Region1D) -> HausdorffResult {
    match (a.endpoints(), b.endpoints()) {
        (Some((a1, a2)), Some((b1, b2))) => {
            let ab = point_interval_distance(a1, b1, b2).max(point_interval_distance(a2, b1, b2));
            let ba = point_interval_distance(b1, a1, a2).max(point_interval_distance(b2, a1, a2));
            HausdorffResult::defined(ab, ba)
        }
        _ => HausdorffResult::UndefinedEmptyOperand,
    }
}

/// Exact Hausdorff distance between convex polygons: the directed distance
/// from A to B is convex on A, so it is attained at a vertex of A, and the
/// point-to-polygon distance is exact for convex B.
pub fn hausdorff_polygons(a: &ConvexPolygon, b: &ConvexPolygon) -> HausdorffResult {
    let ab = a
        .vertices()
        .iter()
        .map(|&v| b.distance_to(v))
        .fold(0.0f64, f64::max);
    let ba = b
        .vertices()
        .iter()
        .map(|&v| a.distance_to(v))
        .fold(0.0f64, f64::max);
    HausdorffResult::defined(ab, ba)
}

/// Hausdorff distance between possibly-empty planar regions.
pub fn hausdorff_regions2d(a: &Region2D, b: &Region2D) -> HausdorffResult {
    match (a.polygon(), b.polygon()) {
        (Some(pa), Some(pb)) => hausdorff_polygons(pa, pb),
        _ => HausdorffResult::UndefinedEmptyOperand,
    }
}

/// Brute-force Hausdorff distance between finite point sets in any
/// dimension; O(|a| |b|). Serves as a discretization oracle for the polygon
/// computation.
pub fn hausdorff_pointsets(a: &[Vec<f64>], b: &[Vec<f64>]) -> HausdorffResult {
    if a.is_empty() || b.is_empty() {
        return HausdorffResult::UndefinedEmptyOperand;
    }
    let dist = |p: &[f64], q: &[f64]| -> f64 {
        p.iter()
            .zip(q)
            .map(|(x, y)| (x - y) * (x - y))
            .sum::<f64>()
            .sqrt()
    };
    let directed = |from: &[Vec<f64>], to: &[Vec<f64>]| -> f64 {
        from.iter()
            .map(|p| {
                to.iter()
                    .map(|q| dist(p, q))
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(0.0f64, f64::max)
    };
    HausdorffResult::defined(directed(a, b), directed(b, a))
}

/// A region operand for kind-checked set comparisons.
#[derive(Debug, Clone)]
pub enum RegionValue {
    Interval(Region1D),
    Planar(Region2D),
}

/// Containment with `tol` slack on the boundary. Empty is contained in
/// everything; nothing non-empty is contained in Empty.
pub fn region_subset(inner: &RegionValue, outer: &RegionValue, tol: f64) -> Result<bool, HausdorffError> {
    match (inner, outer) {
        (RegionValue::Interval(a), RegionValue::Interval(b)) => {
            Ok(match (a.endpoints(), b.endpoints()) {
                (None, _) => true,
                (Some(_), None) => false,
                (Some((a1, a2)), Some((b1, b2))) => a1 >= b1 - tol && a2 <= b2 + tol,
            })
        }
        (RegionValue::Planar(a), RegionValue::Planar(b)) => Ok(match (a.polygon(), b.polygon()) {
            (None, _) => true,
            (Some(_), None) => false,
            (Some(pa), Some(pb)) => pa.vertices().iter().all(|&v| pb.contains(v, tol)),
        }),
        _ => Err(HausdorffError::KindMismatch),
    }
}

/// True iff inner is contained in mid and mid in outer, with `tol` slack on
/// the boundaries. Vertex containment decides polygon inclusion, which is
/// exact for convex operands.
pub fn sandwich_check(
    inner: &RegionValue,
    mid: &RegionValue,
    outer: &RegionValue,
    tol: f64,
) -> Result<bool, HausdorffError> {
    Ok(region_subset(inner, mid, tol)? && region_subset(mid, outer, tol)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn interval_cases() {
        let a = Region1D::interval(-1.0, 1.0);
        let b = Region1D::interval(-2.0, 2.0);
        assert_eq!(hausdorff_intervals(&a, &b).distance(), Some(1.0));
        assert_eq!(hausdorff_intervals(&a, &a).distance(), Some(0.0));
        assert_eq!(
            hausdorff_intervals(&Region1D::interval(0.0, 1.0), &Region1D::Empty),
            HausdorffResult::UndefinedEmptyOperand
        );
        // disjoint intervals: directed distances differ
        let c = Region1D::interval(5.0, 6.0);
        let r = hausdorff_intervals(&a, &c);
        assert_eq!(r.distance(), Some(6.0));
    }

    #[test]
    fn polygon_cases() {
        let sq = ConvexPolygon::new(vec![[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]).unwrap();
        let shifted =
            ConvexPolygon::new(vec![[3.0, 0.0], [4.0, 0.0], [4.0, 1.0], [3.0, 1.0]]).unwrap();
        assert_eq!(hausdorff_polygons(&sq, &shifted).distance(), Some(3.0));

        let big =
            ConvexPolygon::new(vec![[-1.0, -1.0], [2.0, -1.0], [2.0, 2.0], [-1.0, 2.0]]).unwrap();
        let d = hausdorff_polygons(&sq, &big).distance().unwrap();
        assert!((d - 2.0f64.sqrt()).abs() < 1e-15);

        let pt = ConvexPolygon::singleton([0.0, 0.0]);
        let d = hausdorff_polygons(&pt, &sq).distance().unwrap();
        assert!((d - 2.0f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn pointset_cases() {
        let a = vec![vec![0.0]];
        let b = vec![vec![5.0]];
        assert_eq!(hausdorff_pointsets(&a, &b).distance(), Some(5.0));
        assert_eq!(hausdorff_pointsets(&a, &a).distance(), Some(0.0));
        assert!(!hausdorff_pointsets(&a, &[]).is_defined());
    }

    #[test]
    fn sandwich_cases() {
        let i = |lo, hi| RegionValue::Interval(Region1D::interval(lo, hi));
        assert!(sandwich_check(&i(-1.0, 1.0), &i(-1.5, 1.5), &i(-2.0, 2.0), 1e-12).unwrap());
        assert!(!sandwich_check(&i(-1.0, 1.0), &i(-3.0, 3.0), &i(-2.0, 2.0), 1e-12).unwrap());
        let sq = Region2D::Polygon(
            ConvexPolygon::new(vec![[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]).unwrap(),
        );
        assert!(matches!(
            sandwich_check(&i(0.0, 1.0), &RegionValue::Planar(sq), &i(0.0, 1.0), 1e-9),
            Err(HausdorffError::KindMismatch)
        ));
    }

    #[test]
    fn polygon_distance_matches_pointset_oracle_on_boundary_samples() {
        let tri = ConvexPolygon::new(vec![[0.0, 0.0], [2.0, 0.0], [0.5, 1.5]]).unwrap();
        let quad =
            ConvexPolygon::new(vec![[0.3, -0.2], [1.8, 0.1], [1.5, 1.2], [0.1, 1.0]]).unwrap();
        let pitch = 0.01;
        let sample = |p: &ConvexPolygon| -> Vec<Vec<f64>> {
            let mut out = Vec::new();
            let k = p.len();
            for i in 0..k {
                let a = p.vertices()[i];
                let b = p.vertices()[(i + 1) % k];
                let len = ((b[0] - a[0]).powi(2) + (b[1] - a[1]).powi(2)).sqrt();
                let steps = (len / pitch).ceil() as usize;
                for s in 0..steps.max(1) {
                    let t = s as f64 / steps.max(1) as f64;
                    out.push(vec![a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])]);
                }
            }
            out
        };
        let exact = hausdorff_polygons(&tri, &quad).distance().unwrap();
        let approx = hausdorff_pointsets(&sample(&tri), &sample(&quad))
            .distance()
            .unwrap();
        assert!(
            (exact - approx).abs() <= 2.0 * pitch,
            "exact {exact} vs boundary-sampled {approx}"
        );
    }

    fn arb_interval() -> impl Strategy<Value = Region1D> {
        (-10.0f64..10.0, 0.0f64..5.0).prop_map(|(lo, len)| Region1D::interval(lo, lo + len))
    }

    proptest! {
        #[test]
        fn interval_metric_axioms(a in arb_interval(), b in arb_interval(), c in arb_interval()) {
            let dab = hausdorff_intervals(&a, &b).distance().unwrap();
            let dba = hausdorff_intervals(&b, &a).distance().unwrap();
            prop_assert_eq!(dab, dba);
            let dac = hausdorff_intervals(&a, &c).distance().unwrap();
            let dbc = hausdorff_intervals(&b, &c).distance().unwrap();
            prop_assert!(dac <= dab + dbc + 1e-9);
            prop_assert!((dab == 0.0) == (a == b) || dab < 1e-9);
        }

        #[test]
        fn monotone_sandwich(lo in -5.0f64..0.0, pad1 in 0.0f64..2.0, pad2 in 0.0f64..2.0, len in 0.1f64..4.0) {
            // A1 inside B inside A2 forces d(A1, B) <= d(A1, A2)
            let a1 = Region1D::interval(lo, lo + len);
            let b = Region1D::interval(lo - pad1, lo + len + pad1);
            let a2 = Region1D::interval(lo - pad1 - pad2, lo + len + pad1 + pad2);
            let d_a1_b = hausdorff_intervals(&a1, &b).distance().unwrap();
            let d_a1_a2 = hausdorff_intervals(&a1, &a2).distance().unwrap();
            prop_assert!(d_a1_b <= d_a1_a2 + 1e-12);
        }
    }

    #[test]
    fn monotone_sequence_limits() {
        // decreasing intervals converge to their intersection
        let limit = Region1D::interval(-1.0, 1.0);
        for n in 1..50 {
            let r = Region1D::interval(-1.0 - 1.0 / n as f64, 1.0 + 1.0 / n as f64);
            let d = hausdorff_intervals(&r, &limit).distance().unwrap();
            assert!((d - 1.0 / n as f64).abs() < 1e-12);
        }
        // increasing intervals converge to the closure of their union
        let limit = Region1D::interval(-2.0, 2.0);
        for n in 1..50 {
            let r = Region1D::interval(-2.0 + 1.0 / n as f64, 2.0 - 1.0 / n as f64);
            let d = hausdorff_intervals(&r, &limit).distance().unwrap();
            assert!((d - 1.0 / n as f64).abs() < 1e-12);
        }
    }
}
