//! Convex polygons in counter-clockwise order, halfplane clipping and exact
//! point-to-polygon distances.

use serde::Serialize;

use super::RegionError;

/// Vertices within this distance are merged when polygons are built from
/// clipping output.
pub const VERTEX_DEDUP_TOL: f64 = 1e-12;

/// A convex polygon with vertices in counter-clockwise order. Degenerate
/// polygons with one vertex (a point) or two vertices (a segment) are
/// allowed; with three or more vertices the chain must be strictly convex.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvexPolygon {
    vertices: Vec<[f64; 2]>,
}

fn sub(a: [f64; 2], b: [f64; 2]) -> [f64; 2] {
    [a[0] - b[0], a[1] - b[1]]
}

fn cross(a: [f64; 2], b: [f64; 2]) -> f64 {
    a[0] * b[1] - a[1] * b[0]
}

fn dot(a: [f64; 2], b: [f64; 2]) -> f64 {
    a[0] * b[0] + a[1] * b[1]
}

fn norm(a: [f64; 2]) -> f64 {
    a[0].hypot(a[1])
}

fn dist(a: [f64; 2], b: [f64; 2]) -> f64 {
    norm(sub(a, b))
}

fn point_segment_distance(p: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    let ab = sub(b, a);
    let len2 = dot(ab, ab);
    if len2 == 0.0 {
        return dist(p, a);
    }
    let t = (dot(sub(p, a), ab) / len2).clamp(0.0, 1.0);
    dist(p, [a[0] + t * ab[0], a[1] + t * ab[1]])
}

impl ConvexPolygon {
    pub fn new(vertices: Vec<[f64; 2]>) -> Result<Self, RegionError> {
        if vertices.is_empty() {
            return Err(RegionError::EmptyPolygon);
        }
        for (i, v) in vertices.iter().enumerate() {
            if !v[0].is_finite() || !v[1].is_finite() {
                return Err(RegionError::NonFiniteVertex { index: i });
            }
        }
        let k = vertices.len();
        if k >= 2 {
            for i in 0..k {
                if dist(vertices[i], vertices[(i + 1) % k]) <= VERTEX_DEDUP_TOL {
                    return Err(RegionError::NotConvex);
                }
            }
        }
        if k >= 3 {
            for i in 0..k {
                let a = vertices[i];
                let b = vertices[(i + 1) % k];
                let c = vertices[(i + 2) % k];
                if cross(sub(b, a), sub(c, b)) <= 0.0 {
                    return Err(RegionError::NotConvex);
                }
            }
        }
        Ok(Self { vertices })
    }

    pub fn singleton(p: [f64; 2]) -> Self {
        Self { vertices: vec![p] }
    }

    /// Build from a convex vertex loop produced by clipping: merges vertices
    /// within [`VERTEX_DEDUP_TOL`], drops collinear chain points and fixes
    /// the orientation to counter-clockwise.
    pub fn from_loop(mut pts: Vec<[f64; 2]>) -> Result<Self, RegionError> {
        if pts.is_empty() {
            return Err(RegionError::EmptyPolygon);
        }
        // orientation first: signed area
        let area2: f64 = (0..pts.len())
            .map(|i| cross(pts[i], pts[(i + 1) % pts.len()]))
            .sum();
        if area2 < 0.0 {
            pts.reverse();
        }
        // merge consecutive duplicates (wrapping)
        let mut dedup: Vec<[f64; 2]> = Vec::with_capacity(pts.len());
        for p in pts {
            if dedup.last().map(|&q| dist(p, q) > VERTEX_DEDUP_TOL).unwrap_or(true) {
                dedup.push(p);
            }
        }
        while dedup.len() > 1
            && dist(dedup[0], *dedup.last().expect("non-empty")) <= VERTEX_DEDUP_TOL
        {
            dedup.pop();
        }
        // drop collinear or reflex chain vertices until stable
        loop {
            let k = dedup.len();
            if k < 3 {
                break;
            }
            let scale = dedup.iter().map(|v| norm(*v)).fold(1.0f64, f64::max);
            let thresh = 1e-12 * scale * scale;
            let mut keep: Vec<[f64; 2]> = Vec::with_capacity(k);
            for i in 0..k {
                let a = dedup[(i + k - 1) % k];
                let b = dedup[i];
                let c = dedup[(i + 1) % k];
                if cross(sub(b, a), sub(c, b)) > thresh {
                    keep.push(b);
                }
            }
            if keep.len() == dedup.len() {
                break;
            }
            if keep.is_empty() {
                keep.push(dedup[0]);
            }
            dedup = keep;
        }
        Self::new(dedup)
    }

    pub fn vertices(&self) -> &[[f64; 2]] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// True when `p` lies inside or within distance `tol` of the polygon.
    pub fn contains(&self, p: [f64; 2], tol: f64) -> bool {
        self.distance_to(p) <= tol
    }

    /// Exact Euclidean distance from `p` to the polygon (0 inside).
    pub fn distance_to(&self, p: [f64; 2]) -> f64 {
        let k = self.vertices.len();
        match k {
            1 => dist(p, self.vertices[0]),
            2 => point_segment_distance(p, self.vertices[0], self.vertices[1]),
            _ => {
                let mut inside = true;
                let mut best = f64::INFINITY;
                for i in 0..k {
                    let a = self.vertices[i];
                    let b = self.vertices[(i + 1) % k];
                    if cross(sub(b, a), sub(p, a)) < 0.0 {
                        inside = false;
                    }
                    best = best.min(point_segment_distance(p, a, b));
                }
                if inside {
                    0.0
                } else {
                    best
                }
            }
        }
    }

    /// max over the polygon of `dir . x`; attained at a vertex.
    pub fn support(&self, dir: [f64; 2]) -> f64 {
        self.vertices
            .iter()
            .map(|&v| dot(dir, v))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn diameter(&self) -> f64 {
        let mut best = 0.0f64;
        for (i, &a) in self.vertices.iter().enumerate() {
            for &b in &self.vertices[i + 1..] {
                best = best.max(dist(a, b));
            }
        }
        best
    }

    pub fn centroid_of_vertices(&self) -> [f64; 2] {
        let k = self.vertices.len() as f64;
        let mut c = [0.0, 0.0];
        for v in &self.vertices {
            c[0] += v[0] / k;
            c[1] += v[1] / k;
        }
        c
    }
}

/// Clip a convex vertex loop against the halfplane `u . x <= h`
/// (Sutherland-Hodgman step). Returns the clipped loop, possibly empty.
pub(crate) fn clip_halfplane(poly: &[[f64; 2]], u: [f64; 2], h: f64) -> Vec<[f64; 2]> {
    let k = poly.len();
    let mut out = Vec::with_capacity(k + 1);
    for i in 0..k {
        let a = poly[i];
        let b = poly[(i + 1) % k];
        let da = dot(u, a) - h;
        let db = dot(u, b) - h;
        if da <= 0.0 {
            out.push(a);
        }
        if (da < 0.0 && db > 0.0) || (da > 0.0 && db <= 0.0) {
            let t = da / (da - db);
            out.push([a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])]);
        }
    }
    out
}
