//! Probability measures: 1-D mixtures of uniform segments and point atoms,
//! and d-dimensional weighted point clouds (empirical measures).
//!
//! `Measure1D` supports exact CDF/tail evaluation including atom jumps, which
//! is what makes the closed-form region and depth computations downstream
//! exact. `EmpiricalMeasure` is the weighted point cloud P_n.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use nalgebra::DMatrix;

const WEIGHT_SUM_TOL: f64 = 1e-12;
const SYMMETRY_TOL: f64 = 1e-10;
const EIGENVALUE_FLOOR: f64 = -1e-10;

#[derive(Debug, Error)]
pub enum MeasureError {
    #[error("component weights sum to {sum:.17e}, expected 1 within 1e-12")]
    WeightSum { sum: f64 },
    #[error("uniform segment requires lo < hi, got [{lo}, {hi}]")]
    BadSegment { lo: f64, hi: f64 },
    #[error("negative component weight {weight}")]
    NegativeWeight { weight: f64 },
    #[error("measure must have at least one component")]
    NoComponents,
    #[error("point cloud must contain at least one point")]
    EmptyCloud,
    #[error("point {index} has a non-finite coordinate")]
    NonFinite { index: usize },
    #[error("expected {expected} coordinates, point {index} has {got}")]
    DimensionMismatch {
        index: usize,
        expected: usize,
        got: usize,
    },
    #[error("weight vector has length {got}, expected {expected}")]
    WeightLength { expected: usize, got: usize },
    #[error("covariance matrix is not symmetric within 1e-10")]
    Asymmetric,
    #[error("covariance matrix has eigenvalue {value:.3e} below -1e-10")]
    NotPsd { value: f64 },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// One component of a 1-D mixture.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Component1D {
    /// Uniform distribution on `[lo, hi]`, `lo < hi` strictly.
    Segment { lo: f64, hi: f64 },
    /// Point mass at `x`.
    Atom { x: f64 },
}

/// A 1-D probability measure given as a weighted mixture of uniform segments
/// and atoms. Weights are non-negative and sum to 1 within 1e-12.
#[derive(Debug, Clone, PartialEq)]
pub struct Measure1D {
    parts: Vec<(Component1D, f64)>,
}

impl Measure1D {
    pub fn new(parts: Vec<(Component1D, f64)>) -> Result<Self, MeasureError> {
        if parts.is_empty() {
            return Err(MeasureError::NoComponents);
        }
        let mut sum = 0.0;
        for &(comp, w) in &parts {
            if !(w >= 0.0) {
                return Err(MeasureError::NegativeWeight { weight: w });
            }
            if let Component1D::Segment { lo, hi } = comp {
                if !(lo < hi) {
                    return Err(MeasureError::BadSegment { lo, hi });
                }
            }
            sum += w;
        }
        if (sum - 1.0).abs() > WEIGHT_SUM_TOL {
            return Err(MeasureError::WeightSum { sum });
        }
        Ok(Self { parts })
    }

    /// The uniform distribution on `[lo, hi]`.
    pub fn uniform(lo: f64, hi: f64) -> Self {
        Self::new(vec![(Component1D::Segment { lo, hi }, 1.0)]).expect("valid segment")
    }

    /// The one-point measure on `x`.
    pub fn point(x: f64) -> Self {
        Self::new(vec![(Component1D::Atom { x }, 1.0)]).expect("valid atom")
    }

    pub fn components(&self) -> &[(Component1D, f64)] {
        &self.parts
    }

    /// P((-inf, x]). Right-continuous, non-decreasing; atoms at `x` included.
    pub fn cdf(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for &(comp, w) in &self.parts {
            acc += match comp {
                Component1D::Segment { lo, hi } => {
                    if x <= lo {
                        0.0
                    } else if x >= hi {
                        w
                    } else {
                        w * (x - lo) / (hi - lo)
                    }
                }
                Component1D::Atom { x: a } => {
                    if x >= a {
                        w
                    } else {
                        0.0
                    }
                }
            };
        }
        acc.clamp(0.0, 1.0)
    }

    /// P([x, inf)) = 1 - cdf(x) + atom mass at x. Non-increasing.
    pub fn tail(&self, x: f64) -> f64 {
        (1.0 - self.cdf(x) + self.atom_mass(x)).clamp(0.0, 1.0)
    }

    /// Total weight of atoms located exactly at `x`.
    pub fn atom_mass(&self, x: f64) -> f64 {
        self.parts
            .iter()
            .filter_map(|&(comp, w)| match comp {
                Component1D::Atom { x: a } if a == x => Some(w),
                _ => None,
            })
            .sum()
    }

    /// Sorted, deduplicated locations where the CDF changes slope or jumps:
    /// segment endpoints and atom positions.
    pub fn breakpoints(&self) -> Vec<f64> {
        let mut pts: Vec<f64> = Vec::with_capacity(2 * self.parts.len());
        for &(comp, _) in &self.parts {
            match comp {
                Component1D::Segment { lo, hi } => {
                    pts.push(lo);
                    pts.push(hi);
                }
                Component1D::Atom { x } => pts.push(x),
            }
        }
        pts.sort_by(|a, b| a.total_cmp(b));
        pts.dedup();
        pts
    }

    /// Smallest and largest support points.
    pub fn support_bounds(&self) -> (f64, f64) {
        let pts = self.breakpoints();
        (pts[0], *pts.last().expect("non-empty"))
    }

    /// Exact mean of the mixture.
    pub fn mean(&self) -> f64 {
        self.parts
            .iter()
            .map(|&(comp, w)| match comp {
                Component1D::Segment { lo, hi } => w * 0.5 * (lo + hi),
                Component1D::Atom { x } => w * x,
            })
            .sum()
    }

    /// Exact variance of the mixture.
    pub fn variance(&self) -> f64 {
        let mu = self.mean();
        self.parts
            .iter()
            .map(|&(comp, w)| match comp {
                Component1D::Segment { lo, hi } => {
                    let m = 0.5 * (lo + hi);
                    w * ((hi - lo) * (hi - lo) / 12.0 + (m - mu) * (m - mu))
                }
                Component1D::Atom { x } => w * (x - mu) * (x - mu),
            })
            .sum()
    }

    /// Draw `n` i.i.d. samples by inverse CDF.
    ///
    /// The generator is `ChaCha8Rng::seed_from_u64(seed)`. Each draw consumes
    /// exactly two `f64` variates in a fixed order: the first selects the
    /// mixture component by cumulative weight, the second positions the draw
    /// inside a segment (it is drawn and discarded for atoms). Identical
    /// `(seed, n)` therefore give bit-identical output on every platform.
    pub fn sample(&self, n: usize, seed: u64) -> EmpiricalMeasure {
        assert!(n >= 1, "sample size must be at least 1");
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut cum = Vec::with_capacity(self.parts.len());
        let mut acc = 0.0;
        for &(_, w) in &self.parts {
            acc += w;
            cum.push(acc);
        }
        let mut pts = Vec::with_capacity(n);
        for _ in 0..n {
            let u1: f64 = rng.random();
            let u2: f64 = rng.random();
            let k = cum.partition_point(|&c| c <= u1).min(self.parts.len() - 1);
            let x = match self.parts[k].0 {
                Component1D::Segment { lo, hi } => lo + u2 * (hi - lo),
                Component1D::Atom { x } => x,
            };
            pts.push(vec![x]);
        }
        EmpiricalMeasure::from_points(pts).expect("samples are finite")
    }

    /// Parse the plain-text component table: one component per line,
    /// `segment lo hi weight` or `atom x weight`, `#` comments allowed.
    pub fn from_text(text: &str) -> Result<Self, MeasureError> {
        let mut parts = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let stripped = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            };
            let fields: Vec<&str> = stripped.split_whitespace().collect();
            if fields.is_empty() {
                continue;
            }
            let parse = |s: &str| -> Result<f64, MeasureError> {
                s.parse::<f64>().map_err(|_| MeasureError::Parse {
                    line,
                    msg: format!("expected a number, got `{s}`"),
                })
            };
            match fields[0] {
                "segment" if fields.len() == 4 => {
                    parts.push((
                        Component1D::Segment {
                            lo: parse(fields[1])?,
                            hi: parse(fields[2])?,
                        },
                        parse(fields[3])?,
                    ));
                }
                "atom" if fields.len() == 3 => {
                    parts.push((Component1D::Atom { x: parse(fields[1])? }, parse(fields[2])?));
                }
                other => {
                    return Err(MeasureError::Parse {
                        line,
                        msg: format!(
                            "expected `segment lo hi weight` or `atom x weight`, got `{other} ...`"
                        ),
                    });
                }
            }
        }
        Self::new(parts)
    }

    /// Render in the format accepted by [`Measure1D::from_text`].
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for &(comp, w) in &self.parts {
            match comp {
                Component1D::Segment { lo, hi } => {
                    out.push_str(&format!("segment {lo:.17e} {hi:.17e} {w:.17e}\n"));
                }
                Component1D::Atom { x } => {
                    out.push_str(&format!("atom {x:.17e} {w:.17e}\n"));
                }
            }
        }
        out
    }
}

/// A weighted point cloud in dimension d: the empirical measure P_n.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalMeasure {
    data: Vec<f64>,
    n: usize,
    dim: usize,
    weights: Vec<f64>,
}

impl EmpiricalMeasure {
    /// Uniform weights 1/n.
    pub fn from_points(points: Vec<Vec<f64>>) -> Result<Self, MeasureError> {
        let n = points.len();
        Self::new(points, vec![1.0 / n as f64; n])
    }

    pub fn new(points: Vec<Vec<f64>>, weights: Vec<f64>) -> Result<Self, MeasureError> {
        if points.is_empty() {
            return Err(MeasureError::EmptyCloud);
        }
        let n = points.len();
        let dim = points[0].len();
        if dim == 0 {
            return Err(MeasureError::DimensionMismatch {
                index: 0,
                expected: 1,
                got: 0,
            });
        }
        if weights.len() != n {
            return Err(MeasureError::WeightLength {
                expected: n,
                got: weights.len(),
            });
        }
        let mut data = Vec::with_capacity(n * dim);
        for (i, p) in points.iter().enumerate() {
            if p.len() != dim {
                return Err(MeasureError::DimensionMismatch {
                    index: i,
                    expected: dim,
                    got: p.len(),
                });
            }
            if p.iter().any(|c| !c.is_finite()) {
                return Err(MeasureError::NonFinite { index: i });
            }
            data.extend_from_slice(p);
        }
        let mut sum = 0.0;
        for &w in &weights {
            if !(w >= 0.0) {
                return Err(MeasureError::NegativeWeight { weight: w });
            }
            sum += w;
        }
        if (sum - 1.0).abs() > WEIGHT_SUM_TOL {
            return Err(MeasureError::WeightSum { sum });
        }
        Ok(Self {
            data,
            n,
            dim,
            weights,
        })
    }

    /// 1-D cloud from raw values, uniform weights.
    pub fn from_values(values: &[f64]) -> Result<Self, MeasureError> {
        Self::from_points(values.iter().map(|&v| vec![v]).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn weight(&self, i: usize) -> f64 {
        self.weights[i]
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn points(&self) -> impl Iterator<Item = &[f64]> + '_ {
        (0..self.n).map(move |i| self.point(i))
    }

    /// Dot products `p . x_i` for all points.
    pub fn project(&self, p: &[f64]) -> Vec<f64> {
        assert_eq!(p.len(), self.dim, "direction has wrong dimension");
        self.points()
            .map(|x| x.iter().zip(p).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Projections sorted ascending, paired with their weights.
    pub fn sorted_projection(&self, p: &[f64]) -> Vec<(f64, f64)> {
        let mut vw: Vec<(f64, f64)> = self
            .project(p)
            .into_iter()
            .zip(self.weights.iter().copied())
            .collect();
        vw.sort_by(|a, b| a.0.total_cmp(&b.0));
        vw
    }

    /// Left-continuous weighted quantile of the projected sample at level
    /// `t` in (0, 1]: the smallest projection whose cumulative weight
    /// reaches `t`.
    pub fn projection_quantile(&self, p: &[f64], t: f64) -> f64 {
        assert!(
            t > 0.0 && t <= 1.0,
            "quantile level must lie in (0, 1], got {t}"
        );
        assert!(p.iter().any(|&c| c != 0.0), "direction must be non-zero");
        let vw = self.sorted_projection(p);
        let mut cum = 0.0;
        for &(v, w) in &vw {
            cum += w;
            if cum >= t {
                return v;
            }
        }
        vw.last().expect("non-empty").0
    }

    /// Weighted mean and covariance, weights treated as probabilities
    /// (population normalization).
    pub fn moments(&self) -> MomentSummary {
        let d = self.dim;
        let mut mean = vec![0.0; d];
        for (i, x) in self.points().enumerate() {
            let w = self.weights[i];
            for j in 0..d {
                mean[j] += w * x[j];
            }
        }
        let mut cov = DMatrix::<f64>::zeros(d, d);
        for (i, x) in self.points().enumerate() {
            let w = self.weights[i];
            for j in 0..d {
                for k in j..d {
                    let c = w * (x[j] - mean[j]) * (x[k] - mean[k]);
                    cov[(j, k)] += c;
                }
            }
        }
        for j in 0..d {
            for k in 0..j {
                cov[(j, k)] = cov[(k, j)];
            }
        }
        MomentSummary::from_parts(mean, cov)
    }

    /// Parse CSV: header row required, one point per row, optional trailing
    /// `weight` column.
    pub fn from_csv_str(text: &str) -> Result<Self, MeasureError> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines.next().ok_or(MeasureError::Parse {
            line: 1,
            msg: "missing header row".into(),
        })?;
        let cols: Vec<&str> = header.split(',').map(str::trim).collect();
        if cols.is_empty() || cols[0].is_empty() {
            return Err(MeasureError::Parse {
                line: 1,
                msg: "empty header row".into(),
            });
        }
        let has_weight = cols
            .last()
            .map(|c| c.eq_ignore_ascii_case("weight"))
            .unwrap_or(false);
        let dim = if has_weight { cols.len() - 1 } else { cols.len() };
        if dim == 0 {
            return Err(MeasureError::Parse {
                line: 1,
                msg: "no coordinate columns".into(),
            });
        }
        let mut points = Vec::new();
        let mut weights = Vec::new();
        for (i, raw) in lines {
            let line = i + 1;
            if raw.trim().is_empty() {
                continue;
            }
            let fields: Vec<&str> = raw.split(',').map(str::trim).collect();
            if fields.len() != cols.len() {
                return Err(MeasureError::Parse {
                    line,
                    msg: format!("expected {} fields, got {}", cols.len(), fields.len()),
                });
            }
            let mut p = Vec::with_capacity(dim);
            for f in &fields[..dim] {
                p.push(f.parse::<f64>().map_err(|_| MeasureError::Parse {
                    line,
                    msg: format!("expected a number, got `{f}`"),
                })?);
            }
            points.push(p);
            if has_weight {
                weights.push(fields[dim].parse::<f64>().map_err(|_| {
                    MeasureError::Parse {
                        line,
                        msg: format!("expected a weight, got `{}`", fields[dim]),
                    }
                })?);
            }
        }
        if has_weight {
            Self::new(points, weights)
        } else {
            Self::from_points(points)
        }
    }

    /// Render in the format accepted by [`EmpiricalMeasure::from_csv_str`].
    /// The weight column is emitted only when weights are non-uniform.
    pub fn to_csv_string(&self) -> String {
        let uniform = 1.0 / self.n as f64;
        let has_weight = self.weights.iter().any(|&w| w != uniform);
        let mut out = String::new();
        for j in 0..self.dim {
            if j > 0 {
                out.push(',');
            }
            out.push_str(&format!("x{}", j + 1));
        }
        if has_weight {
            out.push_str(",weight");
        }
        out.push('\n');
        for (i, p) in self.points().enumerate() {
            for (j, c) in p.iter().enumerate() {
                if j > 0 {
                    out.push(',');
                }
                out.push_str(&format!("{c:.17e}"));
            }
            if has_weight {
                out.push_str(&format!(",{:.17e}", self.weights[i]));
            }
            out.push('\n');
        }
        out
    }
}

/// Plug-in mean and covariance of a measure.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentSummary {
    pub mean: Vec<f64>,
    pub covariance: DMatrix<f64>,
    /// True when the covariance is rank-deficient (smallest eigenvalue at or
    /// below 1e-12 times the largest); Mahalanobis inversion must reject it.
    pub degenerate: bool,
}

impl MomentSummary {
    pub fn new(mean: Vec<f64>, covariance: DMatrix<f64>) -> Result<Self, MeasureError> {
        let d = mean.len();
        assert_eq!(covariance.nrows(), d);
        assert_eq!(covariance.ncols(), d);
        for j in 0..d {
            for k in 0..j {
                if (covariance[(j, k)] - covariance[(k, j)]).abs() > SYMMETRY_TOL {
                    return Err(MeasureError::Asymmetric);
                }
            }
        }
        let min_eig = Self::eigen_range(&covariance).0;
        if min_eig < EIGENVALUE_FLOOR {
            return Err(MeasureError::NotPsd { value: min_eig });
        }
        Ok(Self::from_parts(mean, covariance))
    }

    fn from_parts(mean: Vec<f64>, covariance: DMatrix<f64>) -> Self {
        let (min_eig, max_eig) = Self::eigen_range(&covariance);
        let degenerate = max_eig <= 0.0 || min_eig <= 1e-12 * max_eig;
        Self {
            mean,
            covariance,
            degenerate,
        }
    }

    fn eigen_range(cov: &DMatrix<f64>) -> (f64, f64) {
        let eig = cov.clone().symmetric_eigen();
        let mut min = f64::INFINITY;
        let mut max = f64::NEG_INFINITY;
        for &v in eig.eigenvalues.iter() {
            min = min.min(v);
            max = max.max(v);
        }
        (min, max)
    }

    pub fn dim(&self) -> usize {
        self.mean.len()
    }

    /// Ratio of largest to smallest covariance eigenvalue.
    pub fn condition_number(&self) -> f64 {
        let (min, max) = Self::eigen_range(&self.covariance);
        if min <= 0.0 {
            f64::INFINITY
        } else {
            max / min
        }
    }
}
