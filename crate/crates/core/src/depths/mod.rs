//! Depth functions D(z|P).
//!
//! Mahalanobis and asymmetric Mahalanobis depths are moment-based; halfspace
//! depth is exact in 1-D (on mixtures and clouds) and in 2-D on clouds via an
//! angular sweep; zonoid depth is computed by bisection over membership
//! feasibility checks. All depths map into [0, 1].

mod evaluator;
mod halfspace;
mod zonoid;

pub use evaluator::{DepthEvaluator, DepthKind, DepthMeasure};
pub use halfspace::{brute_halfspace_oracle, halfspace_depth_emp};
pub use zonoid::zonoid_depth;

use std::sync::Arc;

use thiserror::Error;

use crate::measures::{EmpiricalMeasure, Measure1D, MomentSummary};

/// Condition numbers above this make the covariance inverse meaningless.
pub const MAHALANOBIS_CONDITION_LIMIT: f64 = 1e12;

/// Default absolute tolerance for the zonoid-depth bisection.
pub const ZONOID_DEFAULT_TOL: f64 = 1e-9;

/// Default number of circle directions for 2-D sphere infima and support
/// scans.
pub const DEFAULT_DIRECTIONS: usize = 360;

#[derive(Debug, Error)]
pub enum DepthError {
    #[error(
        "covariance is rank-deficient or ill-conditioned (condition number {cond:.3e} exceeds 1e12)"
    )]
    DegenerateCovariance { cond: f64 },
    #[error("measure is degenerate along direction {dir:?}: zero upper semi-variance")]
    DegenerateDirection { dir: Vec<f64> },
    #[error("{what} supports dimensions {supported}, got {dim}")]
    UnsupportedDimension {
        what: &'static str,
        supported: &'static str,
        dim: usize,
    },
    #[error("point has {got} coordinates, evaluator expects {expected}")]
    WrongPointDimension { expected: usize, got: usize },
    #[error("{kind} depth cannot be built from {measure}")]
    IncompatibleMeasure {
        kind: &'static str,
        measure: &'static str,
    },
}

/// A cumulative weighting function t -> r_alpha(t) on [0, 1], non-decreasing
/// with r_alpha(0) = 0 and r_alpha(1) = 1.
#[derive(Clone)]
pub struct WeightFunction {
    name: String,
    f: Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>,
}

impl WeightFunction {
    pub fn new(name: impl Into<String>, f: impl Fn(f64, f64) -> f64 + Send + Sync + 'static) -> Self {
        Self {
            name: name.into(),
            f: Arc::new(f),
        }
    }

    /// The zonoid weight r_alpha(t) = max(0, (t - (1 - alpha)) / alpha).
    /// Integrating the quantile function against it yields the mean of the
    /// upper-alpha tail. The endpoint values r(0) = 0 and r(1) = 1 are
    /// returned exactly.
    pub fn zonoid() -> Self {
        Self::new("zonoid", |alpha: f64, t: f64| {
            if t >= 1.0 {
                1.0
            } else if t <= 1.0 - alpha {
                0.0
            } else {
                ((t - (1.0 - alpha)) / alpha).clamp(0.0, 1.0)
            }
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn eval(&self, alpha: f64, t: f64) -> f64 {
        (self.f)(alpha, t)
    }
}

impl std::fmt::Debug for WeightFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("WeightFunction")
            .field("name", &self.name)
            .finish()
    }
}

/// Mahalanobis depth [1 + (z - mu)' Sigma^{-1} (z - mu)]^{-1}.
pub fn mahalanobis_depth(z: &[f64], m: &MomentSummary) -> Result<f64, DepthError> {
    let d = m.dim();
    if z.len() != d {
        return Err(DepthError::WrongPointDimension {
            expected: d,
            got: z.len(),
        });
    }
    let cond = m.condition_number();
    if m.degenerate || cond > MAHALANOBIS_CONDITION_LIMIT {
        return Err(DepthError::DegenerateCovariance { cond });
    }
    let diff = nalgebra::DVector::from_iterator(d, z.iter().zip(&m.mean).map(|(a, b)| a - b));
    let chol = m
        .covariance
        .clone()
        .cholesky()
        .ok_or(DepthError::DegenerateCovariance { cond })?;
    let solved = chol.solve(&diff);
    let q = diff.dot(&solved);
    Ok(1.0 / (1.0 + q.max(0.0)))
}

/// Asymmetric Mahalanobis depth: the infimum over unit directions p of
/// [1 + (((p.z - mu_p)+ ) / sigma_plus_p)^2]^{-1}, where sigma_plus_p^2 is
/// the upper semi-variance of the projection p.X.
///
/// In 1-D the infimum over {-1, +1} is exact; in 2-D it is approximated over
/// `n_directions` unit vectors on the circle, which makes the returned value
/// an upper bound on the true depth.
pub fn asym_mahalanobis_depth(
    z: &[f64],
    e: &EmpiricalMeasure,
    n_directions: usize,
) -> Result<f64, DepthError> {
    let dirs = asym_directions(e.dim(), n_directions)?;
    let mut worst = 0.0f64;
    for p in &dirs {
        let (mu, sp2) = upper_semivariance(e, p);
        if sp2 <= 0.0 {
            return Err(DepthError::DegenerateDirection { dir: p.clone() });
        }
        let dev = z.iter().zip(p).map(|(a, b)| a * b).sum::<f64>() - mu;
        if dev > 0.0 {
            worst = worst.max(dev * dev / sp2);
        }
    }
    Ok(1.0 / (1.0 + worst))
}

fn asym_directions(dim: usize, n_directions: usize) -> Result<Vec<Vec<f64>>, DepthError> {
    match dim {
        1 => Ok(vec![vec![1.0], vec![-1.0]]),
        2 => {
            assert!(n_directions >= 2, "need at least two directions");
            Ok((0..n_directions)
                .map(|j| {
                    let th = 2.0 * std::f64::consts::PI * j as f64 / n_directions as f64;
                    vec![th.cos(), th.sin()]
                })
                .collect())
        }
        d => Err(DepthError::UnsupportedDimension {
            what: "asymmetric Mahalanobis depth",
            supported: "1 and 2",
            dim: d,
        }),
    }
}

/// Projection mean and plug-in upper semi-variance
/// sigma_plus^2 = E[((p.X - mu_p)+)^2].
pub(crate) fn upper_semivariance(e: &EmpiricalMeasure, p: &[f64]) -> (f64, f64) {
    let proj = e.project(p);
    let mu: f64 = proj.iter().zip(e.weights()).map(|(v, w)| v * w).sum();
    let sp2: f64 = proj
        .iter()
        .zip(e.weights())
        .map(|(v, w)| {
            let dev = (v - mu).max(0.0);
            w * dev * dev
        })
        .sum();
    (mu, sp2)
}

/// Exact halfspace depth on the real line:
/// min(P((-inf, z]), P([z, inf))).
pub fn halfspace_depth_1d(z: f64, m: &Measure1D) -> f64 {
    m.cdf(z).min(m.tail(z))
}

/// Support function of the weighted-mean trimmed region: the Stieltjes
/// integral of the projected quantile function against r_alpha, evaluated
/// exactly on the piecewise-constant empirical quantile function.
pub fn wm_region_support(
    e: &EmpiricalMeasure,
    alpha: f64,
    w: &WeightFunction,
    p: &[f64],
) -> f64 {
    assert!(alpha > 0.0 && alpha <= 1.0, "alpha must lie in (0, 1]");
    assert!(p.iter().any(|&c| c != 0.0), "direction must be non-zero");
    let vw = e.sorted_projection(p);
    let mut acc = 0.0;
    let mut cum = 0.0;
    let mut r_prev = w.eval(alpha, 0.0);
    for &(v, wt) in &vw {
        cum += wt;
        let r = w.eval(alpha, cum.min(1.0));
        acc += v * (r - r_prev);
        r_prev = r;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use nalgebra::DMatrix;

    #[test]
    fn mahalanobis_at_mean_and_unit_ellipse() {
        let m = MomentSummary::new(vec![0.0, 0.0], DMatrix::identity(2, 2)).unwrap();
        assert_eq!(mahalanobis_depth(&[0.0, 0.0], &m).unwrap(), 1.0);
        // quadratic form of 1 gives depth 1/2
        assert_abs_diff_eq!(
            mahalanobis_depth(&[1.0, 0.0], &m).unwrap(),
            0.5,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            mahalanobis_depth(&[3.0, 4.0], &m).unwrap(),
            1.0 / 26.0,
            epsilon = 1e-15
        );
    }

    #[test]
    fn mahalanobis_rejects_degenerate_covariance() {
        let e = EmpiricalMeasure::from_points(vec![vec![1.0, 1.0]; 4]).unwrap();
        let m = e.moments();
        assert!(matches!(
            mahalanobis_depth(&[0.0, 0.0], &m),
            Err(DepthError::DegenerateCovariance { .. })
        ));
    }

    #[test]
    fn asym_mahalanobis_two_points() {
        let e = EmpiricalMeasure::from_values(&[-1.0, 1.0]).unwrap();
        // at the mean the depth is one
        assert_eq!(asym_mahalanobis_depth(&[0.0], &e, 0).unwrap(), 1.0);
        // sigma_plus^2 in direction +1 is 0.5*(1-0)^2 = 0.5; at
        // z = 1 + sqrt(0.5) the standardized deviation is 1 + sqrt(2), so
        // the two-direction infimum is 1/(1 + (1+sqrt(2))^2) = 1/(4+2*sqrt(2)).
        let z = 1.0 + 0.5f64.sqrt();
        let expect = 1.0 / (4.0 + 2.0 * 2.0f64.sqrt());
        assert_abs_diff_eq!(
            asym_mahalanobis_depth(&[z], &e, 0).unwrap(),
            expect,
            epsilon = 1e-14
        );
        // one upper semi-deviation above the mean gives depth 1/2
        assert_abs_diff_eq!(
            asym_mahalanobis_depth(&[0.5f64.sqrt()], &e, 0).unwrap(),
            0.5,
            epsilon = 1e-14
        );
    }

    #[test]
    fn asym_mahalanobis_2d_mean() {
        let e = EmpiricalMeasure::from_points(vec![
            vec![0.0, 0.0],
            vec![1.0, 0.5],
            vec![2.0, -1.0],
            vec![0.5, 2.0],
        ])
        .unwrap();
        let mean = e.moments().mean;
        assert_eq!(asym_mahalanobis_depth(&mean, &e, 64).unwrap(), 1.0);
    }

    #[test]
    fn asym_mahalanobis_degenerate_direction() {
        let e = EmpiricalMeasure::from_points(vec![vec![0.0, 0.0], vec![0.0, 1.0]]).unwrap();
        // all mass projects to 0 along the x axis
        assert!(matches!(
            asym_mahalanobis_depth(&[1.0, 0.0], &e, 4),
            Err(DepthError::DegenerateDirection { .. })
        ));
    }

    #[test]
    fn wm_support_examples() {
        let e = EmpiricalMeasure::from_values(&[0.0, 1.0, 2.0, 3.0]).unwrap();
        let w = WeightFunction::zonoid();
        // alpha = 1 integrates the full quantile function: the mean
        assert_abs_diff_eq!(wm_region_support(&e, 1.0, &w, &[1.0]), 1.5, epsilon = 1e-14);
        // alpha = 0.5: mean of the top two projections
        assert_abs_diff_eq!(wm_region_support(&e, 0.5, &w, &[1.0]), 2.5, epsilon = 1e-14);
        // positive homogeneity in the direction
        let h1 = wm_region_support(&e, 0.3, &w, &[1.0]);
        let h3 = wm_region_support(&e, 0.3, &w, &[3.0]);
        assert_abs_diff_eq!(h3, 3.0 * h1, epsilon = 1e-12);
    }

    #[test]
    fn zonoid_weight_is_a_cumulative_weight() {
        let w = WeightFunction::zonoid();
        for &alpha in &[0.1, 0.25, 0.5, 1.0] {
            assert_eq!(w.eval(alpha, 0.0), 0.0);
            assert_eq!(w.eval(alpha, 1.0), 1.0);
            let mut prev = 0.0;
            for i in 0..=100 {
                let t = i as f64 / 100.0;
                let r = w.eval(alpha, t);
                assert!(r + 1e-15 >= prev);
                prev = r;
            }
        }
    }
}
