//! A named depth bound to a measure, with precomputed internals so that
//! point evaluation is cheap and total.
//!
//! Evaluators are immutable after construction; grid scans may share one
//! across threads freely.

use nalgebra::{Cholesky, DMatrix, DVector, Dyn};

use super::zonoid::{critical_directions, zonoid_depth_with_dirs};
use super::{
    halfspace_depth_1d, halfspace_depth_emp, upper_semivariance, DepthError,
    MAHALANOBIS_CONDITION_LIMIT,
};
use crate::measures::{EmpiricalMeasure, Measure1D, MomentSummary};

/// Which depth to evaluate, with its per-depth settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DepthKind {
    Mahalanobis,
    AsymMahalanobis { n_directions: usize },
    Halfspace,
    Zonoid { tol: f64 },
}

impl DepthKind {
    pub fn name(&self) -> &'static str {
        match self {
            DepthKind::Mahalanobis => "mahalanobis",
            DepthKind::AsymMahalanobis { .. } => "asym-mahalanobis",
            DepthKind::Halfspace => "halfspace",
            DepthKind::Zonoid { .. } => "zonoid",
        }
    }

    /// Normed depths attain maximum depth one for every measure.
    pub fn is_normed(&self) -> bool {
        !matches!(self, DepthKind::Halfspace)
    }
}

/// The measure a depth is evaluated against.
#[derive(Debug, Clone)]
pub enum DepthMeasure {
    Mixture(Measure1D),
    Cloud(EmpiricalMeasure),
    Moments(MomentSummary),
}

enum Backend {
    Mahalanobis {
        mean: DVector<f64>,
        chol: Cholesky<f64, Dyn>,
    },
    AsymMahalanobis {
        // unit direction, projection mean, upper semi-variance
        dirs: Vec<(Vec<f64>, f64, f64)>,
    },
    HalfspaceMixture,
    HalfspaceSorted {
        vals: Vec<f64>,
        prefix: Vec<f64>,
    },
    HalfspaceSweep,
    Zonoid {
        dirs: Vec<Vec<f64>>,
        tol: f64,
    },
}

pub struct DepthEvaluator {
    kind: DepthKind,
    measure: DepthMeasure,
    dim: usize,
    backend: Backend,
}

impl DepthEvaluator {
    pub fn new(kind: DepthKind, measure: DepthMeasure) -> Result<Self, DepthError> {
        let dim = match &measure {
            DepthMeasure::Mixture(_) => 1,
            DepthMeasure::Cloud(e) => e.dim(),
            DepthMeasure::Moments(m) => m.dim(),
        };
        let backend = match (kind, &measure) {
            (DepthKind::Mahalanobis, _) => {
                let m = Self::moments_of(&measure);
                let cond = m.condition_number();
                if m.degenerate || cond > MAHALANOBIS_CONDITION_LIMIT {
                    return Err(DepthError::DegenerateCovariance { cond });
                }
                let chol = m
                    .covariance
                    .clone()
                    .cholesky()
                    .ok_or(DepthError::DegenerateCovariance { cond })?;
                Backend::Mahalanobis {
                    mean: DVector::from_vec(m.mean.clone()),
                    chol,
                }
            }
            (DepthKind::AsymMahalanobis { n_directions }, DepthMeasure::Cloud(e)) => {
                let raw = match dim {
                    1 => vec![vec![1.0], vec![-1.0]],
                    2 => {
                        let k = n_directions.max(4);
                        (0..k)
                            .map(|j| {
                                let th = 2.0 * std::f64::consts::PI * j as f64 / k as f64;
                                vec![th.cos(), th.sin()]
                            })
                            .collect()
                    }
                    d => {
                        return Err(DepthError::UnsupportedDimension {
                            what: "asymmetric Mahalanobis depth",
                            supported: "1 and 2",
                            dim: d,
                        })
                    }
                };
                let mut dirs = Vec::with_capacity(raw.len());
                for p in raw {
                    let (mu, sp2) = upper_semivariance(e, &p);
                    if sp2 <= 0.0 {
                        return Err(DepthError::DegenerateDirection { dir: p });
                    }
                    dirs.push((p, mu, sp2));
                }
                Backend::AsymMahalanobis { dirs }
            }
            (DepthKind::Halfspace, DepthMeasure::Mixture(_)) => Backend::HalfspaceMixture,
            (DepthKind::Halfspace, DepthMeasure::Cloud(e)) => match e.dim() {
                1 => {
                    let vw = e.sorted_projection(&[1.0]);
                    let vals: Vec<f64> = vw.iter().map(|&(v, _)| v).collect();
                    let mut prefix = Vec::with_capacity(vw.len() + 1);
                    let mut acc = 0.0;
                    prefix.push(0.0);
                    for &(_, w) in &vw {
                        acc += w;
                        prefix.push(acc);
                    }
                    Backend::HalfspaceSorted { vals, prefix }
                }
                2 => Backend::HalfspaceSweep,
                d => {
                    return Err(DepthError::UnsupportedDimension {
                        what: "empirical halfspace depth",
                        supported: "1 and 2",
                        dim: d,
                    })
                }
            },
            (DepthKind::Zonoid { tol }, DepthMeasure::Cloud(e)) => Backend::Zonoid {
                dirs: critical_directions(e)?,
                tol,
            },
            (kind, measure) => {
                return Err(DepthError::IncompatibleMeasure {
                    kind: kind.name(),
                    measure: match measure {
                        DepthMeasure::Mixture(_) => "a 1-D mixture measure",
                        DepthMeasure::Cloud(_) => "a point cloud",
                        DepthMeasure::Moments(_) => "a moment summary",
                    },
                });
            }
        };
        Ok(Self {
            kind,
            measure,
            dim,
            backend,
        })
    }

    /// Mahalanobis depth directly from a mean/covariance pair.
    pub fn mahalanobis_from_moments(m: MomentSummary) -> Result<Self, DepthError> {
        Self::new(DepthKind::Mahalanobis, DepthMeasure::Moments(m))
    }

    fn moments_of(measure: &DepthMeasure) -> MomentSummary {
        match measure {
            DepthMeasure::Mixture(m) => {
                let cov = DMatrix::from_element(1, 1, m.variance());
                MomentSummary::new(vec![m.mean()], cov).expect("variance is non-negative")
            }
            DepthMeasure::Cloud(e) => e.moments(),
            DepthMeasure::Moments(m) => m.clone(),
        }
    }

    pub fn kind(&self) -> DepthKind {
        self.kind
    }

    /// Plug-in moments of the underlying measure.
    pub fn moments(&self) -> MomentSummary {
        Self::moments_of(&self.measure)
    }

    pub fn measure(&self) -> &DepthMeasure {
        &self.measure
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The mean of the underlying measure; for the shipped normed depths it
    /// is a point of maximum depth.
    pub fn center(&self) -> Vec<f64> {
        match &self.measure {
            DepthMeasure::Mixture(m) => vec![m.mean()],
            DepthMeasure::Cloud(e) => e.moments().mean,
            DepthMeasure::Moments(m) => m.mean.clone(),
        }
    }

    /// Axis-aligned bounds of the support, when the measure has one.
    pub fn support_bounds(&self) -> Option<(Vec<f64>, Vec<f64>)> {
        match &self.measure {
            DepthMeasure::Mixture(m) => {
                let (lo, hi) = m.support_bounds();
                Some((vec![lo], vec![hi]))
            }
            DepthMeasure::Cloud(e) => {
                let d = e.dim();
                let mut lo = vec![f64::INFINITY; d];
                let mut hi = vec![f64::NEG_INFINITY; d];
                for p in e.points() {
                    for j in 0..d {
                        lo[j] = lo[j].min(p[j]);
                        hi[j] = hi[j].max(p[j]);
                    }
                }
                Some((lo, hi))
            }
            DepthMeasure::Moments(_) => None,
        }
    }

    /// Depth of `z`. Total for well-constructed evaluators; panics only on a
    /// dimension mismatch, which is a caller bug.
    pub fn evaluate(&self, z: &[f64]) -> f64 {
        assert_eq!(
            z.len(),
            self.dim,
            "point has {} coordinates, evaluator expects {}",
            z.len(),
            self.dim
        );
        match &self.backend {
            Backend::Mahalanobis { mean, chol } => {
                let diff = DVector::from_iterator(
                    self.dim,
                    z.iter().zip(mean.iter()).map(|(a, b)| a - b),
                );
                let q = diff.dot(&chol.solve(&diff));
                1.0 / (1.0 + q.max(0.0))
            }
            Backend::AsymMahalanobis { dirs } => {
                let mut worst = 0.0f64;
                for (p, mu, sp2) in dirs {
                    let dev = p.iter().zip(z).map(|(a, b)| a * b).sum::<f64>() - mu;
                    if dev > 0.0 {
                        worst = worst.max(dev * dev / sp2);
                    }
                }
                1.0 / (1.0 + worst)
            }
            Backend::HalfspaceMixture => match &self.measure {
                DepthMeasure::Mixture(m) => halfspace_depth_1d(z[0], m),
                _ => unreachable!("backend implies mixture measure"),
            },
            Backend::HalfspaceSorted { vals, prefix } => {
                let total = *prefix.last().expect("non-empty");
                let le = prefix[vals.partition_point(|&v| v <= z[0])];
                let lt = prefix[vals.partition_point(|&v| v < z[0])];
                le.min(total - lt).clamp(0.0, 1.0)
            }
            Backend::HalfspaceSweep => match &self.measure {
                DepthMeasure::Cloud(e) => {
                    halfspace_depth_emp(z, e).expect("dimension checked at construction")
                }
                _ => unreachable!("backend implies cloud measure"),
            },
            Backend::Zonoid { dirs, tol } => match &self.measure {
                DepthMeasure::Cloud(e) => zonoid_depth_with_dirs(z, e, dirs, *tol),
                _ => unreachable!("backend implies cloud measure"),
            },
        }
    }

    /// 1-D convenience wrapper around [`DepthEvaluator::evaluate`].
    pub fn eval1(&self, x: f64) -> f64 {
        self.evaluate(&[x])
    }
}

impl std::fmt::Debug for DepthEvaluator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("DepthEvaluator")
            .field("kind", &self.kind)
            .field("dim", &self.dim)
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn evaluators_are_shareable_across_threads() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<DepthEvaluator>();
        assert_send_sync::<super::super::WeightFunction>();
    }

    #[test]
    fn evaluator_matches_free_functions() {
        let e = EmpiricalMeasure::from_points(vec![
            vec![0.0, 0.0],
            vec![1.0, 0.2],
            vec![0.4, 1.0],
            vec![-0.6, 0.5],
            vec![0.2, -0.8],
        ])
        .unwrap();
        let z = [0.15, 0.22];

        let hs = DepthEvaluator::new(DepthKind::Halfspace, DepthMeasure::Cloud(e.clone())).unwrap();
        assert_eq!(hs.evaluate(&z), halfspace_depth_emp(&z, &e).unwrap());

        let zd =
            DepthEvaluator::new(DepthKind::Zonoid { tol: 1e-9 }, DepthMeasure::Cloud(e.clone()))
                .unwrap();
        assert_abs_diff_eq!(
            zd.evaluate(&z),
            super::super::zonoid_depth(&z, &e, 1e-9).unwrap(),
            epsilon = 1e-15
        );

        let md = DepthEvaluator::new(DepthKind::Mahalanobis, DepthMeasure::Cloud(e.clone()))
            .unwrap();
        assert_abs_diff_eq!(
            md.evaluate(&z),
            super::super::mahalanobis_depth(&z, &e.moments()).unwrap(),
            epsilon = 1e-14
        );

        let ad = DepthEvaluator::new(
            DepthKind::AsymMahalanobis { n_directions: 64 },
            DepthMeasure::Cloud(e.clone()),
        )
        .unwrap();
        assert_abs_diff_eq!(
            ad.evaluate(&z),
            super::super::asym_mahalanobis_depth(&z, &e, 64).unwrap(),
            epsilon = 1e-14
        );
    }

    #[test]
    fn sorted_one_d_halfspace_matches_direct() {
        let e = EmpiricalMeasure::from_values(&[3.0, 1.0, 2.0, 1.0, 0.0]).unwrap();
        let ev = DepthEvaluator::new(DepthKind::Halfspace, DepthMeasure::Cloud(e.clone())).unwrap();
        for z in [-0.5, 0.0, 0.5, 1.0, 1.5, 2.0, 3.0, 3.5] {
            assert_abs_diff_eq!(
                ev.eval1(z),
                halfspace_depth_emp(&[z], &e).unwrap(),
                epsilon = 1e-15
            );
        }
    }

    #[test]
    fn incompatible_combinations_are_rejected() {
        let m = Measure1D::uniform(0.0, 1.0);
        assert!(matches!(
            DepthEvaluator::new(DepthKind::Zonoid { tol: 1e-9 }, DepthMeasure::Mixture(m)),
            Err(DepthError::IncompatibleMeasure { .. })
        ));
    }

    #[test]
    fn permutation_invariance() {
        let pts = vec![vec![0.0, 0.0], vec![1.0, 0.3], vec![0.2, 0.9], vec![-0.4, 0.4]];
        let mut rev = pts.clone();
        rev.reverse();
        let a = EmpiricalMeasure::from_points(pts).unwrap();
        let b = EmpiricalMeasure::from_points(rev).unwrap();
        let z = [0.2, 0.3];
        for kind in [
            DepthKind::Halfspace,
            DepthKind::Zonoid { tol: 1e-10 },
            DepthKind::Mahalanobis,
        ] {
            let da = DepthEvaluator::new(kind, DepthMeasure::Cloud(a.clone()))
                .unwrap()
                .evaluate(&z);
            let db = DepthEvaluator::new(kind, DepthMeasure::Cloud(b.clone()))
                .unwrap()
                .evaluate(&z);
            assert_abs_diff_eq!(da, db, epsilon = 1e-12);
        }
    }
}
