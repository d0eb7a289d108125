//! Convergence diagnostics along a sequence of measures: pointwise and
//! uniform depth gaps, pointwise and compact Hausdorff gaps of trimmed
//! regions, the range condition, and finite-n surrogates of the set-limit
//! sandwich.
//!
//! All suprema are evaluated on finite grids and are therefore lower bounds
//! of the analytic suprema; reports carry that note, and callers that need
//! exact values must inject the extremal points into the grids. Verdicts
//! are deterministic functions of the tabulated rows and the explicit
//! thresholds; there are no hidden constants.

mod checks;

pub use checks::{
    axioms_check, axioms_suite, continuity_check, nesting_check_1d,
    strict_monotonicity_check, vanishing_at_infinity_check, AxiomsReport, CheckResult,
    ContinuityReport, StrictMonotonicityReport,
};

use serde::Serialize;

use crate::depths::DepthEvaluator;
use crate::hausdorff::hausdorff_intervals;
use crate::measures::EmpiricalMeasure;
use crate::regions::Region1D;

/// Pass thresholds for the convergence verdicts, applied to the last
/// `tail_len` rows of a report.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConvergenceThresholds {
    pub ptwd: f64,
    pub unid: f64,
    pub ptwr: f64,
    pub comr: f64,
    pub rc_tol: f64,
    pub tail_len: usize,
}

impl Default for ConvergenceThresholds {
    fn default() -> Self {
        Self {
            ptwd: 0.01,
            unid: 0.01,
            ptwr: 0.01,
            comr: 0.01,
            rc_tol: 1e-9,
            tail_len: 10,
        }
    }
}

/// A Hausdorff distance that may be undefined because an operand was empty.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum DistanceOrUndefined {
    Defined(f64),
    Undefined,
}

impl DistanceOrUndefined {
    pub fn value(&self) -> Option<f64> {
        match *self {
            DistanceOrUndefined::Defined(v) => Some(v),
            DistanceOrUndefined::Undefined => None,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ProbeGap {
    pub probe: Vec<f64>,
    pub gap: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct AlphaDistance {
    pub alpha: f64,
    pub distance: DistanceOrUndefined,
}

/// One row of a convergence report.
#[derive(Debug, Clone, Serialize, Default)]
pub struct PerN {
    pub n: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sup_depth_gap: Option<f64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub probe_gaps: Vec<ProbeGap>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub region_hausdorff: Vec<AlphaDistance>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sup_region_hausdorff: Option<DistanceOrUndefined>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha_max: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Verdict {
    pub mode: String,
    pub pass: bool,
    pub worst: f64,
    pub witness: String,
}

/// Grid sizes, thresholds and notes echoed into every report.
#[derive(Debug, Clone, Serialize, Default)]
pub struct ReportConfig {
    pub probe_count: usize,
    pub sup_grid_count: usize,
    pub alphas: Vec<f64>,
    pub a_interval: Option<(f64, f64)>,
    pub alpha_grid_count: usize,
    pub thresholds: Option<ConvergenceThresholds>,
    pub seed: Option<u64>,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConvergenceReport {
    pub per_n: Vec<PerN>,
    pub verdicts: Vec<Verdict>,
    pub config: ReportConfig,
}

impl ConvergenceReport {
    pub fn verdict(&self, mode: &str) -> Option<&Verdict> {
        self.verdicts.iter().find(|v| v.mode == mode)
    }

    /// Merge two reports row-wise by n (depth part + region part).
    pub fn merge(mut self, other: ConvergenceReport) -> ConvergenceReport {
        for row in other.per_n {
            if let Some(existing) = self.per_n.iter_mut().find(|r| r.n == row.n) {
                if row.sup_depth_gap.is_some() {
                    existing.sup_depth_gap = row.sup_depth_gap;
                }
                if !row.probe_gaps.is_empty() {
                    existing.probe_gaps = row.probe_gaps;
                }
                if !row.region_hausdorff.is_empty() {
                    existing.region_hausdorff = row.region_hausdorff;
                }
                if row.sup_region_hausdorff.is_some() {
                    existing.sup_region_hausdorff = row.sup_region_hausdorff;
                }
                if row.alpha_max.is_some() {
                    existing.alpha_max = row.alpha_max;
                }
            } else {
                self.per_n.push(row);
            }
        }
        self.per_n.sort_by_key(|r| r.n);
        self.verdicts.extend(other.verdicts);
        self.config.notes.extend(other.config.notes);
        if self.config.alphas.is_empty() {
            self.config.alphas = other.config.alphas;
        }
        if self.config.a_interval.is_none() {
            self.config.a_interval = other.config.a_interval;
        }
        if self.config.alpha_grid_count == 0 {
            self.config.alpha_grid_count = other.config.alpha_grid_count;
        }
        if self.config.sup_grid_count == 0 {
            self.config.sup_grid_count = other.config.sup_grid_count;
        }
        if self.config.probe_count == 0 {
            self.config.probe_count = other.config.probe_count;
        }
        self
    }

    /// CSV of (n, sup_depth_gap) rows.
    pub fn sup_gap_csv(&self) -> String {
        let mut out = String::from("n,sup_depth_gap\n");
        for row in &self.per_n {
            if let Some(g) = row.sup_depth_gap {
                out.push_str(&format!("{},{:.17e}\n", row.n, g));
            }
        }
        out
    }

    /// CSV of (n, alpha, hausdorff) rows; undefined distances print as the
    /// literal token UNDEFINED.
    pub fn region_csv(&self) -> String {
        let mut out = String::from("n,alpha,hausdorff\n");
        for row in &self.per_n {
            for ad in &row.region_hausdorff {
                match ad.distance {
                    DistanceOrUndefined::Defined(v) => {
                        out.push_str(&format!("{},{:.17e},{:.17e}\n", row.n, ad.alpha, v))
                    }
                    DistanceOrUndefined::Undefined => {
                        out.push_str(&format!("{},{:.17e},UNDEFINED\n", row.n, ad.alpha))
                    }
                }
            }
        }
        out
    }
}

fn tail_rows<'a>(rows: &'a [PerN], tail_len: usize) -> &'a [PerN] {
    let k = tail_len.max(1).min(rows.len());
    &rows[rows.len() - k..]
}

/// Pointwise and grid-sup depth gaps per n, with PtwD and UniD verdicts.
/// The grid sup is a lower bound of the analytic supremum.
pub fn depth_convergence(
    seq: &[(u32, DepthEvaluator)],
    reference: &DepthEvaluator,
    probes: &[Vec<f64>],
    sup_grid: &[Vec<f64>],
    thr: &ConvergenceThresholds,
) -> ConvergenceReport {
    assert!(!probes.is_empty() && !sup_grid.is_empty(), "grids must be non-empty");
    let mut per_n = Vec::with_capacity(seq.len());
    for (n, ev) in seq {
        let probe_gaps: Vec<ProbeGap> = probes
            .iter()
            .map(|p| ProbeGap {
                probe: p.clone(),
                gap: (ev.evaluate(p) - reference.evaluate(p)).abs(),
            })
            .collect();
        // probes count into the sup, so the reported sup dominates every
        // tabulated pointwise gap
        let sup = sup_grid
            .iter()
            .map(|p| (ev.evaluate(p) - reference.evaluate(p)).abs())
            .chain(probe_gaps.iter().map(|pg| pg.gap))
            .fold(0.0f64, f64::max);
        per_n.push(PerN {
            n: *n,
            sup_depth_gap: Some(sup),
            probe_gaps,
            ..PerN::default()
        });
    }

    let tail = tail_rows(&per_n, thr.tail_len);
    let mut worst_ptwd = (0.0f64, String::new());
    for row in tail {
        for pg in &row.probe_gaps {
            if pg.gap > worst_ptwd.0 {
                worst_ptwd = (pg.gap, format!("n = {}, probe {:?}", row.n, pg.probe));
            }
        }
    }
    let mut worst_unid = (0.0f64, String::new());
    for row in tail {
        let g = row.sup_depth_gap.expect("filled above");
        if g > worst_unid.0 {
            worst_unid = (g, format!("n = {}", row.n));
        }
    }
    let verdicts = vec![
        Verdict {
            mode: "PtwD".into(),
            pass: worst_ptwd.0 <= thr.ptwd,
            worst: worst_ptwd.0,
            witness: worst_ptwd.1,
        },
        Verdict {
            mode: "UniD".into(),
            pass: worst_unid.0 <= thr.unid,
            worst: worst_unid.0,
            witness: worst_unid.1,
        },
    ];
    ConvergenceReport {
        per_n,
        verdicts,
        config: ReportConfig {
            probe_count: probes.len(),
            sup_grid_count: sup_grid.len(),
            thresholds: Some(*thr),
            notes: vec![
                "grid suprema are lower bounds of the analytic suprema".into(),
            ],
            ..ReportConfig::default()
        },
    }
}

/// Per-alpha and interval-sup Hausdorff distances of trimmed regions, with
/// PtwR and ComR verdicts. `injected_alphas` are added to the uniform grid
/// on `a_interval` so that known extremal levels are hit exactly.
pub fn region_convergence<F, G>(
    seq: &[(u32, F)],
    reference: &G,
    alphas: &[f64],
    a_interval: (f64, f64),
    alpha_grid_count: usize,
    injected_alphas: &[f64],
    thr: &ConvergenceThresholds,
) -> ConvergenceReport
where
    F: Fn(f64) -> Region1D,
    G: Fn(f64) -> Region1D,
{
    assert!(alpha_grid_count >= 2, "need at least two grid levels");
    let (a_lo, a_hi) = a_interval;
    assert!(a_lo > 0.0 && a_lo < a_hi, "A must be a positive interval");
    let mut grid: Vec<f64> = (0..alpha_grid_count)
        .map(|i| a_lo + (a_hi - a_lo) * i as f64 / (alpha_grid_count - 1) as f64)
        .collect();
    grid.extend_from_slice(injected_alphas);

    let ref_regions: Vec<Region1D> = alphas.iter().map(|&a| reference(a)).collect();
    let ref_grid_regions: Vec<Region1D> = grid.iter().map(|&a| reference(a)).collect();

    let mut per_n = Vec::with_capacity(seq.len());
    for (n, region_fn) in seq {
        let region_hausdorff: Vec<AlphaDistance> = alphas
            .iter()
            .zip(&ref_regions)
            .map(|(&alpha, ref_r)| AlphaDistance {
                alpha,
                distance: match hausdorff_intervals(&region_fn(alpha), ref_r).distance() {
                    Some(v) => DistanceOrUndefined::Defined(v),
                    None => DistanceOrUndefined::Undefined,
                },
            })
            .collect();
        let mut sup = 0.0f64;
        let mut any_undefined = false;
        for (&alpha, ref_r) in grid.iter().zip(&ref_grid_regions) {
            match hausdorff_intervals(&region_fn(alpha), ref_r).distance() {
                Some(v) => sup = sup.max(v),
                None => any_undefined = true,
            }
        }
        per_n.push(PerN {
            n: *n,
            region_hausdorff,
            sup_region_hausdorff: Some(if any_undefined {
                DistanceOrUndefined::Undefined
            } else {
                DistanceOrUndefined::Defined(sup)
            }),
            ..PerN::default()
        });
    }

    let tail = tail_rows(&per_n, thr.tail_len);
    let mut worst_ptwr = (0.0f64, String::new());
    let mut ptwr_defined = true;
    for row in tail {
        for ad in &row.region_hausdorff {
            match ad.distance.value() {
                Some(v) => {
                    if v > worst_ptwr.0 {
                        worst_ptwr = (v, format!("n = {}, alpha = {}", row.n, ad.alpha));
                    }
                }
                None => {
                    ptwr_defined = false;
                    worst_ptwr.1 = format!("undefined at n = {}, alpha = {}", row.n, ad.alpha);
                }
            }
        }
    }
    let mut worst_comr = (0.0f64, String::new());
    let mut comr_defined = true;
    for row in tail {
        match row.sup_region_hausdorff.expect("filled above") {
            DistanceOrUndefined::Defined(v) => {
                if v > worst_comr.0 {
                    worst_comr = (v, format!("n = {}", row.n));
                }
            }
            DistanceOrUndefined::Undefined => {
                comr_defined = false;
                worst_comr.1 = format!("undefined at n = {}", row.n);
            }
        }
    }
    let verdicts = vec![
        Verdict {
            mode: "PtwR".into(),
            pass: ptwr_defined && worst_ptwr.0 <= thr.ptwr,
            worst: worst_ptwr.0,
            witness: worst_ptwr.1,
        },
        Verdict {
            mode: "ComR".into(),
            pass: comr_defined && worst_comr.0 <= thr.comr,
            worst: worst_comr.0,
            witness: worst_comr.1,
        },
    ];
    ConvergenceReport {
        per_n,
        verdicts,
        config: ReportConfig {
            alphas: alphas.to_vec(),
            a_interval: Some(a_interval),
            alpha_grid_count: grid.len(),
            thresholds: Some(*thr),
            notes: vec![
                "interval sup is over a finite alpha grid plus injected levels".into(),
            ],
            ..ReportConfig::default()
        },
    }
}

/// Range condition: the tail maximum of alpha_max(P_n) must not exceed
/// alpha_max(P) + tol.
#[derive(Debug, Clone, Serialize)]
pub struct RangeConditionReport {
    pub pass: bool,
    pub limsup_estimate: f64,
    pub reference_alpha_max: f64,
    pub rows: Vec<(u32, f64)>,
}

pub fn range_condition_check(
    alpha_maxes: &[(u32, f64)],
    ref_alpha_max: f64,
    thr: &ConvergenceThresholds,
) -> RangeConditionReport {
    assert!(!alpha_maxes.is_empty(), "need at least one element");
    let k = thr.tail_len.max(1).min(alpha_maxes.len());
    let limsup = alpha_maxes[alpha_maxes.len() - k..]
        .iter()
        .map(|&(_, a)| a)
        .fold(f64::NEG_INFINITY, f64::max);
    RangeConditionReport {
        pass: limsup <= ref_alpha_max + thr.rc_tol,
        limsup_estimate: limsup,
        reference_alpha_max: ref_alpha_max,
        rows: alpha_maxes.to_vec(),
    }
}

/// Finite-n surrogate of the set-limit sandwich
/// {D > alpha} in liminf D_alpha(P_n), limsup D_alpha(P_n) in D_alpha(P):
/// over a tail window of n, probes with reference depth above alpha + tol
/// must lie in every region, probes below alpha - tol in none.
#[derive(Debug, Clone, Serialize)]
pub struct SandwichViolation {
    pub n: u32,
    pub probe: f64,
    pub expected_inside: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SandwichReport {
    pub pass: bool,
    pub checked: usize,
    pub violations: Vec<SandwichViolation>,
}

pub fn set_limit_sandwich_check<F, D>(
    seq: &[(u32, F)],
    reference_depth: D,
    alpha: f64,
    probes: &[f64],
    window: (u32, u32),
    tol: f64,
) -> SandwichReport
where
    F: Fn(f64) -> Region1D,
    D: Fn(f64) -> f64,
{
    let mut violations = Vec::new();
    let mut checked = 0;
    for (n, region_fn) in seq {
        if *n < window.0 || *n > window.1 {
            continue;
        }
        let region = region_fn(alpha);
        for &z in probes {
            let d = reference_depth(z);
            if d > alpha + tol {
                checked += 1;
                if !region.contains(z, 1e-12) {
                    violations.push(SandwichViolation {
                        n: *n,
                        probe: z,
                        expected_inside: true,
                    });
                }
            } else if d < alpha - tol {
                checked += 1;
                if region.contains(z, -1e-12) {
                    violations.push(SandwichViolation {
                        n: *n,
                        probe: z,
                        expected_inside: false,
                    });
                }
            }
        }
    }
    SandwichReport {
        pass: violations.is_empty(),
        checked,
        violations,
    }
}

/// Kolmogorov-Smirnov statistic of a weighted 1-D sample against a CDF:
/// sup over jump points of the empirical-vs-true gap, evaluated on both
/// sides of every jump.
pub fn ks_statistic(e: &EmpiricalMeasure, cdf: impl Fn(f64) -> f64) -> f64 {
    assert_eq!(e.dim(), 1, "KS statistic is one-dimensional");
    let vw = e.sorted_projection(&[1.0]);
    let mut gap = 0.0f64;
    let mut cum = 0.0;
    for &(v, w) in &vw {
        let f = cdf(v);
        gap = gap.max((cum - f).abs());
        cum += w;
        gap = gap.max((cum - f).abs());
    }
    gap
}
