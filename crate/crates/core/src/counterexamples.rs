//! Four closed-form families of 1-D mixture measures whose halfspace depths
//! and trimmed regions are known exactly, together with machine-checkable
//! claim records for every numeric statement made about them.
//!
//! Families 1 and 2 mix a two-hump uniform Q1 = U([-3,-2] u [2,3]) with a
//! middle uniform Q2 = U([-1,1]); family 1 alternates the mixing weight
//! around 1/2 while family 2 approaches it from above. Families 3 and 4
//! place uniform segments on [-2,-a_n] u [a_n,2] and [-a_n,a_n] plus atoms
//! of weight 0.2 at both -a_n and a_n; family 3 alternates a_n around 1,
//! family 4 approaches 1 from above. The index n = 0 denotes the limit
//! measure in every family.

use serde::Serialize;
use thiserror::Error;

use crate::depths::halfspace_depth_1d;
use crate::hausdorff::hausdorff_intervals;
use crate::measures::{Component1D, Measure1D};
use crate::regions::{region_1d_halfspace, Region1D};

#[derive(Debug, Error)]
pub enum FamilyError {
    #[error("family id must be 1..=4, got {0}")]
    BadId(u8),
}

pub const FAMILY_IDS: [u8; 4] = [1, 2, 3, 4];

/// Mixing weight of the two-hump component for families 1 and 2
/// (w1 = 1/2 at n = 0).
fn hump_weight(id: u8, n: u32) -> f64 {
    if n == 0 {
        return 0.5;
    }
    let sign = if id == 1 && n % 2 == 1 { -1.0 } else { 1.0 };
    0.5 * (1.0 + sign / n as f64)
}

/// The jump location a_n for families 3 and 4 (a_0 = 1).
pub fn jump_location(id: u8, n: u32) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let sign = if id == 3 && n % 2 == 1 { -1.0 } else { 1.0 };
    1.0 + sign / (n + 1) as f64
}

/// Build the n-th measure of a family; n = 0 gives the limit measure.
pub fn build_family(id: u8, n: u32) -> Result<Measure1D, FamilyError> {
    match id {
        1 | 2 => {
            let w1 = hump_weight(id, n);
            let half = 0.5 * w1;
            let w2 = 1.0 - w1;
            Ok(Measure1D::new(vec![
                (Component1D::Segment { lo: -3.0, hi: -2.0 }, half),
                (Component1D::Segment { lo: 2.0, hi: 3.0 }, half),
                (Component1D::Segment { lo: -1.0, hi: 1.0 }, w2),
            ])
            .expect("family weights sum to one"))
        }
        3 | 4 => {
            let a = jump_location(id, n);
            Ok(Measure1D::new(vec![
                (Component1D::Segment { lo: -2.0, hi: -a }, 0.15),
                (Component1D::Segment { lo: a, hi: 2.0 }, 0.15),
                (Component1D::Segment { lo: -a, hi: a }, 0.3),
                (Component1D::Atom { x: -a }, 0.2),
                (Component1D::Atom { x: a }, 0.2),
            ])
            .expect("family weights sum to one"))
        }
        other => Err(FamilyError::BadId(other)),
    }
}

/// Closed-form halfspace depth of the n-th family member, evaluated
/// piecewise; this is an independent route from the CDF-based computation.
/// Jump values at the atoms count the atom on both sides.
pub fn exact_depth(id: u8, n: u32, x: f64) -> f64 {
    let t = x.abs();
    match id {
        1 | 2 => {
            let w1 = hump_weight(id, n);
            if t >= 3.0 {
                0.0
            } else if t >= 2.0 {
                0.5 * w1 * (3.0 - t)
            } else if t >= 1.0 {
                0.5 * w1
            } else {
                0.5 * w1 + 0.5 * (1.0 - w1) * (1.0 - t)
            }
        }
        3 | 4 => {
            let a = jump_location(id, n);
            if t > 2.0 {
                0.0
            } else if t > a {
                0.15 * (2.0 - t) / (2.0 - a)
            } else if t == a {
                0.35
            } else {
                0.35 + 0.3 * (a - t) / (2.0 * a)
            }
        }
        _ => panic!("family id must be 1..=4"),
    }
}

/// Closed-form trimmed region of the n-th family member.
pub fn exact_region(id: u8, n: u32, alpha: f64) -> Region1D {
    assert!(alpha > 0.0, "alpha must be positive");
    if alpha > 0.5 {
        return Region1D::Empty;
    }
    let t = match id {
        1 | 2 => {
            let w1 = hump_weight(id, n);
            if alpha <= 0.5 * w1 {
                3.0 - 2.0 * alpha / w1
            } else {
                1.0 - (2.0 * alpha - w1) / (1.0 - w1)
            }
        }
        3 | 4 => {
            let a = jump_location(id, n);
            if alpha > 0.35 {
                a * (1.0 - (alpha - 0.35) / 0.15)
            } else if alpha > 0.15 {
                a
            } else {
                2.0 - alpha * (2.0 - a) / 0.15
            }
        }
        _ => panic!("family id must be 1..=4"),
    };
    Region1D::interval(-t, t)
}

/// Kinks and atoms of the n-th member: the locations that must be injected
/// into any grid meant to attain the exact suprema.
pub fn breakpoints(id: u8, n: u32) -> Vec<f64> {
    match id {
        1 | 2 => vec![-3.0, -2.0, -1.0, 0.0, 1.0, 2.0, 3.0],
        3 | 4 => {
            let a = jump_location(id, n);
            vec![-2.0, -a, 0.0, a, 2.0]
        }
        _ => panic!("family id must be 1..=4"),
    }
}

/// A point where the depth discrepancy against the limit measure attains
/// (families 1, 2) or witnesses (families 3, 4) its supremum.
pub fn sup_gap_witness(id: u8, n: u32) -> f64 {
    match id {
        1 | 2 => 2.0,
        3 => 1.0,
        4 => 0.5 * (1.0 + jump_location(id, n)),
        _ => panic!("family id must be 1..=4"),
    }
}

/// Grid for depth-gap suprema: both members' breakpoints, the witness, and a
/// uniform fill.
pub fn sup_grid(id: u8, n: u32) -> Vec<f64> {
    let mut g = breakpoints(id, n);
    g.extend(breakpoints(id, 0));
    g.push(sup_gap_witness(id, n));
    for i in 0..=200 {
        g.push(-3.5 + 7.0 * i as f64 / 200.0);
    }
    g
}

fn depth_gap_sup(id: u8, n: u32) -> f64 {
    let pn = build_family(id, n).expect("valid id");
    let p0 = build_family(id, 0).expect("valid id");
    sup_grid(id, n)
        .iter()
        .map(|&x| (halfspace_depth_1d(x, &pn) - halfspace_depth_1d(x, &p0)).abs())
        .fold(0.0f64, f64::max)
}

fn signed_gap_min(id: u8, n: u32, sign: f64) -> f64 {
    let pn = build_family(id, n).expect("valid id");
    let p0 = build_family(id, 0).expect("valid id");
    sup_grid(id, n)
        .iter()
        .map(|&x| sign * (halfspace_depth_1d(x, &pn) - halfspace_depth_1d(x, &p0)))
        .fold(f64::INFINITY, f64::min)
}

fn region_distance(id: u8, n: u32, alpha: f64) -> f64 {
    let pn = build_family(id, n).expect("valid id");
    let p0 = build_family(id, 0).expect("valid id");
    hausdorff_intervals(
        &region_1d_halfspace(&pn, alpha),
        &region_1d_halfspace(&p0, alpha),
    )
    .distance()
    .unwrap_or(f64::NAN)
}

fn region_distance_sup(id: u8, n: u32, lo: f64, hi: f64, count: usize, inject: &[f64]) -> f64 {
    let mut alphas: Vec<f64> = (0..count)
        .map(|i| lo + (hi - lo) * i as f64 / (count - 1) as f64)
        .collect();
    alphas.extend_from_slice(inject);
    alphas
        .into_iter()
        .map(|alpha| region_distance(id, n, alpha))
        .fold(0.0f64, f64::max)
}

/// Which members of the family a claim speaks about.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Applies {
    All,
    OddN,
    EvenN,
    FromN(u32),
}

impl Applies {
    pub fn includes(&self, n: u32) -> bool {
        match *self {
            Applies::All => true,
            Applies::OddN => n % 2 == 1,
            Applies::EvenN => n % 2 == 0,
            Applies::FromN(n0) => n >= n0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Comparison {
    /// |computed - expected| <= tol
    Equal { tol: f64 },
    /// computed >= expected - margin
    AtLeast { margin: f64 },
    /// computed <= expected + margin
    AtMost { margin: f64 },
    /// computed > expected strictly
    GreaterThan,
}

impl Comparison {
    pub fn holds(&self, computed: f64, expected: f64) -> bool {
        match *self {
            Comparison::Equal { tol } => (computed - expected).abs() <= tol,
            Comparison::AtLeast { margin } => computed >= expected - margin,
            Comparison::AtMost { margin } => computed <= expected + margin,
            Comparison::GreaterThan => computed > expected,
        }
    }
}

/// One machine-checkable numeric statement about a family, evaluated per n.
pub struct ClaimRecord {
    pub key: &'static str,
    pub description: &'static str,
    pub applies: Applies,
    pub comparison: Comparison,
    compute: Box<dyn Fn(u32) -> f64 + Send + Sync>,
    expected: Box<dyn Fn(u32) -> f64 + Send + Sync>,
}

impl ClaimRecord {
    pub fn evaluate(&self, n: u32) -> Option<ClaimOutcome> {
        if !self.applies.includes(n) {
            return None;
        }
        let computed = (self.compute)(n);
        let expected = (self.expected)(n);
        Some(ClaimOutcome {
            key: self.key,
            n,
            computed,
            expected,
            pass: self.comparison.holds(computed, expected),
        })
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct ClaimOutcome {
    pub key: &'static str,
    pub n: u32,
    pub computed: f64,
    pub expected: f64,
    pub pass: bool,
}

/// The claim set of one family.
pub fn claims(id: u8) -> Result<Vec<ClaimRecord>, FamilyError> {
    let mk = |key,
              description,
              applies,
              comparison,
              compute: Box<dyn Fn(u32) -> f64 + Send + Sync>,
              expected: Box<dyn Fn(u32) -> f64 + Send + Sync>| ClaimRecord {
        key,
        description,
        applies,
        comparison,
        compute,
        expected,
    };
    match id {
        1 => Ok(vec![
            mk(
                "sup-gap-quarter-n",
                "sup over z of the depth gap against the limit equals 1/(4n)",
                Applies::All,
                Comparison::Equal { tol: 1e-12 },
                Box::new(|n| depth_gap_sup(1, n)),
                Box::new(|n| 0.25 / n as f64),
            ),
            mk(
                "limit-region-quarter",
                "the limit's region at alpha = 1/4 is exactly [-2, 2]",
                Applies::All,
                Comparison::Equal { tol: 1e-12 },
                Box::new(|_| {
                    let p0 = build_family(1, 0).expect("valid id");
                    hausdorff_intervals(
                        &region_1d_halfspace(&p0, 0.25),
                        &Region1D::interval(-2.0, 2.0),
                    )
                    .distance()
                    .unwrap_or(f64::NAN)
                }),
                Box::new(|_| 0.0),
            ),
            mk(
                "odd-below-limit",
                "for odd n the depth lies below the limit depth everywhere",
                Applies::OddN,
                Comparison::AtLeast { margin: 1e-12 },
                Box::new(|n| signed_gap_min(1, n, -1.0)),
                Box::new(|_| 0.0),
            ),
            mk(
                "even-above-limit",
                "for even n the depth lies above the limit depth everywhere",
                Applies::EvenN,
                Comparison::AtLeast { margin: 1e-12 },
                Box::new(|n| signed_gap_min(1, n, 1.0)),
                Box::new(|_| 0.0),
            ),
            mk(
                "odd-region-inside-open-unit",
                "for odd n the region at 1/4 sits strictly inside (-1, 1)",
                Applies::OddN,
                Comparison::GreaterThan,
                Box::new(|n| {
                    let pn = build_family(1, n).expect("valid id");
                    let (lo, hi) = region_1d_halfspace(&pn, 0.25)
                        .endpoints()
                        .expect("non-empty below alpha max");
                    (lo + 1.0).min(1.0 - hi)
                }),
                Box::new(|_| 0.0),
            ),
            mk(
                "even-region-contains-limit",
                "for even n the region at 1/4 contains [-2, 2]",
                Applies::EvenN,
                Comparison::AtLeast { margin: 1e-12 },
                Box::new(|n| {
                    let pn = build_family(1, n).expect("valid id");
                    let (lo, hi) = region_1d_halfspace(&pn, 0.25)
                        .endpoints()
                        .expect("non-empty below alpha max");
                    (-2.0 - lo).min(hi - 2.0)
                }),
                Box::new(|_| 0.0),
            ),
            mk(
                "odd-region-distance-one",
                "for odd n the region at 1/4 stays at Hausdorff distance >= 1 from the limit's",
                Applies::OddN,
                Comparison::AtLeast { margin: 1e-9 },
                Box::new(|n| region_distance(1, n, 0.25)),
                Box::new(|_| 1.0),
            ),
        ]),
        2 => Ok(vec![
            mk(
                "alpha-n-region-distance-one",
                "at alpha_n = (1 + 1/(2n))/4 the region distance to the limit is at least 1",
                Applies::All,
                Comparison::AtLeast { margin: 1e-9 },
                Box::new(|n| region_distance(2, n, 0.25 * (1.0 + 0.5 / n as f64))),
                Box::new(|_| 1.0),
            ),
            mk(
                "sup-interval-distance-one",
                "the sup over alpha in [0.1, 0.5] of the region distance is at least 1 for every n",
                Applies::All,
                Comparison::AtLeast { margin: 1e-9 },
                Box::new(|n| {
                    let inject = [0.25 * (1.0 + 0.5 / n as f64)];
                    region_distance_sup(2, n, 0.1, 0.5, 41, &inject)
                }),
                Box::new(|_| 1.0),
            ),
            mk(
                "fixed-alpha-02-converges",
                "at fixed alpha = 0.2 the region distance is below 0.01 from n = 200 on",
                Applies::FromN(200),
                Comparison::AtMost { margin: 0.0 },
                Box::new(|n| region_distance(2, n, 0.2)),
                Box::new(|_| 0.01),
            ),
            mk(
                "fixed-alpha-025-converges",
                "at fixed alpha = 0.25 the region distance is below 0.01 from n = 200 on",
                Applies::FromN(200),
                Comparison::AtMost { margin: 0.0 },
                Box::new(|n| region_distance(2, n, 0.25)),
                Box::new(|_| 0.01),
            ),
            mk(
                "fixed-alpha-03-converges",
                "at fixed alpha = 0.3 the region distance is below 0.01 from n = 200 on",
                Applies::FromN(200),
                Comparison::AtMost { margin: 0.0 },
                Box::new(|n| region_distance(2, n, 0.3)),
                Box::new(|_| 0.01),
            ),
            mk(
                "depth-above-limit",
                "the depth lies above the limit depth everywhere",
                Applies::All,
                Comparison::AtLeast { margin: 1e-12 },
                Box::new(|n| signed_gap_min(2, n, 1.0)),
                Box::new(|_| 0.0),
            ),
        ]),
        3 => Ok(vec![
            mk(
                "sup-alpha-distance",
                "sup over alpha in (0, 1/2] of the region distance equals 1/(n+1)",
                Applies::All,
                Comparison::Equal { tol: 1e-12 },
                Box::new(|n| region_distance_sup(3, n, 0.02, 0.5, 25, &[0.35])),
                Box::new(|n| 1.0 / (n + 1) as f64),
            ),
            mk(
                "depth-at-one-odd",
                "for odd n the depth at x = 1 falls below 0.15",
                Applies::OddN,
                Comparison::GreaterThan,
                Box::new(|n| {
                    let pn = build_family(3, n).expect("valid id");
                    0.15 - halfspace_depth_1d(1.0, &pn)
                }),
                Box::new(|_| 0.0),
            ),
            mk(
                "depth-at-one-even",
                "for even n the depth at x = 1 exceeds 0.35",
                Applies::EvenN,
                Comparison::GreaterThan,
                Box::new(|n| {
                    let pn = build_family(3, n).expect("valid id");
                    halfspace_depth_1d(1.0, &pn) - 0.35
                }),
                Box::new(|_| 0.0),
            ),
            mk(
                "depth-at-one-limit",
                "the limit depth at x = 1 is 0.35, above its right limit 0.15",
                Applies::All,
                Comparison::Equal { tol: 1e-12 },
                Box::new(|_| {
                    let p0 = build_family(3, 0).expect("valid id");
                    halfspace_depth_1d(1.0, &p0)
                }),
                Box::new(|_| 0.35),
            ),
        ]),
        4 => Ok(vec![
            mk(
                "pointwise-probe-gaps",
                "gaps at the probes 0, +-0.5, +-1, +-1.5, +-2 are below 0.01 from n = 200 on",
                Applies::FromN(200),
                Comparison::AtMost { margin: 0.0 },
                Box::new(|n| {
                    let pn = build_family(4, n).expect("valid id");
                    let p0 = build_family(4, 0).expect("valid id");
                    [0.0, 0.5, -0.5, 1.0, -1.0, 1.5, -1.5, 2.0, -2.0]
                        .iter()
                        .map(|&x| {
                            (halfspace_depth_1d(x, &pn) - halfspace_depth_1d(x, &p0)).abs()
                        })
                        .fold(0.0f64, f64::max)
                }),
                Box::new(|_| 0.01),
            ),
            mk(
                "sup-gap-above-fifth",
                "between the jumps the depth gap exceeds 0.2 for every n",
                Applies::All,
                Comparison::GreaterThan,
                Box::new(|n| {
                    let x = sup_gap_witness(4, n);
                    let pn = build_family(4, n).expect("valid id");
                    let p0 = build_family(4, 0).expect("valid id");
                    (halfspace_depth_1d(x, &pn) - halfspace_depth_1d(x, &p0)).abs()
                }),
                Box::new(|_| 0.2),
            ),
            mk(
                "depth-above-limit",
                "the depth lies above the limit depth everywhere",
                Applies::All,
                Comparison::AtLeast { margin: 1e-12 },
                Box::new(|n| signed_gap_min(4, n, 1.0)),
                Box::new(|_| 0.0),
            ),
        ]),
        other => Err(FamilyError::BadId(other)),
    }
}

/// Region function of the n-th member, backed by the exact CDF scan.
pub fn region_1d_for(id: u8, n: u32) -> impl Fn(f64) -> Region1D {
    let m = build_family(id, n).expect("valid family id");
    move |alpha| region_1d_halfspace(&m, alpha)
}

/// Evaluate every claim of a family over a range of n.
#[derive(Debug, Clone, Serialize)]
pub struct ClaimReport {
    pub family: u8,
    pub outcomes: Vec<ClaimOutcome>,
    pub all_pass: bool,
}

pub fn verify_claims(id: u8, ns: &[u32]) -> Result<ClaimReport, FamilyError> {
    let records = claims(id)?;
    let mut outcomes = Vec::new();
    for rec in &records {
        for &n in ns {
            if let Some(o) = rec.evaluate(n) {
                outcomes.push(o);
            }
        }
    }
    let all_pass = outcomes.iter().all(|o| o.pass);
    Ok(ClaimReport {
        family: id,
        outcomes,
        all_pass,
    })
}

impl ClaimReport {
    /// Human-readable table: claim, n, computed, expected, pass.
    pub fn render_table(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "family {}: {} claim evaluations, {}\n",
            self.family,
            self.outcomes.len(),
            if self.all_pass { "all pass" } else { "FAILURES" }
        ));
        out.push_str(&format!(
            "{:<34} {:>5} {:>24} {:>24} {:>6}\n",
            "claim", "n", "computed", "expected", "pass"
        ));
        for o in &self.outcomes {
            out.push_str(&format!(
                "{:<34} {:>5} {:>24.16e} {:>24.16e} {:>6}\n",
                o.key,
                o.n,
                o.computed,
                o.expected,
                if o.pass { "yes" } else { "NO" }
            ));
        }
        out
    }
}
