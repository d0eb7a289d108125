//! depthtool: evaluate depths, compute trimmed regions, measure Hausdorff
//! distances, run convergence experiments and verify the built-in
//! counterexample families.
//!
//! Every output embeds the tool version and an echo of the run
//! configuration; identical configurations (including seeds) produce
//! byte-identical output. Exit codes: 0 success / all claims pass, 1 a
//! verification claim failed, 2 usage or input error.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use depth_core::convergence::{
    axioms_suite, depth_convergence, range_condition_check, region_convergence,
    ConvergenceThresholds,
};
use depth_core::counterexamples::{
    build_family, breakpoints, region_1d_for, sup_gap_witness, verify_claims, FAMILY_IDS,
};
use depth_core::depths::{DepthEvaluator, DepthKind, DepthMeasure};
use depth_core::hausdorff::{hausdorff_intervals, hausdorff_pointsets};
use depth_core::regions::{alpha_max, region_1d, region_2d, Region1D, Region2D, SearchDomain};
use depth_core::{EmpiricalMeasure, Measure1D};

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser)]
#[command(name = "depthtool", version, about = "data depth toolkit")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum OutFormat {
    Csv,
    Json,
    Text,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum DepthName {
    Halfspace,
    Mahalanobis,
    AsymMahalanobis,
    Zonoid,
}

#[derive(Args)]
struct MeasureArgs {
    /// Built-in measure, e.g. ex1:P0 .. ex4:P120
    #[arg(long)]
    measure: Option<String>,
    /// Plain-text 1-D mixture file: `segment lo hi weight` / `atom x weight`
    #[arg(long)]
    measure_file: Option<PathBuf>,
    /// CSV point cloud (header row; optional trailing `weight` column)
    #[arg(long)]
    data: Option<PathBuf>,
}

#[derive(Args)]
struct OutputArgs {
    /// Output path (default: standard output)
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    format: OutFormat,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate a depth at a set of points
    Depth {
        #[arg(long, value_enum)]
        depth: DepthName,
        #[command(flatten)]
        measure: MeasureArgs,
        /// Points: `grid(lo,hi,step)`, `mean`, `vertex`, or `x,y;x,y;...`
        #[arg(long)]
        points: String,
        #[arg(long, default_value_t = 360)]
        n_directions: usize,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Compute a trimmed region
    Region {
        #[arg(long, value_enum)]
        depth: DepthName,
        #[command(flatten)]
        measure: MeasureArgs,
        #[arg(long)]
        alpha: f64,
        #[arg(long, default_value_t = 360)]
        n_directions: usize,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Hausdorff distance between two sets
    Hausdorff {
        /// `interval:lo,hi`, `empty`, or `points:FILE.csv`
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Convergence experiment over a family or sampled empirical measures
    Converge {
        /// Built-in family: ex1 | ex2 | ex3 | ex4
        #[arg(long, conflicts_with = "empirical")]
        family: Option<String>,
        /// Sampled-empirical source (currently: uniform01)
        #[arg(long)]
        empirical: Option<String>,
        #[arg(long, value_enum, default_value = "halfspace")]
        depth: DepthName,
        /// Sequence spec: `1..50` or `100,1000,10000`
        #[arg(long)]
        n: String,
        /// Comma list of: ptwd, unid, ptwr, comr, rc
        #[arg(long, default_value = "ptwd,unid,ptwr,comr,rc")]
        modes: String,
        #[arg(long, default_value = "0.25")]
        alphas: String,
        /// Compact interval of levels for the region sup, as `lo,hi`
        #[arg(long, default_value = "0.1,0.45")]
        a_interval: String,
        #[arg(long, default_value_t = 41)]
        alpha_grid: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Write (n, sup_gap) and (n, alpha, hausdorff) CSV files with this
        /// path prefix
        #[arg(long)]
        csv_prefix: Option<PathBuf>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Verify counterexample claims or depth axioms; exit 1 on any failure
    Verify {
        /// all | ex1 | ex2 | ex3 | ex4
        #[arg(long, conflicts_with = "axioms")]
        family: Option<String>,
        /// Depth name for the randomized axiom suite
        #[arg(long)]
        axioms: Option<DepthName>,
        #[arg(long, default_value = "1..100")]
        n: String,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<u8, String> {
    match cli.cmd {
        Cmd::Depth {
            depth,
            measure,
            points,
            n_directions,
            tol,
            output,
        } => cmd_depth(depth, &measure, &points, n_directions, tol, &output),
        Cmd::Region {
            depth,
            measure,
            alpha,
            n_directions,
            tol,
            output,
        } => cmd_region(depth, &measure, alpha, n_directions, tol, &output),
        Cmd::Hausdorff { a, b, output } => cmd_hausdorff(&a, &b, &output),
        Cmd::Converge {
            family,
            empirical,
            depth,
            n,
            modes,
            alphas,
            a_interval,
            alpha_grid,
            seed,
            csv_prefix,
            output,
        } => cmd_converge(
            family.as_deref(),
            empirical.as_deref(),
            depth,
            &n,
            &modes,
            &alphas,
            &a_interval,
            alpha_grid,
            seed,
            csv_prefix.as_deref(),
            &output,
        ),
        Cmd::Verify {
            family,
            axioms,
            n,
            trials,
            seed,
            output,
        } => cmd_verify(family.as_deref(), axioms, &n, trials, seed, &output),
    }
}

// ---------------------------------------------------------------- parsing

fn parse_family_spec(spec: &str) -> Result<(u8, u32), String> {
    let (fam, pn) = spec
        .split_once(':')
        .ok_or_else(|| format!("measure spec `{spec}` is not of the form ex<id>:P<n>"))?;
    let body = fam
        .strip_prefix("ex")
        .ok_or_else(|| format!("bad family `{fam}`, expected ex1..ex4"))?;
    // `ex1`..`ex4`, or the long form `ex2.1`..`ex2.4`
    let id: u8 = body
        .strip_prefix("2.")
        .unwrap_or(body)
        .parse()
        .map_err(|_| format!("bad family `{fam}`, expected ex1..ex4"))?;
    let n: u32 = pn
        .strip_prefix('P')
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| format!("bad member `{pn}`, expected P<n>"))?;
    Ok((id, n))
}

fn load_measure(depth: DepthName, args: &MeasureArgs) -> Result<DepthEvaluator, String> {
    let kind = match depth {
        DepthName::Halfspace => DepthKind::Halfspace,
        DepthName::Mahalanobis => DepthKind::Mahalanobis,
        DepthName::AsymMahalanobis => DepthKind::AsymMahalanobis { n_directions: 360 },
        DepthName::Zonoid => DepthKind::Zonoid { tol: 1e-9 },
    };
    let measure = match (&args.measure, &args.measure_file, &args.data) {
        (Some(spec), None, None) => {
            let (id, n) = parse_family_spec(spec)?;
            DepthMeasure::Mixture(build_family(id, n).map_err(|e| e.to_string())?)
        }
        (None, Some(path), None) => {
            let text = fs::read_to_string(path)
                .map_err(|e| format!("{}: {e}", path.display()))?;
            DepthMeasure::Mixture(Measure1D::from_text(&text).map_err(|e| e.to_string())?)
        }
        (None, None, Some(path)) => {
            let text = fs::read_to_string(path)
                .map_err(|e| format!("{}: {e}", path.display()))?;
            DepthMeasure::Cloud(EmpiricalMeasure::from_csv_str(&text).map_err(|e| e.to_string())?)
        }
        _ => {
            return Err("exactly one of --measure, --measure-file, --data is required".into());
        }
    };
    DepthEvaluator::new(kind, measure).map_err(|e| e.to_string())
}

fn parse_points(spec: &str, ev: &DepthEvaluator) -> Result<Vec<Vec<f64>>, String> {
    let dim = ev.dim();
    if let Some(body) = spec.strip_prefix("grid(").and_then(|s| s.strip_suffix(')')) {
        if dim != 1 {
            return Err("grid(...) points are one-dimensional".into());
        }
        let parts: Vec<f64> = body
            .split(',')
            .map(|s| s.trim().parse::<f64>().map_err(|_| format!("bad grid number `{s}`")))
            .collect::<Result<_, _>>()?;
        if parts.len() != 3 || parts[2] <= 0.0 || parts[1] < parts[0] {
            return Err("grid spec must be grid(lo,hi,step) with step > 0".into());
        }
        let (lo, hi, step) = (parts[0], parts[1], parts[2]);
        let count = ((hi - lo) / step).floor() as usize + 1;
        return Ok((0..count).map(|i| vec![lo + step * i as f64]).collect());
    }
    match spec {
        "mean" => Ok(vec![ev.center()]),
        "vertex" => match ev.measure() {
            DepthMeasure::Cloud(e) => {
                let mut best: Option<&[f64]> = None;
                for p in e.points() {
                    let better = match best {
                        None => true,
                        Some(b) => p
                            .iter()
                            .zip(b)
                            .find_map(|(x, y)| {
                                if x < y {
                                    Some(true)
                                } else if x > y {
                                    Some(false)
                                } else {
                                    None
                                }
                            })
                            .unwrap_or(false),
                    };
                    if better {
                        best = Some(p);
                    }
                }
                Ok(vec![best.expect("clouds are non-empty").to_vec()])
            }
            _ => Err("`vertex` needs a point-cloud measure (--data)".into()),
        },
        list => list
            .split(';')
            .map(|pt| {
                let coords: Vec<f64> = pt
                    .split(',')
                    .map(|s| {
                        s.trim()
                            .parse::<f64>()
                            .map_err(|_| format!("bad coordinate `{s}`"))
                    })
                    .collect::<Result<_, _>>()?;
                if coords.len() != dim {
                    return Err(format!(
                        "point `{pt}` has {} coordinates, measure is {dim}-dimensional",
                        coords.len()
                    ));
                }
                Ok(coords)
            })
            .collect(),
    }
}

fn parse_n_spec(spec: &str) -> Result<Vec<u32>, String> {
    if let Some((lo, hi)) = spec.split_once("..") {
        let lo: u32 = lo.trim().parse().map_err(|_| format!("bad n `{lo}`"))?;
        let hi: u32 = hi.trim().parse().map_err(|_| format!("bad n `{hi}`"))?;
        if lo > hi {
            return Err(format!("empty range {lo}..{hi}"));
        }
        return Ok((lo..=hi).collect());
    }
    spec.split(',')
        .map(|s| s.trim().parse::<u32>().map_err(|_| format!("bad n `{s}`")))
        .collect()
}

fn parse_f64_list(spec: &str) -> Result<Vec<f64>, String> {
    spec.split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| format!("bad number `{s}`"))
        })
        .collect()
}

// ----------------------------------------------------------------- output

fn emit(output: &OutputArgs, content: &str) -> Result<(), String> {
    match &output.out {
        Some(path) => fs::write(path, content).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn csv_header(config: &Value) -> String {
    format!("# version: {VERSION}\n# config: {config}\n")
}

fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

// ------------------------------------------------------------ subcommands

fn cmd_depth(
    depth: DepthName,
    measure: &MeasureArgs,
    points_spec: &str,
    n_directions: usize,
    tol: f64,
    output: &OutputArgs,
) -> Result<u8, String> {
    let kind_name = match depth {
        DepthName::Halfspace => "halfspace",
        DepthName::Mahalanobis => "mahalanobis",
        DepthName::AsymMahalanobis => "asym-mahalanobis",
        DepthName::Zonoid => "zonoid",
    };
    let ev = match depth {
        DepthName::AsymMahalanobis => {
            let base = load_measure(depth, measure)?;
            let m = match base.measure() {
                DepthMeasure::Cloud(e) => DepthMeasure::Cloud(e.clone()),
                other => other.clone(),
            };
            DepthEvaluator::new(DepthKind::AsymMahalanobis { n_directions }, m)
                .map_err(|e| e.to_string())?
        }
        DepthName::Zonoid => {
            let base = load_measure(depth, measure)?;
            DepthEvaluator::new(DepthKind::Zonoid { tol }, base.measure().clone())
                .map_err(|e| e.to_string())?
        }
        _ => load_measure(depth, measure)?,
    };
    let points = parse_points(points_spec, &ev)?;
    let config = json!({
        "subcommand": "depth",
        "depth": kind_name,
        "points": points_spec,
        "n_directions": n_directions,
        "tol": tol,
        "format": format_name(output.format),
    });
    let rows: Vec<(Vec<f64>, f64)> = points.iter().map(|p| (p.clone(), ev.evaluate(p))).collect();
    let content = match output.format {
        OutFormat::Json => {
            let body = json!({
                "version": VERSION,
                "config": config,
                "rows": rows
                    .iter()
                    .map(|(p, d)| json!({"point": p, "depth": d}))
                    .collect::<Vec<_>>(),
            });
            format!("{body:#}\n")
        }
        _ => {
            let mut s = csv_header(&config);
            for j in 0..ev.dim() {
                s.push_str(&format!("x{},", j + 1));
            }
            s.push_str("depth\n");
            for (p, d) in &rows {
                for c in p {
                    s.push_str(&fmt17(*c));
                    s.push(',');
                }
                s.push_str(&fmt17(*d));
                s.push('\n');
            }
            s
        }
    };
    emit(output, &content)?;
    Ok(0)
}

fn cmd_region(
    depth: DepthName,
    measure: &MeasureArgs,
    alpha: f64,
    n_directions: usize,
    tol: f64,
    output: &OutputArgs,
) -> Result<u8, String> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(format!("alpha must lie in (0, 1], got {alpha}"));
    }
    let ev = load_measure(depth, measure)?;
    let config = json!({
        "subcommand": "region",
        "depth": match depth {
            DepthName::Halfspace => "halfspace",
            DepthName::Mahalanobis => "mahalanobis",
            DepthName::AsymMahalanobis => "asym-mahalanobis",
            DepthName::Zonoid => "zonoid",
        },
        "alpha": alpha,
        "n_directions": n_directions,
        "tol": tol,
        "format": format_name(output.format),
    });
    enum Out {
        Interval(Region1D),
        Planar(Region2D),
    }
    let region = match ev.dim() {
        1 => Out::Interval(region_1d(&ev, alpha).map_err(|e| e.to_string())?),
        2 => Out::Planar(region_2d(&ev, alpha, n_directions, tol).map_err(|e| e.to_string())?),
        d => return Err(format!("regions support dimensions 1 and 2, got {d}")),
    };
    let content = match (&region, output.format) {
        (Out::Interval(r), OutFormat::Json) => {
            let body = match r.endpoints() {
                Some((lo, hi)) => json!({"version": VERSION, "config": config, "region": {"kind": "interval", "lo": lo, "hi": hi}}),
                None => json!({"version": VERSION, "config": config, "region": {"kind": "empty"}}),
            };
            format!("{body:#}\n")
        }
        (Out::Interval(r), _) => {
            let mut s = csv_header(&config);
            match r.endpoints() {
                Some((lo, hi)) => s.push_str(&format!("{},{}\n", fmt17(lo), fmt17(hi))),
                None => s.push_str("EMPTY\n"),
            }
            s
        }
        (Out::Planar(r), OutFormat::Json) => {
            let body = match r.polygon() {
                Some(p) => json!({"version": VERSION, "config": config, "region": {"kind": "polygon", "vertices": p.vertices()}}),
                None => json!({"version": VERSION, "config": config, "region": {"kind": "empty"}}),
            };
            format!("{body:#}\n")
        }
        (Out::Planar(r), _) => {
            let mut s = csv_header(&config);
            match r.polygon() {
                Some(p) => {
                    s.push_str("x,y\n");
                    for v in p.vertices() {
                        s.push_str(&format!("{},{}\n", fmt17(v[0]), fmt17(v[1])));
                    }
                }
                None => s.push_str("EMPTY\n"),
            }
            s
        }
    };
    emit(output, &content)?;
    Ok(0)
}

fn parse_set_operand(spec: &str) -> Result<Result<Region1D, Vec<Vec<f64>>>, String> {
    if spec == "empty" {
        return Ok(Ok(Region1D::Empty));
    }
    if let Some(body) = spec.strip_prefix("interval:") {
        let v = parse_f64_list(body)?;
        if v.len() != 2 || v[0] > v[1] {
            return Err(format!("bad interval `{body}`"));
        }
        return Ok(Ok(Region1D::interval(v[0], v[1])));
    }
    if let Some(path) = spec.strip_prefix("points:") {
        let text = fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?;
        let e = EmpiricalMeasure::from_csv_str(&text).map_err(|e| e.to_string())?;
        return Ok(Err(e.points().map(|p| p.to_vec()).collect()));
    }
    Err(format!(
        "operand `{spec}` must be interval:lo,hi | empty | points:FILE"
    ))
}

fn cmd_hausdorff(a: &str, b: &str, output: &OutputArgs) -> Result<u8, String> {
    let oa = parse_set_operand(a)?;
    let ob = parse_set_operand(b)?;
    let result = match (&oa, &ob) {
        (Ok(ra), Ok(rb)) => hausdorff_intervals(ra, rb),
        (Err(pa), Err(pb)) => hausdorff_pointsets(pa, pb),
        _ => return Err("operands must be of the same kind".into()),
    };
    let config = json!({"subcommand": "hausdorff", "a": a, "b": b});
    let content = match output.format {
        OutFormat::Json => {
            let body = json!({"version": VERSION, "config": config, "result": result});
            format!("{body:#}\n")
        }
        _ => {
            let mut s = csv_header(&config);
            match result.distance() {
                Some(d) => s.push_str(&format!("distance,{}\n", fmt17(d))),
                None => s.push_str("distance,UNDEFINED\n"),
            }
            s
        }
    };
    emit(output, &content)?;
    Ok(0)
}

#[allow(clippy::too_many_arguments)]
fn cmd_converge(
    family: Option<&str>,
    empirical: Option<&str>,
    depth: DepthName,
    n_spec: &str,
    modes_spec: &str,
    alphas_spec: &str,
    a_interval_spec: &str,
    alpha_grid: usize,
    seed: u64,
    csv_prefix: Option<&std::path::Path>,
    output: &OutputArgs,
) -> Result<u8, String> {
    let ns = parse_n_spec(n_spec)?;
    let modes: Vec<String> = modes_spec
        .split(',')
        .map(|s| s.trim().to_ascii_lowercase())
        .collect();
    let alphas = parse_f64_list(alphas_spec)?;
    let a_iv = parse_f64_list(a_interval_spec)?;
    if a_iv.len() != 2 || a_iv[0] <= 0.0 || a_iv[0] >= a_iv[1] {
        return Err("a-interval must be `lo,hi` with 0 < lo < hi".into());
    }
    let thr = ConvergenceThresholds::default();
    let config = json!({
        "subcommand": "converge",
        "family": family,
        "empirical": empirical,
        "depth": match depth {
            DepthName::Halfspace => "halfspace",
            DepthName::Mahalanobis => "mahalanobis",
            DepthName::AsymMahalanobis => "asym-mahalanobis",
            DepthName::Zonoid => "zonoid",
        },
        "n": n_spec,
        "modes": modes_spec,
        "alphas": alphas_spec,
        "a_interval": a_interval_spec,
        "alpha_grid": alpha_grid,
        "seed": seed,
    });

    let mut report: Option<depth_core::convergence::ConvergenceReport> = None;
    let want = |m: &str| modes.iter().any(|s| s == m);

    match (family, empirical) {
        (Some(fam), None) => {
            let id: u8 = fam
                .strip_prefix("ex")
                .and_then(|s| s.parse().ok())
                .filter(|i| FAMILY_IDS.contains(i))
                .ok_or_else(|| format!("bad family `{fam}`, expected ex1..ex4"))?;
            if want("ptwd") || want("unid") {
                let reference = family_evaluator(id, 0)?;
                let seq: Vec<(u32, DepthEvaluator)> = ns
                    .iter()
                    .map(|&n| Ok((n, family_evaluator(id, n)?)))
                    .collect::<Result<_, String>>()?;
                let probes: Vec<Vec<f64>> =
                    breakpoints(id, 0).iter().map(|&x| vec![x]).collect();
                let mut sup: Vec<Vec<f64>> = (0..=700)
                    .map(|i| vec![-3.5 + 7.0 * i as f64 / 700.0])
                    .collect();
                for &n in &ns {
                    sup.push(vec![sup_gap_witness(id, n)]);
                    for x in breakpoints(id, n) {
                        sup.push(vec![x]);
                    }
                }
                let rep = depth_convergence(&seq, &reference, &probes, &sup, &thr);
                report = Some(match report {
                    None => rep,
                    Some(r) => r.merge(rep),
                });
            }
            if want("ptwr") || want("comr") {
                let seq: Vec<(u32, _)> = ns.iter().map(|&n| (n, region_1d_for(id, n))).collect();
                let reference = region_1d_for(id, 0);
                let rep = region_convergence(
                    &seq,
                    &reference,
                    &alphas,
                    (a_iv[0], a_iv[1]),
                    alpha_grid,
                    &[],
                    &thr,
                );
                report = Some(match report {
                    None => rep,
                    Some(r) => r.merge(rep),
                });
            }
            if want("rc") {
                let rows: Vec<(u32, f64)> = ns
                    .iter()
                    .map(|&n| {
                        let ev = family_evaluator(id, n)?;
                        Ok((n, alpha_max(&ev, SearchDomain::Hull).alpha_max))
                    })
                    .collect::<Result<_, String>>()?;
                let ref_ev = family_evaluator(id, 0)?;
                let ref_max = alpha_max(&ref_ev, SearchDomain::Hull).alpha_max;
                let rc = range_condition_check(&rows, ref_max, &thr);
                let verdict = depth_core::convergence::Verdict {
                    mode: "RC".into(),
                    pass: rc.pass,
                    worst: rc.limsup_estimate,
                    witness: format!("reference alpha_max {}", rc.reference_alpha_max),
                };
                let mut base = report.take().unwrap_or_else(|| empty_report(&thr));
                base.verdicts.push(verdict);
                report = Some(base);
            }
        }
        (None, Some(src)) => {
            if src != "uniform01" {
                return Err(format!("unknown empirical source `{src}` (try uniform01)"));
            }
            if depth != DepthName::Halfspace {
                return Err("empirical convergence is wired for --depth halfspace".into());
            }
            let truth = Measure1D::uniform(0.0, 1.0);
            let reference = DepthEvaluator::new(
                DepthKind::Halfspace,
                DepthMeasure::Mixture(truth.clone()),
            )
            .map_err(|e| e.to_string())?;
            let seq: Vec<(u32, DepthEvaluator)> = ns
                .iter()
                .map(|&n| {
                    let sample = truth.sample(n as usize, seed.wrapping_add(n as u64));
                    let ev = DepthEvaluator::new(DepthKind::Halfspace, DepthMeasure::Cloud(sample))
                        .map_err(|e| e.to_string())?;
                    Ok((n, ev))
                })
                .collect::<Result<_, String>>()?;
            let probes: Vec<Vec<f64>> = (0..=10).map(|i| vec![i as f64 / 10.0]).collect();
            let sup: Vec<Vec<f64>> = (0..=1500)
                .map(|i| vec![-0.25 + 1.5 * i as f64 / 1500.0])
                .collect();
            report = Some(depth_convergence(&seq, &reference, &probes, &sup, &thr));
        }
        _ => return Err("exactly one of --family, --empirical is required".into()),
    }

    let mut report = report.ok_or("no modes requested")?;
    report.config.seed = Some(seed);
    let body = json!({
        "version": VERSION,
        "config": config,
        "report": report,
    });
    emit(output, &format!("{body:#}\n"))?;
    if let Some(prefix) = csv_prefix {
        let base = prefix.to_string_lossy();
        fs::write(
            format!("{base}_supgap.csv"),
            format!("{}{}", csv_header(&config), report.sup_gap_csv()),
        )
        .map_err(|e| e.to_string())?;
        fs::write(
            format!("{base}_regions.csv"),
            format!("{}{}", csv_header(&config), report.region_csv()),
        )
        .map_err(|e| e.to_string())?;
    }
    Ok(0)
}

fn family_evaluator(id: u8, n: u32) -> Result<DepthEvaluator, String> {
    DepthEvaluator::new(
        DepthKind::Halfspace,
        DepthMeasure::Mixture(build_family(id, n).map_err(|e| e.to_string())?),
    )
    .map_err(|e| e.to_string())
}

fn empty_report(thr: &ConvergenceThresholds) -> depth_core::convergence::ConvergenceReport {
    depth_core::convergence::ConvergenceReport {
        per_n: Vec::new(),
        verdicts: Vec::new(),
        config: depth_core::convergence::ReportConfig {
            thresholds: Some(*thr),
            ..Default::default()
        },
    }
}

fn cmd_verify(
    family: Option<&str>,
    axioms: Option<DepthName>,
    n_spec: &str,
    trials: usize,
    seed: u64,
    output: &OutputArgs,
) -> Result<u8, String> {
    match (family, axioms) {
        (Some(which), None) => {
            let ids: Vec<u8> = if which == "all" {
                FAMILY_IDS.to_vec()
            } else {
                vec![which
                    .strip_prefix("ex")
                    .and_then(|s| s.parse().ok())
                    .filter(|i| FAMILY_IDS.contains(i))
                    .ok_or_else(|| format!("bad family `{which}`, expected all or ex1..ex4"))?]
            };
            let ns = parse_n_spec(n_spec)?;
            let config = json!({
                "subcommand": "verify",
                "family": which,
                "n": n_spec,
            });
            let mut all_pass = true;
            let mut text = format!("# version: {VERSION}\n# config: {config}\n");
            let mut reports = Vec::new();
            for id in ids {
                let rep = verify_claims(id, &ns).map_err(|e| e.to_string())?;
                all_pass &= rep.all_pass;
                text.push_str(&rep.render_table());
                reports.push(rep);
            }
            text.push_str(if all_pass {
                "RESULT: all claims pass\n"
            } else {
                "RESULT: CLAIM FAILURES\n"
            });
            let content = match output.format {
                OutFormat::Json => {
                    let body = json!({
                        "version": VERSION,
                        "config": config,
                        "all_pass": all_pass,
                        "families": reports,
                    });
                    format!("{body:#}\n")
                }
                _ => text,
            };
            emit(output, &content)?;
            Ok(if all_pass { 0 } else { 1 })
        }
        (None, Some(depth)) => {
            let kind = match depth {
                DepthName::Halfspace => DepthKind::Halfspace,
                DepthName::Mahalanobis => DepthKind::Mahalanobis,
                DepthName::AsymMahalanobis => {
                    return Err(
                        "the direction-sampled asym-mahalanobis depth is affine-invariant only \
                         up to its grid resolution; the axiom suite covers halfspace, \
                         mahalanobis and zonoid"
                            .into(),
                    );
                }
                DepthName::Zonoid => DepthKind::Zonoid { tol: 1e-12 },
            };
            let config = json!({
                "subcommand": "verify",
                "axioms": match depth {
                    DepthName::Halfspace => "halfspace",
                    DepthName::Mahalanobis => "mahalanobis",
                    DepthName::AsymMahalanobis => "asym-mahalanobis",
                    DepthName::Zonoid => "zonoid",
                },
                "trials": trials,
                "seed": seed,
            });
            let rep = axioms_suite(kind, trials, seed);
            let pass = rep.all_pass();
            let content = match output.format {
                OutFormat::Json => {
                    let body = json!({
                        "version": VERSION,
                        "config": config,
                        "all_pass": pass,
                        "axioms": rep,
                    });
                    format!("{body:#}\n")
                }
                _ => {
                    let line = |name: &str, r: &depth_core::convergence::CheckResult| {
                        format!(
                            "{:<24} {:>6} worst {:.3e} {}\n",
                            name,
                            if r.pass { "pass" } else { "FAIL" },
                            r.worst,
                            r.witness
                        )
                    };
                    format!(
                        "# version: {VERSION}\n# config: {config}\n{}{}{}{}RESULT: {}\n",
                        line("affine-invariance", &rep.affine_invariant),
                        line("vanishing-at-infinity", &rep.vanishing_at_infinity),
                        line("quasiconcavity", &rep.quasiconcave),
                        line("region-nesting", &rep.nested_regions),
                        if pass { "all axioms pass" } else { "AXIOM FAILURES" }
                    )
                }
            };
            emit(output, &content)?;
            Ok(if pass { 0 } else { 1 })
        }
        _ => Err("exactly one of --family, --axioms is required".into()),
    }
}

fn format_name(f: OutFormat) -> &'static str {
    match f {
        OutFormat::Csv => "csv",
        OutFormat::Json => "json",
        OutFormat::Text => "text",
    }
}
