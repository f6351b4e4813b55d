use std::f64::consts::PI;
use std::fmt::Write;

use log::info;
use rings_core::charpoly::{char_poly, macro_polynomial, ring_spectrum};
use rings_core::consensus::*;
use rings_core::curves::{derive_curve, trace_curve};
use rings_core::dynamics::*;
use rings_core::poly::IntPoly;
use rings_core::topology::{count_simple_rings, enumerate_simple_rings};
use rings_core::weighted::{drop_outline, ellipse_point, weighted_spectrum, WeightedRing};
use rings_core::{ComplexPoint, FrequencyVariable, RingTopology};
use serde::Serialize;

use crate::args::{Command, Locus};
use crate::output::{branches_csv, num, points_csv, read_polylines, rows_csv, Format, Output};
use crate::{svg, CliError};

/// Log grid searched for a verdict change when `critical` gets no bracket.
const SCAN_RANGE: (f64, f64) = (1e-3, 1e3);
const SCAN_STEPS: usize = 60;
const GAIN_WIDTH: f64 = 1e-5;

pub fn run(command: &Command, out: Option<&str>, format: Option<Format>) -> Result<(), CliError> {
    use Format::*;
    let resolve = |supported: &[Format]| Output::resolve(out, format, supported);
    match command {
        Command::Count { nodes } => {
            let output = resolve(&[Text, Json, Csv])?;
            let count = count_simple_rings(*nodes)?;
            let body = match output.format {
                Json => json_line(&CountReport { nodes: *nodes, count })?,
                Csv => rows_csv(Some(&["N".into(), "count".into()]), [[nodes.to_string(), count.to_string()]])?,
                _ => format!("{count}\n"),
            };
            output.write(&body)
        }
        Command::Enumerate { n } => {
            let output = resolve(&[Text, Json, Csv])?;
            let rings = enumerate_simple_rings(*n)?;
            let body = match output.format {
                Json => json_line(&rings)?,
                Csv => rows_csv(Some(&["necklace".into()]), rings.iter().map(|v| [v.to_string()]))?,
                _ => rings.iter().map(|v| format!("{v}\n")).collect(),
            };
            output.write(&body)
        }
        Command::Laplacian(topology) => {
            let output = resolve(&[Csv, Json, Text])?;
            let ring = topology.ring()?;
            let lap = ring.laplacian();
            let rows: Vec<Vec<i64>> = lap.rows().map(<[i64]>::to_vec).collect();
            let body = match output.format {
                Json => json_line(&LaplacianReport { ring: &ring, laplacian: &rows })?,
                Text => format!("{lap}\n"),
                _ => rows_csv(None, rows.iter().map(|r| r.iter().map(i64::to_string).collect::<Vec<_>>()))?,
            };
            output.write(&body)
        }
        Command::Charpoly(topology) => {
            let output = resolve(&[Text, Json, Csv])?;
            let ring = topology.ring()?;
            let p = char_poly(&ring)?;
            let body = match output.format {
                Json => json_line(&CharpolyReport { ring: &ring, coefficients: p.coeffs() })?,
                Csv => rows_csv(
                    Some(&["power".into(), "coefficient".into()]),
                    p.coeffs().iter().enumerate().map(|(k, c)| [k.to_string(), c.to_string()]),
                )?,
                _ => format!("{}\n", join(p.coeffs())),
            };
            output.write(&body)
        }
        Command::Locus { topology, reflect } => {
            let output = resolve(&[Csv, Json, Svg, Text])?;
            let ring = topology.ring()?;
            let map = |l: ComplexPoint| match reflect {
                Some(r) => to_omega_plane(l, *r),
                None => l,
            };
            if let Some(r) = reflect {
                if !(*r > 0.0 && r.is_finite()) {
                    return Err(CliError::Usage(format!("--reflect needs a positive gain, got {r}")));
                }
            }
            let points: Vec<ComplexPoint> = ring_spectrum(&ring)?.into_iter().map(map).collect();
            let body = match output.format {
                Svg => {
                    let p = macro_polynomial(ring.necklace())?;
                    let curve: Vec<Vec<ComplexPoint>> = curve_branches(&p, DEFAULT_CURVE_SAMPLES)?
                        .into_iter()
                        .map(|b| b.into_iter().map(map).collect())
                        .collect();
                    svg::render(&points, &curve)
                }
                other => points_body(&points, other)?,
            };
            output.write(&body)
        }
        Command::Curve { source, samples } => {
            let output = resolve(&[Poly, Text, Json, Csv, Svg])?;
            let body = match source.locus()? {
                Locus::Drop => {
                    return Err(CliError::Usage(
                        "the drop region has no polynomial curve; use `rings drop`".into(),
                    ))
                }
                Locus::Necklace(v) => {
                    let p = macro_polynomial(&v)?;
                    match output.format {
                        Poly => derive_curve(&p)?.to_triples(),
                        Text => format!("{} = 0\n", derive_curve(&p)?),
                        Json => {
                            let f = derive_curve(&p)?;
                            let terms: Vec<(i128, u32, u32)> = f.terms().map(|(i, j, c)| (c, i, j)).collect();
                            json_line(&CurveReport { necklace: v.entries(), terms })?
                        }
                        Csv => branches_csv(&curve_branches(&p, *samples)?)?,
                        _ => svg::render(&[], &curve_branches(&p, *samples)?),
                    }
                }
            };
            output.write(&body)
        }
        Command::Weighted { nodes, c } => {
            let output = resolve(&[Csv, Json, Svg, Text])?;
            let ring = WeightedRing::new(*nodes, *c)?;
            let points = weighted_spectrum(&ring);
            let body = match output.format {
                Svg => {
                    let ellipse: Vec<ComplexPoint> =
                        (0..=360).map(|k| ellipse_point(*c, 2.0 * PI * k as f64 / 360.0)).collect();
                    svg::render(&points, &[drop_outline(401)?, ellipse])
                }
                other => points_body(&points, other)?,
            };
            output.write(&body)
        }
        Command::Drop { samples } => {
            let output = resolve(&[Csv, Json, Svg, Text])?;
            let outline = drop_outline(*samples)?;
            let body = match output.format {
                Svg => svg::render(&[], &[outline]),
                other => points_body(&outline, other)?,
            };
            output.write(&body)
        }
        Command::Omega { model, lambda, omega_max, samples, tol } => {
            let fv = model.frequency_variable()?;
            let boundary = || -> Result<Vec<ComplexPoint>, CliError> {
                if *samples < 2 || !omega_max.is_finite() || *omega_max <= 0.0 {
                    return Err(CliError::Usage("--samples must be >= 2 and --omega-max positive".into()));
                }
                let grid: Vec<f64> =
                    (0..*samples).map(|k| omega_max * (2.0 * k as f64 / (*samples - 1) as f64 - 1.0)).collect();
                Ok(omega_boundary(&fv, &grid))
            };
            match lambda {
                Some(coords) => {
                    let output = resolve(&[Text, Json, Svg])?;
                    let [re, im] = coords[..] else {
                        return Err(CliError::Usage("--lambda takes two numbers, `re,im`".into()));
                    };
                    let verdict = in_omega(&fv, ComplexPoint::new(re, im), tol.eps)?;
                    let body = match output.format {
                        Json => json_line(&verdict)?,
                        Svg => svg::render(&[verdict.point], &[boundary()?]),
                        _ => format!(
                            "{} (max Re s = {})\n",
                            if verdict.inside { "inside" } else { "outside" },
                            num(verdict.max_root_real_part)
                        ),
                    };
                    output.write(&body)
                }
                None => {
                    let output = resolve(&[Csv, Json, Svg, Text])?;
                    let pts = boundary()?;
                    let body = match output.format {
                        Svg => svg::render(&[], &[pts]),
                        other => points_body(&pts, other)?,
                    };
                    output.write(&body)
                }
            }
        }
        Command::Check { topology, model, r, tol } => {
            let output = resolve(&[Text, Json])?;
            let fv = model.frequency_variable()?;
            let ring = topology.ring()?;
            let report = check(&fv, &ring, *r, tol.tolerances())?;
            let body = match output.format {
                Json => json_line(&report)?,
                _ => report.text(),
            };
            output.write(&body)
        }
        Command::Critical { source, model, lo, hi, samples, tol } => {
            let output = resolve(&[Text, Json])?;
            let fv = model.frequency_variable()?;
            let tol = tol.tolerances();
            let locus = source.locus()?;
            let drop = match locus {
                Locus::Drop => drop_outline(*samples)?,
                Locus::Necklace(_) => Vec::new(),
            };
            let p = match &locus {
                Locus::Necklace(v) => Some(macro_polynomial(v)?),
                Locus::Drop => None,
            };
            let predicate = |r: f64| -> rings_core::Result<bool> {
                match &p {
                    Some(p) => criterion_curve(&fv, p, r, *samples, tol),
                    None => {
                        let pts: Vec<ComplexPoint> = drop.iter().map(|&l| to_omega_plane(l, r)).collect();
                        criterion_points(&fv, &pts, tol)
                    }
                }
            };
            let (lo, hi) = match (lo, hi) {
                (Some(lo), Some(hi)) => (*lo, *hi),
                _ => scan_bracket(predicate)?,
            };
            info!("bisecting r* in [{lo}, {hi}]");
            let r_star = match &p {
                Some(p) => critical_gain(&fv, p, (lo, hi), *samples, tol)?,
                None => bisect_gain(predicate, lo, hi, GAIN_WIDTH)?,
            };
            let body = match output.format {
                Json => json_line(&CriticalReport {
                    r_star,
                    consensus_below: predicate(lo)?,
                    bracket: (lo, hi),
                })?,
                _ => format!("{r_star:.6}\n"),
            };
            output.write(&body)
        }
        Command::Simulate { topology, model, r, horizon, h, seed, stride, states, shrink_tol, grow_tol } => {
            let output = resolve(&[Csv, Json, Text])?;
            let fv = model.frequency_variable()?;
            let ring = topology.ring()?;
            if ring.nodes() < 2 {
                return Err(CliError::Usage("simulation needs at least two agents".into()));
            }
            let agent = AgentModel::from_frequency_variable(&fv);
            let system = build_closed_loop(&agent, &ring.laplacian().to_real(), *r)?;
            let xi0 = random_initial_state(system.rows(), *seed);
            let integrator = Integrator { horizon: *horizon, step: *h, stride: *stride, record_states: *states };
            let traj = integrator.integrate(&system, &xi0, agent.dim())?;
            let verdict = verdict(&traj, *shrink_tol, *grow_tol);
            eprintln!("seed: {seed}");
            eprintln!("verdict: {verdict}");
            let body = match output.format {
                Json => json_line(&SimulationReport { seed: *seed, verdict, trajectory: &traj })?,
                Text => simulation_text(*seed, verdict, &traj),
                _ => trajectory_csv(&traj, system.rows(), *states)?,
            };
            output.write(&body)
        }
        Command::Plot { points, boundary } => {
            let output = resolve(&[Svg])?;
            if points.is_empty() && boundary.is_empty() {
                return Err(CliError::Usage("nothing to plot; pass --points and/or --boundary".into()));
            }
            let mut marks = Vec::new();
            for path in points {
                marks.extend(read_polylines(path)?.into_iter().flatten());
            }
            let mut lines = Vec::new();
            for path in boundary {
                lines.extend(read_polylines(path)?);
            }
            output.write(&svg::render(&marks, &lines))
        }
    }
}

fn json_line<T: Serialize + ?Sized>(value: &T) -> Result<String, CliError> {
    Ok(serde_json::to_string(value)? + "\n")
}

fn join<T: ToString>(items: &[T]) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

fn points_body(points: &[ComplexPoint], format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => {
            let pairs: Vec<[f64; 2]> = points.iter().map(|p| [p.re, p.im]).collect();
            json_line(&pairs)
        }
        Format::Text => Ok(points.iter().map(|p| format!("{} {}\n", num(p.re), num(p.im))).collect()),
        _ => points_csv(points),
    }
}

/// The traced curve split into continuous branches by matching each level's
/// roots to the nearest branch end; the first level is repeated to close them.
fn curve_branches(p: &IntPoly, samples: usize) -> Result<Vec<Vec<ComplexPoint>>, CliError> {
    let n = p.degree().unwrap_or(0);
    let pts = trace_curve(p, samples)?;
    if n == 0 {
        return Ok(Vec::new());
    }
    let levels: Vec<&[ComplexPoint]> = pts.chunks(n).collect();
    let mut branches: Vec<Vec<ComplexPoint>> = levels[0].iter().map(|&z| vec![z]).collect();
    for level in levels.iter().skip(1).chain(std::iter::once(&levels[0])) {
        let mut used = vec![false; n];
        for branch in branches.iter_mut() {
            let last = *branch.last().expect("branches start non-empty");
            let (k, _) = level
                .iter()
                .enumerate()
                .filter(|(k, _)| !used[*k])
                .map(|(k, z)| (k, (z - last).norm()))
                .min_by(|a, b| a.1.total_cmp(&b.1))
                .expect("one root per branch");
            used[k] = true;
            branch.push(level[k]);
        }
    }
    Ok(branches)
}

/// First adjacent pair on a log grid where the verdict changes.
fn scan_bracket<F>(predicate: F) -> Result<(f64, f64), CliError>
where
    F: Fn(f64) -> rings_core::Result<bool>,
{
    let (lo, hi) = SCAN_RANGE;
    let ratio = (hi / lo).powf(1.0 / SCAN_STEPS as f64);
    let mut prev = (lo, predicate(lo)?);
    for k in 1..=SCAN_STEPS {
        let r = lo * ratio.powi(k as i32);
        let verdict = predicate(r)?;
        if verdict != prev.1 {
            return Ok((prev.0, r));
        }
        prev = (r, verdict);
    }
    Err(rings_core::Error::Bracket { lo, hi }.into())
}

#[derive(Serialize)]
struct CountReport {
    #[serde(rename = "N")]
    nodes: u32,
    count: u128,
}

#[derive(Serialize)]
struct LaplacianReport<'a> {
    ring: &'a RingTopology,
    laplacian: &'a [Vec<i64>],
}

#[derive(Serialize)]
struct CharpolyReport<'a> {
    ring: &'a RingTopology,
    coefficients: &'a [i128],
}

#[derive(Serialize)]
struct CurveReport<'a> {
    necklace: &'a [u8],
    /// `(coeff, i, j)` for `coeff x^i y^j`.
    terms: Vec<(i128, u32, u32)>,
}

#[derive(Serialize)]
struct CriticalReport {
    r_star: f64,
    consensus_below: bool,
    bracket: (f64, f64),
}

#[derive(Serialize)]
struct SimulationReport<'a> {
    seed: u64,
    verdict: Verdict,
    trajectory: &'a Trajectory,
}

#[derive(Serialize)]
struct CheckReport {
    ring: RingTopology,
    nodes: usize,
    r: f64,
    consensus: bool,
    /// Largest real part over the closed-loop modes of nonzero eigenvalues.
    rate: f64,
    /// Largest smaller replication of the same necklace that reaches consensus.
    threshold_nodes: Option<usize>,
}

impl CheckReport {
    fn text(&self) -> String {
        let n = self.nodes;
        match (self.consensus, self.threshold_nodes) {
            (true, _) => format!("CONSENSUS (N={n})\n"),
            (false, Some(t)) => format!("NO CONSENSUS (N={n} exceeds threshold)\nlargest consensus size: N={t}\n"),
            (false, None) => format!("NO CONSENSUS (N={n})\n"),
        }
    }
}

fn check(fv: &FrequencyVariable, ring: &RingTopology, r: f64, tol: Tolerances) -> Result<CheckReport, CliError> {
    let spectrum = omega_spectrum(ring, r)?;
    let consensus = criterion_spectrum(fv, &spectrum, tol)?;
    let rate = disagreement_rate(fv, &spectrum, tol)?;
    let mut threshold_nodes = None;
    if !consensus {
        for m in (1..ring.replication()).rev() {
            let smaller = RingTopology::new(ring.necklace().clone(), m)?;
            if smaller.nodes() >= 2 && criterion_ring(fv, &smaller, r, tol)? {
                threshold_nodes = Some(smaller.nodes());
                break;
            }
        }
    }
    Ok(CheckReport { ring: ring.clone(), nodes: ring.nodes(), r, consensus, rate, threshold_nodes })
}

fn trajectory_csv(traj: &Trajectory, len: usize, states: bool) -> Result<String, CliError> {
    let mut header = vec!["t".to_owned(), "disagreement".to_owned()];
    if states {
        header.extend((0..len).map(|i| format!("x{i}")));
    }
    let rows = traj.times.iter().enumerate().map(|(k, &t)| {
        let mut row = vec![num(t), num(traj.disagreement[k])];
        if states {
            row.extend(traj.states[k].iter().map(|&x| num(x)));
        }
        row
    });
    rows_csv(Some(&header), rows)
}

fn simulation_text(seed: u64, verdict: Verdict, traj: &Trajectory) -> String {
    let mut s = String::new();
    writeln!(s, "seed: {seed}").unwrap();
    writeln!(s, "verdict: {verdict}").unwrap();
    writeln!(s, "final time: {}", num(traj.final_time())).unwrap();
    writeln!(s, "initial disagreement: {}", num(traj.initial_disagreement())).unwrap();
    writeln!(s, "final disagreement: {}", num(traj.final_disagreement())).unwrap();
    writeln!(s, "diverged: {}", traj.diverged).unwrap();
    s
}
