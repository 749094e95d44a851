//! Experiment presets, convergence and stability studies, error tables, and
//! plot-data emission.
//!
//! Error convention: a study at resolution `n` uses mesh spacing
//! `delta = dx = 1/n`, i.e. `2n` cells on the default domain (-1, 1), and
//! reports the exact L1 distance to a front tracking reference solution on a
//! very fine grid (`reference_n`, default 2048). The observed order of
//! convergence of a row is log2(e_{n/2} / e_n) under grid doubling.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::Path;
use std::sync::Arc;

use crate::error::{FtError, Result};
use crate::flux::{MonotoneFlux, SpatialFlux};
use crate::fv::fv_solve;
use crate::piecewise::PiecewiseConstantFn;
use crate::tracking::{front_tracking_solve, run_front_tracking, FrontTrackingRun, TrackingOptions};

/// Initial datum shapes used by the experiments and perturbation studies.
#[derive(Clone)]
pub enum InitialDatum {
    /// `left` for x < jump_at, `right` beyond.
    Step { jump_at: f64, left: f64, right: f64 },
    /// base + amplitude * exp(-decay * (x - center)^2).
    GaussianBump {
        base: f64,
        amplitude: f64,
        center: f64,
        decay: f64,
    },
    /// Arbitrary pointwise-evaluable datum.
    Custom(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
}

impl InitialDatum {
    pub fn eval(&self, x: f64) -> f64 {
        match self {
            InitialDatum::Step {
                jump_at,
                left,
                right,
            } => {
                if x < *jump_at {
                    *left
                } else {
                    *right
                }
            }
            InitialDatum::GaussianBump {
                base,
                amplitude,
                center,
                decay,
            } => base + amplitude * (-decay * (x - center) * (x - center)).exp(),
            InitialDatum::Custom(f) => f(x),
        }
    }

    /// Parses a datum spec: `constant:<v>`, `step:<x0>:<left>:<right>`, or
    /// `bump:<base>:<amplitude>:<center>:<decay>`.
    pub fn parse(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let num = |i: usize| -> Result<f64> {
            parts
                .get(i)
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| FtError::Config(format!("bad datum spec `{}`", s)))
        };
        match parts[0] {
            "constant" => {
                let v = num(1)?;
                Ok(InitialDatum::Step {
                    jump_at: 0.0,
                    left: v,
                    right: v,
                })
            }
            "step" => Ok(InitialDatum::Step {
                jump_at: num(1)?,
                left: num(2)?,
                right: num(3)?,
            }),
            "bump" => Ok(InitialDatum::GaussianBump {
                base: num(1)?,
                amplitude: num(2)?,
                center: num(3)?,
                decay: num(4)?,
            }),
            _ => Err(FtError::Config(format!("unknown datum spec `{}`", s))),
        }
    }

    /// The datum plus a Gaussian bump of integral `mass` centered at
    /// `center` with length scale `width`.
    pub fn with_mass_bump(&self, mass: f64, center: f64, width: f64) -> InitialDatum {
        let base = self.clone();
        let amplitude = mass / (width * std::f64::consts::PI.sqrt());
        let inv_w2 = 1.0 / (width * width);
        InitialDatum::Custom(Arc::new(move |x| {
            base.eval(x) + amplitude * (-inv_w2 * (x - center) * (x - center)).exp()
        }))
    }
}

impl std::fmt::Debug for InitialDatum {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            InitialDatum::Step { jump_at, left, right } => f
                .debug_struct("Step")
                .field("jump_at", jump_at)
                .field("left", left)
                .field("right", right)
                .finish(),
            InitialDatum::GaussianBump { base, amplitude, center, decay } => f
                .debug_struct("GaussianBump")
                .field("base", base)
                .field("amplitude", amplitude)
                .field("center", center)
                .field("decay", decay)
                .finish(),
            InitialDatum::Custom(_) => f.write_str("Custom(..)"),
        }
    }
}

/// One experiment: spatial flux, initial datum, end time, and the study
/// parameters.
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub name: String,
    pub domain: (f64, f64),
    pub end_time: f64,
    pub flux: SpatialFlux,
    pub datum: InitialDatum,
    /// Resolution parameter; the mesh spacing is `1/n`.
    pub resolution: u32,
    /// Resolution of the front tracking reference solution.
    pub reference_n: u32,
    /// Time step ratio dt/dx of the finite volume comparison runs.
    pub lambda: f64,
    /// Window over which L1 errors are measured.
    pub window: (f64, f64),
}

impl ExperimentConfig {
    /// Transport on the left of x = 0, Burgers on the right, upward step
    /// datum; run to T = 0.9.
    pub fn experiment_1() -> Self {
        let flux = SpatialFlux::new(
            vec![0.0],
            vec![
                MonotoneFlux::identity((0.0, 3.6)).expect("valid flux"),
                MonotoneFlux::burgers((0.0, 3.6)).expect("valid flux"),
            ],
        )
        .expect("valid spatial flux");
        ExperimentConfig {
            name: "experiment-1".into(),
            domain: (-1.0, 1.0),
            end_time: 0.9,
            flux,
            datum: InitialDatum::Step {
                jump_at: -0.5,
                left: 0.5,
                right: 2.0,
            },
            resolution: 64,
            reference_n: 2048,
            lambda: 0.5,
            window: (-1.0, 1.0),
        }
    }

    /// Burgers on the left of x = 0, transport on the right, Gaussian bump
    /// datum; run to T = 0.5.
    pub fn experiment_2() -> Self {
        let flux = SpatialFlux::new(
            vec![0.0],
            vec![
                MonotoneFlux::burgers((1.0, 4.8)).expect("valid flux"),
                MonotoneFlux::identity((1.0, 12.0)).expect("valid flux"),
            ],
        )
        .expect("valid spatial flux");
        ExperimentConfig {
            name: "experiment-2".into(),
            domain: (-1.0, 1.0),
            end_time: 0.5,
            flux,
            datum: InitialDatum::GaussianBump {
                base: 2.0,
                amplitude: 1.0,
                center: -0.75,
                decay: 100.0,
            },
            resolution: 128,
            reference_n: 2048,
            lambda: 0.2,
            window: (-1.0, 1.0),
        }
    }

    /// Preset by number (1 or 2).
    pub fn preset(experiment: u32) -> Result<Self> {
        match experiment {
            1 => Ok(Self::experiment_1()),
            2 => Ok(Self::experiment_2()),
            other => Err(FtError::Config(format!("unknown experiment {}", other))),
        }
    }

    /// A custom two-flux problem from catalog flux names. Working ranges are
    /// derived from the datum's hull over the domain, widened by a margin
    /// and by the interface images of the left range; the default lambda is
    /// CFL-safe for the derived ranges.
    pub fn two_flux(
        left_flux: &str,
        right_flux: &str,
        interface: f64,
        datum: InitialDatum,
        end_time: f64,
    ) -> Result<Self> {
        let domain = (-1.0, 1.0);
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..=2000 {
            let v = datum.eval(domain.0 + (domain.1 - domain.0) * i as f64 / 2000.0);
            lo = lo.min(v);
            hi = hi.max(v);
        }
        let margin = (0.15 * (hi - lo)).max(0.1);
        // fluxes like burgers are only monotone on nonnegative states; keep
        // the derived range clear of sign changes when the data allow it
        let range_lo = if lo - margin < 0.0 && lo >= 0.0 { 0.0 } else { lo - margin };
        let base_range = (range_lo, hi + margin);
        let left = MonotoneFlux::from_name(left_flux, base_range)?;
        let right = MonotoneFlux::from_name(right_flux, base_range)?;
        let img_lo = right.inverse_unchecked(left.eval(base_range.0))?;
        let img_hi = right.inverse_unchecked(left.eval(base_range.1))?;
        let right_range = (img_lo.min(base_range.0), img_hi.max(base_range.1));
        let right = right.with_range(right_range)?;
        let max_lip = left
            .lipschitz_on(base_range)
            .max(right.lipschitz_on(right_range));
        let flux = SpatialFlux::new(vec![interface], vec![left, right])?;
        Ok(ExperimentConfig {
            name: "custom".into(),
            domain,
            end_time,
            flux,
            datum,
            resolution: 64,
            reference_n: 2048,
            lambda: 0.9 / max_lip,
            window: domain,
        })
    }

    /// Mesh spacing of a run at resolution n.
    pub fn delta_for(&self, n: u32) -> f64 {
        1.0 / n as f64
    }

    /// Number of finite volume cells at resolution n.
    pub fn fv_cells_for(&self, n: u32) -> usize {
        let len = self.domain.1 - self.domain.0;
        (len * n as f64).round() as usize
    }

    /// Front tracking solution at resolution n.
    pub fn ft_solution(&self, n: u32) -> Result<PiecewiseConstantFn> {
        let datum = self.datum.clone();
        front_tracking_solve(
            &self.flux,
            move |x| datum.eval(x),
            self.delta_for(n),
            self.end_time,
            self.domain,
        )
    }

    /// Front tracking run (with stats) at resolution n.
    pub fn ft_run(&self, n: u32, options: TrackingOptions) -> Result<FrontTrackingRun> {
        let datum = self.datum.clone();
        run_front_tracking(
            &self.flux,
            move |x| datum.eval(x),
            self.delta_for(n),
            self.end_time,
            self.domain,
            options,
        )
    }

    /// Finite volume solution at resolution n with this config's lambda.
    pub fn fv_solution(&self, n: u32) -> Result<PiecewiseConstantFn> {
        let datum = self.datum.clone();
        fv_solve(
            &self.flux,
            move |x| datum.eval(x),
            self.fv_cells_for(n),
            self.lambda,
            self.end_time,
            self.domain,
        )
    }
}

/// One row of a convergence table.
#[derive(Debug, Clone, Copy)]
pub struct ConvergenceRow {
    pub n: u32,
    pub l1_error: f64,
    /// log2(e_prev / e_this) under grid doubling; None on the first row.
    pub ooc: Option<f64>,
}

/// Default resolution list for convergence tables.
pub const DEFAULT_N_LIST: [u32; 7] = [16, 32, 64, 128, 256, 512, 1024];

/// Runs the front tracking method at each resolution in `n_list` and
/// measures the L1 error against the `reference_n` front tracking solution.
pub fn run_convergence_study(
    cfg: &ExperimentConfig,
    n_list: &[u32],
) -> Result<Vec<ConvergenceRow>> {
    let max_n = n_list.iter().copied().max().unwrap_or(0);
    if cfg.reference_n <= max_n {
        return Err(FtError::Config(format!(
            "reference resolution {} must exceed max resolution {}",
            cfg.reference_n, max_n
        )));
    }
    let reference = cfg.ft_solution(cfg.reference_n)?;
    let mut rows: Vec<ConvergenceRow> = Vec::with_capacity(n_list.len());
    for &n in n_list {
        let sol = cfg.ft_solution(n)?;
        let e = PiecewiseConstantFn::l1_distance(&sol, &reference, cfg.window);
        let ooc = rows.last().map(|prev: &ConvergenceRow| {
            (prev.l1_error / e).ln() / (n as f64 / prev.n as f64).ln()
        });
        rows.push(ConvergenceRow {
            n,
            l1_error: e,
            ooc,
        });
    }
    Ok(rows)
}

/// What a stability study perturbs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StabilityMode {
    /// Adds an eps-mass bump to the initial datum.
    Datum,
    /// Scales the coefficient of every subdomain right of the first
    /// interface: f_i -> (1 + eps) f_i for i >= 1.
    Coefficient,
    /// Perturbs every subdomain flux to f + eps * u.
    Flux,
}

impl StabilityMode {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "datum" => Ok(StabilityMode::Datum),
            "coefficient" => Ok(StabilityMode::Coefficient),
            "flux" => Ok(StabilityMode::Flux),
            other => Err(FtError::Config(format!("unknown stability mode `{}`", other))),
        }
    }
}

/// One perturbation magnitude and the distances it produced.
#[derive(Debug, Clone, Copy)]
pub struct StabilityRow {
    pub eps: f64,
    /// L1 distance between base and perturbed solutions at the end time.
    pub distance: f64,
    /// L1 distance between the projected initial data (datum mode only).
    pub datum_distance: f64,
}

/// Result of a stability study: per-eps rows plus the least squares slope of
/// log(distance) against log(eps).
#[derive(Debug, Clone)]
pub struct StabilityReport {
    pub mode: StabilityMode,
    pub rows: Vec<StabilityRow>,
    pub slope: f64,
    pub max_ratio: f64,
}

/// Compares the base run against perturbed runs at the config's resolution
/// for each magnitude in `eps_list`.
pub fn run_stability_study(
    cfg: &ExperimentConfig,
    mode: StabilityMode,
    eps_list: &[f64],
) -> Result<StabilityReport> {
    let opts = TrackingOptions::default();
    let base = cfg.ft_run(cfg.resolution, opts.clone())?;
    let mut rows = Vec::with_capacity(eps_list.len());
    for &eps in eps_list {
        let perturbed_cfg = perturb(cfg, mode, eps)?;
        let run = perturbed_cfg.ft_run(cfg.resolution, opts.clone())?;
        let distance =
            PiecewiseConstantFn::l1_distance(&run.solution, &base.solution, cfg.window);
        let datum_distance =
            PiecewiseConstantFn::l1_distance(&run.datum, &base.datum, cfg.window);
        rows.push(StabilityRow {
            eps,
            distance,
            datum_distance,
        });
    }
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| r.eps > 0.0 && r.distance > 0.0)
        .map(|r| (r.eps.ln(), r.distance.ln()))
        .collect();
    let slope = least_squares_slope(&pts);
    let max_ratio = rows
        .iter()
        .filter(|r| r.eps > 0.0)
        .map(|r| r.distance / r.eps)
        .fold(0.0, f64::max);
    Ok(StabilityReport {
        mode,
        rows,
        slope,
        max_ratio,
    })
}

fn perturb(cfg: &ExperimentConfig, mode: StabilityMode, eps: f64) -> Result<ExperimentConfig> {
    let mut out = cfg.clone();
    match mode {
        StabilityMode::Datum => {
            // bump on the left subdomain, supported well inside the domain:
            // it neither outruns the error window by the end time nor leaks
            // perturbation mass through the constant left tail
            out.datum = cfg.datum.with_mass_bump(eps, -0.75, 0.05);
        }
        StabilityMode::Coefficient => {
            let mut index = 0usize;
            out.flux = cfg.flux.map_fluxes(|f| {
                let scaled = if index >= 1 { f.scaled(1.0 + eps) } else { Ok(f.clone()) };
                index += 1;
                scaled
            })?;
        }
        StabilityMode::Flux => {
            out.flux = cfg.flux.map_fluxes(|f| f.perturbed_linear(eps))?;
        }
    }
    Ok(out)
}

fn least_squares_slope(pts: &[(f64, f64)]) -> f64 {
    if pts.len() < 2 {
        return f64::NAN;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    sxy / sxx
}

/// L1 errors of the front tracking and finite volume solutions at resolution
/// n, both against the same fine front tracking reference.
pub fn compare_ft_fv(cfg: &ExperimentConfig, n: u32) -> Result<(f64, f64)> {
    let reference = cfg.ft_solution(cfg.reference_n)?;
    let ft = cfg.ft_solution(n)?;
    let fv = cfg.fv_solution(n)?;
    let e_ft = PiecewiseConstantFn::l1_distance(&ft, &reference, cfg.window);
    let e_fv = PiecewiseConstantFn::l1_distance(&fv, &reference, cfg.window);
    Ok((e_ft, e_fv))
}

/// Metadata written into the '#' header of emitted plot files.
#[derive(Debug, Clone, Default)]
pub struct PlotMeta {
    pub experiment: String,
    pub time: f64,
    pub n: u32,
}

/// Writes a staircase as whitespace-separated two-column text with doubled x
/// rows at jumps, preceded by a '#' metadata header.
pub fn emit_plot_data(
    f: &PiecewiseConstantFn,
    window: (f64, f64),
    meta: &PlotMeta,
    path: &Path,
) -> Result<()> {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "# experiment = {}, time = {}, n = {}",
        meta.experiment, meta.time, meta.n
    );
    let (w0, w1) = window;
    let _ = writeln!(out, "{} {}", w0, f.sample_at(w0));
    for (i, &x) in f.breakpoints().iter().enumerate() {
        if x <= w0 || x >= w1 {
            continue;
        }
        let _ = writeln!(out, "{} {}", x, f.values()[i]);
        let _ = writeln!(out, "{} {}", x, f.values()[i + 1]);
    }
    let _ = writeln!(out, "{} {}", w1, f.sample_at(w1));
    fs::write(path, out).map_err(|source| FtError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Reads a staircase back from an emitted plot file.
pub fn read_plot_data(path: &Path) -> Result<PiecewiseConstantFn> {
    let text = fs::read_to_string(path).map_err(|source| FtError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let mut pts: Vec<(f64, f64)> = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut it = line.split_whitespace();
        let (Some(xs), Some(vs)) = (it.next(), it.next()) else {
            return Err(FtError::Config(format!("malformed plot line `{}`", line)));
        };
        let x: f64 = xs
            .parse()
            .map_err(|_| FtError::Config(format!("bad number `{}`", xs)))?;
        let v: f64 = vs
            .parse()
            .map_err(|_| FtError::Config(format!("bad number `{}`", vs)))?;
        pts.push((x, v));
    }
    if pts.is_empty() {
        return Err(FtError::Config("empty plot file".into()));
    }
    let mut breakpoints = Vec::new();
    let mut values = vec![pts[0].1];
    for w in pts.windows(2) {
        if w[1].0 == w[0].0 && w[1].1 != w[0].1 {
            breakpoints.push(w[1].0);
            values.push(w[1].1);
        }
    }
    PiecewiseConstantFn::new(breakpoints, values)
}

/// Formats a convergence table. `csv` yields `n,l1_error,ooc` rows; the text
/// format aligns columns and marks the first row's order with `--`.
pub fn format_convergence_table(rows: &[ConvergenceRow], csv: bool) -> String {
    let mut out = String::new();
    if csv {
        let _ = writeln!(out, "n,l1_error,ooc");
        for r in rows {
            match r.ooc {
                Some(o) => {
                    let _ = writeln!(out, "{},{:.3e},{:.2}", r.n, r.l1_error, o);
                }
                None => {
                    let _ = writeln!(out, "{},{:.3e},", r.n, r.l1_error);
                }
            }
        }
    } else {
        let _ = writeln!(out, "{:>6}  {:>12}  {:>6}", "n", "l1_error", "ooc");
        for r in rows {
            let ooc = r.ooc.map_or("--".to_string(), |o| format!("{:.2}", o));
            let _ = writeln!(out, "{:>6}  {:>12.3e}  {:>6}", r.n, r.l1_error, ooc);
        }
    }
    out
}

/// Formats a stability report: one row per eps plus slope and ratio lines.
pub fn format_stability_report(report: &StabilityReport, csv: bool) -> String {
    let mut out = String::new();
    if csv {
        let _ = writeln!(out, "eps,distance,datum_distance");
        for r in &report.rows {
            let _ = writeln!(out, "{:e},{:.6e},{:.6e}", r.eps, r.distance, r.datum_distance);
        }
    } else {
        let _ = writeln!(out, "{:>10}  {:>12}  {:>14}", "eps", "distance", "datum_dist");
        for r in &report.rows {
            let _ = writeln!(
                out,
                "{:>10.1e}  {:>12.6e}  {:>14.6e}",
                r.eps, r.distance, r.datum_distance
            );
        }
        let _ = writeln!(out, "slope = {:.4}", report.slope);
        let _ = writeln!(out, "max distance/eps = {:.4}", report.max_ratio);
    }
    out
}

/// Writes `content` to `dir/name`, creating the directory if needed.
pub fn write_output(dir: &Path, name: &str, content: &str) -> Result<()> {
    fs::create_dir_all(dir).map_err(|source| FtError::Io {
        path: dir.display().to_string(),
        source,
    })?;
    let path = dir.join(name);
    let mut file = fs::File::create(&path).map_err(|source| FtError::Io {
        path: path.display().to_string(),
        source,
    })?;
    file.write_all(content.as_bytes()).map_err(|source| FtError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Parses a flat `key = value` config file; '#' starts a comment.
pub fn parse_config_file(path: &Path) -> Result<Vec<(String, String)>> {
    let text = fs::read_to_string(path).map_err(|source| FtError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let mut out = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(FtError::Config(format!(
                "line {}: expected `key = value`, got `{}`",
                lineno + 1,
                raw
            )));
        };
        out.push((key.trim().to_string(), value.trim().to_string()));
    }
    Ok(out)
}
