//! Command line interface: solve single configurations, reproduce the
//! convergence tables, run stability studies, and compare against the
//! finite volume scheme.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use fronttrack::harness::{
    self, format_convergence_table, format_stability_report, parse_config_file, PlotMeta,
};
use fronttrack::{ExperimentConfig, FtError, InitialDatum, StabilityMode};

#[derive(Parser)]
#[command(
    name = "fronttrack",
    about = "Front tracking for conservation laws with a discontinuous monotone flux",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CommonArgs {
    /// Experiment preset (1 or 2)
    #[arg(long, default_value_t = 1)]
    experiment: u32,

    /// Resolution parameter; mesh spacing is 1/n
    #[arg(long)]
    n: Option<u32>,

    /// Mesh spacing (overrides --n)
    #[arg(long)]
    delta: Option<f64>,

    /// End time of the run
    #[arg(long)]
    end_time: Option<f64>,

    /// Time step ratio dt/dx of the finite volume scheme
    #[arg(long)]
    lambda: Option<f64>,

    /// Resolution of the front tracking reference solution
    #[arg(long)]
    reference_n: Option<u32>,

    /// Directory for emitted files
    #[arg(long, default_value = "out")]
    out_dir: PathBuf,

    /// Output format of emitted tables
    #[arg(long, value_parser = ["csv", "txt"], default_value = "txt")]
    format: String,

    /// Flat key = value config file applied before the flags above
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Run one front tracking solve and emit the staircase plot data
    Solve(CommonArgs),
    /// Reproduce the observed-order-of-convergence table
    Convergence(CommonArgs),
    /// Perturbation study: flux, coefficient, or datum mode
    Stability {
        #[command(flatten)]
        common: CommonArgs,

        /// What to perturb
        #[arg(long, value_parser = ["flux", "coefficient", "datum"], default_value = "flux")]
        mode: String,

        /// Comma-separated perturbation magnitudes
        #[arg(long, default_value = "1e-1,1e-2,1e-3,1e-4", value_delimiter = ',')]
        eps: Vec<f64>,
    },
    /// L1 errors of front tracking vs finite volume at one resolution
    CompareFv(CommonArgs),
}

/// Custom two-flux problem pieces collected from the config file.
#[derive(Default)]
struct CustomProblem {
    left_flux: Option<String>,
    right_flux: Option<String>,
    datum: Option<String>,
    interface: f64,
}

fn apply_config_file(common: &mut CommonArgs) -> Result<CustomProblem, FtError> {
    let mut custom = CustomProblem::default();
    let Some(path) = &common.config else {
        return Ok(custom);
    };
    for (key, value) in parse_config_file(path)? {
        let bad = |k: &str, v: &str| FtError::Config(format!("bad value `{}` for `{}`", v, k));
        match key.as_str() {
            "experiment" => {
                common.experiment = value.parse().map_err(|_| bad(&key, &value))?;
            }
            "n" => common.n = Some(value.parse().map_err(|_| bad(&key, &value))?),
            "delta" => common.delta = Some(value.parse().map_err(|_| bad(&key, &value))?),
            "end_time" => common.end_time = Some(value.parse().map_err(|_| bad(&key, &value))?),
            "lambda" => common.lambda = Some(value.parse().map_err(|_| bad(&key, &value))?),
            "reference_n" => {
                common.reference_n = Some(value.parse().map_err(|_| bad(&key, &value))?);
            }
            "out_dir" => common.out_dir = PathBuf::from(value),
            "format" => {
                if value != "csv" && value != "txt" {
                    return Err(bad(&key, &value));
                }
                common.format = value;
            }
            "left_flux" => custom.left_flux = Some(value),
            "right_flux" => custom.right_flux = Some(value),
            "datum" => custom.datum = Some(value),
            "interface" => custom.interface = value.parse().map_err(|_| bad(&key, &value))?,
            other => {
                return Err(FtError::Config(format!("unknown config key `{}`", other)));
            }
        }
    }
    Ok(custom)
}

fn build_config(common: &CommonArgs, custom: CustomProblem) -> Result<ExperimentConfig, FtError> {
    let mut cfg = if custom.left_flux.is_some()
        || custom.right_flux.is_some()
        || custom.datum.is_some()
    {
        let (Some(left), Some(right), Some(datum)) =
            (&custom.left_flux, &custom.right_flux, &custom.datum)
        else {
            return Err(FtError::Config(
                "a custom problem needs left_flux, right_flux, and datum".into(),
            ));
        };
        ExperimentConfig::two_flux(
            left,
            right,
            custom.interface,
            InitialDatum::parse(datum)?,
            common.end_time.unwrap_or(0.5),
        )?
    } else {
        ExperimentConfig::preset(common.experiment)?
    };
    if let Some(n) = common.n {
        cfg.resolution = n;
    }
    if let Some(delta) = common.delta {
        if !delta.is_finite() || delta <= 0.0 {
            return Err(FtError::Config(format!("delta = {} must be positive", delta)));
        }
        let n = (1.0 / delta).round();
        if n < 1.0 || (n * delta - 1.0).abs() > 1e-9 {
            return Err(FtError::Config(format!(
                "delta = {} is not the reciprocal of an integer resolution",
                delta
            )));
        }
        cfg.resolution = n as u32;
    }
    if let Some(t) = common.end_time {
        cfg.end_time = t;
    }
    if let Some(l) = common.lambda {
        cfg.lambda = l;
    }
    if let Some(r) = common.reference_n {
        cfg.reference_n = r;
    }
    Ok(cfg)
}

fn run(cli: Cli) -> Result<(), FtError> {
    match cli.command {
        Command::Solve(mut common) => {
            let custom = apply_config_file(&mut common)?;
            let cfg = build_config(&common, custom)?;
            let sol = cfg.ft_solution(cfg.resolution)?;
            let meta = PlotMeta {
                experiment: cfg.name.clone(),
                time: cfg.end_time,
                n: cfg.resolution,
            };
            let name = format!(
                "solution_{}_n{}_t{}.txt",
                cfg.name, cfg.resolution, cfg.end_time
            );
            std::fs::create_dir_all(&common.out_dir).map_err(|source| FtError::Io {
                path: common.out_dir.display().to_string(),
                source,
            })?;
            let path = common.out_dir.join(&name);
            harness::emit_plot_data(&sol, cfg.window, &meta, &path)?;
            println!(
                "{}: n = {}, T = {}, {} fronts sampled, TV = {:.6}",
                cfg.name,
                cfg.resolution,
                cfg.end_time,
                sol.breakpoints().len(),
                sol.total_variation()
            );
            println!("wrote {}", path.display());
        }
        Command::Convergence(mut common) => {
            let custom = apply_config_file(&mut common)?;
            let cfg = build_config(&common, custom)?;
            let rows = harness::run_convergence_study(&cfg, &harness::DEFAULT_N_LIST)?;
            let csv = common.format == "csv";
            let table = format_convergence_table(&rows, csv);
            print!("{}", table);
            let name = format!(
                "convergence_{}.{}",
                cfg.name,
                if csv { "csv" } else { "txt" }
            );
            harness::write_output(&common.out_dir, &name, &table)?;
            println!("wrote {}", common.out_dir.join(name).display());
        }
        Command::Stability { mut common, mode, eps } => {
            let custom = apply_config_file(&mut common)?;
            let cfg = build_config(&common, custom)?;
            let mode = StabilityMode::parse(&mode)?;
            let report = harness::run_stability_study(&cfg, mode, &eps)?;
            let csv = common.format == "csv";
            let table = format_stability_report(&report, csv);
            print!("{}", table);
            if csv {
                println!("slope = {:.4}", report.slope);
            }
            let name = format!(
                "stability_{}_{:?}.{}",
                cfg.name,
                report.mode,
                if csv { "csv" } else { "txt" }
            );
            harness::write_output(&common.out_dir, &name.to_lowercase(), &table)?;
        }
        Command::CompareFv(mut common) => {
            let custom = apply_config_file(&mut common)?;
            let cfg = build_config(&common, custom)?;
            let (e_ft, e_fv) = harness::compare_ft_fv(&cfg, cfg.resolution)?;
            println!(
                "{} at n = {}: e_ft = {:.3e}, e_fv = {:.3e}, ratio = {:.1}",
                cfg.name,
                cfg.resolution,
                e_ft,
                e_fv,
                e_fv / e_ft
            );
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {}", err);
            ExitCode::FAILURE
        }
    }
}
