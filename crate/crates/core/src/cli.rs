//! Command-line front end: `eval`, `region`, `volume` and `sweep`.
//!
//! Exit codes: 0 success, 1 usage, 2 parse/schema, 3 numeric domain, 4 I/O.

use std::ffi::OsString;
use std::f64::consts::PI;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::decision::ChoiceResult;
use crate::decision::expected_utility;
use crate::ellsberg::Utilities;
use crate::error::{Error, Result};
use crate::mind::{moderated_expected_utility, overlap_coefficient};
use crate::plot::{render_region_svg, PlotSpec};
use crate::region::{
    quarter_phases, EllsbergRegion, GridSpec, McDomain, Method, RegionEstimate, XSampling,
    MC_GENERATOR,
};
use crate::scenario::parse_scenario;

pub const TOOL_VERSION: &str = concat!("hilbert-decision ", env!("CARGO_PKG_VERSION"));

pub const CSV_HEADER: [&str; 8] = [
    "command",
    "parameters",
    "ratio",
    "error",
    "evaluations",
    "method",
    "seed",
    "version",
];

/// Share of ambiguity-averse subjects across surveyed Ellsberg experiments,
/// printed next to the computed volume ratio for comparison only.
pub const EMPIRICAL_BAND: (f64, f64) = (0.572, 0.579);

/// Reference area ratios at `d = 0, π/4, π/2, 3π/4, π`.
pub const REFERENCE_AREAS: [f64; 5] = [0.30, 0.41, 0.63, 0.74, 0.76];

const EXIT_USAGE: i32 = 1;

#[derive(Debug, Parser)]
#[command(
    name = "hilbert-decision",
    version,
    about = "Hilbert-space decision model: scenario evaluation and Ellsberg region measures"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Expected (or mind-moderated) utility of every action in a scenario file.
    Eval {
        scenario: PathBuf,
    },
    /// Area ratio of the Ellsberg region at a fixed phase d.
    Region {
        /// Phase d in radians (multiples of π with --pi-units).
        #[arg(long = "d", allow_hyphen_values = true)]
        d: f64,
        #[command(flatten)]
        common: RegionArgs,
        #[arg(long, default_value_t = 1000)]
        grid: usize,
        /// Write an SVG raster of the region.
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long, default_value_t = 800)]
        width: u32,
        #[arg(long, default_value_t = 800)]
        height: u32,
        #[arg(long, default_value = crate::plot::DEFAULT_FILL)]
        fill: String,
    },
    /// Volume ratio of the Ellsberg region in [0,1]x[0,1]x[0,π].
    Volume {
        #[command(flatten)]
        common: RegionArgs,
        #[arg(long, default_value_t = 300)]
        grid: usize,
        /// Write per-d slice area ratios as CSV.
        #[arg(long)]
        slices: Option<PathBuf>,
    },
    /// Area ratios for a list of phases.
    Sweep {
        /// Comma-separated phases.
        #[arg(long = "d", value_delimiter = ',', allow_hyphen_values = true, conflicts_with = "step")]
        d: Vec<f64>,
        /// Phases 0, step, 2·step, … up to π.
        #[arg(long, conflicts_with = "d")]
        step: Option<f64>,
        #[command(flatten)]
        common: RegionArgs,
        #[arg(long, default_value_t = 1000)]
        grid: usize,
    },
}

#[derive(Debug, Args)]
pub struct RegionArgs {
    /// Interpret phases as multiples of π.
    #[arg(long)]
    pub pi_units: bool,
    /// Add a Monte Carlo cross-check with this many samples.
    #[arg(long)]
    pub mc: Option<u64>,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Write results as CSV here instead of stdout.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// Urn 2 holds this many balls: x takes the values √(k/N).
    #[arg(long)]
    pub discrete_urn: Option<usize>,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub u0: f64,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub u100: f64,
}

/// Raised for bad flag values; maps to exit code 1.
struct Usage(String);

enum Failure {
    Usage(Usage),
    Run(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Run(e)
    }
}

impl From<Usage> for Failure {
    fn from(u: Usage) -> Self {
        Failure::Usage(u)
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{rendered}")
            } else {
                write!(out, "{rendered}")
            };
            return code;
        }
    };
    match execute(&cli.command, out, err) {
        Ok(()) => 0,
        Err(Failure::Usage(Usage(msg))) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Run(e)) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn execute(cmd: &Command, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<()> {
    match cmd {
        Command::Eval { scenario } => cmd_eval(scenario, out, err),
        Command::Region {
            d,
            common,
            grid,
            svg,
            width,
            height,
            fill,
        } => {
            let plot = svg.as_ref().map(|path| {
                let mut spec = PlotSpec::new(0.0);
                spec.width = *width;
                spec.height = *height;
                spec.fill = fill.clone();
                (path.clone(), spec)
            });
            cmd_region(*d, common, *grid, plot, out, err)
        }
        Command::Volume {
            common,
            grid,
            slices,
        } => cmd_volume(common, *grid, slices.as_deref(), out),
        Command::Sweep {
            d,
            step,
            common,
            grid,
        } => cmd_sweep(d, *step, common, *grid, out, err),
    }
}

fn io_err(path: &Path, source: std::io::Error) -> Error {
    Error::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn out_err(source: std::io::Error) -> Error {
    io_err(Path::new("<stdout>"), source)
}

fn cmd_eval(path: &Path, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<()> {
    let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    let scenario = parse_scenario(&text)?;
    for w in &scenario.warnings {
        let _ = writeln!(err, "warning: {w}");
    }
    let problem = &scenario.problem;
    let state = problem.world_state();
    let utilities = problem
        .actions()
        .iter()
        .map(|a| match &scenario.mind {
            Some(m) => moderated_expected_utility(m, state, a),
            None => expected_utility(a, state),
        })
        .collect::<Result<Vec<_>>>()?;
    let choice = ChoiceResult::from_utilities(utilities)?;

    let mut report = String::new();
    match &scenario.mind {
        Some(m) => {
            let c = overlap_coefficient(m, state)?;
            report.push_str(&format!("mode: moderated by mind state\n|c|^2: {:.12}\n", c.norm_sqr()));
        }
        None => report.push_str("mode: expected utility\n"),
    }
    let width = problem
        .actions()
        .iter()
        .map(|a| a.label().len())
        .max()
        .unwrap_or(0)
        .max("action".len());
    report.push_str(&format!("{:<width$}  utility\n", "action"));
    for (a, u) in problem.actions().iter().zip(&choice.utilities) {
        report.push_str(&format!("{:<width$}  {u:.12}\n", a.label()));
    }
    let label = |i: usize| problem.actions()[i].label();
    report.push_str(&format!("choice: {}\n", label(choice.reported_choice)));
    if choice.is_tie() {
        let tied: Vec<_> = choice.best_indices.iter().map(|&i| label(i)).collect();
        report.push_str(&format!("tie: {}\n", tied.join(", ")));
    }
    out.write_all(report.as_bytes()).map_err(out_err)?;
    Ok(())
}

fn region_for(common: &RegionArgs) -> CliResult<EllsbergRegion> {
    let utilities = Utilities::new(common.u0, common.u100).map_err(|e| Usage(e.to_string()))?;
    let x_sampling = match common.discrete_urn {
        None => XSampling::Continuous,
        Some(0) => return Err(Usage("--discrete-urn must be positive".into()).into()),
        Some(n) => XSampling::Discrete(n),
    };
    Ok(EllsbergRegion::new(utilities, x_sampling))
}

fn phase(value: f64, pi_units: bool) -> CliResult<f64> {
    let d = if pi_units { value * PI } else { value };
    if (0.0..=PI).contains(&d) {
        Ok(d)
    } else {
        Err(Usage(format!("d = {value}{} is outside [0, π]", if pi_units { "π" } else { "" })).into())
    }
}

fn grid_spec(n: usize) -> CliResult<GridSpec> {
    GridSpec::new(n).map_err(|e| Usage(e.to_string()).into())
}

fn mc_samples(common: &RegionArgs) -> CliResult<Option<u64>> {
    match common.mc {
        Some(n) if n < crate::region::MIN_MC_SAMPLES => Err(Usage(format!(
            "--mc needs at least {} samples",
            crate::region::MIN_MC_SAMPLES
        ))
        .into()),
        other => Ok(other),
    }
}

fn base_parameters(common: &RegionArgs) -> String {
    let mut p = format!("u0={};u100={}", common.u0, common.u100);
    if let Some(n) = common.discrete_urn {
        p.push_str(&format!(";discrete_urn={n}"));
    }
    p
}

/// One CSV record with the fixed column set.
pub fn csv_record(command: &str, parameters: &str, est: &RegionEstimate) -> [String; 8] {
    [
        command.to_string(),
        parameters.to_string(),
        est.ratio.to_string(),
        est.error_estimate.to_string(),
        est.evaluations.to_string(),
        est.method.to_string(),
        est.seed.map(|s| s.to_string()).unwrap_or_default(),
        TOOL_VERSION.to_string(),
    ]
}

fn csv_bytes(records: &[[String; 8]]) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let to_err = |e: csv::Error| Error::Io {
        path: PathBuf::from("<csv>"),
        source: std::io::Error::other(e),
    };
    w.write_record(CSV_HEADER).map_err(to_err)?;
    for r in records {
        w.write_record(r).map_err(to_err)?;
    }
    w.into_inner().map_err(|e| Error::Io {
        path: PathBuf::from("<csv>"),
        source: std::io::Error::other(e.to_string()),
    })
}

/// Writes CSV to `path`, or to `out` when no path is given.
fn emit_csv(path: Option<&Path>, records: &[[String; 8]], out: &mut dyn Write) -> Result<()> {
    let bytes = csv_bytes(records)?;
    match path {
        Some(p) => fs::write(p, bytes).map_err(|e| io_err(p, e)),
        None => out.write_all(&bytes).map_err(out_err),
    }
}

fn mc_line(grid: &RegionEstimate, mc: &RegionEstimate) -> String {
    let diff = (grid.ratio - mc.ratio).abs();
    let z = if mc.error_estimate > 0.0 {
        diff / mc.error_estimate
    } else if diff == 0.0 {
        0.0
    } else {
        f64::INFINITY
    };
    format!(
        "monte carlo: ratio {:.6} ± {:.6} ({} samples, seed {}, {MC_GENERATOR}); |grid − mc| = {:.2} σ, {}\n",
        mc.ratio,
        mc.error_estimate,
        mc.evaluations,
        mc.seed.unwrap_or_default(),
        z,
        if z <= 3.0 { "agrees within 3σ" } else { "DISAGREES beyond 3σ" }
    )
}

fn mc_parameters(base: &str, samples: u64) -> String {
    format!("{base};samples={samples};generator={MC_GENERATOR}")
}

fn cmd_region(
    d_value: f64,
    common: &RegionArgs,
    n: usize,
    plot: Option<(PathBuf, PlotSpec)>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CliResult<()> {
    let d = phase(d_value, common.pi_units)?;
    let grid = grid_spec(n)?;
    let samples = mc_samples(common)?;
    let region = region_for(common)?;
    if let Some((_, spec)) = &plot {
        spec.validate().map_err(|e| Usage(e.to_string()))?;
    }

    let est = region.area_ratio(d, &grid)?;
    let params = format!("d={d};n={n};{}", base_parameters(common));
    let mut records = vec![csv_record("region", &params, &est)];
    let mut summary = format!(
        "region d = {d:.6}: ratio {:.6} (refinement error {:.2e}, {} evaluations)\n",
        est.ratio, est.error_estimate, est.evaluations
    );
    if let Some(samples) = samples {
        let mc = region.monte_carlo(McDomain::Plane { d }, samples, common.seed)?;
        summary.push_str(&mc_line(&est, &mc));
        records.push(csv_record("region", &mc_parameters(&params, samples), &mc));
    }

    let svg = match plot {
        Some((path, mut spec)) => {
            spec.d = d;
            let mask = region.area_mask(d, &grid)?;
            Some((path, render_region_svg(&mask, &spec)?))
        }
        None => None,
    };

    emit_csv(common.csv.as_deref(), &records, out)?;
    if let Some((path, text)) = svg {
        fs::write(&path, text).map_err(|e| io_err(&path, e))?;
    }
    let summary_sink: &mut dyn Write = if common.csv.is_some() { out } else { err };
    summary_sink.write_all(summary.as_bytes()).map_err(out_err)?;
    Ok(())
}

fn cmd_volume(
    common: &RegionArgs,
    n: usize,
    slices_path: Option<&Path>,
    out: &mut dyn Write,
) -> CliResult<()> {
    let grid = grid_spec(n)?;
    let samples = mc_samples(common)?;
    let region = region_for(common)?;

    let est = region.volume_ratio(&grid)?;
    let params = format!("n={n};{}", base_parameters(common));
    let mut records = vec![csv_record("volume", &params, &est)];
    let mut summary = format!(
        "volume ratio: {:.6} ({:.2}%), refinement error {:.2e}, {} evaluations\n",
        est.ratio,
        100.0 * est.ratio,
        est.error_estimate,
        est.evaluations
    );
    summary.push_str(&format!(
        "empirical share of ambiguity-averse subjects (survey data, comparison only): {:.1}%..{:.1}%\n",
        100.0 * EMPIRICAL_BAND.0,
        100.0 * EMPIRICAL_BAND.1
    ));
    if let Some(samples) = samples {
        let mc = region.monte_carlo(McDomain::Volume, samples, common.seed)?;
        summary.push_str(&mc_line(&est, &mc));
        records.push(csv_record("volume", &mc_parameters(&params, samples), &mc));
    }

    let slice_records = match slices_path {
        Some(_) => {
            let slices = region.volume_slices(&grid)?;
            let cells = (grid.points_per_axis() as u64)
                * match region.x_sampling {
                    XSampling::Continuous => grid.points_per_axis() as u64,
                    XSampling::Discrete(balls) => balls as u64 + 1,
                };
            slices
                .into_iter()
                .map(|(d, ratio)| {
                    let slice = RegionEstimate {
                        ratio,
                        error_estimate: 0.0,
                        method: Method::Grid,
                        evaluations: cells,
                        seed: None,
                    };
                    csv_record("volume-slice", &format!("d={d};n={n};{}", base_parameters(common)), &slice)
                })
                .collect::<Vec<_>>()
        }
        None => Vec::new(),
    };

    if let Some(path) = &common.csv {
        fs::write(path, csv_bytes(&records)?).map_err(|e| io_err(path, e))?;
    }
    if let Some(path) = slices_path {
        fs::write(path, csv_bytes(&slice_records)?).map_err(|e| io_err(path, e))?;
    }
    out.write_all(summary.as_bytes()).map_err(out_err)?;
    Ok(())
}

/// Phases `0, step, 2·step, …` not exceeding `limit`.
fn stepped(step: f64, limit: f64) -> Option<Vec<f64>> {
    if !(step > 0.0 && step.is_finite()) {
        return None;
    }
    let count = (limit / step + 1e-9).floor() as usize;
    Some(
        (0..=count)
            .map(|k| (k as f64 * step).min(limit))
            .collect(),
    )
}

fn is_quarter_grid(ds: &[f64]) -> bool {
    ds.len() == 5 && ds.iter().zip(quarter_phases()).all(|(a, b)| (a - b).abs() < 1e-9)
}

fn cmd_sweep(
    d_values: &[f64],
    step: Option<f64>,
    common: &RegionArgs,
    n: usize,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CliResult<()> {
    let grid = grid_spec(n)?;
    let region = region_for(common)?;
    let raw = match step {
        Some(s) => {
            let limit = if common.pi_units { 1.0 } else { PI };
            stepped(s, limit).ok_or_else(|| Usage(format!("--step must be positive, got {s}")))?
        }
        None if d_values.is_empty() => {
            return Err(Usage("sweep needs --d VALUES or --step VALUE".into()).into())
        }
        None => d_values.to_vec(),
    };
    let ds = raw
        .iter()
        .map(|&v| phase(v, common.pi_units))
        .collect::<CliResult<Vec<_>>>()?;

    let rows = region.sweep(&ds, &grid)?;
    let base = base_parameters(common);
    let records: Vec<_> = rows
        .iter()
        .map(|(d, est)| csv_record("sweep", &format!("d={d};n={n};{base}"), est))
        .collect();

    let mut summary = String::new();
    if is_quarter_grid(&ds) {
        let increasing = rows.windows(2).all(|w| w[0].1.ratio < w[1].1.ratio);
        let reference: Vec<_> = REFERENCE_AREAS
            .iter()
            .map(|r| format!("{:.0}%", 100.0 * r))
            .collect();
        let got: Vec<_> = rows
            .iter()
            .map(|(_, e)| format!("{:.1}%", 100.0 * e.ratio))
            .collect();
        summary = format!(
            "advisory: ratios {} ({}); reference {}\n",
            got.join(", "),
            if increasing { "strictly increasing in d" } else { "NOT increasing in d" },
            reference.join(", ")
        );
    }

    emit_csv(common.csv.as_deref(), &records, out)?;
    let summary_sink: &mut dyn Write = if common.csv.is_some() { out } else { err };
    summary_sink.write_all(summary.as_bytes()).map_err(out_err)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn steps_cover_range() {
        assert_eq!(stepped(0.125, 1.0).unwrap().len(), 9);
        let ds = stepped(PI / 8.0, PI).unwrap();
        assert_eq!(ds.len(), 9);
        assert_eq!(*ds.last().unwrap(), PI);
        assert!(stepped(0.0, 1.0).is_none());
        assert!(stepped(-1.0, 1.0).is_none());
    }

    #[test]
    fn quarter_grid_detection() {
        assert!(is_quarter_grid(&quarter_phases()));
        assert!(!is_quarter_grid(&quarter_phases()[..4]));
    }
}
