//! seedlab command line: escape-time rasters and connectivity metrics for
//! seed-perturbed Mandelbrot sets.
//!
//! Exit codes: 0 on success, 1 on runtime failure, 2 on usage errors.

use std::env;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use seedlab::pgm;
use seedlab::report::{report_csv, single_record_csv};
use seedlab::{
    detect_split, disconnectivity_rate, find_preset, journey_presets, label_components, render,
    run_sweep, trend_statistic, Complex, Connectivity, ConnectivityRecord, EscapeField, SeedPath,
    SweepReport, TrendError, TrendStatistic, Viewport,
};

#[derive(Parser)]
#[command(
    name = "seedlab",
    version,
    about = "Render generalized Mandelbrot sets for perturbed seeds and measure their raster connectivity"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Render one membership image and report its connectivity record
    Render(RenderArgs),
    /// Sweep the seed along a custom segment: one frame per step plus a CSV report
    Sweep(SweepArgs),
    /// Run a bundled journey by name ("imaginary" or "real")
    Journey(JourneyArgs),
    /// Recompute connectivity metrics from a graymap written earlier
    Analyze(AnalyzeArgs),
}

#[derive(Args)]
struct ViewArgs {
    /// Window center in the parameter plane, as RE,IM
    #[arg(long, default_value = "-0.25,0")]
    center: Complex,
    /// Window width in plane units
    #[arg(long, default_value_t = 3.2, value_parser = parse_extent)]
    width: f64,
    /// Window height in plane units
    #[arg(long, default_value_t = 3.2, value_parser = parse_extent)]
    height: f64,
    /// Grid size as COLSxROWS
    #[arg(long, default_value = "512x512", value_parser = GridSize::from_str)]
    size: GridSize,
    /// Iteration cap; orbits that survive it count as members
    #[arg(long, default_value_t = 256, value_parser = clap::value_parser!(u32).range(1..))]
    max_iter: u32,
}

#[derive(Args)]
struct OutputArgs {
    /// Output directory, created if missing
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Image format for frames
    #[arg(long, value_enum, default_value_t = FrameFormat::Pgm)]
    format: FrameFormat,
    /// Worker threads; overrides SEEDLAB_THREADS, defaults to all cores
    #[arg(long)]
    threads: Option<usize>,
    /// Pixel adjacency used for component labeling
    #[arg(long, default_value = "8")]
    connectivity: Connectivity,
}

#[derive(Args)]
struct RenderArgs {
    /// Orbit seed, as RE,IM
    #[arg(long, default_value = "0,0")]
    seed: Complex,
    #[command(flatten)]
    view: ViewArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct SweepArgs {
    /// Seed segment, as RE,IM:RE,IM
    #[arg(long, value_parser = PathSpec::from_str)]
    path: PathSpec,
    /// Number of seed steps, endpoints included
    #[arg(long, default_value_t = 33, value_parser = parse_steps)]
    steps: usize,
    #[command(flatten)]
    view: ViewArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct JourneyArgs {
    /// Preset name
    name: String,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Graymap file written by render, sweep, or journey
    input: PathBuf,
    /// Pixel adjacency used for component labeling
    #[arg(long, default_value = "8")]
    connectivity: Connectivity,
}

#[derive(Clone, Copy, ValueEnum)]
enum FrameFormat {
    Pgm,
    Png,
}

impl FrameFormat {
    fn extension(self) -> &'static str {
        match self {
            FrameFormat::Pgm => "pgm",
            FrameFormat::Png => "png",
        }
    }
}

#[derive(Clone)]
struct GridSize {
    cols: usize,
    rows: usize,
}

impl FromStr for GridSize {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || format!("expected COLSxROWS, e.g. 512x512, got {s:?}");
        let (cols, rows) = s.split_once(['x', 'X']).ok_or_else(err)?;
        let cols: usize = cols.trim().parse().map_err(|_| err())?;
        let rows: usize = rows.trim().parse().map_err(|_| err())?;
        if cols == 0 || rows == 0 {
            return Err(err());
        }
        Ok(GridSize { cols, rows })
    }
}

#[derive(Clone)]
struct PathSpec {
    start: Complex,
    end: Complex,
}

impl FromStr for PathSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || format!("expected RE,IM:RE,IM, e.g. 0,0:0,-1.6, got {s:?}");
        let (start, end) = s.split_once(':').ok_or_else(err)?;
        Ok(PathSpec {
            start: start.parse().map_err(|_| err())?,
            end: end.parse().map_err(|_| err())?,
        })
    }
}

fn parse_extent(s: &str) -> Result<f64, String> {
    let v: f64 = s
        .parse()
        .map_err(|_| format!("expected a number, got {s:?}"))?;
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(format!("extent must be finite and positive, got {s}"))
    }
}

fn parse_steps(s: &str) -> Result<usize, String> {
    let v: usize = s
        .parse()
        .map_err(|_| format!("expected an integer, got {s:?}"))?;
    if v >= 2 {
        Ok(v)
    } else {
        Err(format!("a sweep needs at least 2 steps, got {v}"))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(command: Command) -> Result<()> {
    let threads = match &command {
        Command::Render(args) => args.output.threads,
        Command::Sweep(args) => args.output.threads,
        Command::Journey(args) => args.output.threads,
        Command::Analyze(_) => None,
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(resolve_threads(threads)?.unwrap_or(0))
        .build()
        .context("building the worker thread pool")?;
    pool.install(|| match command {
        Command::Render(args) => cmd_render(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Journey(args) => cmd_journey(args),
        Command::Analyze(args) => cmd_analyze(args),
    })
}

/// `--threads` wins over SEEDLAB_THREADS; unset means the rayon default.
fn resolve_threads(flag: Option<usize>) -> Result<Option<usize>> {
    if flag.is_some() {
        return Ok(flag);
    }
    match env::var("SEEDLAB_THREADS") {
        Ok(value) => {
            let n: usize = value
                .parse()
                .map_err(|_| anyhow!("SEEDLAB_THREADS must be a thread count, got {value:?}"))?;
            Ok(Some(n))
        }
        Err(_) => Ok(None),
    }
}

fn build_viewport(view: &ViewArgs) -> Result<Viewport> {
    Viewport::new(
        view.center,
        view.width,
        view.height,
        view.size.cols,
        view.size.rows,
    )
    .map_err(|e| anyhow!(e))
}

fn cmd_render(args: RenderArgs) -> Result<()> {
    let viewport = build_viewport(&args.view)?;
    let field = render(args.seed, &viewport, args.view.max_iter)?;
    let labels = label_components(
        field.mask(),
        field.cols(),
        field.rows(),
        args.output.connectivity,
    );
    let record = ConnectivityRecord::new(field.seed(), &labels);

    fs::create_dir_all(&args.output.out)
        .with_context(|| format!("creating {}", args.output.out.display()))?;
    let image_path = args
        .output
        .out
        .join(format!("render.{}", args.output.format.extension()));
    write_image(&field, args.output.format, &image_path)?;
    let csv = single_record_csv(
        &record,
        &viewport,
        args.view.max_iter,
        args.output.connectivity,
    );
    let csv_path = args.output.out.join("render.csv");
    fs::write(&csv_path, csv).with_context(|| format!("writing {}", csv_path.display()))?;

    print!("{}", seedlab::report::csv_row(0, &record));
    Ok(())
}

fn cmd_sweep(args: SweepArgs) -> Result<()> {
    let viewport = build_viewport(&args.view)?;
    let path = SeedPath::new(args.path.start, args.path.end, args.steps)?;
    run_and_report(
        &path,
        &viewport,
        args.view.max_iter,
        &args.output,
    )
}

fn cmd_journey(args: JourneyArgs) -> Result<()> {
    let preset = find_preset(&args.name).ok_or_else(|| {
        let names: Vec<&str> = journey_presets().iter().map(|p| p.name).collect();
        anyhow!(
            "unknown preset {:?}; available presets: {}",
            args.name,
            names.join(", ")
        )
    })?;
    run_and_report(&preset.path, &preset.viewport, preset.max_iter, &args.output)
}

fn run_and_report(
    path: &SeedPath,
    viewport: &Viewport,
    max_iter: u32,
    output: &OutputArgs,
) -> Result<()> {
    fs::create_dir_all(&output.out).with_context(|| format!("creating {}", output.out.display()))?;
    let out_dir = output.out.clone();
    let format = output.format;
    let mut sink = move |step: usize, field: &EscapeField| {
        let path = out_dir.join(format!("frame_{step:04}.{}", format.extension()));
        write_image(field, format, &path).map_err(|e| std::io::Error::other(format!("{e:#}")))
    };
    let report = run_sweep(path, viewport, max_iter, output.connectivity, Some(&mut sink))?;

    let csv_path = output.out.join("report.csv");
    fs::write(&csv_path, report_csv(&report))
        .with_context(|| format!("writing {}", csv_path.display()))?;

    println!("{}", summary_line(&report));
    Ok(())
}

fn summary_line(report: &SweepReport) -> String {
    let mut line = format!("summary: steps={}", report.records.len());
    match detect_split(report, 2) {
        Some(step) => {
            let seed = report.records[step].seed;
            line.push_str(&format!(" split_step={step} split_seed={seed}"));
        }
        None => line.push_str(" split_step=none"),
    }
    match trend_statistic(report) {
        Ok(TrendStatistic {
            spearman_rho,
            first_value,
            last_value,
        }) => line.push_str(&format!(
            " spearman_rho={spearman_rho} first={first_value} last={last_value}"
        )),
        Err(TrendError::InsufficientData { found }) => {
            line.push_str(&format!(" spearman_rho=na non_empty={found}"))
        }
    }
    line
}

fn cmd_analyze(args: AnalyzeArgs) -> Result<()> {
    let bytes =
        fs::read(&args.input).with_context(|| format!("reading {}", args.input.display()))?;
    let graymap = pgm::decode(&bytes)
        .with_context(|| format!("decoding {} as a P5 graymap", args.input.display()))?;
    let mask = graymap.membership_mask();
    let labels = label_components(&mask, graymap.cols, graymap.rows, args.connectivity);
    let m = disconnectivity_rate(&labels);
    println!(
        "member_pixels={} component_count={} largest_fraction={} disconnectivity={} empty={}",
        m.member_pixels, m.component_count, m.largest_fraction, m.disconnectivity, m.empty
    );
    Ok(())
}

fn write_image(field: &EscapeField, format: FrameFormat, path: &Path) -> Result<()> {
    match format {
        FrameFormat::Pgm => {
            fs::write(path, pgm::encode_field(field))
                .with_context(|| format!("writing {}", path.display()))?;
        }
        FrameFormat::Png => {
            let pixels: Vec<u8> = field
                .mask()
                .iter()
                .zip(field.iterations())
                .map(|(&member, &iterations)| pgm::shade(member, iterations))
                .collect();
            let image =
                image::GrayImage::from_raw(field.cols() as u32, field.rows() as u32, pixels)
                    .expect("pixel buffer matches dimensions");
            image
                .save(path)
                .with_context(|| format!("writing {}", path.display()))?;
        }
    }
    Ok(())
}
