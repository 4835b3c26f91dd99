//! `wtrisect run` audits the trisection and writes a report;
//! `wtrisect export` dumps fields and boundary samples as CSV.
//!
//! Exit status: 0 when no check failed, 1 when at least one did, 2 for
//! usage and configuration errors, 3 for I/O errors.

use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use wtrisect::config::RunConfig;
use wtrisect::export::{export_fields, ExportOptions, FieldSelector, RegionSelector};
use wtrisect::{verify, Error, Execution};

const EXIT_FAILED_CHECKS: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_IO: u8 = 3;

#[derive(Parser)]
#[command(name = "wtrisect", version, about = "Audit the Weinstein trisection of S² × S² and its higher-genus bookkeeping")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every check and write the report.
    Run(RunArgs),
    /// Write a field or boundary sample dump as CSV.
    Export(ExportArgs),
}

#[derive(Args)]
struct RunArgs {
    /// key = value file applied before the flags below.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    g: Option<String>,
    #[arg(long)]
    h: Option<String>,
    #[arg(long)]
    cap_radius: Option<String>,
    /// paper-literal, corrected or both.
    #[arg(long)]
    step2_mode: Option<String>,
    /// corrected or paper-literal.
    #[arg(long)]
    b3_interval: Option<String>,
    #[arg(long)]
    fd_step: Option<String>,
    #[arg(long)]
    samples_per_stratum: Option<String>,
    #[arg(long)]
    quadrature_target: Option<String>,
    #[arg(long)]
    threshold: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    #[arg(long)]
    residual_points: Option<String>,
    #[arg(long)]
    morse_seeds: Option<String>,
    /// Report JSON path; printed to stdout when absent.
    #[arg(long)]
    json_out: Option<String>,
    #[arg(long)]
    markdown_out: Option<String>,
    /// Run sweeps on the calling thread only.
    #[arg(long)]
    sequential: bool,
}

impl RunArgs {
    fn flags(&self) -> [(&'static str, &Option<String>); 14] {
        [
            ("g", &self.g),
            ("h", &self.h),
            ("cap-radius", &self.cap_radius),
            ("step2-mode", &self.step2_mode),
            ("b3-interval", &self.b3_interval),
            ("fd-step", &self.fd_step),
            ("samples-per-stratum", &self.samples_per_stratum),
            ("quadrature-target", &self.quadrature_target),
            ("threshold", &self.threshold),
            ("seed", &self.seed),
            ("residual-points", &self.residual_points),
            ("morse-seeds", &self.morse_seeds),
            ("json-out", &self.json_out),
            ("markdown-out", &self.markdown_out),
        ]
    }

    /// Defaults, then the config file, then explicit flags.
    fn to_config(&self) -> Result<RunConfig, Error> {
        let mut cfg = RunConfig::default();
        if let Some(path) = &self.config {
            cfg.apply_file(path)?;
        }
        for (key, value) in self.flags() {
            if let Some(v) = value {
                cfg.set(key, v)?;
            }
        }
        if self.sequential {
            cfg.execution = Execution::Sequential;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Args)]
struct ExportArgs {
    /// potential, omega-density, liouville-field or boundary-samples.
    #[arg(long)]
    field: String,
    /// CSV path; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = 101)]
    grid: usize,
    #[arg(long, default_value_t = 3.0)]
    extent: f64,
    /// n1, n2, n3, b1, b2, b3 or b3-printed.
    #[arg(long, default_value = "b1")]
    region: String,
    /// Boundary points per boundary component.
    #[arg(long, default_value_t = 8)]
    samples: usize,
    #[arg(long, default_value_t = std::f64::consts::FRAC_PI_4)]
    cap_radius: f64,
}

fn exit_for(err: &Error) -> u8 {
    match err {
        Error::Io(_) | Error::Csv(_) => EXIT_IO,
        _ => EXIT_USAGE,
    }
}

fn run(args: &RunArgs) -> Result<u8, Error> {
    let cfg = args.to_config()?;
    let report = verify::run(&cfg)?;
    if cfg.json_out.is_none() {
        let mut out = io::stdout().lock();
        out.write_all(report.to_canonical_json()?.as_bytes())?;
        out.flush()?;
    }
    let s = report.summary;
    eprintln!(
        "{} checks: {} pass, {} fail, {} flagged, {} skipped",
        s.total, s.pass, s.fail, s.flagged, s.skipped
    );
    for c in report.checks.iter().filter(|c| c.status == wtrisect::report::Status::Fail) {
        eprintln!("FAIL {}: {}", c.id, c.description);
    }
    Ok(if report.has_failures() {
        EXIT_FAILED_CHECKS
    } else {
        0
    })
}

fn export(args: &ExportArgs) -> Result<u8, Error> {
    let selector: FieldSelector = args.field.parse()?;
    let region: RegionSelector = args.region.parse()?;
    let opts = ExportOptions {
        grid: args.grid,
        extent: args.extent,
        region,
        samples: args.samples,
        cap_radius: args.cap_radius,
    };
    let rows = match &args.out {
        Some(path) => {
            let dir = match path.parent() {
                Some(d) if !d.as_os_str().is_empty() => d.to_path_buf(),
                _ => PathBuf::from("."),
            };
            let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
            let rows = export_fields(selector, &opts, BufWriter::new(tmp.as_file_mut()))?;
            tmp.persist(path).map_err(|e| Error::Io(e.error))?;
            rows
        }
        None => export_fields(selector, &opts, io::stdout().lock())?,
    };
    eprintln!("{rows} rows of {selector}");
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Run(a) => run(a),
        Command::Export(a) => export(a),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_for(&e))
        }
    }
}
