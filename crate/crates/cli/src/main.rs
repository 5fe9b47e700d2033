mod commands;
mod config;
mod report;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use instanton::chen_teo::{ChenTeoParams, DerivedConstants};
use commands::Ctx;
use config::{ConfigError, RunConfig};
use report::{PointReport, Report};

#[derive(Parser)]
#[command(name = "ctinst", version, about = "Harmonic forms, periods and intersection data on the Chen-Teo instanton")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Flat key = value configuration file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Seed for the quasi-random sample points.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads for grid points; all cores when absent.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Record wall times, which makes reports differ between runs.
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Subcommand, Clone, Copy)]
enum Command {
    /// Run the invariant suite at every grid point; exit 1 if a check fails.
    Verify,
    /// Closed-form periods, energies, Q and Z over the grid.
    Sweep,
    /// Bolt periods by localization and by direct quadrature.
    Periods,
    /// L² energies by the boundary formula and by quadrature.
    Energies,
    /// Intersection matrix Q and the pairing B.
    Intersection,
    /// Classical partition function at each configured tau.
    Partition,
    /// Rod vectors, normalizations and adjacent determinants.
    RodStructure,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Verify => "verify",
            Command::Sweep => "sweep",
            Command::Periods => "periods",
            Command::Energies => "energies",
            Command::Intersection => "intersection",
            Command::Partition => "partition",
            Command::RodStructure => "rod-structure",
        }
    }

    fn run(self, c: &DerivedConstants, ctx: &Ctx) -> instanton::Result<PointReport> {
        match self {
            Command::Verify => commands::verify(c, ctx),
            Command::Sweep => commands::sweep_point(c, ctx),
            Command::Periods => commands::periods(c, ctx),
            Command::Energies => commands::energies(c, ctx),
            Command::Intersection => commands::intersection(c, ctx),
            Command::Partition => commands::partition(c, ctx),
            Command::RodStructure => commands::rods(c, ctx),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_CONFIG: u8 = 2;

fn load_config(path: Option<&PathBuf>) -> Result<RunConfig, ConfigError> {
    match path {
        None => Ok(RunConfig::default()),
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| ConfigError(format!("{}: {e}", p.display())))?;
            RunConfig::parse(&text)
        }
    }
}

fn write_report(report: &Report, cli: &Cli) -> io::Result<()> {
    let sink: Box<dyn Write> = match &cli.out {
        Some(p) => Box::new(File::create(p)?),
        None => Box::new(io::stdout().lock()),
    };
    let mut w = BufWriter::new(sink);
    match cli.format {
        Format::Json => {
            report.write_json(&mut w)?;
            writeln!(w)?;
        }
        Format::Csv => report.write_csv(&mut w)?,
    }
    w.flush()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match load_config(cli.config.as_ref()) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::from(EXIT_CONFIG);
        }
    };
    if let Some(n) = cli.jobs {
        if n == 0 || rayon::ThreadPoolBuilder::new().num_threads(n).build_global().is_err() {
            eprintln!("config error: --jobs must be a positive integer");
            return ExitCode::from(EXIT_CONFIG);
        }
    }
    let ctx = Ctx { cfg: &cfg, seed: cli.seed };
    // Parallel over grid points; collect keeps the configured order.
    let results: Vec<_> = cfg
        .points()
        .into_par_iter()
        .map(|(xi, kappa)| {
            let t = Instant::now();
            let c = ChenTeoParams::new(xi, kappa).and_then(|p| p.derive())?;
            let mut r = cli.command.run(&c, &ctx)?;
            if cli.timings {
                r.wall_time_s = t.elapsed().as_secs_f64();
            }
            Ok::<_, instanton::Error>(r)
        })
        .collect();
    let mut points = Vec::with_capacity(results.len());
    for (r, (xi, kappa)) in results.into_iter().zip(cfg.points()) {
        match r {
            Ok(p) => points.push(p),
            Err(e) => {
                eprintln!("error at xi = {xi}, kappa = {kappa}: {e}");
                return ExitCode::from(EXIT_CHECK_FAILED);
            }
        }
    }
    for p in &points {
        for c in p.checks.iter().filter(|c| !c.passed) {
            eprintln!(
                "FAIL {} at xi = {}, kappa = {}: {:e} (tolerance {:e})",
                c.name, p.xi, p.kappa, c.value, c.tolerance
            );
        }
    }
    let report = Report::new(cli.command.name(), cli.seed, cfg.clone(), points);
    if let Err(e) = write_report(&report, &cli) {
        eprintln!("cannot write report: {e}");
        return ExitCode::from(EXIT_CHECK_FAILED);
    }
    if report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_CHECK_FAILED)
    }
}
