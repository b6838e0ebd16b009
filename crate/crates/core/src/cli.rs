//! Command-line driver behind the `bsar` binary.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::geometry::GroundPoint;
use crate::io;
use crate::operators::{adjoint, artifact_demo, forward};
use crate::report::VerificationReport;
use crate::sampling::PointSampler;
use crate::verify::{identities_suite, microlocal_suite, selftest_suite};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "bsar",
    version,
    about = "Bistatic SAR simulation and verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    /// `key = value` config file; defaults are used for missing keys.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Override a config key, e.g. `--set alpha=2`. Repeatable.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    overrides: Vec<String>,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Forward model: scene file to sinogram file.
    Simulate {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        scene: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Backprojection: sinogram file to scene file plus a `.pgm` rendering.
    Reconstruct {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        data: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Point target through the normal operator; writes image and peak report.
    DemoArtifact {
        #[command(flatten)]
        common: Common,
        /// Target as `x1,x2`.
        #[arg(long, allow_hyphen_values = true)]
        target: String,
        /// Output directory; defaults to the config's `output_dir`.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verification suites.
    Verify {
        #[command(subcommand)]
        suite: Suite,
    },
    /// Dot-product test and phase-gradient oracle.
    Selftest {
        #[command(flatten)]
        common: Common,
        /// Also write the report here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum Suite {
    /// Determinant, fold/blowdown and positivity checks.
    Microlocal(SuiteArgs),
    /// Generator identities.
    Identities(SuiteArgs),
}

#[derive(Args, Debug)]
struct SuiteArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long)]
    samples: Option<usize>,
    /// Also write the report here.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn load_config(common: &Common) -> Result<RunConfig> {
    let mut cfg = match &common.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    for o in &common.overrides {
        cfg.apply_override(o)?;
    }
    if let Some(seed) = common.seed {
        cfg.seed = seed;
    }
    Ok(cfg)
}

fn parse_target(text: &str) -> Result<GroundPoint> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let [a, b] = parts.as_slice() else {
        return Err(Error::Config(format!("target must be x1,x2, got {text:?}")));
    };
    let num = |v: &str| {
        v.parse::<f64>()
            .ok()
            .filter(|x| x.is_finite())
            .ok_or_else(|| Error::Config(format!("target must be x1,x2, got {text:?}")))
    };
    Ok(GroundPoint::new(num(a)?, num(b)?))
}

fn finish_report(
    report: &mut VerificationReport,
    cfg: &RunConfig,
    out: Option<&Path>,
    stdout: &mut dyn Write,
) -> Result<i32> {
    let mut full = VerificationReport::new(report.suite.clone());
    full.meta("config_hash", cfg.hash());
    full.merge(std::mem::take(report));
    let text = full.render();
    if let Some(p) = out {
        fs::write(p, &text)?;
    }
    stdout.write_all(text.as_bytes())?;
    Ok(if full.passed() {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    })
}

fn execute(cli: Cli, stdout: &mut dyn Write) -> Result<i32> {
    match cli.command {
        Command::Simulate { common, scene, out } => {
            let cfg = load_config(&common)?;
            cfg.validate()?;
            let scene = io::read_scene(&scene)?;
            let d = forward(
                &cfg.geometry()?,
                &scene,
                &cfg.pulse.build()?,
                &cfg.data_grid()?,
            )?;
            io::write_sinogram(&out, &d)?;
            writeln!(stdout, "wrote {}", out.display())?;
            Ok(EXIT_OK)
        }
        Command::Reconstruct { common, data, out } => {
            let cfg = load_config(&common)?;
            cfg.validate()?;
            let d = io::read_sinogram(&data)?;
            let image = adjoint(
                &cfg.geometry()?,
                &d,
                &cfg.pulse.build()?,
                &cfg.scene_grid()?,
            )?;
            io::write_scene(&out, &image)?;
            let pgm = out.with_extension("pgm");
            io::write_scene_pgm(&pgm, &image)?;
            writeln!(stdout, "wrote {} and {}", out.display(), pgm.display())?;
            Ok(EXIT_OK)
        }
        Command::DemoArtifact {
            common,
            target,
            out,
        } => {
            let cfg = load_config(&common)?;
            cfg.validate()?;
            let target = parse_target(&target)?;
            let out = out.unwrap_or_else(|| cfg.output_dir.clone());
            let r = artifact_demo(&cfg.geometry()?, target, &cfg.pulse.build()?, &cfg.grids()?)?;
            fs::create_dir_all(&out)?;
            io::write_scene(&out.join("image.bin"), &r.image)?;
            io::write_scene_pgm(&out.join("image.pgm"), &r.image)?;

            let mut rep = VerificationReport::new("artifact");
            rep.meta("target.x1", format!("{:e}", target.x1))
                .meta("target.x2", format!("{:e}", target.x2))
                .meta("true_peak.x1", format!("{:e}", r.true_peak.location.x1))
                .meta("true_peak.x2", format!("{:e}", r.true_peak.location.x2))
                .meta("true_peak.value", format!("{:e}", r.true_peak.value))
                .meta("mirror_peak.x1", format!("{:e}", r.mirror_peak.location.x1))
                .meta("mirror_peak.x2", format!("{:e}", r.mirror_peak.location.x2))
                .meta("mirror_peak.value", format!("{:e}", r.mirror_peak.value))
                .meta("peak_ratio", format!("{:e}", r.peak_ratio));
            let (a, b) = r.true_peak_offset();
            let (c, d) = r.mirror_peak_offset();
            rep.at_most("true_peak.offset_cells", a.max(b), 1.0)
                .at_most("mirror_peak.offset_cells", c.max(d), 1.0);
            finish_report(&mut rep, &cfg, Some(&out.join("peaks.txt")), stdout)
        }
        Command::Verify { suite } => {
            let (args, which) = match suite {
                Suite::Microlocal(a) => (a, "microlocal"),
                Suite::Identities(a) => (a, "identities"),
            };
            let mut cfg = load_config(&args.common)?;
            if let Some(n) = args.samples {
                cfg.samples = n;
            }
            cfg.validate()?;
            if cfg.samples == 0 {
                return Err(Error::Config("samples must be >= 1".into()));
            }
            let geom = cfg.geometry()?;
            let mut rep = if which == "microlocal" {
                microlocal_suite(&geom, cfg.samples, cfg.seed, &cfg.tolerances)?
            } else {
                let mut geoms = vec![geom];
                let mut sampler = PointSampler::new(cfg.seed ^ 0x9e37_79b9_7f4a_7c15);
                let (lo, hi) = cfg.identity_geometry_range;
                for _ in 0..cfg.identity_random_geometries {
                    geoms.push(sampler.geometry(lo, hi));
                }
                identities_suite(&geoms, cfg.samples, cfg.seed, &cfg.tolerances)?
            };
            finish_report(&mut rep, &cfg, args.out.as_deref(), stdout)
        }
        Command::Selftest { common, out } => {
            let cfg = load_config(&common)?;
            cfg.validate()?;
            let mut rep = selftest_suite(
                &cfg.geometry()?,
                &cfg.grids()?,
                &cfg.pulse.build()?,
                cfg.seed,
                cfg.selftest_seeds,
                cfg.selftest_gradient_samples,
                &cfg.tolerances,
            )?;
            finish_report(&mut rep, &cfg, out.as_deref(), stdout)
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::PeakDetection(_)
        | Error::AmbiguousSingularity { .. }
        | Error::InconsistentSingularity(_) => EXIT_CHECK_FAILED,
        _ => EXIT_USAGE,
    }
}

/// Runs the CLI with explicit output streams. `argv[0]` is the program name.
pub fn run_with<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(stdout, "{e}");
                return EXIT_OK;
            }
            let msg = e.to_string();
            let first = msg
                .lines()
                .find(|l| !l.trim().is_empty())
                .unwrap_or("usage error");
            let _ = writeln!(stderr, "bsar: {}", first.trim_start_matches("error: "));
            return EXIT_USAGE;
        }
    };
    match execute(cli, stdout) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "bsar: {e}");
            exit_code(&e)
        }
    }
}

/// Runs the CLI against the process streams.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(
        argv,
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    )
}
