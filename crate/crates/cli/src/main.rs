//! `framelab`: command-line access to the frame analyses.

mod bspline_cmd;
mod config;
mod dilation_cmd;
mod exp_cmd;
mod frame_cmd;
mod gabor_cmd;
mod inputs;
mod output;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgMatches, CommandFactory, FromArgMatches, Parser, Subcommand};

use crate::output::{Format, Outcome};

#[derive(Parser, Debug)]
#[command(name = "framelab", version, about = "Frame, Gabor, wavelet and B-spline frame analyses")]
struct Cli {
    /// Tolerance for pass/fail decisions [default: 1e-10]
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Seed for randomized inputs and sweeps [default: 0]
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output format [default: json]
    #[arg(long, global = true, value_enum)]
    output: Option<Format>,
    /// Write the result here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads for sweeps [default: all cores]
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// TOML file with defaults for tol, seed, output and jobs
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Frame bounds, canonical duals and randomized oracle sweeps for finite systems
    #[command(subcommand)]
    Frame(frame_cmd::FrameCmd),
    /// R-duals of a finite system: involution, bound transfer, duality against biorthogonality
    #[command(subcommand)]
    Rdual(frame_cmd::RdualCmd),
    /// Extend a pair of Bessel sequences to a pair of dual frames
    Extend(frame_cmd::ExtendArgs),
    /// Finite Gabor systems on Z_L: duality principle, Wexler-Raz, Ron-Shen, extensions, HRT probe
    #[command(subcommand)]
    Gabor(gabor_cmd::GaborCmd),
    /// Dyadic wavelet systems in the frequency domain
    #[command(subcommand)]
    Wavelet(dilation_cmd::WaveletCmd),
    /// Wave-packet systems: frame bounds, duality, Bessel divergence, the LIC sum
    #[command(subcommand)]
    Wavepacket(dilation_cmd::WavepacketCmd),
    /// B-splines: evaluation, Fourier transform, properties, (a, b) frame scan, dual windows
    #[command(subcommand)]
    Bspline(bspline_cmd::BsplineCmd),
    /// Exponential systems on (-pi, pi): Gram matrices and lower bounds
    #[command(subcommand)]
    Exp(exp_cmd::ExpCmd),
}

/// Settings shared by every command.
#[derive(Debug, Clone, Copy)]
pub struct Ctx {
    pub tol: f64,
    pub seed: u64,
}

impl Ctx {
    /// Independent per-item seeds derived from the global seed, so results do
    /// not depend on scheduling.
    pub fn seeds(&self, n: usize) -> Vec<u64> {
        framelab::random::derived_seeds(self.seed, n)
    }
}

fn command_name(m: &ArgMatches) -> String {
    match m.subcommand() {
        Some((top, sub)) => match sub.subcommand_name() {
            Some(name) => format!("{top} {name}"),
            None => top.to_string(),
        },
        None => String::new(),
    }
}

fn run(cli: Cli, name: String) -> anyhow::Result<(String, Outcome, Format, Option<PathBuf>)> {
    let cfg = match &cli.config {
        Some(p) => config::Config::load(p)?,
        None => config::Config::default(),
    };
    let tol = match cli.tol.or(cfg.tol) {
        Some(t) => t,
        None => config::env_tolerance()?.unwrap_or(framelab::DEFAULT_TOLERANCE),
    };
    if !(tol >= 0.0 && tol.is_finite()) {
        anyhow::bail!("tolerance must be a finite non-negative number (got {tol})");
    }
    let ctx = Ctx {
        tol,
        seed: cli.seed.or(cfg.seed).unwrap_or(0),
    };
    let format = cli.output.or(cfg.output).unwrap_or(Format::Json);
    if let Some(j) = cli.jobs.or(cfg.jobs) {
        rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build_global()?;
    }
    let outcome = match cli.command {
        Command::Frame(c) => frame_cmd::frame(c, &ctx)?,
        Command::Rdual(c) => frame_cmd::rdual(c, &ctx)?,
        Command::Extend(a) => frame_cmd::extend(a, &ctx)?,
        Command::Gabor(c) => gabor_cmd::run(c, &ctx)?,
        Command::Wavelet(c) => dilation_cmd::wavelet(c, &ctx)?,
        Command::Wavepacket(c) => dilation_cmd::wavepacket(c, &ctx)?,
        Command::Bspline(c) => bspline_cmd::run(c, &ctx)?,
        Command::Exp(c) => exp_cmd::run(c, &ctx)?,
    };
    Ok((name, outcome, format, cli.out))
}

/// A reader such as `head` closed stdout early.
fn broken_pipe(e: &anyhow::Error) -> bool {
    use std::io::ErrorKind::BrokenPipe;
    e.chain().any(|c| {
        if let Some(io) = c.downcast_ref::<std::io::Error>() {
            return io.kind() == BrokenPipe;
        }
        if let Some(j) = c.downcast_ref::<serde_json::Error>() {
            return j.io_error_kind() == Some(BrokenPipe);
        }
        if let Some(w) = c.downcast_ref::<csv::Error>() {
            return matches!(w.kind(), csv::ErrorKind::Io(io) if io.kind() == BrokenPipe);
        }
        false
    })
}

fn main() -> ExitCode {
    let matches = Cli::command().get_matches();
    let cli = match Cli::from_arg_matches(&matches) {
        Ok(c) => c,
        Err(e) => e.exit(),
    };
    let (name, outcome, format, out) = match run(cli, command_name(&matches)) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let written = match &out {
        Some(path) => std::fs::File::create(path)
            .map_err(anyhow::Error::from)
            .and_then(|f| {
                let mut w = std::io::BufWriter::new(f);
                output::render(&mut w, &name, &outcome, format)?;
                w.flush()?;
                Ok(())
            }),
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            output::render(&mut lock, &name, &outcome, format)
        }
    };
    if let Err(e) = written {
        if broken_pipe(&e) {
            return ExitCode::from(outcome.exit_code() as u8);
        }
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    ExitCode::from(outcome.exit_code() as u8)
}
