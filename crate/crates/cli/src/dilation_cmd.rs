use std::path::Path;

use anyhow::{bail, Context, Result};
use clap::{Args, Subcommand};
use framelab::dilation::{
    self, CSet, FreqFunction, UniformGrid, WavePacketGrid,
};
use serde_json::json;

use crate::inputs::{float_list, read_json};
use crate::output::Outcome;
use crate::Ctx;

/// `shannon` | `zero` | `indicator:lo,hi[,scale]` | `bspline:N` | JSON file.
pub fn freq_function(spec: &str) -> Result<FreqFunction> {
    let f = match spec {
        "shannon" => FreqFunction::shannon(),
        "zero" => FreqFunction::zero(),
        _ => {
            if let Some(r) = spec.strip_prefix("indicator:") {
                match float_list(r)?.as_slice() {
                    [lo, hi] => FreqFunction::indicator(*lo, *hi),
                    [lo, hi, s] => FreqFunction::indicator(*lo, *hi).scaled(*s),
                    _ => bail!("indicator:lo,hi[,scale] expected, got {spec:?}"),
                }
            } else if let Some(n) = spec.strip_prefix("bspline:") {
                FreqFunction::BSpline {
                    order: n.parse().context("bspline:N needs an integer order")?,
                }
            } else {
                read_json(Path::new(spec))?
            }
        }
    };
    f.validate()?;
    Ok(f)
}

/// A comma list, or `lattice:spacing[,offset]`.
fn c_set(spec: &str) -> Result<CSet> {
    if let Some(r) = spec.strip_prefix("lattice:") {
        return match float_list(r)?.as_slice() {
            [s] => Ok(CSet::Lattice { spacing: *s, offset: 0.0 }),
            [s, o] => Ok(CSet::Lattice { spacing: *s, offset: *o }),
            _ => bail!("lattice:spacing[,offset] expected, got {spec:?}"),
        };
    }
    Ok(CSet::List(float_list(spec)?))
}

/// `lo,hi,count`.
fn gamma_grid(spec: &str) -> Result<UniformGrid> {
    match float_list(spec)?.as_slice() {
        [lo, hi, n] if *n >= 2.0 && n.fract() == 0.0 => Ok(UniformGrid::covering(*lo, *hi, *n as usize)?),
        _ => bail!("gamma grid must be lo,hi,count with an integer count >= 2, got {spec:?}"),
    }
}

#[derive(Args, Debug)]
pub struct GridArgs {
    /// Dilations a_j, comma list
    #[arg(long = "a-values", default_value = "1")]
    a_values: String,
    /// Translation step
    #[arg(long, default_value_t = 1.0)]
    b: f64,
    /// Modulations c_m: comma list or lattice:spacing[,offset]
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    c: String,
    /// Frequency grid lo,hi,count [default: derived from the generator's band]
    #[arg(long, allow_hyphen_values = true)]
    gamma: Option<String>,
    /// Partial sums above this count as divergent
    #[arg(long)]
    ceiling: Option<f64>,
}

impl GridArgs {
    fn grid(&self) -> Result<WavePacketGrid> {
        let mut g = WavePacketGrid::new(float_list(&self.a_values)?, self.b, c_set(&self.c)?);
        if let Some(s) = &self.gamma {
            g = g.with_gamma(gamma_grid(s)?);
        }
        if let Some(c) = self.ceiling {
            g.divergence_ceiling = c;
        }
        g.validate()?;
        Ok(g)
    }
}

#[derive(Subcommand, Debug)]
pub enum WaveletCmd {
    /// Dual dyadic wavelet frames, checked through the two frequency-domain conditions
    CheckDual {
        /// shannon | zero | indicator:lo,hi[,scale] | bspline:N | JSON file
        #[arg(long)]
        psi: String,
        /// Dual generator [default: same as psi]
        #[arg(long)]
        psi_t: Option<String>,
        /// Translation step
        #[arg(long, default_value_t = 1.0)]
        b: f64,
    },
}

#[derive(Subcommand, Debug)]
pub enum WavepacketCmd {
    /// Frame bounds from the sufficient condition (A <= 0 means undecided)
    Bounds {
        #[arg(long)]
        g: String,
        #[command(flatten)]
        grid: GridArgs,
        /// Also synthesize the system on the frequency grid of this step and
        /// report its spectrum
        #[arg(long)]
        discrete_step: Option<f64>,
    },
    /// Dual wave-packet frames for a_j = a^j over the given modulations
    CheckDual {
        #[arg(long)]
        psi: String,
        #[arg(long)]
        psi_t: Option<String>,
        /// Dilation ratio, > 1
        #[arg(long, default_value_t = 2.0)]
        a: f64,
        #[arg(long, default_value_t = 1.0)]
        b: f64,
        /// Modulations, comma list
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        c: String,
        #[arg(long, allow_hyphen_values = true)]
        gamma: Option<String>,
    },
    /// The truncated sum L(f) over the listed dilations and modulations
    Lic {
        #[arg(long)]
        psi: String,
        /// Test function, given by its Fourier transform
        #[arg(long)]
        f: String,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Partial Bessel sums for a_j = ratio^j until they pass the ceiling
    BesselProbe {
        #[arg(long)]
        g: String,
        #[arg(long, default_value_t = 2.0)]
        ratio: f64,
        #[arg(long, default_value_t = 1.0)]
        b: f64,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        c: String,
        /// lo,hi,count
        #[arg(long, default_value = "-1,1,9", allow_hyphen_values = true)]
        gamma: String,
        #[arg(long, default_value_t = 1e6)]
        ceiling: f64,
        #[arg(long, default_value_t = 1 << 21)]
        max_levels: usize,
    },
}

pub fn wavelet(cmd: WaveletCmd, ctx: &Ctx) -> Result<Outcome> {
    match cmd {
        WaveletCmd::CheckDual { psi, psi_t, b } => {
            let p = freq_function(&psi)?;
            let t = match psi_t {
                Some(s) => freq_function(&s)?,
                None => p.clone(),
            };
            let rep = dilation::wavelet_duality_check(&p, &t, b, ctx.tol)?;
            let v = rep.verdict;
            Ok(Outcome::value(&rep)?.with_verdict(v))
        }
    }
}

pub fn wavepacket(cmd: WavepacketCmd, ctx: &Ctx) -> Result<Outcome> {
    match cmd {
        WavepacketCmd::Bounds { g, grid, discrete_step } => {
            let g = freq_function(&g)?;
            let grid = grid.grid()?;
            let (bounds, rep) = dilation::wave_packet_frame_bounds(&g, &grid)?;
            let spectrum = match discrete_step {
                Some(step) => {
                    let (lo, hi, _) = dilation::discrete_frame_spectrum(&g, &grid, step)?;
                    Some(json!({"step": step, "lower": lo, "upper": hi}))
                }
                None => None,
            };
            let v = rep.verdict;
            Ok(Outcome::value(&json!({
                "bounds": bounds,
                "discrete_spectrum": spectrum,
                "report": rep,
            }))?
            .with_verdict(v))
        }
        WavepacketCmd::CheckDual {
            psi,
            psi_t,
            a,
            b,
            c,
            gamma,
        } => {
            let p = freq_function(&psi)?;
            let t = match psi_t {
                Some(s) => freq_function(&s)?,
                None => p.clone(),
            };
            let gamma = gamma.as_deref().map(gamma_grid).transpose()?;
            let rep = dilation::wave_packet_duality_check(&p, &t, a, b, &float_list(&c)?, gamma, ctx.tol)?;
            let v = rep.verdict;
            Ok(Outcome::value(&rep)?.with_verdict(v))
        }
        WavepacketCmd::Lic { psi, f, grid } => {
            let est = dilation::lic_estimate(&freq_function(&psi)?, &grid.grid()?, &freq_function(&f)?)?;
            Outcome::value(&est)
        }
        WavepacketCmd::BesselProbe {
            g,
            ratio,
            b,
            c,
            gamma,
            ceiling,
            max_levels,
        } => {
            let probe = dilation::bessel_probe(
                &freq_function(&g)?,
                ratio,
                b,
                &c_set(&c)?,
                &gamma_grid(&gamma)?,
                ceiling,
                max_levels,
            )?;
            Outcome::value(&probe)
        }
    }
}
