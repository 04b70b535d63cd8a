//! Argument parsing helpers and input loading.

use std::path::Path;

use anyhow::{bail, Context, Result};
use framelab::frame::VectorSystem;
use framelab::gabor::TFPoint;
use framelab::random::{rng, unit_window};
use framelab::Complex64;
use serde::de::DeserializeOwned;

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

pub fn read_system(path: &Path) -> Result<VectorSystem> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    if path.extension().is_some_and(|e| e == "csv") {
        let label = path.file_stem().and_then(|s| s.to_str()).unwrap_or("csv");
        return Ok(framelab::io::read_csv(text.as_bytes(), label)?);
    }
    Ok(framelab::io::from_json(&text).with_context(|| format!("parsing {}", path.display()))?)
}

/// `"0.5,1,2"` into numbers.
pub fn float_list(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|t| t.trim())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<f64>().with_context(|| format!("not a number: {t:?}")))
        .collect()
}

pub fn usize_list(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|t| t.trim().parse::<usize>().with_context(|| format!("not an integer: {t:?}")))
        .collect()
}

/// `"lo:hi:step"` (inclusive of `hi` up to rounding) or a comma list.
pub fn float_grid(s: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = s.split(':').collect();
    match parts.as_slice() {
        [lo, hi, step] => {
            let (lo, hi, step): (f64, f64, f64) = (lo.trim().parse()?, hi.trim().parse()?, step.trim().parse()?);
            if !(step > 0.0) || hi < lo {
                bail!("range {s:?} needs lo <= hi and step > 0");
            }
            let n = ((hi - lo) / step + 1e-9).floor() as usize;
            Ok((0..=n).map(|k| lo + k as f64 * step).collect())
        }
        [_] => float_list(s),
        _ => bail!("expected lo:hi:step or a comma list, got {s:?}"),
    }
}

/// `"lambda,mu;lambda,mu;..."`.
pub fn tf_points(s: &str) -> Result<Vec<TFPoint>> {
    s.split(';')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            let v = float_list(t)?;
            match v.as_slice() {
                [l, m] => Ok(TFPoint::new(*l, *m)),
                _ => bail!("point {t:?} must be lambda,mu"),
            }
        })
        .collect()
}

/// `random` (seeded unit vector), `gaussian` (periodized, centred at 0),
/// `box:K` (indicator of the first K samples) or a JSON file with a list of
/// `[re, im]` pairs.
pub fn window(spec: &str, l: usize, seed: u64) -> Result<Vec<Complex64>> {
    if spec == "random" {
        return Ok(unit_window(&mut rng(seed), l));
    }
    if spec == "gaussian" {
        let lf = l as f64;
        let w: Vec<f64> = (0..l)
            .map(|t| {
                (-3..=3)
                    .map(|k| {
                        let x = (t as f64 - k as f64 * lf) / lf.sqrt();
                        (-std::f64::consts::PI * x * x).exp()
                    })
                    .sum()
            })
            .collect();
        let n = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        return Ok(w.into_iter().map(|x| Complex64::new(x / n, 0.0)).collect());
    }
    if let Some(k) = spec.strip_prefix("box:") {
        let k: usize = k.parse().context("box:K needs an integer K")?;
        if k == 0 || k > l {
            bail!("box:{k} must satisfy 1 <= K <= L = {l}");
        }
        let c = 1.0 / (k as f64).sqrt();
        return Ok((0..l).map(|t| Complex64::new(if t < k { c } else { 0.0 }, 0.0)).collect());
    }
    let w: Vec<Complex64> = read_json(Path::new(spec))?;
    if w.len() != l {
        bail!("window file {spec} has {} samples, expected L = {l}", w.len());
    }
    Ok(w)
}
