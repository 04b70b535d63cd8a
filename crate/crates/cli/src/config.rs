//! Defaults from a TOML file and the environment.
//!
//! Precedence: command-line flag, then config file, then
//! `FRAMELAB_TOLERANCE` (tolerance only), then built-in defaults.

use std::path::Path;

use anyhow::{Context, Result};
use serde::Deserialize;

use crate::output::Format;

pub const TOLERANCE_ENV: &str = "FRAMELAB_TOLERANCE";

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub tol: Option<f64>,
    pub seed: Option<u64>,
    pub output: Option<Format>,
    pub jobs: Option<usize>,
}

impl Config {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        toml::from_str(&text).with_context(|| format!("parsing {}", path.display()))
    }
}

pub fn env_tolerance() -> Result<Option<f64>> {
    match std::env::var(TOLERANCE_ENV) {
        Ok(v) => v
            .trim()
            .parse::<f64>()
            .map(Some)
            .with_context(|| format!("{TOLERANCE_ENV}={v:?} is not a number")),
        Err(_) => Ok(None),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_partial_config() {
        let c: Config = toml::from_str("tol = 1e-8\noutput = \"csv\"\n").unwrap();
        assert_eq!(c.tol, Some(1e-8));
        assert_eq!(c.output, Some(Format::Csv));
        assert!(c.seed.is_none());
        assert!(toml::from_str::<Config>("tolerance = 1").is_err());
    }
}
