use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEGREE_CAP_ENV: &str = "LCTFORGE_DEGREE_CAP";
pub const TRIALS_ENV: &str = "LCTFORGE_TRIALS";

/// Resource and genericity knobs shared by every computation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Config {
    /// Largest total degree any intermediate polynomial may reach in a
    /// standard basis computation.
    pub degree_cap: u32,
    /// Independent random draws for generic-section multiplicities.
    pub trials: u32,
    /// Random integer coefficients are drawn uniformly from `[-B, B]`.
    pub coefficient_bound: i64,
    /// Largest power accepted by the degeneration experiment.
    pub tmax_cap: u32,
    /// Largest exponent accepted by ideal powers.
    pub power_cap: u32,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            degree_cap: 64,
            trials: 3,
            coefficient_bound: 101,
            tmax_cap: 4,
            power_cap: 16,
        }
    }
}

impl Config {
    /// Defaults overridden by `LCTFORGE_DEGREE_CAP` and `LCTFORGE_TRIALS`.
    pub fn from_env() -> Result<Self> {
        let mut cfg = Config::default();
        if let Some(v) = read_env(DEGREE_CAP_ENV)? {
            cfg.degree_cap = v;
        }
        if let Some(v) = read_env(TRIALS_ENV)? {
            cfg.trials = v;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.degree_cap == 0 || self.trials == 0 || self.coefficient_bound <= 0 || self.tmax_cap == 0 {
            return Err(Error::InvalidArgument("configuration values must be positive".into()));
        }
        Ok(())
    }
}

fn read_env(name: &str) -> Result<Option<u32>> {
    match std::env::var(name) {
        Ok(v) => v
            .trim()
            .parse::<u32>()
            .ok()
            .filter(|&v| v > 0)
            .map(Some)
            .ok_or_else(|| Error::InvalidArgument(format!("{name} must be a positive integer, got `{v}`"))),
        Err(_) => Ok(None),
    }
}
