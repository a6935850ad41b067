use std::path::Path;

use clap::ValueEnum;
use pickzeta::arith::DEFAULT_ZETA_TOL;
use pickzeta::pick::{DEFAULT_PSD_TOL, DEFAULT_RANK_TOL};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Json,
    Csv,
    Human,
}

/// Settings shared by every subcommand.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub zeta_tol: f64,
    pub psd_tol: f64,
    pub rank_tol: f64,
    /// Allowed Gram-identity residual when building a realization.
    pub gram_tol: f64,
    /// Feature truncation `N` for realizations.
    pub trunc: usize,
    pub prime_limit: u64,
    pub format: Format,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            zeta_tol: DEFAULT_ZETA_TOL,
            psd_tol: DEFAULT_PSD_TOL,
            rank_tol: DEFAULT_RANK_TOL,
            gram_tol: 1e-4,
            trunc: 1000,
            prime_limit: 1_000_000,
            format: Format::Json,
            seed: 0,
        }
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = crate::io::read_text(path)?;
        serde_json::from_str(&text).map_err(|e| CliError::parse(path, &e))
    }

    pub fn validate(&self) -> Result<(), CliError> {
        for (name, v) in [("zeta_tol", self.zeta_tol), ("psd_tol", self.psd_tol), ("rank_tol", self.rank_tol), ("gram_tol", self.gram_tol)] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(CliError::input(format!("{name} must be positive, got {v}")));
            }
        }
        if self.trunc < 10 {
            return Err(CliError::input(format!("trunc must be at least 10, got {}", self.trunc)));
        }
        if self.prime_limit < 2 {
            return Err(CliError::input(format!("prime_limit must be at least 2, got {}", self.prime_limit)));
        }
        Ok(())
    }
}
