//! Solver settings from `--config` files and flags. Flags win over the file,
//! the file over built-in defaults.

use std::path::{Path, PathBuf};

use asymscat::{Quadrature, SolverConfig};
use clap::Args;
use serde::Deserialize;

use crate::CliError;

/// Keys accepted in a `--config` file, one `key = value` per line.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub n_grid: Option<usize>,
    pub quadrature: Option<String>,
    pub tolerance: Option<f64>,
    pub structured_local: Option<bool>,
    pub seed: Option<u64>,
}

impl ConfigFile {
    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
    }
}

#[derive(Debug, Clone, Args)]
pub struct SolverArgs {
    /// Quadrature points across [-d, d]
    #[arg(long)]
    pub n_grid: Option<usize>,
    /// trapezoid or simpson
    #[arg(long)]
    pub quadrature: Option<String>,
    /// Relative pivot threshold for singular systems
    #[arg(long)]
    pub tolerance: Option<f64>,
    /// Settings file with key = value lines
    #[arg(long)]
    pub config: Option<PathBuf>,
}

impl SolverArgs {
    /// Resolved configuration and the seed from the file, if any.
    pub fn resolve(&self, defaults: SolverConfig) -> Result<(SolverConfig, Option<u64>), CliError> {
        let file = match &self.config {
            Some(path) => ConfigFile::read(path)?,
            None => ConfigFile::default(),
        };
        let quadrature = match self.quadrature.as_ref().or(file.quadrature.as_ref()) {
            Some(q) => q
                .parse::<Quadrature>()
                .map_err(|e| CliError::Input(e.to_string()))?,
            None => defaults.quadrature,
        };
        let config = SolverConfig {
            n_grid: self.n_grid.or(file.n_grid).unwrap_or(defaults.n_grid),
            quadrature,
            tolerance: self.tolerance.or(file.tolerance).unwrap_or(defaults.tolerance),
            structured_local: file.structured_local.unwrap_or(defaults.structured_local),
        };
        config.validate().map_err(|e| CliError::Input(e.to_string()))?;
        Ok((config, file.seed))
    }
}

/// `kmin:kmax:n`, inclusive, `n ≥ 1`.
pub fn parse_range(text: &str) -> Result<Vec<f64>, CliError> {
    let bad = || CliError::Input(format!("expected kmin:kmax:n, got `{text}`"));
    let parts: Vec<&str> = text.split(':').collect();
    let [lo, hi, n] = parts.as_slice() else {
        return Err(bad());
    };
    let lo: f64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: f64 = hi.trim().parse().map_err(|_| bad())?;
    let n: usize = n.trim().parse().map_err(|_| bad())?;
    if n == 0 || !lo.is_finite() || !hi.is_finite() || hi < lo {
        return Err(bad());
    }
    if n == 1 {
        return Ok(vec![lo]);
    }
    Ok((0..n)
        .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("0.5:1.5:3").unwrap(), vec![0.5, 1.0, 1.5]);
        assert_eq!(parse_range("2:2:1").unwrap(), vec![2.0]);
        assert!(parse_range("1:0:3").is_err());
        assert!(parse_range("1:2").is_err());
        assert!(parse_range("a:2:3").is_err());
    }

    #[test]
    fn config_file_rejects_unknown_keys() {
        assert!(toml::from_str::<ConfigFile>("n_grid = 801\nquadrature = \"simpson\"").is_ok());
        assert!(toml::from_str::<ConfigFile>("grid = 801").is_err());
    }
}
