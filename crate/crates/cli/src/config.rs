//! Optional JSON config file; command-line flags override config values,
//! config values override the built-in defaults.

use std::path::Path;

use serde::Deserialize;

use crate::{CliError, CliResult};

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub bandwidth: Option<usize>,
    pub pad: Option<i64>,
    pub threads: Option<usize>,
    pub format: Option<String>,
    pub seed: Option<u64>,
    pub singularity_tol: Option<f64>,
}

pub fn load(path: Option<&Path>) -> CliResult<FileConfig> {
    let Some(path) = path else {
        return Ok(FileConfig::default());
    };
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("config {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("config {}: {e}", path.display())))
}

pub fn resolve_bandwidth(flag: Option<usize>, file: &FileConfig) -> CliResult<usize> {
    let value = flag
        .or(file.bandwidth)
        .unwrap_or(specloc_core::torus::DEFAULT_BANDWIDTH);
    if !(16..=4096).contains(&value) || !value.is_power_of_two() {
        return Err(CliError::Usage(format!(
            "bandwidth must be a power of two between 16 and 4096, got {value}"
        )));
    }
    Ok(value)
}

pub fn resolve_format(
    flag: Option<crate::ReportFormat>,
    file: &FileConfig,
) -> CliResult<crate::ReportFormat> {
    if let Some(flag) = flag {
        return Ok(flag);
    }
    match file.format.as_deref() {
        None => Ok(crate::ReportFormat::Csv),
        Some("csv") => Ok(crate::ReportFormat::Csv),
        Some("json") => Ok(crate::ReportFormat::Json),
        Some(other) => Err(CliError::Usage(format!(
            "config format must be 'csv' or 'json', got '{other}'"
        ))),
    }
}

pub fn resolve_threads(flag: Option<usize>, file: &FileConfig) -> usize {
    flag.or(file.threads)
        .or_else(|| {
            std::env::var("LOCALIZER_THREADS")
                .ok()
                .and_then(|v| v.parse().ok())
        })
        .unwrap_or(0)
}

pub fn resolve_singularity_tol(flag: Option<f64>, file: &FileConfig) -> CliResult<Option<f64>> {
    match flag.or(file.singularity_tol) {
        None => Ok(None),
        Some(value) if value > 0.0 && value.is_finite() => Ok(Some(value)),
        Some(value) => Err(CliError::Usage(format!(
            "singularity tolerance must be positive and finite, got {value}"
        ))),
    }
}

pub fn validate_point(m: i64, rho: f64, kappa: f64) -> CliResult<()> {
    if !(rho >= 0.0) || !rho.is_finite() {
        return Err(CliError::Usage(format!(
            "rho must be a nonnegative real, got {rho}"
        )));
    }
    if !(kappa > 0.0) || !kappa.is_finite() {
        return Err(CliError::Usage(format!(
            "kappa must be positive, got {kappa}"
        )));
    }
    if m.abs() > 1 << 20 {
        return Err(CliError::Usage(format!("winding number {m} out of range")));
    }
    Ok(())
}

pub fn validate_pad(pad: Option<i64>) -> CliResult<Option<i64>> {
    match pad {
        Some(p) if p < 0 => Err(CliError::Usage(format!("pad must be nonnegative, got {p}"))),
        other => Ok(other),
    }
}
