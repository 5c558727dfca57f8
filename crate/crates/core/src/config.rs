//! Analysis configuration, read from TOML.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::io::GraphFormat;
use crate::matrix::Tolerances;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Exact,
    Float,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EigenSource {
    /// Exact roots on the exact backend, Schur roots on the float backend.
    Computed,
    Supplied,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AnalysisConfig {
    pub backend: Backend,
    pub eps_zero: f64,
    pub eps_cluster: f64,
    pub eigenvalues: EigenSource,
    /// CSV of `re,im` rows; required iff `eigenvalues = "supplied"`.
    pub spectrum_file: Option<PathBuf>,
    /// Measure TV against `A / ρ(A)` instead of `A`.
    pub tv_normalized_shift: bool,
    pub format: OutputFormat,
    /// Inferred from the file extension when absent.
    pub graph_format: Option<GraphFormat>,
    /// Node count for edge lists; defaults to the largest node id.
    pub node_count: Option<usize>,
    /// Bound on the scaled residuals in a report.
    pub check_tolerance: f64,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        let tol = Tolerances::default();
        Self {
            backend: Backend::Float,
            eps_zero: tol.zero,
            eps_cluster: tol.cluster,
            eigenvalues: EigenSource::Computed,
            spectrum_file: None,
            tv_normalized_shift: false,
            format: OutputFormat::Json,
            graph_format: None,
            node_count: None,
            check_tolerance: 1e-8,
        }
    }
}

impl AnalysisConfig {
    /// Reads and validates a TOML file. A relative `spectrum_file` is
    /// resolved against the config file's directory.
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)?;
        let mut cfg = Self::from_toml(&text)?;
        if let (Some(spec), Some(dir)) = (&cfg.spectrum_file, path.parent()) {
            if spec.is_relative() {
                cfg.spectrum_file = Some(dir.join(spec));
            }
        }
        Ok(cfg)
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: Self = toml::from_str(text).map_err(|e| Error::Config(e.message().to_owned()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("eps_zero", self.eps_zero),
            ("eps_cluster", self.eps_cluster),
            ("check_tolerance", self.check_tolerance),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::Config(format!("{name} must be positive, got {v}")));
            }
        }
        match (self.eigenvalues, &self.spectrum_file) {
            (EigenSource::Supplied, None) => Err(Error::Config("eigenvalues = \"supplied\" needs spectrum_file".into())),
            (EigenSource::Computed, Some(_)) => Err(Error::Config("spectrum_file is only used with eigenvalues = \"supplied\"".into())),
            _ => Ok(()),
        }
    }

    pub fn tolerances(&self) -> Tolerances {
        Tolerances {
            zero: self.eps_zero,
            cluster: self.eps_cluster,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_file_gives_defaults() {
        assert_eq!(AnalysisConfig::from_toml("").unwrap(), AnalysisConfig::default());
    }

    #[test]
    fn full_config() {
        let cfg = AnalysisConfig::from_toml(
            r#"
            backend = "exact"
            eps_zero = 1e-12
            eps_cluster = 1e-6
            eigenvalues = "supplied"
            spectrum_file = "spec.csv"
            tv_normalized_shift = true
            format = "csv"
            graph_format = "edge-list-csv"
            node_count = 5
            "#,
        )
        .unwrap();
        assert_eq!(cfg.backend, Backend::Exact);
        assert_eq!(cfg.tolerances(), Tolerances { zero: 1e-12, cluster: 1e-6 });
        assert_eq!(cfg.graph_format, Some(GraphFormat::EdgeListCsv));
        assert!(cfg.tv_normalized_shift);
    }

    #[test]
    fn rejects_invalid() {
        for text in [
            "eps_zero = 0.0",
            "eps_cluster = -1.0",
            "eigenvalues = \"supplied\"",
            "spectrum_file = \"x.csv\"",
            "backend = \"quad\"",
            "unknown_key = 1",
        ] {
            let err = AnalysisConfig::from_toml(text).unwrap_err();
            assert!(matches!(err, Error::Config(_)), "{text}: {err:?}");
            assert_eq!(err.exit_code(), 2);
        }
    }
}
