//! Config-driven experiment pipelines: generate, cascade, snapshot, measure,
//! and write CSV tables plus a manifest.

mod config;
mod run;
mod tables;

pub use config::{ExperimentConfig, FitSection, MetricsSection, NcpSection, SnapshotSection, UnderlyingSection};
pub use run::{
    resolve_output_dir, run_experiment, snapshot_sidecar, AggregateOutcome, ExperimentOutcome, Manifest, RunOptions,
    RunOutcome, RunRecord, SnapshotOutcome, SnapshotRecord, UnderlyingOutcome, OUTPUT_ROOT_ENV,
};
pub use tables::{
    emit_plot_data, read_degree_csv, write_degree_csv, write_exact_ncp_csv, write_diameter_csv, write_densify_csv, write_fit_csv,
    write_ncp_csv, write_occupancy_csv, PlotSeries, PlotTable,
};

use std::path::Path;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("cannot parse config: {0}")]
    Parse(String),
    #[error("invalid config:\n  - {}", .0.join("\n  - "))]
    Invalid(Vec<String>),
    #[error("unknown bundled config {0:?}")]
    UnknownConfig(String),
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("{file}: expected column {expected:?}, found {found:?}")]
    Schema { file: String, expected: String, found: String },
    #[error(transparent)]
    Generate(#[from] crate::generators::GenerateError),
    #[error(transparent)]
    Cascade(#[from] crate::cascade::CascadeError),
    #[error(transparent)]
    Metric(#[from] crate::metrics::MetricError),
    #[error(transparent)]
    Oracle(#[from] crate::oracles::OracleError),
    #[error(transparent)]
    Graph(#[from] crate::graph::GraphError),
}

impl ExperimentError {
    pub(crate) fn io(path: &Path, err: impl std::fmt::Display) -> Self {
        ExperimentError::Io { path: path.display().to_string(), message: err.to_string() }
    }
}

/// Configs shipped with the crate, by name.
pub const BUNDLED_CONFIGS: &[(&str, &str)] = &[
    ("fig1b-desk", include_str!("../../configs/fig1b-desk.toml")),
    ("fig2-desk", include_str!("../../configs/fig2-desk.toml")),
    ("fig3-desk", include_str!("../../configs/fig3-desk.toml")),
    ("ncp-collapse-r035", include_str!("../../configs/ncp-collapse-r035.toml")),
    ("theorem-pcm", include_str!("../../configs/theorem-pcm.toml")),
    ("er-negative", include_str!("../../configs/er-negative.toml")),
    ("pa-negative", include_str!("../../configs/pa-negative.toml")),
];

/// Text of a bundled config.
pub fn bundled_config_text(name: &str) -> Result<&'static str, ExperimentError> {
    BUNDLED_CONFIGS
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| *text)
        .ok_or_else(|| ExperimentError::UnknownConfig(name.to_string()))
}

/// A bundled config by name, or a TOML file at `name_or_path`.
pub fn load_config(name_or_path: &str) -> Result<(ExperimentConfig, String), ExperimentError> {
    let text = match bundled_config_text(name_or_path) {
        Ok(text) => text.to_string(),
        Err(_) => {
            let path = Path::new(name_or_path);
            std::fs::read_to_string(path).map_err(|e| ExperimentError::io(path, e))?
        }
    };
    Ok((ExperimentConfig::from_toml(&text)?, text))
}
